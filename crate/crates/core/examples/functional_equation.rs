//! Numerical check of the modular transformation law of P(x)^alpha.

use fracpart::circle;
use fracpart::numkernel::format::{to_scientific, to_significant};
use fracpart::{AlphaValue, BigComplex, Precision};

fn main() -> fracpart::Result<()> {
    let prec = Precision::digits(60)?;
    let bits = prec.bits();
    let cases = [("1", 0, 1, 1.0, 0.0), ("sqrt(3)", 1, 2, 0.6, 0.2), ("5", 2, 5, 1.2, -0.3), ("1/e", 3, 7, 2.0, 0.5)];
    for (alpha, h, k, re, im) in cases {
        let z = BigComplex::with_val(bits, re, im);
        let (x, xp) = circle::transformation_points(h, k, &z, prec)?;
        let r = circle::functional_equation_residual(&AlphaValue::parse(alpha)?, h, k, &z, 600, prec)?;
        println!(
            "alpha = {alpha:<8} h/k = {h}/{k}  |x| = {}  |x'| = {}  residual {}",
            to_significant(&x.abs(), 6),
            to_significant(&xp.abs(), 6),
            to_scientific(&r, 3)
        );
    }
    let near = BigComplex::with_val(bits, 0.0001, 0.0);
    match circle::functional_equation_residual(&AlphaValue::integer(1)?, 0, 1, &near, 600, prec) {
        Ok(r) => println!("z = 0.0001: residual {}", to_scientific(&r, 3)),
        Err(e) => println!("z = 0.0001: {e}"),
    }
    Ok(())
}
