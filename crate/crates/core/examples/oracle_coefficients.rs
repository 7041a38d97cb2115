//! Coefficients of prod (1 - x^k)^-alpha straight from the generating function.

use fracpart::oracle;
use fracpart::{AlphaValue, Precision};

fn main() -> fracpart::Result<()> {
    let prec = Precision::default();

    let classical = oracle::coeffs(&AlphaValue::integer(1)?, 20, prec);
    println!("p(0..=20):");
    for n in 0..=20 {
        print!("{} ", classical.render(n));
    }
    println!();

    let seventh = oracle::coeffs(&AlphaValue::parse("51/7")?, 5, prec);
    for n in 0..=5 {
        let d = oracle::denominator(51, 7, n as u64)?;
        println!("p_51/7({n}) = {}  (denominator divides {d})", seventh.render(n));
    }

    let e = oracle::coeffs(&AlphaValue::parse("e")?, 10, Precision::digits(40)?);
    println!("p_e(10) = {}", e.render(10));

    println!("{}", oracle::coeffs(&AlphaValue::parse("1/2")?, 4, prec).to_json()?);
    Ok(())
}
