//! Gamma, modified Bessel I, Dedekind sums and alpha-Kloosterman sums.

use fracpart::numkernel::format::{to_scientific, to_significant};
use fracpart::numkernel::{bessel_i, gamma};
use fracpart::{circle, AlphaValue, Precision};
use rug::Float;

fn main() -> fracpart::Result<()> {
    let prec = Precision::digits(50)?;
    let bits = prec.bits();
    let half = Float::with_val(bits, 0.5);
    println!("Gamma(1/2) = {}", to_significant(&gamma(&half, prec)?, 40));
    println!("Gamma(7.25) = {}", to_significant(&gamma(&Float::with_val(bits, 7.25), prec)?, 40));
    for (nu, z) in [(0.5, 1.0), (1.5, 10.0), (4.63, 250.0)] {
        let v = bessel_i(&Float::with_val(bits, nu), &Float::with_val(bits, z), prec)?;
        println!("I_{nu}({z}) = {}", to_scientific(&v, 30));
    }

    for (h, k) in [(1, 3), (5, 12), (13, 100)] {
        println!("s({h},{k}) = {}  naive {}", circle::dedekind_sum(h, k)?, circle::dedekind_sum_naive(h, k)?);
    }

    let alpha = AlphaValue::parse("51/7")?;
    for k in 1..=6 {
        let a = circle::kloosterman(&alpha, 10, 0, k, prec);
        println!(
            "A_{k}(10, 0) = {}  Im {}  |A| = {} <= {k}",
            to_significant(&a.re, 12),
            to_scientific(&a.im, 3),
            to_significant(&a.abs(), 12)
        );
    }
    Ok(())
}
