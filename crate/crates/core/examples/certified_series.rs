//! The truncated circle-method series, its certified error bound, and the
//! leading asymptotic forms.

use fracpart::numkernel::format::to_significant;
use fracpart::{circle, oracle, AlphaValue, Precision};
use rug::Float;

fn main() -> fracpart::Result<()> {
    let prec = Precision::default();
    let alpha = AlphaValue::parse("1/e")?;
    let exact = oracle::coeffs(&alpha, 50, prec).real_at(50, prec.bits());
    println!("p_1/e(50) = {}", to_significant(&exact, 15));
    for m in 1..=5 {
        let s = circle::partial_series_terms(&alpha, 50, m, prec)?;
        println!(
            "m = {m}: {}  error {}  bound {}",
            to_significant(&s.value, 12),
            to_significant(&Float::with_val(prec.bits(), &s.value - &exact).abs(), 3),
            to_significant(&s.tail_bound, 3)
        );
    }

    let alpha = AlphaValue::parse("sqrt(3)")?;
    let delta = Float::with_val(prec.bits(), 0.05);
    let s = circle::partial_series(&alpha, 14, &delta, prec)?;
    let bound = circle::tail_bound(&alpha, 14, &delta, prec)?;
    println!("{}", s.to_json()?);
    println!(
        "tail bounds: first {}  second {}",
        to_significant(&bound.first, 6),
        to_significant(&bound.second, 6)
    );

    for n in [200, 2000] {
        let alpha = AlphaValue::integer(1)?;
        let a = circle::asymptotic(&alpha, n, prec)?;
        let p = oracle::coeffs(&alpha, n as usize, prec).real_at(n as usize, prec.bits());
        println!(
            "n = {n}: bessel form / p = {}  elementary form / p = {}",
            to_significant(&Float::with_val(prec.bits(), &a.bessel_form / &p), 8),
            to_significant(&Float::with_val(prec.bits(), &a.elementary_form / &p), 8)
        );
    }
    Ok(())
}
