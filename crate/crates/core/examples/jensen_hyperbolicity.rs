//! Jensen polynomials, their renormalization towards Hermite polynomials,
//! and empirical hyperbolicity thresholds.

use fracpart::jensen::{self, JensenReport, Mode, Polynomial};
use fracpart::{AlphaValue, Precision};

fn main() -> fracpart::Result<()> {
    let prec = Precision::default();
    let one = AlphaValue::integer(1)?;

    for n in [0, 1, 24, 25] {
        let r = JensenReport::new(&one, 2, n, prec)?;
        println!("J^(2,{n}) = {}  hyperbolic = {}", r.raw, r.hyperbolic);
    }
    println!("threshold for d = 2 up to 200: {:?}", jensen::hyperbolicity_threshold(&one, 2, 200, prec)?);
    println!("threshold for d = 3 up to 200: {:?}", jensen::hyperbolicity_threshold(&one, 3, 200, prec)?);

    for d in 2..=4 {
        println!("H_{d} = {}", jensen::hermite(d));
    }

    let sqrt3 = AlphaValue::parse("sqrt(3)")?;
    for d in [2, 3] {
        let r = JensenReport::new(&sqrt3, d, 10000, prec)?;
        let hat = r.renormalized.as_ref().expect("radicand positive at n = 10000");
        println!("sqrt(3), d = {d}, n = 10000: {}  distance {:?}", hat.render(6), r.hermite_distance);
    }

    let p = Polynomial::from_integers(&[1, 0, 1]);
    println!("x^2 + 1 hyperbolic: {}", jensen::is_hyperbolic(&p, Mode::Exact)?);
    let p = Polynomial::from_integers(&[0, -6, 0, 1]);
    println!("x^3 - 6x within 1e-6: {}", jensen::is_hyperbolic(&p, Mode::Numeric(1e-6))?);

    let rows = jensen::scan(&one, 2, 20, 30, prec)?;
    print!("{}", jensen::scan_to_csv(&rows)?);
    Ok(())
}
