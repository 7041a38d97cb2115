//! Exact rational values of p_{a/b}(n) by rounding a certified truncation.

use fracpart::circle;
use fracpart::numkernel::format::to_significant;

fn main() -> fracpart::Result<()> {
    for n in 1..=10 {
        let r = circle::exact_recovery(51, 7, n)?;
        println!(
            "p_51/7({n:>2}) = {:<32} terms {:>4}  distance {}",
            format!("{}/{}", r.value.numer(), r.value.denom()),
            r.terms_evaluated,
            to_significant(&r.rounding_distance, 3)
        );
    }
    println!(
        "M = {}, M* = {} for n = 10",
        circle::guaranteed_terms(51, 7, 10)?,
        circle::empirical_min_terms(51, 7, 10)?
    );
    println!("p(500) = {}", circle::exact_value(1, 1, 500)?);
    match circle::exact_value(1, 3, 12) {
        Ok(v) => println!("p_1/3(12) = {v}"),
        Err(e) => println!("p_1/3(12): {e}"),
    }
    Ok(())
}
