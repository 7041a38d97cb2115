//! Dedekind sums and the negated modular inverse.

use rug::{Integer, Rational};

use crate::error::{Error, Result};

fn check_coprime(h: i64, k: i64) -> Result<()> {
    if k <= 0 {
        return Err(Error::InvalidArgument(format!("modulus k = {k} must be positive")));
    }
    if Integer::from(h).gcd(&Integer::from(k)) != 1 {
        return Err(Error::NotCoprime { h, k });
    }
    Ok(())
}

/// s(h, k) by the reciprocity law
/// `s(h,k) + s(k,h) = -1/4 + (h/k + k/h + 1/(hk)) / 12`,
/// walking the Euclidean algorithm down to s(0, 1) = 0.
///
/// `h` is taken modulo `k`.
pub fn dedekind_sum(h: i64, k: i64) -> Result<Rational> {
    check_coprime(h, k)?;
    let mut h = h.rem_euclid(k);
    let mut k = k;
    let mut acc = Rational::new();
    let mut positive = true;
    while h != 0 {
        let (hh, kk) = (Integer::from(h), Integer::from(k));
        let hk = Integer::from(&hh * &kk);
        // (h/k + k/h + 1/(hk)) / 12 - 1/4 = (h^2 + k^2 + 1 - 3hk) / (12hk)
        let num = Integer::from(hh.square_ref()) + Integer::from(kk.square_ref()) + 1u32
            - Integer::from(&hk * 3u32);
        let step = Rational::from((num, hk * 12u32));
        if positive {
            acc += step;
        } else {
            acc -= step;
        }
        positive = !positive;
        let r = k % h;
        k = h;
        h = r;
    }
    Ok(acc)
}

/// s(h, k) straight from the definition
/// `sum_{r=1}^{k-1} (r/k) (hr/k - floor(hr/k) - 1/2)`.
pub fn dedekind_sum_naive(h: i64, k: i64) -> Result<Rational> {
    check_coprime(h, k)?;
    let h = h.rem_euclid(k);
    let mut acc = Rational::new();
    let half = Rational::from((1, 2));
    for r in 1..k {
        let frac = Rational::from((h * r % k, k)) - &half;
        acc += Rational::from((r, k)) * frac;
    }
    Ok(acc)
}

/// H in [0, k) with h H = -1 (mod k); 0 when k = 1.
pub fn inverse_neg(h: i64, k: i64) -> Result<i64> {
    check_coprime(h, k)?;
    if k == 1 {
        return Ok(0);
    }
    let inv = Integer::from(h.rem_euclid(k))
        .invert(&Integer::from(k))
        .map_err(|_| Error::NotCoprime { h, k })?;
    let inv = inv.to_i64().expect("inverse below k fits i64");
    Ok((k - inv) % k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(dedekind_sum(0, 1).unwrap(), 0);
        // (1/3)(-1/6) + (2/3)(1/6)
        assert_eq!(dedekind_sum(1, 3).unwrap(), Rational::from((1, 18)));
        assert_eq!(dedekind_sum_naive(1, 3).unwrap(), Rational::from((1, 18)));
        assert_eq!(dedekind_sum(5, 7).unwrap(), dedekind_sum_naive(5, 7).unwrap());
    }

    #[test]
    fn fast_matches_naive() {
        for k in 1..=60i64 {
            for h in 0..k {
                if Integer::from(h).gcd(&Integer::from(k)) != 1 {
                    continue;
                }
                assert_eq!(dedekind_sum(h, k).unwrap(), dedekind_sum_naive(h, k).unwrap());
            }
        }
    }

    #[test]
    fn odd_symmetry() {
        for (h, k) in [(2, 9), (5, 12), (7, 31)] {
            let s = dedekind_sum(h, k).unwrap();
            assert_eq!(dedekind_sum(k - h, k).unwrap(), -s);
        }
    }

    #[test]
    fn rejects_non_coprime() {
        assert!(matches!(dedekind_sum(2, 4), Err(Error::NotCoprime { h: 2, k: 4 })));
        assert!(matches!(dedekind_sum(0, 3), Err(Error::NotCoprime { .. })));
        assert!(inverse_neg(3, 6).is_err());
    }

    #[test]
    fn negated_inverse() {
        assert_eq!(inverse_neg(0, 1).unwrap(), 0);
        assert_eq!(inverse_neg(1, 5).unwrap(), 4);
        assert_eq!(inverse_neg(3, 7).unwrap(), 2);
        for k in 2..40i64 {
            for h in 0..k {
                if Integer::from(h).gcd(&Integer::from(k)) != 1 {
                    continue;
                }
                let hh = inverse_neg(h, k).unwrap();
                let brute = (0..k).find(|x| (h * x + 1) % k == 0).unwrap();
                assert_eq!(hh, brute);
            }
        }
    }
}
