//! alpha-Kloosterman sums
//! `A_k(n, m) = sum_{0<=h<k, (h,k)=1} exp(pi i alpha s(h,k) + (2 pi i / k)(m H - n h))`.

use rug::{Float, Integer, Rational};

use super::dedekind::{dedekind_sum, inverse_neg};
use crate::numkernel::{pi, AlphaValue, BigComplex, Precision};

/// The residues h coprime to k with their Dedekind sums and negated inverses.
#[derive(Debug, Clone)]
pub(crate) struct Residues {
    k: u64,
    entries: Vec<(i64, i64, Rational)>,
}

impl Residues {
    pub(crate) fn new(k: u64) -> Self {
        let ki = k as i64;
        let kk = Integer::from(k);
        let entries = (0..ki)
            .filter(|&h| Integer::from(h).gcd(&kk) == 1)
            .map(|h| {
                let s = dedekind_sum(h, ki).expect("coprime by construction");
                let hh = inverse_neg(h, ki).expect("coprime by construction");
                (h, hh, s)
            })
            .collect();
        Residues { k, entries }
    }
}

/// Reduce t to [0, 2).
fn rational_mod_two(t: Rational) -> Rational {
    let halves = Rational::from(&t / 2u32).floor();
    t - halves * 2u32
}

/// Phase evaluator for one alpha at one precision.
pub(crate) struct PhaseSum {
    alpha: AlphaValue,
    alpha_float: Float,
    bits: u32,
}

impl PhaseSum {
    pub(crate) fn new(alpha: &AlphaValue, bits: u32) -> Self {
        // ten guard digits for the reduction of irrational phases
        let work = bits + 34;
        PhaseSum {
            alpha: alpha.clone(),
            alpha_float: alpha.value_bits(work),
            bits: work,
        }
    }

    /// theta_h / pi reduced to [0, 2).
    fn phase_over_pi(&self, residues: &Residues, idx: usize, n: u64, m: u64) -> Float {
        let (h, hh, s) = &residues.entries[idx];
        let k = residues.k as i64;
        let linear = Rational::from((
            Integer::from(2) * (Integer::from(m) * *hh - Integer::from(n) * *h),
            Integer::from(k),
        ));
        match &self.alpha {
            AlphaValue::Rational(a) => {
                let t = rational_mod_two(Rational::from(a * s) + linear);
                Float::with_val(self.bits, &t)
            }
            AlphaValue::Real(_) => {
                let lin = Float::with_val(self.bits, &rational_mod_two(linear));
                let t = Float::with_val(self.bits, &self.alpha_float * s) + lin;
                let halves = Float::with_val(self.bits, &t / 2u32).floor();
                t - halves * 2u32
            }
        }
    }

    pub(crate) fn sum(&self, residues: &Residues, n: u64, m: u64) -> BigComplex {
        let pi = pi(self.bits);
        let mut acc = BigComplex::zero(self.bits);
        for idx in 0..residues.entries.len() {
            let t = self.phase_over_pi(residues, idx, n, m);
            let theta = Float::with_val(self.bits, &t * &pi);
            acc = &acc + &BigComplex::cis(&theta);
        }
        acc
    }
}

/// A_k^{(alpha)}(n, m) at the given precision.
pub fn kloosterman(alpha: &AlphaValue, n: u64, m: u64, k: u64, prec: Precision) -> BigComplex {
    assert!(k >= 1, "k must be positive");
    let phases = PhaseSum::new(alpha, prec.bits());
    let z = phases.sum(&Residues::new(k), n, m);
    let bits = prec.bits();
    BigComplex::new(Float::with_val(bits, &z.re), Float::with_val(bits, &z.im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::dedekind::dedekind_sum_naive;

    /// Classical A_k(n) = sum_h exp(pi i s(h,k) - 2 pi i n h / k), evaluated
    /// with f64 cosines and the naive Dedekind sum.
    fn classical(n: u64, k: u64) -> f64 {
        let mut acc = 0.0;
        for h in 0..k {
            if Integer::from(h).gcd(&Integer::from(k)) != 1 {
                continue;
            }
            let s = dedekind_sum_naive(h as i64, k as i64).unwrap().to_f64();
            let theta = std::f64::consts::PI * (s - 2.0 * (n * h) as f64 / k as f64);
            acc += theta.cos();
        }
        acc
    }

    #[test]
    fn k_one_is_one() {
        let p = Precision::default();
        for a in ["1", "e", "51/7"] {
            let alpha = AlphaValue::parse(a).unwrap();
            for (n, m) in [(0, 0), (5, 0), (17, 3)] {
                let z = kloosterman(&alpha, n, m, 1, p);
                assert_eq!(z.re, 1);
                assert!(z.im.is_zero());
            }
        }
    }

    #[test]
    fn alpha_one_is_classical() {
        let p = Precision::default();
        let alpha = AlphaValue::integer(1).unwrap();
        for k in 1..=20 {
            for n in 0..=20 {
                let z = kloosterman(&alpha, n, 0, k, p);
                assert!((z.re.to_f64() - classical(n, k)).abs() < 1e-9, "k={k} n={n}");
                assert!(z.im.clone().abs() < 1e-50);
            }
        }
    }

    #[test]
    fn bounded_by_k() {
        let p = Precision::default();
        let alpha = AlphaValue::parse("e").unwrap();
        let z = kloosterman(&alpha, 7, 0, 12, p);
        assert!(z.abs() <= 12);
    }
}
