//! Exact recovery of p_{a/b}(n) by rounding D p_{a/b}(n; delta), where D is
//! the known denominator.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::series::{check_imaginary, tail_bound_at, CirclePoint, TermEvaluator};
use crate::error::{Error, Result};
use crate::numkernel::{AlphaValue, BigComplex, Precision};
use crate::oracle;

/// Decimal digits at which escalation gives up.
pub const MAX_DIGITS: u32 = 8192;

/// Largest number of (m, k) terms a certified evaluation may sum.
pub const MAX_TERMS: u64 = 5_000;

/// The outcome of [`exact_recovery`], with the numbers that certify it.
#[derive(Debug, Clone)]
pub struct ExactRecovery {
    pub value: Rational,
    pub denominator: Integer,
    /// The truncation parameter actually used.
    pub delta: Float,
    /// Whether the recovery delta had to be pulled back into range.
    pub delta_clamped: bool,
    /// Number of (m, k) terms in the truncation at `delta`.
    pub terms_in_truncation: Integer,
    /// Terms actually summed; the rest are covered by `skipped_bound`.
    pub terms_evaluated: u64,
    pub tail_bound: Float,
    pub skipped_bound: Float,
    pub noise: Float,
    /// Distance of D * value from the nearest integer.
    pub rounding_distance: Float,
    pub digits_used: u32,
}

fn alpha_of(a: i64, b: u64) -> Result<AlphaValue> {
    if b == 0 {
        return Err(Error::InvalidArgument("denominator b must be positive".into()));
    }
    if Integer::from(a).gcd(&Integer::from(b)) != 1 {
        return Err(Error::NotCoprime { h: a, k: b as i64 });
    }
    AlphaValue::ratio(a, b as i64)
}

fn decimal_len(x: &Integer) -> u32 {
    x.to_string().trim_start_matches('-').len() as u32
}

/// The recovery delta,
/// `((2 pi mu_0 nu)^{a+1} / (2 D C I_{a+1}(4 pi mu_0 nu)))^{2/alpha}`,
/// clamped below `2 pi mu_0 (1 - 10^-6)`.
fn recovery_delta(point: &CirclePoint, d: &Integer) -> Result<(Float, bool)> {
    let bits = point.bits();
    let order = point.order();
    let x = Float::with_val(bits, point.delta_max() * point.nu());
    let bessel = crate::numkernel::BesselI::new(&order, point.precision())?;
    let i = bessel.eval(&Float::with_val(bits, &x * 2u32))?;
    let denom = Float::with_val(bits, point.tail_constant() * d) * 2u32 * i;
    let base = Float::with_val(bits, (&x).pow(&order)) / denom;
    let expo = Float::with_val(bits, 2u32) / point.alpha_value();
    let delta = base.pow(&expo);
    let limit = point.delta_max() * (1.0 - 1e-6);
    if delta >= limit {
        Ok((limit, true))
    } else {
        Ok((delta, false))
    }
}

/// D p_{a/b}(n) is the nearest integer to D p_{a/b}(n; delta) for the
/// recovery delta; this returns that integer over D.
pub fn exact_value(a: i64, b: u64, n: u64) -> Result<Rational> {
    Ok(exact_recovery(a, b, n)?.value)
}

/// [`exact_value`] with its certificate.
///
/// Terms of the truncation are summed with k ascending until the remaining
/// ones are provably smaller than a quarter of the rounding budget; that
/// remainder is reported as `skipped_bound` and counted against the budget.
pub fn exact_recovery(a: i64, b: u64, n: u64) -> Result<ExactRecovery> {
    let alpha = alpha_of(a, b)?;
    let d = oracle::denominator(a, b, n)?;
    let mut digits = (decimal_len(&d) + 20).max(60);
    loop {
        if digits > MAX_DIGITS {
            return Err(Error::PrecisionExhausted(MAX_DIGITS));
        }
        let prec = Precision::digits(digits)?;
        let point = CirclePoint::new(&alpha, n, prec)?;
        let bits = point.bits();
        let (delta, delta_clamped) = recovery_delta(&point, &d)?;
        let tail = tail_bound_at(&point, &delta)?.first;
        let half = Float::with_val(bits, Float::with_val(bits, 1u32) / &d) / 2u32;
        let budget = Float::with_val(bits, &half - &tail);
        if budget <= 0 {
            return Err(Error::RoundingAmbiguity(format!(
                "tail bound {} exceeds 1/(2D)",
                tail.to_string_radix(10, Some(10))
            )));
        }
        let counts = point.counts_for(&delta);
        let share = Float::with_val(bits, &budget / (4 * (point.q() + 1)));
        let summed = pruned_sum(&point, &counts, &share)?;
        check_imaginary(&summed.sum, prec)?;

        let ten = Float::with_val(bits, 10u32);
        let noise = Float::with_val(bits, ten.pow(-(digits as i32)))
            * (summed.evaluated + 1)
            * summed.max_term.clone().max(&summed.sum.re.clone().abs());
        let total = Float::with_val(bits, &tail + &summed.skipped) + &noise;
        if total >= half {
            digits *= 2;
            continue;
        }

        let scaled = Float::with_val(bits, &summed.sum.re * &d);
        let nearest = Float::with_val(bits, scaled.round_ref());
        let distance = Float::with_val(bits, &scaled - &nearest).abs();
        if distance > 0.49 {
            return Err(Error::RoundingAmbiguity(format!(
                "D*value lies {} from the nearest integer",
                distance.to_string_radix(10, Some(6))
            )));
        }
        let numer = nearest.to_integer().expect("finite");
        return Ok(ExactRecovery {
            value: Rational::from((numer, d.clone())),
            denominator: d,
            delta,
            delta_clamped,
            terms_in_truncation: counts.iter().sum(),
            terms_evaluated: summed.evaluated,
            tail_bound: tail,
            skipped_bound: summed.skipped,
            noise,
            rounding_distance: distance,
            digits_used: digits,
        });
    }
}

struct PrunedSum {
    sum: BigComplex,
    evaluated: u64,
    max_term: Float,
    skipped: Float,
}

/// Sums terms k = 1, 2, ... for each m until the remainder of the
/// truncation is below `share`. With |A_k| <= k and
/// `I(x/k) <= (K/k)^{a+1} I(x/K)` for k >= K,
/// `sum_{k>=K} (2 pi / k) |A_k| I(x/k) <= 2 pi I(x/K) (1 + 2K/alpha)`.
///
/// The cutoffs are found from the Bessel factors alone before any
/// Kloosterman sum is formed.
fn pruned_sum(point: &CirclePoint, counts: &[Integer], share: &Float) -> Result<PrunedSum> {
    let bits = point.bits();
    let eval = TermEvaluator::new(point)?;
    let ratio = Float::with_val(bits, Float::with_val(bits, 2u32) / point.alpha_value());
    let mut cutoffs = Vec::with_capacity(counts.len());
    let mut skipped = Float::new(bits);
    let mut total = 0u64;
    for (m, count) in counts.iter().enumerate() {
        let mut k = 1u64;
        while *count >= k {
            let rest = (Float::with_val(bits, &ratio * k) + 1u32) * eval.bessel_part(m as u64, k)?;
            if rest < *share {
                skipped += rest;
                break;
            }
            total += 1;
            if total > MAX_TERMS {
                return Err(Error::WorkLimit(MAX_TERMS));
            }
            k += 1;
        }
        cutoffs.push(k - 1);
    }

    let mut sum = BigComplex::zero(bits);
    let mut max_term = Float::new(bits);
    for (m, &cutoff) in cutoffs.iter().enumerate() {
        for k in 1..=cutoff {
            let term = eval.term(m as u64, k)?;
            let size = term.abs();
            if size > max_term {
                max_term = size;
            }
            sum = &sum + &term;
        }
    }
    Ok(PrunedSum {
        sum,
        evaluated: total,
        max_term,
        skipped,
    })
}

/// Total number of (m, k) terms in the truncation at the recovery delta.
pub fn guaranteed_terms(a: i64, b: u64, n: u64) -> Result<Integer> {
    let alpha = alpha_of(a, b)?;
    let d = oracle::denominator(a, b, n)?;
    let digits = (decimal_len(&d) + 20).max(60);
    let point = CirclePoint::new(&alpha, n, Precision::digits(digits)?)?;
    let (delta, _) = recovery_delta(&point, &d)?;
    Ok(point.counts_for(&delta).iter().sum())
}

/// Smallest term count M* such that rounding D p(n; delta_t) recovers the
/// oracle value for every t >= M*, where delta_t = 2 pi mu_0 / (t + 1).
///
/// The scan stops once the tail bound alone certifies every larger t; a
/// scan that passes [`guaranteed_terms`] first is an inconsistency.
pub fn empirical_min_terms(a: i64, b: u64, n: u64) -> Result<u64> {
    let alpha = alpha_of(a, b)?;
    let d = oracle::denominator(a, b, n)?;
    let exact = oracle::coeffs(&alpha, n as usize, Precision::default())
        .exact_at(n as usize)
        .cloned()
        .expect("rational alpha gives exact coefficients");
    let target = Rational::from(&exact * &d);
    if *target.denom() != 1 {
        return Err(Error::InvalidArgument(format!(
            "D = {d} does not clear the denominator of p({n})"
        )));
    }
    let target = target.numer().clone();
    let digits = (decimal_len(&target).max(decimal_len(&d)) + 20).max(60);
    let prec = Precision::digits(digits)?;
    let point = CirclePoint::new(&alpha, n, prec)?;
    let bits = point.bits();
    let limit = {
        let (delta, _) = recovery_delta(&point, &d)?;
        point.counts_for(&delta).iter().sum::<Integer>()
    };
    let eval = TermEvaluator::new(&point)?;
    let half = Float::with_val(bits, Float::with_val(bits, 1u32) / &d) / 2u32;
    let two_pi_mu0 = point.delta_max();

    let delta_at = |t: u64| Float::with_val(bits, &two_pi_mu0 / (t + 1));
    let certified = |t: u64| -> Result<bool> { Ok(tail_bound_at(&point, &delta_at(t))?.first < half) };
    let terms_at = |t: u64| point.counts_for(&delta_at(t)).iter().sum::<Integer>();
    let mut hi = 1u64;
    while !certified(hi)? {
        if terms_at(hi) > MAX_TERMS {
            return Err(Error::WorkLimit(MAX_TERMS));
        }
        hi *= 2;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if certified(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let stop = hi;
    if terms_at(stop) > MAX_TERMS {
        return Err(Error::WorkLimit(MAX_TERMS));
    }

    let mut done = vec![0u64; point.q() as usize + 1];
    let mut sum = BigComplex::zero(bits);
    let mut last_bad: Option<u64> = None;
    for t in 1..=stop {
        if limit < t {
            return Err(Error::ScanExceeded(t));
        }
        for (m, count) in point.counts_for(&delta_at(t)).iter().enumerate() {
            let count = count.to_u64().unwrap_or(u64::MAX);
            while done[m] < count {
                done[m] += 1;
                sum = &sum + &eval.term(m as u64, done[m])?;
            }
        }
        let scaled = Float::with_val(bits, &sum.re * &d);
        let rounded = scaled.round().to_integer().expect("finite");
        if rounded != target {
            last_bad = Some(t);
        }
    }
    let start = last_bad.map_or(1, |t| t + 1);
    let delta = Float::with_val(bits, &two_pi_mu0 / (start + 1));
    let total: Integer = point.counts_for(&delta).iter().sum();
    Ok(total.to_u64().unwrap_or(u64::MAX))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_values() {
        assert_eq!(exact_value(1, 1, 50).unwrap(), 204226);
        assert_eq!(exact_value(1, 1, 1).unwrap(), 1);
        assert_eq!(exact_value(1, 1, 100).unwrap(), Integer::from(190569292u64));
    }

    #[test]
    fn fractional_values() {
        assert_eq!(exact_value(51, 7, 2).unwrap(), Rational::from((1836, 49)));
        let r = exact_recovery(25, 3, 8).unwrap();
        let oracle = oracle::coeffs(&AlphaValue::ratio(25, 3).unwrap(), 8, Precision::default());
        assert_eq!(&r.value, oracle.exact_at(8).unwrap());
        assert!(r.rounding_distance < 0.01);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(exact_value(2, 4, 5), Err(Error::NotCoprime { .. })));
        assert!(matches!(exact_value(-1, 1, 5), Err(Error::NonPositiveAlpha(_))));
        assert!(matches!(exact_value(48, 1, 2), Err(Error::NTooSmall { .. })));
    }

    #[test]
    fn small_alpha_hits_work_limit() {
        assert!(matches!(exact_value(1, 3, 12), Err(Error::WorkLimit(_))));
        assert!(matches!(empirical_min_terms(1, 3, 12), Err(Error::WorkLimit(_))));
    }

    #[test]
    fn empirical_below_guaranteed() {
        for n in 1..=4 {
            let star = empirical_min_terms(51, 7, n).unwrap();
            assert_eq!(star, n);
            assert!(guaranteed_terms(51, 7, n).unwrap() >= star);
        }
    }
}
