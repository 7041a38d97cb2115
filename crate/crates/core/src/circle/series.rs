//! The truncated circle-method series p_alpha(n; delta), its certified tail
//! bound, and the one-term asymptotics.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::Serialize;

use super::kloosterman::{PhaseSum, Residues};
use crate::error::{Error, Result};
use crate::numkernel::format::to_significant;
use crate::numkernel::{pi, AlphaValue, BesselI, BigComplex, Precision};
use crate::oracle;

/// Everything about (alpha, n) that the series needs before any k-sum:
/// nu = sqrt(n - alpha/24), q = floor(alpha/24), mu_m = sqrt(alpha/24 - m)
/// and p_alpha(m) for m <= q.
#[derive(Debug, Clone)]
pub struct CirclePoint {
    alpha: AlphaValue,
    n: u64,
    prec: Precision,
    alpha_value: Float,
    nu: Float,
    mus: Vec<Float>,
    pm: Vec<Float>,
}

impl CirclePoint {
    pub fn new(alpha: &AlphaValue, n: u64, prec: Precision) -> Result<Self> {
        let bits = prec.bits();
        let a = alpha.value_bits(bits);
        let above = match alpha {
            AlphaValue::Rational(r) => Rational::from(r / 24u32) < n,
            AlphaValue::Real(_) => {
                let gap = Float::with_val(bits, n) - Float::with_val(bits, &a / 24u32);
                gap > Float::with_val(bits, Float::i_exp(1, 24 - bits as i32))
            }
        };
        if !above {
            return Err(Error::NTooSmall {
                n,
                bound: Float::with_val(64, &a / 24u32).to_string(),
            });
        }
        let a24 = Float::with_val(bits, &a / 24u32);
        let nu = (Float::with_val(bits, n) - &a24).sqrt();
        let q = alpha.q();
        let table = oracle::coeffs(alpha, q as usize, prec);
        let mut mus = Vec::with_capacity(q as usize + 1);
        let mut pm = Vec::with_capacity(q as usize + 1);
        for m in 0..=q {
            let diff = Float::with_val(bits, &a24 - m);
            // mu_q can be exactly 0 when alpha = 24q
            mus.push(if diff <= 0 { Float::new(bits) } else { diff.sqrt() });
            pm.push(table.real_at(m as usize, bits));
        }
        Ok(CirclePoint {
            alpha: alpha.clone(),
            n,
            prec,
            alpha_value: a,
            nu,
            mus,
            pm,
        })
    }

    pub fn alpha(&self) -> &AlphaValue {
        &self.alpha
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn alpha_value(&self) -> &Float {
        &self.alpha_value
    }

    pub fn nu(&self) -> &Float {
        &self.nu
    }

    pub fn q(&self) -> u64 {
        self.mus.len() as u64 - 1
    }

    pub fn mu(&self, m: u64) -> &Float {
        &self.mus[m as usize]
    }

    pub fn mus(&self) -> &[Float] {
        &self.mus
    }

    pub fn p_m(&self, m: u64) -> &Float {
        &self.pm[m as usize]
    }

    pub(crate) fn bits(&self) -> u32 {
        self.prec.bits()
    }

    /// Bessel order alpha/2 + 1.
    pub fn order(&self) -> Float {
        Float::with_val(self.bits(), &self.alpha_value / 2u32) + 1u32
    }

    /// 2 pi mu_0, the open upper end of the admissible delta range.
    pub fn delta_max(&self) -> Float {
        pi(self.bits()) * 2u32 * &self.mus[0]
    }

    pub fn check_delta(&self, delta: &Float) -> Result<()> {
        let upper = self.delta_max();
        if *delta <= 0 || *delta >= upper {
            return Err(Error::DeltaOutOfRange {
                delta: delta.to_string_radix(10, Some(20)),
                upper: upper.to_string_radix(10, Some(20)),
            });
        }
        Ok(())
    }

    /// Number of k with 1 <= k < 2 pi mu_m / delta, i.e. ceil(x) - 1.
    ///
    /// A ratio within rounding noise of an integer is taken to be that
    /// integer, so delta = 2 pi mu_0 / (M + 1) yields exactly M terms.
    pub fn count_for(&self, m: u64, delta: &Float) -> Integer {
        let bits = self.bits();
        let mu = &self.mus[m as usize];
        if mu.is_zero() {
            return Integer::new();
        }
        let x = Float::with_val(bits, pi(bits) * 2u32 * mu) / delta;
        let nearest = Float::with_val(bits, x.round_ref());
        let tol = Float::with_val(bits, x.abs_ref()) * Float::with_val(bits, Float::i_exp(1, 40 - bits as i32));
        let ceil = if Float::with_val(bits, &x - &nearest).abs() <= tol {
            nearest
        } else {
            x.ceil()
        };
        let c = ceil.to_integer().unwrap_or_default() - 1u32;
        if c < 0 {
            Integer::new()
        } else {
            c
        }
    }

    pub fn counts_for(&self, delta: &Float) -> Vec<Integer> {
        (0..=self.q()).map(|m| self.count_for(m, delta)).collect()
    }

    /// C = 4 pi^2 (1 + 2/alpha) mu_0 sum_m mu_m^{alpha/2+1} p_alpha(m).
    pub fn tail_constant(&self) -> Float {
        let bits = self.bits();
        let order = self.order();
        let mut sum = Float::new(bits);
        for (mu, p) in self.mus.iter().zip(&self.pm) {
            sum += Float::with_val(bits, mu.pow(&order)) * p;
        }
        let pi = pi(bits);
        let factor = Float::with_val(bits, 2u32) / &self.alpha_value + 1u32;
        Float::with_val(bits, pi.square_ref()) * 4u32 * factor * &self.mus[0] * sum
    }
}

/// Evaluates individual series terms
/// `nu^{-a-1} mu_m^{a+1} p(m) (2 pi / k) A_k(n, m) I_{a+1}(4 pi nu mu_m / k)`
/// with a = alpha/2.
pub(crate) struct TermEvaluator<'a> {
    point: &'a CirclePoint,
    bessel: BesselI,
    phases: PhaseSum,
    /// nu^{-a-1} mu_m^{a+1} p(m) 2 pi, per m
    weights: Vec<Float>,
    /// 4 pi nu mu_m, per m
    arguments: Vec<Float>,
}

impl<'a> TermEvaluator<'a> {
    pub(crate) fn new(point: &'a CirclePoint) -> Result<Self> {
        let bits = point.bits();
        let order = point.order();
        let bessel = BesselI::new(&order, point.prec)?;
        let phases = PhaseSum::new(&point.alpha, bits);
        let pi = pi(bits);
        let nu_pow = Float::with_val(bits, (&point.nu).pow(&order));
        let mut weights = Vec::new();
        let mut arguments = Vec::new();
        for m in 0..=point.q() {
            let mu = point.mu(m);
            let w = Float::with_val(bits, mu.pow(&order)) * point.p_m(m) * &pi * 2u32 / &nu_pow;
            weights.push(w);
            arguments.push(Float::with_val(bits, &pi * 4u32) * &point.nu * mu);
        }
        Ok(TermEvaluator {
            point,
            bessel,
            phases,
            weights,
            arguments,
        })
    }

    /// Weighted Bessel factor `weight_m * I(arg_m / k)`, without A_k / k.
    pub(crate) fn bessel_part(&self, m: u64, k: u64) -> Result<Float> {
        let bits = self.point.bits();
        let z = Float::with_val(bits, &self.arguments[m as usize] / k);
        Ok(self.bessel.eval(&z)? * &self.weights[m as usize])
    }

    /// The (m, k) term given its Bessel part.
    pub(crate) fn term_with(&self, m: u64, k: u64, bessel_part: &Float, residues: &Residues) -> BigComplex {
        let a_k = self.phases.sum(residues, self.point.n, m);
        let scale = Float::with_val(self.point.bits(), bessel_part / k);
        a_k.scale(&scale)
    }

    pub(crate) fn term(&self, m: u64, k: u64) -> Result<BigComplex> {
        let b = self.bessel_part(m, k)?;
        Ok(self.term_with(m, k, &b, &Residues::new(k)))
    }
}

/// A computed truncation p_alpha(n; delta).
#[derive(Debug, Clone)]
pub struct SeriesApproximation {
    pub alpha: AlphaValue,
    pub n: u64,
    /// Real part of the truncated sum.
    pub value: Float,
    /// Imaginary residue of the sum (rounding noise only).
    pub imag: Float,
    pub delta: Float,
    pub terms_per_m: Vec<u64>,
    /// Certified bound on |p_alpha(n) - value|.
    pub tail_bound: Float,
    pub precision_used: Precision,
}

impl SeriesApproximation {
    pub fn total_terms(&self) -> u64 {
        self.terms_per_m.iter().sum()
    }

    pub fn to_record(&self) -> SeriesRecord {
        let digits = self.precision_used.decimal_digits() as usize;
        SeriesRecord {
            alpha: self.alpha.to_string(),
            n: self.n,
            delta: to_significant(&self.delta, digits),
            value: to_significant(&self.value, digits),
            tail_bound: self.tail_bound.to_string_radix(10, Some(12)),
            terms: self.terms_per_m.clone(),
            precision: self.precision_used.decimal_digits(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_record())?)
    }
}

/// JSON shape of a [`SeriesApproximation`].
#[derive(Debug, Clone, PartialEq, Serialize, serde::Deserialize)]
pub struct SeriesRecord {
    pub alpha: String,
    pub n: u64,
    pub delta: String,
    pub value: String,
    pub tail_bound: String,
    pub terms: Vec<u64>,
    pub precision: u32,
}

/// p_alpha(n; delta): the series truncated at k < 2 pi mu_m / delta, summed
/// with m ascending, then k ascending, then h ascending.
pub fn partial_series(
    alpha: &AlphaValue,
    n: u64,
    delta: &Float,
    prec: Precision,
) -> Result<SeriesApproximation> {
    let point = CirclePoint::new(alpha, n, prec)?;
    series_at(&point, delta)
}

pub(crate) fn series_at(point: &CirclePoint, delta: &Float) -> Result<SeriesApproximation> {
    point.check_delta(delta)?;
    let bits = point.bits();
    let counts: Vec<u64> = point
        .counts_for(delta)
        .iter()
        .map(|c| c.to_u64().unwrap_or(u64::MAX))
        .collect();
    let eval = TermEvaluator::new(point)?;
    let mut sum = BigComplex::zero(bits);
    for (m, &count) in counts.iter().enumerate() {
        for k in 1..=count {
            sum = &sum + &eval.term(m as u64, k)?;
        }
    }
    check_imaginary(&sum, point.prec)?;
    let tail = tail_bound_at(point, delta)?;
    Ok(SeriesApproximation {
        alpha: point.alpha.clone(),
        n: point.n,
        value: sum.re,
        imag: sum.im,
        delta: Float::with_val(bits, delta),
        terms_per_m: counts,
        tail_bound: tail.first,
        precision_used: point.prec,
    })
}

/// |Im| <= 10^(5 - digits) |Re|.
pub(crate) fn check_imaginary(sum: &BigComplex, prec: Precision) -> Result<()> {
    let bits = sum.prec();
    let allowed = Float::with_val(bits, 10u32).pow(5 - prec.decimal_digits() as i32) * sum.re.clone().abs();
    if Float::with_val(bits, sum.im.abs_ref()) > allowed {
        return Err(Error::ImaginaryResidue {
            real: sum.re.to_string_radix(10, Some(12)),
            imag: sum.im.to_string_radix(10, Some(12)),
        });
    }
    Ok(())
}

/// delta = 2 pi mu_0 / (m_terms + 1), for which the k-sum has exactly
/// `m_terms` terms when 0 < alpha < 24.
pub fn m_term_delta(alpha: &AlphaValue, m_terms: u64, prec: Precision) -> Result<Float> {
    if m_terms == 0 {
        return Err(Error::InvalidArgument("m_terms must be positive".into()));
    }
    let bits = prec.bits();
    let a = alpha.value_bits(bits);
    if alpha.q() > 0 {
        return Err(Error::AlphaTooLarge(alpha.to_string()));
    }
    let mu0 = Float::with_val(bits, &a / 24u32).sqrt();
    Ok(pi(bits) * 2u32 * mu0 / (m_terms + 1))
}

/// The m-term approximation p_alpha(n; 2 pi mu_0 / (m + 1)).
pub fn partial_series_terms(
    alpha: &AlphaValue,
    n: u64,
    m_terms: u64,
    prec: Precision,
) -> Result<SeriesApproximation> {
    let delta = m_term_delta(alpha, m_terms, prec)?;
    partial_series(alpha, n, &delta, prec)
}

/// Both forms of the truncation error bound and the constant C.
#[derive(Debug, Clone)]
pub struct TailBound {
    pub constant: Float,
    /// (C / delta) I_{a+1}(2 delta nu) / nu^{a+1}
    pub first: Float,
    /// C delta^a I_{a+1}(4 pi mu_0 nu) / (2 pi mu_0 nu)^{a+1}
    pub second: Float,
}

pub fn tail_bound(alpha: &AlphaValue, n: u64, delta: &Float, prec: Precision) -> Result<TailBound> {
    let point = CirclePoint::new(alpha, n, prec)?;
    tail_bound_at(&point, delta)
}

pub(crate) fn tail_bound_at(point: &CirclePoint, delta: &Float) -> Result<TailBound> {
    point.check_delta(delta)?;
    let bits = point.bits();
    let order = point.order();
    let bessel = BesselI::new(&order, point.prec)?;
    let c = point.tail_constant();
    let nu = point.nu();

    let arg1 = Float::with_val(bits, delta * nu) * 2u32;
    let first = Float::with_val(bits, &c / delta) * bessel.eval(&arg1)?
        / Float::with_val(bits, nu.pow(&order));

    let x = Float::with_val(bits, point.delta_max() * nu);
    let arg2 = Float::with_val(bits, &x * 2u32);
    let a_half = Float::with_val(bits, point.alpha_value() / 2u32);
    let second = Float::with_val(bits, delta.pow(&a_half)) * &c * bessel.eval(&arg2)?
        / Float::with_val(bits, (&x).pow(&order));

    Ok(TailBound {
        constant: c,
        first,
        second,
    })
}

/// The two asymptotic forms of p_alpha(n).
#[derive(Debug, Clone)]
pub struct Asymptotic {
    /// 2 pi I_{a+1}((pi alpha / 6) lambda) / lambda^{a+1}
    pub bessel_form: Float,
    /// sqrt(12/alpha) exp((alpha pi / 6) lambda) / lambda^{(alpha+3)/2}
    pub elementary_form: Float,
}

/// lambda = sqrt(24 n / alpha - 1).
pub fn asymptotic(alpha: &AlphaValue, n: u64, prec: Precision) -> Result<Asymptotic> {
    let point = CirclePoint::new(alpha, n, prec)?;
    let bits = point.bits();
    let a = point.alpha_value();
    let order = point.order();
    let pi = pi(bits);
    let lambda = (Float::with_val(bits, n * 24) / a - 1u32).sqrt();
    let arg = Float::with_val(bits, &pi * a) / 6u32 * &lambda;
    let bessel = BesselI::new(&order, prec)?.eval(&arg)?;
    let bessel_form = Float::with_val(bits, &pi * 2u32) * bessel / Float::with_val(bits, (&lambda).pow(&order));

    let expo = Float::with_val(bits, a + 3u32) / 2u32;
    let elementary_form = (Float::with_val(bits, 12u32) / a).sqrt() * arg.exp()
        / Float::with_val(bits, (&lambda).pow(&expo));
    Ok(Asymptotic {
        bessel_form,
        elementary_form,
    })
}
