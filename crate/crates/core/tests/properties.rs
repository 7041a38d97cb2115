use proptest::prelude::*;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use fracpart::circle;
use fracpart::jensen::{self, Mode, Polynomial, Values};
use fracpart::numkernel::bessel_i;
use fracpart::oracle;
use fracpart::{AlphaValue, Precision};

fn coprime(h: i64, k: i64) -> bool {
    Integer::from(h).gcd(&Integer::from(k)) == 1
}

fn prec() -> Precision {
    Precision::digits(40).unwrap()
}

/// Coefficients of p(a X + b), ascending.
fn compose_affine(p: &[Rational], a: &Rational, b: &Rational) -> Vec<Rational> {
    let mut out = vec![Rational::new()];
    for c in p.iter().rev() {
        let mut next = vec![Rational::new(); out.len() + 1];
        for (i, o) in out.iter().enumerate() {
            next[i + 1] += Rational::from(o * a);
            next[i] += Rational::from(o * b);
        }
        next[0] += c;
        out = next;
    }
    out
}

fn from_roots(roots: &[i64]) -> Vec<Rational> {
    let mut p = vec![Rational::from(1)];
    for &r in roots {
        let mut next = vec![Rational::new(); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= Rational::from(c * r);
        }
        p = next;
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dedekind_reciprocity(k in 2i64..=200, h in 1i64..200) {
        let h = h % k;
        prop_assume!(h > 0 && coprime(h, k));
        let lhs = circle::dedekind_sum(h, k).unwrap() + circle::dedekind_sum(k, h).unwrap();
        let rhs = Rational::from((-1, 4))
            + (Rational::from((h, k)) + Rational::from((k, h)) + Rational::from((1, h * k))) / 12u32;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dedekind_fast_matches_naive(k in 1i64..=300, h in -400i64..400) {
        prop_assume!(coprime(h, k));
        let s = circle::dedekind_sum(h, k).unwrap();
        prop_assert_eq!(&s, &circle::dedekind_sum_naive(h, k).unwrap());
        let scaled = Rational::from(&s * (6 * k));
        prop_assert_eq!(scaled.denom(), &Integer::from(1));
        prop_assert_eq!(circle::dedekind_sum(-h, k).unwrap(), -s);
    }

    #[test]
    fn kloosterman_bounded_and_periodic(
        k in 1u64..=40,
        n in 0u64..100,
        which in 0usize..4,
    ) {
        let alpha = AlphaValue::parse(["1", "51/7", "1/3", "49/2"][which]).unwrap();
        let m = alpha.q();
        let a = circle::kloosterman(&alpha, n, m, k, prec());
        let b = circle::kloosterman(&alpha, n + k, m, k, prec());
        let bits = prec().bits();
        prop_assert!(a.abs() <= Float::with_val(bits, k) * (1.0 + 1e-30));
        let diff = (&a - &b).abs();
        prop_assert!(diff < Float::with_val(bits, 1e-30), "A_k not periodic: {}", diff);
    }

    #[test]
    fn paris_inequality(nu in 1.01f64..10.0, x in 0.01f64..100.0, ratio in 1.001f64..5.0) {
        let p = prec();
        let bits = p.bits();
        let nu = Float::with_val(bits, nu);
        let (x, y) = (Float::with_val(bits, x), Float::with_val(bits, x * ratio));
        let lhs = bessel_i(&nu, &x, p).unwrap() / bessel_i(&nu, &y, p).unwrap();
        let rhs = Float::with_val(bits, &x / &y).pow(&nu);
        prop_assert!(lhs < rhs);
    }

    #[test]
    fn bessel_increasing(nu in 0.0f64..8.0, x in 0.0f64..200.0, dx in 0.01f64..5.0) {
        let p = prec();
        let bits = p.bits();
        let nu = Float::with_val(bits, nu);
        let a = bessel_i(&nu, &Float::with_val(bits, x), p).unwrap();
        let b = bessel_i(&nu, &Float::with_val(bits, x + dx), p).unwrap();
        prop_assert!(a < b);
    }

    #[test]
    fn rational_alpha_round_trips(a in 1i64..10_000, b in 1i64..10_000) {
        let alpha = AlphaValue::ratio(a, b).unwrap();
        let again = AlphaValue::parse(&alpha.to_string()).unwrap();
        prop_assert_eq!(&again, &alpha);
        prop_assert_eq!(again.as_rational(), Some(&Rational::from((a, b))));
    }

    #[test]
    fn hyperbolicity_affine_invariant(
        coeffs in proptest::collection::vec(-20i64..=20, 2..=6),
        a in prop_oneof![-5i64..=-1, 1i64..=5],
        b in -5i64..=5,
        scale in prop_oneof![-7i64..=-1, 1i64..=7],
    ) {
        let p = Polynomial::from_integers(&coeffs);
        prop_assume!(p.degree().is_some_and(|d| d >= 1));
        let verdict = jensen::is_hyperbolic(&p, Mode::Exact).unwrap();
        let moved: Vec<Rational> = compose_affine(p.as_exact().unwrap(), &Rational::from(a), &Rational::from(b))
            .into_iter()
            .map(|c| c * scale)
            .collect();
        prop_assert_eq!(jensen::is_hyperbolic(&Polynomial::exact(moved), Mode::Exact).unwrap(), verdict);
    }

    #[test]
    fn products_of_linear_factors_are_hyperbolic(roots in proptest::collection::vec(-9i64..=9, 1..=7)) {
        let p = Polynomial::exact(from_roots(&roots));
        prop_assert!(jensen::is_hyperbolic(&p, Mode::Exact).unwrap());
    }

    #[test]
    fn quadratic_verdict_is_discriminant(a in prop_oneof![-30i64..=-1, 1i64..=30], b in -30i64..=30, c in -30i64..=30) {
        let p = Polynomial::from_integers(&[c, b, a]);
        prop_assert_eq!(jensen::is_hyperbolic(&p, Mode::Exact).unwrap(), b * b - 4 * a * c >= 0);
    }

    #[test]
    fn bound_is_sound(which in 0usize..5, n in 1u64..=40, fraction in 0.05f64..0.95) {
        let p = Precision::default();
        let bits = p.bits();
        let alpha = AlphaValue::parse(["1/3", "1", "5", "e", "51/7"][which]).unwrap();
        let exact = oracle::coeffs(&alpha, n as usize, p).real_at(n as usize, bits);
        let mu0 = (alpha.value_at(p) / 24u32).sqrt();
        let delta = Float::with_val(bits, Float::with_val(bits, rug::float::Constant::Pi) * 2u32) * mu0 * fraction;
        let s = circle::partial_series(&alpha, n, &delta, p).unwrap();
        let err = Float::with_val(bits, &s.value - &exact).abs();
        prop_assert!(err <= s.tail_bound, "error {} above bound {}", err, s.tail_bound);
    }
}

#[test]
fn degree_two_is_log_concavity() {
    for text in ["1", "1/2", "51/7", "3/11"] {
        let alpha = AlphaValue::parse(text).unwrap();
        let table = oracle::coeffs(&alpha, 80, Precision::default());
        let p = table.exact().unwrap();
        let values = Values::from_table(&table);
        for n in 0..=78 {
            let j = jensen::jensen_poly(&values, 2, n).unwrap();
            let lc = Rational::from(&p[n + 1] * &p[n + 1]) >= Rational::from(&p[n] * &p[n + 2]);
            assert_eq!(jensen::is_hyperbolic(&j, Mode::Exact).unwrap(), lc, "alpha = {text}, n = {n}");
        }
    }
}

#[test]
fn integer_alpha_is_a_convolution_power() {
    let p = Precision::default();
    let one = oracle::coeffs(&AlphaValue::integer(1).unwrap(), 60, p);
    let two = oracle::coeffs(&AlphaValue::integer(2).unwrap(), 60, p);
    let (one, two) = (one.exact().unwrap(), two.exact().unwrap());
    for n in 0..=60 {
        let conv: Rational = (0..=n).map(|k| Rational::from(&one[k] * &one[n - k])).sum();
        assert_eq!(two[n], conv, "n = {n}");
    }
}

#[test]
fn denominators_clear_coefficients() {
    let p = Precision::default();
    for (a, b) in [(51i64, 7u64), (1, 2), (3, 11), (1, 3)] {
        let table = oracle::coeffs(&AlphaValue::ratio(a, b as i64).unwrap(), 25, p);
        for n in 0..=25u64 {
            let d = oracle::denominator(a, b, n).unwrap();
            let scaled = Rational::from(table.exact_at(n as usize).unwrap() * &d);
            assert_eq!(scaled.denom(), &Integer::from(1), "alpha = {a}/{b}, n = {n}");
        }
    }
}

#[test]
fn renormalized_coefficients_approach_hermite() {
    let p = Precision::default();
    let alpha = AlphaValue::integer(1).unwrap();
    for d in [2, 3] {
        let near = jensen::JensenReport::new(&alpha, d, 300, p).unwrap();
        let far = jensen::JensenReport::new(&alpha, d, 2500, p).unwrap();
        let dist = |r: &jensen::JensenReport| r.hermite_distance.as_ref().unwrap().parse::<f64>().unwrap();
        assert!(dist(&far) < dist(&near), "d = {d}");
    }
}
