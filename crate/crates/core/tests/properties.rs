mod common;

use std::cmp::Ordering;

use harmonic_valence::certify::{
    certified_sign, count_alternations, descartes_positive_bound, interval_eval,
    sign_change_lower_bound, sign_count_identity, sturm_count, sturm_count_extended, trig_enclose,
    CertifiedSign,
};
use harmonic_valence::dyadic::Rounding;
use harmonic_valence::ensembles::{sample_complex_kostlan, KostlanSampler};
use harmonic_valence::instance::{eval_harmonic, restrict_to_line};
use harmonic_valence::search::verify_certificate;
use harmonic_valence::valence::{certified_valence, choose_epsilon, default_schedule};
use harmonic_valence::{
    ComplexPolynomial, Dyadic, LineRestriction, Polynomial, Scalar, ValenceCertificate,
    WilmshurstInstance,
};
use proptest::prelude::*;

fn dyadic() -> impl Strategy<Value = Dyadic> {
    (-1000i64..1000, -12i64..6).prop_map(|(m, e)| Dyadic::new(m.into(), e))
}

fn nonzero_dyadic() -> impl Strategy<Value = Dyadic> {
    dyadic().prop_filter("nonzero", |d| !num_traits::Zero::is_zero(d))
}

fn int_poly(max_degree: usize) -> impl Strategy<Value = Polynomial<Dyadic>> {
    (1..=max_degree)
        .prop_flat_map(|d| {
            (
                prop::collection::vec(-20i64..=20, d),
                prop_oneof![1i64..=9, -9i64..=-1],
            )
        })
        .prop_map(|(mut cs, lead)| {
            cs.push(lead);
            Polynomial::new(cs.into_iter().map(Dyadic::from_int).collect())
        })
}

/// Products of linear factors with small dyadic roots (repeats allowed) and
/// an optional positive quadratic.
fn rooted_poly() -> impl Strategy<Value = (Polynomial<Dyadic>, Vec<Dyadic>)> {
    (
        prop::collection::vec((-16i64..16, 0i64..3), 1..6),
        prop::option::of(1i64..10),
    )
        .prop_map(|(roots, quad)| {
            let roots: Vec<Dyadic> = roots
                .into_iter()
                .map(|(m, e)| Dyadic::new(m.into(), -e))
                .collect();
            let mut p = Polynomial::from_roots(&roots);
            if let Some(c) = quad {
                let q = Polynomial::new(vec![
                    Dyadic::from_int(c),
                    Dyadic::from_int(0),
                    Dyadic::from_int(1),
                ]);
                p = multiply(&p, &q);
            }
            (p, roots)
        })
}

fn multiply(a: &Polynomial<Dyadic>, b: &Polynomial<Dyadic>) -> Polynomial<Dyadic> {
    let mut out = vec![Dyadic::from_int(0); a.coeffs().len() + b.coeffs().len() - 1];
    for (i, x) in a.coeffs().iter().enumerate() {
        for (j, y) in b.coeffs().iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    Polynomial::new(out)
}

fn instance(n: usize, m: usize, seed: u64, eps_exp: i64) -> WilmshurstInstance {
    let q = sample_complex_kostlan(&KostlanSampler::new(m, seed, 0)).unwrap();
    WilmshurstInstance::new(n, m, Dyadic::pow2(-eps_exp), q).unwrap()
}

fn family() -> impl Strategy<Value = (usize, usize)> {
    (2usize..7).prop_flat_map(|n| (Just(n), 1..n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dyadic_ring_laws(a in dyadic(), b in dyadic(), c in dyadic()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        let f = a.to_f64() * b.to_f64();
        prop_assert_eq!((&a * &b).to_f64(), f);
    }

    #[test]
    fn dyadic_text_and_float_round_trip(a in dyadic(), x in -1e12f64..1e12) {
        let parsed: Dyadic = a.to_string().parse().unwrap();
        prop_assert_eq!(parsed, a);
        let d = Dyadic::from_f64_exact(x).unwrap();
        prop_assert_eq!(d.to_f64(), x);
    }

    #[test]
    fn rounding_brackets(a in dyadic(), bits in 1u64..12) {
        let down = a.round_to_bits(bits, Rounding::Down);
        let up = a.round_to_bits(bits, Rounding::Up);
        prop_assert!(down <= a && a <= up);
        prop_assert!(down.bits() <= bits && up.bits() <= bits);
    }

    #[test]
    fn division_brackets(a in dyadic(), b in nonzero_dyadic(), bits in 8u64..80) {
        let lo = a.div_rounded(&b, bits, Rounding::Down);
        let hi = a.div_rounded(&b, bits, Rounding::Up);
        let (l, h) = (&lo * &b, &hi * &b);
        if b.is_positive() {
            prop_assert!(l <= a && a <= h);
        } else {
            prop_assert!(h <= a && a <= l);
        }
    }

    #[test]
    fn sturm_matches_constructed_roots((p, roots) in rooted_poly(), a in dyadic(), w in 1i64..400) {
        let b = &a + &Dyadic::new(w.into(), -3);
        let mut distinct = roots.clone();
        distinct.sort();
        distinct.dedup();
        let inside = distinct.iter().filter(|r| **r > a && **r < b).count();
        prop_assert_eq!(sturm_count(&p, &a, &b).unwrap(), inside);
        prop_assert_eq!(sturm_count_extended(&p, None, None).unwrap(), distinct.len());
    }

    #[test]
    fn sturm_matches_rational_bisection(p in int_poly(8), a in dyadic(), w in 1i64..400) {
        let b = &a + &Dyadic::new(w.into(), -2);
        prop_assert_eq!(sturm_count(&p, &a, &b).unwrap(), common::brute_force_count(&p, Some(&a), Some(&b)));
        prop_assert_eq!(
            sturm_count_extended(&p, None, None).unwrap(),
            common::brute_force_count(&p, None, None)
        );
    }

    #[test]
    fn descartes_is_sound((p, roots) in rooted_poly()) {
        let bound = descartes_positive_bound(&p).unwrap();
        let positive_with_multiplicity = roots.iter().filter(|r| r.is_positive()).count();
        prop_assert!(positive_with_multiplicity <= bound);
        prop_assert_eq!((bound - positive_with_multiplicity) % 2, 0);
    }

    #[test]
    fn sign_identity(p in int_poly(8)) {
        let (sp, sm, s0) = sign_count_identity(&p).unwrap();
        prop_assert!(sp + sm + s0 <= p.degree().unwrap());
    }

    #[test]
    fn exact_signs_agree_with_evaluation(p in int_poly(8), r in dyadic()) {
        let g = LineRestriction::from_polynomial(&p);
        let value = p.eval(&r).sign();
        match certified_sign(&g, &r, 64) {
            CertifiedSign::Positive => prop_assert_eq!(value, Ordering::Greater),
            CertifiedSign::Negative => prop_assert_eq!(value, Ordering::Less),
            CertifiedSign::Undetermined(_) => prop_assert_eq!(value, Ordering::Equal),
        }
    }

    #[test]
    fn lower_bound_never_exceeds_sturm(p in int_poly(8), start in -40i64..0, steps in 2usize..40) {
        let samples: Vec<Dyadic> = (0..steps).map(|i| Dyadic::new((start + 3 * i as i64).into(), -2)).collect();
        let g = LineRestriction::from_polynomial(&p);
        let lower = sign_change_lower_bound(&g, &samples, 64).unwrap();
        let exact = sturm_count(&p, &samples[0], samples.last().unwrap()).unwrap();
        prop_assert!(lower <= exact);
    }

    #[test]
    fn adding_samples_never_loses_alternations(p in int_poly(6), extra in prop::collection::vec(-80i64..80, 1..10)) {
        let g = LineRestriction::from_polynomial(&p);
        let coarse: Vec<Dyadic> = (-10..=10).map(Dyadic::from_int).collect();
        let mut fine = coarse.clone();
        fine.extend(extra.iter().map(|&e| Dyadic::new(e.into(), -3)));
        fine.sort();
        fine.dedup();
        let signs = |s: &[Dyadic]| s.iter().map(|r| certified_sign(&g, r, 64)).collect::<Vec<_>>();
        // a sample landing on a root is undetermined and blanks both neighbouring pairs
        prop_assume!(signs(&fine).iter().all(CertifiedSign::is_determined));
        let a = count_alternations(&coarse, &signs(&coarse), false);
        let b = count_alternations(&fine, &signs(&fine), false);
        prop_assert!(b >= a);
    }

    #[test]
    fn trig_enclosures_contain_libm(k in 0u64..40, n in 1u64..40, bits in 32u32..200) {
        let (c, s) = trig_enclose(k, 1, n, bits);
        let angle = k as f64 * std::f64::consts::PI / n as f64;
        let tol = 1e-14;
        prop_assert!(c.lo().to_f64() - tol <= angle.cos() && angle.cos() <= c.hi().to_f64() + tol);
        prop_assert!(s.lo().to_f64() - tol <= angle.sin() && angle.sin() <= s.hi().to_f64() + tol);
        prop_assert!(c.width().to_f64() <= 2f64.powi(-(bits as i32) + 4));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn restriction_encloses_real_axis_values((n, m) in family(), seed in 0u64..1000, r in dyadic()) {
        // line 0 has exact trigonometry, so the restriction is exactly Re h(r)
        let inst = instance(n, m, seed, 8);
        let g = restrict_to_line(&inst, 0, 64).unwrap();
        let exact = eval_harmonic(&inst, (&r, &Dyadic::from_int(0))).0;
        prop_assert!(interval_eval(&g, &r).contains(&exact));
    }

    #[test]
    fn restriction_tracks_h_on_every_line((n, m) in family(), seed in 0u64..1000, j in 0usize..7, r in -4.0f64..4.0) {
        let inst = instance(n, m, seed, 4);
        let j = j % n;
        let g = restrict_to_line(&inst, j, 128).unwrap();
        let rd = Dyadic::from_f64_exact(r).unwrap();
        let value = interval_eval(&g, &rd);
        prop_assert!(value.width().to_f64() < 1e-20);
        let theta = j as f64 * std::f64::consts::PI / n as f64;
        let (x, y) = (r * theta.cos(), r * theta.sin());
        let hv = eval_harmonic(&inst, (&Dyadic::from_f64_exact(x).unwrap(), &Dyadic::from_f64_exact(y).unwrap()));
        let scale = 1.0 + hv.0.to_f64().abs() + 100.0 * r.abs().powi(n as i32);
        // the restriction is normalised by (-1)^j
        let expected = if j % 2 == 0 { hv.0.to_f64() } else { -hv.0.to_f64() };
        prop_assert!((value.midpoint().to_f64() - expected).abs() < 1e-12 * scale);
        prop_assert!(hv.1.to_f64().abs() < 1e-12 * scale);
    }

    #[test]
    fn certificates_respect_bounds_and_verify((n, m) in family(), seed in 0u64..1000, e in 1i64..40) {
        let inst = instance(n, m, seed, e);
        let cert = certified_valence(&inst, 512).unwrap();
        prop_assert!(cert.total_certified <= n * n);
        prop_assert!(cert.total_certified <= n * (m + 2));
        prop_assert!(verify_certificate(&cert).unwrap());
        let back = ValenceCertificate::from_json_str(&cert.to_json_string()).unwrap();
        prop_assert_eq!(back.total_certified, cert.total_certified);
        prop_assert!(verify_certificate(&back).unwrap());
    }

    #[test]
    fn precision_is_monotone((n, m) in family(), seed in 0u64..1000, e in 1i64..60) {
        let inst = instance(n, m, seed, e);
        let low = certified_valence(&inst, 64).unwrap();
        let high = certified_valence(&inst, 1024).unwrap();
        prop_assert!(high.total_certified >= low.total_certified);
    }

    #[test]
    fn per_line_counts_fit_descartes((n, m) in family(), seed in 0u64..1000) {
        let inst = instance(n, m, seed, 20);
        let cert = certified_valence(&inst, 512).unwrap();
        for line in &cert.per_line {
            prop_assert!(line.certified_lower <= m + 2);
        }
    }

    #[test]
    fn chosen_epsilon_is_the_maximum((n, m) in family(), seed in 0u64..1000) {
        let q = sample_complex_kostlan(&KostlanSampler::new(m, seed, 0)).unwrap();
        let schedule = default_schedule();
        let (eps, best) = choose_epsilon(&q, n, &schedule, 512).unwrap();
        let totals: Vec<usize> = schedule
            .iter()
            .map(|e| {
                let inst = WilmshurstInstance::new(n, m, e.clone(), q.clone()).unwrap();
                certified_valence(&inst, 512).unwrap().total_certified
            })
            .collect();
        let max = *totals.iter().max().unwrap();
        prop_assert_eq!(best.total_certified, max);
        let first_max = schedule.iter().zip(&totals).find(|(_, t)| **t == max).unwrap().0;
        prop_assert_eq!(&eps, first_max);
    }

    #[test]
    fn flipped_sign_fails_verification((n, m) in family(), seed in 0u64..1000) {
        let inst = instance(n, m, seed, 10);
        let mut cert = certified_valence(&inst, 512).unwrap();
        let spot = cert.per_line.iter().enumerate().find_map(|(l, line)| {
            line.signs.iter().position(|s| s.is_determined()).map(|i| (l, i))
        });
        if let Some((l, i)) = spot {
            let s = &mut cert.per_line[l].signs[i];
            *s = if *s == CertifiedSign::Positive { CertifiedSign::Negative } else { CertifiedSign::Positive };
            prop_assert!(!verify_certificate(&cert).unwrap());
        }
    }
}

#[test]
fn zero_constant_term_moves_to_the_origin() {
    let q = ComplexPolynomial::new(vec![
        (Dyadic::from_int(0), Dyadic::from_int(1)),
        (Dyadic::from_int(1), Dyadic::from_int(0)),
        (Dyadic::from_int(0), Dyadic::from_int(1)),
    ]);
    let inst = WilmshurstInstance::new(3, 2, Dyadic::pow2(-4), q).unwrap();
    let cert = certified_valence(&inst, 512).unwrap();
    assert!(cert.origin_is_zero);
    for line in &cert.per_line {
        assert!(line
            .samples_used
            .iter()
            .all(|s| !num_traits::Zero::is_zero(s)));
    }
    assert!(verify_certificate(&cert).unwrap());
}
