//! Identities of Siegel functions, Galois orbits and reconstruction, checked against
//! independent computations.

use cmforge_core::field::{euler_phi_ideal, make_field, ray_class_degree, RayModulus};
use cmforge_core::forms::{beta_q_matrix, enumerate_reduced_forms, theta_of_form, QuadForm};
use cmforge_core::invariants::{build_spec, constant_phase, natural_level, InvariantKind};
use cmforge_core::minpoly::{
    conjugate_of, distinct_values, evaluate_conjugate, evaluate_orbit, reconstruct_polynomial, OrbitPlan,
};
use cmforge_core::poly::eval_int;
use cmforge_core::reciprocity::{build_w_group, decompose_gl2, galois_orbit, GaloisElement};
use cmforge_core::siegel::{modularity_check, reduce_with_phase, siegel_eval, SiegelPoint, Q};
use cmforge_core::{Complex, IndexVector, MatModN, PrecisionContext};
use num_integer::Integer;
use proptest::prelude::*;

const P: u32 = 80;

fn rel_err(a: &Complex, b: &Complex) -> f64 {
    (a - b).log10_abs() - b.log10_abs()
}

fn principal_point(d: i64, ctx: &PrecisionContext) -> SiegelPoint {
    let f = make_field(d).unwrap();
    SiegelPoint::from_form(&QuadForm::new(1, f.b_theta, f.c_theta), ctx)
}

fn index() -> impl Strategy<Value = IndexVector> {
    (2i64..=12, -30i64..30, -30i64..30)
        .prop_filter_map("integral", |(n, a, b)| IndexVector::over(a, b, n).ok())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, .. ProptestConfig::default() })]

    #[test]
    fn twelve_n_powers_ignore_sign_and_integer_shifts(r in index(), d in prop::sample::select(vec![5i64, 7])) {
        let ctx = PrecisionContext::new(P);
        let point = principal_point(d, &ctx);
        let e = 12 * r.level() as i64;
        let g = siegel_eval(&r, &point, &ctx).unwrap().value.powi(e);
        let neg = IndexVector::new(-r.r1, -r.r2).unwrap();
        let g_neg = siegel_eval(&neg, &point, &ctx).unwrap().value.powi(e);
        let (red, _) = reduce_with_phase(&r).unwrap();
        let g_red = siegel_eval(&red, &point, &ctx).unwrap().value.powi(e);
        prop_assert!(rel_err(&g_neg, &g) < -((P - 20) as f64));
        prop_assert!(rel_err(&g_red, &g) < -((P - 20) as f64));
    }

    #[test]
    fn shift_phase_is_exact(r in index()) {
        let ctx = PrecisionContext::new(P);
        let point = principal_point(7, &ctx);
        let (red, x) = reduce_with_phase(&r).unwrap();
        let direct = siegel_eval(&r, &point, &ctx).unwrap().value;
        let via = &ctx.cis_pi(&x) * &siegel_eval(&red, &point, &ctx).unwrap().value;
        prop_assert!(rel_err(&via, &direct) < -((P - 10) as f64));
    }
}

/// `g_r(gamma tau) / g_{r gamma}(tau)` is one twelfth root of unity for all `r`.
#[test]
fn modular_transformation_factor_is_independent_of_index() {
    let ctx = PrecisionContext::new(P);
    let tau = Complex::new(ctx.zero(), ctx.ratio(&Q::new(6, 5)));
    let base = SiegelPoint::new(tau.clone()).unwrap();
    let one = ctx.one();
    let s_tau = SiegelPoint::new(-&one / &tau).unwrap();
    let t_tau = SiegelPoint::new(&tau + &one).unwrap();
    let indices: Vec<_> = [(1, 3, 7), (0, 1, 9), (5, 2, 6), (3, 8, 10), (1, 1, 2)]
        .iter()
        .map(|&(a, b, n)| IndexVector::over(a, b, n).unwrap())
        .collect();
    for (moved, [[a, b], [c, d]]) in [(&s_tau, [[0i64, -1], [1, 0]]), (&t_tau, [[1, 1], [0, 1]])] {
        let mut factor: Option<Complex> = None;
        for r in &indices {
            let rg = IndexVector::new(r.r1 * a + r.r2 * c, r.r1 * b + r.r2 * d).unwrap();
            let q = &siegel_eval(r, moved, &ctx).unwrap().value / &siegel_eval(&rg, &base, &ctx).unwrap().value;
            match &factor {
                None => {
                    assert!(rel_err(&q.powi(12), &one) < -60.0);
                    factor = Some(q);
                }
                Some(f) => assert!(rel_err(&q, f) < -60.0),
            }
        }
    }
}

fn fields_mod_four_zero() -> Vec<i64> {
    vec![1, 2, 5, 6, 10, 13, 14, 17, 21, 22]
}

#[test]
fn real_quotients_are_real() {
    let ctx = PrecisionContext::new(P);
    let mut specs = 0;
    for d in fields_mod_four_zero() {
        let point = principal_point(d, &ctx);
        for n in [3i64, 4, 5, 6, 8] {
            let den = siegel_eval(&IndexVector::over(0, 1, n).unwrap(), &point, &ctx).unwrap().value;
            for t in 1..n {
                if t.gcd(&n) != 1 {
                    continue;
                }
                let half = IndexVector::new(Q::new(1, 2), Q::new(t, n)).unwrap();
                let num = siegel_eval(&half, &point, &ctx).unwrap().value;
                let v = &(&ctx.cis_pi(&(Q::new(t, 2 * n) + Q::new(1, 2))) * &num) / &den;
                assert!(v.im.log10_abs() - v.log10_abs().max(0.0) < -((P - 20) as f64), "d={d} N={n} t={t}");
                let s = siegel_eval(&IndexVector::over(0, t, n).unwrap(), &point, &ctx).unwrap().value;
                let w = &s / &den;
                assert!(w.im.log10_abs() - w.log10_abs().max(0.0) < -((P - 20) as f64));
                specs += 2;
            }
        }
    }
    assert!(specs >= 50);
}

#[test]
fn orbit_size_is_ray_class_degree() {
    for d in [1, 2, 5, 7, 11] {
        let f = make_field(d).unwrap();
        let fcg = enumerate_reduced_forms(f.disc).unwrap();
        for n in 3..=10 {
            let m = RayModulus::new(&f, n).unwrap();
            assert_eq!(galois_orbit(&f, n, &fcg).unwrap().len() as u64, ray_class_degree(&m), "d={d} N={n}");
        }
    }
}

#[test]
fn euler_phi_counts_invertible_residues() {
    for d in (1..=30).filter(|&d| make_field(d).is_ok()) {
        let f = make_field(d).unwrap();
        for n in 2..=30u64 {
            let ni = n as i64;
            let count = (0..ni)
                .flat_map(|s| (0..ni).map(move |t| (s, t)))
                .filter(|&(s, t)| {
                    let norm = t * t - f.b_theta * s * t + f.c_theta * s * s;
                    norm.gcd(&ni) == 1
                })
                .count() as u64;
            assert_eq!(euler_phi_ideal(&RayModulus::new(&f, n).unwrap()), count, "d={d} N={n}");
        }
    }
}

fn brute_modular(family: &[(IndexVector, i64)], n: i64) -> bool {
    // work with the rationals directly: sum m r1^2 in (gcd(2, N) / N) Z, etc.
    let quad = Q::new(2i64.gcd(&n), n);
    let (mut a, mut b, mut c, mut w) = (Q::from_integer(0), Q::from_integer(0), Q::from_integer(0), 0i64);
    for (r, m) in family {
        a += r.r1 * r.r1 * *m;
        b += r.r2 * r.r2 * *m;
        c += r.r1 * r.r2 * *m;
        w += m;
    }
    (a / quad).is_integer() && (b / quad).is_integer() && (c * n).is_integer() && (w * 12i64.gcd(&n)) % 12 == 0
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, .. ProptestConfig::default() })]

    #[test]
    fn modularity_matches_rational_congruences(
        n in 2i64..=12,
        terms in prop::collection::vec((0i64..12, 0i64..12, -6i64..=6), 1..5),
    ) {
        let family: Vec<_> = terms
            .iter()
            .filter_map(|&(a, b, m)| IndexVector::over(a % n, b % n, n).ok().map(|r| (r, m)))
            .collect();
        prop_assert_eq!(modularity_check(&family, n as u64).unwrap(), brute_modular(&family, n));
    }
}

fn element(alpha: MatModN, form: QuadForm, level: u64) -> GaloisElement {
    let gamma = alpha.mul(&beta_q_matrix(&form, level));
    let lift = decompose_gl2(&gamma).unwrap();
    GaloisElement { alpha, form, gamma, lift, theta: theta_of_form(&form) }
}

#[test]
fn kernel_fixes_conjugates() {
    let ctx = PrecisionContext::new(P);
    let cases = [
        (5, 4, InvariantKind::RealHalfQuotient { t: 1 }),
        (1, 9, InvariantKind::RealPrimeSquare { p: 3 }),
        (3, 5, InvariantKind::SrInvariant { s: 0, t: 1 }),
        (7, 5, InvariantKind::Quotient { s: 12, t: 13 }),
    ];
    for (d, n, kind) in cases {
        let m = RayModulus::new(&make_field(d).unwrap(), n).unwrap();
        let spec = build_spec(&m, kind).unwrap();
        let level = natural_level(&spec, n).unwrap();
        let family = spec.family();
        let y = constant_phase(&family, spec.phase);
        let w = build_w_group(&m.field, level).unwrap();
        let fcg = enumerate_reduced_forms(m.field.disc).unwrap();
        for form in &fcg.forms {
            let point = SiegelPoint::from_form(form, &ctx);
            for alpha in w.cosets.iter().take(4) {
                let base = conjugate_of(&family, y, level, &element(*alpha, *form, level)).unwrap();
                let v = evaluate_conjugate(&base, &point, &ctx).unwrap();
                for k in &w.kernel {
                    let c = conjugate_of(&family, y, level, &element(alpha.mul(k), *form, level)).unwrap();
                    let u = evaluate_conjugate(&c, &point, &ctx).unwrap();
                    assert!(rel_err(&u, &v) < -((P - 20) as f64), "d={d} N={n} alpha={alpha} k={k}");
                }
            }
        }
    }
}

#[test]
fn evaluation_is_deterministic() {
    let ctx = PrecisionContext::new(P);
    let m = RayModulus::new(&make_field(7).unwrap(), 5).unwrap();
    let spec = build_spec(&m, InvariantKind::Quotient { s: 12, t: 13 }).unwrap();
    let a = evaluate_orbit(&spec, &m, 25, &ctx).unwrap();
    let b = evaluate_orbit(&spec, &m, 25, &ctx).unwrap();
    assert_eq!(a.values, b.values);
}

#[test]
fn doubling_precision_keeps_polynomial() {
    let m = RayModulus::new(&make_field(5).unwrap(), 4).unwrap();
    let spec = build_spec(&m, InvariantKind::RealHalfQuotient { t: 1 }).unwrap();
    let polys: Vec<_> = [120, 240]
        .iter()
        .map(|&p| {
            let ctx = PrecisionContext::new(p);
            reconstruct_polynomial(&evaluate_orbit(&spec, &m, 4, &ctx).unwrap(), &ctx).unwrap()
        })
        .collect();
    assert_eq!(polys[0], polys[1]);
}

#[test]
fn orbit_values_are_roots() {
    let ctx = PrecisionContext::new(120);
    let m = RayModulus::new(&make_field(1).unwrap(), 9).unwrap();
    let spec = build_spec(&m, InvariantKind::RealPrimeSquare { p: 3 }).unwrap();
    let orbit = evaluate_orbit(&spec, &m, 9, &ctx).unwrap();
    assert_eq!(orbit.values.len(), 18);
    // conjugates of a real generator need not be real, but they come in pairs
    let real = orbit.values.iter().filter(|v| v.im.log10_abs() < -100.0).count();
    assert_eq!(real, 6);
    assert!(orbit.closed_under_conjugation(-40.0));
    let f = reconstruct_polynomial(&orbit, &ctx).unwrap();
    let cmax = f.ascending().iter().map(|c| c.bits()).max().unwrap() as f64 * core::f64::consts::LOG10_2;
    for v in &orbit.values {
        let mut acc = Complex::zero(v.re.prec());
        for c in f.descending() {
            acc = &(&acc * v) + &Complex::from_real(cmforge_core::Float::from_bigint(&c, v.re.prec()));
        }
        assert!(acc.log10_abs() < -24.0 + cmax);
    }
    assert_eq!(eval_int(f.ascending(), &0.into()), 1.into());
}

#[test]
fn ramified_five_orbit_repeats_each_root() {
    let ctx = PrecisionContext::new(120);
    let m = RayModulus::new(&make_field(5).unwrap(), 5).unwrap();
    let spec = build_spec(&m, InvariantKind::BetaQuotient { p: 5 }).unwrap();
    let plan = OrbitPlan::new(&spec, &m, 25).unwrap();
    assert_eq!(plan.len(), 500);
    let mut orbit = evaluate_orbit(&spec, &m, 25, &ctx).unwrap();
    orbit.include_conjugates = true;
    let (roots, counts) = distinct_values(&orbit.expanded(), -60.0);
    assert_eq!(roots.len(), 40);
    assert!(counts.iter().all(|&c| c == 25));
}
