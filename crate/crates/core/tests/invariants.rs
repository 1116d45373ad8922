//! Property tests for the stated invariants of every module.

mod common;

use common::*;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use pustat::applications::*;
use pustat::bounds::*;
use pustat::combinat::*;
use pustat::geometry::*;
use pustat::model::*;
use pustat::moments::*;

fn big(x: &num_bigint::BigUint) -> f64 {
    x.to_f64().unwrap()
}

// ---------- combinat ----------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn faa_di_bruno_matches_brute_force(n in 1usize..=8, kk in 1usize..=8) {
        let k = kk.min(n);
        let lib = faa_di_bruno_sum(n, k).unwrap();
        prop_assert_eq!(lib.to_u128().unwrap(), faa_di_bruno_brute(n, k));
    }

    #[test]
    fn star2_counts_sum_to_enumeration_and_vanish_outside_range(m in 1usize..=4, ell in 2usize..=5) {
        prop_assume!(m * ell <= 10);
        let hist = star2_histogram(m, ell).unwrap();
        let listed = enumerate_star2(m, ell).unwrap().count() as u128;
        let total: u128 = hist.iter().map(|c| c.to_u128().unwrap()).sum();
        prop_assert_eq!(total, listed);
        let hi = m * ell - ell.div_ceil(2);
        for k in 0..=m * ell {
            let c = count_star2(m, ell, k).unwrap();
            if k < m || k > hi {
                prop_assert!(num_traits::Zero::is_zero(&c), "k = {} outside [{}, {}] has {}", k, m, hi, c);
            }
        }
    }

    #[test]
    fn block_factorials_bounded_by_ell_power(m in 1usize..=3, ell in 2usize..=4, q in 0.0f64..=1.0) {
        let cap = (ell as f64).powf(q * (m * ell) as f64);
        for sigma in enumerate_star2(m, ell).unwrap() {
            let p = big(&sigma.block_factorial_product()).powf(q);
            prop_assert!(p <= cap * (1.0 + 1e-12));
        }
    }
}

#[test]
fn stirling_recurrence_holds_on_the_table() {
    let t = StirlingTable::new(40);
    for n in 1..=40 {
        for k in 1..=n {
            let get = |n: usize, k: usize| t.get(n, k).cloned().unwrap_or_default();
            let lhs = get(n, k);
            let rhs = get(n - 1, k) * k + get(n - 1, k - 1);
            assert_eq!(lhs, rhs, "S({n},{k})");
        }
    }
    for n in 1..=9 {
        for k in 1..=n {
            assert_eq!(stirling2(n, k).unwrap().to_u128().unwrap(), stirling2_brute(n, k));
        }
    }
}

// ---------- model ----------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn a2_to_a1_bounds_are_probabilities(
        alpha1 in 0.05f64..20.0, alpha2 in 0.05f64..5.0, m in 1usize..=3,
        gamma in 0.1f64..500.0, t in 0.0f64..1e7,
    ) {
        let a2 = A2Params::new(alpha1, alpha2).unwrap();
        let model = ConstantKernel::new(m, alpha2, alpha1).unwrap().model();
        let a1 = UStatModel::new(m, Assumption::A1(a2_to_a1(&a2))).unwrap()
            .with_f1_norm_sq(model.f1_norm_sq.unwrap()).unwrap();
        for mdl in [&model, &a1] {
            for tail in [Tail::Two, Tail::Upper, Tail::Lower] {
                for r in [main_bound(mdl, gamma, t, tail).unwrap(), unified_bound(mdl, gamma, t, tail).unwrap()] {
                    prop_assert!((0.0..=1.0).contains(&r.prob_bound));
                    prop_assert!(r.rate >= 0.0);
                }
            }
        }
        let lo = largeorder_upper(&a2, m, gamma, t, true, Tail::Two).unwrap();
        prop_assert!((0.0..=1.0).contains(&lo.prob_bound) && lo.rate >= 0.0);
    }

    #[test]
    fn variance_window_contains_exact_variance(
        m in 1usize..=3, c in 0.1f64..4.0, a in 0.1f64..4.0, gamma in 0.1f64..50.0,
    ) {
        let k = ConstantKernel::new(m, c, a).unwrap();
        let model = k.model();
        let exact = variance_exact(&k.fk_norms_sq(), gamma, m).unwrap();
        let (lo, hi) = variance_window(&model, gamma, gamma * a).unwrap();
        prop_assert!(lo <= exact * (1.0 + 1e-12), "{} > {}", lo, exact);
        prop_assert!(exact <= hi * (1.0 + 1e-12), "{} > {}", exact, hi);
    }

    #[test]
    fn presets_respect_f1_invariant(
        kappa in prop_oneof![Just(0.0), Just(-1.0), Just(1.0)], d in 2usize..=3,
        rho_frac in 0.01f64..1.0, s in 0.0f64..=1.0, tau in 0.0f64..3.0,
        h in prop_oneof![Just(SmallGraph::Edge), Just(SmallGraph::Path3), Just(SmallGraph::Triangle),
                         Just(SmallGraph::Star3), Just(SmallGraph::Cycle4)],
    ) {
        let space = SpaceSpec::new(kappa, d).unwrap();
        let w = WindowSpec::ball(&space, 1.0).unwrap();
        let f = GraphFunctionalSpec::IncludedSubgraph { h };
        let rho = rho_frac / h.diameter() as f64;
        let sg = subgraph_params(&space, &w, &f, rho, s, true).unwrap();
        prop_assert!(sg.model.validate().is_ok());
        let f1 = sg.model.f1_norm_sq.unwrap();
        prop_assert!(f1 > 0.0 && f1 <= f1_norm_sq_cap(&sg.model.a1().unwrap(), sg.model.m) * (1.0 + 1e-12));
        let pe = power_edge_params(&space, &w, rho_frac, tau, s, true).unwrap();
        prop_assert!(pe.model.validate().is_ok());
        let f1 = pe.model.f1_norm_sq.unwrap();
        prop_assert!(f1 > 0.0 && f1 <= f1_norm_sq_cap(&pe.model.a1().unwrap(), 2) * (1.0 + 1e-12));
    }
}

// ---------- moments ----------

#[test]
fn enumeration_equals_counting_route_for_all_small_diagrams() {
    for m in 1..=12usize {
        for ell in 2..=12 / m {
            for gamma in [0.5, 1.0, 4.0] {
                let k = ConstantKernel::new(m, 1.3, 0.7).unwrap();
                let a = centred_moment_exact(&k, gamma, m, ell).unwrap().value;
                let b = centred_moment_constant_kernel(0.7, 1.3, gamma, m, ell).unwrap();
                assert!(rel(a, b) < 1e-12, "m={m} ell={ell} gamma={gamma}: {a} vs {b}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constant_kernel_moment_matches_pmf_sum(m in 1usize..=3, ell in 2usize..=4, lambda in 0.2f64..12.0, c in 0.2f64..2.0) {
        let lib = centred_moment_constant_kernel(lambda, c, 1.0, m, ell).unwrap();
        let oracle = falling_factorial_centred_moment(lambda, m, c, ell);
        let scale = falling_factorial_centred_moment(lambda, m, c, 2).powf(ell as f64 / 2.0);
        prop_assert!((lib - oracle).abs() <= 1e-9 * scale.max(1.0), "{} vs {}", lib, oracle);
    }

    #[test]
    fn even_moments_grow_with_the_kernel(m in 1usize..=3, half in 1usize..=2, c in 0.1f64..3.0, bump in 0.0f64..2.0, gamma in 0.2f64..8.0) {
        let ell = 2 * half;
        let lo = centred_moment_exact(&ConstantKernel::new(m, c, 1.0).unwrap(), gamma, m, ell).unwrap().value;
        let hi = centred_moment_exact(&ConstantKernel::new(m, c + bump, 1.0).unwrap(), gamma, m, ell).unwrap().value;
        prop_assert!(lo >= 0.0);
        prop_assert!(lo <= hi * (1.0 + 1e-12));
    }

    #[test]
    fn moment_chain_through_poisson_raw_moments(m in 1usize..=3, ell in 2usize..=4, a in 0.2f64..3.0, c in 0.2f64..3.0, gamma in 0.2f64..10.0) {
        let k = ConstantKernel::new(m, c, a).unwrap();
        let p = a2_to_a1(&k.a2());
        let exact = centred_moment_exact(&k, gamma, m, ell).unwrap().value;
        let n = m * ell;
        let x = gamma * p.beta1;
        let lf = ell as f64;
        let pre = p.beta0 * p.beta2.powi(ell as i32) * lf.powf(p.q * n as f64);
        let middle = pre * (1..=n).map(|j| big(&stirling2(n, j).unwrap()) * x.powi(j as i32)).sum::<f64>();
        let last = p.beta0 * (p.beta2 * lf.powf(p.q * m as f64)).powi(ell as i32) * poisson_raw_moment(x, n).unwrap();
        prop_assert!(exact.abs() <= middle * (1.0 + 1e-12));
        prop_assert!(middle <= last * (1.0 + 1e-12));
    }

    #[test]
    fn moment_bounds_dominate_exact_moments(m in 1usize..=3, half in 1usize..=3, a in 0.2f64..3.0, c in 0.2f64..3.0, gamma in 0.2f64..30.0) {
        let ell = 2 * half;
        prop_assume!(m * ell <= 12);
        let k = ConstantKernel::new(m, c, a).unwrap();
        let p = a2_to_a1(&k.a2());
        let exact = centred_moment_constant_kernel(a, c, gamma, m, ell).unwrap();
        let gen = centred_moment_upper(&p, gamma, m, ell, MomentRegime::General).unwrap();
        prop_assert!(exact <= gen * (1.0 + 1e-12), "{} > {}", exact, gen);
        if let Ok(hi) = centred_moment_upper(&p, gamma, m, ell, MomentRegime::HighIntensity) {
            prop_assert!(exact <= hi * (1.0 + 1e-12), "{} > {}", exact, hi);
        }
    }

    #[test]
    fn poisson_moments_match_cumulant_recursion(alpha in 0.01f64..30.0) {
        let oracle = poisson_raw_moments_cumulant(alpha, 15);
        for (n, o) in oracle.iter().enumerate().skip(1) {
            prop_assert!(rel(poisson_raw_moment(alpha, n).unwrap(), *o) < 1e-12);
            prop_assert!(*o <= poisson_moment_bound(alpha, n).unwrap() * (1.0 + 1e-12));
        }
    }
}

// ---------- bounds ----------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn every_bound_is_a_probability(
        alpha in 0.1f64..10.0, gamma in 0.1f64..300.0, t in 0.0f64..1e6,
        c43 in 0.1f64..4.0, nonneg in any::<bool>(),
    ) {
        let a2 = A2Params::new(alpha, 1.0).unwrap();
        let model = ConstantKernel::new(1, 1.0, alpha).unwrap().model();
        let mut all = vec![];
        let (u, l) = wu_order1(&a2, gamma, t, nonneg).unwrap();
        all.push(u);
        all.push(l);
        all.push(lower_tail_bp(&model, gamma, t, gamma * alpha).unwrap());
        all.push(lower_tail_bp_sharp(&[alpha], gamma, t, nonneg).unwrap());
        all.push(chebyshev_cantelli(gamma * alpha, t, c43).unwrap());
        all.push(chebyshev_cantelli_a1(&model, gamma, t, c43, gamma * alpha).unwrap());
        let with_var = model.clone().with_variance(gamma * alpha).unwrap();
        all.push(clt_regime(&with_var, gamma, t / (gamma * alpha).sqrt(), Tail::Two).unwrap());
        for r in &all {
            prop_assert!((0.0..=1.0).contains(&r.prob_bound), "{:?}", r);
            prop_assert!(r.rate >= 0.0, "{:?}", r);
        }
    }

    #[test]
    fn regimes_partition_the_t_axis(beta1 in 0.2f64..5.0, beta2 in 0.2f64..5.0, m in 1usize..=3, gf in 1.0f64..20.0, t in 0.0f64..1e9) {
        let p = A1Params::new(1.0, beta1, beta2, 0.0).unwrap();
        let model = UStatModel::new(m, Assumption::A1(p)).unwrap()
            .with_f1_norm_sq(f1_norm_sq_cap(&p, m) / 2.0).unwrap();
        let c = main_constants(&model).unwrap();
        let gamma = gf * c.c9.max(c.c11);
        let r = main_bound(&model, gamma, t, Tail::Two).unwrap();
        prop_assert!(r.applicable());
        let mf = m as f64;
        let expect = if t >= c.c17 * gamma.powf(mf) {
            Regime::PoissonLog
        } else if t >= c.c24 * gamma.powf(mf - 0.5) {
            Regime::Gaussian
        } else {
            Regime::SubVariance
        };
        prop_assert_eq!(r.regime, expect);
        prop_assert!(c.c26 <= c.c23);
        let u = unified_bound(&model, gamma, t, Tail::Two).unwrap();
        prop_assert!(u.applicable() && u.rate.is_finite());
    }

    #[test]
    fn poisson_upper_tail_decreases_in_y(alpha in 0.1f64..50.0, d1 in 0.0f64..100.0, d2 in 0.0f64..100.0) {
        let (a, b) = (alpha + 1.0 + d1.min(d2), alpha + 1.0 + d1.max(d2));
        prop_assert!(poisson_tail_upper(alpha, b).unwrap() <= poisson_tail_upper(alpha, a).unwrap());
        prop_assert!(poisson_upper_tail(alpha, a) <= poisson_tail_upper(alpha, a).unwrap() * (1.0 + 1e-12));
    }
}

// ---------- applications ----------

#[test]
fn ball_volume_closed_forms_match_quadrature() {
    for kappa in [-2.0, -1.0, -0.25, 0.0, 0.25, 1.0] {
        for d in 2..=4 {
            let space = SpaceSpec::new(kappa, d).unwrap();
            for r in [0.05, 0.3, 1.0, 1.4] {
                if r >= space.max_radius() {
                    continue;
                }
                let a = ball_volume(&space, r).unwrap();
                let b = ball_volume_quadrature(&space, r).unwrap();
                assert!(rel(a, b) < 1e-10, "kappa={kappa} d={d} r={r}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn chord_length_shape_in_the_plane() {
    for r in [0.5, 1.0, 3.0, 5.0] {
        assert!(rel(chord_length(2, r, 0.0).unwrap(), 2.0 * r) < 1e-14);
        assert_eq!(chord_length(2, r, r).unwrap(), 0.0);
        let mut prev = f64::INFINITY;
        for i in 0..=100 {
            let s = r * i as f64 / 100.0;
            let c = chord_length(2, r, s).unwrap();
            assert!(c <= prev);
            prev = c;
        }
    }
}

// ---------- geometry ----------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bucketed_pairs_equal_brute_force(seed in any::<u64>(), gamma in 1.0f64..150.0, rho in 0.01f64..0.6, d in 2usize..=4) {
        let space = SpaceSpec::euclidean(d);
        let sample = sample_ppp_ball(&space, 1.0, gamma, seed).unwrap();
        let a = close_pairs_brute(&sample, rho);
        let b = close_pairs(&sample, rho);
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert_eq!((x.0, x.1), (y.0, y.1));
        }
        let adj = adjacency(&sample, rho);
        prop_assert_eq!(count_subgraphs(&adj, SmallGraph::Edge), edge_count(&sample, rho));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distance_is_a_metric(seed in any::<u64>(), kappa in prop_oneof![Just(-1.0), Just(-0.3), Just(0.0), Just(0.5), Just(1.0)], d in 2usize..=4) {
        let space = SpaceSpec::new(kappa, d).unwrap();
        let sample = sample_ppp_ball(&space, 1.0, 30.0, seed).unwrap();
        let pts = &sample.points;
        prop_assume!(pts.len() >= 3);
        for w in pts.windows(3) {
            let (x, y, z) = (&w[0], &w[1], &w[2]);
            prop_assert!((dist(&space, x, y) - dist(&space, y, x)).abs() <= 1e-9);
            prop_assert!(dist(&space, x, z) <= dist(&space, x, y) + dist(&space, y, z) + 1e-9);
            prop_assert!(dist(&space, x, x).abs() <= 1e-9);
        }
    }

    #[test]
    fn edge_subgraph_count_is_edge_count(seed in any::<u64>(), kappa in prop_oneof![Just(-1.0), Just(0.0), Just(1.0)], rho in 0.05f64..0.5) {
        let space = SpaceSpec::new(kappa, 2).unwrap();
        let sample = sample_ppp_ball(&space, 1.0, 40.0, seed).unwrap();
        prop_assert_eq!(included_subgraph_count(&sample, rho, SmallGraph::Edge), edge_count(&sample, rho));
    }
}
