use shearer_core::corpus::{builtin, DEFAULT_SEED};
use shearer_core::spectral::{eigen_residual, spectral_radius};
use shearer_core::{
    chi_fractional, generate, solve_min_slack, GeneratorSpec, Graph, Rational, Scalar, SolveConfig,
    TargetVector,
};

fn cfg() -> SolveConfig {
    SolveConfig::default()
}

#[test]
fn exact_duality_gap_is_zero_and_clique_is_feasible() {
    for e in builtin(DEFAULT_SEED).unwrap() {
        let r = chi_fractional::<Rational>(&e.graph, &cfg()).unwrap();
        assert_eq!(r.gap, <Rational as Scalar>::zero(), "{}", e.name);
        let sum = r.clique.iter().fold(<Rational as Scalar>::zero(), |a, x| a + x.clone());
        assert_eq!(sum, r.value, "{}", e.name);
        let (_, best) = shearer_core::indset::max_weight_independent_set(&e.graph, &r.clique).unwrap();
        assert!(best <= <Rational as Scalar>::one(), "{}", e.name);
        let total = r.cover.iter().fold(<Rational as Scalar>::zero(), |a, (_, x)| a + x.clone());
        assert_eq!(total, r.value);
    }
}

#[test]
fn scale_consistency_by_bisection() {
    for e in builtin(DEFAULT_SEED).unwrap().into_iter().filter(|e| e.graph.n() <= 20) {
        let g = &e.graph;
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..40 {
            let c = 0.5 * (lo + hi);
            let t = TargetVector::constant(g.n(), c).unwrap();
            let y = solve_min_slack::<f64>(g, &t, &cfg()).unwrap().y_star;
            if y <= 0.0 {
                lo = c;
            } else {
                hi = c;
            }
        }
        let chi = chi_fractional::<f64>(g, &cfg()).unwrap().value;
        assert!((1.0 / lo - chi).abs() <= 1e-6, "{}: {} vs {chi}", e.name, 1.0 / lo);
    }
}

#[test]
fn chi_is_max_over_components() {
    let c5 = generate(&GeneratorSpec::Cycle(5)).unwrap();
    let c7 = generate(&GeneratorSpec::Cycle(7)).unwrap();
    let mut edges: Vec<(usize, usize)> = c5.edges().collect();
    edges.extend(c7.edges().map(|(u, v)| (u + 5, v + 5)));
    edges.push((12, 13));
    let g = Graph::new(15, &edges).unwrap();
    let whole = chi_fractional::<Rational>(&g, &cfg()).unwrap().value;
    let best = g
        .components()
        .iter()
        .map(|c| chi_fractional::<Rational>(&c.graph, &cfg()).unwrap().value)
        .fold(<Rational as Scalar>::zero(), Scalar::max_of);
    assert_eq!(whole, best);
    assert_eq!(whole.to_string(), "5/2");
}

#[test]
fn chi_monotone_under_cores() {
    for e in builtin(DEFAULT_SEED).unwrap() {
        let chi = chi_fractional::<Rational>(&e.graph, &cfg()).unwrap().value;
        for d in 1..=4 {
            let core = e.graph.d_core(d).graph;
            let c = chi_fractional::<Rational>(&core, &cfg()).unwrap().value;
            assert!(c <= chi, "{} d={d}", e.name);
        }
    }
}

#[test]
fn spectral_sanity_on_corpus() {
    for e in builtin(DEFAULT_SEED).unwrap() {
        let g = &e.graph;
        let r = spectral_radius(g).unwrap();
        let delta = g.max_degree() as f64;
        assert!(r.rho <= delta + 1e-10, "{}", e.name);
        if (0..g.n()).all(|v| g.degree(v) == g.max_degree()) {
            assert!((r.rho - delta).abs() <= 1e-10, "{}", e.name);
        }
        assert!(r.perron.iter().all(|&x| x > 0.0));
        assert!(eigen_residual(g, &r.perron, r.rho) <= 1e-10);
        let chi = chi_fractional::<f64>(g, &cfg()).unwrap().value;
        assert!(chi <= r.rho + 1.0 + 1e-6, "Wilf on {}", e.name);
    }
}

#[test]
fn support_size_is_small() {
    for e in builtin(DEFAULT_SEED).unwrap() {
        let n = e.graph.n();
        let r = solve_min_slack::<f64>(&e.graph, &TargetVector::constant(n, 0.3).unwrap(), &cfg()).unwrap();
        assert!(r.distribution.len() <= n + 2, "{}", e.name);
        assert!(r.distribution.is_supported_on(&e.graph));
    }
}
