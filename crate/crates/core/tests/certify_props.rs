use shearer_core::certify::{
    dcore_reduction_check, edge_bound_mixture, verify_local_shearer, verify_spectral_bound,
    verify_weighted_theorem, Mode,
};
use shearer_core::corpus::{builtin, DEFAULT_SEED};
use shearer_core::shearer::f_unchecked;
use shearer_core::{generate, GeneratorSpec, Graph, WeightFn};

#[test]
fn weighted_theorem_on_corpus_with_random_weights() {
    for (i, e) in builtin(DEFAULT_SEED).unwrap().into_iter().enumerate() {
        for k in 0..5 {
            let w = WeightFn::random_seeded(e.graph.n(), (i * 100 + k) as u64);
            let c = verify_weighted_theorem(&e.graph, &w, Mode::default()).unwrap();
            assert!(c.pass, "{} weights {k}: {}", e.name, c.worst_slack);
        }
    }
}

#[test]
fn exact_mode_weighted_on_small_graphs() {
    for g in [
        generate(&GeneratorSpec::Cycle(7)).unwrap(),
        generate(&GeneratorSpec::Petersen).unwrap(),
    ] {
        let w = WeightFn::random_seeded(g.n(), 4);
        let c = verify_weighted_theorem(&g, &w, Mode::Exact).unwrap();
        assert!(c.pass);
    }
}

#[test]
fn shearer_degree_sequence_bound_in_expectation() {
    for e in builtin(DEFAULT_SEED).unwrap() {
        let g = &e.graph;
        let c = verify_local_shearer(g, Mode::default()).unwrap();
        assert!(c.pass);
        let d = c.witness_distribution().unwrap();
        let lower: f64 = (0..g.n()).map(|v| f_unchecked(g.degree(v) as f64)).sum();
        assert!(lower <= d.expected_size() + g.n() as f64 * c.tolerance, "{}", e.name);
    }
}

#[test]
fn every_certifier_passes_on_corpus() {
    for e in builtin(DEFAULT_SEED).unwrap() {
        let g = &e.graph;
        assert!(verify_spectral_bound(g, Mode::default()).unwrap().pass, "{}", e.name);
        assert!(edge_bound_mixture(g, Mode::default()).unwrap().pass, "{}", e.name);
        for d in 2..=4 {
            assert!(dcore_reduction_check(g, d, Mode::default()).unwrap().pass, "{}", e.name);
        }
    }
}

#[test]
fn certificates_are_byte_reproducible() {
    let g = generate(&GeneratorSpec::TriangleFreeProcess { n: 20, seed: 3 }).unwrap();
    let w = WeightFn::random_seeded(20, 8);
    let a = serde_json::to_string(&verify_weighted_theorem(&g, &w, Mode::default()).unwrap()).unwrap();
    let b = serde_json::to_string(&verify_weighted_theorem(&g, &w, Mode::default()).unwrap()).unwrap();
    assert_eq!(a, b);
    let a = serde_json::to_string(&edge_bound_mixture(&g, Mode::Exact).unwrap()).unwrap();
    let b = serde_json::to_string(&edge_bound_mixture(&g, Mode::Exact).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn triangles_are_refused() {
    let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    assert!(verify_local_shearer(&k3, Mode::default()).is_err());
    assert!(verify_spectral_bound(&k3, Mode::default()).is_err());
    assert!(edge_bound_mixture(&k3, Mode::default()).is_err());
}
