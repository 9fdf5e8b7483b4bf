mod common;

use nodal_geometry::bounds::{duval_reiner_identity, full_audit, AuditOptions};
use nodal_geometry::graph::{
    generate_family, minimal_genus, rotation_count, trace_faces, vg_check, Family, Graph,
    RotationSystem, VgOptions, VgStatus,
};
use nodal_geometry::linalg::{dot, SymMatrix};
use nodal_geometry::nodal::{build_islands, phi_system, strong_domains, Sign, DEFAULT_TOL_ZERO};
use nodal_geometry::spectral::{eigendecompose, laplacian_of, DEFAULT_TOL_EIG};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, 0.15f64..0.95, any::<u64>())
        .prop_map(|(n, p, seed)| generate_family(&Family::RandomConnected { n, p, seed }).unwrap())
}

fn graph_and_vector(max_n: usize) -> impl Strategy<Value = (Graph, Vec<f64>)> {
    graph_strategy(max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        (
            Just(g),
            prop::collection::vec((-3i32..=3).prop_map(f64::from), n)
                .prop_filter("nonzero", |v: &Vec<f64>| v.iter().any(|x| *x != 0.0)),
        )
    })
}

fn random_rotation(g: &Graph, seed: u64) -> RotationSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = (0..g.vertex_count())
        .map(|v| {
            let mut nb = g.neighbors(v).to_vec();
            nb.shuffle(&mut rng);
            nb
        })
        .collect();
    RotationSystem::new(g, order).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_characteristic_is_even(g in graph_strategy(10), seed in any::<u64>()) {
        let s = trace_faces(&g, &random_rotation(&g, seed)).unwrap();
        prop_assert_eq!(s.euler_characteristic(), 2 - 2 * s.genus as i64);
        prop_assert!(s.faces >= 1);
    }

    #[test]
    fn trees_embed_in_the_sphere(n in 1usize..12, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
        let g = Graph::from_edge_list(n, edges).unwrap();
        prop_assert_eq!(trace_faces(&g, &random_rotation(&g, seed)).unwrap().genus, 0);
        prop_assert_eq!(minimal_genus(&g, 10).unwrap().genus(), Some(0));
    }

    #[test]
    fn minimal_genus_matches_brute_force(g in graph_strategy(6)) {
        prop_assume!(rotation_count(&g) <= 1_000);
        let found = minimal_genus(&g, 1_000_000).unwrap().genus().unwrap();
        prop_assert_eq!(found, common::brute_force_genus(&g));
    }

    #[test]
    fn volume_growth_matches_subset_oracle(g in graph_strategy(9)) {
        let report = vg_check(&g, &VgOptions::default()).unwrap();
        let oracle = common::volume_growth_by_subsets(&g);
        prop_assert_eq!(report.status == VgStatus::Satisfied, oracle);
        if let Some(w) = report.witness {
            let b = g.outer_boundary(&w).len();
            prop_assert!(w.len() <= g.vertex_count() / 2 && b * b < w.len());
        }
    }

    #[test]
    fn connectivity_is_monotone(g in graph_strategy(9)) {
        let levels: Vec<bool> = (1..=4).map(|k| g.vertex_connectivity_at_least(k).unwrap()).collect();
        for w in levels.windows(2) {
            prop_assert!(!w[1] || w[0]);
        }
        prop_assert!(levels[0], "connected graphs on >= 2 vertices are 1-connected");
    }

    #[test]
    fn spectrum_trace_and_residual(g in graph_strategy(12), shift in prop::collection::vec(-2.0f64..2.0, 12)) {
        let op = laplacian_of(&g).shifted(&shift[..g.vertex_count()]).unwrap();
        let s = eigendecompose(&op, DEFAULT_TOL_EIG).unwrap();
        let sum: f64 = s.eigenvalues.iter().sum();
        prop_assert!((sum - op.matrix().trace()).abs() <= 1e-9 * (1.0 + op.matrix().trace().abs()));
        prop_assert!(s.residual_ok(1e-8));
        prop_assert!(s.max_orthogonality_defect <= 1e-8);
        prop_assert!(s.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn eigenvalues_match_inertia_oracle(g in graph_strategy(6)) {
        let s = eigendecompose(&laplacian_of(&g), DEFAULT_TOL_EIG).unwrap();
        let oracle = common::eigenvalues_by_bisection(&common::laplacian_rows(&g));
        for (a, b) in s.eigenvalues.iter().zip(&oracle) {
            prop_assert!((a - b).abs() <= 1e-8, "{a} vs {b}");
        }
    }

    #[test]
    fn domains_match_labeling_oracle((g, u) in graph_and_vector(12)) {
        let np = strong_domains(&g, &u, DEFAULT_TOL_ZERO).unwrap();
        let ours: Vec<Vec<usize>> = np.domains.iter().map(|d| d.vertices.clone()).collect();
        prop_assert_eq!(ours, common::strong_domains_by_labeling(&g, &u, DEFAULT_TOL_ZERO));
    }

    #[test]
    fn adjacent_domains_have_opposite_signs((g, u) in graph_and_vector(12)) {
        let np = strong_domains(&g, &u, DEFAULT_TOL_ZERO).unwrap();
        for (i, nbrs) in np.domain_adjacency(&g).iter().enumerate() {
            for &j in nbrs {
                prop_assert_ne!(np.domains[i].sign, np.domains[j].sign);
                prop_assert_ne!(np.domains[i].sign, Sign::Zero);
            }
        }
    }

    #[test]
    fn islands_reach_a_fixpoint((g, u) in graph_and_vector(12)) {
        let np = strong_domains(&g, &u, DEFAULT_TOL_ZERO).unwrap();
        let is = build_islands(&np, &g);
        prop_assert!(is.pending_merges().is_empty());
        let mut covered: Vec<usize> = is.islands.iter().flat_map(|i| i.domains.clone()).collect();
        covered.sort_unstable();
        prop_assert_eq!(covered, (0..np.t()).collect::<Vec<_>>());
        prop_assert_eq!(is.small_count() + is.large_count(), is.s());
    }

    #[test]
    fn codimension_complements_phi_rank((g, u) in graph_and_vector(12)) {
        let op = laplacian_of(&g);
        let np = strong_domains(&g, &u, DEFAULT_TOL_ZERO).unwrap();
        let is = build_islands(&np, &g);
        let ps = phi_system(&is, &np, &op);
        prop_assert_eq!(ps.y + ps.dim_w0, ps.dim_w);
        for psi in &ps.complement_basis {
            for phi in &ps.phi {
                prop_assert!(dot(psi, phi).abs() <= 1e-9 * (1.0 + phi.iter().map(|x| x.abs()).sum::<f64>()));
            }
        }
    }

    #[test]
    fn identity_holds_for_any_symmetric_matrix((g, u) in graph_and_vector(15), seed in any::<u64>()) {
        let n = g.vertex_count();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut a = SymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                a.set_sym(i, j, rng.random_range(-5.0..5.0));
            }
        }
        let np = strong_domains(&g, &u, DEFAULT_TOL_ZERO).unwrap();
        let c: Vec<f64> = (0..np.t()).map(|_| rng.random_range(-3.0..3.0)).collect();
        prop_assert!(duval_reiner_identity(&a, &np, &c).unwrap().discrepancy <= 1e-9);
    }

    #[test]
    fn audit_statuses_are_recomputable(g in graph_strategy(8)) {
        let a = full_audit(&laplacian_of(&g), &AuditOptions { random_combinations: 1, ..AuditOptions::default() }).unwrap();
        for r in &a.reports {
            prop_assert_eq!(r.status, r.recomputed_status());
            prop_assert_eq!(r.violated(), r.witness.is_some());
        }
        // The single-edge graph has t = 2 > d(n - 1) = 1 at n = 2.
        if g.max_degree() >= 2 {
            prop_assert_eq!(a.gating_violations(), 0);
        }
        for c in &a.certificates {
            let scale = c.u.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            prop_assert!(c.w_prime.iter().all(|&v| c.u[v].abs() <= 1e-8 * scale));
            prop_assert!(c.a.iter().any(|x| *x != 0.0));
            for &z in &c.z {
                prop_assert!(c.w_component.contains(&z));
                prop_assert!(g.neighbors(z).iter().any(|w| !c.w_component.contains(w)));
            }
        }
    }
}
