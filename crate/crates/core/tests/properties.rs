use gdspread::bounds::{evaluate_all, BoundId, DEFAULT_TOL, EQ_TOL};
use gdspread::families::{numeric_spectrum, spectrum_complete_bipartite, spectrum_complete_split};
use gdspread::matrix::{
    distance_laplacian, distance_matrix, distance_signless_laplacian, generalized_frobenius_sq, is_equitable,
};
use gdspread::{
    eigenvalues, generalized_distance_matrix, parse_graph6, quotient_matrix, random_connected_graph, DistanceProfile,
    FamilySpec, Graph, SymMatrix, VertexPartition,
};
use proptest::prelude::*;

fn connected_graph() -> impl Strategy<Value = Graph> {
    (2usize..11, prop::sample::select(vec![0.3, 0.5, 0.8]), any::<u64>())
        .prop_map(|(n, p, seed)| random_connected_graph(n, p, seed).unwrap())
}

fn unit() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.0), Just(0.5), Just(1.0), 0.0..=1.0]
}

fn d_alpha(g: &Graph, alpha: f64) -> SymMatrix {
    generalized_distance_matrix(&DistanceProfile::new(g).unwrap(), alpha).unwrap()
}

fn max_entry_diff(a: &SymMatrix, b: &SymMatrix, scale_b: f64) -> f64 {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x - scale_b * y).abs())
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distance_profile_identities(g in connected_graph()) {
        let p = DistanceProfile::new(&g).unwrap();
        let n = g.order();
        prop_assert_eq!(p.transmissions.iter().sum::<u64>(), 2 * p.wiener);
        for u in 0..n {
            prop_assert_eq!(p.dist(u, u), 0);
            for v in 0..n {
                prop_assert_eq!(p.dist(u, v), p.dist(v, u));
                if u != v {
                    prop_assert!(p.dist(u, v) >= 1);
                }
                for w in 0..n {
                    prop_assert!(p.dist(u, w) <= p.dist(u, v) + p.dist(v, w));
                }
            }
        }
        prop_assert_eq!(parse_graph6(&g.to_graph6()).unwrap(), g);
    }

    #[test]
    fn matrix_interpolation(g in connected_graph(), a in unit(), b in unit()) {
        let p = DistanceProfile::new(&g).unwrap();
        let (da, db) = (d_alpha(&g, a), d_alpha(&g, b));
        let dl = distance_laplacian(&p);
        for i in 0..g.order() {
            for j in 0..g.order() {
                prop_assert!((da[(i, j)] - db[(i, j)] - (a - b) * dl[(i, j)]).abs() <= 1e-9);
            }
        }
        prop_assert_eq!(max_entry_diff(&d_alpha(&g, 0.0), &distance_matrix(&p), 1.0), 0.0);
        let tr = SymMatrix::diagonal(&p.transmissions.iter().map(|&t| t as f64).collect::<Vec<_>>());
        prop_assert_eq!(max_entry_diff(&d_alpha(&g, 1.0), &tr, 1.0), 0.0);
        prop_assert!(max_entry_diff(&d_alpha(&g, 0.5).scaled(2.0), &distance_signless_laplacian(&p), 1.0) <= 1e-12);
    }

    #[test]
    fn spectrum_identities(g in connected_graph(), alpha in unit()) {
        let p = DistanceProfile::new(&g).unwrap();
        let s = eigenvalues(&d_alpha(&g, alpha)).unwrap();
        let w = p.wiener as f64;
        let trace: f64 = s.values().iter().sum();
        prop_assert!((trace - 2.0 * alpha * w).abs() <= 1e-9 * (2.0 * alpha * w).max(1.0));
        let sq: f64 = s.values().iter().map(|x| x * x).sum();
        let f = generalized_frobenius_sq(&p, alpha);
        prop_assert!((sq - f).abs() <= 1e-9 * f.max(1.0));
        if alpha >= 0.5 {
            prop_assert!(s.smallest() >= -1e-9);
        }
        let rho = eigenvalues(&distance_matrix(&p)).unwrap();
        let top = s.largest();
        let (lo, hi) = (p.tr_min() as f64, p.tr_max() as f64);
        prop_assert!(alpha * lo + (1.0 - alpha) * rho.largest() <= top + 1e-8);
        prop_assert!(top <= alpha * hi + (1.0 - alpha) * rho.largest() + 1e-8);
    }

    #[test]
    fn transmission_regular_spectrum_is_shifted(n in 3usize..13, alpha in unit()) {
        let g = FamilySpec::Cycle(n).generate().unwrap();
        let p = DistanceProfile::new(&g).unwrap();
        let k = p.transmission_regular().unwrap() as f64;
        let s = eigenvalues(&d_alpha(&g, alpha)).unwrap();
        let rho = eigenvalues(&distance_matrix(&p)).unwrap();
        for (x, r) in s.values().iter().zip(rho.values()) {
            prop_assert!((x - (k * alpha + (1.0 - alpha) * r)).abs() <= 1e-9);
        }
    }

    #[test]
    fn equitable_quotient_eigenvalues_are_parent_eigenvalues(r in 1usize..6, s in 1usize..6, t in 1usize..6, alpha in unit()) {
        let cases = [
            (FamilySpec::CompleteBipartite(r, s), r),
            (FamilySpec::CompleteSplit { clique: t, order: t + s }, t),
        ];
        for (spec, first) in cases {
            let g = spec.generate().unwrap();
            let m = d_alpha(&g, alpha);
            let part = VertexPartition::split(g.order(), &(0..first).collect::<Vec<_>>()).unwrap();
            prop_assert!(is_equitable(&m, &part, 1e-9).unwrap());
            let q = eigenvalues(&quotient_matrix(&m, &part).unwrap().symmetrized()).unwrap();
            let parent = eigenvalues(&m).unwrap();
            for x in q.values() {
                prop_assert!(parent.values().iter().any(|y| (x - y).abs() <= 1e-9));
            }
        }
    }

    #[test]
    fn family_closed_forms(r in 1usize..9, s in 1usize..9, alpha in unit()) {
        let analytic = spectrum_complete_bipartite(r, s, alpha);
        prop_assert_eq!(analytic.order(), r + s);
        let numeric = numeric_spectrum(&FamilySpec::CompleteBipartite(r, s), alpha).unwrap();
        prop_assert!(analytic.matches(&numeric, 1e-8));
        let n = r + s;
        let analytic = spectrum_complete_split(r, n, alpha);
        prop_assert_eq!(analytic.order(), n);
        let numeric = numeric_spectrum(&FamilySpec::CompleteSplit { clique: r, order: n }, alpha).unwrap();
        prop_assert!(analytic.matches(&numeric, 1e-8));
    }

    #[test]
    fn proven_bounds_hold(g in connected_graph(), alpha in unit()) {
        for r in evaluate_all(&g, alpha, DEFAULT_TOL).unwrap() {
            prop_assert!(!r.is_violation(), "{} on {} at {}: {:?}", r.bound_id, g.to_graph6(), alpha, r);
        }
    }

    #[test]
    fn bound_equality_conditions(g in connected_graph(), alpha in unit()) {
        let reports = evaluate_all(&g, alpha, DEFAULT_TOL).unwrap();
        let get = |id: BoundId| reports.iter().find(|r| r.bound_id == id).unwrap();
        let spectrum = eigenvalues(&d_alpha(&g, alpha)).unwrap();
        // only complete graphs have two distinct eigenvalues when alpha < 1
        if alpha < 1.0 && g.order() >= 2 {
            prop_assert_eq!(get(BoundId::RadiusWienerLower).equality, g.is_complete());
        }
        let psd = get(BoundId::RadiusUpperPsd);
        if psd.applicable {
            prop_assert_eq!(psd.equality, spectrum.smallest().abs() <= EQ_TOL);
        }
        if get(BoundId::FrobeniusUpper).equality && spectrum.len() > 2 {
            let v = spectrum.values();
            let mid = (v[0] + v[v.len() - 1]) / 2.0;
            for x in &v[1..v.len() - 1] {
                prop_assert!((x - mid).abs() <= 1e-6);
            }
        }
        let upper = get(BoundId::TransmissionSpreadUpper);
        let lower = get(BoundId::TransmissionSpreadLower);
        if DistanceProfile::new(&g).unwrap().transmission_regular().is_some() {
            prop_assert!((upper.bound - lower.bound).abs() <= 1e-8);
            prop_assert!(upper.equality);
        }
    }
}

#[test]
fn radius_frobenius_equality_on_complete_graphs() {
    // equality on K_n needs n·alpha >= 1 unless alpha = 1
    for n in 2..10 {
        let g = FamilySpec::Complete(n).generate().unwrap();
        for alpha in [0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0] {
            let r = evaluate_all(&g, alpha, DEFAULT_TOL)
                .unwrap()
                .into_iter()
                .find(|r| r.bound_id == BoundId::RadiusFrobeniusLower)
                .unwrap();
            assert_eq!(r.equality, n as f64 * alpha >= 1.0, "K{n} alpha={alpha} gap={}", r.gap);
        }
    }
}
