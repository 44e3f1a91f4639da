mod common;

use common::*;
use num_bigint::BigInt;
use polylab::algebra::IntMatrix;
use polylab::algebraic::Effort;
use polylab::control::{
    automorphisms_bruteforce, godsil_cross_check, graph_controllable, is_controllable, kalman_matrix,
    minimally_controllable, Graph, Verdict,
};
use polylab::ensembles::{sample, EnsembleSpec, Sample, SeedStream};
use proptest::prelude::*;

fn automorphisms_oracle(g: &Graph) -> u64 {
    let n = g.n();
    permutations(n)
        .iter()
        .filter(|p| (0..n).all(|u| (0..n).all(|v| g.has_edge(u, v) == g.has_edge(p[u], p[v]))))
        .count() as u64
}

fn ones(n: usize) -> Vec<BigInt> {
    vec![BigInt::from(1); n]
}

#[test]
fn kalman_columns_match_matrix_powers() {
    let p3 = Graph::path(3).adjacency();
    let k = kalman_matrix(&p3, &ones(3)).unwrap();
    let mut power = IntMatrix::identity(3);
    for j in 0..3 {
        let col = power.mul_vec(&ones(3)).unwrap();
        for (i, v) in col.iter().enumerate() {
            assert_eq!(k.get(i, j), v);
        }
        power = power.mul(&p3).unwrap();
    }
    let cols: Vec<Vec<i64>> = (0..3).map(|j| (0..3).map(|i| i64::try_from(k.get(i, j)).unwrap()).collect()).collect();
    assert_eq!(cols, vec![vec![1, 1, 1], vec![1, 2, 1], vec![2, 2, 2]]);
}

#[test]
fn path_on_three_vertices() {
    let g = Graph::path(3);
    let a = g.adjacency();
    assert!(!graph_controllable(&g));
    let e1 = vec![BigInt::from(1), BigInt::from(0), BigInt::from(0)];
    assert!(is_controllable(&a, &e1).unwrap());
    assert_eq!(automorphisms_bruteforce(&g).unwrap(), 2);
    assert_eq!(automorphisms_bruteforce(&Graph::complete(3)).unwrap(), 6);
    assert_eq!(godsil_cross_check(&g, Effort::FULL).verdict, Verdict::Holds);
}

#[test]
fn implications_hold_on_all_small_graphs() {
    for n in 1..=5usize {
        let pairs = n * (n - 1) / 2;
        for code in 0..1u64 << pairs {
            let g = Graph::from_code(n, code).unwrap();
            let auts = automorphisms_bruteforce(&g).unwrap();
            assert_eq!(auts, automorphisms_oracle(&g));
            let check = godsil_cross_check(&g, Effort::FULL);
            assert_ne!(check.verdict, Verdict::Violated, "{:?}", g.edges());
            if graph_controllable(&g) {
                assert_eq!(auts, 1);
            }
            if check.irreducibility == "irreducible" {
                assert!(check.controllable && check.minimally_controllable);
            }
        }
    }
}

#[test]
fn random_graphs_show_no_violations() {
    for n in [6usize, 7, 8] {
        let spec = EnsembleSpec::ErdosRenyi { n, p: 0.5 };
        for i in 0..500 {
            let Sample::Matrix(a) = sample(&spec, SeedStream::new(77, i)).unwrap() else {
                panic!("matrix expected")
            };
            let g = Graph::from_adjacency(&a).unwrap();
            assert_ne!(godsil_cross_check(&g, Effort::default()).verdict, Verdict::Violated);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn automorphism_counts_match_oracle(n in 1usize..=7, code in any::<u64>()) {
        let pairs = n * (n - 1) / 2;
        let g = Graph::from_code(n, code & ((1u64 << pairs) - 1)).unwrap();
        prop_assert_eq!(automorphisms_bruteforce(&g).unwrap(), automorphisms_oracle(&g));
    }

    #[test]
    fn minimal_controllability_implies_controllability_from_some_vertex(n in 1usize..=7, code in any::<u64>()) {
        let pairs = n * (n - 1) / 2;
        let g = Graph::from_code(n, code & ((1u64 << pairs) - 1)).unwrap();
        if minimally_controllable(&g) {
            let mut e = vec![BigInt::from(0); n];
            e[0] = BigInt::from(1);
            prop_assert!(is_controllable(&g.adjacency(), &e).unwrap());
        }
    }
}
