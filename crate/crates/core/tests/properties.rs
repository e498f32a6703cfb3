//! Cross-module invariants: the brick-tau-rigid correspondence, census
//! coherence, semi-invariance of Schofield determinants, decomposition
//! round-trips, and the component estimate chain.

mod common;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bricklab::algebra::StandardKind;
use bricklab::ar::{is_tau_rigid, tau};
use bricklab::census::{brick_census, component_sample, rep_points_exhaustive, CensusMode};
use bricklab::decompose::{decompose, is_isomorphic};
use bricklab::matrix::Mat;
use bricklab::rep::{
    hom_basis, quotient_representation, sub_representation, submodule_lattice, Representation,
};
use bricklab::scalar::{Field, PrimeField, Rationals};
use bricklab::stability::{check_stability, schofield_det, semistability_witness};
use bricklab::sttilt::{exchange_graph, in_fac, phi_brick, semibrick_check};

use common::*;

#[test]
fn compiled_dimension_matches_linear_algebra_oracle() {
    // independent spanning-set reduction, no rewriting
    for name in ["square-cycle.alg", "dual-numbers.alg", "kronecker.alg", "a3.alg"] {
        let desc = load_desc(name);
        let alg = compile(name, Rationals);
        let oracle = dim_oracle_homogeneous(&desc, alg.bound());
        assert_eq!(alg.dim(), oracle, "dim mismatch for {name}");
    }
}

#[test]
fn psi_phi_equals_fac_on_small_modules() {
    // psi(phi(T)) = Fac(T) as membership predicates on every module of
    // total dimension <= 5 over F_2
    let f2 = PrimeField::new(2);
    // A2: the indecomposable tau-rigid modules are P1, P2, S1 (all bricks)
    let a2 = compile("a2.alg", f2.clone());
    let mut rigids = vec![
        Representation::standard(&a2, StandardKind::Projective, 0),
        Representation::standard(&a2, StandardKind::Projective, 1),
        Representation::standard(&a2, StandardKind::Simple, 0),
    ];
    // dual numbers: the regular module is indecomposable tau-rigid, not a
    // brick; phi does real work here
    let dn = compile("dual-numbers.alg", f2);
    rigids.push(Representation::regular(&dn));
    for t in &rigids {
        assert!(is_tau_rigid(t));
        let b = phi_brick(t).unwrap();
        let alg = t.algebra().clone();
        // a single 5x5 loop matrix already has 2^25 points; cap the loop
        // algebra at total dimension 4
        let cap = if alg.num_vertices() == 1 { 4 } else { 5 };
        let probe = all_modules_up_to(&alg, cap, 1 << 22);
        for x in probe {
            let in_fac_t = in_fac(std::slice::from_ref(t), &x);
            let in_filt = in_filt_fac(&b, &x);
            assert_eq!(
                in_fac_t, in_filt,
                "psi(phi(T)) and Fac(T) disagree at dims {:?}",
                x.dims()
            );
        }
    }
}

#[test]
fn graph_maximality_and_extension() {
    // every node of a complete graph has |M| + |P| = n, and every
    // tau-rigid sub-pair extends to at least one node
    let f2 = PrimeField::new(2);
    for name in ["a2.alg", "a3.alg", "dual-numbers.alg"] {
        let alg = compile(name, f2.clone());
        let n = alg.num_vertices();
        let g = exchange_graph(&alg, 500, false).unwrap();
        assert!(g.complete);
        for node in &g.nodes {
            assert_eq!(node.num_summands(), n);
        }
        // sub-pairs from each node: drop one summand, demand a node
        // containing the remaining columns
        for node in &g.nodes {
            for skip in 0..node.g_cols.len() {
                let partial: Vec<&Vec<i64>> = node
                    .g_cols
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, c)| c)
                    .collect();
                let extended = g.nodes.iter().any(|other| {
                    partial.iter().all(|c| other.g_cols.contains(c))
                });
                assert!(extended, "almost-complete pair fails to extend");
            }
        }
    }
}

#[test]
fn fan_simpliciality() {
    // every maximal cone has exactly n linearly independent rays
    let q = Rationals;
    for name in ["a2.alg", "a3.alg", "dual-numbers.alg"] {
        let alg = compile(name, Rationals);
        let n = alg.num_vertices();
        let g = exchange_graph(&alg, 500, false).unwrap();
        for node in &g.nodes {
            assert_eq!(node.g_cols.len(), n);
            let cols: Vec<Vec<num_rational::BigRational>> = node
                .g_cols
                .iter()
                .map(|c| c.iter().map(|&x| q.from_i64(x)).collect())
                .collect();
            let m = Mat::from_cols(&q, n, &cols);
            assert_eq!(m.rank(&q), n);
        }
    }
}

#[test]
fn brick_finiteness_coherence() {
    // complete graph <=> censuses stabilize on the finite fixtures;
    // truncation on the brick-infinite ones
    let f2 = PrimeField::new(2);
    for name in ["a2.alg", "a3.alg", "dual-numbers.alg"] {
        let alg = compile(name, f2.clone());
        let g = exchange_graph(&alg, 500, false).unwrap();
        assert!(g.complete, "{name} should be brick-finite");
    }
    for name in ["kronecker.alg", "five-vertex.alg"] {
        let alg = compile(name, f2.clone());
        let g = exchange_graph(&alg, 12, false).unwrap();
        assert!(!g.complete, "{name} should truncate");
    }
}

#[test]
fn exact_pair_hom_bound() {
    // for 0 -> L -> M -> M/L -> 0:
    // dim Hom(X, M) <= dim Hom(X, L) + dim Hom(X, M/L)
    let f3 = PrimeField::new(3);
    let alg = compile("a3.alg", f3);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mods = all_modules_up_to(&alg, 3, 1 << 16);
    let probes: Vec<Representation<PrimeField>> = (0..3)
        .map(|i| Representation::standard(&alg, StandardKind::Projective, i))
        .collect();
    let mut checked = 0;
    for m in mods.iter().take(40) {
        if m.is_zero() {
            continue;
        }
        let lat = submodule_lattice(m, 8).unwrap();
        for sub in lat.proper_nonzero(m.dims()) {
            let (l, _) = sub_representation(m, sub);
            let (q, _) = quotient_representation(m, sub);
            let x = &probes[rng.gen_range(0..3)];
            assert!(hom_dim(x, m) <= hom_dim(x, &l) + hom_dim(x, &q));
            checked += 1;
        }
    }
    assert!(checked > 20);
}

#[test]
fn decompose_resum_over_small_fields() {
    // decompose then re-sum is isomorphic to the input for sampled modules
    // of total dimension <= 8 over F_2 and F_3
    for p in [2u64, 3] {
        let f = PrimeField::new(p);
        for name in ["a2.alg", "square-cycle.alg"] {
            let alg = compile(name, f.clone());
            let mut rng = ChaCha8Rng::seed_from_u64(500 + p);
            let mut done = 0;
            let mut tries = 0;
            while done < 12 && tries < 4000 {
                tries += 1;
                let dims: Vec<usize> = (0..alg.num_vertices())
                    .map(|_| rng.gen_range(0..3))
                    .collect();
                if !(1..=8).contains(&dims.iter().sum::<usize>()) {
                    continue;
                }
                let Some(m) = bricklab::census::sample_rep(&alg, &dims, &mut rng, 200) else {
                    continue;
                };
                if m.is_zero() {
                    continue;
                }
                let parts = decompose(&m).unwrap();
                let resum = Representation::direct_sum_list(&alg, &parts);
                assert!(is_isomorphic(&m, &resum).unwrap());
                done += 1;
            }
            assert!(done >= 10, "not enough samples for {name} over F_{p}");
        }
    }
}

#[test]
fn submodule_count_is_isomorphism_invariant() {
    let f3 = PrimeField::new(3);
    let alg = compile("a2.alg", f3);
    let f = &alg.field;
    let p1 = Representation::standard(&alg, StandardKind::Projective, 0);
    let m = p1.direct_sum(&Representation::standard(&alg, StandardKind::Simple, 0));
    let g = vec![
        Mat::new(2, 2, vec![f.one(), f.from_i64(2), f.zero(), f.one()]),
        Mat::new(1, 1, vec![f.from_i64(2)]),
    ];
    let conj = m.conjugate(&g);
    assert!(is_isomorphic(&m, &conj).unwrap());
    let a = submodule_lattice(&m, 8).unwrap();
    let b = submodule_lattice(&conj, 8).unwrap();
    assert_eq!(a.len(), b.len());
}

#[test]
fn witness_found_implies_oracle_semistable() {
    // every witness success is confirmed by the exhaustive oracle over F_5
    // and F_7
    for p in [5u64, 7] {
        let f = PrimeField::new(p);
        let alg = compile("kronecker.alg", f);
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        let mut confirmed = 0;
        for _ in 0..60 {
            let dims = vec![rng.gen_range(0..3usize), rng.gen_range(0..3usize)];
            if dims.iter().sum::<usize>() == 0 {
                continue;
            }
            let Some(m) = bricklab::census::sample_rep(&alg, &dims, &mut rng, 50) else {
                continue;
            };
            // only orthogonal weights qualify for the witness search
            let theta = [-(dims[1] as i64), dims[0] as i64];
            if bricklab::stability::theta_pairing(&theta, m.dims()) != 0 {
                continue;
            }
            let out = semistability_witness(&m, &theta, 16, 2, 77).unwrap();
            if let bricklab::stability::WitnessOutcome::Found { .. } = out {
                let v = check_stability(&m, &theta, 8).unwrap();
                assert_ne!(v.verdict, bricklab::stability::Verdict::Unstable);
                confirmed += 1;
            }
        }
        assert!(confirmed > 5, "expected some witnesses over F_{p}");
    }
}

#[test]
fn schofield_dets_are_semi_invariant() {
    // C^f(g.M) = chi_theta(g) C^f(M) for explicit g over F_q samples
    let f7 = PrimeField::new(7);
    let alg = compile("kronecker.alg", f7);
    let f = &alg.field;
    let theta = [-1i64, 1];
    let c = bricklab::stability::sample_complex(&alg, &theta, 13);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..20 {
        let m = common_kronecker_point(&alg, rng.gen_range(0..7), rng.gen_range(0..7));
        if bricklab::stability::theta_pairing(&theta, m.dims()) != 0 {
            continue;
        }
        let g1 = loop {
            let v = rng.gen_range(1..7i64);
            break Mat::new(1, 1, vec![f.from_i64(v)]);
        };
        let g2 = Mat::new(1, 1, vec![f.from_i64(rng.gen_range(1..7i64))]);
        let g = vec![g1.clone(), g2.clone()];
        let moved = m.conjugate(&g);
        let d0 = schofield_det(&c, &m).unwrap();
        let d1 = schofield_det(&c, &moved).unwrap();
        // the group acts on functions through g^{-1}, so the value at g.M
        // scales by chi_theta(g)^{-1} = prod det(g_i)^{-theta_i}
        let chi_inv = f.mul(&g1[(0, 0)], &f.inv(&g2[(0, 0)]).unwrap());
        assert_eq!(d1, f.mul(&chi_inv, &d0));
    }
}

fn common_kronecker_point(
    alg: &Arc<bricklab::BoundAlgebra<PrimeField>>,
    x: i64,
    y: i64,
) -> Representation<PrimeField> {
    let f = &alg.field;
    Representation::new(
        alg.clone(),
        vec![1, 1],
        vec![
            Mat::new(1, 1, vec![f.from_i64(x)]),
            Mat::new(1, 1, vec![f.from_i64(y)]),
        ],
    )
    .unwrap()
}

#[test]
fn component_chain_on_samples() {
    // c <= e <= h on every component sample
    let f5 = PrimeField::new(5);
    for name in ["kronecker.alg", "a3.alg"] {
        let alg = compile(name, f5.clone());
        for dims in dim_vectors(alg.num_vertices(), 3) {
            let s = component_sample(&alg, &dims, 6, 3).unwrap();
            if s.found == 0 {
                continue;
            }
            if let (Some(c), Some(e), Some(h)) = (s.c_hat, s.e_hat, s.h_hat) {
                assert!(c <= e as i64, "c <= e fails at {dims:?}");
                assert!(e <= h, "e <= h fails at {dims:?}");
            }
        }
    }
}

#[test]
fn census_counts_survive_basis_change() {
    let f3 = PrimeField::new(3);
    let alg = compile("kronecker.alg", f3);
    let base = brick_census(&alg, &[1, 1], CensusMode::Exhaustive, 1 << 20, 0).unwrap();
    // the census partitions points into orbits, so conjugating any
    // representative lands in an existing class
    let f = &alg.field;
    let g = vec![
        Mat::new(1, 1, vec![f.from_i64(2)]),
        Mat::new(1, 1, vec![f.from_i64(2)]),
    ];
    for cls in &base.classes {
        let moved = cls.rep.conjugate(&g);
        let hits = base
            .classes
            .iter()
            .filter(|c| is_isomorphic(&c.rep, &moved).unwrap())
            .count();
        assert_eq!(hits, 1);
    }
}

#[test]
fn singleton_variety_of_dual_numbers() {
    // rep(A, 1) for A = k[x]/(x^2) is the single point zero
    let f5 = PrimeField::new(5);
    let alg = compile("dual-numbers.alg", f5);
    let pts = rep_points_exhaustive(&alg, &[1], 1 << 20).unwrap();
    assert_eq!(pts.len(), 1);
    assert!(pts[0].arrow_matrix(0).is_zero(&alg.field));
}

#[test]
fn out_labels_form_semibricks_everywhere() {
    let f2 = PrimeField::new(2);
    for name in ["a2.alg", "a3.alg", "dual-numbers.alg"] {
        let alg = compile(name, f2.clone());
        let g = exchange_graph(&alg, 500, true).unwrap();
        for i in 0..g.nodes.len() {
            let labels: Vec<Representation<PrimeField>> = g
                .edges
                .iter()
                .filter(|e| e.from == i)
                .map(|e| e.label.clone().unwrap())
                .collect();
            if !labels.is_empty() {
                assert!(semibrick_check(&labels).unwrap());
            }
        }
    }
}

#[test]
fn tau_rigid_modules_have_few_summands() {
    // |M| <= n for tau-rigid M assembled from graph nodes
    let f2 = PrimeField::new(2);
    for name in ["a2.alg", "a3.alg"] {
        let alg = compile(name, f2.clone());
        let n = alg.num_vertices();
        let g = exchange_graph(&alg, 500, false).unwrap();
        for node in &g.nodes {
            let m = Representation::direct_sum_list(&alg, &node.modules);
            if m.is_zero() {
                continue;
            }
            let t = tau(&m);
            if !t.is_zero() {
                assert_eq!(hom_basis(&m, &t).dim(), 0);
            }
            assert!(decompose(&m).unwrap().len() <= n);
        }
    }
}
