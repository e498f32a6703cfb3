//! Shared fixtures and independent oracles for the integration suites.
//! Algebras are loaded from the repository fixture files so the parser is
//! on the test path too.
#![allow(dead_code)] // each test binary uses its own slice of the helpers

use std::path::PathBuf;
use std::sync::Arc;

use bricklab::algebra::AlgebraDescription;
use bricklab::decompose::SplitField;
use bricklab::io::parse_algebra;
use bricklab::matrix::Mat;
use bricklab::rep::{
    hom_basis, quotient_representation, sub_representation, submodule_lattice, Representation,
};
use bricklab::scalar::{Field, Rationals};
use bricklab::sttilt::in_fac;
use bricklab::BoundAlgebra;

pub fn fixture_path(name: &str) -> PathBuf {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.pop();
    p.pop();
    p.push("fixtures");
    p.push(name);
    p
}

pub fn load_desc(name: &str) -> AlgebraDescription {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture exists");
    parse_algebra(&text, name).expect("fixture parses")
}

pub fn compile<F: Field>(name: &str, f: F) -> Arc<BoundAlgebra<F>> {
    Arc::new(load_desc(name).compile(f, None).expect("fixture compiles"))
}

/// All fixture algebra files.
pub fn fixture_names() -> Vec<&'static str> {
    vec![
        "a2.alg",
        "a3.alg",
        "kronecker.alg",
        "dual-numbers.alg",
        "square-cycle.alg",
        "star.alg",
        "five-vertex.alg",
    ]
}

/// Independent oracle for dim A: enumerate composable words degree by
/// degree and reduce the span of all relation contexts u*r*v by linear
/// algebra (homogeneous relations only). No rewriting involved.
pub fn dim_oracle_homogeneous(desc: &AlgebraDescription, max_degree: usize) -> usize {
    let q = Rationals;
    let quiver = &desc.quiver;
    let mut total = quiver.num_vertices();
    let mut words: Vec<Vec<usize>> = (0..quiver.num_arrows()).map(|a| vec![a]).collect();
    for degree in 1..=max_degree {
        if words.is_empty() {
            break;
        }
        // relation contexts of this degree
        let index_of = |w: &[usize]| words.iter().position(|v| v == w);
        let mut rows: Vec<Vec<num_rational::BigRational>> = Vec::new();
        for rel in &desc.relations {
            let rel_len = rel[0].1.len();
            if rel.iter().any(|(_, w)| w.len() != rel_len) {
                panic!("oracle needs homogeneous relations");
            }
            if rel_len > degree {
                continue;
            }
            let ctx = degree - rel_len;
            for pre_len in 0..=ctx {
                let post_len = ctx - pre_len;
                for pre in words_of_len(quiver, pre_len) {
                    for post in words_of_len(quiver, post_len) {
                        let mut row = vec![q.zero(); words.len()];
                        let mut any = false;
                        for (c, w) in rel {
                            let mut full = pre.clone();
                            full.extend_from_slice(w);
                            full.extend_from_slice(&post);
                            if !composable(quiver, &full) {
                                continue;
                            }
                            if let Some(i) = index_of(&full) {
                                row[i] = q.add(&row[i], &c.to_elem(&q).unwrap());
                                any = true;
                            }
                        }
                        if any {
                            rows.push(row);
                        }
                    }
                }
            }
        }
        let rank = if rows.is_empty() {
            0
        } else {
            Mat::from_rows(&q, words.len(), &rows).rank(&q)
        };
        let dim_here = words.len() - rank;
        total += dim_here;
        if dim_here == 0 {
            break;
        }
        // extend words by one arrow
        let mut next = Vec::new();
        for w in &words {
            let at = quiver.arrow(*w.last().unwrap()).target;
            for (ai, a) in quiver.arrows().iter().enumerate() {
                if a.source == at {
                    let mut nw = w.clone();
                    nw.push(ai);
                    next.push(nw);
                }
            }
        }
        words = next;
    }
    total
}

fn words_of_len(quiver: &bricklab::Quiver, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out: Vec<Vec<usize>> = (0..quiver.num_arrows()).map(|a| vec![a]).collect();
    for _ in 1..len {
        let mut next = Vec::new();
        for w in &out {
            let at = quiver.arrow(*w.last().unwrap()).target;
            for (ai, a) in quiver.arrows().iter().enumerate() {
                if a.source == at {
                    let mut nw = w.clone();
                    nw.push(ai);
                    next.push(nw);
                }
            }
        }
        out = next;
    }
    out
}

fn composable(quiver: &bricklab::Quiver, w: &[usize]) -> bool {
    w.windows(2)
        .all(|p| quiver.arrow(p[0]).target == quiver.arrow(p[1]).source)
}

/// All relation-satisfying points of rep(A, d)(F_q) for every d with
/// 1 <= total <= max_total.
pub fn all_modules_up_to<F: Field>(
    alg: &Arc<BoundAlgebra<F>>,
    max_total: usize,
    budget: u128,
) -> Vec<Representation<F>> {
    let n = alg.num_vertices();
    let mut out = Vec::new();
    for dims in dim_vectors(n, max_total) {
        let pts = bricklab::census::rep_points_exhaustive(alg, &dims, budget)
            .expect("within budget");
        out.extend(pts);
    }
    out
}

pub fn dim_vectors(n: usize, max_total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    loop {
        let total: usize = cur.iter().sum();
        if (1..=max_total).contains(&total) {
            out.push(cur.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            cur[i] += 1;
            if cur.iter().sum::<usize>() <= max_total {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Membership in Filt(Fac(B)): X admits a filtration with quotients in
/// Fac(B). Decided recursively through the exhaustive submodule lattice.
pub fn in_filt_fac<F: SplitField>(b: &Representation<F>, x: &Representation<F>) -> bool {
    if x.is_zero() {
        return true;
    }
    let gens = [b.clone()];
    let lat = submodule_lattice(x, 10).expect("finite domain, small module");
    for sub in &lat.members {
        if sub.total_dim() == x.total_dim() {
            continue; // need a proper quotient X/L unless L = X itself
        }
        let (quot, _) = quotient_representation(x, sub);
        if !in_fac(&gens, &quot) {
            continue;
        }
        if sub.total_dim() == 0 {
            return true;
        }
        let (l, _) = sub_representation(x, sub);
        if in_filt_fac(b, &l) {
            return true;
        }
    }
    false
}

/// dim Hom with a zero-module guard, for readability in property suites.
pub fn hom_dim<F: Field>(m: &Representation<F>, n: &Representation<F>) -> usize {
    hom_basis(m, n).dim()
}
