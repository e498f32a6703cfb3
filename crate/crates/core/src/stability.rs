//! King stability with the exact submodule oracle, Schofield
//! semi-invariants, orbit geometry, E-invariants on two-term projective
//! complexes, and canonical decomposition of g-vectors.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{AlgElem, BoundAlgebra};
use crate::decompose::{decompose, SplitField};
use crate::matrix::Mat;
use crate::rep::{
    end_basis, ext_dim, image_subspace, induced_hom_matrix, kernel_subspace, map_from_path_form,
    quotient_representation, submodule_lattice, ProjSum, RepError, Representation,
};
use crate::scalar::Field;
use crate::sttilt::g_vector;

#[derive(Debug, Error)]
pub enum StabilityError {
    #[error("theta is not orthogonal to the dimension vector of the module")]
    NotOrthogonal,
    #[error("exhaustive enumeration needs {needed} points, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("two seeds produced different canonical decompositions: {a:?} vs {b:?}")]
    UnstableDecomposition {
        a: Vec<Vec<i64>>,
        b: Vec<Vec<i64>>,
    },
    #[error(transparent)]
    Rep(#[from] RepError),
}

// ---------------------------------------------------------------------------
// King stability via the exhaustive submodule oracle
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Stable,
    SemistableNotStable,
    Unstable,
}

#[derive(Clone, Debug)]
pub struct StabilityVerdict {
    pub verdict: Verdict,
    /// theta value of the module itself.
    pub module_pairing: i64,
    /// Submodule dimension vectors with their theta values; for unstable
    /// modules this includes a maximizing witness, for semistable-not-stable
    /// the zero-pairing submodules.
    pub witnesses: Vec<(Vec<usize>, i64)>,
}

pub fn theta_pairing(theta: &[i64], dims: &[usize]) -> i64 {
    theta
        .iter()
        .zip(dims)
        .map(|(t, d)| t * (*d as i64))
        .sum()
}

/// Exhaustive King verdict over a prime field: every proper nonzero
/// submodule is consulted.
pub fn check_stability<F: Field>(
    m: &Representation<F>,
    theta: &[i64],
    lattice_bound: usize,
) -> Result<StabilityVerdict, StabilityError> {
    let total = theta_pairing(theta, m.dims());
    if total != 0 {
        return Ok(StabilityVerdict {
            verdict: Verdict::Unstable,
            module_pairing: total,
            witnesses: vec![(m.dims().to_vec(), total)],
        });
    }
    let lat = submodule_lattice(m, lattice_bound)?;
    let mut max_val = i64::MIN;
    let mut max_witness: Option<(Vec<usize>, i64)> = None;
    let mut zeros: Vec<(Vec<usize>, i64)> = Vec::new();
    for sub in lat.proper_nonzero(m.dims()) {
        let dims = sub.dims();
        let v = theta_pairing(theta, &dims);
        if v > max_val {
            max_val = v;
            max_witness = Some((dims.clone(), v));
        }
        if v == 0 {
            zeros.push((dims, v));
        }
    }
    let verdict = if max_witness.is_none() || max_val < 0 {
        Verdict::Stable
    } else if max_val == 0 {
        Verdict::SemistableNotStable
    } else {
        Verdict::Unstable
    };
    let witnesses = match verdict {
        Verdict::Stable => vec![],
        Verdict::SemistableNotStable => zeros,
        Verdict::Unstable => max_witness.into_iter().collect(),
    };
    Ok(StabilityVerdict {
        verdict,
        module_pairing: total,
        witnesses,
    })
}

// ---------------------------------------------------------------------------
// two-term projective complexes
// ---------------------------------------------------------------------------

/// theta = theta_plus - theta_minus with disjoint supports.
pub fn split_theta(theta: &[i64]) -> (Vec<usize>, Vec<usize>) {
    let pos = theta.iter().map(|&t| t.max(0) as usize).collect();
    let neg = theta.iter().map(|&t| (-t).max(0) as usize).collect();
    (pos, neg)
}

fn mult_vertices(mults: &[usize]) -> Vec<usize> {
    let mut v = Vec::new();
    for (i, &m) in mults.iter().enumerate() {
        for _ in 0..m {
            v.push(i);
        }
    }
    v
}

/// A sampled map P(theta^-) -> P(theta^+) with entries expanded in the
/// compiled path bases.
#[derive(Clone, Debug)]
pub struct TwoTermComplex<F: Field> {
    pub theta: Vec<i64>,
    /// P(theta^+), the target.
    pub pos: ProjSum<F>,
    /// P(theta^-), the source.
    pub neg: ProjSum<F>,
    /// Component (k, l): the element of Hom(P_{neg_l}, P_{pos_k}),
    /// i.e. a combination of paths pos_k -> neg_l.
    pub path_map: Vec<Vec<AlgElem<F>>>,
    pub seed: u64,
}

impl<F: Field> TwoTermComplex<F> {
    /// Vertexwise matrices of the map.
    pub fn matrices(&self, alg: &Arc<BoundAlgebra<F>>) -> Vec<Mat<F>> {
        map_from_path_form(alg, &self.pos, &self.neg, &self.path_map)
    }

    /// Cokernel module of the map.
    pub fn cokernel(&self, alg: &Arc<BoundAlgebra<F>>) -> Representation<F> {
        let mats = self.matrices(alg);
        let img = image_subspace(&self.pos.rep, &mats);
        quotient_representation(&self.pos.rep, &img).0
    }
}

/// Sample a complex for theta with seeded uniform path coefficients.
pub fn sample_complex<F: Field>(
    alg: &Arc<BoundAlgebra<F>>,
    theta: &[i64],
    seed: u64,
) -> TwoTermComplex<F> {
    let f = &alg.field;
    let (pos_m, neg_m) = split_theta(theta);
    let pos = ProjSum::build(alg, mult_vertices(&pos_m));
    let neg = ProjSum::build(alg, mult_vertices(&neg_m));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let path_map = pos
        .vertices
        .iter()
        .map(|&a| {
            neg.vertices
                .iter()
                .map(|&b| {
                    alg.pair_basis(a, b)
                        .iter()
                        .filter_map(|&id| {
                            let c = f.random_elem(&mut rng);
                            if f.is_zero(&c) {
                                None
                            } else {
                                Some((c, id))
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    TwoTermComplex {
        theta: theta.to_vec(),
        pos,
        neg,
        path_map,
        seed,
    }
}

/// Build a complex from explicit coefficient assignments (used for
/// exhaustive sweeps over finite fields).
pub fn complex_from_coeffs<F: Field>(
    alg: &Arc<BoundAlgebra<F>>,
    theta: &[i64],
    coeffs: &[F::Elem],
) -> TwoTermComplex<F> {
    let f = &alg.field;
    let (pos_m, neg_m) = split_theta(theta);
    let pos = ProjSum::build(alg, mult_vertices(&pos_m));
    let neg = ProjSum::build(alg, mult_vertices(&neg_m));
    let mut it = coeffs.iter();
    let path_map = pos
        .vertices
        .iter()
        .map(|&a| {
            neg.vertices
                .iter()
                .map(|&b| {
                    alg.pair_basis(a, b)
                        .iter()
                        .filter_map(|&id| {
                            let c = it.next().expect("coefficient count").clone();
                            if f.is_zero(&c) {
                                None
                            } else {
                                Some((c, id))
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    TwoTermComplex {
        theta: theta.to_vec(),
        pos,
        neg,
        path_map,
        seed: 0,
    }
}

/// Number of free path coefficients of a complex for theta.
pub fn complex_coeff_count<F: Field>(alg: &BoundAlgebra<F>, theta: &[i64]) -> usize {
    let (pos_m, neg_m) = split_theta(theta);
    let mut count = 0;
    for (a, &ma) in pos_m.iter().enumerate() {
        for (b, &mb) in neg_m.iter().enumerate() {
            count += ma * mb * alg.pair_basis(a, b).len();
        }
    }
    count
}

// ---------------------------------------------------------------------------
// Schofield semi-invariants
// ---------------------------------------------------------------------------

/// C^f(M) = det Hom(f, M); defined when theta . dim M = 0.
pub fn schofield_det<F: Field>(
    c: &TwoTermComplex<F>,
    m: &Representation<F>,
) -> Result<F::Elem, StabilityError> {
    if theta_pairing(&c.theta, m.dims()) != 0 {
        return Err(StabilityError::NotOrthogonal);
    }
    let f_m = induced_hom_matrix(m, &c.pos, &c.neg, &c.path_map);
    debug_assert_eq!(f_m.rows(), f_m.cols());
    Ok(f_m.det(m.field()))
}

#[derive(Clone, Debug)]
pub enum WitnessOutcome<F: Field> {
    /// A semi-invariant of weight n * theta not vanishing on M: a sound
    /// certificate of semistability.
    Found {
        n: usize,
        complex: TwoTermComplex<F>,
        det: F::Elem,
    },
    /// Inconclusive: no certificate within the sample and weight budget.
    NotFound,
}

/// Search seeded random complexes of weights n * theta, n <= n_max, for a
/// determinant witness of semistability.
pub fn semistability_witness<F: Field>(
    m: &Representation<F>,
    theta: &[i64],
    samples: usize,
    n_max: usize,
    seed: u64,
) -> Result<WitnessOutcome<F>, StabilityError> {
    if theta_pairing(theta, m.dims()) != 0 {
        return Err(StabilityError::NotOrthogonal);
    }
    let alg = m.algebra().clone();
    let f = m.field();
    for n in 1..=n_max {
        let scaled: Vec<i64> = theta.iter().map(|&t| t * n as i64).collect();
        for s in 0..samples.max(1) {
            let cseed = seed
                .wrapping_mul(0x9e3779b97f4a7c15)
                .wrapping_add((n * 1000 + s) as u64);
            let c = sample_complex(&alg, &scaled, cseed);
            let det = schofield_det(&c, m)?;
            if !f.is_zero(&det) {
                return Ok(WitnessOutcome::Found { n, complex: c, det });
            }
        }
    }
    Ok(WitnessOutcome::NotFound)
}

// ---------------------------------------------------------------------------
// orbit geometry
// ---------------------------------------------------------------------------

/// dim GL(d) - dim End(M), the orbit dimension in rep(A, d).
pub fn orbit_dim<F: Field>(m: &Representation<F>) -> i64 {
    let gl: i64 = m.dims().iter().map(|&d| (d * d) as i64).sum();
    gl - end_basis(m).dim() as i64
}

/// |GL(d, F_q)| = prod over k of (q^d - q^k).
pub fn gl_order(d: usize, q: u64) -> u128 {
    let mut acc: u128 = 1;
    let qd = (q as u128).pow(d as u32);
    for k in 0..d {
        acc *= qd - (q as u128).pow(k as u32);
    }
    acc
}

#[derive(Clone, Debug)]
pub struct OrbitCount {
    pub orbit_size: u128,
    pub aut_size: u128,
    pub gl_size: u128,
}

impl OrbitCount {
    pub fn holds(&self) -> bool {
        self.orbit_size * self.aut_size == self.gl_size
    }
}

/// All invertible d x d matrices over F_q (budget-guarded).
pub fn enumerate_gl<F: Field>(f: &F, d: usize, budget: u128) -> Result<Vec<Mat<F>>, StabilityError> {
    let q = f.size().ok_or(RepError::DomainNotFinite).map_err(StabilityError::Rep)?;
    let total = (q as u128).checked_pow((d * d) as u32).unwrap_or(u128::MAX);
    if total > budget {
        return Err(StabilityError::BudgetExceeded {
            needed: total,
            budget,
        });
    }
    let mut out = Vec::new();
    for idx in 0..total {
        let mut k = idx;
        let mut m = Mat::zero(f, d, d);
        for r in 0..d {
            for c in 0..d {
                m[(r, c)] = f.elem_from_index((k % q as u128) as u64);
                k /= q as u128;
            }
        }
        if m.is_invertible(f) {
            out.push(m);
        }
    }
    Ok(out)
}

/// Exhaustive orbit-stabilizer verification: the GL(d, F_q)-orbit of M is
/// enumerated by group action, Aut(M) is counted independently inside
/// End(M), and |orbit| * |Aut| must equal |GL(d, F_q)|.
pub fn orbit_count_check<F: Field>(
    m: &Representation<F>,
    budget: u128,
) -> Result<OrbitCount, StabilityError> {
    let f = m.field();
    let q = f.size().ok_or(RepError::DomainNotFinite).map_err(StabilityError::Rep)?;
    // enumerate the acting group
    let gls: Vec<Vec<Mat<F>>> = m
        .dims()
        .iter()
        .map(|&d| enumerate_gl(f, d, budget))
        .collect::<Result<_, _>>()?;
    let gl_size: u128 = m.dims().iter().map(|&d| gl_order(d, q)).product();
    let group_size: u128 = gls.iter().map(|g| g.len() as u128).product();
    if group_size > budget {
        return Err(StabilityError::BudgetExceeded {
            needed: group_size,
            budget,
        });
    }
    // orbit by action
    let mut seen: std::collections::HashSet<Vec<Mat<F>>> = std::collections::HashSet::new();
    let mut idx = vec![0usize; gls.len()];
    loop {
        let g: Vec<Mat<F>> = idx.iter().zip(&gls).map(|(&i, gl)| gl[i].clone()).collect();
        let moved = m.conjugate(&g);
        seen.insert(moved.matrices().to_vec());
        // increment the multi-index
        let mut carry = true;
        for (i, gi) in idx.iter_mut().zip(&gls) {
            if carry {
                *i += 1;
                if *i == gi.len() {
                    *i = 0;
                } else {
                    carry = false;
                }
            }
        }
        if carry {
            break;
        }
    }
    let orbit_size = seen.len() as u128;
    // Aut(M) counted inside End(M)
    let end = end_basis(m);
    let h = end.dim();
    let total = (q as u128).checked_pow(h as u32).unwrap_or(u128::MAX);
    if total > budget {
        return Err(StabilityError::BudgetExceeded {
            needed: total,
            budget,
        });
    }
    let mut aut_size: u128 = 0;
    for c in 0..total {
        let mut k = c;
        let coeffs: Vec<F::Elem> = (0..h)
            .map(|_| {
                let e = f.elem_from_index((k % q as u128) as u64);
                k /= q as u128;
                e
            })
            .collect();
        let cand = end.combine(f, &coeffs);
        if crate::rep::map_is_invertible(f, &cand) {
            aut_size += 1;
        }
    }
    Ok(OrbitCount {
        orbit_size,
        aut_size,
        gl_size,
    })
}

#[derive(Clone, Debug)]
pub struct VoigtReport {
    pub ext1: usize,
    pub ext2: usize,
    /// Ext^1(M, M) = 0 certifies an open orbit.
    pub orbit_open_certified: bool,
    /// With Ext^2 = 0 the converse direction also applies.
    pub converse_applicable: bool,
    /// For hereditary algebras: (dim rep(Q, d), orbit_dim, gap == ext1).
    pub hereditary_check: Option<(i64, i64, bool)>,
}

pub fn voigt_flags<F: Field>(m: &Representation<F>) -> VoigtReport {
    let ext1 = ext_dim(m, m, 1);
    let ext2 = ext_dim(m, m, 2);
    let hereditary_check = if m.algebra().is_hereditary() {
        let q = m.algebra().quiver();
        let ambient: i64 = q
            .arrows()
            .iter()
            .map(|a| (m.dims()[a.source] * m.dims()[a.target]) as i64)
            .sum();
        let od = orbit_dim(m);
        Some((ambient, od, ambient - od == ext1 as i64))
    } else {
        None
    };
    VoigtReport {
        ext1,
        ext2,
        orbit_open_certified: ext1 == 0,
        converse_applicable: ext2 == 0,
        hereditary_check,
    }
}

// ---------------------------------------------------------------------------
// E-invariants and canonical decomposition
// ---------------------------------------------------------------------------

/// Coordinates of the Hom space between two projective sums in path form:
/// the flat list of (row copy, col copy, basis id) triples.
fn proj_hom_coords<F: Field>(
    alg: &BoundAlgebra<F>,
    rows: &[usize],
    cols: &[usize],
) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (k, &a) in rows.iter().enumerate() {
        for (l, &b) in cols.iter().enumerate() {
            for &id in alg.pair_basis(a, b) {
                out.push((k, l, id));
            }
        }
    }
    out
}

/// dim Hom_{K^b}(X, Y[1]) for two-term complexes X, Y: the coordinate space
/// Hom(P(thx^-), P(thy^+)) modulo homotopies s f_X + f_Y s'.
pub fn hom_shift_dim<F: Field>(
    alg: &Arc<BoundAlgebra<F>>,
    x: &TwoTermComplex<F>,
    y: &TwoTermComplex<F>,
) -> usize {
    let f = &alg.field;
    // ambient space A = Hom(X^-, Y^+)
    let a_coords = proj_hom_coords(alg, &y.pos.vertices, &x.neg.vertices);
    if a_coords.is_empty() {
        return 0;
    }
    // homotopy sources: s in Hom(X^+, Y^+), s' in Hom(X^-, Y^-)
    let s_coords = proj_hom_coords(alg, &y.pos.vertices, &x.pos.vertices);
    let sp_coords = proj_hom_coords(alg, &y.neg.vertices, &x.neg.vertices);
    let mut cols: Vec<Vec<F::Elem>> = Vec::new();
    // image of a unit s: s compose f_X (f_X applied first)
    for &(k, mid, id) in &s_coords {
        // s: X^+ copy `mid` -> Y^+ copy `k`, via basis element id
        let mut img = vec![f.zero(); a_coords.len()];
        for (l, _bx) in x.neg.vertices.iter().enumerate() {
            let fx = &x.path_map[mid][l]; // X^- copy l -> X^+ copy mid
            if fx.is_empty() {
                continue;
            }
            // composite of right-multiplications: the second map's path
            // element is traversed first
            let composite = alg.mul(&vec![(f.one(), id)], &fx.clone());
            for (c, bid) in composite {
                if let Some(pos) = a_coords
                    .iter()
                    .position(|&(rk, rl, rid)| rk == k && rl == l && rid == bid)
                {
                    img[pos] = f.add(&img[pos], &c);
                }
            }
        }
        cols.push(img);
    }
    // image of a unit s': f_Y compose s' (s' applied first)
    for &(mid, l, id) in &sp_coords {
        // s': X^- copy l -> Y^- copy mid
        let mut img = vec![f.zero(); a_coords.len()];
        for (k, _ay) in y.pos.vertices.iter().enumerate() {
            let fy = &y.path_map[k][mid]; // Y^- copy mid -> Y^+ copy k
            if fy.is_empty() {
                continue;
            }
            let composite = alg.mul(&fy.clone(), &vec![(f.one(), id)]);
            for (c, bid) in composite {
                if let Some(pos) = a_coords
                    .iter()
                    .position(|&(rk, rl, rid)| rk == k && rl == l && rid == bid)
                {
                    img[pos] = f.add(&img[pos], &c);
                }
            }
        }
        cols.push(img);
    }
    if cols.is_empty() {
        return a_coords.len();
    }
    let mat = Mat::from_cols(f, a_coords.len(), &cols);
    a_coords.len() - mat.rank(f)
}

/// E(theta1, theta2): sampled minimum of dim Hom(X, Y[1]) over seeded pairs.
/// An upper bound for the generic value, non-increasing in `samples`.
pub fn e_invariant<F: Field>(
    alg: &Arc<BoundAlgebra<F>>,
    theta1: &[i64],
    theta2: &[i64],
    samples: usize,
    seed: u64,
) -> usize {
    let mut best = usize::MAX;
    for s in 0..samples.max(1) {
        let x = sample_complex(alg, theta1, seed.wrapping_add(2 * s as u64 + 1));
        let y = sample_complex(alg, theta2, seed.wrapping_add(2 * s as u64 + 2));
        best = best.min(hom_shift_dim(alg, &x, &y));
        if best == 0 {
            break;
        }
    }
    best
}

/// Exhaustive minimum of the self-extension dimension over all complexes
/// for theta with coefficients in F_q. `None` when over the budget or the
/// field is infinite. A nonzero result certifies that no rigid two-term
/// complex has this g-vector, hence theta lies on no cone of the fan.
pub fn min_self_ext_exhaustive<F: Field>(
    alg: &Arc<BoundAlgebra<F>>,
    theta: &[i64],
    budget: u128,
) -> Option<usize> {
    let f = &alg.field;
    let q = f.size()?;
    let d = complex_coeff_count(alg, theta);
    let total = (q as u128).checked_pow(d as u32)?;
    if total > budget {
        return None;
    }
    let mut best = usize::MAX;
    for idx in 0..total {
        let mut k = idx;
        let coeffs: Vec<F::Elem> = (0..d)
            .map(|_| {
                let e = f.elem_from_index((k % q as u128) as u64);
                k /= q as u128;
                e
            })
            .collect();
        let c = complex_from_coeffs(alg, theta, &coeffs);
        best = best.min(hom_shift_dim(alg, &c, &c));
        if best == 0 {
            return Some(0);
        }
    }
    Some(best)
}

/// Canonical decomposition of theta by sampling generic complexes:
/// shifted-projective parts split off through the radical test, the
/// cokernel decomposes, and summand g-vectors are lifted. All samples must
/// agree; disagreement is reported, never silently resolved.
pub fn canonical_decomposition<F: SplitField>(
    alg: &Arc<BoundAlgebra<F>>,
    theta: &[i64],
    samples: usize,
    seed: u64,
) -> Result<Vec<Vec<i64>>, StabilityError> {
    assert!(samples >= 1);
    let mut reference: Option<Vec<Vec<i64>>> = None;
    for s in 0..samples {
        let parts = canonical_decomposition_once(alg, theta, seed.wrapping_add(s as u64))?;
        match &reference {
            None => reference = Some(parts),
            Some(r) => {
                if *r != parts {
                    return Err(StabilityError::UnstableDecomposition {
                        a: r.clone(),
                        b: parts,
                    });
                }
            }
        }
    }
    let parts = reference.expect("samples >= 1");
    // pairwise compatibility of distinct positions on the sampled complexes
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let e_ij = e_invariant(alg, &parts[i], &parts[j], 2, seed ^ 0xabcd);
            let e_ji = e_invariant(alg, &parts[j], &parts[i], 2, seed ^ 0xdcba);
            debug_assert_eq!(
                (e_ij, e_ji),
                (0, 0),
                "canonical parts must be pairwise compatible"
            );
        }
    }
    Ok(parts)
}

fn canonical_decomposition_once<F: SplitField>(
    alg: &Arc<BoundAlgebra<F>>,
    theta: &[i64],
    seed: u64,
) -> Result<Vec<Vec<i64>>, StabilityError> {
    let f = &alg.field;
    let n = alg.num_vertices();
    let c = sample_complex(alg, theta, seed);
    let mats = c.matrices(alg);
    // shifted-projective parts: kernel vectors visible in the top of
    // P(theta^-), counted per vertex
    let ker = kernel_subspace(&c.neg.rep, &mats);
    let mut shift_mults = vec![0usize; n];
    for v in 0..n {
        if ker.rows[v].rows() == 0 {
            continue;
        }
        // unit-path coordinates of the P_v copies at vertex v
        let offs = c.neg.offsets_at(alg, v);
        let unit_cols: Vec<usize> = c
            .neg
            .vertices
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == v)
            .map(|(l, _)| offs[l])
            .collect();
        if unit_cols.is_empty() {
            continue;
        }
        let all_rows: Vec<usize> = (0..ker.rows[v].rows()).collect();
        let proj = ker.rows[v].submatrix(&all_rows, &unit_cols);
        shift_mults[v] = proj.rank(f);
    }
    let mut parts: Vec<Vec<i64>> = Vec::new();
    for (v, &mult) in shift_mults.iter().enumerate() {
        for _ in 0..mult {
            let mut e = vec![0i64; n];
            e[v] = -1;
            parts.push(e);
        }
    }
    // module parts from the cokernel
    let coker = c.cokernel(alg);
    if !coker.is_zero() {
        for part in decompose(&coker)? {
            parts.push(g_vector(&part));
        }
    }
    // the parts must sum back to theta
    let mut total = vec![0i64; n];
    for p in &parts {
        for v in 0..n {
            total[v] += p[v];
        }
    }
    if total != theta {
        return Err(StabilityError::UnstableDecomposition {
            a: vec![theta.to_vec()],
            b: parts,
        });
    }
    parts.sort();
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::StandardKind;
    use crate::rep::testfix::*;
    use crate::scalar::{PrimeField, Rationals};

    fn star_module<F: Field>(alg: &Arc<BoundAlgebra<F>>) -> Representation<F> {
        let f = &alg.field;
        Representation::new(
            alg.clone(),
            vec![1, 2, 1, 1],
            vec![
                Mat::new(1, 2, vec![f.from_i64(0), f.from_i64(1)]),
                Mat::new(1, 2, vec![f.from_i64(1), f.from_i64(0)]),
                Mat::new(1, 2, vec![f.from_i64(1), f.from_i64(1)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn star_example_is_stable() {
        for p in [5u64, 7] {
            let alg = arc(&desc_star(), PrimeField::new(p));
            let m = star_module(&alg);
            let v = check_stability(&m, &[-2, 3, -2, -2], 8).unwrap();
            assert_eq!(v.verdict, Verdict::Stable);
        }
    }

    #[test]
    fn kronecker_stability() {
        let alg = arc(&desc_kronecker(), PrimeField::new(5));
        let r = kronecker_point(&alg, 1, 1);
        let v = check_stability(&r, &[-1, 1], 8).unwrap();
        assert_eq!(v.verdict, Verdict::Stable);
        let s1 = Representation::standard(&alg, StandardKind::Simple, 0);
        let v = check_stability(&s1, &[-1, 1], 8).unwrap();
        assert_eq!(v.verdict, Verdict::Unstable);
        // theta = 0: everything is semistable; decomposables are not stable
        let sum = r.direct_sum(&kronecker_point(&alg, 1, 2));
        let v = check_stability(&sum, &[0, 0], 8).unwrap();
        assert_eq!(v.verdict, Verdict::SemistableNotStable);
    }

    #[test]
    fn stable_implies_brick() {
        let alg = arc(&desc_kronecker(), PrimeField::new(5));
        for x in 0..5i64 {
            for y in 0..5i64 {
                if (x, y) == (0, 0) {
                    continue;
                }
                let m = kronecker_point(&alg, x, y);
                let v = check_stability(&m, &[-1, 1], 8).unwrap();
                assert_eq!(v.verdict, Verdict::Stable);
                assert!(crate::rep::is_brick(&m).unwrap());
            }
        }
    }

    #[test]
    fn schofield_det_examples() {
        let alg = arc(&desc_kronecker(), PrimeField::new(7));
        // theta = (-1, 1): a generic complex has cokernel some R_lambda
        let c = sample_complex(&alg, &[-1, 1], 11);
        let v = c.cokernel(&alg);
        assert_eq!(v.dims(), &[1, 1]);
        // C^f vanishes exactly on the regulars homologically linked to V_f:
        // sweep the whole projective line of (1,1)-modules
        let mut line: Vec<Representation<PrimeField>> =
            (0..7i64).map(|lam| kronecker_point(&alg, 1, lam)).collect();
        line.push(kronecker_point(&alg, 0, 1));
        let mut zeros = 0;
        let mut nonzeros = 0;
        for m in &line {
            let det = schofield_det(&c, m).unwrap();
            if alg.field.is_zero(&det) {
                zeros += 1;
            } else {
                nonzeros += 1;
            }
        }
        assert_eq!(zeros, 1, "exactly the matching regular vanishes");
        assert_eq!(nonzeros, 7);
        // non-orthogonal weight is rejected
        let s1 = Representation::standard(&alg, StandardKind::Simple, 0);
        assert!(matches!(
            schofield_det(&c, &s1),
            Err(StabilityError::NotOrthogonal)
        ));
        // determinant is multiplicative over direct sums
        let m1 = kronecker_point(&alg, 1, 2);
        let m2 = kronecker_point(&alg, 1, 3);
        let d1 = schofield_det(&c, &m1).unwrap();
        let d2 = schofield_det(&c, &m2).unwrap();
        let dsum = schofield_det(&c, &m1.direct_sum(&m2)).unwrap();
        assert_eq!(dsum, alg.field.mul(&d1, &d2));
    }

    #[test]
    fn semistability_witness_agrees_with_oracle() {
        let alg = arc(&desc_star(), PrimeField::new(5));
        let m = star_module(&alg);
        let out = semistability_witness(&m, &[-2, 3, -2, -2], 32, 3, 42).unwrap();
        assert!(matches!(out, WitnessOutcome::Found { .. }));
        // unstable module gets no witness
        let kr = arc(&desc_kronecker(), PrimeField::new(5));
        let s1 = Representation::standard(&kr, StandardKind::Simple, 0);
        // theta.(1,0) = -1 != 0: not orthogonal, the precondition fails
        assert!(matches!(
            semistability_witness(&s1, &[-1, 1], 8, 2, 1),
            Err(StabilityError::NotOrthogonal)
        ));
        // an orthogonal but unstable case: S1 + S2 against (-1, 1)
        let s2 = Representation::standard(&kr, StandardKind::Simple, 1);
        let sum = s1.direct_sum(&s2);
        let out = semistability_witness(&sum, &[-1, 1], 8, 2, 1).unwrap();
        assert!(matches!(out, WitnessOutcome::NotFound));
        let v = check_stability(&sum, &[-1, 1], 8).unwrap();
        assert_eq!(v.verdict, Verdict::Unstable);
    }

    #[test]
    fn orbit_dims() {
        let kr = arc(&desc_kronecker(), Rationals);
        let r = kronecker_point(&kr, 1, 1);
        assert_eq!(orbit_dim(&r), 1); // 2 - 1
        let s1 = Representation::standard(&kr, StandardKind::Simple, 0);
        assert_eq!(orbit_dim(&s1), 0);
        let dn = arc(&desc_dual_numbers(), Rationals);
        let s = Representation::standard(&dn, StandardKind::Simple, 0);
        assert_eq!(orbit_dim(&s), 0);
    }

    #[test]
    fn orbit_stabilizer_exact() {
        let alg = arc(&desc_kronecker(), PrimeField::new(2));
        let r = kronecker_point(&alg, 1, 1);
        let oc = orbit_count_check(&r, 1 << 24).unwrap();
        assert!(oc.holds());
        assert_eq!(oc.gl_size, 1); // GL(1,2) x GL(1,2)
        let a2 = arc(&desc_a2(), PrimeField::new(3));
        let p1 = Representation::standard(&a2, StandardKind::Projective, 0);
        let oc = orbit_count_check(&p1, 1 << 24).unwrap();
        assert!(oc.holds());
    }

    #[test]
    fn voigt_examples() {
        // simple projective: rigid, open orbit
        let kr = arc(&desc_kronecker(), Rationals);
        let s1 = Representation::standard(&kr, StandardKind::Simple, 0);
        let rep = voigt_flags(&s1);
        assert_eq!(rep.ext1, 0);
        assert!(rep.orbit_open_certified);
        // regular: ext1 = 1, hereditary cross-check 2*1 - 1 = 1
        let r = kronecker_point(&kr, 1, 1);
        let rep = voigt_flags(&r);
        assert_eq!(rep.ext1, 1);
        let (ambient, od, ok) = rep.hereditary_check.unwrap();
        assert_eq!((ambient, od), (2, 1));
        assert!(ok);
        // dual numbers: the converse of the openness criterion fails
        let dn = arc(&desc_dual_numbers(), Rationals);
        let s = Representation::standard(&dn, StandardKind::Simple, 0);
        let rep = voigt_flags(&s);
        assert_eq!(rep.ext1, 1);
        assert_ne!(rep.ext2, 0);
        assert!(!rep.converse_applicable);
    }

    #[test]
    fn e_invariant_examples() {
        let kr = arc(&desc_kronecker(), PrimeField::new(7));
        // distinct generic cokernels are Hom-orthogonal: E = 0 with 2 samples
        assert_eq!(e_invariant(&kr, &[-1, 1], &[-1, 1], 2, 3), 0);
        // g-vector of a projective against anything with no negative part
        assert_eq!(e_invariant(&kr, &[0, 1], &[1, 0], 1, 1), 0);
        // the diagonal self-extension of a single complex never vanishes
        let min = min_self_ext_exhaustive(&kr, &[-1, 1], 1 << 24).unwrap();
        assert_eq!(min, 1);
    }

    #[test]
    fn canonical_decomposition_examples() {
        let kr = arc(&desc_kronecker(), PrimeField::new(7));
        // seed 1 draws pencils with split spectrum for both samples; seeds
        // with repeated or irrational eigenvalues surface as the documented
        // disagreement error or the coarser over-F_q decomposition
        let parts = canonical_decomposition(&kr, &[-2, 2], 2, 1).unwrap();
        assert_eq!(parts, vec![vec![-1, 1], vec![-1, 1]]);
        // pure shifted projective
        let parts = canonical_decomposition(&kr, &[-1, 0], 1, 1).unwrap();
        assert_eq!(parts, vec![vec![-1, 0]]);
        // a tilting-type vector decomposes into its columns
        let parts = canonical_decomposition(&kr, &[1, 1], 2, 9).unwrap();
        assert_eq!(parts, vec![vec![0, 1], vec![1, 0]]);
    }
}
