//! Auslander-Reiten translates through the Nakayama functor, stable Hom
//! spaces, and tau-rigidity tests.
//!
//! tau M is the kernel of nu(f) for a minimal projective presentation
//! P1 -f-> P0 of M; nu sends P_i to I_i and acts on maps through the
//! identification Hom(P_i, P_j) = e_i A e_j = Hom(I_i, I_j) in the compiled
//! path basis. The inverse translate is computed dually, through the
//! opposite algebra: tau^{-1} M = D(tau_{A^op}(D M)).

use std::sync::Arc;

use crate::algebra::{AlgElem, BoundAlgebra, StandardKind};
use crate::matrix::Mat;
use crate::rep::{
    hom_basis, kernel_subspace, min_projective_presentation, projective_cover, socle_subspace,
    sub_representation, Representation,
};
use crate::scalar::Field;

/// A finite direct sum of indecomposable injectives with its vertex list.
#[derive(Clone, Debug)]
pub struct InjSum<F: Field> {
    pub vertices: Vec<usize>,
    pub rep: Representation<F>,
}

impl<F: Field> InjSum<F> {
    pub fn build(algebra: &Arc<BoundAlgebra<F>>, vertices: Vec<usize>) -> Self {
        let parts: Vec<_> = vertices
            .iter()
            .map(|&i| Representation::standard(algebra, StandardKind::Injective, i))
            .collect();
        let rep = Representation::direct_sum_list(algebra, &parts);
        InjSum { vertices, rep }
    }

    pub fn offsets_at(&self, algebra: &BoundAlgebra<F>, v: usize) -> Vec<usize> {
        let mut offs = Vec::with_capacity(self.vertices.len());
        let mut acc = 0;
        for &i in &self.vertices {
            offs.push(acc);
            acc += algebra.pair_basis(v, i).len();
        }
        offs
    }
}

/// Apply the Nakayama functor to a map between projective sums given in
/// path form: the result is the vertexwise matrix tuple of
/// nu(f) : nu(Q) -> nu(P).
pub fn nakayama_map<F: Field>(
    alg: &Arc<BoundAlgebra<F>>,
    p: &[usize],
    q: &[usize],
    path_form: &[Vec<AlgElem<F>>],
) -> (InjSum<F>, InjSum<F>, Vec<Mat<F>>) {
    let f = &alg.field;
    let nu_p = InjSum::build(alg, p.to_vec());
    let nu_q = InjSum::build(alg, q.to_vec());
    let nv = alg.num_vertices();
    let mats = (0..nv)
        .map(|v| {
            let rows = nu_p.rep.dims()[v];
            let cols = nu_q.rep.dims()[v];
            let mut out = Mat::zero(f, rows, cols);
            let row_offs = nu_p.offsets_at(alg, v);
            let col_offs = nu_q.offsets_at(alg, v);
            for (k, &a) in p.iter().enumerate() {
                for (l, &b) in q.iter().enumerate() {
                    let x = &path_form[k][l];
                    if x.is_empty() {
                        continue;
                    }
                    // nu of right-multiplication by x: transpose of
                    // left-multiplication on paths v -> a.
                    let block = alg.left_mul_matrix(x, v, a, b).transpose();
                    for r in 0..block.rows() {
                        for c in 0..block.cols() {
                            out[(row_offs[k] + r, col_offs[l] + c)] = block[(r, c)].clone();
                        }
                    }
                }
            }
            out
        })
        .collect();
    (nu_p, nu_q, mats)
}

/// The Auslander-Reiten translate. Zero for projectives (and handled
/// summand-wise for free, since minimal presentations are additive).
pub fn tau<F: Field>(m: &Representation<F>) -> Representation<F> {
    let alg = m.algebra().clone();
    let nv = alg.num_vertices();
    if m.is_zero() {
        return Representation::zero_rep(alg, vec![0; nv]);
    }
    let pres = min_projective_presentation(m);
    if pres.p1.vertices.is_empty() {
        return Representation::zero_rep(alg, vec![0; nv]);
    }
    let path = pres.path_form(&alg);
    let (nu_p0, nu_p1, nu_f) = nakayama_map(&alg, &pres.p0.vertices, &pres.p1.vertices, &path);
    // tau M = ker( nu(f) : nu(P1) -> nu(P0) )
    let _ = nu_p0;
    let ker = kernel_subspace(&nu_p1.rep, &nu_f);
    sub_representation(&nu_p1.rep, &ker).0
}

/// The inverse translate, via duality with the opposite algebra.
pub fn tau_inverse<F: Field>(m: &Representation<F>) -> Representation<F> {
    let alg = m.algebra().clone();
    let op = alg.opposite_arc();
    let dm = m.dual_into(&op);
    let t = tau(&dm);
    t.dual_into(&alg)
}

/// Hom(M, tau M) = 0, the tau-rigidity test.
pub fn is_tau_rigid<F: Field>(m: &Representation<F>) -> bool {
    let t = tau(m);
    if t.is_zero() {
        return true;
    }
    hom_basis(m, &t).dim() == 0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StableSide {
    /// Quotient by maps factoring through projectives (underline Hom).
    Underline,
    /// Quotient by maps factoring through injectives (overline Hom).
    Overline,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StableHomReport {
    pub total: usize,
    pub factoring: usize,
}

impl StableHomReport {
    pub fn stable(&self) -> usize {
        self.total - self.factoring
    }
}

/// The module map M -> I_i determined by a linear functional phi on M_i:
/// at vertex v the rows are phi composed with the path actions.
pub fn injective_hom<F: Field>(
    m: &Representation<F>,
    i: usize,
    phi: &[F::Elem],
) -> Vec<Mat<F>> {
    let f = m.field();
    let alg = m.algebra();
    let nv = alg.num_vertices();
    (0..nv)
        .map(|v| {
            let ids = alg.pair_basis(v, i);
            let rows: Vec<Vec<F::Elem>> = ids
                .iter()
                .map(|&id| {
                    let act = m.eval_elem(&[(f.one(), id)], v, i);
                    // row = phi^T * act
                    (0..act.cols())
                        .map(|c| {
                            let mut acc = f.zero();
                            for r in 0..act.rows() {
                                acc = f.add(&acc, &f.mul(&phi[r], &act[(r, c)]));
                            }
                            acc
                        })
                        .collect()
                })
                .collect();
            Mat::from_rows(f, m.dims()[v], &rows)
        })
        .collect()
}

/// Injective envelope M into a sum of I_i with socle multiplicities,
/// together with the embedding.
pub fn injective_envelope<F: Field>(m: &Representation<F>) -> (InjSum<F>, Vec<Mat<F>>) {
    let f = m.field();
    let alg = m.algebra().clone();
    let nv = alg.num_vertices();
    let soc = socle_subspace(m);
    let mut vertices = Vec::new();
    let mut functionals: Vec<(usize, Vec<F::Elem>)> = Vec::new();
    for v in 0..nv {
        let s = soc.rows[v].rows();
        if s == 0 {
            continue;
        }
        let d = m.dims()[v];
        // complete socle basis to a full basis, take the dual rows
        let mut rows: Vec<Vec<F::Elem>> = (0..s).map(|r| soc.rows[v].row(r)).collect();
        for e in 0..d {
            if rows.len() == d {
                break;
            }
            let mut unit = vec![f.zero(); d];
            unit[e] = f.one();
            let mut cand = rows.clone();
            cand.push(unit);
            if Mat::from_rows(f, d, &cand).rank(f) == cand.len() {
                rows = cand;
            }
        }
        let t = Mat::from_rows(f, d, &rows);
        let dual = t.transpose().inverse(f).expect("basis completion");
        for k in 0..s {
            vertices.push(v);
            functionals.push((v, dual.row(k)));
        }
    }
    let env = InjSum::build(&alg, vertices);
    let maps: Vec<Mat<F>> = (0..nv)
        .map(|v| {
            let blocks: Vec<Vec<Mat<F>>> = functionals
                .iter()
                .map(|(i, phi)| injective_hom(m, *i, phi))
                .collect();
            if blocks.is_empty() {
                Mat::zero(f, 0, m.dims()[v])
            } else {
                let refs: Vec<&Mat<F>> = blocks.iter().map(|b| &b[v]).collect();
                Mat::vstack(f, &refs)
            }
        })
        .collect();
    (env, maps)
}

/// Stable Hom report: the total Hom dimension and the dimension of the
/// subspace factoring through projectives (underline) or injectives
/// (overline).
pub fn stable_hom<F: Field>(
    m: &Representation<F>,
    n: &Representation<F>,
    side: StableSide,
) -> StableHomReport {
    assert!(m.same_algebra(n));
    let f = m.field();
    let hom = hom_basis(m, n);
    let total = hom.dim();
    if total == 0 {
        return StableHomReport {
            total,
            factoring: 0,
        };
    }
    let factoring_maps: Vec<Vec<Mat<F>>> = match side {
        StableSide::Underline => {
            // everything factoring through a projective factors through the
            // cover P(N) -> N
            let (pn, cover) = projective_cover(n);
            let hom_mp = hom_basis(m, &pn.rep);
            hom_mp
                .basis
                .iter()
                .map(|g| crate::rep::compose_maps(f, g, &cover))
                .collect()
        }
        StableSide::Overline => {
            // everything factoring through an injective factors through the
            // envelope M -> I(M)
            let (im, iota) = injective_envelope(m);
            let hom_in = hom_basis(&im.rep, n);
            hom_in
                .basis
                .iter()
                .map(|h| crate::rep::compose_maps(f, &iota, h))
                .collect()
        }
    };
    // rank of the factoring maps inside Hom(M, N) coordinates
    if factoring_maps.is_empty() {
        return StableHomReport {
            total,
            factoring: 0,
        };
    }
    let flat: Vec<Vec<F::Elem>> = factoring_maps
        .iter()
        .map(|maps| {
            let mut v = Vec::new();
            for mat in maps {
                v.extend_from_slice(mat.data());
            }
            v
        })
        .collect();
    let cols = flat[0].len();
    let factoring = if cols == 0 {
        0
    } else {
        Mat::from_rows(f, cols, &flat).rank(f)
    };
    StableHomReport { total, factoring }
}
