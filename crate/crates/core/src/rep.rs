//! Finite-dimensional representations of a bound quiver algebra and the
//! exact homological linear algebra on them: Hom/End spaces, tops, radicals,
//! socles, annihilators, projective covers and minimal presentations,
//! Ext groups, and exhaustive submodule lattices over prime fields.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{AlgElem, BoundAlgebra, StandardKind};
use crate::matrix::Mat;
use crate::scalar::Field;

#[derive(Debug, Error)]
pub enum RepError {
    #[error("matrix shape mismatch at arrow {arrow:?}")]
    ShapeMismatch { arrow: String },
    #[error("operation undefined for the zero module")]
    ZeroModule,
    #[error("representations live over different algebras")]
    AlgebraMismatch,
    #[error("exhaustive enumeration needs a finite scalar domain")]
    DomainNotFinite,
    #[error("total dimension exceeds the configured bound {bound}")]
    BoundExceeded { bound: usize },
    #[error("direct-sum split not realizable over the rationals (irrational idempotent eigenvalues); retry over a prime field")]
    SplitFailure,
    #[error("isomorphism test inconclusive over the rationals; retry over a prime field")]
    Inconclusive,
}

/// A representation: one vector space per vertex (dimension vector) and one
/// matrix per arrow, of shape d_target x d_source.
#[derive(Clone, Debug)]
pub struct Representation<F: Field> {
    algebra: Arc<BoundAlgebra<F>>,
    dims: Vec<usize>,
    mats: Vec<Mat<F>>,
}

impl<F: Field> PartialEq for Representation<F> {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims && self.mats == other.mats
    }
}

impl<F: Field> Representation<F> {
    pub fn new(
        algebra: Arc<BoundAlgebra<F>>,
        dims: Vec<usize>,
        mats: Vec<Mat<F>>,
    ) -> Result<Self, RepError> {
        let q = algebra.quiver();
        assert_eq!(dims.len(), q.num_vertices());
        assert_eq!(mats.len(), q.num_arrows());
        for (ai, a) in q.arrows().iter().enumerate() {
            if mats[ai].rows() != dims[a.target] || mats[ai].cols() != dims[a.source] {
                return Err(RepError::ShapeMismatch {
                    arrow: a.name.clone(),
                });
            }
        }
        Ok(Representation { algebra, dims, mats })
    }

    pub fn zero_rep(algebra: Arc<BoundAlgebra<F>>, dims: Vec<usize>) -> Self {
        let f = algebra.field.clone();
        let q = algebra.quiver();
        let mats = q
            .arrows()
            .iter()
            .map(|a| Mat::zero(&f, dims[a.target], dims[a.source]))
            .collect();
        Representation {
            algebra,
            dims,
            mats,
        }
    }

    pub fn algebra(&self) -> &Arc<BoundAlgebra<F>> {
        &self.algebra
    }

    pub fn field(&self) -> &F {
        &self.algebra.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn arrow_matrix(&self, ai: usize) -> &Mat<F> {
        &self.mats[ai]
    }

    pub fn matrices(&self) -> &[Mat<F>] {
        &self.mats
    }

    pub fn same_algebra(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra
    }

    /// Evaluate a nonempty path word (application order) as a linear map.
    pub fn eval_word(&self, word: &[usize]) -> Mat<F> {
        let f = self.field();
        assert!(!word.is_empty());
        let mut m = self.mats[word[0]].clone();
        for &a in &word[1..] {
            m = self.mats[a].matmul(f, &m);
        }
        m
    }

    /// Evaluate a (parallel) algebra element given by basis ids as a map
    /// M_source -> M_target.
    pub fn eval_elem(&self, elem: &[(F::Elem, usize)], source: usize, target: usize) -> Mat<F> {
        let f = self.field();
        let mut acc = Mat::zero(f, self.dims[target], self.dims[source]);
        for (c, id) in elem {
            let p = self.algebra.basis_path(*id);
            debug_assert_eq!((p.source, p.target), (source, target));
            let m = if p.is_trivial() {
                Mat::identity(f, self.dims[source])
            } else {
                self.eval_word(&p.arrows)
            };
            acc = acc.add(f, &m.scale(f, c));
        }
        acc
    }

    /// Does every relation of the ideal evaluate to the zero matrix?
    pub fn check_relations(&self) -> bool {
        let f = self.field();
        let q = self.algebra.quiver();
        for rel in self.algebra.relations() {
            if rel.is_empty() {
                continue;
            }
            let first = &rel[0].1;
            let src = q.arrow(first[0]).source;
            let tgt = q.arrow(*first.last().unwrap()).target;
            let mut acc = Mat::zero(f, self.dims[tgt], self.dims[src]);
            for (lit, w) in rel {
                let c = lit.to_elem(f).expect("relation coefficient valid");
                let m = self.eval_word(w);
                acc = acc.add(f, &m.scale(f, &c));
            }
            if !acc.is_zero(f) {
                return false;
            }
        }
        true
    }

    /// The standard modules P_i, I_i, S_i.
    pub fn standard(algebra: &Arc<BoundAlgebra<F>>, kind: StandardKind, i: usize) -> Self {
        let f = algebra.field.clone();
        let q = algebra.quiver().clone();
        let n = q.num_vertices();
        assert!(i < n, "invalid vertex id");
        match kind {
            StandardKind::Simple => {
                let mut dims = vec![0usize; n];
                dims[i] = 1;
                Representation::zero_rep(algebra.clone(), dims)
            }
            StandardKind::Projective => {
                let dims: Vec<usize> = (0..n).map(|j| algebra.pair_basis(i, j).len()).collect();
                let mats = q
                    .arrows()
                    .iter()
                    .enumerate()
                    .map(|(ai, a)| {
                        // column for basis path p: i -> source(a); rows over
                        // basis paths i -> target(a): coefficients of p-then-a
                        let src_ids = algebra.pair_basis(i, a.source);
                        let dst_ids = algebra.pair_basis(i, a.target);
                        let arrow_id = algebra.arrow_elem_id(ai);
                        Mat::from_fn(dst_ids.len(), src_ids.len(), |r, c| {
                            let prod = algebra.compose_basis(src_ids[c], arrow_id);
                            prod.iter()
                                .find(|(_, id)| *id == dst_ids[r])
                                .map(|(cf, _)| cf.clone())
                                .unwrap_or_else(|| f.zero())
                        })
                    })
                    .collect();
                Representation {
                    algebra: algebra.clone(),
                    dims,
                    mats,
                }
            }
            StandardKind::Injective => {
                let dims: Vec<usize> = (0..n).map(|j| algebra.pair_basis(j, i).len()).collect();
                let mats = q
                    .arrows()
                    .iter()
                    .enumerate()
                    .map(|(ai, a)| {
                        // right action of a on e_i A: paths(target->i) -> paths(source->i),
                        // y -> (a then y); the dual transposes it.
                        let src_ids = algebra.pair_basis(a.target, i);
                        let dst_ids = algebra.pair_basis(a.source, i);
                        let arrow_id = algebra.arrow_elem_id(ai);
                        let r_a = Mat::from_fn(dst_ids.len(), src_ids.len(), |r, c| {
                            let prod = algebra.compose_basis(arrow_id, src_ids[c]);
                            prod.iter()
                                .find(|(_, id)| *id == dst_ids[r])
                                .map(|(cf, _)| cf.clone())
                                .unwrap_or_else(|| f.zero())
                        });
                        r_a.transpose()
                    })
                    .collect();
                Representation {
                    algebra: algebra.clone(),
                    dims,
                    mats,
                }
            }
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        assert!(self.same_algebra(other));
        let f = self.field();
        let dims = self
            .dims
            .iter()
            .zip(&other.dims)
            .map(|(a, b)| a + b)
            .collect();
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| Mat::block_diag(f, &[a, b]))
            .collect();
        Representation {
            algebra: self.algebra.clone(),
            dims,
            mats,
        }
    }

    pub fn direct_sum_list(algebra: &Arc<BoundAlgebra<F>>, parts: &[Representation<F>]) -> Self {
        let n = algebra.quiver().num_vertices();
        let mut acc = Representation::zero_rep(algebra.clone(), vec![0; n]);
        for p in parts {
            acc = acc.direct_sum(p);
        }
        acc
    }

    /// The regular module: A as a left module over itself.
    pub fn regular(algebra: &Arc<BoundAlgebra<F>>) -> Self {
        let parts: Vec<_> = (0..algebra.num_vertices())
            .map(|i| Representation::standard(algebra, StandardKind::Projective, i))
            .collect();
        Representation::direct_sum_list(algebra, &parts)
    }

    /// DA as a left module: the sum of all indecomposable injectives.
    pub fn coregular(algebra: &Arc<BoundAlgebra<F>>) -> Self {
        let parts: Vec<_> = (0..algebra.num_vertices())
            .map(|i| Representation::standard(algebra, StandardKind::Injective, i))
            .collect();
        Representation::direct_sum_list(algebra, &parts)
    }

    /// The dual representation over the opposite algebra.
    pub fn dual_into(&self, op: &Arc<BoundAlgebra<F>>) -> Representation<F> {
        debug_assert_eq!(*op.quiver(), self.algebra.quiver().opposite());
        let mats = self.mats.iter().map(|m| m.transpose()).collect();
        Representation {
            algebra: op.clone(),
            dims: self.dims.clone(),
            mats,
        }
    }

    /// Conjugate by a tuple of invertible matrices: g.M = (g_j M_a g_i^-1).
    pub fn conjugate(&self, g: &[Mat<F>]) -> Representation<F> {
        let f = self.field();
        let q = self.algebra.quiver();
        let ginv: Vec<Mat<F>> = g
            .iter()
            .map(|m| m.inverse(f).expect("invertible"))
            .collect();
        let mats = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                g[a.target]
                    .matmul(f, &self.mats[ai])
                    .matmul(f, &ginv[a.source])
            })
            .collect();
        Representation {
            algebra: self.algebra.clone(),
            dims: self.dims.clone(),
            mats,
        }
    }

    /// Move a representation onto another handle of the same compiled
    /// algebra (used when round-tripping through the opposite algebra).
    pub fn rebase(self, algebra: Arc<BoundAlgebra<F>>) -> Self {
        assert!(
            *algebra == *self.algebra,
            "rebase requires structurally identical algebras"
        );
        Representation {
            algebra,
            dims: self.dims,
            mats: self.mats,
        }
    }

    /// Cheap conjugation-invariant fingerprint to pre-bucket isomorphism
    /// tests.
    pub fn fingerprint(&self) -> Vec<usize> {
        let f = self.field();
        let mut v = self.dims.clone();
        for m in &self.mats {
            v.push(m.rank(f));
        }
        v.push(hom_basis(self, self).dim());
        v
    }
}

// ---------------------------------------------------------------------------
// Hom spaces
// ---------------------------------------------------------------------------

/// A solved basis of intertwiner tuples between two representations.
#[derive(Clone, Debug)]
pub struct HomSpace<F: Field> {
    pub source_dims: Vec<usize>,
    pub target_dims: Vec<usize>,
    /// Each element: one matrix per vertex, shape d_N[v] x d_M[v].
    pub basis: Vec<Vec<Mat<F>>>,
}

impl<F: Field> HomSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn combine(&self, f: &F, coeffs: &[F::Elem]) -> Vec<Mat<F>> {
        assert_eq!(coeffs.len(), self.basis.len());
        let n = self.source_dims.len();
        let mut out: Vec<Mat<F>> = (0..n)
            .map(|v| Mat::zero(f, self.target_dims[v], self.source_dims[v]))
            .collect();
        for (c, elem) in coeffs.iter().zip(&self.basis) {
            if f.is_zero(c) {
                continue;
            }
            for v in 0..n {
                out[v] = out[v].add(f, &elem[v].scale(f, c));
            }
        }
        out
    }
}

/// Solve the intertwining equations f_j M_a = N_a f_i for all arrows.
pub fn hom_basis<F: Field>(m: &Representation<F>, n: &Representation<F>) -> HomSpace<F> {
    assert!(m.same_algebra(n), "hom over mismatched algebras");
    let f = m.field();
    let q = m.algebra().quiver();
    let nv = q.num_vertices();
    let offs: Vec<usize> = {
        let mut o = vec![0usize; nv + 1];
        for v in 0..nv {
            o[v + 1] = o[v] + n.dims[v] * m.dims[v];
        }
        o
    };
    let unknowns = offs[nv];
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        let (i, j) = (a.source, a.target);
        let ma = m.arrow_matrix(ai);
        let na = n.arrow_matrix(ai);
        for r in 0..n.dims[j] {
            for c in 0..m.dims[i] {
                let mut row = vec![f.zero(); unknowns];
                // + sum_s f_j[r,s] * M_a[s,c]
                for s in 0..m.dims[j] {
                    let idx = offs[j] + r * m.dims[j] + s;
                    row[idx] = f.add(&row[idx], &ma[(s, c)]);
                }
                // - sum_s N_a[r,s] * f_i[s,c]
                for s in 0..n.dims[i] {
                    let idx = offs[i] + s * m.dims[i] + c;
                    row[idx] = f.sub(&row[idx], &na[(r, s)]);
                }
                rows.push(row);
            }
        }
    }
    let mat = if rows.is_empty() {
        Mat::zero(f, 0, unknowns)
    } else {
        Mat::from_rows(f, unknowns, &rows)
    };
    let ker = mat.kernel_basis(f);
    let mut basis = Vec::with_capacity(ker.cols());
    for k in 0..ker.cols() {
        let col = ker.col(k);
        let mut elem = Vec::with_capacity(nv);
        for v in 0..nv {
            let mut b = Mat::zero(f, n.dims[v], m.dims[v]);
            for r in 0..n.dims[v] {
                for c in 0..m.dims[v] {
                    b[(r, c)] = col[offs[v] + r * m.dims[v] + c].clone();
                }
            }
            elem.push(b);
        }
        basis.push(elem);
    }
    HomSpace {
        source_dims: m.dims.clone(),
        target_dims: n.dims.clone(),
        basis,
    }
}

pub fn end_basis<F: Field>(m: &Representation<F>) -> HomSpace<F> {
    hom_basis(m, m)
}

/// dim End = 1: the paper's working notion of brick over a closed field.
pub fn is_brick<F: Field>(m: &Representation<F>) -> Result<bool, RepError> {
    if m.is_zero() {
        return Err(RepError::ZeroModule);
    }
    Ok(end_basis(m).dim() == 1)
}

pub fn map_is_invertible<F: Field>(f: &F, maps: &[Mat<F>]) -> bool {
    maps.iter()
        .all(|m| m.rows() == m.cols() && m.is_invertible(f))
}

/// Compose two vertexwise maps: second after first.
pub fn compose_maps<F: Field>(f: &F, first: &[Mat<F>], second: &[Mat<F>]) -> Vec<Mat<F>> {
    first
        .iter()
        .zip(second)
        .map(|(a, b)| b.matmul(f, a))
        .collect()
}

// ---------------------------------------------------------------------------
// subobjects, quotients, kernels, images
// ---------------------------------------------------------------------------

/// Per-vertex row-space bases (canonical RREF rows) describing an
/// arrow-closed subspace of an ambient representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubSpace<F: Field> {
    /// rows = basis vectors, cols = ambient dimension at the vertex.
    pub rows: Vec<Mat<F>>,
}

impl<F: Field> SubSpace<F> {
    pub fn dims(&self) -> Vec<usize> {
        self.rows.iter().map(|m| m.rows()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.rows.iter().map(|m| m.rows()).sum()
    }
}

/// Restrict to an arrow-closed subspace. Returns the subrepresentation and
/// the inclusion maps (columns = sub-basis vectors in ambient coordinates).
pub fn sub_representation<F: Field>(
    m: &Representation<F>,
    sub: &SubSpace<F>,
) -> (Representation<F>, Vec<Mat<F>>) {
    let f = m.field();
    let q = m.algebra().quiver();
    let incl: Vec<Mat<F>> = sub.rows.iter().map(|r| r.transpose()).collect();
    let dims: Vec<usize> = incl.iter().map(|m| m.cols()).collect();
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            // solve incl_target * X = M_a * incl_source columnwise
            let rhs = m.arrow_matrix(ai).matmul(f, &incl[a.source]);
            let mut cols = Vec::new();
            for c in 0..rhs.cols() {
                let x = incl[a.target]
                    .solve(f, &rhs.col(c))
                    .expect("subspace is arrow-closed");
                cols.push(x);
            }
            Mat::from_cols(f, dims[a.target], &cols)
        })
        .collect();
    let rep = Representation {
        algebra: m.algebra().clone(),
        dims,
        mats,
    };
    (rep, incl)
}

/// Quotient by an arrow-closed subspace. Returns the quotient and the
/// projection maps.
pub fn quotient_representation<F: Field>(
    m: &Representation<F>,
    sub: &SubSpace<F>,
) -> (Representation<F>, Vec<Mat<F>>) {
    let f = m.field();
    let q = m.algebra().quiver();
    let nv = q.num_vertices();
    // complete each subspace basis to a full basis; the projection is the
    // bottom block of the inverse base change
    let mut projs: Vec<Mat<F>> = Vec::with_capacity(nv);
    let mut sections: Vec<Mat<F>> = Vec::with_capacity(nv);
    for v in 0..nv {
        let d = m.dims[v];
        let k = sub.rows[v].rows();
        let mut cols: Vec<Vec<F::Elem>> = (0..k).map(|r| sub.rows[v].row(r)).collect();
        for e in 0..d {
            if cols.len() == d {
                break;
            }
            let mut unit = vec![f.zero(); d];
            unit[e] = f.one();
            let mut cand = cols.clone();
            cand.push(unit);
            if Mat::from_cols(f, d, &cand).rank(f) == cand.len() {
                cols = cand;
            }
        }
        let t = Mat::from_cols(f, d, &cols);
        let tinv = t.inverse(f).expect("basis completion invertible");
        let bottom: Vec<usize> = (k..d).collect();
        let all: Vec<usize> = (0..d).collect();
        projs.push(tinv.submatrix(&bottom, &all));
        // section: the complement columns of T
        let comp: Vec<usize> = (k..d).collect();
        sections.push(t.submatrix(&all, &comp));
    }
    let dims: Vec<usize> = (0..nv).map(|v| m.dims[v] - sub.rows[v].rows()).collect();
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            projs[a.target]
                .matmul(f, m.arrow_matrix(ai))
                .matmul(f, &sections[a.source])
        })
        .collect();
    let rep = Representation {
        algebra: m.algebra().clone(),
        dims,
        mats,
    };
    (rep, projs)
}

/// Arrow-closed closure of per-vertex row spans.
pub fn arrow_closure<F: Field>(m: &Representation<F>, seed: Vec<Mat<F>>) -> SubSpace<F> {
    let f = m.field();
    let q = m.algebra().quiver();
    let mut spans: Vec<Mat<F>> = seed.into_iter().map(|s| s.row_basis(f)).collect();
    loop {
        let mut changed = false;
        for (ai, a) in q.arrows().iter().enumerate() {
            if spans[a.source].rows() == 0 {
                continue;
            }
            let img = spans[a.source].matmul(f, &m.arrow_matrix(ai).transpose());
            let stacked = Mat::vstack(f, &[&spans[a.target], &img]);
            let nb = stacked.row_basis(f);
            if nb.rows() != spans[a.target].rows() {
                spans[a.target] = nb;
                changed = true;
            }
        }
        if !changed {
            return SubSpace { rows: spans };
        }
    }
}

/// Kernel of a vertexwise module map, as a subspace of the source.
pub fn kernel_subspace<F: Field>(m: &Representation<F>, maps: &[Mat<F>]) -> SubSpace<F> {
    let f = m.field();
    let rows = maps
        .iter()
        .map(|mat| mat.kernel_basis(f).transpose().row_basis(f))
        .collect();
    SubSpace { rows }
}

/// Image of a vertexwise module map, as a subspace of the target.
pub fn image_subspace<F: Field>(n: &Representation<F>, maps: &[Mat<F>]) -> SubSpace<F> {
    let f = n.field();
    let rows = maps.iter().map(|mat| mat.transpose().row_basis(f)).collect();
    SubSpace { rows }
}

// ---------------------------------------------------------------------------
// structural: top, radical, socle, annihilator
// ---------------------------------------------------------------------------

/// rad(A)M: spanned by all arrow images.
pub fn radical_subspace<F: Field>(m: &Representation<F>) -> SubSpace<F> {
    let f = m.field();
    let q = m.algebra().quiver();
    let nv = q.num_vertices();
    let mut spans: Vec<Mat<F>> = (0..nv).map(|v| Mat::zero(f, 0, m.dims[v])).collect();
    for (ai, a) in q.arrows().iter().enumerate() {
        let img = m.arrow_matrix(ai).transpose().row_basis(f);
        let stacked = Mat::vstack(f, &[&spans[a.target], &img]);
        spans[a.target] = stacked.row_basis(f);
    }
    SubSpace { rows: spans }
}

pub fn radical<F: Field>(m: &Representation<F>) -> Representation<F> {
    sub_representation(m, &radical_subspace(m)).0
}

pub fn top_with_projection<F: Field>(m: &Representation<F>) -> (Representation<F>, Vec<Mat<F>>) {
    quotient_representation(m, &radical_subspace(m))
}

pub fn top<F: Field>(m: &Representation<F>) -> Representation<F> {
    top_with_projection(m).0
}

/// soc M: the largest subspace killed by every arrow.
pub fn socle_subspace<F: Field>(m: &Representation<F>) -> SubSpace<F> {
    let f = m.field();
    let q = m.algebra().quiver();
    let nv = q.num_vertices();
    let rows = (0..nv)
        .map(|v| {
            let outgoing: Vec<&Mat<F>> = q
                .arrows()
                .iter()
                .enumerate()
                .filter(|(_, a)| a.source == v)
                .map(|(ai, _)| m.arrow_matrix(ai))
                .collect();
            if outgoing.is_empty() {
                Mat::identity(f, m.dims[v]).row_basis(f)
            } else {
                let stacked = Mat::vstack(f, &outgoing);
                stacked.kernel_basis(f).transpose().row_basis(f)
            }
        })
        .collect();
    SubSpace { rows }
}

pub fn socle<F: Field>(m: &Representation<F>) -> Representation<F> {
    sub_representation(m, &socle_subspace(m)).0
}

/// Basis of the annihilator ideal {a in A : aM = 0}, solved on the path
/// basis componentwise.
pub fn annihilator<F: Field>(m: &Representation<F>) -> Vec<AlgElem<F>> {
    let f = m.field();
    let alg = m.algebra();
    let mut out = Vec::new();
    let n = alg.num_vertices();
    for i in 0..n {
        for j in 0..n {
            let ids = alg.pair_basis(i, j);
            if ids.is_empty() {
                continue;
            }
            let entries = m.dims[i] * m.dims[j];
            if entries == 0 {
                // the whole component annihilates M
                for &id in ids {
                    out.push(vec![(f.one(), id)]);
                }
                continue;
            }
            let cols: Vec<Vec<F::Elem>> = ids
                .iter()
                .map(|&id| m.eval_elem(&[(f.one(), id)], i, j).data().to_vec())
                .collect();
            let a = Mat::from_cols(f, entries, &cols);
            let ker = a.kernel_basis(f);
            for k in 0..ker.cols() {
                let col = ker.col(k);
                let elem: AlgElem<F> = col
                    .into_iter()
                    .zip(ids)
                    .filter(|(c, _)| !f.is_zero(c))
                    .map(|(c, id)| (c, *id))
                    .collect();
                out.push(elem);
            }
        }
    }
    out
}

pub fn is_faithful<F: Field>(m: &Representation<F>) -> bool {
    annihilator(m).is_empty()
}

// ---------------------------------------------------------------------------
// projective machinery
// ---------------------------------------------------------------------------

/// The module map P_b -> X sending the trivial path to `x` (a vector in X_b).
pub fn projective_hom<F: Field>(x_rep: &Representation<F>, b: usize, x: &[F::Elem]) -> Vec<Mat<F>> {
    let f = x_rep.field();
    let alg = x_rep.algebra();
    let nv = alg.num_vertices();
    (0..nv)
        .map(|v| {
            let ids = alg.pair_basis(b, v);
            let cols: Vec<Vec<F::Elem>> = ids
                .iter()
                .map(|&id| {
                    let m = x_rep.eval_elem(&[(f.one(), id)], b, v);
                    m.apply(f, x)
                })
                .collect();
            Mat::from_cols(f, x_rep.dims()[v], &cols)
        })
        .collect()
}

/// A finite direct sum of indecomposable projectives with its summand
/// vertex list.
#[derive(Clone, Debug)]
pub struct ProjSum<F: Field> {
    pub vertices: Vec<usize>,
    pub rep: Representation<F>,
}

impl<F: Field> ProjSum<F> {
    pub fn build(algebra: &Arc<BoundAlgebra<F>>, vertices: Vec<usize>) -> Self {
        let parts: Vec<_> = vertices
            .iter()
            .map(|&i| Representation::standard(algebra, StandardKind::Projective, i))
            .collect();
        let rep = Representation::direct_sum_list(algebra, &parts);
        ProjSum { vertices, rep }
    }

    pub fn mults(&self, n: usize) -> Vec<usize> {
        let mut m = vec![0usize; n];
        for &v in &self.vertices {
            m[v] += 1;
        }
        m
    }

    /// Offset of each summand's block at vertex v.
    pub fn offsets_at(&self, algebra: &BoundAlgebra<F>, v: usize) -> Vec<usize> {
        let mut offs = Vec::with_capacity(self.vertices.len());
        let mut acc = 0;
        for &i in &self.vertices {
            offs.push(acc);
            acc += algebra.pair_basis(i, v).len();
        }
        offs
    }
}

/// A minimal projective presentation P1 -f-> P0 -cover-> M -> 0.
#[derive(Clone, Debug)]
pub struct Presentation<F: Field> {
    pub p0: ProjSum<F>,
    pub p1: ProjSum<F>,
    /// Vertexwise matrices of f : P1 -> P0.
    pub f: Vec<Mat<F>>,
    /// Vertexwise matrices of the cover P0 -> M.
    pub cover: Vec<Mat<F>>,
}

/// Projective cover P0 -> M built from top multiplicities.
pub fn projective_cover<F: Field>(m: &Representation<F>) -> (ProjSum<F>, Vec<Mat<F>>) {
    let f = m.field();
    let alg = m.algebra().clone();
    let nv = alg.num_vertices();
    let rad = radical_subspace(m);
    let mut vertices = Vec::new();
    let mut lifts: Vec<(usize, Vec<F::Elem>)> = Vec::new();
    for v in 0..nv {
        let d = m.dims()[v];
        let r = rad.rows[v].rows();
        if d == r {
            continue;
        }
        // extend the radical basis with unit vectors; each added unit is a
        // lift of a top basis vector
        let mut cur: Vec<Vec<F::Elem>> = (0..r).map(|i| rad.rows[v].row(i)).collect();
        for e in 0..d {
            if cur.len() == d {
                break;
            }
            let mut unit = vec![f.zero(); d];
            unit[e] = f.one();
            let mut cand = cur.clone();
            cand.push(unit.clone());
            if Mat::from_rows(f, d, &cand).rank(f) == cand.len() {
                cur = cand;
                vertices.push(v);
                lifts.push((v, unit));
            }
        }
    }
    let p0 = ProjSum::build(&alg, vertices);
    let cover: Vec<Mat<F>> = (0..nv)
        .map(|v| {
            let mut blocks: Vec<Mat<F>> = Vec::new();
            for (b, x) in &lifts {
                let h = projective_hom(m, *b, x);
                blocks.push(h[v].clone());
            }
            if blocks.is_empty() {
                Mat::zero(f, m.dims()[v], 0)
            } else {
                let refs: Vec<&Mat<F>> = blocks.iter().collect();
                Mat::hstack(f, &refs)
            }
        })
        .collect();
    (p0, cover)
}

/// Minimal projective presentation via two cover steps.
pub fn min_projective_presentation<F: Field>(m: &Representation<F>) -> Presentation<F> {
    let f = m.field();
    let (p0, cover) = projective_cover(m);
    let ker = kernel_subspace(&p0.rep, &cover);
    let (krep, incl) = sub_representation(&p0.rep, &ker);
    let (p1, kcover) = projective_cover(&krep);
    let fmaps: Vec<Mat<F>> = incl
        .iter()
        .zip(&kcover)
        .map(|(inc, kc)| inc.matmul(f, kc))
        .collect();
    Presentation {
        p0,
        p1,
        f: fmaps,
        cover,
    }
}

impl<F: Field> Presentation<F> {
    /// The g-vector [P0] - [P1] in the projective basis.
    pub fn g_vector(&self, n: usize) -> Vec<i64> {
        let m0 = self.p0.mults(n);
        let m1 = self.p1.mults(n);
        (0..n).map(|i| m0[i] as i64 - m1[i] as i64).collect()
    }

    /// Componentwise path form of f : P1 -> P0: entry (k, l) is the element
    /// of Hom(P_{b_l}, P_{a_k}) = span(paths a_k -> b_l).
    pub fn path_form(&self, alg: &BoundAlgebra<F>) -> Vec<Vec<AlgElem<F>>> {
        path_form_of_map(alg, &self.p0, &self.p1, &self.f)
    }
}

/// Path form of an arbitrary map between projective sums g : Q -> P.
pub fn path_form_of_map<F: Field>(
    alg: &BoundAlgebra<F>,
    p: &ProjSum<F>,
    q: &ProjSum<F>,
    maps: &[Mat<F>],
) -> Vec<Vec<AlgElem<F>>> {
    let f = &alg.field;
    let mut out = Vec::with_capacity(p.vertices.len());
    for (k, &a) in p.vertices.iter().enumerate() {
        let mut row = Vec::with_capacity(q.vertices.len());
        for (l, &b) in q.vertices.iter().enumerate() {
            let q_offs = q.offsets_at(alg, b);
            debug_assert_eq!(alg.pair_basis(b, b)[0], alg.unit(b));
            let unit_col = q_offs[l];
            let col = maps[b].col(unit_col);
            let p_offs = p.offsets_at(alg, b);
            let ids = alg.pair_basis(a, b);
            let mut elem: AlgElem<F> = Vec::new();
            for (t, &id) in ids.iter().enumerate() {
                let c = col[p_offs[k] + t].clone();
                if !f.is_zero(&c) {
                    elem.push((c, id));
                }
            }
            row.push(elem);
        }
        out.push(row);
    }
    out
}

/// Reassemble vertexwise matrices of a map Q -> P from its path form.
pub fn map_from_path_form<F: Field>(
    alg: &Arc<BoundAlgebra<F>>,
    p: &ProjSum<F>,
    q: &ProjSum<F>,
    path: &[Vec<AlgElem<F>>],
) -> Vec<Mat<F>> {
    let f = &alg.field;
    let nv = alg.num_vertices();
    (0..nv)
        .map(|v| {
            let mut blocks: Vec<Vec<Mat<F>>> = Vec::new();
            for &a in &p.vertices {
                let _ = a;
                blocks.push(Vec::new());
            }
            let mut total = Mat::zero(f, p.rep.dims()[v], q.rep.dims()[v]);
            let p_offs = p.offsets_at(alg, v);
            let q_offs = q.offsets_at(alg, v);
            for (k, &a) in p.vertices.iter().enumerate() {
                for (l, &b) in q.vertices.iter().enumerate() {
                    let elem = &path[k][l];
                    if elem.is_empty() {
                        continue;
                    }
                    // block: right multiplication by elem on paths:
                    // span(paths b -> v) -> span(paths a -> v)
                    let block = alg.right_mul_matrix(elem, a, b, v);
                    for r in 0..block.rows() {
                        for c in 0..block.cols() {
                            total[(p_offs[k] + r, q_offs[l] + c)] = block[(r, c)].clone();
                        }
                    }
                }
            }
            total
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Ext via minimal resolutions
// ---------------------------------------------------------------------------

/// Initial segment P_len -> ... -> P_1 -> P_0 of a minimal projective
/// resolution; maps[k] : P_{k+1} -> P_k.
pub struct ResolutionSegment<F: Field> {
    pub terms: Vec<ProjSum<F>>,
    pub maps: Vec<Vec<Mat<F>>>,
}

pub fn min_resolution<F: Field>(m: &Representation<F>, length: usize) -> ResolutionSegment<F> {
    let f = m.field();
    let (p0, cover) = projective_cover(m);
    let mut terms = vec![p0];
    let mut maps: Vec<Vec<Mat<F>>> = Vec::new();
    let mut cur_cover = cover;
    for _ in 0..length {
        let prev = terms.last().unwrap();
        let ker = kernel_subspace(&prev.rep, &cur_cover);
        let (krep, incl) = sub_representation(&prev.rep, &ker);
        let (pk, kcover) = projective_cover(&krep);
        let fmaps: Vec<Mat<F>> = incl
            .iter()
            .zip(&kcover)
            .map(|(inc, kc)| inc.matmul(f, kc))
            .collect();
        maps.push(fmaps);
        cur_cover = kcover;
        terms.push(pk);
    }
    ResolutionSegment { terms, maps }
}

/// The matrix of Hom(P, N) -> Hom(Q, N) induced by f : Q -> P, in the
/// canonical coordinates Hom(P_a, N) = N_a.
pub fn induced_hom_matrix<F: Field>(
    n_rep: &Representation<F>,
    p: &ProjSum<F>,
    q: &ProjSum<F>,
    f_path: &[Vec<AlgElem<F>>],
) -> Mat<F> {
    let f = n_rep.field();
    let rows: usize = q.vertices.iter().map(|&b| n_rep.dims()[b]).sum();
    let cols: usize = p.vertices.iter().map(|&a| n_rep.dims()[a]).sum();
    let mut out = Mat::zero(f, rows, cols);
    let mut col_off = 0;
    for (k, &a) in p.vertices.iter().enumerate() {
        let mut row_off = 0;
        for (l, &b) in q.vertices.iter().enumerate() {
            let elem = &f_path[k][l];
            if !elem.is_empty() {
                let block = n_rep.eval_elem(elem, a, b);
                for r in 0..block.rows() {
                    for c in 0..block.cols() {
                        out[(row_off + r, col_off + c)] = block[(r, c)].clone();
                    }
                }
            }
            row_off += n_rep.dims()[b];
        }
        col_off += n_rep.dims()[a];
    }
    out
}

/// dim Ext^k(M, N) for k in {1, 2}, as homology of Hom(P_., N).
pub fn ext_dim<F: Field>(m: &Representation<F>, n: &Representation<F>, degree: usize) -> usize {
    assert!(degree == 1 || degree == 2, "degrees 1 and 2 only");
    assert!(m.same_algebra(n));
    if m.is_zero() || n.is_zero() {
        return 0;
    }
    let alg = m.algebra();
    let res = min_resolution(m, degree + 1);
    let path_form_at = |k: usize| -> Vec<Vec<AlgElem<F>>> {
        path_form_of_map(alg, &res.terms[k], &res.terms[k + 1], &res.maps[k])
    };
    // d_k : Hom(P_{k-1}, N) -> Hom(P_k, N) is induced by maps[k-1]
    let d_k = induced_hom_matrix(n, &res.terms[degree - 1], &res.terms[degree], &path_form_at(degree - 1));
    let d_next = induced_hom_matrix(n, &res.terms[degree], &res.terms[degree + 1], &path_form_at(degree));
    let f = m.field();
    let ker_dim = d_next.cols() - d_next.rank(f);
    let im_dim = d_k.rank(f);
    ker_dim - im_dim
}

// ---------------------------------------------------------------------------
// submodule lattice (prime fields)
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct SubmoduleLattice<F: Field> {
    pub members: Vec<SubSpace<F>>,
}

impl<F: Field> SubmoduleLattice<F> {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn proper_nonzero(&self, ambient_dims: &[usize]) -> Vec<&SubSpace<F>> {
        let total: usize = ambient_dims.iter().sum();
        self.members
            .iter()
            .filter(|s| {
                let t = s.total_dim();
                t > 0 && t < total
            })
            .collect()
    }
}

/// Complete submodule lattice over a finite scalar domain: arrow closures
/// of single vectors, then closure under pairwise sums.
pub fn submodule_lattice<F: Field>(
    m: &Representation<F>,
    bound: usize,
) -> Result<SubmoduleLattice<F>, RepError> {
    let f = m.field();
    let Some(q) = f.size() else {
        return Err(RepError::DomainNotFinite);
    };
    if m.total_dim() > bound {
        return Err(RepError::BoundExceeded { bound });
    }
    let nv = m.dims().len();
    let mut seen: std::collections::HashSet<Vec<Mat<F>>> = std::collections::HashSet::new();
    let mut members: Vec<SubSpace<F>> = Vec::new();
    let zero = SubSpace {
        rows: (0..nv).map(|v| Mat::zero(f, 0, m.dims()[v])).collect(),
    };
    seen.insert(zero.rows.clone());
    members.push(zero);
    // cyclic closures of monic vectors
    for v in 0..nv {
        let d = m.dims()[v];
        if d == 0 {
            continue;
        }
        let count = q.pow(d as u32);
        for idx in 1..count {
            let mut vecd = Vec::with_capacity(d);
            let mut k = idx;
            for _ in 0..d {
                vecd.push(f.elem_from_index(k % q));
                k /= q;
            }
            let lead = vecd.iter().position(|c| !f.is_zero(c)).unwrap();
            if !f.is_one(&vecd[lead]) {
                continue;
            }
            let mut seed: Vec<Mat<F>> = (0..nv).map(|w| Mat::zero(f, 0, m.dims()[w])).collect();
            seed[v] = Mat::from_rows(f, d, &[vecd]);
            let sub = arrow_closure(m, seed);
            if seen.insert(sub.rows.clone()) {
                members.push(sub);
            }
        }
    }
    // close under pairwise sums
    let mut frontier: Vec<usize> = (0..members.len()).collect();
    while !frontier.is_empty() {
        let mut new_frontier = Vec::new();
        let snapshot = members.len();
        for &i in &frontier {
            for j in 0..snapshot {
                if i == j {
                    continue;
                }
                let rows: Vec<Mat<F>> = (0..nv)
                    .map(|v| {
                        Mat::vstack(f, &[&members[i].rows[v], &members[j].rows[v]]).row_basis(f)
                    })
                    .collect();
                let cand = SubSpace { rows };
                if seen.insert(cand.rows.clone()) {
                    members.push(cand);
                    new_frontier.push(members.len() - 1);
                }
            }
        }
        frontier = new_frontier;
    }
    members.sort_by_key(|s| (s.total_dim(), s.dims()));
    Ok(SubmoduleLattice { members })
}

/// Vertexwise row-space inclusion.
pub fn subspace_contains<F: Field>(f: &F, outer: &SubSpace<F>, inner: &SubSpace<F>) -> bool {
    outer
        .rows
        .iter()
        .zip(&inner.rows)
        .all(|(o, i)| (0..i.rows()).all(|r| crate::matrix::row_space_contains(f, o, &i.row(r))))
}

/// Vertexwise intersection (arrow-closed when both inputs are).
pub fn subspace_intersection<F: Field>(f: &F, a: &SubSpace<F>, b: &SubSpace<F>) -> SubSpace<F> {
    let rows = a
        .rows
        .iter()
        .zip(&b.rows)
        .map(|(x, y)| {
            if x.rows() == 0 || y.rows() == 0 {
                return Mat::zero(f, 0, x.cols());
            }
            let xt = x.transpose();
            let yt = y.transpose().neg(f);
            let joint = Mat::hstack(f, &[&xt, &yt]);
            let ker = joint.kernel_basis(f);
            let mut vecs = Vec::new();
            for k in 0..ker.cols() {
                let col = ker.col(k);
                let mut vrow = vec![f.zero(); x.cols()];
                for r in 0..x.rows() {
                    for c in 0..x.cols() {
                        let t = f.mul(&col[r], &x[(r, c)]);
                        vrow[c] = f.add(&vrow[c], &t);
                    }
                }
                vecs.push(vrow);
            }
            if vecs.is_empty() {
                Mat::zero(f, 0, x.cols())
            } else {
                Mat::from_rows(f, x.cols(), &vecs).row_basis(f)
            }
        })
        .collect();
    SubSpace { rows }
}
