//! Direct-sum decomposition (Krull-Remak-Schmidt) by idempotent splitting
//! along coprime factors of endomorphism minimal polynomials, and
//! isomorphism testing that never returns a wrong boolean.
//!
//! Over the rationals a split can be unrealizable (irrational eigenvalues);
//! that case is reported as an error so the caller can retry over a prime
//! field. Over a finite field the element sweep is exhaustive within a
//! budget, which makes both operations decisive at desk scale.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::Mat;
use crate::poly::{
    factor_fp, min_poly, rational_roots, roots_fp, squarefree_decomposition, Poly,
};
use crate::rep::{
    end_basis, hom_basis, map_is_invertible, sub_representation, HomSpace, RepError,
    Representation, SubSpace,
};
use crate::scalar::{Field, PrimeField, Rationals};

/// Exhaustive end-algebra sweep budget: enumerate all of End(M) when
/// |F|^dim End stays below this.
const EXHAUSTIVE_BUDGET: u64 = 1 << 18;
const RANDOM_TRIES: usize = 400;
const COMBO_CAP: usize = 16;

/// Outcome of analysing one endomorphism's minimal polynomial.
pub enum SplitAnalysis<F: Field> {
    /// mu = g * h with gcd(g, h) = 1, both nonconstant.
    Split(Poly<F>, Poly<F>),
    /// mu is certified to be a power of a single irreducible.
    Primary,
    /// Cannot decide over this domain (irrational eigenvalues or
    /// unfactored part).
    Unknown,
}

/// Scalar domains with enough polynomial machinery to drive idempotent
/// splitting: both exact domains of the toolkit implement it.
pub trait SplitField: Field {
    fn analyse(&self, mu: &Poly<Self>) -> SplitAnalysis<Self>
    where
        Self: Sized;

    /// Roots of mu available in this domain (exhaustive over prime fields,
    /// best-effort over the rationals).
    fn poly_roots(&self, mu: &Poly<Self>) -> Vec<Self::Elem>
    where
        Self: Sized;
}

impl SplitField for Rationals {
    fn analyse(&self, mu: &Poly<Self>) -> SplitAnalysis<Self> {
        analyse_common(self, mu, None, |poly| {
            let (roots, complete) = rational_roots(self, poly);
            (roots, complete)
        })
    }

    fn poly_roots(&self, mu: &Poly<Self>) -> Vec<Self::Elem> {
        rational_roots(self, mu).0
    }
}

impl SplitField for PrimeField {
    fn poly_roots(&self, mu: &Poly<Self>) -> Vec<Self::Elem> {
        roots_fp(self, mu)
    }

    fn analyse(&self, mu: &Poly<Self>) -> SplitAnalysis<Self> {
        let char_p = Some(self.modulus());
        match analyse_common(self, mu, char_p, |poly| (roots_fp(self, poly), true)) {
            SplitAnalysis::Unknown => {
                // brute-force factorization settles it within budget
                match factor_fp(self, mu, 100_000) {
                    Some(factors) if factors.len() >= 2 => {
                        let (g0, m0) = &factors[0];
                        let mut g = Poly::constant(self, self.one());
                        for _ in 0..*m0 {
                            g = g.mul(self, g0);
                        }
                        let h = mu.monic(self).divrem(self, &g).0;
                        SplitAnalysis::Split(g, h)
                    }
                    Some(_) => SplitAnalysis::Primary,
                    None => SplitAnalysis::Unknown,
                }
            }
            other => other,
        }
    }
}

/// Shared analysis: distinct roots, then squarefree parts.
fn analyse_common<F: Field>(
    f: &F,
    mu: &Poly<F>,
    char_p: Option<u64>,
    root_finder: impl Fn(&Poly<F>) -> (Vec<F::Elem>, bool),
) -> SplitAnalysis<F> {
    let mu = mu.monic(f);
    let deg = mu.deg();
    if deg <= 1 {
        return SplitAnalysis::Primary;
    }
    let (roots, roots_complete) = root_finder(&mu);
    for r in &roots {
        let m = mu.root_multiplicity(f, r);
        if m < deg {
            let mut g = Poly::constant(f, f.one());
            let lin = Poly::linear(f, r);
            for _ in 0..m {
                g = g.mul(f, &lin);
            }
            let h = mu.divrem(f, &g).0;
            return SplitAnalysis::Split(g, h);
        }
        return SplitAnalysis::Primary; // mu = (x - r)^deg
    }
    // no roots: try squarefree structure
    let parts = squarefree_decomposition(f, &mu, char_p);
    if parts.len() >= 2 {
        let (g0, m0) = &parts[0];
        let mut g = Poly::constant(f, f.one());
        for _ in 0..*m0 {
            g = g.mul(f, g0);
        }
        let h = mu.divrem(f, &g).0;
        return SplitAnalysis::Split(g, h);
    }
    // single squarefree part u with mu = u^m and u rootless
    let u = &parts[0].0;
    if u.deg() == 1 {
        return SplitAnalysis::Primary;
    }
    if roots_complete && u.deg() <= 3 {
        // rootless degree 2 or 3 over this domain: irreducible
        return SplitAnalysis::Primary;
    }
    SplitAnalysis::Unknown
}

/// Endomorphism candidates: basis elements, then seeded small combinations,
/// then the full algebra when the domain is finite and small enough.
fn candidate_coeffs<F: Field>(f: &F, h: usize, seed: u64) -> Vec<Vec<F::Elem>> {
    let mut out: Vec<Vec<F::Elem>> = Vec::new();
    for j in 0..h {
        let mut v = vec![f.zero(); h];
        v[j] = f.one();
        out.push(v);
    }
    for i in 0..h {
        for j in i + 1..h {
            for (ci, cj) in [(1i64, 1i64), (1, -1)] {
                let mut v = vec![f.zero(); h];
                v[i] = f.from_i64(ci);
                v[j] = f.from_i64(cj);
                out.push(v);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIES {
        out.push((0..h).map(|_| f.random_elem(&mut rng)).collect());
    }
    if let Some(q) = f.size() {
        if let Some(total) = q.checked_pow(h as u32) {
            if total <= EXHAUSTIVE_BUDGET {
                for idx in 1..total {
                    let mut k = idx;
                    let mut v = Vec::with_capacity(h);
                    for _ in 0..h {
                        v.push(f.elem_from_index(k % q));
                        k /= q;
                    }
                    out.push(v);
                }
            }
        }
    }
    out
}

fn was_exhaustive<F: Field>(f: &F, h: usize) -> bool {
    f.size()
        .and_then(|q| q.checked_pow(h as u32))
        .map_or(false, |total| total <= EXHAUSTIVE_BUDGET)
}

/// Block-diagonal total matrix of a vertexwise endomorphism.
fn total_matrix<F: Field>(f: &F, maps: &[Mat<F>]) -> Mat<F> {
    let refs: Vec<&Mat<F>> = maps.iter().collect();
    Mat::block_diag(f, &refs)
}

/// Split M along ker g(f) + ker h(f) for an endomorphism f with coprime
/// minimal polynomial factors.
fn fitting_split<F: Field>(
    m: &Representation<F>,
    endo: &[Mat<F>],
    g: &Poly<F>,
    h: &Poly<F>,
) -> Option<(Representation<F>, Representation<F>)> {
    let f = m.field();
    let mut u_rows = Vec::new();
    let mut w_rows = Vec::new();
    for mat in endo {
        let gm = g.eval_mat(f, mat);
        let hm = h.eval_mat(f, mat);
        u_rows.push(gm.kernel_basis(f).transpose().row_basis(f));
        w_rows.push(hm.kernel_basis(f).transpose().row_basis(f));
    }
    let u = SubSpace { rows: u_rows };
    let w = SubSpace { rows: w_rows };
    if u.total_dim() == 0 || w.total_dim() == 0 {
        return None;
    }
    debug_assert_eq!(u.total_dim() + w.total_dim(), m.total_dim());
    let (mu, _) = sub_representation(m, &u);
    let (mw, _) = sub_representation(m, &w);
    Some((mu, mw))
}

/// Decompose into indecomposable direct summands.
pub fn decompose<F: SplitField>(m: &Representation<F>) -> Result<Vec<Representation<F>>, RepError> {
    if m.is_zero() {
        return Err(RepError::ZeroModule);
    }
    let f = m.field().clone();
    let end = end_basis(m);
    if end.dim() == 1 {
        return Ok(vec![m.clone()]);
    }
    let h = end.dim();
    let seed = 0x5eed ^ (m.total_dim() as u64) << 8 ^ h as u64;
    let mut saw_unknown = false;
    for coeffs in candidate_coeffs(&f, h, seed) {
        let endo = end.combine(&f, &coeffs);
        let total = total_matrix(&f, &endo);
        if total.rows() == 0 {
            continue;
        }
        let mu = min_poly(&f, &total);
        match f.analyse(&mu) {
            SplitAnalysis::Split(g, hh) => {
                if let Some((a, b)) = fitting_split(m, &endo, &g, &hh) {
                    let mut out = decompose(&a)?;
                    out.extend(decompose(&b)?);
                    return Ok(out);
                }
            }
            SplitAnalysis::Primary => {}
            SplitAnalysis::Unknown => saw_unknown = true,
        }
    }
    if saw_unknown && !was_exhaustive(&f, h) {
        return Err(RepError::SplitFailure);
    }
    // no splitting element found: local endomorphism behavior
    Ok(vec![m.clone()])
}

/// Group summands into isomorphism classes with multiplicities.
pub fn decompose_multiset<F: SplitField>(
    m: &Representation<F>,
) -> Result<Vec<(Representation<F>, usize)>, RepError> {
    let parts = decompose(m)?;
    let mut out: Vec<(Representation<F>, usize)> = Vec::new();
    for p in parts {
        let mut matched = false;
        for (rep, count) in out.iter_mut() {
            if indecomposable_isomorphic(rep, &p)? {
                *count += 1;
                matched = true;
                break;
            }
        }
        if !matched {
            out.push((p, 1));
        }
    }
    Ok(out)
}

/// Isomorphism test for modules already known indecomposable: decisive,
/// because the non-isomorphisms form a proper subspace of Hom.
pub fn indecomposable_isomorphic<F: Field>(
    m: &Representation<F>,
    n: &Representation<F>,
) -> Result<bool, RepError> {
    if m.dims() != n.dims() {
        return Ok(false);
    }
    if m.is_zero() {
        return Ok(true);
    }
    let f = m.field();
    let hom = hom_basis(m, n);
    let h = hom.dim();
    if h == 0 || hom_basis(n, m).dim() == 0 {
        return Ok(false);
    }
    if h > COMBO_CAP {
        return Err(RepError::Inconclusive);
    }
    // 0/1 coefficient vectors span Hom, so they cannot all avoid the
    // invertibles when an isomorphism exists
    for mask in 1u32..(1 << h) {
        let coeffs: Vec<F::Elem> = (0..h)
            .map(|j| {
                if mask >> j & 1 == 1 {
                    f.one()
                } else {
                    f.zero()
                }
            })
            .collect();
        let cand = hom.combine(f, &coeffs);
        if map_is_invertible(f, &cand) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Isomorphism test specialized to two known bricks with equal dimension
/// vectors: a single Hom solve decides, because Hom between isomorphic
/// bricks is one-dimensional and spanned by an isomorphism.
pub fn bricks_isomorphic<F: Field>(
    m: &Representation<F>,
    n: &Representation<F>,
) -> bool {
    if m.dims() != n.dims() {
        return false;
    }
    let f = m.field();
    let hom = hom_basis(m, n);
    if hom.dim() != 1 {
        return false;
    }
    map_is_invertible(f, &hom.combine(f, &[f.one()]))
}

fn search_invertible<F: Field>(f: &F, hom: &HomSpace<F>, seed: u64) -> Option<Vec<Mat<F>>> {
    let h = hom.dim();
    if h == 0 {
        return None;
    }
    if h <= COMBO_CAP {
        for mask in 1u32..(1 << h) {
            let coeffs: Vec<F::Elem> = (0..h)
                .map(|j| if mask >> j & 1 == 1 { f.one() } else { f.zero() })
                .collect();
            let cand = hom.combine(f, &coeffs);
            if map_is_invertible(f, &cand) {
                return Some(cand);
            }
        }
    }
    if let Some(q) = f.size() {
        if let Some(total) = q.checked_pow(h as u32) {
            if total <= EXHAUSTIVE_BUDGET {
                for idx in 1..total {
                    let mut k = idx;
                    let coeffs: Vec<F::Elem> = (0..h)
                        .map(|_| {
                            let e = f.elem_from_index(k % q);
                            k /= q;
                            e
                        })
                        .collect();
                    let cand = hom.combine(f, &coeffs);
                    if map_is_invertible(f, &cand) {
                        return Some(cand);
                    }
                }
                return None;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIES {
        let coeffs: Vec<F::Elem> = (0..h).map(|_| f.random_elem(&mut rng)).collect();
        let cand = hom.combine(f, &coeffs);
        if map_is_invertible(f, &cand) {
            return Some(cand);
        }
    }
    None
}

/// Isomorphism test for arbitrary finite-dimensional representations.
/// Never returns a wrong boolean; inconclusive cases over the rationals
/// surface as an error.
pub fn is_isomorphic<F: SplitField>(
    m: &Representation<F>,
    n: &Representation<F>,
) -> Result<bool, RepError> {
    assert!(m.same_algebra(n), "iso test over mismatched algebras");
    if m.dims() != n.dims() {
        return Ok(false);
    }
    if m.is_zero() {
        return Ok(true);
    }
    let f = m.field();
    let h_mn = hom_basis(m, n).dim();
    let h_nm = hom_basis(n, m).dim();
    let e_m = end_basis(m).dim();
    let e_n = end_basis(n).dim();
    if h_mn != h_nm || e_m != e_n || h_mn == 0 {
        return Ok(false);
    }
    // brick fast path: a single hom basis element decides
    if h_mn == 1 && e_m == 1 {
        let hom = hom_basis(m, n);
        return Ok(map_is_invertible(f, &hom.combine(f, &[f.one()])));
    }
    // exhaustive search over finite domains decides directly
    let hom = hom_basis(m, n);
    if was_exhaustive(f, hom.dim()) {
        return Ok(search_invertible(f, &hom, 0x15eed).is_some());
    }
    if search_invertible(f, &hom, 0x15eed).is_some() {
        return Ok(true);
    }
    // decompose both sides and match indecomposable summands
    let parts_m = decompose(m)?;
    let parts_n = decompose(n)?;
    if parts_m.len() != parts_n.len() {
        return Ok(false);
    }
    let mut used = vec![false; parts_n.len()];
    for a in &parts_m {
        let mut found = false;
        for (j, b) in parts_n.iter().enumerate() {
            if used[j] {
                continue;
            }
            if indecomposable_isomorphic(a, b)? {
                used[j] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}
