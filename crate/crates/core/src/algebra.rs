//! Bound quiver algebras A = kQ/I compiled to an explicit path basis.
//!
//! Relations are oriented into rewrite rules by a fixed monomial order
//! (length, then lexicographic on arrow indices in application order).
//! Overlaps are completed up to a length bound; admissibility is certified
//! by checking that every path of that length rewrites to zero, and
//! confluence is certified a posteriori by an associativity sweep over all
//! basis triples. Failures are reported, never silent.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::matrix::Mat;
use crate::quiver::{Path, Quiver, QuiverError};
use crate::scalar::{Field, RatLit};

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("relation {index} mixes paths with different endpoints")]
    RelationNotParallel { index: usize },
    #[error("relation {index} contains a path of length < 2 (ideal not admissible)")]
    RelationTooShort { index: usize },
    #[error("relation {index} contains a non-composable word")]
    WordNotComposable { index: usize },
    #[error("relation {index} has a coefficient that is invalid in the scalar domain")]
    BadCoefficient { index: usize },
    #[error("not admissible within bound {bound}: path {witness} has nonzero normal form")]
    NotAdmissible { bound: usize, witness: String },
    #[error("rewriting system is not confluent at bound: offending product {path}")]
    NonConfluent { path: String },
    #[error("completion produced more than {0} rules; raise the bound or check the input")]
    CompletionOverflow(usize),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
}

/// A bound quiver before a scalar domain is chosen: relation coefficients
/// stay as rational literals so the same input can compile over Q and over
/// any F_p.
#[derive(Clone, Debug, Eq, Serialize)]
pub struct AlgebraDescription {
    pub quiver: Quiver,
    /// Each relation is a list of (coefficient, word); words are arrow
    /// index sequences in application order, pairwise parallel, length >= 2.
    pub relations: Vec<Vec<(RatLit, Vec<usize>)>>,
    pub name: String,
}

impl PartialEq for AlgebraDescription {
    fn eq(&self, other: &Self) -> bool {
        // the name is display-only
        self.quiver == other.quiver && self.relations == other.relations
    }
}

impl AlgebraDescription {
    pub fn new(
        quiver: Quiver,
        relations: Vec<Vec<(RatLit, Vec<usize>)>>,
        name: impl Into<String>,
    ) -> Result<Self, AlgebraError> {
        for (index, rel) in relations.iter().enumerate() {
            let mut endpoints = None;
            for (_, word) in rel {
                if word.len() < 2 {
                    return Err(AlgebraError::RelationTooShort { index });
                }
                let path = Path::of_arrows(&quiver, word.clone())
                    .ok_or(AlgebraError::WordNotComposable { index })?;
                let ep = (path.source, path.target);
                if *endpoints.get_or_insert(ep) != ep {
                    return Err(AlgebraError::RelationNotParallel { index });
                }
            }
        }
        Ok(AlgebraDescription {
            quiver,
            relations,
            name: name.into(),
        })
    }

    /// Length bound used when none is given: enough for every relation to
    /// interact, plus room for an acyclic quiver's longest path.
    pub fn default_bound(&self) -> usize {
        let rel_total: usize = self
            .relations
            .iter()
            .map(|r| r.iter().map(|(_, w)| w.len()).max().unwrap_or(0))
            .sum();
        2 + rel_total + self.quiver.num_vertices().saturating_sub(1)
    }

    /// The opposite algebra: arrows reversed, relation words reversed.
    pub fn opposite(&self) -> AlgebraDescription {
        let relations = self
            .relations
            .iter()
            .map(|rel| {
                rel.iter()
                    .map(|(c, w)| {
                        let mut rw = w.clone();
                        rw.reverse();
                        (*c, rw)
                    })
                    .collect()
            })
            .collect();
        let name = match self.name.strip_suffix("^op") {
            Some(base) => base.to_string(),
            None => format!("{}^op", self.name),
        };
        AlgebraDescription {
            quiver: self.quiver.opposite(),
            relations,
            name,
        }
    }

    /// Stable content hash for reproducibility headers in reports.
    pub fn content_hash(&self) -> String {
        let json = serde_json::to_string(self).expect("description serializes");
        let mut h = Sha256::new();
        h.update(json.as_bytes());
        let d = h.finalize();
        d.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn compile<F: Field>(
        &self,
        field: F,
        max_path_length: Option<usize>,
    ) -> Result<BoundAlgebra<F>, AlgebraError> {
        compile(self.clone(), field, max_path_length.unwrap_or_else(|| self.default_bound()))
    }
}

/// A sparse element of the algebra in the compiled path basis:
/// terms (coefficient, basis id), sorted by id, no zero coefficients.
pub type AlgElem<F> = Vec<(<F as Field>::Elem, usize)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardKind {
    Projective,
    Injective,
    Simple,
}

/// A compiled bound quiver algebra with explicit basis and product table.
#[derive(Debug)]
pub struct BoundAlgebra<F: Field> {
    pub field: F,
    description: AlgebraDescription,
    bound: usize,
    nilpotency_bound: usize,
    basis: Vec<Path>,
    basis_index: HashMap<Path, usize>,
    /// paths_by_pair[i][j] = basis ids of normal-form paths i -> j.
    paths_by_pair: Vec<Vec<Vec<usize>>>,
    /// Product table on composable basis pairs: (first, then) -> combination.
    table: HashMap<(usize, usize), AlgElem<F>>,
    opposite: OnceLock<Arc<BoundAlgebra<F>>>,
}

impl<F: Field> PartialEq for BoundAlgebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.description == other.description
    }
}

impl<F: Field> BoundAlgebra<F> {
    pub fn quiver(&self) -> &Quiver {
        &self.description.quiver
    }

    pub fn description(&self) -> &AlgebraDescription {
        &self.description
    }

    pub fn num_vertices(&self) -> usize {
        self.description.quiver.num_vertices()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_path(&self, id: usize) -> &Path {
        &self.basis[id]
    }

    /// Bound used during compilation.
    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Smallest N with every path of length >= N reducing to zero.
    pub fn nilpotency_bound(&self) -> usize {
        self.nilpotency_bound
    }

    /// Basis ids of normal-form paths from i to j (spanning e_j A e_i).
    pub fn pair_basis(&self, i: usize, j: usize) -> &[usize] {
        &self.paths_by_pair[i][j]
    }

    /// Basis id of the trivial path at v.
    pub fn unit(&self, v: usize) -> usize {
        v
    }

    /// Basis id of a single arrow (arrows are always normal forms).
    pub fn arrow_elem_id(&self, arrow_index: usize) -> usize {
        let q = &self.description.quiver;
        let p = Path::of_arrows(q, vec![arrow_index]).expect("arrow path");
        *self
            .basis_index
            .get(&p)
            .expect("arrows survive admissible quotients")
    }

    pub fn is_hereditary(&self) -> bool {
        self.description.relations.is_empty()
    }

    /// Product of two basis elements, `first` applied first.
    pub fn compose_basis(&self, first: usize, then: usize) -> &[(F::Elem, usize)] {
        static EMPTY: &[(); 0] = &[];
        let _ = EMPTY;
        self.table
            .get(&(first, then))
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    /// Bilinear product of sparse elements, `a` applied first.
    pub fn mul(&self, a: &AlgElem<F>, b: &AlgElem<F>) -> AlgElem<F> {
        let f = &self.field;
        let mut acc: HashMap<usize, F::Elem> = HashMap::new();
        for (ca, ia) in a {
            for (cb, ib) in b {
                for (ct, it) in self.compose_basis(*ia, *ib) {
                    let c = f.mul(&f.mul(ca, cb), ct);
                    let e = acc.entry(*it).or_insert_with(|| f.zero());
                    *e = f.add(e, &c);
                }
            }
        }
        let mut out: AlgElem<F> = acc
            .into_iter()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(i, c)| (c, i))
            .collect();
        out.sort_by_key(|(_, i)| *i);
        out
    }

    /// Coordinates of a parallel sparse element in the (i -> j) pair basis.
    pub fn coords_in_pair(&self, elem: &[(F::Elem, usize)], i: usize, j: usize) -> Vec<F::Elem> {
        let f = &self.field;
        let ids = self.pair_basis(i, j);
        let mut v = vec![f.zero(); ids.len()];
        for (c, id) in elem {
            let pos = ids
                .iter()
                .position(|b| b == id)
                .expect("element lies in the stated pair component");
            v[pos] = f.add(&v[pos], c);
        }
        v
    }

    /// Matrix of "apply p, then multiply by x" on pair bases:
    /// span(paths v->a) -> span(paths v->b) for x spanning paths a->b.
    pub fn left_mul_matrix(&self, x: &AlgElem<F>, v: usize, a: usize, b: usize) -> Mat<F> {
        let f = &self.field;
        let src = self.pair_basis(v, a);
        let dst = self.pair_basis(v, b);
        let mut m = Mat::zero(f, dst.len(), src.len());
        for (col, &p) in src.iter().enumerate() {
            for (cx, ix) in x {
                for (ct, it) in self.compose_basis(p, *ix) {
                    let row = dst.iter().position(|d| d == it).expect("product stays parallel");
                    let c = f.mul(cx, ct);
                    m[(row, col)] = f.add(&m[(row, col)], &c);
                }
            }
        }
        m
    }

    /// Matrix of "multiply by x on the right": span(paths b->w) -> span(paths a->w),
    /// p -> p after x, for x spanning paths a->b.
    pub fn right_mul_matrix(&self, x: &AlgElem<F>, a: usize, b: usize, w: usize) -> Mat<F> {
        let f = &self.field;
        let src = self.pair_basis(b, w);
        let dst = self.pair_basis(a, w);
        let mut m = Mat::zero(f, dst.len(), src.len());
        for (col, &p) in src.iter().enumerate() {
            for (cx, ix) in x {
                for (ct, it) in self.compose_basis(*ix, p) {
                    let row = dst.iter().position(|d| d == it).expect("product stays parallel");
                    let c = f.mul(cx, ct);
                    m[(row, col)] = f.add(&m[(row, col)], &c);
                }
            }
        }
        m
    }

    /// The opposite algebra, compiled on demand and cached.
    pub fn opposite_arc(&self) -> Arc<BoundAlgebra<F>> {
        self.opposite
            .get_or_init(|| {
                Arc::new(
                    self.description
                        .opposite()
                        .compile(self.field.clone(), Some(self.bound))
                        .expect("opposite of an admissible algebra compiles"),
                )
            })
            .clone()
    }

    /// Relations evaluated in the compiled basis; used by representation
    /// relation checks.
    pub fn relations(&self) -> &[Vec<(RatLit, Vec<usize>)>] {
        &self.description.relations
    }
}

// ---------------------------------------------------------------------------
// compilation: bounded rewriting and completion
// ---------------------------------------------------------------------------

type Word = Vec<usize>;
type Combo<F> = Vec<(<F as Field>::Elem, Word)>;

struct Rule<F: Field> {
    lhs: Word,
    rhs: Combo<F>,
}

/// deglex on words: length first, then lexicographic on arrow indices.
fn word_cmp(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn normalize_combo<F: Field>(f: &F, combo: Combo<F>) -> Combo<F> {
    let mut map: HashMap<Word, F::Elem> = HashMap::new();
    for (c, w) in combo {
        let e = map.entry(w).or_insert_with(|| f.zero());
        *e = f.add(e, &c);
    }
    let mut out: Combo<F> = map
        .into_iter()
        .filter(|(_, c)| !f.is_zero(c))
        .map(|(w, c)| (c, w))
        .collect();
    out.sort_by(|(_, a), (_, b)| word_cmp(a, b).reverse());
    out
}

fn find_redex<F: Field>(rules: &[Rule<F>], w: &[usize]) -> Option<(usize, usize)> {
    for start in 0..w.len() {
        for (ri, r) in rules.iter().enumerate() {
            let l = r.lhs.len();
            if start + l <= w.len() && w[start..start + l] == r.lhs[..] {
                return Some((start, ri));
            }
        }
    }
    None
}

fn reduce_combo<F: Field>(f: &F, rules: &[Rule<F>], combo: Combo<F>) -> Combo<F> {
    let mut cur = normalize_combo(f, combo);
    loop {
        let mut hit = None;
        for (ti, (_, w)) in cur.iter().enumerate() {
            if let Some((pos, ri)) = find_redex(rules, w) {
                hit = Some((ti, pos, ri));
                break;
            }
        }
        let Some((ti, pos, ri)) = hit else {
            return cur;
        };
        let (c, w) = cur.remove(ti);
        let rule = &rules[ri];
        let mut extra: Combo<F> = Vec::new();
        for (rc, rw) in &rule.rhs {
            let mut nw = Vec::with_capacity(w.len() - rule.lhs.len() + rw.len());
            nw.extend_from_slice(&w[..pos]);
            nw.extend_from_slice(rw);
            nw.extend_from_slice(&w[pos + rule.lhs.len()..]);
            extra.push((f.mul(&c, rc), nw));
        }
        cur.extend(extra);
        cur = normalize_combo(f, cur);
    }
}

fn combo_to_rule<F: Field>(f: &F, combo: Combo<F>) -> Option<Rule<F>> {
    let combo = normalize_combo(f, combo);
    if combo.is_empty() {
        return None;
    }
    // leading term = deglex-max word; combo is sorted descending
    let (lc, lhs) = combo[0].clone();
    let lci = f.inv(&lc).expect("nonzero lead");
    let rhs = combo[1..]
        .iter()
        .map(|(c, w)| (f.neg(&f.mul(c, &lci)), w.clone()))
        .collect();
    Some(Rule { lhs, rhs })
}

fn compile<F: Field>(
    description: AlgebraDescription,
    field: F,
    bound: usize,
) -> Result<BoundAlgebra<F>, AlgebraError> {
    let f = &field;
    let quiver = description.quiver.clone();
    const MAX_RULES: usize = 10_000;

    // 1. relations -> initial combinations over the chosen field
    let mut pending: Vec<Combo<F>> = Vec::new();
    for (index, rel) in description.relations.iter().enumerate() {
        let mut combo: Combo<F> = Vec::new();
        for (lit, w) in rel {
            let c = lit
                .to_elem(f)
                .ok_or(AlgebraError::BadCoefficient { index })?;
            combo.push((c, w.clone()));
        }
        pending.push(combo);
    }
    pending.sort_by_key(|c| c.iter().map(|(_, w)| w.len()).max().unwrap_or(0));

    // 2. bounded completion
    let mut rules: Vec<Rule<F>> = Vec::new();
    while let Some(combo) = pending.pop() {
        let reduced = reduce_combo(f, &rules, combo);
        let Some(rule) = combo_to_rule(f, reduced) else {
            continue;
        };
        // retire any existing rule whose lhs becomes reducible
        let mut keep = Vec::new();
        for old in rules.drain(..) {
            let contains = old
                .lhs
                .windows(rule.lhs.len())
                .any(|win| win == rule.lhs.as_slice());
            if contains {
                let mut combo: Combo<F> = vec![(f.one(), old.lhs.clone())];
                for (c, w) in &old.rhs {
                    combo.push((f.neg(c), w.clone()));
                }
                pending.push(combo);
            } else {
                keep.push(old);
            }
        }
        rules = keep;

        // queue overlap ambiguities with every rule (including itself)
        let new_idx = rules.len();
        rules.push(rule);
        if rules.len() > MAX_RULES {
            return Err(AlgebraError::CompletionOverflow(MAX_RULES));
        }
        let mut overlaps: Vec<Combo<F>> = Vec::new();
        for i in 0..rules.len() {
            for (a, b) in [(i, new_idx), (new_idx, i)] {
                let (u, v) = (&rules[a].lhs, &rules[b].lhs);
                for t in 1..u.len().min(v.len()) {
                    if u[u.len() - t..] == v[..t] {
                        let mut w: Word = u.clone();
                        w.extend_from_slice(&v[t..]);
                        if w.len() > bound {
                            continue;
                        }
                        // reduce w two ways and take the difference
                        let mut via_a: Combo<F> = Vec::new();
                        for (c, rw) in &rules[a].rhs {
                            let mut nw = rw.clone();
                            nw.extend_from_slice(&v[t..]);
                            via_a.push((c.clone(), nw));
                        }
                        let mut via_b: Combo<F> = Vec::new();
                        for (c, rw) in &rules[b].rhs {
                            let mut nw = u[..u.len() - t].to_vec();
                            nw.extend_from_slice(rw);
                            via_b.push((c.clone(), nw));
                        }
                        let mut s = via_a;
                        for (c, w2) in via_b {
                            s.push((f.neg(&c), w2));
                        }
                        overlaps.push(s);
                    }
                }
            }
        }
        for s in overlaps {
            let r = reduce_combo(f, &rules, s);
            if !r.is_empty() {
                pending.push(r);
            }
        }
    }

    // 3. admissibility: every composable word of length == bound reduces to 0
    let mut stack: Vec<Word> = (0..quiver.num_arrows()).map(|a| vec![a]).collect();
    while let Some(w) = stack.pop() {
        if w.len() == bound {
            let nf = reduce_combo(f, &rules, vec![(f.one(), w.clone())]);
            if !nf.is_empty() {
                let p = Path::of_arrows(&quiver, w).unwrap();
                return Err(AlgebraError::NotAdmissible {
                    bound,
                    witness: p.display(&quiver),
                });
            }
            continue;
        }
        let at = quiver.arrow(*w.last().unwrap()).target;
        for (ai, arr) in quiver.arrows().iter().enumerate() {
            if arr.source == at {
                let mut nw = w.clone();
                nw.push(ai);
                stack.push(nw);
            }
        }
    }

    // 4. basis: irreducible words of length < bound, plus trivial paths
    let n = quiver.num_vertices();
    let mut basis: Vec<Path> = (0..n).map(Path::trivial).collect();
    let mut nontrivial: Vec<Path> = Vec::new();
    let mut stack: Vec<Word> = (0..quiver.num_arrows())
        .map(|a| vec![a])
        .filter(|w| find_redex(&rules, w).is_none())
        .collect();
    while let Some(w) = stack.pop() {
        nontrivial.push(Path::of_arrows(&quiver, w.clone()).unwrap());
        if w.len() + 1 >= bound {
            continue;
        }
        let at = quiver.arrow(*w.last().unwrap()).target;
        for (ai, arr) in quiver.arrows().iter().enumerate() {
            if arr.source == at {
                let mut nw = w.clone();
                nw.push(ai);
                // only the new suffixes can introduce a redex
                let reducible = rules.iter().any(|r| {
                    nw.len() >= r.lhs.len() && nw[nw.len() - r.lhs.len()..] == r.lhs[..]
                });
                if !reducible {
                    stack.push(nw);
                }
            }
        }
    }
    nontrivial.sort_by(|a, b| word_cmp(&a.arrows, &b.arrows));
    let nilpotency_bound = nontrivial.iter().map(|p| p.len()).max().unwrap_or(0) + 1;
    basis.extend(nontrivial);
    let basis_index: HashMap<Path, usize> = basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let mut paths_by_pair = vec![vec![Vec::new(); n]; n];
    for (id, p) in basis.iter().enumerate() {
        paths_by_pair[p.source][p.target].push(id);
    }

    // 5. product table on composable pairs
    let mut table: HashMap<(usize, usize), AlgElem<F>> = HashMap::new();
    for (ia, pa) in basis.iter().enumerate() {
        for (ib, pb) in basis.iter().enumerate() {
            if pa.target != pb.source {
                continue;
            }
            let mut w = pa.arrows.clone();
            w.extend_from_slice(&pb.arrows);
            let nf = if w.is_empty() {
                vec![(f.one(), Vec::new())]
            } else {
                reduce_combo(f, &rules, vec![(f.one(), w)])
            };
            let mut elem: AlgElem<F> = Vec::new();
            for (c, word) in nf {
                let p = if word.is_empty() {
                    Path::trivial(pa.source)
                } else {
                    Path::of_arrows(&quiver, word).unwrap()
                };
                let id = *basis_index.get(&p).ok_or_else(|| AlgebraError::NonConfluent {
                    path: p.display(&quiver),
                })?;
                elem.push((c, id));
            }
            elem.sort_by_key(|(_, i)| *i);
            if !elem.is_empty() {
                table.insert((ia, ib), elem);
            }
        }
    }

    let alg = BoundAlgebra {
        field,
        description,
        bound,
        nilpotency_bound,
        basis,
        basis_index,
        paths_by_pair,
        table,
        opposite: OnceLock::new(),
    };

    // 6. associativity sweep certifies confluence of the compiled table
    let f = &alg.field;
    for a in 0..alg.dim() {
        for b in 0..alg.dim() {
            if alg.basis[a].target != alg.basis[b].source {
                continue;
            }
            for c in 0..alg.dim() {
                if alg.basis[b].target != alg.basis[c].source {
                    continue;
                }
                let ab = alg.compose_basis(a, b).to_vec();
                let bc = alg.compose_basis(b, c).to_vec();
                let left = alg.mul(&ab, &vec![(f.one(), c)]);
                let right = alg.mul(&vec![(f.one(), a)], &bc);
                if left != right {
                    let mut w = alg.basis[a].arrows.clone();
                    w.extend_from_slice(&alg.basis[b].arrows);
                    w.extend_from_slice(&alg.basis[c].arrows);
                    let p = Path::of_arrows(alg.quiver(), w)
                        .map(|p| p.display(alg.quiver()))
                        .unwrap_or_else(|| "e".into());
                    return Err(AlgebraError::NonConfluent { path: p });
                }
            }
        }
    }

    Ok(alg)
}
