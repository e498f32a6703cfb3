//! Finite-field experiment harness: exhaustive and sampled brick censuses,
//! component sampling with the c/e/h estimates, the brick-Brauer-Thrall
//! sweep, and membership in the torsion-free class of the injectives.
//!
//! Censuses visit points of rep(A, d)(F_q), filter by the relations, test
//! brickness, bucket by isomorphism, and annotate projective dimension,
//! tau-homogeneity, faithfulness and Hom-orthogonality. All sampling is
//! seeded; reports carry the seed and the budget.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{AlgebraDescription, BoundAlgebra};
use crate::ar::tau;
use crate::decompose::{is_isomorphic, SplitField};
use crate::matrix::Mat;
use crate::rep::{ext_dim, hom_basis, is_brick, is_faithful, RepError, Representation};
use crate::scalar::Field;
use crate::stability::orbit_dim;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("exhaustive census needs {needed} points, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("census requires a finite scalar domain")]
    DomainNotFinite,
    #[error(transparent)]
    Rep(#[from] RepError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusMode {
    Exhaustive,
    Sample(u64),
}

/// One isomorphism class of bricks with its homological annotations.
#[derive(Clone, Debug)]
pub struct BrickClass<F: Field> {
    pub rep: Representation<F>,
    /// Number of census points in this class.
    pub points: u64,
    /// Hom(DA, tau B) = 0, certifying pd B <= 1.
    pub pd_le_1: bool,
    /// tau B isomorphic to B.
    pub tau_homogeneous: bool,
    pub faithful: bool,
}

#[derive(Clone, Debug)]
pub struct CensusReport<F: Field> {
    pub dims: Vec<usize>,
    pub q: u64,
    pub mode: CensusMode,
    pub seed: u64,
    pub points_visited: u64,
    pub relation_points: u64,
    pub brick_points: u64,
    pub classes: Vec<BrickClass<F>>,
    /// Hom-orthogonality among class representatives: entry (i, j) true
    /// when Hom both ways vanish.
    pub orthogonal: Vec<Vec<bool>>,
}

impl<F: Field> CensusReport<F> {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Size of a maximum pairwise Hom-orthogonal family of representatives.
    pub fn max_orthogonal_family(&self) -> Vec<usize> {
        let n = self.classes.len();
        let mut best: Vec<usize> = Vec::new();
        let mut stack: Vec<(Vec<usize>, Vec<usize>)> = vec![(Vec::new(), (0..n).collect())];
        while let Some((clique, cands)) = stack.pop() {
            if clique.len() + cands.len() <= best.len() {
                continue;
            }
            if cands.is_empty() {
                if clique.len() > best.len() {
                    best = clique;
                }
                continue;
            }
            let mut cands = cands;
            let v = cands.pop().unwrap();
            // branch: without v
            stack.push((clique.clone(), cands.clone()));
            // branch: with v
            let mut nc = clique;
            nc.push(v);
            let filtered: Vec<usize> = cands
                .into_iter()
                .filter(|&u| self.orthogonal[v][u])
                .collect();
            stack.push((nc, filtered));
        }
        best
    }
}

/// Total number of matrix entries of a point in rep(A, d).
pub fn entry_count<F: Field>(alg: &BoundAlgebra<F>, dims: &[usize]) -> usize {
    alg.quiver()
        .arrows()
        .iter()
        .map(|a| dims[a.source] * dims[a.target])
        .sum()
}

fn point_from_index<F: Field>(
    alg: &Arc<BoundAlgebra<F>>,
    dims: &[usize],
    q: u64,
    mut idx: u128,
) -> Representation<F> {
    let f = &alg.field;
    let mats: Vec<Mat<F>> = alg
        .quiver()
        .arrows()
        .iter()
        .map(|a| {
            Mat::from_fn(dims[a.target], dims[a.source], |_, _| {
                let e = f.elem_from_index((idx % q as u128) as u64);
                idx /= q as u128;
                e
            })
        })
        .collect();
    Representation::new(alg.clone(), dims.to_vec(), mats).expect("shapes match")
}

/// A seeded random point of rep(Q, d) (relations not yet imposed).
pub fn random_point<F: Field>(
    alg: &Arc<BoundAlgebra<F>>,
    dims: &[usize],
    rng: &mut impl Rng,
) -> Representation<F> {
    let f = &alg.field;
    let mats: Vec<Mat<F>> = alg
        .quiver()
        .arrows()
        .iter()
        .map(|a| Mat::from_fn(dims[a.target], dims[a.source], |_, _| f.random_elem(rng)))
        .collect();
    Representation::new(alg.clone(), dims.to_vec(), mats).expect("shapes match")
}

/// A seeded random relation-satisfying point, by rejection with a try cap.
pub fn sample_rep<F: Field>(
    alg: &Arc<BoundAlgebra<F>>,
    dims: &[usize],
    rng: &mut impl Rng,
    max_tries: usize,
) -> Option<Representation<F>> {
    for _ in 0..max_tries {
        let m = random_point(alg, dims, rng);
        if m.check_relations() {
            return Some(m);
        }
    }
    None
}

/// All relation-satisfying points of rep(A, d)(F_q), budget-guarded.
pub fn rep_points_exhaustive<F: Field>(
    alg: &Arc<BoundAlgebra<F>>,
    dims: &[usize],
    budget: u128,
) -> Result<Vec<Representation<F>>, CensusError> {
    let q = alg.field.size().ok_or(CensusError::DomainNotFinite)?;
    let e = entry_count(alg, dims);
    let total = (q as u128)
        .checked_pow(e as u32)
        .ok_or(CensusError::BudgetExceeded {
            needed: u128::MAX,
            budget,
        })?;
    if total > budget {
        return Err(CensusError::BudgetExceeded {
            needed: total,
            budget,
        });
    }
    Ok((0..total)
        .into_par_iter()
        .filter_map(|idx| {
            let p = point_from_index(alg, dims, q, idx);
            if p.check_relations() {
                Some(p)
            } else {
                None
            }
        })
        .collect())
}

/// Conjugation-invariant fingerprint cheap enough for point streams.
fn rank_fingerprint<F: Field>(p: &Representation<F>) -> Vec<usize> {
    let f = p.field();
    p.matrices().iter().map(|m| m.rank(f)).collect()
}

/// Exhaustive or sampled brick census at a fixed dimension vector. The
/// point stream is classified incrementally; memory stays proportional to
/// the number of isomorphism classes.
pub fn brick_census<F: SplitField>(
    alg: &Arc<BoundAlgebra<F>>,
    dims: &[usize],
    mode: CensusMode,
    budget: u128,
    seed: u64,
) -> Result<CensusReport<F>, CensusError> {
    let q = alg.field.size().ok_or(CensusError::DomainNotFinite)?;
    let e = entry_count(alg, dims);
    let mut relation_points: u64 = 0;
    let mut brick_points: u64 = 0;
    let mut classes: Vec<(Representation<F>, Vec<usize>, u64)> = Vec::new();
    let mut scan = |p: Representation<F>| -> Result<(), CensusError> {
        if !p.check_relations() {
            return Ok(());
        }
        relation_points += 1;
        if p.is_zero() || !is_brick(&p).unwrap_or(false) {
            return Ok(());
        }
        brick_points += 1;
        let fp = rank_fingerprint(&p);
        for (rep, rfp, count) in classes.iter_mut() {
            if *rfp == fp && crate::decompose::bricks_isomorphic(rep, &p) {
                *count += 1;
                return Ok(());
            }
        }
        classes.push((p, fp, 1));
        Ok(())
    };
    let visited: u64 = match mode {
        CensusMode::Exhaustive => {
            let total = (q as u128)
                .checked_pow(e as u32)
                .filter(|&t| t <= budget)
                .ok_or(CensusError::BudgetExceeded {
                    needed: (q as u128).saturating_pow(e as u32),
                    budget,
                })?;
            for idx in 0..total {
                scan(point_from_index(alg, dims, q, idx))?;
            }
            total as u64
        }
        CensusMode::Sample(count) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                scan(random_point(alg, dims, &mut rng))?;
            }
            count
        }
    };
    let annotated: Vec<BrickClass<F>> = classes
        .par_iter()
        .map(|(rep, _, count)| {
            let t = tau(rep);
            let da = Representation::coregular(alg);
            let pd_le_1 = t.is_zero() || hom_basis(&da, &t).dim() == 0;
            let tau_homogeneous = !t.is_zero() && is_isomorphic(&t, rep).unwrap_or(false);
            BrickClass {
                rep: rep.clone(),
                points: *count,
                pd_le_1,
                tau_homogeneous,
                faithful: is_faithful(rep),
            }
        })
        .collect();
    let n = annotated.len();
    let mut orthogonal = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            orthogonal[i][j] = hom_basis(&annotated[i].rep, &annotated[j].rep).dim() == 0
                && hom_basis(&annotated[j].rep, &annotated[i].rep).dim() == 0;
        }
    }
    Ok(CensusReport {
        dims: dims.to_vec(),
        q,
        mode,
        seed,
        points_visited: visited,
        relation_points,
        brick_points,
        classes: annotated,
        orthogonal,
    })
}

// ---------------------------------------------------------------------------
// component samples: c/e/h estimates
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct ComponentSample {
    pub dims: Vec<usize>,
    pub q: u64,
    pub requested: usize,
    pub found: usize,
    /// min dim Ext^1(Z, Z) over the sample.
    pub e_hat: Option<usize>,
    /// min dim Hom(Z, tau Z) over the sample.
    pub h_hat: Option<usize>,
    /// min (dim rep(Q, d) - dim O_Z); exact ambient only when hereditary.
    pub c_hat: Option<i64>,
    pub seed: u64,
}

impl ComponentSample {
    /// c = e = h on the sample: evidence for a tau-regular component.
    pub fn tau_regular_evidence(&self) -> bool {
        match (self.c_hat, self.e_hat, self.h_hat) {
            (Some(c), Some(e), Some(h)) => c == e as i64 && e == h,
            (None, Some(e), Some(h)) => e == h,
            _ => false,
        }
    }
}

pub fn component_sample<F: Field>(
    alg: &Arc<BoundAlgebra<F>>,
    dims: &[usize],
    count: usize,
    seed: u64,
) -> Result<ComponentSample, CensusError> {
    assert!(count >= 1);
    let q = alg.field.size().ok_or(CensusError::DomainNotFinite)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut e_hat: Option<usize> = None;
    let mut h_hat: Option<usize> = None;
    let mut c_hat: Option<i64> = None;
    let hereditary = alg.is_hereditary();
    let ambient: i64 = alg
        .quiver()
        .arrows()
        .iter()
        .map(|a| (dims[a.source] * dims[a.target]) as i64)
        .sum();
    let mut found = 0;
    for _ in 0..count {
        let Some(z) = sample_rep(alg, dims, &mut rng, 400) else {
            continue;
        };
        if z.is_zero() {
            continue;
        }
        found += 1;
        let e1 = ext_dim(&z, &z, 1);
        e_hat = Some(e_hat.map_or(e1, |b| b.min(e1)));
        let t = tau(&z);
        let h = if t.is_zero() {
            0
        } else {
            hom_basis(&z, &t).dim()
        };
        h_hat = Some(h_hat.map_or(h, |b| b.min(h)));
        if hereditary {
            let gap = ambient - orbit_dim(&z);
            c_hat = Some(c_hat.map_or(gap, |b| b.min(gap)));
        }
    }
    Ok(ComponentSample {
        dims: dims.to_vec(),
        q,
        requested: count,
        found,
        e_hat,
        h_hat,
        c_hat,
        seed,
    })
}

// ---------------------------------------------------------------------------
// torsion-free class of the injectives
// ---------------------------------------------------------------------------

/// X in F_I = (DA)-perp, i.e. Hom(DA, X) = 0. For X = tau B this certifies
/// pd B <= 1.
pub fn f_i_membership<F: Field>(x: &Representation<F>) -> bool {
    if x.is_zero() {
        return true;
    }
    let da = Representation::coregular(x.algebra());
    hom_basis(&da, x).dim() == 0
}

// ---------------------------------------------------------------------------
// the brick-Brauer-Thrall sweep
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct BbtFieldSummary {
    pub q: u64,
    pub mode: CensusMode,
    pub class_count: usize,
    pub brick_points: u64,
    pub all_pd_le_1: bool,
    pub all_tau_homogeneous: bool,
}

#[derive(Clone, Debug)]
pub struct BbtDimReport<F: Field> {
    pub dims: Vec<usize>,
    pub per_field: Vec<BbtFieldSummary>,
    /// Strictly growing class counts across >= 3 exhaustive censuses:
    /// 1-parameter-family evidence, never a verified instance.
    pub flagged: bool,
    /// Representatives of a maximum Hom-orthogonal family at the largest
    /// field.
    pub orthogonal_family: Vec<Representation<F>>,
}

#[derive(Clone, Debug)]
pub struct BbtReport<F: Field> {
    pub max_total_dim: usize,
    pub fields: Vec<u64>,
    pub seed: u64,
    pub budget: u128,
    pub entries: Vec<BbtDimReport<F>>,
    /// Total dimensions at which at least one brick exists (1st bBT
    /// evidence when unbounded growth shows).
    pub brick_dims_found: Vec<usize>,
}

impl<F: Field> BbtReport<F> {
    pub fn flagged_dims(&self) -> Vec<Vec<usize>> {
        self.entries
            .iter()
            .filter(|e| e.flagged)
            .map(|e| e.dims.clone())
            .collect()
    }
}

fn dim_vectors(n: usize, max_total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    loop {
        let total: usize = cur.iter().sum();
        if total >= 1 && total <= max_total {
            out.push(cur.clone());
        }
        // odometer increment bounded by max_total
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            cur[i] += 1;
            if cur[i..].iter().sum::<usize>() <= max_total && cur.iter().sum::<usize>() <= max_total
            {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Sweep dimension vectors and fields, census each, and report
/// 1-parameter-family evidence, Hom-orthogonal families, pd-1 and
/// tau-homogeneity, and brick-dimension growth.
pub fn bbt_search<F2, Mk>(
    desc: &AlgebraDescription,
    mk: Mk,
    max_total_dim: usize,
    fields: &[u64],
    seed: u64,
    budget: u128,
    sample_count: u64,
) -> Result<BbtReport<F2>, CensusError>
where
    F2: SplitField,
    Mk: Fn(u64) -> F2,
{
    let compiled: Vec<(u64, Arc<BoundAlgebra<F2>>)> = fields
        .iter()
        .map(|&q| {
            let alg = Arc::new(
                desc.compile(mk(q), None)
                    .expect("fixture compiles over every field"),
            );
            (q, alg)
        })
        .collect();
    let n = desc.quiver.num_vertices();
    let dvs = dim_vectors(n, max_total_dim);
    // dimension vectors are independent tasks; aggregation is single-writer
    let entries: Vec<BbtDimReport<F2>> = dvs
        .into_par_iter()
        .map(|dims| -> Result<BbtDimReport<F2>, CensusError> {
            let mut per_field = Vec::new();
            let mut exhaustive_counts: Vec<usize> = Vec::new();
            let mut biggest: Option<CensusReport<F2>> = None;
            for (q, alg) in &compiled {
                let e = entry_count(alg, &dims);
                let total = (*q as u128).checked_pow(e as u32);
                let mode = match total {
                    Some(t) if t <= budget => CensusMode::Exhaustive,
                    _ => CensusMode::Sample(sample_count),
                };
                let task_seed = seed ^ (dims.iter().fold(*q, |a, &d| a * 31 + d as u64));
                let report = brick_census(alg, &dims, mode, budget, task_seed)?;
                per_field.push(BbtFieldSummary {
                    q: *q,
                    mode,
                    class_count: report.class_count(),
                    brick_points: report.brick_points,
                    all_pd_le_1: !report.classes.is_empty()
                        && report.classes.iter().all(|c| c.pd_le_1),
                    all_tau_homogeneous: !report.classes.is_empty()
                        && report.classes.iter().all(|c| c.tau_homogeneous),
                });
                if mode == CensusMode::Exhaustive {
                    exhaustive_counts.push(report.class_count());
                }
                biggest = Some(report);
            }
            let flagged = exhaustive_counts.len() >= 3
                && exhaustive_counts.windows(2).all(|w| w[0] < w[1]);
            let orthogonal_family = biggest
                .as_ref()
                .map(|r| {
                    r.max_orthogonal_family()
                        .into_iter()
                        .map(|i| r.classes[i].rep.clone())
                        .collect()
                })
                .unwrap_or_default();
            Ok(BbtDimReport {
                dims,
                per_field,
                flagged,
                orthogonal_family,
            })
        })
        .collect::<Result<_, _>>()?;
    let mut brick_dims: Vec<usize> = entries
        .iter()
        .filter(|e| e.per_field.iter().any(|s| s.class_count > 0))
        .map(|e| e.dims.iter().sum())
        .collect();
    brick_dims.sort();
    brick_dims.dedup();
    Ok(BbtReport {
        max_total_dim,
        fields: fields.to_vec(),
        seed,
        budget,
        entries,
        brick_dims_found: brick_dims,
    })
}
