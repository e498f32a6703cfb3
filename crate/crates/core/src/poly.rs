//! Univariate polynomials over a [`Field`]: gcd, squarefree decomposition,
//! root finding and brute-force factorization over small prime fields.
//! Used by the direct-sum decomposition machinery (minimal polynomials of
//! endomorphisms, coprime splits for Fitting's lemma).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::matrix::Mat;
use crate::scalar::{Field, PrimeField, Rationals};

/// Coefficients in increasing degree, no trailing zeros. The zero
/// polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<F: Field> {
    pub coeffs: Vec<F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn new(f: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().map_or(false, |c| f.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(f: &F, c: F::Elem) -> Self {
        Poly::new(f, vec![c])
    }

    /// x - root
    pub fn linear(f: &F, root: &F::Elem) -> Self {
        Poly::new(f, vec![f.neg(root), f.one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn lead(&self) -> &F::Elem {
        self.coeffs.last().expect("lead of zero polynomial")
    }

    pub fn add(&self, f: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero());
            let b = other.coeffs.get(i).cloned().unwrap_or_else(|| f.zero());
            out.push(f.add(&a, &b));
        }
        Poly::new(f, out)
    }

    pub fn sub(&self, f: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero());
            let b = other.coeffs.get(i).cloned().unwrap_or_else(|| f.zero());
            out.push(f.sub(&a, &b));
        }
        Poly::new(f, out)
    }

    pub fn mul(&self, f: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    pub fn scale(&self, f: &F, c: &F::Elem) -> Self {
        Poly::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn monic(&self, f: &F) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let li = f.inv(self.lead()).unwrap();
        self.scale(f, &li)
    }

    /// Euclidean division: (quotient, remainder).
    pub fn divrem(&self, f: &F, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.clone();
        let mut q = vec![f.zero(); self.coeffs.len().saturating_sub(d.coeffs.len()) + 1];
        let dlead_inv = f.inv(d.lead()).unwrap();
        while !r.is_zero() && r.deg() >= d.deg() {
            let shift = r.deg() - d.deg();
            let c = f.mul(r.lead(), &dlead_inv);
            q[shift] = f.add(&q[shift], &c);
            // r -= c * x^shift * d
            let mut coeffs = r.coeffs.clone();
            for (i, a) in d.coeffs.iter().enumerate() {
                let t = f.mul(&c, a);
                coeffs[shift + i] = f.sub(&coeffs[shift + i], &t);
            }
            r = Poly::new(f, coeffs);
        }
        (Poly::new(f, q), r)
    }

    pub fn divides(&self, f: &F, other: &Self) -> bool {
        other.divrem(f, self).1.is_zero()
    }

    pub fn gcd(&self, f: &F, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(f, &b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic(f)
        }
    }

    pub fn derivative(&self, f: &F) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| f.mul(a, &f.from_i64(i as i64)))
            .collect();
        Poly::new(f, out)
    }

    pub fn eval(&self, f: &F, x: &F::Elem) -> F::Elem {
        let mut acc = f.zero();
        for a in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), a);
        }
        acc
    }

    /// Evaluate at a square matrix.
    pub fn eval_mat(&self, f: &F, m: &Mat<F>) -> Mat<F> {
        let n = m.rows();
        let mut acc = Mat::zero(f, n, n);
        for a in self.coeffs.iter().rev() {
            acc = acc.matmul(f, m);
            for i in 0..n {
                acc[(i, i)] = f.add(&acc[(i, i)], a);
            }
        }
        acc
    }

    /// Exact root multiplicity.
    pub fn root_multiplicity(&self, f: &F, root: &F::Elem) -> usize {
        let lin = Poly::linear(f, root);
        let mut g = self.clone();
        let mut m = 0;
        loop {
            let (q, r) = g.divrem(f, &lin);
            if !r.is_zero() {
                return m;
            }
            m += 1;
            g = q;
        }
    }
}

/// Minimal polynomial of a square matrix, via the first linear dependence
/// among its powers.
pub fn min_poly<F: Field>(f: &F, m: &Mat<F>) -> Poly<F> {
    let n = m.rows();
    assert_eq!(n, m.cols());
    if n == 0 {
        return Poly::new(f, vec![f.one()]); // min poly of the empty operator
    }
    // Flattened powers I, M, M^2, ... as columns; stop at first dependence.
    let mut powers: Vec<Mat<F>> = vec![Mat::identity(f, n)];
    loop {
        let k = powers.len();
        let cols: Vec<Vec<F::Elem>> = powers.iter().map(|p| p.data().to_vec()).collect();
        let a = Mat::from_cols(f, n * n, &cols);
        let ker = a.kernel_basis(f);
        if ker.cols() > 0 {
            // any kernel vector with nonzero top coefficient: RREF kernel
            // basis has a single vector here because we stop at the first
            // dependence, and its last coordinate is nonzero.
            let v = ker.col(0);
            debug_assert!(!f.is_zero(&v[k - 1]));
            return Poly::new(f, v).monic(f);
        }
        let next = powers.last().unwrap().matmul(f, m);
        powers.push(next);
        assert!(powers.len() <= n + 1, "min poly search exceeded dimension");
    }
}

/// Squarefree decomposition: pairwise-coprime monic `parts[i] = (g, m)` with
/// `poly = lead * prod g^m`. Handles characteristic p via p-th root
/// extraction (valid over prime fields, where Frobenius fixes scalars).
pub fn squarefree_decomposition<F: Field>(
    f: &F,
    poly: &Poly<F>,
    char_p: Option<u64>,
) -> Vec<(Poly<F>, usize)> {
    let poly = poly.monic(f);
    if poly.is_zero() || poly.deg() == 0 {
        return vec![];
    }
    let d = poly.derivative(f);
    if d.is_zero() {
        // char p and poly = g(x^p); over F_p the p-th root keeps coefficients
        let p = char_p.expect("zero derivative over characteristic zero") as usize;
        let g: Vec<F::Elem> = poly.coeffs.iter().step_by(p).cloned().collect();
        let inner = squarefree_decomposition(f, &Poly::new(f, g), char_p);
        return inner.into_iter().map(|(q, m)| (q, m * p)).collect();
    }
    let mut out: Vec<(Poly<F>, usize)> = Vec::new();
    let mut c = poly.gcd(f, &d);
    let mut w = poly.divrem(f, &c).0;
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(f, &c);
        let z = w.divrem(f, &y).0;
        if z.deg() > 0 {
            out.push((z.monic(f), i));
        }
        i += 1;
        w = y;
        c = c.divrem(f, &w).0;
    }
    if c.deg() > 0 {
        // c is a p-th power (only in characteristic p)
        let p = char_p.expect("leftover gcd in characteristic zero") as usize;
        let g: Vec<F::Elem> = c.coeffs.iter().step_by(p).cloned().collect();
        let inner = squarefree_decomposition(f, &Poly::new(f, g), char_p);
        for (q, m) in inner {
            if let Some(e) = out.iter_mut().find(|(h, _)| *h == q) {
                e.1 += m * p;
            } else {
                out.push((q, m * p));
            }
        }
    }
    out
}

/// All roots in F_p, by scanning the field.
pub fn roots_fp(f: &PrimeField, poly: &Poly<PrimeField>) -> Vec<u64> {
    let p = f.modulus();
    (0..p).filter(|x| f.is_zero(&poly.eval(f, x))).collect()
}

/// Brute-force factorization over F_p into monic irreducibles with
/// multiplicities; `None` when the search budget p^d would be exceeded.
pub fn factor_fp(f: &PrimeField, poly: &Poly<PrimeField>, budget: u64) -> Option<Vec<(Poly<PrimeField>, usize)>> {
    let mut rest = poly.monic(f);
    let mut out: Vec<(Poly<PrimeField>, usize)> = Vec::new();
    // strip roots
    for r in roots_fp(f, &rest) {
        let lin = Poly::linear(f, &r);
        let mut m = 0;
        loop {
            let (q, rem) = rest.divrem(f, &lin);
            if !rem.is_zero() {
                break;
            }
            rest = q;
            m += 1;
        }
        if m > 0 {
            out.push((lin, m));
        }
    }
    let p = f.modulus();
    let mut d = 2;
    while !rest.is_zero() && rest.deg() >= 2 * d {
        // enumerate monic degree-d candidates
        let count = p.checked_pow(d as u32)?;
        if count > budget {
            return None;
        }
        for idx in 0..count {
            let mut coeffs = Vec::with_capacity(d + 1);
            let mut k = idx;
            for _ in 0..d {
                coeffs.push(k % p);
                k /= p;
            }
            coeffs.push(1);
            let cand = Poly::new(f, coeffs);
            if roots_fp(f, &cand).is_empty() {
                // no linear factor; treat as candidate irreducible (any
                // composite candidate's factors were already stripped)
                let mut m = 0;
                loop {
                    let (q, rem) = rest.divrem(f, &cand);
                    if !rem.is_zero() {
                        break;
                    }
                    rest = q;
                    m += 1;
                }
                if m > 0 {
                    out.push((cand, m));
                }
            }
            if rest.deg() < 2 * d {
                break;
            }
        }
        d += 1;
    }
    if !rest.is_zero() && rest.deg() > 0 {
        out.push((rest.monic(f), 1));
    }
    Some(out)
}

/// Rational roots of a polynomial over Q. Returns `(roots, complete)`:
/// `complete = true` means the candidate enumeration covered all divisors,
/// so the list is exhaustive.
pub fn rational_roots(q: &Rationals, poly: &Poly<Rationals>) -> (Vec<BigRational>, bool) {
    if poly.is_zero() || poly.deg() == 0 {
        return (vec![], true);
    }
    // clear denominators to a primitive integer polynomial
    let mut den_lcm = BigInt::one();
    for c in &poly.coeffs {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = poly
        .coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(den_lcm.clone())).to_integer())
        .collect();
    let a0 = ints.iter().find(|c| !c.is_zero()).unwrap().clone();
    let an = ints.last().unwrap().clone();

    let mut roots = Vec::new();
    // x = 0 divides when the constant term vanishes
    if poly.coeffs[0].is_zero() {
        roots.push(BigRational::zero());
    }
    let (dn, dn_complete) = small_divisors(&a0.abs());
    let (dd, dd_complete) = small_divisors(&an.abs());
    let mut candidates: Vec<BigRational> = Vec::new();
    for n in &dn {
        for d in &dd {
            let c = BigRational::new(n.clone(), d.clone());
            candidates.push(c.clone());
            candidates.push(-c);
        }
    }
    // always probe small integers even if divisor enumeration bailed
    for s in -4i64..=4 {
        candidates.push(BigRational::from_integer(BigInt::from(s)));
    }
    candidates.sort();
    candidates.dedup();
    for c in candidates {
        if c.is_zero() {
            continue;
        }
        if q.is_zero(&poly.eval(q, &c)) {
            roots.push(c);
        }
    }
    (roots, dn_complete && dd_complete)
}

/// Divisors of |n| by trial division with a budget; `complete = false`
/// when a cofactor larger than the trial bound remains unfactored.
fn small_divisors(n: &BigInt) -> (Vec<BigInt>, bool) {
    if n.is_zero() {
        return (vec![BigInt::one()], true);
    }
    let mut m = n.clone();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut complete = true;
    let mut d = BigInt::from(2u32);
    let bound = BigInt::from(1_000_000u64);
    while &d * &d <= m && d <= bound {
        let mut e = 0;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        if e > 0 {
            primes.push((d.clone(), e));
        }
        d += 1u32;
    }
    if m > BigInt::one() {
        // no factor <= 10^6, so m is prime whenever m <= 10^12
        if m > BigInt::from(1_000_000_000_000u64) {
            complete = false;
        }
        primes.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for dv in &divs {
            let mut acc = dv.clone();
            for _ in 0..=e {
                next.push(acc.clone());
                acc *= &p;
            }
        }
        next.sort();
        next.dedup();
        divs = next;
    }
    (divs, complete)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(coeffs: &[i64]) -> Poly<Rationals> {
        let q = Rationals;
        Poly::new(&q, coeffs.iter().map(|&c| q.from_i64(c)).collect())
    }

    #[test]
    fn divrem_gcd() {
        let q = Rationals;
        // (x-1)(x-2) = x^2 - 3x + 2
        let p = qp(&[2, -3, 1]);
        let g = p.gcd(&q, &qp(&[-1, 1]));
        assert_eq!(g, qp(&[-1, 1]));
        let (quo, rem) = p.divrem(&q, &qp(&[-1, 1]));
        assert!(rem.is_zero());
        assert_eq!(quo, qp(&[-2, 1]));
    }

    #[test]
    fn minpoly_of_nilpotent() {
        let q = Rationals;
        let m = Mat::new(
            2,
            2,
            vec![q.from_i64(0), q.from_i64(1), q.from_i64(0), q.from_i64(0)],
        );
        let mp = min_poly(&q, &m);
        assert_eq!(mp, qp(&[0, 0, 1])); // x^2
    }

    #[test]
    fn sqfree_char0() {
        let q = Rationals;
        // (x-1)^2 (x-2)
        let p = qp(&[-2, 5, -4, 1]);
        let parts = squarefree_decomposition(&q, &p, None);
        assert_eq!(parts.len(), 2);
        let mut prod = qp(&[1]);
        for (g, m) in &parts {
            for _ in 0..*m {
                prod = prod.mul(&q, g);
            }
        }
        assert_eq!(prod, p);
    }

    #[test]
    fn factor_over_f2() {
        let f = PrimeField::new(2);
        // x^2 + x + 1 irreducible over F_2
        let p = Poly::new(&f, vec![1, 1, 1]);
        let fac = factor_fp(&f, &p, 10_000).unwrap();
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0].1, 1);
        // x^2 + 1 = (x+1)^2
        let p2 = Poly::new(&f, vec![1, 0, 1]);
        let fac2 = factor_fp(&f, &p2, 10_000).unwrap();
        assert_eq!(fac2.len(), 1);
        assert_eq!(fac2[0].1, 2);
    }

    #[test]
    fn rational_roots_found() {
        let q = Rationals;
        // (x - 1/2)(x + 3) => 2x^2 + 5x - 3, as rational poly x^2 + 5/2 x - 3/2
        let p = Poly::new(
            &q,
            vec![
                q.from_ratio(-3, 2).unwrap(),
                q.from_ratio(5, 2).unwrap(),
                q.one(),
            ],
        );
        let (roots, complete) = rational_roots(&q, &p);
        assert!(complete);
        assert!(roots.contains(&q.from_ratio(1, 2).unwrap()));
        assert!(roots.contains(&q.from_i64(-3)));
    }
}
