//! Exact rational linear algebra.
//!
//! Characteristic polynomials (Faddeev–LeVerrier), reduced row echelon
//! form, kernels, generalized eigenspaces, and complete rational root
//! extraction. Everything is exact over arbitrary-precision rationals;
//! echelon output is normalized (pivots 1, left to right) so results are
//! deterministic and comparable with structural equality.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::Rat;

/// Square matrix of rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matrix {
    n: usize,
    entries: Vec<Rat>,
}

impl Matrix {
    pub fn new(n: usize, entries: Vec<Rat>) -> Self {
        assert!(n > 0, "matrix size must be positive");
        assert_eq!(entries.len(), n * n, "entry count must be n*n");
        Matrix { n, entries }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(f(r, c));
            }
        }
        Matrix::new(n, entries)
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must form a square");
        Matrix::new(n, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        Matrix::from_fn(n, |r, c| Rat::from_integer(BigInt::from(rows[r][c])))
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, |r, c| if r == c { Rat::one() } else { Rat::zero() })
    }

    pub fn zero(n: usize) -> Self {
        Matrix::from_fn(n, |_, _| Rat::zero())
    }

    pub fn diagonal(diag: &[Rat]) -> Self {
        Matrix::from_fn(diag.len(), |r, c| {
            if r == c {
                diag[r].clone()
            } else {
                Rat::zero()
            }
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.entries[r * self.n + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "size mismatch");
        Matrix::from_fn(self.n, |r, c| self.at(r, c) + other.at(r, c))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "size mismatch");
        Matrix::from_fn(self.n, |r, c| self.at(r, c) - other.at(r, c))
    }

    pub fn scale(&self, s: &Rat) -> Matrix {
        Matrix::from_fn(self.n, |r, c| self.at(r, c) * s)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "size mismatch");
        Matrix::from_fn(self.n, |r, c| {
            let mut acc = Rat::zero();
            for k in 0..self.n {
                if !self.at(r, k).is_zero() && !other.at(k, c).is_zero() {
                    acc += self.at(r, k) * other.at(k, c);
                }
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.n, "vector length mismatch");
        (0..self.n)
            .map(|r| {
                let mut acc = Rat::zero();
                for (c, x) in v.iter().enumerate() {
                    acc += self.at(r, c) * x;
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut k: u32) -> Matrix {
        let mut acc = Matrix::identity(self.n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> Rat {
        (0..self.n).map(|i| self.at(i, i).clone()).sum()
    }

    /// `self - lambda*I`.
    pub fn shift(&self, lambda: &Rat) -> Matrix {
        let mut m = self.clone();
        for i in 0..self.n {
            let v = m.at(i, i) - lambda;
            m.set(i, i, v);
        }
        m
    }

    /// Exact inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.n;
        let mut aug: Vec<Vec<Rat>> = (0..n)
            .map(|r| {
                let mut row: Vec<Rat> = (0..n).map(|c| self.at(r, c).clone()).collect();
                row.extend((0..n).map(|c| if r == c { Rat::one() } else { Rat::zero() }));
                row
            })
            .collect();
        let pivots = rref(&mut aug);
        if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
            return None;
        }
        Some(Matrix::from_fn(n, |r, c| aug[r][n + c].clone()))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n {
            write!(f, "[")?;
            for c in 0..self.n {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Reduce `rows` to reduced row echelon form in place.
///
/// Returns the pivot columns, one per nonzero row, strictly increasing.
/// Pivot entries are 1 and are the only nonzero entries in their columns.
pub fn rref(rows: &mut [Vec<Rat>]) -> Vec<usize> {
    let m = rows.len();
    if m == 0 {
        return Vec::new();
    }
    let width = rows[0].len();
    let mut pivots = Vec::new();
    let mut pivot_row = 0;
    for col in 0..width {
        if pivot_row >= m {
            break;
        }
        let Some(src) = (pivot_row..m).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(src, pivot_row);
        let inv = rows[pivot_row][col].clone();
        for x in rows[pivot_row][col..width].iter_mut() {
            let v = &*x / &inv;
            *x = v;
        }
        // All rows from pivot_row down are zero left of col, so eliminating
        // from col onward reduces the whole column.
        let pivot = rows[pivot_row][col..width].to_vec();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, p) in row[col..width].iter_mut().zip(&pivot) {
                    let v = &*x - &factor * p;
                    *x = v;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    pivots
}

/// Echelon-normalized basis of the null space of `m` (possibly empty).
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Rat>> {
    let n = m.size();
    let mut rows: Vec<Vec<Rat>> = (0..n)
        .map(|r| (0..n).map(|c| m.at(r, c).clone()).collect())
        .collect();
    let pivots = rref(&mut rows);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut basis: Vec<Vec<Rat>> = free
        .iter()
        .map(|&fc| {
            let mut v = vec![Rat::zero(); n];
            v[fc] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[row][fc].clone();
            }
            v
        })
        .collect();
    // normalize the basis itself to reduced echelon form
    rref(&mut basis);
    basis
}

/// Basis of ker((m - lambda*I)^n), the generalized eigenspace of `lambda`.
/// Empty when `lambda` is not an eigenvalue.
pub fn generalized_eigenspace(m: &Matrix, lambda: &Rat) -> Vec<Vec<Rat>> {
    let shifted = m.shift(lambda);
    kernel_basis(&shifted.pow(m.size() as u32))
}

/// Solve B X = Y where the columns of B are `basis` (assumed linearly
/// independent) and the columns of Y are `targets`. Returns the columns of
/// X, or `None` when some target is outside the span of the basis.
pub(crate) fn solve_in_span(basis: &[Vec<Rat>], targets: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let k = basis.len();
    let t = targets.len();
    if k == 0 {
        return if targets.iter().all(|y| y.iter().all(Rat::is_zero)) {
            Some(vec![Vec::new(); t])
        } else {
            None
        };
    }
    let n = basis[0].len();
    let mut aug: Vec<Vec<Rat>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rat> = basis.iter().map(|b| b[r].clone()).collect();
            row.extend(targets.iter().map(|y| y[r].clone()));
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != k || pivots.iter().any(|&c| c >= k) {
        return None;
    }
    Some(
        (0..t)
            .map(|j| (0..k).map(|i| aug[i][k + j].clone()).collect())
            .collect(),
    )
}

/// Univariate polynomial with rational coefficients; `coeffs[i]` is the
/// coefficient of degree i and the leading coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(
            coeffs
                .iter()
                .map(|&c| Rat::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(Rat::is_one)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*u")?,
                _ => write!(f, "{c}*u^{i}")?,
            }
        }
        Ok(())
    }
}

/// Characteristic polynomial det(u*I - m), monic of degree n.
///
/// Faddeev–LeVerrier recurrence: M_k = m*M_{k-1} + c_{n-k+1}*I and
/// c_{n-k} = -tr(m*M_k)/k, starting from M_0 = 0, c_n = 1.
pub fn char_poly(m: &Matrix) -> UniPoly {
    let n = m.size();
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut c = Rat::one();
    let mut am = Matrix::zero(n);
    for k in 1..=n {
        let mut mk = am;
        for i in 0..n {
            let v = mk.at(i, i) + &c;
            mk.set(i, i, v);
        }
        am = m.mul(&mk);
        c = -am.trace() / Rat::from_integer(BigInt::from(k as i64));
        coeffs[n - k] = c.clone();
    }
    UniPoly::new(coeffs)
}

fn positive_divisors(x: &BigUint) -> Vec<BigUint> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigUint::one();
    loop {
        let dd = &d * &d;
        if dd > *x {
            break;
        }
        let (q, r) = x.div_rem(&d);
        if r.is_zero() {
            small.push(d.clone());
            if q != d {
                large.push(q);
            }
        }
        d += BigUint::one();
    }
    large.reverse();
    small.extend(large);
    small
}

/// Divide a monic integer polynomial by (y - r), assuming r is a root.
/// Coefficients ascending by degree. Returns the (monic, integer) quotient.
fn deflate_integer(coeffs: &[BigInt], r: &BigInt) -> Vec<BigInt> {
    let deg = coeffs.len() - 1;
    let mut quot = vec![BigInt::zero(); deg];
    let mut carry = BigInt::zero();
    for i in (0..deg).rev() {
        carry = &coeffs[i + 1] + r * &carry;
        quot[i] = carry.clone();
    }
    debug_assert_eq!(&coeffs[0] + r * &carry, BigInt::zero());
    quot
}

fn eval_integer(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// All rational roots of a nonzero polynomial, with multiplicities, sorted
/// ascending; `splits` is true iff the multiplicities sum to the degree.
///
/// Uses the rational root theorem: after clearing denominators to a monic
/// integer polynomial (via u = y/D with D the lcm of the coefficient
/// denominators), every rational root is an integer divisor of the constant
/// term. Panics on the zero polynomial.
pub fn rational_roots(p: &UniPoly) -> (Vec<(Rat, usize)>, bool) {
    assert!(!p.is_zero(), "rational_roots of the zero polynomial");
    let deg = p.degree().unwrap();
    if deg == 0 {
        return (Vec::new(), true);
    }
    // normalize to monic; roots are unchanged
    let lead = p.coeffs().last().unwrap().clone();
    let monic: Vec<Rat> = p.coeffs().iter().map(|c| c / &lead).collect();

    let mut roots: Vec<(Rat, usize)> = Vec::new();

    // strip roots at zero
    let low = monic.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        roots.push((Rat::zero(), low));
    }
    let reduced = &monic[low..];
    if reduced.len() == 1 {
        return (roots, low == deg);
    }

    // substitute u = y/D: q(y) = D^e p(y/D) is monic with integer coefficients
    let mut d_lcm = BigInt::one();
    for c in reduced {
        d_lcm = d_lcm.lcm(c.denom());
    }
    let mut q: Vec<BigInt> = Vec::with_capacity(reduced.len());
    let mut scale = BigInt::one(); // D^(e-j) built from the top down
    let mut scaled = vec![BigInt::zero(); reduced.len()];
    for j in (0..reduced.len()).rev() {
        let c = &reduced[j];
        let num = c.numer() * &scale;
        debug_assert!((&num % c.denom()).is_zero());
        scaled[j] = num / c.denom();
        scale *= &d_lcm;
    }
    q.extend(scaled);

    let mut found: Vec<(BigInt, usize)> = Vec::new();
    let constant = q[0].magnitude().clone();
    let mut candidates: Vec<BigInt> = Vec::new();
    for div in positive_divisors(&constant) {
        candidates.push(-BigInt::from(div.clone()));
        candidates.push(BigInt::from(div));
    }
    candidates.sort();
    for r in candidates {
        if q.len() == 1 {
            break;
        }
        let mut mult = 0;
        while q.len() > 1 && eval_integer(&q, &r).is_zero() {
            q = deflate_integer(&q, &r);
            mult += 1;
        }
        if mult > 0 {
            found.push((r, mult));
        }
    }
    for (r, mult) in found {
        roots.push((Rat::new(r, d_lcm.clone()), mult));
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    let total: usize = roots.iter().map(|(_, m)| m).sum();
    (roots, total == deg)
}
