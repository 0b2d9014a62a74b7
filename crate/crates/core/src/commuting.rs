//! d-tuples of n×n rational matrices and the polarization map.
//!
//! A `MatrixTuple` is any point of gl_n^d; a `CommutingTuple` certifies
//! pairwise commutation at construction and is the only input type for
//! spectral operations. Polarization sends a tuple to the coefficient
//! forms of det(u*I - (x_1 θ_1 + ... + x_d θ_d)), computed symbolically
//! over the multiform ring. Trace words, the trace identity, the
//! generalized Cayley-Hamilton check, the two group actions, and seeded
//! generation of split commuting tuples complete the module.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chow::ZeroCycle;
use crate::error::{CommuteWitness, Error};
use crate::linalg::Matrix;
use crate::multiform::{det_forms, BasePoint, MultiForm};
use crate::rational::Rat;

/// A d-tuple of n×n rational matrices, commuting or not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixTuple {
    n: usize,
    matrices: Vec<Matrix>,
}

impl MatrixTuple {
    pub fn new(matrices: Vec<Matrix>) -> Self {
        assert!(!matrices.is_empty(), "tuple must have at least one matrix");
        let n = matrices[0].size();
        assert!(
            matrices.iter().all(|m| m.size() == n),
            "all matrices must share the size"
        );
        MatrixTuple { n, matrices }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    /// θ_{j+1} (zero-based index).
    pub fn matrix(&self, j: usize) -> &Matrix {
        &self.matrices[j]
    }
}

/// A matrix tuple whose members pairwise commute, checked at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutingTuple {
    inner: MatrixTuple,
}

impl CommutingTuple {
    pub fn new(t: MatrixTuple) -> Result<Self, Error> {
        match check_commute(&t) {
            None => Ok(CommutingTuple { inner: t }),
            Some(w) => Err(Error::NotCommuting(w)),
        }
    }

    pub fn into_inner(self) -> MatrixTuple {
        self.inner
    }
}

impl Deref for CommutingTuple {
    type Target = MatrixTuple;

    fn deref(&self) -> &MatrixTuple {
        &self.inner
    }
}

/// First violation of pairwise commutation, if any: the least (i, j) with
/// a nonzero entry of [θ_i, θ_j], entry scanned in row-major order.
/// Indices in the witness are 1-based.
pub fn check_commute(t: &MatrixTuple) -> Option<CommuteWitness> {
    let d = t.d();
    let n = t.n();
    for i in 0..d {
        for j in i + 1..d {
            let a = t.matrix(i);
            let b = t.matrix(j);
            let comm = a.mul(b).sub(&b.mul(a));
            for r in 0..n {
                for c in 0..n {
                    if !comm.at(r, c).is_zero() {
                        return Some(CommuteWitness {
                            i: i + 1,
                            j: j + 1,
                            row: r + 1,
                            col: c + 1,
                            value: comm.at(r, c).clone(),
                        });
                    }
                }
            }
        }
    }
    None
}

/// Polarization: the base point (c_1,...,c_n) with
/// det(u*I - Σ_j x_j θ_j) = u^n - c_1 u^(n-1) + ... + (-1)^n c_n,
/// each c_i homogeneous of degree i in x_1,...,x_d.
///
/// The determinant is expanded symbolically over forms in d+1 variables
/// (the direction variables plus u) and sorted by the power of u.
pub fn polarize(t: &MatrixTuple) -> BasePoint {
    let n = t.n();
    let d = t.d();
    let entries: Vec<Vec<MultiForm>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let mut coeffs: Vec<Rat> =
                        (0..d).map(|j| -t.matrix(j).at(r, c).clone()).collect();
                    coeffs.push(if r == c { Rat::one() } else { Rat::zero() });
                    MultiForm::linear(&coeffs)
                })
                .collect()
        })
        .collect();
    let det = det_forms(&entries);
    let mut buckets: Vec<Vec<(Vec<u32>, Rat)>> = vec![Vec::new(); n];
    for (m, coef) in det.terms() {
        let u_pow = m.exps()[d] as usize;
        let i = n - u_pow;
        if i == 0 {
            debug_assert!(coef.is_one());
            continue;
        }
        let exps = m.exps()[..d].to_vec();
        let c = if i.is_multiple_of(2) {
            coef.clone()
        } else {
            -coef.clone()
        };
        buckets[i - 1].push((exps, c));
    }
    let forms = buckets
        .into_iter()
        .enumerate()
        .map(|(k, terms)| MultiForm::from_terms(d, k + 1, terms))
        .collect();
    BasePoint::new(d, forms)
}

/// Tr(θ_1^{a_1} ... θ_d^{a_d}), factors in index order.
pub fn trace_word(t: &MatrixTuple, a: &[u32]) -> Rat {
    assert_eq!(a.len(), t.d(), "one exponent per matrix");
    let mut prod = Matrix::identity(t.n());
    for (j, &e) in a.iter().enumerate() {
        if e > 0 {
            prod = prod.mul(&t.matrix(j).pow(e));
        }
    }
    prod.trace()
}

/// The trace identity: Tr(θ_1^{a_1}...θ_d^{a_d}) = Σ_x mult(x) Π_i x_i^{a_i}.
pub fn verify_trace_identity(t: &CommutingTuple, z: &ZeroCycle, a: &[u32]) -> Result<bool, Error> {
    if z.dim() != t.d() {
        return Err(Error::Dimension {
            context: "verify_trace_identity cycle dimension",
            expected: t.d(),
            found: z.dim(),
        });
    }
    if z.total_length() != t.n() {
        return Err(Error::Dimension {
            context: "verify_trace_identity cycle length",
            expected: t.n(),
            found: z.total_length(),
        });
    }
    assert_eq!(a.len(), t.d(), "one exponent per matrix");
    let lhs = trace_word(t, a);
    let mut rhs = Rat::zero();
    for (coords, mult) in z.points() {
        let mut term = Rat::from_integer(BigInt::from(*mult as i64));
        for (x, &e) in coords.iter().zip(a) {
            for _ in 0..e {
                term *= x;
            }
        }
        rhs += term;
    }
    Ok(lhs == rhs)
}

/// Result of the generalized Cayley-Hamilton check. A failing generator is
/// recorded as one exponent vector per cycle point, in cycle order: the
/// generator is Π_k Π_j (θ_j - x_{k,j} I)^{e_{k,j}} with Σ_j e_{k,j} = n_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChVerification {
    pub ok: bool,
    pub failing_generator: Option<Vec<Vec<u32>>>,
}

/// Check that every generator of Π_k m_{x_k}^{n_k} annihilates the tuple:
/// each product of degree-n_k monomials in the shifted matrices
/// (θ_j - x_{k,j} I) must be the zero matrix.
pub fn cayley_hamilton_verify(t: &CommutingTuple, z: &ZeroCycle) -> Result<ChVerification, Error> {
    if z.dim() != t.d() {
        return Err(Error::Dimension {
            context: "cayley_hamilton_verify cycle dimension",
            expected: t.d(),
            found: z.dim(),
        });
    }
    if z.total_length() != t.n() {
        return Err(Error::Dimension {
            context: "cayley_hamilton_verify cycle length",
            expected: t.n(),
            found: z.total_length(),
        });
    }
    let n = t.n();
    let d = t.d();
    // per point: all degree-n_k exponent vectors and their shifted products
    let mut point_gens: Vec<Vec<(Vec<u32>, Matrix)>> = Vec::new();
    for (coords, mult) in z.points() {
        let shifted: Vec<Matrix> = (0..d).map(|j| t.matrix(j).shift(&coords[j])).collect();
        let mut gens = Vec::new();
        for e in compositions(*mult as u32, d) {
            let mut m = Matrix::identity(n);
            for (j, &p) in e.iter().enumerate() {
                if p > 0 {
                    m = m.mul(&shifted[j].pow(p));
                }
            }
            gens.push((e, m));
        }
        point_gens.push(gens);
    }
    // cartesian product across points
    let mut choice = vec![0usize; point_gens.len()];
    loop {
        let mut prod = Matrix::identity(n);
        for (k, &c) in choice.iter().enumerate() {
            prod = prod.mul(&point_gens[k][c].1);
        }
        if !prod.is_zero() {
            let failing = choice
                .iter()
                .enumerate()
                .map(|(k, &c)| point_gens[k][c].0.clone())
                .collect();
            return Ok(ChVerification {
                ok: false,
                failing_generator: Some(failing),
            });
        }
        let mut pos = choice.len();
        loop {
            if pos == 0 {
                return Ok(ChVerification {
                    ok: true,
                    failing_generator: None,
                });
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < point_gens[pos].len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// All vectors of `len` non-negative integers summing to `total`, in
/// lexicographic order.
fn compositions(total: u32, len: usize) -> Vec<Vec<u32>> {
    fn rec(total: u32, len: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if len == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            rec(total - first, len - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, len, &mut Vec::new(), &mut out);
    out
}

/// The adjoint action: (g θ_1 g^{-1}, ..., g θ_d g^{-1}).
pub fn conjugate_tuple(t: &MatrixTuple, g: &Matrix) -> Result<MatrixTuple, Error> {
    if g.size() != t.n() {
        return Err(Error::Dimension {
            context: "conjugate_tuple",
            expected: t.n(),
            found: g.size(),
        });
    }
    let gi = g.inverse().ok_or(Error::Singular)?;
    Ok(MatrixTuple::new(
        t.matrices().iter().map(|m| g.mul(m).mul(&gi)).collect(),
    ))
}

/// The GL_d action on directions: θ'_j = Σ_i h_{ij} θ_i, so that
/// polarize(gld_transform(t, h)) = mf substitution by h of polarize(t).
pub fn gld_transform(t: &MatrixTuple, h: &Matrix) -> Result<MatrixTuple, Error> {
    let d = t.d();
    if h.size() != d {
        return Err(Error::Dimension {
            context: "gld_transform",
            expected: d,
            found: h.size(),
        });
    }
    if h.inverse().is_none() {
        return Err(Error::Singular);
    }
    let n = t.n();
    let mats = (0..d)
        .map(|j| {
            let mut acc = Matrix::zero(n);
            for i in 0..d {
                acc = acc.add(&t.matrix(i).scale(h.at(i, j)));
            }
            acc
        })
        .collect();
    Ok(MatrixTuple::new(mats))
}

/// Shape of the generated commuting tuples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenProfile {
    /// Simultaneously diagonalizable with small integer spectra.
    Diagonal,
    /// Polynomials in a single conjugated Jordan-form matrix.
    Jordan,
    /// Polynomials in a single conjugated split diagonalizable matrix.
    Polynomial,
}

impl fmt::Display for GenProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GenProfile::Diagonal => "diagonal",
            GenProfile::Jordan => "jordan",
            GenProfile::Polynomial => "polynomial",
        };
        write!(f, "{s}")
    }
}

fn rand_rat(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rat {
    Rat::from_integer(BigInt::from(rng.random_range(lo..=hi)))
}

/// Random unimodular matrix built from a few integer shears.
fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let mut g = Matrix::identity(n);
    if n == 1 {
        return g;
    }
    for _ in 0..2 * n {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = rand_rat(rng, -2, 2);
        // row_i += c * row_j
        for col in 0..n {
            let v = g.at(i, col) + &c * g.at(j, col);
            g.set(i, col, v);
        }
    }
    g
}

fn poly_of_matrix(coeffs: &[Rat], m: &Matrix) -> Matrix {
    let n = m.size();
    let mut acc = Matrix::zero(n);
    for c in coeffs.iter().rev() {
        acc = acc.mul(m);
        for i in 0..n {
            let v = acc.at(i, i) + c;
            acc.set(i, i, v);
        }
    }
    acc
}

/// Deterministic generator of split commuting tuples; pure in
/// (n, d, seed, profile). Bounds: n ≤ 8, d ≤ 4.
pub fn random_commuting(
    n: usize,
    d: usize,
    seed: u64,
    profile: GenProfile,
) -> Result<CommutingTuple, Error> {
    if n == 0 || n > 8 {
        return Err(Error::Bounds {
            what: "matrix size n",
            max: 8,
            found: n,
        });
    }
    if d == 0 || d > 4 {
        return Err(Error::Bounds {
            what: "tuple length d",
            max: 4,
            found: d,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_unimodular(&mut rng, n);
    let gi = g.inverse().expect("unimodular matrices are invertible");
    let conj = |m: &Matrix| g.mul(m).mul(&gi);
    let mats: Vec<Matrix> = match profile {
        GenProfile::Diagonal => (0..d)
            .map(|_| {
                let diag: Vec<Rat> = (0..n).map(|_| rand_rat(&mut rng, -3, 3)).collect();
                conj(&Matrix::diagonal(&diag))
            })
            .collect(),
        GenProfile::Jordan => {
            let mut jordan = Matrix::zero(n);
            let mut row = 0;
            while row < n {
                let size = rng.random_range(1..=n - row);
                let lambda = rand_rat(&mut rng, -3, 3);
                for k in 0..size {
                    jordan.set(row + k, row + k, lambda.clone());
                    if k + 1 < size {
                        jordan.set(row + k, row + k + 1, Rat::one());
                    }
                }
                row += size;
            }
            (0..d)
                .map(|_| {
                    let coeffs: Vec<Rat> = (0..3).map(|_| rand_rat(&mut rng, -2, 2)).collect();
                    conj(&poly_of_matrix(&coeffs, &jordan))
                })
                .collect()
        }
        GenProfile::Polynomial => {
            let diag: Vec<Rat> = (0..n).map(|_| rand_rat(&mut rng, -3, 3)).collect();
            let base = conj(&Matrix::diagonal(&diag));
            (0..d)
                .map(|_| {
                    let coeffs: Vec<Rat> = (0..3).map(|_| rand_rat(&mut rng, -2, 2)).collect();
                    poly_of_matrix(&coeffs, &base)
                })
                .collect()
        }
    };
    CommutingTuple::new(MatrixTuple::new(mats))
}
