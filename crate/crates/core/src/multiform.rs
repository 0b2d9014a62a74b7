//! Sparse exact arithmetic for homogeneous forms in d direction variables.
//!
//! A `MultiForm` is an element of Sym^e of a d-dimensional space, stored as
//! a map from exponent vectors to nonzero rational coefficients in graded
//! lexicographic order, so equality is structural. `BasePoint` bundles the
//! tuple (c_1,...,c_n) with deg c_i = i. Symmetric-function utilities
//! (elementary forms of a multiset of linear forms, Newton power sums) and
//! the rank test for quadratics live here too.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::linalg::{rref, Matrix};
use crate::rational::{exact_sqrt, Rat};

/// Exponent vector of a single term; ordered by total degree, then
/// lexicographically with the first variable most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn total_degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Homogeneous polynomial of fixed degree in a fixed number of variables.
/// No zero coefficients are stored; the zero form keeps its degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiForm {
    vars: usize,
    degree: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiForm {
    pub fn zero(vars: usize, degree: usize) -> Self {
        assert!(vars > 0, "at least one variable");
        MultiForm {
            vars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: Rat) -> Self {
        let mut f = MultiForm::zero(vars, 0);
        if !c.is_zero() {
            f.terms.insert(Monomial::new(vec![0; vars]), c);
        }
        f
    }

    /// The linear form with the given coefficients, one per variable.
    pub fn linear(coeffs: &[Rat]) -> Self {
        let vars = coeffs.len();
        let mut f = MultiForm::zero(vars, 1);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut exps = vec![0; vars];
                exps[i] = 1;
                f.terms.insert(Monomial::new(exps), c.clone());
            }
        }
        f
    }

    pub fn from_terms(
        vars: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Rat)>,
    ) -> Self {
        let mut f = MultiForm::zero(vars, degree);
        for (exps, coef) in terms {
            assert_eq!(exps.len(), vars, "exponent vector length");
            let m = Monomial::new(exps);
            assert_eq!(m.total_degree(), degree, "term degree");
            f.insert(m, coef);
        }
        f
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order (leading term first).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms
            .get(&Monomial::new(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    fn insert(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MultiForm) -> MultiForm {
        assert_eq!(self.vars, other.vars, "variable count mismatch");
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiForm) -> MultiForm {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiForm {
        let mut out = MultiForm::zero(self.vars, self.degree);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> MultiForm {
        let mut out = MultiForm::zero(self.vars, self.degree);
        if s.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &MultiForm) -> MultiForm {
        assert_eq!(self.vars, other.vars, "variable count mismatch");
        let mut out = MultiForm::zero(self.vars, self.degree + other.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> MultiForm {
        let mut out = MultiForm::constant(self.vars, Rat::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, v: &[Rat]) -> Rat {
        assert_eq!(v.len(), self.vars, "evaluation point dimension mismatch");
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in v.iter().zip(m.exps()) {
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }

    /// The composite f∘h, i.e. x ↦ f(h·x); variable i maps to the linear
    /// form with coefficients h[i][0..d].
    pub fn substitute(&self, h: &Matrix) -> MultiForm {
        assert_eq!(h.size(), self.vars, "substitution matrix size mismatch");
        let d = self.vars;
        let images: Vec<MultiForm> = (0..d)
            .map(|i| {
                let coeffs: Vec<Rat> = (0..d).map(|j| h.at(i, j).clone()).collect();
                MultiForm::linear(&coeffs)
            })
            .collect();
        let mut out = MultiForm::zero(d, self.degree);
        for (m, c) in &self.terms {
            let mut term = MultiForm::constant(d, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&images[i]);
                }
            }
            for (mm, cc) in term.terms {
                out.insert(mm, cc);
            }
        }
        out
    }
}

impl fmt::Display for MultiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            let (sign, mag) = if c < &Rat::zero() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let is_const_term = m.total_degree() == 0;
            if !mag.is_one() || is_const_term {
                write!(f, "{mag}")?;
                if !is_const_term {
                    write!(f, "*")?;
                }
            }
            let mut first_var = true;
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first_var {
                    write!(f, "*")?;
                }
                first_var = false;
                write!(f, "x{}", i + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// A point of the Hitchin base A = prod Sym^i: forms (c_1,...,c_n) in d
/// variables with deg c_i = i. Rank 0 (no forms) is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasePoint {
    d: usize,
    forms: Vec<MultiForm>,
}

impl BasePoint {
    pub fn new(d: usize, forms: Vec<MultiForm>) -> Self {
        assert!(d > 0, "dimension must be positive");
        for (i, f) in forms.iter().enumerate() {
            assert_eq!(f.vars(), d, "form variable count");
            assert_eq!(f.degree(), i + 1, "form degree must equal its index");
        }
        BasePoint { d, forms }
    }

    pub fn rank(&self) -> usize {
        self.forms.len()
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn forms(&self) -> &[MultiForm] {
        &self.forms
    }

    /// c_i for 1 ≤ i ≤ n.
    pub fn form(&self, i: usize) -> &MultiForm {
        &self.forms[i - 1]
    }
}

impl fmt::Display for BasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.forms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Elementary symmetric forms (e_1,...,e_n) of a multiset of linear forms,
/// by direct expansion: e_i is the sum over all i-element submultisets of
/// the product of their members.
pub fn elementary_symmetric_forms(
    linear_forms: &[MultiForm],
    multiplicities: &[usize],
) -> Result<BasePoint, Error> {
    assert_eq!(
        linear_forms.len(),
        multiplicities.len(),
        "one multiplicity per form"
    );
    assert!(!linear_forms.is_empty(), "at least one linear form");
    let d = linear_forms[0].vars();
    for f in linear_forms {
        if f.degree() != 1 {
            return Err(Error::Degree {
                context: "elementary_symmetric_forms",
                expected: 1,
                found: f.degree(),
            });
        }
        if f.vars() != d {
            return Err(Error::Dimension {
                context: "elementary_symmetric_forms",
                expected: d,
                found: f.vars(),
            });
        }
    }
    assert!(
        multiplicities.iter().all(|&m| m >= 1),
        "multiplicities must be positive"
    );
    let mut flat: Vec<&MultiForm> = Vec::new();
    for (f, &m) in linear_forms.iter().zip(multiplicities) {
        for _ in 0..m {
            flat.push(f);
        }
    }
    let n = flat.len();
    let mut forms = Vec::with_capacity(n);
    for i in 1..=n {
        let mut e_i = MultiForm::zero(d, i);
        let mut idx: Vec<usize> = (0..i).collect();
        loop {
            let mut prod = MultiForm::constant(d, Rat::one());
            for &k in &idx {
                prod = prod.mul(flat[k]);
            }
            e_i = e_i.add(&prod);
            if !next_combination(&mut idx, n) {
                break;
            }
        }
        forms.push(e_i);
    }
    Ok(BasePoint::new(d, forms))
}

/// Advance `idx` to the next size-|idx| combination of {0,...,n-1} in
/// lexicographic order; false when `idx` was already the last one.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let i = idx.len();
    let mut pos = i;
    while pos > 0 {
        pos -= 1;
        if idx[pos] < pos + n - i {
            idx[pos] += 1;
            for q in pos + 1..i {
                idx[q] = idx[q - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Newton power sums (p_1,...,p_n) from the elementary forms of `b`, via
/// p_k = c_1 p_{k-1} - c_2 p_{k-2} + ... + (-1)^(k-1) k c_k.
pub fn newton_power_sums(b: &BasePoint) -> Vec<MultiForm> {
    let d = b.dim();
    let n = b.rank();
    let mut p: Vec<MultiForm> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut acc = MultiForm::zero(d, k);
        for i in 1..k {
            let term = b.form(i).mul(&p[k - i - 1]);
            acc = if i % 2 == 1 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        let kck = b.form(k).scale(&Rat::from_integer(BigInt::from(k as i64)));
        acc = if k % 2 == 1 {
            acc.add(&kck)
        } else {
            acc.sub(&kck)
        };
        p.push(acc);
    }
    p
}

/// Outcome of the rank test on a quadratic form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankOneResult {
    /// Rank of the associated symmetric matrix.
    pub rank: usize,
    /// True iff rank ≤ 1, i.e. the form is a square over the closure.
    pub is_square_over_closure: bool,
    /// A rational linear form u with u² = q, when one exists.
    pub factor: Option<MultiForm>,
}

/// Rank test for a quadratic form q: q is a square of a linear form over
/// the algebraic closure iff its symmetric matrix has rank ≤ 1; a rational
/// factor is produced exactly when one exists.
pub fn rank_one_quadratic_test(q: &MultiForm) -> RankOneResult {
    assert_eq!(q.degree(), 2, "quadratic form expected");
    let d = q.vars();
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let s = Matrix::from_fn(d, |i, j| {
        let mut exps = vec![0u32; d];
        exps[i] += 1;
        exps[j] += 1;
        let c = q.coeff(&exps);
        if i == j {
            c
        } else {
            c * &half
        }
    });
    let mut rows: Vec<Vec<Rat>> = (0..d)
        .map(|r| (0..d).map(|c| s.at(r, c).clone()).collect())
        .collect();
    let rank = rref(&mut rows).len();
    let is_square = rank <= 1;
    let factor = if rank == 0 {
        Some(MultiForm::zero(d, 1))
    } else if rank == 1 {
        let j = (0..d)
            .find(|&j| !s.at(j, j).is_zero())
            .expect("rank-one symmetric matrix has a nonzero diagonal entry");
        exact_sqrt(s.at(j, j)).map(|root| {
            let coeffs: Vec<Rat> = (0..d).map(|i| s.at(i, j) / &root).collect();
            MultiForm::linear(&coeffs)
        })
    } else {
        None
    };
    RankOneResult {
        rank,
        is_square_over_closure: is_square,
        factor,
    }
}

/// Determinant of a square matrix of forms by Laplace expansion along the
/// first row. All entries must share the variable count; with homogeneous
/// entries of equal degree the result is homogeneous.
pub(crate) fn det_forms(mat: &[Vec<MultiForm>]) -> MultiForm {
    let k = mat.len();
    debug_assert!(mat.iter().all(|row| row.len() == k));
    if k == 1 {
        return mat[0][0].clone();
    }
    let d = mat[0][0].vars();
    let entry_deg = mat[0][0].degree();
    let mut acc = MultiForm::zero(d, entry_deg * k);
    for j in 0..k {
        if mat[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiForm>> = (1..k)
            .map(|r| {
                (0..k)
                    .filter(|&c| c != j)
                    .map(|c| mat[r][c].clone())
                    .collect()
            })
            .collect();
        let cofactor = mat[0][j].mul(&det_forms(&minor));
        acc = if j % 2 == 0 {
            acc.add(&cofactor)
        } else {
            acc.sub(&cofactor)
        };
    }
    acc
}
