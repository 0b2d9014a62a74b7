//! Zero-cycles on A^d and the Chow side of the correspondence.
//!
//! `chow_point` sends a cycle to its elementary symmetric multiforms,
//! `spectral_data` extracts the cycle of a commuting tuple from its joint
//! generalized eigenspace decomposition, `b_membership` decides whether a
//! base point lies in the image of the Chow variety (with certificates),
//! `attach_point` realizes the one-point attachment equations, and
//! `f_v_poly` / `cayley_fiber_length` expose the Cayley fiber through its
//! ideal generators and its length.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::commuting::{polarize, CommutingTuple};
use crate::error::Error;
use crate::linalg::{char_poly, generalized_eigenspace, rational_roots, solve_in_span, Matrix};
use crate::multiform::{
    elementary_symmetric_forms, rank_one_quadratic_test, BasePoint, Monomial, MultiForm,
};
use crate::rational::Rat;

/// A 0-cycle on A^d: finitely many distinct rational points with positive
/// multiplicities, kept in lexicographic coordinate order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZeroCycle {
    d: usize,
    points: Vec<(Vec<Rat>, usize)>,
}

impl ZeroCycle {
    /// Build a cycle from (coordinates, multiplicity) pairs; duplicate
    /// coordinate vectors are merged and the result is sorted.
    pub fn new(d: usize, points: Vec<(Vec<Rat>, usize)>) -> Self {
        assert!(d > 0, "dimension must be positive");
        assert!(!points.is_empty(), "a cycle has at least one point");
        let mut map: BTreeMap<Vec<Rat>, usize> = BTreeMap::new();
        for (coords, mult) in points {
            assert_eq!(coords.len(), d, "coordinate dimension");
            assert!(mult >= 1, "multiplicities are positive");
            *map.entry(coords).or_insert(0) += mult;
        }
        ZeroCycle {
            d,
            points: map.into_iter().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn points(&self) -> &[(Vec<Rat>, usize)] {
        &self.points
    }

    /// Total length n = sum of multiplicities.
    pub fn total_length(&self) -> usize {
        self.points.iter().map(|(_, m)| m).sum()
    }

    /// The cycle plus one more point (multiset union).
    pub fn add_point(&self, coords: Vec<Rat>, mult: usize) -> ZeroCycle {
        let mut pts = self.points.clone();
        pts.push((coords, mult));
        ZeroCycle::new(self.d, pts)
    }
}

impl fmt::Display for ZeroCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (coords, mult)) in self.points.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (i, c) in coords.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "):{mult}")?;
        }
        write!(f, "}}")
    }
}

/// Verdict of the B-membership decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipResult {
    /// The unique cycle whose chow_point equals the queried base point.
    Member(ZeroCycle),
    /// Definitive rejection, with a description of the violated condition.
    NotMember(String),
    /// Some direction polynomial does not split over the rationals
    /// (1-based direction index); no sound verdict exists without field
    /// extensions.
    Indeterminate(usize),
}

/// Report of the two routes from a commuting tuple to a base point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdReport {
    pub cycle: ZeroCycle,
    pub base_from_cycle: BasePoint,
    pub base_from_polarization: BasePoint,
    pub equal: bool,
}

/// The Chow point of a cycle: elementary symmetric multiforms of the
/// linear forms of its points, with multiplicity.
pub fn chow_point(z: &ZeroCycle) -> BasePoint {
    let forms: Vec<MultiForm> = z
        .points()
        .iter()
        .map(|(coords, _)| MultiForm::linear(coords))
        .collect();
    let mults: Vec<usize> = z.points().iter().map(|(_, m)| *m).collect();
    elementary_symmetric_forms(&forms, &mults).expect("cycle points give valid linear forms")
}

fn restrict(m: &Matrix, basis: &[Vec<Rat>]) -> Matrix {
    let images: Vec<Vec<Rat>> = basis.iter().map(|b| m.mul_vec(b)).collect();
    let sol =
        solve_in_span(basis, &images).expect("commuting matrices preserve generalized eigenspaces");
    Matrix::from_fn(basis.len(), |r, c| sol[c][r].clone())
}

fn split_level(
    mats: &[Matrix],
    level: usize,
    prefix: &mut Vec<Rat>,
    out: &mut Vec<(Vec<Rat>, usize)>,
) -> Result<(), Error> {
    let (first, rest) = mats.split_first().expect("at least one matrix per level");
    let (roots, splits) = rational_roots(&char_poly(first));
    if !splits {
        return Err(Error::NonSplit {
            direction: level + 1,
        });
    }
    for (lambda, _) in roots {
        let basis = generalized_eigenspace(first, &lambda);
        prefix.push(lambda);
        if rest.is_empty() {
            out.push((prefix.clone(), basis.len()));
        } else {
            let restricted: Vec<Matrix> = rest.iter().map(|m| restrict(m, &basis)).collect();
            split_level(&restricted, level + 1, prefix, out)?;
        }
        prefix.pop();
    }
    Ok(())
}

/// The spectral datum z(θ): split into generalized eigenspaces of θ_1,
/// restrict the remaining matrices (they preserve each summand since they
/// commute), recurse coordinate by coordinate; the multiplicity of a point
/// is the dimension of its joint subspace.
pub fn spectral_data(t: &CommutingTuple) -> Result<ZeroCycle, Error> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    split_level(t.matrices(), 0, &mut prefix, &mut out)?;
    Ok(ZeroCycle::new(t.d(), out))
}

/// Attach one point to a base point of rank n-1: with c'_0 = 1,
/// c_i = c'_i + c'_{i-1} * l_x for i < n and c_n = c'_{n-1} * l_x.
pub fn attach_point(b: &BasePoint, x: &[Rat]) -> Result<BasePoint, Error> {
    let d = b.dim();
    if x.len() != d {
        return Err(Error::Dimension {
            context: "attach_point",
            expected: d,
            found: x.len(),
        });
    }
    let ell = MultiForm::linear(x);
    let n = b.rank() + 1;
    let mut forms = Vec::with_capacity(n);
    for i in 1..=n {
        let lower = if i == 1 {
            ell.clone()
        } else {
            b.form(i - 1).mul(&ell)
        };
        let f = if i < n { b.form(i).add(&lower) } else { lower };
        forms.push(f);
    }
    Ok(BasePoint::new(d, forms))
}

fn next_permutation(v: &mut [Rat]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Advance the odometer of column permutations; each exhausted column is
/// reset to sorted order and the next one advances. False when all
/// sequences are exhausted (or there are no columns).
fn advance_assembly(cols: &mut [Vec<Rat>]) -> bool {
    for col in cols.iter_mut().rev() {
        if next_permutation(col) {
            return true;
        }
        col.sort();
    }
    false
}

/// Decide membership of `b` in the image B of the Chow variety.
///
/// Per direction e_j the univariate specialization
/// P_j(u) = u^n - c_1(e_j) u^(n-1) + ... + (-1)^n c_n(e_j)
/// must split over the rationals, else Indeterminate(j). Any realizing
/// cycle has its j-th coordinates among the roots of P_j, so enumerating
/// assemblies of the per-direction root multisets (first column fixed
/// sorted, the rest over multiset permutations) is exhaustive, and a
/// definitive NotMember follows when none matches. For n = 2 the rank of
/// c_1^2 - 4 c_2 gives a fast certificate. Bounds: n ≤ 6, d ≤ 3.
pub fn b_membership(b: &BasePoint) -> Result<MembershipResult, Error> {
    let n = b.rank();
    let d = b.dim();
    assert!(n >= 1, "membership needs rank at least 1");
    if n > 6 {
        return Err(Error::Bounds {
            what: "b_membership rank n",
            max: 6,
            found: n,
        });
    }
    if d > 3 {
        return Err(Error::Bounds {
            what: "b_membership dimension d",
            max: 3,
            found: d,
        });
    }

    // (i) per-direction root multisets
    let mut columns: Vec<Vec<Rat>> = Vec::with_capacity(d);
    for j in 0..d {
        let e_j: Vec<Rat> = (0..d)
            .map(|i| if i == j { Rat::one() } else { Rat::zero() })
            .collect();
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = Rat::one();
        for i in 1..=n {
            let v = b.form(i).eval(&e_j);
            coeffs[n - i] = if i % 2 == 0 { v } else { -v };
        }
        let (roots, splits) = rational_roots(&crate::linalg::UniPoly::new(coeffs));
        if !splits {
            return Ok(MembershipResult::Indeterminate(j + 1));
        }
        let mut flat = Vec::with_capacity(n);
        for (r, m) in roots {
            for _ in 0..m {
                flat.push(r.clone());
            }
        }
        columns.push(flat);
    }

    // (ii) fast certificate for n = 2
    if n == 2 {
        let c1 = b.form(1);
        let disc = c1
            .mul(c1)
            .sub(&b.form(2).scale(&Rat::from_integer(BigInt::from(4))));
        let r = rank_one_quadratic_test(&disc);
        if r.rank > 1 {
            return Ok(MembershipResult::NotMember(format!(
                "rank(c1^2-4c2) = {}",
                r.rank
            )));
        }
    }

    // (iii) enumerate assemblies; first column stays sorted, the others
    // run over all multiset permutations
    let mut candidates: BTreeSet<ZeroCycle> = BTreeSet::new();
    let first = columns[0].clone();
    let mut others: Vec<Vec<Rat>> = columns[1..].to_vec();
    loop {
        let pts: Vec<(Vec<Rat>, usize)> = (0..n)
            .map(|k| {
                let mut coords = Vec::with_capacity(d);
                coords.push(first[k].clone());
                for col in &others {
                    coords.push(col[k].clone());
                }
                (coords, 1)
            })
            .collect();
        candidates.insert(ZeroCycle::new(d, pts));
        if !advance_assembly(&mut others) {
            break;
        }
    }

    for z in &candidates {
        if &chow_point(z) == b {
            return Ok(MembershipResult::Member(z.clone()));
        }
    }

    // (iv) exhausted
    Ok(MembershipResult::NotMember(String::from(
        "no cycle over the per-direction rational roots matches",
    )))
}

/// Consistency of the two routes to the base: the Chow point of the
/// spectral datum against the polarization, compared form by form.
pub fn sd_consistency(t: &CommutingTuple) -> Result<SdReport, Error> {
    let cycle = spectral_data(t)?;
    let base_from_cycle = chow_point(&cycle);
    let base_from_polarization = polarize(t);
    let equal = base_from_cycle == base_from_polarization;
    Ok(SdReport {
        cycle,
        base_from_cycle,
        base_from_polarization,
        equal,
    })
}

/// Inhomogeneous polynomial in the d ambient coordinates, used for the
/// Cayley fiber generators f_v. Sparse exponent-vector table, graded-lex
/// term order, no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    vars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(vars: usize) -> Self {
        assert!(vars > 0, "at least one variable");
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(vars);
        p.insert(Monomial::new(vec![0; vars]), c);
        p
    }

    /// The affine form sum_i coeffs[i] x_i + constant.
    pub fn affine(coeffs: &[Rat], constant: Rat) -> Self {
        let vars = coeffs.len();
        let mut p = Poly::constant(vars, constant);
        for (i, c) in coeffs.iter().enumerate() {
            let mut exps = vec![0; vars];
            exps[i] = 1;
            p.insert(Monomial::new(exps), c.clone());
        }
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// Terms in descending graded-lex order.
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

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.vars, other.vars, "variable count mismatch");
        let mut out = Poly::zero(self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<u32> = ma
                    .exps()
                    .iter()
                    .zip(mb.exps())
                    .map(|(a, b)| a + b)
                    .collect();
                out.insert(Monomial::new(exps), ca * cb);
            }
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

    /// Directional derivative along v: sum_i v_i ∂/∂x_i.
    pub fn directional_derivative(&self, v: &[Rat]) -> Poly {
        assert_eq!(v.len(), self.vars, "direction dimension mismatch");
        let mut out = Poly::zero(self.vars);
        for (m, c) in &self.terms {
            for (i, vi) in v.iter().enumerate() {
                if vi.is_zero() || m.exps()[i] == 0 {
                    continue;
                }
                let mut exps = m.exps().to_vec();
                let e = exps[i];
                exps[i] -= 1;
                out.insert(
                    Monomial::new(exps),
                    c * vi * Rat::from_integer(BigInt::from(e as i64)),
                );
            }
        }
        out
    }
}

impl fmt::Display for Poly {
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

/// The Cayley fiber generator f_v(x) = prod_k (v(x) - v(x_k))^(mult_k),
/// an inhomogeneous polynomial in the ambient coordinates.
pub fn f_v_poly(z: &ZeroCycle, v: &[Rat]) -> Result<Poly, Error> {
    let d = z.dim();
    if v.len() != d {
        return Err(Error::Dimension {
            context: "f_v_poly",
            expected: d,
            found: v.len(),
        });
    }
    let mut out = Poly::constant(d, Rat::one());
    for (coords, mult) in z.points() {
        let mut value = Rat::zero();
        for (vi, xi) in v.iter().zip(coords) {
            value += vi * xi;
        }
        let factor = Poly::affine(v, -value);
        for _ in 0..*mult {
            out = out.mul(&factor);
        }
    }
    Ok(out)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Length of the Cayley fiber over the cycle and its flatness: each point
/// contributes the number of monomials of degree < n_i in d variables,
/// binomial(n_i - 1 + d, d); the fiber is flat iff the total equals n.
pub fn cayley_fiber_length(z: &ZeroCycle) -> (usize, bool) {
    let d = z.dim();
    let length: usize = z.points().iter().map(|(_, m)| binomial(m - 1 + d, d)).sum();
    (length, length == z.total_length())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commuting::MatrixTuple;
    use crate::rational::rat;

    fn pt(coords: &[i64], mult: usize) -> (Vec<Rat>, usize) {
        (coords.iter().map(|&c| rat(c)).collect(), mult)
    }

    fn cyc(pts: &[(&[i64], usize)]) -> ZeroCycle {
        let d = pts[0].0.len();
        ZeroCycle::new(d, pts.iter().map(|(c, m)| pt(c, *m)).collect())
    }

    fn lin(coeffs: &[i64]) -> MultiForm {
        MultiForm::linear(&coeffs.iter().map(|&c| rat(c)).collect::<Vec<_>>())
    }

    fn q2(ss: i64, st: i64, tt: i64) -> MultiForm {
        MultiForm::from_terms(
            2,
            2,
            [
                (vec![2, 0], rat(ss)),
                (vec![1, 1], rat(st)),
                (vec![0, 2], rat(tt)),
            ],
        )
    }

    fn diag_pair() -> CommutingTuple {
        CommutingTuple::new(MatrixTuple::new(vec![
            Matrix::diagonal(&[rat(1), rat(2)]),
            Matrix::diagonal(&[rat(3), rat(4)]),
        ]))
        .unwrap()
    }

    fn jordan_pair() -> CommutingTuple {
        CommutingTuple::new(MatrixTuple::new(vec![
            Matrix::from_i64_rows(&[&[1, 1], &[0, 1]]),
            Matrix::from_i64_rows(&[&[2, 3], &[0, 2]]),
        ]))
        .unwrap()
    }

    #[test]
    fn cycle_canonicalization_merges_and_sorts() {
        let z = ZeroCycle::new(2, vec![pt(&[2, 4], 1), pt(&[1, 3], 1), pt(&[2, 4], 2)]);
        assert_eq!(z.points(), &[pt(&[1, 3], 1), pt(&[2, 4], 3)]);
        assert_eq!(z.total_length(), 4);
    }

    #[test]
    fn chow_point_of_two_simple_points() {
        let b = chow_point(&cyc(&[(&[1, 3], 1), (&[2, 4], 1)]));
        assert_eq!(b.form(1), &lin(&[3, 7]));
        assert_eq!(b.form(2), &q2(2, 10, 12));
    }

    #[test]
    fn chow_point_of_origin_with_multiplicity() {
        let b = chow_point(&cyc(&[(&[0, 0], 2)]));
        assert!(b.form(1).is_zero());
        assert!(b.form(2).is_zero());
    }

    #[test]
    fn chow_point_of_double_point() {
        let b = chow_point(&cyc(&[(&[1, 2], 2)]));
        assert_eq!(b.form(1), &lin(&[2, 4]));
        assert_eq!(b.form(2), &q2(1, 4, 4));
    }

    #[test]
    fn spectral_data_of_diag_pair() {
        let z = spectral_data(&diag_pair()).unwrap();
        assert_eq!(z, cyc(&[(&[1, 3], 1), (&[2, 4], 1)]));
    }

    #[test]
    fn spectral_data_of_jordan_pair() {
        let z = spectral_data(&jordan_pair()).unwrap();
        assert_eq!(z, cyc(&[(&[1, 2], 2)]));
    }

    #[test]
    fn spectral_data_reports_unsplit_direction() {
        let t = CommutingTuple::new(MatrixTuple::new(vec![
            Matrix::from_i64_rows(&[&[0, 1], &[2, 0]]),
            Matrix::identity(2),
        ]))
        .unwrap();
        assert!(matches!(
            spectral_data(&t),
            Err(Error::NonSplit { direction: 1 })
        ));
    }

    #[test]
    fn spectral_data_needs_second_direction_to_separate() {
        // theta_1 scalar, theta_2 diagonal: the split happens at level 2
        let t = CommutingTuple::new(MatrixTuple::new(vec![
            Matrix::identity(2),
            Matrix::diagonal(&[rat(5), rat(7)]),
        ]))
        .unwrap();
        let z = spectral_data(&t).unwrap();
        assert_eq!(z, cyc(&[(&[1, 5], 1), (&[1, 7], 1)]));
    }

    #[test]
    fn attach_point_d1() {
        let b = BasePoint::new(1, vec![lin(&[5])]);
        let b2 = attach_point(&b, &[rat(3)]).unwrap();
        assert_eq!(b2.form(1), &lin(&[8]));
        assert_eq!(
            b2.form(2),
            &MultiForm::from_terms(1, 2, [(vec![2], rat(15))])
        );
    }

    #[test]
    fn attach_point_d2_zero_base() {
        let b = BasePoint::new(2, vec![MultiForm::zero(2, 1)]);
        let b2 = attach_point(&b, &[rat(1), rat(1)]).unwrap();
        assert_eq!(b2.form(1), &lin(&[1, 1]));
        assert!(b2.form(2).is_zero());
    }

    #[test]
    fn attach_point_to_rank_zero() {
        let b = BasePoint::new(2, vec![]);
        let b2 = attach_point(&b, &[rat(1), rat(2)]).unwrap();
        assert_eq!(b2.rank(), 1);
        assert_eq!(b2.form(1), &lin(&[1, 2]));
    }

    #[test]
    fn attach_point_matches_chow_union() {
        let z = cyc(&[(&[1, 3], 1), (&[2, 4], 1)]);
        let x = vec![rat(-1), rat(2)];
        let lhs = chow_point(&z.add_point(x.clone(), 1));
        let rhs = attach_point(&chow_point(&z), &x).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn membership_recovers_simple_cycle() {
        let b = BasePoint::new(2, vec![lin(&[1, 1]), MultiForm::zero(2, 2)]);
        let r = b_membership(&b).unwrap();
        let expected = cyc(&[(&[0, 0], 1), (&[1, 1], 1)]);
        assert_eq!(r, MembershipResult::Member(expected.clone()));
        // oracle: enumerate all 2-point cycles over {0,1}^2 and check that
        // exactly this one hits b
        let mut matches = Vec::new();
        let vals = [0i64, 1];
        let mut singles = Vec::new();
        for &a in &vals {
            for &bb in &vals {
                singles.push(vec![rat(a), rat(bb)]);
            }
        }
        for i in 0..singles.len() {
            for j in i..singles.len() {
                let z = ZeroCycle::new(2, vec![(singles[i].clone(), 1), (singles[j].clone(), 1)]);
                if chow_point(&z) == b {
                    matches.push(z);
                }
            }
        }
        assert_eq!(matches, vec![expected]);
    }

    #[test]
    fn membership_rejects_with_rank_certificate() {
        let st = MultiForm::from_terms(2, 2, [(vec![1, 1], rat(-1))]);
        let b = BasePoint::new(2, vec![MultiForm::zero(2, 1), st]);
        match b_membership(&b).unwrap() {
            MembershipResult::NotMember(cert) => {
                assert_eq!(cert, "rank(c1^2-4c2) = 2");
            }
            other => panic!("expected NotMember, got {other:?}"),
        }
    }

    #[test]
    fn membership_indeterminate_on_unsplit_direction() {
        let b = BasePoint::new(2, vec![MultiForm::zero(2, 1), q2(-2, 0, 0)]);
        assert_eq!(
            b_membership(&b).unwrap(),
            MembershipResult::Indeterminate(1)
        );
    }

    #[test]
    fn membership_round_trips_a_fat_cycle() {
        let z = cyc(&[(&[1, 2], 2), (&[-1, 0], 1)]);
        let r = b_membership(&chow_point(&z)).unwrap();
        assert_eq!(r, MembershipResult::Member(z));
    }

    #[test]
    fn membership_enforces_bounds() {
        let forms: Vec<MultiForm> = (1..=7).map(|i| MultiForm::zero(2, i)).collect();
        let b = BasePoint::new(2, forms);
        assert!(matches!(b_membership(&b), Err(Error::Bounds { .. })));
    }

    #[test]
    fn sd_consistency_on_diag_pair() {
        let r = sd_consistency(&diag_pair()).unwrap();
        assert!(r.equal);
        assert_eq!(r.base_from_cycle, r.base_from_polarization);
    }

    #[test]
    fn sd_consistency_on_jordan_pair() {
        let r = sd_consistency(&jordan_pair()).unwrap();
        assert!(r.equal);
        assert_eq!(r.base_from_cycle.form(1), &lin(&[2, 4]));
        assert_eq!(r.base_from_cycle.form(2), &q2(1, 4, 4));
    }

    #[test]
    fn f_v_on_two_points_along_e1() {
        let z = cyc(&[(&[0, 0], 1), (&[1, 1], 1)]);
        let f = f_v_poly(&z, &[rat(1), rat(0)]).unwrap();
        // x1 (x1 - 1) = x1^2 - x1
        assert_eq!(f.coeff(&[2, 0]), rat(1));
        assert_eq!(f.coeff(&[1, 0]), rat(-1));
        assert!(f.coeff(&[0, 1]).is_zero());
        assert_eq!(f.total_degree(), 2);
    }

    #[test]
    fn f_v_on_two_points_along_diagonal() {
        let z = cyc(&[(&[0, 0], 1), (&[1, 1], 1)]);
        let f = f_v_poly(&z, &[rat(1), rat(1)]).unwrap();
        // (x1 + x2)(x1 + x2 - 2)
        assert_eq!(f.coeff(&[2, 0]), rat(1));
        assert_eq!(f.coeff(&[1, 1]), rat(2));
        assert_eq!(f.coeff(&[0, 2]), rat(1));
        assert_eq!(f.coeff(&[1, 0]), rat(-2));
        assert_eq!(f.coeff(&[0, 1]), rat(-2));
        assert!(f.coeff(&[0, 0]).is_zero());
    }

    #[test]
    fn f_v_on_double_point() {
        let z = cyc(&[(&[1, 2], 2)]);
        let f = f_v_poly(&z, &[rat(1), rat(0)]).unwrap();
        // (x1 - 1)^2
        assert_eq!(f.coeff(&[2, 0]), rat(1));
        assert_eq!(f.coeff(&[1, 0]), rat(-2));
        assert_eq!(f.coeff(&[0, 0]), rat(1));
    }

    #[test]
    fn f_v_vanishes_at_cycle_points() {
        let z = cyc(&[(&[1, 2], 2), (&[-1, 0], 1)]);
        let v = [rat(2), rat(-3)];
        let f = f_v_poly(&z, &v).unwrap();
        for (coords, _) in z.points() {
            assert!(f.eval(coords).is_zero());
        }
    }

    #[test]
    fn f_v_multiplicity_via_directional_derivatives() {
        let z = cyc(&[(&[1, 2], 2), (&[-1, 0], 1)]);
        let v = [rat(1), rat(1)];
        let f = f_v_poly(&z, &v).unwrap();
        let df = f.directional_derivative(&v);
        let ddf = df.directional_derivative(&v);
        let double = vec![rat(1), rat(2)];
        assert!(f.eval(&double).is_zero());
        assert!(df.eval(&double).is_zero());
        assert!(!ddf.eval(&double).is_zero());
        let simple = vec![rat(-1), rat(0)];
        assert!(f.eval(&simple).is_zero());
        assert!(!df.eval(&simple).is_zero());
    }

    #[test]
    fn fiber_length_multiplicity_free_is_flat() {
        let z = cyc(&[(&[1, 3], 1), (&[2, 4], 1)]);
        assert_eq!(cayley_fiber_length(&z), (2, true));
    }

    #[test]
    fn fiber_length_double_point_is_three() {
        let z = cyc(&[(&[1, 2], 2)]);
        assert_eq!(cayley_fiber_length(&z), (3, false));
    }

    #[test]
    fn fiber_length_triple_point_is_six() {
        let z = cyc(&[(&[1, 2], 3)]);
        assert_eq!(cayley_fiber_length(&z), (6, false));
    }

    #[test]
    fn fiber_length_d1_is_always_flat() {
        let z = ZeroCycle::new(1, vec![pt(&[4], 3)]);
        assert_eq!(cayley_fiber_length(&z), (3, true));
    }
}
