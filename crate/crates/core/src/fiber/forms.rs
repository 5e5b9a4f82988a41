//! Exterior algebra of the model fiber R^6 with exact coefficients.
//!
//! A p-form is stored as one coefficient per strictly increasing multi-index,
//! in the lexicographic order of `combinations(0..6, p)`. Multi-indices are
//! handled as 6-bit masks internally.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::linalg::{Q, QMat};

pub const DIM: usize = 6;

struct BasisTables {
    masks: Vec<Vec<u8>>,
    index: [usize; 64],
}

static TABLES: Lazy<BasisTables> = Lazy::new(|| {
    let mut masks = vec![Vec::new(); DIM + 1];
    let mut index = [0usize; 64];
    for p in 0..=DIM {
        // lexicographic order of increasing tuples
        let mut tuples: Vec<Vec<usize>> = (0u8..64)
            .filter(|m| m.count_ones() as usize == p)
            .map(|m| (0..DIM).filter(|i| m & (1 << i) != 0).collect())
            .collect();
        tuples.sort();
        for (n, t) in tuples.iter().enumerate() {
            let m = t.iter().fold(0u8, |acc, i| acc | (1 << i));
            index[m as usize] = n;
            masks[p].push(m);
        }
    }
    BasisTables { masks, index }
});

/// Number of basis p-forms.
pub fn form_dim(p: usize) -> usize {
    TABLES.masks[p].len()
}

pub(crate) fn mask_of(p: usize, n: usize) -> u8 {
    TABLES.masks[p][n]
}

pub(crate) fn index_of(mask: u8) -> usize {
    TABLES.index[mask as usize]
}

/// Increasing index tuple of the n-th basis p-form.
pub fn multi_index(p: usize, n: usize) -> Vec<usize> {
    let m = mask_of(p, n);
    (0..DIM).filter(|i| m & (1 << i) != 0).collect()
}

// sign of e^a ∧ e^b relative to the sorted union; a, b disjoint
fn merge_sign(a: u8, b: u8) -> i64 {
    let mut swaps = 0;
    for j in 0..DIM {
        if b & (1 << j) != 0 {
            swaps += (a >> (j + 1)).count_ones();
        }
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Vector of the fiber, coordinates in the orthonormal basis e_0..e_5.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FiberVector(pub [Q; DIM]);

impl FiberVector {
    pub fn zero() -> Self {
        Self([Q::zero(); DIM])
    }

    pub fn basis(i: usize) -> Self {
        let mut v = Self::zero();
        v.0[i] = Q::one();
        v
    }

    pub fn from_slice(c: &[Q]) -> Self {
        let mut v = Self::zero();
        v.0.copy_from_slice(c);
        v
    }

    pub fn dot(&self, other: &Self) -> Q {
        self.0.iter().zip(&other.0).map(|(a, b)| *a * *b).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// The metric dual 1-form.
    pub fn flat(&self) -> FiberForm {
        FiberForm {
            degree: 1,
            coeffs: self.0.to_vec(),
        }
    }

    pub fn scale(&self, s: Q) -> Self {
        Self(self.0.map(|x| x * s))
    }
}

impl Add for FiberVector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for FiberVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for FiberVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|x| -x))
    }
}

/// Exterior p-form on the fiber.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiberForm {
    degree: usize,
    coeffs: Vec<Q>,
}

impl FiberForm {
    pub fn zero(degree: usize) -> Self {
        assert!(degree <= DIM, "form degree {degree} exceeds {DIM}");
        Self {
            degree,
            coeffs: vec![Q::zero(); form_dim(degree)],
        }
    }

    pub fn scalar(s: Q) -> Self {
        Self {
            degree: 0,
            coeffs: vec![s],
        }
    }

    pub fn basis(degree: usize, n: usize) -> Self {
        let mut f = Self::zero(degree);
        f.coeffs[n] = Q::one();
        f
    }

    /// e^{i_1} ∧ ... ∧ e^{i_p} for arbitrary (not necessarily sorted) indices.
    pub fn monomial(indices: &[usize]) -> Self {
        let mut out = Self::scalar(Q::one());
        for &i in indices {
            out = out.wedge(&Self::basis(1, i)).expect("degree at most 6");
        }
        out
    }

    /// Sum of `c * e^I` terms.
    pub fn from_terms(degree: usize, terms: &[(&[usize], Q)]) -> Self {
        let mut out = Self::zero(degree);
        for (idx, c) in terms {
            assert_eq!(idx.len(), degree);
            out = &out + &Self::monomial(idx).scale(*c);
        }
        out
    }

    pub fn from_coeffs(degree: usize, coeffs: Vec<Q>) -> Self {
        assert_eq!(coeffs.len(), form_dim(degree));
        Self { degree, coeffs }
    }

    pub fn volume() -> Self {
        Self::basis(DIM, 0)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, indices: &[usize]) -> Q {
        let m = indices.iter().fold(0u8, |acc, i| acc | (1 << i));
        assert_eq!(m.count_ones() as usize, indices.len());
        self.coeffs[index_of(m)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: Q) -> Self {
        Self {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| *c * s).collect(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u8, Q)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(n, c)| (mask_of(self.degree, n), *c))
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        let p = self.degree + other.degree;
        if p > DIM {
            return Err(Error::DegreeOverflow(self.degree, other.degree));
        }
        let mut out = Self::zero(p);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                if a & b != 0 {
                    continue;
                }
                out.coeffs[index_of(a | b)] += ca * cb * Q::from_integer(merge_sign(a, b));
            }
        }
        Ok(out)
    }

    /// Interior product `x ⌟ self`.
    pub fn contract(&self, x: &FiberVector) -> Result<Self> {
        if self.degree == 0 {
            return Err(Error::ContractScalar);
        }
        let mut out = Self::zero(self.degree - 1);
        for (m, c) in self.terms() {
            for i in 0..DIM {
                if m & (1 << i) == 0 || x.0[i].is_zero() {
                    continue;
                }
                let before = (m & ((1u8 << i) - 1)).count_ones();
                let s = if before % 2 == 0 { c } else { -c };
                out.coeffs[index_of(m & !(1 << i))] += s * x.0[i];
            }
        }
        Ok(out)
    }

    pub fn hodge_star(&self) -> Self {
        let full = (1u8 << DIM) - 1;
        let mut out = Self::zero(DIM - self.degree);
        for (m, c) in self.terms() {
            let rest = full & !m;
            out.coeffs[index_of(rest)] += c * Q::from_integer(merge_sign(m, rest));
        }
        out
    }

    /// Induced inner product; the e^I are orthonormal.
    pub fn inner(&self, other: &Self) -> Result<Q> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| *a * *b)
            .sum())
    }

    pub fn norm_sq(&self) -> Q {
        self.inner(self).expect("same degree")
    }

    /// Evaluates the form on `degree` vectors.
    pub fn eval(&self, vectors: &[FiberVector]) -> Result<Q> {
        if vectors.len() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: vectors.len(),
            });
        }
        let mut f = self.clone();
        for v in vectors {
            f = f.contract(v)?;
        }
        Ok(f.coeffs[0])
    }

    /// Pullback `a(M·, ..., M·)` along the endomorphism with matrix `m`.
    pub fn pullback(&self, m: &QMat) -> Self {
        let cols: Vec<FiberVector> = (0..DIM)
            .map(|j| FiberVector::from_slice(&m.column(j)))
            .collect();
        let mut out = Self::zero(self.degree);
        for n in 0..form_dim(self.degree) {
            let args: Vec<FiberVector> = multi_index(self.degree, n)
                .into_iter()
                .map(|i| cols[i])
                .collect();
            out.coeffs[n] = self.eval(&args).expect("degree matches");
        }
        out
    }
}

impl Add for &FiberForm {
    type Output = FiberForm;
    fn add(self, o: &FiberForm) -> FiberForm {
        assert_eq!(self.degree, o.degree, "adding forms of different degree");
        FiberForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &FiberForm {
    type Output = FiberForm;
    fn sub(self, o: &FiberForm) -> FiberForm {
        assert_eq!(self.degree, o.degree, "subtracting forms of different degree");
        FiberForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &FiberForm {
    type Output = FiberForm;
    fn neg(self) -> FiberForm {
        self.scale(-Q::one())
    }
}

impl Mul<Q> for &FiberForm {
    type Output = FiberForm;
    fn mul(self, s: Q) -> FiberForm {
        self.scale(s)
    }
}

impl fmt::Debug for FiberForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FiberForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms()
            .map(|(m, c)| {
                let idx: String = (0..DIM)
                    .filter(|i| m & (1 << i) != 0)
                    .map(|i| char::from(b'0' + i as u8))
                    .collect();
                if self.degree == 0 {
                    format!("{c}")
                } else {
                    format!("{c}·e{idx}")
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0 (deg {})", self.degree)
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// e^i ∧ · as a matrix Λ^p → Λ^{p+1}.
pub fn wedge_matrix(i: usize, p: usize) -> QMat {
    let e = FiberForm::basis(1, i);
    let cols: Vec<Vec<Q>> = (0..form_dim(p))
        .map(|n| e.wedge(&FiberForm::basis(p, n)).expect("p < 6").coeffs)
        .collect();
    QMat::from_columns(form_dim(p + 1), &cols)
}

/// e_i ⌟ · as a matrix Λ^p → Λ^{p-1}; the transpose of `wedge_matrix(i, p-1)`.
pub fn contract_matrix(i: usize, p: usize) -> QMat {
    wedge_matrix(i, p - 1).transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use proptest::prelude::*;

    #[test]
    fn basis_sizes() {
        let sizes: Vec<usize> = (0..=6).map(form_dim).collect();
        assert_eq!(sizes, vec![1, 6, 15, 20, 15, 6, 1]);
        assert_eq!(multi_index(2, 0), vec![0, 1]);
        assert_eq!(multi_index(3, 19), vec![3, 4, 5]);
    }

    #[test]
    fn wedge_overflow_rejected() {
        let a = FiberForm::basis(4, 0);
        assert!(matches!(a.wedge(&a), Err(Error::DegreeOverflow(4, 4))));
    }

    #[test]
    fn monomial_sign() {
        assert_eq!(FiberForm::monomial(&[1, 0]), FiberForm::monomial(&[0, 1]).scale(q(-1)));
        assert!(FiberForm::monomial(&[2, 2]).is_zero());
    }

    #[test]
    fn star_of_volume_and_unit() {
        assert_eq!(FiberForm::volume().hodge_star(), FiberForm::scalar(q(1)));
        assert_eq!(FiberForm::scalar(q(1)).hodge_star(), FiberForm::volume());
    }

    #[test]
    fn contraction_of_basis() {
        let a = FiberForm::monomial(&[0, 1]);
        assert_eq!(a.contract(&FiberVector::basis(0)).unwrap(), FiberForm::basis(1, 1));
        assert_eq!(a.contract(&FiberVector::basis(1)).unwrap(), FiberForm::basis(1, 0).scale(q(-1)));
        assert!(matches!(FiberForm::scalar(q(1)).contract(&FiberVector::basis(0)), Err(Error::ContractScalar)));
    }

    #[test]
    fn contract_matrix_matches_contract() {
        for p in 1..=6 {
            for i in 0..6 {
                let m = contract_matrix(i, p);
                for n in 0..form_dim(p) {
                    let direct = FiberForm::basis(p, n).contract(&FiberVector::basis(i)).unwrap();
                    assert_eq!(m.column(n), direct.coeffs().to_vec());
                }
            }
        }
    }

    fn small_q() -> impl Strategy<Value = Q> {
        (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Q::new(n, d))
    }

    fn form_strategy(p: usize) -> impl Strategy<Value = FiberForm> {
        proptest::collection::vec(small_q(), form_dim(p)).prop_map(move |c| FiberForm::from_coeffs(p, c))
    }

    fn vector_strategy() -> impl Strategy<Value = FiberVector> {
        proptest::collection::vec(small_q(), 6).prop_map(|c| FiberVector::from_slice(&c))
    }

    proptest! {
        #[test]
        fn graded_anticommutative(a in form_strategy(2), b in form_strategy(3)) {
            let ab = a.wedge(&b).unwrap();
            let ba = b.wedge(&a).unwrap();
            prop_assert_eq!(ab, ba);
            let c = FiberForm::basis(1, 2);
            prop_assert_eq!(b.wedge(&c).unwrap(), c.wedge(&b).unwrap().scale(q(-1)));
        }

        #[test]
        fn one_form_squares_to_zero(v in vector_strategy()) {
            prop_assert!(v.flat().wedge(&v.flat()).unwrap().is_zero());
        }

        #[test]
        fn contraction_is_nilpotent_antiderivation(x in vector_strategy(), a in form_strategy(2), b in form_strategy(3)) {
            prop_assert!(b.contract(&x).unwrap().contract(&x).unwrap().is_zero());
            let lhs = a.wedge(&b).unwrap().contract(&x).unwrap();
            let rhs = &a.contract(&x).unwrap().wedge(&b).unwrap() + &a.wedge(&b.contract(&x).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn star_squares_and_norm(a in form_strategy(3), b in form_strategy(2)) {
            prop_assert_eq!(a.hodge_star().hodge_star(), a.scale(q(-1)));
            prop_assert_eq!(b.hodge_star().hodge_star(), b.clone());
            let lhs = b.wedge(&b.hodge_star()).unwrap();
            prop_assert_eq!(lhs, FiberForm::volume().scale(b.norm_sq()));
        }
    }
}
