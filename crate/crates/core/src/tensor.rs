//! Symmetric tensors over the rationals.
//!
//! A rank-`r` symmetric tensor on `R^n` is stored by its coordinates
//! `T_α = T(e_1[α_1], …, e_n[α_n])` for multi-indices `|α| = r`. The
//! associated diagonal polynomial `p_T(v) = T(v, …, v)` has coefficients
//! `C(r; α) · T_α`; the symmetric product is polynomial multiplication in
//! that picture.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{multinomial, Rational};
use crate::error::{Error, Result};

/// Exponent vector `α = (α_1, …, α_n)`; ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Axis indices with `e_i` repeated `α_i` times, e.g. `(2,0,1) → [0,0,2]`.
    pub fn axes(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| std::iter::repeat_n(i, a as usize))
            .collect()
    }

    /// The tuple of basis vectors whose tensor evaluation reads off `T_α`.
    pub fn basis_tuple(&self) -> Vec<Vec<i64>> {
        let n = self.dim();
        self.axes()
            .into_iter()
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect()
    }

    pub fn multinomial(&self) -> BigInt {
        multinomial(&self.0)
    }

    /// Apply a coordinate permutation: the result has exponent `α_i` in slot `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> MultiIndex {
        let mut out = vec![0; self.dim()];
        for (i, &a) in self.0.iter().enumerate() {
            out[perm[i]] = a;
        }
        MultiIndex(out)
    }

    fn bumped(&self, axis: usize) -> MultiIndex {
        let mut e = self.0.clone();
        e[axis] += 1;
        MultiIndex(e)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// All multi-indices of length `dim` and order `rank`, in lexicographic order.
pub fn multi_indices(dim: usize, rank: u32) -> Vec<MultiIndex> {
    fn rec(dim: usize, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if prefix.len() + 1 == dim {
            prefix.push(remaining);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in 0..=remaining {
            prefix.push(a);
            rec(dim, remaining - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if dim == 0 {
        if rank == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return out;
    }
    rec(dim, rank, &mut Vec::with_capacity(dim), &mut out);
    out
}

/// Expand `Π_j (f_j · x)` into monomial coefficients.
///
/// With `f_j = v_j` this is the coordinate functional of evaluation at
/// `(v_1, …, v_r)`: `T(v_1, …, v_r) = Σ_α coeff(α) · T_α`.
pub(crate) fn expand_linear_forms<T>(forms: &[Vec<T>], dim: usize) -> BTreeMap<MultiIndex, T>
where
    T: Clone + Zero + One + Mul<Output = T>,
{
    let mut poly: BTreeMap<MultiIndex, T> = BTreeMap::new();
    poly.insert(MultiIndex::zero(dim), T::one());
    for form in forms {
        let mut next: BTreeMap<MultiIndex, T> = BTreeMap::new();
        for (mono, c) in &poly {
            for (axis, f) in form.iter().enumerate() {
                if f.is_zero() {
                    continue;
                }
                let key = mono.bumped(axis);
                let term = c.clone() * f.clone();
                match next.get_mut(&key) {
                    Some(slot) => *slot = slot.clone() + term,
                    None => {
                        next.insert(key, term);
                    }
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        poly = next;
    }
    poly
}

/// Symmetric tensor of rank `rank` on `R^dim` with sparse exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymTensor {
    dim: usize,
    rank: u32,
    coords: BTreeMap<MultiIndex, Rational>,
}

impl SymTensor {
    pub fn zero(dim: usize, rank: u32) -> Self {
        SymTensor {
            dim,
            rank,
            coords: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: usize, value: Rational) -> Self {
        let mut t = SymTensor::zero(dim, 0);
        t.set(MultiIndex::zero(dim), value);
        t
    }

    /// Build from explicit coordinates, validating every key.
    pub fn from_coords(
        dim: usize,
        rank: u32,
        coords: impl IntoIterator<Item = (MultiIndex, Rational)>,
    ) -> Result<Self> {
        let mut t = SymTensor::zero(dim, rank);
        for (alpha, value) in coords {
            if alpha.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: alpha.dim(),
                });
            }
            if alpha.order() != rank {
                return Err(Error::InvalidArgument(format!(
                    "multi-index {alpha} has order {} but tensor rank is {rank}",
                    alpha.order()
                )));
            }
            t.set(alpha, value);
        }
        Ok(t)
    }

    /// Coordinates given densely in lexicographic multi-index order.
    pub fn from_dense(dim: usize, rank: u32, values: &[Rational]) -> Result<Self> {
        let indices = multi_indices(dim, rank);
        if indices.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: indices.len(),
                found: values.len(),
            });
        }
        SymTensor::from_coords(dim, rank, indices.into_iter().zip(values.iter().cloned()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn get(&self, alpha: &MultiIndex) -> Rational {
        self.coords
            .get(alpha)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Convenience lookup by raw exponents.
    pub fn coord(&self, exponents: &[u32]) -> Rational {
        self.get(&MultiIndex(exponents.to_vec()))
    }

    pub fn set(&mut self, alpha: MultiIndex, value: Rational) {
        debug_assert_eq!(alpha.dim(), self.dim);
        debug_assert_eq!(alpha.order(), self.rank);
        if value.is_zero() {
            self.coords.remove(&alpha);
        } else {
            self.coords.insert(alpha, value);
        }
    }

    fn add_to(&mut self, alpha: MultiIndex, value: Rational) {
        let current = self.get(&alpha);
        self.set(alpha, current + value);
    }

    /// Non-zero coordinates in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.coords.iter()
    }

    /// All coordinates (including zeros) in lexicographic order.
    pub fn dense(&self) -> Vec<Rational> {
        multi_indices(self.dim, self.rank)
            .iter()
            .map(|a| self.get(a))
            .collect()
    }

    pub fn scaled(&self, factor: &Rational) -> SymTensor {
        let mut out = SymTensor::zero(self.dim, self.rank);
        if factor.is_zero() {
            return out;
        }
        for (a, v) in &self.coords {
            out.coords.insert(a.clone(), v * factor);
        }
        out
    }

    fn check_shape(&self, other: &SymTensor) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.rank != other.rank {
            return Err(Error::InvalidArgument(format!(
                "rank mismatch: {} vs {}",
                self.rank, other.rank
            )));
        }
        Ok(())
    }

    /// Coefficients of the diagonal polynomial `v ↦ T(v, …, v)`.
    pub fn to_polynomial(&self) -> BTreeMap<MultiIndex, Rational> {
        self.coords
            .iter()
            .map(|(a, v)| (a.clone(), v * Rational::from_integer(a.multinomial())))
            .collect()
    }

    /// Inverse of [`SymTensor::to_polynomial`] for a homogeneous polynomial of degree `rank`.
    pub fn from_polynomial(
        dim: usize,
        rank: u32,
        poly: &BTreeMap<MultiIndex, Rational>,
    ) -> Result<Self> {
        SymTensor::from_coords(
            dim,
            rank,
            poly.iter()
                .map(|(a, c)| (a.clone(), c / Rational::from_integer(a.multinomial()))),
        )
    }

    /// First nonzero ratio `self_α / other_α` if `self` is a scalar multiple of `other`.
    pub fn ratio_to(&self, other: &SymTensor) -> Option<Rational> {
        if self.dim != other.dim || self.rank != other.rank || other.is_zero() {
            return None;
        }
        let (alpha, v) = other.coords.iter().next()?;
        let ratio = self.get(alpha) / v;
        (other.scaled(&ratio) == *self).then_some(ratio)
    }
}

impl Add<&SymTensor> for &SymTensor {
    type Output = SymTensor;

    fn add(self, rhs: &SymTensor) -> SymTensor {
        self.check_shape(rhs).expect("tensor shapes must agree");
        let mut out = self.clone();
        for (a, v) in &rhs.coords {
            out.add_to(a.clone(), v.clone());
        }
        out
    }
}

impl AddAssign<&SymTensor> for SymTensor {
    fn add_assign(&mut self, rhs: &SymTensor) {
        self.check_shape(rhs).expect("tensor shapes must agree");
        for (a, v) in &rhs.coords {
            self.add_to(a.clone(), v.clone());
        }
    }
}

impl Sub<&SymTensor> for &SymTensor {
    type Output = SymTensor;

    fn sub(self, rhs: &SymTensor) -> SymTensor {
        self + &(-rhs)
    }
}

impl Neg for &SymTensor {
    type Output = SymTensor;

    fn neg(self) -> SymTensor {
        SymTensor {
            dim: self.dim,
            rank: self.rank,
            coords: self.coords.iter().map(|(a, v)| (a.clone(), -v)).collect(),
        }
    }
}

/// `v^r`, the r-fold symmetric power of an integer vector. `v^0` is the scalar 1.
pub fn sym_power(v: &[i64], r: u32) -> SymTensor {
    let dim = v.len();
    let mut t = SymTensor::zero(dim, r);
    for alpha in multi_indices(dim, r) {
        let mut value = BigInt::one();
        for (x, &a) in v.iter().zip(alpha.exponents()) {
            value *= BigInt::from(*x).pow(a);
        }
        t.set(alpha, Rational::from_integer(value));
    }
    t
}

/// Symmetric product `A ⊙ B`.
pub fn sym_product(a: &SymTensor, b: &SymTensor) -> Result<SymTensor> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            expected: a.dim,
            found: b.dim,
        });
    }
    let pa = a.to_polynomial();
    let pb = b.to_polynomial();
    let mut prod: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
    for (ma, ca) in &pa {
        for (mb, cb) in &pb {
            let key = MultiIndex(ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect());
            *prod.entry(key).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    SymTensor::from_polynomial(a.dim, a.rank + b.rank, &prod)
}

/// `k`-fold symmetric power of a tensor; `power(A, 0)` is the scalar 1.
pub fn tensor_power(a: &SymTensor, k: u32) -> Result<SymTensor> {
    let mut acc = SymTensor::scalar(a.dim, Rational::one());
    for _ in 0..k {
        acc = sym_product(&acc, a)?;
    }
    Ok(acc)
}

/// Linear functional `L` with `evaluate(T, vectors) = Σ_α L(α) · T_α` for every rank-`r` `T`.
pub fn coordinate_row(vectors: &[Vec<i64>], dim: usize) -> Result<BTreeMap<MultiIndex, Rational>> {
    Ok(coordinate_row_int(vectors, dim)?
        .into_iter()
        .map(|(a, c)| (a, Rational::from_integer(BigInt::from(c))))
        .collect())
}

/// Integer form of [`coordinate_row`], used for bulk constraint generation.
pub(crate) fn coordinate_row_int(
    vectors: &[Vec<i64>],
    dim: usize,
) -> Result<BTreeMap<MultiIndex, i128>> {
    let forms = vectors
        .iter()
        .map(|v| {
            if v.len() != dim {
                Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                })
            } else {
                Ok(v.iter().map(|&x| x as i128).collect::<Vec<i128>>())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(expand_linear_forms(&forms, dim))
}

/// Evaluate `T(v_1, …, v_r)` at rational vectors.
pub fn evaluate(t: &SymTensor, vectors: &[Vec<Rational>]) -> Result<Rational> {
    if vectors.len() != t.rank as usize {
        return Err(Error::ArityMismatch {
            expected: t.rank as usize,
            found: vectors.len(),
        });
    }
    if let Some(v) = vectors.iter().find(|v| v.len() != t.dim) {
        return Err(Error::DimensionMismatch {
            expected: t.dim,
            found: v.len(),
        });
    }
    let row = expand_linear_forms(vectors, t.dim);
    Ok(row
        .iter()
        .map(|(a, c)| c * t.get(a))
        .fold(Rational::zero(), |acc, x| acc + x))
}

/// `T ∘ Mᵗ`, i.e. `(T ∘ Mᵗ)(v_1, …, v_r) = T(Mᵗ v_1, …, Mᵗ v_r)`.
///
/// For `T = x^r` this is `(M x)^r`, which is the action making a valuation
/// `Z(φ P) = Z(P) ∘ φᵗ` equivariant.
pub fn apply_linear(t: &SymTensor, m: &[Vec<i64>]) -> Result<SymTensor> {
    if m.len() != t.dim {
        return Err(Error::DimensionMismatch {
            expected: t.dim,
            found: m.len(),
        });
    }
    if let Some(row) = m.iter().find(|row| row.len() != t.dim) {
        return Err(Error::DimensionMismatch {
            expected: t.dim,
            found: row.len(),
        });
    }
    let mut out = SymTensor::zero(t.dim, t.rank);
    if t.is_zero() {
        return Ok(out);
    }
    for alpha in multi_indices(t.dim, t.rank) {
        // Mᵗ e_j is the j-th row of M
        let vectors: Vec<Vec<i64>> = alpha.axes().into_iter().map(|j| m[j].clone()).collect();
        let row = coordinate_row_int(&vectors, t.dim)?;
        let mut value = Rational::zero();
        for (beta, c) in row {
            if let Some(tb) = t.coords.get(&beta) {
                value += tb * Rational::from_integer(BigInt::from(c));
            }
        }
        out.set(alpha, value);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int};

    fn idx(e: &[u32]) -> MultiIndex {
        MultiIndex(e.to_vec())
    }

    fn qvec(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn multi_index_enumeration_is_lex() {
        let all = multi_indices(2, 3);
        assert_eq!(
            all,
            vec![idx(&[0, 3]), idx(&[1, 2]), idx(&[2, 1]), idx(&[3, 0])]
        );
        assert_eq!(multi_indices(3, 4).len(), 15);
        assert_eq!(multi_indices(7, 8).len(), 3003);
        assert_eq!(multi_indices(3, 0), vec![idx(&[0, 0, 0])]);
    }

    #[test]
    fn sym_power_examples() {
        let t = sym_power(&[1, 0], 3);
        assert_eq!(t.iter().count(), 1);
        assert_eq!(t.coord(&[3, 0]), int(1));

        let t = sym_power(&[1, 1], 2);
        assert_eq!(t.dense(), vec![int(1), int(1), int(1)]);

        let t = sym_power(&[2, 3], 2);
        assert_eq!(t.coord(&[2, 0]), int(4));
        assert_eq!(t.coord(&[1, 1]), int(6));
        assert_eq!(t.coord(&[0, 2]), int(9));

        let s = sym_power(&[5, -2], 0);
        assert_eq!(s, SymTensor::scalar(2, int(1)));
    }

    #[test]
    fn sym_product_examples() {
        let v = sym_power(&[1, 2], 1);
        assert_eq!(sym_product(&v, &v).unwrap(), sym_power(&[1, 2], 2));

        let e1 = sym_power(&[1, 0], 1);
        let e2 = sym_power(&[0, 1], 1);
        let p = sym_product(&e1, &e2).unwrap();
        assert_eq!(p.iter().count(), 1);
        assert_eq!(p.coord(&[1, 1]), frac(1, 2));

        let a = sym_power(&[3, -1], 2);
        let c = SymTensor::scalar(2, frac(2, 3));
        assert_eq!(sym_product(&a, &c).unwrap(), a.scaled(&frac(2, 3)));

        let w = sym_power(&[1, 0, 0], 1);
        assert!(sym_product(&a, &w).is_err());
    }

    #[test]
    fn apply_linear_examples() {
        let t = sym_power(&[2, -1], 3);
        let id = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(apply_linear(&t, &id).unwrap(), t);

        let m = vec![vec![0, -1], vec![1, -1]];
        let x = [2, 5];
        let mx = [-5, 2 - 5];
        assert_eq!(
            apply_linear(&sym_power(&x, 3), &m).unwrap(),
            sym_power(&mx, 3)
        );

        // T = e_1 as a vector: T(Mᵗ e_1) = (Mᵗe_1)_1 = M_11 = 0, T(Mᵗ e_2) = M_21 = 1
        let e1 = SymTensor::from_coords(2, 1, [(idx(&[1, 0]), int(1))]).unwrap();
        let out = apply_linear(&e1, &m).unwrap();
        assert_eq!(out.coord(&[1, 0]), int(0));
        assert_eq!(out.coord(&[0, 1]), int(1));

        assert!(apply_linear(&t, &[vec![1, 0, 0]]).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let t = sym_power(&[1, 2], 2);
        let v = qvec(&[3, 1]);
        assert_eq!(evaluate(&t, &[v.clone(), v.clone()]).unwrap(), int(25));
        for alpha in multi_indices(2, 2) {
            let basis: Vec<Vec<Rational>> = alpha.basis_tuple().iter().map(|b| qvec(b)).collect();
            assert_eq!(evaluate(&t, &basis).unwrap(), t.get(&alpha));
        }
        assert!(matches!(
            evaluate(&t, &[v]),
            Err(Error::ArityMismatch {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn coordinate_row_examples() {
        let alpha = idx(&[2, 0, 1]);
        let row = coordinate_row(&alpha.basis_tuple(), 3).unwrap();
        assert_eq!(row.len(), 1);
        assert_eq!(row[&alpha], int(1));

        let row = coordinate_row(&[vec![1, 1]], 2).unwrap();
        assert_eq!(row[&idx(&[1, 0])], int(1));
        assert_eq!(row[&idx(&[0, 1])], int(1));

        let vecs = vec![vec![1, -2, 0], vec![0, 3, 1], vec![2, 2, -1]];
        let x = [3, -1, 2];
        let t = sym_power(&x, 3);
        let row = coordinate_row(&vecs, 3).unwrap();
        let via_row: Rational = row.iter().map(|(a, c)| c * t.get(a)).sum();
        let direct: i64 = vecs
            .iter()
            .map(|v| v.iter().zip(&x).map(|(a, b)| a * b).sum::<i64>())
            .product();
        assert_eq!(via_row, int(direct));
    }

    #[test]
    fn polynomial_round_trip() {
        let t = SymTensor::from_dense(2, 2, &[int(1), frac(1, 2), int(1)]).unwrap();
        let p = t.to_polynomial();
        assert_eq!(p[&idx(&[1, 1])], int(1));
        assert_eq!(SymTensor::from_polynomial(2, 2, &p).unwrap(), t);
    }

    #[test]
    fn ratio_detection() {
        let a = sym_power(&[1, 2], 2);
        assert_eq!(a.scaled(&frac(-3, 7)).ratio_to(&a), Some(frac(-3, 7)));
        assert_eq!(sym_power(&[2, 1], 2).ratio_to(&a), None);
    }
}
