//! Discrete moment tensors, Ehrhart tensor coefficients and the identities
//! they satisfy.
//!
//! `L^r(P) = (1/r!) Σ_{x ∈ P ∩ Z^n} x^r`. The map `k ↦ L^r(kP)` is a
//! polynomial of degree at most `n + r`; its coefficients `L^r_i(P)` are
//! recovered by exact interpolation at `k = 0, …, n + r`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{factorial, format_rational, Rational};
use crate::error::{Error, Result};
use crate::linalg::vandermonde_inverse;
use crate::points::{lattice_points, relint_lattice_points};
use crate::polytope::{simplex_normalized_volume, LatticePolytope, Point, UnimodularMap};
use crate::tensor::{
    apply_linear, expand_linear_forms, multi_indices, sym_power, sym_product, MultiIndex, SymTensor,
};

fn moment_of_points(points: &[Point], dim: usize, r: u32) -> SymTensor {
    let indices = multi_indices(dim, r);
    let mut sums = vec![BigInt::zero(); indices.len()];
    for x in points {
        // powers[i][e] = x_i^e
        let powers: Vec<Vec<BigInt>> = x
            .iter()
            .map(|&xi| {
                let mut row = Vec::with_capacity(r as usize + 1);
                let mut acc = BigInt::one();
                for _ in 0..=r {
                    row.push(acc.clone());
                    acc *= xi;
                }
                row
            })
            .collect();
        for (sum, alpha) in sums.iter_mut().zip(&indices) {
            let mut term = BigInt::one();
            for (i, &a) in alpha.exponents().iter().enumerate() {
                if a > 0 {
                    term *= &powers[i][a as usize];
                }
            }
            *sum += term;
        }
    }
    let scale = Rational::from_integer(factorial(r));
    SymTensor::from_coords(
        dim,
        r,
        indices
            .into_iter()
            .zip(sums)
            .map(|(a, s)| (a, Rational::from_integer(s) / &scale)),
    )
    .expect("indices match the tensor shape")
}

/// `L^r(P)`; the empty polytope gives the zero tensor.
pub fn discrete_moment(p: &LatticePolytope, r: u32) -> SymTensor {
    moment_of_points(&lattice_points(p), p.ambient_dim(), r)
}

/// `L^r(relint P)`.
pub fn discrete_moment_relint(p: &LatticePolytope, r: u32) -> SymTensor {
    moment_of_points(&relint_lattice_points(p), p.ambient_dim(), r)
}

/// Coefficients `c_0, …, c_{m-1}` of the unique polynomial of degree `< m`
/// taking `values[k]` at `k = 0, …, m-1`.
pub fn interpolate(values: &[Rational]) -> Vec<Rational> {
    let inv = vandermonde_inverse(values.len());
    inv.iter()
        .map(|row| {
            row.iter()
                .zip(values)
                .filter(|(a, _)| !a.is_zero())
                .map(|(a, b)| a * b)
                .fold(Rational::zero(), |acc, x| acc + x)
        })
        .collect()
}

/// `L^r_0(P), …, L^r_{n+r}(P)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EhrhartTensorExpansion {
    dim: usize,
    rank: u32,
    coefficients: Vec<SymTensor>,
}

impl EhrhartTensorExpansion {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn coefficients(&self) -> &[SymTensor] {
        &self.coefficients
    }

    /// `L^r_i`, zero for `i` past the degree bound.
    pub fn coefficient(&self, i: usize) -> SymTensor {
        self.coefficients
            .get(i)
            .cloned()
            .unwrap_or_else(|| SymTensor::zero(self.dim, self.rank))
    }

    /// `Σ_i L^r_i k^i`.
    pub fn evaluate_at(&self, k: u64) -> SymTensor {
        let k = Rational::from_integer(BigInt::from(k));
        let mut acc = SymTensor::zero(self.dim, self.rank);
        let mut power = Rational::one();
        for c in &self.coefficients {
            acc += &c.scaled(&power);
            power *= &k;
        }
        acc
    }
}

/// Ehrhart tensors by interpolation of `L^r(kP)` at `k = 0, …, n + r`.
pub fn ehrhart_tensors(p: &LatticePolytope, r: u32) -> EhrhartTensorExpansion {
    let n = p.ambient_dim();
    let nodes = n + r as usize + 1;
    let samples: Vec<SymTensor> = (0..nodes)
        .map(|k| match p.dilate(k as u64) {
            Ok(kp) => discrete_moment(&kp, r),
            Err(_) => unreachable!("dilates of a valid polytope are valid"),
        })
        .collect();
    let inv = vandermonde_inverse(nodes);
    let mut coefficients = vec![SymTensor::zero(n, r); nodes];
    for alpha in multi_indices(n, r) {
        let values: Vec<Rational> = samples.iter().map(|s| s.get(&alpha)).collect();
        if values.iter().all(|v| v.is_zero()) {
            continue;
        }
        for (i, row) in inv.iter().enumerate() {
            let c = row
                .iter()
                .zip(&values)
                .map(|(a, b)| a * b)
                .fold(Rational::zero(), |acc, x| acc + x);
            coefficients[i].set(alpha.clone(), c);
        }
    }
    EhrhartTensorExpansion {
        dim: n,
        rank: r,
        coefficients,
    }
}

/// `M^r(P) = (1/r!) ∫_P x^r dx` for full-dimensional `P`, by triangulating
/// and integrating monomials exactly in barycentric coordinates:
/// `∫_S λ^β = |det| β! / (n + |β|)!`.
pub fn moment_tensor(p: &LatticePolytope, r: u32) -> Result<SymTensor> {
    let n = p.ambient_dim();
    let d = p.dim().unwrap_or(0);
    if p.is_empty() || d != n {
        return Err(Error::NotFullDimensional {
            required: n,
            found: d,
        });
    }
    let denom = Rational::from_integer(factorial(n as u32 + r) * factorial(r));
    let mut out = SymTensor::zero(n, r);
    for simplex in p.triangulate() {
        let vol = simplex_normalized_volume(&simplex);
        for alpha in multi_indices(n, r) {
            // x_i = Σ_j λ_j v_j[i]
            let forms: Vec<Vec<i128>> = alpha
                .axes()
                .into_iter()
                .map(|i| simplex.iter().map(|v| v[i] as i128).collect())
                .collect();
            let mut integral = BigInt::zero();
            for (beta, c) in expand_linear_forms(&forms, n + 1) {
                let weight = beta
                    .exponents()
                    .iter()
                    .fold(BigInt::one(), |acc, &b| acc * factorial(b));
                integral += BigInt::from(c) * weight;
            }
            integral *= vol;
            let current = out.get(&alpha);
            out.set(alpha, current + Rational::from_integer(integral) / &denom);
        }
    }
    Ok(out)
}

/// First coordinate at which two tensors differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub label: String,
    pub index: MultiIndex,
    pub left: Rational,
    pub right: Rational,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at ({}): {} != {}",
            self.label,
            self.index,
            format_rational(&self.left),
            format_rational(&self.right)
        )
    }
}

/// Outcome of an identity check: how many tensor comparisons were made and
/// the first failure, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub comparisons: usize,
    pub mismatch: Option<Mismatch>,
}

impl CheckReport {
    fn new(name: &str) -> Self {
        CheckReport {
            name: name.to_string(),
            comparisons: 0,
            mismatch: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }

    fn compare(&mut self, label: impl FnOnce() -> String, left: &SymTensor, right: &SymTensor) {
        self.comparisons += 1;
        if self.mismatch.is_some() {
            return;
        }
        if let Some(index) = first_difference(left, right) {
            self.mismatch = Some(Mismatch {
                label: label(),
                left: left.get(&index),
                right: right.get(&index),
                index,
            });
        }
    }

    fn absorb(&mut self, other: CheckReport) {
        self.comparisons += other.comparisons;
        if self.mismatch.is_none() {
            self.mismatch = other.mismatch;
        }
    }
}

fn first_difference(a: &SymTensor, b: &SymTensor) -> Option<MultiIndex> {
    let keys: std::collections::BTreeSet<&MultiIndex> =
        a.iter().chain(b.iter()).map(|(k, _)| k).collect();
    keys.into_iter().find(|k| a.get(k) != b.get(k)).cloned()
}

fn alternating_sum(exp: &EhrhartTensorExpansion, upto: usize) -> SymTensor {
    let mut acc = SymTensor::zero(exp.dim, exp.rank);
    for i in 0..=upto {
        let c = exp.coefficient(i);
        acc = if i % 2 == 0 { &acc + &c } else { &acc - &c };
    }
    acc
}

/// `Z°(P) = Σ_F (-1)^{dim F} Z(F)` over the non-empty faces.
pub fn face_sum(
    p: &LatticePolytope,
    z: impl Fn(&LatticePolytope) -> SymTensor,
    dim: usize,
    rank: u32,
) -> SymTensor {
    let mut acc = SymTensor::zero(dim, rank);
    for face in p.faces() {
        let v = z(&face);
        acc = if face.dim().unwrap_or(0) % 2 == 0 {
            &acc + &v
        } else {
            &acc - &v
        };
    }
    acc
}

/// Reciprocity for the discrete moment tensor, checked three ways:
///
/// * strict enumeration against `(-1)^{m+r} Σ_{i=0}^{m+r} (-1)^i L^r_i(P)`,
/// * strict enumeration against `(-1)^m Σ_F (-1)^{dim F} L^r(F)`,
/// * per coefficient, `Σ_F (-1)^{dim F} L^r_i(F) = (-1)^i L^r_i(-P)`.
pub fn check_reciprocity(p: &LatticePolytope, r: u32) -> CheckReport {
    let mut report = CheckReport::new("reciprocity");
    let Some(m) = p.dim() else {
        return report;
    };
    let n = p.ambient_dim();
    let interior = discrete_moment_relint(p, r);
    let exp = ehrhart_tensors(p, r);
    let mut rhs = alternating_sum(&exp, m + r as usize);
    if (m + r as usize) % 2 == 1 {
        rhs = -&rhs;
    }
    report.compare(
        || "L(relint P) vs alternating Ehrhart sum".into(),
        &interior,
        &rhs,
    );

    let mut by_faces = face_sum(p, |f| discrete_moment(f, r), n, r);
    if m % 2 == 1 {
        by_faces = -&by_faces;
    }
    report.compare(|| "L(relint P) vs face sum".into(), &interior, &by_faces);

    let face_exps: Vec<(EhrhartTensorExpansion, usize)> = p
        .faces()
        .iter()
        .map(|f| (ehrhart_tensors(f, r), f.dim().unwrap_or(0)))
        .collect();
    let neg = ehrhart_tensors(&p.negate().expect("negation preserves validity"), r);
    for i in 0..=n + r as usize {
        let mut lhs = SymTensor::zero(n, r);
        for (e, d) in &face_exps {
            let c = e.coefficient(i);
            lhs = if d % 2 == 0 { &lhs + &c } else { &lhs - &c };
        }
        let mut right = neg.coefficient(i);
        if i % 2 == 1 {
            right = -&right;
        }
        report.compare(
            || format!("face sum of L_{i} vs (-1)^{i} L_{i}(-P)"),
            &lhs,
            &right,
        );
    }
    report
}

/// `L^r_l(P + y) = Σ_{j=0}^{l} L^{r-j}_{l-j}(P) ⊙ y^j / j!` for every `l`.
pub fn check_translation_covariance(p: &LatticePolytope, r: u32, y: &[i64]) -> Result<CheckReport> {
    let n = p.ambient_dim();
    let moved = p.translate(y)?;
    let mut report = CheckReport::new("translation covariance");
    let shifted = ehrhart_tensors(&moved, r);
    let lower: Vec<EhrhartTensorExpansion> = (0..=r).map(|s| ehrhart_tensors(p, s)).collect();
    for l in 0..=n + r as usize {
        let mut rhs = SymTensor::zero(n, r);
        for j in 0..=l.min(r as usize) {
            let base = lower[r as usize - j].coefficient(l - j);
            if base.is_zero() {
                continue;
            }
            let yj =
                sym_power(y, j as u32).scaled(&Rational::new(BigInt::one(), factorial(j as u32)));
            rhs += &sym_product(&base, &yj)?;
        }
        report.compare(|| format!("L_{l}(P+y)"), &shifted.coefficient(l), &rhs);
    }
    Ok(report)
}

/// `L^r(φP) = L^r(P) ∘ φᵗ`, and likewise for every coefficient `L^r_i`.
pub fn check_equivariance(p: &LatticePolytope, r: u32, phi: &[Vec<i64>]) -> Result<CheckReport> {
    let map = UnimodularMap::linear(phi.to_vec())?;
    let image = p.transform(&map)?;
    let mut report = CheckReport::new("equivariance");
    let direct = discrete_moment(&image, r);
    let acted = apply_linear(&discrete_moment(p, r), phi)?;
    report.compare(|| "L(φP)".into(), &direct, &acted);
    let left = ehrhart_tensors(&image, r);
    let right = ehrhart_tensors(p, r);
    for i in 0..left.coefficients().len() {
        let acted = apply_linear(&right.coefficient(i), phi)?;
        report.compare(|| format!("L_{i}(φP)"), &left.coefficient(i), &acted);
    }
    Ok(report)
}

/// Combined report of covariance and equivariance on one instance.
pub fn check_covariance_and_equivariance(
    p: &LatticePolytope,
    r: u32,
    y: &[i64],
    phi: &[Vec<i64>],
) -> Result<CheckReport> {
    let mut report = check_translation_covariance(p, r, y)?;
    report.absorb(check_equivariance(p, r, phi)?);
    report.name = "covariance+equivariance".into();
    Ok(report)
}

/// Linear coefficient in `k` of `Σ_{x ∈ kP} (x · v)^r`, without the `1/r!`
/// normalization, by brute-force sums and interpolation.
pub fn unnormalized_linear_coefficient(p: &LatticePolytope, v: &[i64], r: u32) -> Rational {
    let nodes = p.ambient_dim() + r as usize + 1;
    let values: Vec<Rational> = (0..nodes)
        .map(|k| {
            let kp = p
                .dilate(k as u64)
                .expect("dilates of a valid polytope are valid");
            let sum = lattice_points(&kp)
                .iter()
                .map(|x| {
                    let dot: i64 = x.iter().zip(v).map(|(a, b)| a * b).sum();
                    BigInt::from(dot).pow(r)
                })
                .fold(BigInt::zero(), |acc, t| acc + t);
            Rational::from_integer(sum)
        })
        .collect();
    interpolate(&values)[1].clone()
}

/// `L^r_1(P)`.
pub fn linear_coefficient(p: &LatticePolytope, r: u32) -> SymTensor {
    ehrhart_tensors(p, r).coefficient(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int};
    use crate::polytope::{segment, standard_simplex, unit_cube};

    fn idx(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    #[test]
    fn discrete_moment_examples() {
        let t2 = standard_simplex(2, 2).unwrap();
        let l1 = discrete_moment(&t2, 1);
        assert_eq!(l1.coord(&[1, 0]), int(1));
        assert_eq!(l1.coord(&[0, 1]), int(1));
        let sq = discrete_moment(&unit_cube(2).unwrap(), 2);
        assert_eq!(sq.coord(&[2, 0]), int(1));
        assert_eq!(sq.coord(&[1, 1]), frac(1, 2));
        assert_eq!(sq.coord(&[0, 2]), int(1));
        let origin = LatticePolytope::from_points(&[vec![0, 0]]).unwrap();
        assert!(discrete_moment(&origin, 3).is_zero());
        assert_eq!(discrete_moment(&t2, 0).coord(&[0, 0]), int(3));
    }

    #[test]
    fn relint_moment_examples() {
        let t2 = standard_simplex(2, 2).unwrap();
        assert!(discrete_moment_relint(&t2, 2).is_zero());
        let l = discrete_moment_relint(&t2.dilate(3).unwrap(), 1);
        assert_eq!(l, sym_power(&[1, 1], 1));
        let s = segment(vec![0, 0], vec![2, 0]).unwrap();
        let m = discrete_moment_relint(&s, 2);
        assert_eq!(m.coord(&[2, 0]), frac(1, 2));
        assert_eq!(m.iter().count(), 1);
    }

    #[test]
    fn scalar_ehrhart_of_triangle() {
        let e = ehrhart_tensors(&standard_simplex(2, 2).unwrap(), 0);
        let scalars: Vec<Rational> = e.coefficients().iter().map(|c| c.coord(&[0, 0])).collect();
        assert_eq!(scalars, vec![int(1), frac(3, 2), frac(1, 2)]);
    }

    #[test]
    fn ehrhart_linear_coefficients() {
        let t1 = standard_simplex(1, 1).unwrap();
        assert_eq!(
            ehrhart_tensors(&t1, 1).coefficient(1).coord(&[1]),
            frac(1, 2)
        );
        let t2 = standard_simplex(2, 2).unwrap();
        assert_eq!(
            ehrhart_tensors(&t2, 3).coefficient(1).coord(&[3, 0]),
            frac(1, 180)
        );
    }

    #[test]
    fn interpolation_extrapolates() {
        let p = LatticePolytope::from_points(&[vec![0, 0], vec![2, 1], vec![1, 3]]).unwrap();
        let e = ehrhart_tensors(&p, 2);
        for k in 0..8 {
            assert_eq!(e.evaluate_at(k), discrete_moment(&p.dilate(k).unwrap(), 2));
        }
        assert!(e.coefficient(0).is_zero());
    }

    #[test]
    fn moment_tensor_examples() {
        let sq = unit_cube(2).unwrap();
        assert_eq!(moment_tensor(&sq, 0).unwrap().coord(&[0, 0]), int(1));
        assert_eq!(
            moment_tensor(&sq, 1).unwrap(),
            sym_power(&[1, 1], 1).scaled(&frac(1, 2))
        );
        let m = moment_tensor(&standard_simplex(2, 2).unwrap(), 2).unwrap();
        assert_eq!(m.coord(&[2, 0]), frac(1, 24));
        assert_eq!(m.coord(&[1, 1]), frac(1, 48));
        assert_eq!(m.coord(&[0, 2]), frac(1, 24));
        let t3 = standard_simplex(3, 3).unwrap();
        assert_eq!(moment_tensor(&t3, 0).unwrap().coord(&[0, 0, 0]), frac(1, 6));
        assert!(moment_tensor(&segment(vec![0, 0], vec![1, 0]).unwrap(), 1).is_err());
    }

    #[test]
    fn reciprocity_examples() {
        let t2 = standard_simplex(2, 2).unwrap();
        for r in 0..3 {
            assert!(check_reciprocity(&t2, r).passed());
        }
        let big = t2.dilate(3).unwrap();
        let report = check_reciprocity(&big, 0);
        assert!(report.passed(), "{:?}", report.mismatch);
        assert_eq!(discrete_moment_relint(&big, 0).coord(&[0, 0]), int(1));
    }

    #[test]
    fn covariance_examples() {
        let t2 = standard_simplex(2, 2).unwrap();
        for y in [[0, 0], [1, 1], [-2, 3]] {
            assert!(check_translation_covariance(&t2, 2, &y).unwrap().passed());
        }
        assert!(check_translation_covariance(&t2, 0, &[5, -1])
            .unwrap()
            .passed());
    }

    #[test]
    fn equivariance_examples() {
        let t2 = standard_simplex(2, 2).unwrap();
        assert!(check_equivariance(&t2, 2, &[vec![1, 0], vec![0, 1]])
            .unwrap()
            .passed());
        assert!(check_equivariance(&t2, 3, &[vec![1, 1], vec![0, 1]])
            .unwrap()
            .passed());
        assert!(check_equivariance(&t2, 1, &[vec![2, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn lower_dimensional_coordinates_vanish() {
        // a polygon in span(e_1, e_2) inside R^3: coordinates touching e_3 vanish
        let p =
            LatticePolytope::from_points(&[vec![0, 0, 0], vec![2, 1, 0], vec![1, 2, 0]]).unwrap();
        let e = ehrhart_tensors(&p, 2);
        for c in e.coefficients() {
            for (alpha, _) in c.iter() {
                assert_eq!(alpha.exponents()[2], 0);
            }
        }
        assert!(e.coefficient(5).is_zero());
        assert!(!e.coefficient(4).is_zero());
    }

    #[test]
    fn power_sum_linear_coefficients() {
        let t1 = standard_simplex(1, 1).unwrap();
        let t2 = standard_simplex(2, 2).unwrap();
        assert_eq!(unnormalized_linear_coefficient(&t1, &[1], 1), frac(1, 2));
        assert_eq!(unnormalized_linear_coefficient(&t2, &[1, 0], 1), frac(1, 3));
        assert_eq!(
            unnormalized_linear_coefficient(&t2, &[1, 0], 3),
            frac(1, 30)
        );
    }

    #[test]
    fn mismatch_is_reported() {
        let mut report = CheckReport::new("demo");
        report.compare(
            || "x".into(),
            &sym_power(&[1, 0], 1),
            &sym_power(&[1, 1], 1),
        );
        let m = report.mismatch.clone().unwrap();
        assert_eq!(m.index, idx(&[0, 1]));
        assert_eq!(m.to_string(), "x at (0,1): 0 != 1");
    }
}
