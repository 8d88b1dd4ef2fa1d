//! Exact linear constraint systems on the coordinates of `Z(T_n)` for a
//! simple, translation invariant, `SL_n(Z)` equivariant tensor valuation `Z`.
//!
//! Planar systems come from `T_2 - e_2 = φ T_2` with `φ: e_1 ↦ -e_2,
//! e_2 ↦ e_1 - e_2`, together with the reflection `ϑ` swapping `e_1, e_2`
//! that splits `Z` into symmetric and antisymmetric parts. Prism systems come
//! from dissecting `T_{n-1} + [0, e_n]` into `n` unimodular simplices.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{binomial, sign_pow, Rational};
use crate::error::{Error, Result};
use crate::linalg::{bareiss_rank, kernel_basis, Pivoting};
use crate::polytope::dissection_maps;
use crate::tensor::{coordinate_row_int, multi_indices, MultiIndex, SymTensor};

/// Sign of the reflection component: `+1` symmetric, `-1` antisymmetric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Plus,
    Minus,
}

impl Parity {
    pub fn sign(self) -> i64 {
        match self {
            Parity::Plus => 1,
            Parity::Minus => -1,
        }
    }

    pub fn from_sign(s: i64) -> Result<Self> {
        match s {
            1 => Ok(Parity::Plus),
            -1 => Ok(Parity::Minus),
            _ => Err(Error::InvalidArgument(format!(
                "parity must be +1 or -1, got {s}"
            ))),
        }
    }
}

/// Which coordinates of the prism value are required to vanish, by parity
/// of the `e_n` exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoordinateFilter {
    All,
    EnOdd,
    EnEven,
}

impl CoordinateFilter {
    fn keeps(self, alpha: &MultiIndex) -> bool {
        let last = alpha.exponents().last().copied().unwrap_or(0);
        match self {
            CoordinateFilter::All => true,
            CoordinateFilter::EnOdd => last % 2 == 1,
            CoordinateFilter::EnEven => last % 2 == 0,
        }
    }
}

/// Relation that produced a row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RowSource {
    /// `Z(T_2)(e_1[r_1], e_2[r_2]) = Z(T_2)(φᵗe_1[r_1], φᵗe_2[r_2])`.
    Rotation { r1: u32 },
    /// `x_{r_1} = ± x_{r - r_1}`.
    Reflection { r1: u32 },
    /// Hand-transcribed planar relation for index `r_1 ≥ 1`.
    Transcribed { r1: u32 },
    /// `(1 + (-1)^r) x_{r_1} = 0`, from the unit square.
    Square { r1: u32 },
    /// Prism coordinate `α` of `Σ_i Z(T_n) ∘ φ_iᵗ` vanishes.
    Dissection { alpha: MultiIndex },
    /// `x_α = x_{σα}` for the 3-cycle `σ = (0 1 k)`.
    Permutation { alpha: MultiIndex, k: usize },
}

impl fmt::Display for RowSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowSource::Rotation { r1 } => write!(f, "rotation r1={r1}"),
            RowSource::Reflection { r1 } => write!(f, "reflection r1={r1}"),
            RowSource::Transcribed { r1 } => write!(f, "transcribed r1={r1}"),
            RowSource::Square { r1 } => write!(f, "square r1={r1}"),
            RowSource::Dissection { alpha } => write!(f, "dissection ({alpha})"),
            RowSource::Permutation { alpha, k } => write!(f, "permutation (0 1 {k}) on ({alpha})"),
        }
    }
}

/// Sparse integer row: column index to coefficient.
pub type Row = BTreeMap<usize, BigInt>;

/// Homogeneous linear system over the coordinates of a rank-`r` tensor on `R^n`.
///
/// When `orbits` is set, the unknowns are additionally constrained to be
/// constant on each orbit (the even-permutation symmetry of `T_n`); rank and
/// kernel are then computed on orbit representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    dim: usize,
    rank: u32,
    unknowns: Vec<MultiIndex>,
    rows: Vec<Row>,
    sources: Vec<RowSource>,
    orbits: Option<Vec<Vec<usize>>>,
}

impl ConstraintSystem {
    fn new(dim: usize, rank: u32) -> Self {
        ConstraintSystem {
            dim,
            rank,
            unknowns: multi_indices(dim, rank),
            rows: Vec::new(),
            sources: Vec::new(),
            orbits: None,
        }
    }

    fn push(&mut self, row: Row, source: RowSource) {
        let row: Row = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        self.rows.push(row);
        self.sources.push(source);
    }

    pub fn tensor_dim(&self) -> usize {
        self.dim
    }

    pub fn tensor_rank(&self) -> u32 {
        self.rank
    }

    /// Column labels in lexicographic order.
    pub fn unknowns(&self) -> &[MultiIndex] {
        &self.unknowns
    }

    pub fn num_unknowns(&self) -> usize {
        self.unknowns.len()
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn sources(&self) -> &[RowSource] {
        &self.sources
    }

    /// Orbits of unknowns identified by the implicit symmetry, if any.
    pub fn orbits(&self) -> Option<&[Vec<usize>]> {
        self.orbits.as_deref()
    }

    /// Rows as rationals, dense.
    pub fn dense_rows(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|row| {
                let mut dense = vec![Rational::zero(); self.num_unknowns()];
                for (&c, v) in row {
                    dense[c] = Rational::from_integer(v.clone());
                }
                dense
            })
            .collect()
    }

    /// Integer matrix in the reduced variables (one column per orbit, or per
    /// unknown when no symmetry is implicit).
    fn reduced_integer_rows(&self) -> (Vec<Vec<BigInt>>, usize) {
        match &self.orbits {
            None => {
                let u = self.num_unknowns();
                let rows = self
                    .rows
                    .iter()
                    .map(|row| {
                        let mut dense = vec![BigInt::zero(); u];
                        for (&c, v) in row {
                            dense[c] = v.clone();
                        }
                        dense
                    })
                    .collect();
                (rows, u)
            }
            Some(orbits) => {
                let mut owner = vec![0usize; self.num_unknowns()];
                for (o, members) in orbits.iter().enumerate() {
                    for &m in members {
                        owner[m] = o;
                    }
                }
                let rows = self
                    .rows
                    .iter()
                    .map(|row| {
                        let mut dense = vec![BigInt::zero(); orbits.len()];
                        for (&c, v) in row {
                            dense[owner[c]] += v;
                        }
                        dense
                    })
                    .collect();
                (rows, orbits.len())
            }
        }
    }

    /// Exact rank over the rationals by fraction-free elimination.
    pub fn rank(&self) -> usize {
        self.rank_with(Pivoting::default())
    }

    pub fn rank_with(&self, pivoting: Pivoting) -> usize {
        let (rows, cols) = self.reduced_integer_rows();
        let reduced_rank = bareiss_rank(&rows, cols, pivoting);
        // each orbit of size s contributes s - 1 independent equalities
        self.num_unknowns() - cols + reduced_rank
    }

    pub fn kernel_dim(&self) -> usize {
        self.num_unknowns() - self.rank()
    }

    /// Kernel basis in canonical reduced form, as coordinate vectors over
    /// [`Self::unknowns`].
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (rows, cols) = self.reduced_integer_rows();
        let q: Vec<Vec<Rational>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(Rational::from_integer).collect())
            .collect();
        let reduced = kernel_basis(&q, cols);
        match &self.orbits {
            None => reduced,
            Some(orbits) => reduced
                .into_iter()
                .map(|v| {
                    let mut full = vec![Rational::zero(); self.num_unknowns()];
                    for (o, members) in orbits.iter().enumerate() {
                        for &m in members {
                            full[m] = v[o].clone();
                        }
                    }
                    full
                })
                .collect(),
        }
    }

    /// Kernel vectors as tensors.
    pub fn kernel_tensors(&self) -> Vec<SymTensor> {
        self.kernel_basis()
            .into_iter()
            .map(|v| {
                SymTensor::from_dense(self.dim, self.rank, &v)
                    .expect("kernel vectors match the unknowns")
            })
            .collect()
    }

    /// `true` if the coordinates of `t` satisfy every row (and the implicit symmetry).
    pub fn annihilates(&self, t: &SymTensor) -> bool {
        if t.dim() != self.dim || t.rank() != self.rank {
            return false;
        }
        let x: Vec<Rational> = t.dense();
        let rows_ok = self.rows.iter().all(|row| {
            row.iter()
                .map(|(&c, v)| Rational::from_integer(v.clone()) * &x[c])
                .fold(Rational::zero(), |acc, y| acc + y)
                .is_zero()
        });
        let orbits_ok = self
            .orbits
            .as_ref()
            .is_none_or(|orbits| orbits.iter().all(|o| o.iter().all(|&m| x[m] == x[o[0]])));
        rows_ok && orbits_ok
    }

    /// Same system with the implicit orbit symmetry written out as explicit
    /// rows `x_α - x_{σα}` for the generating 3-cycles `(0 1 k)`.
    pub fn with_explicit_symmetry(&self) -> ConstraintSystem {
        let mut out = self.clone();
        if self.orbits.is_some() {
            out.orbits = None;
            let index: HashMap<&MultiIndex, usize> = self
                .unknowns
                .iter()
                .enumerate()
                .map(|(i, a)| (a, i))
                .collect();
            for (i, alpha) in self.unknowns.iter().enumerate() {
                for k in 2..self.dim {
                    let image = three_cycle(alpha, k);
                    let j = index[&image];
                    if i != j {
                        let mut row = Row::new();
                        row.insert(i, BigInt::one());
                        row.insert(j, -BigInt::one());
                        out.push(
                            row,
                            RowSource::Permutation {
                                alpha: alpha.clone(),
                                k,
                            },
                        );
                    }
                }
            }
        }
        out
    }

    /// Same system with rows in a seeded random order.
    pub fn shuffled(&self, seed: u64) -> ConstraintSystem {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let mut out = self.clone();
        out.rows = order.iter().map(|&i| self.rows[i].clone()).collect();
        out.sources = order.iter().map(|&i| self.sources[i].clone()).collect();
        out
    }

    /// Union of the rows of two systems on the same unknowns.
    pub fn stacked(&self, other: &ConstraintSystem) -> Result<ConstraintSystem> {
        if self.unknowns != other.unknowns || self.orbits != other.orbits {
            return Err(Error::InvalidArgument(
                "systems have different unknowns".into(),
            ));
        }
        let mut out = self.clone();
        out.rows.extend(other.rows.iter().cloned());
        out.sources.extend(other.sources.iter().cloned());
        Ok(out)
    }
}

/// `α ∘ σ` for `σ = (0 1 k)`: the exponent at position `0` moves to `1`,
/// `1` to `k`, `k` to `0`.
fn three_cycle(alpha: &MultiIndex, k: usize) -> MultiIndex {
    let mut e = alpha.exponents().to_vec();
    let (a, b, c) = (e[0], e[1], e[k]);
    e[1] = a;
    e[k] = b;
    e[0] = c;
    MultiIndex::new(e)
}

/// Orbits of the multi-indices under the even permutations of coordinates,
/// generated by the 3-cycles `(0 1 k)`, `k = 2..n-1`.
pub fn even_permutation_orbits(unknowns: &[MultiIndex]) -> Vec<Vec<usize>> {
    let n = unknowns.first().map_or(0, |a| a.dim());
    let index: HashMap<&MultiIndex, usize> =
        unknowns.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut seen = vec![false; unknowns.len()];
    let mut orbits = Vec::new();
    for start in 0..unknowns.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for k in 2..n {
                let j = index[&three_cycle(&unknowns[i], k)];
                if !seen[j] {
                    seen[j] = true;
                    orbit.push(j);
                    stack.push(j);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

fn unit_row(i: usize) -> Row {
    let mut row = Row::new();
    row.insert(i, BigInt::one());
    row
}

fn add_row(target: &mut Row, entries: impl IntoIterator<Item = (usize, BigInt)>) {
    for (c, v) in entries {
        *target.entry(c).or_insert_with(BigInt::zero) += v;
    }
}

/// Rotation relations only: `x_{r_1} - Z(T_2)(φᵗe_1[r_1], φᵗe_2[r_2]) = 0`
/// for `r_1 = 0..r`, generated through `coordinate_row`.
pub fn planar_relation_system(r: u32) -> ConstraintSystem {
    let mut sys = ConstraintSystem::new(2, r);
    let phi_t = [vec![0i64, 1], vec![-1, -1]];
    let index: HashMap<MultiIndex, usize> = sys
        .unknowns
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, a)| (a, i))
        .collect();
    for r1 in 0..=r {
        let mut vectors = vec![phi_t[0].clone(); r1 as usize];
        vectors.extend(std::iter::repeat_n(phi_t[1].clone(), (r - r1) as usize));
        let functional = coordinate_row_int(&vectors, 2).expect("plane vectors");
        let mut row = unit_row(r1 as usize);
        add_row(
            &mut row,
            functional
                .into_iter()
                .map(|(a, c)| (index[&a], -BigInt::from(c))),
        );
        sys.push(row, RowSource::Rotation { r1 });
    }
    sys
}

fn reflection_rows(sys: &mut ConstraintSystem, parity: Parity) {
    let r = sys.rank;
    for r1 in 0..=r {
        let mut row = unit_row(r1 as usize);
        add_row(
            &mut row,
            [((r - r1) as usize, BigInt::from(-parity.sign()))],
        );
        sys.push(row, RowSource::Reflection { r1 });
    }
}

/// Rotation relations plus `x_{r_1} = parity · x_{r - r_1}`. Unknown `x_{r_1}`
/// is `Z(T_2)(e_1[r_1], e_2[r - r_1])`, column `r_1`.
pub fn planar_system(r: u32, parity: Parity) -> ConstraintSystem {
    let mut sys = planar_relation_system(r);
    reflection_rows(&mut sys, parity);
    sys
}

/// The planar relations in the hand-simplified form
/// `Σ_{i<r_1} C(r_1, i) x_i + [r_1 odd] · 2 x_{r_1} = 0` for `r_1 = 1..r`,
/// plus the reflection rows.
pub fn transcribed_planar_system(r: u32, parity: Parity) -> ConstraintSystem {
    let mut sys = ConstraintSystem::new(2, r);
    for r1 in 1..=r {
        let mut row: Row = (0..r1).map(|i| (i as usize, binomial(r1, i))).collect();
        if r1 % 2 == 1 {
            add_row(&mut row, [(r1 as usize, BigInt::from(2))]);
        }
        sys.push(row, RowSource::Transcribed { r1 });
    }
    reflection_rows(&mut sys, parity);
    sys
}

/// Adds `(1 + (-1)^r) x_{r_1} = 0` for every `r_1`.
pub fn with_square_relation(sys: &ConstraintSystem) -> ConstraintSystem {
    let mut out = sys.clone();
    let factor = BigInt::from(1 + sign_pow(sys.rank as usize));
    for r1 in 0..=sys.rank {
        let mut row = Row::new();
        row.insert(r1 as usize, factor.clone());
        out.push(row, RowSource::Square { r1 });
    }
    out
}

/// Prism relations `Σ_{i=1}^n Z(T_n)(φ_iᵗe_1[α_1], …, φ_iᵗe_n[α_n]) = 0` for
/// every `α` passing `filter`, with the even-permutation symmetry of `T_n`
/// imposed implicitly through orbits.
pub fn prism_system(n: usize, r: u32, filter: CoordinateFilter) -> Result<ConstraintSystem> {
    if n < 2 {
        return Err(Error::InvalidArgument("prism systems need n ≥ 2".into()));
    }
    if n > 8 || r > 20 {
        return Err(Error::LimitExceeded(format!(
            "prism system n={n}, r={r} exceeds n ≤ 8, r ≤ 20"
        )));
    }
    let mut sys = ConstraintSystem::new(n, r);
    let index: HashMap<MultiIndex, usize> = sys
        .unknowns
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, a)| (a, i))
        .collect();
    let maps = dissection_maps(n);
    for alpha in sys.unknowns.clone() {
        if !filter.keeps(&alpha) {
            continue;
        }
        let mut row = Row::new();
        for m in &maps {
            // φᵗ e_j is row j of φ
            let vectors: Vec<Vec<i64>> = alpha.axes().into_iter().map(|j| m[j].clone()).collect();
            let functional = coordinate_row_int(&vectors, n)?;
            add_row(
                &mut row,
                functional
                    .into_iter()
                    .map(|(a, c)| (index[&a], BigInt::from(c))),
            );
        }
        sys.push(row, RowSource::Dissection { alpha });
    }
    sys.orbits = Some(even_permutation_orbits(&sys.unknowns));
    Ok(sys)
}

/// Ranks of the planar assemblies at one rank `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyRow {
    pub r: u32,
    pub unknowns: usize,
    /// Rotation relations alone.
    pub raw: usize,
    pub generated_plus: usize,
    pub generated_minus: usize,
    /// `unknowns - (kernel_plus + kernel_minus)`.
    pub generated_combined: usize,
    pub transcribed_plus: usize,
    pub transcribed_minus: usize,
    pub transcribed_combined: usize,
    /// Headline value: the symmetric component of the generated system.
    pub combined: usize,
    /// Reference value, when one exists for this `r`.
    pub expected: Option<usize>,
}

impl SurveyRow {
    pub fn matches(&self) -> Option<bool> {
        self.expected.map(|e| e == self.combined)
    }
}

/// Expected combined rank for odd `r ≥ 9`: `r - 1` up to 13, `r - 2` for 15..19.
pub fn expected_survey_rank(r: u32) -> Option<usize> {
    match r {
        9 | 11 | 13 => Some(r as usize - 1),
        15 | 17 | 19 => Some(r as usize - 2),
        _ => None,
    }
}

pub fn survey_row(r: u32) -> SurveyRow {
    let u = r as usize + 1;
    let gp = planar_system(r, Parity::Plus).rank();
    let gm = planar_system(r, Parity::Minus).rank();
    let tp = transcribed_planar_system(r, Parity::Plus).rank();
    let tm = transcribed_planar_system(r, Parity::Minus).rank();
    let combine = |a: usize, b: usize| u - ((u - a) + (u - b));
    SurveyRow {
        r,
        unknowns: u,
        raw: planar_relation_system(r).rank(),
        generated_plus: gp,
        generated_minus: gm,
        generated_combined: combine(gp, gm),
        transcribed_plus: tp,
        transcribed_minus: tm,
        transcribed_combined: combine(tp, tm),
        combined: gp,
        expected: expected_survey_rank(r),
    }
}

pub fn high_rank_survey(rs: &[u32]) -> Result<Vec<SurveyRow>> {
    if let Some(&r) = rs.iter().find(|&&r| r > 20) {
        return Err(Error::LimitExceeded(format!("survey rank {r} exceeds 20")));
    }
    Ok(rs.iter().map(|&r| survey_row(r)).collect())
}

pub const SURVEY_HEADER: &str = "r,unknowns,raw,generated_plus,generated_minus,generated_combined,transcribed_plus,transcribed_minus,transcribed_combined,combined,expected,matches";

pub fn survey_csv(rows: &[SurveyRow]) -> String {
    let mut out = String::from(SURVEY_HEADER);
    out.push('\n');
    for row in rows {
        let opt = |v: Option<String>| v.unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            row.r,
            row.unknowns,
            row.raw,
            row.generated_plus,
            row.generated_minus,
            row.generated_combined,
            row.transcribed_plus,
            row.transcribed_minus,
            row.transcribed_combined,
            row.combined,
            opt(row.expected.map(|e| e.to_string())),
            opt(row.matches().map(|m| m.to_string())),
        ));
    }
    out
}
