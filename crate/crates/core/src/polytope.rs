//! Lattice polytopes: canonical vertex sets, facets relative to the affine
//! hull, faces, standard constructions and unimodular maps.
//!
//! Facets are found by exhaustive search over affinely independent vertex
//! subsets of size `dim`, which is fine at the sizes this crate targets
//! (ambient dimension at most 6, a few dozen points).

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::linalg::{det_i128, determinant, integer_kernel, rref};

/// Default cap on the ambient dimension.
pub const DEFAULT_MAX_DIM: usize = 6;

pub type Point = Vec<i64>;

/// Inequality `normal · x ≤ offset`, tight exactly on the listed vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
    /// Indices into the polytope's vertex list.
    pub vertices: Vec<usize>,
}

/// Convex hull of finitely many integer points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePolytope {
    ambient: usize,
    vertices: Vec<Point>,
    dim: Option<usize>,
    /// Integer equations `a · x = b` cutting out the affine hull.
    equations: Vec<(Vec<i64>, i64)>,
    facets: Vec<Facet>,
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Greedy maximal linearly independent subset of `vectors`.
fn independent_subset(vectors: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let mut basis: Vec<Vec<i64>> = Vec::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for v in vectors {
        let mut candidate = rows.clone();
        candidate.push(
            v.iter()
                .map(|&x| Rational::from_integer(BigInt::from(x)))
                .collect(),
        );
        if rref(&candidate, n).1.len() > basis.len() {
            basis.push(v.clone());
            rows = candidate;
            if basis.len() == n {
                break;
            }
        }
    }
    basis
}

impl LatticePolytope {
    /// The empty polytope in `R^ambient`; every valuation vanishes on it.
    pub fn empty(ambient: usize) -> Self {
        LatticePolytope {
            ambient,
            vertices: Vec::new(),
            dim: None,
            equations: Vec::new(),
            facets: Vec::new(),
        }
    }

    pub fn from_points(points: &[Point]) -> Result<Self> {
        LatticePolytope::from_points_capped(points, DEFAULT_MAX_DIM)
    }

    /// Convex hull of `points`; an empty list yields the empty polytope.
    pub fn from_points_capped(points: &[Point], max_dim: usize) -> Result<Self> {
        let Some(first) = points.first() else {
            return Ok(LatticePolytope::empty(0));
        };
        let n = first.len();
        if let Some(p) = points.iter().find(|p| p.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.len(),
            });
        }
        if n > max_dim {
            return Err(Error::LimitExceeded(format!(
                "ambient dimension {n} exceeds cap {max_dim}"
            )));
        }
        if points.iter().flatten().any(|x| x.unsigned_abs() > 1 << 24) {
            return Err(Error::LimitExceeded("coordinates exceed 2^24".into()));
        }
        let pts: Vec<Point> = points
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let base = pts[0].clone();
        let diffs: Vec<Vec<i64>> = pts[1..].iter().map(|p| sub(p, &base)).collect();
        let basis = independent_subset(&diffs, n);
        let d = basis.len();
        let equations: Vec<(Vec<i64>, i64)> = integer_kernel(&basis, n)
            .into_iter()
            .map(|a| {
                let b = dot(&a, &base) as i64;
                (a, b)
            })
            .collect();

        let raw_facets = if d == 0 {
            Vec::new()
        } else {
            find_facets(&pts, &basis)
        };

        let vertices: Vec<Point> = if d == 0 {
            vec![base]
        } else {
            let m = pts.len();
            (0..m)
                .filter(|&i| {
                    let mut common: Option<Vec<bool>> = None;
                    for (_, _, tight) in &raw_facets {
                        if !tight[i] {
                            continue;
                        }
                        common = Some(match common {
                            None => tight.clone(),
                            Some(c) => c.iter().zip(tight).map(|(x, y)| *x && *y).collect(),
                        });
                    }
                    common.is_some_and(|c| c.iter().filter(|&&x| x).count() == 1)
                })
                .map(|i| pts[i].clone())
                .collect()
        };

        let mut facets: Vec<Facet> = raw_facets
            .into_iter()
            .map(|(normal, offset, _)| {
                let tight = vertices
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| dot(&normal, v) == offset as i128)
                    .map(|(i, _)| i)
                    .collect();
                Facet {
                    normal,
                    offset,
                    vertices: tight,
                }
            })
            .collect();
        facets.sort();

        Ok(LatticePolytope {
            ambient: n,
            vertices,
            dim: Some(d),
            equations,
            facets,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Affine dimension, `None` for the empty polytope.
    pub fn dim(&self) -> Option<usize> {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.dim.is_none()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == Some(self.ambient)
    }

    /// Extreme points, sorted lexicographically.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Facets relative to the affine hull.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn equations(&self) -> &[(Vec<i64>, i64)] {
        &self.equations
    }

    fn in_affine_hull(&self, x: &[i64]) -> bool {
        self.equations.iter().all(|(a, b)| dot(a, x) == *b as i128)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        !self.is_empty()
            && x.len() == self.ambient
            && self.in_affine_hull(x)
            && self
                .facets
                .iter()
                .all(|f| dot(&f.normal, x) <= f.offset as i128)
    }

    /// Membership in the relative interior.
    pub fn contains_relint(&self, x: &[i64]) -> bool {
        !self.is_empty()
            && x.len() == self.ambient
            && self.in_affine_hull(x)
            && self
                .facets
                .iter()
                .all(|f| dot(&f.normal, x) < f.offset as i128)
    }

    /// Componentwise min and max over the vertices.
    pub fn bounding_box(&self) -> Option<(Point, Point)> {
        let first = self.vertices.first()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for v in &self.vertices {
            for i in 0..self.ambient {
                lo[i] = lo[i].min(v[i]);
                hi[i] = hi[i].max(v[i]);
            }
        }
        Some((lo, hi))
    }

    fn map_vertices(&self, f: impl Fn(&Point) -> Point) -> Result<Self> {
        if self.is_empty() {
            return Ok(self.clone());
        }
        let pts: Vec<Point> = self.vertices.iter().map(f).collect();
        LatticePolytope::from_points(&pts)
    }

    fn check_ambient(&self, n: usize) -> Result<()> {
        if self.ambient != n {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: n,
            });
        }
        Ok(())
    }

    pub fn dilate(&self, k: u64) -> Result<Self> {
        let k = k as i64;
        self.map_vertices(|v| v.iter().map(|x| x * k).collect())
    }

    pub fn translate(&self, y: &[i64]) -> Result<Self> {
        self.check_ambient(y.len())?;
        self.map_vertices(|v| v.iter().zip(y).map(|(a, b)| a + b).collect())
    }

    pub fn negate(&self) -> Result<Self> {
        self.map_vertices(|v| v.iter().map(|x| -x).collect())
    }

    /// Image under an integer matrix (no determinant requirement).
    pub fn linear_image(&self, m: &[Vec<i64>]) -> Result<Self> {
        self.check_ambient(m.len())?;
        self.map_vertices(|v| mat_vec(m, v))
    }

    pub fn transform(&self, map: &UnimodularMap) -> Result<Self> {
        self.check_ambient(map.dim())?;
        self.map_vertices(|v| map.apply(v))
    }

    pub fn minkowski_sum(&self, other: &LatticePolytope) -> Result<Self> {
        if self.is_empty() || other.is_empty() {
            return Ok(LatticePolytope::empty(self.ambient));
        }
        self.check_ambient(other.ambient)?;
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        LatticePolytope::from_points(&pts)
    }

    /// `P + [0, e_n]` for `P` in the hyperplane `x_n = 0`.
    pub fn prism(&self) -> Result<Self> {
        if self.is_empty() || self.ambient == 0 {
            return Err(Error::InvalidArgument("prism of an empty polytope".into()));
        }
        let last = self.ambient - 1;
        if self.vertices.iter().any(|v| v[last] != 0) {
            return Err(Error::InvalidArgument(
                "prism base must lie in the hyperplane x_n = 0".into(),
            ));
        }
        let mut pts = self.vertices.clone();
        for v in &self.vertices {
            let mut w = v.clone();
            w[last] = 1;
            pts.push(w);
        }
        LatticePolytope::from_points(&pts)
    }

    /// Vertex index sets of all non-empty faces with their dimensions, `P` included.
    pub fn face_vertex_sets(&self) -> Vec<(Vec<usize>, usize)> {
        if self.is_empty() {
            return Vec::new();
        }
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier: Vec<Vec<usize>> =
            self.facets.iter().map(|f| f.vertices.clone()).collect();
        for f in &frontier {
            seen.insert(f.clone());
        }
        while let Some(face) = frontier.pop() {
            for facet in &self.facets {
                let meet: Vec<usize> = face
                    .iter()
                    .copied()
                    .filter(|v| facet.vertices.binary_search(v).is_ok())
                    .collect();
                if !meet.is_empty() && seen.insert(meet.clone()) {
                    frontier.push(meet);
                }
            }
        }
        seen.insert((0..self.vertices.len()).collect());
        seen.into_iter()
            .map(|set| {
                let dim = self.subset_dim(&set);
                (set, dim)
            })
            .collect()
    }

    fn subset_dim(&self, set: &[usize]) -> usize {
        let base = &self.vertices[set[0]];
        let diffs: Vec<Vec<i64>> = set[1..]
            .iter()
            .map(|&i| sub(&self.vertices[i], base))
            .collect();
        independent_subset(&diffs, self.ambient).len()
    }

    /// All non-empty faces, including `P` itself.
    pub fn faces(&self) -> Vec<LatticePolytope> {
        self.face_vertex_sets()
            .into_iter()
            .map(|(set, _)| {
                let pts: Vec<Point> = set.iter().map(|&i| self.vertices[i].clone()).collect();
                LatticePolytope::from_points_capped(&pts, usize::MAX)
                    .expect("faces of a valid polytope")
            })
            .collect()
    }

    /// Edges (1-dimensional faces) as vertex index pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.face_vertex_sets()
            .into_iter()
            .filter(|(_, d)| *d == 1)
            .map(|(s, _)| (s[0], s[s.len() - 1]))
            .collect()
    }

    /// Triangulation into `dim`-simplices without new vertices, by recursive
    /// pulling from the lexicographically smallest vertex of each face.
    pub fn triangulate(&self) -> Vec<Vec<Point>> {
        let faces = self.face_vertex_sets();
        let Some(top) = faces.iter().find(|(s, _)| s.len() == self.vertices.len()) else {
            return Vec::new();
        };
        self.pull(&faces, top)
            .into_iter()
            .map(|simplex| {
                simplex
                    .into_iter()
                    .map(|i| self.vertices[i].clone())
                    .collect()
            })
            .collect()
    }

    fn pull(&self, faces: &[(Vec<usize>, usize)], face: &(Vec<usize>, usize)) -> Vec<Vec<usize>> {
        let (set, d) = face;
        if *d == 0 {
            return vec![vec![set[0]]];
        }
        let apex = set[0];
        let mut out = Vec::new();
        for sub_face in faces {
            let (s, sd) = sub_face;
            if *sd + 1 != *d || s.contains(&apex) || !s.iter().all(|v| set.binary_search(v).is_ok())
            {
                continue;
            }
            for mut simplex in self.pull(faces, sub_face) {
                simplex.insert(0, apex);
                out.push(simplex);
            }
        }
        out
    }

    /// Split along the hyperplane `x_axis = c` into the two closed halves and
    /// their common face. Returns `None` when the hyperplane misses the
    /// interior or a cut point is not a lattice point.
    pub fn split(
        &self,
        axis: usize,
        c: i64,
    ) -> Option<(LatticePolytope, LatticePolytope, LatticePolytope)> {
        if self.is_empty() || axis >= self.ambient {
            return None;
        }
        let below = self.vertices.iter().any(|v| v[axis] < c);
        let above = self.vertices.iter().any(|v| v[axis] > c);
        if !below || !above {
            return None;
        }
        let mut cut: Vec<Point> = self
            .vertices
            .iter()
            .filter(|v| v[axis] == c)
            .cloned()
            .collect();
        for (i, j) in self.edges() {
            let (a, b) = (&self.vertices[i], &self.vertices[j]);
            let (lo, hi) = if a[axis] < b[axis] { (a, b) } else { (b, a) };
            if lo[axis] < c && hi[axis] > c {
                let num = c - lo[axis];
                let den = hi[axis] - lo[axis];
                let mut p = Vec::with_capacity(self.ambient);
                for k in 0..self.ambient {
                    let t = (hi[k] - lo[k]) * num;
                    if t % den != 0 {
                        return None;
                    }
                    p.push(lo[k] + t / den);
                }
                cut.push(p);
            }
        }
        let side = |keep: &dyn Fn(i64) -> bool| {
            let mut pts: Vec<Point> = self
                .vertices
                .iter()
                .filter(|v| keep(v[axis]))
                .cloned()
                .collect();
            pts.extend(cut.iter().cloned());
            LatticePolytope::from_points(&pts).ok()
        };
        let left = side(&|x| x < c)?;
        let right = side(&|x| x > c)?;
        let mid = LatticePolytope::from_points(&cut).ok()?;
        Some((left, right, mid))
    }
}

/// Facet hyperplanes of `conv(pts)` relative to the affine hull spanned by `basis`.
fn find_facets(pts: &[Point], basis: &[Vec<i64>]) -> Vec<(Vec<i64>, i64, Vec<bool>)> {
    let d = basis.len();
    let m = pts.len();
    let n = pts[0].len();
    let mut seen: HashSet<(Vec<i64>, i64)> = HashSet::new();
    let mut out = Vec::new();
    let mut combo: Vec<usize> = (0..d).collect();
    loop {
        if let Some(normal) = hyperplane_normal(pts, &combo, basis, n) {
            let b = dot(&normal, &pts[combo[0]]);
            if !seen.contains(&(normal.clone(), b as i64)) {
                let (mut pos, mut neg) = (false, false);
                for p in pts {
                    let s = dot(&normal, p) - b;
                    pos |= s > 0;
                    neg |= s < 0;
                    if pos && neg {
                        break;
                    }
                }
                if !(pos && neg) {
                    let (a, off) = if pos {
                        (normal.iter().map(|x| -x).collect::<Vec<_>>(), -b)
                    } else {
                        (normal, b)
                    };
                    let off = off as i64;
                    if seen.insert((a.clone(), off)) {
                        let tight = pts.iter().map(|p| dot(&a, p) == off as i128).collect();
                        out.push((a, off, tight));
                    }
                }
            }
        }
        // next combination in lex order
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if combo[i] < m - d + i {
                combo[i] += 1;
                for j in i + 1..d {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Primitive normal, inside `span(basis)`, of the hyperplane through the
/// chosen points; `None` if they are affinely dependent.
fn hyperplane_normal(
    pts: &[Point],
    combo: &[usize],
    basis: &[Vec<i64>],
    n: usize,
) -> Option<Vec<i64>> {
    let d = basis.len();
    let p0 = &pts[combo[0]];
    let ws: Vec<Vec<i64>> = combo[1..].iter().map(|&i| sub(&pts[i], p0)).collect();
    // M[j][k] = basis_k · w_j, size (d-1) × d; coefficients are signed maximal minors
    let m: Vec<Vec<i128>> = ws
        .iter()
        .map(|w| basis.iter().map(|b| dot(b, w)).collect())
        .collect();
    let coeffs: Vec<i128> = (0..d)
        .map(|k| {
            let minor: Vec<Vec<i128>> = m
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != k)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let s = if k % 2 == 0 { 1 } else { -1 };
            s * det_i128(&minor)
        })
        .collect();
    if coeffs.iter().all(|&c| c == 0) {
        return None;
    }
    let mut normal = vec![0i128; n];
    for (c, b) in coeffs.iter().zip(basis) {
        for i in 0..n {
            normal[i] += c * b[i] as i128;
        }
    }
    let g = normal.iter().fold(0, |acc, &x| gcd(acc, x));
    if g == 0 {
        return None;
    }
    // the normal must not vanish on the direction space
    if basis.iter().all(|b| {
        normal
            .iter()
            .zip(b)
            .map(|(x, &y)| x * y as i128)
            .sum::<i128>()
            == 0
    }) {
        return None;
    }
    Some(normal.iter().map(|x| (x / g) as i64).collect())
}

pub fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum())
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn transpose(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.first().map_or(0, |r| r.len());
    (0..n)
        .map(|j| m.iter().map(|row| row[j]).collect())
        .collect()
}

/// `x ↦ M x + t` with `M ∈ SL_n(Z)` and `t ∈ Z^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnimodularMap {
    matrix: Vec<Vec<i64>>,
    translation: Vec<i64>,
}

impl UnimodularMap {
    pub fn new(matrix: Vec<Vec<i64>>, translation: Vec<i64>) -> Result<Self> {
        let n = matrix.len();
        if let Some(row) = matrix.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: row.len(),
            });
        }
        if translation.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: translation.len(),
            });
        }
        let det = determinant(&matrix);
        if det != 1 {
            return Err(Error::InvalidArgument(format!(
                "matrix has determinant {det}, expected 1"
            )));
        }
        Ok(UnimodularMap {
            matrix,
            translation,
        })
    }

    pub fn linear(matrix: Vec<Vec<i64>>) -> Result<Self> {
        let n = matrix.len();
        UnimodularMap::new(matrix, vec![0; n])
    }

    pub fn identity(n: usize) -> Self {
        UnimodularMap {
            matrix: identity(n),
            translation: vec![0; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn translation(&self) -> &[i64] {
        &self.translation
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        mat_vec(&self.matrix, x)
            .into_iter()
            .zip(&self.translation)
            .map(|(a, b)| a + b)
            .collect()
    }

    /// Integer inverse via the adjugate (exact since `det = 1`).
    pub fn inverse(&self) -> UnimodularMap {
        let n = self.dim();
        let mut inv = vec![vec![0i64; n]; n];
        for (i, row) in inv.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let minor: Vec<Vec<i64>> = (0..n)
                    .filter(|&r| r != j)
                    .map(|r| {
                        (0..n)
                            .filter(|&c| c != i)
                            .map(|c| self.matrix[r][c])
                            .collect()
                    })
                    .collect();
                let s = if (i + j) % 2 == 0 { 1 } else { -1 };
                *entry = s * determinant(&minor);
            }
        }
        let t = mat_vec(&inv, &self.translation)
            .into_iter()
            .map(|x| -x)
            .collect();
        UnimodularMap {
            matrix: inv,
            translation: t,
        }
    }
}

/// Deterministic random element of `SL_n(Z)`: a product of `steps` elementary
/// matrices `e_j ← e_j ± e_k` and 3-cycles of coordinates.
pub fn random_unimodular(n: usize, seed: u64, steps: usize) -> UnimodularMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = identity(n);
    if n < 2 {
        return UnimodularMap::identity(n);
    }
    for _ in 0..steps {
        let mut e = identity(n);
        if n >= 3 && rng.random_bool(0.25) {
            let mut idx: Vec<usize> = (0..n).collect();
            for i in 0..3 {
                let j = rng.random_range(i..n);
                idx.swap(i, j);
            }
            let (a, b, c) = (idx[0], idx[1], idx[2]);
            e = identity(n);
            e[a][a] = 0;
            e[b][b] = 0;
            e[c][c] = 0;
            e[b][a] = 1;
            e[c][b] = 1;
            e[a][c] = 1;
        } else {
            let j = rng.random_range(0..n);
            let mut k = rng.random_range(0..n - 1);
            if k >= j {
                k += 1;
            }
            e[j][k] = if rng.random_bool(0.5) { 1 } else { -1 };
        }
        m = mat_mul(&e, &m);
    }
    UnimodularMap {
        matrix: m,
        translation: vec![0; n],
    }
}

/// Standard simplex `T_k = conv(0, e_1, …, e_k)` in `R^n`.
pub fn standard_simplex(k: usize, n: usize) -> Result<LatticePolytope> {
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "T_{k} does not fit in dimension {n}"
        )));
    }
    let mut pts = vec![vec![0; n]];
    for i in 0..k {
        let mut e = vec![0; n];
        e[i] = 1;
        pts.push(e);
    }
    LatticePolytope::from_points(&pts)
}

/// Unit cube `[0,1]^n`.
pub fn unit_cube(n: usize) -> Result<LatticePolytope> {
    let pts: Vec<Point> = (0..1u32 << n)
        .map(|mask| (0..n).map(|i| i64::from(mask >> i & 1)).collect())
        .collect();
    LatticePolytope::from_points(&pts)
}

/// Segment `[a, b]`.
pub fn segment(a: Point, b: Point) -> Result<LatticePolytope> {
    LatticePolytope::from_points(&[a, b])
}

fn basis_point(j: usize, n: usize) -> Point {
    let mut e = vec![0; n];
    if j > 0 {
        e[j - 1] = 1;
    }
    e
}

/// Dissection of `T_{n-1} + [0, e_n]` into `n` unimodular simplices:
/// `S_1 = T_n` and `S_i = conv(e_0+e_n, …, e_{i-1}+e_n, e_{i-1}, …, e_{n-1})`, `e_0 = 0`.
pub fn dissect_prism(n: usize) -> Result<Vec<LatticePolytope>> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "prism dissection needs n ≥ 2".into(),
        ));
    }
    let en = basis_point(n, n);
    let mut out = vec![standard_simplex(n, n)?];
    for i in 2..=n {
        let mut pts = Vec::new();
        for j in 0..i {
            pts.push(
                basis_point(j, n)
                    .iter()
                    .zip(&en)
                    .map(|(a, b)| a + b)
                    .collect(),
            );
        }
        for j in i - 1..n {
            pts.push(basis_point(j, n));
        }
        out.push(LatticePolytope::from_points_capped(&pts, usize::MAX)?);
    }
    Ok(out)
}

/// Maps `φ_1 = id, φ_2, …, φ_n ∈ SL_n(Z)` with `φ_i T_n = S_i - e_n` for `i ≥ 2`:
/// `φ_i e_j = e_j` for `j < i-1`, `φ_i e_k = e_k - e_n` for `i-1 ≤ k ≤ n-1`,
/// `φ_i e_n = e_{i-1}`. Matrices are returned row-major, columns are images.
pub fn dissection_maps(n: usize) -> Vec<Vec<Vec<i64>>> {
    let mut maps = vec![identity(n)];
    for i in 2..=n {
        let mut m = vec![vec![0i64; n]; n];
        for j in 1..=n {
            let image: Point = if j < i - 1 {
                basis_point(j, n)
            } else if j < n {
                let mut v = basis_point(j, n);
                v[n - 1] -= 1;
                v
            } else {
                basis_point(i - 1, n)
            };
            for (r, x) in image.into_iter().enumerate() {
                m[r][j - 1] = x;
            }
        }
        maps.push(m);
    }
    maps
}

/// Normalized volume `dim! · vol` of a simplex given by `dim+1` vertices in a
/// full-dimensional ambient space.
pub fn simplex_normalized_volume(vertices: &[Point]) -> i64 {
    let base = &vertices[0];
    let rows: Vec<Vec<i64>> = vertices[1..].iter().map(|v| sub(v, base)).collect();
    determinant(&rows).abs()
}

/// Affine dimension of the span of a point set (0 for a single point or none).
pub fn affine_rank(points: &[Point]) -> usize {
    if points.is_empty() {
        return 0;
    }
    let n = points[0].len();
    let diffs: Vec<Vec<i64>> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
    independent_subset(&diffs, n).len()
}
