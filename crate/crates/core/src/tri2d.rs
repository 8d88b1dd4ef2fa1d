//! Unimodular triangulations of lattice polygons, flips, and the rank-9
//! valuation `N(P) = Σ_S L^3_1(S)^3` summed over the triangles of any
//! unimodular triangulation.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ehrhart::ehrhart_tensors;
use crate::error::{Error, Result};
use crate::points::lattice_points;
use crate::polytope::{standard_simplex, LatticePolytope, Point};
use crate::tensor::{apply_linear, tensor_power, SymTensor};

fn orient(a: &[i64], b: &[i64], c: &[i64]) -> i64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

/// Triangulation of a lattice polygon using every lattice point as a vertex.
/// Triangles are counter-clockwise index triples into `points`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation2D {
    points: Vec<Point>,
    triangles: Vec<[usize; 3]>,
}

fn canonical_triangle(t: [usize; 3]) -> [usize; 3] {
    let m = (0..3).min_by_key(|&i| t[i]).unwrap_or(0);
    [t[m], t[(m + 1) % 3], t[(m + 2) % 3]]
}

impl Triangulation2D {
    fn new(points: Vec<Point>, triangles: Vec<[usize; 3]>) -> Self {
        let mut triangles: Vec<[usize; 3]> =
            triangles.into_iter().map(canonical_triangle).collect();
        triangles.sort();
        Triangulation2D { points, triangles }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// Vertex coordinates of each triangle.
    pub fn triangle_vertices(&self) -> impl Iterator<Item = [&Point; 3]> + '_ {
        self.triangles
            .iter()
            .map(|t| [&self.points[t[0]], &self.points[t[1]], &self.points[t[2]]])
    }

    /// Map from each edge `(i, j)` with `i < j` to the triangles containing it.
    pub fn edge_adjacency(&self) -> BTreeMap<(usize, usize), Vec<usize>> {
        let mut adj: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (ti, t) in self.triangles.iter().enumerate() {
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                adj.entry((a.min(b), a.max(b))).or_default().push(ti);
            }
        }
        adj
    }

    /// Interior edges whose two triangles form a strictly convex quadrilateral.
    pub fn flippable_edges(&self) -> Vec<(usize, usize)> {
        self.edge_adjacency()
            .into_iter()
            .filter(|(e, ts)| ts.len() == 2 && self.flip_quad(*e, ts).is_ok())
            .map(|(e, _)| e)
            .collect()
    }

    fn flip_quad(&self, (u, v): (usize, usize), ts: &[usize]) -> Result<(usize, usize)> {
        let opposite = |ti: usize| {
            self.triangles[ti]
                .iter()
                .copied()
                .find(|&x| x != u && x != v)
                .expect("triangle has a third vertex")
        };
        let (a, b) = (opposite(ts[0]), opposite(ts[1]));
        let p = &self.points;
        let crosses = orient(&p[a], &p[b], &p[u]).signum() * orient(&p[a], &p[b], &p[v]).signum()
            < 0
            && orient(&p[u], &p[v], &p[a]).signum() * orient(&p[u], &p[v], &p[b]).signum() < 0;
        if !crosses {
            return Err(Error::FlipRefused(format!(
                "quadrilateral around edge ({u}, {v}) is not strictly convex"
            )));
        }
        Ok((a, b))
    }

    /// Replace the diagonal `(u, v)` by the opposite diagonal of its quadrilateral.
    pub fn flip(&self, u: usize, v: usize) -> Result<Triangulation2D> {
        let key = (u.min(v), u.max(v));
        let adj = self.edge_adjacency();
        let ts = match adj.get(&key) {
            Some(ts) if ts.len() == 2 => ts.clone(),
            Some(_) => {
                return Err(Error::FlipRefused(format!(
                    "edge ({u}, {v}) is on the boundary"
                )))
            }
            None => return Err(Error::FlipRefused(format!("({u}, {v}) is not an edge"))),
        };
        let (a, b) = self.flip_quad(key, &ts)?;
        let p = &self.points;
        let ccw = |x: usize, y: usize, z: usize| {
            if orient(&p[x], &p[y], &p[z]) > 0 {
                [x, y, z]
            } else {
                [x, z, y]
            }
        };
        let mut triangles: Vec<[usize; 3]> = self
            .triangles
            .iter()
            .enumerate()
            .filter(|(i, _)| !ts.contains(i))
            .map(|(_, t)| *t)
            .collect();
        triangles.push(ccw(a, b, key.0));
        triangles.push(ccw(a, b, key.1));
        Ok(Triangulation2D::new(self.points.clone(), triangles))
    }

    /// `true` if every triangle is counter-clockwise with lattice area 1/2 and
    /// the areas sum to the polygon's area.
    pub fn is_unimodular_triangulation_of(&self, polygon: &LatticePolytope) -> bool {
        let twice_area: i64 = self
            .triangle_vertices()
            .map(|[a, b, c]| orient(a, b, c))
            .sum();
        self.triangle_vertices()
            .all(|[a, b, c]| orient(a, b, c) == 1)
            && twice_area == twice_polygon_area(polygon)
            && self.points == lattice_points(polygon)
    }
}

fn twice_polygon_area(p: &LatticePolytope) -> i64 {
    p.triangulate()
        .iter()
        .map(|s| orient(&s[0], &s[1], &s[2]).abs())
        .sum()
}

fn require_polygon(p: &LatticePolytope) -> Result<()> {
    if p.ambient_dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.ambient_dim(),
        });
    }
    if p.dim() != Some(2) {
        return Err(Error::NotFullDimensional {
            required: 2,
            found: p.dim().unwrap_or(0),
        });
    }
    Ok(())
}

/// Incremental triangulation: lattice points are inserted in lex order and
/// each new point is joined to the hull edges it sees. The hull cycle keeps
/// collinear boundary points, so every triangle is lattice-empty and hence
/// unimodular.
pub fn unimodular_triangulation(p: &LatticePolytope) -> Result<Triangulation2D> {
    require_polygon(p)?;
    let pts = lattice_points(p);
    let mut triangles: Vec<[usize; 3]> = Vec::new();
    // leading collinear run
    let mut chain = vec![0usize, 1];
    let mut next = 2;
    while orient(&pts[0], &pts[1], &pts[next]) == 0 {
        chain.push(next);
        next += 1;
    }
    let q = next;
    for w in chain.windows(2) {
        let (a, b) = (w[0], w[1]);
        triangles.push(if orient(&pts[a], &pts[b], &pts[q]) > 0 {
            [a, b, q]
        } else {
            [b, a, q]
        });
    }
    let mut hull: Vec<usize> = if orient(&pts[chain[0]], &pts[chain[chain.len() - 1]], &pts[q]) > 0
    {
        chain.clone()
    } else {
        chain.iter().rev().copied().collect()
    };
    hull.push(q);

    for idx in q + 1..pts.len() {
        let x = &pts[idx];
        let m = hull.len();
        let visible = |i: usize| orient(&pts[hull[i]], &pts[hull[(i + 1) % m]], x) < 0;
        let start = (0..m)
            .find(|&i| visible(i) && !visible((i + m - 1) % m))
            .expect("a point outside the hull sees at least one edge");
        let mut end = start;
        while visible(end % m) {
            let (a, b) = (hull[end % m], hull[(end + 1) % m]);
            triangles.push([b, a, idx]);
            end += 1;
        }
        // hull[start+1 .. end) are no longer on the boundary
        let mut next_hull = Vec::with_capacity(m + 1);
        for k in 0..m {
            let pos = (start + 1 + k) % m;
            let offset = (pos + m - start) % m;
            if offset == 0 || offset >= end - start {
                next_hull.push(hull[pos]);
            }
        }
        // next_hull starts at hull[end]; insert x between hull[start] and hull[end]
        next_hull.insert(0, idx);
        hull = next_hull;
    }
    Ok(Triangulation2D::new(pts, triangles))
}

/// Apply `steps` uniformly chosen admissible flips, deterministically in `seed`.
pub fn flip_walk(t: &Triangulation2D, seed: u64, steps: usize) -> Triangulation2D {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = t.clone();
    for _ in 0..steps {
        let edges = current.flippable_edges();
        if edges.is_empty() {
            break;
        }
        let (u, v) = edges[rng.random_range(0..edges.len())];
        current = current
            .flip(u, v)
            .expect("edge was checked to be flippable");
    }
    current
}

/// `L^3_1(T_2)`.
pub fn l31_standard_triangle() -> SymTensor {
    ehrhart_tensors(&standard_simplex(2, 2).expect("T_2 exists in the plane"), 3).coefficient(1)
}

/// Sum of `L^3_1(S)^3` over the triangles of `t`. Values are cached per
/// translation class since `L^3_1` is translation invariant.
pub fn valuation_n_on(t: &Triangulation2D) -> SymTensor {
    let mut cache: HashMap<[Point; 3], SymTensor> = HashMap::new();
    let mut acc = SymTensor::zero(2, 9);
    for [a, b, c] in t.triangle_vertices() {
        let mut key = [a.clone(), b.clone(), c.clone()];
        key.sort();
        let base = key[0].clone();
        for v in key.iter_mut() {
            v[0] -= base[0];
            v[1] -= base[1];
        }
        let value = cache.entry(key.clone()).or_insert_with(|| {
            let s = LatticePolytope::from_points(&key).expect("triangle vertices are valid");
            let l = ehrhart_tensors(&s, 3).coefficient(1);
            tensor_power(&l, 3).expect("plane tensors")
        });
        acc += value;
    }
    acc
}

/// `N(P)`; zero for polygons of dimension at most one.
pub fn valuation_n(p: &LatticePolytope) -> Result<SymTensor> {
    if p.ambient_dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.ambient_dim(),
        });
    }
    if p.dim() != Some(2) {
        return Ok(SymTensor::zero(2, 9));
    }
    Ok(valuation_n_on(&unimodular_triangulation(p)?))
}

/// `Σ_S seed ∘ φ_Sᵗ` where `S = φ_S T_2 + x_S`.
///
/// `seed` must be fixed by `e_1 ↦ -e_2, e_2 ↦ e_1 - e_2`, the map sending
/// `T_2` to `T_2 - e_2`; then the value on each triangle does not depend on
/// how its vertices are labelled.
pub fn seeded_valuation_on(t: &Triangulation2D, seed: &SymTensor) -> Result<SymTensor> {
    let rotation = vec![vec![0, 1], vec![-1, -1]];
    if apply_linear(seed, &rotation)? != *seed {
        return Err(Error::InvalidArgument(
            "seed is not invariant under the symmetry of T_2".into(),
        ));
    }
    let mut acc = SymTensor::zero(2, seed.rank());
    for [a, b, c] in t.triangle_vertices() {
        let phi = vec![
            vec![b[0] - a[0], c[0] - a[0]],
            vec![b[1] - a[1], c[1] - a[1]],
        ];
        acc += &apply_linear(seed, &phi)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;
    use crate::polytope::{segment, unit_cube};

    fn poly(pts: &[[i64; 2]]) -> LatticePolytope {
        LatticePolytope::from_points(&pts.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn small_triangulations() {
        let sq = unit_cube(2).unwrap();
        let t = unimodular_triangulation(&sq).unwrap();
        assert_eq!(t.triangles().len(), 2);
        assert!(t.is_unimodular_triangulation_of(&sq));
        let t2 = standard_simplex(2, 2).unwrap();
        assert_eq!(unimodular_triangulation(&t2).unwrap().triangles().len(), 1);
        let big = t2.dilate(2).unwrap();
        let tb = unimodular_triangulation(&big).unwrap();
        assert_eq!(tb.triangles().len(), 4);
        assert!(tb.is_unimodular_triangulation_of(&big));
        assert!(unimodular_triangulation(&segment(vec![0, 0], vec![2, 1]).unwrap()).is_err());
    }

    #[test]
    fn leading_collinear_points() {
        let p = poly(&[[0, 0], [0, 3], [2, 0], [1, 4]]);
        let t = unimodular_triangulation(&p).unwrap();
        assert!(t.is_unimodular_triangulation_of(&p));
    }

    #[test]
    fn flip_square_diagonal() {
        let sq = unit_cube(2).unwrap();
        let t = unimodular_triangulation(&sq).unwrap();
        let adj = t.edge_adjacency();
        let (&(u, v), _) = adj.iter().find(|(_, ts)| ts.len() == 2).unwrap();
        let flipped = t.flip(u, v).unwrap();
        assert_ne!(flipped, t);
        assert!(flipped.is_unimodular_triangulation_of(&sq));
        let adj2 = flipped.edge_adjacency();
        let (&(a, b), _) = adj2.iter().find(|(_, ts)| ts.len() == 2).unwrap();
        assert_ne!((a, b), (u, v));
        assert_eq!(flipped.flip(a, b).unwrap(), t);
        assert!(t.flip(0, 1).is_err());
    }

    #[test]
    fn flip_refuses_non_convex_quad() {
        // (1,1) is interior to conv((0,0),(2,1),(1,2)); every quad around it is non-convex
        let p = poly(&[[0, 0], [2, 1], [1, 2]]);
        let t = unimodular_triangulation(&p).unwrap();
        let centre = t.points().iter().position(|x| x == &vec![1, 1]).unwrap();
        let origin = t.points().iter().position(|x| x == &vec![0, 0]).unwrap();
        assert!(matches!(t.flip(origin, centre), Err(Error::FlipRefused(_))));
        assert!(t.flippable_edges().is_empty());
    }

    #[test]
    fn flip_walk_basics() {
        let p = standard_simplex(2, 2).unwrap().dilate(3).unwrap();
        let t = unimodular_triangulation(&p).unwrap();
        assert_eq!(flip_walk(&t, 1, 0), t);
        let w = flip_walk(&t, 1, 25);
        assert!(w.is_unimodular_triangulation_of(&p));
        assert_eq!(w, flip_walk(&t, 1, 25));
    }

    #[test]
    fn n_examples() {
        assert!(valuation_n(&unit_cube(2).unwrap()).unwrap().is_zero());
        assert!(valuation_n(&segment(vec![0, 0], vec![3, 1]).unwrap())
            .unwrap()
            .is_zero());
        assert!(valuation_n(&poly(&[[1, 1]])).unwrap().is_zero());
        let t2 = standard_simplex(2, 2).unwrap();
        let l = l31_standard_triangle();
        assert_eq!(l.coord(&[3, 0]), frac(1, 180));
        assert_eq!(valuation_n(&t2).unwrap(), tensor_power(&l, 3).unwrap());
        assert!(valuation_n(&unit_cube(3).unwrap()).is_err());
    }

    #[test]
    fn seeded_route_matches_direct() {
        let seed = tensor_power(&l31_standard_triangle(), 3).unwrap();
        let p = poly(&[[0, 0], [3, 1], [1, 3], [0, 2]]);
        let t = unimodular_triangulation(&p).unwrap();
        assert_eq!(seeded_valuation_on(&t, &seed).unwrap(), valuation_n_on(&t));
        let not_invariant = crate::tensor::sym_power(&[1, 0], 3);
        assert!(seeded_valuation_on(&t, &not_invariant).is_err());
    }
}
