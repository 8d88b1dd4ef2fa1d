//! Lattice-point enumeration by bounding-box scan.
//!
//! The scan runs over the first `n - 1` coordinates of the ambient box in
//! lexicographic order; for each prefix the admissible range of the last
//! coordinate is read off the affine-hull equations and facet inequalities.
//! Output order is therefore canonical for every polytope.

use crate::polytope::{LatticePolytope, Point};

/// Cap on the number of prefixes visited by a single scan.
pub const MAX_SCAN_CELLS: u128 = 50_000_000;

fn floor_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -floor_div(-a, b)
}

/// Number of prefixes the scan of `p` visits.
pub fn scan_cells(p: &LatticePolytope) -> u128 {
    match p.bounding_box() {
        None => 0,
        Some((lo, hi)) => {
            let n = lo.len();
            lo.iter()
                .zip(&hi)
                .take(n.saturating_sub(1))
                .map(|(a, b)| (b - a + 1) as u128)
                .product()
        }
    }
}

/// Calls `visit(prefix, lo, hi)` for every prefix of the first `n - 1`
/// coordinates whose fibre `lo..=hi` in the last coordinate is non-empty.
fn scan(p: &LatticePolytope, strict: bool, mut visit: impl FnMut(&[i64], i64, i64)) {
    let Some((lo, hi)) = p.bounding_box() else {
        return;
    };
    let n = lo.len();
    let cells = scan_cells(p);
    assert!(
        cells <= MAX_SCAN_CELLS,
        "bounding box too large to scan ({cells} prefixes)"
    );
    let last = n - 1;
    let mut x = lo.clone();
    loop {
        let partial = |a: &[i64]| -> i128 {
            a[..last]
                .iter()
                .zip(&x[..last])
                .map(|(&c, &v)| c as i128 * v as i128)
                .sum()
        };
        let (mut l, mut h) = (lo[last] as i128, hi[last] as i128);
        for (a, b) in p.equations() {
            let rhs = *b as i128 - partial(a);
            let c = a[last] as i128;
            if c == 0 {
                if rhs != 0 {
                    h = l - 1;
                }
            } else if rhs % c != 0 {
                h = l - 1;
            } else {
                l = l.max(rhs / c);
                h = h.min(rhs / c);
            }
        }
        for f in p.facets() {
            let mut rhs = f.offset as i128 - partial(&f.normal);
            if strict {
                rhs -= 1;
            }
            let c = f.normal[last] as i128;
            match c.signum() {
                0 if rhs < 0 => h = l - 1,
                0 => {}
                1 => h = h.min(floor_div(rhs, c)),
                _ => l = l.max(ceil_div(rhs, c)),
            }
        }
        if l <= h {
            visit(&x[..last], l as i64, h as i64);
        }
        let mut i = last;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if x[i] < hi[i] {
                x[i] += 1;
                break;
            }
            x[i] = lo[i];
        }
    }
}

fn collect(p: &LatticePolytope, strict: bool) -> Vec<Point> {
    let mut out = Vec::new();
    if p.ambient_dim() == 0 {
        if !p.is_empty() {
            out.push(Vec::new());
        }
        return out;
    }
    scan(p, strict, |prefix, l, h| {
        for v in l..=h {
            let mut point = prefix.to_vec();
            point.push(v);
            out.push(point);
        }
    });
    out
}

fn tally(p: &LatticePolytope, strict: bool) -> usize {
    if p.ambient_dim() == 0 {
        return usize::from(!p.is_empty());
    }
    let mut total = 0usize;
    scan(p, strict, |_, l, h| total += (h - l + 1) as usize);
    total
}

/// `P ∩ Z^n` in lexicographic order.
pub fn lattice_points(p: &LatticePolytope) -> Vec<Point> {
    collect(p, false)
}

/// Lattice points of the relative interior, in lexicographic order.
pub fn relint_lattice_points(p: &LatticePolytope) -> Vec<Point> {
    collect(p, true)
}

/// `|P ∩ Z^n|`, summing fibre lengths without materializing points.
pub fn count(p: &LatticePolytope) -> usize {
    tally(p, false)
}

pub fn count_relint(p: &LatticePolytope) -> usize {
    tally(p, true)
}

/// `(-1)^{dim P} Σ_F (-1)^{dim F} count(F)` over all non-empty faces.
pub fn count_relint_by_faces(p: &LatticePolytope) -> i64 {
    let Some(d) = p.dim() else {
        return 0;
    };
    let total: i64 = p
        .faces()
        .iter()
        .map(|f| {
            let c = count(f) as i64;
            if f.dim().unwrap_or(0) % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .sum();
    if d % 2 == 0 {
        total
    } else {
        -total
    }
}
