//! Subcommand implementations. Each returns the text for stdout and the
//! verification verdict; `Err` always means bad input.

use anyhow::{bail, ensure, Context};
use lattice_tensor::arith::binomial;
use lattice_tensor::classify::{
    high_rank_survey, planar_system, prism_system, survey_csv, transcribed_planar_system,
};
use lattice_tensor::ehrhart::{
    check_equivariance, check_reciprocity, check_translation_covariance, CheckReport,
};
use lattice_tensor::points::{scan_cells, MAX_SCAN_CELLS};
use lattice_tensor::polytope::random_unimodular;
use lattice_tensor::sample::random_vector;
use lattice_tensor::tri2d::{flip_walk, valuation_n_on};
use lattice_tensor::{
    count, count_relint, discrete_moment, discrete_moment_relint, ehrhart_tensors, format_rational,
    unimodular_triangulation, CoordinateFilter, LatticePolytope, Parity, SymTensor, UnimodularMap,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::Report;

pub const MAX_EHRHART_RANK: u32 = 12;
pub const MAX_PLANAR_RANK: u32 = 20;
pub const MAX_PRISM_UNKNOWNS: u64 = 10_000;
/// Bounding-box size cap for commands that visit every lattice point.
pub const MAX_VISITED_BOX: u128 = 5_000_000;

fn render(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values serialize")
}

fn tensor_value(t: &SymTensor) -> Value {
    serde_json::to_value(t).expect("tensors serialize")
}

/// Rejects polytopes whose `k`-th dilate is too large to scan, or, when
/// `visit` is set, too large to visit point by point.
fn guard_scan(p: &LatticePolytope, k: u64, visit: bool) -> anyhow::Result<()> {
    let widest = p
        .dilate(k)
        .context("dilation leaves the coordinate range")?;
    let cells = scan_cells(&widest);
    ensure!(
        cells <= MAX_SCAN_CELLS,
        "dilating by {k} needs a scan of {cells} cells, above the cap of {MAX_SCAN_CELLS}"
    );
    if visit {
        let volume: u128 = widest
            .bounding_box()
            .map(|(lo, hi)| {
                lo.iter()
                    .zip(&hi)
                    .map(|(a, b)| (b - a + 1) as u128)
                    .product()
            })
            .unwrap_or(0);
        ensure!(
            volume <= MAX_VISITED_BOX,
            "dilating by {k} gives a bounding box of {volume} lattice points, above the cap of {MAX_VISITED_BOX}"
        );
    }
    Ok(())
}

/// Rank cap plus the scan cap for every dilate an Ehrhart expansion visits.
fn guard(p: &LatticePolytope, r: u32) -> anyhow::Result<()> {
    ensure!(
        r <= MAX_EHRHART_RANK,
        "rank {r} exceeds the cap of {MAX_EHRHART_RANK}"
    );
    guard_scan(p, (p.ambient_dim() + r as usize).max(1) as u64, true)
}

fn check_json(report: &CheckReport) -> Value {
    let counterexample = report.mismatch.as_ref().map(|m| {
        json!({
            "label": m.label,
            "index": m.index.to_string(),
            "left": format_rational(&m.left),
            "right": format_rational(&m.right),
        })
    });
    json!({
        "comparisons": report.comparisons,
        "passed": report.passed(),
        "counterexample": counterexample,
    })
}

pub fn count_points(p: &LatticePolytope) -> anyhow::Result<Report> {
    guard_scan(p, 1, false)?;
    Ok(Report::ok(render(
        &json!({"closed": count(p), "relint": count_relint(p)}),
    )))
}

pub fn moment(p: &LatticePolytope, r: u32, relint: bool) -> anyhow::Result<Report> {
    ensure!(
        r <= MAX_EHRHART_RANK,
        "rank {r} exceeds the cap of {MAX_EHRHART_RANK}"
    );
    guard_scan(p, 1, true)?;
    let t = if relint {
        discrete_moment_relint(p, r)
    } else {
        discrete_moment(p, r)
    };
    Ok(Report::ok(render(&tensor_value(&t))))
}

pub fn ehrhart(p: &LatticePolytope, r: u32) -> anyhow::Result<Report> {
    guard(p, r)?;
    let exp = ehrhart_tensors(p, r);
    let values: Vec<Value> = exp
        .coefficients()
        .iter()
        .map(|c| {
            if r == 0 {
                json!(format_rational(&c.coord(&vec![0; c.dim()])))
            } else {
                tensor_value(c)
            }
        })
        .collect();
    Ok(Report::ok(render(&Value::Array(values))))
}

pub fn reciprocity(p: &LatticePolytope, r: u32) -> anyhow::Result<Report> {
    guard(p, r)?;
    let report = check_reciprocity(p, r);
    let mut out = check_json(&report);
    out["check"] = json!("reciprocity");
    out["relint"] = tensor_value(&discrete_moment_relint(p, r));
    Ok(Report {
        passed: report.passed(),
        output: render(&out),
    })
}

fn trial_shifts(
    n: usize,
    shift: Option<&[i64]>,
    seed: u64,
    trials: usize,
) -> anyhow::Result<Vec<Vec<i64>>> {
    if let Some(y) = shift {
        ensure!(
            y.len() == n,
            "shift has {} entries, the polytope lives in dimension {n}",
            y.len()
        );
        return Ok(vec![y.to_vec()]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..trials).map(|_| random_vector(&mut rng, n, 3)).collect())
}

pub fn covariance(
    p: &LatticePolytope,
    r: u32,
    shift: Option<&[i64]>,
    seed: u64,
    trials: usize,
) -> anyhow::Result<Report> {
    guard(p, r)?;
    let mut passed = true;
    let mut runs = Vec::new();
    for y in trial_shifts(p.ambient_dim(), shift, seed, trials)? {
        guard(&p.translate(&y)?, r)?;
        let report = check_translation_covariance(p, r, &y)?;
        passed &= report.passed();
        let mut entry = check_json(&report);
        entry["shift"] = json!(y);
        runs.push(entry);
    }
    Ok(Report {
        passed,
        output: render(
            &json!({"check": "translation covariance", "passed": passed, "trials": runs}),
        ),
    })
}

pub fn equivariance(
    p: &LatticePolytope,
    r: u32,
    matrix: Option<&[Vec<i64>]>,
    seed: u64,
    trials: usize,
) -> anyhow::Result<Report> {
    guard(p, r)?;
    let n = p.ambient_dim();
    let maps: Vec<Vec<Vec<i64>>> = match matrix {
        Some(m) => {
            ensure!(
                m.len() == n && m.iter().all(|row| row.len() == n),
                "matrix must be {n}x{n}"
            );
            UnimodularMap::linear(m.to_vec()).context("matrix is not in SL_n(Z)")?;
            vec![m.to_vec()]
        }
        None => (0..trials as u64)
            .map(|t| {
                random_unimodular(n, seed.wrapping_add(t), 4)
                    .matrix()
                    .to_vec()
            })
            .collect(),
    };
    let mut passed = true;
    let mut runs = Vec::new();
    for phi in maps {
        guard(&p.linear_image(&phi)?, r)?;
        let report = check_equivariance(p, r, &phi)?;
        passed &= report.passed();
        let mut entry = check_json(&report);
        entry["matrix"] = json!(phi);
        runs.push(entry);
    }
    Ok(Report {
        passed,
        output: render(&json!({"check": "equivariance", "passed": passed, "trials": runs})),
    })
}

pub fn nval(p: &LatticePolytope, walks: usize, seed: u64) -> anyhow::Result<Report> {
    ensure!(
        p.ambient_dim() == 2,
        "nval needs a polygon in the plane, got ambient dimension {}",
        p.ambient_dim()
    );
    guard_scan(p, 1, true)?;
    ensure!(
        count(p) <= 2_000,
        "polygon has more than 2000 lattice points"
    );
    if p.dim() != Some(2) {
        let zero = SymTensor::zero(2, 9);
        return Ok(Report::ok(render(
            &json!({"n": tensor_value(&zero), "triangles": 0}),
        )));
    }
    let base = unimodular_triangulation(p)?;
    let value = valuation_n_on(&base);
    let mut out = json!({"n": tensor_value(&value), "triangles": base.triangles().len()});
    let mut passed = true;
    if walks > 0 {
        let mut distinct = 0;
        let mut counterexample = Value::Null;
        for w in 0..walks as u64 {
            let t = flip_walk(&base, seed.wrapping_add(w), 4 * base.triangles().len());
            distinct += usize::from(t != base);
            let other = valuation_n_on(&t);
            if other != value && passed {
                passed = false;
                counterexample = json!({"walk": w, "triangles": t.triangles(), "points": t.points(), "n": tensor_value(&other)});
            }
        }
        out["independence"] = json!({
            "walks": walks,
            "changed_triangulations": distinct,
            "passed": passed,
            "counterexample": counterexample,
        });
    }
    Ok(Report {
        passed,
        output: render(&out),
    })
}

pub fn rank(
    n: usize,
    r: u32,
    parity: Parity,
    filter: CoordinateFilter,
    transcribed: bool,
    kernel: bool,
) -> anyhow::Result<Report> {
    let (sys, mut out) = match n {
        0 | 1 => bail!("rank needs n >= 2"),
        2 => {
            ensure!(
                (1..=MAX_PLANAR_RANK).contains(&r),
                "planar rank must lie in 1..={MAX_PLANAR_RANK}"
            );
            let sys = if transcribed {
                transcribed_planar_system(r, parity)
            } else {
                planar_system(r, parity)
            };
            let name = if transcribed {
                "planar-transcribed"
            } else {
                "planar"
            };
            (sys, json!({"system": name, "parity": parity.sign()}))
        }
        _ => {
            ensure!(r >= 1, "prism rank must be at least 1");
            let unknowns = binomial(n as u32 + r - 1, r);
            ensure!(
                unknowns <= MAX_PRISM_UNKNOWNS.into(),
                "n={n}, r={r} has {unknowns} unknowns, above the cap of {MAX_PRISM_UNKNOWNS}"
            );
            let sys = prism_system(n, r, filter)?;
            (
                sys,
                json!({"system": "prism", "filter": format!("{filter:?}")}),
            )
        }
    };
    out["n"] = json!(n);
    out["r"] = json!(r);
    out["unknowns"] = json!(sys.num_unknowns());
    out["rank"] = json!(sys.rank());
    out["kernel_dim"] = json!(sys.kernel_dim());
    if kernel {
        out["kernel"] = Value::Array(sys.kernel_tensors().iter().map(tensor_value).collect());
    }
    Ok(Report::ok(render(&out)))
}

pub fn survey(rs: &[u32]) -> anyhow::Result<Report> {
    ensure!(!rs.is_empty(), "survey needs at least one rank");
    ensure!(rs.iter().all(|&r| r >= 1), "survey ranks must be positive");
    let rows = high_rank_survey(rs)?;
    Ok(Report::ok(survey_csv(&rows).trim_end().to_string()))
}
