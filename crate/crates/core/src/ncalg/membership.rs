//! Graded ideal membership: a homogeneous degree-`d` element lies in the
//! two-sided ideal generated by the quadratic relations iff it lies in
//! `span{u·r·v : |u| + 2 + |v| = d}`.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::algebra::{to_sparse, word_index, AlgebraSpec};
use super::poly::{NCMatrix, NCPoly, Word};
use crate::error::{Error, Result};
use crate::linalg::{SparseEchelon, SparseVec};
use crate::report::{Mode, SystemStats, VerificationReport};
use crate::ring::Field;
use crate::scalar::{GaussRational, Point, Var, MAX_VARS};

/// How membership is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MembershipMode {
    /// Linear algebra over the symbolic field.
    Exact,
    /// Linear algebra over Gaussian rationals at `trials` random points.
    Randomized { seed: u64, trials: usize },
}

/// Largest numerator/denominator of a sampled coordinate.
const SAMPLE_BOUND: i64 = 10_000;
/// Resampling budget per trial.
const MAX_ATTEMPTS: usize = 64;

/// Spanning vectors `u·r·v` of degree `d` in the word basis, in a fixed
/// order (relation-major).
fn shifted<F: Field>(
    rels: &[SparseVec<F>],
    g: usize,
    d: usize,
) -> impl Iterator<Item = SparseVec<F>> + '_ {
    (0..=d - 2).flat_map(move |a| {
        let b = d - 2 - a;
        let (gu, gv) = (g.pow(a as u32), g.pow(b as u32));
        let mid = g.pow(b as u32);
        let high = g.pow((b + 2) as u32);
        (0..gu).flat_map(move |u| {
            (0..gv).flat_map(move |v| {
                rels.iter().map(move |r| {
                    r.iter()
                        .map(|(w, c)| (u * high + w * mid + v, c.clone()))
                        .collect()
                })
            })
        })
    })
}

/// Builds the degree-`d` span and reduces every target against it.
/// Returns the stats and, per target, whether it reduced to zero.
fn decide<F: Field>(
    rels: &[SparseVec<F>],
    targets: &[SparseVec<F>],
    g: usize,
    d: usize,
) -> (SystemStats, Vec<bool>) {
    let mut ech = SparseEchelon::new();
    let mut rows = 0;
    for v in shifted(rels, g, d) {
        rows += 1;
        ech.insert(v);
    }
    let verdicts = targets
        .par_iter()
        .map(|t| ech.reduce(t.clone()).is_empty())
        .collect();
    (
        SystemStats {
            rows,
            cols: g.pow(d as u32),
            rank: ech.rank(),
        },
        verdicts,
    )
}

fn sparse_gauss(p: &BTreeMap<Word, GaussRational>, g: usize) -> SparseVec<GaussRational> {
    let mut v: Vec<_> = p
        .iter()
        .map(|(w, c)| (word_index(w, g), c.clone()))
        .collect();
    v.sort_by_key(|(i, _)| *i);
    v
}

/// Draws `a/b` with `a, b ∈ [2, SAMPLE_BOUND]`.
fn sample(rng: &mut ChaCha8Rng) -> GaussRational {
    let a = rng.random_range(2..=SAMPLE_BOUND);
    let b = rng.random_range(2..=SAMPLE_BOUND);
    GaussRational::from_ratio(a, b)
}

/// Evaluates everything at one point, or reports why the point is bad.
fn evaluate_all(polys: &[&NCPoly], point: &Point) -> Result<Vec<BTreeMap<Word, GaussRational>>> {
    polys.iter().map(|p| p.evaluate(point)).collect()
}

fn point_record(point: &Point) -> BTreeMap<String, String> {
    point
        .named()
        .into_iter()
        .map(|(k, v)| (k, v.to_string()))
        .collect()
}

/// Checks that every polynomial lies in the relation ideal of `spec`. All
/// nonzero inputs must be homogeneous of degree `degree`.
pub fn ideal_membership(
    polys: &[NCPoly],
    spec: &AlgebraSpec,
    mode: MembershipMode,
    degree: usize,
) -> Result<VerificationReport> {
    let labels: Vec<String> = (1..=polys.len()).map(|i| format!("#{i}")).collect();
    membership_labeled(polys, &labels, spec, mode, degree, "ideal-membership")
}

/// Entrywise membership of a matrix.
pub fn matrix_membership(
    m: &NCMatrix,
    spec: &AlgebraSpec,
    mode: MembershipMode,
    degree: usize,
    check: &str,
) -> Result<VerificationReport> {
    let mut polys = Vec::new();
    let mut labels = Vec::new();
    for (r, c, p) in m.multi_entries() {
        polys.push(p.clone());
        labels.push(format!("{r:?}|{c:?}"));
    }
    membership_labeled(&polys, &labels, spec, mode, degree, check)
}

fn membership_labeled(
    polys: &[NCPoly],
    labels: &[String],
    spec: &AlgebraSpec,
    mode: MembershipMode,
    degree: usize,
    check: &str,
) -> Result<VerificationReport> {
    let start = Instant::now();
    for (p, l) in polys.iter().zip(labels) {
        if !p.is_zero() && p.homogeneous_degree() != Some(degree) {
            return Err(Error::Inhomogeneous(format!(
                "entry {l} is not homogeneous of degree {degree}"
            )));
        }
    }
    let live: Vec<(&NCPoly, &String)> = polys
        .iter()
        .zip(labels)
        .filter(|(p, _)| !p.is_zero())
        .collect();
    let mut report = VerificationReport::exact(check, true);
    report.degree = degree;
    if live.is_empty() {
        return Ok(report
            .with_diagnostic("residual is syntactically zero")
            .timed(start));
    }
    if degree < 2 {
        report.pass = false;
        return Ok(report
            .with_diagnostic(format!("{} nonzero entries below degree 2", live.len()))
            .timed(start));
    }
    let g = spec.generators();
    let failed: Vec<usize> = match mode {
        MembershipMode::Exact => {
            let rels: Vec<_> = spec
                .relation_basis()
                .iter()
                .map(|r| to_sparse(r, g))
                .collect();
            let targets: Vec<_> = live.iter().map(|(p, _)| to_sparse(p, g)).collect();
            let (stats, ok) = decide(&rels, &targets, g, degree);
            report.system = Some(stats);
            ok.iter()
                .enumerate()
                .filter(|(_, v)| !**v)
                .map(|(i, _)| i)
                .collect()
        }
        MembershipMode::Randomized { seed, trials } => {
            let all: Vec<&NCPoly> = spec
                .relations
                .iter()
                .chain(live.iter().map(|(p, _)| *p))
                .collect();
            let points = sample_points(&all, seed, trials.max(1))?;
            let nrel = spec.relations.len();
            let outcomes: Vec<(SystemStats, Vec<bool>)> = points
                .par_iter()
                .map(|(_, values)| {
                    let rels: Vec<_> = values[..nrel].iter().map(|p| sparse_gauss(p, g)).collect();
                    let targets: Vec<_> =
                        values[nrel..].iter().map(|p| sparse_gauss(p, g)).collect();
                    decide(&rels, &targets, g, degree)
                })
                .collect();
            report.mode = Mode::Randomized;
            report.seed = Some(seed);
            report.points = Some(points.iter().map(|(p, _)| point_record(p)).collect());
            report.system = outcomes.first().map(|(s, _)| *s);
            let mut bad = BTreeSet::new();
            for (_, ok) in &outcomes {
                bad.extend(ok.iter().enumerate().filter(|(_, v)| !**v).map(|(i, _)| i));
            }
            bad.into_iter().collect()
        }
    };
    if !failed.is_empty() {
        report.pass = false;
        let shown: Vec<&str> = failed.iter().take(8).map(|&i| live[i].1.as_str()).collect();
        report = report.with_diagnostic(format!(
            "{} of {} entries are not in the ideal (e.g. {})",
            failed.len(),
            live.len(),
            shown.join(", ")
        ));
    }
    Ok(report.timed(start))
}

type Sampled = (Point, Vec<BTreeMap<Word, GaussRational>>);

/// Draws `trials` distinct admissible points for the variables occurring
/// in `polys`, deterministically from `seed`. A point is admissible when
/// every coefficient evaluates and `q ≠ ±1` (so no `k_q` vanishes).
fn sample_points(polys: &[&NCPoly], seed: u64, trials: usize) -> Result<Vec<Sampled>> {
    let support = polys.iter().fold(0u32, |acc, p| acc | p.support());
    let vars: Vec<Var> = (0..MAX_VARS)
        .filter(|i| support >> i & 1 == 1)
        .map(Var::from_index)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Sampled> = Vec::with_capacity(trials);
    for _ in 0..trials {
        let mut found = None;
        for _ in 0..MAX_ATTEMPTS {
            let mut point = Point::new();
            // q is always drawn so the randomness consumed is independent
            // of which variables happen to occur.
            let qv = sample(&mut rng);
            for &v in &vars {
                let val = if v == Var::Q {
                    qv.clone()
                } else {
                    sample(&mut rng)
                };
                point.set(v, val);
            }
            if qv.is_one() || out.iter().any(|(p, _)| *p == point) {
                continue;
            }
            match evaluate_all(polys, &point) {
                Ok(values) => {
                    found = Some((point, values));
                    break;
                }
                Err(Error::BadPoint(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        out.push(found.ok_or(Error::NoAdmissiblePoint(MAX_ATTEMPTS))?);
    }
    Ok(out)
}
