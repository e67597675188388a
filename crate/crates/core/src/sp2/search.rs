//! Numerical witnesses for the intersections `x K_C g B ∩ G_R g' B` near the
//! boundary of the domain.
//!
//! A point of `x S_j` is written `x · k̂ · g_j` with `k = exp(M)`, `M` an
//! arbitrary complex 2×2 matrix, and the flag of that point is pushed towards
//! the target `G_R`-orbit by minimizing a nonnegative violation functional.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::optim::NelderMead;

use super::flag::{
    classify_gr, flag_of, gram, mirror_stratum_of_plane, planes_of, special_defect, stratum_of_plane, Stratum,
    DEFAULT_TOL,
};
use super::label::{Orbit, OrbitLabel};
use super::matrix::{c, k_hat, mat2_from_params, GroupElement4, Mat2Wire, Mat4};
use super::table::representative;

/// Which side of the domain boundary the point `x` sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum BoundarySide {
    /// `ι(x K_C) ⊂ G_R c_{β1} Q × G_R Q̄`.
    Primary,
    /// The image of the primary point under the real-form conjugation.
    Mirror,
}

/// `x(s2) = [[I, 0], [diag(1, tan s2), I]]` or its conjugate. Checks the
/// strata of `xU+` and `xU-` before returning.
pub fn boundary_point(side: BoundarySide, s2: f64) -> Result<GroupElement4> {
    if !s2.is_finite() || s2.abs() >= std::f64::consts::FRAC_PI_4 {
        return Err(Error::OutOfRange(format!("s2 = {s2} (need |s2| < pi/4)")));
    }
    let mut m = Mat4::identity();
    m[(2, 0)] = c(1.0);
    m[(3, 1)] = c(s2.tan());
    let x = GroupElement4::new(m)?;
    let x = match side {
        BoundarySide::Primary => x,
        BoundarySide::Mirror => x.real_form_conjugate(),
    };
    let (up, um) = planes_of(&x);
    let got = (stratum_of_plane(&up, DEFAULT_TOL)?, mirror_stratum_of_plane(&um, DEFAULT_TOL)?);
    let want = match side {
        BoundarySide::Primary => (Stratum::One, Stratum::Interior),
        BoundarySide::Mirror => (Stratum::Interior, Stratum::One),
    };
    if got != want {
        return Err(Error::Internal(format!("boundary point at s2 = {s2} lies in strata {got:?}")));
    }
    Ok(x)
}

/// The `G_R`-side set a witness has to reach.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// One of `S'8`, `S'9`, `S'op`.
    Orbit(Orbit),
    /// `(S'7)^cl`: `V1` null.
    ClosureOf7,
    /// `(S'10)^cl`: `V2` totally null.
    ClosureOf10,
}

impl Target {
    pub fn orbit(self) -> Orbit {
        match self {
            Target::Orbit(o) => o,
            Target::ClosureOf7 => Orbit::S7,
            Target::ClosureOf10 => Orbit::S10,
        }
    }

    pub fn is_closure(self) -> bool {
        !matches!(self, Target::Orbit(_))
    }

    /// Orbits whose union is the target.
    pub fn members(self) -> Vec<Orbit> {
        use Orbit::*;
        match self {
            Target::Orbit(o) => vec![o],
            Target::ClosureOf7 => vec![S7, S8, S9, S10, Op],
            Target::ClosureOf10 => vec![S10, Op],
        }
    }

    pub fn supported(self) -> bool {
        match self {
            Target::Orbit(o) => matches!(o, Orbit::S8 | Orbit::S9 | Orbit::Op),
            _ => true,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = OrbitLabel::gr(self.orbit());
        if self.is_closure() {
            write!(f, "cl({l})")
        } else {
            write!(f, "{l}")
        }
    }
}

/// A numerical intersection statement: `x S_source` meets the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Claim {
    pub id: &'static str,
    pub side: BoundarySide,
    pub source: Orbit,
    pub target: Target,
}

impl Claim {
    pub const ALL: [Claim; 12] = {
        use BoundarySide::*;
        use Orbit::*;
        const fn cl(id: &'static str, side: BoundarySide, source: Orbit, target: Target) -> Claim {
            Claim {
                id,
                side,
                source,
                target,
            }
        }
        [
            cl("3.1", Primary, S1, Target::Orbit(S8)),
            cl("3.2", Primary, S3, Target::Orbit(S9)),
            cl("3.3", Primary, S5, Target::Orbit(Op)),
            cl("3.4", Primary, S3, Target::ClosureOf7),
            cl("3.5", Primary, S5, Target::ClosureOf10),
            cl("r3.1a", Mirror, S2, Target::Orbit(S9)),
            cl("r3.1b", Mirror, S6, Target::Orbit(Op)),
            cl("r3.1c", Mirror, S6, Target::ClosureOf10),
            cl("r3.1d", Mirror, S4, Target::Orbit(S8)),
            cl("r3.1e", Mirror, S4, Target::ClosureOf7),
            cl("p3.2a", Primary, S3, Target::ClosureOf7),
            cl("p3.2b", Primary, S5, Target::ClosureOf10),
        ]
    };
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Claim> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown claim {s:?}")))
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: x S{} meets {}", self.id, self.source.index_str(), self.target)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub starts: usize,
    /// Objective evaluations per start.
    pub budget: usize,
    pub seed: u64,
    /// Largest violation accepted as a witness.
    pub tol: f64,
    /// Smallest accepted margin for the sign conditions of `S'8` and `S'9`.
    pub margin: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            starts: 32,
            budget: 2000,
            seed: 0,
            tol: 1e-6,
            margin: 1e-3,
        }
    }
}

const PENALTY_MARGIN: f64 = 0.05;
const START_SPREAD: f64 = 0.7;
/// Starts are run in batches of this size; the search stops after the first
/// batch that produced a witness, so results do not depend on thread count.
const BATCH: usize = 8;

/// Violation and strict margins of a point `g` against the target. The
/// violation vanishes exactly on the closed conditions, and the margins must
/// be positive on the open ones.
pub fn violation(g: &GroupElement4, target: Target) -> (f64, Vec<f64>) {
    let Ok(frame) = flag_of(g).orthonormal_frame(1e-14) else {
        return (f64::INFINITY, vec![]);
    };
    let gm = gram(&frame);
    let n1 = gm[(0, 0)].re;
    let off = gm[(1, 0)].norm_sqr();
    let g22 = gm[(1, 1)].re;
    let frob = gm.norm_squared();
    let defect = special_defect(&frame.q1).powi(2);
    match target {
        Target::Orbit(Orbit::S8) => (n1 * n1 + 2.0 * off + defect, vec![g22]),
        Target::Orbit(Orbit::S9) => (n1 * n1 + 2.0 * off + defect, vec![-g22]),
        Target::Orbit(_) => (frob + defect, vec![]),
        Target::ClosureOf7 => (n1 * n1, vec![]),
        Target::ClosureOf10 => (frob, vec![]),
    }
}

fn objective(g: &GroupElement4, target: Target) -> f64 {
    let (v, margins) = violation(g, target);
    v + margins
        .iter()
        .map(|m| (PENALTY_MARGIN - m).max(0.0).powi(2))
        .sum::<f64>()
}

fn point(x: &GroupElement4, g_src: &GroupElement4, params: &[f64]) -> Result<GroupElement4> {
    let k = mat2_from_params(params).exp();
    Ok(x * &k_hat(&k)? * g_src.clone())
}

/// A point of `x S_source` found in the target, with `k` such that the point
/// is `x · diag(k, ᵀk⁻¹) · g_source`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Witness {
    pub source: OrbitLabel,
    pub target: String,
    pub k: Mat2Wire,
    pub violation: f64,
    pub margins: Vec<f64>,
    pub success: bool,
    /// Exact `G_R`-orbit of the witness flag, when the classifier decides it.
    pub classified_as: Option<OrbitLabel>,
    pub classified_in_target: bool,
    /// Tolerance at which the classifier decided, if it did.
    pub classification_tol: Option<f64>,
    pub start: usize,
    pub evaluations: usize,
}

struct Run {
    start: usize,
    params: Vec<f64>,
    violation: f64,
    margins: Vec<f64>,
    success: bool,
    evals: usize,
}

fn run_start(x: &GroupElement4, g_src: &GroupElement4, target: Target, opts: &SearchOptions, start: usize) -> Run {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(start as u64);
    let x0: Vec<f64> = if start == 0 {
        vec![0.0; 8]
    } else {
        (0..8).map(|_| START_SPREAD * rng.random_range(-1.0..1.0)).collect()
    };
    let nm = NelderMead {
        max_evals: opts.budget,
        target: 1e-26,
        ..Default::default()
    };
    let f = |p: &[f64]| point(x, g_src, p).map_or(f64::INFINITY, |g| objective(&g, target));
    let m = nm.minimize(f, &x0);
    let (violation, margins) = point(x, g_src, &m.x).map_or((f64::INFINITY, vec![]), |g| self::violation(&g, target));
    let success = violation < opts.tol && margins.iter().all(|&mg| mg > opts.margin);
    Run {
        start,
        params: m.x,
        violation,
        margins,
        success,
        evals: m.evals,
    }
}

/// Classify a witness, starting from a tolerance matched to its violation and
/// coarsening by 10² up to 1e-4 while the classifier reports a degenerate
/// quantity (points close to a smaller orbit in the same closure).
fn classify_witness(g: &GroupElement4, violation: f64) -> (Option<OrbitLabel>, Option<f64>) {
    let flag = flag_of(g);
    let mut tol = DEFAULT_TOL.max(10.0 * violation.sqrt());
    while tol <= 1e-4 {
        match classify_gr(&flag, tol) {
            Ok(l) => return (Some(l), Some(tol)),
            Err(Error::Degenerate { .. }) => tol *= 1e2,
            Err(_) => break,
        }
    }
    (None, None)
}

/// Multi-start Nelder–Mead over `k`. Deterministic for a fixed seed.
pub fn intersection_search(x: &GroupElement4, source: Orbit, target: Target, opts: &SearchOptions) -> Result<Witness> {
    if !target.supported() {
        return Err(Error::OutOfRange(format!("no search functional for {target}")));
    }
    if opts.starts == 0 || opts.budget == 0 {
        return Err(Error::OutOfRange("search needs at least one start and one evaluation".into()));
    }
    let g_src = representative(source).1;
    let mut best: Option<Run> = None;
    let mut evaluations = 0;
    for lo in (0..opts.starts).step_by(BATCH) {
        let hi = (lo + BATCH).min(opts.starts);
        let runs: Vec<Run> = (lo..hi)
            .into_par_iter()
            .map(|i| run_start(x, &g_src, target, opts, i))
            .collect();
        evaluations += runs.iter().map(|r| r.evals).sum::<usize>();
        for r in runs {
            let better = match &best {
                None => true,
                Some(b) => (!r.success, r.violation) < (!b.success, b.violation),
            };
            if better {
                best = Some(r);
            }
        }
        if best.as_ref().is_some_and(|b| b.success) {
            break;
        }
    }
    let best = best.expect("at least one start");
    if !best.success {
        return Err(Error::NotFound {
            best_violation: best.violation,
        });
    }
    let k = mat2_from_params(&best.params).exp();
    let g = point(x, &g_src, &best.params)?;
    let (classified_as, classification_tol) = classify_witness(&g, best.violation);
    let classified_in_target = classified_as.is_some_and(|l| target.members().contains(&l.orbit));
    Ok(Witness {
        source: OrbitLabel::kc(source),
        target: target.to_string(),
        k: Mat2Wire::from(&k),
        violation: best.violation,
        margins: best.margins,
        success: true,
        classified_as,
        classified_in_target,
        classification_tol,
        start: best.start,
        evaluations,
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClaimWitness {
    pub claim: String,
    pub side: BoundarySide,
    pub s2: f64,
    #[serde(flatten)]
    pub witness: Witness,
}

/// Build the boundary point for the claim and search.
pub fn search_claim(claim: &Claim, s2: f64, opts: &SearchOptions) -> Result<ClaimWitness> {
    let x = boundary_point(claim.side, s2)?;
    let witness = intersection_search(&x, claim.source, claim.target, opts)?;
    Ok(ClaimWitness {
        claim: claim.id.to_string(),
        side: claim.side,
        s2,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_points_lie_in_the_right_strata() {
        for s2 in [-0.6, 0.0, 0.3] {
            boundary_point(BoundarySide::Primary, s2).unwrap();
            boundary_point(BoundarySide::Mirror, s2).unwrap();
        }
        assert!(matches!(boundary_point(BoundarySide::Primary, 0.8), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn claims_parse() {
        assert_eq!("3.4".parse::<Claim>().unwrap().target, Target::ClosureOf7);
        assert_eq!("r3.1b".parse::<Claim>().unwrap().source, Orbit::S6);
        assert!("3.9".parse::<Claim>().is_err());
    }

    #[test]
    fn violation_vanishes_on_table_points() {
        let (v, m) = violation(&representative(Orbit::S8).1, Target::Orbit(Orbit::S8));
        assert!(v < 1e-28 && m[0] > 0.5, "{v} {m:?}");
        let (v, _) = violation(&representative(Orbit::S10).1, Target::ClosureOf10);
        assert!(v < 1e-28);
        let (v, _) = violation(&representative(Orbit::S1).1, Target::ClosureOf7);
        assert!(v > 0.5);
    }

    #[test]
    fn finds_primary_witness_deterministically() {
        let claim: Claim = "3.1".parse().unwrap();
        let opts = SearchOptions {
            seed: 5,
            ..Default::default()
        };
        let a = search_claim(&claim, 0.3, &opts).unwrap();
        let b = search_claim(&claim, 0.3, &opts).unwrap();
        assert!(a.witness.success && a.witness.classified_in_target, "{a:?}");
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
