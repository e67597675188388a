use std::fmt;

use serde_json::{json, Value};

use flagorbits::roots::hermitian_central_element;
use flagorbits::sp2::flag::{mirror_stratum_of_plane, planes_of, stratum_of_plane};
use flagorbits::sp2::matrix::{random_real, t1, t2};
use flagorbits::sp2::{
    classify_gr, classify_kc, closure_diagram, lift_sequence, orbit_dimension, saturation_check, search_claim,
    tangent_rank, to_dot, verify_duality_table, Claim, Flag4, GroupElement4, Orbit, OrbitLabel, SearchOptions,
    Side, Stratum,
};
use flagorbits::weyl::DEFAULT_ENUMERATION_CAP;
use flagorbits::{
    boundary_orbit_s1, boundary_orbit_s2, build_root_system, certify_nonclosed, defining_element, delta_theta,
    enumerate_parabolic, noncompact_positive_roots, normalize_descriptor, phi_image, separation_inequality, Error,
    Family, OrbitDescriptor, RealForm, Root, RootSystem, WeylElement,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Command, DescriptorArgs, DescriptorOp, Sp2Command, SystemArgs};

pub enum Failure {
    Usage(String),
    Lib(Error),
}

impl Failure {
    /// 2 for bad input, 1 for a computation that did not verify.
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Lib(e) => match e {
                Error::InvalidRootSystem(_)
                | Error::NonDominant { .. }
                | Error::DimensionMismatch { .. }
                | Error::NotARoot(_)
                | Error::InvalidWeylElement(_)
                | Error::InvalidGammaSystem(_)
                | Error::InvalidFlag(_)
                | Error::OutOfRange(_)
                | Error::Parse(_)
                | Error::Json(_)
                | Error::EnumerationCap { .. } => 2,
                _ => 1,
            },
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(s) => write!(f, "{s}"),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

type Result<T> = std::result::Result<T, Failure>;

pub struct Output {
    pub text: String,
    pub verified: bool,
}

fn usage(flag: &str) -> impl Fn(Error) -> Failure + '_ {
    move |e| Failure::Usage(format!("--{flag}: {e}"))
}

fn emit(json: bool, value: Value, text: String, verified: bool) -> Output {
    let text = if json {
        format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable"))
    } else {
        text
    };
    Output { text, verified }
}

fn ok(json: bool, value: Value, text: String) -> Result<Output> {
    Ok(emit(json, value, text, true))
}

fn system(a: &SystemArgs) -> Result<RootSystem> {
    let family: Family = a.family.parse().map_err(usage("family"))?;
    if a.rank == 0 || a.rank > 8 {
        return Err(Failure::Usage(format!("--rank: {} is outside 1..=8", a.rank)));
    }
    build_root_system(family, a.rank, hermitian_central_element(family, a.rank)).map_err(usage("rank"))
}

fn root_list(s: &str, rank: usize, flag: &str) -> Result<Vec<Root>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| Root::parse(t, rank).map_err(usage(flag)))
        .collect()
}

fn join(roots: &[Root]) -> String {
    roots.iter().map(Root::to_string).collect::<Vec<_>>().join(", ")
}

pub fn run(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Roots(a) => roots(&a),
        Command::Weyl { system: a, w } => weyl(&a, w.as_deref()),
        Command::Descriptor { op, descriptor: args } => descriptor(op, &args),
        Command::Sp2 { command } => sp2(command),
    }
}

fn roots(a: &SystemArgs) -> Result<Output> {
    let rs = system(a)?;
    let theta = root_list(&a.theta, a.rank, "theta")?;
    let nc = noncompact_positive_roots(&rs).members;
    let dt = delta_theta(&rs, &theta).map_err(usage("theta"))?.members;
    let mut text = format!("{} roots of {:?}{}\n", rs.roots().len(), rs.family(), rs.rank());
    text += &format!("roots:    {}\n", join(rs.roots()));
    text += &format!("positive: {}\n", join(rs.positive()));
    text += &format!("simple:   {}\n", join(rs.simple()));
    text += &format!("noncompact positive: {}\n", join(&nc));
    if !theta.is_empty() {
        text += &format!("Delta_Theta: {}\n", join(&dt));
    }
    let mut v = serde_json::to_value(&rs).map_err(Error::from)?;
    v["noncompactPositive"] = json!(nc);
    v["deltaTheta"] = json!(dt);
    ok(a.json, v, text)
}

fn weyl(a: &SystemArgs, w: Option<&str>) -> Result<Output> {
    let rs = system(a)?;
    let theta = root_list(&a.theta, a.rank, "theta")?;
    let theta_all = if theta.is_empty() && w.is_none() { rs.simple().to_vec() } else { theta };
    let group = enumerate_parabolic(&rs, &theta_all, DEFAULT_ENUMERATION_CAP)?;
    match w {
        Some(s) => {
            let w = WeylElement::parse(s, rs.rank()).map_err(usage("w"))?;
            let images: Vec<Root> = rs.simple().iter().map(|r| w.apply_root(r)).collect();
            let in_group = group.contains(&w);
            let mut text = format!("w = {w}, inverse {}\n", w.inverse());
            for (r, im) in rs.simple().iter().zip(&images) {
                text += &format!("  {r} -> {im}\n");
            }
            if !theta_all.is_empty() {
                text += &format!("in W_Theta: {in_group}\n");
            }
            let v = json!({
                "w": w,
                "inverse": w.inverse(),
                "simpleImages": images,
                "inWTheta": in_group,
            });
            ok(a.json, v, text)
        }
        None => {
            let mut text = format!("|W_Theta| = {} (Theta = {{{}}})\n", group.len(), join(&theta_all));
            for x in &group.elements {
                text += &format!("  {x}\n");
            }
            let v = json!({"theta": theta_all, "order": group.len(), "elements": group.elements});
            ok(a.json, v, text)
        }
    }
}

fn descriptor(op: DescriptorOp, a: &DescriptorArgs) -> Result<Output> {
    let rs = system(&a.system)?;
    let rank = rs.rank();
    let gammas = root_list(&a.gamma, rank, "gamma")?;
    let theta = root_list(&a.system.theta, rank, "theta")?;
    let w = WeylElement::parse(&a.w, rank).map_err(usage("w"))?;
    let d = OrbitDescriptor::new(&rs, gammas, w, theta.clone()).map_err(usage("gamma"))?;
    let form = match &a.form {
        Some(s) => s.parse().map_err(usage("form"))?,
        None => RealForm::for_family(rs.family()),
    };
    let json = a.system.json;
    match op {
        DescriptorOp::Normalize => {
            let n = normalize_descriptor(&rs, &d)?;
            ok(json, json!(n), format!("{n}\n"))
        }
        DescriptorOp::Certify => {
            let j = certify_nonclosed(&rs, &d)?;
            let text = match j {
                Some(j) => format!("non-closed: gamma {} = {} is not in w Delta_Theta\n", j + 1, d.gammas.roots()[j]),
                None => "closed: every gamma lies in w Delta_Theta\n".to_string(),
            };
            let v = json!({
                "nonClosed": j.is_some(),
                "index": j.map(|j| j + 1),
                "gamma": j.map(|j| d.gammas.roots()[j].clone()),
            });
            ok(json, v, text)
        }
        DescriptorOp::Boundary => {
            let s1 = boundary_orbit_s1(&rs, &d, form)?;
            let s2 = boundary_orbit_s2(&rs, &d, form)?;
            let phi = phi_image(&rs, &d)?;
            let text = format!("S~1: {s1}\nS~2: {s2}\nphi: {phi}\n");
            ok(json, json!({"s1": s1, "s2": s2, "phi": phi}), text)
        }
        DescriptorOp::Inequality => {
            let z = defining_element(&rs, &theta)?;
            let wt = enumerate_parabolic(&rs, &theta, DEFAULT_ENUMERATION_CAP)?;
            let dt = boundary_orbit_s1(&rs, &d, form)?;
            let cert = separation_inequality(&rs, &d, &dt, &z, &wt)?;
            let text = format!(
                "{:?}: lhs {} > max rhs {} (gap {}, closed form {})\n",
                cert.kind, cert.lhs_value, cert.max_rhs_value, cert.gap, cert.closed_form_gap
            );
            let verified = cert.gap > flagorbits::rational::q(0);
            Ok(emit(json, json!({"boundary": dt, "certificate": cert}), text, verified))
        }
    }
}

fn sp2(cmd: Sp2Command) -> Result<Output> {
    match cmd {
        Sp2Command::Classify { flag, tol, json } => {
            let text = std::fs::read_to_string(&flag)
                .map_err(|e| Failure::Usage(format!("--flag: {}: {e}", flag.display())))?;
            let f: Flag4 = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("--flag: {e}")))?;
            let kc = classify_kc(&f, tol)?;
            let gr = classify_gr(&f, tol)?;
            ok(json, json!({"kc": kc, "gr": gr}), format!("K_C orbit {kc}, G_R orbit {gr}\n"))
        }
        Sp2Command::VerifyTable { tol, json } => {
            let r = verify_duality_table(tol);
            let mut text = String::new();
            for row in &r.rows {
                text += &format!(
                    "{:>3}  {:<18} {:<5} {:<6} {}\n",
                    row.index,
                    row.representative,
                    row.kc.map(|l| l.to_string()).unwrap_or("-".into()),
                    row.gr.map(|l| l.to_string()).unwrap_or("-".into()),
                    if row.matched { "ok" } else { "MISMATCH" }
                );
            }
            text += &format!("{}/{} matched\n", r.matched, r.total);
            Ok(emit(json, json!(r), text, r.all_matched()))
        }
        Sp2Command::Dims { json } => {
            let mut rows = Vec::new();
            let mut text = String::new();
            for o in Orbit::ALL {
                let t = tangent_rank(&flagorbits::sp2::representative(o).1)?;
                text += &format!("S{:<3} dim {}  gap {:.1e}\n", o.index_str(), t.rank, t.gap);
                rows.push(json!({
                    "orbit": OrbitLabel::kc(o),
                    "dimension": t.rank,
                    "singularValues": t.singular_values,
                    "gap": if t.gap.is_finite() { json!(t.gap) } else { Value::Null },
                }));
            }
            ok(json, json!(rows), text)
        }
        Sp2Command::Diagram {
            dot,
            samples,
            seed,
            tol,
            json,
        } => {
            let edges = closure_diagram();
            let dot_text = to_dot(&edges);
            let mut reports = Vec::new();
            if samples > 0 {
                for (i, e) in edges.iter().enumerate() {
                    reports.push(saturation_check(&edges, e, samples, seed.wrapping_add(i as u64), tol)?);
                }
            }
            let verified = reports.iter().all(|r| r.ok());
            let mut text = String::new();
            match &dot {
                Some(path) => {
                    std::fs::write(path, &dot_text)
                        .map_err(|e| Failure::Usage(format!("--dot: {}: {e}", path.display())))?;
                    text += &format!("wrote {} edges to {}\n", edges.len(), path.display());
                }
                None => text += &dot_text,
            }
            for r in &reports {
                text += &format!(
                    "// {} -> {} [{}]: {} outside of {}\n",
                    OrbitLabel::kc(r.edge.from),
                    OrbitLabel::kc(r.edge.to),
                    r.edge.parabolic,
                    r.outside,
                    samples
                );
            }
            let v = json!({"edges": edges, "dot": dot_text, "saturation": reports});
            Ok(emit(json, v, text, verified))
        }
        Sp2Command::Strata {
            s1,
            s2,
            seed,
            tol,
            json,
        } => {
            let mut g: GroupElement4 = t1(s1) * t2(s2);
            if let Some(seed) = seed {
                g = random_real(&mut ChaCha8Rng::seed_from_u64(seed)) * g;
            }
            let (up, um) = planes_of(&g);
            let plus = stratum_of_plane(&up, tol)?;
            let minus = mirror_stratum_of_plane(&um, tol)?;
            let in_domain = plus == Stratum::Interior && minus == Stratum::Interior;
            let text = format!("gU+: {plus:?}, gU-: {minus:?}, in domain: {in_domain}\n");
            ok(json, json!({"plus": plus, "minus": minus, "inDomain": in_domain}), text)
        }
        Sp2Command::Search {
            claim,
            s2,
            seed,
            tol,
            budget,
            starts,
            json,
        } => {
            let c: Claim = claim.parse().map_err(usage("claim"))?;
            let opts = SearchOptions {
                starts,
                budget,
                seed,
                tol,
                ..Default::default()
            };
            let w = search_claim(&c, s2, &opts)?;
            let text = format!(
                "{c}\nwitness at s2 = {s2}: violation {:e}, margins {:?}, classified as {}, start {}, {} evaluations\n",
                w.witness.violation,
                w.witness.margins,
                w.witness.classified_as.map(|l| l.to_string()).unwrap_or("-".into()),
                w.witness.start,
                w.witness.evaluations
            );
            ok(json, json!(w), text)
        }
        Sp2Command::Lift { orbit, json } => {
            let label: OrbitLabel = orbit.parse().map_err(usage("orbit"))?;
            if label.side != Side::Kc {
                return Err(Failure::Usage(format!("--orbit: {label} is a G_R label")));
            }
            let seq = lift_sequence(label.orbit)?;
            let dim = orbit_dimension(label.orbit)?;
            let text = if seq.is_empty() {
                format!("{label} (dim {dim}) is the open orbit\n")
            } else {
                let steps: Vec<String> = seq.iter().map(|k| format!("P_{k}")).collect();
                format!("{label} (dim {dim}): {} reaches Sop\n", steps.join(", "))
            };
            ok(json, json!({"orbit": label, "dimension": dim, "parabolics": seq}), text)
        }
    }
}
