use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{in_span, q, Rational};
use crate::roots::{
    is_strongly_orthogonal, noncompact_positive_roots, Family, Root, RootSubset, RootSystem, SubsetTag,
};

use super::GammaSystem;

/// Which case family of the β-system construction applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum RealForm {
    /// sp(l, R) on a type C system with `Z = (1, ..., 1)`.
    Sp,
    /// so(2, 2p-1) on a type B system with `Z = (1, 0, ..., 0)`.
    So2Odd,
    /// Every root counts as long.
    EqualLength,
}

impl FromStr for RealForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<RealForm> {
        match s {
            "sp" => Ok(RealForm::Sp),
            "so2odd" => Ok(RealForm::So2Odd),
            "equalLength" | "equal-length" => Ok(RealForm::EqualLength),
            _ => Err(Error::Parse(format!("unknown real form {s:?}"))),
        }
    }
}

impl RealForm {
    /// The natural real form for a family, used when none is given.
    pub fn for_family(family: Family) -> RealForm {
        match family {
            Family::C => RealForm::Sp,
            Family::B => RealForm::So2Odd,
        }
    }

    pub fn gamma1_is_long(self, rs: &RootSystem, gamma1: &Root) -> bool {
        self == RealForm::EqualLength || rs.is_long(gamma1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BetaSystem {
    pub betas: Vec<Root>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DeltaSplit {
    pub delta1: RootSubset,
    pub delta2: RootSubset,
    pub gamma1_is_long: bool,
}

fn unit(n: usize, i: usize, c: i64) -> Root {
    let mut v = vec![q(0); n];
    v[i] = q(c);
    Root::new(v).expect("nonzero")
}

fn pair(n: usize, i: usize, a: i64, j: usize, b: i64) -> Root {
    let mut v = vec![q(0); n];
    v[i] = q(a);
    v[j] = q(b);
    Root::new(v).expect("nonzero")
}

/// Indices with nonzero coordinate, and those coordinates.
fn support(r: &Root) -> Vec<(usize, Rational)> {
    r.coords()
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != q(0))
        .map(|(i, c)| (i, *c))
        .collect()
}

fn check_shape(rs: &RootSystem, form: RealForm) -> Result<()> {
    let z = rs.central();
    let ok = match form {
        RealForm::Sp => rs.family() == Family::C && z.iter().all(|c| *c == z[0]) && z[0] > q(0),
        RealForm::So2Odd => {
            rs.family() == Family::B
                && rs.rank() >= 2
                && z[0] > q(0)
                && z[1..].iter().all(|c| *c == q(0))
        }
        RealForm::EqualLength => true,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::BetaCase(format!(
            "{form:?} does not match a {:?}{} system with Z = {:?}",
            rs.family(),
            rs.rank(),
            z.iter().map(crate::rational::format_rational).collect::<Vec<_>>()
        )))
    }
}

/// Extend `betas` greedily (in the order of `Δₙ⁺`) to a maximal strongly
/// orthogonal system.
fn complete(rs: &RootSystem, mut betas: Vec<Root>) -> Vec<Root> {
    for cand in noncompact_positive_roots(rs).members {
        if !betas.contains(&cand) && betas.iter().all(|b| is_strongly_orthogonal(rs, b, &cand)) {
            betas.push(cand);
        }
    }
    betas
}

/// A maximal strongly orthogonal system adapted to `g`: `β1 = γ1` with the
/// remaining γ's spanned by `β2, ...` when `γ1` is long; `γ1 ∈ Rβ1 ⊕ Rβ2` with
/// the remaining γ's spanned by `β3, ...` when `γ1` is short.
pub fn choose_beta_system(rs: &RootSystem, g: &GammaSystem, form: RealForm) -> Result<BetaSystem> {
    check_shape(rs, form)?;
    let n = rs.rank();
    let gamma1 = g
        .first()
        .ok_or_else(|| Error::BetaCase("empty gamma system".into()))?;
    let betas = match form {
        RealForm::EqualLength => complete(rs, g.roots().to_vec()),
        RealForm::Sp => {
            let sup = support(gamma1);
            match sup.as_slice() {
                [(r, _)] => {
                    let mut b = vec![gamma1.clone()];
                    b.extend((0..n).filter(|s| s != r).map(|s| unit(n, s, 2)));
                    b
                }
                [(r, _), (s, _)] => {
                    let mut b = vec![unit(n, *r, 2), unit(n, *s, 2)];
                    b.extend((0..n).filter(|p| p != r && p != s).map(|p| unit(n, p, 2)));
                    b
                }
                _ => return Err(Error::BetaCase(format!("{gamma1} is not a root of C{n}"))),
            }
        }
        RealForm::So2Odd => {
            let sup = support(gamma1);
            if g.len() > 2 {
                return Err(Error::BetaCase("so(2,2p-1) has real rank two".into()));
            }
            match sup.as_slice() {
                [(0, _)] => {
                    if g.len() != 1 {
                        return Err(Error::BetaCase(format!("{gamma1} admits no strongly orthogonal partner")));
                    }
                    vec![pair(n, 0, 1, 1, 1), pair(n, 0, 1, 1, -1)]
                }
                [(0, _), (s, c)] => {
                    let partner = pair(n, 0, 1, *s, -c.to_integer());
                    if let Some(g2) = g.rest().first() {
                        if *g2 != partner {
                            return Err(Error::BetaCase(format!("{g2} is not {partner}")));
                        }
                    }
                    vec![gamma1.clone(), partner]
                }
                _ => return Err(Error::BetaCase(format!("{gamma1} is not noncompact"))),
            }
        }
    };
    let out = BetaSystem { betas };
    check_conditions(rs, g, &out, form.gamma1_is_long(rs, gamma1))?;
    Ok(out)
}

fn span_of(roots: &[Root]) -> Vec<Vec<Rational>> {
    roots.iter().map(|r| r.coords().to_vec()).collect()
}

fn check_conditions(rs: &RootSystem, g: &GammaSystem, b: &BetaSystem, long: bool) -> Result<()> {
    let gamma1 = g.first().expect("nonempty");
    let head = if long { 1 } else { 2 };
    if b.betas.len() < head {
        return Err(Error::Internal("beta system too short".into()));
    }
    if long {
        if b.betas[0] != *gamma1 {
            return Err(Error::Internal(format!("beta1 {} differs from gamma1 {gamma1}", b.betas[0])));
        }
    } else if !in_span(&span_of(&b.betas[..2]), gamma1.coords()) {
        return Err(Error::Internal(format!("{gamma1} is not in the span of beta1, beta2")));
    }
    let tail = span_of(&b.betas[head..]);
    for gj in g.rest() {
        if !in_span(&tail, gj.coords()) {
            return Err(Error::Internal(format!("{gj} is not in the span of the trailing betas")));
        }
    }
    for (i, x) in b.betas.iter().enumerate() {
        for y in &b.betas[..i] {
            if !is_strongly_orthogonal(rs, x, y) {
                return Err(Error::Internal(format!("{x} and {y} are not strongly orthogonal")));
            }
        }
    }
    Ok(())
}

/// `Δ1 = {±γ1}` in the long case and `Δ ∩ (Rβ1 ⊕ Rβ2)` in the short case;
/// `Δ2` is everything orthogonal to `Δ1`.
pub fn split_delta12(rs: &RootSystem, b: &BetaSystem, g: &GammaSystem) -> Result<DeltaSplit> {
    let gamma1 = g
        .first()
        .ok_or_else(|| Error::BetaCase("empty gamma system".into()))?;
    let beta1 = b
        .betas
        .first()
        .ok_or_else(|| Error::BetaCase("empty beta system".into()))?;
    let long = beta1 == gamma1;
    let delta1: Vec<Root> = if long {
        vec![gamma1.clone(), gamma1.neg()]
    } else {
        let plane = span_of(b.betas.get(..2).ok_or_else(|| Error::BetaCase("beta system too short".into()))?);
        let members: Vec<Root> = rs
            .roots()
            .iter()
            .filter(|r| in_span(&plane, r.coords()))
            .cloned()
            .collect();
        let lengths: std::collections::BTreeSet<Rational> = members.iter().map(Root::norm_sq).collect();
        if members.len() != 8 || lengths.len() != 2 {
            return Err(Error::Internal(format!(
                "short-case delta1 has {} roots, expected a rank two system with two root lengths",
                members.len()
            )));
        }
        members
    };
    let delta2: Vec<Root> = rs
        .roots()
        .iter()
        .filter(|r| delta1.iter().all(|d| r.dot(d.coords()) == q(0)))
        .cloned()
        .collect();
    for gj in g.rest() {
        if delta1.iter().any(|d| gj.dot(d.coords()) != q(0)) || !delta2.contains(gj) {
            return Err(Error::Internal(format!("{gj} is not orthogonal to delta1")));
        }
    }
    Ok(DeltaSplit {
        delta1: RootSubset {
            tag: SubsetTag::Delta1,
            members: delta1,
        },
        delta2: RootSubset {
            tag: SubsetTag::Delta2,
            members: delta2,
        },
        gamma1_is_long: long,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qv;
    use crate::roots::{build_root_system, hermitian_central_element};

    fn sys(f: Family, n: usize) -> RootSystem {
        build_root_system(f, n, hermitian_central_element(f, n)).unwrap()
    }

    fn gs(rs: &RootSystem, roots: &[&str]) -> GammaSystem {
        GammaSystem::new(rs, roots.iter().map(|s| Root::parse(s, rs.rank()).unwrap()).collect()).unwrap()
    }

    fn roots(rs: &RootSystem, s: &[&str]) -> Vec<Root> {
        s.iter().map(|x| Root::parse(x, rs.rank()).unwrap()).collect()
    }

    #[test]
    fn sp_long_and_short() {
        let rs = sys(Family::C, 3);
        let b = choose_beta_system(&rs, &gs(&rs, &["2e2"]), RealForm::Sp).unwrap();
        assert_eq!(b.betas, roots(&rs, &["2e2", "2e1", "2e3"]));
        let b = choose_beta_system(&rs, &gs(&rs, &["e1+e3", "2e2"]), RealForm::Sp).unwrap();
        assert_eq!(b.betas, roots(&rs, &["2e1", "2e3", "2e2"]));
    }

    #[test]
    fn so2odd_cases() {
        let rs = sys(Family::B, 3);
        let b = choose_beta_system(&rs, &gs(&rs, &["e1"]), RealForm::So2Odd).unwrap();
        assert_eq!(b.betas, roots(&rs, &["e1+e2", "e1-e2"]));
        let b = choose_beta_system(&rs, &gs(&rs, &["e1-e3"]), RealForm::So2Odd).unwrap();
        assert_eq!(b.betas, roots(&rs, &["e1-e3", "e1+e3"]));
        let b = choose_beta_system(&rs, &gs(&rs, &["e1+e2", "e1-e2"]), RealForm::So2Odd).unwrap();
        assert_eq!(b.betas, roots(&rs, &["e1+e2", "e1-e2"]));
    }

    #[test]
    fn form_must_match_system() {
        let rs = sys(Family::C, 2);
        assert!(matches!(
            choose_beta_system(&rs, &gs(&rs, &["2e1"]), RealForm::So2Odd),
            Err(Error::BetaCase(_))
        ));
    }

    #[test]
    fn equal_length_keeps_gammas() {
        let rs = sys(Family::C, 3);
        let b = choose_beta_system(&rs, &gs(&rs, &["e1+e2"]), RealForm::EqualLength).unwrap();
        assert_eq!(b.betas[0], Root::parse("e1+e2", 3).unwrap());
        assert_eq!(b.betas.len(), 2);
    }

    #[test]
    fn delta_split_examples() {
        let rs = sys(Family::C, 2);
        let g = gs(&rs, &["2e1"]);
        let s = split_delta12(&rs, &choose_beta_system(&rs, &g, RealForm::Sp).unwrap(), &g).unwrap();
        assert!(s.gamma1_is_long);
        assert_eq!(s.delta1.members, roots(&rs, &["2e1", "-2e1"]));
        assert_eq!(s.delta2.members, roots(&rs, &["2e2", "-2e2"]));

        let g = gs(&rs, &["e1+e2"]);
        let s = split_delta12(&rs, &choose_beta_system(&rs, &g, RealForm::Sp).unwrap(), &g).unwrap();
        assert!(!s.gamma1_is_long);
        assert_eq!(s.delta1.len(), 8);
        assert!(s.delta2.is_empty());

        let rs = sys(Family::C, 3);
        let g = gs(&rs, &["e1+e2"]);
        let s = split_delta12(&rs, &choose_beta_system(&rs, &g, RealForm::Sp).unwrap(), &g).unwrap();
        assert_eq!(s.delta1.len(), 8);
        assert_eq!(s.delta2.members, roots(&rs, &["2e3", "-2e3"]));
        assert!(s.delta1.members.iter().all(|r| r.coords()[2] == qv(&[0])[0]));
    }
}
