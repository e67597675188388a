//! Orbit descriptors `K_C c_{γ1}⋯c_{γk} w B` (saturated by `P = B W_Θ B`) and
//! the boundary-orbit calculus built on them.
//!
//! A descriptor is symbolic: the Cayley elements `c_γ` are recorded by their
//! roots only. Two descriptors are compared structurally; deciding equality of
//! the underlying double cosets is not attempted.

mod beta;
mod boundary;
mod separation;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{delta_theta, is_strongly_orthogonal, noncompact_positive_roots, Root, RootSystem};
use crate::weyl::WeylElement;

pub use beta::{choose_beta_system, split_delta12, BetaSystem, DeltaSplit, RealForm};
pub use boundary::{boundary_orbit_s1, boundary_orbit_s2, mirror_descriptor, phi_image};
pub use separation::{
    defining_element, separation_inequality, InequalityKind, SeparationCertificate,
};

/// Pairwise strongly orthogonal, distinct roots of `Δₙ⁺`, in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GammaSystem {
    gammas: Vec<Root>,
}

impl GammaSystem {
    pub fn new(rs: &RootSystem, gammas: Vec<Root>) -> Result<GammaSystem> {
        let noncompact = noncompact_positive_roots(rs);
        for (i, g) in gammas.iter().enumerate() {
            if !noncompact.contains(g) {
                return Err(Error::InvalidGammaSystem(format!("{g} is not a noncompact positive root")));
            }
            for h in &gammas[..i] {
                if h == g {
                    return Err(Error::InvalidGammaSystem(format!("{g} repeated")));
                }
                if !is_strongly_orthogonal(rs, g, h) {
                    return Err(Error::InvalidGammaSystem(format!(
                        "{h} and {g} are not strongly orthogonal"
                    )));
                }
            }
        }
        Ok(GammaSystem { gammas })
    }

    pub fn empty() -> GammaSystem {
        GammaSystem { gammas: Vec::new() }
    }

    pub fn roots(&self) -> &[Root] {
        &self.gammas
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    pub fn first(&self) -> Option<&Root> {
        self.gammas.first()
    }

    pub fn rest(&self) -> &[Root] {
        self.gammas.get(1..).unwrap_or(&[])
    }

    /// Unchecked: callers rearrange or trim an already valid system.
    fn from_valid(gammas: Vec<Root>) -> GammaSystem {
        GammaSystem { gammas }
    }
}

/// `(γ-system, w, Θ)`, optionally with a leading long root `β` standing for a
/// `c_β` factor in front of the γ's.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OrbitDescriptor {
    pub gammas: GammaSystem,
    pub beta_prefix: Option<Root>,
    pub w: WeylElement,
    pub theta: Vec<Root>,
}

impl OrbitDescriptor {
    pub fn new(rs: &RootSystem, gammas: Vec<Root>, w: WeylElement, theta: Vec<Root>) -> Result<Self> {
        if w.dim() != rs.rank() || !w.permutes_roots(rs) {
            return Err(Error::InvalidWeylElement(format!("{w} is not in W")));
        }
        for t in &theta {
            if !rs.simple().contains(t) {
                return Err(Error::InvalidRootSystem(format!("{t} is not a simple root")));
            }
        }
        Ok(OrbitDescriptor {
            gammas: GammaSystem::new(rs, gammas)?,
            beta_prefix: None,
            w,
            theta,
        })
    }

    /// Re-check the invariants of a descriptor obtained from outside (JSON).
    pub fn validate(&self, rs: &RootSystem) -> Result<()> {
        let mut d = OrbitDescriptor::new(rs, self.gammas.roots().to_vec(), self.w.clone(), self.theta.clone())?;
        if let Some(b) = &self.beta_prefix {
            rs.require(b)?;
            let pos = if rs.is_positive(b) { b.clone() } else { b.neg() };
            let mut all = vec![pos];
            all.extend_from_slice(self.gammas.roots());
            GammaSystem::new(rs, all)?;
            d.beta_prefix = Some(b.clone());
        }
        Ok(())
    }

    /// The roots of all Cayley factors, prefix first.
    pub fn cayley_roots(&self) -> Vec<Root> {
        self.beta_prefix
            .iter()
            .cloned()
            .chain(self.gammas.roots().iter().cloned())
            .collect()
    }

    /// Fold a `c_β` prefix into the γ-system. A prefix in `-Δₙ⁺` uses
    /// `K_C c_β^{-1} ⋯ wB = K_C c_β ⋯ w_β w B`.
    pub fn unfold_prefix(&self, rs: &RootSystem) -> Result<OrbitDescriptor> {
        let Some(b) = &self.beta_prefix else {
            return Ok(self.clone());
        };
        let noncompact = noncompact_positive_roots(rs);
        let (root, w) = if noncompact.contains(b) {
            (b.clone(), self.w.clone())
        } else if noncompact.contains(&b.neg()) {
            (b.neg(), WeylElement::reflection_in(b.coords())?.compose(&self.w))
        } else {
            return Err(Error::InvalidGammaSystem(format!("prefix {b} is not noncompact")));
        };
        let mut gammas = vec![root];
        gammas.extend_from_slice(self.gammas.roots());
        Ok(OrbitDescriptor {
            gammas: GammaSystem::new(rs, gammas)?,
            beta_prefix: None,
            w,
            theta: self.theta.clone(),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

impl fmt::Display for OrbitDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |roots: &[Root]| roots.iter().map(Root::to_string).collect::<Vec<_>>().join(",");
        write!(f, "(")?;
        if let Some(b) = &self.beta_prefix {
            write!(f, "c[{b}] ")?;
        }
        write!(
            f,
            "{{{}}}, w={}, Θ={{{}}})",
            list(self.gammas.roots()),
            self.w,
            list(&self.theta)
        )
    }
}

fn in_w_delta_theta(rs: &RootSystem, w: &WeylElement, theta: &[Root], gamma: &Root) -> Result<bool> {
    let dt = delta_theta(rs, theta)?;
    Ok(dt.contains(&w.inverse().apply_root(gamma)))
}

fn in_w_positive(rs: &RootSystem, w: &WeylElement, gamma: &Root) -> bool {
    rs.is_positive(&w.inverse().apply_root(gamma))
}

/// Smallest index `j` (zero-based) with `γ_j ∉ wΔ_Θ`. `None` means every γ lies
/// in `wΔ_Θ`, so the saturated orbit is closed.
pub fn certify_nonclosed(rs: &RootSystem, d: &OrbitDescriptor) -> Result<Option<usize>> {
    let d = d.unfold_prefix(rs)?;
    for (j, g) in d.gammas.roots().iter().enumerate() {
        if !in_w_delta_theta(rs, &d.w, &d.theta, g)? {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

/// Move the first `γ ∉ wΔ_Θ` to the front, then replace `w` by `w_{γ1} w` if
/// `γ1 ∉ wΔ⁺`.
pub fn normalize_descriptor(rs: &RootSystem, d: &OrbitDescriptor) -> Result<OrbitDescriptor> {
    let d = d.unfold_prefix(rs)?;
    let j = certify_nonclosed(rs, &d)?.ok_or(Error::NotNonClosed)?;
    let mut gammas = d.gammas.roots().to_vec();
    let lead = gammas.remove(j);
    gammas.insert(0, lead.clone());
    let w = if in_w_positive(rs, &d.w, &lead) {
        d.w.clone()
    } else {
        WeylElement::reflection_in(lead.coords())?.compose(&d.w)
    };
    Ok(OrbitDescriptor {
        gammas: GammaSystem::from_valid(gammas),
        beta_prefix: None,
        w,
        theta: d.theta.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qv;
    use crate::roots::{build_root_system, Family};

    fn c2() -> RootSystem {
        build_root_system(Family::C, 2, qv(&[1, 1])).unwrap()
    }

    fn r(s: &str) -> Root {
        Root::parse(s, 2).unwrap()
    }

    fn desc(rs: &RootSystem, g: &[&str], w: WeylElement, theta: &[&str]) -> OrbitDescriptor {
        OrbitDescriptor::new(
            rs,
            g.iter().map(|s| r(s)).collect(),
            w,
            theta.iter().map(|s| r(s)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn gamma_system_validation() {
        let rs = c2();
        assert!(GammaSystem::new(&rs, vec![r("2e1"), r("2e2")]).is_ok());
        assert!(GammaSystem::new(&rs, vec![r("2e1"), r("e1+e2")]).is_err());
        assert!(GammaSystem::new(&rs, vec![r("e1-e2")]).is_err());
        assert!(GammaSystem::new(&rs, vec![r("2e1"), r("2e1")]).is_err());
    }

    #[test]
    fn normalize_examples() {
        let rs = c2();
        let id = WeylElement::identity(2);
        let d = desc(&rs, &["2e2"], id.clone(), &["e1-e2"]);
        assert_eq!(normalize_descriptor(&rs, &d).unwrap(), d);

        let w0 = WeylElement::longest(2);
        let d = desc(&rs, &["2e1"], w0.clone(), &[]);
        assert!(!in_w_positive(&rs, &d.w, &r("2e1")));
        let n = normalize_descriptor(&rs, &d).unwrap();
        assert_eq!(n.w, WeylElement::reflection_in(r("2e1").coords()).unwrap().compose(&w0));
        assert!(in_w_positive(&rs, &n.w, &r("2e1")));

        let d = desc(&rs, &["2e2"], id, &["2e2"]);
        assert!(matches!(normalize_descriptor(&rs, &d), Err(Error::NotNonClosed)));
    }

    #[test]
    fn normalize_reorders() {
        let rs = c2();
        // 2e2 ∈ Δ_Θ for Θ = {2e2}, so 2e1 moves to the front.
        let d = desc(&rs, &["2e2", "2e1"], WeylElement::identity(2), &["2e2"]);
        let n = normalize_descriptor(&rs, &d).unwrap();
        assert_eq!(n.gammas.roots(), &[r("2e1"), r("2e2")]);
    }

    #[test]
    fn certify_examples() {
        let rs = c2();
        let id = WeylElement::identity(2);
        assert_eq!(certify_nonclosed(&rs, &desc(&rs, &["2e2"], id.clone(), &["e1-e2"])).unwrap(), Some(0));
        assert_eq!(certify_nonclosed(&rs, &desc(&rs, &["2e2"], id.clone(), &["2e2"])).unwrap(), None);
        assert_eq!(
            certify_nonclosed(&rs, &desc(&rs, &["2e1", "2e2"], id.clone(), &["e1-e2"])).unwrap(),
            Some(0)
        );
        assert_eq!(certify_nonclosed(&rs, &desc(&rs, &[], id, &[])).unwrap(), None);
    }

    #[test]
    fn descriptor_json_shape() {
        let rs = c2();
        let d = desc(&rs, &["2e2"], WeylElement::identity(2), &["e1-e2"]);
        let json = d.to_json().unwrap();
        assert_eq!(
            json,
            r#"{"gammas":[["0/1","2/1"]],"betaPrefix":null,"w":{"perm":[1,2],"signs":[1,1]},"theta":[["1/1","-1/1"]]}"#
        );
        let back: OrbitDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
        back.validate(&rs).unwrap();
    }
}
