use crate::error::{Error, Result};
use crate::roots::{simple_roots_of_positive_system, RootSystem};
use crate::weyl::WeylElement;

use super::beta::{choose_beta_system, split_delta12, RealForm};
use super::{normalize_descriptor, GammaSystem, OrbitDescriptor};

/// `w_{ρ1} ⋯ w_{ρm}` over the Cayley roots, prefix included.
fn cayley_reflections(rs: &RootSystem, d: &OrbitDescriptor) -> Result<WeylElement> {
    d.cayley_roots()
        .iter()
        .try_fold(WeylElement::identity(rs.rank()), |acc, r| {
            Ok(acc.compose(&WeylElement::reflection_in(r.coords())?))
        })
}

/// `w⁻¹ w_{γ1} ⋯ w_{γk} w`, with `w_β` in front of the γ reflections when the
/// descriptor carries a `c_β` prefix.
pub fn phi_image(rs: &RootSystem, d: &OrbitDescriptor) -> Result<WeylElement> {
    Ok(d.w.inverse().compose(&cayley_reflections(rs, d)?).compose(&d.w))
}

/// Combinatorial shadow of the conjugation of `G_C` with respect to `G_R`:
/// `(Γ, w) ↦ (Γ, w_{γ1} ⋯ w_{γk} w0 w)`. An involution, since the reflections
/// commute with each other and with `w0 = -1`.
pub fn mirror_descriptor(rs: &RootSystem, d: &OrbitDescriptor) -> Result<OrbitDescriptor> {
    let w0 = WeylElement::longest(rs.rank());
    let w = cayley_reflections(rs, d)?.compose(&w0).compose(&d.w);
    Ok(OrbitDescriptor { w, ..d.clone() })
}

/// The boundary double coset `S̃1` of a non-closed saturated orbit.
///
/// Long `γ1`: drop it. Short `γ1`: drop it when it is simple in
/// `Δ1⁺ = Δ1 ∩ wΔ⁺`, otherwise replace it by a `c_β` prefix with `β` the long
/// simple root of `Δ1⁺`.
pub fn boundary_orbit_s1(rs: &RootSystem, d: &OrbitDescriptor, form: RealForm) -> Result<OrbitDescriptor> {
    let n = normalize_descriptor(rs, d)?;
    let gamma1 = n.gammas.first().expect("normalized descriptors are nonempty").clone();
    let betas = choose_beta_system(rs, &n.gammas, form)?;
    let split = split_delta12(rs, &betas, &n.gammas)?;
    let rest = GammaSystem::from_valid(n.gammas.rest().to_vec());
    if split.gamma1_is_long {
        return Ok(OrbitDescriptor {
            gammas: rest,
            beta_prefix: None,
            w: n.w,
            theta: n.theta,
        });
    }
    let winv = n.w.inverse();
    let delta1_plus: Vec<_> = split
        .delta1
        .members
        .iter()
        .filter(|r| rs.is_positive(&winv.apply_root(r)))
        .cloned()
        .collect();
    let simple = simple_roots_of_positive_system(rs, &delta1_plus)?;
    if simple.len() != 2 {
        return Err(Error::Internal(format!("delta1+ has {} simple roots", simple.len())));
    }
    if simple.contains(&gamma1) {
        return Ok(OrbitDescriptor {
            gammas: rest,
            beta_prefix: None,
            w: n.w,
            theta: n.theta,
        });
    }
    let beta = simple
        .iter()
        .max_by_key(|r| r.norm_sq())
        .filter(|r| r.norm_sq() > gamma1.norm_sq())
        .ok_or_else(|| Error::Internal("delta1+ has no long simple root".into()))?
        .clone();
    Ok(OrbitDescriptor {
        gammas: rest,
        beta_prefix: Some(beta),
        w: n.w,
        theta: n.theta,
    })
}

/// The conjugate boundary coset `S̃2`: the `S̃1` recipe transported through
/// [`mirror_descriptor`].
pub fn boundary_orbit_s2(rs: &RootSystem, d: &OrbitDescriptor, form: RealForm) -> Result<OrbitDescriptor> {
    let m = mirror_descriptor(rs, &d.unfold_prefix(rs)?)?;
    mirror_descriptor(rs, &boundary_orbit_s1(rs, &m, form)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qv;
    use crate::roots::{build_root_system, Family, Root};

    fn c2() -> RootSystem {
        build_root_system(Family::C, 2, qv(&[1, 1])).unwrap()
    }

    fn r(s: &str) -> Root {
        Root::parse(s, 2).unwrap()
    }

    fn refl(s: &str) -> WeylElement {
        WeylElement::reflection_in(r(s).coords()).unwrap()
    }

    fn desc(rs: &RootSystem, g: &[&str], w: WeylElement) -> OrbitDescriptor {
        OrbitDescriptor::new(rs, g.iter().map(|s| r(s)).collect(), w, vec![]).unwrap()
    }

    #[test]
    fn phi_examples() {
        let rs = c2();
        let id = WeylElement::identity(2);
        assert_eq!(phi_image(&rs, &desc(&rs, &["2e1", "2e2"], id.clone())).unwrap(), WeylElement::longest(2));
        assert!(phi_image(&rs, &desc(&rs, &[], refl("2e2"))).unwrap().is_identity());
        assert_eq!(phi_image(&rs, &desc(&rs, &["e1+e2"], refl("2e2"))).unwrap(), refl("e1-e2"));
    }

    #[test]
    fn s1_long_cases() {
        let rs = c2();
        let id = WeylElement::identity(2);
        let out = boundary_orbit_s1(&rs, &desc(&rs, &["2e1"], id.clone()), RealForm::Sp).unwrap();
        assert_eq!(out, desc(&rs, &[], id.clone()));
        let out = boundary_orbit_s1(&rs, &desc(&rs, &["2e1", "2e2"], id.clone()), RealForm::Sp).unwrap();
        assert_eq!(out, desc(&rs, &["2e2"], id));
    }

    #[test]
    fn s1_short_cases() {
        let rs = c2();
        let id = WeylElement::identity(2);
        let out = boundary_orbit_s1(&rs, &desc(&rs, &["e1+e2"], id.clone()), RealForm::Sp).unwrap();
        assert_eq!(out.beta_prefix, Some(r("2e2")));
        assert_eq!(out.unfold_prefix(&rs).unwrap(), desc(&rs, &["2e2"], id));

        let out = boundary_orbit_s1(&rs, &desc(&rs, &["e1+e2"], refl("2e2")), RealForm::Sp).unwrap();
        assert_eq!(out, desc(&rs, &[], refl("2e2")));
    }

    #[test]
    fn mirror_is_involution() {
        let rs = c2();
        let d = desc(&rs, &["e1+e2"], refl("2e2"));
        assert_eq!(mirror_descriptor(&rs, &mirror_descriptor(&rs, &d).unwrap()).unwrap(), d);
    }

    #[test]
    fn s2_of_top_orbit() {
        let rs = c2();
        let d = desc(&rs, &["2e1", "2e2"], WeylElement::identity(2));
        // Mirror of ({2e1,2e2}, e) is itself; its S̃1 is ({2e2}, e), whose mirror is ({2e2}, w_{2e1}).
        let out = boundary_orbit_s2(&rs, &d, RealForm::Sp).unwrap();
        assert_eq!(out, desc(&rs, &["2e2"], refl("2e1")));
    }
}
