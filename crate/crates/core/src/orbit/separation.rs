use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, coordinates, dot, format_rational, q, Rational};
use crate::roots::{Root, RootSystem};
use crate::weyl::ParabolicSubgroup;

use super::boundary::phi_image;
use super::{normalize_descriptor, OrbitDescriptor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum InequalityKind {
    /// Boundary coset obtained by dropping `γ1`.
    Drop,
    /// Boundary coset with a `c_β` prefix in place of a short `γ1`.
    Prefix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SeparationCertificate {
    pub kind: InequalityKind,
    #[serde(
        serialize_with = "rational::serialize_rational",
        deserialize_with = "rational::deserialize_rational"
    )]
    pub lhs_value: Rational,
    #[serde(
        serialize_with = "rational::serialize_rational",
        deserialize_with = "rational::deserialize_rational"
    )]
    pub max_rhs_value: Rational,
    #[serde(
        serialize_with = "rational::serialize_rational",
        deserialize_with = "rational::deserialize_rational"
    )]
    pub gap: Rational,
    #[serde(
        serialize_with = "rational::serialize_rational",
        deserialize_with = "rational::deserialize_rational"
    )]
    pub closed_form_gap: Rational,
}

/// Sum of the fundamental coweights of `Ψ ∖ Θ`: dominant, and vanishing on
/// exactly the simple roots in `Θ`.
pub fn defining_element(rs: &RootSystem, theta: &[Root]) -> Result<Vec<Rational>> {
    let n = rs.rank();
    for t in theta {
        if !rs.simple().contains(t) {
            return Err(Error::InvalidRootSystem(format!("{t} is not a simple root")));
        }
    }
    // Columns of the matrix whose rows are the simple roots.
    let columns: Vec<Vec<Rational>> = (0..n)
        .map(|k| rs.simple().iter().map(|a| a.coords()[k]).collect())
        .collect();
    let mut z = vec![Rational::zero(); n];
    for (j, alpha) in rs.simple().iter().enumerate() {
        if theta.contains(alpha) {
            continue;
        }
        let mut target = vec![Rational::zero(); n];
        target[j] = Rational::one();
        let coweight = coordinates(&columns, &target)
            .ok_or_else(|| Error::Internal("simple roots are not a basis".into()))?;
        for (zi, ci) in z.iter_mut().zip(coweight) {
            *zi += ci;
        }
    }
    Ok(z)
}

fn check_z(rs: &RootSystem, z: &[Rational], theta: &[Root]) -> Result<()> {
    if z.len() != rs.rank() {
        return Err(Error::DimensionMismatch {
            left: rs.rank(),
            right: z.len(),
        });
    }
    for alpha in rs.simple() {
        let p = alpha.dot(z);
        if p < q(0) {
            return Err(Error::ZThetaMismatch(format!("Z pairs to {} with {alpha}", format_rational(&p))));
        }
        if p.is_zero() != theta.contains(alpha) {
            return Err(Error::ZThetaMismatch(format!(
                "{alpha} pairs to {} with Z but is {}in Theta",
                format_rational(&p),
                if theta.contains(alpha) { "" } else { "not " }
            )));
        }
    }
    Ok(())
}

fn same_set(a: &[Root], b: &[Root]) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.contains(x))
}

fn reflection_term(root: &Root, v: &[Rational]) -> Rational {
    let p = root.dot(v);
    q(2) * p * p / root.norm_sq()
}

/// Compare `B(Z, σ̃Z)` for the boundary coset with the largest `B(Z, w1 σ w2 Z)`
/// over `w1, w2 ∈ W_Θ` for the orbit itself. A positive gap shows that the
/// φ-images lie in different `W_Θ` double cosets.
pub fn separation_inequality(
    rs: &RootSystem,
    d: &OrbitDescriptor,
    d_tilde: &OrbitDescriptor,
    z: &[Rational],
    w_theta: &ParabolicSubgroup,
) -> Result<SeparationCertificate> {
    if !same_set(&d.theta, &w_theta.theta) {
        return Err(Error::ZThetaMismatch("W_Theta was built for a different Theta".into()));
    }
    check_z(rs, z, &d.theta)?;
    let n = normalize_descriptor(rs, d)?;

    let sigma_tilde = phi_image(rs, d_tilde)?;
    let lhs = dot(z, &sigma_tilde.apply(z))?;
    let sigma = phi_image(rs, &n)?;
    let max_rhs = w_theta
        .elements
        .par_iter()
        .flat_map_iter(|w1| {
            let w1s = w1.compose(&sigma);
            w_theta
                .elements
                .iter()
                .map(move |w2| dot(z, &w1s.compose(w2).apply(z)).expect("same dimension"))
        })
        .max()
        .ok_or_else(|| Error::Internal("W_Theta is empty".into()))?;
    let gap = lhs - max_rhs;

    let v = n.w.apply(z);
    let gamma1 = n.gammas.first().expect("normalized");
    let lead = reflection_term(gamma1, &v);
    let (kind, closed_form) = match &d_tilde.beta_prefix {
        None => (InequalityKind::Drop, lead),
        Some(beta) => {
            let bv = beta.dot(&v);
            let gv = gamma1.dot(&v);
            if bv < q(0) || bv > gv || beta.norm_sq() != q(2) * gamma1.norm_sq() {
                return Err(Error::Internal(format!(
                    "prefix hypotheses fail: B(beta,wZ)={}, B(gamma1,wZ)={}",
                    format_rational(&bv),
                    format_rational(&gv)
                )));
            }
            (InequalityKind::Prefix, lead - reflection_term(beta, &v))
        }
    };
    if gap <= q(0) {
        return Err(Error::CertificateFailure {
            gap: format_rational(&gap),
        });
    }
    if gap != closed_form {
        return Err(Error::Internal(format!(
            "gap {} differs from closed form {}",
            format_rational(&gap),
            format_rational(&closed_form)
        )));
    }
    Ok(SeparationCertificate {
        kind,
        lhs_value: lhs,
        max_rhs_value: max_rhs,
        gap,
        closed_form_gap: closed_form,
    })
}
