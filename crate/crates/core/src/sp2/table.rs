//! The representative table `S_j = K_C g_j B`, `S'_j = G_R g_j B`, and the
//! dictionary between table entries and symbolic C2 descriptors.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::orbit::OrbitDescriptor;
use crate::rational::qv;
use crate::roots::{build_root_system, Family, Root, RootSystem};
use crate::weyl::WeylElement;

use super::flag::{classify_gr, classify_kc, flag_of};
use super::label::{Orbit, OrbitLabel};
use super::matrix::{c, c_beta1, c_beta2, c_delta, w_beta1, w_beta2, GroupElement4, Mat4};

/// The table entry `g_j` and its name.
pub fn representative(o: Orbit) -> (&'static str, GroupElement4) {
    match o {
        Orbit::S1 => ("e", GroupElement4::identity()),
        Orbit::S2 => ("w_beta1 w_beta2", w_beta1() * w_beta2()),
        Orbit::S3 => ("w_beta2", w_beta2()),
        Orbit::S4 => ("w_beta1", w_beta1()),
        Orbit::S5 => ("c_beta2", c_beta2()),
        Orbit::S6 => ("c_beta2 w_beta1", c_beta2() * w_beta1()),
        Orbit::S7 => ("c_delta w_beta2", c_delta() * w_beta2()),
        Orbit::S8 => ("c_beta1", c_beta1()),
        Orbit::S9 => ("c_beta1 w_beta2", c_beta1() * w_beta2()),
        Orbit::S10 => ("c_delta", c_delta()),
        Orbit::Op => ("c_beta1 c_beta2", c_beta1() * c_beta2()),
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DualityRow {
    pub index: String,
    pub representative: String,
    pub kc: Option<OrbitLabel>,
    pub gr: Option<OrbitLabel>,
    pub matched: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DualityReport {
    pub rows: Vec<DualityRow>,
    pub matched: usize,
    pub total: usize,
}

impl DualityReport {
    pub fn all_matched(&self) -> bool {
        self.matched == self.total
    }
}

/// Classify every table representative on both sides.
pub fn verify_duality_table(tol: f64) -> DualityReport {
    let rows: Vec<DualityRow> = Orbit::ALL
        .iter()
        .map(|&o| {
            let (name, g) = representative(o);
            let f = flag_of(&g);
            let kc = classify_kc(&f, tol);
            let gr = classify_gr(&f, tol);
            let error = [&kc, &gr]
                .iter()
                .find_map(|r| r.as_ref().err().map(ToString::to_string));
            let kc = kc.ok();
            let gr = gr.ok();
            let matched = kc == Some(OrbitLabel::kc(o)) && gr == Some(OrbitLabel::gr(o));
            DualityRow {
                index: o.index_str().to_string(),
                representative: name.to_string(),
                kc,
                gr,
                matched,
                error,
            }
        })
        .collect();
    let matched = rows.iter().filter(|r| r.matched).count();
    DualityReport {
        total: rows.len(),
        rows,
        matched,
    }
}

/// C2 with `Z = (1, 1)`, the root data of Sp(2,R).
pub fn c2_system() -> RootSystem {
    build_root_system(Family::C, 2, qv(&[1, 1])).expect("standard system")
}

fn root(s: &str) -> Root {
    Root::parse(s, 2).expect("static root")
}

fn refl(s: &str) -> WeylElement {
    WeylElement::reflection_in(root(s).coords()).expect("static root")
}

/// The table entry as a symbolic descriptor `(Γ, w, Θ = ∅)`, reading
/// `c_{β1}, c_{β2}, c_δ` as `c_{2e1}, c_{2e2}, c_{e1+e2}`.
pub fn descriptor_of(o: Orbit) -> OrbitDescriptor {
    let rs = c2_system();
    let id = WeylElement::identity(2);
    let (gammas, w): (Vec<&str>, WeylElement) = match o {
        Orbit::S1 => (vec![], id),
        Orbit::S2 => (vec![], refl("2e1").compose(&refl("2e2"))),
        Orbit::S3 => (vec![], refl("2e2")),
        Orbit::S4 => (vec![], refl("2e1")),
        Orbit::S5 => (vec!["2e2"], id),
        Orbit::S6 => (vec!["2e2"], refl("2e1")),
        Orbit::S7 => (vec!["e1+e2"], refl("2e2")),
        Orbit::S8 => (vec!["2e1"], id),
        Orbit::S9 => (vec!["2e1"], refl("2e2")),
        Orbit::S10 => (vec!["e1+e2"], id),
        Orbit::Op => (vec!["2e1", "2e2"], id),
    };
    OrbitDescriptor::new(&rs, gammas.into_iter().map(root).collect(), w, vec![]).expect("static descriptor")
}

type Key = (Vec<Root>, WeylElement);

fn key(gammas: &[Root], w: &WeylElement) -> Key {
    let mut g = gammas.to_vec();
    g.sort();
    (g, w.clone())
}

/// Everything reachable from `d` by `w ↦ w_γ w` (γ in the system) and by the
/// compact Weyl group `(Γ, w) ↦ (uΓ, uw)`, `u ∈ {e, w_{e1-e2}}`.
fn coset_closure(d: &OrbitDescriptor) -> Vec<Key> {
    let u = refl("e1-e2");
    let mut seen = vec![key(d.gammas.roots(), &d.w)];
    let mut i = 0;
    while i < seen.len() {
        let (g, w) = seen[i].clone();
        let mut next: Vec<Key> = g
            .iter()
            .map(|r| key(&g, &WeylElement::reflection_in(r.coords()).expect("root").compose(&w)))
            .collect();
        let moved: Vec<Root> = g.iter().map(|r| u.apply_root(r)).collect();
        next.push(key(&moved, &u.compose(&w)));
        for k in next {
            if !seen.contains(&k) {
                seen.push(k);
            }
        }
        i += 1;
    }
    seen
}

/// Exact lookup of the table orbit of a C2 descriptor (`Θ` is ignored; a
/// `c_β` prefix is unfolded first).
pub fn label_of_descriptor(d: &OrbitDescriptor) -> Result<Orbit> {
    let rs = c2_system();
    let d = d.unfold_prefix(&rs)?;
    let k = key(d.gammas.roots(), &d.w);
    Orbit::ALL
        .into_iter()
        .find(|&o| coset_closure(&descriptor_of(o)).contains(&k))
        .ok_or_else(|| Error::Unclassified(format!("descriptor {d} matches no table entry")))
}

/// A matrix lift of a signed permutation: `e_i ↦ e_{π(i)}` or `e_{π(i)+2}`
/// according to the sign, completed symplectically.
pub fn weyl_lift(w: &WeylElement) -> GroupElement4 {
    let mut m = Mat4::zeros();
    for i in 0..2 {
        let p = w.perm()[i];
        if w.signs()[i] > 0 {
            m[(p, i)] = c(1.0);
            m[(p + 2, i + 2)] = c(1.0);
        } else {
            m[(p + 2, i)] = c(1.0);
            m[(p, i + 2)] = c(-1.0);
        }
    }
    GroupElement4::trusted(m)
}

fn cayley(r: &Root) -> Result<GroupElement4> {
    let positive = if r.coords()[0] + r.coords()[1] > crate::rational::q(0) {
        r.clone()
    } else {
        r.neg()
    };
    let g = match positive.to_string().as_str() {
        "2e1" => c_beta1(),
        "2e2" => c_beta2(),
        "e1+e2" => c_delta(),
        other => return Err(Error::InvalidGammaSystem(format!("{other} is not a noncompact root of C2"))),
    };
    Ok(if positive == *r { g } else { g.inverse() })
}

/// `c_β? c_{γ1} ⋯ c_{γk} n_w` as a matrix.
pub fn realize_descriptor(d: &OrbitDescriptor) -> Result<GroupElement4> {
    if d.w.dim() != 2 {
        return Err(Error::DimensionMismatch {
            left: 2,
            right: d.w.dim(),
        });
    }
    let mut g = GroupElement4::identity();
    for r in d.cayley_roots() {
        g = g * cayley(&r)?;
    }
    Ok(g * weyl_lift(&d.w))
}

/// Label of a descriptor by realizing it and classifying the flag.
pub fn classify_descriptor(d: &OrbitDescriptor, tol: f64) -> Result<OrbitLabel> {
    classify_kc(&flag_of(&realize_descriptor(d)?), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sp2::flag::DEFAULT_TOL;
    use crate::weyl::whole_group;

    #[test]
    fn table_matches() {
        let r = verify_duality_table(DEFAULT_TOL);
        assert!(r.all_matched(), "{r:?}");
        assert_eq!(r.total, 11);
    }

    #[test]
    fn weyl_lifts_are_symplectic_and_match_table() {
        let rs = c2_system();
        for w in whole_group(&rs).unwrap().elements {
            assert!(weyl_lift(&w).defect() < 1e-15, "{w}");
        }
        let lift = weyl_lift(&refl("2e1"));
        assert!((lift.matrix() - w_beta1().matrix()).norm() < 1e-15);
    }

    #[test]
    fn descriptors_realize_their_orbits() {
        for o in Orbit::ALL {
            assert_eq!(classify_descriptor(&descriptor_of(o), DEFAULT_TOL).unwrap().orbit, o);
            assert_eq!(label_of_descriptor(&descriptor_of(o)).unwrap(), o);
        }
    }

    #[test]
    fn coset_closures_partition_all_descriptors() {
        let rs = c2_system();
        let systems: Vec<Vec<&str>> = vec![vec![], vec!["2e1"], vec!["2e2"], vec!["e1+e2"], vec!["2e1", "2e2"]];
        for g in systems {
            for w in whole_group(&rs).unwrap().elements {
                let d = OrbitDescriptor::new(&rs, g.iter().map(|s| root(s)).collect(), w, vec![]).unwrap();
                let hits: Vec<Orbit> = Orbit::ALL
                    .into_iter()
                    .filter(|&o| coset_closure(&descriptor_of(o)).contains(&key(d.gammas.roots(), &d.w)))
                    .collect();
                assert_eq!(hits.len(), 1, "{d}");
                // The exact lookup agrees with the matrix realization.
                assert_eq!(classify_descriptor(&d, DEFAULT_TOL).unwrap().orbit, hits[0], "{d}");
            }
        }
    }
}
