use flagorbits::orbit::InequalityKind;
use flagorbits::weyl::{whole_group, DEFAULT_ENUMERATION_CAP};
use flagorbits::{
    boundary_orbit_s1, boundary_orbit_s2, build_root_system, certify_nonclosed, choose_beta_system,
    defining_element, enumerate_parabolic, is_strongly_orthogonal, noncompact_positive_roots,
    normalize_descriptor, phi_image, separation_inequality, split_delta12, Error, Family, GammaSystem,
    OrbitDescriptor, RealForm, Root, RootSystem,
};
use flagorbits::roots::hermitian_central_element;

fn system(family: Family, rank: usize) -> RootSystem {
    build_root_system(family, rank, hermitian_central_element(family, rank)).unwrap()
}

/// Every strongly orthogonal subset of `Δₙ⁺`, as lists in root-system order.
fn gamma_systems(rs: &RootSystem) -> Vec<Vec<Root>> {
    let nc = noncompact_positive_roots(rs).members;
    let mut out = vec![Vec::new()];
    for r in &nc {
        let extended: Vec<Vec<Root>> = out
            .iter()
            .filter(|s| s.iter().all(|x| is_strongly_orthogonal(rs, x, r)))
            .map(|s| {
                let mut t = s.clone();
                t.push(r.clone());
                t
            })
            .collect();
        out.extend(extended);
    }
    out
}

fn orderings(items: &[Root]) -> Vec<Vec<Root>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in orderings(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

fn subsets(items: &[Root]) -> Vec<Vec<Root>> {
    (0..1u32 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, r)| r.clone())
                .collect()
        })
        .collect()
}

/// Runs the boundary construction and the separation certificate over every
/// descriptor of the system; returns (instances, prefix instances).
fn exhaust(family: Family, rank: usize) -> (usize, usize) {
    let rs = system(family, rank);
    let form = RealForm::for_family(family);
    let w_all = whole_group(&rs).unwrap();
    let mut count = 0;
    let mut prefixed = 0;
    for theta in subsets(rs.simple()) {
        let z = defining_element(&rs, &theta).unwrap();
        let wt = enumerate_parabolic(&rs, &theta, DEFAULT_ENUMERATION_CAP).unwrap();
        for gammas in gamma_systems(&rs).iter().flat_map(|g| orderings(g)) {
            for w in &w_all.elements {
                let d = OrbitDescriptor::new(&rs, gammas.clone(), w.clone(), theta.clone()).unwrap();
                if certify_nonclosed(&rs, &d).unwrap().is_none() {
                    assert!(matches!(normalize_descriptor(&rs, &d), Err(Error::NotNonClosed)));
                    continue;
                }
                let n = normalize_descriptor(&rs, &d).unwrap();
                assert_eq!(normalize_descriptor(&rs, &n).unwrap(), n, "idempotence at {d}");
                assert_eq!(phi_image(&rs, &n).unwrap(), phi_image(&rs, &d).unwrap());
                let dt = boundary_orbit_s1(&rs, &d, form).unwrap();
                let cert = separation_inequality(&rs, &d, &dt, &z, &wt)
                    .unwrap_or_else(|e| panic!("{d} -> {dt}: {e}"));
                assert_eq!(cert.gap, cert.closed_form_gap);
                let shorter = dt.gammas.len() + 1 == gammas.len() && dt.beta_prefix.is_none();
                let swapped = dt.gammas.len() + 1 == gammas.len() && dt.beta_prefix.is_some();
                assert!(shorter || swapped);
                if cert.kind == InequalityKind::Prefix {
                    prefixed += 1;
                }
                // The conjugate construction must also land on a valid descriptor.
                boundary_orbit_s2(&rs, &d, form).unwrap().validate(&rs).unwrap();
                count += 1;
            }
        }
    }
    (count, prefixed)
}

#[test]
fn separation_holds_on_c2_and_c3() {
    let (n2, p2) = exhaust(Family::C, 2);
    assert!(n2 > 0 && p2 > 0);
    let (n3, p3) = exhaust(Family::C, 3);
    assert!(n3 > n2 && p3 > 0);
}

#[test]
fn separation_holds_on_b2_and_b3() {
    let (n2, p2) = exhaust(Family::B, 2);
    assert!(n2 > 0 && p2 > 0);
    let (n3, _) = exhaust(Family::B, 3);
    assert!(n3 > n2);
}

#[test]
fn beta_systems_are_maximal_and_split_is_orthogonal() {
    for (family, rank) in [(Family::C, 2), (Family::C, 3), (Family::C, 4), (Family::B, 2), (Family::B, 3), (Family::B, 4)] {
        let rs = system(family, rank);
        let nc = noncompact_positive_roots(&rs).members;
        for gammas in gamma_systems(&rs).into_iter().filter(|g| !g.is_empty()) {
            let g = GammaSystem::new(&rs, gammas).unwrap();
            let b = choose_beta_system(&rs, &g, RealForm::for_family(family)).unwrap();
            for r in &nc {
                if !b.betas.contains(r) {
                    assert!(
                        b.betas.iter().any(|x| !is_strongly_orthogonal(&rs, x, r)),
                        "{r} extends the beta system of {g:?}"
                    );
                }
            }
            let split = split_delta12(&rs, &b, &g).unwrap();
            for gj in g.rest() {
                for d1 in &split.delta1.members {
                    assert_eq!(gj.dot(d1.coords()), flagorbits::rational::q(0));
                }
            }
        }
    }
}

#[test]
fn equal_length_branch_completes_greedily() {
    let rs = system(Family::C, 3);
    let g = GammaSystem::new(&rs, vec![Root::parse("e1+e2", 3).unwrap()]).unwrap();
    let b = choose_beta_system(&rs, &g, RealForm::EqualLength).unwrap();
    assert_eq!(b.betas[0], Root::parse("e1+e2", 3).unwrap());
    let split = split_delta12(&rs, &b, &g).unwrap();
    assert!(split.gamma1_is_long);
    assert_eq!(split.delta1.len(), 2);
}
