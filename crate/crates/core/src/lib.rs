//! Combinatorial orbit calculus for K_C-orbits on flag manifolds of
//! Hermitian real forms, and a numerical laboratory for the Sp(2,R) case.
//!
//! The exact layer ([`roots`], [`weyl`], [`orbit`]) works over rationals in
//! the orthonormal e-basis of types B and C. The numerical layer ([`sp2`])
//! models Sp(2,C) by explicit 4×4 complex matrices.

pub mod error;
pub mod optim;
pub mod orbit;
pub mod rational;
pub mod roots;
pub mod sp2;
pub mod weyl;

pub use error::{Error, Result};
pub use rational::Rational;
pub use roots::{
    build_root_system, delta_theta, noncompact_positive_roots, root_inner_product,
    simple_roots_of_positive_system, is_strongly_orthogonal, Family, Root, RootSubset, RootSystem,
    SubsetTag,
};
pub use weyl::{act_on_positive_system, enumerate_parabolic, reflection, ParabolicSubgroup, WeylElement};
pub use orbit::{
    boundary_orbit_s1, boundary_orbit_s2, certify_nonclosed, choose_beta_system, defining_element,
    normalize_descriptor, phi_image, separation_inequality, split_delta12, BetaSystem, DeltaSplit,
    GammaSystem, OrbitDescriptor, RealForm, SeparationCertificate,
};
