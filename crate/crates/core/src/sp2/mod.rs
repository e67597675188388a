//! Sp(2,C) and its real form Sp(2,R): explicit matrices, flag classifiers for
//! the `K_C`- and `G_R`-orbits on the full flag variety, the closure diagram,
//! and the boundary intersection search.
//!
//! A point `gB` is the flag `V1 ⊂ V2` spanned by the first one and two columns
//! of `g`. `K_C = {diag(k, ᵀk⁻¹)}`, and `G_R` is the fixed group of
//! `g ↦ h (g*)⁻¹ h` with `h = diag(1, 1, -1, -1)`.

pub mod diagram;
pub mod dims;
pub mod flag;
pub mod label;
pub mod matrix;
pub mod search;
pub mod table;

pub use diagram::{closure_diagram, lift_sequence, parse_dot, saturation_check, saturation_set, to_dot, DiagramEdge, SaturationReport};
pub use dims::{orbit_dimension, tangent_rank, TangentRank};
pub use flag::{classify_gr, classify_kc, flag_of, Flag4, Stratum, DEFAULT_TOL};
pub use label::{Orbit, OrbitLabel, Side};
pub use matrix::{GroupElement4, Mat2Wire};
pub use search::{boundary_point, intersection_search, search_claim, BoundarySide, Claim, ClaimWitness, SearchOptions, Target, Witness};
pub use table::{classify_descriptor, descriptor_of, label_of_descriptor, representative, verify_duality_table, DualityReport, DualityRow};
