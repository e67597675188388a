use nalgebra::DVector;

use crate::error::{Error, Result};

use super::label::Orbit;
use super::matrix::{c, GroupElement4, Mat4};
use super::table::representative;

pub const RANK_CUTOFF: f64 = 1e-8;
pub const RANK_GAP: f64 = 1e3;

/// Singular values of the tangent map and the rank they determine.
#[derive(Clone, Debug)]
pub struct TangentRank {
    pub singular_values: Vec<f64>,
    pub rank: usize,
    /// Smallest retained over largest discarded singular value (infinite when
    /// nothing or everything is discarded).
    pub gap: f64,
}

/// Numerical rank: singular values below `RANK_CUTOFF · σ_max` are zero, and a
/// gap of at least `RANK_GAP` must separate the two groups.
pub fn numerical_rank(mut sv: Vec<f64>) -> Result<TangentRank> {
    sv.sort_by(|a, b| b.total_cmp(a));
    let max = sv.first().copied().unwrap_or(0.0);
    let rank = sv.iter().filter(|s| **s >= RANK_CUTOFF * max && **s > 0.0).count();
    let gap = if rank == 0 || rank == sv.len() || sv[rank] == 0.0 {
        f64::INFINITY
    } else {
        sv[rank - 1] / sv[rank]
    };
    if gap < RANK_GAP {
        return Err(Error::Degenerate {
            quantities: sv
                .iter()
                .enumerate()
                .map(|(i, s)| (format!("singular value {i}"), *s))
                .collect(),
        });
    }
    Ok(TangentRank {
        singular_values: sv,
        rank,
        gap,
    })
}

/// Rank of `X ↦ g⁻¹Xg mod b` on `Lie(K_C) = {diag(A, -ᵀA)}`, read off in the
/// coordinates `(A21, C11, C12, C22)` of `g / b`.
pub fn tangent_rank(g: &GroupElement4) -> Result<TangentRank> {
    let ginv = g.inverse();
    let mut m = nalgebra::DMatrix::<super::matrix::C64>::zeros(4, 4);
    for (col, (a, b)) in [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().enumerate() {
        let mut x = Mat4::zeros();
        x[(a, b)] = c(1.0);
        x[(b + 2, a + 2)] = c(-1.0);
        let y = ginv.matrix() * x * g.matrix();
        let coords = DVector::from_vec(vec![y[(1, 0)], y[(2, 0)], y[(2, 1)], y[(3, 1)]]);
        m.set_column(col, &coords);
    }
    numerical_rank(m.svd(false, false).singular_values.iter().copied().collect())
}

/// Complex dimension of the `K_C`-orbit through the table representative.
pub fn orbit_dimension(o: Orbit) -> Result<usize> {
    Ok(tangent_rank(&representative(o).1)?.rank)
}
