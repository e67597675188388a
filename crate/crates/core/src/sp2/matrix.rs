//! Sp(2,C) as 4×4 complex matrices preserving `J = [[0,-I],[I,0]]`, with the
//! subgroups used throughout: `K_C` (block diagonal), `B`, `P1 = Q`, `P2`,
//! and `G_R = Sp(2,C) ∩ U(2,2)`.

use std::f64::consts::FRAC_PI_4;
use std::ops::Mul;

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type Mat4 = Matrix4<C64>;
pub type Mat2 = Matrix2<C64>;

pub const SYMPLECTIC_TOL: f64 = 1e-10;

pub(crate) fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn j_matrix() -> Mat4 {
    let mut j = Mat4::zeros();
    j[(0, 2)] = c(-1.0);
    j[(1, 3)] = c(-1.0);
    j[(2, 0)] = c(1.0);
    j[(3, 1)] = c(1.0);
    j
}

/// `diag(1, 1, -1, -1)`: both the Hermitian form of U(2,2) and the matrix of
/// `τ`.
pub fn h_matrix() -> Mat4 {
    Mat4::from_diagonal(&nalgebra::Vector4::new(c(1.0), c(1.0), c(-1.0), c(-1.0)))
}

/// `‖ᵀg J g - J‖_max`.
pub fn symplectic_defect(m: &Mat4) -> f64 {
    let j = j_matrix();
    (m.transpose() * j * m - j).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// An element of Sp(2,C).
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement4(Mat4);

impl GroupElement4 {
    pub fn new(m: Mat4) -> Result<GroupElement4> {
        let d = symplectic_defect(&m);
        if d > SYMPLECTIC_TOL {
            return Err(Error::InvalidFlag(format!("matrix is not symplectic (defect {d:e})")));
        }
        Ok(GroupElement4(m))
    }

    /// For products of known symplectic factors.
    pub(crate) fn trusted(m: Mat4) -> GroupElement4 {
        GroupElement4(m)
    }

    pub fn identity() -> GroupElement4 {
        GroupElement4(Mat4::identity())
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    /// `g⁻¹ = J⁻¹ ᵀg J`.
    pub fn inverse(&self) -> GroupElement4 {
        let j = j_matrix();
        GroupElement4(-j * self.0.transpose() * j)
    }

    /// The conjugation of Sp(2,C) with respect to Sp(2,R): `g ↦ h (g*)⁻¹ h`.
    pub fn real_form_conjugate(&self) -> GroupElement4 {
        let h = h_matrix();
        let inv = self.inverse();
        GroupElement4(h * inv.0.adjoint() * h)
    }

    pub fn defect(&self) -> f64 {
        symplectic_defect(&self.0)
    }
}

impl Mul for &GroupElement4 {
    type Output = GroupElement4;
    fn mul(self, rhs: &GroupElement4) -> GroupElement4 {
        GroupElement4(self.0 * rhs.0)
    }
}

impl Mul for GroupElement4 {
    type Output = GroupElement4;
    fn mul(self, rhs: GroupElement4) -> GroupElement4 {
        GroupElement4(self.0 * rhs.0)
    }
}

/// Rotation by `s` in the `(e_i, e_{i+2})` plane: `t_1` for `i = 0`, `t_2` for
/// `i = 1`.
fn rotation(i: usize, s: f64) -> GroupElement4 {
    let mut m = Mat4::identity();
    m[(i, i)] = c(s.cos());
    m[(i, i + 2)] = c(-s.sin());
    m[(i + 2, i)] = c(s.sin());
    m[(i + 2, i + 2)] = c(s.cos());
    GroupElement4(m)
}

pub fn t1(s: f64) -> GroupElement4 {
    rotation(0, s)
}

pub fn t2(s: f64) -> GroupElement4 {
    rotation(1, s)
}

pub fn c_beta1() -> GroupElement4 {
    t1(FRAC_PI_4)
}

pub fn c_beta2() -> GroupElement4 {
    t2(FRAC_PI_4)
}

pub fn w_beta1() -> GroupElement4 {
    t1(std::f64::consts::FRAC_PI_2)
}

pub fn w_beta2() -> GroupElement4 {
    t2(std::f64::consts::FRAC_PI_2)
}

pub fn c_delta() -> GroupElement4 {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    #[rustfmt::skip]
    let m = Mat4::new(
        c(r), c(0.0), c(0.0), c(-r),
        c(0.0), c(r), c(-r), c(0.0),
        c(0.0), c(r), c(r), c(0.0),
        c(r), c(0.0), c(0.0), c(r),
    );
    GroupElement4(m)
}

/// `diag(k, ᵀk⁻¹)`.
pub fn k_hat(k: &Mat2) -> Result<GroupElement4> {
    let inv = k
        .try_inverse()
        .ok_or_else(|| Error::InvalidFlag("k is singular".into()))?;
    let inv_t = inv.transpose();
    let mut m = Mat4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(k);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(&inv_t);
    Ok(GroupElement4(m))
}

/// The standard elements together with their names, for display and tests.
pub fn standard_elements() -> Vec<(&'static str, GroupElement4)> {
    vec![
        ("J", GroupElement4(j_matrix())),
        ("c_beta1", c_beta1()),
        ("c_beta2", c_beta2()),
        ("w_beta1", w_beta1()),
        ("w_beta2", w_beta2()),
        ("c_delta", c_delta()),
    ]
}

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(normal(rng), normal(rng))
}

pub fn random_mat2<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    Mat2::from_fn(|_, _| complex_normal(rng))
}

/// `M` from eight reals: real parts row-major, then imaginary parts.
pub fn mat2_from_params(p: &[f64]) -> Mat2 {
    Mat2::new(
        C64::new(p[0], p[4]),
        C64::new(p[1], p[5]),
        C64::new(p[2], p[6]),
        C64::new(p[3], p[7]),
    )
}

/// `k̂` for `k = exp(M)` with a Gaussian `M`.
pub fn random_kc<R: Rng + ?Sized>(rng: &mut R) -> GroupElement4 {
    k_hat(&random_mat2(rng).exp()).expect("exponentials are invertible")
}

/// `[[A, AS], [0, A^{-T}]]` with `A` upper triangular and `S` symmetric.
pub fn random_borel<R: Rng + ?Sized>(rng: &mut R) -> GroupElement4 {
    let a = Mat2::new(
        complex_normal(rng).exp(),
        complex_normal(rng),
        C64::new(0.0, 0.0),
        complex_normal(rng).exp(),
    );
    let off = complex_normal(rng);
    let s = Mat2::new(complex_normal(rng), off, off, complex_normal(rng));
    let mut u = Mat4::identity();
    u.fixed_view_mut::<2, 2>(0, 2).copy_from(&s);
    let d = k_hat(&a).expect("triangular with nonzero diagonal");
    GroupElement4(d.0 * u)
}

/// `b1 · exp(zX) · b2` for the negative root vector `X` that generates `P_k`
/// over `B`: `E21 - E34` for `P1`, `E42` for `P2` (one-based indices).
pub fn random_parabolic<R: Rng + ?Sized>(rng: &mut R, k: u8) -> Result<GroupElement4> {
    let z = complex_normal(rng);
    let mut m = Mat4::identity();
    match k {
        1 => {
            m[(1, 0)] = z;
            m[(2, 3)] = -z;
        }
        2 => m[(3, 1)] = z,
        _ => return Err(Error::OutOfRange(format!("parabolic index {k} (expected 1 or 2)"))),
    }
    let b1 = random_borel(rng);
    let b2 = random_borel(rng);
    Ok(GroupElement4(b1.0 * m * b2.0))
}

/// `exp(X)` for `X = [[A, C̄], [C, -ᵀA]]`, `A` skew-Hermitian, `C` symmetric:
/// the Lie algebra of Sp(2,R) inside Sp(2,C).
pub fn random_real<R: Rng + ?Sized>(rng: &mut R) -> GroupElement4 {
    let h = random_mat2(rng);
    let a = (h - h.adjoint()) * c(0.5);
    let off = complex_normal(rng);
    let cc = Mat2::new(complex_normal(rng), off, off, complex_normal(rng)) * c(0.5);
    let mut x = Mat4::zeros();
    x.fixed_view_mut::<2, 2>(0, 0).copy_from(&a);
    x.fixed_view_mut::<2, 2>(0, 2).copy_from(&cc.map(|z| z.conj()));
    x.fixed_view_mut::<2, 2>(2, 0).copy_from(&cc);
    x.fixed_view_mut::<2, 2>(2, 2).copy_from(&(-a.transpose()));
    GroupElement4(x.exp())
}

/// Wire form of a 2×2 complex matrix: rows of `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mat2Wire(pub [[[f64; 2]; 2]; 2]);

impl From<&Mat2> for Mat2Wire {
    fn from(m: &Mat2) -> Mat2Wire {
        let e = |i, j| {
            let z: C64 = m[(i, j)];
            [z.re, z.im]
        };
        Mat2Wire([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn standard_elements_are_symplectic() {
        for (name, g) in standard_elements() {
            assert!(g.defect() < 1e-12, "{name}");
        }
        assert!(t1(0.37).defect() < 1e-12);
    }

    #[test]
    fn t1_quarter_turn_maps_e1_to_e3() {
        let m = w_beta1();
        assert!((m.matrix()[(2, 0)] - c(1.0)).norm() < 1e-15);
        assert!(m.matrix()[(0, 0)].norm() < 1e-15);
    }

    #[test]
    fn c_delta_squares_to_a_reflection() {
        // c_δ² is the quarter turn e1 ↦ e4, e2 ↦ e3, a lift of w_δ.
        let sq = c_delta() * c_delta();
        let expect = [(3, 0, 1.0), (2, 1, 1.0), (1, 2, -1.0), (0, 3, -1.0)];
        for (i, j, v) in expect {
            assert!((sq.matrix()[(i, j)] - c(v)).norm() < 1e-14);
        }
        // And agrees with the exponential of (π/4)(X_δ - X̄_δ), X_δ = -(E14 + E23).
        let mut x = Mat4::zeros();
        x[(0, 3)] = c(-1.0);
        x[(1, 2)] = c(-1.0);
        x[(3, 0)] = c(1.0);
        x[(2, 1)] = c(1.0);
        let e = (x * c(FRAC_PI_4)).exp();
        assert!((e - c_delta().matrix()).norm() < 1e-12);
    }

    #[test]
    fn random_samples_are_symplectic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            assert!(random_kc(&mut rng).defect() < 1e-9);
            assert!(random_borel(&mut rng).defect() < 1e-9);
            assert!(random_parabolic(&mut rng, 1).unwrap().defect() < 1e-8);
            assert!(random_parabolic(&mut rng, 2).unwrap().defect() < 1e-8);
            let g = random_real(&mut rng);
            assert!(g.defect() < 1e-9);
            // Real points are fixed by the conjugation.
            assert!((g.real_form_conjugate().matrix() - g.matrix()).norm() < 1e-9 * g.matrix().norm());
        }
    }

    #[test]
    fn inverse_and_products() {
        let g = c_delta() * t2(0.4) * c_beta1();
        assert!(g.defect() < 1e-12);
        let id = &g * &g.inverse();
        assert!((id.matrix() - Mat4::identity()).norm() < 1e-12);
    }
}
