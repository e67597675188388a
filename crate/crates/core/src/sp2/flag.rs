//! Flags `V1 ⊂ V2 ⊂ C⁴` with `V2` Lagrangian, and the membership tests that
//! define the `K_C`- and `G_R`-orbits.
//!
//! All quantities are computed from an orthonormal basis `(q1, q2)` of `V2`
//! with `q1` spanning `V1`, so they are scale-free and bounded by one. A
//! quantity is zero below `tol`, nonzero from `1e3 · tol`, and degenerate in
//! between.

use nalgebra::{Matrix4x2, Vector4};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

use super::label::{Orbit, OrbitLabel};
use super::matrix::{c, h_matrix, j_matrix, GroupElement4, C64};

pub const DEFAULT_TOL: f64 = 1e-8;
pub const NONZERO_FACTOR: f64 = 1e3;

pub type Vec4 = Vector4<C64>;

#[derive(Clone, Debug, PartialEq)]
pub struct Flag4 {
    pub v1: Vec4,
    pub v2: Matrix4x2<C64>,
}

/// `gB ↦ (g C e1, g U+)`.
pub fn flag_of(g: &GroupElement4) -> Flag4 {
    let m = g.matrix();
    Flag4 {
        v1: m.column(0).into_owned(),
        v2: m.fixed_columns::<2>(0).into_owned(),
    }
}

fn herm(a: &Vec4, b: &Vec4) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// `ᵀu J v`.
pub fn symplectic_pairing(u: &Vec4, v: &Vec4) -> C64 {
    (u.transpose() * j_matrix() * v)[(0, 0)]
}

/// `(u, v) = ū1 v1 + ū2 v2 - ū3 v3 - ū4 v4`.
pub fn hermitian_form(u: &Vec4, v: &Vec4) -> C64 {
    herm(u, &(h_matrix() * v))
}

/// Orthonormal `(q1, q2)` with `q1 ∥ v1` and `span(q1, q2) = V2`.
#[derive(Clone, Debug)]
pub struct FlagFrame {
    pub q1: Vec4,
    pub q2: Vec4,
}

impl FlagFrame {
    pub fn columns(&self) -> [&Vec4; 2] {
        [&self.q1, &self.q2]
    }
}

impl Flag4 {
    /// Validates rank, `v1 ∈ V2` and isotropy (to `1e3 · tol`), and returns
    /// the normalized frame.
    pub fn frame(&self, tol: f64) -> Result<FlagFrame> {
        let f = self.orthonormal_frame(tol)?;
        let loose = NONZERO_FACTOR * tol;
        let cols: Vec<Vec4> = self.v2.column_iter().map(|c| c.into_owned()).collect();
        let scale = self.v2.norm();
        let sv = Matrix4x2::from_columns(&[cols[0], cols[1]]).svd(true, false);
        let u = sv.u.expect("requested");
        let proj: Vec4 = (0..2)
            .filter(|&i| sv.singular_values[i] > tol * scale)
            .map(|i| {
                let ui: Vec4 = u.column(i).into_owned();
                ui * herm(&ui, &f.q1)
            })
            .sum();
        if (f.q1 - proj).norm() > loose {
            return Err(Error::InvalidFlag("v1 is not in V2".into()));
        }
        let iso = symplectic_pairing(&f.q1, &f.q2).norm();
        if iso > loose {
            return Err(Error::InvalidFlag(format!("V2 is not isotropic (defect {iso:e})")));
        }
        Ok(f)
    }

    /// `(q1, q2)` by Gram-Schmidt, checking only that the flag has full rank.
    pub fn orthonormal_frame(&self, tol: f64) -> Result<FlagFrame> {
        let n1 = self.v1.norm();
        if n1 == 0.0 || !n1.is_finite() {
            return Err(Error::InvalidFlag("v1 is zero".into()));
        }
        let q1 = self.v1 / c(n1);
        // Pick the column of V2 least parallel to q1.
        let mut best: Option<(f64, Vec4)> = None;
        let scale = self.v2.norm().max(f64::MIN_POSITIVE);
        for col in self.v2.column_iter() {
            let col = col.into_owned();
            let r = col - q1 * herm(&q1, &col);
            let rn = r.norm();
            if best.as_ref().is_none_or(|(b, _)| rn > *b) {
                best = Some((rn, r));
            }
        }
        let (rn, r) = best.expect("two columns");
        if rn < tol * scale {
            return Err(Error::InvalidFlag("V2 does not have rank 2 together with v1".into()));
        }
        let q2 = r / c(rn);
        Ok(FlagFrame { q1, q2 })
    }
}

struct Tester {
    tol: f64,
}

impl Tester {
    fn is_zero(&self, name: &str, x: f64) -> Result<bool> {
        let a = x.abs();
        if a < self.tol {
            Ok(true)
        } else if a >= NONZERO_FACTOR * self.tol {
            Ok(false)
        } else {
            Err(Error::Degenerate {
                quantities: vec![(name.to_string(), x)],
            })
        }
    }

    fn sign(&self, name: &str, x: f64) -> Result<i8> {
        Ok(match self.is_zero(name, x)? {
            true => 0,
            false if x > 0.0 => 1,
            false => -1,
        })
    }

    /// Number of zero singular values of a 2×2 block.
    fn nullity2(&self, name: &str, m: &nalgebra::Matrix2<C64>) -> Result<usize> {
        let sv = m.svd(false, false).singular_values;
        let mut n = 0;
        for (i, s) in sv.iter().enumerate() {
            if self.is_zero(&format!("{name}[{i}]"), *s)? {
                n += 1;
            }
        }
        Ok(n)
    }
}

fn upper_block(f: &FlagFrame) -> nalgebra::Matrix2<C64> {
    nalgebra::Matrix2::new(f.q1[0], f.q2[0], f.q1[1], f.q2[1])
}

fn lower_block(f: &FlagFrame) -> nalgebra::Matrix2<C64> {
    nalgebra::Matrix2::new(f.q1[2], f.q2[2], f.q1[3], f.q2[3])
}

/// Raw `K_C`-side data of a flag.
#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KcData {
    /// `|v1 component in U-|` for a unit `v1`; zero iff `V1 ⊂ U+`.
    pub v1_off_uplus: f64,
    /// Zero iff `V1 ⊂ U-`.
    pub v1_off_uminus: f64,
    /// `|ᵀv J τ(v)|` for unit `v ∈ V1`.
    pub tau_pairing: f64,
}

pub fn kc_data(f: &FlagFrame) -> KcData {
    let q = &f.q1;
    let lower = (q[2].norm_sqr() + q[3].norm_sqr()).sqrt();
    let upper = (q[0].norm_sqr() + q[1].norm_sqr()).sqrt();
    let tau = (c(2.0) * (q[0] * q[2] + q[1] * q[3])).norm();
    KcData {
        v1_off_uplus: lower,
        v1_off_uminus: upper,
        tau_pairing: tau,
    }
}

/// The `K_C`-orbit of a flag, by the eleven defining conditions.
pub fn classify_kc(flag: &Flag4, tol: f64) -> Result<OrbitLabel> {
    let f = flag.frame(tol)?;
    let t = Tester { tol };
    // dim(V2 ∩ U+) = nullity of the U- block and vice versa.
    let d_plus = t.nullity2("V2 lower block singular value", &lower_block(&f))?;
    let d_minus = t.nullity2("V2 upper block singular value", &upper_block(&f))?;
    let o = if d_plus == 2 {
        Orbit::S1
    } else if d_minus == 2 {
        Orbit::S2
    } else {
        let k = kc_data(&f);
        let in_plus = t.is_zero("|v1 in U-|", k.v1_off_uplus)?;
        let in_minus = t.is_zero("|v1 in U+|", k.v1_off_uminus)?;
        if in_plus {
            if d_minus == 1 {
                Orbit::S3
            } else {
                Orbit::S5
            }
        } else if in_minus {
            if d_plus == 1 {
                Orbit::S4
            } else {
                Orbit::S6
            }
        } else if d_plus == 1 && d_minus == 1 {
            Orbit::S7
        } else if d_plus == 1 {
            Orbit::S8
        } else if d_minus == 1 {
            Orbit::S9
        } else if t.is_zero("tJ tau(v1)", k.tau_pairing)? {
            Orbit::S10
        } else {
            Orbit::Op
        }
    };
    Ok(OrbitLabel::kc(o))
}

/// `(p, q, z)`: positive, negative and zero eigenvalue counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GramSignature {
    pub p: usize,
    pub q: usize,
    pub z: usize,
}

impl GramSignature {
    pub const fn new(p: usize, q: usize, z: usize) -> GramSignature {
        GramSignature { p, q, z }
    }
}

/// Eigenvalues (ascending) and unit eigenvectors of a 2×2 Hermitian matrix.
pub(crate) fn herm2_eigen(g: &nalgebra::Matrix2<C64>) -> ([f64; 2], [nalgebra::Vector2<C64>; 2]) {
    let a = g[(0, 0)].re;
    let d = g[(1, 1)].re;
    let b = g[(0, 1)];
    let mean = (a + d) / 2.0;
    let rad = (((a - d) / 2.0).powi(2) + b.norm_sqr()).sqrt();
    let vals = [mean - rad, mean + rad];
    let vec_for = |lambda: f64| {
        // Rows of (G - λ) annihilate the eigenvector; use the larger one.
        let r0 = (c(a - lambda), b);
        let r1 = (b.conj(), c(d - lambda));
        let (x, y) = if r0.0.norm_sqr() + r0.1.norm_sqr() >= r1.0.norm_sqr() + r1.1.norm_sqr() {
            r0
        } else {
            r1
        };
        let v = nalgebra::Vector2::new(-y, x);
        let n = v.norm();
        if n < 1e-300 {
            nalgebra::Vector2::new(c(1.0), c(0.0))
        } else {
            v / c(n)
        }
    };
    if rad < 1e-300 {
        return (
            vals,
            [
                nalgebra::Vector2::new(c(1.0), c(0.0)),
                nalgebra::Vector2::new(c(0.0), c(1.0)),
            ],
        );
    }
    (vals, [vec_for(vals[0]), vec_for(vals[1])])
}

/// Gram matrix of the Hermitian form on `V2` in the frame.
pub(crate) fn gram(f: &FlagFrame) -> nalgebra::Matrix2<C64> {
    let cols = f.columns();
    nalgebra::Matrix2::from_fn(|i, j| hermitian_form(cols[i], cols[j]))
}

/// `sqrt(1 - |⟨ᵀvJ, v*h⟩|²)` for unit `v`: zero iff `v^J = v^⊥`.
pub fn special_defect(v: &Vec4) -> f64 {
    let a = v.transpose() * j_matrix();
    let b = v.adjoint() * h_matrix();
    let a = a / C64::from(a.norm());
    let b = b / C64::from(b.norm());
    // Residual of `a` off the line of `b`; better conditioned than `1 - |⟨a,b⟩|²`.
    let ip: C64 = b.iter().zip(a.iter()).map(|(x, y)| x.conj() * y).sum();
    (a - b * ip).norm()
}

fn signature(t: &Tester, name: &str, vals: &[f64]) -> Result<GramSignature> {
    let mut s = GramSignature::new(0, 0, 0);
    for (i, v) in vals.iter().enumerate() {
        match t.sign(&format!("{name}[{i}]"), *v)? {
            1 => s.p += 1,
            -1 => s.q += 1,
            _ => s.z += 1,
        }
    }
    Ok(s)
}

/// Raw `G_R`-side data of a flag.
#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GrData {
    /// `(v1, v1)` for unit `v1`.
    pub v1_norm: f64,
    pub v1_special_defect: f64,
    pub gram_eigenvalues: [f64; 2],
}

pub fn gr_data(f: &FlagFrame) -> GrData {
    let (vals, _) = herm2_eigen(&gram(f));
    GrData {
        v1_norm: hermitian_form(&f.q1, &f.q1).re,
        v1_special_defect: special_defect(&f.q1),
        gram_eigenvalues: vals,
    }
}

/// The `G_R`-orbit of a flag, by the eleven defining conditions.
pub fn classify_gr(flag: &Flag4, tol: f64) -> Result<OrbitLabel> {
    let f = flag.frame(tol)?;
    let t = Tester { tol };
    let g = gram(&f);
    let (vals, vecs) = herm2_eigen(&g);
    let sig = signature(&t, "V2 Gram eigenvalue", &vals)?;
    let n1 = hermitian_form(&f.q1, &f.q1).re;
    let unclassified = |what: &str| Error::Unclassified(format!("{what}, V2 signature {sig:?}"));
    let o = match t.sign("(v1,v1)", n1)? {
        0 => {
            if t.is_zero("v1 special defect", special_defect(&f.q1))? {
                match (sig.p, sig.q, sig.z) {
                    (1, 0, 1) => Orbit::S8,
                    (0, 1, 1) => Orbit::S9,
                    (0, 0, 2) => Orbit::Op,
                    _ => return Err(unclassified("V1 special null")),
                }
            } else if sig.z == 2 {
                Orbit::S10
            } else {
                Orbit::S7
            }
        }
        s => {
            let (full, semi, orbits) = if s > 0 {
                ((2, 0, 0), (1, 0, 1), [Orbit::S1, Orbit::S3, Orbit::S5])
            } else {
                ((0, 2, 0), (0, 1, 1), [Orbit::S2, Orbit::S4, Orbit::S6])
            };
            let key = (sig.p, sig.q, sig.z);
            if key == full {
                orbits[0]
            } else if key == (1, 1, 0) {
                orbits[1]
            } else if key == semi {
                // The zero eigenvalue is the smaller one for (1,0,1), the larger for (0,1,1).
                let e = &vecs[if s > 0 { 0 } else { 1 }];
                let null: Vec4 = f.q1 * e[0] + f.q2 * e[1];
                if t.is_zero("V2 null vector special defect", special_defect(&null))? {
                    orbits[2]
                } else {
                    return Err(unclassified("V2 null line is regular"));
                }
            } else {
                return Err(unclassified("V1 definite"));
            }
        }
    };
    Ok(OrbitLabel::gr(o))
}

/// Which piece of `(G_R Q)^cl` an isotropic plane lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Stratum {
    /// `0`: `V - {0} ⊂ C+`, the open orbit `G_R Q`.
    Interior,
    /// `1`: the codimension-one stratum `G_R c_{β1} Q`.
    One,
    /// `2`: the closed stratum `G_R c_{β1} c_{β2} Q`.
    Two,
    Outside,
}

fn orthonormal_plane(v: &Matrix4x2<C64>, tol: f64) -> Result<FlagFrame> {
    Flag4 {
        v1: v.column(0).into_owned(),
        v2: *v,
    }
    .frame(tol)
}

fn stratum_with_sign(v: &Matrix4x2<C64>, tol: f64, sign: f64) -> Result<Stratum> {
    let f = orthonormal_plane(v, tol)?;
    let g = gram(&f) * c(sign);
    let (vals, _) = herm2_eigen(&g);
    let sig = signature(&Tester { tol }, "plane Gram eigenvalue", &vals)?;
    Ok(match (sig.p, sig.q, sig.z) {
        (2, 0, 0) => Stratum::Interior,
        (1, 0, 1) => Stratum::One,
        (0, 0, 2) => Stratum::Two,
        _ => Stratum::Outside,
    })
}

/// Stratum of a plane `V = gU+` under the U(2,2) form. Meaningful only for
/// planes constructed inside the closure of `G_R U+`.
pub fn stratum_of_plane(v: &Matrix4x2<C64>, tol: f64) -> Result<Stratum> {
    stratum_with_sign(v, tol, 1.0)
}

/// The same for `V = gU-` relative to the closure of `G_R U-`, i.e. with the
/// form negated.
pub fn mirror_stratum_of_plane(v: &Matrix4x2<C64>, tol: f64) -> Result<Stratum> {
    stratum_with_sign(v, tol, -1.0)
}

/// `gU+` and `gU-` as 4×2 matrices.
pub fn planes_of(g: &GroupElement4) -> (Matrix4x2<C64>, Matrix4x2<C64>) {
    let m = g.matrix();
    (m.fixed_columns::<2>(0).into_owned(), m.fixed_columns::<2>(2).into_owned())
}

type Pair = [f64; 2];

#[derive(Serialize, Deserialize)]
struct FlagWire {
    v1: [Pair; 4],
    #[serde(rename = "V2")]
    v2: [[Pair; 4]; 2],
}

fn to_pairs(v: &Vec4) -> [Pair; 4] {
    [0, 1, 2, 3].map(|i| [v[i].re, v[i].im])
}

fn from_pairs(p: &[Pair; 4]) -> Vec4 {
    Vec4::new(
        C64::new(p[0][0], p[0][1]),
        C64::new(p[1][0], p[1][1]),
        C64::new(p[2][0], p[2][1]),
        C64::new(p[3][0], p[3][1]),
    )
}

/// `{"v1": [[re, im] × 4], "V2": [[[re, im] × 4] × 2]}` with `V2` listed by
/// columns.
impl Serialize for Flag4 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let col = |j: usize| to_pairs(&self.v2.column(j).into_owned());
        FlagWire {
            v1: to_pairs(&self.v1),
            v2: [col(0), col(1)],
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Flag4 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Flag4, D::Error> {
        let w = FlagWire::deserialize(d)?;
        let all = w
            .v1
            .iter()
            .chain(w.v2.iter().flatten())
            .flatten()
            .all(|x| x.is_finite());
        if !all {
            return Err(D::Error::custom("non-finite flag entry"));
        }
        Ok(Flag4 {
            v1: from_pairs(&w.v1),
            v2: Matrix4x2::from_columns(&[from_pairs(&w.v2[0]), from_pairs(&w.v2[1])]),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sp2::matrix::{c_beta1, c_beta2, c_delta, w_beta1, w_beta2};

    fn kc(g: &GroupElement4) -> Orbit {
        classify_kc(&flag_of(g), DEFAULT_TOL).unwrap().orbit
    }

    fn gr(g: &GroupElement4) -> Orbit {
        classify_gr(&flag_of(g), DEFAULT_TOL).unwrap().orbit
    }

    #[test]
    fn classic_examples() {
        let e = GroupElement4::identity();
        assert_eq!((kc(&e), gr(&e)), (Orbit::S1, Orbit::S1));
        assert_eq!((kc(&c_delta()), gr(&c_delta())), (Orbit::S10, Orbit::S10));
        let top = c_beta1() * c_beta2();
        assert_eq!((kc(&top), gr(&top)), (Orbit::Op, Orbit::Op));
        assert_eq!(gr(&c_beta1()), Orbit::S8);
        let w = w_beta1() * w_beta2();
        assert_eq!((kc(&w), gr(&w)), (Orbit::S2, Orbit::S2));
    }

    #[test]
    fn flag_of_c_delta_first_column() {
        let f = flag_of(&c_delta());
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((f.v1 - Vec4::new(c(r), c(0.0), c(0.0), c(r))).norm() < 1e-15);
        assert!(special_defect(&f.v1) > 0.5);
        assert!(special_defect(&flag_of(&c_beta1()).v1) < 1e-12);
    }

    #[test]
    fn strata_examples() {
        let (up, _) = planes_of(&GroupElement4::identity());
        assert_eq!(stratum_of_plane(&up, DEFAULT_TOL).unwrap(), Stratum::Interior);
        let (p1, _) = planes_of(&c_beta1());
        assert_eq!(stratum_of_plane(&p1, DEFAULT_TOL).unwrap(), Stratum::One);
        let (p2, m2) = planes_of(&(c_beta1() * c_beta2()));
        assert_eq!(stratum_of_plane(&p2, DEFAULT_TOL).unwrap(), Stratum::Two);
        assert_eq!(mirror_stratum_of_plane(&m2, DEFAULT_TOL).unwrap(), Stratum::Two);
        let (_, um) = planes_of(&GroupElement4::identity());
        assert_eq!(stratum_of_plane(&um, DEFAULT_TOL).unwrap(), Stratum::Outside);
        assert_eq!(mirror_stratum_of_plane(&um, DEFAULT_TOL).unwrap(), Stratum::Interior);
    }

    #[test]
    fn degenerate_is_reported() {
        // A flag a hair away from S1 on the K_C side.
        let eps = 1e-7;
        let g = crate::sp2::matrix::t1(eps);
        match classify_kc(&flag_of(&g), DEFAULT_TOL) {
            Err(Error::Degenerate { quantities }) => assert!(!quantities.is_empty()),
            other => panic!("expected Degenerate, got {other:?}"),
        }
    }

    #[test]
    fn invalid_flags_rejected() {
        let mut f = flag_of(&GroupElement4::identity());
        f.v2.set_column(1, &Vec4::new(c(0.0), c(0.0), c(1.0), c(0.0)));
        assert!(matches!(f.frame(DEFAULT_TOL), Err(Error::InvalidFlag(_))));
        let mut f = flag_of(&GroupElement4::identity());
        f.v1 = Vec4::new(c(0.0), c(0.0), c(1.0), c(0.0));
        assert!(matches!(classify_kc(&f, DEFAULT_TOL), Err(Error::InvalidFlag(_))));
    }

    #[test]
    fn flag_json_round_trip() {
        let f = flag_of(&(c_delta() * w_beta2()));
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.starts_with("{\"v1\":[["));
        assert!(s.contains("\"V2\":[[["));
        let back: Flag4 = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
