// Copyright 2026 The mcdec Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! 2×2 complex linear algebra for single-qubit gates.
//!
//! Everything here is closed form: gate matrices, the determinant-based
//! global phase, projection onto SU(2) and the eigendecomposition of a
//! special unitary as `V · RZ(θ) · V†`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::ops::Mul;

pub use num_complex::Complex64 as Complex;
use thiserror::Error;

/// Tolerance used when a matrix is admitted into a [`GateKind::U2`].
pub const CONSTRUCTION_TOL: f64 = 1e-12;
/// Tolerance on unitarity checks of analysis inputs (phase, eigen-solve).
pub const RECONSTRUCTION_TOL: f64 = 1e-10;

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);
const I: Complex = Complex::new(0.0, 1.0);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QmatError {
    #[error("matrix entry {index} is not finite")]
    NonFinite { index: usize },
    #[error("matrix is not unitary: max |MM† - I| = {deviation:e}")]
    NotUnitary { deviation: f64 },
    #[error("matrix is not special unitary: |det - 1| = {deviation:e}")]
    NotSpecialUnitary { deviation: f64 },
}

/// Row-major 2×2 complex matrix.
#[derive(Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub m: [Complex; 4],
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.m[0], self.m[1], self.m[2], self.m[3]
        )
    }
}

impl Mat2 {
    pub const fn new(m00: Complex, m01: Complex, m10: Complex, m11: Complex) -> Self {
        Mat2 {
            m: [m00, m01, m10, m11],
        }
    }

    /// Builds a matrix from row-major entries, rejecting NaN and infinities.
    pub fn try_new(entries: [Complex; 4]) -> Result<Self, QmatError> {
        for (index, z) in entries.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(QmatError::NonFinite { index });
            }
        }
        Ok(Mat2 { m: entries })
    }

    pub const fn identity() -> Self {
        Mat2::new(ONE, ZERO, ZERO, ONE)
    }

    pub const fn diag(d0: Complex, d1: Complex) -> Self {
        Mat2::new(d0, ZERO, ZERO, d1)
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.m[2 * row + col]
    }

    pub fn dagger(&self) -> Self {
        let [a, b, c, d] = self.m;
        Mat2::new(a.conj(), c.conj(), b.conj(), d.conj())
    }

    pub fn det(&self) -> Complex {
        let [a, b, c, d] = self.m;
        a * d - b * c
    }

    pub fn scale(&self, s: Complex) -> Self {
        Mat2 {
            m: self.m.map(|z| z * s),
        }
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        self.m
            .iter()
            .zip(other.m.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest elementwise modulus of `M·M† - I`.
    pub fn unitarity_deviation(&self) -> f64 {
        (*self * self.dagger()).max_abs_diff(&Mat2::identity())
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation() <= tol
    }

    pub fn is_special_unitary(&self, tol: f64) -> bool {
        self.is_unitary(tol) && (self.det() - ONE).norm() <= tol
    }

    pub fn is_diagonal(&self) -> bool {
        self.m[1] == ZERO && self.m[2] == ZERO
    }

    pub fn approx_eq(&self, other: &Mat2, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    pub fn x() -> Self {
        Mat2::new(ZERO, ONE, ONE, ZERO)
    }

    pub fn y() -> Self {
        Mat2::new(ZERO, -I, I, ZERO)
    }

    pub fn z() -> Self {
        Mat2::diag(ONE, -ONE)
    }

    pub fn h() -> Self {
        let s = Complex::new(FRAC_1_SQRT_2, 0.0);
        Mat2::new(s, s, s, -s)
    }

    pub fn phase(theta: f64) -> Self {
        Mat2::diag(ONE, Complex::cis(theta))
    }

    pub fn rx(theta: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        let c = Complex::new(c, 0.0);
        let ms = Complex::new(0.0, -s);
        Mat2::new(c, ms, ms, c)
    }

    pub fn ry(theta: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        Mat2::new(
            Complex::new(c, 0.0),
            Complex::new(-s, 0.0),
            Complex::new(s, 0.0),
            Complex::new(c, 0.0),
        )
    }

    pub fn rz(theta: f64) -> Self {
        Mat2::diag(Complex::cis(-theta / 2.0), Complex::cis(theta / 2.0))
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let [a, b, c, d] = self.m;
        let [e, f, g, h] = rhs.m;
        Mat2::new(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
    }
}

/// The single-qubit gate alphabet. Angles are in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateKind {
    X,
    Y,
    Z,
    H,
    P(f64),
    RX(f64),
    RY(f64),
    RZ(f64),
    U2(Mat2),
}

impl GateKind {
    /// Wraps an arbitrary matrix, which must be unitary within [`CONSTRUCTION_TOL`].
    pub fn u2(m: Mat2) -> Result<Self, QmatError> {
        let m = Mat2::try_new(m.m)?;
        let deviation = m.unitarity_deviation();
        if deviation > CONSTRUCTION_TOL {
            return Err(QmatError::NotUnitary { deviation });
        }
        Ok(GateKind::U2(m))
    }

    pub fn matrix(&self) -> Mat2 {
        gate_matrix(self)
    }

    pub fn dagger(&self) -> Self {
        dagger_gate(self)
    }

    /// Lower-case mnemonic, shared by the QASM and JSON writers.
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::H => "h",
            GateKind::P(_) => "p",
            GateKind::RX(_) => "rx",
            GateKind::RY(_) => "ry",
            GateKind::RZ(_) => "rz",
            GateKind::U2(_) => "u2",
        }
    }

    pub fn theta(&self) -> Option<f64> {
        match *self {
            GateKind::P(t) | GateKind::RX(t) | GateKind::RY(t) | GateKind::RZ(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_rotation(&self) -> bool {
        matches!(self, GateKind::RX(_) | GateKind::RY(_) | GateKind::RZ(_))
    }
}

pub fn gate_matrix(g: &GateKind) -> Mat2 {
    match *g {
        GateKind::X => Mat2::x(),
        GateKind::Y => Mat2::y(),
        GateKind::Z => Mat2::z(),
        GateKind::H => Mat2::h(),
        GateKind::P(t) => Mat2::phase(t),
        GateKind::RX(t) => Mat2::rx(t),
        GateKind::RY(t) => Mat2::ry(t),
        GateKind::RZ(t) => Mat2::rz(t),
        GateKind::U2(m) => m,
    }
}

pub fn dagger_gate(g: &GateKind) -> GateKind {
    match *g {
        GateKind::X | GateKind::Y | GateKind::Z | GateKind::H => *g,
        GateKind::P(t) => GateKind::P(-t),
        GateKind::RX(t) => GateKind::RX(-t),
        GateKind::RY(t) => GateKind::RY(-t),
        GateKind::RZ(t) => GateKind::RZ(-t),
        GateKind::U2(m) => GateKind::U2(m.dagger()),
    }
}

fn require_unitary(m: &Mat2) -> Result<(), QmatError> {
    Mat2::try_new(m.m)?;
    let deviation = m.unitarity_deviation();
    if deviation > RECONSTRUCTION_TOL {
        return Err(QmatError::NotUnitary { deviation });
    }
    Ok(())
}

/// Returns φ ∈ (−π/2, π/2] with `e^{−iφ}·m` special unitary.
pub fn global_phase_of(m: &Mat2) -> Result<f64, QmatError> {
    require_unitary(m)?;
    let det = m.det();
    let mut big_phi = det.im.atan2(det.re);
    // atan2(-0.0, -1.0) = -π; keep the branch half-open at the bottom.
    if big_phi <= -PI {
        big_phi = PI;
    }
    Ok(big_phi / 2.0)
}

/// Splits a unitary into `(Ū, φ)` with `m = e^{iφ}·Ū` and `det Ū = 1`.
pub fn su2_part(m: &Mat2) -> Result<(Mat2, f64), QmatError> {
    let phi = global_phase_of(m)?;
    Ok((m.scale(Complex::cis(-phi)), phi))
}

/// `input = v · RZ(d_theta) · v†`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenDecomp {
    pub v: Mat2,
    pub d_theta: f64,
}

impl EigenDecomp {
    pub fn reconstruct(&self) -> Mat2 {
        self.v * Mat2::rz(self.d_theta) * self.v.dagger()
    }

    /// True when no basis change is needed.
    pub fn is_trivial_basis(&self) -> bool {
        self.v == Mat2::identity()
    }
}

/// Rotates `v` so its first component with modulus above `1e-12` is real positive.
fn fix_phase(v: [Complex; 2]) -> [Complex; 2] {
    let pivot = if v[0].norm() > 1e-12 { v[0] } else { v[1] };
    let rot = pivot.conj() / pivot.norm();
    [v[0] * rot, v[1] * rot]
}

/// Closed-form eigendecomposition of a special unitary.
///
/// Column 0 of `v` holds the eigenvector of `e^{−i·d_theta/2}`. Diagonal
/// inputs short-circuit to `v = I`.
pub fn eig_su2(m: &Mat2) -> Result<EigenDecomp, QmatError> {
    require_unitary(m)?;
    let det_dev = (m.det() - ONE).norm();
    if det_dev > RECONSTRUCTION_TOL {
        return Err(QmatError::NotSpecialUnitary { deviation: det_dev });
    }

    if m.is_diagonal() {
        return Ok(EigenDecomp {
            v: Mat2::identity(),
            d_theta: 2.0 * m.m[3].arg(),
        });
    }

    // m ≈ [[a, −b*], [b, a*]] with eigenvalues e^{∓iα}, cos α = Re a.
    let a = m.m[0];
    let b = m.m[2];
    let sin_alpha = (a.im * a.im + b.norm_sqr()).sqrt();
    let alpha = sin_alpha.atan2(a.re);
    let lambda0 = Complex::new(a.re, -sin_alpha);

    // Null vector of (m − λ0·I): either (m01, λ0 − m00) or (λ0 − m11, m10).
    // The first is well conditioned when Im a ≥ 0, the second otherwise.
    let raw = if a.im >= 0.0 {
        [m.m[1], lambda0 - m.m[0]]
    } else {
        [lambda0 - m.m[3], m.m[2]]
    };
    let norm = (raw[0].norm_sqr() + raw[1].norm_sqr()).sqrt();
    let v0 = fix_phase([raw[0] / norm, raw[1] / norm]);
    let v1 = fix_phase([-v0[1].conj(), v0[0].conj()]);

    Ok(EigenDecomp {
        v: Mat2::new(v0[0], v1[0], v0[1], v1[1]),
        d_theta: 2.0 * alpha,
    })
}

/// Principal square root of a unitary: `e^{iφ/2} · V · RZ(d/2) · V†`.
pub fn sqrt_unitary(m: &Mat2) -> Result<Mat2, QmatError> {
    let (u_bar, phi) = su2_part(m)?;
    let eig = eig_su2(&u_bar)?;
    Ok((eig.v * Mat2::rz(eig.d_theta / 2.0) * eig.v.dagger()).scale(Complex::cis(phi / 2.0)))
}
