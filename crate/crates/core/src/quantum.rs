//! The quantum Bell-box state and its closed-form event probabilities.
//!
//! The same state is produced three ways:
//!
//! 1. directly from the measured amplitudes ([`qbb_state`]),
//! 2. as the superposition of the two non-entangled emission branches, each a
//!    product of locally rotated kets ([`branch_state`]),
//! 3. as a 4×2 change of basis applied to the primary source amplitudes
//!    ([`transform_primary`]).

use std::f64::consts::FRAC_1_SQRT_2;

use crate::bell::EventProbabilities;
use crate::error::{Error, Result};
use crate::statevec::{superpose, tensor, Ket2, Ket4};

/// Polarizer setting in radians.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);

    /// Panics on NaN or infinity; use [`Angle::try_new`] for untrusted input.
    pub fn new(radians: f64) -> Self {
        Self::try_new(radians).expect("angle must be finite")
    }

    pub fn try_new(radians: f64) -> Result<Self> {
        if radians.is_finite() {
            Ok(Angle(radians))
        } else {
            Err(Error::NonFiniteAngle(radians))
        }
    }

    /// `numerator·π / denominator`.
    pub fn pi_fraction(numerator: i64, denominator: u64) -> Self {
        Angle::new(numerator as f64 * std::f64::consts::PI / denominator as f64)
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn sin(self) -> f64 {
        self.0.sin()
    }

    pub fn cos(self) -> f64 {
        self.0.cos()
    }
}

impl From<Angle> for f64 {
    fn from(a: Angle) -> f64 {
        a.0
    }
}

impl std::ops::Sub for Angle {
    type Output = Angle;
    fn sub(self, rhs: Angle) -> Angle {
        Angle(self.0 - rhs.0)
    }
}

impl std::ops::Add for Angle {
    type Output = Angle;
    fn add(self, rhs: Angle) -> Angle {
        Angle(self.0 + rhs.0)
    }
}

/// Local T-matrix of a polarizer: the plane rotation `((cos, −sin), (sin, cos))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationMatrix(pub [[f64; 2]; 2]);

impl RotationMatrix {
    pub fn apply(&self, v: &Ket2) -> Ket2 {
        let m = &self.0;
        Ket2::new(
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        )
    }

    pub fn transpose(&self) -> RotationMatrix {
        let m = &self.0;
        RotationMatrix([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    pub fn mul(&self, other: &RotationMatrix) -> RotationMatrix {
        let (a, b) = (&self.0, &other.0);
        RotationMatrix(std::array::from_fn(|i| {
            std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j])
        }))
    }

    pub fn determinant(&self) -> f64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }
}

/// Observation point of a local state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// Photon polarization emitted by the primary source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarization {
    H,
    V,
}

/// Which photon goes where: `HV` sends h to side A and v to side B.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchLabel {
    HV,
    VH,
}

/// Relative sign of the `|n,y>` amplitude against `|y,n>`.
///
/// `Phenomenological` takes positive square roots of the measured
/// probabilities (`c21 = +c12`); `Interaction` is what the local-rotation and
/// basis-change constructions produce (`c21 = −c12`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignConvention {
    Phenomenological,
    #[default]
    Interaction,
}

pub fn rotation(theta: Angle) -> RotationMatrix {
    let (s, c) = theta.radians().sin_cos();
    RotationMatrix([[c, -s], [s, c]])
}

/// Local ket after the polarizer on `side` acts on a photon of the given
/// polarization. Side A carries the primary-source amplitude (`+1/√2` for h,
/// `−1/√2` for v); side B is unit-norm.
pub fn local_state(side: Side, polarization: Polarization, theta: Angle) -> Ket2 {
    let incoming = match polarization {
        Polarization::H => Ket2::ON,
        Polarization::V => Ket2::OFF,
    };
    let rotated = rotation(theta).apply(&incoming);
    match (side, polarization) {
        (Side::A, Polarization::H) => rotated.scale(FRAC_1_SQRT_2),
        (Side::A, Polarization::V) => rotated.scale(-FRAC_1_SQRT_2),
        (Side::B, _) => rotated,
    }
}

/// Product state of one emission branch after both local interactions.
pub fn branch_state(branch: BranchLabel, alpha: Angle, beta: Angle) -> Ket4 {
    let (left, right) = match branch {
        BranchLabel::HV => (Polarization::H, Polarization::V),
        BranchLabel::VH => (Polarization::V, Polarization::H),
    };
    tensor(
        &local_state(Side::A, left, alpha),
        &local_state(Side::B, right, beta),
    )
}

/// Quantum Bell-box state from its closed-form amplitudes.
pub fn qbb_state(alpha: Angle, beta: Angle, convention: SignConvention) -> Ket4 {
    let (s, c) = (alpha - beta).radians().sin_cos();
    let diag = FRAC_1_SQRT_2 * s;
    let off = FRAC_1_SQRT_2 * c;
    let ny = match convention {
        SignConvention::Phenomenological => off,
        SignConvention::Interaction => -off,
    };
    Ket4::new(diag, off, ny, diag)
}

/// Quantum Bell-box state as the superposition of the two branch states.
pub fn superposed_state(alpha: Angle, beta: Angle) -> Ket4 {
    let hv = branch_state(BranchLabel::HV, alpha, beta);
    let vh = branch_state(BranchLabel::VH, alpha, beta);
    superpose([(1.0, &hv), (1.0, &vh)])
}

/// `w(y,y) = w(n,n) = ½ sin²(α−β)`, `w(y,n) = w(n,y) = ½ cos²(α−β)`.
pub fn quantum_probabilities(alpha: Angle, beta: Angle) -> EventProbabilities {
    let (s, c) = (alpha - beta).radians().sin_cos();
    let same = 0.5 * s * s;
    let diff = 0.5 * c * c;
    EventProbabilities::from_raw([same, diff, diff, same])
}

/// 4×2 change-of-basis matrix; rows ordered `(yy, yn, ny, nn)`, columns act on
/// the primary amplitudes of `|y,n>` and `|n,y>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisTransform(pub [[f64; 2]; 4]);

impl BasisTransform {
    pub fn column(&self, j: usize) -> Ket4 {
        Ket4(std::array::from_fn(|i| self.0[i][j]))
    }

    pub fn apply(&self, primary: [f64; 2]) -> Ket4 {
        Ket4(std::array::from_fn(|i| {
            self.0[i][0] * primary[0] + self.0[i][1] * primary[1]
        }))
    }

    /// `Tᵀ·T`, which equals the 2×2 identity for every setting.
    pub fn gram(&self) -> [[f64; 2]; 2] {
        std::array::from_fn(|a| {
            std::array::from_fn(|b| self.0.iter().map(|row| row[a] * row[b]).sum())
        })
    }
}

pub fn basis_transform_matrix(alpha: Angle, beta: Angle) -> BasisTransform {
    let (sa, ca) = alpha.radians().sin_cos();
    let (sb, cb) = beta.radians().sin_cos();
    BasisTransform([
        [-ca * sb, -sa * cb],
        [ca * cb, -sa * sb],
        [-sa * sb, ca * cb],
        [sa * cb, ca * sb],
    ])
}

/// Primary source amplitudes on `|y,n>` and `|n,y>`.
pub const PRIMARY_AMPLITUDES: [f64; 2] = [FRAC_1_SQRT_2, -FRAC_1_SQRT_2];

/// Applies the change of basis to the primary two-photon state.
pub fn transform_primary(alpha: Angle, beta: Angle) -> Ket4 {
    basis_transform_matrix(alpha, beta).apply(PRIMARY_AMPLITUDES)
}
