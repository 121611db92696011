//! Real-amplitude kets on the local and product event spaces.
//!
//! A [`Ket2`] holds amplitudes on `|y>` (lamp on) and `|n>` (lamp off) of one
//! side. A [`Ket4`] holds amplitudes on the product basis in the order
//! `|y,y>, |y,n>, |n,y>, |n,n>`.

use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::IDENTITY_TOL;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Ket2(pub [f64; 2]);

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Ket4(pub [f64; 4]);

impl Ket2 {
    pub const ON: Ket2 = Ket2([1.0, 0.0]);
    pub const OFF: Ket2 = Ket2([0.0, 1.0]);

    pub const fn new(on: f64, off: f64) -> Self {
        Ket2([on, off])
    }

    pub fn components(&self) -> [f64; 2] {
        self.0
    }

    pub fn dot(&self, other: &Ket2) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.dot(self)
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= IDENTITY_TOL
    }

    pub fn scale(&self, s: f64) -> Ket2 {
        Ket2([s * self.0[0], s * self.0[1]])
    }
}

impl Ket4 {
    pub const fn new(yy: f64, yn: f64, ny: f64, nn: f64) -> Self {
        Ket4([yy, yn, ny, nn])
    }

    pub const fn zero() -> Self {
        Ket4([0.0; 4])
    }

    /// Basis vector `|i,k>` with `i, k ∈ {0, 1}` (0 = on, 1 = off).
    pub fn basis(left: usize, right: usize) -> Self {
        let mut c = [0.0; 4];
        c[2 * left + right] = 1.0;
        Ket4(c)
    }

    pub fn components(&self) -> [f64; 4] {
        self.0
    }

    /// Amplitude on `|i,k>`.
    pub fn amplitude(&self, left: usize, right: usize) -> f64 {
        self.0[2 * left + right]
    }

    pub fn dot(&self, other: &Ket4) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.dot(self)
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= IDENTITY_TOL
    }

    pub fn scale(&self, s: f64) -> Ket4 {
        Ket4(self.0.map(|c| s * c))
    }

    /// Largest componentwise absolute difference.
    pub fn max_abs_diff(&self, other: &Ket4) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Ket4, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }
}

impl Index<usize> for Ket2 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Index<usize> for Ket4 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for Ket4 {
    type Output = Ket4;
    fn add(self, rhs: Ket4) -> Ket4 {
        Ket4(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for Ket4 {
    type Output = Ket4;
    fn sub(self, rhs: Ket4) -> Ket4 {
        Ket4(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for Ket4 {
    type Output = Ket4;
    fn neg(self) -> Ket4 {
        self.scale(-1.0)
    }
}

impl Mul<Ket4> for f64 {
    type Output = Ket4;
    fn mul(self, rhs: Ket4) -> Ket4 {
        rhs.scale(self)
    }
}

impl Neg for Ket2 {
    type Output = Ket2;
    fn neg(self) -> Ket2 {
        self.scale(-1.0)
    }
}

/// Direct product `left ⊗ right`: `c_ik = left_i · right_k`.
pub fn tensor(left: &Ket2, right: &Ket2) -> Ket4 {
    Ket4([
        left[0] * right[0],
        left[0] * right[1],
        left[1] * right[0],
        left[1] * right[1],
    ])
}

/// Linear combination of product-space kets. No normalization is applied.
pub fn superpose<'a, I>(terms: I) -> Ket4
where
    I: IntoIterator<Item = (f64, &'a Ket4)>,
{
    terms
        .into_iter()
        .fold(Ket4::zero(), |acc, (coeff, state)| acc + state.scale(coeff))
}

/// `c11·c22 − c12·c21`; vanishes exactly for product states.
pub fn separability_defect(state: &Ket4) -> f64 {
    let [c11, c12, c21, c22] = state.0;
    c11 * c22 - c12 * c21
}

/// Splits a separable, normalized product-space ket into its two local factors.
///
/// Magnitudes come from the marginal sums of squared amplitudes. The first
/// nonzero component of the left factor is taken nonnegative; the right signs
/// follow from that row, and every other left sign is solved from its
/// largest-magnitude entry.
pub fn factorize(state: &Ket4, tol: f64) -> Result<(Ket2, Ket2)> {
    let norm_sqr = state.norm_sqr();
    if (norm_sqr - 1.0).abs() > tol.max(IDENTITY_TOL) {
        return Err(Error::NotNormalized { norm_sqr });
    }
    let defect = separability_defect(state);
    if defect.abs() > tol {
        return Err(Error::NotSeparable { defect, tol });
    }

    let c = |i: usize, k: usize| state.amplitude(i, k);
    let mut left: [f64; 2] = std::array::from_fn(|i| (c(i, 0).powi(2) + c(i, 1).powi(2)).sqrt());
    let mut right: [f64; 2] = std::array::from_fn(|k| (c(0, k).powi(2) + c(1, k).powi(2)).sqrt());

    let Some(pivot) = (0..2).find(|&i| left[i] > tol) else {
        return Err(Error::NotNormalized { norm_sqr });
    };
    for (k, r) in right.iter_mut().enumerate() {
        if c(pivot, k) < 0.0 {
            *r = -*r;
        }
    }
    for (i, l) in left.iter_mut().enumerate() {
        if i == pivot {
            continue;
        }
        let k = if c(i, 0).abs() >= c(i, 1).abs() { 0 } else { 1 };
        if c(i, k) * right[k] < 0.0 {
            *l = -*l;
        }
    }

    let (left, right) = (Ket2(left), Ket2(right));
    if tensor(&left, &right).approx_eq(state, tol) {
        Ok((left, right))
    } else {
        Err(Error::SignAssignmentFailure { tol })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_8};

    const TOL: f64 = 1e-12;

    #[test]
    fn tensor_of_basis_vectors() {
        assert_eq!(tensor(&Ket2::ON, &Ket2::OFF), Ket4::new(0.0, 1.0, 0.0, 0.0));
        let plus = Ket2::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2);
        assert!(tensor(&plus, &Ket2::ON)
            .approx_eq(&Ket4::new(FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2, 0.0), TOL));
    }

    #[test]
    fn tensor_of_rotated_kets() {
        let u = Ket2::new(FRAC_PI_8.cos(), FRAC_PI_8.sin());
        // cos²(π/8), cos·sin, sin·cos, sin²(π/8)
        let expected = Ket4::new(
            0.853_553_390_593_273_8,
            0.353_553_390_593_273_7,
            0.353_553_390_593_273_7,
            0.146_446_609_406_726_2,
        );
        assert!(tensor(&u, &u).approx_eq(&expected, TOL));
    }

    #[test]
    fn superpose_basics() {
        let a = Ket4::basis(0, 0);
        let b = Ket4::basis(1, 1);
        assert_eq!(
            superpose([(1.0, &a), (1.0, &b)]),
            Ket4::new(1.0, 0.0, 0.0, 1.0)
        );
        let any = Ket4::new(0.3, -0.2, 0.9, 0.1);
        assert_eq!(superpose([(0.0, &any)]), Ket4::zero());
    }

    #[test]
    fn defect_examples() {
        assert_eq!(separability_defect(&Ket4::new(0.0, 1.0, 0.0, 0.0)), 0.0);
        assert_eq!(separability_defect(&Ket4::new(0.5, 0.5, 0.5, 0.5)), 0.0);
        assert!((separability_defect(&Ket4::new(0.5, 0.5, -0.5, 0.5)) - 0.5).abs() < TOL);
    }

    #[test]
    fn factorize_examples() {
        let (l, r) = factorize(&Ket4::new(0.0, 1.0, 0.0, 0.0), TOL).unwrap();
        assert_eq!((l, r), (Ket2::ON, Ket2::OFF));

        let (l, r) = factorize(&Ket4::new(0.5, 0.5, 0.5, 0.5), TOL).unwrap();
        let h = Ket2::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2);
        assert!((l[0] - h[0]).abs() < TOL && (l[1] - h[1]).abs() < TOL);
        assert!((r[0] - h[0]).abs() < TOL && (r[1] - h[1]).abs() < TOL);

        match factorize(&Ket4::new(0.5, 0.5, -0.5, 0.5), TOL) {
            Err(Error::NotSeparable { defect, .. }) => assert!((defect - 0.5).abs() < TOL),
            other => panic!("expected NotSeparable, got {other:?}"),
        }
    }

    #[test]
    fn factorize_reports_sign_failure_under_loose_tolerance() {
        // defect 0.5 passes a tolerance of 0.6, but no product reproduces the signs
        let err = factorize(&Ket4::new(0.5, 0.5, -0.5, 0.5), 0.6).unwrap_err();
        assert!(matches!(err, Error::SignAssignmentFailure { .. }));
    }

    #[test]
    fn factorize_rejects_zero_and_unnormalized() {
        assert!(matches!(
            factorize(&Ket4::zero(), TOL),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            factorize(&Ket4::new(0.0, 2.0, 0.0, 0.0), TOL),
            Err(Error::NotNormalized { .. })
        ));
    }

    fn unit_ket2() -> impl Strategy<Value = Ket2> {
        (0.0..std::f64::consts::TAU).prop_map(|t| Ket2::new(t.cos(), t.sin()))
    }

    fn ket2() -> impl Strategy<Value = Ket2> {
        (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(a, b)| Ket2::new(a, b))
    }

    proptest! {
        #[test]
        fn tensor_is_bilinear(s in -5.0..5.0f64, u in ket2(), v in ket2()) {
            let lhs = tensor(&u.scale(s), &v);
            let rhs = tensor(&u, &v).scale(s);
            prop_assert!(lhs.approx_eq(&rhs, 1e-10));
            let rhs2 = tensor(&u, &v.scale(s));
            prop_assert!(lhs.approx_eq(&rhs2, 1e-10));
        }

        #[test]
        fn tensor_norm_is_product(u in ket2(), v in ket2()) {
            let n = tensor(&u, &v).norm_sqr();
            prop_assert!((n - u.norm_sqr() * v.norm_sqr()).abs() <= 1e-9 * (1.0 + n));
        }

        #[test]
        fn products_have_zero_defect(u in unit_ket2(), v in unit_ket2()) {
            prop_assert!(separability_defect(&tensor(&u, &v)).abs() <= TOL);
        }

        #[test]
        fn orthogonal_norms_add(t in 0.0..std::f64::consts::TAU, s in 0.1..3.0f64) {
            // a and b are orthogonal by construction
            let a = Ket4::new(t.cos(), t.sin(), 0.0, 0.0).scale(s);
            let b = Ket4::new(-t.sin(), t.cos(), 0.5, -0.25);
            prop_assert!(a.dot(&b).abs() <= TOL);
            prop_assert!(((a + b).norm_sqr() - a.norm_sqr() - b.norm_sqr()).abs() <= TOL);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn factorize_inverts_tensor(u in unit_ket2(), v in unit_ket2()) {
            let (l, r) = factorize(&tensor(&u, &v), TOL).unwrap();
            let same = (l[0] - u[0]).abs() <= 1e-9 && (l[1] - u[1]).abs() <= 1e-9
                && (r[0] - v[0]).abs() <= 1e-9 && (r[1] - v[1]).abs() <= 1e-9;
            let flipped = (l[0] + u[0]).abs() <= 1e-9 && (l[1] + u[1]).abs() <= 1e-9
                && (r[0] + v[0]).abs() <= 1e-9 && (r[1] + v[1]).abs() <= 1e-9;
            prop_assert!(same || flipped, "u={u:?} v={v:?} got l={l:?} r={r:?}");
        }
    }
}
