//! Parity pseudospin operators on a single bosonic mode and the CHSH Bell
//! operator built from them.
//!
//! Each mode splits into two-level blocks `{|2k>, |2k+1>}`. On a block,
//! `S_z = -(-1)^n` is `+1` on the odd level and `-1` on the even level,
//! `S_+ = |2k+1><2k|` and `S_- = |2k><2k+1|`. The operators act directly on
//! [`TwoModeState`] values, so no Fock-space truncation is involved.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{inner, Mode, TwoModeState};

/// Tolerance on `|<s|s> - 1|` for operations that require a normalized state.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Unit vector `(sin t cos p, sin t sin p, cos t)` on the measurement sphere.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub theta: f64,
    #[serde(default)]
    pub phi: f64,
}

impl Axis {
    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    /// Axis in the x-z plane (`phi = 0`).
    pub fn polar(theta: f64) -> Self {
        Self { theta, phi: 0.0 }
    }

    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// Inverse of [`Axis::unit_vector`] for a nonzero vector.
    pub fn from_vector(v: [f64; 3]) -> Self {
        let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if r == 0.0 {
            return Self::default();
        }
        Self {
            theta: (v[2] / r).clamp(-1.0, 1.0).acos(),
            phi: v[1].atan2(v[0]),
        }
    }
}

/// The four CHSH measurement directions: `a`, `a'` on mode 1 and `b`, `b'` on mode 2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BellAngles {
    pub a: Axis,
    #[serde(rename = "a_p")]
    pub a_prime: Axis,
    pub b: Axis,
    #[serde(rename = "b_p")]
    pub b_prime: Axis,
}

impl BellAngles {
    pub fn polar(theta_a: f64, theta_a_prime: f64, theta_b: f64, theta_b_prime: f64) -> Self {
        Self {
            a: Axis::polar(theta_a),
            a_prime: Axis::polar(theta_a_prime),
            b: Axis::polar(theta_b),
            b_prime: Axis::polar(theta_b_prime),
        }
    }

    /// One-parameter family `theta_a = 0`, `theta_a' = pi/2`, `theta_b' = -theta_b`.
    pub fn slice(theta_b: f64) -> Self {
        Self::polar(0.0, std::f64::consts::FRAC_PI_2, theta_b, -theta_b)
    }
}

#[inline]
fn parity_sign(n: u32) -> f64 {
    if n % 2 == 1 {
        1.0
    } else {
        -1.0
    }
}

/// `S_z` on `mode`: `+1` on odd photon numbers, `-1` on even ones.
pub fn apply_sz(s: &TwoModeState, mode: Mode) -> TwoModeState {
    s.map_kets(|k| Some((k, Complex64::new(parity_sign(mode.count(k)), 0.0))))
}

/// `S_-`: `|2k+1> -> |2k>`, even levels annihilated. No bosonic `sqrt(n)` factors.
pub fn apply_sminus(s: &TwoModeState, mode: Mode) -> TwoModeState {
    s.map_kets(|k| {
        let n = mode.count(k);
        (n % 2 == 1).then(|| (mode.with_count(k, n - 1), Complex64::new(1.0, 0.0)))
    })
}

/// `S_+`: `|2k> -> |2k+1>`, odd levels annihilated.
pub fn apply_splus(s: &TwoModeState, mode: Mode) -> TwoModeState {
    s.map_kets(|k| {
        let n = mode.count(k);
        (n % 2 == 0).then(|| (mode.with_count(k, n + 1), Complex64::new(1.0, 0.0)))
    })
}

/// `a . S = cos(t) S_z + sin(t) (e^{ip} S_- + e^{-ip} S_+)` on `mode`.
pub fn apply_axis_spin(s: &TwoModeState, mode: Mode, ax: Axis) -> TwoModeState {
    let (st, ct) = ax.theta.sin_cos();
    let lower = Complex64::from_polar(st, ax.phi);
    let raise = lower.conj();
    TwoModeState::from_terms(s.iter().flat_map(|(&k, &amp)| {
        let n = mode.count(k);
        let (diag, flip) = if n % 2 == 1 {
            (ct, (mode.with_count(k, n - 1), lower))
        } else {
            (-ct, (mode.with_count(k, n + 1), raise))
        };
        [(k, amp * diag), (flip.0, amp * flip.1)]
    }))
}

/// One of the three spin components on a mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpinComponent {
    X,
    Y,
    Z,
}

impl SpinComponent {
    pub const ALL: [SpinComponent; 3] = [SpinComponent::X, SpinComponent::Y, SpinComponent::Z];
}

/// `S_x = S_+ + S_-`, `S_y = i(S_- - S_+)`, `S_z` on `mode`.
pub fn apply_component(s: &TwoModeState, mode: Mode, c: SpinComponent) -> TwoModeState {
    match c {
        SpinComponent::Z => apply_sz(s, mode),
        SpinComponent::X => &apply_splus(s, mode) + &apply_sminus(s, mode),
        SpinComponent::Y => {
            let i = Complex64::new(0.0, 1.0);
            &(&apply_sminus(s, mode) * i) + &(&apply_splus(s, mode) * -i)
        }
    }
}

fn require_normalized(s: &TwoModeState) -> Result<()> {
    let n = inner(s, s).re;
    if (n - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::NotNormalized(n));
    }
    Ok(())
}

/// `<bra| (a.S)_1 (b.S)_2 |ket>` without normalization checks.
pub fn matrix_element(bra: &TwoModeState, ket: &TwoModeState, a: Axis, b: Axis) -> Complex64 {
    let v = apply_axis_spin(&apply_axis_spin(ket, Mode::Second, b), Mode::First, a);
    inner(bra, &v)
}

/// Correlation `E(a, b) = <s| (a.S)_1 (b.S)_2 |s>`.
pub fn correlation(s: &TwoModeState, a: Axis, b: Axis) -> Result<f64> {
    require_normalized(s)?;
    let z = matrix_element(s, s, a, b);
    debug_assert!(z.im.abs() < 1e-12, "correlation has imaginary part {}", z.im);
    Ok(z.re)
}

/// CHSH value `E(a,b) + E(a,b') + E(a',b) - E(a',b')`.
pub fn bell_expectation(s: &TwoModeState, angles: &BellAngles) -> Result<f64> {
    require_normalized(s)?;
    let e = |a, b| {
        let z = matrix_element(s, s, a, b);
        debug_assert!(z.im.abs() < 1e-12, "correlation has imaginary part {}", z.im);
        z.re
    };
    Ok(e(angles.a, angles.b) + e(angles.a, angles.b_prime) + e(angles.a_prime, angles.b)
        - e(angles.a_prime, angles.b_prime))
}

/// Real 3x3 matrix `T_ij = <s| S_i (x) S_j |s>` over the x, y, z spin
/// components. `E(a, b) = a^T T b` for every pair of axes, so a single
/// tensor evaluates any CHSH configuration in constant time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrelationTensor(pub [[f64; 3]; 3]);

impl CorrelationTensor {
    pub fn new(s: &TwoModeState) -> Result<Self> {
        require_normalized(s)?;
        let mut t = [[0.0; 3]; 3];
        for (j, &cj) in SpinComponent::ALL.iter().enumerate() {
            let right = apply_component(s, Mode::Second, cj);
            for (i, &ci) in SpinComponent::ALL.iter().enumerate() {
                let v = apply_component(&right, Mode::First, ci);
                t[i][j] = inner(s, &v).re;
            }
        }
        Ok(Self(t))
    }

    /// `T^T a`.
    #[inline]
    pub fn left(&self, a: [f64; 3]) -> [f64; 3] {
        let t = &self.0;
        [
            a[0] * t[0][0] + a[1] * t[1][0] + a[2] * t[2][0],
            a[0] * t[0][1] + a[1] * t[1][1] + a[2] * t[2][1],
            a[0] * t[0][2] + a[1] * t[1][2] + a[2] * t[2][2],
        ]
    }

    pub fn correlation(&self, a: Axis, b: Axis) -> f64 {
        dot(self.left(a.unit_vector()), b.unit_vector())
    }

    pub fn bell(&self, angles: &BellAngles) -> f64 {
        let a = angles.a.unit_vector();
        let ap = angles.a_prime.unit_vector();
        let b = angles.b.unit_vector();
        let bp = angles.b_prime.unit_vector();
        let u = self.left(add(a, ap));
        let v = self.left(sub(a, ap));
        dot(u, b) + dot(v, bp)
    }
}

#[inline]
pub(crate) fn dot(x: [f64; 3], y: [f64; 3]) -> f64 {
    x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
}

#[inline]
pub(crate) fn add(x: [f64; 3], y: [f64; 3]) -> [f64; 3] {
    [x[0] + y[0], x[1] + y[1], x[2] + y[2]]
}

#[inline]
pub(crate) fn sub(x: [f64; 3], y: [f64; 3]) -> [f64; 3] {
    [x[0] - y[0], x[1] - y[1], x[2] - y[2]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::normalize;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, SQRT_2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pair() -> TwoModeState {
        TwoModeState::from_terms([((1, 0), c(FRAC_1_SQRT_2, 0.0)), ((0, 1), c(FRAC_1_SQRT_2, 0.0))])
    }

    fn sample_state() -> TwoModeState {
        normalize(&TwoModeState::from_terms([
            ((0, 0), c(0.3, -0.1)),
            ((1, 2), c(-0.5, 0.4)),
            ((3, 0), c(0.2, 0.9)),
            ((2, 5), c(0.0, -0.7)),
            ((4, 4), c(0.6, 0.1)),
        ]))
        .unwrap()
    }

    fn assert_states_close(a: &TwoModeState, b: &TwoModeState, tol: f64) {
        let d = a + &(b * -1.0);
        assert!(d.norm_sqr().sqrt() < tol, "{a} vs {b}");
    }

    #[test]
    fn sz_signs() {
        let s = TwoModeState::basis(1, 0);
        assert_eq!(apply_sz(&s, Mode::First), s);
        let s = TwoModeState::basis(2, 1);
        assert_eq!(apply_sz(&s, Mode::First), &s * -1.0);
        let x = sample_state();
        assert_states_close(&apply_sz(&apply_sz(&x, Mode::First), Mode::First), &x, 1e-15);
    }

    #[test]
    fn ladder_shifts() {
        assert_eq!(apply_sminus(&TwoModeState::basis(3, 0), Mode::First), TwoModeState::basis(2, 0));
        assert!(apply_sminus(&TwoModeState::basis(2, 0), Mode::First).is_empty());
        assert_eq!(apply_splus(&TwoModeState::basis(0, 0), Mode::Second), TwoModeState::basis(0, 1));
        assert!(apply_splus(&TwoModeState::basis(0, 3), Mode::Second).is_empty());
    }

    #[test]
    fn axis_spin_special_axes() {
        let s = TwoModeState::basis(1, 0);
        assert_states_close(&apply_axis_spin(&s, Mode::First, Axis::polar(0.0)), &s, 1e-15);
        assert_states_close(
            &apply_axis_spin(&s, Mode::First, Axis::polar(FRAC_PI_2)),
            &TwoModeState::basis(0, 0),
            1e-15,
        );
    }

    #[test]
    fn axis_spin_is_involution() {
        let x = sample_state();
        for ax in [Axis::new(0.3, 1.2), Axis::new(2.0, -0.4), Axis::polar(FRAC_PI_4)] {
            for mode in [Mode::First, Mode::Second] {
                let twice = apply_axis_spin(&apply_axis_spin(&x, mode, ax), mode, ax);
                assert_states_close(&twice, &x, 1e-12);
            }
        }
    }

    #[test]
    fn axis_spin_matches_components() {
        let x = sample_state();
        let ax = Axis::new(0.9, 2.2);
        let [vx, vy, vz] = ax.unit_vector();
        let combo = &(&(&apply_component(&x, Mode::First, SpinComponent::X) * vx)
            + &(&apply_component(&x, Mode::First, SpinComponent::Y) * vy))
            + &(&apply_component(&x, Mode::First, SpinComponent::Z) * vz);
        assert_states_close(&apply_axis_spin(&x, Mode::First, ax), &combo, 1e-14);
    }

    #[test]
    fn correlation_examples() {
        let p = pair();
        let e = correlation(&p, Axis::polar(FRAC_PI_2), Axis::polar(FRAC_PI_2)).unwrap();
        assert!((e - 1.0).abs() < 1e-12);
        let e = correlation(&p, Axis::polar(0.0), Axis::polar(0.0)).unwrap();
        assert!((e + 1.0).abs() < 1e-12);
        let v = TwoModeState::vacuum();
        for (ta, tb) in [(0.3, 1.1), (2.0, -0.7), (0.0, 0.0)] {
            let e = correlation(&v, Axis::polar(ta), Axis::polar(tb)).unwrap();
            assert!((e - ta.cos() * tb.cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn correlation_requires_normalized_state() {
        let s = &pair() * 2.0;
        assert!(matches!(
            correlation(&s, Axis::polar(0.0), Axis::polar(0.0)),
            Err(Error::NotNormalized(_))
        ));
        assert!(bell_expectation(&s, &BellAngles::slice(0.0)).is_err());
    }

    #[test]
    fn bell_examples() {
        let b = bell_expectation(&pair(), &BellAngles::slice(-FRAC_PI_4)).unwrap();
        assert!((b + 2.0 * SQRT_2).abs() < 1e-12);
        let b = bell_expectation(&TwoModeState::vacuum(), &BellAngles::slice(-FRAC_PI_4)).unwrap();
        assert!((b - SQRT_2).abs() < 1e-12);
        for tb in [0.0, 0.4, 1.9, -2.5] {
            let b = bell_expectation(&TwoModeState::basis(1, 1), &BellAngles::slice(tb)).unwrap();
            assert!((b - 2.0 * tb.cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn tensor_agrees_with_operator_route() {
        let x = sample_state();
        let t = CorrelationTensor::new(&x).unwrap();
        let angles = BellAngles {
            a: Axis::new(0.2, 0.5),
            a_prime: Axis::new(1.3, -1.0),
            b: Axis::new(2.1, 0.3),
            b_prime: Axis::new(-0.6, 2.9),
        };
        let direct = bell_expectation(&x, &angles).unwrap();
        assert!((t.bell(&angles) - direct).abs() < 1e-12);
        let e = correlation(&x, angles.a, angles.b_prime).unwrap();
        assert!((t.correlation(angles.a, angles.b_prime) - e).abs() < 1e-12);
    }

    #[test]
    fn axis_vector_round_trip() {
        for ax in [Axis::new(0.4, 1.0), Axis::new(2.5, -2.0), Axis::new(1.0, 0.0)] {
            let back = Axis::from_vector(ax.unit_vector());
            let (u, v) = (ax.unit_vector(), back.unit_vector());
            assert!(dot(sub(u, v), sub(u, v)) < 1e-28);
        }
    }
}
