//! Analytic expressions for entropies, correlations and CHSH values of the
//! N-photon family. Each function here has an operator-level counterpart in
//! [`crate::fock`] / [`crate::pseudospin`] that it is checked against.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{neg_p_log2_p, shannon_entropy, ZERO_NORM_THRESHOLD};
use crate::states::{equal_weight_coeffs, PsiNmParams};

/// Effective state parameter `K = cos(theta_m) sin(2 gamma)`, always in `[-1, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct KParam(f64);

impl KParam {
    pub fn value(self) -> f64 {
        self.0
    }
}

pub fn k_param(theta_m: f64, gamma: f64) -> KParam {
    KParam(theta_m.cos() * (2.0 * gamma).sin())
}

/// True when `a` and `b` are the even and odd level of the same pseudospin
/// block, i.e. `{a, b} = {2k, 2k+1}`. Only then does `S_x (x) S_x` connect
/// `|a, b>` with `|b, a>`.
#[inline]
pub fn parity_partners(a: u32, b: u32) -> bool {
    a ^ 1 == b
}

/// Entanglement entropy (bits) of `|psi_Nm>` for `N != 2m`:
/// `-cos^2 g log2 cos^2 g - sin^2 g log2 sin^2 g`.
pub fn entropy_psi_nm(gamma: f64) -> f64 {
    let (s, c) = gamma.sin_cos();
    neg_p_log2_p(c * c) + neg_p_log2_p(s * s)
}

/// Entropy of `(|psi_30> + |psi_31>)/sqrt 2`, which exceeds the basis-state
/// entropy by exactly one bit.
pub fn entropy_two_component(gamma: f64) -> f64 {
    1.0 + entropy_psi_nm(gamma)
}

/// Entropy of the equal-weight superposition with `theta_m = 2 pi m / N`.
pub fn entropy_equal_weight(n: u32, gamma: f64) -> Result<f64> {
    shannon_entropy(&equal_weight_coeffs(n, gamma)?)
}

fn squared_normalization(p: &PsiNmParams) -> Result<f64> {
    let inv = p.inverse_norm_sqr();
    if inv < ZERO_NORM_THRESHOLD {
        return Err(Error::ZeroNorm);
    }
    Ok(1.0 / inv)
}

fn parity_of(n: u32) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Closed-form `E(theta_a, theta_b)` for `|psi_Nm>` with `phi = 0` axes:
///
/// `N_m^2 {[(-1)^N + K d(N,2m)] cos ta cos tb + P(N-m, m) K sin ta sin tb}`
///
/// where `P` is [`parity_partners`]. `P` holds for `N = 2m +- 1` only when
/// `min(m, N-m)` is even (`N = 1 mod 4`); for `N = 3 mod 4` the two kets sit
/// in different pseudospin blocks and the `sin sin` term vanishes.
pub fn correlation_psi_nm(p: &PsiNmParams, theta_a: f64, theta_b: f64) -> Result<f64> {
    let nm2 = squared_normalization(p)?;
    let k = k_param(p.theta, p.gamma).value();
    let balanced = if p.is_balanced() { k } else { 0.0 };
    let flip = if parity_partners(p.n - p.m, p.m) { k } else { 0.0 };
    Ok(nm2
        * ((parity_of(p.n) + balanced) * theta_a.cos() * theta_b.cos()
            + flip * theta_a.sin() * theta_b.sin()))
}

/// The correlation with the `sin sin` term gated on `|N - 2m| = 1` alone.
/// Disagrees with the operator value for `N = 3 mod 4`; kept for diagnostics.
pub fn correlation_psi_nm_adjacent_gate(p: &PsiNmParams, theta_a: f64, theta_b: f64) -> Result<f64> {
    let nm2 = squared_normalization(p)?;
    let k = k_param(p.theta, p.gamma).value();
    let balanced = if p.is_balanced() { k } else { 0.0 };
    let adjacent = p.n == 2 * p.m + 1 || p.n + 1 == 2 * p.m;
    let flip = if adjacent { k } else { 0.0 };
    Ok(nm2
        * ((parity_of(p.n) + balanced) * theta_a.cos() * theta_b.cos()
            + flip * theta_a.sin() * theta_b.sin()))
}

/// CHSH value on the slice `theta_a = 0, theta_a' = pi/2, theta_b' = -theta_b`:
/// `2 N_m^2 {[(-1)^N + K d(N,2m)] cos tb + P(N-m, m) K sin tb}`.
///
/// Reduces to `2 cos tb` for `N = 2m` and to `2 (K sin tb - cos tb)` for
/// parity-partner states.
pub fn bell_psi_nm(p: &PsiNmParams, theta_b: f64) -> Result<f64> {
    let nm2 = squared_normalization(p)?;
    let k = k_param(p.theta, p.gamma).value();
    let balanced = if p.is_balanced() { k } else { 0.0 };
    let flip = if parity_partners(p.n - p.m, p.m) { k } else { 0.0 };
    Ok(2.0 * nm2 * ((parity_of(p.n) + balanced) * theta_b.cos() + flip * theta_b.sin()))
}

/// `2 sqrt(1 + K^2)`, the largest `|<B>|` on the slice for parity-partner states.
pub fn bell_max_psi_nm(theta_m: f64, gamma: f64) -> f64 {
    let k = k_param(theta_m, gamma).value();
    2.0 * (1.0 + k * k).sqrt()
}

/// Slice angle `theta_b = -atan K` where the slice value reaches `-2 sqrt(1 + K^2)`.
pub fn bell_max_slice_angle(theta_m: f64, gamma: f64) -> f64 {
    -k_param(theta_m, gamma).value().atan()
}

#[inline]
fn kron(a: u32, b: u32) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

/// `<psi_Nm| S_ta (x) S_tb |psi_Nm'>` written out term by term from the
/// published cross-correlation expression, with no simplification.
///
/// This form does not agree with the operator matrix element in general
/// (its diagonal `m = m'` case already differs), so it is only evaluated in
/// the deviation report of [`crate::verify`]; `thetas[m]` is `theta_m`.
pub fn cross_correlation_literal(
    m: u32,
    m_prime: u32,
    n: u32,
    gamma: f64,
    thetas: &[f64],
    theta_a: f64,
    theta_b: f64,
) -> Result<Complex64> {
    if m > n || m_prime > n || thetas.len() != n as usize + 1 {
        return Err(Error::InvalidParams(format!(
            "indices ({m}, {m_prime}) with N = {n} and {} phases",
            thetas.len()
        )));
    }
    let (tm, tmp) = (thetas[m as usize], thetas[m_prime as usize]);
    let norm_m = squared_normalization(&PsiNmParams { n, m, gamma, theta: tm })?.sqrt();
    let norm_mp = squared_normalization(&PsiNmParams { n, m: m_prime, gamma, theta: tmp })?.sqrt();
    let pref = Complex64::new(norm_m * norm_mp, 0.0);

    let (s, c) = gamma.sin_cos();
    let mixed = Complex64::new(c * c, 0.0) + Complex64::from_polar(s * s, tmp - tm);
    let phase_sum = Complex64::from_polar(1.0, tmp) + Complex64::from_polar(1.0, -tm);
    let sign_n = parity_of(n);
    let sign_mm = parity_of(m + m_prime);

    let cos_part = pref
        * theta_a.cos()
        * theta_b.cos()
        * (mixed * (sign_n * kron(m, m_prime) * kron(n, m + m_prime) * c * s) + phase_sum * sign_mm);

    let adjacent_m = kron(m, m_prime + 1) + if m_prime >= 1 { kron(m, m_prime - 1) } else { 0.0 };
    let adjacent_n = kron(n, m + m_prime + 1) + if m + m_prime >= 1 { kron(n, m + m_prime - 1) } else { 0.0 };
    let sin_part = pref * theta_a.sin() * theta_b.sin() * (mixed * adjacent_m + phase_sum * (c * s * adjacent_n));

    Ok(cos_part + sin_part)
}

/// CHSH slice value for `C(alpha0 |psi_30> + alpha1 |psi_31>)`:
///
/// `-2 cos tb + 4 sin tb Re[a0* a1 (cos^2 g + e^{i(t1 - t0)} sin^2 g)] / (|a0|^2 + |a1|^2)`.
pub fn bell_two_component(
    alpha0: Complex64,
    alpha1: Complex64,
    gamma: f64,
    theta0: f64,
    theta1: f64,
    theta_b: f64,
) -> Result<f64> {
    let weight = alpha0.norm_sqr() + alpha1.norm_sqr();
    if weight == 0.0 {
        return Err(Error::ZeroState);
    }
    let (s, c) = gamma.sin_cos();
    let mixed = Complex64::new(c * c, 0.0) + Complex64::from_polar(s * s, theta1 - theta0);
    let cross = (alpha0.conj() * alpha1 * mixed).re;
    Ok(-2.0 * theta_b.cos() + 4.0 * theta_b.sin() * cross / weight)
}
