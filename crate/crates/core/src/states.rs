//! Constructors for the N-photon entangled family
//! `N_m [cos(g)|N-m, m> + e^{i theta_m} sin(g)|m, N-m>]`, its superpositions
//! and the equal-weight special case.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{normalize, TwoModeState, ZERO_NORM_THRESHOLD};

/// `(N, m, gamma, theta_m)` of one basis state. `gamma` is the entanglement
/// angle and `theta` the relative phase, both in radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsiNmParams {
    pub n: u32,
    pub m: u32,
    pub gamma: f64,
    pub theta: f64,
}

impl PsiNmParams {
    pub fn new(n: u32, m: u32, gamma: f64, theta: f64) -> Result<Self> {
        if m > n {
            return Err(Error::InvalidParams(format!("m = {m} exceeds N = {n}")));
        }
        if !gamma.is_finite() || !theta.is_finite() {
            return Err(Error::InvalidParams("angles must be finite".into()));
        }
        Ok(Self { n, m, gamma, theta })
    }

    /// True when both kets coincide (`N = 2m`).
    pub fn is_balanced(&self) -> bool {
        self.n == 2 * self.m
    }

    /// Unnormalized amplitude of `|m, m>` when `N = 2m`.
    fn balanced_amplitude(&self) -> Complex64 {
        let (s, c) = self.gamma.sin_cos();
        Complex64::new(c, 0.0) + Complex64::from_polar(s, self.theta)
    }

    /// `N_m^{-2}`. Equals `1 + cos(theta) sin(2 gamma)` for `N = 2m` and 1
    /// otherwise; evaluated as `|cos g + e^{i theta} sin g|^2`, which keeps
    /// full precision near the cancelling points.
    pub fn inverse_norm_sqr(&self) -> f64 {
        if self.is_balanced() {
            self.balanced_amplitude().norm_sqr()
        } else {
            1.0
        }
    }
}

/// `|psi_Nm>`, normalized. Fails with `ZeroNorm` when `N = 2m` and the two
/// coinciding kets cancel.
pub fn build_psi_nm(p: &PsiNmParams) -> Result<TwoModeState> {
    let (s, c) = p.gamma.sin_cos();
    let raw = TwoModeState::from_terms([
        ((p.n - p.m, p.m), Complex64::new(c, 0.0)),
        ((p.m, p.n - p.m), Complex64::from_polar(s, p.theta)),
    ]);
    normalize(&raw)
}

/// Unit-norm `|psi_Nm>` used as a superposition component. At a cancelling
/// `N = 2m` point the phase of `|m, m>` is taken from the limit approached
/// from larger `gamma`, so the component stays a unit vector.
pub(crate) fn unit_component(p: &PsiNmParams) -> TwoModeState {
    if !p.is_balanced() {
        return build_psi_nm(p).expect("unbalanced basis states have unit norm");
    }
    let amp = p.balanced_amplitude();
    let phase = if amp.norm_sqr() >= ZERO_NORM_THRESHOLD {
        amp / amp.norm()
    } else {
        // d/dgamma of cos g + e^{i theta} sin g
        let (s, c) = p.gamma.sin_cos();
        let d = Complex64::new(-s, 0.0) + Complex64::from_polar(c, p.theta);
        d / d.norm()
    };
    TwoModeState::from_terms([((p.m, p.m), phase)])
}

/// Coefficients `alpha_m` and phases `theta_m` of `A sum_m alpha_m |psi_Nm>`.
/// Coefficients need not be normalized.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperpositionSpec {
    pub n: u32,
    pub alphas: Vec<Complex64>,
    pub gamma: f64,
    pub thetas: Vec<f64>,
}

impl SuperpositionSpec {
    pub fn new(n: u32, alphas: Vec<Complex64>, gamma: f64, thetas: Vec<f64>) -> Result<Self> {
        let want = n as usize + 1;
        if alphas.len() != want || thetas.len() != want {
            return Err(Error::InvalidParams(format!(
                "expected {want} alphas and thetas, got {} and {}",
                alphas.len(),
                thetas.len()
            )));
        }
        if alphas.iter().all(|a| a.norm() == 0.0) {
            return Err(Error::ZeroState);
        }
        if !gamma.is_finite() || thetas.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidParams("angles must be finite".into()));
        }
        Ok(Self { n, alphas, gamma, thetas })
    }

    /// Equal coefficients `1/sqrt(N+1)` with phases `theta_m = 2 pi m / N`.
    /// `N = 0` yields the single component `|0,0>` with zero phase.
    pub fn equal_weight(n: u32, gamma: f64) -> Self {
        let amp = Complex64::new(1.0 / f64::from(n + 1).sqrt(), 0.0);
        let thetas = (0..=n)
            .map(|m| if n == 0 { 0.0 } else { 2.0 * PI * f64::from(m) / f64::from(n) })
            .collect();
        Self {
            n,
            alphas: vec![amp; n as usize + 1],
            gamma,
            thetas,
        }
    }

    fn component(&self, m: u32) -> PsiNmParams {
        PsiNmParams {
            n: self.n,
            m,
            gamma: self.gamma,
            theta: self.thetas[m as usize],
        }
    }
}

/// Normalized `sum_m d_m |N-m, m>` with
/// `d_m ~ alpha_m N_m cos(g) + alpha_{N-m} N_{N-m} e^{i theta_{N-m}} sin(g)`.
pub fn build_superposition(spec: &SuperpositionSpec) -> Result<TwoModeState> {
    if spec.alphas.iter().all(|a| a.norm() == 0.0) {
        return Err(Error::ZeroState);
    }
    let raw = TwoModeState::from_terms((0..=spec.n).flat_map(|m| {
        let alpha = spec.alphas[m as usize];
        let part = if alpha.norm() == 0.0 {
            TwoModeState::zero()
        } else {
            &unit_component(&spec.component(m)) * alpha
        };
        part.iter().map(|(&k, &a)| (k, a)).collect::<Vec<_>>()
    }));
    normalize(&raw)
}

/// Weights `|d_m|^2` of the equal-weight superposition,
/// `|d_m|^2 = A^2 N_m^2 {1 + cos[2 pi (N-m)/N] sin 2g}`.
pub fn equal_weight_coeffs(n: u32, gamma: f64) -> Result<Vec<f64>> {
    if n == 0 {
        return Ok(vec![1.0]);
    }
    let (s, c) = gamma.sin_cos();
    let factors: Vec<f64> = (0..=n)
        .map(|m| {
            if 2 * m == n {
                // N_m^2 (1 + K) = 1
                1.0
            } else {
                let phase = 2.0 * PI * f64::from(n - m) / f64::from(n);
                // 1 + cos(phase) sin 2g, written as a modulus to avoid cancellation
                (Complex64::new(c, 0.0) + Complex64::from_polar(s, phase)).norm_sqr()
            }
        })
        .collect();
    let total: f64 = factors.iter().sum();
    if total < ZERO_NORM_THRESHOLD {
        return Err(Error::ZeroNorm);
    }
    Ok(factors.into_iter().map(|f| f / total).collect())
}

/// Normalized number-sum state `sum_m d_m |N-m, m>`.
pub fn number_sum_state(d: &[Complex64], n: u32) -> Result<TwoModeState> {
    if d.len() != n as usize + 1 {
        return Err(Error::InvalidParams(format!(
            "expected {} coefficients, got {}",
            n + 1,
            d.len()
        )));
    }
    let raw = TwoModeState::from_terms(
        d.iter()
            .zip(0..=n)
            .map(|(&dm, m)| ((n - m, m), dm)),
    );
    normalize(&raw)
}

/// `|d_m|^2` read back from a number-sum state, indexed by the second-mode count.
pub fn number_sum_weights(s: &TwoModeState, n: u32) -> Vec<f64> {
    (0..=n).map(|m| s.amplitude(n - m, m).norm_sqr()).collect()
}
