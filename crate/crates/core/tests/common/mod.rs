//! Dense-matrix reference implementations shared by the integration tests.
//!
//! Everything here works on explicit amplitude matrices `C[n1][n2]` in a
//! truncated Fock space, independently of the sparse operator code. A product
//! operator acts as `(A (x) B) C = A C B^T`.
#![allow(dead_code)]

use nalgebra::{DMatrix, Matrix2, Matrix3};
use num_complex::Complex64;
use nphoton::TwoModeState;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `|psi_Nm>` written out by hand, or `None` when it cancels.
pub fn psi_nm(n: u32, m: u32, gamma: f64, theta: f64) -> Option<TwoModeState> {
    let terms = [
        ((n - m, m), c(gamma.cos(), 0.0)),
        ((m, n - m), Complex64::from_polar(gamma.sin(), theta)),
    ];
    let raw = TwoModeState::from_terms(terms);
    let norm = raw.norm_sqr().sqrt();
    if norm < 1e-12 {
        return None;
    }
    Some(&raw * (1.0 / norm))
}

/// Smallest even single-mode dimension covering every state, so that no
/// parity pair is cut by the truncation.
pub fn dimension(states: &[&TwoModeState]) -> usize {
    let max = states.iter().map(|s| s.max_photon_number()).max().unwrap_or(0) as usize;
    (max + 2) & !1
}

pub fn amplitudes(s: &TwoModeState, dim: usize) -> DMatrix<Complex64> {
    let mut amp = DMatrix::zeros(dim, dim);
    for (&(n1, n2), &z) in s.iter() {
        amp[(n1 as usize, n2 as usize)] = z;
    }
    amp
}

fn sandwich(bra: &DMatrix<Complex64>, a: &DMatrix<Complex64>, b: &DMatrix<Complex64>, ket: &DMatrix<Complex64>) -> Complex64 {
    bra.dotc(&(a * ket * b.transpose()))
}

/// Single-mode `a . S` for the direction `(theta, phi)`.
pub fn spin(theta: f64, phi: f64, dim: usize) -> DMatrix<Complex64> {
    let mut a = DMatrix::zeros(dim, dim);
    for k in (0..dim).step_by(2) {
        a[(k, k)] = c(-theta.cos(), 0.0);
        a[(k + 1, k + 1)] = c(theta.cos(), 0.0);
        a[(k, k + 1)] = Complex64::from_polar(theta.sin(), phi);
        a[(k + 1, k)] = Complex64::from_polar(theta.sin(), -phi);
    }
    a
}

pub fn sigma(i: usize, dim: usize) -> DMatrix<Complex64> {
    use std::f64::consts::FRAC_PI_2;
    match i {
        0 => spin(FRAC_PI_2, 0.0, dim),
        1 => spin(FRAC_PI_2, FRAC_PI_2, dim),
        _ => spin(0.0, 0.0, dim),
    }
}

/// `<bra| A(theta_a, phi_a) (x) B(theta_b, phi_b) |ket>`.
pub fn matrix_element(bra: &TwoModeState, ket: &TwoModeState, a: (f64, f64), b: (f64, f64)) -> Complex64 {
    let dim = dimension(&[bra, ket]);
    sandwich(
        &amplitudes(bra, dim),
        &spin(a.0, a.1, dim),
        &spin(b.0, b.1, dim),
        &amplitudes(ket, dim),
    )
}

pub fn correlation(s: &TwoModeState, theta_a: f64, theta_b: f64) -> f64 {
    matrix_element(s, s, (theta_a, 0.0), (theta_b, 0.0)).re
}

/// CHSH value for polar directions `[theta_a, theta_a', theta_b, theta_b']`.
pub fn bell(s: &TwoModeState, t: [f64; 4]) -> f64 {
    correlation(s, t[0], t[2]) + correlation(s, t[0], t[3]) + correlation(s, t[1], t[2])
        - correlation(s, t[1], t[3])
}

pub fn slice(s: &TwoModeState, theta_b: f64) -> f64 {
    bell(s, [0.0, std::f64::consts::FRAC_PI_2, theta_b, -theta_b])
}

/// Entanglement entropy from the singular values of the amplitude matrix.
pub fn entropy(s: &TwoModeState) -> f64 {
    amplitudes(s, dimension(&[s]))
        .singular_values()
        .iter()
        .map(|sv| sv * sv)
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum()
}

pub fn tensor(s: &TwoModeState) -> Matrix3<f64> {
    let dim = dimension(&[s]);
    let amp = amplitudes(s, dim);
    let sig: Vec<_> = (0..3).map(|i| sigma(i, dim)).collect();
    Matrix3::from_fn(|i, j| sandwich(&amp, &sig[i], &sig[j], &amp).re)
}

/// Largest CHSH value over all measurement directions: `2 sqrt(t1^2 + t2^2)`
/// with `t1 >= t2` the top singular values of the correlation tensor.
pub fn horodecki(s: &TwoModeState) -> f64 {
    let mut sv: Vec<f64> = tensor(s).singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    2.0 * (sv[0] * sv[0] + sv[1] * sv[1]).sqrt()
}

/// Same bound restricted to directions in the x-z plane.
pub fn horodecki_xz(s: &TwoModeState) -> f64 {
    let t = tensor(s);
    let sub = Matrix2::new(t[(0, 0)], t[(0, 2)], t[(2, 0)], t[(2, 2)]);
    let sv = sub.singular_values();
    2.0 * (sv[0] * sv[0] + sv[1] * sv[1]).sqrt()
}

/// `-sum p log2 p` for a probability vector.
pub fn shannon(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum()
}
