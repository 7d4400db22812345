//! Finite-support two-mode Fock states, partial traces and the von Neumann
//! entropy of the reduced state.
//!
//! States are stored sparsely as a map from photon-number pairs `(n1, n2)`
//! to complex amplitudes. Every state in this crate has finite support, so
//! no truncation of the Fock space is ever needed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Amplitudes with modulus below this are dropped from the support.
pub const PRUNE_THRESHOLD: f64 = 1e-15;
/// Squared norms below this cannot be normalized.
pub const ZERO_NORM_THRESHOLD: f64 = 1e-24;
/// Off-diagonal Frobenius norm at which Jacobi iteration stops.
pub const JACOBI_TOLERANCE: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Eigenvalues in `[-NEGATIVE_CLAMP, 0)` are treated as zero.
pub const NEGATIVE_CLAMP: f64 = 1e-10;

/// One of the two bosonic modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    First,
    Second,
}

impl Mode {
    pub fn other(self) -> Self {
        match self {
            Mode::First => Mode::Second,
            Mode::Second => Mode::First,
        }
    }

    /// Photon count of this mode in the ket `|n1, n2>`.
    #[inline]
    pub fn count(self, key: (u32, u32)) -> u32 {
        match self {
            Mode::First => key.0,
            Mode::Second => key.1,
        }
    }

    #[inline]
    pub fn with_count(self, key: (u32, u32), n: u32) -> (u32, u32) {
        match self {
            Mode::First => (n, key.1),
            Mode::Second => (key.0, n),
        }
    }
}

/// A pure two-mode state `sum c(n1, n2) |n1>|n2>` with finite support.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TwoModeState {
    amps: BTreeMap<(u32, u32), Complex64>,
}

impl TwoModeState {
    /// The zero vector.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The product Fock state `|n1>|n2>`.
    pub fn basis(n1: u32, n2: u32) -> Self {
        let mut amps = BTreeMap::new();
        amps.insert((n1, n2), Complex64::new(1.0, 0.0));
        Self { amps }
    }

    /// The two-mode vacuum `|0,0>`.
    pub fn vacuum() -> Self {
        Self::basis(0, 0)
    }

    /// Builds a state from `(key, amplitude)` terms. Repeated keys are
    /// summed before pruning, so coinciding kets interfere.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), Complex64)>,
    {
        let mut state = Self::accumulate(terms);
        state.prune();
        state
    }

    /// Like [`TwoModeState::from_terms`] but rejects NaN or infinite amplitudes.
    pub fn try_from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((u32, u32), Complex64)>,
    {
        let mut state = Self::accumulate(terms);
        if let Some((&(n1, n2), _)) = state.amps.iter().find(|(_, a)| !(a.re.is_finite() && a.im.is_finite())) {
            return Err(Error::NonFinite(n1, n2));
        }
        state.prune();
        Ok(state)
    }

    fn accumulate<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), Complex64)>,
    {
        let mut amps: BTreeMap<(u32, u32), Complex64> = BTreeMap::new();
        for (key, amp) in terms {
            *amps.entry(key).or_default() += amp;
        }
        Self { amps }
    }

    fn prune(&mut self) {
        self.amps.retain(|_, a| a.norm() >= PRUNE_THRESHOLD);
    }

    pub fn amplitude(&self, n1: u32, n2: u32) -> Complex64 {
        self.amps.get(&(n1, n2)).copied().unwrap_or_default()
    }

    /// Iterates the support in lexicographic `(n1, n2)` order.
    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &Complex64)> {
        self.amps.iter()
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    /// Applies `f` to every ket. `f` returns the image ket and a weight, or
    /// `None` when the ket is annihilated.
    pub fn map_kets<F>(&self, f: F) -> Self
    where
        F: Fn((u32, u32)) -> Option<((u32, u32), Complex64)>,
    {
        Self::from_terms(
            self.amps
                .iter()
                .filter_map(|(&key, &amp)| f(key).map(|(k, w)| (k, w * amp))),
        )
    }

    /// Maximum photon number appearing in either mode.
    pub fn max_photon_number(&self) -> u32 {
        self.amps.keys().map(|&(a, b)| a.max(b)).max().unwrap_or(0)
    }

    /// Returns `Some(N)` when every ket has `n1 + n2 = N`.
    pub fn total_photon_number(&self) -> Option<u32> {
        let mut totals = self.amps.keys().map(|&(a, b)| a + b);
        let first = totals.next()?;
        totals.all(|t| t == first).then_some(first)
    }
}

impl Add for &TwoModeState {
    type Output = TwoModeState;

    fn add(self, rhs: &TwoModeState) -> TwoModeState {
        TwoModeState::from_terms(self.amps.iter().chain(rhs.amps.iter()).map(|(&k, &a)| (k, a)))
    }
}

impl Mul<Complex64> for &TwoModeState {
    type Output = TwoModeState;

    fn mul(self, rhs: Complex64) -> TwoModeState {
        TwoModeState::from_terms(self.amps.iter().map(|(&k, &a)| (k, a * rhs)))
    }
}

impl Mul<f64> for &TwoModeState {
    type Output = TwoModeState;

    fn mul(self, rhs: f64) -> TwoModeState {
        self * Complex64::new(rhs, 0.0)
    }
}

impl fmt::Display for TwoModeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.amps.is_empty() {
            return write!(f, "0");
        }
        for (i, ((n1, n2), a)) in self.amps.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:.6}{:+.6}i)|{},{}>", a.re, a.im, n1, n2)?;
        }
        Ok(())
    }
}

/// `<a|b>`, antilinear in the first argument.
pub fn inner(a: &TwoModeState, b: &TwoModeState) -> Complex64 {
    // iterate the smaller support
    if a.len() <= b.len() {
        a.amps
            .iter()
            .filter_map(|(k, x)| b.amps.get(k).map(|y| x.conj() * y))
            .sum()
    } else {
        b.amps
            .iter()
            .filter_map(|(k, y)| a.amps.get(k).map(|x| x.conj() * y))
            .sum()
    }
}

/// Rescales to unit norm.
pub fn normalize(s: &TwoModeState) -> Result<TwoModeState> {
    let n2 = s.norm_sqr();
    if n2 < ZERO_NORM_THRESHOLD {
        return Err(Error::ZeroNorm);
    }
    Ok(s * (1.0 / n2.sqrt()))
}

/// Dense Hermitian matrix over the Fock levels of one mode.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<Complex64>,
    labels: Vec<u32>,
}

impl DensityMatrix {
    /// Row-major `entries` of a `labels.len()` square matrix. Only the shape
    /// is checked here; see [`DensityMatrix::check`] for the physical invariants.
    pub fn from_parts(labels: Vec<u32>, entries: Vec<Complex64>) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::InvalidDensity(format!(
                "{} entries for {} labels",
                entries.len(),
                dim
            )));
        }
        Ok(Self { dim, entries, labels })
    }

    pub fn diagonal(labels: Vec<u32>, probs: &[f64]) -> Result<Self> {
        let dim = labels.len();
        if probs.len() != dim {
            return Err(Error::InvalidDensity("diagonal length mismatch".into()));
        }
        let mut entries = vec![Complex64::default(); dim * dim];
        for (i, p) in probs.iter().enumerate() {
            entries[i * dim + i] = Complex64::new(*p, 0.0);
        }
        Self::from_parts(labels, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Diagonal as real numbers (populations of each label).
    pub fn populations(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i).re).collect()
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.get(i, j).norm() <= tol))
    }

    /// Verifies Hermiticity and unit trace (to 1e-12) and positivity (to -1e-10).
    pub fn check(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in i..self.dim {
                if (self.get(i, j) - self.get(j, i).conj()).norm() > 1e-12 {
                    return Err(Error::InvalidDensity(format!("not Hermitian at ({i}, {j})")));
                }
            }
        }
        let tr = self.trace();
        if (tr - 1.0).norm() > 1e-12 {
            return Err(Error::InvalidDensity(format!("trace {tr}")));
        }
        let spectrum = eigenvalues_hermitian(self)?;
        if let Some(&low) = spectrum.last() {
            if low < -NEGATIVE_CLAMP {
                return Err(Error::InvalidDensity(format!("negative eigenvalue {low:e}")));
            }
        }
        Ok(())
    }
}

/// Partial trace over the mode *other* than `keep`.
///
/// The basis labels of the result are the Fock levels of `keep` that occur in
/// the support of `s`, in increasing order.
pub fn reduced_density(s: &TwoModeState, keep: Mode) -> DensityMatrix {
    let labels: Vec<u32> = s
        .amps
        .keys()
        .map(|&k| keep.count(k))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let dim = labels.len().max(1);
    let index = |n: u32| labels.binary_search(&n).expect("label present");

    // group amplitudes by the traced-out level
    let mut by_env: BTreeMap<u32, Vec<(usize, Complex64)>> = BTreeMap::new();
    for (&k, &a) in &s.amps {
        by_env
            .entry(keep.other().count(k))
            .or_default()
            .push((index(keep.count(k)), a));
    }

    let mut entries = vec![Complex64::default(); dim * dim];
    for column in by_env.values() {
        for &(i, ai) in column {
            for &(j, aj) in column {
                entries[i * dim + j] += ai * aj.conj();
            }
        }
    }
    let labels = if labels.is_empty() { vec![0] } else { labels };
    DensityMatrix { dim, entries, labels }
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[i * n + j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Spectrum of a Hermitian matrix by cyclic complex Jacobi rotations,
/// sorted in descending order.
pub fn eigenvalues_hermitian(rho: &DensityMatrix) -> Result<Vec<f64>> {
    let n = rho.dim;
    let mut a = rho.entries.clone();

    let mut sweeps = 0;
    while off_diagonal_norm(&a, n) >= JACOBI_TOLERANCE {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence(JACOBI_MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                // phase that makes the (p, q) element real and positive
                let phase = apq / r;
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let theta = 0.5 * (aqq - app) / r;
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                // A <- A G with G_pp = c, G_pq = s, G_qp = -s e^{-ia}, G_qq = c e^{-ia}
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q] * phase.conj();
                    a[k * n + p] = akp * c - akq * s;
                    a[k * n + q] = akp * s + akq * c;
                }
                // A <- G^H A
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k] * phase;
                    a[p * n + k] = apk * c - aqk * s;
                    a[q * n + k] = apk * s + aqk * c;
                }
                a[p * n + q] = Complex64::default();
                a[q * n + p] = Complex64::default();
                a[p * n + p].im = 0.0;
                a[q * n + q].im = 0.0;
            }
        }
    }

    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    Ok(eig)
}

/// `-p log2 p` with the `0 log 0 = 0` convention.
#[inline]
pub fn neg_p_log2_p(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * p.log2()
    }
}

/// Shannon entropy (bits) of a probability vector, clamping tiny negative
/// entries produced by round-off.
pub fn shannon_entropy(probs: &[f64]) -> Result<f64> {
    probs.iter().try_fold(0.0, |acc, &p| {
        if p < -NEGATIVE_CLAMP {
            Err(Error::InvalidDensity(format!("negative eigenvalue {p:e}")))
        } else {
            Ok(acc + neg_p_log2_p(p.max(0.0)))
        }
    })
}

/// `-Tr(rho log2 rho)` in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    shannon_entropy(&eigenvalues_hermitian(rho)?)
}

/// Entanglement entropy of a pure two-mode state (entropy of the first-mode
/// reduced density matrix).
pub fn entanglement_entropy(s: &TwoModeState) -> Result<f64> {
    von_neumann_entropy(&reduced_density(s, Mode::First))
}
