//! Closed form vs operator cross-checks, grouped into named suites.
//!
//! Each check records how many cases it covered and the largest absolute
//! deviation seen. Diagnostic checks are reported but never fail a run.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, FRAC_PI_8, PI};

use num_complex::Complex64;

use crate::closed_forms::{
    bell_max_psi_nm, bell_max_slice_angle, bell_psi_nm, bell_two_component, correlation_psi_nm,
    correlation_psi_nm_adjacent_gate, cross_correlation_literal, entropy_equal_weight, entropy_psi_nm,
    entropy_two_component, parity_partners,
};
use crate::error::{Error, Result};
use crate::fock::{
    eigenvalues_hermitian, entanglement_entropy, inner, normalize, reduced_density, von_neumann_entropy, Mode,
    TwoModeState,
};
use crate::optimizer::{optimize_bell, scan_slice, tsirelson_check, CLASSICAL_BOUND};
use crate::pseudospin::{
    apply_axis_spin, apply_sminus, apply_splus, apply_sz, bell_expectation, correlation, matrix_element, Axis,
    BellAngles,
};
use crate::states::{
    build_psi_nm, build_superposition, equal_weight_coeffs, number_sum_weights, PsiNmParams, SuperpositionSpec,
};

pub const SUITES: [&str; 9] = [
    "fock",
    "states",
    "su2",
    "entropy",
    "correlations",
    "bell",
    "two-component",
    "optimizer",
    "cross-correlation",
];

/// Entanglement angles of the verification grid.
pub const GAMMAS: [f64; 6] = [0.0, FRAC_PI_8, FRAC_PI_6, FRAC_PI_4, FRAC_PI_3, 3.0 * FRAC_PI_4];
/// Relative phases of the verification grid.
pub const THETAS: [f64; 4] = [0.0, FRAC_PI_4, FRAC_PI_2, PI];
/// Measurement angles of the verification grid.
pub const AXIS_ANGLES: [f64; 5] = [0.0, FRAC_PI_4, -FRAC_PI_4, FRAC_PI_2, PI];
pub const MAX_N: u32 = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub cases: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub diagnostic: bool,
}

impl Check {
    fn new(suite: &'static str, name: &str, tolerance: f64) -> Self {
        Self {
            suite,
            name: name.to_owned(),
            cases: 0,
            max_deviation: 0.0,
            tolerance,
            diagnostic: false,
        }
    }

    fn diagnostic(mut self) -> Self {
        self.diagnostic = true;
        self
    }

    fn record(&mut self, deviation: f64) {
        self.cases += 1;
        // NaN counts as a failure
        if deviation.is_nan() || deviation > self.max_deviation {
            self.max_deviation = if deviation.is_nan() { f64::INFINITY } else { deviation };
        }
    }

    fn record_bool(&mut self, ok: bool) {
        self.record(if ok { 0.0 } else { f64::INFINITY });
    }

    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    /// True when every non-diagnostic check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.diagnostic || c.passed())
    }
}

/// Runs every suite, or just `only`.
pub fn run(only: Option<&str>) -> Result<Report> {
    if let Some(name) = only {
        if !SUITES.contains(&name) {
            return Err(Error::InvalidParams(format!(
                "unknown suite {name:?}; expected one of {}",
                SUITES.join(", ")
            )));
        }
    }
    let mut report = Report::default();
    for suite in SUITES {
        if only.is_some_and(|o| o != suite) {
            continue;
        }
        let checks = match suite {
            "fock" => fock_suite(),
            "states" => states_suite(),
            "su2" => su2_suite(),
            "entropy" => entropy_suite(),
            "correlations" => correlation_suite(),
            "bell" => bell_suite(),
            "two-component" => two_component_suite(),
            "optimizer" => optimizer_suite(),
            "cross-correlation" => cross_correlation_suite(),
            _ => unreachable!(),
        }?;
        report.checks.extend(checks);
    }
    Ok(report)
}

/// Every non-cancelling `|psi_Nm>` on the verification grid.
pub fn grid_states() -> Vec<(PsiNmParams, TwoModeState)> {
    let mut out = Vec::new();
    for n in 1..=MAX_N {
        for m in 0..=n {
            for &g in &GAMMAS {
                for &t in &THETAS {
                    let p = PsiNmParams { n, m, gamma: g, theta: t };
                    if let Ok(s) = build_psi_nm(&p) {
                        out.push((p, s));
                    }
                }
            }
        }
    }
    out
}

/// Deterministic scrambled sequence in `[0, 1)` (SplitMix64 finalizer).
fn unit_sample(index: u64) -> f64 {
    let mut z = index.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    (z >> 11) as f64 / (1u64 << 53) as f64
}

/// Fixed family of normalized states with up to `terms` kets and photon
/// numbers up to `max_n` in each mode.
pub fn sample_states(count: usize, terms: usize, max_n: u32) -> Vec<TwoModeState> {
    let mut k = 0u64;
    let mut next = || {
        k += 1;
        unit_sample(k)
    };
    (0..count)
        .map(|_| loop {
            let len = 1 + (next() * terms as f64) as usize;
            let raw = TwoModeState::from_terms((0..len).map(|_| {
                let n1 = (next() * f64::from(max_n + 1)) as u32;
                let n2 = (next() * f64::from(max_n + 1)) as u32;
                ((n1, n2), Complex64::new(next() - 0.5, next() - 0.5))
            }));
            if let Ok(s) = normalize(&raw) {
                break s;
            }
        })
        .collect()
}

fn distance(a: &TwoModeState, b: &TwoModeState) -> f64 {
    (a + &(b * -1.0)).norm_sqr().sqrt()
}

fn fock_suite() -> Result<Vec<Check>> {
    let mut invariants = Check::new("fock", "reduced density is Hermitian, unit trace, PSD", 0.0);
    let mut symmetry = Check::new("fock", "entropy equal for both reduced states", 1e-10);
    let mut trace = Check::new("fock", "sum of eigenvalues equals trace", 1e-10);
    let mut product = Check::new("fock", "product states have zero entropy", 0.0);
    let mut norm = Check::new("fock", "<s|s> = 1 after normalize", 1e-12);

    for s in sample_states(60, 8, 6) {
        norm.record((inner(&s, &s) - 1.0).norm());
        let rho1 = reduced_density(&s, Mode::First);
        let rho2 = reduced_density(&s, Mode::Second);
        invariants.record_bool(rho1.check().is_ok() && rho2.check().is_ok());
        let e1 = von_neumann_entropy(&rho1)?;
        let e2 = von_neumann_entropy(&rho2)?;
        symmetry.record((e1 - e2).abs());
        let eig = eigenvalues_hermitian(&rho1)?;
        trace.record((eig.iter().sum::<f64>() - rho1.trace().re).abs());
    }
    for (_, s) in grid_states() {
        invariants.record_bool(reduced_density(&s, Mode::First).check().is_ok());
    }
    for n1 in 0..6 {
        for n2 in 0..6 {
            product.record(entanglement_entropy(&TwoModeState::basis(n1, n2))?);
        }
    }
    Ok(vec![norm, invariants, symmetry, trace, product])
}

fn states_suite() -> Result<Vec<Check>> {
    let mut number = Check::new("states", "constructor outputs conserve total photon number", 0.0);
    let mut phase = Check::new("states", "basis entropy independent of relative phase (N != 2m)", 1e-12);
    let mut single = Check::new("states", "single-coefficient superposition equals basis state", 1e-12);
    let mut weights = Check::new("states", "equal-weight closed weights match construction", 1e-12);
    let mut period = Check::new("states", "equal-weight weights are pi-periodic in gamma", 1e-12);

    for (p, s) in grid_states() {
        number.record_bool(s.total_photon_number() == Some(p.n));
        if !p.is_balanced() {
            let e0 = entanglement_entropy(&s)?;
            for k in 0..12 {
                let q = PsiNmParams { theta: 0.55 * f64::from(k), ..p };
                phase.record((entanglement_entropy(&build_psi_nm(&q)?)? - e0).abs());
            }
        }
        let mut alphas = vec![Complex64::default(); p.n as usize + 1];
        alphas[p.m as usize] = Complex64::new(1.0, 0.0);
        let mut thetas = vec![0.0; p.n as usize + 1];
        thetas[p.m as usize] = p.theta;
        let sup = build_superposition(&SuperpositionSpec::new(p.n, alphas, p.gamma, thetas)?)?;
        single.record(distance(&sup, &s));
    }
    for n in 1..=MAX_N {
        for k in 0..50 {
            let g = -PI + 0.1371 * f64::from(k);
            match (equal_weight_coeffs(n, g), build_superposition(&SuperpositionSpec::equal_weight(n, g))) {
                (Ok(w), Ok(s)) => {
                    number.record_bool(s.total_photon_number() == Some(n));
                    let built = number_sum_weights(&s, n);
                    let dev = w.iter().zip(&built).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                    weights.record(dev);
                    let shifted = equal_weight_coeffs(n, g + PI)?;
                    period.record(w.iter().zip(&shifted).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
                }
                (Err(Error::ZeroNorm), Err(Error::ZeroNorm)) => weights.record(0.0),
                _ => weights.record(f64::INFINITY),
            }
        }
    }
    Ok(vec![number, phase, single, weights, period])
}

fn su2_suite() -> Result<Vec<Check>> {
    let mut sz_plus = Check::new("su2", "[S_z, S_+] = 2 S_+", 1e-12);
    let mut sz_minus = Check::new("su2", "[S_z, S_-] = -2 S_-", 1e-12);
    let mut plus_minus = Check::new("su2", "[S_+, S_-] = S_z", 1e-12);
    let mut anti = Check::new("su2", "{S_z, S_+-} = 0", 1e-12);
    let mut involution = Check::new("su2", "(a.S)^2 = I", 1e-12);

    let axes: Vec<Axis> = (0..6)
        .map(|k| Axis::new(0.37 + 1.1 * f64::from(k), -0.8 + 0.9 * f64::from(k)))
        .collect();
    for s in sample_states(100, 10, 10) {
        for mode in [Mode::First, Mode::Second] {
            let z = |x: &TwoModeState| apply_sz(x, mode);
            let p = |x: &TwoModeState| apply_splus(x, mode);
            let m = |x: &TwoModeState| apply_sminus(x, mode);
            let comm_zp = &z(&p(&s)) + &(&p(&z(&s)) * -1.0);
            sz_plus.record(distance(&comm_zp, &(&p(&s) * 2.0)));
            let comm_zm = &z(&m(&s)) + &(&m(&z(&s)) * -1.0);
            sz_minus.record(distance(&comm_zm, &(&m(&s) * -2.0)));
            let comm_pm = &p(&m(&s)) + &(&m(&p(&s)) * -1.0);
            plus_minus.record(distance(&comm_pm, &z(&s)));
            anti.record((&z(&p(&s)) + &p(&z(&s))).norm_sqr().sqrt());
            anti.record((&z(&m(&s)) + &m(&z(&s))).norm_sqr().sqrt());
            for &ax in &axes {
                let twice = apply_axis_spin(&apply_axis_spin(&s, mode, ax), mode, ax);
                involution.record(distance(&twice, &s));
            }
        }
    }
    Ok(vec![sz_plus, sz_minus, plus_minus, anti, involution])
}

fn entropy_suite() -> Result<Vec<Check>> {
    let mut basis = Check::new("entropy", "basis entropy closed form vs reduced density", 1e-10);
    let mut two = Check::new("entropy", "two-component entropy closed form vs reduced density", 1e-10);
    let mut offset = Check::new("entropy", "two-component minus basis entropy = 1", 1e-12);
    let mut equal = Check::new("entropy", "equal-weight entropy closed form vs reduced density", 1e-10);
    let mut maximum = Check::new("entropy", "equal-weight entropy at gamma = 0 is log2(N+1)", 1e-12);

    for k in 0..200 {
        let g = -PI + 2.0 * PI * f64::from(k) / 200.0;
        for (n, m) in [(1, 0), (3, 0), (3, 2), (5, 1), (6, 2)] {
            let s = build_psi_nm(&PsiNmParams { n, m, gamma: g, theta: 0.3 })?;
            basis.record((entropy_psi_nm(g) - entanglement_entropy(&s)?).abs());
        }
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let z = Complex64::default();
        let s = build_superposition(&SuperpositionSpec::new(3, vec![h, h, z, z], g, vec![0.0; 4])?)?;
        two.record((entropy_two_component(g) - entanglement_entropy(&s)?).abs());
        offset.record((entropy_two_component(g) - entropy_psi_nm(g) - 1.0).abs());
        for n in 1..=MAX_N {
            if let Ok(e) = entropy_equal_weight(n, g) {
                let s = build_superposition(&SuperpositionSpec::equal_weight(n, g))?;
                equal.record((e - entanglement_entropy(&s)?).abs());
            }
        }
    }
    for n in 1..=MAX_N {
        maximum.record((entropy_equal_weight(n, 0.0)? - f64::from(n + 1).log2()).abs());
    }
    Ok(vec![basis, two, offset, equal, maximum])
}

fn correlation_suite() -> Result<Vec<Check>> {
    let mut closed = Check::new("correlations", "correlation closed form vs operator", 1e-10);
    let mut real = Check::new("correlations", "operator correlation is real", 1e-12);
    let mut bounded = Check::new("correlations", "|E| <= 1", 1e-10);
    let mut gate = Check::new(
        "correlations",
        "sin-sin term gated on |N - 2m| = 1 vs operator",
        1e-10,
    )
    .diagnostic();

    for (p, s) in grid_states() {
        for &ta in &AXIS_ANGLES {
            for &tb in &AXIS_ANGLES {
                let (a, b) = (Axis::polar(ta), Axis::polar(tb));
                let z = matrix_element(&s, &s, a, b);
                real.record(z.im.abs());
                bounded.record((z.re.abs() - 1.0).max(0.0));
                closed.record((correlation_psi_nm(&p, ta, tb)? - z.re).abs());
                gate.record((correlation_psi_nm_adjacent_gate(&p, ta, tb)? - z.re).abs());
            }
        }
    }
    for s in sample_states(40, 8, 8) {
        for &ta in &AXIS_ANGLES {
            for &tb in &AXIS_ANGLES {
                let e = correlation(&s, Axis::new(ta, 0.3 * ta), Axis::new(tb, -tb))?;
                bounded.record((e.abs() - 1.0).max(0.0));
            }
        }
    }
    Ok(vec![closed, real, bounded, gate])
}

fn bell_suite() -> Result<Vec<Check>> {
    let mut slice = Check::new("bell", "slice closed form vs operator", 1e-10);
    let mut balanced = Check::new("bell", "N = 2m slice equals 2 cos(theta_b)", 1e-10);
    let mut extremum = Check::new("bell", "slice value at -atan K has magnitude 2 sqrt(1+K^2)", 1e-10);
    let mut tsirelson = Check::new("bell", "|<B>| <= 2 sqrt 2", 0.0);
    let mut product = Check::new("bell", "|<B>| <= 2 on product states", 0.0);

    let slice_angles: Vec<f64> = (0..16).map(|k| -PI + PI * f64::from(k) / 8.0).collect();
    for (p, s) in grid_states() {
        for &tb in &slice_angles {
            let op = bell_expectation(&s, &BellAngles::slice(tb))?;
            slice.record((bell_psi_nm(&p, tb)? - op).abs());
            if p.is_balanced() {
                balanced.record((op - 2.0 * tb.cos()).abs());
            }
        }
        if parity_partners(p.n - p.m, p.m) {
            let tb = bell_max_slice_angle(p.theta, p.gamma);
            let op = bell_expectation(&s, &BellAngles::slice(tb))?;
            extremum.record((op.abs() - bell_max_psi_nm(p.theta, p.gamma)).abs());
        }
    }
    let settings: Vec<BellAngles> = (0..20)
        .map(|k| {
            let x = f64::from(k);
            BellAngles {
                a: Axis::new(0.3 * x, 0.1 * x),
                a_prime: Axis::new(1.7 + 0.2 * x, -0.4 * x),
                b: Axis::new(-0.8 + 0.5 * x, 0.7),
                b_prime: Axis::new(2.2 - 0.3 * x, 0.25 * x),
            }
        })
        .collect();
    for s in sample_states(60, 8, 6) {
        for angles in &settings {
            tsirelson.record_bool(tsirelson_check(bell_expectation(&s, angles)?));
        }
    }
    for n1 in 0..5 {
        for n2 in 0..5 {
            let s = TwoModeState::basis(n1, n2);
            for angles in &settings {
                product.record_bool(bell_expectation(&s, angles)?.abs() <= CLASSICAL_BOUND + 1e-9);
            }
        }
    }
    Ok(vec![slice, balanced, extremum, tsirelson, product])
}

fn two_component_state(alpha0: Complex64, alpha1: Complex64, gamma: f64, theta0: f64, theta1: f64) -> Result<TwoModeState> {
    let z = Complex64::default();
    build_superposition(&SuperpositionSpec::new(
        3,
        vec![alpha0, alpha1, z, z],
        gamma,
        vec![theta0, theta1, 0.0, 0.0],
    )?)
}

/// Coefficient pairs of the two-component check grid.
pub fn two_component_alphas() -> Vec<(Complex64, Complex64)> {
    let c = Complex64::new;
    vec![
        (c(1.0, 0.0), c(1.0, 0.0)),
        (c(1.0, 0.0), c(0.0, 0.0)),
        (c(0.0, 0.0), c(1.0, 0.0)),
        (c(0.6, 0.0), c(0.0, 0.8)),
        (c(1.0, 0.5), c(-0.3, 0.9)),
        (c(2.0, 0.0), c(-1.0, 0.0)),
    ]
}

fn two_component_suite() -> Result<Vec<Check>> {
    let mut oracle = Check::new("two-component", "two-component slice closed form vs operator", 1e-10);
    let phases = [0.0, FRAC_PI_3, FRAC_PI_2, PI];
    let angles = [-FRAC_PI_2, -FRAC_PI_4, 0.0, 0.4, FRAC_PI_4, 2.0];
    for (a0, a1) in two_component_alphas() {
        for &g in &GAMMAS {
            for &t0 in &phases {
                for &t1 in &phases {
                    let s = two_component_state(a0, a1, g, t0, t1)?;
                    for &tb in &angles {
                        let op = bell_expectation(&s, &BellAngles::slice(tb))?;
                        oracle.record((bell_two_component(a0, a1, g, t0, t1, tb)? - op).abs());
                    }
                }
            }
        }
    }
    let one = Complex64::new(1.0, 0.0);
    let mut equal_phase = Check::new("two-component", "theta1 = theta0 reaches -2 sqrt 2 at theta_b = -pi/4", 1e-10);
    for &g in &GAMMAS {
        let s = two_component_state(one, one, g, 0.5, 0.5)?;
        equal_phase.record((bell_expectation(&s, &BellAngles::slice(-FRAC_PI_4))? + 2.0 * 2f64.sqrt()).abs());
    }
    let mut opposite = Check::new(
        "two-component",
        "theta1 - theta0 = pi, gamma = pi/2 reaches -2 sqrt 2 at theta_b = pi/4",
        1e-10,
    );
    let s = two_component_state(one, one, FRAC_PI_2, 0.0, PI)?;
    opposite.record((bell_expectation(&s, &BellAngles::slice(FRAC_PI_4))? + 2.0 * 2f64.sqrt()).abs());
    Ok(vec![oracle, equal_phase, opposite])
}

fn optimizer_suite() -> Result<Vec<Check>> {
    let mut bound = Check::new("optimizer", "optimum passes the Tsirelson check", 0.0);
    let mut beats_slice = Check::new("optimizer", "optimum >= best slice value", 1e-6);
    let mut partner = Check::new("optimizer", "optimum >= 2 sqrt(1+K^2) for parity-partner states", 1e-6);
    let mut classical = Check::new("optimizer", "optimum <= 2 for product states", 1e-6);

    for (p, s) in grid_states() {
        let r = optimize_bell(&s, false)?;
        bound.record_bool(tsirelson_check(r.value));
        let best_slice = scan_slice(&s, 72)?.iter().map(|(_, v)| v.abs()).fold(0.0, f64::max);
        beats_slice.record((best_slice - r.magnitude).max(0.0));
        if parity_partners(p.n - p.m, p.m) {
            partner.record((bell_max_psi_nm(p.theta, p.gamma) - r.magnitude).max(0.0));
        }
        if p.is_balanced() || p.gamma.sin().abs() < 1e-12 || p.gamma.cos().abs() < 1e-12 {
            classical.record((r.magnitude - CLASSICAL_BOUND).max(0.0));
        }
    }
    Ok(vec![bound, beats_slice, partner, classical])
}

/// `<psi_Nm| S_ta (x) S_tb |psi_Nm'>` by operator application.
pub fn cross_correlation_oracle(
    m: u32,
    m_prime: u32,
    n: u32,
    gamma: f64,
    thetas: &[f64],
    theta_a: f64,
    theta_b: f64,
) -> Result<Complex64> {
    let bra = build_psi_nm(&PsiNmParams::new(n, m, gamma, thetas[m as usize])?)?;
    let ket = build_psi_nm(&PsiNmParams::new(n, m_prime, gamma, thetas[m_prime as usize])?)?;
    Ok(matrix_element(&bra, &ket, Axis::polar(theta_a), Axis::polar(theta_b)))
}

/// One literal-vs-operator comparison of the cross-correlation `E_mm'`.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossCorrelationRow {
    pub m: u32,
    pub m_prime: u32,
    pub gamma: f64,
    pub thetas: Vec<f64>,
    pub theta_a: f64,
    pub theta_b: f64,
    pub literal: Complex64,
    pub oracle: Complex64,
}

impl CrossCorrelationRow {
    pub fn deviation(&self) -> f64 {
        (self.literal - self.oracle).norm()
    }
}

/// Literal cross-correlation against the operator value for every `(m, m')`
/// pair with `N = 3`.
pub fn cross_correlation_report() -> Result<Vec<CrossCorrelationRow>> {
    let n = 3;
    let phase_sets = [vec![0.0; 4], vec![0.0, FRAC_PI_3, FRAC_PI_2, PI], vec![0.4, 1.1, -0.7, 2.0]];
    let angles = [0.0, FRAC_PI_4, FRAC_PI_2, -FRAC_PI_4];
    let mut rows = Vec::new();
    for m in 0..=n {
        for mp in 0..=n {
            for &g in &[FRAC_PI_8, FRAC_PI_4, FRAC_PI_3] {
                for thetas in &phase_sets {
                    for &ta in &angles {
                        for &tb in &angles {
                            rows.push(CrossCorrelationRow {
                                m,
                                m_prime: mp,
                                gamma: g,
                                thetas: thetas.clone(),
                                theta_a: ta,
                                theta_b: tb,
                                literal: cross_correlation_literal(m, mp, n, g, thetas, ta, tb)?,
                                oracle: cross_correlation_oracle(m, mp, n, g, thetas, ta, tb)?,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(rows)
}

/// Two-component slice value assembled from operator cross-correlations:
/// `sum a_m* a_m' B_mm' / (|a0|^2 + |a1|^2)`.
pub fn two_component_from_cross(
    alpha0: Complex64,
    alpha1: Complex64,
    gamma: f64,
    theta0: f64,
    theta1: f64,
    theta_b: f64,
) -> Result<f64> {
    let alphas = [alpha0, alpha1];
    let thetas = [theta0, theta1, 0.0, 0.0];
    let mut total = Complex64::default();
    for m in 0..2u32 {
        for mp in 0..2u32 {
            let e = |ta: f64, tb: f64| cross_correlation_oracle(m, mp, 3, gamma, &thetas, ta, tb);
            let b = e(0.0, theta_b)? + e(0.0, -theta_b)? + e(FRAC_PI_2, theta_b)? - e(FRAC_PI_2, -theta_b)?;
            total += alphas[m as usize].conj() * alphas[mp as usize] * b;
        }
    }
    Ok(total.re / (alpha0.norm_sqr() + alpha1.norm_sqr()))
}

fn cross_correlation_suite() -> Result<Vec<Check>> {
    let rows = cross_correlation_report()?;
    let mut checks = Vec::new();
    for m in 0..=3 {
        for mp in 0..=3 {
            let mut c = Check::new("cross-correlation", &format!("literal E_{m}{mp} vs operator"), 1e-10).diagnostic();
            for r in rows.iter().filter(|r| r.m == m && r.m_prime == mp) {
                c.record(r.deviation());
            }
            checks.push(c);
        }
    }
    let mut feeds = Check::new("cross-correlation", "operator E_mm' reassemble the two-component Bell value", 1e-10);
    for (a0, a1) in two_component_alphas() {
        for &g in &GAMMAS {
            for &(t0, t1) in &[(0.0, 0.0), (0.0, PI), (0.3, 1.2)] {
                for &tb in &[-FRAC_PI_4, 0.5, FRAC_PI_4] {
                    let assembled = two_component_from_cross(a0, a1, g, t0, t1, tb)?;
                    feeds.record((assembled - bell_two_component(a0, a1, g, t0, t1, tb)?).abs());
                }
            }
        }
    }
    checks.push(feeds);
    Ok(checks)
}
