//! Numerical maximization of `|<B>|` over measurement directions.
//!
//! The search runs on the state's [`CorrelationTensor`], so each objective
//! evaluation costs a few dozen flops. The reported value at the optimum is
//! recomputed with the operator route in [`crate::pseudospin`].

use std::f64::consts::{SQRT_2, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::TwoModeState;
use crate::pseudospin::{bell_expectation, dot, Axis, BellAngles, CorrelationTensor};

pub const TSIRELSON_BOUND: f64 = 2.0 * SQRT_2;
pub const CLASSICAL_BOUND: f64 = 2.0;
/// Coarse grid points per angle over `[0, 2 pi)`.
pub const GRID_POINTS: usize = 24;
pub const MAX_CYCLES: usize = 200;
/// A descent cycle that improves `|<B>|` by less than this ends the search.
pub const CYCLE_TOLERANCE: f64 = 1e-9;
const LINE_TOLERANCE: f64 = 1e-11;
/// Samples per line-search bracket before the golden-section stage.
const LINE_SAMPLES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OptResult {
    pub angles: BellAngles,
    /// Signed `<B>` at the optimum.
    pub value: f64,
    pub magnitude: f64,
    /// Completed descent cycles.
    pub iterations: usize,
    pub converged: bool,
}

/// `|value| <= 2 sqrt 2` up to 1e-9.
pub fn tsirelson_check(value: f64) -> bool {
    value.abs() <= TSIRELSON_BOUND + 1e-9
}

/// Maximum of a function on `[lo, hi]` by golden-section search. Assumes a
/// single local maximum inside the bracket.
pub fn golden_section_max<F>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Maximum on `[lo, hi]`: the best of `LINE_SAMPLES + 1` evenly spaced
/// samples, refined by golden section between its neighbours. The sampling
/// keeps plateaus (where golden section cannot tell which way to go) from
/// hiding a narrow peak.
fn line_max<F>(f: F, lo: f64, hi: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let step = (hi - lo) / LINE_SAMPLES as f64;
    let mut best = (lo, f(lo));
    for k in 1..=LINE_SAMPLES {
        let x = lo + step * k as f64;
        let fx = f(x);
        if fx > best.1 {
            best = (x, fx);
        }
    }
    let refined = golden_section_max(&f, best.0 - step, best.0 + step, LINE_TOLERANCE);
    if refined.1 > best.1 {
        refined
    } else {
        best
    }
}

fn grid_angle(i: usize) -> f64 {
    TAU * i as f64 / GRID_POINTS as f64
}

fn norm(x: [f64; 3]) -> f64 {
    dot(x, x).sqrt()
}

/// `|<B>|` maximized over everything except Alice's direction `c`. Any pair
/// of unit vectors can be written as `a + a' = 2 cos(alpha) c`,
/// `a - a' = 2 sin(alpha) c'` with `c` orthogonal to `c'`. For fixed `c`, the
/// best `c'` is the top eigenvector of `T T^T` in the plane orthogonal to `c`,
/// and `alpha`, `b`, `b'` are explicit. That leaves the smooth profile
/// `2 sqrt(|T^T c|^2 + |T^T c'|^2)`.
///
/// Coordinates are the polar angle and azimuth of `c`. Without azimuths only
/// the polar angle moves and every vector stays in the x-z plane.
struct Profile<'a> {
    t: &'a CorrelationTensor,
    include_phi: bool,
}

type Frame = [f64; 2];

impl Profile<'_> {
    fn coords(&self) -> usize {
        if self.include_phi {
            2
        } else {
            1
        }
    }

    fn frame(&self, x: &Frame) -> ([f64; 3], [f64; 3]) {
        let (st, ct) = x[0].sin_cos();
        let (sp, cp) = x[1].sin_cos();
        let c = [st * cp, st * sp, ct];
        let e1 = [ct * cp, ct * sp, -st];
        if !self.include_phi {
            return (c, e1);
        }
        let e2 = [-sp, cp, 0.0];
        let (l1, l2) = (self.t.left(e1), self.t.left(e2));
        let (a11, a22, a12) = (dot(l1, l1), dot(l2, l2), dot(l1, l2));
        let (ss, cs) = (0.5 * (2.0 * a12).atan2(a11 - a22)).sin_cos();
        (c, [cs * e1[0] + ss * e2[0], cs * e1[1] + ss * e2[1], cs * e1[2] + ss * e2[2]])
    }

    fn targets(&self, x: &Frame) -> ([f64; 3], [f64; 3]) {
        let (c, cp) = self.frame(x);
        let (mut u, mut v) = (self.t.left(c), self.t.left(cp));
        if !self.include_phi {
            u[1] = 0.0;
            v[1] = 0.0;
        }
        (u, v)
    }

    fn value(&self, x: &Frame) -> f64 {
        let (u, v) = self.targets(x);
        2.0 * (dot(u, u) + dot(v, v)).sqrt()
    }

    fn direction(&self, u: [f64; 3]) -> Axis {
        if self.include_phi {
            Axis::from_vector(u)
        } else {
            Axis::polar(u[0].atan2(u[2]))
        }
    }

    fn angles(&self, x: &Frame) -> BellAngles {
        let (c, cp) = self.frame(x);
        let (u, v) = self.targets(x);
        let (p, q) = (norm(u), norm(v));
        let (cos_a, sin_a) = if p + q > 0.0 { (p / p.hypot(q), q / p.hypot(q)) } else { (1.0, 0.0) };
        let mix = |sign: f64| {
            [
                cos_a * c[0] + sign * sin_a * cp[0],
                cos_a * c[1] + sign * sin_a * cp[1],
                cos_a * c[2] + sign * sin_a * cp[2],
            ]
        };
        BellAngles {
            a: self.direction(mix(1.0)),
            a_prime: self.direction(mix(-1.0)),
            b: self.direction(u),
            b_prime: self.direction(v),
        }
    }

    /// Best frame on a grid of 24 points per coordinate. Ties go to the first
    /// point in lexicographic grid order.
    fn coarse(&self) -> Frame {
        let n = GRID_POINTS;
        let cells = n.pow(self.coords() as u32);
        let mut best = (f64::NEG_INFINITY, [0.0; 2]);
        for k in 0..cells {
            let mut x = [0.0; 2];
            let mut rest = k;
            for i in (0..self.coords()).rev() {
                x[i] = grid_angle(rest % n);
                rest /= n;
            }
            let val = self.value(&x);
            if val > best.0 {
                best = (val, x);
            }
        }
        best.1
    }
}

/// Maximizes `|<B>|` over the four polar angles, plus the four azimuths when
/// `include_phi` is set. Deterministic for a given state.
///
/// The search runs over one of Alice's frame directions with everything else
/// solved exactly: a coarse grid, then cyclic coordinate descent with a
/// sampled golden-section line search on each angle.
pub fn optimize_bell(s: &TwoModeState, include_phi: bool) -> Result<OptResult> {
    let t = CorrelationTensor::new(s)?;
    let profile = Profile { t: &t, include_phi };
    let half_width = TAU / GRID_POINTS as f64;

    let mut x = profile.coarse();
    let mut current = profile.value(&x);
    let mut iterations = 0;
    let mut converged = false;
    while iterations < MAX_CYCLES {
        let start = current;
        for i in 0..profile.coords() {
            let line = |xi: f64| {
                let mut y = x;
                y[i] = xi;
                profile.value(&y)
            };
            let (xi, fx) = line_max(line, x[i] - half_width, x[i] + half_width);
            if fx > current {
                x[i] = xi;
                current = fx;
            }
        }
        iterations += 1;
        if current - start < CYCLE_TOLERANCE {
            converged = true;
            break;
        }
    }

    let mut angles = profile.angles(&x);
    for ax in [&mut angles.a, &mut angles.a_prime, &mut angles.b, &mut angles.b_prime] {
        ax.theta = ax.theta.rem_euclid(TAU);
        ax.phi = ax.phi.rem_euclid(TAU);
    }
    let value = bell_expectation(s, &angles)?;
    Ok(OptResult {
        angles,
        value,
        magnitude: value.abs(),
        iterations,
        converged,
    })
}

/// `<B>` along `theta_a = 0, theta_a' = pi/2, theta_b' = -theta_b` at
/// `theta_b = 2 pi k / grid_points`, `k = 0..grid_points`.
pub fn scan_slice(s: &TwoModeState, grid_points: usize) -> Result<Vec<(f64, f64)>> {
    if grid_points < 2 {
        return Err(Error::InvalidParams(format!(
            "slice scan needs at least 2 points, got {grid_points}"
        )));
    }
    (0..grid_points)
        .map(|k| {
            let tb = TAU * k as f64 / grid_points as f64;
            bell_expectation(s, &BellAngles::slice(tb)).map(|v| (tb, v))
        })
        .collect()
}
