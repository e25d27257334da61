//! Switching time, field sweeps and the optimal input field.
//!
//! `t0` is the first local maximum of `S_zA(t)` after the field is switched
//! on. It is bracketed by a uniform scan with at least
//! [`MIN_SAMPLES_PER_PERIOD`] samples per period `2π/√(h_a² + 4v²)` and then
//! refined by golden-section search.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::Serialize;

use crate::eigen::{diagonalize, ground_state};
use crate::error::{Error, Result};
use crate::evolution::{evolve, probabilities, project, spin_projections, SpectralState, StateVector};
use crate::golden;
use crate::model::{build_hamiltonian, ModelParams};

pub const MIN_SAMPLES_PER_PERIOD: f64 = 40.0;

/// Bracket width at which the `t0` refinement stops.
pub const T0_TOLERANCE: f64 = 1e-9;

/// Number of coarse samples across the field bracket in [`optimize_field`].
pub const FIELD_SCAN_POINTS: usize = 96;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    /// Give up if no maximum is found before this time.
    pub t_max: f64,
    /// Coarse scan step; `None` uses one fortieth of the period estimate.
    pub dt_scan: Option<f64>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { t_max: 400.0, dt_scan: None }
    }
}

/// Result at one `(u/v, h_a/v)` point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SwitchingReport {
    pub u_over_v: f64,
    pub h_over_v: f64,
    pub t0: f64,
    pub s_za_at_t0: f64,
    pub p_err: f64,
}

/// A sweep point that either produced a report or failed.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepEntry {
    pub u_over_v: f64,
    pub h_over_v: f64,
    pub outcome: Result<SwitchingReport>,
}

impl SweepEntry {
    pub fn status(&self) -> &'static str {
        match &self.outcome {
            Ok(_) => "ok",
            Err(Error::NoDynamics) => "no_dynamics",
            Err(Error::HorizonExceeded { .. }) => "horizon_exceeded",
            Err(_) => "error",
        }
    }
}

/// The zero-field ground state propagated under the field-on Hamiltonian.
#[derive(Debug, Clone)]
pub struct Quench {
    pub params: ModelParams,
    pub spectral: SpectralState,
}

impl Quench {
    /// Prepares the ground state at `h_a = 0` and expands it in the
    /// eigenstates at `params.h_a`.
    pub fn new(params: &ModelParams) -> Result<Self> {
        let initial_h = build_hamiltonian(&params.with_field(0.0))?;
        let initial = ground_state(&diagonalize(&initial_h)?)?;
        let es = diagonalize(&build_hamiltonian(params)?)?;
        Ok(Self { params: *params, spectral: project(&initial, &es)? })
    }

    pub fn state(&self, t: f64) -> Result<StateVector> {
        evolve(&self.spectral, t)
    }

    pub fn s_za(&self, t: f64) -> f64 {
        evolve(&self.spectral, t).map(|sv| spin_projections(&sv).s_za).unwrap_or(f64::NAN)
    }

    /// Period estimate `2π/√(h_a² + 4v²)`.
    pub fn period_estimate(&self) -> f64 {
        TAU / self.params.h_a.hypot(2.0 * self.params.v)
    }
}

/// First maximum of `S_zA(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstMaximum {
    pub t0: f64,
    pub s_za: f64,
}

fn scan_step(quench: &Quench, scan: &ScanOptions) -> Result<f64> {
    let period = quench.period_estimate();
    let limit = period / MIN_SAMPLES_PER_PERIOD;
    let dt = scan.dt_scan.unwrap_or(limit);
    if !(dt.is_finite() && dt > 0.0) || dt > limit * (1.0 + 1e-12) {
        return Err(Error::InvalidScan(format!(
            "scan step {dt} must be in (0, {limit}] for period estimate {period}"
        )));
    }
    if !(scan.t_max.is_finite() && scan.t_max >= period) {
        return Err(Error::InvalidScan(format!(
            "t_max {} must cover the period estimate {period}",
            scan.t_max
        )));
    }
    Ok(dt)
}

fn first_maximum(quench: &Quench, scan: &ScanOptions) -> Result<FirstMaximum> {
    if quench.params.h_a == 0.0 {
        return Err(Error::NoDynamics);
    }
    let dt = scan_step(quench, scan)?;
    let mut before = quench.s_za(0.0);
    let mut peak = quench.s_za(dt);
    let mut i = 2_usize;
    loop {
        let t = i as f64 * dt;
        if t > scan.t_max {
            return Err(Error::HorizonExceeded { t_max: scan.t_max });
        }
        let after = quench.s_za(t);
        if peak > before && peak >= after {
            let coarse_t = (i - 1) as f64 * dt;
            let refined = golden::maximize(|x| quench.s_za(x), t - 2.0 * dt, t, T0_TOLERANCE);
            return Ok(if refined.value >= peak {
                FirstMaximum { t0: refined.x, s_za: refined.value }
            } else {
                FirstMaximum { t0: coarse_t, s_za: peak }
            });
        }
        before = peak;
        peak = after;
        i += 1;
    }
}

/// Time and height of the first maximum of `S_zA(t)`.
pub fn find_t0(params: &ModelParams, scan: &ScanOptions) -> Result<FirstMaximum> {
    params.validate()?;
    if params.h_a == 0.0 {
        return Err(Error::NoDynamics);
    }
    first_maximum(&Quench::new(params)?, scan)
}

/// `1 − p₁`, the chance of not reading `|↑,↓⟩`.
pub fn error_probability(sv: &StateVector) -> f64 {
    (1.0 - probabilities(sv).p[0]).clamp(0.0, 1.0)
}

/// Full report at dimensionless `(u/v, h_a/v)`.
pub fn switching_report(u_over_v: f64, h_over_v: f64, scan: &ScanOptions) -> Result<SwitchingReport> {
    let params = ModelParams::dimensionless(u_over_v, h_over_v)?;
    if h_over_v == 0.0 {
        return Err(Error::NoDynamics);
    }
    let quench = Quench::new(&params)?;
    let max = first_maximum(&quench, scan)?;
    let p_err = error_probability(&quench.state(max.t0)?);
    Ok(SwitchingReport { u_over_v, h_over_v, t0: max.t0, s_za_at_t0: max.s_za, p_err })
}

/// One report per field value, in grid order. Points are evaluated in
/// parallel; each is a pure function of its inputs so the output matches a
/// serial run bit for bit.
pub fn sweep_field(u_over_v: f64, h_grid: &[f64], scan: &ScanOptions) -> Vec<SweepEntry> {
    h_grid
        .par_iter()
        .map(|&h_over_v| SweepEntry {
            u_over_v,
            h_over_v,
            outcome: switching_report(u_over_v, h_over_v, scan),
        })
        .collect()
}

/// Uniform grid `start, start + step, …` up to `stop` (inclusive within
/// half a step).
pub fn linear_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite() && step > 0.0 && stop >= start) {
        return Err(Error::InvalidScan(format!("bad grid [{start}, {stop}] step {step}")));
    }
    let n = ((stop - start) / step + 0.5).floor() as usize;
    Ok((0..=n).map(|i| start + i as f64 * step).collect())
}

fn field_samples(lo: f64, hi: f64) -> Vec<f64> {
    let n = FIELD_SCAN_POINTS;
    if lo > 0.0 {
        let ratio = (hi / lo).ln() / (n - 1) as f64;
        (0..n).map(|i| lo * (ratio * i as f64).exp()).collect()
    } else {
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
    }
}

/// Field that maximizes `S_zA(t0)` at fixed `u/v`.
///
/// The bracket is sampled on [`FIELD_SCAN_POINTS`] points (log-spaced when
/// `lo > 0`); the best interior sample and its neighbours seed a
/// golden-section search to width `tol`. Ties go to the smaller field.
pub fn optimize_field(
    u_over_v: f64,
    bracket: (f64, f64),
    tol: f64,
    scan: &ScanOptions,
) -> Result<SwitchingReport> {
    let (lo, hi) = bracket;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidBracket { lo, hi });
    }
    if !(tol >= 1e-6 && tol.is_finite()) {
        return Err(Error::InvalidScan(format!("field tolerance {tol} must be >= 1e-6")));
    }
    let height = |h: f64| {
        switching_report(u_over_v, h, scan).map(|r| r.s_za_at_t0).unwrap_or(f64::NEG_INFINITY)
    };
    let samples = field_samples(lo, hi);
    let heights: Vec<f64> = samples.par_iter().map(|&h| height(h)).collect();
    let mut best = 0;
    for (i, &s) in heights.iter().enumerate() {
        if s > heights[best] {
            best = i;
        }
    }
    if best == 0 || best == samples.len() - 1 || !heights[best].is_finite() {
        return Err(Error::InvalidBracket { lo, hi });
    }
    let refined = golden::maximize(height, samples[best - 1], samples[best + 1], tol);
    let h_opt = if refined.value > heights[best] { refined.x } else { samples[best] };
    switching_report(u_over_v, h_opt, scan)
}

/// Largest `S_zA(t)` on a uniform grid over `[0, t_max]`, regardless of
/// whether it is the first maximum.
pub fn global_maximum(params: &ModelParams, t_max: f64, dt: f64) -> Result<FirstMaximum> {
    let quench = Quench::new(params)?;
    let n = (t_max / dt).ceil() as usize;
    let mut best = FirstMaximum { t0: 0.0, s_za: quench.s_za(0.0) };
    for i in 1..=n {
        let t = i as f64 * dt;
        let s = quench.s_za(t);
        if s > best.s_za {
            best = FirstMaximum { t0: t, s_za: s };
        }
    }
    Ok(best)
}
