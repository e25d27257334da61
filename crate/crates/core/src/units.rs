//! Conversion of dimensionless results to seconds and Tesla.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::switching::SwitchingReport;

/// Reduced Planck constant in meV·s.
pub const HBAR_MEV_S: f64 = 6.582119569e-13;

/// Bohr magneton in meV/T.
pub const BOHR_MAGNETON_MEV_PER_T: f64 = 5.788381806e-2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalUnits {
    /// Hopping energy in meV.
    pub v_mev: f64,
    /// Landé g factor.
    pub g_factor: f64,
}

impl PhysicalUnits {
    pub fn new(v_mev: f64, g_factor: f64) -> Result<Self> {
        if !(v_mev.is_finite() && v_mev > 0.0) {
            return Err(Error::InvalidUnits(format!("v_mev must be > 0, got {v_mev}")));
        }
        if !(g_factor.is_finite() && g_factor != 0.0) {
            return Err(Error::InvalidUnits(format!("g factor must be nonzero, got {g_factor}")));
        }
        Ok(Self { v_mev, g_factor })
    }

    /// Time in units of `ħ/v` to seconds.
    pub fn seconds(&self, t: f64) -> f64 {
        t * HBAR_MEV_S / self.v_mev
    }

    /// Field energy in units of `v` to Tesla.
    pub fn tesla(&self, h_over_v: f64) -> f64 {
        h_over_v * self.v_mev / (self.g_factor * BOHR_MAGNETON_MEV_PER_T)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalReport {
    pub t0_seconds: f64,
    pub h_a_tesla: f64,
}

pub fn to_physical(report: &SwitchingReport, units: &PhysicalUnits) -> Result<PhysicalReport> {
    let units = PhysicalUnits::new(units.v_mev, units.g_factor)?;
    if !(report.t0.is_finite() && report.h_over_v.is_finite()) {
        return Err(Error::InvalidUnits("report holds non-finite values".into()));
    }
    Ok(PhysicalReport {
        t0_seconds: units.seconds(report.t0),
        h_a_tesla: units.tesla(report.h_over_v),
    })
}
