//! Zero-Doppler radar geometry: orbit interpolation, radar<->ground mapping
//! and direct geocoding of complex rasters onto a map grid.

pub mod earth;
pub mod geocode;
pub mod grid;
pub mod orbit;
mod doppler;

pub use doppler::{
    ground_speed, heading_incidence, radar_to_ground, surface_intersect, zero_doppler_solve,
    ZeroDopplerSolution,
};
pub use geocode::geocode;
pub use grid::{GeocodedRaster, MapGrid};
pub use orbit::{OrbitModel, StateVector};

use serde::{Deserialize, Serialize};

/// C-band radar wavelength shared by both beams, meters.
pub const WAVELENGTH: f64 = 0.055_466;
/// Nominal pulse repetition frequency, Hz.
pub const NOMINAL_PRF: f64 = 1_650.0;

#[derive(Debug, thiserror::Error)]
pub enum GeometryError {
    #[error("time {t:.3} s outside orbit validity [{start:.3}, {end:.3}] s")]
    TimeOutOfRange { t: f64, start: f64, end: f64 },
    #[error("zero-Doppler iteration did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("range sphere does not intersect the surface")]
    NoIntersection,
    #[error("map grid does not overlap the raster footprint")]
    GridDisjoint,
    #[error("invalid orbit model: {0}")]
    InvalidOrbit(String),
    #[error("invalid radar geometry: {0}")]
    InvalidGeometry(String),
}

/// The two alternating beams, near range and far range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Beam {
    WV1,
    WV2,
}

impl Beam {
    /// Range sampling rate, Hz.
    pub fn range_sampling_rate(self) -> f64 {
        match self {
            Beam::WV1 => 100.1e6,
            Beam::WV2 => 54.6e6,
        }
    }

    /// Slant-range pixel spacing c / (2 fs), meters.
    pub fn range_spacing(self) -> f64 {
        earth::SPEED_OF_LIGHT / (2.0 * self.range_sampling_rate())
    }
}

impl std::fmt::Display for Beam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Beam::WV1 => write!(f, "WV1"),
            Beam::WV2 => write!(f, "WV2"),
        }
    }
}

/// Per-vignette imaging metadata. Azimuth timing is seconds past the orbit
/// model epoch of the same sidecar.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadarGeometry {
    pub azimuth_start: f64,
    pub azimuth_interval: f64,
    pub prf: f64,
    pub near_range: f64,
    pub range_spacing: f64,
    pub wavelength: f64,
    pub n_lines: usize,
    pub n_samples: usize,
    pub beam: Beam,
}

impl RadarGeometry {
    pub fn validate(&self) -> Result<(), GeometryError> {
        if (self.wavelength - WAVELENGTH).abs() > 1e-6 {
            return Err(GeometryError::InvalidGeometry(format!(
                "wavelength {} m, expected {WAVELENGTH} m",
                self.wavelength
            )));
        }
        if (self.prf - NOMINAL_PRF).abs() > 0.10 * NOMINAL_PRF {
            return Err(GeometryError::InvalidGeometry(format!(
                "prf {} Hz outside 10% of {NOMINAL_PRF} Hz",
                self.prf
            )));
        }
        let nominal = self.beam.range_spacing();
        if (self.range_spacing - nominal).abs() > 0.01 * nominal {
            return Err(GeometryError::InvalidGeometry(format!(
                "range spacing {} m outside 1% of {} beam nominal {nominal:.4} m",
                self.range_spacing, self.beam
            )));
        }
        if (self.azimuth_interval * self.prf - 1.0).abs() > 1e-6 {
            return Err(GeometryError::InvalidGeometry(
                "azimuth_interval must equal 1/prf".into(),
            ));
        }
        if self.n_lines == 0 || self.n_samples == 0 {
            return Err(GeometryError::InvalidGeometry("empty raster dimensions".into()));
        }
        Ok(())
    }

    pub fn line_time(&self, line: f64) -> f64 {
        self.azimuth_start + line * self.azimuth_interval
    }

    pub fn sample_range(&self, sample: f64) -> f64 {
        self.near_range + sample * self.range_spacing
    }

    pub fn mid_time(&self) -> f64 {
        self.line_time(0.5 * (self.n_lines as f64 - 1.0))
    }
}
