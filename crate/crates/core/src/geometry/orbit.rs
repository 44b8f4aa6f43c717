//! Orbit state-vector model and interpolation.

use chrono::{DateTime, Utc};
use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use super::GeometryError;

/// One orbit sample: ECEF position/velocity at `t` seconds past the model epoch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    pub t: f64,
    pub position: [f64; 3],
    pub velocity: [f64; 3],
}

impl StateVector {
    pub fn pos(&self) -> Vector3<f64> {
        Vector3::from(self.position)
    }
    pub fn vel(&self) -> Vector3<f64> {
        Vector3::from(self.velocity)
    }
}

/// Time-ordered orbit state vectors around one acquisition.
///
/// All timing fields elsewhere (azimuth start, plan times) are seconds past
/// `epoch`, so a dataset shares a single time origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitModel {
    pub epoch: DateTime<Utc>,
    pub states: Vec<StateVector>,
}

pub const MAX_STATE_SPACING: f64 = 30.0;

impl OrbitModel {
    pub fn new(epoch: DateTime<Utc>, states: Vec<StateVector>) -> Result<Self, GeometryError> {
        let model = OrbitModel { epoch, states };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        if self.states.len() < 4 {
            return Err(GeometryError::InvalidOrbit(format!(
                "need at least 4 state vectors, got {}",
                self.states.len()
            )));
        }
        for w in self.states.windows(2) {
            let dt = w[1].t - w[0].t;
            if dt <= 0.0 {
                return Err(GeometryError::InvalidOrbit(
                    "state vector times must be strictly increasing".into(),
                ));
            }
            if dt > MAX_STATE_SPACING {
                return Err(GeometryError::InvalidOrbit(format!(
                    "state vector spacing {dt:.1} s exceeds {MAX_STATE_SPACING} s"
                )));
            }
        }
        // sanity: interpolated speed at interval midpoints stays within 1% of
        // the neighbouring state-vector speeds
        let (t0, t1) = self.valid_interval();
        for w in self.states.windows(2) {
            let tm = 0.5 * (w[0].t + w[1].t);
            if tm < t0 || tm > t1 {
                continue;
            }
            let (_, v) = self.interpolate(tm)?;
            let ref_speed = 0.5 * (w[0].vel().norm() + w[1].vel().norm());
            if (v.norm() - ref_speed).abs() > 0.01 * ref_speed {
                return Err(GeometryError::InvalidOrbit(format!(
                    "interpolated speed off by >1% at t={tm:.1}"
                )));
            }
        }
        Ok(())
    }

    /// Interpolation domain. The first and last intervals are excluded so the
    /// four state vectors bracketing any query always exist.
    pub fn valid_interval(&self) -> (f64, f64) {
        let n = self.states.len();
        (self.states[1].t, self.states[n - 2].t)
    }

    pub fn time_of(&self, stamp: DateTime<Utc>) -> f64 {
        (stamp - self.epoch).num_microseconds().map(|us| us as f64 * 1e-6).unwrap_or_else(|| {
            (stamp - self.epoch).num_milliseconds() as f64 * 1e-3
        })
    }

    pub fn stamp_of(&self, t: f64) -> DateTime<Utc> {
        self.epoch + chrono::Duration::microseconds((t * 1e6).round() as i64)
    }

    /// Position and velocity at `t` seconds past the epoch.
    ///
    /// Position uses cubic Hermite on the bracketing interval; velocity uses
    /// cubic Hermite with accelerations finite-differenced from the four
    /// bracketing state vectors. Exact at the knots.
    pub fn interpolate(&self, t: f64) -> Result<(Vector3<f64>, Vector3<f64>), GeometryError> {
        let (t0, t1) = self.valid_interval();
        if t < t0 || t > t1 {
            return Err(GeometryError::TimeOutOfRange { t, start: t0, end: t1 });
        }
        let i = match self.states.binary_search_by(|s| s.t.partial_cmp(&t).unwrap()) {
            Ok(k) => k.min(self.states.len() - 2),
            Err(k) => k - 1,
        };
        let i = i.clamp(1, self.states.len() - 3);
        let (sa, sb) = (&self.states[i], &self.states[i + 1]);
        let h = sb.t - sa.t;
        let u = (t - sa.t) / h;

        let h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
        let h10 = u * (1.0 - u) * (1.0 - u);
        let h01 = u * u * (3.0 - 2.0 * u);
        let h11 = u * u * (u - 1.0);
        let pos = sa.pos() * h00 + sa.vel() * (h10 * h) + sb.pos() * h01 + sb.vel() * (h11 * h);

        // accelerations from centered differences over the bracketing four
        let (sp, sn) = (&self.states[i - 1], &self.states[i + 2]);
        let acc_a = (sb.vel() - sp.vel()) / (sb.t - sp.t);
        let acc_b = (sn.vel() - sa.vel()) / (sn.t - sa.t);
        let vel = sa.vel() * h00 + acc_a * (h10 * h) + sb.vel() * h01 + acc_b * (h11 * h);

        Ok((pos, vel))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Analytic circular orbit used as the interpolation oracle.
    pub(crate) fn circular_orbit_state(radius: f64, omega: f64, t: f64) -> (Vector3<f64>, Vector3<f64>) {
        let a = omega * t;
        let pos = Vector3::new(radius * a.cos(), radius * a.sin(), 0.0);
        let vel = Vector3::new(-radius * omega * a.sin(), radius * omega * a.cos(), 0.0);
        (pos, vel)
    }

    fn sample_orbit(spacing: f64, count: usize) -> OrbitModel {
        let radius = 7_064_000.0;
        let speed = 7_500.0;
        let omega = speed / radius;
        let states = (0..count)
            .map(|k| {
                let t = k as f64 * spacing;
                let (p, v) = circular_orbit_state(radius, omega, t);
                StateVector { t, position: p.into(), velocity: v.into() }
            })
            .collect();
        OrbitModel::new(Utc::now(), states).unwrap()
    }

    #[test]
    fn exact_at_knots() {
        let orbit = sample_orbit(10.0, 8);
        for s in &orbit.states[1..orbit.states.len() - 1] {
            let (p, v) = orbit.interpolate(s.t).unwrap();
            assert_relative_eq!((p - s.pos()).norm(), 0.0, epsilon = 1e-9);
            assert_relative_eq!((v - s.vel()).norm(), 0.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn circular_orbit_within_a_millimeter() {
        let radius = 7_064_000.0;
        let speed = 7_500.0;
        let omega = speed / radius;
        let orbit = sample_orbit(10.0, 10);
        let (t0, t1) = orbit.valid_interval();
        let mut worst_p = 0.0f64;
        let mut worst_v = 0.0f64;
        let steps = 200;
        for k in 0..=steps {
            let t = t0 + (t1 - t0) * k as f64 / steps as f64;
            let (p, v) = orbit.interpolate(t).unwrap();
            let (pe, ve) = circular_orbit_state(radius, omega, t);
            worst_p = worst_p.max((p - pe).norm());
            worst_v = worst_v.max((v - ve).norm());
        }
        assert!(worst_p < 1e-3, "position error {worst_p:.2e} m");
        assert!(worst_v < 1e-3, "velocity error {worst_v:.2e} m/s");
    }

    #[test]
    fn out_of_range_is_an_error() {
        let orbit = sample_orbit(10.0, 6);
        let (t0, t1) = orbit.valid_interval();
        assert!(matches!(
            orbit.interpolate(t0 - 1.0),
            Err(GeometryError::TimeOutOfRange { .. })
        ));
        assert!(matches!(
            orbit.interpolate(t1 + 1.0),
            Err(GeometryError::TimeOutOfRange { .. })
        ));
    }

    #[test]
    fn rejects_sparse_and_short_models() {
        let radius = 7_064_000.0;
        let omega = 7500.0 / radius;
        let mk = |spacing: f64, count: usize| {
            let states: Vec<_> = (0..count)
                .map(|k| {
                    let t = k as f64 * spacing;
                    let (p, v) = circular_orbit_state(radius, omega, t);
                    StateVector { t, position: p.into(), velocity: v.into() }
                })
                .collect();
            OrbitModel::new(Utc::now(), states)
        };
        assert!(mk(10.0, 3).is_err());
        assert!(mk(45.0, 6).is_err());
        assert!(mk(10.0, 6).is_ok());
    }
}
