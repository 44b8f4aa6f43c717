//! Zero-Doppler timing solves and radar-to-ground intersection.

use nalgebra::Vector3;

use super::earth::{ecef_to_lonlat, enu_basis, inflated_axes};
use super::orbit::OrbitModel;
use super::{GeometryError, RadarGeometry};

pub const MAX_NEWTON_ITER: usize = 25;
pub const DOPPLER_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroDopplerSolution {
    pub t_az: f64,
    pub slant_range: f64,
}

/// Finds the azimuth time where the line of sight to `ground` is
/// perpendicular to the platform velocity, by Newton iteration on
/// f(t) = V(t) . (X - P(t)).
pub fn zero_doppler_solve(
    orbit: &OrbitModel,
    ground: &Vector3<f64>,
    t_guess: f64,
) -> Result<ZeroDopplerSolution, GeometryError> {
    let (t0, t1) = orbit.valid_interval();
    let mut t = t_guess.clamp(t0, t1);
    for _ in 0..MAX_NEWTON_ITER {
        let (pos, vel) = orbit.interpolate(t)?;
        let los = ground - pos;
        let range = los.norm();
        let f = vel.dot(&los);
        if f.abs() < DOPPLER_TOL * vel.norm() * range {
            return Ok(ZeroDopplerSolution { t_az: t, slant_range: range });
        }
        // acceleration from a centered velocity difference
        let eps = 0.25_f64.min((t1 - t0) / 4.0);
        let (ta, tb) = ((t - eps).max(t0), (t + eps).min(t1));
        let (_, va) = orbit.interpolate(ta)?;
        let (_, vb) = orbit.interpolate(tb)?;
        let acc = (vb - va) / (tb - ta);
        let fp = acc.dot(&los) - vel.norm_squared();
        t = (t - f / fp).clamp(t0, t1);
    }
    Err(GeometryError::NoConvergence(MAX_NEWTON_ITER))
}

/// Intersects the range sphere at azimuth time `t` with the constant-height
/// surface, on the right-looking side of the track.
pub fn surface_intersect(
    orbit: &OrbitModel,
    t: f64,
    slant_range: f64,
    height: f64,
) -> Result<Vector3<f64>, GeometryError> {
    let (pos, vel) = orbit.interpolate(t)?;
    let (a, b) = inflated_axes(height);
    let v_hat = vel.normalize();
    let down = -pos;
    let down = (down - v_hat * down.dot(&v_hat)).normalize();
    let right = down.cross(&v_hat);

    let surf_err = |psi: f64| -> f64 {
        let x = pos + (down * psi.cos() + right * psi.sin()) * slant_range;
        (x.x * x.x + x.y * x.y) / (a * a) + (x.z * x.z) / (b * b) - 1.0
    };

    // bracket the first surface crossing away from nadir
    let step = 2.0_f64.to_radians();
    let mut lo = 0.0;
    let mut hi = None;
    let mut g_lo = surf_err(lo);
    if g_lo > 0.0 {
        return Err(GeometryError::NoIntersection);
    }
    let mut psi = step;
    while psi < 89.0_f64.to_radians() {
        let g = surf_err(psi);
        if g >= 0.0 {
            hi = Some(psi);
            break;
        }
        lo = psi;
        g_lo = g;
        psi += step;
    }
    let mut hi = hi.ok_or(GeometryError::NoIntersection)?;

    // bisection with a Newton polish once the bracket is tight
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let g = surf_err(mid);
        if g.abs() < 1e-14 || (hi - lo) < 1e-15 {
            lo = mid;
            break;
        }
        if (g > 0.0) != (g_lo > 0.0) {
            hi = mid;
        } else {
            lo = mid;
            g_lo = g;
        }
    }
    let psi = 0.5 * (lo + hi);
    Ok(pos + (down * psi.cos() + right * psi.sin()) * slant_range)
}

/// Maps a fractional (line, sample) of a radar raster to the ECEF ground
/// position on the constant-height surface.
pub fn radar_to_ground(
    geom: &RadarGeometry,
    orbit: &OrbitModel,
    line: f64,
    sample: f64,
    height: f64,
) -> Result<Vector3<f64>, GeometryError> {
    if line < 0.0 || line >= geom.n_lines as f64 || sample < 0.0 || sample >= geom.n_samples as f64
    {
        return Err(GeometryError::InvalidGeometry(format!(
            "pixel ({line:.2}, {sample:.2}) outside raster {}x{}",
            geom.n_lines, geom.n_samples
        )));
    }
    surface_intersect(orbit, geom.line_time(line), geom.sample_range(sample), height)
}

/// Along-track ground heading (degrees clockwise from north) and incidence
/// angle (degrees from local vertical) at a ground point.
pub fn heading_incidence(
    orbit: &OrbitModel,
    geom: &RadarGeometry,
    ground: &Vector3<f64>,
) -> Result<(f64, f64), GeometryError> {
    let sol = zero_doppler_solve(orbit, ground, geom.mid_time())?;
    let (pos, vel) = orbit.interpolate(sol.t_az)?;
    let (lon, lat) = ecef_to_lonlat(ground, 0.0);
    let (east, north, up) = enu_basis(lon, lat);
    let heading = vel.dot(&east).atan2(vel.dot(&north)).to_degrees().rem_euclid(360.0);
    let look_up = (pos - ground).normalize();
    let incidence = look_up.dot(&up).clamp(-1.0, 1.0).acos().to_degrees();
    Ok((heading, incidence))
}

/// Speed of the zero-Doppler ground trace under the platform, m/s.
pub fn ground_speed(orbit: &OrbitModel, t: f64, ground: &Vector3<f64>) -> Result<f64, GeometryError> {
    let (pos, vel) = orbit.interpolate(t)?;
    let radial = pos.normalize();
    let v_horiz = vel - radial * vel.dot(&radial);
    Ok(v_horiz.norm() * ground.norm() / pos.norm())
}
