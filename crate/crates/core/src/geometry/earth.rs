//! WGS-84 ellipsoid math. Constant-height surfaces are modelled by inflating
//! both semi-axes, which keeps every radar<->ground solve on one closed surface.

use nalgebra::Vector3;

pub const WGS84_A: f64 = 6_378_137.0;
pub const WGS84_F: f64 = 1.0 / 298.257_223_563;
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

pub fn wgs84_b() -> f64 {
    WGS84_A * (1.0 - WGS84_F)
}

/// Semi-axes of the WGS-84 ellipsoid inflated by a constant height.
pub fn inflated_axes(height: f64) -> (f64, f64) {
    (WGS84_A + height, wgs84_b() + height)
}

fn eccentricity_sq(a: f64, b: f64) -> f64 {
    1.0 - (b * b) / (a * a)
}

/// ECEF point at geodetic (lon, lat) degrees on the surface inflated by `height`.
pub fn lonlat_to_ecef(lon_deg: f64, lat_deg: f64, height: f64) -> Vector3<f64> {
    let (a, b) = inflated_axes(height);
    let e2 = eccentricity_sq(a, b);
    let lon = lon_deg.to_radians();
    let lat = lat_deg.to_radians();
    let n = a / (1.0 - e2 * lat.sin().powi(2)).sqrt();
    Vector3::new(
        n * lat.cos() * lon.cos(),
        n * lat.cos() * lon.sin(),
        n * (1.0 - e2) * lat.sin(),
    )
}

/// Geodetic (lon, lat) degrees of an ECEF point assumed to lie on the surface
/// inflated by `height`.
pub fn ecef_to_lonlat(p: &Vector3<f64>, height: f64) -> (f64, f64) {
    let (a, b) = inflated_axes(height);
    let e2 = eccentricity_sq(a, b);
    let lon = p.y.atan2(p.x);
    let rho = (p.x * p.x + p.y * p.y).sqrt();
    let mut lat = (p.z / (rho * (1.0 - e2))).atan();
    for _ in 0..8 {
        let n = a / (1.0 - e2 * lat.sin().powi(2)).sqrt();
        lat = ((p.z + e2 * n * lat.sin()) / rho).atan();
    }
    (lon.to_degrees(), lat.to_degrees())
}

/// Local east/north/up unit vectors at geodetic (lon, lat) degrees.
pub fn enu_basis(lon_deg: f64, lat_deg: f64) -> (Vector3<f64>, Vector3<f64>, Vector3<f64>) {
    let lon = lon_deg.to_radians();
    let lat = lat_deg.to_radians();
    let east = Vector3::new(-lon.sin(), lon.cos(), 0.0);
    let north = Vector3::new(-lat.sin() * lon.cos(), -lat.sin() * lon.sin(), lat.cos());
    let up = Vector3::new(lat.cos() * lon.cos(), lat.cos() * lon.sin(), lat.sin());
    (east, north, up)
}

/// Meters per degree of longitude and latitude at a reference latitude, from
/// the prime-vertical and meridional radii of curvature.
pub fn meters_per_degree(lat_deg: f64) -> (f64, f64) {
    let lat = lat_deg.to_radians();
    let e2 = eccentricity_sq(WGS84_A, wgs84_b());
    let s2 = lat.sin().powi(2);
    let n = WGS84_A / (1.0 - e2 * s2).sqrt();
    let m = WGS84_A * (1.0 - e2) / (1.0 - e2 * s2).powf(1.5);
    let per_deg = std::f64::consts::PI / 180.0;
    (n * lat.cos() * per_deg, m * per_deg)
}
