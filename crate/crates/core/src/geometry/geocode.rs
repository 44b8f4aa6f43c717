//! Direct geocoding of radar rasters onto a map grid.

use ndarray::{Array1, Array2};
use num_complex::Complex32;
use rayon::prelude::*;
use std::sync::OnceLock;

use super::doppler::zero_doppler_solve;
use super::earth::lonlat_to_ecef;
use super::grid::{GeocodedRaster, MapGrid};
use super::orbit::OrbitModel;
use super::{GeometryError, RadarGeometry};

pub const KERNEL_TAPS: usize = 8;
const KERNEL_HALF: isize = (KERNEL_TAPS / 2) as isize - 1; // taps at floor-3 .. floor+4
const LUT_STEPS: usize = 64;

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        1.0
    } else {
        let px = std::f64::consts::PI * x;
        px.sin() / px
    }
}

/// Hamming-windowed sinc taps tabulated at 1/64-pixel fractional offsets and
/// normalized to unit sum so constant fields pass through unchanged.
fn kernel_table() -> &'static Vec<[f32; KERNEL_TAPS]> {
    static TABLE: OnceLock<Vec<[f32; KERNEL_TAPS]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..=LUT_STEPS)
            .map(|b| {
                let frac = b as f64 / LUT_STEPS as f64;
                let mut taps = [0.0f64; KERNEL_TAPS];
                let half_span = KERNEL_TAPS as f64 / 2.0;
                for (k, tap) in taps.iter_mut().enumerate() {
                    let x = (k as isize - KERNEL_HALF) as f64 - frac;
                    let window = 0.54 + 0.46 * (std::f64::consts::PI * x / half_span).cos();
                    *tap = sinc(x) * window;
                }
                let sum: f64 = taps.iter().sum();
                let mut out = [0.0f32; KERNEL_TAPS];
                for (o, t) in out.iter_mut().zip(taps.iter()) {
                    *o = (*t / sum) as f32;
                }
                out
            })
            .collect()
    })
}

fn kernel_weights(frac: f64) -> &'static [f32; KERNEL_TAPS] {
    let idx = (frac * LUT_STEPS as f64).round() as usize;
    &kernel_table()[idx.min(LUT_STEPS)]
}

/// Band-limited complex interpolation at fractional (line, sample).
/// The caller guarantees the full 8x8 support lies inside the raster.
fn interpolate(slc: &Array2<Complex32>, line: f64, sample: f64) -> Complex32 {
    let l0 = line.floor();
    let s0 = sample.floor();
    let wl = kernel_weights(line - l0);
    let ws = kernel_weights(sample - s0);
    let lb = l0 as isize - KERNEL_HALF;
    let sb = s0 as isize - KERNEL_HALF;
    let mut acc = Complex32::new(0.0, 0.0);
    for (i, &wli) in wl.iter().enumerate() {
        let mut row_acc = Complex32::new(0.0, 0.0);
        for (j, &wsj) in ws.iter().enumerate() {
            row_acc += slc[[(lb + i as isize) as usize, (sb + j as isize) as usize]] * wsj;
        }
        acc += row_acc * wli;
    }
    acc
}

/// True when the 8x8 interpolation support around (line, sample) fits the raster.
fn in_support(line: f64, sample: f64, n_lines: usize, n_samples: usize) -> bool {
    let l0 = line.floor() as isize;
    let s0 = sample.floor() as isize;
    l0 - KERNEL_HALF >= 0
        && s0 - KERNEL_HALF >= 0
        && l0 + KERNEL_HALF + 1 <= n_lines as isize - 1
        && s0 + KERNEL_HALF + 1 <= n_samples as isize - 1
}

/// Geocodes a radar-coordinate complex raster onto `grid` over the
/// constant-height surface. Cells whose interpolation support leaves the
/// raster are masked. Rows are processed independently, so the output does
/// not depend on the worker count.
pub fn geocode(
    slc: &Array2<Complex32>,
    geom: &RadarGeometry,
    orbit: &OrbitModel,
    grid: &MapGrid,
    height: f64,
) -> Result<GeocodedRaster, GeometryError> {
    geom.validate()?;
    if slc.nrows() != geom.n_lines || slc.ncols() != geom.n_samples {
        return Err(GeometryError::InvalidGeometry(format!(
            "raster {}x{} does not match geometry {}x{}",
            slc.nrows(),
            slc.ncols(),
            geom.n_lines,
            geom.n_samples
        )));
    }

    let rows: Vec<(Array1<Complex32>, Array1<u8>)> = (0..grid.n_north)
        .into_par_iter()
        .map(|row| {
            let mut values = Array1::from_elem(grid.n_east, Complex32::new(0.0, 0.0));
            let mut mask = Array1::zeros(grid.n_east);
            let mut t_warm = geom.mid_time();
            for col in 0..grid.n_east {
                let (east, north) = grid.cell_center(row, col);
                let (lon, lat) = grid.lonlat_of(east, north);
                let ground = lonlat_to_ecef(lon, lat, height);
                let sol = match zero_doppler_solve(orbit, &ground, t_warm) {
                    Ok(sol) => sol,
                    Err(_) => continue,
                };
                t_warm = sol.t_az;
                let line = (sol.t_az - geom.azimuth_start) / geom.azimuth_interval;
                let sample = (sol.slant_range - geom.near_range) / geom.range_spacing;
                if in_support(line, sample, geom.n_lines, geom.n_samples) {
                    values[col] = interpolate(slc, line, sample);
                    mask[col] = 1;
                }
            }
            (values, mask)
        })
        .collect();

    let mut samples = Array2::from_elem((grid.n_north, grid.n_east), Complex32::new(0.0, 0.0));
    let mut mask = Array2::zeros((grid.n_north, grid.n_east));
    for (row, (values, row_mask)) in rows.into_iter().enumerate() {
        samples.row_mut(row).assign(&values);
        mask.row_mut(row).assign(&row_mask);
    }

    let raster = GeocodedRaster { grid: grid.clone(), samples, mask };
    if raster.valid_count() == 0 {
        return Err(GeometryError::GridDisjoint);
    }
    Ok(raster)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::doppler::{heading_incidence, radar_to_ground};
    use crate::geometry::earth::ecef_to_lonlat;
    use crate::geometry::testkit::{circular_orbit, wv_geometry};
    use crate::geometry::Beam;
    use ndarray::Array2;

    #[test]
    fn kernel_rows_sum_to_one() {
        for b in 0..=LUT_STEPS {
            let sum: f32 = kernel_table()[b].iter().sum();
            assert!((sum - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn interpolation_is_exact_at_integer_offsets() {
        let mut slc = Array2::from_elem((16, 16), Complex32::new(0.0, 0.0));
        for ((i, j), v) in slc.indexed_iter_mut() {
            *v = Complex32::new(i as f32, j as f32);
        }
        let v = interpolate(&slc, 7.0, 9.0);
        assert!((v.re - 7.0).abs() < 1e-5 && (v.im - 9.0).abs() < 1e-5);
    }

    fn test_scene() -> (OrbitModel, RadarGeometry, MapGrid) {
        let orbit = circular_orbit(7_064_000.0, 7_500.0, 98.18, 120.0, 10.0);
        let geom = wv_geometry(Beam::WV1, &orbit, 21.0, 60.0, 512, 512);
        let center = radar_to_ground(&geom, &orbit, 255.5, 255.5, 0.0).unwrap();
        let (lon, lat) = ecef_to_lonlat(&center, 0.0);
        let grid = MapGrid::centered(lon, lat, 2.5, 160, 160);
        (orbit, geom, grid)
    }

    #[test]
    fn constant_field_is_preserved() {
        let (orbit, geom, grid) = test_scene();
        let slc = Array2::from_elem((512, 512), Complex32::new(3.0, 4.0));
        let out = geocode(&slc, &geom, &orbit, &grid, 0.0).unwrap();
        assert!(out.valid_count() > 100);
        for (&m, &v) in out.mask.iter().zip(out.samples.iter()) {
            if m != 0 {
                assert!((v.norm() - 5.0).abs() / 5.0 < 0.005, "amplitude {}", v.norm());
            }
        }
    }

    #[test]
    fn range_phase_ramp_projects_with_sin_incidence() {
        let (orbit, geom, grid) = test_scene();
        let k = 0.35; // rad per range sample, well below Nyquist
        let mut slc = Array2::from_elem((512, 512), Complex32::new(0.0, 0.0));
        for ((_, s), v) in slc.indexed_iter_mut() {
            *v = Complex32::from_polar(1.0, (k * s as f64) as f32);
        }
        let out = geocode(&slc, &geom, &orbit, &grid, 0.0).unwrap();

        // analytic projection of the slant-range ramp onto the east axis
        let center = radar_to_ground(&geom, &orbit, 255.5, 255.5, 0.0).unwrap();
        let (heading, incidence) = heading_incidence(&orbit, &geom, &center).unwrap();
        let ground_range_east = heading.to_radians().cos(); // right-looking east component
        let dphi_deast =
            k / geom.range_spacing * incidence.to_radians().sin() * ground_range_east;

        // measured mean phase difference between east neighbours near center
        let r0 = grid.n_north / 2;
        let mut diffs = Vec::new();
        for row in r0 - 20..r0 + 20 {
            for col in 40..grid.n_east - 40 {
                if out.mask[[row, col]] != 0 && out.mask[[row, col + 1]] != 0 {
                    let d = (out.samples[[row, col + 1]] * out.samples[[row, col]].conj()).arg();
                    diffs.push(d as f64);
                }
            }
        }
        let measured = diffs.iter().sum::<f64>() / diffs.len() as f64 / grid.posting;
        let rel = (measured - dphi_deast).abs() / dphi_deast.abs();
        assert!(rel < 0.01, "measured {measured:.6e}, analytic {dphi_deast:.6e}, rel {rel:.3e}");
    }

    #[test]
    fn disjoint_grid_is_an_error() {
        let (orbit, geom, grid) = test_scene();
        let far = MapGrid::centered(grid.origin_lon + 5.0, grid.origin_lat + 5.0, 2.5, 64, 64);
        let slc = Array2::from_elem((512, 512), Complex32::new(1.0, 0.0));
        assert!(matches!(
            geocode(&slc, &geom, &orbit, &far, 0.0),
            Err(GeometryError::GridDisjoint)
        ));
    }

    #[test]
    fn geocode_is_deterministic() {
        let (orbit, geom, grid) = test_scene();
        let mut slc = Array2::from_elem((512, 512), Complex32::new(0.0, 0.0));
        for ((l, s), v) in slc.indexed_iter_mut() {
            *v = Complex32::new((l as f32 * 0.37).sin(), (s as f32 * 0.29).cos());
        }
        let a = geocode(&slc, &geom, &orbit, &grid, 0.0).unwrap();
        let b = geocode(&slc, &geom, &orbit, &grid, 0.0).unwrap();
        assert_eq!(a.samples, b.samples);
        assert_eq!(a.mask, b.mask);
    }
}
