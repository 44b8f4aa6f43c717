//! Local planar map grids and geocoded complex rasters.

use ndarray::Array2;
use num_complex::Complex32;
use serde::{Deserialize, Serialize};

use super::earth::meters_per_degree;
use crate::poly::Polygon;

/// A north-up map grid in a local planar frame.
///
/// The frame is a linearly scaled lon/lat plane centered on
/// (`origin_lon`, `origin_lat`): one meter of east/north at the origin maps to
/// a fixed fraction of a degree, making the projection exactly invertible.
/// Cell (0, 0) is the north-west corner; rows advance south, columns east.
/// (`east0`, `north0`) are the map coordinates of the cell (0, 0) center.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapGrid {
    pub origin_lon: f64,
    pub origin_lat: f64,
    pub east0: f64,
    pub north0: f64,
    pub posting: f64,
    pub n_east: usize,
    pub n_north: usize,
}

impl MapGrid {
    /// Grid of `n_east` x `n_north` cells centered on the projection origin.
    pub fn centered(origin_lon: f64, origin_lat: f64, posting: f64, n_east: usize, n_north: usize) -> Self {
        MapGrid {
            origin_lon,
            origin_lat,
            east0: -0.5 * (n_east as f64 - 1.0) * posting,
            north0: 0.5 * (n_north as f64 - 1.0) * posting,
            posting,
            n_east,
            n_north,
        }
    }

    pub fn cell_center(&self, row: usize, col: usize) -> (f64, f64) {
        (self.east0 + col as f64 * self.posting, self.north0 - row as f64 * self.posting)
    }

    /// Fractional (row, col) of a map position.
    pub fn frac_cell(&self, east: f64, north: f64) -> (f64, f64) {
        ((self.north0 - north) / self.posting, (east - self.east0) / self.posting)
    }

    pub fn lonlat_of(&self, east: f64, north: f64) -> (f64, f64) {
        let (m_lon, m_lat) = meters_per_degree(self.origin_lat);
        (self.origin_lon + east / m_lon, self.origin_lat + north / m_lat)
    }

    pub fn map_of(&self, lon: f64, lat: f64) -> (f64, f64) {
        let (m_lon, m_lat) = meters_per_degree(self.origin_lat);
        ((lon - self.origin_lon) * m_lon, (lat - self.origin_lat) * m_lat)
    }

    /// Outer boundary of the grid as a lon/lat quadrilateral.
    pub fn bounds_polygon(&self) -> Polygon {
        let half = 0.5 * self.posting;
        let e_min = self.east0 - half;
        let e_max = self.east0 + (self.n_east as f64 - 1.0) * self.posting + half;
        let n_max = self.north0 + half;
        let n_min = self.north0 - (self.n_north as f64 - 1.0) * self.posting - half;
        let corners = [(e_min, n_min), (e_max, n_min), (e_max, n_max), (e_min, n_max)];
        Polygon(
            corners
                .iter()
                .map(|&(e, n)| {
                    let (lon, lat) = self.lonlat_of(e, n);
                    [lon, lat]
                })
                .collect(),
        )
    }
}

/// Complex raster on a map grid with a validity mask (1 = valid).
#[derive(Debug, Clone)]
pub struct GeocodedRaster {
    pub grid: MapGrid,
    pub samples: Array2<Complex32>,
    pub mask: Array2<u8>,
}

impl GeocodedRaster {
    pub fn amplitude(&self) -> Array2<f32> {
        self.samples.mapv(|z| z.norm())
    }

    pub fn valid_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m != 0).count()
    }

    pub fn same_grid(&self, other: &GeocodedRaster) -> bool {
        self.grid == other.grid
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn projection_roundtrip_is_exact() {
        let grid = MapGrid::centered(151.2, -27.5, 2.5, 100, 80);
        for &(e, n) in &[(0.0, 0.0), (1234.5, -987.0), (-2000.0, 1500.0)] {
            let (lon, lat) = grid.lonlat_of(e, n);
            let (e2, n2) = grid.map_of(lon, lat);
            assert_relative_eq!(e, e2, epsilon = 1e-9);
            assert_relative_eq!(n, n2, epsilon = 1e-9);
        }
    }

    #[test]
    fn cell_centers_and_frac_cells_agree() {
        let grid = MapGrid::centered(0.0, 0.0, 5.0, 11, 7);
        let (e, n) = grid.cell_center(3, 8);
        let (rf, cf) = grid.frac_cell(e, n);
        assert_relative_eq!(rf, 3.0, epsilon = 1e-12);
        assert_relative_eq!(cf, 8.0, epsilon = 1e-12);
        // rows advance south
        let (_, n0) = grid.cell_center(0, 0);
        let (_, n1) = grid.cell_center(1, 0);
        assert!(n1 < n0);
    }

    #[test]
    fn meter_scale_is_physical_at_origin() {
        let grid = MapGrid::centered(151.0, -27.0, 2.5, 10, 10);
        let (lon1, lat1) = grid.lonlat_of(0.0, 0.0);
        let (lon2, lat2) = grid.lonlat_of(1000.0, 0.0);
        let (lon3, lat3) = grid.lonlat_of(0.0, 1000.0);
        let p1 = super::super::earth::lonlat_to_ecef(lon1, lat1, 0.0);
        let p2 = super::super::earth::lonlat_to_ecef(lon2, lat2, 0.0);
        let p3 = super::super::earth::lonlat_to_ecef(lon3, lat3, 0.0);
        assert_relative_eq!((p2 - p1).norm(), 1000.0, max_relative = 1e-4);
        assert_relative_eq!((p3 - p1).norm(), 1000.0, max_relative = 1e-4);
    }
}
