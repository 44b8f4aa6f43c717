//! Planar polygon predicates used for footprints, AOIs and named regions.
//!
//! All coordinates are (lon, lat) degrees treated as a plane. Footprints are
//! desk-scale (tens of km) so planar treatment is accurate away from the
//! antimeridian; rings that cross it are rejected at validation time.

use serde::{Deserialize, Serialize};

/// A simple polygon stored as an open ring of (x, y) vertices.
///
/// The closing edge from the last vertex back to the first is implicit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polygon(pub Vec<[f64; 2]>);

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum PolygonError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon has non-finite coordinates")]
    NonFinite,
    #[error("polygon is degenerate (zero area or repeated vertices)")]
    Degenerate,
    #[error("polygon is self-intersecting")]
    SelfIntersecting,
    #[error("polygon crosses the antimeridian")]
    AntimeridianCrossing,
}

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn on_segment(a: [f64; 2], b: [f64; 2], p: [f64; 2]) -> bool {
    p[0] >= a[0].min(b[0]) && p[0] <= a[0].max(b[0]) && p[1] >= a[1].min(b[1]) && p[1] <= a[1].max(b[1])
}

/// Segment intersection test including endpoint touches.
pub fn segments_intersect(a1: [f64; 2], a2: [f64; 2], b1: [f64; 2], b2: [f64; 2]) -> bool {
    let d1 = orient(b1, b2, a1);
    let d2 = orient(b1, b2, a2);
    let d3 = orient(a1, a2, b1);
    let d4 = orient(a1, a2, b2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(b1, b2, a1))
        || (d2 == 0.0 && on_segment(b1, b2, a2))
        || (d3 == 0.0 && on_segment(a1, a2, b1))
        || (d4 == 0.0 && on_segment(a1, a2, b2))
}

impl Polygon {
    /// Builds a polygon, dropping a duplicated closing vertex if present.
    pub fn new(mut vertices: Vec<[f64; 2]>) -> Result<Self, PolygonError> {
        if vertices.len() >= 4 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        if vertices.len() < 3 {
            return Err(PolygonError::TooFewVertices(vertices.len()));
        }
        if vertices.iter().any(|v| !v[0].is_finite() || !v[1].is_finite()) {
            return Err(PolygonError::NonFinite);
        }
        let poly = Polygon(vertices);
        poly.validate()?;
        Ok(poly)
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.0
    }

    fn validate(&self) -> Result<(), PolygonError> {
        let n = self.0.len();
        for i in 0..n {
            let j = (i + 1) % n;
            if self.0[i] == self.0[j] {
                return Err(PolygonError::Degenerate);
            }
            if (self.0[i][0] - self.0[j][0]).abs() > 180.0 {
                return Err(PolygonError::AntimeridianCrossing);
            }
        }
        if self.signed_area().abs() < 1e-12 {
            return Err(PolygonError::Degenerate);
        }
        if !self.is_simple() {
            return Err(PolygonError::SelfIntersecting);
        }
        Ok(())
    }

    /// True when no two non-adjacent edges intersect.
    pub fn is_simple(&self) -> bool {
        let n = self.0.len();
        for i in 0..n {
            let (a1, a2) = (self.0[i], self.0[(i + 1) % n]);
            for j in (i + 1)..n {
                // skip edges sharing a vertex with edge i
                if j == i || (j + 1) % n == i || j == (i + 1) % n {
                    continue;
                }
                let (b1, b2) = (self.0[j], self.0[(j + 1) % n]);
                if segments_intersect(a1, a2, b1, b2) {
                    return false;
                }
            }
        }
        true
    }

    pub fn signed_area(&self) -> f64 {
        let n = self.0.len();
        let mut acc = 0.0;
        for i in 0..n {
            let [x1, y1] = self.0[i];
            let [x2, y2] = self.0[(i + 1) % n];
            acc += x1 * y2 - x2 * y1;
        }
        acc / 2.0
    }

    pub fn area(&self) -> f64 {
        self.signed_area().abs()
    }

    pub fn centroid(&self) -> [f64; 2] {
        let a = self.signed_area();
        if a.abs() < 1e-300 {
            let n = self.0.len() as f64;
            let (sx, sy) = self.0.iter().fold((0.0, 0.0), |(sx, sy), v| (sx + v[0], sy + v[1]));
            return [sx / n, sy / n];
        }
        let n = self.0.len();
        let (mut cx, mut cy) = (0.0, 0.0);
        for i in 0..n {
            let [x1, y1] = self.0[i];
            let [x2, y2] = self.0[(i + 1) % n];
            let w = x1 * y2 - x2 * y1;
            cx += (x1 + x2) * w;
            cy += (y1 + y2) * w;
        }
        [cx / (6.0 * a), cy / (6.0 * a)]
    }

    /// Axis-aligned bounds as (min_x, min_y, max_x, max_y).
    pub fn bbox(&self) -> [f64; 4] {
        let mut b = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
        for v in &self.0 {
            b[0] = b[0].min(v[0]);
            b[1] = b[1].min(v[1]);
            b[2] = b[2].max(v[0]);
            b[3] = b[3].max(v[1]);
        }
        b
    }

    /// Boundary-inclusive point-in-polygon test (ray casting).
    pub fn contains_point(&self, p: [f64; 2]) -> bool {
        let n = self.0.len();
        // boundary counts as inside
        for i in 0..n {
            let (a, b) = (self.0[i], self.0[(i + 1) % n]);
            if orient(a, b, p) == 0.0 && on_segment(a, b, p) {
                return true;
            }
        }
        let mut inside = false;
        for i in 0..n {
            let (a, b) = (self.0[i], self.0[(i + 1) % n]);
            if (a[1] > p[1]) != (b[1] > p[1]) {
                let x_cross = a[0] + (p[1] - a[1]) / (b[1] - a[1]) * (b[0] - a[0]);
                if p[0] < x_cross {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// True when the two polygon interiors or boundaries touch anywhere.
    pub fn intersects(&self, other: &Polygon) -> bool {
        let [ax0, ay0, ax1, ay1] = self.bbox();
        let [bx0, by0, bx1, by1] = other.bbox();
        if ax1 < bx0 || bx1 < ax0 || ay1 < by0 || by1 < ay0 {
            return false;
        }
        let n = self.0.len();
        let m = other.0.len();
        for i in 0..n {
            for j in 0..m {
                if segments_intersect(
                    self.0[i],
                    self.0[(i + 1) % n],
                    other.0[j],
                    other.0[(j + 1) % m],
                ) {
                    return true;
                }
            }
        }
        self.contains_point(other.0[0]) || other.contains_point(self.0[0])
    }

    pub fn is_convex(&self) -> bool {
        let n = self.0.len();
        let mut sign = 0.0f64;
        for i in 0..n {
            let o = orient(self.0[i], self.0[(i + 1) % n], self.0[(i + 2) % n]);
            if o != 0.0 {
                if sign != 0.0 && o.signum() != sign {
                    return false;
                }
                sign = o.signum();
            }
        }
        true
    }

    /// Clips this polygon against a convex clipper (Sutherland-Hodgman) and
    /// returns the intersection area. The clipper must be convex; the subject
    /// may be any simple polygon.
    pub fn intersection_area_with_convex(&self, clipper: &Polygon) -> f64 {
        debug_assert!(clipper.is_convex());
        let inward = if clipper.signed_area() > 0.0 { 1.0 } else { -1.0 };
        let mut subject: Vec<[f64; 2]> = self.0.clone();
        let m = clipper.0.len();
        for j in 0..m {
            if subject.is_empty() {
                return 0.0;
            }
            let (c1, c2) = (clipper.0[j], clipper.0[(j + 1) % m]);
            let mut out: Vec<[f64; 2]> = Vec::with_capacity(subject.len() + 2);
            let inside = |p: [f64; 2]| inward * orient(c1, c2, p) >= 0.0;
            for i in 0..subject.len() {
                let cur = subject[i];
                let prev = subject[(i + subject.len() - 1) % subject.len()];
                let cur_in = inside(cur);
                let prev_in = inside(prev);
                if cur_in {
                    if !prev_in {
                        out.push(line_intersection(prev, cur, c1, c2));
                    }
                    out.push(cur);
                } else if prev_in {
                    out.push(line_intersection(prev, cur, c1, c2));
                }
            }
            subject = out;
        }
        if subject.len() < 3 {
            return 0.0;
        }
        let mut acc = 0.0;
        for i in 0..subject.len() {
            let [x1, y1] = subject[i];
            let [x2, y2] = subject[(i + 1) % subject.len()];
            acc += x1 * y2 - x2 * y1;
        }
        (acc / 2.0).abs()
    }

    /// Longest vertex-to-vertex distance, in the polygon's own units.
    pub fn max_diagonal(&self) -> f64 {
        let mut best = 0.0f64;
        for i in 0..self.0.len() {
            for j in (i + 1)..self.0.len() {
                let dx = self.0[i][0] - self.0[j][0];
                let dy = self.0[i][1] - self.0[j][1];
                best = best.max((dx * dx + dy * dy).sqrt());
            }
        }
        best
    }
}

fn line_intersection(p1: [f64; 2], p2: [f64; 2], q1: [f64; 2], q2: [f64; 2]) -> [f64; 2] {
    let a1 = p2[1] - p1[1];
    let b1 = p1[0] - p2[0];
    let c1 = a1 * p1[0] + b1 * p1[1];
    let a2 = q2[1] - q1[1];
    let b2 = q1[0] - q2[0];
    let c2 = a2 * q1[0] + b2 * q1[1];
    let det = a1 * b2 - a2 * b1;
    [(b2 * c1 - b1 * c2) / det, (a1 * c2 - a2 * c1) / det]
}
