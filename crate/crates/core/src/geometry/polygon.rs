//! Strictly convex planar polygons and their exact primitives: area,
//! perimeter, inradius and inner parallel sets by half-plane clipping.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Relative tolerance used by the convexity / duplicate-vertex checks.
const GEOM_EPS: f64 = 1e-12;

/// A point in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

impl From<[f64; 2]> for Point2 {
    fn from(p: [f64; 2]) -> Self {
        Self { x: p[0], y: p[1] }
    }
}

fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// A strictly convex polygon with counterclockwise vertices.
///
/// Construction validates the invariants once; every operation afterwards can
/// rely on them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

impl TryFrom<Vec<[f64; 2]>> for ConvexPolygon {
    type Error = Error;
    fn try_from(v: Vec<[f64; 2]>) -> Result<Self> {
        ConvexPolygon::new(v.into_iter().map(Point2::from).collect())
    }
}

impl From<ConvexPolygon> for Vec<[f64; 2]> {
    fn from(p: ConvexPolygon) -> Self {
        p.vertices.iter().map(|v| [v.x, v.y]).collect()
    }
}

impl ConvexPolygon {
    /// Validates and wraps a counterclockwise vertex list.
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidShape(format!(
                "polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        let scale = vertices
            .iter()
            .map(|v| v.x.abs().max(v.y.abs()))
            .fold(1.0_f64, f64::max);
        let n = vertices.len();
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            let elen = ((b.x - a.x).powi(2) + (b.y - a.y).powi(2)).sqrt();
            if elen <= GEOM_EPS * scale {
                return Err(Error::InvalidShape(format!(
                    "duplicate consecutive vertices at index {i}"
                )));
            }
            if cross(a, b, c) <= GEOM_EPS * scale * scale {
                return Err(Error::InvalidShape(format!(
                    "polygon not strictly convex/counterclockwise at vertex {}",
                    (i + 1) % n
                )));
            }
        }
        let poly = Self { vertices };
        if poly.area() <= GEOM_EPS * scale * scale {
            return Err(Error::InvalidShape("degenerate polygon: area ~ 0".into()));
        }
        Ok(poly)
    }

    /// Axis-aligned `a x b` rectangle with a corner at the origin.
    pub fn rectangle(a: f64, b: f64) -> Result<Self> {
        if a <= 0.0 || b <= 0.0 {
            return Err(Error::InvalidShape(format!(
                "rectangle edges must be positive, got {a} x {b}"
            )));
        }
        Self::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(a, 0.0),
            Point2::new(a, b),
            Point2::new(0.0, b),
        ])
    }

    /// Regular `k`-gon with the given circumradius, centered at the origin.
    pub fn regular(k: usize, circumradius: f64) -> Result<Self> {
        if k < 3 || circumradius <= 0.0 {
            return Err(Error::InvalidShape(format!(
                "regular polygon needs k >= 3 and positive radius, got k={k}, r={circumradius}"
            )));
        }
        let verts = (0..k)
            .map(|i| {
                let t = 2.0 * std::f64::consts::PI * i as f64 / k as f64;
                Point2::new(circumradius * t.cos(), circumradius * t.sin())
            })
            .collect();
        Self::new(verts)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    /// Signed (positive, by the CCW invariant) shoelace area.
    pub fn area(&self) -> f64 {
        shoelace(&self.vertices)
    }

    /// Sum of edge lengths.
    pub fn perimeter(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % n];
                ((b.x - a.x).powi(2) + (b.y - a.y).powi(2)).sqrt()
            })
            .sum()
    }

    /// Inward edge half-planes `n . x >= c`, with unit normals.
    fn edge_halfplanes(&self) -> Vec<(Point2, f64)> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % n];
                let (dx, dy) = (b.x - a.x, b.y - a.y);
                let len = (dx * dx + dy * dy).sqrt();
                let nrm = Point2::new(-dy / len, dx / len);
                (nrm, nrm.x * a.x + nrm.y * a.y)
            })
            .collect()
    }

    /// Vertices of the inner parallel set at offset `r` (empty if it vanished).
    ///
    /// Each edge line is pushed inward by `r` and the polygon is clipped
    /// against all offset half-planes; exact for convex polygons.
    pub fn inner_parallel(&self, r: f64) -> Vec<Point2> {
        let mut poly = self.vertices.clone();
        for (nrm, c) in self.edge_halfplanes() {
            poly = clip_halfplane(&poly, nrm, c + r);
            if poly.len() < 3 {
                return Vec::new();
            }
        }
        poly
    }

    /// |Omega_{-r}|: area of the points at distance > r from the boundary.
    pub fn inner_parallel_area(&self, r: f64) -> Result<f64> {
        if r < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "inner parallel offset must be >= 0, got {r}"
            )));
        }
        if r == 0.0 {
            return Ok(self.area());
        }
        Ok(shoelace(&self.inner_parallel(r)))
    }

    /// Largest inscribed-circle radius, by bisection on inner-parallel
    /// nonemptiness. The offset area is strictly decreasing up to the
    /// inradius, so the bracket is valid from the start.
    pub fn inradius(&self) -> f64 {
        let mut lo = 0.0_f64;
        // Half the bounding-box diagonal always bounds the inradius.
        let (bb_min, bb_max) = self.bounding_box();
        let mut hi = 0.5 * ((bb_max.x - bb_min.x).powi(2) + (bb_max.y - bb_min.y).powi(2)).sqrt();
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.inner_parallel(mid).len() >= 3 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= f64::EPSILON * hi.max(1.0) {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    /// (area, perimeter, inradius) in one call.
    pub fn measures(&self) -> (f64, f64, f64) {
        (self.area(), self.perimeter(), self.inradius())
    }

    pub fn bounding_box(&self) -> (Point2, Point2) {
        let mut min = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut max = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            min.x = min.x.min(v.x);
            min.y = min.y.min(v.y);
            max.x = max.x.max(v.x);
            max.y = max.y.max(v.y);
        }
        (min, max)
    }

    /// True if `p` lies inside (or on the boundary of) the polygon.
    pub fn contains(&self, p: Point2) -> bool {
        self.edge_halfplanes()
            .iter()
            .all(|(nrm, c)| nrm.x * p.x + nrm.y * p.y >= *c)
    }

    /// Polygon scaled by `t` about the origin.
    pub fn scaled(&self, t: f64) -> Result<Self> {
        Self::new(
            self.vertices
                .iter()
                .map(|v| Point2::new(v.x * t, v.y * t))
                .collect(),
        )
    }
}

/// Signed shoelace area of a CCW vertex chain; 0 for fewer than 3 vertices.
pub(crate) fn shoelace(verts: &[Point2]) -> f64 {
    if verts.len() < 3 {
        return 0.0;
    }
    let n = verts.len();
    0.5 * (0..n)
        .map(|i| {
            let a = verts[i];
            let b = verts[(i + 1) % n];
            a.x * b.y - b.x * a.y
        })
        .sum::<f64>()
}

/// Sutherland-Hodgman clip of a convex chain against `n . x >= c`.
fn clip_halfplane(poly: &[Point2], nrm: Point2, c: f64) -> Vec<Point2> {
    let side = |p: Point2| nrm.x * p.x + nrm.y * p.y - c;
    let mut out = Vec::with_capacity(poly.len() + 1);
    let n = poly.len();
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let (sa, sb) = (side(a), side(b));
        if sa >= 0.0 {
            out.push(a);
        }
        if (sa > 0.0 && sb < 0.0) || (sa < 0.0 && sb > 0.0) {
            let t = sa / (sa - sb);
            out.push(Point2::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)));
        }
    }
    out
}
