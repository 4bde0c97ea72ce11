//! Domain representations and voxelization.
//!
//! `ShapeSpec` is the uniform tagged input across all solvers; the textual
//! schema is JSON with a `shape` tag, e.g.
//! `{"shape":"ball","dim":2,"radius":1.0}` or
//! `{"shape":"product","cross":{"shape":"box","edges":[1,1]},"height":4.0}`.

mod mask;
mod polygon;

pub use mask::{random_blob_mask, GridMask, DEFAULT_MAX_CELLS};
pub use polygon::{ConvexPolygon, Point2};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Cross-section times an interval: `Omega x (0, height)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductDomain {
    pub cross: Box<ShapeSpec>,
    pub height: f64,
}

/// Tagged description of a domain, the uniform solver input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum ShapeSpec {
    Interval { length: f64 },
    Box { edges: Vec<f64> },
    Ball { dim: usize, radius: f64 },
    Polygon { vertices: ConvexPolygon },
    Grid(GridMask),
    Product(ProductDomain),
}

impl ShapeSpec {
    pub fn polygon(p: ConvexPolygon) -> Self {
        ShapeSpec::Polygon { vertices: p }
    }

    pub fn product(cross: ShapeSpec, height: f64) -> Self {
        ShapeSpec::Product(ProductDomain {
            cross: Box::new(cross),
            height,
        })
    }

    /// Checks the per-variant invariants (positive lengths, bounded, ...).
    pub fn validate(&self) -> Result<()> {
        match self {
            ShapeSpec::Interval { length } => {
                if !(*length > 0.0) {
                    return Err(Error::InvalidShape(format!(
                        "interval length must be positive, got {length}"
                    )));
                }
            }
            ShapeSpec::Box { edges } => {
                if edges.is_empty() {
                    return Err(Error::InvalidShape("box needs at least one edge".into()));
                }
                if edges.iter().any(|e| !(*e > 0.0)) {
                    return Err(Error::InvalidShape(format!(
                        "box edges must be positive, got {edges:?}"
                    )));
                }
            }
            ShapeSpec::Ball { dim, radius } => {
                if *dim < 1 {
                    return Err(Error::InvalidShape("ball dimension must be >= 1".into()));
                }
                if !(*radius > 0.0) {
                    return Err(Error::InvalidShape(format!(
                        "ball radius must be positive, got {radius}"
                    )));
                }
            }
            ShapeSpec::Polygon { .. } => {} // validated on construction
            ShapeSpec::Grid(_) => {}        // validated on construction
            ShapeSpec::Product(p) => {
                if !(p.height > 0.0) {
                    return Err(Error::InvalidShape(format!(
                        "product height must be positive, got {}",
                        p.height
                    )));
                }
                p.cross.validate()?;
            }
        }
        Ok(())
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        match self {
            ShapeSpec::Interval { .. } => 1,
            ShapeSpec::Box { edges } => edges.len(),
            ShapeSpec::Ball { dim, .. } => *dim,
            ShapeSpec::Polygon { .. } => 2,
            ShapeSpec::Grid(m) => m.dim(),
            ShapeSpec::Product(p) => p.cross.dim() + 1,
        }
    }

    /// Exact volume where a closed form exists.
    pub fn volume(&self) -> Option<f64> {
        match self {
            ShapeSpec::Interval { length } => Some(*length),
            ShapeSpec::Box { edges } => Some(edges.iter().product()),
            ShapeSpec::Ball { dim, radius } => Some(unit_ball_volume(*dim) * radius.powi(*dim as i32)),
            ShapeSpec::Polygon { vertices } => Some(vertices.area()),
            ShapeSpec::Grid(m) => Some(m.volume()),
            ShapeSpec::Product(p) => Some(p.cross.volume()? * p.height),
        }
    }

    /// Tight bounding box (lo, hi) per axis, for voxelization.
    fn bounding_box(&self) -> Result<Vec<(f64, f64)>> {
        match self {
            ShapeSpec::Interval { length } => Ok(vec![(0.0, *length)]),
            ShapeSpec::Box { edges } => Ok(edges.iter().map(|&e| (0.0, e)).collect()),
            ShapeSpec::Ball { dim, radius } => Ok(vec![(-radius, *radius); *dim]),
            ShapeSpec::Polygon { vertices } => {
                let (lo, hi) = vertices.bounding_box();
                Ok(vec![(lo.x, hi.x), (lo.y, hi.y)])
            }
            ShapeSpec::Grid(m) => Ok(m
                .dims()
                .iter()
                .map(|&d| (0.0, d as f64 * m.spacing()))
                .collect()),
            ShapeSpec::Product(_) => Err(Error::InternalConsistency(
                "product domains voxelize via extrusion".into(),
            )),
        }
    }

    /// Strict inside test at a point, for voxelization by cell centers.
    fn contains(&self, x: &[f64]) -> bool {
        match self {
            ShapeSpec::Interval { length } => x[0] > 0.0 && x[0] < *length,
            ShapeSpec::Box { edges } => x.iter().zip(edges).all(|(xi, ei)| *xi > 0.0 && xi < ei),
            ShapeSpec::Ball { radius, .. } => {
                x.iter().map(|xi| xi * xi).sum::<f64>() < radius * radius
            }
            ShapeSpec::Polygon { vertices } => vertices.contains(Point2::new(x[0], x[1])),
            ShapeSpec::Grid(m) => {
                let mut coords = Vec::with_capacity(x.len());
                for (k, xi) in x.iter().enumerate() {
                    let c = (xi / m.spacing()).floor();
                    if c < 0.0 || c as usize >= m.dims()[k] {
                        return false;
                    }
                    coords.push(c as usize);
                }
                m.is_occupied(m.index(&coords))
            }
            ShapeSpec::Product(_) => unreachable!("product handled by extrusion"),
        }
    }
}

/// Volume of the unit ball, by the two-step recursion
/// `w_N = 2 pi w_{N-2} / N`, `w_1 = 2`, `w_2 = pi`.
pub fn unit_ball_volume(dim: usize) -> f64 {
    match dim {
        0 => 1.0,
        1 => 2.0,
        2 => std::f64::consts::PI,
        n => 2.0 * std::f64::consts::PI * unit_ball_volume(n - 2) / n as f64,
    }
}

/// Rasterizes a bounded shape onto a uniform grid: a cell is occupied iff
/// its center lies strictly inside the shape. One empty margin cell is kept
/// on every side.
pub fn voxelize(shape: &ShapeSpec, resolution: usize) -> Result<GridMask> {
    voxelize_with_budget(shape, resolution, DEFAULT_MAX_CELLS)
}

pub fn voxelize_with_budget(
    shape: &ShapeSpec,
    resolution: usize,
    max_cells: usize,
) -> Result<GridMask> {
    shape.validate()?;
    if resolution < 8 {
        return Err(Error::InvalidResolution(format!(
            "resolution must be >= 8 cells per unit, got {resolution}"
        )));
    }
    if let ShapeSpec::Product(p) = shape {
        let cross = voxelize_with_budget(&p.cross, resolution, max_cells)?;
        return cross.extrude_with_budget(p.height, resolution, max_cells);
    }
    if shape.dim() > 3 {
        return Err(Error::InvalidResolution(format!(
            "voxelization supports dimension <= 3, shape has {}",
            shape.dim()
        )));
    }
    let s = 1.0 / resolution as f64;
    let bbox = shape.bounding_box()?;
    let dims: Vec<usize> = bbox
        .iter()
        .map(|(lo, hi)| ((hi - lo) / s).ceil() as usize + 2)
        .collect();
    let total: usize = dims.iter().product();
    if total > max_cells {
        return Err(Error::ResourceLimit(format!(
            "grid would have {total} cells, budget is {max_cells}"
        )));
    }
    let probe = GridMask::new(dims.clone(), s, vec![false; total])?;
    let mut cells = vec![false; total];
    let mut any = false;
    let mut x = vec![0.0f64; dims.len()];
    for idx in 0..total {
        let coords = probe.coords(idx);
        for (k, &c) in coords.iter().enumerate() {
            x[k] = bbox[k].0 - s + (c as f64 + 0.5) * s;
        }
        if shape.contains(&x) {
            cells[idx] = true;
            any = true;
        }
    }
    if !any {
        return Err(Error::InvalidResolution(format!(
            "resolution {resolution} places no cell center inside the shape"
        )));
    }
    GridMask::new(dims, s, cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn voxelize_unit_square_exact() {
        let sq = ShapeSpec::Box {
            edges: vec![1.0, 1.0],
        };
        let m = voxelize(&sq, 64).unwrap();
        assert_eq!(m.occupied_count(), 64 * 64);
        assert_relative_eq!(m.spacing(), 1.0 / 64.0);
        assert_eq!(m.dims(), &[66, 66]);
    }

    #[test]
    fn voxelize_disk_area() {
        let disk = ShapeSpec::Ball {
            dim: 2,
            radius: 1.0,
        };
        let m = voxelize(&disk, 128).unwrap();
        let err = (m.volume() - PI).abs() / PI;
        assert!(err < 0.01, "disk area error {err}");
    }

    #[test]
    fn voxelize_ball3_volume() {
        let ball = ShapeSpec::Ball {
            dim: 3,
            radius: 1.0,
        };
        let m = voxelize(&ball, 64).unwrap();
        let exact = 4.0 * PI / 3.0;
        let err = (m.volume() - exact).abs() / exact;
        assert!(err < 0.02, "ball volume error {err}");
    }

    #[test]
    fn voxelize_product_matches_extrusion() {
        let sq = ShapeSpec::Box {
            edges: vec![1.0, 1.0],
        };
        let cyl = ShapeSpec::product(sq.clone(), 4.0);
        let m = voxelize(&cyl, 32).unwrap();
        assert_eq!(m.dim(), 3);
        let expect = 4.0;
        assert!((m.volume() - expect).abs() <= expect * 0.01 + 1.0 / 32.0);
    }

    #[test]
    fn voxelize_disk_extrusion_volume() {
        let disk = ShapeSpec::Ball {
            dim: 2,
            radius: 1.0,
        };
        let m = voxelize(&disk, 64).unwrap();
        let ext = m.extrude(2.0, 64).unwrap();
        let exact = 2.0 * PI;
        let err = (ext.volume() - exact).abs() / exact;
        assert!(err < 0.02, "extruded disk volume error {err}");
    }

    #[test]
    fn voxelize_rejects_low_resolution() {
        let sq = ShapeSpec::Box {
            edges: vec![1.0, 1.0],
        };
        assert!(matches!(
            voxelize(&sq, 4),
            Err(Error::InvalidResolution(_))
        ));
    }

    #[test]
    fn shape_schema_round_trip() {
        let shapes = vec![
            ShapeSpec::Interval { length: 2.0 },
            ShapeSpec::Box {
                edges: vec![1.0, 1.0, 4.0],
            },
            ShapeSpec::Ball {
                dim: 3,
                radius: 0.5,
            },
            ShapeSpec::polygon(ConvexPolygon::regular(5, 1.0).unwrap()),
            ShapeSpec::product(
                ShapeSpec::Box {
                    edges: vec![1.0, 1.0],
                },
                4.0,
            ),
        ];
        for s in shapes {
            let text = serde_json::to_string(&s).unwrap();
            let back: ShapeSpec = serde_json::from_str(&text).unwrap();
            assert_eq!(s, back);
        }
    }

    #[test]
    fn grid_schema_has_rle_cells() {
        let m = voxelize(
            &ShapeSpec::Box {
                edges: vec![0.5, 0.5],
            },
            16,
        )
        .unwrap();
        let spec = ShapeSpec::Grid(m.clone());
        let text = serde_json::to_string(&spec).unwrap();
        assert!(text.contains("\"shape\":\"grid\""));
        assert!(text.contains("\"cells\""));
        let back: ShapeSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn ball_volume_recursion() {
        assert_relative_eq!(unit_ball_volume(2), PI);
        assert_relative_eq!(unit_ball_volume(3), 4.0 * PI / 3.0);
        assert_relative_eq!(unit_ball_volume(4), PI * PI / 2.0);
    }
}
