//! Cheeger constants by three routes: closed forms, convex-planar
//! root-finding, and discrete fractional programming on grids, plus the
//! derived cylinder quantities (minimal Cheeger volume, small-volume gap,
//! cylinder constant and envelopes).

mod grid;
mod maxflow;

pub use grid::{
    estimate_v_epsilon, grid_cheeger, isoperimetric_profile, GridCheegerParams,
    IsoperimetricProfile, ProfileSample, VEpsilon,
};
pub use maxflow::{
    cut_metric_density, mask_perimeter, neighbor_families, subset_perimeter, CutSolution, GridCut,
    NeighborFamily, PerimeterWeighting,
};

use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, GridMask};
use crate::numerics::brent;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Which route produced a Cheeger estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheegerMethod {
    ClosedForm,
    Klr,
    Grid,
}

/// Optimal-set certificate attached to a Cheeger estimate.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheegerSet {
    /// Voxel indicator on the solver grid.
    Mask(GridMask),
    /// Inner parallel body at offset `radius`, rounded by a disk of the same
    /// radius (the convex-planar characterization).
    RoundedBody {
        core: ConvexPolygon,
        radius: f64,
    },
    /// The domain itself (balls).
    SelfSet,
}

/// Cheeger constant estimate with certificate and convergence data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheegerResult {
    pub h: f64,
    pub method: CheegerMethod,
    pub iterations: usize,
    /// Dinkelbach ratios, starting from the full-domain ratio; length 1 for
    /// analytic routes.
    pub ratio_trace: Vec<f64>,
    /// |P/V - h| of the certificate, or the root residual for KLR.
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimal_set: Option<CheegerSet>,
}

/// Closed form for the a x b rectangle: the inner-parallel equation
/// `(a - 2r)(b - 2r) = pi r^2` is quadratic in r, giving
/// `h = (a + b + sqrt((a-b)^2 + pi a b)) / (a b)`.
pub fn rectangle_cheeger(a: f64, b: f64) -> f64 {
    assert!(a > 0.0 && b > 0.0, "rectangle edges must be positive");
    (a + b + ((a - b).powi(2) + PI * a * b).sqrt()) / (a * b)
}

/// Balls are their own Cheeger sets: `h = N / r`.
pub fn ball_cheeger(dim: usize, radius: f64) -> f64 {
    assert!(dim >= 1 && radius > 0.0);
    dim as f64 / radius
}

/// An interval's Cheeger set is the interval: two boundary points over the
/// length.
pub fn interval_cheeger(length: f64) -> f64 {
    assert!(length > 0.0);
    2.0 / length
}

/// Convex-planar Cheeger constant: `h = 1/r*` where `r*` uniquely solves
/// `|Omega_{-r}| = pi r^2` on (0, inradius). Brent root-finding on the
/// inner-parallel areas; the optimal set is the inner parallel body at `r*`
/// rounded by a disk of radius `r*`.
pub fn klr_cheeger(polygon: &ConvexPolygon, tol: f64) -> Result<CheegerResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let inradius = polygon.inradius();
    let g = |r: f64| polygon.inner_parallel_area(r).unwrap_or(0.0) - PI * r * r;
    // g(0) = |Omega| > 0 and g(inradius) = -pi inradius^2 < 0.
    let r_star = brent(g, 0.0, inradius, tol.min(1e-12), 200).map_err(|_| {
        Error::InternalConsistency(
            "inner-parallel equation not bracketed on [0, inradius]".into(),
        )
    })?;
    let residual = g(r_star).abs();
    if residual > tol.max(1e-9) {
        return Err(Error::InternalConsistency(format!(
            "inner-parallel root residual {residual} above tolerance"
        )));
    }
    let core_pts = polygon.inner_parallel(r_star);
    let core = ConvexPolygon::new(core_pts).ok();
    Ok(CheegerResult {
        h: 1.0 / r_star,
        method: CheegerMethod::Klr,
        iterations: 1,
        ratio_trace: vec![1.0 / r_star],
        residual,
        optimal_set: core.map(|core| CheegerSet::RoundedBody {
            core,
            radius: r_star,
        }),
    })
}

/// Two-sided envelope `h(cross) + c/L <= h(cylinder) <= h(cross) + 2/L` for
/// the cylinder of height `L` over a cross-section with Cheeger constant
/// `h_cross`. The `c/L` lower term is asserted only for `L >= 1`; below that
/// the generic lower envelope falls back to `h_cross`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CylinderEnvelope {
    pub h_cross: f64,
    pub height: f64,
    pub lower: f64,
    pub upper: f64,
    pub c_used: f64,
}

pub fn cylinder_envelope(h_cross: f64, height: f64, c: f64) -> CylinderEnvelope {
    assert!(h_cross > 0.0 && height > 0.0 && c >= 0.0);
    let lower = if height >= 1.0 {
        h_cross + c / height
    } else {
        h_cross
    };
    CylinderEnvelope {
        h_cross,
        height,
        lower,
        upper: h_cross + 2.0 / height,
        c_used: c,
    }
}

/// The cylinder lower-bound constant assembled from the minimal Cheeger
/// volume `v`, the small-volume gap `eps`, the cross-section constant `h`
/// and the total volume: `min { v/(8|O|), eps v/(8 h |O|), eps }`.
pub fn c_constant(v: f64, eps: f64, h: f64, total_volume: f64) -> Result<f64> {
    for (name, val) in [
        ("v", v),
        ("eps", eps),
        ("h", h),
        ("total_volume", total_volume),
    ] {
        if !(val > 0.0) || !val.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "c constant needs positive finite {name}, got {val}"
            )));
        }
    }
    Ok((v / (8.0 * total_volume))
        .min(eps * v / (8.0 * h * total_volume))
        .min(eps))
}
