//! Cheeger constants, first Dirichlet p-Laplacian eigenvalues and the
//! spectral ratio `F_p = lambda_p^{1/p} / h` on planar, volumetric and
//! cylinder domains.

pub mod cheeger;
pub mod error;
pub mod geometry;
pub mod numerics;

pub use cheeger::{
    ball_cheeger, c_constant, cylinder_envelope, estimate_v_epsilon, grid_cheeger,
    interval_cheeger, isoperimetric_profile, klr_cheeger, rectangle_cheeger, CheegerResult,
    CylinderEnvelope, GridCheegerParams, IsoperimetricProfile, PerimeterWeighting,
};
pub use error::{Error, Result};
pub use geometry::{
    random_blob_mask, unit_ball_volume, voxelize, ConvexPolygon, GridMask, Point2, ProductDomain,
    ShapeSpec,
};
