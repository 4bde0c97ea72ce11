//! N-dimensional binary voxel masks with uniform spacing.
//!
//! The mask is the workhorse input of the generic solvers. Construction
//! enforces a one-cell empty margin around the occupied region so that
//! Dirichlet boundary conditions and boundary perimeter terms are always
//! well defined without caller-side bookkeeping.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Default cap on total grid cells (masks, not solver state).
pub const DEFAULT_MAX_CELLS: usize = 64_000_000;

/// Binary occupancy grid with per-axis cell counts and one spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct GridMask {
    dims: Vec<usize>,
    spacing: f64,
    cells: Vec<bool>,
}

impl GridMask {
    /// Validates spacing, cell-count consistency and the one-cell margin.
    pub fn new(dims: Vec<usize>, spacing: f64, cells: Vec<bool>) -> Result<Self> {
        if !(spacing > 0.0) || !spacing.is_finite() {
            return Err(Error::InvalidShape(format!(
                "grid spacing must be positive, got {spacing}"
            )));
        }
        if dims.is_empty() {
            return Err(Error::InvalidShape("grid needs at least one axis".into()));
        }
        let total: usize = dims.iter().product();
        if total != cells.len() {
            return Err(Error::InvalidShape(format!(
                "cell count {} does not match dims {:?}",
                cells.len(),
                dims
            )));
        }
        let mask = Self {
            dims,
            spacing,
            cells,
        };
        // Margin: no occupied cell may touch the bounding box.
        let mut coords = vec![0usize; mask.dims.len()];
        for (idx, &occ) in mask.cells.iter().enumerate() {
            if occ {
                mask.coords_into(idx, &mut coords);
                for (k, &c) in coords.iter().enumerate() {
                    if c == 0 || c + 1 == mask.dims[k] {
                        return Err(Error::InvalidShape(format!(
                            "occupied cell {coords:?} touches the bounding box; one-cell margin required"
                        )));
                    }
                }
            }
        }
        Ok(mask)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Number of axes.
    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    pub fn cells(&self) -> &[bool] {
        &self.cells
    }

    pub fn is_occupied(&self, idx: usize) -> bool {
        self.cells[idx]
    }

    pub fn occupied_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.cells.iter().any(|&c| c)
    }

    /// Occupied cell count times cell volume.
    pub fn volume(&self) -> f64 {
        self.occupied_count() as f64 * self.cell_volume()
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing.powi(self.dims.len() as i32)
    }

    /// Row-major strides (last axis contiguous).
    pub fn strides(&self) -> Vec<usize> {
        let n = self.dims.len();
        let mut s = vec![1usize; n];
        for k in (0..n.saturating_sub(1)).rev() {
            s[k] = s[k + 1] * self.dims[k + 1];
        }
        s
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        let strides = self.strides();
        coords.iter().zip(&strides).map(|(c, s)| c * s).sum()
    }

    fn coords_into(&self, mut idx: usize, out: &mut [usize]) {
        for k in (0..self.dims.len()).rev() {
            out[k] = idx % self.dims[k];
            idx /= self.dims[k];
        }
    }

    pub fn coords(&self, idx: usize) -> Vec<usize> {
        let mut out = vec![0usize; self.dims.len()];
        self.coords_into(idx, &mut out);
        out
    }

    /// Same cells, spacing multiplied by `t` (rescaled domain).
    pub fn with_spacing_scaled(&self, t: f64) -> Result<Self> {
        Self::new(self.dims.clone(), self.spacing * t, self.cells.clone())
    }

    /// Section at index `k` along the last axis, as an (N-1)-dim mask.
    ///
    /// Panics if the mask is one-dimensional.
    pub fn section(&self, k: usize) -> GridMask {
        assert!(self.dims.len() >= 2, "cannot section a 1-d mask");
        let layer: usize = self.dims[1..].iter().product();
        let sub_dims = self.dims[1..].to_vec();
        let cells = self.cells[k * layer..(k + 1) * layer].to_vec();
        GridMask {
            dims: sub_dims,
            spacing: self.spacing,
            cells,
        }
    }

    /// Replicates an N-dim cross-section over `ceil(L * resolution)` layers,
    /// producing an (N+1)-dim cylinder mask. The extrusion axis is the first
    /// (slowest-varying) axis so sections are contiguous.
    pub fn extrude(&self, height: f64, resolution: usize) -> Result<GridMask> {
        self.extrude_with_budget(height, resolution, DEFAULT_MAX_CELLS)
    }

    pub fn extrude_with_budget(
        &self,
        height: f64,
        resolution: usize,
        max_cells: usize,
    ) -> Result<GridMask> {
        if !(height > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "extrusion height must be positive, got {height}"
            )));
        }
        let s = 1.0 / resolution as f64;
        if (self.spacing - s).abs() > 1e-9 * s {
            return Err(Error::InvalidArgument(format!(
                "extrusion resolution {resolution} does not match cross-section spacing {}",
                self.spacing
            )));
        }
        let layers = (height * resolution as f64).ceil() as usize;
        if layers == 0 {
            return Err(Error::InvalidResolution(format!(
                "height {height} at resolution {resolution} yields no layers"
            )));
        }
        let plane: usize = self.dims.iter().product();
        let total = plane
            .checked_mul(layers + 2)
            .ok_or_else(|| Error::ResourceLimit("extruded grid size overflows".into()))?;
        if total > max_cells {
            return Err(Error::ResourceLimit(format!(
                "extruded grid has {total} cells, budget is {max_cells}"
            )));
        }
        let mut dims = Vec::with_capacity(self.dims.len() + 1);
        dims.push(layers + 2);
        dims.extend_from_slice(&self.dims);
        let mut cells = vec![false; total];
        for k in 1..=layers {
            cells[k * plane..(k + 1) * plane].copy_from_slice(&self.cells);
        }
        GridMask::new(dims, self.spacing, cells)
    }

    /// Run-length encoding of the flat cell array, starting with a
    /// (possibly zero) run of unoccupied cells.
    pub fn rle_cells(&self) -> Vec<u64> {
        let mut runs = Vec::new();
        let mut current = false;
        let mut count: u64 = 0;
        for &c in &self.cells {
            if c == current {
                count += 1;
            } else {
                runs.push(count);
                current = c;
                count = 1;
            }
        }
        runs.push(count);
        runs
    }

    pub fn from_rle(dims: Vec<usize>, spacing: f64, runs: &[u64]) -> Result<Self> {
        let total: usize = dims.iter().product();
        let mut cells = Vec::with_capacity(total);
        let mut value = false;
        for &run in runs {
            for _ in 0..run {
                cells.push(value);
            }
            value = !value;
        }
        if cells.len() != total {
            return Err(Error::InvalidShape(format!(
                "run-length data decodes to {} cells, dims {:?} need {}",
                cells.len(),
                dims,
                total
            )));
        }
        Self::new(dims, spacing, cells)
    }
}

#[derive(Serialize, Deserialize)]
struct RleGrid {
    dims: Vec<usize>,
    spacing: f64,
    cells: Vec<u64>,
}

impl Serialize for GridMask {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        RleGrid {
            dims: self.dims.clone(),
            spacing: self.spacing,
            cells: self.rle_cells(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for GridMask {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = RleGrid::deserialize(de)?;
        GridMask::from_rle(raw.dims, raw.spacing, &raw.cells).map_err(serde::de::Error::custom)
    }
}

/// Deterministic random blob mask for property tests: a union of random
/// axis-aligned boxes and balls carved into a grid, margin respected.
pub fn random_blob_mask(dim: usize, side: usize, seed: u64, case: u64) -> Result<GridMask> {
    use rand::{Rng, SeedableRng};
    let mut rng =
        rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ case.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let dims = vec![side; dim];
    let total: usize = dims.iter().product();
    let mut cells = vec![false; total];
    let mask_tmp = GridMask {
        dims: dims.clone(),
        spacing: 1.0 / side as f64,
        cells: vec![false; total],
    };
    let n_blobs = rng.gen_range(1..=3);
    let lo = 1usize;
    let hi = side - 1; // exclusive
    for _ in 0..n_blobs {
        if rng.gen_bool(0.5) {
            // box blob
            let mut a = vec![0usize; dim];
            let mut b = vec![0usize; dim];
            for k in 0..dim {
                let x = rng.gen_range(lo..hi - 1);
                let y = rng.gen_range(x + 1..hi);
                a[k] = x;
                b[k] = y;
            }
            for idx in 0..total {
                let c = mask_tmp.coords(idx);
                if c.iter().zip(&a).zip(&b).all(|((ci, ai), bi)| ci >= ai && ci < bi) {
                    cells[idx] = true;
                }
            }
        } else {
            // ball blob
            let r = rng.gen_range((side / 6).max(2)..=(side / 3).max(3)) as f64;
            let center: Vec<f64> = (0..dim)
                .map(|_| rng.gen_range(lo as f64 + r..hi as f64 - r))
                .collect();
            for idx in 0..total {
                let c = mask_tmp.coords(idx);
                let d2: f64 = c
                    .iter()
                    .zip(&center)
                    .map(|(ci, cc)| (*ci as f64 + 0.5 - cc).powi(2))
                    .sum();
                if d2 < r * r {
                    cells[idx] = true;
                }
            }
        }
    }
    // Clamp to the margin rather than fail: blobs may brush the border.
    let clamp_mask = GridMask {
        dims: dims.clone(),
        spacing: 1.0,
        cells: vec![false; total],
    };
    for idx in 0..total {
        if cells[idx] {
            let c = clamp_mask.coords(idx);
            if c.iter().zip(&dims).any(|(ci, di)| *ci == 0 || ci + 1 == *di) {
                cells[idx] = false;
            }
        }
    }
    if !cells.iter().any(|&c| c) {
        // Fall back to a small centered box so the mask is usable.
        let mid = side / 2;
        for idx in 0..total {
            let c = clamp_mask.coords(idx);
            if c.iter().all(|ci| (*ci as i64 - mid as i64).abs() <= 2) {
                cells[idx] = true;
            }
        }
    }
    GridMask::new(dims, 1.0 / side as f64, cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_mask() -> GridMask {
        // 4x4 with a 2x2 occupied center
        let dims = vec![4, 4];
        let mut cells = vec![false; 16];
        for i in 1..3 {
            for j in 1..3 {
                cells[i * 4 + j] = true;
            }
        }
        GridMask::new(dims, 0.5, cells).unwrap()
    }

    #[test]
    fn volume_and_counts() {
        let m = small_mask();
        assert_eq!(m.occupied_count(), 4);
        assert_eq!(m.volume(), 4.0 * 0.25);
    }

    #[test]
    fn margin_enforced() {
        let mut cells = vec![false; 16];
        cells[0] = true;
        assert!(GridMask::new(vec![4, 4], 1.0, cells).is_err());
        let mut cells = vec![false; 16];
        cells[3 * 4 + 1] = true;
        assert!(GridMask::new(vec![4, 4], 1.0, cells).is_err());
    }

    #[test]
    fn rle_round_trip() {
        let m = small_mask();
        let rle = m.rle_cells();
        let back = GridMask::from_rle(m.dims().to_vec(), m.spacing(), &rle).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn extrusion_volume() {
        let m = small_mask(); // spacing 0.5 => resolution 2
        let ext = m.extrude(4.0, 2).unwrap();
        assert_eq!(ext.dim(), 3);
        assert_eq!(ext.dims()[0], 8 + 2);
        let expect = m.volume() * 4.0;
        assert!((ext.volume() - expect).abs() <= m.volume() * 0.5 + 1e-12);
        // sections replicate the cross-section
        assert_eq!(ext.section(1), m.with_spacing_scaled(1.0).unwrap());
        assert!(ext.section(0).is_empty());
    }

    #[test]
    fn extrusion_budget() {
        let m = small_mask();
        assert!(matches!(
            m.extrude_with_budget(4.0, 2, 10),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn section_round_trip_indexing() {
        let m = small_mask();
        let idx = m.index(&[2, 1]);
        assert_eq!(m.coords(idx), vec![2, 1]);
        assert!(m.is_occupied(idx));
    }
}
