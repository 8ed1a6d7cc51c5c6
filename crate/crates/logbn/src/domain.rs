//! Bounded domains as masked uniform grids, with the discrete Dirichlet
//! Laplacian, midpoint quadrature, and geometric constants.
//!
//! A domain is sampled on a uniform lattice of candidate points with spacing
//! `h`. Points whose position lies strictly inside the domain are interior
//! unknowns; every other lattice position (and everything beyond the lattice)
//! carries the homogeneous Dirichlet value 0. Interior points are ordered
//! lexicographically (last axis fastest) and all fields store their values in
//! that order.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::special::ball_volume;

pub const MAX_DIM: usize = 5;

const NO_NEIGHBOR: u32 = u32::MAX;

/// Shape of the domain a grid discretizes.
#[derive(Debug, Clone, PartialEq)]
pub enum DomainKind {
    /// Axis-aligned box with the given per-axis side lengths, anchored at 0.
    Box { extents: Vec<f64> },
    /// Ball of the given radius centered in its bounding box.
    Ball { radius: f64 },
    /// Arbitrary 0/1 mask loaded from a text file.
    MaskFile { path: PathBuf },
}

/// Specification of a discretized bounded domain.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainSpec {
    pub kind: DomainKind,
    /// Spatial dimension, 3 to 5.
    pub n: usize,
    /// Interior lattice points per unit length (h = 1/resolution).
    pub resolution: usize,
}

impl DomainSpec {
    pub fn unit_box(n: usize, resolution: usize) -> Self {
        DomainSpec {
            kind: DomainKind::Box {
                extents: vec![1.0; n],
            },
            n,
            resolution,
        }
    }

    pub fn ball(n: usize, radius: f64, resolution: usize) -> Self {
        DomainSpec {
            kind: DomainKind::Ball { radius },
            n,
            resolution,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(3..=MAX_DIM).contains(&self.n) {
            return Err(Error::InvalidInput(format!(
                "dimension must be 3, 4 or 5, got {}",
                self.n
            )));
        }
        match &self.kind {
            DomainKind::Box { extents } => {
                if extents.len() != self.n {
                    return Err(Error::InvalidInput(format!(
                        "box needs {} extents, got {}",
                        self.n,
                        extents.len()
                    )));
                }
                if extents.iter().any(|&e| !(e > 0.0) || !e.is_finite()) {
                    return Err(Error::InvalidInput(
                        "box extents must be strictly positive".into(),
                    ));
                }
            }
            DomainKind::Ball { radius } => {
                if !(radius > &0.0) || !radius.is_finite() {
                    return Err(Error::InvalidInput(
                        "ball radius must be strictly positive".into(),
                    ));
                }
            }
            DomainKind::MaskFile { .. } => {}
        }
        Ok(())
    }
}

/// Masked uniform grid over the interior of a bounded domain.
#[derive(Debug, Clone)]
pub struct Grid {
    /// Spatial dimension.
    pub n: usize,
    /// Lattice spacing.
    pub h: f64,
    /// Candidate-lattice extents per axis.
    pub dims: Vec<usize>,
    /// Physical coordinate of lattice index 0 per axis.
    pub origin: Vec<f64>,
    /// Domain volume |Ω| (closed form for box/ball, h^N-count for masks).
    pub volume: f64,
    /// Lattice indices of interior points, lexicographic (last axis fastest).
    interior: Vec<u32>,
    /// Inside/outside flag per lattice point.
    mask: Vec<bool>,
    /// Interior index per lattice point (NO_NEIGHBOR where not interior).
    lattice_to_interior: Vec<u32>,
    /// 2N neighbor interior indices per interior point (NO_NEIGHBOR = value 0).
    neighbors: Vec<u32>,
}

impl Grid {
    pub fn interior_len(&self) -> usize {
        self.interior.len()
    }

    pub fn zero_field(&self) -> Field {
        Field::zeros(self.interior_len())
    }

    pub fn check_shape(&self, u: &Field) -> Result<()> {
        if u.len() != self.interior_len() {
            return Err(Error::ShapeMismatch {
                expected: self.interior_len(),
                got: u.len(),
            });
        }
        Ok(())
    }

    fn strides(&self) -> [usize; MAX_DIM] {
        let mut s = [0usize; MAX_DIM];
        s[self.n - 1] = 1;
        for j in (0..self.n - 1).rev() {
            s[j] = s[j + 1] * self.dims[j + 1];
        }
        s
    }

    /// Per-axis lattice coordinates of the k-th interior point.
    pub fn lattice_coords(&self, k: usize, out: &mut [usize; MAX_DIM]) {
        let mut rem = self.interior[k] as usize;
        for j in (0..self.n).rev() {
            out[j] = rem % self.dims[j];
            rem /= self.dims[j];
        }
    }

    /// Physical position of the k-th interior point.
    pub fn point(&self, k: usize, out: &mut [f64; MAX_DIM]) {
        let mut idx = [0usize; MAX_DIM];
        self.lattice_coords(k, &mut idx);
        for j in 0..self.n {
            out[j] = self.origin[j] + idx[j] as f64 * self.h;
        }
    }

    /// Geometric center of the candidate lattice.
    pub fn center(&self) -> [f64; MAX_DIM] {
        let mut c = [0.0; MAX_DIM];
        for j in 0..self.n {
            c[j] = self.origin[j] + (self.dims[j] - 1) as f64 * self.h / 2.0;
        }
        c
    }

    /// Builds a field by sampling `f` at interior point positions.
    pub fn sample(&self, f: impl Fn(&[f64]) -> f64) -> Field {
        let mut vals = Vec::with_capacity(self.interior_len());
        let mut x = [0.0; MAX_DIM];
        for k in 0..self.interior_len() {
            self.point(k, &mut x);
            vals.push(f(&x[..self.n]));
        }
        Field::from_vec(vals)
    }

    /// Applies the (2N+1)-point negative Laplacian into `out`.
    pub fn laplacian_into(&self, u: &Field, out: &mut Field) {
        debug_assert_eq!(u.len(), self.interior_len());
        debug_assert_eq!(out.len(), self.interior_len());
        let inv_h2 = 1.0 / (self.h * self.h);
        let diag = 2.0 * self.n as f64;
        let nn = 2 * self.n;
        let uu = u.as_slice();
        let oo = out.as_mut_slice();
        for k in 0..uu.len() {
            let mut acc = diag * uu[k];
            let base = k * nn;
            for t in 0..nn {
                let nb = self.neighbors[base + t];
                if nb != NO_NEIGHBOR {
                    acc -= uu[nb as usize];
                }
            }
            oo[k] = acc * inv_h2;
        }
    }

    /// Midpoint-rule integral Σ v h^N over interior points.
    pub fn integral(&self, v: &Field) -> f64 {
        let w = self.h.powi(self.n as i32);
        v.as_slice().iter().sum::<f64>() * w
    }

    /// L² inner product ∫ u v.
    pub fn inner(&self, u: &Field, v: &Field) -> f64 {
        let w = self.h.powi(self.n as i32);
        u.dot_raw(v) * w
    }

    /// L² norm |u|₂.
    pub fn norm_l2(&self, u: &Field) -> f64 {
        self.inner(u, u).max(0.0).sqrt()
    }

    /// Dirichlet form ⟨L u, u⟩ = ∫ |∇u|² (discrete).
    pub fn dirichlet_form(&self, u: &Field, scratch: &mut Field) -> f64 {
        self.laplacian_into(u, scratch);
        self.inner(scratch, u)
    }

    /// Largest lattice-ball radius fitting inside the mask (distance transform).
    pub fn inradius(&self) -> f64 {
        let padded: Vec<usize> = self.dims.iter().map(|d| d + 2).collect();
        let total: usize = padded.iter().product();
        const FAR: f64 = 1e20;
        // squared distance (lattice units) to the nearest non-interior point;
        // the pad ring models the Dirichlet exterior
        let mut cost = vec![0.0f64; total];
        {
            let mut strides = vec![0usize; self.n];
            strides[self.n - 1] = 1;
            for j in (0..self.n - 1).rev() {
                strides[j] = strides[j + 1] * padded[j + 1];
            }
            let own_strides = self.strides();
            for (lat, &inside) in self.mask.iter().enumerate() {
                if inside {
                    let mut rem = lat;
                    let mut pidx = 0usize;
                    for j in 0..self.n {
                        let c = rem / own_strides[j];
                        rem %= own_strides[j];
                        pidx += (c + 1) * strides[j];
                    }
                    cost[pidx] = FAR;
                }
            }
        }
        // Felzenszwalb-Huttenlocher separable squared distance transform
        for axis in 0..self.n {
            let len = padded[axis];
            let mut f = vec![0.0f64; len];
            let mut d = vec![0.0f64; len];
            let mut v = vec![0usize; len];
            let mut z = vec![0.0f64; len + 1];
            let outer: usize = padded
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != axis)
                .map(|(_, d)| d)
                .product();
            let mut strides = vec![0usize; self.n];
            strides[self.n - 1] = 1;
            for j in (0..self.n - 1).rev() {
                strides[j] = strides[j + 1] * padded[j + 1];
            }
            let axis_stride = strides[axis];
            for line in 0..outer {
                // base offset of this lattice line
                let mut rem = line;
                let mut base = 0usize;
                for j in 0..self.n {
                    if j == axis {
                        continue;
                    }
                    let c = rem % padded[j];
                    rem /= padded[j];
                    base += c * strides[j];
                }
                for i in 0..len {
                    f[i] = cost[base + i * axis_stride];
                }
                dt_1d(&f, &mut d, &mut v, &mut z);
                for i in 0..len {
                    cost[base + i * axis_stride] = d[i];
                }
            }
        }
        let max_sq = cost.iter().cloned().fold(0.0f64, f64::max);
        self.h * max_sq.sqrt()
    }
}

/// 1-D squared distance transform (lower envelope of parabolas).
fn dt_1d(f: &[f64], d: &mut [f64], v: &mut [usize], z: &mut [f64]) {
    let n = f.len();
    let mut k = 0usize;
    v[0] = 0;
    z[0] = f64::NEG_INFINITY;
    z[1] = f64::INFINITY;
    for q in 1..n {
        loop {
            let p = v[k];
            let s = ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64)) / (2.0 * (q - p) as f64);
            if s <= z[k] {
                if k == 0 {
                    break;
                }
                k -= 1;
            } else {
                k += 1;
                v[k] = q;
                z[k] = s;
                z[k + 1] = f64::INFINITY;
                break;
            }
        }
    }
    k = 0;
    for q in 0..n {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let p = v[k];
        let dq = q as f64 - p as f64;
        d[q] = dq * dq + f[p];
    }
}

fn build_from_mask(
    n: usize,
    h: f64,
    dims: Vec<usize>,
    origin: Vec<f64>,
    mask: Vec<bool>,
    volume: Option<f64>,
) -> Result<Grid> {
    let lattice_len: usize = dims.iter().product();
    debug_assert_eq!(mask.len(), lattice_len);
    let mut interior = Vec::new();
    let mut lattice_to_interior = vec![NO_NEIGHBOR; lattice_len];
    for (lat, &inside) in mask.iter().enumerate() {
        if inside {
            lattice_to_interior[lat] = interior.len() as u32;
            interior.push(lat as u32);
        }
    }
    if interior.is_empty() {
        return Err(Error::DegenerateDomain(
            "no interior points; resolution too coarse for the domain".into(),
        ));
    }
    let volume = volume.unwrap_or(h.powi(n as i32) * interior.len() as f64);
    let mut grid = Grid {
        n,
        h,
        dims,
        origin,
        volume,
        interior,
        mask,
        lattice_to_interior,
        neighbors: Vec::new(),
    };
    let strides = grid.strides();
    let mut neighbors = Vec::with_capacity(grid.interior.len() * 2 * n);
    let mut idx = [0usize; MAX_DIM];
    for k in 0..grid.interior.len() {
        grid.lattice_coords(k, &mut idx);
        let lat = grid.interior[k] as usize;
        for j in 0..n {
            for dir in [-1isize, 1] {
                let c = idx[j] as isize + dir;
                if c < 0 || c >= grid.dims[j] as isize {
                    neighbors.push(NO_NEIGHBOR);
                } else {
                    let nb_lat = (lat as isize + dir * strides[j] as isize) as usize;
                    neighbors.push(grid.lattice_to_interior[nb_lat]);
                }
            }
        }
    }
    grid.neighbors = neighbors;
    Ok(grid)
}

/// Builds the masked grid for a domain specification.
pub fn build_grid(spec: &DomainSpec) -> Result<Grid> {
    spec.validate()?;
    let res = spec.resolution;
    let h = 1.0 / res as f64;
    let grid = match &spec.kind {
        DomainKind::Box { extents } => {
            let mut dims = Vec::with_capacity(spec.n);
            let mut volume = 1.0;
            for &e in extents {
                let cells = (e * res as f64).round().max(0.0) as usize;
                if cells < 2 {
                    return Err(Error::DegenerateDomain(format!(
                        "extent {e} at resolution {res} leaves no interior points"
                    )));
                }
                dims.push(cells - 1);
                volume *= cells as f64 * h;
            }
            let origin = vec![h; spec.n];
            let mask = vec![true; dims.iter().product()];
            build_from_mask(spec.n, h, dims, origin, mask, Some(volume))?
        }
        DomainKind::Ball { radius } => {
            let r = *radius;
            let cells = (2.0 * r * res as f64).round() as usize;
            if cells < 2 {
                return Err(Error::DegenerateDomain(format!(
                    "ball radius {r} at resolution {res} leaves no interior points"
                )));
            }
            let dims = vec![cells - 1; spec.n];
            let origin = vec![-r + h; spec.n];
            let lattice_len: usize = dims.iter().product();
            let mut mask = vec![false; lattice_len];
            let mut strides = vec![0usize; spec.n];
            strides[spec.n - 1] = 1;
            for j in (0..spec.n - 1).rev() {
                strides[j] = strides[j + 1] * dims[j + 1];
            }
            let r2 = r * r;
            for (lat, m) in mask.iter_mut().enumerate() {
                let mut rem = lat;
                let mut d2 = 0.0;
                for j in 0..spec.n {
                    let c = rem / strides[j];
                    rem %= strides[j];
                    let x = origin[j] + c as f64 * h;
                    d2 += x * x;
                }
                *m = d2 < r2;
            }
            build_from_mask(
                spec.n,
                h,
                dims,
                origin,
                mask,
                Some(ball_volume(spec.n, r)),
            )?
        }
        DomainKind::MaskFile { path } => read_mask_file(path)?,
    };
    if res < 8 {
        return Err(Error::InvalidInput(format!(
            "resolution must be at least 8, got {res}"
        )));
    }
    Ok(grid)
}

/// Applies the (2N+1)-point discrete negative Laplacian with zero boundary.
pub fn laplacian_apply(grid: &Grid, u: &Field) -> Result<Field> {
    grid.check_shape(u)?;
    let mut out = grid.zero_field();
    grid.laplacian_into(u, &mut out);
    Ok(out)
}

/// Midpoint quadrature Σ v(x) h^N over interior points.
pub fn integrate(grid: &Grid, v: &Field) -> Result<f64> {
    grid.check_shape(v)?;
    Ok(grid.integral(v))
}

/// Inradius ρ_max of the domain.
pub fn rho_max(spec: &DomainSpec) -> Result<f64> {
    spec.validate()?;
    match &spec.kind {
        DomainKind::Box { extents } => Ok(extents.iter().cloned().fold(f64::INFINITY, f64::min) / 2.0),
        DomainKind::Ball { radius } => Ok(*radius),
        DomainKind::MaskFile { path } => {
            let grid = read_mask_file(path)?;
            Ok(grid.inradius())
        }
    }
}

/// Reads a mask-domain file: header "N h dim1 ... dimN", then one 0/1 flag
/// per lattice point in lexicographic order.
pub fn read_mask_file(path: &Path) -> Result<Grid> {
    let file = File::open(path)?;
    let mut reader = BufReader::new(file);
    let mut header = String::new();
    reader.read_line(&mut header)?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() < 2 {
        return Err(Error::Parse("mask header too short".into()));
    }
    let n: usize = toks[0]
        .parse()
        .map_err(|_| Error::Parse("mask header: bad dimension".into()))?;
    if !(3..=MAX_DIM).contains(&n) {
        return Err(Error::Parse(format!("mask header: unsupported dimension {n}")));
    }
    if toks.len() != 2 + n {
        return Err(Error::Parse(format!(
            "mask header: expected {} fields, got {}",
            2 + n,
            toks.len()
        )));
    }
    let h: f64 = toks[1]
        .parse()
        .map_err(|_| Error::Parse("mask header: bad spacing".into()))?;
    if !(h > 0.0) {
        return Err(Error::Parse("mask header: spacing must be positive".into()));
    }
    let mut dims = Vec::with_capacity(n);
    for t in &toks[2..] {
        let d: usize = t
            .parse()
            .map_err(|_| Error::Parse("mask header: bad dims".into()))?;
        if d == 0 {
            return Err(Error::Parse("mask header: zero-sized axis".into()));
        }
        dims.push(d);
    }
    let lattice_len: usize = dims.iter().product();
    let mut mask = Vec::with_capacity(lattice_len);
    for line in reader.lines() {
        let line = line?;
        for tok in line.split_whitespace() {
            match tok {
                "0" => mask.push(false),
                "1" => mask.push(true),
                other => {
                    return Err(Error::Parse(format!("mask body: expected 0/1, got {other}")))
                }
            }
        }
    }
    if mask.len() != lattice_len {
        return Err(Error::Parse(format!(
            "mask body: expected {lattice_len} flags, got {}",
            mask.len()
        )));
    }
    build_from_mask(n, h, dims, vec![h; n], mask, None)
}

/// Writes a grid's mask in the mask-domain file format.
pub fn write_mask_file(grid: &Grid, path: &Path) -> Result<()> {
    let file = File::create(path)?;
    let mut w = BufWriter::new(file);
    write!(w, "{} {}", grid.n, grid.h)?;
    for d in &grid.dims {
        write!(w, " {d}")?;
    }
    writeln!(w)?;
    for chunk in grid.mask.chunks(64) {
        let line: Vec<&str> = chunk.iter().map(|&b| if b { "1" } else { "0" }).collect();
        writeln!(w, "{}", line.join(" "))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn unit_cube_counts() {
        let grid = build_grid(&DomainSpec::unit_box(3, 32)).unwrap();
        assert_eq!(grid.interior_len(), 31 * 31 * 31);
        assert_relative_eq!(grid.h, 1.0 / 32.0);
        assert_relative_eq!(grid.volume, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn ball_volume_oracle() {
        // oracle: |B_r| = π² r⁴ / 2 in four dimensions
        let grid = build_grid(&DomainSpec::ball(4, 1.0, 16)).unwrap();
        assert_relative_eq!(grid.volume, PI * PI / 2.0, max_relative = 0.05);
        // the h^N-weighted count matches |Ω| within one boundary layer
        let counted = grid.h.powi(4) * grid.interior_len() as f64;
        let layer = 2.0 * PI * PI * grid.h; // surface area of S³ times h
        assert!((grid.volume - counted).abs() <= layer);
    }

    #[test]
    fn coarse_resolution_is_degenerate() {
        let spec = DomainSpec::unit_box(3, 1);
        match build_grid(&spec) {
            Err(Error::DegenerateDomain(_)) => {}
            other => panic!("expected degenerate domain, got {other:?}"),
        }
    }

    #[test]
    fn sub_minimum_resolution_rejected() {
        let spec = DomainSpec::unit_box(3, 4);
        match build_grid(&spec) {
            Err(Error::InvalidInput(_)) => {}
            other => panic!("expected invalid input, got {other:?}"),
        }
    }

    #[test]
    fn laplacian_of_zero_is_zero() {
        let grid = build_grid(&DomainSpec::unit_box(3, 8)).unwrap();
        let z = grid.zero_field();
        let lz = laplacian_apply(&grid, &z).unwrap();
        assert!(lz.as_slice().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn laplacian_eigenfunction_oracle() {
        // u = Π sin(π x_j) is a discrete eigenfunction; eigenvalue ≈ Nπ² + O(h²)
        let grid = build_grid(&DomainSpec::unit_box(3, 24)).unwrap();
        let u = grid.sample(|x| x.iter().map(|&xi| (PI * xi).sin()).product());
        let lu = laplacian_apply(&grid, &u).unwrap();
        let lambda = grid.inner(&lu, &u) / grid.inner(&u, &u);
        assert_relative_eq!(lambda, 3.0 * PI * PI, max_relative = 2e-3);
        // pointwise: Lu = λ u for the exact discrete eigenvalue
        let exact = 3.0 * (4.0 / (grid.h * grid.h)) * (PI * grid.h / 2.0).sin().powi(2);
        for k in 0..u.len() {
            assert!((lu[k] - exact * u[k]).abs() < 1e-9 * exact);
        }
    }

    #[test]
    fn laplacian_constant_field_boundary_counts() {
        let grid = build_grid(&DomainSpec::unit_box(3, 8)).unwrap();
        let ones = Field::from_vec(vec![1.0; grid.interior_len()]);
        let l = laplacian_apply(&grid, &ones).unwrap();
        let inv_h2 = 1.0 / (grid.h * grid.h);
        let mut idx = [0usize; MAX_DIM];
        for k in 0..l.len() {
            grid.lattice_coords(k, &mut idx);
            let boundary_neighbors: usize = (0..3)
                .map(|j| {
                    (idx[j] == 0) as usize + (idx[j] == grid.dims[j] - 1) as usize
                })
                .sum();
            assert_relative_eq!(l[k], boundary_neighbors as f64 * inv_h2, epsilon = 1e-9);
        }
    }

    #[test]
    fn integrate_constants() {
        let grid = build_grid(&DomainSpec::unit_box(3, 32)).unwrap();
        let ones = Field::from_vec(vec![1.0; grid.interior_len()]);
        let v = integrate(&grid, &ones).unwrap();
        assert!((v - 1.0).abs() < 0.1); // within the boundary layer O(h)
        let z = grid.zero_field();
        assert_eq!(integrate(&grid, &z).unwrap(), 0.0);
    }

    #[test]
    fn integrate_sin_squared_oracle() {
        // ∫ Π sin²(π x_j) = 2^{-N}
        let grid = build_grid(&DomainSpec::unit_box(3, 32)).unwrap();
        let u = grid.sample(|x| x.iter().map(|&xi| (PI * xi).sin()).product::<f64>());
        let sq = Field::from_vec(u.as_slice().iter().map(|&v| v * v).collect());
        let v = integrate(&grid, &sq).unwrap();
        assert_relative_eq!(v, 0.125, max_relative = 0.02);
    }

    #[test]
    fn shape_mismatch_detected() {
        let grid = build_grid(&DomainSpec::unit_box(3, 8)).unwrap();
        let bad = Field::zeros(grid.interior_len() + 1);
        assert!(matches!(
            laplacian_apply(&grid, &bad),
            Err(Error::ShapeMismatch { .. })
        ));
        assert!(matches!(
            integrate(&grid, &bad),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn rho_max_closed_forms() {
        assert_relative_eq!(rho_max(&DomainSpec::unit_box(3, 16)).unwrap(), 0.5);
        assert_relative_eq!(rho_max(&DomainSpec::ball(3, 2.0, 16)).unwrap(), 2.0);
        let spec = DomainSpec {
            kind: DomainKind::Box {
                extents: vec![1.0, 2.0, 3.0],
            },
            n: 3,
            resolution: 16,
        };
        assert_relative_eq!(rho_max(&spec).unwrap(), 0.5);
    }

    #[test]
    fn mask_roundtrip_and_inradius() {
        let grid = build_grid(&DomainSpec::unit_box(3, 16)).unwrap();
        let dir = std::env::temp_dir().join("logbn_mask_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cube.mask");
        write_mask_file(&grid, &path).unwrap();
        let re = read_mask_file(&path).unwrap();
        assert_eq!(re.interior_len(), grid.interior_len());
        assert_eq!(re.dims, grid.dims);
        // cube inradius through the distance transform
        assert_relative_eq!(re.inradius(), 0.5, max_relative = 1e-12);
        let ball = build_grid(&DomainSpec::ball(3, 1.0, 16)).unwrap();
        let rho = ball.inradius();
        assert!(rho > 0.85 && rho <= 1.0, "staircase inradius {rho}");
    }

    #[test]
    fn self_adjoint_and_positive() {
        let grid = build_grid(&DomainSpec::unit_box(3, 10)).unwrap();
        let u = grid.sample(|x| (PI * x[0]).sin() * (2.0 * PI * x[1]).sin() * x[2]);
        let v = grid.sample(|x| x[0] * x[1] + (PI * x[2]).cos());
        let lu = laplacian_apply(&grid, &u).unwrap();
        let lv = laplacian_apply(&grid, &v).unwrap();
        let a = grid.inner(&lu, &v);
        let b = grid.inner(&u, &lv);
        assert_relative_eq!(a, b, max_relative = 1e-12);
        let quad = grid.inner(&lu, &u);
        assert!(quad > 0.0);
    }
}
