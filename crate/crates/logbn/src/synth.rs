//! Synthetic field generators for verification runs.

use std::f64::consts::PI;

use rand::Rng;

use crate::domain::Grid;
use crate::field::Field;

/// Random smooth field: a few low-frequency sine-product modes under a
/// random exponential envelope. The envelope keeps the field away from exact
/// discrete eigenfunction combinations, and the sine factors vanish on the
/// boundary faces of the candidate lattice.
pub fn random_smooth(grid: &Grid, rng: &mut impl Rng) -> Field {
    let n = grid.n;
    let mut modes = Vec::new();
    for _ in 0..4 {
        let k: Vec<f64> = (0..n).map(|_| rng.gen_range(1..=2) as f64).collect();
        let c: f64 = rng.gen_range(-1.0..1.0);
        modes.push((k, c));
    }
    let envelope: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.5..0.5)).collect();
    let mut span = vec![0.0; n];
    let mut lo = vec![0.0; n];
    for j in 0..n {
        span[j] = (grid.dims[j] + 1) as f64 * grid.h;
        lo[j] = grid.origin[j] - grid.h;
    }
    grid.sample(move |x| {
        // map to the unit box of the candidate lattice
        let t: Vec<f64> = x
            .iter()
            .zip(lo.iter().zip(&span))
            .map(|(&xi, (&l, &s))| (xi - l) / s)
            .collect();
        let env = t
            .iter()
            .zip(&envelope)
            .map(|(&ti, &ai)| ai * ti)
            .sum::<f64>()
            .exp();
        env * modes
            .iter()
            .map(|(k, c)| {
                c * t
                    .iter()
                    .zip(k)
                    .map(|(&ti, &ki)| (ki * PI * ti).sin())
                    .product::<f64>()
            })
            .sum::<f64>()
    })
}

/// Random smooth positive bump with unit sup, supported inside the domain.
pub fn random_bump(grid: &Grid, rng: &mut impl Rng) -> Field {
    let n = grid.n;
    let mut c = vec![0.0; n];
    let mut min_span = f64::INFINITY;
    for j in 0..n {
        let span = (grid.dims[j] + 1) as f64 * grid.h;
        c[j] = grid.origin[j] - grid.h + span * rng.gen_range(0.35..0.65);
        min_span = min_span.min(span);
    }
    let w = min_span * rng.gen_range(0.2..0.3);
    let w2 = w * w;
    grid.sample(move |x| {
        let d2: f64 = x.iter().zip(&c).map(|(&xi, &ci)| (xi - ci) * (xi - ci)).sum();
        let q = 1.0 - d2 / w2;
        if q > 0.0 {
            q * q * q
        } else {
            0.0
        }
    })
}
