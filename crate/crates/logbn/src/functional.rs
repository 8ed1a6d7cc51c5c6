//! The modified energy functional, its L² gradient, and the Nehari
//! constraint with its scalar fiber projection.
//!
//! With u₊ = max(u, 0) and the convention 0·log 0 = 0,
//!
//! ```text
//! I(u) = ½∫|∇u|² − (1/2*)∫u₊^{2*} − (λ/2)∫u₊² − (μ/2)∫u₊²(log u₊² − 1)
//! G(u) = Lu − u₊^{2*−1} − λu₊ − μ u₊ log u₊²
//! g(u) = ∫|∇u|² − ∫u₊^{2*} − λ∫u₊² − μ∫u₊² log u₊²
//! ```

use crate::domain::Grid;
use crate::error::{Error, Result};
use crate::field::{sq_log_sq, x_log_sq, Field};

/// Problem parameters (λ, μ) in dimension N, with 2* = 2N/(N−2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub lambda: f64,
    pub mu: f64,
    pub n: usize,
    pub two_star: f64,
}

impl Params {
    pub fn new(lambda: f64, mu: f64, n: usize) -> Result<Self> {
        if !(3..=5).contains(&n) {
            return Err(Error::InvalidInput(format!(
                "dimension must be 3, 4 or 5, got {n}"
            )));
        }
        if !lambda.is_finite() || !mu.is_finite() {
            return Err(Error::InvalidInput("lambda and mu must be finite".into()));
        }
        Ok(Params {
            lambda,
            mu,
            n,
            two_star: 2.0 * n as f64 / (n as f64 - 2.0),
        })
    }

    /// v^{2*} for v ≥ 0 (integer fast paths for N = 3, 4).
    #[inline]
    pub fn pow_crit(&self, v: f64) -> f64 {
        match self.n {
            3 => v.powi(6),
            4 => v.powi(4),
            _ => v.powf(self.two_star),
        }
    }

    /// v^{2*−1} for v ≥ 0.
    #[inline]
    pub fn pow_crit_m1(&self, v: f64) -> f64 {
        match self.n {
            3 => v.powi(5),
            4 => v.powi(3),
            _ => v.powf(self.two_star - 1.0),
        }
    }
}

/// Term-by-term decomposition of I(u).
#[derive(Debug, Clone, Copy)]
pub struct EnergyBreakdown {
    /// ½∫|∇u|²
    pub dirichlet: f64,
    /// (1/2*)∫u₊^{2*}
    pub critical: f64,
    /// (λ/2)∫u₊²
    pub quadratic: f64,
    /// (μ/2)∫u₊²(log u₊² − 1)
    pub logarithmic: f64,
    /// dirichlet − critical − quadratic − logarithmic
    pub total: f64,
}

/// The four integrals that determine I and g along a fiber t ↦ t·u:
/// ∫|∇u|², ∫u₊^{2*}, ∫u₊², ∫u₊² log u₊².
#[derive(Debug, Clone, Copy)]
pub struct FiberIntegrals {
    pub grad: f64,
    pub crit: f64,
    pub l2: f64,
    pub l2log: f64,
}

impl FiberIntegrals {
    /// I(t u) from the fiber integrals.
    pub fn energy(&self, p: &Params, t: f64) -> f64 {
        let t2 = t * t;
        let tp = if t == 0.0 { 0.0 } else { p.pow_crit(t) };
        let log_t2 = if t == 0.0 { 0.0 } else { (t * t).ln() };
        0.5 * t2 * self.grad
            - tp / p.two_star * self.crit
            - 0.5 * p.lambda * t2 * self.l2
            - 0.5 * p.mu * (t2 * self.l2log + t2 * log_t2 * self.l2 - t2 * self.l2)
    }

    /// g(t u) from the fiber integrals.
    pub fn constraint(&self, p: &Params, t: f64) -> f64 {
        let t2 = t * t;
        let tp = if t == 0.0 { 0.0 } else { p.pow_crit(t) };
        let log_t2 = if t == 0.0 { 0.0 } else { (t * t).ln() };
        t2 * self.grad
            - tp * self.crit
            - p.lambda * t2 * self.l2
            - p.mu * (t2 * self.l2log + t2 * log_t2 * self.l2)
    }

    /// φ(t) = g(t u)/t², the scalar fiber map whose roots are Nehari points.
    pub fn fiber_map(&self, p: &Params, t: f64) -> f64 {
        self.grad
            - t.powf(p.two_star - 2.0) * self.crit
            - p.lambda * self.l2
            - p.mu * self.l2log
            - p.mu * (t * t).ln() * self.l2
    }
}

/// Computes the four fiber integrals of a grid field.
pub fn fiber_integrals(grid: &Grid, p: &Params, u: &Field) -> Result<FiberIntegrals> {
    grid.check_shape(u)?;
    u.ensure_finite()?;
    let mut scratch = grid.zero_field();
    let grad = grid.dirichlet_form(u, &mut scratch);
    let w = grid.h.powi(grid.n as i32);
    let (mut crit, mut l2, mut l2log) = (0.0, 0.0, 0.0);
    for &v in u.as_slice() {
        if v > 0.0 {
            crit += p.pow_crit(v);
            l2 += v * v;
            l2log += sq_log_sq(v);
        }
    }
    Ok(FiberIntegrals {
        grad,
        crit: crit * w,
        l2: l2 * w,
        l2log: l2log * w,
    })
}

/// Evaluates all terms of the modified functional.
pub fn energy(grid: &Grid, p: &Params, u: &Field) -> Result<EnergyBreakdown> {
    let fi = fiber_integrals(grid, p, u)?;
    let dirichlet = 0.5 * fi.grad;
    let critical = fi.crit / p.two_star;
    let quadratic = 0.5 * p.lambda * fi.l2;
    let logarithmic = 0.5 * p.mu * (fi.l2log - fi.l2);
    Ok(EnergyBreakdown {
        dirichlet,
        critical,
        quadratic,
        logarithmic,
        total: dirichlet - critical - quadratic - logarithmic,
    })
}

/// The L² Riesz representative of I′(u): G(u) = Lu − u₊^{2*−1} − λu₊ − μu₊ log u₊².
pub fn gradient(grid: &Grid, p: &Params, u: &Field) -> Result<Field> {
    grid.check_shape(u)?;
    u.ensure_finite()?;
    let mut out = grid.zero_field();
    gradient_into(grid, p, u, &mut out);
    Ok(out)
}

pub(crate) fn gradient_into(grid: &Grid, p: &Params, u: &Field, out: &mut Field) {
    grid.laplacian_into(u, out);
    for (g, &v) in out.as_mut_slice().iter_mut().zip(u.as_slice()) {
        if v > 0.0 {
            *g -= p.pow_crit_m1(v) + p.lambda * v + p.mu * x_log_sq(v);
        }
    }
}

/// The Nehari constraint value g(u) = ⟨I′(u), u⟩.
pub fn nehari_g(grid: &Grid, p: &Params, u: &Field) -> Result<f64> {
    let fi = fiber_integrals(grid, p, u)?;
    Ok(fi.grad - fi.crit - p.lambda * fi.l2 - p.mu * fi.l2log)
}

/// Scalar Nehari projection result.
#[derive(Debug, Clone, Copy)]
pub struct NehariProjection {
    /// t* > 0 with g(t* u) = 0.
    pub t: f64,
    /// For μ < 0 the fiber map can have two roots; the largest is returned
    /// and this flag is set.
    pub multi_root: bool,
}

const T_MIN: f64 = 1e-8;
const T_MAX: f64 = 1e8;

/// Finds the largest t in [1e−8, 1e8] with g(t·u) = 0 by bracketing and
/// bisection on the fiber map φ(t) = g(tu)/t².
pub fn nehari_project(grid: &Grid, p: &Params, u: &Field) -> Result<NehariProjection> {
    let fi = fiber_integrals(grid, p, u)?;
    nehari_project_fiber(p, &fi)
}

/// Projection from precomputed fiber integrals.
pub fn nehari_project_fiber(p: &Params, fi: &FiberIntegrals) -> Result<NehariProjection> {
    if fi.l2 <= 0.0 || fi.crit <= 0.0 {
        return Err(Error::NoProjection);
    }
    let phi = |t: f64| fi.fiber_map(p, t);
    let pexp = p.two_star - 2.0;

    let (mut lo, mut hi, multi_root);
    if p.mu > 0.0 {
        // φ decreases strictly from +∞ to −∞: unique root
        multi_root = false;
        lo = T_MIN;
        if phi(lo) < 0.0 {
            return Err(Error::Bracket(format!(
                "fiber map already negative at t = {T_MIN:.1e}"
            )));
        }
        hi = 1.0;
        while phi(hi) > 0.0 {
            hi *= 2.0;
            if hi > T_MAX {
                return Err(Error::Bracket("no sign change of the fiber map below 1e8".into()));
            }
        }
    } else if p.mu == 0.0 {
        multi_root = false;
        let head = fi.grad - p.lambda * fi.l2;
        if head <= 0.0 {
            return Err(Error::Bracket(
                "fiber map has no positive root (‖u‖² ≤ λ|u₊|₂²)".into(),
            ));
        }
        let t = (head / fi.crit).powf(1.0 / pexp);
        if !(T_MIN..=T_MAX).contains(&t) {
            return Err(Error::Bracket(format!("root t = {t:.3e} outside [1e-8, 1e8]")));
        }
        return Ok(NehariProjection { t, multi_root });
    } else {
        // μ < 0: φ(0⁺) = −∞, φ(∞) = −∞, interior maximum at t̂
        let t_hat = (-2.0 * p.mu * fi.l2 / (pexp * fi.crit)).powf(1.0 / pexp);
        let peak = phi(t_hat);
        if peak < 0.0 {
            return Err(Error::Bracket(format!(
                "fiber map peak {peak:.3e} < 0: no Nehari point on this fiber"
            )));
        }
        multi_root = peak > 0.0;
        lo = t_hat;
        hi = t_hat.max(T_MIN) * 2.0;
        while phi(hi) > 0.0 {
            hi *= 2.0;
            if hi > T_MAX {
                return Err(Error::Bracket("no sign change of the fiber map below 1e8".into()));
            }
        }
    }

    // bisection: φ(lo) ≥ 0 > φ(hi)
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if phi(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    Ok(NehariProjection { t, multi_root })
}
