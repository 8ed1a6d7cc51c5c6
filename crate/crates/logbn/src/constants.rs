//! Analytic constants of the problem: the first Dirichlet eigenpair, the
//! best Sobolev constant, and the logarithmic Sobolev inequality check.

use crate::cg::solve_laplace;
use crate::domain::Grid;
use crate::error::{Error, Result};
use crate::field::{sq_log_sq, Field};
use crate::quad::integrate_peaked;
use crate::special::sphere_area;
use crate::testfunctions::{instanton, instanton_deriv};
use std::f64::consts::PI;

/// First Dirichlet eigenvalue and its positive, L²-normalized eigenfunction.
#[derive(Debug, Clone)]
pub struct SpectralPair {
    pub lambda1: f64,
    pub phi1: Field,
    /// |L φ₁ − λ₁ φ₁|₂ / λ₁ at exit.
    pub residual: f64,
    pub iterations: usize,
}

/// Inverse power iteration with an inexact conjugate-gradient inner solve.
pub fn first_eigenpair(grid: &Grid, tol: f64) -> Result<SpectralPair> {
    if !(tol > 0.0 && tol <= 1e-4) {
        return Err(Error::InvalidInput(format!(
            "eigen tolerance must lie in (0, 1e-4], got {tol}"
        )));
    }
    let m = grid.interior_len();
    let mut v = Field::from_vec(vec![1.0; m]);
    let nv = grid.norm_l2(&v);
    v.scale(1.0 / nv);

    let inner_tol = 1e-2 * tol;
    let mut w = grid.zero_field();
    let mut lv = grid.zero_field();
    let mut lambda = 0.0;
    let mut residual = f64::INFINITY;
    const MAX_OUTER: usize = 200;

    for it in 1..=MAX_OUTER {
        // w ≈ L⁻¹ v, warm-started from the previous eigenvector scaled to
        // the expected magnitude
        if lambda > 0.0 {
            w = v.scaled(1.0 / lambda);
        }
        solve_laplace(grid, &v, &mut w, inner_tol, 50_000)?;
        let nw = grid.norm_l2(&w);
        if !(nw > 0.0) {
            return Err(Error::Convergence {
                what: "inverse power iteration (zero iterate)".into(),
                residual,
                iterations: it,
            });
        }
        w.scale(1.0 / nw);
        grid.laplacian_into(&w, &mut lv);
        lambda = grid.inner(&lv, &w);
        let mut res2 = 0.0;
        let hsc = grid.h.powi(grid.n as i32);
        for k in 0..m {
            let d = lv[k] - lambda * w[k];
            res2 += d * d;
        }
        residual = (res2 * hsc).sqrt() / lambda;
        std::mem::swap(&mut v, &mut w);
        if residual <= tol {
            // Perron sign convention: the ground eigenfunction is positive
            if grid.integral(&v) < 0.0 {
                v.scale(-1.0);
            }
            return Ok(SpectralPair {
                lambda1: lambda,
                phi1: v,
                residual,
                iterations: it,
            });
        }
    }
    Err(Error::Convergence {
        what: "inverse power iteration".into(),
        residual,
        iterations: MAX_OUTER,
    })
}

/// Best constant of the Sobolev embedding, per dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SobolevConstant {
    pub n: usize,
    pub s: f64,
}

/// Sobolev quotient ∫|∇u_ε|² / (∫ u_ε^{2*})^{2/2*} of the bubble at scale
/// `eps`, by adaptive radial quadrature on a truncated ray.
pub fn sobolev_quotient(n: usize, eps: f64) -> Result<f64> {
    if !(3..=5).contains(&n) {
        return Err(Error::InvalidInput(format!("dimension {n} unsupported")));
    }
    if !(eps > 0.0) {
        return Err(Error::InvalidInput("eps must be positive".into()));
    }
    let nf = n as f64;
    let omega = sphere_area(n);
    // truncate where the gradient integrand tail drops below 1e-14 of the total
    let c = (nf * (nf - 2.0)).powf((nf - 2.0) / 4.0);
    let tail_coeff = c * c * (nf - 2.0);
    let r_max = eps * (tail_coeff / 1e-16).powf(1.0 / (nf - 2.0)) + 10.0 * eps;

    let grad = integrate_peaked(
        &|r: f64| {
            let d = instanton_deriv(n, eps, r);
            d * d * r.powf(nf - 1.0)
        },
        0.0,
        r_max,
        eps,
        1e-12,
    );
    let two_star = 2.0 * nf / (nf - 2.0);
    let crit = integrate_peaked(
        &|r: f64| instanton(n, eps, r).powf(two_star) * r.powf(nf - 1.0),
        0.0,
        r_max,
        eps,
        1e-12,
    );
    if !(grad.is_finite() && crit > 0.0) {
        return Err(Error::Accuracy(
            "instanton quadrature produced a non-finite quotient".into(),
        ));
    }
    Ok(omega * grad / (omega * crit).powf(2.0 / two_star))
}

/// Computes S by quadrature and verifies the quotient is ε-independent.
pub fn sobolev_constant(n: usize) -> Result<SobolevConstant> {
    let s1 = sobolev_quotient(n, 1.0)?;
    for eps in [0.1, 10.0] {
        let se = sobolev_quotient(n, eps)?;
        if (se - s1).abs() > 1e-6 * s1 {
            return Err(Error::Accuracy(format!(
                "Sobolev quotient drifts with scale: {se} vs {s1}"
            )));
        }
    }
    Ok(SobolevConstant { n, s: s1 })
}

/// Two sides of the logarithmic Sobolev inequality at parameter `a`.
#[derive(Debug, Clone, Copy)]
pub struct LogSobolevReport {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Evaluates ∫u² log u² against (a/π)‖u‖² + (log|u|₂² − N(1+log a))|u|₂².
pub fn log_sobolev_check(grid: &Grid, u: &Field, a: f64) -> Result<LogSobolevReport> {
    grid.check_shape(u)?;
    u.ensure_finite()?;
    if !(a > 0.0) {
        return Err(Error::InvalidInput("log-Sobolev parameter a must be positive".into()));
    }
    let l2_sq = grid.inner(u, u);
    if l2_sq == 0.0 {
        return Err(Error::InvalidField(
            "log-Sobolev check is undefined for the zero field".into(),
        ));
    }
    let mut scratch = grid.zero_field();
    let h1_sq = grid.dirichlet_form(u, &mut scratch);
    let lhs = {
        let w = grid.h.powi(grid.n as i32);
        u.as_slice().iter().map(|&v| sq_log_sq(v)).sum::<f64>() * w
    };
    let rhs = (a / PI) * h1_sq + (l2_sq.ln() - grid.n as f64 * (1.0 + a.ln())) * l2_sq;
    let tol = 1e-10 * lhs.abs().max(rhs.abs()).max(1.0);
    Ok(LogSobolevReport {
        lhs,
        rhs,
        holds: lhs <= rhs + tol,
    })
}
