//! Conjugate gradient solve with the discrete Dirichlet Laplacian.

use crate::domain::Grid;
use crate::error::{Error, Result};
use crate::field::Field;

/// Outcome of a CG solve.
pub struct CgOutcome {
    pub iterations: usize,
    /// Final relative residual |b - Lx| / |b| in the unweighted 2-norm.
    pub rel_residual: f64,
}

/// Solves L x = b to the given relative residual, starting from `x`.
///
/// L is symmetric positive definite on interior fields, so plain CG applies.
pub fn solve_laplace(
    grid: &Grid,
    b: &Field,
    x: &mut Field,
    rel_tol: f64,
    max_iter: usize,
) -> Result<CgOutcome> {
    let m = grid.interior_len();
    debug_assert_eq!(b.len(), m);
    debug_assert_eq!(x.len(), m);

    let b_norm = b.dot_raw(b).sqrt();
    if b_norm == 0.0 {
        for v in x.as_mut_slice() {
            *v = 0.0;
        }
        return Ok(CgOutcome {
            iterations: 0,
            rel_residual: 0.0,
        });
    }

    let mut r = grid.zero_field();
    grid.laplacian_into(x, &mut r);
    for k in 0..m {
        r[k] = b[k] - r[k];
    }
    let mut p = r.clone();
    let mut ap = grid.zero_field();
    let mut rs = r.dot_raw(&r);
    let target = rel_tol * b_norm;

    for it in 0..max_iter {
        if rs.sqrt() <= target {
            return Ok(CgOutcome {
                iterations: it,
                rel_residual: rs.sqrt() / b_norm,
            });
        }
        grid.laplacian_into(&p, &mut ap);
        let pap = p.dot_raw(&ap);
        if pap <= 0.0 {
            return Err(Error::Convergence {
                what: "conjugate gradient (operator not positive on search direction)".into(),
                residual: rs.sqrt() / b_norm,
                iterations: it,
            });
        }
        let alpha = rs / pap;
        x.axpy(alpha, &p);
        r.axpy(-alpha, &ap);
        let rs_new = r.dot_raw(&r);
        let beta = rs_new / rs;
        rs = rs_new;
        for k in 0..m {
            p[k] = r[k] + beta * p[k];
        }
    }
    if rs.sqrt() <= target {
        Ok(CgOutcome {
            iterations: max_iter,
            rel_residual: rs.sqrt() / b_norm,
        })
    } else {
        Err(Error::Convergence {
            what: "conjugate gradient".into(),
            residual: rs.sqrt() / b_norm,
            iterations: max_iter,
        })
    }
}
