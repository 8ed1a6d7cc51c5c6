//! Grid functions on interior points.

use crate::error::{Error, Result};

/// Real-valued grid function stored on interior points in lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct Field(Vec<f64>);

impl Field {
    pub fn zeros(len: usize) -> Self {
        Field(vec![0.0; len])
    }

    pub fn from_vec(values: Vec<f64>) -> Self {
        Field(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Pointwise max(u, 0).
    pub fn positive_part(&self) -> Field {
        Field(self.0.iter().map(|&v| v.max(0.0)).collect())
    }

    pub fn scale(&mut self, a: f64) {
        for v in &mut self.0 {
            *v *= a;
        }
    }

    pub fn scaled(&self, a: f64) -> Field {
        let mut out = self.clone();
        out.scale(a);
        out
    }

    /// self += a * other
    pub fn axpy(&mut self, a: f64, other: &Field) {
        debug_assert_eq!(self.len(), other.len());
        for (v, w) in self.0.iter_mut().zip(&other.0) {
            *v += a * w;
        }
    }

    /// Unweighted euclidean inner product (no quadrature weight).
    pub fn dot_raw(&self, other: &Field) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, &v| m.max(v.abs()))
    }

    pub fn min(&self) -> f64 {
        self.0.iter().fold(f64::INFINITY, |m, &v| m.min(v))
    }

    pub fn all_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }

    pub fn ensure_finite(&self) -> Result<()> {
        if self.all_finite() {
            Ok(())
        } else {
            Err(Error::InvalidField("field contains NaN or Inf".into()))
        }
    }
}

impl std::ops::Index<usize> for Field {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl std::ops::IndexMut<usize> for Field {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

/// x^2 log(x^2) with the continuous extension 0 at x = 0.
#[inline]
pub fn sq_log_sq(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        let s = x * x;
        s * s.ln()
    }
}

/// x log(x^2) with the continuous extension 0 at x = 0.
#[inline]
pub fn x_log_sq(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * (x * x).ln()
    }
}
