//! Adaptive 1-D quadrature used for the high-accuracy radial integrals.

/// Adaptive Simpson quadrature with absolute tolerance `eps`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, eps: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    recurse(f, a, b, fa, fm, fb, whole, eps, 48)
}

#[inline]
fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: usize,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        left + right + delta / 15.0
    } else {
        recurse(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1)
    }
}

/// Integrates over [a, b] split at geometrically spaced breakpoints anchored
/// at `scale`; resolves integrands peaked near the left end (radius ~ scale).
pub fn integrate_peaked<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, scale: f64, rel_eps: f64) -> f64 {
    debug_assert!(b > a);
    let mut cuts = vec![a];
    let mut r = scale.max(a + f64::MIN_POSITIVE);
    while r < b {
        if r > a {
            cuts.push(r);
        }
        r *= 4.0;
    }
    cuts.push(b);
    // first pass to estimate the magnitude, second pass with scaled tolerance
    let rough: f64 = cuts
        .windows(2)
        .map(|w| adaptive_simpson(f, w[0], w[1], 1e-4))
        .sum();
    let eps = rel_eps * rough.abs().max(1e-300) / cuts.len() as f64;
    cuts.windows(2)
        .map(|w| adaptive_simpson(f, w[0], w[1], eps))
        .sum()
}
