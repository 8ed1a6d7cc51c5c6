//! Cutoff bubbles U_ε = φ·u_ε, their high-accuracy radial integrals, and the
//! verification of the small-ε integral expansions and energy thresholds.

use std::io::Write as IoWrite;

use crate::constants::sobolev_quotient;
use crate::domain::{Grid, MAX_DIM};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::functional::{fiber_integrals, FiberIntegrals, Params};
use crate::quad::{adaptive_simpson, integrate_peaked};
use crate::special::sphere_area;

/// Radial bubble profile u_ε(r) = [N(N−2)]^{(N−2)/4} (ε/(ε²+r²))^{(N−2)/2},
/// the extremal of the Sobolev quotient.
pub fn instanton(n: usize, eps: f64, r: f64) -> f64 {
    let nf = n as f64;
    let c = (nf * (nf - 2.0)).powf((nf - 2.0) / 4.0);
    c * (eps / (eps * eps + r * r)).powf((nf - 2.0) / 2.0)
}

/// d/dr of the bubble profile.
pub fn instanton_deriv(n: usize, eps: f64, r: f64) -> f64 {
    let nf = n as f64;
    let c = (nf * (nf - 2.0)).powf((nf - 2.0) / 4.0);
    let w = eps / (eps * eps + r * r);
    -c * (nf - 2.0) * (r / eps) * w.powf(nf / 2.0)
}

/// Cutoff shape per dimension. All profiles share the quintic smoothstep
/// decay on [ρ, 2ρ]; the variants carry the per-dimension admissibility
/// constraints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutoffProfile {
    /// N ≥ 5, φ ≡ 1 near the center.
    Generic,
    /// N = 4, ρ ≤ 1.
    RadialN4,
    /// N = 3, 4ρ² < 1.
    RadialN3,
}

/// Radial cutoff: φ ≡ 1 on [0, ρ], quintic smoothstep to 0 on [ρ, 2ρ].
#[derive(Debug, Clone)]
pub struct CutoffSpec {
    pub rho: f64,
    pub profile: CutoffProfile,
    /// Center of the bubble; grid geometric center when absent.
    pub center: Option<Vec<f64>>,
}

impl CutoffSpec {
    pub fn for_dim(n: usize, rho: f64) -> Result<Self> {
        let profile = match n {
            3 => CutoffProfile::RadialN3,
            4 => CutoffProfile::RadialN4,
            5 => CutoffProfile::Generic,
            _ => {
                return Err(Error::InvalidInput(format!(
                    "dimension must be 3, 4 or 5, got {n}"
                )))
            }
        };
        let cut = CutoffSpec {
            rho,
            profile,
            center: None,
        };
        cut.validate(n)?;
        Ok(cut)
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if !(self.rho > 0.0) {
            return Err(Error::InvalidInput("cutoff radius must be positive".into()));
        }
        match (self.profile, n) {
            (CutoffProfile::Generic, 5) => Ok(()),
            (CutoffProfile::RadialN4, 4) => {
                if self.rho <= 1.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidInput(
                        "four-dimensional cutoff needs ρ ≤ 1".into(),
                    ))
                }
            }
            (CutoffProfile::RadialN3, 3) => {
                if 4.0 * self.rho * self.rho < 1.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidInput(
                        "three-dimensional cutoff needs 4ρ² < 1".into(),
                    ))
                }
            }
            (p, n) => Err(Error::InvalidInput(format!(
                "cutoff profile {p:?} does not match dimension {n}"
            ))),
        }
    }

    /// The ρ-smallness condition used by the μ-dependent four-dimensional
    /// bound: log(1/(8 e^{3−λ/μ} ρ²)) > 1.
    pub fn mu_bound_condition(&self, p: &Params) -> bool {
        if p.mu == 0.0 {
            return false;
        }
        let val = 1.0 / (8.0 * (3.0 - p.lambda / p.mu).exp() * self.rho * self.rho);
        val.ln() > 1.0
    }

    /// Cutoff value at radius r.
    pub fn phi(&self, r: f64) -> f64 {
        if r <= self.rho {
            1.0
        } else if r >= 2.0 * self.rho {
            0.0
        } else {
            let s = (r - self.rho) / self.rho;
            1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s)
        }
    }

    /// Cutoff derivative at radius r.
    pub fn phi_deriv(&self, r: f64) -> f64 {
        if r <= self.rho || r >= 2.0 * self.rho {
            0.0
        } else {
            let s = (r - self.rho) / self.rho;
            -30.0 * s * s * (1.0 - s) * (1.0 - s) / self.rho
        }
    }

    /// 1-D integral ∫₀^{2ρ} φ² dr.
    pub fn phi_sq_integral(&self) -> f64 {
        adaptive_simpson(&|r| self.phi(r) * self.phi(r), 0.0, 2.0 * self.rho, 1e-13)
    }

    /// 1-D integral ∫_ρ^{2ρ} |φ′|² dr.
    pub fn phi_deriv_sq_integral(&self) -> f64 {
        adaptive_simpson(
            &|r| self.phi_deriv(r) * self.phi_deriv(r),
            self.rho,
            2.0 * self.rho,
            1e-12,
        )
    }
}

/// Samples U_ε = φ(|x−c|) u_ε(|x−c|) on the grid.
pub fn test_function(grid: &Grid, cut: &CutoffSpec, eps: f64) -> Result<Field> {
    cut.validate(grid.n)?;
    if !(eps > 0.0) {
        return Err(Error::InvalidInput("eps must be positive".into()));
    }
    if eps > cut.rho / 4.0 {
        return Err(Error::InvalidInput(format!(
            "eps = {eps} exceeds ρ/4 = {}",
            cut.rho / 4.0
        )));
    }
    if eps < 4.0 * grid.h {
        return Err(Error::Resolution(format!(
            "bubble scale eps = {eps} unresolved on the grid (needs eps ≥ 4h = {})",
            4.0 * grid.h
        )));
    }
    let center: Vec<f64> = match &cut.center {
        Some(c) => {
            if c.len() != grid.n {
                return Err(Error::InvalidInput(format!(
                    "center has {} coordinates, grid dimension is {}",
                    c.len(),
                    grid.n
                )));
            }
            c.clone()
        }
        None => grid.center()[..grid.n].to_vec(),
    };
    // the cutoff support must sit inside the domain: every lattice point of
    // B(center, 2ρ) has to be interior
    let support2 = (2.0 * cut.rho) * (2.0 * cut.rho);
    {
        let mut x = [0.0; MAX_DIM];
        let mut covered = 0usize;
        for k in 0..grid.interior_len() {
            grid.point(k, &mut x);
            let d2: f64 = x[..grid.n]
                .iter()
                .zip(&center)
                .map(|(&xi, &ci)| (xi - ci) * (xi - ci))
                .sum();
            if d2 < support2 {
                covered += 1;
            }
        }
        let h_n = grid.h.powi(grid.n as i32);
        let ball_vol = crate::special::ball_volume(grid.n, 2.0 * cut.rho);
        let expected = ball_vol / h_n;
        // a support ball poking outside the mask loses lattice points; allow
        // one staircase boundary layer
        let layer = crate::special::sphere_area(grid.n) * (2.0 * cut.rho).powi(grid.n as i32 - 1)
            / h_n
            * grid.h;
        if (covered as f64) < expected - 1.5 * layer {
            return Err(Error::InvalidInput(
                "cutoff support B(center, 2ρ) is not contained in the domain".into(),
            ));
        }
    }
    let n = grid.n;
    Ok(grid.sample(|x| {
        let r = x
            .iter()
            .zip(&center)
            .map(|(&xi, &ci)| (xi - ci) * (xi - ci))
            .sum::<f64>()
            .sqrt();
        cut.phi(r) * instanton(n, eps, r)
    }))
}

/// The four fiber integrals of U_ε by adaptive radial quadrature
/// (independent of any grid).
pub fn cutoff_fiber_integrals(cut: &CutoffSpec, n: usize, eps: f64) -> Result<FiberIntegrals> {
    cut.validate(n)?;
    if !(eps > 0.0) {
        return Err(Error::InvalidInput("eps must be positive".into()));
    }
    let nf = n as f64;
    let omega = sphere_area(n);
    let two_star = 2.0 * nf / (nf - 2.0);
    let top = 2.0 * cut.rho;
    // the threshold margins shrink like ε²log ε, so the integrals are pushed
    // close to the f64 noise floor
    let rel = 1e-13;

    let grad = integrate_peaked(
        &|r: f64| {
            let g = cut.phi_deriv(r) * instanton(n, eps, r) + cut.phi(r) * instanton_deriv(n, eps, r);
            g * g * r.powf(nf - 1.0)
        },
        0.0,
        top,
        eps,
        rel,
    );
    let crit = integrate_peaked(
        &|r: f64| {
            (cut.phi(r) * instanton(n, eps, r)).powf(two_star) * r.powf(nf - 1.0)
        },
        0.0,
        top,
        eps,
        rel,
    );
    let l2 = integrate_peaked(
        &|r: f64| {
            let u = cut.phi(r) * instanton(n, eps, r);
            u * u * r.powf(nf - 1.0)
        },
        0.0,
        top,
        eps,
        rel,
    );
    let l2log = integrate_peaked(
        &|r: f64| {
            let u = cut.phi(r) * instanton(n, eps, r);
            if u > 0.0 {
                let s = u * u;
                s * s.ln() * r.powf(nf - 1.0)
            } else {
                0.0
            }
        },
        0.0,
        top,
        eps,
        rel,
    );
    Ok(FiberIntegrals {
        grad: omega * grad,
        crit: omega * crit,
        l2: omega * l2,
        l2log: omega * l2log,
    })
}

/// Maximizes h(t) = I(tU) over t > 0: bracket by log scan, then golden section.
pub fn sup_fiber_energy(p: &Params, fi: &FiberIntegrals) -> Result<(f64, f64)> {
    if fi.l2 <= 0.0 || fi.crit <= 0.0 {
        return Err(Error::InvalidInput(
            "fiber maximization needs a nontrivial positive part".into(),
        ));
    }
    let h = |t: f64| fi.energy(p, t);
    // natural fiber scale from the μ = 0 maximizer
    let t_scale = (fi.grad / fi.crit).powf(1.0 / (p.two_star - 2.0));
    let lo_exp = -6.0;
    let hi_exp = 6.0;
    let steps = 481;
    let mut best_i = 0usize;
    let mut best = f64::NEG_INFINITY;
    let tval = |i: usize| t_scale * 10f64.powf(lo_exp + (hi_exp - lo_exp) * i as f64 / (steps - 1) as f64);
    for i in 0..steps {
        let v = h(tval(i));
        if v > best {
            best = v;
            best_i = i;
        }
    }
    if best_i == 0 || best_i == steps - 1 {
        return Err(Error::Bracket(
            "no interior fiber maximum found in the scan window".into(),
        ));
    }
    let (mut a, mut b) = (tval(best_i - 1), tval(best_i + 1));
    // golden section
    let inv_phi = 0.618_033_988_749_894_9_f64;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = h(c);
    let mut fd = h(d);
    for _ in 0..200 {
        if (b - a).abs() <= 1e-13 * b.abs() {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = h(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = h(d);
        }
    }
    let t_star = 0.5 * (a + b);
    Ok((t_star, h(t_star)))
}

/// Maximizes t ↦ I(tU) for a grid field U.
pub fn sup_t_energy(grid: &Grid, p: &Params, u: &Field) -> Result<(f64, f64)> {
    let fi = fiber_integrals(grid, p, u)?;
    sup_fiber_energy(p, &fi)
}

/// Per-ε integral values.
#[derive(Debug, Clone, Copy)]
pub struct EpsRow {
    pub eps: f64,
    pub grad: f64,
    pub crit: f64,
    pub l2: f64,
    pub l2log: f64,
}

/// Fitted coefficients and pass flags for the small-ε expansions.
#[derive(Debug, Clone)]
pub struct AsymptoticsReport {
    pub n: usize,
    pub rho: f64,
    /// Quadrature value of S^{N/2}.
    pub s_half: f64,
    /// Rows in decreasing ε order.
    pub rows: Vec<EpsRow>,
    /// Fitted exponent of ∫|∇U_ε|² − S^{N/2} (expected N − 2).
    pub grad_excess_slope: f64,
    /// Fitted leading coefficient of ∫U_ε² against its per-dimension rate
    /// (ε for N=3, ε² log(1/ε) for N=4, ε² for N≥5).
    pub l2_leading: f64,
    /// Fitted leading coefficient of ∫U_ε² log U_ε² against its rate
    /// (ε log ε for N=3, ε² log(1/ε) for N=4,5).
    pub l2log_leading: f64,
    /// N=3 reference constant √3 ω₃ ∫φ² dr shared by both limits.
    pub n3_reference: Option<f64>,
    /// N=4 per-ε bracket bounds for ∫U²logU²/(ε²log(1/ε)).
    pub bracket_low: Vec<f64>,
    pub bracket_high: Vec<f64>,
    pub pass_grad_slope: bool,
    pub pass_l2: bool,
    pub pass_l2log: bool,
}

impl AsymptoticsReport {
    pub fn all_pass(&self) -> bool {
        self.pass_grad_slope && self.pass_l2 && self.pass_l2log
    }

    /// CSV rows: eps, four integrals, per-ε normalized quantities, flags.
    pub fn write_csv<W: IoWrite>(&self, w: &mut W) -> Result<()> {
        writeln!(
            w,
            "eps,grad,crit,l2,l2log,grad_excess,l2_rate_ratio,l2log_rate_ratio,bracket_low,bracket_high"
        )?;
        for (i, r) in self.rows.iter().enumerate() {
            let (lo, hi) = if self.n == 4 {
                (
                    self.bracket_low.get(i).copied().unwrap_or(f64::NAN),
                    self.bracket_high.get(i).copied().unwrap_or(f64::NAN),
                )
            } else {
                (f64::NAN, f64::NAN)
            };
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{}",
                r.eps,
                r.grad,
                r.crit,
                r.l2,
                r.l2log,
                r.grad - self.s_half,
                r.l2 / l2_rate(self.n, r.eps),
                r.l2log / l2log_rate(self.n, r.eps),
                lo,
                hi
            )?;
        }
        writeln!(
            w,
            "# fitted: grad_excess_slope={} l2_leading={} l2log_leading={}",
            self.grad_excess_slope, self.l2_leading, self.l2log_leading
        )?;
        writeln!(
            w,
            "# pass: grad_slope={} l2={} l2log={}",
            self.pass_grad_slope, self.pass_l2, self.pass_l2log
        )?;
        Ok(())
    }
}

fn l2_rate(n: usize, eps: f64) -> f64 {
    match n {
        3 => eps,
        4 => eps * eps * (1.0 / eps).ln(),
        _ => eps * eps,
    }
}

fn l2log_rate(n: usize, eps: f64) -> f64 {
    match n {
        3 => eps * eps.ln(),
        _ => eps * eps * (1.0 / eps).ln(),
    }
}

/// Least-squares fit y ≈ a·f1 + b·f2 over the rows; returns (a, b).
fn fit2(xs: &[f64], ys: &[f64], f1: impl Fn(f64) -> f64, f2: impl Fn(f64) -> f64) -> (f64, f64) {
    let (mut s11, mut s12, mut s22, mut b1, mut b2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let v1 = f1(x);
        let v2 = f2(x);
        s11 += v1 * v1;
        s12 += v1 * v2;
        s22 += v2 * v2;
        b1 += v1 * y;
        b2 += v2 * y;
    }
    let det = s11 * s22 - s12 * s12;
    ((s22 * b1 - s12 * b2) / det, (s11 * b2 - s12 * b1) / det)
}

/// Regression slope of ln y against ln x.
fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let m = xs.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let lx = x.ln();
        let ly = y.ln();
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (m * sxy - sx * sy) / (m * sxx - sx * sx)
}

const SLOPE_TOL: f64 = 0.2;
const N3_RATIO_TOL: f64 = 0.05;
const N4_L2_TOL: f64 = 0.10;
const N5_STABILITY_TOL: f64 = 0.20;

/// Computes the per-ε integrals by radial quadrature and fits the small-ε
/// expansion laws, with one pass flag per verified expansion.
pub fn asymptotics_report(cut: &CutoffSpec, n: usize, eps_list: &[f64]) -> Result<AsymptoticsReport> {
    cut.validate(n)?;
    if eps_list.len() < 3 {
        return Err(Error::InvalidInput(
            "asymptotics needs at least 3 epsilon values".into(),
        ));
    }
    for w in eps_list.windows(2) {
        if !(w[1] < w[0]) {
            return Err(Error::InvalidInput(
                "epsilon list must be strictly decreasing".into(),
            ));
        }
    }
    let span = eps_list[0] / eps_list[eps_list.len() - 1];
    if span < 4.0 {
        return Err(Error::InvalidInput(format!(
            "epsilon list must span a factor of at least 4, spans {span:.2}"
        )));
    }
    if !(eps_list[eps_list.len() - 1] > 0.0) {
        return Err(Error::InvalidInput("epsilon values must be positive".into()));
    }

    let s = sobolev_quotient(n, 1.0)?;
    let s_half = s.powf(n as f64 / 2.0);

    let mut rows = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let fi = cutoff_fiber_integrals(cut, n, eps)?;
        rows.push(EpsRow {
            eps,
            grad: fi.grad,
            crit: fi.crit,
            l2: fi.l2,
            l2log: fi.l2log,
        });
    }

    let eps_v: Vec<f64> = rows.iter().map(|r| r.eps).collect();

    // (a) gradient excess slope
    let excess: Vec<f64> = rows.iter().map(|r| r.grad - s_half).collect();
    let (grad_excess_slope, pass_grad_slope) = if excess.iter().all(|&e| e > 0.0) {
        let slope = loglog_slope(&eps_v, &excess);
        (slope, (slope - (n as f64 - 2.0)).abs() <= SLOPE_TOL)
    } else {
        (f64::NAN, false)
    };

    let l2_v: Vec<f64> = rows.iter().map(|r| r.l2).collect();
    let l2log_v: Vec<f64> = rows.iter().map(|r| r.l2log).collect();

    let (l2_leading, l2log_leading, n3_reference, bracket_low, bracket_high, pass_l2, pass_l2log);
    match n {
        3 => {
            let (a, _) = fit2(&eps_v, &l2_v, |e| e, |e| e * e);
            // the raw ratio ∫U²logU²/(ε log ε) converges only at rate
            // 1/log ε, so the limit is measured through the two-term fit
            // C·ε log ε + D·ε
            let (al, _) = fit2(&eps_v, &l2log_v, |e| e * e.ln(), |e| e);
            l2_leading = a;
            l2log_leading = al;
            let omega3 = sphere_area(3);
            let reference = 3f64.sqrt() * omega3 * cut.phi_sq_integral();
            n3_reference = Some(reference);
            bracket_low = Vec::new();
            bracket_high = Vec::new();
            let ratios: Vec<f64> = rows.iter().map(|r| r.l2 / r.eps).collect();
            let last = *ratios.last().unwrap();
            pass_l2 = (a - reference).abs() <= N3_RATIO_TOL * reference
                && (last - reference).abs() <= N3_RATIO_TOL * reference
                && ratios
                    .iter()
                    .all(|&q| (q - last).abs() <= N3_RATIO_TOL * reference);
            pass_l2log = (al - reference).abs() <= N3_RATIO_TOL * reference;
        }
        4 => {
            let (a, _) = fit2(&eps_v, &l2_v, |e| e * e * (1.0 / e).ln(), |e| e * e);
            let (al, _) = fit2(&eps_v, &l2log_v, |e| e * e * (1.0 / e).ln(), |e| e * e);
            l2_leading = a;
            l2log_leading = al;
            n3_reference = None;
            let omega4 = sphere_area(4);
            let expect = 8.0 * omega4;
            pass_l2 = (a - expect).abs() <= N4_L2_TOL * expect;
            let rho = cut.rho;
            let mut lo_v = Vec::with_capacity(rows.len());
            let mut hi_v = Vec::with_capacity(rows.len());
            let mut ok = true;
            for r in &rows {
                let e2 = r.eps * r.eps;
                let lo = 8.0
                    * ((8.0 * (e2 + rho * rho))
                        / (std::f64::consts::E * (e2 + 4.0 * rho * rho).powi(2)))
                    .ln()
                    * omega4;
                let hi = 8.0
                    * ((8.0 * std::f64::consts::E * (e2 + 4.0 * rho * rho))
                        / (e2 + rho * rho).powi(2))
                    .ln()
                    * omega4;
                lo_v.push(lo);
                hi_v.push(hi);
                if r.eps <= 0.05 {
                    let measured = r.l2log / (e2 * (1.0 / r.eps).ln());
                    if !(lo <= measured && measured <= hi) {
                        ok = false;
                    }
                }
            }
            bracket_low = lo_v;
            bracket_high = hi_v;
            pass_l2log = ok;
        }
        _ => {
            let (a, _) = fit2(&eps_v, &l2_v, |e| e * e, |e| e * e * e);
            let (c0, _) = fit2(&eps_v, &l2log_v, |e| e * e * (1.0 / e).ln(), |e| e * e);
            l2_leading = a;
            l2log_leading = c0;
            n3_reference = None;
            bracket_low = Vec::new();
            bracket_high = Vec::new();
            pass_l2 = a > 0.0;
            // positivity plus stability of the fit under dropping the largest ε
            let (c0_drop, _) = fit2(
                &eps_v[1..],
                &l2log_v[1..],
                |e| e * e * (1.0 / e).ln(),
                |e| e * e,
            );
            pass_l2log = c0 > 0.0 && (c0_drop - c0).abs() <= N5_STABILITY_TOL * c0.abs();
        }
    }

    Ok(AsymptoticsReport {
        n,
        rho: cut.rho,
        s_half,
        rows,
        grad_excess_slope,
        l2_leading,
        l2log_leading,
        n3_reference,
        bracket_low,
        bracket_high,
        pass_grad_slope,
        pass_l2,
        pass_l2log,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{build_grid, DomainSpec};
    use approx::assert_relative_eq;

    #[test]
    fn instanton_peak_values() {
        assert_relative_eq!(instanton(3, 1.0, 0.0), 3f64.powf(0.25), max_relative = 1e-14);
        assert_relative_eq!(instanton(4, 1.0, 0.0), 8f64.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn instanton_scale_law() {
        for (n, eps, r) in [(3, 0.3, 0.7), (4, 0.05, 0.2), (5, 2.0, 1.0)] {
            let lhs = instanton(n, eps, r);
            let rhs = eps.powf(-(n as f64 - 2.0) / 2.0) * instanton(n, 1.0, r / eps);
            assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
        }
    }

    #[test]
    fn cutoff_shape() {
        let cut = CutoffSpec::for_dim(3, 0.2).unwrap();
        assert_eq!(cut.phi(0.0), 1.0);
        assert_eq!(cut.phi(0.2), 1.0);
        assert_eq!(cut.phi(0.4), 0.0);
        assert_eq!(cut.phi(1.0), 0.0);
        assert!(cut.phi(0.3) > 0.0 && cut.phi(0.3) < 1.0);
        // smoothstep midpoint
        assert_relative_eq!(cut.phi(0.3), 0.5, max_relative = 1e-12);
        // derivative vanishes at the junctions
        assert_eq!(cut.phi_deriv(0.2), 0.0);
        assert!(cut.phi_deriv(0.3) < 0.0);
    }

    #[test]
    fn cutoff_validation() {
        assert!(CutoffSpec::for_dim(3, 0.6).is_err()); // 4ρ² ≥ 1
        assert!(CutoffSpec::for_dim(4, 1.5).is_err()); // ρ > 1
        assert!(CutoffSpec::for_dim(4, 0.5).is_ok());
        assert!(CutoffSpec::for_dim(5, 0.25).is_ok());
    }

    #[test]
    fn test_function_center_and_support() {
        let grid = build_grid(&DomainSpec::unit_box(3, 80)).unwrap();
        let cut = CutoffSpec::for_dim(3, 0.24).unwrap();
        let eps = 0.055; // inside [4h, ρ/4]
        let u = test_function(&grid, &cut, eps).unwrap();
        // value at the center lattice point equals the bubble peak
        let c = grid.center();
        let mut x = [0.0; MAX_DIM];
        let mut center_val = 0.0;
        let mut far_max: f64 = 0.0;
        for k in 0..grid.interior_len() {
            grid.point(k, &mut x);
            let d2: f64 = (0..3).map(|j| (x[j] - c[j]) * (x[j] - c[j])).sum();
            if d2 < 1e-12 {
                center_val = u[k];
            }
            if d2.sqrt() >= 2.0 * cut.rho {
                far_max = far_max.max(u[k].abs());
            }
        }
        assert_relative_eq!(center_val, instanton(3, eps, 0.0), max_relative = 1e-12);
        assert_eq!(far_max, 0.0);
    }

    #[test]
    fn test_function_resolution_guards() {
        let grid = build_grid(&DomainSpec::unit_box(3, 80)).unwrap();
        let cut = CutoffSpec::for_dim(3, 0.24).unwrap();
        assert!(matches!(
            test_function(&grid, &cut, grid.h),
            Err(Error::Resolution(_))
        ));
        assert!(matches!(
            test_function(&grid, &cut, 0.2),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn support_outside_domain_rejected() {
        let grid = build_grid(&DomainSpec::unit_box(3, 80)).unwrap();
        let mut cut = CutoffSpec::for_dim(3, 0.24).unwrap();
        cut.center = Some(vec![0.1, 0.5, 0.5]); // B(center, 0.48) pokes out
        assert!(test_function(&grid, &cut, 0.055).is_err());
    }

    #[test]
    fn radial_crit_integral_approaches_s_half() {
        // ∫U_ε^{2*} ≈ S^{N/2} + O(ε^N)
        let s = sobolev_quotient(4, 1.0).unwrap();
        let cut = CutoffSpec::for_dim(4, 0.25).unwrap();
        let rad = cutoff_fiber_integrals(&cut, 4, 0.05).unwrap();
        assert_relative_eq!(rad.crit, s * s, max_relative = 0.01);
        let finer = cutoff_fiber_integrals(&cut, 4, 0.0125).unwrap();
        assert!((finer.crit - s * s).abs() < (rad.crit - s * s).abs());
    }

    #[test]
    fn radial_and_grid_integrals_agree() {
        let grid = build_grid(&DomainSpec::unit_box(3, 80)).unwrap();
        let cut = CutoffSpec::for_dim(3, 0.24).unwrap();
        let p = Params::new(0.0, 0.0, 3).unwrap();
        let eps = 0.055;
        let u = test_function(&grid, &cut, eps).unwrap();
        let on_grid = fiber_integrals(&grid, &p, &u).unwrap();
        let radial = cutoff_fiber_integrals(&cut, 3, eps).unwrap();
        assert_relative_eq!(on_grid.l2, radial.l2, max_relative = 0.05);
        assert_relative_eq!(on_grid.crit, radial.crit, max_relative = 0.1);
        assert_relative_eq!(on_grid.grad, radial.grad, max_relative = 0.1);
    }

    #[test]
    fn sup_fiber_closed_form_mu_zero() {
        let cut = CutoffSpec::for_dim(4, 0.25).unwrap();
        let p = Params::new(0.0, 0.0, 4).unwrap();
        let fi = cutoff_fiber_integrals(&cut, 4, 0.05).unwrap();
        let (t_star, level) = sup_fiber_energy(&p, &fi).unwrap();
        let expect_t = (fi.grad / fi.crit).powf(1.0 / (p.two_star - 2.0));
        assert_relative_eq!(t_star, expect_t, max_relative = 1e-6);
        // level = (1/N) ‖U‖² t*² − ... reduces to the Rayleigh-quotient form
        let expect_level = (fi.grad / fi.crit.powf(2.0 / p.two_star)).powf(p.n as f64 / 2.0)
            / p.n as f64;
        assert_relative_eq!(level, expect_level, max_relative = 1e-8);
    }

    #[test]
    fn asymptotics_n3_ratios() {
        let cut = CutoffSpec::for_dim(3, 0.25).unwrap();
        let eps_list = [0.002, 0.001, 0.0005, 0.00025];
        let rep = asymptotics_report(&cut, 3, &eps_list).unwrap();
        let reference = rep.n3_reference.unwrap();
        assert!(rep.pass_l2, "l2 leading {} vs {}", rep.l2_leading, reference);
        assert!(rep.pass_l2log, "l2log leading {} vs {}", rep.l2log_leading, reference);
        assert!(rep.pass_grad_slope, "slope {}", rep.grad_excess_slope);
        assert!((rep.grad_excess_slope - 1.0).abs() <= 0.2);
    }

    #[test]
    fn asymptotics_n5_slope_and_c0() {
        let cut = CutoffSpec::for_dim(5, 0.25).unwrap();
        let eps_list = [0.05, 0.025, 0.0125];
        let rep = asymptotics_report(&cut, 5, &eps_list).unwrap();
        assert!(rep.pass_grad_slope, "slope {}", rep.grad_excess_slope);
        assert!((rep.grad_excess_slope - 3.0).abs() <= 0.2);
        assert!(rep.pass_l2log, "C0 {}", rep.l2log_leading);
        assert!(rep.l2log_leading > 0.0);
    }

    #[test]
    fn asymptotics_n4_bracket_and_coefficient() {
        let cut = CutoffSpec::for_dim(4, 0.25).unwrap();
        let eps_list = [0.05, 0.025, 0.0125, 0.00625];
        let rep = asymptotics_report(&cut, 4, &eps_list).unwrap();
        assert!(rep.pass_grad_slope, "slope {}", rep.grad_excess_slope);
        // leading coefficient of ∫U² is 8 ω₄ = 8 · 2π²
        let expect = 8.0 * sphere_area(4);
        assert!(
            (rep.l2_leading - expect).abs() <= 0.1 * expect,
            "l2 leading {} vs {}",
            rep.l2_leading,
            expect
        );
        assert!(rep.pass_l2log, "bracket violated");
        for (i, r) in rep.rows.iter().enumerate() {
            let measured = r.l2log / (r.eps * r.eps * (1.0 / r.eps).ln());
            assert!(rep.bracket_low[i] <= measured && measured <= rep.bracket_high[i]);
        }
    }

    #[test]
    fn asymptotics_input_validation() {
        let cut = CutoffSpec::for_dim(3, 0.2).unwrap();
        assert!(asymptotics_report(&cut, 3, &[0.1, 0.05]).is_err());
        assert!(asymptotics_report(&cut, 3, &[0.1, 0.2, 0.05]).is_err());
        assert!(asymptotics_report(&cut, 3, &[0.1, 0.07, 0.05]).is_err());
    }
}
