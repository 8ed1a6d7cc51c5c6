//! Classification of the (λ, μ) parameter plane into existence and
//! nonexistence regions, the boundary curves between them, and phase-diagram
//! sampling with optional solver confirmation.

use std::io::Write as IoWrite;

use crate::domain::Grid;
use crate::error::{Error, Result};
use crate::functional::Params;
use crate::solvers::{mountain_pass_solve, positivity_check, MPConfig, SolveStatus};

/// The analytic constants of a fixed domain that the region rules reference.
#[derive(Debug, Clone, Copy)]
pub struct DomainConstants {
    pub lambda1: f64,
    pub volume: f64,
    /// Best Sobolev constant for the dimension.
    pub s: f64,
    pub rho_max: f64,
    pub n: usize,
}

impl DomainConstants {
    pub fn validate(&self) -> Result<()> {
        if !(3..=5).contains(&self.n) {
            return Err(Error::InvalidInput(format!(
                "dimension must be 3, 4 or 5, got {}",
                self.n
            )));
        }
        if !(self.lambda1 > 0.0 && self.volume > 0.0 && self.s > 0.0 && self.rho_max > 0.0) {
            return Err(Error::InvalidInput(
                "domain constants must all be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Verdict label for a parameter pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionLabel {
    A0Exists,
    B0Exists,
    C0Exists,
    N4ExistsEta3,
    NonexistenceT14,
    Unknown,
}

impl std::fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RegionLabel::A0Exists => "A0_exists",
            RegionLabel::B0Exists => "B0_exists",
            RegionLabel::C0Exists => "C0_exists",
            RegionLabel::N4ExistsEta3 => "N4_exists_eta3",
            RegionLabel::NonexistenceT14 => "nonexistence_T14",
            RegionLabel::Unknown => "unknown",
        };
        write!(f, "{s}")
    }
}

/// Classification outcome with the deciding rule and its signed margin.
#[derive(Debug, Clone, Copy)]
pub struct RegionVerdict {
    pub label: RegionLabel,
    /// Short tag naming the rule that decided the label.
    pub basis: &'static str,
    /// Signed distance of the deciding inequality from zero.
    pub margin: f64,
}

/// Left side of the nonexistence inequality
/// −(N−2)μ/2 + ((N−2)μ/2)·log(−(N−2)μ/2) + λ − λ₁.
pub fn t14_expression(p: &Params, lambda1: f64) -> f64 {
    let m = (p.n as f64 - 2.0) * p.mu / 2.0;
    -m + m * (-m).ln() + p.lambda - lambda1
}

/// True iff μ < 0 and the nonexistence inequality holds (boundary included).
pub fn nonexistence_predicate(p: &Params, lambda1: f64) -> bool {
    if p.mu >= 0.0 {
        return false;
    }
    t14_expression(p, lambda1) >= 0.0
}

/// Mountain-pass floor α of the B₀ region (positive inside it).
fn alpha_b0(p: &Params, k: &DomainConstants) -> Option<f64> {
    if p.mu < 0.0 && p.lambda >= 0.0 && p.lambda < k.lambda1 {
        let nf = p.n as f64;
        let ratio = (k.lambda1 - p.lambda) / k.lambda1;
        Some(ratio.powf(nf / 2.0) * k.s.powf(nf / 2.0) / nf + 0.5 * p.mu * k.volume)
    } else {
        None
    }
}

/// Mountain-pass floor α of the C₀ region (positive inside it).
fn alpha_c0(p: &Params, k: &DomainConstants) -> Option<f64> {
    if p.mu < 0.0 {
        let nf = p.n as f64;
        Some(k.s.powf(nf / 2.0) / nf + 0.5 * p.mu * (-p.lambda / p.mu).exp() * k.volume)
    } else {
        None
    }
}

/// Applies the region rules in fixed precedence: nonexistence first for
/// μ < 0, then the positive-μ existence rule, then the μ < 0 existence
/// regions (with the inradius condition at N = 4). Region boundaries are
/// labeled unknown except the nonexistence curve, whose inequality includes
/// equality.
pub fn classify(p: &Params, k: &DomainConstants) -> Result<RegionVerdict> {
    k.validate()?;
    if p.n != k.n {
        return Err(Error::InvalidInput(format!(
            "parameter dimension {} does not match domain constants dimension {}",
            p.n, k.n
        )));
    }

    if p.mu < 0.0 {
        let t14 = t14_expression(p, k.lambda1);
        let ab = alpha_b0(p, k);
        let ac = alpha_c0(p, k);
        let in_bc = ab.map_or(false, |a| a > 0.0) || ac.map_or(false, |a| a > 0.0);
        if t14 >= 0.0 {
            if in_bc {
                // the theorems would contradict each other here; flag loudly
                eprintln!(
                    "region conflict: (λ, μ) = ({}, {}) satisfies both the \
                     nonexistence inequality and an existence region",
                    p.lambda, p.mu
                );
                return Ok(RegionVerdict {
                    label: RegionLabel::NonexistenceT14,
                    basis: "T14 inequality (CONFLICT with B0/C0 membership)",
                    margin: t14,
                });
            }
            return Ok(RegionVerdict {
                label: RegionLabel::NonexistenceT14,
                basis: "T14 inequality",
                margin: t14,
            });
        }
        let alpha_best = match (ab, ac) {
            (Some(a), Some(c)) => a.max(c),
            (Some(a), None) => a,
            (None, Some(c)) => c,
            (None, None) => f64::NEG_INFINITY,
        };
        match p.n {
            3 => {
                if let Some(a) = ab {
                    if a > 0.0 {
                        return Ok(RegionVerdict {
                            label: RegionLabel::B0Exists,
                            basis: "B0 geometry floor",
                            margin: a,
                        });
                    }
                }
                if let Some(c) = ac {
                    if c > 0.0 {
                        return Ok(RegionVerdict {
                            label: RegionLabel::C0Exists,
                            basis: "C0 geometry floor",
                            margin: c,
                        });
                    }
                }
                Ok(RegionVerdict {
                    label: RegionLabel::Unknown,
                    basis: "outside B0 and C0",
                    margin: alpha_best,
                })
            }
            4 => {
                let eta3 = k.rho_max * k.rho_max - 32.0 * (p.lambda / p.mu).exp();
                if in_bc {
                    if eta3 > 0.0 {
                        Ok(RegionVerdict {
                            label: RegionLabel::N4ExistsEta3,
                            basis: "B0/C0 geometry with inradius condition",
                            margin: alpha_best.min(eta3),
                        })
                    } else {
                        Ok(RegionVerdict {
                            label: RegionLabel::Unknown,
                            basis: "inradius condition fails",
                            margin: eta3,
                        })
                    }
                } else {
                    Ok(RegionVerdict {
                        label: RegionLabel::Unknown,
                        basis: "outside B0 and C0",
                        margin: alpha_best,
                    })
                }
            }
            _ => Ok(RegionVerdict {
                label: RegionLabel::Unknown,
                basis: "five dimensions with negative mu not covered",
                margin: 0.0,
            }),
        }
    } else if p.mu > 0.0 {
        if p.n >= 4 {
            Ok(RegionVerdict {
                label: RegionLabel::A0Exists,
                basis: "A0: positive mu regime",
                margin: p.mu,
            })
        } else {
            Ok(RegionVerdict {
                label: RegionLabel::Unknown,
                basis: "three dimensions with positive mu not covered",
                margin: 0.0,
            })
        }
    } else {
        Ok(RegionVerdict {
            label: RegionLabel::Unknown,
            basis: "mu = 0 not classified here",
            margin: 0.0,
        })
    }
}

/// Minimizer s₀ = (−(N−2)μ/2)^{(N−2)/4} of f(s) = s^{2*−2} + μ log s² + λ − λ₁
/// and the value f(s₀), cross-validated by a dense log-spaced scan.
pub fn f_min(p: &Params, lambda1: f64) -> Result<(f64, f64)> {
    if p.mu >= 0.0 {
        return Err(Error::Regime(
            "the scalar test function has a minimizer only for mu < 0".into(),
        ));
    }
    let nf = p.n as f64;
    let s0 = (-(nf - 2.0) * p.mu / 2.0).powf((nf - 2.0) / 4.0);
    let f = |s: f64| s.powf(p.two_star - 2.0) + p.mu * (s * s).ln() + p.lambda - lambda1;
    let fmin = f(s0);
    // quick scan guard; the full-resolution oracle lives in the test suite
    let steps = 10_000;
    for i in 0..=steps {
        let s = s0 * 10f64.powf(-3.0 + 6.0 * i as f64 / steps as f64);
        if f(s) < fmin - 1e-9 * (1.0 + fmin.abs()) {
            return Err(Error::Accuracy(format!(
                "scalar minimum scan found f({s}) below f(s0)"
            )));
        }
    }
    Ok((s0, fmin))
}

/// A boundary curve of the phase diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curve {
    Tau1,
    Eta1,
    Eta2,
    Eta3,
}

impl std::fmt::Display for Curve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Curve::Tau1 => "tau1",
            Curve::Eta1 => "eta1",
            Curve::Eta2 => "eta2",
            Curve::Eta3 => "eta3",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for Curve {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tau1" => Ok(Curve::Tau1),
            "eta1" => Ok(Curve::Eta1),
            "eta2" => Ok(Curve::Eta2),
            "eta3" => Ok(Curve::Eta3),
            other => Err(Error::Parse(format!("unknown curve {other:?}"))),
        }
    }
}

/// Sampled curve points with any skipped μ values and the reason.
#[derive(Debug, Clone)]
pub struct CurveSamples {
    pub curve: Curve,
    /// (λ, μ) points on the curve.
    pub samples: Vec<(f64, f64)>,
    pub skipped: Vec<(f64, String)>,
}

/// Residual of the defining equation of a curve at (λ, μ); zero on the curve.
pub fn curve_equation(curve: Curve, lambda: f64, mu: f64, n: usize, k: &DomainConstants) -> f64 {
    let nf = n as f64;
    match curve {
        Curve::Tau1 => {
            let m = (nf - 2.0) * mu / 2.0;
            -m + m * (-m).ln() + lambda - k.lambda1
        }
        Curve::Eta1 => {
            ((k.lambda1 - lambda) / k.lambda1).powf(nf / 2.0) * k.s.powf(nf / 2.0) / nf
                + 0.5 * mu * k.volume
        }
        Curve::Eta2 => k.s.powf(nf / 2.0) / nf + 0.5 * mu * (-lambda / mu).exp() * k.volume,
        Curve::Eta3 => 32.0 * (lambda / mu).exp() - k.rho_max * k.rho_max,
    }
}

/// Solves each curve's defining equation for λ on a linear μ grid.
pub fn curve_samples(
    curve: Curve,
    mu_range: (f64, f64),
    k: &DomainConstants,
    count: usize,
) -> Result<CurveSamples> {
    k.validate()?;
    if count < 2 {
        return Err(Error::InvalidInput("curve sampling needs count >= 2".into()));
    }
    let (lo, hi) = mu_range;
    if !(lo <= hi && hi < 0.0) {
        return Err(Error::InvalidInput(
            "curve sampling needs a mu range inside (-inf, 0)".into(),
        ));
    }
    let nf = k.n as f64;
    let mut samples = Vec::new();
    let mut skipped = Vec::new();
    for i in 0..count {
        let mu = lo + (hi - lo) * i as f64 / (count - 1) as f64;
        let lambda = match curve {
            Curve::Tau1 => {
                let m = (nf - 2.0) * mu / 2.0;
                k.lambda1 + m - m * (-m).ln()
            }
            Curve::Eta1 => {
                let q = -nf * mu * k.volume / (2.0 * k.s.powf(nf / 2.0));
                if !(q > 0.0 && q <= 1.0) {
                    skipped.push((mu, format!("eta1 needs -N·mu·|Omega|/(2 S^(N/2)) in (0, 1], got {q}")));
                    continue;
                }
                k.lambda1 * (1.0 - q.powf(2.0 / nf))
            }
            Curve::Eta2 => {
                let q = -nf * mu * k.volume / (2.0 * k.s.powf(nf / 2.0));
                mu * q.ln()
            }
            Curve::Eta3 => mu * (k.rho_max * k.rho_max / 32.0).ln(),
        };
        samples.push((lambda, mu));
    }
    Ok(CurveSamples {
        curve,
        samples,
        skipped,
    })
}

/// Outcome of a confirming solver run at a lattice cell.
#[derive(Debug, Clone)]
pub struct ConfirmOutcome {
    pub status: SolveStatus,
    pub positive: bool,
    /// Whether the solve agreed with the cell label; None for unknown cells,
    /// whose outcomes are recorded as observations only.
    pub agrees: Option<bool>,
}

/// One cell of the phase diagram.
#[derive(Debug, Clone)]
pub struct PhaseCell {
    pub lambda: f64,
    pub mu: f64,
    pub verdict: RegionVerdict,
    pub confirm: Option<ConfirmOutcome>,
}

/// Solver settings for confirm-mode runs.
pub struct ConfirmConfig<'a> {
    pub grid: &'a Grid,
    pub mp: MPConfig,
    /// Cap on the number of confirming solves.
    pub budget: usize,
}

/// Classified lattice over a (λ, μ) window.
#[derive(Debug, Clone)]
pub struct PhaseDiagram {
    pub cells: Vec<PhaseCell>,
    pub res: usize,
}

impl PhaseDiagram {
    /// CSV rows: lambda, mu, label, basis, margin, confirm columns.
    pub fn write_csv<W: IoWrite>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "lambda,mu,label,basis,margin,confirm_status,confirm_agrees")?;
        for c in &self.cells {
            let (status, agrees) = match &c.confirm {
                Some(conf) => (
                    conf.status.to_string(),
                    conf.agrees.map_or("observed".to_string(), |a| a.to_string()),
                ),
                None => (String::new(), String::new()),
            };
            writeln!(
                w,
                "{},{},{},\"{}\",{},{},{}",
                c.lambda, c.mu, c.verdict.label, c.verdict.basis, c.verdict.margin, status, agrees
            )?;
        }
        Ok(())
    }
}

/// Writes curve samples as CSV rows: curve, mu, lambda.
pub fn write_curves_csv<W: IoWrite>(sets: &[CurveSamples], w: &mut W) -> Result<()> {
    writeln!(w, "curve,mu,lambda")?;
    for set in sets {
        for (lambda, mu) in &set.samples {
            writeln!(w, "{},{},{}", set.curve, mu, lambda)?;
        }
    }
    Ok(())
}

/// Classifies a res×res lattice; optionally confirms a budgeted subset of
/// cells by running the solver and comparing outcomes with labels.
pub fn phase_diagram(
    k: &DomainConstants,
    lambda_range: (f64, f64),
    mu_range: (f64, f64),
    res: usize,
    confirm: Option<&ConfirmConfig>,
) -> Result<PhaseDiagram> {
    k.validate()?;
    if res < 2 {
        return Err(Error::InvalidInput("phase diagram needs res >= 2".into()));
    }
    let mut cells = Vec::with_capacity(res * res);
    for i in 0..res {
        let mu = mu_range.0 + (mu_range.1 - mu_range.0) * i as f64 / (res - 1) as f64;
        for j in 0..res {
            let lambda =
                lambda_range.0 + (lambda_range.1 - lambda_range.0) * j as f64 / (res - 1) as f64;
            let p = Params::new(lambda, mu, k.n)?;
            let verdict = classify(&p, k)?;
            cells.push(PhaseCell {
                lambda,
                mu,
                verdict,
                confirm: None,
            });
        }
    }

    if let Some(conf) = confirm {
        // deterministic round-robin across label classes
        let labels = [
            RegionLabel::A0Exists,
            RegionLabel::B0Exists,
            RegionLabel::C0Exists,
            RegionLabel::N4ExistsEta3,
            RegionLabel::NonexistenceT14,
            RegionLabel::Unknown,
        ];
        let mut chosen: Vec<usize> = Vec::new();
        let mut cursors = vec![0usize; labels.len()];
        while chosen.len() < conf.budget.min(cells.len()) {
            let mut advanced = false;
            for (li, label) in labels.iter().enumerate() {
                if chosen.len() >= conf.budget {
                    break;
                }
                let mut idx = cursors[li];
                while idx < cells.len() && cells[idx].verdict.label != *label {
                    idx += 1;
                }
                if idx < cells.len() {
                    chosen.push(idx);
                    cursors[li] = idx + 1;
                    advanced = true;
                }
            }
            if !advanced {
                break;
            }
        }
        for idx in chosen {
            let cell_lambda = cells[idx].lambda;
            let cell_mu = cells[idx].mu;
            let p = Params::new(cell_lambda, cell_mu, k.n)?;
            let out = mountain_pass_solve(conf.grid, &p, &conf.mp)?;
            let positive = positivity_check(conf.grid, &out.u)?;
            let agrees = match cells[idx].verdict.label {
                RegionLabel::A0Exists
                | RegionLabel::B0Exists
                | RegionLabel::C0Exists
                | RegionLabel::N4ExistsEta3 => {
                    Some(out.status == SolveStatus::Converged && positive)
                }
                RegionLabel::NonexistenceT14 => {
                    Some(!(out.status == SolveStatus::Converged && positive))
                }
                RegionLabel::Unknown => None,
            };
            cells[idx].confirm = Some(ConfirmOutcome {
                status: out.status,
                positive,
                agrees,
            });
        }
    }

    Ok(PhaseDiagram { cells, res })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cube4_constants() -> DomainConstants {
        DomainConstants {
            lambda1: 39.48,
            volume: 1.0,
            s: 10.26,
            rho_max: 0.5,
            n: 4,
        }
    }

    fn cube3_constants() -> DomainConstants {
        DomainConstants {
            lambda1: 29.61,
            volume: 1.0,
            s: 5.478,
            rho_max: 0.5,
            n: 3,
        }
    }

    #[test]
    fn classify_positive_mu() {
        let k = cube4_constants();
        let p = Params::new(0.0, 1.0, 4).unwrap();
        let v = classify(&p, &k).unwrap();
        assert_eq!(v.label, RegionLabel::A0Exists);
        assert!(v.margin > 0.0);
        // three dimensions are not covered by the positive-mu rule
        let k3 = cube3_constants();
        let p3 = Params::new(0.0, 1.0, 3).unwrap();
        assert_eq!(classify(&p3, &k3).unwrap().label, RegionLabel::Unknown);
    }

    #[test]
    fn classify_nonexistence_log1_case() {
        // N=3, μ=−2: −(N−2)μ/2 = 1, log 1 = 0, so the inequality reads
        // 1 + λ − λ₁ ≥ 0
        let k = cube3_constants();
        for dl in [0.0, 0.5, 3.0] {
            let p = Params::new(k.lambda1 - 1.0 + dl, -2.0, 3).unwrap();
            let v = classify(&p, &k).unwrap();
            assert_eq!(v.label, RegionLabel::NonexistenceT14, "dl = {dl}");
            assert_relative_eq!(v.margin, dl, epsilon = 1e-12);
        }
        // strictly below the curve the predicate fails
        let p = Params::new(k.lambda1 - 1.1, -2.0, 3).unwrap();
        assert_ne!(classify(&p, &k).unwrap().label, RegionLabel::NonexistenceT14);
    }

    #[test]
    fn classify_n4_eta3_example() {
        let k = cube4_constants();
        let p = Params::new(10.0, -1.0, 4).unwrap();
        let v = classify(&p, &k).unwrap();
        assert_eq!(v.label, RegionLabel::N4ExistsEta3);
        assert!(v.margin > 0.0);
        // the B₀ floor at these constants is ≈ +14.2
        let ab = alpha_b0(&p, &k).unwrap();
        assert_relative_eq!(ab, 14.2, max_relative = 0.01);
        // and the inradius condition holds with a wide margin
        assert!(32.0 * (-10.0f64).exp() < 0.25);
    }

    #[test]
    fn classify_n5_negative_mu_unknown() {
        let k = DomainConstants {
            lambda1: 49.35,
            volume: 1.0,
            s: 14.81,
            rho_max: 0.5,
            n: 5,
        };
        let p = Params::new(5.0, -0.1, 5).unwrap();
        let v = classify(&p, &k).unwrap();
        assert_eq!(v.label, RegionLabel::Unknown);
    }

    #[test]
    fn predicate_examples() {
        let lambda1 = 29.61;
        let p = Params::new(lambda1, -2.0, 3).unwrap();
        assert!(nonexistence_predicate(&p, lambda1)); // expression = 1
        let p = Params::new(lambda1 - 1.0, -2.0, 3).unwrap();
        assert!(nonexistence_predicate(&p, lambda1)); // equality included
        let p = Params::new(lambda1 - 1.0 - 1e-9, -2.0, 3).unwrap();
        assert!(!nonexistence_predicate(&p, lambda1));
        // μ → 0⁻ with λ < λ₁: expression → λ − λ₁ < 0
        let p = Params::new(lambda1 - 5.0, -1e-12, 3).unwrap();
        assert!(!nonexistence_predicate(&p, lambda1));
        // μ ≥ 0 is always false
        let p = Params::new(100.0, 1.0, 3).unwrap();
        assert!(!nonexistence_predicate(&p, lambda1));
    }

    #[test]
    fn f_min_unit_roots() {
        let lambda1 = 29.61;
        let p = Params::new(3.0, -2.0, 3).unwrap();
        let (s0, fmin) = f_min(&p, lambda1).unwrap();
        assert_relative_eq!(s0, 1.0, max_relative = 1e-14);
        assert_relative_eq!(fmin, 1.0 + 3.0 - lambda1, max_relative = 1e-12);
        let p = Params::new(3.0, -1.0, 4).unwrap();
        let (s0, fmin) = f_min(&p, 39.48).unwrap();
        assert_relative_eq!(s0, 1.0, max_relative = 1e-14);
        assert_relative_eq!(fmin, 1.0 + 3.0 - 39.48, max_relative = 1e-12);
        // consistency with the nonexistence expression
        assert_relative_eq!(fmin, t14_expression(&p, 39.48), max_relative = 1e-12);
        // μ ≥ 0 is out of regime
        assert!(matches!(
            f_min(&Params::new(0.0, 1.0, 3).unwrap(), lambda1),
            Err(Error::Regime(_))
        ));
    }

    #[test]
    fn f_min_scan_oracle() {
        let lambda1 = 29.61;
        let p = Params::new(-4.0, -1.7, 3).unwrap();
        let (s0, fmin) = f_min(&p, lambda1).unwrap();
        let f = |s: f64| s.powf(p.two_star - 2.0) + p.mu * (s * s).ln() + p.lambda - lambda1;
        let mut min_scan = f64::INFINITY;
        for i in 0..100_000 {
            let s = 10f64.powf(-4.0 + 8.0 * i as f64 / 99_999.0);
            min_scan = min_scan.min(f(s));
        }
        assert!(min_scan >= fmin - 1e-8, "scan {min_scan} vs f(s0) {fmin}");
        assert!(f(s0 * 0.9) > fmin && f(s0 * 1.1) > fmin);
    }

    #[test]
    fn curve_closed_forms() {
        let k = cube3_constants();
        // τ₁ at μ = −2/(N−2): log 1 = 0 so λ = λ₁ − 1
        let cs = curve_samples(Curve::Tau1, (-2.0, -2.0 + 1e-12), &k, 2).unwrap();
        assert_relative_eq!(cs.samples[0].0, k.lambda1 - 1.0, max_relative = 1e-12);
        // η₃ at μ = −1, ρ_max = 1/2: λ = −log(0.25/32) = log 128
        let cs = curve_samples(Curve::Eta3, (-1.0, -1.0 + 1e-12), &k, 2).unwrap();
        assert_relative_eq!(cs.samples[0].0, 128f64.ln(), max_relative = 1e-12);
        assert_relative_eq!(cs.samples[0].0, 4.852, max_relative = 1e-3);
    }

    #[test]
    fn curve_plugback() {
        let k = cube3_constants();
        for curve in [Curve::Tau1, Curve::Eta1, Curve::Eta2, Curve::Eta3] {
            let cs = curve_samples(curve, (-6.0, -0.05), &k, 33).unwrap();
            assert!(!cs.samples.is_empty(), "{curve}: all samples skipped");
            for &(lambda, mu) in &cs.samples {
                let resid = curve_equation(curve, lambda, mu, k.n, &k);
                let scale = 1.0 + lambda.abs() + k.lambda1;
                assert!(
                    resid.abs() <= 1e-10 * scale,
                    "{curve} at mu={mu}: residual {resid}"
                );
            }
        }
    }

    #[test]
    fn eta1_skips_out_of_range() {
        let k = cube3_constants();
        // very negative μ pushes the η₁ argument above 1
        let cs = curve_samples(Curve::Eta1, (-40.0, -30.0), &k, 5).unwrap();
        assert!(cs.samples.is_empty());
        assert_eq!(cs.skipped.len(), 5);
    }

    #[test]
    fn phase_diagram_disjoint_labels() {
        let k = cube4_constants();
        let pd = phase_diagram(&k, (-20.0, 50.0), (-6.0, 6.0), 40, None).unwrap();
        for c in &pd.cells {
            if c.verdict.label == RegionLabel::A0Exists {
                assert!(c.mu > 0.0);
            }
            if c.verdict.label == RegionLabel::NonexistenceT14 {
                assert!(c.mu < 0.0);
            }
        }
    }

    #[test]
    fn labels_flip_across_tau1() {
        let k = cube3_constants();
        let mu = -1.5;
        let m = (3.0 - 2.0) * mu / 2.0;
        let lambda_curve = k.lambda1 + m - m * (-m).ln();
        let above = classify(&Params::new(lambda_curve + 0.01, mu, 3).unwrap(), &k).unwrap();
        let below = classify(&Params::new(lambda_curve - 0.01, mu, 3).unwrap(), &k).unwrap();
        assert_eq!(above.label, RegionLabel::NonexistenceT14);
        assert_ne!(below.label, RegionLabel::NonexistenceT14);
    }
}
