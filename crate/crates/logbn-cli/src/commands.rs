//! Command dispatch: orchestrates module operations and persists artifacts.

use std::fs;
use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use logbn::constants::{first_eigenpair, log_sobolev_check, sobolev_constant, sobolev_quotient};
use logbn::domain::{build_grid, rho_max, Grid};
use logbn::error::{Error, Result};
use logbn::functional::{energy, gradient, nehari_g, nehari_project, Params};
use logbn::regions::{
    classify, curve_equation, curve_samples, phase_diagram, write_curves_csv, ConfirmConfig, Curve,
    DomainConstants,
};
use logbn::solvers::{
    ground_state_search, mountain_pass_solve, positivity_check, write_solution, MPResult,
};
use logbn::special::gamma_half;
use logbn::synth::{random_bump, random_smooth};
use logbn::testfunctions::{asymptotics_report, CutoffSpec};

use crate::config::{timestamp, write_meta, Config};

fn output_dir(cfg: &Config) -> Result<PathBuf> {
    let dir = match cfg.get("output_dir") {
        Some(d) => PathBuf::from(d),
        None => match std::env::var("LOGBN_OUTPUT_DIR") {
            Ok(d) => PathBuf::from(d),
            Err(_) => PathBuf::from("."),
        },
    };
    fs::create_dir_all(&dir)?;
    Ok(dir)
}

fn params_from(cfg: &Config) -> Result<Params> {
    let n = cfg.require_usize("domain.n")?;
    let lambda = cfg.require_f64("params.lambda")?;
    let mu = cfg.require_f64("params.mu")?;
    Params::new(lambda, mu, n)
}

fn domain_constants(cfg: &Config, grid: &Grid) -> Result<DomainConstants> {
    let spec = cfg.domain_spec()?;
    let eigen_tol = cfg.f64_or("eigen.tol", 1e-6)?;
    let pair = first_eigenpair(grid, eigen_tol)?;
    let s = sobolev_constant(grid.n)?;
    Ok(DomainConstants {
        lambda1: pair.lambda1,
        volume: grid.volume,
        s: s.s,
        rho_max: rho_max(&spec)?,
        n: grid.n,
    })
}

fn grid_meta(grid: &Grid) -> Vec<(&'static str, String)> {
    vec![
        ("n", grid.n.to_string()),
        ("h", grid.h.to_string()),
        (
            "dims",
            grid.dims
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(","),
        ),
        ("interior_points", grid.interior_len().to_string()),
        ("volume", grid.volume.to_string()),
    ]
}

pub fn run(cfg: &Config) -> Result<()> {
    match cfg.require("command")? {
        "eigen" => cmd_eigen(cfg),
        "solve" => cmd_solve(cfg),
        "classify" => cmd_classify(cfg),
        "phasediagram" => cmd_phasediagram(cfg),
        "asymptotics" => cmd_asymptotics(cfg),
        "verify" => cmd_verify(cfg),
        other => Err(Error::InvalidInput(format!(
            "key command: unknown command {other:?}"
        ))),
    }
}

fn cmd_eigen(cfg: &Config) -> Result<()> {
    let dir = output_dir(cfg)?;
    let grid = build_grid(&cfg.domain_spec()?)?;
    let tol = cfg.f64_or("eigen.tol", 1e-6)?;
    let pair = first_eigenpair(&grid, tol)?;
    let mut meta = vec![("created_unix", timestamp()), ("command", "eigen".into())];
    meta.extend(grid_meta(&grid));
    meta.push(("lambda1", pair.lambda1.to_string()));
    meta.push(("residual", pair.residual.to_string()));
    meta.push(("iterations", pair.iterations.to_string()));
    write_meta(&dir.join("eigen.meta"), &meta)?;
    let p = Params::new(0.0, 0.0, grid.n)?;
    let as_result = MPResult {
        u: pair.phi1.clone(),
        level: pair.lambda1,
        residual: pair.residual,
        iterations: pair.iterations,
        status: logbn::solvers::SolveStatus::Converged,
        max_level_trace: vec![],
    };
    write_solution(&dir.join("phi1.field"), &grid, &p, &as_result)?;
    println!(
        "lambda1 = {:.8} (residual {:.3e}, {} iterations)",
        pair.lambda1, pair.residual, pair.iterations
    );
    Ok(())
}

fn cmd_solve(cfg: &Config) -> Result<()> {
    let dir = output_dir(cfg)?;
    let grid = build_grid(&cfg.domain_spec()?)?;
    let p = params_from(cfg)?;
    let mp = cfg.mp_config()?;
    let method = cfg.get("solver.method").unwrap_or("mountain_pass");
    let result = match method {
        "mountain_pass" => mountain_pass_solve(&grid, &p, &mp)?,
        "ground_state" => ground_state_search(&grid, &p, &mp)?,
        other => {
            return Err(Error::InvalidInput(format!(
                "key solver.method: expected mountain_pass or ground_state, got {other:?}"
            )))
        }
    };
    let positive = positivity_check(&grid, &result.u)?;
    write_solution(&dir.join("solution.field"), &grid, &p, &result)?;
    let mut meta = vec![("created_unix", timestamp()), ("command", "solve".into())];
    meta.extend(grid_meta(&grid));
    meta.extend([
        ("method", method.to_string()),
        ("lambda", p.lambda.to_string()),
        ("mu", p.mu.to_string()),
        ("seed", mp.seed.to_string()),
        ("status", result.status.to_string()),
        ("level", result.level.to_string()),
        ("residual", result.residual.to_string()),
        ("iterations", result.iterations.to_string()),
        ("positive", positive.to_string()),
        ("nehari_gap", nehari_g(&grid, &p, &result.u)?.to_string()),
    ]);
    write_meta(&dir.join("solution.meta"), &meta)?;
    println!(
        "{}: level {:.8}, residual {:.3e}, {} iterations, positive = {}",
        result.status, result.level, result.residual, result.iterations, positive
    );
    Ok(())
}

fn cmd_classify(cfg: &Config) -> Result<()> {
    let dir = output_dir(cfg)?;
    let grid = build_grid(&cfg.domain_spec()?)?;
    let p = params_from(cfg)?;
    let k = domain_constants(cfg, &grid)?;
    let verdict = classify(&p, &k)?;
    let meta = vec![
        ("created_unix", timestamp()),
        ("command", "classify".into()),
        ("lambda", p.lambda.to_string()),
        ("mu", p.mu.to_string()),
        ("n", p.n.to_string()),
        ("lambda1", k.lambda1.to_string()),
        ("volume", k.volume.to_string()),
        ("sobolev_s", k.s.to_string()),
        ("rho_max", k.rho_max.to_string()),
        ("label", verdict.label.to_string()),
        ("basis", verdict.basis.to_string()),
        ("margin", verdict.margin.to_string()),
    ];
    write_meta(&dir.join("verdict.meta"), &meta)?;
    println!(
        "label = {} (basis: {}; margin {:.6e})",
        verdict.label, verdict.basis, verdict.margin
    );
    Ok(())
}

fn cmd_phasediagram(cfg: &Config) -> Result<()> {
    let dir = output_dir(cfg)?;
    let grid = build_grid(&cfg.domain_spec()?)?;
    let k = domain_constants(cfg, &grid)?;
    let lambda_range = (
        cfg.require_f64("phase.lambda_min")?,
        cfg.require_f64("phase.lambda_max")?,
    );
    let mu_range = (cfg.require_f64("phase.mu_min")?, cfg.require_f64("phase.mu_max")?);
    let res = cfg.usize_or("phase.res", 33)?;
    let confirm = cfg.bool_or("phase.confirm", false)?;
    let budget = cfg.usize_or("phase.confirm_budget", 6)?;
    let mp = cfg.mp_config()?;
    let conf = ConfirmConfig {
        grid: &grid,
        mp,
        budget,
    };
    let pd = phase_diagram(&k, lambda_range, mu_range, res, confirm.then_some(&conf))?;
    let mut csv = fs::File::create(dir.join("phase.csv"))?;
    pd.write_csv(&mut csv)?;

    // boundary curves over the negative-μ part of the window
    let mu_hi = mu_range.1.min(-1e-6);
    if mu_range.0 < mu_hi {
        let pts = cfg.usize_or("phase.curve_points", 129)?;
        let mut sets = Vec::new();
        for curve in [Curve::Tau1, Curve::Eta1, Curve::Eta2, Curve::Eta3] {
            sets.push(curve_samples(curve, (mu_range.0, mu_hi), &k, pts)?);
        }
        let mut curves_csv = fs::File::create(dir.join("curves.csv"))?;
        write_curves_csv(&sets, &mut curves_csv)?;
    }
    let counts = {
        use std::collections::BTreeMap;
        let mut m: BTreeMap<String, usize> = BTreeMap::new();
        for c in &pd.cells {
            *m.entry(c.verdict.label.to_string()).or_default() += 1;
        }
        m
    };
    for (label, count) in counts {
        println!("{label}: {count} cells");
    }
    Ok(())
}

fn cmd_asymptotics(cfg: &Config) -> Result<()> {
    let dir = output_dir(cfg)?;
    let n = cfg.require_usize("domain.n")?;
    let rho = cfg.require_f64("asym.rho")?;
    let eps_list = cfg.f64_list("asym.eps")?;
    let cut = CutoffSpec::for_dim(n, rho)?;
    let report = asymptotics_report(&cut, n, &eps_list)?;
    let mut csv = fs::File::create(dir.join("asymptotics.csv"))?;
    report.write_csv(&mut csv)?;
    println!(
        "grad_excess_slope = {:.4} (pass {})",
        report.grad_excess_slope, report.pass_grad_slope
    );
    println!(
        "l2_leading = {:.6e} (pass {})",
        report.l2_leading, report.pass_l2
    );
    println!(
        "l2log_leading = {:.6e} (pass {})",
        report.l2log_leading, report.pass_l2log
    );
    Ok(())
}

struct VerifyReport {
    passed: usize,
    failed: usize,
}

impl VerifyReport {
    fn check(&mut self, name: &str, outcome: std::result::Result<(), String>) {
        match outcome {
            Ok(()) => {
                println!("ok   {name}");
                self.passed += 1;
            }
            Err(msg) => {
                println!("FAIL {name}: {msg}");
                self.failed += 1;
            }
        }
    }
}

fn cmd_verify(cfg: &Config) -> Result<()> {
    let grid = build_grid(&cfg.domain_spec()?)?;
    if grid.n != 3 {
        return Err(Error::InvalidInput(
            "verify expects a three-dimensional domain (fast suite)".into(),
        ));
    }
    let seed = cfg.u64_or("seed", 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = VerifyReport {
        passed: 0,
        failed: 0,
    };

    // eigenvalue oracle on the cube
    let pair = first_eigenpair(&grid, 1e-6)?;
    let is_unit_cube = matches!(
        cfg.domain_spec()?.kind,
        logbn::domain::DomainKind::Box { ref extents } if extents.iter().all(|&e| (e - 1.0).abs() < 1e-12)
    );
    if is_unit_cube {
        let target = 3.0 * std::f64::consts::PI.powi(2);
        rep.check(
            "eigen oracle (lambda1 vs 3 pi^2, 2%)",
            if (pair.lambda1 - target).abs() <= 0.02 * target {
                Ok(())
            } else {
                Err(format!("lambda1 {} vs {}", pair.lambda1, target))
            },
        );
    }
    rep.check(
        "eigenfunction positivity",
        if pair.phi1.min() > 0.0 {
            Ok(())
        } else {
            Err("phi1 has nonpositive values".into())
        },
    );

    // gradient vs central differences
    let delta = 1e-5;
    let mut worst: f64 = 0.0;
    for (lambda, mu) in [(0.0, 1.0), (5.0, -1.0), (-3.0, 2.0)] {
        let p = Params::new(lambda, mu, 3)?;
        for _ in 0..5 {
            let u = random_smooth(&grid, &mut rng);
            let v = random_smooth(&grid, &mut rng);
            let g = gradient(&grid, &p, &u)?;
            let dd = grid.inner(&g, &v);
            let mut up = u.clone();
            up.axpy(delta, &v);
            let mut um = u.clone();
            um.axpy(-delta, &v);
            let fd =
                (energy(&grid, &p, &up)?.total - energy(&grid, &p, &um)?.total) / (2.0 * delta);
            worst = worst.max((fd - dd).abs() / dd.abs().max(1e-12));
        }
    }
    rep.check(
        "gradient matches central differences (1e-4)",
        if worst <= 1e-4 {
            Ok(())
        } else {
            Err(format!("worst relative error {worst:.3e}"))
        },
    );

    // constraint identity g(u) = <G(u), u>
    let p = Params::new(2.0, -1.5, 3)?;
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let u = random_smooth(&grid, &mut rng);
        let gval = nehari_g(&grid, &p, &u)?;
        let pairing = grid.inner(&gradient(&grid, &p, &u)?, &u);
        worst = worst.max((gval - pairing).abs() / gval.abs().max(1e-12));
    }
    rep.check(
        "constraint identity g(u) = <G(u),u> (1e-8)",
        if worst <= 1e-8 {
            Ok(())
        } else {
            Err(format!("worst relative error {worst:.3e}"))
        },
    );

    // Sobolev constant: scale invariance and the closed form
    let s3 = sobolev_constant(3)?;
    let closed = std::f64::consts::PI
        * 3.0
        * (gamma_half(3) / gamma_half(6)).powf(2.0 / 3.0);
    rep.check(
        "Sobolev constant vs closed form (0.1%)",
        if (s3.s - closed).abs() <= 1e-3 * closed {
            Ok(())
        } else {
            Err(format!("{} vs {}", s3.s, closed))
        },
    );
    let q1 = sobolev_quotient(3, 0.1)?;
    let q2 = sobolev_quotient(3, 10.0)?;
    rep.check(
        "Sobolev quotient scale invariance (4 digits)",
        if (q1 - q2).abs() <= 1e-4 * q2 {
            Ok(())
        } else {
            Err(format!("{q1} vs {q2}"))
        },
    );

    // logarithmic Sobolev inequality
    let mut ok = true;
    let mut detail = String::new();
    for a in [0.5, 1.0, 2.0] {
        for u in [pair.phi1.clone(), random_bump(&grid, &mut rng)] {
            let r = log_sobolev_check(&grid, &u, a)?;
            if !r.holds {
                ok = false;
                detail = format!("a={a}: lhs {} > rhs {}", r.lhs, r.rhs);
            }
        }
    }
    rep.check(
        "logarithmic Sobolev inequality",
        if ok { Ok(()) } else { Err(detail) },
    );

    // curve plug-backs
    let k = DomainConstants {
        lambda1: pair.lambda1,
        volume: grid.volume,
        s: s3.s,
        rho_max: rho_max(&cfg.domain_spec()?)?,
        n: 3,
    };
    let mut worst: f64 = 0.0;
    for curve in [Curve::Tau1, Curve::Eta1, Curve::Eta2, Curve::Eta3] {
        let cs = curve_samples(curve, (-6.0, -0.05), &k, 17)?;
        for &(lambda, mu) in &cs.samples {
            let resid = curve_equation(curve, lambda, mu, 3, &k).abs();
            worst = worst.max(resid / (1.0 + lambda.abs() + k.lambda1));
        }
    }
    rep.check(
        "curve plug-back residuals (1e-10)",
        if worst <= 1e-10 {
            Ok(())
        } else {
            Err(format!("worst {worst:.3e}"))
        },
    );

    // energy breakdown identity and self-adjointness
    let u = random_smooth(&grid, &mut rng);
    let v = random_smooth(&grid, &mut rng);
    let e = energy(&grid, &p, &u)?;
    let ident = (e.total - (e.dirichlet - e.critical - e.quadratic - e.logarithmic)).abs();
    rep.check(
        "energy breakdown identity",
        if ident == 0.0 {
            Ok(())
        } else {
            Err(format!("difference {ident:.3e}"))
        },
    );
    let lu = logbn::laplacian_apply(&grid, &u)?;
    let lv = logbn::laplacian_apply(&grid, &v)?;
    let asym = (grid.inner(&lu, &v) - grid.inner(&u, &lv)).abs()
        / grid.inner(&lu, &v).abs().max(1e-12);
    rep.check(
        "discrete self-adjointness (1e-10)",
        if asym <= 1e-10 {
            Ok(())
        } else {
            Err(format!("relative asymmetry {asym:.3e}"))
        },
    );

    // Nehari projection fixed point
    let ppos = Params::new(0.0, 1.0, 3)?;
    let proj = nehari_project(&grid, &ppos, &pair.phi1)?;
    let scaled = pair.phi1.scaled(proj.t);
    let again = nehari_project(&grid, &ppos, &scaled)?;
    rep.check(
        "Nehari projection fixed point",
        if (again.t - 1.0).abs() <= 1e-8 {
            Ok(())
        } else {
            Err(format!("reprojection t = {}", again.t))
        },
    );

    println!("passed {}/{}", rep.passed, rep.passed + rep.failed);
    if rep.failed > 0 {
        return Err(Error::Accuracy(format!(
            "{} verification checks failed",
            rep.failed
        )));
    }
    Ok(())
}

/// Maps error classes to stable exit codes: 2 usage, 3 convergence,
/// 4 numerical accuracy, 5 regime.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidInput(_)
        | Error::Parse(_)
        | Error::Io(_)
        | Error::DegenerateDomain(_)
        | Error::ShapeMismatch { .. }
        | Error::InvalidField(_) => 2,
        Error::Convergence { .. } | Error::Scaling(_) => 3,
        Error::Accuracy(_) | Error::Resolution(_) => 4,
        Error::Regime(_) | Error::Bracket(_) | Error::NoProjection => 5,
    }
}

