//! Acceptance suite: one test per criterion, each printing a pass line with
//! the measured quantities. Run with `--nocapture` to see the details.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use logbn::constants::{first_eigenpair, sobolev_quotient};
use logbn::domain::{build_grid, rho_max, DomainSpec};
use logbn::functional::{energy, gradient, nehari_g, Params};
use logbn::regions::{
    classify, curve_equation, curve_samples, f_min, nonexistence_predicate, phase_diagram, Curve,
    DomainConstants, RegionLabel,
};
use logbn::solvers::{
    ground_state_search, mountain_pass_solve, positivity_check, InitialDirection, MPConfig,
    SolveStatus,
};
use logbn::special::gamma_half;
use logbn::synth::random_smooth;
use logbn::testfunctions::{asymptotics_report, cutoff_fiber_integrals, sup_fiber_energy, CutoffSpec};

fn s_closed_form(n: usize) -> f64 {
    let nf = n as f64;
    PI * nf * (nf - 2.0) * (gamma_half(n as u32) / gamma_half(2 * n as u32)).powf(2.0 / nf)
}

#[test]
fn c01_eigenvalue_oracle() {
    let grid3 = build_grid(&DomainSpec::unit_box(3, 48)).unwrap();
    let pair3 = first_eigenpair(&grid3, 1e-5).unwrap();
    let target3 = 3.0 * PI * PI;
    let rel3 = (pair3.lambda1 - target3).abs() / target3;
    assert!(rel3 <= 0.01, "N=3: lambda1 {} vs {target3}", pair3.lambda1);

    let grid4 = build_grid(&DomainSpec::unit_box(4, 24)).unwrap();
    let pair4 = first_eigenpair(&grid4, 1e-5).unwrap();
    let target4 = 4.0 * PI * PI;
    let rel4 = (pair4.lambda1 - target4).abs() / target4;
    assert!(rel4 <= 0.02, "N=4: lambda1 {} vs {target4}", pair4.lambda1);

    println!(
        "acceptance 01 (eigenvalue oracle): PASS  N=3 {:.4} ({:.3}% off 3pi^2), N=4 {:.4} ({:.3}% off 4pi^2)",
        pair3.lambda1,
        100.0 * rel3,
        pair4.lambda1,
        100.0 * rel4
    );
}

#[test]
fn c02_sobolev_constant() {
    let mut worst = 0.0f64;
    let base = sobolev_quotient(4, 1.0).unwrap();
    for eps in [0.1, 1.0, 10.0] {
        let q = sobolev_quotient(4, eps).unwrap();
        worst = worst.max((q - base).abs() / base);
    }
    assert!(worst <= 1e-4, "quotient drifts {worst:.3e} across the eps sweep");
    let closed = s_closed_form(4);
    let rel = (base - closed).abs() / closed;
    assert!(rel <= 1e-3, "S {base} vs closed form {closed}");
    println!(
        "acceptance 02 (Sobolev constant): PASS  S(4) = {:.6} vs {:.6} ({:.2e} rel), sweep drift {:.2e}",
        base, closed, rel, worst
    );
}

#[test]
fn c03_gradient_correctness() {
    let delta = 1e-5;
    let mut worst = 0.0f64;
    for (n, res) in [(3usize, 12usize), (4, 8)] {
        let grid = build_grid(&DomainSpec::unit_box(n, res)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for (lambda, mu) in [(0.0, 1.0), (5.0, -1.0), (-3.0, 2.0)] {
            let p = Params::new(lambda, mu, n).unwrap();
            for _ in 0..20 {
                let u = random_smooth(&grid, &mut rng);
                let v = random_smooth(&grid, &mut rng);
                let g = gradient(&grid, &p, &u).unwrap();
                let dd = grid.inner(&g, &v);
                let mut up = u.clone();
                up.axpy(delta, &v);
                let mut um = u.clone();
                um.axpy(-delta, &v);
                let fd = (energy(&grid, &p, &up).unwrap().total
                    - energy(&grid, &p, &um).unwrap().total)
                    / (2.0 * delta);
                let rel = (fd - dd).abs() / dd.abs().max(1e-12);
                assert!(rel <= 1e-4, "N={n} ({lambda},{mu}): rel {rel:.3e}");
                worst = worst.max(rel);
            }
        }
    }
    println!("acceptance 03 (gradient correctness): PASS  worst relative error {worst:.3e}");
}

#[test]
fn c04_constraint_identity() {
    let mut worst = 0.0f64;
    for (n, res) in [(3usize, 12usize), (4, 8)] {
        let grid = build_grid(&DomainSpec::unit_box(n, res)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = Params::new(2.5, -1.25, n).unwrap();
        for _ in 0..10 {
            let u = random_smooth(&grid, &mut rng);
            let gval = nehari_g(&grid, &p, &u).unwrap();
            let pairing = grid.inner(&gradient(&grid, &p, &u).unwrap(), &u);
            let rel = (gval - pairing).abs() / gval.abs().max(1e-12);
            assert!(rel <= 1e-8, "N={n}: rel {rel:.3e}");
            worst = worst.max(rel);
        }
    }
    println!("acceptance 04 (constraint identity): PASS  worst relative error {worst:.3e}");
}

#[test]
fn c05_gradient_excess_slope() {
    let eps_list = [0.05, 0.025, 0.0125];
    let mut printed = Vec::new();
    for n in [4usize, 5] {
        let cut = CutoffSpec::for_dim(n, 0.25).unwrap();
        let rep = asymptotics_report(&cut, n, &eps_list).unwrap();
        let target = n as f64 - 2.0;
        assert!(
            (rep.grad_excess_slope - target).abs() <= 0.2,
            "N={n}: slope {} vs {target}",
            rep.grad_excess_slope
        );
        assert!(rep.pass_grad_slope);
        printed.push(format!("N={n}: {:.3}", rep.grad_excess_slope));
    }
    println!(
        "acceptance 05 (gradient excess slope): PASS  {}",
        printed.join(", ")
    );
}

#[test]
fn c06_n3_l2_limits() {
    let cut = CutoffSpec::for_dim(3, 0.25).unwrap();
    let eps_list = [0.002, 0.001, 0.0005, 0.00025];
    let rep = asymptotics_report(&cut, 3, &eps_list).unwrap();
    let reference = rep.n3_reference.unwrap();
    let rel_l2 = (rep.l2_leading - reference).abs() / reference;
    let rel_log = (rep.l2log_leading - reference).abs() / reference;
    assert!(rep.pass_l2, "l2 leading {} vs {reference}", rep.l2_leading);
    assert!(
        rep.pass_l2log,
        "l2log leading {} vs {reference}",
        rep.l2log_leading
    );
    assert!(rel_l2 <= 0.05 && rel_log <= 0.05);
    println!(
        "acceptance 06 (N=3 mass limits): PASS  reference {:.5}, l2 {:.5} ({:.2}%), l2log {:.5} ({:.2}%)",
        reference,
        rep.l2_leading,
        100.0 * rel_l2,
        rep.l2log_leading,
        100.0 * rel_log
    );
}

#[test]
fn c07_n4_bracket() {
    let cut = CutoffSpec::for_dim(4, 0.25).unwrap();
    let eps_list = [0.05, 0.025, 0.0125, 0.00625];
    let rep = asymptotics_report(&cut, 4, &eps_list).unwrap();
    assert!(rep.pass_l2log, "bracket violated");
    let mut lines = Vec::new();
    for (i, r) in rep.rows.iter().enumerate() {
        let measured = r.l2log / (r.eps * r.eps * (1.0 / r.eps).ln());
        assert!(
            rep.bracket_low[i] <= measured && measured <= rep.bracket_high[i],
            "eps {}: {measured} outside [{}, {}]",
            r.eps,
            rep.bracket_low[i],
            rep.bracket_high[i]
        );
        lines.push(format!(
            "eps {}: {:.1} in [{:.1}, {:.1}]",
            r.eps, measured, rep.bracket_low[i], rep.bracket_high[i]
        ));
    }
    println!("acceptance 07 (N=4 log-mass bracket): PASS  {}", lines.join("; "));
}

fn threshold_case(
    name: &str,
    n: usize,
    lambda: f64,
    mu: f64,
    rho: f64,
    eps_list: &[f64],
) -> String {
    let p = Params::new(lambda, mu, n).unwrap();
    let s = sobolev_quotient(n, 1.0).unwrap();
    let thresh = s.powf(n as f64 / 2.0) / n as f64;
    let cut = CutoffSpec::for_dim(n, rho).unwrap();
    let mut margins = Vec::new();
    for &eps in eps_list {
        let fi = cutoff_fiber_integrals(&cut, n, eps).unwrap();
        let (t, level) = sup_fiber_energy(&p, &fi).unwrap();
        assert!(
            (0.5..=2.0).contains(&t),
            "{name}: fiber maximizer t = {t} left the bounded window"
        );
        let margin = thresh - level;
        assert!(margin > 0.0, "{name} at eps {eps}: margin {margin:.3e} not positive");
        margins.push(margin);
    }
    for w in margins.windows(2) {
        assert!(
            w[1] < w[0],
            "{name}: margin not decreasing along decreasing eps: {margins:?}"
        );
    }
    format!("{name} margins {:?}", margins.iter().map(|m| format!("{m:.2e}")).collect::<Vec<_>>())
}

#[test]
fn c08_energy_threshold() {
    // (a) positive-mu cases
    let a4 = threshold_case("N=4 (0,1)", 4, 0.0, 1.0, 0.24, &[1e-4, 3e-5, 1e-5]);
    let a5 = threshold_case("N=5 (0,1)", 5, 0.0, 1.0, 0.2, &[0.025, 0.0125, 0.00625]);
    // (b) three-dimensional cube in the B0 region
    let b = threshold_case("N=3 (0,-1)", 3, 0.0, -1.0, 0.24, &[1e-10, 3e-11, 1e-11]);
    // (c) four dimensions with the inradius condition: 32 e^{λ/μ} < ρ_max²
    assert!(32.0 * (10.0f64 / -1.0).exp() < 0.25);
    let c = threshold_case("N=4 (10,-1)", 4, 10.0, -1.0, 0.24, &[0.0125, 0.00625, 0.003125]);
    println!("acceptance 08 (energy threshold): PASS  {a4}; {a5}; {b}; {c}");
}

#[test]
fn c09_solver_existence_regime() {
    let grid = build_grid(&DomainSpec::unit_box(4, 32)).unwrap();
    let pair = first_eigenpair(&grid, 1e-5).unwrap();
    let s = sobolev_quotient(4, 1.0).unwrap();
    let thresh = s * s / 4.0;
    let cfg = MPConfig {
        initial_direction: InitialDirection::Field(pair.phi1.clone()),
        grad_tol: 1e-5,
        energy_tol: 1e-6,
        max_outer: 2000,
        ..Default::default()
    };
    let mut lines = Vec::new();
    for (lambda, mu) in [(pair.lambda1 / 2.0, 0.0), (0.0, 1.0), (-5.0, 1.0)] {
        let p = Params::new(lambda, mu, 4).unwrap();
        let out = mountain_pass_solve(&grid, &p, &cfg).unwrap();
        assert_eq!(
            out.status,
            SolveStatus::Converged,
            "({lambda},{mu}): {:?} after {} iterations",
            out.status,
            out.iterations
        );
        assert!(out.residual <= 1e-5, "({lambda},{mu}): residual {}", out.residual);
        assert!(
            positivity_check(&grid, &out.u).unwrap(),
            "({lambda},{mu}): solution not strictly positive (min {})",
            out.u.min()
        );
        assert!(
            out.level > 0.0 && out.level < thresh,
            "({lambda},{mu}): level {} vs threshold {thresh}",
            out.level
        );
        if mu > 0.0 {
            let gs = ground_state_search(&grid, &p, &cfg).unwrap();
            assert_eq!(gs.status, SolveStatus::Converged);
            let gap = (gs.level - out.level).abs();
            assert!(
                gap <= 2.0 * cfg.energy_tol,
                "({lambda},{mu}): |c_M - c_g| = {gap:.3e}"
            );
            lines.push(format!(
                "({lambda:.2},{mu}): c_M {:.6} (res {:.1e}, {} it), c_g gap {gap:.1e}",
                out.level, out.residual, out.iterations
            ));
        } else {
            lines.push(format!(
                "({lambda:.2},{mu}): c_M {:.6} (res {:.1e}, {} it)",
                out.level, out.residual, out.iterations
            ));
        }
    }
    println!(
        "acceptance 09 (solver existence regime): PASS  threshold {thresh:.4}; {}",
        lines.join("; ")
    );
}

#[test]
fn c10_nonexistence_regime() {
    let grid = build_grid(&DomainSpec::unit_box(3, 16)).unwrap();
    let pair = first_eigenpair(&grid, 1e-5).unwrap();
    let p = Params::new(pair.lambda1, -2.0, 3).unwrap();
    assert!(nonexistence_predicate(&p, pair.lambda1));

    let (s0, fmin) = f_min(&p, pair.lambda1).unwrap();
    assert!(fmin >= 0.0, "f(s0) = {fmin}");
    // scan oracle: 1e5 log-spaced points never undercut the closed form
    let f = |s: f64| s.powf(p.two_star - 2.0) + p.mu * (s * s).ln() + p.lambda - pair.lambda1;
    let mut scan_min = f64::INFINITY;
    for i in 0..100_000 {
        let s = 10f64.powf(-4.0 + 8.0 * i as f64 / 99_999.0);
        scan_min = scan_min.min(f(s));
    }
    assert!(scan_min >= fmin - 1e-8, "scan {scan_min} vs f(s0) {fmin}");

    let mut statuses = Vec::new();
    for seed in 1..=5u64 {
        let cfg = MPConfig {
            initial_direction: InitialDirection::Bump,
            seed,
            max_outer: 250,
            ..Default::default()
        };
        let out = mountain_pass_solve(&grid, &p, &cfg).unwrap();
        let converged_positive = out.status == SolveStatus::Converged
            && positivity_check(&grid, &out.u).unwrap();
        assert!(
            !converged_positive,
            "seed {seed}: converged to a positive candidate in the nonexistence regime"
        );
        statuses.push(format!("seed {seed}: {}", out.status));
    }
    println!(
        "acceptance 10 (nonexistence regime): PASS  s0 {s0:.4}, f(s0) {fmin:.4} >= 0; {}",
        statuses.join(", ")
    );
}

#[test]
fn c11_region_curve_consistency() {
    // constants for the unit cubes from closed forms at matching accuracy
    let k3 = DomainConstants {
        lambda1: 3.0 * PI * PI,
        volume: 1.0,
        s: sobolev_quotient(3, 1.0).unwrap(),
        rho_max: rho_max(&DomainSpec::unit_box(3, 16)).unwrap(),
        n: 3,
    };
    let k4 = DomainConstants {
        lambda1: 4.0 * PI * PI,
        volume: 1.0,
        s: sobolev_quotient(4, 1.0).unwrap(),
        rho_max: rho_max(&DomainSpec::unit_box(4, 16)).unwrap(),
        n: 4,
    };

    // curve plug-backs at 1e-10 relative
    let mut worst = 0.0f64;
    for (k, curves) in [
        (&k3, vec![Curve::Tau1, Curve::Eta1, Curve::Eta2, Curve::Eta3]),
        (&k4, vec![Curve::Tau1, Curve::Eta1, Curve::Eta2, Curve::Eta3]),
    ] {
        for curve in curves {
            let cs = curve_samples(curve, (-8.0, -0.05), k, 65).unwrap();
            assert!(!cs.samples.is_empty());
            for &(lambda, mu) in &cs.samples {
                let resid = curve_equation(curve, lambda, mu, k.n, k).abs();
                let scale = 1.0 + lambda.abs() + k.lambda1;
                assert!(resid <= 1e-10 * scale, "{curve}: residual {resid:.3e}");
                worst = worst.max(resid / scale);
            }
        }
    }

    // classify margins flip sign across each curve at fixed μ
    let delta = 1e-6;
    let flips = [
        // (constants, curve, mu)
        (&k3, Curve::Tau1, -1.5),
        (&k3, Curve::Eta1, -3.0),
        (&k3, Curve::Eta2, -10.0),
        (&k4, Curve::Eta3, -1.0),
    ];
    for (k, curve, mu) in flips {
        let cs = curve_samples(curve, (mu, mu + 1e-9), k, 2).unwrap();
        let (lambda_c, _) = cs.samples[0];
        let lo = classify(&Params::new(lambda_c - delta, mu, k.n).unwrap(), k).unwrap();
        let hi = classify(&Params::new(lambda_c + delta, mu, k.n).unwrap(), k).unwrap();
        assert!(
            lo.margin * hi.margin < 0.0,
            "{curve} at mu={mu}: margins {} / {} do not flip",
            lo.margin,
            hi.margin
        );
        assert_ne!(lo.label, hi.label, "{curve} at mu={mu}: labels do not change");
    }

    // A0 and nonexistence labels are disjoint on a 100x100 lattice
    let pd = phase_diagram(&k4, (-30.0, 70.0), (-8.0, 8.0), 100, None).unwrap();
    for cell in &pd.cells {
        let a0 = cell.verdict.label == RegionLabel::A0Exists;
        let t14 = cell.verdict.label == RegionLabel::NonexistenceT14;
        assert!(!(a0 && t14));
        if a0 {
            let p = Params::new(cell.lambda, cell.mu, 4).unwrap();
            assert!(!nonexistence_predicate(&p, k4.lambda1));
        }
    }
    println!(
        "acceptance 11 (region/curve consistency): PASS  worst plug-back {:.2e}, 4 curve flips, 10000-cell lattice disjoint",
        worst
    );
}

#[test]
fn c12_determinism() {
    let grid = build_grid(&DomainSpec::unit_box(3, 12)).unwrap();
    let p = Params::new(5.0, 1.0, 3).unwrap();
    let cfg = MPConfig {
        initial_direction: InitialDirection::Bump,
        seed: 11,
        max_outer: 400,
        ..Default::default()
    };
    let a = mountain_pass_solve(&grid, &p, &cfg).unwrap();
    let b = mountain_pass_solve(&grid, &p, &cfg).unwrap();
    assert_eq!(a.level.to_bits(), b.level.to_bits());
    assert_eq!(a.iterations, b.iterations);
    assert_eq!(a.residual.to_bits(), b.residual.to_bits());
    assert_eq!(a.u.as_slice(), b.u.as_slice());

    let ga = ground_state_search(&grid, &p, &cfg).unwrap();
    let gb = ground_state_search(&grid, &p, &cfg).unwrap();
    assert_eq!(ga.level.to_bits(), gb.level.to_bits());
    assert_eq!(ga.iterations, gb.iterations);
    println!(
        "acceptance 12 (determinism): PASS  repeated solves bit-identical (level {:.8}, {} iterations)",
        a.level, a.iterations
    );
}
