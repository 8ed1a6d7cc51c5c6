//! Candidate positive solutions: mountain-pass path deformation and
//! Nehari-manifold projected gradient flow, with residual and positivity
//! certification.
//!
//! The mountain-pass solve discretizes a path from 0 to a negative-energy
//! endpoint and alternates two regimes. While the path maximum is still
//! dropping, every node takes a damped steepest-descent step with Armijo
//! backtracking and the path is rebalanced to uniform arclength. Once the
//! maximum stagnates, the maximizer node is refined alone by transverse
//! descent: the iterate is kept at the maximum of the energy along its own
//! ray, and the inverse-Laplacian preconditioned gradient, with its radial
//! component removed, is a strict descent direction for that ray-maximized
//! level. Steps are Armijo-backtracked on the ray-maximized energy, and the
//! fixed points of the refinement are exactly the critical points of the
//! functional.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cg::solve_laplace;
use crate::constants::first_eigenpair;
use crate::domain::{Grid, MAX_DIM};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::functional::{
    energy, fiber_integrals, gradient_into, nehari_project, Params,
};

/// Choice of the initial ascent direction.
#[derive(Debug, Clone)]
pub enum InitialDirection {
    /// First Dirichlet eigenfunction (default).
    Eigenfunction,
    /// Seeded smooth positive bump.
    Bump,
    /// Caller-provided nonnegative field.
    Field(Field),
    /// Field loaded from a solution file.
    File(PathBuf),
}

/// Mountain-pass and ground-state solver configuration.
#[derive(Debug, Clone)]
pub struct MPConfig {
    /// Number of path nodes including both endpoints (≥ 16).
    pub path_points: usize,
    /// Initial descent step in the L² metric.
    pub descent_step: f64,
    /// Outer iteration cap.
    pub max_outer: usize,
    /// Scaled-residual convergence tolerance.
    pub grad_tol: f64,
    /// Level stagnation tolerance (switches to maximizer refinement).
    pub energy_tol: f64,
    pub seed: u64,
    pub initial_direction: InitialDirection,
}

impl Default for MPConfig {
    fn default() -> Self {
        MPConfig {
            path_points: 17,
            descent_step: 1e-4,
            max_outer: 2000,
            grad_tol: 1e-5,
            energy_tol: 1e-6,
            seed: 1,
            initial_direction: InitialDirection::Eigenfunction,
        }
    }
}

impl MPConfig {
    fn validate(&self) -> Result<()> {
        if self.path_points < 16 {
            return Err(Error::InvalidInput(format!(
                "path_points must be at least 16, got {}",
                self.path_points
            )));
        }
        if !(self.descent_step > 0.0 && self.grad_tol > 0.0 && self.energy_tol > 0.0) {
            return Err(Error::InvalidInput(
                "descent_step, grad_tol and energy_tol must be positive".into(),
            ));
        }
        if self.max_outer == 0 {
            return Err(Error::InvalidInput("max_outer must be positive".into()));
        }
        Ok(())
    }
}

/// Solver exit classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Converged,
    CollapsedToZero,
    MaxIter,
}

impl std::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SolveStatus::Converged => "converged",
            SolveStatus::CollapsedToZero => "collapsed_to_zero",
            SolveStatus::MaxIter => "max_iter",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for SolveStatus {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "converged" => Ok(SolveStatus::Converged),
            "collapsed_to_zero" => Ok(SolveStatus::CollapsedToZero),
            "max_iter" => Ok(SolveStatus::MaxIter),
            other => Err(Error::Parse(format!("unknown solve status {other:?}"))),
        }
    }
}

/// Solver outcome: candidate field, level, scaled residual, iteration count.
#[derive(Debug, Clone)]
pub struct MPResult {
    /// Nonnegative part of the final iterate.
    pub u: Field,
    /// Energy level at the final iterate (candidate c_M or c_g).
    pub level: f64,
    /// ‖G(u)‖₂ / max(1, ‖u‖₂) at exit.
    pub residual: f64,
    pub iterations: usize,
    pub status: SolveStatus,
    /// Path-maximum level per outer iteration (diagnostic).
    pub max_level_trace: Vec<f64>,
}

/// Closed-form mountain-pass geometry constants for the μ < 0 regimes.
#[derive(Debug, Clone, Copy)]
pub struct GeometryEstimate {
    pub alpha: f64,
    pub rho: f64,
    pub regime: GeometryRegime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeometryRegime {
    B0,
    C0,
}

/// The (α, ρ) pair of the mountain-pass geometry for (λ, μ) in B₀ or C₀.
pub fn geometry_estimate(
    p: &Params,
    lambda1: f64,
    volume: f64,
    s: f64,
) -> Result<GeometryEstimate> {
    let nf = p.n as f64;
    if p.mu < 0.0 && p.lambda >= 0.0 && p.lambda < lambda1 {
        let ratio = (lambda1 - p.lambda) / lambda1;
        let alpha = ratio.powf(nf / 2.0) * s.powf(nf / 2.0) / nf + 0.5 * p.mu * volume;
        if alpha > 0.0 {
            return Ok(GeometryEstimate {
                alpha,
                rho: ratio.powf((nf - 2.0) / 4.0) * s.powf(nf / 4.0),
                regime: GeometryRegime::B0,
            });
        }
    }
    if p.mu < 0.0 {
        let alpha = s.powf(nf / 2.0) / nf + 0.5 * p.mu * (-p.lambda / p.mu).exp() * volume;
        if alpha > 0.0 {
            return Ok(GeometryEstimate {
                alpha,
                rho: s.powf(nf / 4.0),
                regime: GeometryRegime::C0,
            });
        }
    }
    Err(Error::Regime(format!(
        "(λ, μ) = ({}, {}) lies in neither closed-form geometry regime",
        p.lambda, p.mu
    )))
}

/// Scales a nonnegative direction until the energy turns negative.
pub fn find_negative_endpoint(grid: &Grid, p: &Params, direction: &Field) -> Result<Field> {
    grid.check_shape(direction)?;
    if direction.min() < 0.0 {
        return Err(Error::InvalidInput(
            "endpoint direction must be nonnegative".into(),
        ));
    }
    let fi = fiber_integrals(grid, p, direction)?;
    if fi.l2 <= 0.0 {
        return Err(Error::InvalidInput(
            "endpoint direction must not vanish".into(),
        ));
    }
    let mut t = 1.0;
    for _ in 0..200 {
        if fi.energy(p, t) < 0.0 {
            return Ok(direction.scaled(t));
        }
        t *= 2.0;
    }
    Err(Error::Scaling(format!(
        "energy still nonnegative at scale t = {t:.3e}"
    )))
}

/// Scaled residual ‖L u − u₊^{2*−1} − λu₊ − μu₊ log u₊²‖₂ / max(1, ‖u‖₂).
pub fn residual_check(grid: &Grid, p: &Params, u: &Field) -> Result<f64> {
    grid.check_shape(u)?;
    u.ensure_finite()?;
    let mut g = grid.zero_field();
    gradient_into(grid, p, u, &mut g);
    Ok(grid.norm_l2(&g) / grid.norm_l2(u).max(1.0))
}

/// True iff u is strictly positive at every interior point.
pub fn positivity_check(grid: &Grid, u: &Field) -> Result<bool> {
    grid.check_shape(u)?;
    Ok(u.min() > 0.0)
}

fn bump_direction(grid: &Grid, seed: u64) -> Result<Field> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut span = [0.0; MAX_DIM];
    let mut min_span = f64::INFINITY;
    for j in 0..grid.n {
        span[j] = (grid.dims[j] + 1) as f64 * grid.h;
        min_span = min_span.min(span[j]);
    }
    for _ in 0..16 {
        let mut c = [0.0; MAX_DIM];
        for j in 0..grid.n {
            c[j] = grid.origin[j] + span[j] * rng.gen_range(0.3..0.7) - grid.h;
        }
        let w: f64 = min_span * rng.gen_range(0.18..0.32);
        let w2 = w * w;
        let b = grid.sample(|x| {
            let d2: f64 = x.iter().zip(&c).map(|(&xi, &ci)| (xi - ci) * (xi - ci)).sum();
            let q = 1.0 - d2 / w2;
            if q > 0.0 {
                q * q * q
            } else {
                0.0
            }
        });
        if grid.norm_l2(&b) > 0.0 {
            return Ok(b);
        }
    }
    Err(Error::DegenerateDomain(
        "could not place a bump inside the domain mask".into(),
    ))
}

fn initial_direction(grid: &Grid, cfg: &MPConfig) -> Result<Field> {
    let raw = match &cfg.initial_direction {
        InitialDirection::Eigenfunction => first_eigenpair(grid, 1e-5)?.phi1,
        InitialDirection::Bump => bump_direction(grid, cfg.seed)?,
        InitialDirection::Field(f) => {
            grid.check_shape(f)?;
            f.positive_part()
        }
        InitialDirection::File(path) => {
            let sol = read_solution(path, grid)?;
            sol.values.positive_part()
        }
    };
    let norm = grid.norm_l2(&raw);
    if norm <= 0.0 {
        return Err(Error::InvalidInput(
            "initial direction has no positive part".into(),
        ));
    }
    Ok(raw.scaled(1.0 / norm))
}

/// One Armijo-backtracked steepest descent step in the L² metric.
/// Updates the node, its energy and its cached step on acceptance.
fn armijo_descent_step(
    grid: &Grid,
    p: &Params,
    node: &mut Field,
    node_energy: &mut f64,
    g: &Field,
    step: &mut f64,
) -> bool {
    let g_sq = grid.inner(g, g);
    if g_sq == 0.0 {
        return false;
    }
    let mut s = *step;
    for _ in 0..45 {
        let mut trial = node.clone();
        trial.axpy(-s, g);
        let e = match energy(grid, p, &trial) {
            Ok(e) => e.total,
            Err(_) => {
                s *= 0.5;
                continue;
            }
        };
        if e <= *node_energy - 1e-4 * s * g_sq {
            *node = trial;
            *node_energy = e;
            *step = s * 1.5;
            return true;
        }
        s *= 0.5;
    }
    *step = (*step * 0.5).max(1e-18);
    false
}

/// Rebalances the polygonal path to uniform L² arclength.
fn reparametrize(grid: &Grid, nodes: &mut Vec<Field>) {
    let m = nodes.len();
    let mut cum = vec![0.0; m];
    for i in 1..m {
        let mut diff = nodes[i].clone();
        diff.axpy(-1.0, &nodes[i - 1]);
        cum[i] = cum[i - 1] + grid.norm_l2(&diff);
    }
    let total = cum[m - 1];
    if total <= 0.0 {
        return;
    }
    let mut out = Vec::with_capacity(m);
    out.push(nodes[0].clone());
    let mut seg = 1usize;
    for i in 1..m - 1 {
        let target = total * i as f64 / (m - 1) as f64;
        while seg < m - 1 && cum[seg] < target {
            seg += 1;
        }
        let denom = cum[seg] - cum[seg - 1];
        let w = if denom > 0.0 {
            (target - cum[seg - 1]) / denom
        } else {
            0.0
        };
        let mut p = nodes[seg - 1].scaled(1.0 - w);
        p.axpy(w, &nodes[seg]);
        out.push(p);
    }
    out.push(nodes[m - 1].clone());
    *nodes = out;
}

/// Removes the radial component of `w` relative to `u` in the L² pairing.
fn transverse_part(grid: &Grid, u: &Field, w: &Field) -> Field {
    let norm = grid.norm_l2(u);
    if norm <= 0.0 {
        return w.clone();
    }
    let r = u.scaled(1.0 / norm);
    let par = grid.inner(w, &r);
    let mut d = w.clone();
    d.axpy(-par, &r);
    d
}

/// Rescales u to the maximum of the energy along its own ray. Returns the
/// ray-maximized field and its level, or None when no interior maximum
/// exists (the fiber has no ridge).
fn fiber_maximize(grid: &Grid, p: &Params, u: &Field) -> Result<Option<(Field, f64)>> {
    let fi = fiber_integrals(grid, p, u)?;
    if fi.l2 <= 0.0 || fi.crit <= 0.0 {
        return Ok(None);
    }
    match crate::testfunctions::sup_fiber_energy(p, &fi) {
        Ok((t, level)) => Ok(Some((u.scaled(t), level))),
        Err(Error::Bracket(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Mountain-pass solve by path deformation with maximizer refinement.
pub fn mountain_pass_solve(grid: &Grid, p: &Params, cfg: &MPConfig) -> Result<MPResult> {
    cfg.validate()?;
    let dir = initial_direction(grid, cfg)?;
    let endpoint = find_negative_endpoint(grid, p, &dir)?;
    let fi_dir = fiber_integrals(grid, p, &dir)?;
    let t_end = grid.norm_l2(&endpoint); // dir is unit, so ‖t·dir‖ = t

    let m = cfg.path_points;
    let mut nodes: Vec<Field> = (0..m)
        .map(|i| dir.scaled(t_end * i as f64 / (m - 1) as f64))
        .collect();
    let mut energies: Vec<f64> = (0..m)
        .map(|i| fi_dir.energy(p, t_end * i as f64 / (m - 1) as f64))
        .collect();
    let initial_scale = t_end;
    let mut steps = vec![cfg.descent_step; m];
    let mut climb_step = 1.0f64;
    let mut trace = Vec::new();
    let mut g = grid.zero_field();
    let mut w = grid.zero_field();
    let mut climbing = false;
    let mut ray_maximized = false;
    let mut prev_max = f64::INFINITY;
    let mut stagnant = 0usize;
    let mut residual = f64::INFINITY;

    for outer in 1..=cfg.max_outer {
        // locate the path maximizer (node 0 is pinned at zero)
        let mut mx = 1usize;
        for i in 1..m {
            if energies[i] > energies[mx] {
                mx = i;
            }
        }
        trace.push(energies[mx]);

        let u_norm = grid.norm_l2(&nodes[mx]);
        if u_norm < 1e-6 * initial_scale {
            let u = nodes[mx].positive_part();
            let residual = residual_check(grid, p, &nodes[mx])?;
            return Ok(MPResult {
                u,
                level: energies[mx],
                residual,
                iterations: outer,
                status: SolveStatus::CollapsedToZero,
                max_level_trace: trace,
            });
        }

        gradient_into(grid, p, &nodes[mx], &mut g);
        residual = grid.norm_l2(&g) / u_norm.max(1.0);
        if residual <= cfg.grad_tol {
            let u = nodes[mx].positive_part();
            if grid.norm_l2(&u) < 1e-9 * initial_scale {
                return Ok(MPResult {
                    u,
                    level: energies[mx],
                    residual,
                    iterations: outer,
                    status: SolveStatus::CollapsedToZero,
                    max_level_trace: trace,
                });
            }
            return Ok(MPResult {
                u,
                level: energies[mx],
                residual,
                iterations: outer,
                status: SolveStatus::Converged,
                max_level_trace: trace,
            });
        }

        if !climbing {
            // string phase: damped descent on the free nodes; both path
            // endpoints stay anchored (0 and the negative-energy endpoint)
            let spacing = initial_scale / (m - 1) as f64;
            for i in 1..m - 1 {
                gradient_into(grid, p, &nodes[i], &mut g);
                let g_norm = grid.norm_l2(&g);
                if g_norm == 0.0 {
                    continue;
                }
                let mut e = energies[i];
                // displacement cap keeps nodes from shooting past their
                // neighbors into the unbounded-below well
                let mut st = steps[i].min(0.5 * spacing / g_norm);
                armijo_descent_step(grid, p, &mut nodes[i], &mut e, &g, &mut st);
                energies[i] = e;
                steps[i] = st;
            }
            let cur_max = energies.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            if prev_max - cur_max < cfg.energy_tol * cur_max.abs().max(1.0) {
                stagnant += 1;
                if stagnant >= 2 {
                    climbing = true;
                }
            } else {
                stagnant = 0;
            }
            prev_max = cur_max;
            reparametrize(grid, &mut nodes);
            for i in 1..m - 1 {
                energies[i] = energy(grid, p, &nodes[i])?.total;
            }
        } else {
            // refinement phase: transverse preconditioned descent on the
            // ray-maximized maximizer
            if !ray_maximized {
                match fiber_maximize(grid, p, &nodes[mx])? {
                    Some((v, lvl)) => {
                        nodes[mx] = v;
                        energies[mx] = lvl;
                        ray_maximized = true;
                        gradient_into(grid, p, &nodes[mx], &mut g);
                    }
                    None => {
                        // no ridge on this fiber: keep descending the path
                        climbing = false;
                        stagnant = 0;
                        continue;
                    }
                }
            }
            for v in w.as_mut_slice() {
                *v = 0.0;
            }
            let precond_ok = solve_laplace(grid, &g, &mut w, 1e-2, 20_000).is_ok();
            let mut stepped = false;
            if precond_ok {
                let d = transverse_part(grid, &nodes[mx], &w);
                let slope = grid.inner(&g, &d);
                if slope > 0.0 {
                    let mut s = climb_step;
                    for _ in 0..40 {
                        let mut ray = nodes[mx].clone();
                        ray.axpy(-s, &d);
                        if let Some((v, lvl)) = fiber_maximize(grid, p, &ray)? {
                            if lvl <= energies[mx] - 1e-4 * s * slope {
                                nodes[mx] = v;
                                energies[mx] = lvl;
                                climb_step = (s * 1.5).min(4.0);
                                stepped = true;
                                break;
                            }
                        }
                        s *= 0.5;
                    }
                }
            }
            if !stepped {
                // fall back to a plain descent step and re-maximize next turn
                climb_step = (climb_step * 0.5).max(1e-10);
                let mut e = energies[mx];
                let mut st = steps[mx];
                armijo_descent_step(grid, p, &mut nodes[mx], &mut e, &g, &mut st);
                energies[mx] = e;
                steps[mx] = st;
                ray_maximized = false;
            }
        }
    }

    let mut mx = 1usize;
    for i in 1..m {
        if energies[i] > energies[mx] {
            mx = i;
        }
    }
    Ok(MPResult {
        u: nodes[mx].positive_part(),
        level: energies[mx],
        residual,
        iterations: cfg.max_outer,
        status: SolveStatus::MaxIter,
        max_level_trace: trace,
    })
}

/// Ground-state search: projected gradient flow on the Nehari manifold.
pub fn ground_state_search(grid: &Grid, p: &Params, cfg: &MPConfig) -> Result<MPResult> {
    cfg.validate()?;
    let dir = initial_direction(grid, cfg)?;
    let proj = nehari_project(grid, p, &dir)?;
    let mut u = dir.scaled(proj.t);
    let initial_scale = grid.norm_l2(&u);
    let mut level = energy(grid, p, &u)?.total;
    let mut g = grid.zero_field();
    let mut w = grid.zero_field();
    let mut step = 1.0f64;
    let mut trace = Vec::new();
    let mut residual = f64::INFINITY;

    for outer in 1..=cfg.max_outer {
        trace.push(level);
        let u_norm = grid.norm_l2(&u);
        if u_norm < 1e-6 * initial_scale {
            return Ok(MPResult {
                u: u.positive_part(),
                level,
                residual,
                iterations: outer,
                status: SolveStatus::CollapsedToZero,
                max_level_trace: trace,
            });
        }
        gradient_into(grid, p, &u, &mut g);
        residual = grid.norm_l2(&g) / u_norm.max(1.0);
        if residual <= cfg.grad_tol {
            return Ok(MPResult {
                u: u.positive_part(),
                level,
                residual,
                iterations: outer,
                status: SolveStatus::Converged,
                max_level_trace: trace,
            });
        }
        for v in w.as_mut_slice() {
            *v = 0.0;
        }
        solve_laplace(grid, &g, &mut w, 1e-2, 20_000)?;
        let slope = grid.inner(&g, &w); // ⟨g, L⁻¹g⟩ > 0
        let mut s = step;
        let mut accepted = false;
        for _ in 0..40 {
            let mut trial = u.clone();
            trial.axpy(-s, &w);
            let t = match nehari_project(grid, p, &trial) {
                Ok(pr) => pr.t,
                Err(_) => {
                    s *= 0.5;
                    continue;
                }
            };
            trial.scale(t);
            let e = energy(grid, p, &trial)?.total;
            if e <= level - 1e-4 * s * slope {
                u = trial;
                level = e;
                step = (s * 1.5).min(4.0);
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        if !accepted {
            step = (step * 0.5).max(1e-10);
        }
    }
    Ok(MPResult {
        u: u.positive_part(),
        level,
        residual,
        iterations: cfg.max_outer,
        status: SolveStatus::MaxIter,
        max_level_trace: trace,
    })
}

/// A solution artifact read back from disk.
#[derive(Debug, Clone)]
pub struct SolutionFile {
    pub n: usize,
    pub h: f64,
    pub dims: Vec<usize>,
    pub lambda: f64,
    pub mu: f64,
    pub level: f64,
    pub residual: f64,
    pub status: SolveStatus,
    pub values: Field,
}

/// Writes "N h dim1 .. dimN λ μ level residual status" then one value per
/// interior point in lexicographic order.
pub fn write_solution(
    path: &Path,
    grid: &Grid,
    p: &Params,
    result: &MPResult,
) -> Result<()> {
    let file = File::create(path)?;
    let mut wtr = BufWriter::new(file);
    write!(wtr, "{} {}", grid.n, grid.h)?;
    for d in &grid.dims {
        write!(wtr, " {d}")?;
    }
    writeln!(
        wtr,
        " {} {} {} {} {}",
        p.lambda, p.mu, result.level, result.residual, result.status
    )?;
    for v in result.u.as_slice() {
        writeln!(wtr, "{v}")?;
    }
    Ok(())
}

/// Reads a solution file back, validating it against the grid.
pub fn read_solution(path: &Path, grid: &Grid) -> Result<SolutionFile> {
    let file = File::open(path)?;
    let mut reader = BufReader::new(file);
    let mut header = String::new();
    reader.read_line(&mut header)?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() < 3 {
        return Err(Error::Parse("solution header too short".into()));
    }
    let n: usize = toks[0]
        .parse()
        .map_err(|_| Error::Parse("solution header: bad dimension".into()))?;
    if toks.len() != 2 + n + 5 {
        return Err(Error::Parse(format!(
            "solution header: expected {} fields, got {}",
            2 + n + 5,
            toks.len()
        )));
    }
    let parse_f = |s: &str, what: &str| -> Result<f64> {
        s.parse()
            .map_err(|_| Error::Parse(format!("solution header: bad {what}")))
    };
    let h = parse_f(toks[1], "spacing")?;
    let mut dims = Vec::with_capacity(n);
    for t in &toks[2..2 + n] {
        dims.push(
            t.parse()
                .map_err(|_| Error::Parse("solution header: bad dims".into()))?,
        );
    }
    let lambda = parse_f(toks[2 + n], "lambda")?;
    let mu = parse_f(toks[3 + n], "mu")?;
    let level = parse_f(toks[4 + n], "level")?;
    let residual = parse_f(toks[5 + n], "residual")?;
    let status: SolveStatus = toks[6 + n].parse()?;

    if n != grid.n || dims != grid.dims {
        return Err(Error::ShapeMismatch {
            expected: grid.interior_len(),
            got: dims.iter().product(),
        });
    }
    if (h - grid.h).abs() > 1e-12 * grid.h {
        return Err(Error::Parse(format!(
            "solution spacing {h} does not match grid spacing {}",
            grid.h
        )));
    }
    let mut values = Vec::with_capacity(grid.interior_len());
    for line in reader.lines() {
        let line = line?;
        for tok in line.split_whitespace() {
            values.push(
                tok.parse::<f64>()
                    .map_err(|_| Error::Parse("solution body: bad value".into()))?,
            );
        }
    }
    if values.len() != grid.interior_len() {
        return Err(Error::ShapeMismatch {
            expected: grid.interior_len(),
            got: values.len(),
        });
    }
    Ok(SolutionFile {
        n,
        h,
        dims,
        lambda,
        mu,
        level,
        residual,
        status,
        values: Field::from_vec(values),
    })
}
