//! Flat key=value configuration files and metadata sidecars.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use logbn::domain::{DomainKind, DomainSpec};
use logbn::error::{Error, Result};
use logbn::solvers::{InitialDirection, MPConfig};

/// Parsed configuration: a flat map of dotted keys to string values.
#[derive(Debug, Clone, Default)]
pub struct Config {
    map: BTreeMap<String, String>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let mut cfg = Config::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Parse(format!("config line {}: expected key=value", lineno + 1))
            })?;
            cfg.map
                .insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(cfg)
    }

    /// Applies a --set KEY=VALUE override.
    pub fn apply_override(&mut self, kv: &str) -> Result<()> {
        let (key, value) = kv
            .split_once('=')
            .ok_or_else(|| Error::InvalidInput(format!("--set needs KEY=VALUE, got {kv:?}")))?;
        self.map
            .insert(key.trim().to_string(), value.trim().to_string());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(|s| s.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key)
            .ok_or_else(|| Error::InvalidInput(format!("missing required key: {key}")))
    }

    pub fn require_f64(&self, key: &str) -> Result<f64> {
        self.require(key)?
            .parse()
            .map_err(|_| Error::InvalidInput(format!("key {key}: expected a number")))
    }

    pub fn require_usize(&self, key: &str) -> Result<usize> {
        self.require(key)?
            .parse()
            .map_err(|_| Error::InvalidInput(format!("key {key}: expected an integer")))
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| Error::InvalidInput(format!("key {key}: expected a number"))),
        }
    }

    pub fn usize_or(&self, key: &str, default: usize) -> Result<usize> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| Error::InvalidInput(format!("key {key}: expected an integer"))),
        }
    }

    pub fn u64_or(&self, key: &str, default: u64) -> Result<u64> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| Error::InvalidInput(format!("key {key}: expected an integer"))),
        }
    }

    pub fn bool_or(&self, key: &str, default: bool) -> Result<bool> {
        match self.get(key) {
            None => Ok(default),
            Some("true") | Some("1") | Some("yes") => Ok(true),
            Some("false") | Some("0") | Some("no") => Ok(false),
            Some(v) => Err(Error::InvalidInput(format!(
                "key {key}: expected a boolean, got {v:?}"
            ))),
        }
    }

    pub fn f64_list(&self, key: &str) -> Result<Vec<f64>> {
        let raw = self.require(key)?;
        raw.split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("key {key}: bad number {t:?}")))
            })
            .collect()
    }

    /// Domain specification from the domain.* keys.
    pub fn domain_spec(&self) -> Result<DomainSpec> {
        let n = self.require_usize("domain.n")?;
        let resolution = self.require_usize("domain.resolution")?;
        let kind = match self.require("domain.kind")? {
            "box" => {
                let extents = self.f64_list("domain.extents")?;
                DomainKind::Box { extents }
            }
            "ball" => DomainKind::Ball {
                radius: self.require_f64("domain.radius")?,
            },
            "mask" => DomainKind::MaskFile {
                path: self.require("domain.mask_path")?.into(),
            },
            other => {
                return Err(Error::InvalidInput(format!(
                    "key domain.kind: expected box, ball or mask, got {other:?}"
                )))
            }
        };
        Ok(DomainSpec {
            kind,
            n,
            resolution,
        })
    }

    /// Solver configuration from the solver.* keys (seed falls back to the
    /// top-level seed).
    pub fn mp_config(&self) -> Result<MPConfig> {
        let defaults = MPConfig::default();
        let seed = self.u64_or("solver.seed", self.u64_or("seed", defaults.seed)?)?;
        let initial_direction = match self.get("solver.initial_direction").unwrap_or("eigenfunction")
        {
            "eigenfunction" => InitialDirection::Eigenfunction,
            "bump" => InitialDirection::Bump,
            "file" => InitialDirection::File(self.require("solver.initial_file")?.into()),
            other => {
                return Err(Error::InvalidInput(format!(
                    "key solver.initial_direction: expected eigenfunction, bump or file, got {other:?}"
                )))
            }
        };
        Ok(MPConfig {
            path_points: self.usize_or("solver.path_points", defaults.path_points)?,
            descent_step: self.f64_or("solver.descent_step", defaults.descent_step)?,
            max_outer: self.usize_or("solver.max_outer", defaults.max_outer)?,
            grad_tol: self.f64_or("solver.grad_tol", defaults.grad_tol)?,
            energy_tol: self.f64_or("solver.energy_tol", defaults.energy_tol)?,
            seed,
            initial_direction,
        })
    }
}

/// Writes a metadata sidecar: key = value lines in the given order.
pub fn write_meta(path: &Path, pairs: &[(&str, String)]) -> Result<()> {
    let mut out = fs::File::create(path)?;
    for (k, v) in pairs {
        writeln!(out, "{k} = {v}")?;
    }
    Ok(())
}

/// Seconds since the epoch, kept in its own metadata field so the rest of a
/// sidecar is reproducible.
pub fn timestamp() -> String {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs().to_string())
        .unwrap_or_else(|_| "0".to_string())
}
