//! Resolution of `--fixture`, `--config` and `--one-ring` into a ring system.

use std::fs;
use std::path::{Path, PathBuf};

use catalog::{fixture, OneRing};
use vortex_model::{Config, RingSystem};

use crate::args::InputArgs;
use crate::CliError;

#[derive(Clone, Debug)]
pub struct Input {
    /// Short description for reports.
    pub label: String,
    pub rings: RingSystem,
    /// Angular velocity carried by the input.
    pub omega: Option<f64>,
    pub path: Option<PathBuf>,
}

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn one_ring(spec: &str) -> Result<Input, CliError> {
    let bad = || CliError::Input(format!("--one-ring expects M:P:Z, got {spec:?}"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [m, p, z] = parts.as_slice() else {
        return Err(bad());
    };
    let m: usize = m.trim().parse().map_err(|_| bad())?;
    let p: usize = p.trim().parse().map_err(|_| bad())?;
    let z: f64 = z.trim().parse().map_err(|_| bad())?;
    let (rings, omega) = OneRing::new(m, p)?.at(z)?;
    Ok(Input {
        label: format!("one ring m={m} p={p} z={z}"),
        rings,
        omega: Some(omega),
        path: None,
    })
}

pub fn load(args: &InputArgs) -> Result<Input, CliError> {
    if let Some(name) = &args.fixture {
        let f = fixture(name)?;
        let rings = match args.form {
            Some(m) => f.form(m)?.clone(),
            None => f.primary().clone(),
        };
        return Ok(Input {
            label: format!("fixture {name}"),
            rings,
            omega: Some(f.omega),
            path: None,
        });
    }
    if let Some(path) = &args.config {
        let text = read(path)?;
        let omega = serde_json::from_str::<serde_json::Value>(&text)
            .ok()
            .and_then(|v| v.get("omega").and_then(|w| w.as_f64()));
        let rings = match Config::from_json(&text)? {
            Config::Rings(r) => r,
            // no symmetry assumed: every vortex is its own ring
            Config::Full(f) => RingSystem::new(1, f.len(), 0, f.vortices)?,
        };
        return Ok(Input {
            label: format!("config {}", path.display()),
            rings,
            omega,
            path: Some(path.clone()),
        });
    }
    if let Some(spec) = &args.one_ring {
        return one_ring(spec);
    }
    Err(CliError::Input("one of --fixture, --config or --one-ring is required".into()))
}
