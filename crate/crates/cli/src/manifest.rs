//! Run manifest and artifact output.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{Map, Value};

use crate::args::OutputArgs;
use crate::CliError;

#[derive(Clone, Debug, Serialize)]
pub struct Stage {
    pub name: String,
    pub status: String,
}

/// Record of one invocation. Timestamps live here only, so artifacts of
/// identical invocations are byte-identical.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<String>,
    pub parameters: Map<String, Value>,
    pub outputs: Vec<String>,
    pub build: String,
    /// Unix seconds at start.
    pub started: u64,
    pub wall_clock_ms: u128,
    pub stages: Vec<Stage>,
}

pub fn build_id() -> String {
    format!("vortex-cert {} (git {})", env!("CARGO_PKG_VERSION"), env!("VORTEX_CERT_GIT"))
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Artifact sink and manifest of the running command.
pub struct Run {
    pub manifest: RunManifest,
    clock: Instant,
    out: Option<PathBuf>,
    manifest_path: Option<PathBuf>,
    json: bool,
}

impl Run {
    pub fn new(command: &str, output: &OutputArgs) -> Run {
        let manifest_path = output.manifest.clone().or_else(|| {
            output.out.as_ref().map(|p| {
                let mut s = p.clone().into_os_string();
                s.push(".manifest.json");
                PathBuf::from(s)
            })
        });
        Run {
            manifest: RunManifest {
                command: command.into(),
                inputs: Vec::new(),
                parameters: Map::new(),
                outputs: Vec::new(),
                build: build_id(),
                started: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
                wall_clock_ms: 0,
                stages: Vec::new(),
            },
            clock: Instant::now(),
            out: output.out.clone(),
            manifest_path,
            json: output.json,
        }
    }

    pub fn input(&mut self, path: &Path) {
        let p = path.display().to_string();
        if !self.manifest.inputs.contains(&p) {
            self.manifest.inputs.push(p);
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.manifest.parameters.insert(key.into(), v);
    }

    pub fn stage(&mut self, name: &str, status: impl Into<String>) {
        self.manifest.stages.push(Stage {
            name: name.into(),
            status: status.into(),
        });
    }

    /// Writes the artifact to `--out`, or to stdout.
    pub fn artifact(&mut self, text: &str) -> Result<(), CliError> {
        match self.out.clone() {
            Some(p) => {
                write_file(&p, text)?;
                let s = p.display().to_string();
                if !self.manifest.outputs.contains(&s) {
                    self.manifest.outputs.push(s);
                }
            }
            None => {
                let mut o = std::io::stdout().lock();
                let _ = o.write_all(text.as_bytes());
                if !text.ends_with('\n') {
                    let _ = o.write_all(b"\n");
                }
            }
        }
        Ok(())
    }

    /// Summary on stdout when the artifact went to a file, else on stderr.
    pub fn summary(&self, text: &str, json: Value) {
        let line = if self.json {
            serde_json::to_string(&json).expect("summary serializes")
        } else {
            text.trim_end().to_string()
        };
        if self.out.is_some() {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    }

    /// Writes the manifest when an output path was given.
    pub fn finish(mut self) -> Result<(), CliError> {
        self.manifest.wall_clock_ms = self.clock.elapsed().as_millis();
        if let Some(p) = &self.manifest_path {
            let text = serde_json::to_string_pretty(&self.manifest).expect("manifest serializes");
            write_file(p, &text)?;
        }
        Ok(())
    }
}
