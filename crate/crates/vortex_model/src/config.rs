//! JSON configuration files. Floats are written with 17 significant digits.

use serde::Deserialize;

use crate::error::ModelError;
use crate::full::FullConfiguration;
use crate::ring::RingSystem;

#[derive(Deserialize)]
struct RingFile {
    m: usize,
    n: usize,
    p: usize,
    generators: Vec<[f64; 3]>,
}

#[derive(Deserialize)]
struct FullFile {
    vortices: Vec<[f64; 3]>,
}

/// Either a reduced ring system or a full configuration.
#[derive(Clone, Debug, PartialEq)]
pub enum Config {
    Rings(RingSystem),
    Full(FullConfiguration),
}

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn fmt_vec3(v: &[f64; 3]) -> String {
    format!("[{}, {}, {}]", fmt_f64(v[0]), fmt_f64(v[1]), fmt_f64(v[2]))
}

fn fmt_points(v: &[[f64; 3]]) -> String {
    let rows: Vec<String> = v.iter().map(fmt_vec3).collect();
    format!("[{}]", rows.join(", "))
}

impl RingSystem {
    pub fn to_json(&self) -> String {
        format!(
            "{{\"m\": {}, \"n\": {}, \"p\": {}, \"generators\": {}}}",
            self.shape.m,
            self.shape.n,
            self.shape.p,
            fmt_points(&self.u)
        )
    }

    pub fn from_json(text: &str) -> Result<RingSystem, ModelError> {
        let f: RingFile = serde_json::from_str(text).map_err(|e| ModelError::Format(e.to_string()))?;
        RingSystem::new(f.m, f.n, f.p, f.generators)
    }
}

impl FullConfiguration {
    pub fn to_json(&self) -> String {
        format!("{{\"vortices\": {}}}", fmt_points(&self.vortices))
    }

    pub fn from_json(text: &str) -> Result<FullConfiguration, ModelError> {
        let f: FullFile = serde_json::from_str(text).map_err(|e| ModelError::Format(e.to_string()))?;
        FullConfiguration::new(f.vortices)
    }
}

impl Config {
    pub fn from_json(text: &str) -> Result<Config, ModelError> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| ModelError::Format(e.to_string()))?;
        if v.get("generators").is_some() {
            RingSystem::from_json(text).map(Config::Rings)
        } else if v.get("vortices").is_some() {
            FullConfiguration::from_json(text).map(Config::Full)
        } else {
            Err(ModelError::Format("expected \"generators\" or \"vortices\"".into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_round_trip_is_exact() {
        let z: f64 = 0.1;
        let rs = RingSystem::new(5, 1, 2, vec![[(1.0 - z * z).sqrt(), 0.0, z]]).unwrap();
        let text = rs.to_json();
        assert!(text.contains("9.9498743710661997e-1"));
        assert_eq!(RingSystem::from_json(&text).unwrap(), rs);
        assert!(matches!(Config::from_json("{\"m\": 2"), Err(ModelError::Format(_))));
    }
}
