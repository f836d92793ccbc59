//! Config-file overlay: `key = value` lines with `#` comments, one pair per
//! line, keyed by the long flag names. Explicit flags win over the file.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use thermoplate_core::EigenModel;

const KNOWN_KEYS: &[&str] = &[
    "model",
    "seed",
    "threads",
    "output",
    "sigma",
    "omega",
    "sigma-grid",
    "omega-grid",
    "lambda-min",
    "lambda-max",
    "points-per-octave",
    "exponent-tol",
    "exponent-tol-analytic",
    "raw-fit",
    "n-start",
    "n-end",
    "n-count",
    "modes",
    "t-max",
    "t-points-per-octave",
    "init",
    "fit",
    "items",
    "draws",
];

#[derive(Debug, Default, Clone)]
pub struct FileConfig {
    values: BTreeMap<String, String>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let mut values = BTreeMap::new();
        let Some(path) = path else {
            return Ok(FileConfig { values });
        };
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("{}:{}: expected key = value", path.display(), lineno + 1))?;
            let key = key.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                bail!("{}:{}: unknown config key {:?}", path.display(), lineno + 1, key);
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(FileConfig { values })
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|e| anyhow!("config key {key} = {raw:?}: {e}")),
        }
    }

    pub fn get_string(&self, key: &str) -> Option<String> {
        self.values.get(key).cloned()
    }
}

/// flag value, else file value, else default.
pub fn resolve<T: FromStr + Clone>(
    flag: Option<T>,
    file: &FileConfig,
    key: &str,
    default: T,
) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    if let Some(v) = flag {
        return Ok(v);
    }
    Ok(file.get::<T>(key)?.unwrap_or(default))
}

/// Parse a model spec: power-law:C:P, list:V1,V2,..., or file:PATH.
pub fn parse_model(spec: &str) -> Result<EigenModel> {
    if let Some(rest) = spec.strip_prefix("power-law:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 2 {
            bail!("power-law model needs power-law:C:P, got {spec:?}");
        }
        let scale: f64 = parts[0].parse().context("power-law scale")?;
        let exponent: f64 = parts[1].parse().context("power-law exponent")?;
        return Ok(EigenModel::power_law(scale, exponent)?);
    }
    if let Some(rest) = spec.strip_prefix("list:") {
        let values: Vec<f64> = rest
            .split(',')
            .map(|v| v.trim().parse::<f64>().map_err(|e| anyhow!("list entry {v:?}: {e}")))
            .collect::<Result<_>>()?;
        return Ok(EigenModel::explicit(values)?);
    }
    if let Some(path) = spec.strip_prefix("file:") {
        return Ok(EigenModel::from_file(path)?);
    }
    bail!("unknown model spec {spec:?} (expected power-law:C:P, list:..., or file:PATH)")
}

/// Parse a grid spec START:END:STEP into inclusive samples.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        bail!("grid spec must be START:END:STEP, got {spec:?}");
    }
    let start: f64 = parts[0].parse().context("grid start")?;
    let end: f64 = parts[1].parse().context("grid end")?;
    let step: f64 = parts[2].parse().context("grid step")?;
    if !(step > 0.0) || end < start {
        bail!("grid spec needs END >= START and STEP > 0, got {spec:?}");
    }
    let count = ((end - start) / step).round() as usize;
    let mut out = Vec::with_capacity(count + 1);
    for k in 0..=count {
        let v = start + step * k as f64;
        // kill the ulp-level accumulation noise (1.5000000000000002 etc.)
        let v: f64 = format!("{v:.12e}").parse().unwrap();
        if v <= end + 1e-12 * step.abs() {
            out.push(v);
        }
    }
    if out.is_empty() {
        bail!("empty grid from {spec:?}");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let g = parse_grid("0.1:0.5:0.1").unwrap();
        assert_eq!(g.len(), 5);
        assert!((g[4] - 0.5).abs() < 1e-12);
        assert!(parse_grid("1:0:0.1").is_err());
        assert!(parse_grid("1:2").is_err());
    }

    #[test]
    fn model_specs() {
        assert!(matches!(
            parse_model("power-law:1:2").unwrap(),
            EigenModel::PowerLaw { .. }
        ));
        let m = parse_model("list:1.0,2.5,9").unwrap();
        assert_eq!(m.len(), Some(3));
        assert!(parse_model("power-law:1").is_err());
        assert!(parse_model("nope:1").is_err());
    }

    #[test]
    fn file_overlay_precedence() {
        let dir = std::env::temp_dir();
        let path = dir.join("thermoplate_overlay_test.conf");
        std::fs::write(&path, "# comment\nsigma = 0.75\nseed = 7\n").unwrap();
        let file = FileConfig::load(Some(&path)).unwrap();
        // flag wins
        assert_eq!(resolve(Some(1.0f64), &file, "sigma", 0.5).unwrap(), 1.0);
        // file beats default
        assert_eq!(resolve(None::<f64>, &file, "sigma", 0.5).unwrap(), 0.75);
        // default when absent everywhere
        assert_eq!(resolve(None::<f64>, &file, "omega", 0.25).unwrap(), 0.25);

        let bad = dir.join("thermoplate_overlay_bad.conf");
        std::fs::write(&bad, "nonsense-key = 3\n").unwrap();
        assert!(FileConfig::load(Some(&bad)).is_err());
    }
}
