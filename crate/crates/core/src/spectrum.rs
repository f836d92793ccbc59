//! The abstract positive self-adjoint operator A, represented by its
//! eigenvalue sequence. Fractional powers act diagonally as eta^r.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Eigenvalue sequence of A: strictly positive, nondecreasing, unbounded in
/// the power-law case. Mode indices are 1-based.
#[derive(Debug, Clone, PartialEq)]
pub enum EigenModel {
    /// eta_n = scale * n^exponent with scale, exponent > 0.
    PowerLaw { scale: f64, exponent: f64 },
    /// Finite explicit list; repeated entries encode multiplicities.
    Explicit(Vec<f64>),
}

impl Default for EigenModel {
    /// The 1-D Dirichlet-Laplacian-like default eta_n = n^2.
    fn default() -> Self {
        EigenModel::PowerLaw {
            scale: 1.0,
            exponent: 2.0,
        }
    }
}

impl EigenModel {
    pub fn power_law(scale: f64, exponent: f64) -> Result<Self> {
        if !(scale > 0.0) || !(exponent > 0.0) || !scale.is_finite() || !exponent.is_finite() {
            return Err(Error::InvalidPowerLaw { scale, exponent });
        }
        Ok(EigenModel::PowerLaw { scale, exponent })
    }

    pub fn explicit(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySpectrum);
        }
        let mut prev = 0.0f64;
        for (i, &v) in values.iter().enumerate() {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::NonpositiveEigenvalue(v));
            }
            if v < prev {
                return Err(Error::NonmonotoneSpectrum {
                    index: i + 1,
                    value: v,
                    previous: prev,
                });
            }
            prev = v;
        }
        Ok(EigenModel::Explicit(values))
    }

    /// Plain-text file model: one positive decimal eigenvalue per line,
    /// strictly increasing. Blank lines and `#` comments are ignored;
    /// errors carry 1-based line numbers.
    pub fn from_file<P: AsRef<Path>>(path: P) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::SpectrumFile {
            path: path.display().to_string(),
            line: 0,
            message: e.to_string(),
        })?;
        let mut values = Vec::new();
        let mut prev = f64::NEG_INFINITY;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let file_err = |message: String| Error::SpectrumFile {
                path: path.display().to_string(),
                line: lineno + 1,
                message,
            };
            let v: f64 = line
                .parse()
                .map_err(|_| file_err(format!("not a decimal number: {line:?}")))?;
            if !(v > 0.0) || !v.is_finite() {
                return Err(file_err(format!("eigenvalue must be positive, got {v}")));
            }
            if v <= prev {
                return Err(file_err(format!(
                    "eigenvalues must be strictly increasing: {v} after {prev}"
                )));
            }
            prev = v;
            values.push(v);
        }
        if values.is_empty() {
            return Err(Error::SpectrumFile {
                path: path.display().to_string(),
                line: 0,
                message: "no eigenvalues in file".into(),
            });
        }
        Ok(EigenModel::Explicit(values))
    }

    /// eta_n for 1-based n.
    pub fn eigenvalue(&self, n: u64) -> Result<f64> {
        if n == 0 {
            return Err(Error::NonpositiveModeIndex(n));
        }
        match self {
            EigenModel::PowerLaw { scale, exponent } => Ok(scale * (n as f64).powf(*exponent)),
            EigenModel::Explicit(values) => values
                .get(n as usize - 1)
                .copied()
                .ok_or(Error::ModeIndexOutOfRange {
                    index: n,
                    len: values.len(),
                }),
        }
    }

    /// Number of modes for explicit models, `None` when unbounded.
    pub fn len(&self) -> Option<u64> {
        match self {
            EigenModel::PowerLaw { .. } => None,
            EigenModel::Explicit(values) => Some(values.len() as u64),
        }
    }

    pub fn is_unbounded(&self) -> bool {
        self.len().is_none()
    }

    /// Largest index with eta_n <= eta, clamped to [1, model length].
    pub fn last_mode_below(&self, eta: f64) -> u64 {
        match self {
            EigenModel::PowerLaw { scale, exponent } => {
                if eta <= *scale {
                    return 1;
                }
                let n = (eta / scale).powf(1.0 / exponent).floor();
                // floating floor can land one off; nudge against the model
                let mut n = n.max(1.0) as u64;
                while self.eigenvalue(n + 1).map(|e| e <= eta).unwrap_or(false) {
                    n += 1;
                }
                while n > 1 && self.eigenvalue(n).map(|e| e > eta).unwrap_or(false) {
                    n -= 1;
                }
                n
            }
            EigenModel::Explicit(values) => {
                let k = values.partition_point(|&v| v <= eta) as u64;
                k.max(1)
            }
        }
    }
}

/// eta^r as exp(r ln eta); r may be negative, eta must be positive.
pub fn frac_power_coeff(eta: f64, r: f64) -> Result<f64> {
    if !(eta > 0.0) || !eta.is_finite() {
        return Err(Error::NonpositiveEigenvalue(eta));
    }
    Ok((r * eta.ln()).exp())
}

/// Resonance target: the eta > 0 solving eta^2 = lambda^2 (1 + omega eta).
pub fn resonant_eta(lambda: f64, omega: f64) -> f64 {
    let l2 = lambda * lambda;
    if omega == 0.0 {
        lambda.abs()
    } else {
        // positive root of eta^2 - omega l2 eta - l2 = 0
        0.5 * (omega * l2 + ((omega * l2) * (omega * l2) + 4.0 * l2).sqrt())
    }
}

/// Index of the mode nearest the resonance relation |lambda^2 (1 + omega
/// eta_n) - eta_n^2|, ties broken toward smaller n.
///
/// The objective is unimodal in eta, so power-law models snap to the
/// closed-form resonant eta and check neighbors; explicit models scan.
pub fn resonant_mode(model: &EigenModel, lambda: f64, omega: f64) -> Result<u64> {
    if omega < 0.0 {
        return Err(Error::NegativeOmega(omega));
    }
    let objective = |eta: f64| (lambda * lambda * (1.0 + omega * eta) - eta * eta).abs();
    match model {
        EigenModel::PowerLaw { .. } => {
            // |h(eta)| with h concave is minimized either at the zero
            // crossing eta* or at the bottom of the spectrum
            let eta_star = resonant_eta(lambda, omega);
            let anchor = model.last_mode_below(eta_star);
            let mut best_n = 0u64;
            let mut best = f64::INFINITY;
            let low = anchor.saturating_sub(2).max(1);
            for n in std::iter::once(1).chain(low..=anchor + 2) {
                let v = objective(model.eigenvalue(n)?);
                if v < best {
                    best = v;
                    best_n = n;
                }
            }
            Ok(best_n)
        }
        EigenModel::Explicit(values) => {
            if values.is_empty() {
                return Err(Error::EmptySearchRange);
            }
            let mut best_n = 1u64;
            let mut best = objective(values[0]);
            for (i, &eta) in values.iter().enumerate().skip(1) {
                let v = objective(eta);
                if v < best {
                    best = v;
                    best_n = i as u64 + 1;
                }
            }
            Ok(best_n)
        }
    }
}
