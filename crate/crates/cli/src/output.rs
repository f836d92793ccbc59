//! CSV emission: `#`-prefixed header comments carrying the tool version,
//! the full effective config, and the seed; then the column row; then data
//! rows with floats in 17-significant-digit scientific notation.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};

pub struct Sink {
    inner: Box<dyn Write>,
}

impl Sink {
    pub fn open(target: &str) -> Result<Self> {
        let inner: Box<dyn Write> = if target == "-" {
            Box::new(BufWriter::new(io::stdout()))
        } else {
            let path = Path::new(target);
            Box::new(BufWriter::new(File::create(path).with_context(|| {
                format!("cannot create output file {}", path.display())
            })?))
        };
        Ok(Sink { inner })
    }

    pub fn comment(&mut self, line: &str) -> Result<()> {
        writeln!(self.inner, "# {line}")?;
        Ok(())
    }

    pub fn row(&mut self, line: &str) -> Result<()> {
        writeln!(self.inner, "{line}")?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<()> {
        self.inner.flush()?;
        Ok(())
    }
}

/// 17 significant digits, scientific.
pub fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

/// Header block shared by every subcommand.
pub fn write_header(sink: &mut Sink, subcommand: &str, config: &[(String, String)]) -> Result<()> {
    sink.comment(&format!(
        "tool = thermoplate v{}",
        env!("CARGO_PKG_VERSION")
    ))?;
    sink.comment(&format!("subcommand = {subcommand}"))?;
    for (key, value) in config {
        sink.comment(&format!("{key} = {value}"))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_fixed_width_scientific() {
        assert_eq!(fmt(16.0), "1.6000000000000000e1");
        assert_eq!(fmt(0.5), "5.0000000000000000e-1");
        let parsed: f64 = fmt(std::f64::consts::PI).parse().unwrap();
        assert_eq!(parsed, std::f64::consts::PI);
    }
}
