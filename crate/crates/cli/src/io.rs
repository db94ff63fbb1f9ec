//! The JSON function file and atomic output.

use std::io::Write;
use std::path::Path;

use dyadic_core::dyadic::{Depth, GridFunction2D, HaarSpectrum2D};
use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// `{"depth": [J1, J2], "values": [...]}` with `2^{J1+J2}` finite values in
/// row-major order (s rows, t columns). Haar spectra use the same layout
/// with heap-ordered coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionFile {
    pub depth: [usize; 2],
    pub values: Vec<f64>,
}

impl FunctionFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let file: FunctionFile =
            serde_json::from_str(text).map_err(|e| CliError::Validation(format!("malformed function file: {e}")))?;
        file.depth()?;
        Ok(file)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn depth(&self) -> Result<Depth, CliError> {
        let depth = Depth::new(self.depth[0], self.depth[1])?;
        if self.values.len() != depth.cell_count() {
            return Err(CliError::Validation(format!(
                "depth {:?} needs {} values, found {}",
                self.depth,
                depth.cell_count(),
                self.values.len()
            )));
        }
        if self.values.iter().any(|v| !v.is_finite()) {
            return Err(CliError::Validation("non-finite value".into()));
        }
        Ok(depth)
    }

    pub fn to_grid(&self) -> Result<GridFunction2D, CliError> {
        let depth = self.depth()?;
        Ok(GridFunction2D::new(depth, to_array(depth, &self.values))?)
    }

    pub fn to_spectrum(&self) -> Result<HaarSpectrum2D, CliError> {
        let depth = self.depth()?;
        Ok(HaarSpectrum2D::from_coeffs(depth, to_array(depth, &self.values))?)
    }

    pub fn from_grid(g: &GridFunction2D) -> Self {
        let (s, t) = g.depth().as_tuple();
        Self { depth: [s, t], values: g.values().iter().copied().collect() }
    }

    pub fn from_spectrum(c: &HaarSpectrum2D) -> Self {
        let (s, t) = c.depth().as_tuple();
        Self { depth: [s, t], values: c.coeffs().iter().copied().collect() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("function file serializes") + "\n"
    }
}

fn to_array(depth: Depth, values: &[f64]) -> Array2<f64> {
    Array2::from_shape_vec(depth.shape(), values.to_vec()).expect("length checked")
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    let Some(path) = path else {
        let mut out = std::io::stdout().lock();
        return out.write_all(contents.as_bytes()).map_err(|e| CliError::Io(e.to_string()));
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}
