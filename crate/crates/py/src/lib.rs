//! Python module `dyadic_bmo`.
//!
//! Grids and spectra cross the boundary as lists of rows: row `i` holds the
//! `t` cells (or heap-ordered `t` coefficients) above the `i`-th `s` cell.
//! Norm functions act on the mean-zero part of their argument in each
//! variable, like the command line.

use dyadic_core::dyadic::{
    haar_forward_2d, haar_inverse_2d, Depth, DyadicInterval, DyadicRect, GenerationIndex, GridFunction2D,
    HaarSpectrum2D,
};
use dyadic_core::hilbert::{analytic_hilbert_step, mc_hilbert, McConfig, StepFunction1D};
use dyadic_core::norms;
use dyadic_core::paraproduct::{sigma_k as core_sigma_k, Signature};
use dyadic_core::shifts::iterated_commutator_apply;
use ndarray::Array2;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: dyadic_core::Error) -> PyErr {
    match e {
        dyadic_core::Error::NonConvergence { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn log2_exact(n: usize) -> Option<usize> {
    n.is_power_of_two().then(|| n.trailing_zeros() as usize)
}

fn array_from_rows(rows: &[Vec<f64>]) -> PyResult<(Depth, Array2<f64>)> {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != m) {
        return Err(PyValueError::new_err("rows have different lengths"));
    }
    let (Some(s), Some(t)) = (log2_exact(n), log2_exact(m)) else {
        return Err(PyValueError::new_err(format!("shape ({n}, {m}) is not a pair of powers of two")));
    };
    let depth = Depth::new(s, t).map_err(py_err)?;
    let flat: Vec<f64> = rows.iter().flatten().copied().collect();
    let array = Array2::from_shape_vec((n, m), flat).expect("shape checked");
    Ok((depth, array))
}

fn rows_of(a: &Array2<f64>) -> Vec<Vec<f64>> {
    a.rows().into_iter().map(|r| r.to_vec()).collect()
}

/// Function on `[0,1)²`, constant on the cells of a dyadic grid.
#[pyclass(name = "GridFunction", frozen)]
struct PyGrid(GridFunction2D);

#[pymethods]
impl PyGrid {
    #[new]
    fn new(values: Vec<Vec<f64>>) -> PyResult<Self> {
        let (depth, a) = array_from_rows(&values)?;
        GridFunction2D::new(depth, a).map(Self).map_err(py_err)
    }

    #[getter]
    fn depth(&self) -> (usize, usize) {
        self.0.depth().as_tuple()
    }

    fn values(&self) -> Vec<Vec<f64>> {
        rows_of(self.0.values())
    }

    /// Haar spectrum of this function.
    fn haar(&self) -> PyHaar {
        PyHaar(haar_forward_2d(&self.0))
    }

    fn __repr__(&self) -> String {
        format!("GridFunction(depth={:?})", self.depth())
    }
}

/// Heap-ordered product Haar coefficients: slot 0 is the constant, slot
/// `2^l + k` the Haar function of `[k 2^-l, (k+1) 2^-l)`.
#[pyclass(name = "HaarSpectrum", frozen)]
struct PyHaar(HaarSpectrum2D);

#[pymethods]
impl PyHaar {
    #[new]
    fn new(coeffs: Vec<Vec<f64>>) -> PyResult<Self> {
        let (depth, a) = array_from_rows(&coeffs)?;
        HaarSpectrum2D::from_coeffs(depth, a).map(Self).map_err(py_err)
    }

    /// Single Haar function `h_I ⊗ h_J` with `I = (level_s, index_s)`,
    /// `J = (level_t, index_t)`.
    #[staticmethod]
    fn atom(depth: (usize, usize), s: (usize, usize), t: (usize, usize)) -> PyResult<Self> {
        let depth = Depth::new(depth.0, depth.1).map_err(py_err)?;
        let i = DyadicInterval::new(s.0, s.1).map_err(py_err)?;
        let j = DyadicInterval::new(t.0, t.1).map_err(py_err)?;
        HaarSpectrum2D::haar_atom(depth, DyadicRect::new(i, j)).map(Self).map_err(py_err)
    }

    #[getter]
    fn depth(&self) -> (usize, usize) {
        self.0.depth().as_tuple()
    }

    fn coeffs(&self) -> Vec<Vec<f64>> {
        rows_of(self.0.coeffs())
    }

    fn inverse(&self) -> PyGrid {
        PyGrid(haar_inverse_2d(&self.0))
    }

    /// Coefficients of `h_I ⊗ h_J` only.
    fn hh_part(&self) -> Self {
        Self(self.0.hh_part())
    }

    fn norm_sq(&self) -> f64 {
        self.0.norm_sq()
    }

    fn __repr__(&self) -> String {
        format!("HaarSpectrum(depth={:?})", self.depth())
    }
}

fn mean_zero(f: &PyGrid) -> HaarSpectrum2D {
    haar_forward_2d(&f.0).hh_part()
}

/// Squared product BMO norm and an attaining union of cells `[(s, t), ...]`.
#[pyfunction]
fn bmo_d_norm_sq(py: Python<'_>, f: &PyGrid) -> PyResult<(f64, Vec<(usize, usize)>)> {
    let phi = mean_zero(f);
    let sol = py.detach(|| norms::bmo_d_norm_sq(&phi, None)).map_err(py_err)?;
    Ok((sol.norm_sq, sol.omega.cell_list()))
}

/// Squared BMO norm over dyadic rectangles only.
#[pyfunction]
fn bmo_rect_norm_sq(f: &PyGrid) -> f64 {
    norms::bmo_rect_norm_sq(&mean_zero(f))
}

#[pyfunction]
fn lmo_d_norm(py: Python<'_>, f: &PyGrid) -> PyResult<f64> {
    let phi = mean_zero(f);
    py.detach(|| norms::lmo_d_norm(&phi)).map_err(py_err)
}

#[pyfunction]
fn lmo_char_norm(py: Python<'_>, f: &PyGrid) -> PyResult<f64> {
    let phi = mean_zero(f);
    py.detach(|| norms::lmo_char_norm(&phi)).map_err(py_err)
}

#[pyfunction]
fn lmo_directional_norm(f: &PyGrid, axis: u8) -> PyResult<f64> {
    norms::lmo_directional_norm(&mean_zero(f), axis).map_err(py_err)
}

#[pyfunction]
fn lmo_beta_char_norm(f: &PyGrid, beta: (u8, u8)) -> PyResult<f64> {
    if beta.0 > 1 || beta.1 > 1 {
        return Err(PyValueError::new_err("beta entries must be 0 or 1"));
    }
    norms::lmo_beta_char_norm(&mean_zero(f), [beta.0, beta.1]).map_err(py_err)
}

/// `Π^β_φ f`; `beta = (0, 0)` is `Π`, `(1, 1)` is `Δ`.
#[pyfunction]
#[pyo3(signature = (phi, f, beta = (0, 0)))]
fn paraproduct(phi: &PyGrid, f: &PyGrid, beta: (u8, u8)) -> PyResult<PyGrid> {
    if beta.0 > 1 || beta.1 > 1 {
        return Err(PyValueError::new_err("beta entries must be 0 or 1"));
    }
    let sig = Signature::from_beta([beta.0, beta.1]);
    dyadic_core::paraproduct::paraproduct(sig, &haar_forward_2d(&phi.0), &f.0).map(PyGrid).map_err(py_err)
}

/// `σ_k` of the mean-zero part of `b`, returned as a grid function.
#[pyfunction]
fn sigma_k(b: &PyGrid, k: (usize, usize)) -> PyResult<PyGrid> {
    let out = core_sigma_k(&mean_zero(b), GenerationIndex::new(k.0, k.1)).map_err(py_err)?;
    Ok(PyGrid(haar_inverse_2d(&out)))
}

/// `[S⁽¹⁾,[S⁽²⁾,M_φ]]b`, at two levels finer than the inputs.
#[pyfunction]
fn iterated_commutator(phi: &PyGrid, b: &PyGrid) -> PyResult<PyGrid> {
    iterated_commutator_apply(&phi.0, &b.0).map(PyGrid).map_err(py_err)
}

fn step(breakpoints: Vec<f64>, values: Vec<f64>) -> PyResult<StepFunction1D> {
    StepFunction1D::new(breakpoints, values).map_err(py_err)
}

/// Closed-form Hilbert transform of a step function at each `x`.
#[pyfunction]
fn hilbert_oracle(breakpoints: Vec<f64>, values: Vec<f64>, xs: Vec<f64>) -> PyResult<Vec<f64>> {
    let f = step(breakpoints, values)?;
    xs.iter().map(|&x| analytic_hilbert_step(&f, x).map_err(py_err)).collect()
}

/// Averaged-shift estimate of the Hilbert transform: `[(estimate, stderr), ...]`.
#[pyfunction]
#[pyo3(signature = (breakpoints, values, xs, samples, seed))]
fn hilbert_mc(
    py: Python<'_>,
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    xs: Vec<f64>,
    samples: usize,
    seed: u64,
) -> PyResult<Vec<(f64, f64)>> {
    let f = step(breakpoints, values)?;
    let cfg = McConfig::new(samples, seed);
    let est = py.detach(|| mc_hilbert(&f, &xs, &cfg)).map_err(py_err)?;
    Ok(est.into_iter().map(|e| (e.estimate, e.stderr)).collect())
}

#[pymodule]
fn dyadic_bmo(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGrid>()?;
    m.add_class::<PyHaar>()?;
    m.add_function(wrap_pyfunction!(bmo_d_norm_sq, m)?)?;
    m.add_function(wrap_pyfunction!(bmo_rect_norm_sq, m)?)?;
    m.add_function(wrap_pyfunction!(lmo_d_norm, m)?)?;
    m.add_function(wrap_pyfunction!(lmo_char_norm, m)?)?;
    m.add_function(wrap_pyfunction!(lmo_directional_norm, m)?)?;
    m.add_function(wrap_pyfunction!(lmo_beta_char_norm, m)?)?;
    m.add_function(wrap_pyfunction!(paraproduct, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_k, m)?)?;
    m.add_function(wrap_pyfunction!(iterated_commutator, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_mc, m)?)?;
    Ok(())
}
