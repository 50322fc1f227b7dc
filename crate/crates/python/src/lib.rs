//! Python bindings: tilings, the scaling pipelines, the oracles and SVG
//! rendering. Rationals cross the boundary as `fractions.Fraction` and
//! integers as Python `int`.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use tilescale::diophantine;
use tilescale::generators;
use tilescale::integerize::{self, ScalingCertificate};
use tilescale::json::{parse_tiling, tiling_to_string};
use tilescale::oracle::{self, QuiltOutcome};
use tilescale::svg::render_svg;
use tilescale::{Error, Rat};

create_exception!(tilescale_py, TilescaleError, PyException);
create_exception!(tilescale_py, TheoremViolation, TilescaleError);
create_exception!(tilescale_py, NodeLimitExceeded, TilescaleError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Parse(_) => PyValueError::new_err(e.to_string()),
        Error::TheoremViolation(_) => TheoremViolation::new_err(e.to_string()),
        Error::NodeLimit(_) => NodeLimitExceeded::new_err(e.to_string()),
        _ => TilescaleError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, x: &Rat) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((x.numer().clone(), x.denom().clone()))
}

/// Accepts `int`, `Fraction` or a `"num/den"` string.
fn rat_from(obj: &Bound<'_, PyAny>) -> PyResult<Rat> {
    obj.str()?.to_str()?.parse().map_err(to_py)
}

#[pyclass(name = "Tiling", module = "tilescale_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyTiling {
    inner: tilescale::tiling::Tiling,
}

#[pymethods]
impl PyTiling {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyTiling> {
        Ok(PyTiling {
            inner: parse_tiling(text).map_err(to_py)?,
        })
    }

    fn to_json(&self) -> String {
        tiling_to_string(&self.inner)
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Tiling(kind={:?}, tiles={})",
            self.inner.kind(),
            self.inner.len()
        )
    }

    fn __eq__(&self, other: &Bound<'_, PyTiling>) -> bool {
        self.inner == other.get().inner
    }

    fn is_valid(&self) -> bool {
        self.inner.validate().is_valid()
    }

    /// The full validation report as a JSON string.
    fn validation_report(&self) -> String {
        serde_json::to_string(&self.inner.validate()).expect("serializable report")
    }

    fn side_lengths<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        self.inner
            .side_lengths()
            .iter()
            .map(|sides| sides.iter().map(|s| fraction(py, s)).collect())
            .collect()
    }

    /// Multiplies every coordinate by `factor`.
    fn scaled(&self, factor: &Bound<'_, PyAny>) -> PyResult<PyTiling> {
        let f = rat_from(factor)?;
        let dim = match &self.inner {
            tilescale::tiling::Tiling::Cuboid(c) => c.dim(),
            _ => 2,
        };
        Ok(PyTiling {
            inner: self
                .inner
                .scale_translate(&f, &vec![Rat::zero(); dim])
                .map_err(to_py)?,
        })
    }

    /// Runs the scaling pipeline matching the tiling's kind.
    fn integerize(&self) -> PyResult<Certificate> {
        let (pipeline, cert) = integerize::integerize(&self.inner).map_err(to_py)?;
        Ok(Certificate { pipeline, cert })
    }

    fn minimal_scale<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(
            py,
            &oracle::minimal_scale_oracle(&self.inner).map_err(to_py)?,
        )
    }

    fn normalized_minimal_scale<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(
            py,
            &oracle::normalized_scale_oracle(&self.inner).map_err(to_py)?,
        )
    }

    fn render_svg(&self) -> PyResult<String> {
        render_svg(&self.inner).map_err(to_py)
    }
}

#[pyclass(name = "Certificate", module = "tilescale_py", frozen)]
pub struct Certificate {
    pipeline: &'static str,
    cert: ScalingCertificate,
}

#[pymethods]
impl Certificate {
    #[getter]
    fn pipeline(&self) -> &'static str {
        self.pipeline
    }

    #[getter]
    fn q(&self) -> BigInt {
        self.cert.q.clone()
    }

    #[getter]
    fn bound(&self) -> String {
        self.cert.bound.to_string()
    }

    #[getter]
    fn input_scale<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.cert.input_scale)
    }

    #[getter]
    fn sides(&self) -> Vec<Vec<BigInt>> {
        self.cert.sides.clone()
    }

    #[getter]
    fn tiling(&self) -> PyTiling {
        PyTiling {
            inner: self.cert.tiling.clone(),
        }
    }

    fn to_json(&self) -> String {
        let mut v = serde_json::to_value(&self.cert).expect("serializable certificate");
        v["pipeline"] = self.pipeline.into();
        serde_json::to_string_pretty(&v).expect("serializable certificate")
    }

    fn __repr__(&self) -> String {
        format!(
            "Certificate(pipeline={:?}, q={}, bound={})",
            self.pipeline, self.cert.q, self.cert.bound
        )
    }
}

fn wrap(t: impl Into<tilescale::tiling::Tiling>) -> PyTiling {
    PyTiling { inner: t.into() }
}

#[pyfunction]
fn fibonacci_tiling(n: usize) -> PyResult<PyTiling> {
    Ok(wrap(generators::fibonacci_tiling(n).map_err(to_py)?))
}

#[pyfunction]
fn dyadic_square_tiling(k: usize) -> PyResult<PyTiling> {
    Ok(wrap(generators::dyadic_square_tiling(k).map_err(to_py)?))
}

#[pyfunction]
fn dyadic_cube_tiling(d: usize, k: usize) -> PyResult<PyTiling> {
    Ok(wrap(generators::dyadic_cube_tiling(d, k).map_err(to_py)?))
}

#[pyfunction]
fn dyadic_triangle_tiling(k: usize) -> PyResult<PyTiling> {
    Ok(wrap(generators::dyadic_triangle_tiling(k).map_err(to_py)?))
}

#[pyfunction]
fn dehn_sharpness_tiling() -> PyTiling {
    wrap(generators::dehn_sharpness_tiling())
}

/// Least `q ≥ 1` with `‖q·a‖ < 1/n` for every value `a`.
#[pyfunction]
fn dirichlet(values: Vec<Bound<'_, PyAny>>, n: u64) -> PyResult<BigInt> {
    let values = values.iter().map(rat_from).collect::<PyResult<Vec<_>>>()?;
    Ok(diophantine::dirichlet(&values, n).map_err(to_py)?.q)
}

type Quilt = (usize, Vec<(u64, u64, u64)>);

/// Fewest integer squares tiling `width × height`, with the squares as
/// `(x, y, side)`; `None` when more than `max_tiles` are needed.
#[pyfunction]
#[pyo3(signature = (width, height, max_tiles = 32))]
fn min_squares(width: u64, height: u64, max_tiles: usize) -> PyResult<Option<Quilt>> {
    let out = oracle::min_squares_exhaustive(width, height, max_tiles).map_err(to_py)?;
    Ok(match out {
        QuiltOutcome::Minimum { count, squares, .. } => {
            Some((count, squares.iter().map(|s| (s.x, s.y, s.side)).collect()))
        }
        QuiltOutcome::ExceedsMaxTiles { .. } => None,
    })
}

#[pymodule]
pub fn tilescale_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyTiling>()?;
    m.add_class::<Certificate>()?;
    m.add("TilescaleError", py.get_type::<TilescaleError>())?;
    m.add("TheoremViolation", py.get_type::<TheoremViolation>())?;
    m.add("NodeLimitExceeded", py.get_type::<NodeLimitExceeded>())?;
    m.add_function(wrap_pyfunction!(fibonacci_tiling, m)?)?;
    m.add_function(wrap_pyfunction!(dyadic_square_tiling, m)?)?;
    m.add_function(wrap_pyfunction!(dyadic_cube_tiling, m)?)?;
    m.add_function(wrap_pyfunction!(dyadic_triangle_tiling, m)?)?;
    m.add_function(wrap_pyfunction!(dehn_sharpness_tiling, m)?)?;
    m.add_function(wrap_pyfunction!(dirichlet, m)?)?;
    m.add_function(wrap_pyfunction!(min_squares, m)?)?;
    Ok(())
}
