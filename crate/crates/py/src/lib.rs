//! Python bindings. Field elements cross the boundary as their canonical
//! integer encodings; reports come back as plain dicts and lists.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use goodpoly::constructions::{self, AdditiveSubgroup, DicksonParams};
use goodpoly::goodness;
use goodpoly::lrc;
use goodpoly::theorems::{self, CountMode, ScanPolicy};
use goodpoly::verify::{self, Suite, VerifyConfig};
use goodpoly::Error;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Guard(msg) => PyRuntimeError::new_err(format!("resource guard exceeded: {msg}")),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// Serializes through JSON so nested reports become native Python objects.
fn to_python<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "Field", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct Field {
    inner: goodpoly::FieldSpec,
}

#[pymethods]
impl Field {
    /// `Field("13")`, `Field("2^6")` or `Field("2^6:0x3")`.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(Field { inner: goodpoly::FieldSpec::parse(spec).map_err(to_py)? })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    #[getter]
    fn m(&self) -> u32 {
        self.inner.m()
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.q()
    }

    #[getter]
    fn modulus(&self) -> Vec<u32> {
        self.inner.modulus().to_vec()
    }

    #[getter]
    fn generator(&self) -> u32 {
        self.inner.generator()
    }

    fn check(&self, a: u64) -> PyResult<u32> {
        self.inner.check(a).map_err(to_py)?;
        Ok(a as u32)
    }

    fn add(&self, a: u64, b: u64) -> PyResult<u32> {
        Ok(self.inner.add(self.check(a)?, self.check(b)?))
    }

    fn sub(&self, a: u64, b: u64) -> PyResult<u32> {
        Ok(self.inner.sub(self.check(a)?, self.check(b)?))
    }

    fn mul(&self, a: u64, b: u64) -> PyResult<u32> {
        Ok(self.inner.mul(self.check(a)?, self.check(b)?))
    }

    fn inv(&self, a: u64) -> PyResult<u32> {
        self.inner.inv(self.check(a)?).ok_or_else(|| to_py(Error::DivisionByZero))
    }

    fn pow(&self, a: u64, e: u64) -> PyResult<u32> {
        Ok(self.inner.pow(self.check(a)?, e))
    }

    fn quadratic_character(&self, a: u64) -> PyResult<i8> {
        self.inner.quadratic_character(self.check(a)?).map_err(to_py)
    }

    fn trace(&self, a: u64) -> PyResult<u32> {
        Ok(self.inner.absolute_trace(self.check(a)?))
    }

    fn __repr__(&self) -> String {
        format!("Field('{}')", self.inner)
    }
}

#[derive(FromPyObject)]
enum PolyInput {
    Text(String),
    Coeffs(Vec<u32>),
}

#[pyclass(name = "Poly", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct Poly {
    inner: goodpoly::Poly,
}

impl Poly {
    fn wrap(inner: goodpoly::Poly) -> Self {
        Poly { inner }
    }

    fn same_field(&self, other: &Poly) -> PyResult<()> {
        if self.inner.field().same_field(other.inner.field()) {
            Ok(())
        } else {
            Err(to_py(Error::FieldMismatch))
        }
    }
}

#[pymethods]
impl Poly {
    /// `Poly(field, [0, 0, 0, 1])` (constant first) or `Poly(field, "(T^4-T)^3")`.
    #[new]
    fn new(field: &Field, coeffs: PolyInput) -> PyResult<Self> {
        let inner = match coeffs {
            PolyInput::Text(s) => goodpoly::Poly::parse(&field.inner, &s),
            PolyInput::Coeffs(c) => goodpoly::Poly::new(&field.inner, c),
        };
        Ok(Poly::wrap(inner.map_err(to_py)?))
    }

    #[getter]
    fn coeffs(&self) -> Vec<u32> {
        self.inner.coeffs().to_vec()
    }

    #[getter]
    fn degree(&self) -> i64 {
        self.inner.deg()
    }

    #[getter]
    fn field(&self) -> Field {
        Field { inner: self.inner.field().clone() }
    }

    fn __call__(&self, x: u64) -> PyResult<u32> {
        self.inner.field().check(x).map_err(to_py)?;
        Ok(self.inner.eval(x as u32))
    }

    fn __add__(&self, other: &Poly) -> PyResult<Poly> {
        self.same_field(other)?;
        Ok(Poly::wrap(self.inner.add(&other.inner)))
    }

    fn __sub__(&self, other: &Poly) -> PyResult<Poly> {
        self.same_field(other)?;
        Ok(Poly::wrap(self.inner.sub(&other.inner)))
    }

    fn __mul__(&self, other: &Poly) -> PyResult<Poly> {
        self.same_field(other)?;
        Ok(Poly::wrap(self.inner.mul(&other.inner)))
    }

    fn __pow__(&self, e: u64, _modulo: Option<Py<PyAny>>) -> Poly {
        Poly::wrap(self.inner.pow(e))
    }

    /// List of (monic factor coefficients, multiplicity); the unit is dropped.
    #[pyo3(signature = (seed=0))]
    fn factor(&self, seed: u64) -> PyResult<Vec<(Vec<u32>, u32)>> {
        let f = self.inner.factor(seed).map_err(to_py)?;
        Ok(f.factors.into_iter().map(|(p, e)| (p.coeffs().to_vec(), e)).collect())
    }

    /// List of (root, multiplicity).
    #[pyo3(signature = (seed=0))]
    fn roots(&self, seed: u64) -> PyResult<Vec<(u32, u32)>> {
        self.inner.roots(seed).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Poly({}, [{}])", self.inner.field(), self.inner.to_text())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

#[pyfunction]
fn gamma(f: &Poly) -> PyResult<u64> {
    goodness::gamma(&f.inner).map_err(to_py)
}

#[pyfunction]
fn gamma_oracle(f: &Poly) -> PyResult<u64> {
    goodness::gamma_oracle(&f.inner).map_err(to_py)
}

/// Full-size fibers as a list of (value, members).
#[pyfunction]
fn fibers(f: &Poly) -> PyResult<Vec<(u32, Vec<u32>)>> {
    Ok(goodness::fibers(&f.inner).map_err(to_py)?.into_iter().map(|x| (x.c, x.members)).collect())
}

#[pyfunction]
#[pyo3(signature = (f, slack=goodness::DEFAULT_SLACK))]
fn report<'py>(py: Python<'py>, f: &Poly, slack: f64) -> PyResult<Bound<'py, PyAny>> {
    to_python(py, &goodness::report(&f.inner, slack).map_err(to_py)?)
}

#[pyfunction]
#[pyo3(signature = (f, slack=goodness::DEFAULT_SLACK))]
fn infer_group_order<'py>(py: Python<'py>, f: &Poly, slack: f64) -> PyResult<Bound<'py, PyAny>> {
    to_python(py, &goodness::infer_group_order(&f.inner, slack).map_err(to_py)?)
}

fn params(field: &Field, n: u32, a: u64) -> PyResult<DicksonParams> {
    DicksonParams::new(n, field.inner.element(a).map_err(to_py)?).map_err(to_py)
}

/// D_n(T, a).
#[pyfunction]
fn dickson(field: &Field, n: u32, a: u64) -> PyResult<Poly> {
    Ok(Poly::wrap(constructions::dickson(&params(field, n, a)?)))
}

/// D_n(T, a) - D_n(0, a).
#[pyfunction]
fn dickson_shifted(field: &Field, n: u32, a: u64) -> PyResult<Poly> {
    Ok(Poly::wrap(constructions::dickson_shifted(&params(field, n, a)?)))
}

#[pyfunction]
fn annihilator(field: &Field, basis: Vec<u32>) -> PyResult<Poly> {
    let b = AdditiveSubgroup::span(&field.inner, &basis).map_err(to_py)?;
    Ok(Poly::wrap(constructions::annihilator(&b)))
}

/// (h(T) + h(alpha))^k - h(alpha)^k for the subgroup spanned by `basis`.
#[pyfunction]
#[pyo3(signature = (field, k, basis, alpha=0))]
fn prop1(field: &Field, k: u64, basis: Vec<u32>, alpha: u64) -> PyResult<Poly> {
    let b = AdditiveSubgroup::span(&field.inner, &basis).map_err(to_py)?;
    let alpha = field.inner.element(alpha).map_err(to_py)?;
    Ok(Poly::wrap(constructions::prop1_polynomial(k, &b, &alpha).map_err(to_py)?))
}

#[pyfunction]
fn linearized_power(field: &Field, k: u64, basis: Vec<u32>) -> PyResult<Poly> {
    let b = AdditiveSubgroup::span(&field.inner, &basis).map_err(to_py)?;
    Ok(Poly::wrap(constructions::linearized_power(k, &b).map_err(to_py)?))
}

#[pyfunction]
fn linearized_bounds<'py>(py: Python<'py>, field: &Field, k: u64, basis: Vec<u32>) -> PyResult<Bound<'py, PyAny>> {
    let b = AdditiveSubgroup::span(&field.inner, &basis).map_err(to_py)?;
    to_python(py, &theorems::linearized_bounds(k, &b).map_err(to_py)?)
}

#[pyfunction]
fn dickson_gamma_closed_form(q: u64, n: u64, eta: i8) -> PyResult<u64> {
    theorems::dickson_gamma_closed_form(q, n, eta).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (field, c, brute=false))]
fn square_shift_count(field: &Field, c: u32, brute: bool) -> PyResult<u64> {
    let mode = if brute { CountMode::Brute } else { CountMode::ClosedForm };
    theorems::square_shift_count(&field.inner, c, mode).map_err(to_py)
}

/// Lower bound on [M : F_q(x)] from factor degrees and multiplicities.
#[pyfunction]
#[pyo3(signature = (f, seed=0, values=None))]
fn galois_index_lower_bound<'py>(
    py: Python<'py>,
    f: &Poly,
    seed: u64,
    values: Option<Vec<u32>>,
) -> PyResult<Bound<'py, PyAny>> {
    let scan = values.map_or(ScanPolicy::Auto, ScanPolicy::Values);
    to_python(py, &theorems::galois_index_lower_bound(&f.inner, seed, &scan).map_err(to_py)?)
}

/// Runs a verification suite and returns its records.
#[pyfunction]
#[pyo3(signature = (suite, qmax=None, seed=0))]
fn run_suite<'py>(py: Python<'py>, suite: &str, qmax: Option<u32>, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let suite: Suite = suite.parse().map_err(to_py)?;
    let config = VerifyConfig { qmax: qmax.unwrap_or(suite.default_qmax()), seed };
    let records = py.detach(|| verify::run(suite, &config)).map_err(to_py)?;
    to_python(py, &records)
}

#[pyclass(name = "LrcCode", frozen)]
struct LrcCode {
    inner: lrc::LrcCode,
}

#[pymethods]
impl LrcCode {
    #[new]
    #[pyo3(signature = (f, k, groups=None))]
    fn new(f: &Poly, k: usize, groups: Option<usize>) -> PyResult<Self> {
        Ok(LrcCode { inner: lrc::LrcCode::build(&f.inner, k, groups).map_err(to_py)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.length()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.dimension()
    }

    #[getter]
    fn r(&self) -> usize {
        self.inner.locality()
    }

    #[getter]
    fn designed_distance(&self) -> usize {
        self.inner.singleton_bound()
    }

    #[getter]
    fn points(&self) -> Vec<u32> {
        self.inner.points().to_vec()
    }

    #[getter]
    fn groups(&self) -> Vec<(u32, Vec<u32>)> {
        self.inner.groups().iter().map(|g| (g.c, g.members.clone())).collect()
    }

    fn encode(&self, message: Vec<u32>) -> PyResult<Vec<u32>> {
        self.inner.encode(&message).map_err(to_py)
    }

    /// Repairs the first `None`; returns (position, value, symbols read).
    fn local_repair(&self, word: Vec<Option<u32>>) -> PyResult<(usize, u32, usize)> {
        let r = self.inner.local_repair(&word).map_err(to_py)?;
        Ok((r.position, r.value, r.reads))
    }

    fn decode(&self, word: Vec<Option<u32>>) -> PyResult<Vec<u32>> {
        self.inner.erasure_decode(&word).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn min_distance(&self, py: Python<'_>) -> PyResult<usize> {
        py.detach(|| self.inner.min_distance_bruteforce()).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("LrcCode(n={}, k={}, r={})", self.n(), self.k(), self.r())
    }
}

#[pymodule]
fn goodpoly_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_class::<Poly>()?;
    m.add_class::<LrcCode>()?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(fibers, m)?)?;
    m.add_function(wrap_pyfunction!(report, m)?)?;
    m.add_function(wrap_pyfunction!(infer_group_order, m)?)?;
    m.add_function(wrap_pyfunction!(dickson, m)?)?;
    m.add_function(wrap_pyfunction!(dickson_shifted, m)?)?;
    m.add_function(wrap_pyfunction!(annihilator, m)?)?;
    m.add_function(wrap_pyfunction!(prop1, m)?)?;
    m.add_function(wrap_pyfunction!(linearized_power, m)?)?;
    m.add_function(wrap_pyfunction!(linearized_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(dickson_gamma_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(square_shift_count, m)?)?;
    m.add_function(wrap_pyfunction!(galois_index_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
