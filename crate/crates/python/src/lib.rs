//! Python bindings: `import hodge`.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use hodge_core::arith::rational::fmt_rational;
use hodge_core::certificates::triviality_certificate;
use hodge_core::ideal::IdealPresentation;
use hodge_core::parser::{parse_divisor, parse_polynomial, parse_rational, parse_resolution_data, ParseError};
use hodge_core::recursion::{CertificateSource, GenerationCertificate};
use hodge_core::verifier::{run_suites, DEFAULT_SEED, SUITES};
use hodge_core::{
    compute_chain, compute_hodge_ideal, ComputeOptions, HodgeError, HodgeIdealResult, MethodSelector,
    MonomialOrder, QDivisor, Ring,
};

create_exception!(hodge, MethodUnavailable, PyException);

fn err(e: HodgeError) -> PyErr {
    match e {
        HodgeError::MethodUnavailable(_) | HodgeError::NoClosedForm(_) => MethodUnavailable::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn parse_err(e: ParseError) -> PyErr {
    PyValueError::new_err(format!("{} at bytes {}..{}", e.message, e.span.start, e.span.end))
}

#[pyclass(name = "Polynomial", module = "hodge", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPolynomial {
    inner: hodge_core::Polynomial,
}

#[pymethods]
impl PyPolynomial {
    #[new]
    fn new(text: &str, vars: Vec<String>) -> PyResult<Self> {
        let ring = Ring::new(&vars).map_err(err)?;
        Ok(PyPolynomial { inner: parse_polynomial(text, &ring).map_err(parse_err)? })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}')", self.inner)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyPolynomial { inner: self.inner.checked_add(&other.inner).map_err(err)? })
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyPolynomial { inner: self.inner.checked_sub(&other.inner).map_err(err)? })
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyPolynomial { inner: self.inner.checked_mul(&other.inner).map_err(err)? })
    }

    fn derivative(&self, var: &str) -> PyResult<Self> {
        let i = self
            .inner
            .ring()
            .index_of(var)
            .ok_or_else(|| PyValueError::new_err(format!("unknown variable `{var}`")))?;
        Ok(PyPolynomial { inner: self.inner.partial_derivative(i).map_err(err)? })
    }

    #[getter]
    fn degree(&self) -> Option<u32> {
        self.inner.degree()
    }

    #[getter]
    fn order_at_origin(&self) -> Option<u32> {
        self.inner.order_at_origin()
    }
}

#[pyclass(name = "Ideal", module = "hodge", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyIdeal {
    inner: IdealPresentation,
}

#[pymethods]
impl PyIdeal {
    #[new]
    fn new(generators: Vec<String>, vars: Vec<String>) -> PyResult<Self> {
        let ring = Ring::new(&vars).map_err(err)?;
        let gens = generators
            .iter()
            .map(|g| parse_polynomial(g, &ring).map_err(parse_err))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyIdeal { inner: IdealPresentation::new(&ring, gens).map_err(err)? })
    }

    /// Reduced Gröbner basis in the given order, as strings.
    #[pyo3(signature = (order = "grevlex"))]
    fn generators(&self, order: &str) -> PyResult<Vec<String>> {
        let order: MonomialOrder = order.parse().map_err(PyValueError::new_err)?;
        Ok(self.inner.groebner_with(order).basis().iter().map(|g| g.to_string_with(order)).collect())
    }

    fn contains(&self, poly: &str) -> PyResult<bool> {
        let p = parse_polynomial(poly, self.inner.ring()).map_err(parse_err)?;
        self.inner.contains_poly(&p).map_err(err)
    }

    fn contains_ideal(&self, other: &Self) -> PyResult<bool> {
        self.inner.contains_ideal(&other.inner).map_err(err)
    }

    fn __eq__(&self, other: &Self) -> PyResult<bool> {
        self.inner.equals(&other.inner).map_err(err)
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyIdeal { inner: self.inner.sum(&other.inner).map_err(err)? })
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyIdeal { inner: self.inner.product(&other.inner).map_err(err)? })
    }

    fn power(&self, e: u32) -> Self {
        PyIdeal { inner: self.inner.power(e) }
    }

    #[getter]
    fn is_unit(&self) -> bool {
        self.inner.is_unit()
    }

    #[getter]
    fn order_at_origin(&self) -> Option<u32> {
        self.inner.order_at_origin()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }
}

#[pyclass(name = "Divisor", module = "hodge", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDivisor {
    inner: QDivisor,
}

#[pymethods]
impl PyDivisor {
    /// `Divisor(["x", "y"], [("x^2+y^3", "9/10")])`.
    #[new]
    fn new(vars: Vec<String>, components: Vec<(String, String)>) -> PyResult<Self> {
        let ring = Ring::new(&vars).map_err(err)?;
        let comps = components
            .iter()
            .map(|(f, a)| Ok((parse_polynomial(f, &ring).map_err(parse_err)?, parse_rational(a).map_err(parse_err)?)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyDivisor { inner: QDivisor::new(&ring, comps).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyDivisor { inner: parse_divisor(text).map_err(parse_err)? })
    }

    #[getter]
    fn vars(&self) -> Vec<String> {
        self.inner.ring().vars().to_vec()
    }

    #[getter]
    fn components(&self) -> Vec<(String, String)> {
        self.inner.components().iter().map(|c| (c.f.to_string(), fmt_rational(&c.alpha))).collect()
    }

    #[getter]
    fn support(&self) -> String {
        self.inner.support().g.to_string()
    }

    /// `(B, twist)` with coefficients of `B` in `(0, 1]`.
    fn periodic_reduce(&self) -> PyResult<(Self, String)> {
        let (b, t) = self.inner.periodic_reduce().map_err(err)?;
        Ok((PyDivisor { inner: b }, t.to_string()))
    }

    fn validate(&self) -> Vec<String> {
        self.inner.validate()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Divisor('{}')", self.inner)
    }
}

#[pyclass(name = "HodgeIdeal", module = "hodge", frozen, skip_from_py_object)]
struct PyHodgeIdeal {
    inner: HodgeIdealResult,
}

#[pymethods]
impl PyHodgeIdeal {
    #[getter]
    fn k(&self) -> i64 {
        self.inner.k
    }

    #[getter]
    fn exact(&self) -> bool {
        self.inner.exact
    }

    #[getter]
    fn primed(&self) -> bool {
        self.inner.primed
    }

    #[getter]
    fn method(&self) -> &'static str {
        self.inner.method.name()
    }

    #[getter]
    fn notes(&self) -> Vec<String> {
        self.inner.notes.clone()
    }

    #[getter]
    fn ideal(&self) -> PyIdeal {
        PyIdeal { inner: self.inner.ideal.clone() }
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.ideal.groebner().basis().iter().map(|g| g.to_string()).collect()
    }

    fn __repr__(&self) -> String {
        format!("I_{} = {} ({}, exact={})", self.inner.k, self.inner.ideal, self.inner.method.name(), self.inner.exact)
    }
}

fn options(d: &QDivisor, i0: Option<Vec<String>>, level: Option<u32>) -> PyResult<ComputeOptions> {
    let seed = match i0 {
        None => None,
        Some(gens) => {
            let polys = gens
                .iter()
                .map(|g| parse_polynomial(g, d.ring()).map_err(parse_err))
                .collect::<PyResult<Vec<_>>>()?;
            Some(IdealPresentation::new(d.ring(), polys).map_err(err)?)
        }
    };
    let certificate = match level {
        None => None,
        Some(l) => Some(GenerationCertificate::new(l, CertificateSource::UserAsserted, d.n()).map_err(err)?),
    };
    Ok(ComputeOptions { certificate, seed })
}

/// `I_k(D)`. `i0` is an exact `I_0` of the reduced divisor; `level` a generation level.
#[pyfunction]
#[pyo3(signature = (divisor, k, method = "auto", i0 = None, level = None))]
fn compute(divisor: &PyDivisor, k: i64, method: &str, i0: Option<Vec<String>>, level: Option<u32>) -> PyResult<PyHodgeIdeal> {
    let method: MethodSelector = method.parse().map_err(PyValueError::new_err)?;
    let opts = options(&divisor.inner, i0, level)?;
    Ok(PyHodgeIdeal { inner: compute_hodge_ideal(&divisor.inner, k, method, &opts).map_err(err)? })
}

/// `[I_0, ..., I_{k_max}]` by recursion.
#[pyfunction]
#[pyo3(signature = (divisor, k_max, i0 = None, level = None))]
fn chain(divisor: &PyDivisor, k_max: i64, i0: Option<Vec<String>>, level: Option<u32>) -> PyResult<Vec<PyHodgeIdeal>> {
    let opts = options(&divisor.inner, i0, level)?;
    let c = compute_chain(&divisor.inner, k_max, &opts).map_err(err)?;
    Ok(c.results.into_iter().map(|r| PyHodgeIdeal { inner: r }).collect())
}

/// `(status, lines)` of the triviality criterion for resolution data given as JSON.
#[pyfunction]
fn certify_triviality(resolution_json: &str, alphas: Vec<String>, k: i64) -> PyResult<(String, Vec<String>)> {
    let res = parse_resolution_data(resolution_json).map_err(parse_err)?;
    let alphas = alphas.iter().map(|a| parse_rational(a).map_err(parse_err)).collect::<PyResult<Vec<_>>>()?;
    let d = triviality_certificate(&res, &alphas, k).map_err(err)?;
    Ok((d.status.name().to_string(), d.lines))
}

/// `(passed, report_json)` for the named property suites.
#[pyfunction]
#[pyo3(signature = (suites = None, seed = None))]
fn verify(suites: Option<Vec<String>>, seed: Option<u64>) -> PyResult<(bool, String)> {
    let names: Vec<String> = suites.unwrap_or_else(|| SUITES.iter().map(|s| s.to_string()).collect());
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let report = run_suites(&refs, seed.unwrap_or(DEFAULT_SEED)).map_err(err)?.sorted();
    Ok((report.passed(), report.to_json()))
}

#[pymodule]
fn hodge(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyIdeal>()?;
    m.add_class::<PyDivisor>()?;
    m.add_class::<PyHodgeIdeal>()?;
    m.add_function(wrap_pyfunction!(compute, m)?)?;
    m.add_function(wrap_pyfunction!(chain, m)?)?;
    m.add_function(wrap_pyfunction!(certify_triviality, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("MethodUnavailable", m.py().get_type::<MethodUnavailable>())?;
    m.add("SUITES", SUITES.to_vec())?;
    Ok(())
}
