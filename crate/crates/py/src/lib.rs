//! Python bindings: expressions, normal forms, the calculus operators, the
//! involution and the verification suites.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hplane_core::calculus::{self, PartialIndex};
use hplane_core::frontend::{self, Format};
use hplane_core::star::{self as involution, HPrimeMode};
use hplane_core::{build_c, run_suite, Param, ParamScalar, Rewriter, Specialization, Suite};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn format_of(name: &str) -> PyResult<Format> {
    name.parse().map_err(err)
}

fn specialization(subst: &[String]) -> PyResult<Specialization> {
    let mut spec = Specialization::generic();
    for s in subst {
        let (target, repl) = match s.replace(' ', "").as_str() {
            "h=hp" => (Param::H, ParamScalar::hp()),
            "hp=h" => (Param::HPrime, ParamScalar::h()),
            "hp=-h" => (Param::HPrime, -ParamScalar::h()),
            "h=-hp" => (Param::H, -ParamScalar::hp()),
            "h=0" => (Param::H, ParamScalar::zero()),
            "hp=0" => (Param::HPrime, ParamScalar::zero()),
            other => return Err(err(format!("unsupported substitution `{other}`"))),
        };
        spec = spec.then(target, repl).map_err(err)?;
    }
    Ok(spec)
}

/// An element of the free algebra; `normalize()` gives its normal form.
#[pyclass(name = "Expr", module = "hplane", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyExpr {
    inner: hplane_core::Expr,
}

impl From<hplane_core::Expr> for PyExpr {
    fn from(inner: hplane_core::Expr) -> Self {
        PyExpr { inner }
    }
}

/// Accept an `Expr` or a string in the text grammar.
fn expr_arg(obj: &Bound<'_, PyAny>) -> PyResult<hplane_core::Expr> {
    if let Ok(e) = obj.cast::<PyExpr>() {
        return Ok(e.get().inner.clone());
    }
    let s: String = obj.extract()?;
    frontend::parse(&s).map_err(err)
}

#[pymethods]
impl PyExpr {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        frontend::parse(text).map(Into::into).map_err(err)
    }

    #[staticmethod]
    fn from_latex(text: &str) -> PyResult<Self> {
        frontend::parse_latex(text).map(Into::into).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        frontend::parse_json(text).map(Into::into).map_err(err)
    }

    #[pyo3(signature = (subst = Vec::new()))]
    fn normalize(&self, subst: Vec<String>) -> PyResult<Self> {
        let rw = Rewriter::default().specialized(specialization(&subst)?);
        rw.normalize(&self.inner).map(Into::into).map_err(err)
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// `(coefficient, letters)` pairs in print order.
    fn terms(&self) -> Vec<(String, Vec<String>)> {
        self.inner
            .terms()
            .map(|(w, c)| (frontend::print_scalar(c), w.letters().iter().map(|g| g.name().to_string()).collect()))
            .collect()
    }

    #[pyo3(signature = (format = "text"))]
    fn to_string(&self, format: &str) -> PyResult<String> {
        Ok(frontend::print(&self.inner, format_of(format)?))
    }

    fn to_latex(&self) -> String {
        frontend::print(&self.inner, Format::Latex)
    }

    fn to_json(&self) -> String {
        frontend::print(&self.inner, Format::Json)
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok((&self.inner + &expr_arg(other)?).into())
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok((&self.inner - &expr_arg(other)?).into())
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok((&self.inner * &expr_arg(other)?).into())
    }

    fn __rmul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok((&expr_arg(other)? * &self.inner).into())
    }

    fn __neg__(&self) -> Self {
        (-&self.inner).into()
    }

    fn __str__(&self) -> String {
        frontend::print_text(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Expr('{}')", frontend::print_text(&self.inner))
    }
}

#[pyfunction]
fn parse(text: &str) -> PyResult<PyExpr> {
    PyExpr::new(text)
}

#[pyfunction]
#[pyo3(signature = (e, subst = Vec::new()))]
fn normalize(e: &Bound<'_, PyAny>, subst: Vec<String>) -> PyResult<PyExpr> {
    let rw = Rewriter::default().specialized(specialization(&subst)?);
    rw.normalize(&expr_arg(e)?).map(Into::into).map_err(err)
}

/// Exterior derivative.
#[pyfunction]
fn d(e: &Bound<'_, PyAny>) -> PyResult<PyExpr> {
    calculus::exterior_d(&Rewriter::default(), &expr_arg(e)?).map(Into::into).map_err(err)
}

/// `∂_i f` with `i = 1` for θ and `2` for φ.
#[pyfunction]
fn partial(i: usize, f: &Bound<'_, PyAny>) -> PyResult<PyExpr> {
    let ix = PartialIndex::from_index(i).map_err(err)?;
    calculus::partial(&Rewriter::default(), ix, &expr_arg(f)?).map(Into::into).map_err(err)
}

#[pyfunction]
fn o_map(l: usize, i: usize, f: &Bound<'_, PyAny>) -> PyResult<PyExpr> {
    calculus::o_map(&Rewriter::default(), l, i, &expr_arg(f)?).map(Into::into).map_err(err)
}

#[pyfunction]
fn star(e: &Bound<'_, PyAny>) -> PyResult<PyExpr> {
    involution::star(&Rewriter::default(), &expr_arg(e)?).map(Into::into).map_err(err)
}

/// One of `theta`, `phi`, `pi_theta`, `pi_phi`.
#[pyfunction]
fn hat(name: &str) -> PyResult<PyExpr> {
    involution::hat(name).map(Into::into).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (t = "0", format = "text"))]
fn matrix(t: &str, format: &str) -> PyResult<String> {
    let e = frontend::parse(t).map_err(err)?;
    let value = e
        .scalar_part()
        .as_constant()
        .filter(|_| e.words().all(|w| w.is_empty()))
        .ok_or_else(|| err(format!("t must be a number, got `{t}`")))?;
    Ok(build_c(&value).print(format_of(format)?))
}

/// The relations of the hermitean operators as `(lhs, rhs)` text pairs.
#[pyfunction]
#[pyo3(signature = (hprime = "generic"))]
fn derive_phase_space(hprime: &str) -> PyResult<Vec<(String, String)>> {
    let mode: HPrimeMode = hprime.parse().map_err(err)?;
    let rw = Rewriter::default().specialized(mode.specialization());
    let rels = involution::derive_phase_space(&rw).map_err(err)?;
    Ok(rels
        .iter()
        .map(|r| {
            let lhs = hplane_core::Expr::word(r.lhs.clone());
            (frontend::print_hat(&lhs, Format::Text), frontend::print_hat(&r.rhs, Format::Text))
        })
        .collect())
}

/// `(overlap, residual)` for each critical pair of the rule table.
#[pyfunction]
fn critical_pairs() -> PyResult<Vec<(String, String)>> {
    let pairs = Rewriter::default().critical_pairs().map_err(err)?;
    Ok(pairs.iter().map(|p| (p.name(), frontend::print_text(&p.residual()))).collect())
}

/// Run a suite; returns `(passed, [(check, passed, residual)])`.
#[pyfunction]
#[pyo3(signature = (suite = "all"))]
fn verify(suite: &str) -> PyResult<(bool, Vec<(String, bool, String)>)> {
    let suite: Suite = suite.parse().map_err(err)?;
    let report = run_suite(suite, &Rewriter::default());
    Ok((report.pass, report.checks.into_iter().map(|c| (c.name, c.pass, c.residual)).collect()))
}

#[pymodule]
fn hplane(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyExpr>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(d, m)?)?;
    m.add_function(wrap_pyfunction!(partial, m)?)?;
    m.add_function(wrap_pyfunction!(o_map, m)?)?;
    m.add_function(wrap_pyfunction!(star, m)?)?;
    m.add_function(wrap_pyfunction!(hat, m)?)?;
    m.add_function(wrap_pyfunction!(matrix, m)?)?;
    m.add_function(wrap_pyfunction!(derive_phase_space, m)?)?;
    m.add_function(wrap_pyfunction!(critical_pairs, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
