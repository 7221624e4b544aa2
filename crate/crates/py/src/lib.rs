use std::collections::BTreeMap;

use conductor_core::counting;
use conductor_core::local;
use conductor_core::oracle::{self, DEFAULT_CAP};
use conductor_core::verify::{self as checks, Outcome};
use conductor_core::{BigRational, BigUint, Error, FiniteAbelianGroup, LocalField, PPrimaryType};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(conductor, ResourceLimitError, PyException, "An explicit model exceeds the element cap.");

fn to_py(e: Error) -> PyErr {
    match e {
        Error::InvalidInput(m) => PyValueError::new_err(m),
        e @ Error::ResourceLimit { .. } => ResourceLimitError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, r: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((r.numer().clone(), r.denom().clone()))
}

/// A finite abelian group, e.g. `AbelianGroup("C4xC2")` or `AbelianGroup("4,2")`.
#[pyclass(name = "AbelianGroup", module = "conductor", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyGroup(FiniteAbelianGroup);

#[pymethods]
impl PyGroup {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        spec.parse().map(PyGroup).map_err(to_py)
    }

    /// Build from arbitrary cyclic factor orders, e.g. `[6, 4]`.
    #[staticmethod]
    fn from_factors(factors: Vec<u64>) -> PyResult<Self> {
        FiniteAbelianGroup::canonicalize(&factors).map(PyGroup).map_err(to_py)
    }

    /// Invariant factors `d_1 | d_2 | ...`.
    #[getter]
    fn invariant_factors(&self) -> Vec<u64> {
        self.0.invariant_factors().to_vec()
    }

    #[getter]
    fn order(&self) -> BigUint {
        self.0.order()
    }

    #[getter]
    fn exponent(&self) -> u64 {
        self.0.exponent()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn is_p_group(&self, p: u64) -> bool {
        self.0.is_p_group(p)
    }

    fn primary_part(&self, p: u64) -> PyResult<Self> {
        let part = self.0.primary_part(p).map_err(to_py)?;
        Ok(PyGroup(part.to_group()))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("AbelianGroup('{}')", self.0)
    }
}

impl PyGroup {
    fn part(&self, p: u64) -> PyResult<PPrimaryType> {
        self.0.primary_part(p).map_err(to_py)
    }
}

/// The local field `F_q((t))` with `q = p^f`.
#[pyclass(name = "LocalField", module = "conductor", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyField(LocalField);

#[pymethods]
impl PyField {
    #[new]
    #[pyo3(signature = (p, f = 1))]
    fn new(p: u64, f: u32) -> PyResult<Self> {
        LocalField::new(p, f).map(PyField).map_err(to_py)
    }

    #[staticmethod]
    fn from_q(q: u64) -> PyResult<Self> {
        LocalField::from_q(q).map(PyField).map_err(to_py)
    }

    #[getter]
    fn p(&self) -> u64 {
        self.0.p()
    }

    #[getter]
    fn f(&self) -> u32 {
        self.0.f()
    }

    #[getter]
    fn q(&self) -> BigUint {
        self.0.q().clone()
    }

    fn __repr__(&self) -> String {
        format!("LocalField(p={}, f={})", self.0.p(), self.0.f())
    }
}

/// `Z(F, G; n)` and its decomposition; rationals are `fractions.Fraction`.
#[pyclass(name = "CountBreakdown", module = "conductor", frozen)]
struct PyBreakdown(local::CountBreakdown);

#[pymethods]
impl PyBreakdown {
    #[getter]
    fn n(&self) -> u64 {
        self.0.n
    }

    #[getter]
    fn z(&self) -> BigUint {
        self.0.z.clone()
    }

    #[getter]
    fn alpha_p<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.alpha_p)
    }

    #[getter]
    fn delta<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.delta)
    }

    #[getter]
    fn epsilon<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.epsilon)
    }

    #[getter]
    fn leading_coeff<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.leading_coeff)
    }

    #[getter]
    fn tame_factor(&self) -> BigUint {
        self.0.tame_factor.clone()
    }

    #[getter]
    fn realizable(&self) -> bool {
        self.0.realizable
    }

    fn __repr__(&self) -> String {
        format!("CountBreakdown(n={}, z={})", self.0.n, self.0.z)
    }
}

#[pyfunction]
fn count_conductor(field: &PyField, group: &PyGroup, n: u64) -> PyResult<PyBreakdown> {
    local::count_conductor(&field.0, &group.0, n)
        .map(PyBreakdown)
        .map_err(to_py)
}

/// `[count_conductor(field, group, n) for n in 1..=n_max]`.
#[pyfunction]
fn sweep(field: &PyField, group: &PyGroup, n_max: u64) -> PyResult<Vec<PyBreakdown>> {
    (1..=n_max).map(|n| count_conductor(field, group, n)).collect()
}

#[pyfunction]
fn alpha_p<'py>(py: Python<'py>, group: &PyGroup, p: u64) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &local::alpha_p(&group.part(p)?))
}

#[pyfunction]
fn delta_g<'py>(py: Python<'py>, group: &PyGroup, p: u64, n: i64) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &local::delta_g(&group.part(p)?, n))
}

#[pyfunction]
fn epsilon<'py>(py: Python<'py>, group: &PyGroup, field: &PyField, n: u64) -> PyResult<Bound<'py, PyAny>> {
    let t = group.part(field.0.p())?;
    fraction(py, &local::epsilon(&t, &field.0, n).map_err(to_py)?)
}

#[pyfunction]
fn rho<'py>(py: Python<'py>, group: &PyGroup, p: u64) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &local::rho(&group.part(p)?))
}

#[pyfunction]
fn beta_p<'py>(py: Python<'py>, group: &PyGroup, p: u64) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &local::beta_p(&group.part(p)?).map_err(to_py)?)
}

#[pyfunction]
fn realizable(group: &PyGroup, field: &PyField) -> bool {
    local::realizable(&group.0, &field.0)
}

/// The factor an ℓ-group (ℓ ≠ p) contributes to `Z`.
#[pyfunction]
fn tame_factor(group: &PyGroup, q: BigUint) -> PyResult<BigUint> {
    let mut acc = BigUint::from(1u32);
    for part in group.0.primary_parts() {
        acc *= local::tame_factor(&part, &q).map_err(to_py)?;
    }
    Ok(acc)
}

/// `|Inj(G, A)|` from the closed form.
#[pyfunction]
fn inj_count(g: &PyGroup, a: &PyGroup) -> PyResult<BigUint> {
    let mut acc = BigUint::from(1u32);
    for part in g.0.primary_parts() {
        let target = a.part(part.prime())?.rank_vector();
        acc *= counting::inj_count(&part, &target).map_err(to_py)?;
    }
    Ok(acc)
}

#[pyfunction]
fn aut_count(g: &PyGroup) -> BigUint {
    g.0.primary_parts().iter().map(counting::aut_count).product()
}

/// Number of subgroups of `a` isomorphic to `g`, from the closed form.
#[pyfunction]
fn subgroup_count(g: &PyGroup, a: &PyGroup) -> PyResult<BigUint> {
    let targets: BTreeMap<u64, _> = a
        .0
        .primary_parts()
        .into_iter()
        .map(|t| (t.prime(), t.rank_vector()))
        .collect();
    counting::subgroup_count_general(&g.0, &targets).map_err(to_py)
}

/// `Z(F, G; n)` by enumerating subgroups of an explicit model.
#[pyfunction]
#[pyo3(signature = (field, group, n, cap = DEFAULT_CAP))]
fn brute_z(field: &PyField, group: &PyGroup, n: u64, cap: u64) -> PyResult<u128> {
    oracle::brute_z(&field.0, &group.0, n, cap).map_err(to_py)
}

/// `D(F, G; n)` by enumeration.
#[pyfunction]
#[pyo3(signature = (field, group, n, cap = DEFAULT_CAP))]
fn brute_d(field: &PyField, group: &PyGroup, n: u64, cap: u64) -> PyResult<u128> {
    oracle::brute_d(&field.0, &group.0, n, cap).map_err(to_py)
}

/// Rows `(n, check, outcome, detail)` comparing closed forms with the oracle.
#[pyfunction]
#[pyo3(signature = (field, group, n_max, cap = DEFAULT_CAP))]
fn verify(field: &PyField, group: &PyGroup, n_max: u64, cap: u64) -> PyResult<Vec<(u64, String, String, String)>> {
    let report = checks::verify(&field.0, &group.0, n_max, cap).map_err(to_py)?;
    Ok(report
        .rows
        .into_iter()
        .map(|row| {
            let (outcome, detail) = match row.outcome {
                Outcome::Pass => ("PASS", String::new()),
                Outcome::Fail(m) => ("FAIL", m),
                Outcome::Skip(m) => ("SKIP", m),
            };
            (row.n, row.check.name().to_string(), outcome.to_string(), detail)
        })
        .collect())
}

/// Disc-exponent bound `n·ρ(G) + |G| − 1` for conductor exponent `n`.
#[pyfunction]
fn disc_upper_bound<'py>(py: Python<'py>, group: &PyGroup, p: u64, n: u64) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &local::disc_upper_bound_exact(&group.part(p)?, n))
}

#[pymodule]
fn conductor(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("DEFAULT_CAP", DEFAULT_CAP)?;
    m.add("ResourceLimitError", m.py().get_type::<ResourceLimitError>())?;
    m.add_class::<PyGroup>()?;
    m.add_class::<PyField>()?;
    m.add_class::<PyBreakdown>()?;
    m.add_function(wrap_pyfunction!(count_conductor, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(alpha_p, m)?)?;
    m.add_function(wrap_pyfunction!(delta_g, m)?)?;
    m.add_function(wrap_pyfunction!(epsilon, m)?)?;
    m.add_function(wrap_pyfunction!(rho, m)?)?;
    m.add_function(wrap_pyfunction!(beta_p, m)?)?;
    m.add_function(wrap_pyfunction!(realizable, m)?)?;
    m.add_function(wrap_pyfunction!(tame_factor, m)?)?;
    m.add_function(wrap_pyfunction!(inj_count, m)?)?;
    m.add_function(wrap_pyfunction!(aut_count, m)?)?;
    m.add_function(wrap_pyfunction!(subgroup_count, m)?)?;
    m.add_function(wrap_pyfunction!(brute_z, m)?)?;
    m.add_function(wrap_pyfunction!(brute_d, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(disc_upper_bound, m)?)?;
    Ok(())
}
