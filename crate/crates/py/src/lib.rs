//! Python bindings: semirings, modules, halos, spines and SA-submodules.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use sa_core::lattice::{self, SpineSource};
use sa_core::{io, suite, Limits, SaLattice, Subset};

fn err(e: sa_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn subset(items: Vec<usize>, domain: usize) -> PyResult<Subset> {
    Subset::from_indices(domain, items).map_err(err)
}

/// `(element, lambda, mu)`.
type Witness = (usize, usize, usize);
/// `(module, spine, generators, semiring_spine)`.
type InstanceParts = (PyTableModule, Vec<usize>, Vec<usize>, Vec<usize>);

fn members(lattice: &SaLattice) -> Vec<Vec<usize>> {
    lattice
        .members
        .iter()
        .map(|w| w.as_subset().to_vec())
        .collect()
}

#[pyclass(frozen, skip_from_py_object, name = "Semiring", module = "sa_algebra")]
#[derive(Clone)]
struct PySemiring(Arc<sa_core::Semiring>);

#[pymethods]
impl PySemiring {
    #[new]
    fn new(
        name: String,
        zero: usize,
        one: usize,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
    ) -> PyResult<Self> {
        let r = sa_core::Semiring::with_limits(name, zero, one, add, mul, &Limits::from_env())
            .map_err(err)?;
        Ok(Self(Arc::new(r)))
    }

    #[staticmethod]
    fn boolean() -> Self {
        Self(Arc::new(sa_core::Semiring::boolean()))
    }

    #[staticmethod]
    fn truncated_naturals(k: usize) -> PyResult<Self> {
        Ok(Self(Arc::new(
            sa_core::Semiring::truncated_naturals(k).map_err(err)?,
        )))
    }

    #[staticmethod]
    fn truncated_maxplus(k: usize) -> PyResult<Self> {
        Ok(Self(Arc::new(
            sa_core::Semiring::truncated_maxplus(k).map_err(err)?,
        )))
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(Self(Arc::new(io::load_semiring(path).map_err(err)?)))
    }

    /// `n × n` matrices over this semiring.
    fn matrix(&self, n: usize) -> PyResult<Self> {
        let m = sa_core::MatrixSemiring::with_limits(self.0.clone(), n, &Limits::from_env())
            .map_err(err)?;
        Ok(Self(m.semiring().clone()))
    }

    #[getter]
    fn name(&self) -> &str {
        self.0.name()
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    #[getter]
    fn zero(&self) -> usize {
        self.0.zero()
    }

    #[getter]
    fn one(&self) -> usize {
        self.0.one()
    }

    fn add(&self, a: usize, b: usize) -> PyResult<usize> {
        self.check(&[a, b])?;
        Ok(self.0.add(a, b))
    }

    fn mul(&self, a: usize, b: usize) -> PyResult<usize> {
        self.check(&[a, b])?;
        Ok(self.0.mul(a, b))
    }

    fn idempotents(&self) -> Vec<usize> {
        self.0.idempotents().to_vec()
    }

    fn left_invertibles(&self) -> Vec<usize> {
        self.0.left_invertibles().to_vec()
    }

    fn units(&self) -> Vec<usize> {
        self.0.units().to_vec()
    }

    fn to_json(&self) -> String {
        io::emit_semiring(&self.0)
    }

    fn __len__(&self) -> usize {
        self.0.size()
    }

    fn __repr__(&self) -> String {
        format!("Semiring({:?}, size={})", self.0.name(), self.0.size())
    }
}

impl PySemiring {
    fn check(&self, xs: &[usize]) -> PyResult<()> {
        match xs.iter().find(|&&x| x >= self.0.size()) {
            Some(&x) => Err(err(sa_core::Error::OutOfRange {
                element: x,
                size: self.0.size(),
            })),
            None => Ok(()),
        }
    }
}

#[pyclass(frozen, skip_from_py_object, name = "Module", module = "sa_algebra")]
#[derive(Clone)]
struct PyTableModule(Arc<sa_core::Module>);

#[pymethods]
impl PyTableModule {
    #[new]
    fn new(
        semiring: &PySemiring,
        zero: usize,
        add: Vec<Vec<usize>>,
        act: Vec<Vec<usize>>,
    ) -> PyResult<Self> {
        let v =
            sa_core::Module::with_limits(semiring.0.clone(), zero, add, act, &Limits::from_env())
                .map_err(err)?;
        Ok(Self(Arc::new(v)))
    }

    #[staticmethod]
    fn regular(semiring: &PySemiring) -> Self {
        Self(Arc::new(sa_core::Module::regular(semiring.0.clone())))
    }

    /// `R^rank` with coordinates in base `|R|`, least significant first.
    #[staticmethod]
    fn free(semiring: &PySemiring, rank: usize) -> PyResult<Self> {
        let f = sa_core::FreeModule::with_limits(semiring.0.clone(), rank, &Limits::from_env())
            .map_err(err)?;
        Ok(Self(Arc::new(f.module().clone())))
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(Self(Arc::new(io::load_module(path).map_err(err)?)))
    }

    #[getter]
    fn semiring(&self) -> PySemiring {
        PySemiring(self.0.semiring().clone())
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    #[getter]
    fn zero(&self) -> usize {
        self.0.zero()
    }

    fn add(&self, v: usize, w: usize) -> PyResult<usize> {
        subset(vec![v, w], self.0.size())?;
        Ok(self.0.add(v, w))
    }

    fn act(&self, r: usize, v: usize) -> PyResult<usize> {
        subset(vec![r], self.0.semiring().size())?;
        subset(vec![v], self.0.size())?;
        Ok(self.0.act(r, v))
    }

    /// Halo members and one `(element, lambda, mu)` witness per member.
    fn halo(&self, set: Vec<usize>) -> PyResult<(Vec<usize>, Vec<Witness>)> {
        let h = sa_core::halo(&self.0, &subset(set, self.0.size())?);
        let witnesses = h
            .witnesses
            .iter()
            .map(|w| (w.element, w.lambda, w.mu))
            .collect();
        Ok((h.members.to_vec(), witnesses))
    }

    fn is_additive_spine(&self, set: Vec<usize>) -> PyResult<bool> {
        Ok(sa_core::is_additive_spine(&self.0, &subset(set, self.0.size())?).is_spine)
    }

    fn generated_submodule(&self, set: Vec<usize>) -> PyResult<Vec<usize>> {
        Ok(self
            .0
            .generated_submodule(&subset(set, self.0.size())?)
            .as_subset()
            .to_vec())
    }

    fn is_lzs(&self) -> bool {
        self.0.is_lzs()
    }

    /// Whether `set` is a summand-absorbing submodule.
    fn is_sa(&self, set: Vec<usize>) -> PyResult<bool> {
        let s = subset(set, self.0.size())?;
        Ok(self
            .0
            .submodule(s)
            .is_ok_and(|w| lattice::is_sa(&self.0, &w)))
    }

    fn sa_closure(&self, set: Vec<usize>) -> PyResult<Vec<usize>> {
        Ok(lattice::sa_closure(&self.0, &subset(set, self.0.size())?)
            .as_subset()
            .to_vec())
    }

    /// SA-submodules, from a spine `T` of the module.
    #[pyo3(signature = (spine, sigma = false))]
    fn enumerate_sa(&self, spine: Vec<usize>, sigma: bool) -> PyResult<Vec<Vec<usize>>> {
        let source = SpineSource::Spine(subset(spine, self.0.size())?);
        let mut lat = lattice::enumerate_sa(&self.0, &source, &Limits::from_env()).map_err(err)?;
        if sigma {
            lat = lattice::enumerate_sigma_sa(&self.0, &lat);
        }
        Ok(members(&lat))
    }

    fn enumerate_sa_bruteforce(&self) -> PyResult<Vec<Vec<usize>>> {
        Ok(members(
            &lattice::enumerate_sa_bruteforce(&self.0).map_err(err)?,
        ))
    }

    /// The SA lattice from spine `T` in Graphviz form.
    fn lattice_dot(&self, spine: Vec<usize>) -> PyResult<String> {
        let source = SpineSource::Spine(subset(spine, self.0.size())?);
        let lat = lattice::enumerate_sa(&self.0, &source, &Limits::from_env()).map_err(err)?;
        Ok(sa_core::lattice_to_dot(&lat))
    }

    fn to_json(&self) -> String {
        io::emit_module(&self.0)
    }

    fn __len__(&self) -> usize {
        self.0.size()
    }

    fn __repr__(&self) -> String {
        format!(
            "Module(over {:?}, size={})",
            self.0.semiring().name(),
            self.0.size()
        )
    }
}

#[pyfunction]
fn theorem_ids() -> Vec<&'static str> {
    sa_core::THEOREMS.to_vec()
}

#[pyfunction]
fn zoo_names() -> PyResult<Vec<String>> {
    Ok(sa_core::zoo()
        .map_err(err)?
        .into_iter()
        .map(|i| i.name)
        .collect())
}

/// The built-in instance `name` as `(module, spine, generators, semiring_spine)`.
#[pyfunction]
fn zoo_instance(name: &str) -> PyResult<InstanceParts> {
    let inst = sa_core::zoo::instance(name).map_err(err)?;
    Ok((
        PyTableModule(inst.module.clone()),
        inst.declared_spine.to_vec(),
        inst.declared_generators.to_vec(),
        inst.semiring_spine.to_vec(),
    ))
}

/// Runs the theorem suite on zoo instances; returns the JSON report.
#[pyfunction]
#[pyo3(signature = (instances = None, theorems = None))]
fn run_checks(
    py: Python<'_>,
    instances: Option<Vec<String>>,
    theorems: Option<Vec<String>>,
) -> PyResult<String> {
    let limits = Limits::from_env();
    let mut zoo = sa_core::zoo::zoo_with_limits(&limits).map_err(err)?;
    if let Some(names) = instances {
        if let Some(bad) = names.iter().find(|n| !zoo.iter().any(|i| &&i.name == n)) {
            return Err(PyValueError::new_err(format!(
                "no zoo instance named {bad}"
            )));
        }
        zoo.retain(|i| names.contains(&i.name));
    }
    let options = suite::SuiteOptions {
        limits,
        theorems,
        timings: false,
    };
    let reports = py
        .detach(|| suite::run_checks(&zoo, &options))
        .map_err(err)?;
    Ok(io::to_json(&reports))
}

#[pymodule]
fn sa_algebra(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySemiring>()?;
    m.add_class::<PyTableModule>()?;
    m.add_function(wrap_pyfunction!(theorem_ids, m)?)?;
    m.add_function(wrap_pyfunction!(zoo_names, m)?)?;
    m.add_function(wrap_pyfunction!(zoo_instance, m)?)?;
    m.add_function(wrap_pyfunction!(run_checks, m)?)?;
    Ok(())
}
