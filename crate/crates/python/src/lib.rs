//! Python bindings: `import hbraid`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use hbraid_core::braid::{braid_eq as core_braid_eq, perm_of, Permutation};
use hbraid_core::combing::{comb_horizontal, comb_vertical};
use hbraid_core::handlebody::{decompose, presentation_check as core_presentation_check, HandleWord as CoreHandle};
use hbraid_core::hecke::{self, Basis, ReduceConfig, Strategy};
use hbraid_core::syntax::{parse_braid, parse_handle, parse_hecke, parse_pure};
use hbraid_core::wreath::{project, WreathElement as CoreWreath};
use hbraid_core::Error;

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Whether two words in `s<i>` letters are equal in `B_m`.
#[pyfunction]
fn braid_eq(m: u32, w1: &str, w2: &str) -> PyResult<bool> {
    let (a, b) = (parse_braid(w1, m).map_err(py_err)?, parse_braid(w2, m).map_err(py_err)?);
    core_braid_eq(&a, &b).map_err(py_err)
}

/// Images `[p(1), …, p(m)]` of the permutation of a braid word.
#[pyfunction]
fn perm(m: u32, w: &str) -> PyResult<Vec<u32>> {
    Ok(perm_of(&parse_braid(w, m).map_err(py_err)?).images().to_vec())
}

/// Combed components of a pure braid word: `u_m, …, u_2` (vertical) or `v_1, …, v_{m-1}` (horizontal).
#[pyfunction]
#[pyo3(signature = (m, w, mode = "vertical"))]
fn comb(m: u32, w: &str, mode: &str) -> PyResult<Vec<String>> {
    let p = parse_pure(w, m).map_err(py_err)?;
    let comps = match mode {
        "vertical" => comb_vertical(&p).map_err(py_err)?.components,
        "horizontal" => comb_horizontal(&p).map_err(py_err)?.components,
        other => return Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
    };
    Ok(comps.iter().map(|c| c.to_string()).collect())
}

/// `(instances, failures)` for the defining relations of `B_{g,n}`.
#[pyfunction]
fn presentation_check(g: u32, n: u32) -> PyResult<(usize, usize)> {
    let r = core_presentation_check(g, n).map_err(py_err)?;
    Ok((r.instances.len(), r.failures()))
}

#[pyclass(frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct WreathElement {
    inner: CoreWreath,
}

#[pymethods]
impl WreathElement {
    #[getter]
    fn columns(&self) -> Vec<String> {
        self.inner.columns.iter().map(|c| c.to_string()).collect()
    }

    #[getter]
    fn perm(&self) -> Vec<u32> {
        self.inner.perm.images().to_vec()
    }

    fn is_identity(&self) -> bool {
        self.inner.is_identity()
    }

    fn inverse(&self) -> WreathElement {
        WreathElement { inner: self.inner.inverse() }
    }

    fn __mul__(&self, other: &WreathElement) -> PyResult<WreathElement> {
        Ok(WreathElement { inner: self.inner.multiply(&other.inner).map_err(py_err)? })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("WreathElement('{}')", self.inner)
    }
}

/// A word in `t<k>` and `s<i>` letters of `B_{g,n}`.
#[pyclass(frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct HandleWord {
    inner: CoreHandle,
}

#[pymethods]
impl HandleWord {
    #[new]
    #[pyo3(signature = (g, n, text = ""))]
    fn new(g: u32, n: u32, text: &str) -> PyResult<Self> {
        Ok(HandleWord { inner: parse_handle(text, g, n).map_err(py_err)? })
    }

    #[getter]
    fn g(&self) -> u32 {
        self.inner.g()
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    /// The word on `g + n` strands.
    fn embed(&self) -> String {
        self.inner.embed().to_string()
    }

    fn phi(&self) -> HandleWord {
        HandleWord { inner: self.inner.phi() }
    }

    fn psi(&self) -> Vec<u32> {
        self.inner.psi().images().to_vec()
    }

    fn r_part(&self) -> HandleWord {
        HandleWord { inner: self.inner.r_part() }
    }

    /// `(components, tail, certified)`; components are indexed by strands `g+1..g+n`.
    fn rdecomp(&self) -> PyResult<(Vec<String>, String, bool)> {
        let d = decompose(&self.inner).map_err(py_err)?;
        let comps = d.components.iter().map(|c| c.to_string()).collect();
        Ok((comps, d.tail.to_string(), d.certify()))
    }

    fn wreath(&self) -> WreathElement {
        WreathElement { inner: project(&self.inner) }
    }

    fn inverse(&self) -> HandleWord {
        HandleWord { inner: self.inner.invert() }
    }

    /// Equality in `B_{g,n}` (not as words).
    fn equals(&self, other: &HandleWord) -> PyResult<bool> {
        core_braid_eq(&self.inner.embed(), &other.inner.embed()).map_err(py_err)
    }

    fn __mul__(&self, other: &HandleWord) -> PyResult<HandleWord> {
        Ok(HandleWord { inner: self.inner.multiply(&other.inner).map_err(py_err)? })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("HandleWord({}, {}, '{}')", self.inner.g(), self.inner.n(), self.inner)
    }
}

fn config(basis: &str, strategy: &str, budget: usize) -> PyResult<ReduceConfig> {
    let basis = match basis {
        "positive" => Basis::Positive,
        "prime" => Basis::Prime,
        other => return Err(PyValueError::new_err(format!("unknown basis {other:?}"))),
    };
    let strategy = match strategy {
        "leftmost" => Strategy::Leftmost,
        "rightmost" => Strategy::Rightmost,
        other => return Err(PyValueError::new_err(format!("unknown strategy {other:?}"))),
    };
    Ok(ReduceConfig { basis, strategy, budget, ..ReduceConfig::default() })
}

/// Reduces a Hecke expression; returns `[(coefficient, word)]` or raises `RuntimeError`
/// when the reduction does not finish.
#[pyfunction]
#[pyo3(signature = (g, n, expr, basis = "positive", strategy = "leftmost", budget = 20_000))]
fn hecke_reduce(g: u32, n: u32, expr: &str, basis: &str, strategy: &str, budget: usize) -> PyResult<Vec<(String, String)>> {
    let e = parse_hecke(expr, g).map_err(py_err)?;
    match hecke::sigma_reduce(&e, g, n, &config(basis, strategy, budget)?).map_err(py_err)? {
        Ok(r) => Ok(r.element.terms.iter().map(|(w, c)| (c.to_string(), w.render(g))).collect()),
        Err(f) => Err(PyRuntimeError::new_err(format!("{} after {} steps", f.reason, f.steps))),
    }
}

/// The probe report as a JSON string.
#[pyfunction]
#[pyo3(signature = (g, n, max_len, basis = "positive", budget = 20_000, seed = 0, samples = 10))]
fn hecke_probe(g: u32, n: u32, max_len: usize, basis: &str, budget: usize, seed: u64, samples: usize) -> PyResult<String> {
    let r = hecke::conjecture_probe(g, n, max_len, &config(basis, "leftmost", budget)?, seed, samples).map_err(py_err)?;
    serde_json::to_string(&r).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// `T_u · T_v` in `H_n(q)` for permutations given by images, as `[(images, coefficient)]`.
#[pyfunction]
fn hn_mul(u: Vec<u32>, v: Vec<u32>) -> PyResult<Vec<(Vec<u32>, String)>> {
    let pu = Permutation::from_images(u).map_err(py_err)?;
    let pv = Permutation::from_images(v).map_err(py_err)?;
    if pu.size() != pv.size() {
        return Err(PyValueError::new_err("permutations of different sizes"));
    }
    let p = hecke::hn_mul(&hecke::hn_basis(pu), &hecke::hn_basis(pv));
    Ok(p.iter().map(|(w, c)| (w.images().to_vec(), c.to_string())).collect())
}

#[pymodule]
fn hbraid(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<HandleWord>()?;
    m.add_class::<WreathElement>()?;
    m.add_function(wrap_pyfunction!(braid_eq, m)?)?;
    m.add_function(wrap_pyfunction!(perm, m)?)?;
    m.add_function(wrap_pyfunction!(comb, m)?)?;
    m.add_function(wrap_pyfunction!(presentation_check, m)?)?;
    m.add_function(wrap_pyfunction!(hecke_reduce, m)?)?;
    m.add_function(wrap_pyfunction!(hecke_probe, m)?)?;
    m.add_function(wrap_pyfunction!(hn_mul, m)?)?;
    Ok(())
}
