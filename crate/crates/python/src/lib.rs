//! Python bindings: modules, submodules, subcategories and the closure,
//! hom, injectivity and torsion-theory operations on them.

use modclose::closure::{Divisible, Subcategory};
use modclose::linalg::IntMatrix;
use modclose::module::{present_module, FPModule, Submodule};
use modclose::ring::RingDesc;
use modclose::torsion::{ModuleUniverse, TorsionClass};
use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: modclose::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_ring(spec: &str) -> PyResult<RingDesc> {
    spec.parse().map_err(err)
}

fn columns(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.columns().collect()
}

fn from_columns(rows: usize, cols: Vec<Vec<BigInt>>) -> PyResult<IntMatrix> {
    IntMatrix::from_columns(rows, &cols).map_err(err)
}

#[pyclass(name = "Module", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyModule_ {
    inner: FPModule,
}

#[pymethods]
impl PyModule_ {
    /// `Module("Zmod:4", 1, [[2]])`: generators plus relation columns.
    #[new]
    #[pyo3(signature = (ring, generators, relations = Vec::new()))]
    fn new(ring: &str, generators: usize, relations: Vec<Vec<BigInt>>) -> PyResult<Self> {
        let rel = from_columns(generators, relations)?;
        let inner = present_module(parse_ring(ring)?, generators, rel).map_err(err)?;
        Ok(PyModule_ { inner })
    }

    #[staticmethod]
    fn from_invariant_factors(ring: &str, factors: Vec<BigInt>) -> PyResult<Self> {
        let inner = FPModule::from_invariant_factors(parse_ring(ring)?, &factors).map_err(err)?;
        Ok(PyModule_ { inner })
    }

    #[getter]
    fn ring(&self) -> String {
        self.inner.ring().to_string()
    }

    #[getter]
    fn n_gens(&self) -> usize {
        self.inner.n_gens()
    }

    #[getter]
    fn invariant_factors(&self) -> Vec<BigInt> {
        self.inner.invariant_factors().to_vec()
    }

    #[getter]
    fn free_rank(&self) -> usize {
        self.inner.free_rank()
    }

    #[getter]
    fn order(&self) -> Option<BigInt> {
        self.inner.order()
    }

    fn is_finite(&self) -> bool {
        self.inner.is_finite()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_isomorphic(&self, other: &PyModule_) -> bool {
        self.inner.is_isomorphic(&other.inner)
    }

    /// Submodule generated by the given coordinate columns.
    fn submodule(&self, gens: Vec<Vec<BigInt>>) -> PyResult<PySubmodule> {
        let g = from_columns(self.inner.n_gens(), gens)?;
        Ok(PySubmodule {
            inner: Submodule::new(&self.inner, g).map_err(err)?,
        })
    }

    fn whole(&self) -> PySubmodule {
        PySubmodule {
            inner: self.inner.whole(),
        }
    }

    fn zero_submodule(&self) -> PySubmodule {
        PySubmodule {
            inner: self.inner.zero_submodule(),
        }
    }

    fn describe(&self) -> String {
        self.inner.describe()
    }

    fn __repr__(&self) -> String {
        format!("Module({} over {})", self.inner.describe(), self.inner.ring())
    }
}

#[pyclass(name = "Submodule", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySubmodule {
    inner: Submodule,
}

#[pymethods]
impl PySubmodule {
    /// Canonical generator columns.
    #[getter]
    fn generators(&self) -> Vec<Vec<BigInt>> {
        columns(self.inner.canonical_gens())
    }

    fn parent(&self) -> PyModule_ {
        PyModule_ {
            inner: self.inner.parent().clone(),
        }
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_whole(&self) -> bool {
        self.inner.is_whole()
    }

    fn contains(&self, coords: Vec<BigInt>) -> bool {
        coords.len() == self.inner.parent().n_gens() && self.inner.contains_vector(&coords)
    }

    fn is_contained_in(&self, other: &PySubmodule) -> PyResult<bool> {
        self.inner.is_contained_in(&other.inner).map_err(err)
    }

    fn as_module(&self) -> PyModule_ {
        PyModule_ {
            inner: self.inner.as_module(),
        }
    }

    fn __eq__(&self, other: &PySubmodule) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Submodule({:?})", self.generators())
    }
}

#[pyclass(name = "Subcategory", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySubcategory {
    inner: Subcategory,
}

#[pymethods]
impl PySubcategory {
    /// Finite injective modules over `Zmod:n`, or `"Q"` / `"QmodZ"` over `Z`.
    #[new]
    #[pyo3(signature = (ring, finite = Vec::new(), divisible = Vec::new()))]
    fn new(ring: &str, finite: Vec<PyRef<'_, PyModule_>>, divisible: Vec<String>) -> PyResult<Self> {
        let finite = finite.iter().map(|m| m.inner.clone()).collect();
        let divisible = divisible
            .iter()
            .map(|d| match d.as_str() {
                "Q" => Ok(Divisible::Rationals),
                "QmodZ" => Ok(Divisible::RationalsModZ),
                other => Err(PyValueError::new_err(format!(
                    "divisible objects are \"Q\" or \"QmodZ\", got {other:?}"
                ))),
            })
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PySubcategory {
            inner: Subcategory::new(parse_ring(ring)?, finite, divisible).map_err(err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("Subcategory({:?})", modclose::torsion::object_labels(&self.inner))
    }
}

#[pyclass(name = "ClosureResult", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyClosureResult {
    closure: PySubmodule,
    dense: bool,
    closed: bool,
}

#[pyclass(name = "HomGroup", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyHomGroup {
    /// Cyclic orders of the generators; 0 marks a free summand.
    structure: Vec<BigInt>,
    /// Generator matrices as rows.
    generators: Vec<Vec<Vec<BigInt>>>,
}

#[pyclass(name = "Snf", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PySnf {
    d: Vec<BigInt>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    rank: usize,
}

#[pyclass(name = "TorsionTheoryReport", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyTorsionReport {
    all_passed: bool,
    /// `(name, passed, counterexample)` for every check.
    checks: Vec<(String, bool, Option<String>)>,
    universe: Vec<Vec<BigInt>>,
    torsion_class: Vec<usize>,
    torsion_free_class: Vec<usize>,
}

#[pyfunction]
fn regular_closure(m: &PyModule_, n: &PySubmodule, cat: &PySubcategory) -> PyResult<PyClosureResult> {
    let r = modclose::closure::regular_closure(&m.inner, &n.inner, &cat.inner).map_err(err)?;
    Ok(PyClosureResult {
        closure: PySubmodule { inner: r.closure },
        dense: r.dense,
        closed: r.closed,
    })
}

#[pyfunction]
fn is_dense(m: &PyModule_, n: &PySubmodule, cat: &PySubcategory) -> PyResult<bool> {
    modclose::closure::is_dense(&m.inner, &n.inner, &cat.inner).map_err(err)
}

#[pyfunction]
fn is_closed(m: &PyModule_, n: &PySubmodule, cat: &PySubcategory) -> PyResult<bool> {
    modclose::closure::is_closed(&m.inner, &n.inner, &cat.inner).map_err(err)
}

#[pyfunction]
fn hom_group(dom: &PyModule_, cod: &PyModule_) -> PyResult<PyHomGroup> {
    let h = modclose::hom::hom_group(&dom.inner, &cod.inner).map_err(err)?;
    Ok(PyHomGroup {
        structure: h.structure.clone(),
        generators: h.generators.iter().map(|g| g.matrix().to_rows()).collect(),
    })
}

#[pyfunction]
fn is_injective(m: &PyModule_) -> PyResult<bool> {
    modclose::injective::is_injective_module(&m.inner).map_err(err)
}

#[pyfunction]
fn injective_by_structure(m: &PyModule_) -> PyResult<bool> {
    modclose::injective::injective_by_structure(&m.inner).map_err(err)
}

#[pyfunction]
fn is_bounded(m: &PyModule_) -> PyResult<bool> {
    modclose::torsion::is_bounded(&m.inner).map_err(err)
}

#[pyfunction]
fn free_summand_rank(m: &PyModule_) -> PyResult<usize> {
    modclose::torsion::free_summand_rank(&m.inner).map_err(err)
}

/// `"torsion"`, `"torsion-free"` or `"mixed"`.
#[pyfunction]
fn classify(m: &PyModule_, cat: &PySubcategory) -> PyResult<&'static str> {
    Ok(match modclose::torsion::classify(&m.inner, &cat.inner).map_err(err)? {
        TorsionClass::Torsion => "torsion",
        TorsionClass::TorsionFree => "torsion-free",
        TorsionClass::Mixed => "mixed",
    })
}

#[pyfunction]
fn torsion_radical(m: &PyModule_, cat: &PySubcategory) -> PyResult<PySubmodule> {
    Ok(PySubmodule {
        inner: modclose::torsion::torsion_radical(&m.inner, &cat.inner).map_err(err)?,
    })
}

#[pyfunction]
fn verify_torsion_theory(cat: &PySubcategory, max_gens: usize, max_order: u64) -> PyResult<PyTorsionReport> {
    let universe =
        ModuleUniverse::exhaustive(cat.inner.ring().clone(), max_gens, max_order).map_err(err)?;
    let rep = modclose::torsion::verify_torsion_theory(&universe, &cat.inner).map_err(err)?;
    Ok(PyTorsionReport {
        all_passed: rep.all_passed(),
        checks: rep
            .checks
            .iter()
            .map(|c| (c.name.to_string(), c.passed, c.counterexample.clone()))
            .collect(),
        universe: universe
            .objects()
            .iter()
            .map(|m| m.invariant_factors().to_vec())
            .collect(),
        torsion_class: rep.t_members.clone(),
        torsion_free_class: rep.f_members.clone(),
    })
}

/// Smith normal form of a matrix given as rows.
#[pyfunction]
fn snf(rows: Vec<Vec<BigInt>>) -> PyResult<PySnf> {
    let a = if rows.is_empty() {
        IntMatrix::zeros(0, 0)
    } else {
        IntMatrix::from_rows(&rows).map_err(err)?
    };
    let r = modclose::linalg::smith_normal_form(&a);
    Ok(PySnf {
        d: r.diagonal(),
        u: r.u.to_rows(),
        v: r.v.to_rows(),
        rank: r.rank(),
    })
}

#[pymodule]
pub fn modclose_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyModule_>()?;
    m.add_class::<PySubmodule>()?;
    m.add_class::<PySubcategory>()?;
    m.add_class::<PyClosureResult>()?;
    m.add_class::<PyHomGroup>()?;
    m.add_class::<PySnf>()?;
    m.add_class::<PyTorsionReport>()?;
    m.add_function(wrap_pyfunction!(regular_closure, m)?)?;
    m.add_function(wrap_pyfunction!(is_dense, m)?)?;
    m.add_function(wrap_pyfunction!(is_closed, m)?)?;
    m.add_function(wrap_pyfunction!(hom_group, m)?)?;
    m.add_function(wrap_pyfunction!(is_injective, m)?)?;
    m.add_function(wrap_pyfunction!(injective_by_structure, m)?)?;
    m.add_function(wrap_pyfunction!(is_bounded, m)?)?;
    m.add_function(wrap_pyfunction!(free_summand_rank, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(torsion_radical, m)?)?;
    m.add_function(wrap_pyfunction!(verify_torsion_theory, m)?)?;
    m.add_function(wrap_pyfunction!(snf, m)?)?;
    Ok(())
}
