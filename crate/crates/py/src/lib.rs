//! Python bindings: `Group`, `Loop`, `Cocycle` and `Extension` plus the
//! construction and feasibility functions.

use std::collections::BTreeMap;
use std::sync::Arc;

use linext::constructions::{
    construct_ip_cocycle_with, construct_lip_cocycle_with, construct_rip_cocycle_with,
    ConstructOptions, FixedPointMode, OrbitDecomposition, OrbitMode, Representative,
};
use linext::io::{
    emit_cocycle, emit_extension, emit_loop, fingerprint, parse_cocycle_with, parse_loop,
};
use linext::{
    analyze_properties, corpus, AbelianGroup, AutomorphismGroup, ChoiceSource, ExtensionLoop,
    FiniteLoop, LoopCocycle, Property,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: linext::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Finite abelian group with its automorphism group.
#[pyclass(frozen, name = "Group", module = "linext_py")]
struct PyGroup {
    aut: Arc<AutomorphismGroup>,
}

#[pymethods]
impl PyGroup {
    #[new]
    #[pyo3(signature = (orders, cap = linext::abelian::DEFAULT_SIZE_CAP))]
    fn new(orders: Vec<usize>, cap: usize) -> PyResult<Self> {
        let group = AbelianGroup::with_cap(&orders, cap).map_err(err)?;
        let aut = AutomorphismGroup::enumerate(&group).map_err(err)?;
        Ok(PyGroup { aut: Arc::new(aut) })
    }

    #[getter]
    fn orders(&self) -> Vec<usize> {
        self.aut.group().orders().to_vec()
    }

    #[getter]
    fn size(&self) -> usize {
        self.aut.group().size()
    }

    fn add(&self, a: usize, b: usize) -> PyResult<usize> {
        self.aut.group().add(a, b).map_err(err)
    }

    fn neg(&self, a: usize) -> PyResult<usize> {
        self.aut.group().neg(a).map_err(err)
    }

    /// Automorphism tables in canonical order.
    fn automorphisms(&self) -> Vec<Vec<usize>> {
        self.aut
            .members()
            .iter()
            .map(|f| f.table().to_vec())
            .collect()
    }

    fn __len__(&self) -> usize {
        self.size()
    }

    fn __repr__(&self) -> String {
        format!("Group([{}])", self.aut.group().spec())
    }
}

#[pyclass(frozen, name = "Loop", module = "linext_py")]
struct PyLoop {
    inner: Arc<FiniteLoop>,
}

impl PyLoop {
    fn wrap(lp: FiniteLoop) -> Self {
        PyLoop {
            inner: Arc::new(lp),
        }
    }
}

#[pymethods]
impl PyLoop {
    #[new]
    fn new(rows: Vec<Vec<usize>>) -> PyResult<Self> {
        FiniteLoop::new(rows.len(), &rows)
            .map(Self::wrap)
            .map_err(err)
    }

    #[staticmethod]
    fn cyclic(n: usize) -> PyResult<Self> {
        if n == 0 {
            return Err(PyValueError::new_err("order must be positive"));
        }
        Ok(Self::wrap(FiniteLoop::cyclic(n)))
    }

    /// A bundled loop by name, see `corpus_names()`.
    #[staticmethod]
    fn corpus(name: &str) -> PyResult<Self> {
        corpus::get(name).map(Self::wrap).map_err(err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_loop(text).map(Self::wrap).map_err(err)
    }

    fn to_text(&self) -> String {
        emit_loop(&self.inner)
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    fn rows(&self) -> Vec<Vec<usize>> {
        self.inner.rows().map(|r| r.to_vec()).collect()
    }

    fn mul(&self, x: usize, y: usize) -> PyResult<usize> {
        self.inner.try_mul(x, y).map_err(err)
    }

    fn left_div(&self, x: usize, y: usize) -> PyResult<usize> {
        self.inner.try_left_div(x, y).map_err(err)
    }

    fn right_div(&self, x: usize, y: usize) -> PyResult<usize> {
        self.inner.try_right_div(x, y).map_err(err)
    }

    fn has_lip(&self) -> bool {
        self.inner.has_lip()
    }

    fn has_rip(&self) -> bool {
        self.inner.has_rip()
    }

    fn has_ip(&self) -> bool {
        self.inner.has_ip()
    }

    fn inverse_map(&self) -> Option<Vec<usize>> {
        self.inner.inverse_map()
    }

    /// Some `x != ε` with `x * x = x⁻¹`, or None.
    fn order3_element(&self) -> PyResult<Option<usize>> {
        self.inner.order3_element().map_err(err)
    }

    fn properties(&self) -> BTreeMap<&'static str, bool> {
        let r = analyze_properties(&self.inner);
        BTreeMap::from([
            ("lip", r.has_lip),
            ("rip", r.has_rip),
            ("ip", r.has_ip),
            ("inverses_coincide", r.two_sided_inverses_coincide),
            ("commutative", r.is_commutative),
            ("associative", r.is_associative),
        ])
    }

    /// `(representative, members)` for each orbit; mode is phi, psi or gamma.
    fn orbits(&self, mode: &str) -> PyResult<Orbits> {
        let mode = match mode {
            "phi" | "lip" => OrbitMode::Phi,
            "psi" | "rip" => OrbitMode::Psi,
            "gamma" | "ip" => OrbitMode::Gamma,
            other => return Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
        };
        let d = OrbitDecomposition::new(&self.inner, mode).map_err(err)?;
        Ok(d.orbits
            .iter()
            .map(|o| (o.representative, o.members.iter().map(|m| m.pair).collect()))
            .collect())
    }

    fn sha256(&self) -> String {
        fingerprint(emit_loop(&self.inner).as_bytes())
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Loop(order={})", self.inner.size())
    }
}

type Orbits = Vec<((usize, usize), Vec<(usize, usize)>)>;

#[pyclass(frozen, name = "Cocycle", module = "linext_py")]
struct PyCocycle {
    inner: LoopCocycle,
}

fn condition(r: linext::Result<bool>) -> PyResult<bool> {
    r.map_err(err)
}

#[pymethods]
impl PyCocycle {
    /// `P` and `Q` as row-major tables of automorphism indices.
    #[new]
    fn new(
        base: &PyLoop,
        group: &PyGroup,
        p: Vec<Vec<usize>>,
        q: Vec<Vec<usize>>,
    ) -> PyResult<Self> {
        let flat = |t: Vec<Vec<usize>>| t.into_iter().flatten().collect::<Vec<_>>();
        LoopCocycle::new(base.inner.clone(), group.aut.clone(), flat(p), flat(q))
            .map(|inner| PyCocycle { inner })
            .map_err(err)
    }

    #[staticmethod]
    fn parse(text: &str, base: &PyLoop, group: &PyGroup) -> PyResult<Self> {
        parse_cocycle_with(text, base.inner.clone(), group.aut.clone())
            .map(|inner| PyCocycle { inner })
            .map_err(err)
    }

    fn to_text(&self) -> String {
        emit_cocycle(&self.inner)
    }

    fn p(&self, x: usize, y: usize) -> usize {
        self.inner.p(x, y)
    }

    fn q(&self, x: usize, y: usize) -> usize {
        self.inner.q(x, y)
    }

    fn opposite(&self) -> Self {
        PyCocycle {
            inner: self.inner.opposite(),
        }
    }

    fn is_strongly_linear(&self) -> bool {
        self.inner.is_strongly_linear()
    }

    fn is_commutative_extension(&self) -> bool {
        self.inner.is_commutative_extension()
    }

    fn check_lip_conditions(&self) -> PyResult<bool> {
        condition(self.inner.check_lip_conditions())
    }

    fn check_rip_conditions(&self) -> PyResult<bool> {
        condition(self.inner.check_rip_conditions())
    }

    fn check_ip_conditions(&self) -> PyResult<bool> {
        condition(self.inner.check_ip_conditions())
    }

    fn check_cip(&self) -> PyResult<bool> {
        condition(self.inner.check_cip())
    }

    fn check_equivariance(&self) -> PyResult<bool> {
        condition(self.inner.check_equivariance())
    }

    fn extension(&self) -> PyExtension {
        PyExtension {
            inner: self.inner.build_extension(),
        }
    }

    /// Key-value verification report; `require` lists properties that must hold.
    #[pyo3(signature = (require = Vec::new()))]
    fn verify(&self, require: Vec<String>) -> PyResult<(bool, String)> {
        let required = require
            .iter()
            .map(|s| Property::parse(s))
            .collect::<linext::Result<Vec<_>>>()
            .map_err(err)?;
        let report = linext::verify_cocycle(&self.inner, &required);
        Ok((report.passed(), report.render()))
    }
}

#[pyclass(frozen, name = "Extension", module = "linext_py")]
struct PyExtension {
    inner: ExtensionLoop,
}

#[pymethods]
impl PyExtension {
    #[getter]
    fn size(&self) -> usize {
        self.inner.as_loop().size()
    }

    fn mul(&self, x: (usize, usize), y: (usize, usize)) -> PyResult<(usize, usize)> {
        let (a, b) = (self.check(x)?, self.check(y)?);
        Ok(self.inner.decode(self.inner.as_loop().mul(a, b)))
    }

    fn encode(&self, pair: (usize, usize)) -> PyResult<usize> {
        self.check(pair)
    }

    fn decode(&self, index: usize) -> PyResult<(usize, usize)> {
        self.inner.as_loop().check(index).map_err(err)?;
        Ok(self.inner.decode(index))
    }

    fn left_inverse(&self, pair: (usize, usize)) -> PyResult<(usize, usize)> {
        self.inner
            .cocycle()
            .extension_left_inverse(pair)
            .map_err(err)
    }

    fn right_inverse(&self, pair: (usize, usize)) -> PyResult<(usize, usize)> {
        self.inner
            .cocycle()
            .extension_right_inverse(pair)
            .map_err(err)
    }

    fn kernel(&self) -> Vec<usize> {
        self.inner.kernel()
    }

    fn as_loop(&self) -> PyLoop {
        PyLoop::wrap(self.inner.as_loop().clone())
    }

    fn to_text(&self) -> String {
        emit_extension(&self.inner)
    }
}

impl PyExtension {
    fn check(&self, (xi, a): (usize, usize)) -> PyResult<usize> {
        let c = self.inner.cocycle();
        c.base().check(xi).map_err(err)?;
        c.group().check(a).map_err(err)?;
        Ok(self.inner.encode((xi, a)))
    }
}

/// Seeded construction; mode is lip, rip or ip.
#[pyfunction]
#[pyo3(signature = (base, group, mode, seed = 0, largest_representative = false, enumerate_fixed_points = false))]
fn construct(
    base: &PyLoop,
    group: &PyGroup,
    mode: &str,
    seed: u64,
    largest_representative: bool,
    enumerate_fixed_points: bool,
) -> PyResult<PyCocycle> {
    let options = ConstructOptions {
        representative: if largest_representative {
            Representative::Largest
        } else {
            Representative::Smallest
        },
        fixed_point: if enumerate_fixed_points {
            FixedPointMode::Enumerate
        } else {
            FixedPointMode::Default
        },
    };
    let mut rng = ChoiceSource::new(seed);
    let (b, a) = (base.inner.clone(), group.aut.clone());
    let c = match mode {
        "lip" => construct_lip_cocycle_with(b, a, &mut rng, options),
        "rip" => construct_rip_cocycle_with(b, a, &mut rng, options),
        "ip" => construct_ip_cocycle_with(b, a, &mut rng, options),
        other => return Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
    };
    c.map(|inner| PyCocycle { inner }).map_err(err)
}

/// `(feasible, k, h)` for a loop order.
#[pyfunction]
fn feasible(l: u64) -> PyResult<(bool, Option<u64>, Option<u64>)> {
    let c = linext::feasible_cardinality(l).map_err(err)?;
    Ok((c.feasible, c.k, c.h))
}

/// `(k, h, l)` for every feasible `2 <= l <= max_l`.
#[pyfunction]
fn enumerate_feasible(max_l: u64) -> PyResult<Vec<(u64, u64, u64)>> {
    Ok(linext::enumerate_feasible(max_l)
        .map_err(err)?
        .iter()
        .filter_map(|c| c.triple())
        .collect())
}

#[pyfunction]
fn corpus_names() -> Vec<&'static str> {
    corpus::NAMES.to_vec()
}

#[pymodule]
fn linext_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyLoop>()?;
    m.add_class::<PyCocycle>()?;
    m.add_class::<PyExtension>()?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(feasible, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_feasible, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_names, m)?)?;
    Ok(())
}
