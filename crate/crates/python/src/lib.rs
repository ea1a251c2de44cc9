//! Python module `fatdelta`: objects, morphisms, words and normal forms.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use fatdelta::factorize::{factor_full, BLOCK_NAMES};
use fatdelta::literal::{parse_morphism, parse_object, print_morphism, MorphismLiteral};
use fatdelta::render::{render_morphism, render_normal_form, Format};
use fatdelta::rewrite::{eval_word, normalize_word};
use fatdelta::{FatMorphism as Morphism, FatObject as Object, NormalForm as Form, Word as CoreWord};

create_exception!(fatdelta, FatDeltaError, PyValueError, "Invalid literal, size or composite.");

fn err(e: fatdelta::Error) -> PyErr {
    FatDeltaError::new_err(e.to_string())
}

/// An epi `[m] ->> [n]`, written as an edge string such as `"-=-"`.
#[pyclass(name = "FatObject", module = "fatdelta", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyFatObject(pub Object);

#[pymethods]
impl PyFatObject {
    #[new]
    fn new(literal: &str) -> PyResult<Self> {
        parse_object(literal).map(Self).map_err(err)
    }

    /// From the number of marked edges in each fibre.
    #[staticmethod]
    fn from_fibres(fibres: Vec<usize>) -> Self {
        Self(Object::from_fibres(&fibres))
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.m()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn eta(&self) -> Vec<usize> {
        self.0.eta().images().to_vec()
    }

    #[getter]
    fn fibres(&self) -> Vec<usize> {
        if self.0.is_unit() {
            Vec::new()
        } else {
            self.0.fibre_sizes()
        }
    }

    fn is_unit(&self) -> bool {
        self.0.is_unit()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("FatObject({:?})", self.0.to_string())
    }
}

/// A commuting square with mono top.
#[pyclass(name = "FatMorphism", module = "fatdelta", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyFatMorphism(pub Morphism);

#[pymethods]
impl PyFatMorphism {
    #[new]
    fn new(dom: &str, cod: &str, top: Vec<usize>, bot: Vec<usize>) -> PyResult<Self> {
        let lit = MorphismLiteral {
            dom: dom.to_string(),
            cod: cod.to_string(),
            top,
            bot,
        };
        Morphism::try_from(lit).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_json(json: &str) -> PyResult<Self> {
        parse_morphism(json).map(Self).map_err(err)
    }

    #[staticmethod]
    fn identity(o: &PyFatObject) -> Self {
        Self(Morphism::identity(&o.0))
    }

    #[getter]
    fn dom(&self) -> PyFatObject {
        PyFatObject(self.0.dom().clone())
    }

    #[getter]
    fn cod(&self) -> PyFatObject {
        PyFatObject(self.0.cod().clone())
    }

    #[getter]
    fn top(&self) -> Vec<usize> {
        self.0.top().images().to_vec()
    }

    #[getter]
    fn bot(&self) -> Vec<usize> {
        self.0.bot().images().to_vec()
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    /// Names of the classes this morphism belongs to.
    fn classes(&self) -> Vec<&'static str> {
        let c = self.0.class_of();
        [
            (c.diagonal, "diagonal"),
            (c.vertical, "vertical"),
            (c.horizontal, "horizontal"),
            (c.cartesian, "cartesian"),
        ]
        .into_iter()
        .filter_map(|(yes, name)| yes.then_some(name))
        .collect()
    }

    /// `self ∘ first`.
    fn after(&self, first: &PyFatMorphism) -> PyResult<Self> {
        self.0.after(&first.0).map(Self).map_err(err)
    }

    fn __matmul__(&self, first: &PyFatMorphism) -> PyResult<Self> {
        self.after(first)
    }

    fn factor(&self) -> PyResult<PyNormalForm> {
        factor_full(&self.0).map(PyNormalForm).map_err(err)
    }

    fn to_json(&self) -> String {
        print_morphism(&self.0)
    }

    #[pyo3(signature = (format = "dot"))]
    fn render(&self, format: &str) -> PyResult<String> {
        let format: Format = format.parse().map_err(err)?;
        Ok(render_morphism(&self.0, format))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("FatMorphism.from_json({:?})", self.0.to_string())
    }
}

/// A composable string of letters on an anchor, e.g. `"-- | d0;v1"`.
#[pyclass(name = "Word", module = "fatdelta", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyWord(pub CoreWord);

#[pymethods]
impl PyWord {
    #[new]
    fn new(literal: &str) -> PyResult<Self> {
        literal.parse().map(Self).map_err(err)
    }

    #[getter]
    fn anchor(&self) -> PyFatObject {
        PyFatObject(self.0.anchor.clone())
    }

    #[getter]
    fn letters(&self) -> Vec<String> {
        self.0.letters.iter().map(ToString::to_string).collect()
    }

    fn eval(&self) -> PyResult<PyFatMorphism> {
        eval_word(&self.0).map(PyFatMorphism).map_err(err)
    }

    fn normalize(&self) -> PyResult<PyNormalForm> {
        normalize_word(&self.0).map(PyNormalForm).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.letters.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word({:?})", self.0.to_string())
    }
}

#[pyclass(name = "NormalForm", module = "fatdelta", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyNormalForm(pub Form);

#[pymethods]
impl PyNormalForm {
    #[getter]
    fn anchor(&self) -> PyFatObject {
        PyFatObject(self.0.anchor.clone())
    }

    /// The six blocks by name, in application order.
    fn blocks<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (name, block) in BLOCK_NAMES.iter().zip(self.0.blocks()) {
            let letters: Vec<String> = block.iter().map(ToString::to_string).collect();
            d.set_item(name, letters)?;
        }
        Ok(d)
    }

    #[getter]
    fn letters(&self) -> Vec<String> {
        self.0.letters().iter().map(ToString::to_string).collect()
    }

    fn word(&self) -> PyWord {
        PyWord(CoreWord::from(&self.0))
    }

    fn eval(&self) -> PyResult<PyFatMorphism> {
        self.0.eval().map(PyFatMorphism).map_err(err)
    }

    #[pyo3(signature = (format = "dot"))]
    fn render(&self, format: &str) -> PyResult<String> {
        let format: Format = format.parse().map_err(err)?;
        render_normal_form(&self.0, format).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("NormalForm({:?})", self.0.to_string())
    }
}

/// A morphism (JSON), word (contains `|`) or object literal.
#[pyfunction]
fn parse(py: Python<'_>, literal: &str) -> PyResult<Py<PyAny>> {
    let t = literal.trim_start();
    Ok(if t.starts_with('{') {
        PyFatMorphism::from_json(literal)?.into_pyobject(py)?.into_any().unbind()
    } else if t.contains('|') {
        PyWord::new(literal)?.into_pyobject(py)?.into_any().unbind()
    } else {
        PyFatObject::new(literal)?.into_pyobject(py)?.into_any().unbind()
    })
}

#[pyfunction]
fn compose(second: &PyFatMorphism, first: &PyFatMorphism) -> PyResult<PyFatMorphism> {
    second.after(first)
}

#[pyfunction]
fn factor(f: &PyFatMorphism) -> PyResult<PyNormalForm> {
    f.factor()
}

/// Normal form of a word, given as a `Word` or its literal.
#[pyfunction]
fn normalize(word: &Bound<'_, PyAny>) -> PyResult<PyNormalForm> {
    to_word(word)?.normalize()
}

#[pyfunction]
fn words_equal(first: &Bound<'_, PyAny>, second: &Bound<'_, PyAny>) -> PyResult<bool> {
    fatdelta::rewrite::words_equal(&to_word(first)?.0, &to_word(second)?.0).map_err(err)
}

fn to_word(obj: &Bound<'_, PyAny>) -> PyResult<PyWord> {
    if let Ok(w) = obj.cast::<PyWord>() {
        return Ok(w.get().clone());
    }
    PyWord::new(&obj.extract::<String>()?)
}

fn to_object(obj: &Bound<'_, PyAny>) -> PyResult<PyFatObject> {
    if let Ok(o) = obj.cast::<PyFatObject>() {
        return Ok(o.get().clone());
    }
    PyFatObject::new(&obj.extract::<String>()?)
}

/// Every morphism between two objects, given as `FatObject`s or literals.
#[pyfunction]
fn hom(dom: &Bound<'_, PyAny>, cod: &Bound<'_, PyAny>) -> PyResult<Vec<PyFatMorphism>> {
    let hom = fatdelta::oracle::enum_hom(&to_object(dom)?.0, &to_object(cod)?.0);
    Ok(hom.morphisms.into_iter().map(PyFatMorphism).collect())
}

#[pyfunction]
fn objects(m: usize) -> Vec<PyFatObject> {
    fatdelta::oracle::enum_objects(m).into_iter().map(PyFatObject).collect()
}

/// Run every exhaustive check up to `max_m`; one dict per check.
#[pyfunction]
#[pyo3(signature = (max_m = 3))]
fn audit<'py>(py: Python<'py>, max_m: usize) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let report = py.detach(|| fatdelta::audit::audit(max_m));
    report
        .checks
        .iter()
        .map(|c| {
            let d = PyDict::new(py);
            d.set_item("name", &c.name)?;
            d.set_item("cases", c.cases)?;
            d.set_item("failures", c.failures)?;
            d.set_item("passed", c.passed())?;
            d.set_item("first_counterexample", &c.first_counterexample)?;
            Ok(d)
        })
        .collect()
}

#[pymodule(name = "fatdelta")]
fn fatdelta_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("FatDeltaError", m.py().get_type::<FatDeltaError>())?;
    m.add_class::<PyFatObject>()?;
    m.add_class::<PyFatMorphism>()?;
    m.add_class::<PyWord>()?;
    m.add_class::<PyNormalForm>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(compose, m)?)?;
    m.add_function(wrap_pyfunction!(factor, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(words_equal, m)?)?;
    m.add_function(wrap_pyfunction!(hom, m)?)?;
    m.add_function(wrap_pyfunction!(objects, m)?)?;
    m.add_function(wrap_pyfunction!(audit, m)?)?;
    Ok(())
}
