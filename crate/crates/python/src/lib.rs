//! Python bindings for the `hyperset` core crate.

use std::collections::BTreeSet;

use hyperset::expr::{parse_pair_set, parse_predicate, parse_set};
use hyperset::profinite::{self, ProfinitePoint};
use hyperset::ramsey::{self, Coloring, FunctionalGraph, LinearEquation};
use hyperset::semilinear::SemilinearSet;
use hyperset::{pairs, windows};
use num_bigint::BigUint;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn domain_err(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn ratio(r: hyperset::Density) -> (u64, u64) {
    (*r.numer(), *r.denom())
}

/// Eventually-periodic subset of the naturals.
#[pyclass(name = "SemilinearSet", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PySet {
    inner: SemilinearSet,
}

#[pymethods]
impl PySet {
    #[new]
    fn new(expr: &str) -> PyResult<Self> {
        Ok(PySet {
            inner: parse_set(expr).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn residue_class(residue: u64, modulus: u64) -> PyResult<Self> {
        Ok(PySet {
            inner: SemilinearSet::residue_class(residue, modulus).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn finite(elements: Vec<u64>) -> Self {
        PySet {
            inner: SemilinearSet::finite(elements),
        }
    }

    #[getter]
    fn threshold(&self) -> u64 {
        self.inner.threshold()
    }

    #[getter]
    fn period(&self) -> u64 {
        self.inner.period()
    }

    #[getter]
    fn pattern(&self) -> Vec<u64> {
        self.inner.pattern().to_vec()
    }

    fn __contains__(&self, n: u64) -> bool {
        self.inner.contains(n)
    }

    fn __or__(&self, other: &PySet) -> PySet {
        PySet {
            inner: self.inner.union(&other.inner),
        }
    }

    fn __and__(&self, other: &PySet) -> PySet {
        PySet {
            inner: self.inner.intersect(&other.inner),
        }
    }

    fn __sub__(&self, other: &PySet) -> PySet {
        PySet {
            inner: self.inner.difference(&other.inner),
        }
    }

    fn __invert__(&self) -> PySet {
        PySet {
            inner: self.inner.complement(),
        }
    }

    /// `A - k = {n : n + k in A}`.
    fn shift_left(&self, k: u64) -> PySet {
        PySet {
            inner: self.inner.shift_left(k),
        }
    }

    /// `A + k`.
    fn shift_right(&self, k: u64) -> PySet {
        PySet {
            inner: self.inner.shift_right(k),
        }
    }

    fn rotate(&self, r: u64) -> PySet {
        PySet {
            inner: self.inner.rotate(r),
        }
    }

    fn schnirelmann(&self) -> (u64, u64) {
        ratio(self.inner.schnirelmann())
    }

    fn asymptotic(&self) -> (u64, u64) {
        ratio(self.inner.asymptotic())
    }

    fn banach(&self) -> (u64, u64) {
        ratio(self.inner.banach())
    }

    fn best_rotation(&self) -> PyResult<u64> {
        self.inner.best_rotation().map_err(domain_err)
    }

    fn members_below(&self, n: u64) -> Vec<u64> {
        (0..n).filter(|&k| self.inner.contains(k)).collect()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("SemilinearSet({:?})", self.inner.to_string())
    }
}

/// Residue system `(M, r)` standing in for an infinite hypernatural.
#[pyclass(name = "ProfinitePoint", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPoint {
    inner: ProfinitePoint,
}

#[pymethods]
impl PyPoint {
    #[new]
    fn new(modulus: u64, residue: u64) -> PyResult<Self> {
        Ok(PyPoint {
            inner: ProfinitePoint::new(modulus, residue).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyPoint {
            inner: text.parse().map_err(value_err)?,
        })
    }

    #[getter]
    fn modulus(&self) -> u64 {
        self.inner.modulus()
    }

    #[getter]
    fn residue(&self) -> u64 {
        self.inner.residue()
    }

    fn reduce(&self, divisor: u64) -> PyResult<PyPoint> {
        Ok(PyPoint {
            inner: self.inner.reduce(divisor).map_err(domain_err)?,
        })
    }

    fn __add__(&self, other: &PyPoint) -> PyResult<PyPoint> {
        Ok(PyPoint {
            inner: self.inner.add(&other.inner).map_err(domain_err)?,
        })
    }

    fn __sub__(&self, other: &PyPoint) -> PyResult<PyPoint> {
        Ok(PyPoint {
            inner: self.inner.sub(&other.inner).map_err(domain_err)?,
        })
    }

    fn is_idempotent(&self) -> bool {
        self.inner.is_idempotent()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "ProfinitePoint({}, {})",
            self.inner.modulus(),
            self.inner.residue()
        )
    }
}

#[pyfunction]
fn member_set(set: &PySet, point: &PyPoint) -> PyResult<bool> {
    profinite::member_set(&set.inner, &point.inner).map_err(domain_err)
}

#[pyfunction]
fn hyper_shift(set: &PySet, point: &PyPoint) -> PyResult<PySet> {
    Ok(PySet {
        inner: profinite::hyper_shift(&set.inner, &point.inner).map_err(domain_err)?,
    })
}

#[pyfunction]
fn ultrafilter_shift(set: &PySet, point: &PyPoint) -> PyResult<PySet> {
    Ok(PySet {
        inner: profinite::ultrafilter_shift(&set.inner, &point.inner).map_err(domain_err)?,
    })
}

#[pyfunction]
fn pseudo_sum_member(set: &PySet, gamma: &PyPoint, delta: &PyPoint) -> PyResult<bool> {
    profinite::pseudo_sum_member(&set.inner, &gamma.inner, &delta.inner).map_err(domain_err)
}

#[pyfunction]
fn star_member(set: &PySet, gamma: &PyPoint, delta: &PyPoint) -> PyResult<bool> {
    profinite::star_member(&set.inner, &gamma.inner, &delta.inner).map_err(domain_err)
}

/// Membership of a pair-set expression in the tensor product.
#[pyfunction]
fn tensor_member(pair_set: &str, gamma: &PyPoint, delta: &PyPoint) -> PyResult<bool> {
    let x = parse_pair_set(pair_set).map_err(value_err)?;
    pairs::tensor_member(&x, &gamma.inner, &delta.inner).map_err(domain_err)
}

#[pyfunction]
fn exact_embed(a: &PySet, b: &PySet) -> Option<(String, u64)> {
    windows::exact_embed_decide(&a.inner, &b.inner).map(|w| match w {
        windows::EmbedWitness::FiniteShift(g) => ("finite-shift".to_string(), g),
        windows::EmbedWitness::Rotation(r) => ("rotation".to_string(), r),
    })
}

/// Window `{n < length : g + n in P}` of a predicate expression, as booleans.
#[pyfunction]
fn finite_hyper_shift(expr: &str, g: BigUint, length: usize) -> PyResult<Vec<bool>> {
    let p = parse_predicate(expr).map_err(value_err)?;
    let w = windows::finite_hyper_shift(&p, &g, length).map_err(domain_err)?;
    Ok(w.bits().to_vec())
}

/// Image list `f` (vertex i maps to f[i]) to a 3-coloring with colors 1..=3.
#[pyfunction]
fn three_color(image: Vec<usize>) -> PyResult<Vec<u32>> {
    let g = FunctionalGraph::new(image).map_err(value_err)?;
    Ok(ramsey::three_color(&g).colors().to_vec())
}

#[pyfunction]
fn rado_single_pr(coeffs: Vec<i64>) -> PyResult<bool> {
    let eq = LinearEquation::new(coeffs).map_err(value_err)?;
    ramsey::rado_single_pr(&eq).map_err(domain_err)
}

/// Lexicographically first monochromatic solution, as `(values, color)`.
#[pyfunction]
fn find_mono_solution(coeffs: Vec<i64>, colors: Vec<u32>) -> PyResult<Option<(Vec<u64>, u32)>> {
    let eq = LinearEquation::new(coeffs).map_err(value_err)?;
    let c = Coloring::new(colors).map_err(value_err)?;
    Ok(ramsey::find_mono_solution(&eq, &c).map(|s| (s.values, s.color)))
}

/// `(regular, colorings_checked, avoiding coloring or None)`.
#[pyfunction]
fn exhaustive_pr_check(
    coeffs: Vec<i64>,
    n: usize,
    colors: u32,
) -> PyResult<(bool, u64, Option<Vec<u32>>)> {
    let eq = LinearEquation::new(coeffs).map_err(value_err)?;
    let cert = ramsey::exhaustive_pr_check(&eq, n, colors).map_err(domain_err)?;
    Ok((
        cert.regular,
        cert.colorings_checked,
        cert.avoiding.map(|c| c.colors().to_vec()),
    ))
}

#[pyfunction]
fn fs(elements: Vec<u64>) -> PyResult<BTreeSet<u64>> {
    ramsey::fs(&elements).map_err(domain_err)
}

#[pyfunction]
fn find_fs_set(colors: Vec<u32>, k: usize) -> PyResult<Option<(Vec<u64>, u32)>> {
    let c = Coloring::new(colors).map_err(value_err)?;
    Ok(ramsey::find_fs_set(&c, k).map(|w| (w.elements, w.color)))
}

#[pyfunction]
fn gamma_fip_witness(sets: Vec<BTreeSet<u64>>, n: u64) -> PyResult<(u64, u64)> {
    ramsey::gamma_fip_witness(&sets, n).map_err(domain_err)
}

/// `(full window, empty window)` for the squares-blocks set at even `nu`.
#[pyfunction]
fn noncomm_demo(nu: BigUint, length: usize) -> PyResult<(Vec<bool>, Vec<bool>)> {
    let r = windows::noncomm_demo(&nu, length).map_err(domain_err)?;
    Ok((
        r.full_window.bits().to_vec(),
        r.empty_window.bits().to_vec(),
    ))
}

#[pymodule]
fn hyperset_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySet>()?;
    m.add_class::<PyPoint>()?;
    m.add_function(wrap_pyfunction!(member_set, m)?)?;
    m.add_function(wrap_pyfunction!(hyper_shift, m)?)?;
    m.add_function(wrap_pyfunction!(ultrafilter_shift, m)?)?;
    m.add_function(wrap_pyfunction!(pseudo_sum_member, m)?)?;
    m.add_function(wrap_pyfunction!(star_member, m)?)?;
    m.add_function(wrap_pyfunction!(tensor_member, m)?)?;
    m.add_function(wrap_pyfunction!(exact_embed, m)?)?;
    m.add_function(wrap_pyfunction!(finite_hyper_shift, m)?)?;
    m.add_function(wrap_pyfunction!(three_color, m)?)?;
    m.add_function(wrap_pyfunction!(rado_single_pr, m)?)?;
    m.add_function(wrap_pyfunction!(find_mono_solution, m)?)?;
    m.add_function(wrap_pyfunction!(exhaustive_pr_check, m)?)?;
    m.add_function(wrap_pyfunction!(fs, m)?)?;
    m.add_function(wrap_pyfunction!(find_fs_set, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_fip_witness, m)?)?;
    m.add_function(wrap_pyfunction!(noncomm_demo, m)?)?;
    Ok(())
}
