//! Python bindings: `import covereq`.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use covereq_core::{covsys, cyclotomic, equivalence, explorer, EquivalenceWitness, DEFAULT_MAX_PERIOD};

fn value_error(e: covereq_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite multiset of weighted residue classes `λ * a (n)`.
#[pyclass(name = "System", module = "covereq", frozen)]
struct PySystem {
    inner: covereq_core::System,
}

#[pymethods]
impl PySystem {
    /// Build from `(weight, residue, modulus)` triples.
    #[new]
    #[pyo3(signature = (classes=Vec::new()))]
    fn new(classes: Vec<(BigInt, BigInt, u64)>) -> PyResult<Self> {
        let classes = classes
            .into_iter()
            .map(|(w, a, n)| covereq_core::WeightedClass::new(w, a, n))
            .collect::<covereq_core::Result<Vec<_>>>()
            .map_err(value_error)?;
        Ok(PySystem {
            inner: covereq_core::System::new(classes),
        })
    }

    /// Build an unweighted system from `(residue, modulus)` pairs.
    #[staticmethod]
    fn unweighted(pairs: Vec<(BigInt, u64)>) -> PyResult<Self> {
        Self::new(pairs.into_iter().map(|(a, n)| (BigInt::from(1), a, n)).collect())
    }

    /// Parse the text file format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PySystem {
            inner: covsys::parse_system(text).map_err(value_error)?,
        })
    }

    /// `(weight, residue, modulus)` triples with normalized residues.
    fn classes(&self) -> Vec<(BigInt, u64, u64)> {
        self.inner
            .classes()
            .iter()
            .map(|c| (c.weight().clone(), c.residue(), c.modulus()))
            .collect()
    }

    fn moduli(&self) -> Vec<u64> {
        self.inner.moduli()
    }

    fn period(&self) -> BigInt {
        covsys::period(&self.inner)
    }

    fn is_unweighted(&self) -> bool {
        self.inner.is_unweighted()
    }

    fn covering_value(&self, x: BigInt) -> BigInt {
        covsys::covering_value(&self.inner, &x)
    }

    /// The covering function over one period.
    #[pyo3(signature = (max_period=DEFAULT_MAX_PERIOD))]
    fn table(&self, max_period: u64) -> PyResult<Vec<BigInt>> {
        let table = covsys::covering_table(&self.inner, max_period).map_err(value_error)?;
        Ok(table.values().to_vec())
    }

    fn union(&self, other: &PySystem) -> PySystem {
        PySystem {
            inner: self.inner.union(&other.inner),
        }
    }

    /// `self ⊕ (−other)`.
    fn difference(&self, other: &PySystem) -> PySystem {
        PySystem {
            inner: self.inner.difference(&other.inner),
        }
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        let classes: Vec<String> = self.inner.classes().iter().map(ToString::to_string).collect();
        format!("System([{}])", classes.join(", "))
    }

    fn __eq__(&self, other: &PySystem) -> bool {
        self.inner.canonical() == other.inner.canonical()
    }
}

/// The prime, |S| and combined sum behind a verdict.
#[pyclass(name = "Witness", module = "covereq", frozen, get_all)]
struct PyWitness {
    prime: u64,
    s_cardinality: u64,
    verdict: bool,
    /// Power-basis coefficients of the combined sum, as `"n/d"` strings.
    coefficients: Vec<String>,
}

#[pymethods]
impl PyWitness {
    fn __repr__(&self) -> String {
        format!(
            "Witness(prime={}, s_cardinality={}, verdict={})",
            self.prime,
            self.s_cardinality,
            if self.verdict { "True" } else { "False" }
        )
    }
}

impl From<EquivalenceWitness> for PyWitness {
    fn from(w: EquivalenceWitness) -> Self {
        PyWitness {
            prime: w.prime,
            s_cardinality: w.s_cardinality,
            verdict: w.verdict,
            coefficients: w.combined_sum.coefficients().iter().map(ToString::to_string).collect(),
        }
    }
}

/// `(verdict, witness)` for `a ∼ b`.
#[pyfunction]
#[pyo3(signature = (a, b, prime=None))]
fn are_equivalent(a: &PySystem, b: &PySystem, prime: Option<u64>) -> PyResult<(bool, PyWitness)> {
    let (verdict, witness) = match prime {
        Some(p) => equivalence::are_equivalent_with_prime(&a.inner, &b.inner, p),
        None => equivalence::are_equivalent(&a.inner, &b.inner),
    }
    .map_err(value_error)?;
    Ok((verdict, witness.into()))
}

/// `(verdict, witness)` for `w ≡ m` on an unweighted system.
#[pyfunction]
#[pyo3(signature = (system, m, prime=None))]
fn is_exact_m_cover(system: &PySystem, m: u64, prime: Option<u64>) -> PyResult<(bool, PyWitness)> {
    let (verdict, witness) = match prime {
        Some(p) => equivalence::is_exact_m_cover_with_prime(&system.inner, m, p),
        None => equivalence::is_exact_m_cover(&system.inner, m),
    }
    .map_err(value_error)?;
    Ok((verdict, witness.into()))
}

/// Table comparison over one common period.
#[pyfunction]
#[pyo3(signature = (a, b, max_period=DEFAULT_MAX_PERIOD))]
fn equivalent_bruteforce(a: &PySystem, b: &PySystem, max_period: u64) -> PyResult<bool> {
    covsys::equivalent_bruteforce(&a.inner, &b.inner, max_period).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (system, m, max_period=DEFAULT_MAX_PERIOD))]
fn exact_m_cover_bruteforce(system: &PySystem, m: u64, max_period: u64) -> PyResult<bool> {
    covsys::exact_m_cover_bruteforce(&system.inner, m, max_period).map_err(value_error)
}

/// `(|S|, fractions)` with the fractions as sorted `"n/d"` strings.
#[pyfunction]
fn s_set(moduli: Vec<u64>) -> PyResult<(u64, Vec<String>)> {
    let s = covsys::s_set(&moduli).map_err(value_error)?;
    Ok((s.cardinality(), s.fractions().map(ToString::to_string).collect()))
}

/// `(p, |S|)` with `p` the least prime above `|S|`.
#[pyfunction]
fn choose_prime(moduli: Vec<u64>) -> PyResult<(u64, u64)> {
    equivalence::choose_prime(&moduli).map_err(value_error)
}

/// Integer coefficients of Φ_m, lowest degree first.
#[pyfunction]
fn cyclotomic_polynomial(m: u64) -> PyResult<Vec<BigInt>> {
    Ok(cyclotomic::cyclotomic_polynomial(m)
        .map_err(value_error)?
        .coefficients()
        .to_vec())
}

/// `(classes, |S|)` for the vanishing composite-order sum, classes as
/// `(residue, modulus)`.
#[pyfunction]
fn composite_counterexample(q: u64, prime_divisor: u64, n: u64) -> PyResult<(Vec<(BigInt, u64)>, u64)> {
    let example = explorer::composite_counterexample(q, prime_divisor, n).map_err(value_error)?;
    let classes = example.classes.iter().map(|c| (c.residue.clone(), c.modulus)).collect();
    Ok((classes, example.s_cardinality))
}

/// `(holds, witnesses)` with witnesses in the line format of the CLI.
#[pyfunction]
fn go_search(py: Python<'_>, q: u64, k_max: u64) -> PyResult<(bool, Vec<String>)> {
    let report = py.detach(|| explorer::go_search(q, k_max)).map_err(value_error)?;
    Ok((report.verdict(), report.witnesses.iter().map(ToString::to_string).collect()))
}

#[pymodule]
fn covereq(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySystem>()?;
    m.add_class::<PyWitness>()?;
    m.add_function(wrap_pyfunction!(are_equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(is_exact_m_cover, m)?)?;
    m.add_function(wrap_pyfunction!(equivalent_bruteforce, m)?)?;
    m.add_function(wrap_pyfunction!(exact_m_cover_bruteforce, m)?)?;
    m.add_function(wrap_pyfunction!(s_set, m)?)?;
    m.add_function(wrap_pyfunction!(choose_prime, m)?)?;
    m.add_function(wrap_pyfunction!(cyclotomic_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(composite_counterexample, m)?)?;
    m.add_function(wrap_pyfunction!(go_search, m)?)?;
    Ok(())
}
