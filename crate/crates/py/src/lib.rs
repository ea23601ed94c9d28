use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use homfly_core::lmv::{self, GTable as CoreGTable, LmvReport as CoreLmvReport};
use homfly_core::torus::{self, ColoredInvariant as CoreInvariant, TorusLinkSpec};
use homfly_core::{hecke, selftest, symchar, symfunc, Partition as CorePartition, PartitionTuple};

fn err(e: homfly_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("core types serialize")
}

fn tuple(colors: &str) -> PyResult<PartitionTuple> {
    colors.parse().map_err(err)
}

#[pyclass(frozen, skip_from_py_object, name = "Partition")]
#[derive(Clone)]
struct Partition(CorePartition);

#[pymethods]
impl Partition {
    /// Parses "3,1"; the empty string is the empty partition.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(Partition).map_err(err)
    }

    fn parts(&self) -> Vec<u32> {
        self.0.parts().to_vec()
    }

    fn size(&self) -> u32 {
        self.0.size()
    }

    fn conjugate(&self) -> Self {
        Partition(self.0.conjugate())
    }

    /// Twice the content sum.
    fn kappa(&self) -> i64 {
        homfly_core::combinatorics::kappa(&self.0)
    }

    fn s_star(&self) -> String {
        symfunc::s_star_hook(&self.0).to_string()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Partition('{}')", self.0)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

#[pyclass(frozen, skip_from_py_object, name = "TorusLink")]
#[derive(Clone)]
struct TorusLink(TorusLinkSpec);

#[pymethods]
impl TorusLink {
    /// `T(rl, kl)`: `l` parallel copies of the `(r, k)` torus knot.
    #[new]
    #[pyo3(signature = (r, k, l = 1))]
    fn new(r: u32, k: i64, l: u32) -> PyResult<Self> {
        TorusLinkSpec::new(r, k, l).map(TorusLink).map_err(err)
    }

    #[getter]
    fn r(&self) -> u32 {
        self.0.r
    }

    #[getter]
    fn k(&self) -> i64 {
        self.0.k
    }

    #[getter]
    fn l(&self) -> u32 {
        self.0.l
    }

    fn homfly(&self) -> PyResult<String> {
        torus::homfly_polynomial(&self.0)
            .map(|p| p.to_string())
            .map_err(err)
    }

    fn colored(&self, colors: &str) -> PyResult<ColoredInvariant> {
        torus::colored_homfly_torus(&self.0, &tuple(colors)?)
            .map(ColoredInvariant)
            .map_err(err)
    }

    /// The same invariant recomputed from Hecke algebra braid matrices.
    fn colored_from_braid(&self, colors: &str) -> PyResult<ColoredInvariant> {
        hecke::cor45_pipeline(&self.0, &tuple(colors)?)
            .map(ColoredInvariant)
            .map_err(err)
    }

    #[pyo3(signature = (caps = None))]
    fn lmv(&self, caps: Option<u32>) -> PyResult<LmvReport> {
        let total = caps.unwrap_or(if self.0.l == 1 { 6 } else { 4 });
        lmv::lmv_report(&self.0, &vec![total; self.0.l as usize], total)
            .map(LmvReport)
            .map_err(err)
    }

    fn g_table(&self, sizes: Vec<u32>) -> PyResult<GTable> {
        lmv::extract_g(&self.0, &sizes).map(GTable).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("TorusLink(r={}, k={}, l={})", self.0.r, self.0.k, self.0.l)
    }
}

#[pyclass(frozen, name = "ColoredInvariant")]
struct ColoredInvariant(CoreInvariant);

#[pymethods]
impl ColoredInvariant {
    #[getter]
    fn value(&self) -> String {
        self.0.value.to_string()
    }

    #[getter]
    fn nu_exp(&self) -> String {
        self.0.nu_exp.to_string()
    }

    /// `(lambda, c, t_exp)` triples of the s*-basis expansion.
    #[getter]
    fn sstar_basis(&self) -> Vec<(String, i64, String)> {
        self.0
            .sstar_basis
            .iter()
            .map(|t| (t.lambda.to_string(), t.c, t.t_exp.to_string()))
            .collect()
    }

    fn to_json(&self) -> String {
        to_json(&self.0)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0.value == other.0.value
    }

    fn __str__(&self) -> String {
        self.0.value.to_string()
    }
}

#[pyclass(frozen, name = "LmvReport")]
struct LmvReport(CoreLmvReport);

#[pymethods]
impl LmvReport {
    fn passes(&self) -> bool {
        self.0.bps.passes()
    }

    /// `(mu, g, Q, N)` with `Q` and `N` as exact rational strings.
    fn bps(&self) -> Vec<(String, u32, String, String)> {
        self.0
            .bps
            .entries
            .iter()
            .map(|e| (e.mu.to_string(), e.g, e.q.to_string(), e.n.to_string()))
            .collect()
    }

    fn fhat(&self) -> Vec<(String, String)> {
        self.0
            .fhat
            .entries
            .iter()
            .map(|(mu, v)| (mu.to_string(), v.to_string()))
            .collect()
    }

    fn findings(&self) -> Vec<String> {
        self.0.bps.findings.iter().map(to_json).collect()
    }

    fn to_json(&self) -> String {
        to_json(&self.0)
    }
}

#[pyclass(frozen, name = "GTable")]
struct GTable(CoreGTable);

#[pymethods]
impl GTable {
    fn passes(&self) -> bool {
        self.0.passes()
    }

    /// `(mu, lambda, g)` with `g` a Laurent polynomial in `u` as text.
    fn entries(&self) -> Vec<(String, String, String)> {
        self.0
            .entries
            .iter()
            .flat_map(|(mu, row)| {
                row.iter()
                    .map(move |(lambda, g)| (mu.to_string(), lambda.to_string(), g.to_string()))
            })
            .collect()
    }

    fn to_json(&self) -> String {
        to_json(&self.0)
    }
}

/// `chi^lambda` on the class of cycle type `mu`.
#[pyfunction]
fn character(lam: &Partition, mu: &Partition) -> PyResult<i64> {
    symchar::character(&lam.0, &mu.0).map_err(err)
}

/// Nonzero coefficients of the stretched product for the given colors.
#[pyfunction]
fn stretched_lr(colors: &str, r: u32) -> PyResult<Vec<(String, i64)>> {
    Ok(symfunc::stretched_lr(&tuple(colors)?, r)
        .coeffs
        .into_iter()
        .map(|(p, c)| (p.to_string(), c))
        .collect())
}

/// `(passed, total)` over the braid-matrix oracle checks.
#[pyfunction]
#[pyo3(signature = (max_cells = 6))]
fn oracle(max_cells: u32) -> (usize, usize) {
    let checks = selftest::oracle_checks(max_cells);
    (checks.iter().filter(|c| c.passed).count(), checks.len())
}

/// `(id, title, passed)` for each requested acceptance criterion.
#[pyfunction]
fn run_criteria(ids: Vec<u32>) -> Vec<(u32, String, bool)> {
    ids.into_iter()
        .filter(|id| selftest::CRITERIA.iter().any(|c| c.0 == *id))
        .map(|id| {
            let o = selftest::run(id);
            (o.id, o.title.to_string(), o.passed)
        })
        .collect()
}

#[pymodule]
fn homfly(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Partition>()?;
    m.add_class::<TorusLink>()?;
    m.add_class::<ColoredInvariant>()?;
    m.add_class::<LmvReport>()?;
    m.add_class::<GTable>()?;
    m.add_function(wrap_pyfunction!(character, m)?)?;
    m.add_function(wrap_pyfunction!(stretched_lr, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(run_criteria, m)?)?;
    Ok(())
}
