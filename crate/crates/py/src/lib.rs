//! Python bindings: the main types and operations of the library, exposed as
//! plain functions plus a `FusionRing` class. Exact rationals cross the
//! boundary as `"p/q"` strings, ranks as Python ints, weights and partitions
//! as comma-separated strings, graphs as the JSON document format.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use cbfact::curve::{DualGraph, EdgeLabeling};
use cbfact::grading::ConeSpec;
use cbfact::partitions::trim;
use cbfact::polarize::{ChoiceSpec, EpsilonChoice};
use cbfact::poly::PolyMatrix;
use cbfact::rat::{format_rat, parse_rat};
use cbfact::weights::Weight;
use cbfact::{factorize, fusion, grading, polarize, qgrass, snf};

fn err<T>(r: cbfact::Result<T>) -> PyResult<T> {
    r.map_err(|e| PyValueError::new_err(e.to_string()))
}

fn parse_weight(s: &str) -> PyResult<Weight> {
    err(Weight::parse(s))
}

fn load_graph(json: &str) -> PyResult<DualGraph> {
    let g = err(DualGraph::from_json(json))?;
    err(g.validate())?;
    Ok(g)
}

/// The fusion ring of sl_r at a level: weights, products, ranks.
#[pyclass]
struct FusionRing {
    rank: usize,
    level: u32,
}

#[pymethods]
impl FusionRing {
    #[new]
    fn new(rank: usize, level: u32) -> PyResult<Self> {
        err(fusion::FusionTable::shared(rank, level))?;
        Ok(FusionRing { rank, level })
    }

    /// All level weights in lexicographic order, as part strings.
    fn weights(&self) -> PyResult<Vec<String>> {
        let t = err(fusion::FusionTable::shared(self.rank, self.level))?;
        Ok(t.weights().iter().map(|w| w.to_string()).collect())
    }

    /// Fusion product expansion as (weight, coefficient) pairs.
    fn product(&self, lhs: &str, rhs: &str) -> PyResult<Vec<(String, i64)>> {
        let l = parse_weight(lhs)?;
        let r = parse_weight(rhs)?;
        let exp = err(fusion::fusion_affine_fold(self.rank, self.level, &l, &r))?;
        Ok(exp.into_iter().map(|(w, c)| (w.to_string(), c)).collect())
    }

    /// Rank of the genus-zero three-point block.
    fn three_point_rank(&self, a: &str, b: &str, c: &str) -> PyResult<i64> {
        err(fusion::three_point_rank(
            self.rank,
            self.level,
            &parse_weight(a)?,
            &parse_weight(b)?,
            &parse_weight(c)?,
        ))
    }

    /// Handle operator matrix on the lexicographic weight basis.
    fn handle_matrix(&self) -> PyResult<Vec<Vec<i64>>> {
        Ok(err(fusion::FusionTable::shared(self.rank, self.level))?.handle_matrix())
    }

    /// Rank on a smooth genus-h component with the given insertions.
    fn rank_smooth(&self, genus: u32, insertions: Vec<String>) -> PyResult<BigInt> {
        let ws = insertions
            .iter()
            .map(|s| parse_weight(s))
            .collect::<PyResult<Vec<_>>>()?;
        err(factorize::rank_smooth(self.rank, self.level, genus, &ws))
    }

    fn __repr__(&self) -> String {
        format!("FusionRing(rank={}, level={})", self.rank, self.level)
    }
}

/// Dual weight of a comma-separated weight.
#[pyfunction]
fn weight_dual(w: &str) -> PyResult<String> {
    Ok(parse_weight(w)?.dual().to_string())
}

/// Pairing of a weight with x_{r-1}, as an exact rational string.
#[pyfunction]
fn x_pairing(w: &str) -> PyResult<String> {
    Ok(format_rat(&parse_weight(w)?.x_pairing()))
}

#[pyfunction]
fn in_root_lattice(w: &str) -> PyResult<bool> {
    Ok(parse_weight(w)?.in_root_lattice())
}

/// The admissible perturbation interval (low, high) for a weight at a level.
#[pyfunction]
fn epsilon_interval(w: &str, level: u32) -> PyResult<(String, String)> {
    let p = err(cbfact::weights::epsilon_pair(&parse_weight(w)?, level))?;
    Ok((format_rat(&p.low), format_rat(&p.high)))
}

#[pyfunction]
fn epsilon_midpoint(w: &str, level: u32) -> PyResult<String> {
    Ok(format_rat(&err(cbfact::weights::epsilon_midpoint(
        &parse_weight(w)?,
        level,
    ))?))
}

/// Rank of the block space at a nodal curve given as a JSON graph document.
#[pyfunction]
fn cb_rank(graph_json: &str, rank: usize, level: u32) -> PyResult<BigInt> {
    err(factorize::rank_nodal(&load_graph(graph_json)?, rank, level))
}

/// Decomposition table rows as ("w|w|..", contribution) pairs.
#[pyfunction]
fn cb_table(graph_json: &str, rank: usize, level: u32) -> PyResult<Vec<(String, BigInt)>> {
    let graph = load_graph(graph_json)?;
    let rows = err(factorize::decomposition_table(&graph, rank, level))?;
    Ok(rows
        .into_iter()
        .map(|row| {
            let key = row
                .labeling
                .edge_weights
                .iter()
                .map(|w| w.to_string())
                .collect::<Vec<_>>()
                .join("|");
            (key, row.contribution)
        })
        .collect())
}

/// Graded ranks at levels 0, l0, 2*l0, ..., max*l0.
#[pyfunction]
fn hilbert(graph_json: &str, rank: usize, l0: u32, max: u32) -> PyResult<Vec<BigInt>> {
    err(grading::hilbert_function(
        &load_graph(graph_json)?,
        rank,
        l0,
        max,
    ))
}

/// Exact quasi-polynomial fit; returns (period, constituents) with each
/// constituent a list of ascending rational coefficient strings.
#[pyfunction]
#[pyo3(signature = (values, max_period=4, max_degree=6))]
fn qp_fit(
    values: Vec<BigInt>,
    max_period: usize,
    max_degree: usize,
) -> PyResult<(usize, Vec<Vec<String>>)> {
    let rats: Vec<_> = values
        .into_iter()
        .map(cbfact::rat::Rat::from_integer)
        .collect();
    let qp = err(grading::qp_fit(&rats, max_period, max_degree))?;
    let constituents = qp
        .constituents
        .iter()
        .map(|p| p.coeffs().iter().map(format_rat).collect())
        .collect();
    Ok((qp.period, constituents))
}

/// Quantum power of the coupling class of Gr(k, n); terms are
/// (partition, q_exponent, coefficient).
#[pyfunction]
fn quantum_power(k: usize, n: usize, e: u32) -> PyResult<Vec<(String, u32, BigInt)>> {
    let class = err(qgrass::coupling_class(k, n))?;
    let power = err(qgrass::power_with_qdegrees(&class, e))?;
    Ok(power
        .terms()
        .map(|(p, q, c)| {
            let t = trim(p);
            let field = if t.is_empty() {
                "0".to_string()
            } else {
                t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            };
            (field, q, c.clone())
        })
        .collect())
}

/// Smallest Gromov-Witten q-degree in the e-th power of the coupling class,
/// with the nonvanishing verdict c <= e - 2.
#[pyfunction]
fn gw_nonvanishing(k: usize, n: usize, e: u32) -> PyResult<(bool, Option<u32>)> {
    err(qgrass::gw_nonvanishing_bound(k, n, e))
}

/// Horn-type inequality for a genus-zero vertex.
#[pyfunction]
fn horn_check(rank: usize, level: u32, weights: Vec<String>) -> PyResult<bool> {
    let ws = weights
        .iter()
        .map(|s| parse_weight(s))
        .collect::<PyResult<Vec<_>>>()?;
    err(qgrass::horn_inequality_check(rank, level, &ws))
}

/// Covering pair for a labeling; returns per-component
/// (a_weight, degree, integral) triples with rationals as strings.
#[pyfunction]
#[pyo3(signature = (graph_json, rank, level, labeling, midpoint=false))]
fn cover_pair(
    graph_json: &str,
    rank: usize,
    level: u32,
    labeling: Vec<String>,
    midpoint: bool,
) -> PyResult<Vec<(String, String, bool)>> {
    let graph = load_graph(graph_json)?;
    let weights = labeling
        .iter()
        .map(|s| parse_weight(s))
        .collect::<PyResult<Vec<_>>>()?;
    if weights.iter().any(|w| w.rank() != rank) {
        return Err(PyValueError::new_err(format!(
            "labeling weights must have {rank} parts"
        )));
    }
    let choice = if midpoint {
        ChoiceSpec::Uniform(EpsilonChoice::Midpoint)
    } else {
        ChoiceSpec::Uniform(EpsilonChoice::Low)
    };
    let cp = err(polarize::build_covering_pair(
        &graph,
        level,
        &EdgeLabeling {
            edge_weights: weights,
        },
        &choice,
    ))?;
    Ok(cp
        .components
        .iter()
        .map(|c| {
            (
                format_rat(&c.a_weight),
                format_rat(&c.degree),
                c.integral,
            )
        })
        .collect())
}

/// Pole-order bound for diagonal gluing data, as a rational string.
#[pyfunction]
fn pole_order_bound(mu: &str, alpha: Vec<u32>, beta: Vec<u32>, m: i64) -> PyResult<String> {
    Ok(format_rat(&err(polarize::pole_order_bound(
        &parse_weight(mu)?,
        &alpha,
        &beta,
        m,
    ))?))
}

/// Hilbert basis generators of the polarization-degree cone, as (d, l) pairs.
#[pyfunction]
fn hilbert_basis(
    components: usize,
    genus: u32,
    r0: &str,
    bound: u32,
) -> PyResult<Vec<(Vec<i64>, u32)>> {
    let cone = ConeSpec {
        components,
        genus,
        lower_bound: err(parse_rat(r0))?,
    };
    Ok(err(grading::hilbert_basis(&cone, bound))?.generators)
}

/// The sl2 Chern-coefficient displays (alpha(m), beta(m)) as rationals.
#[pyfunction]
fn chern_sl2(m: u32) -> (String, String) {
    let (a, b) = grading::chern_sl2_coefficients(m);
    (format_rat(&a), format_rat(&b))
}

/// Smith normal form of a matrix document (rows by lines, entries by ';',
/// ascending coefficients by ','); returns the monic diagonal as strings.
#[pyfunction]
fn smith_diagonal(matrix: &str) -> PyResult<Vec<String>> {
    let m = err(PolyMatrix::parse(matrix))?;
    let s = err(snf::smith_normal_form(&m))?;
    Ok(s.diagonal.iter().map(|d| d.to_string()).collect())
}

#[pymodule]
fn cbfact_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<FusionRing>()?;
    m.add_function(wrap_pyfunction!(weight_dual, m)?)?;
    m.add_function(wrap_pyfunction!(x_pairing, m)?)?;
    m.add_function(wrap_pyfunction!(in_root_lattice, m)?)?;
    m.add_function(wrap_pyfunction!(epsilon_interval, m)?)?;
    m.add_function(wrap_pyfunction!(epsilon_midpoint, m)?)?;
    m.add_function(wrap_pyfunction!(cb_rank, m)?)?;
    m.add_function(wrap_pyfunction!(cb_table, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert, m)?)?;
    m.add_function(wrap_pyfunction!(qp_fit, m)?)?;
    m.add_function(wrap_pyfunction!(quantum_power, m)?)?;
    m.add_function(wrap_pyfunction!(gw_nonvanishing, m)?)?;
    m.add_function(wrap_pyfunction!(horn_check, m)?)?;
    m.add_function(wrap_pyfunction!(cover_pair, m)?)?;
    m.add_function(wrap_pyfunction!(pole_order_bound, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_basis, m)?)?;
    m.add_function(wrap_pyfunction!(chern_sl2, m)?)?;
    m.add_function(wrap_pyfunction!(smith_diagonal, m)?)?;
    Ok(())
}
