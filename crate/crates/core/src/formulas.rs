//! Dimension formulas summed over the infinitely near singular points.
//!
//! For i ≥ 3, dim T^i is Σ_P f_i(d(P)). The T² and Artin-component
//! codimension formulas carry an extra Σ_P c(X_P) ≥ 0 which is only known
//! to vanish when every fundamental cycle in the tree is reduced; otherwise
//! the reported value is a lower bound and `exact` is false.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use thiserror::Error;

use crate::blowup::{multiplicity_tree, BlowupError, MultiplicityTree};
use crate::resgraph::{Cycle, GraphError, ResolutionGraph};
use crate::series::{DimensionTable, SeriesError};

pub const DEFAULT_IMAX: u64 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("T^{0} is not given by the f_i sum; use the T² report for i = 2")]
    IndexBelowThree(u64),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("not a rational singularity: p_a(Z) = {pa}")]
    NotRational { pa: i64 },
    #[error("multiplicity {mult}: the formulas need multiplicity at least 3")]
    NotApplicable { mult: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

/// A dimension that is exact, or a lower bound when `exact` is false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub value: BigInt,
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GmdCheck {
    pub sum_d_minus_1: u64,
    pub sum_b_minus_1: u64,
    pub obstructed: bool,
}

// f_i(d) tables for the multiplicities seen in one computation.
struct FCache {
    imax: u64,
    tables: HashMap<u64, DimensionTable>,
}

impl FCache {
    fn new(imax: u64) -> Self {
        FCache {
            imax,
            tables: HashMap::new(),
        }
    }

    fn f(&mut self, i: u64, d: u64) -> Result<BigInt, SeriesError> {
        debug_assert!(i <= self.imax);
        if !self.tables.contains_key(&d) {
            self.tables.insert(d, DimensionTable::new(d, self.imax)?);
        }
        Ok(self.tables[&d].get(i).cloned().expect("i within table"))
    }
}

fn check_index(i: u64) -> Result<(), FormulaError> {
    if i < 3 {
        Err(FormulaError::IndexBelowThree(i))
    } else {
        Ok(())
    }
}

/// dim T^i = Σ_P f_i(d(P)) over all nodes of the tree, i ≥ 3.
pub fn tdim(tree: &MultiplicityTree, i: u64) -> Result<BigInt, FormulaError> {
    check_index(i)?;
    let mut cache = FCache::new(i);
    let mut total = BigInt::from(0);
    for node in tree.nodes() {
        total += cache.f(i, node.mult)?;
    }
    Ok(total)
}

/// The same sum taken one blow-up at a time: f_i(d) of the root plus the
/// values of the child subtrees.
pub fn tdim_recursive(tree: &MultiplicityTree, i: u64) -> Result<BigInt, FormulaError> {
    check_index(i)?;
    fn go(t: &MultiplicityTree, i: u64, cache: &mut FCache) -> Result<BigInt, SeriesError> {
        let mut v = cache.f(i, t.mult)?;
        for c in &t.children {
            v += go(c, i, cache)?;
        }
        Ok(v)
    }
    Ok(go(tree, i, &mut FCache::new(i))?)
}

/// Σ_P (d(P)−1)(d(P)−3), exact when every node has reduced fundamental cycle.
pub fn t2_report(tree: &MultiplicityTree) -> Bound {
    let value = tree
        .nodes()
        .iter()
        .map(|n| {
            let d = BigInt::from(n.mult);
            (&d - 1) * (&d - 3)
        })
        .sum();
    Bound {
        value,
        exact: tree.all_reduced(),
    }
}

/// Σ_P (d(P)−3), exact under the same condition as [`t2_report`].
pub fn codim_ac_report(tree: &MultiplicityTree) -> Bound {
    let value = tree.nodes().iter().map(|n| BigInt::from(n.mult) - 3).sum();
    Bound {
        value,
        exact: tree.all_reduced(),
    }
}

/// Σ_P (d(P)−1) ≥ Σ_i (b_i−1) means the general singularity with graph
/// `g` has no good maximal deformation.
pub fn gmd_check(g: &ResolutionGraph, tree: &MultiplicityTree) -> GmdCheck {
    let sum_d_minus_1 = tree.nodes().iter().map(|n| n.mult - 1).sum();
    let sum_b_minus_1 = g.vertices().iter().map(|v| (v.b - 1) as u64).sum();
    GmdCheck {
        sum_d_minus_1,
        sum_b_minus_1,
        obstructed: sum_d_minus_1 >= sum_b_minus_1,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisReport {
    pub rational: bool,
    pub mult: u64,
    pub cycle: Cycle,
    pub reduced_everywhere: bool,
    pub tree: MultiplicityTree,
    /// dim T^i for 3 ≤ i ≤ imax.
    pub tdims: BTreeMap<u64, BigInt>,
    pub t2: Bound,
    pub codim_ac: Bound,
    pub sum_b_minus_1: u64,
    pub sum_d_minus_1: u64,
    pub gmd_obstructed: bool,
}

pub fn analyze(g: &ResolutionGraph, imax: u64) -> Result<AnalysisReport, AnalysisError> {
    let tree = multiplicity_tree(g).map_err(|e| match e {
        BlowupError::NotRational(pa) => AnalysisError::NotRational { pa },
        BlowupError::LowMultiplicity(mult) => AnalysisError::NotApplicable { mult },
        BlowupError::Graph(e) => AnalysisError::Graph(e),
    })?;

    let mut tdims = BTreeMap::new();
    if imax >= 3 {
        let mut cache = FCache::new(imax);
        for i in 3..=imax {
            let mut total = BigInt::from(0);
            for node in tree.nodes() {
                total += cache.f(i, node.mult).map_err(FormulaError::from)?;
            }
            tdims.insert(i, total);
        }
    }
    let gmd = gmd_check(g, &tree);
    Ok(AnalysisReport {
        rational: true,
        mult: tree.mult,
        cycle: tree.cycle.clone(),
        reduced_everywhere: tree.all_reduced(),
        t2: t2_report(&tree),
        codim_ac: codim_ac_report(&tree),
        tdims,
        sum_b_minus_1: gmd.sum_b_minus_1,
        sum_d_minus_1: gmd.sum_d_minus_1,
        gmd_obstructed: gmd.obstructed,
        tree,
    })
}
