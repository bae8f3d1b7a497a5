use serde::{Deserialize, Serialize};

use crate::finitetop::{
    is_branched_covering, points, BranchFailure, FinMap, PointSet, QuasiWitness, TopError,
};

/// An analysis with point sets spelled out as ascending point lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FintopReport {
    pub domain_points: usize,
    pub codomain_points: usize,
    pub is_quasi: bool,
    pub quasi_witness: Option<QuasiWitness>,
    pub is_branched: bool,
    pub failure: Option<BranchFailure>,
    pub d: Option<usize>,
    #[serde(rename = "B")]
    pub branching: Vec<usize>,
    #[serde(rename = "R")]
    pub ramification: Vec<usize>,
    pub regular: Vec<usize>,
    #[serde(rename = "C")]
    pub collapse: Vec<usize>,
    /// Ramification index per domain point, when branched.
    #[serde(rename = "b")]
    pub index: Vec<Option<usize>>,
    /// Base components with their degree.
    pub components: Vec<(Vec<usize>, Option<usize>)>,
}

fn list(s: PointSet) -> Vec<usize> {
    points(s).collect()
}

pub fn fintop_report(f: &FinMap) -> Result<FintopReport, TopError> {
    let a = is_branched_covering(f)?;
    let quasi_witness = match &a.failure {
        Some(BranchFailure::NotQuasi { witness }) => Some(witness.clone()),
        _ => None,
    };
    Ok(FintopReport {
        domain_points: f.domain().n(),
        codomain_points: f.codomain().n(),
        is_quasi: a.is_quasi(),
        quasi_witness,
        is_branched: a.is_branched(),
        d: a.degree(),
        branching: list(a.branching),
        ramification: list(a.ramification),
        regular: list(a.regular),
        collapse: list(a.collapse),
        index: a.index.clone(),
        components: a.degrees.iter().map(|&(c, d)| (list(c), d)).collect(),
        failure: a.failure,
    })
}
