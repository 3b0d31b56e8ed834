//! K-degree bookkeeping and the two lower bounds read off a polynomial.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::ring::{ArrowMonomial, ArrowPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KDegreeProfile {
    pub as_set: BTreeSet<u32>,
    pub max_k_degree: u32,
    pub vcn_lower_bound: u32,
    pub genus_lower_bound: u32,
}

impl KDegreeProfile {
    pub fn of(p: &ArrowPolynomial) -> Self {
        let as_set = as_set(p);
        let max_k_degree = as_set.iter().copied().max().unwrap_or(0);
        KDegreeProfile {
            as_set,
            max_k_degree,
            vcn_lower_bound: max_k_degree,
            genus_lower_bound: genus_lower_bound(p),
        }
    }
}

/// Sum of index times multiplicity over the K-part.
pub fn k_degree(m: &ArrowMonomial) -> u32 {
    m.k_degree()
}

pub fn as_set(p: &ArrowPolynomial) -> BTreeSet<u32> {
    p.terms().map(|(m, _)| k_degree(m)).collect()
}

pub fn vcn_lower_bound(p: &ArrowPolynomial) -> u32 {
    as_set(p).into_iter().max().unwrap_or(0)
}

/// Largest number of distinct K indices in a single monomial.
pub fn max_distinct_k(p: &ArrowPolynomial) -> u32 {
    p.terms()
        .map(|(m, _)| m.k_powers().len() as u32)
        .max()
        .unwrap_or(0)
}

pub fn genus_lower_bound(p: &ArrowPolynomial) -> u32 {
    genus_from_distinct(max_distinct_k(p))
}

pub fn genus_from_distinct(n: u32) -> u32 {
    match n {
        0 => 0,
        1 => 1,
        2 => 2,
        n => n / 3 + 1,
    }
}
