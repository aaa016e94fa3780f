//! Borel-Weil-Bott for line bundles and potential supports of bundle cohomology.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bundles::{self, BundleExpr, WeightMultiset};
use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Weight};
use crate::weyl;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineCohomology {
    Vanishes,
    /// `H^degree(X, L_λ) = L(weight)`, all other degrees zero.
    Concentrated { degree: usize, weight: Weight },
}

pub fn line_cohomology(rs: &RootSystem, lambda: &Weight) -> LineCohomology {
    match weyl::chamber_walk(rs, lambda) {
        None => LineCohomology::Vanishes,
        Some((degree, weight)) => LineCohomology::Concentrated { degree, weight },
    }
}

/// Upper bound for the G-module structure of `H^k(X, E)`, degree by degree,
/// obtained by pushing every weight of χ(E) through Borel-Weil-Bott.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PotentialSupport {
    pub degrees: BTreeMap<usize, BTreeMap<Weight, u64>>,
}

impl PotentialSupport {
    pub fn at(&self, degree: usize) -> Option<&BTreeMap<Weight, u64>> {
        self.degrees.get(&degree)
    }

    pub fn multiplicity(&self, degree: usize, w: &Weight) -> u64 {
        self.at(degree).and_then(|m| m.get(w)).copied().unwrap_or(0)
    }

    /// The set of dominant weights that may occur in degree `k`.
    pub fn set_at(&self, degree: usize) -> BTreeSet<Weight> {
        self.at(degree).map(|m| m.keys().cloned().collect()).unwrap_or_default()
    }

    pub fn set_view(&self) -> BTreeMap<usize, BTreeSet<Weight>> {
        self.degrees
            .iter()
            .map(|(&k, m)| (k, m.keys().cloned().collect()))
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Degreewise multiset union.
    pub fn merge(&self, other: &PotentialSupport) -> PotentialSupport {
        let mut out = self.clone();
        for (&k, m) in &other.degrees {
            let slot = out.degrees.entry(k).or_default();
            for (w, &c) in m {
                *slot.entry(w.clone()).or_insert(0) += c;
            }
        }
        out
    }
}

pub fn psupp(rs: &RootSystem, expr: &BundleExpr) -> Result<PotentialSupport> {
    Ok(psupp_of_weights(rs, &bundles::weights(rs, expr)?))
}

pub fn psupp_of_weights(rs: &RootSystem, chi: &WeightMultiset) -> PotentialSupport {
    let entries: Vec<(&Weight, u64)> = chi.iter().collect();
    let hits: Vec<(usize, Weight, u64)> = entries
        .par_iter()
        .filter_map(|(w, m)| weyl::chamber_walk(rs, w).map(|(k, mu)| (k, mu, *m)))
        .collect();
    let mut out = PotentialSupport::default();
    for (k, mu, m) in hits {
        *out.degrees.entry(k).or_default().entry(mu).or_insert(0) += m;
    }
    out
}

/// Verifies that `psupp(Λ^k n)` is the trivial weight in degree `k` only, with
/// multiplicity the number of Weyl elements of length `k`; returns that number.
pub fn kostant_check(rs: &RootSystem, k: usize) -> Result<u64> {
    let np = rs.num_positive_roots();
    if k > np {
        return Err(Error::CheckFailed(format!("degree {k} exceeds |Φ+| = {np}")));
    }
    let expected = weyl::poincare_counts(rs)[k];
    let ps = psupp(rs, &BundleExpr::wedge(k as u32, BundleExpr::Atom(bundles::Atom::N)))?;
    let zero = Weight::zero(rs.rank);
    for (&degree, m) in &ps.degrees {
        for (w, &c) in m {
            if degree != k || w != &zero {
                return Err(Error::CheckFailed(format!(
                    "unexpected weight {w} (×{c}) in degree {degree} of Λ^{k} n"
                )));
            }
        }
    }
    let found = ps.multiplicity(k, &zero);
    if found != expected {
        return Err(Error::CheckFailed(format!(
            "trivial multiplicity {found} in degree {k}, expected {expected}"
        )));
    }
    Ok(found)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinctRootsReport {
    pub subsets_checked: u64,
    pub exhaustive: bool,
    /// Offending subsets (as positive-root indices) and the cohomology found.
    pub violations: Vec<(Vec<usize>, LineCohomology)>,
}

/// Largest |Φ+| for which every subset is enumerated.
pub const EXHAUSTIVE_ROOT_LIMIT: usize = 12;
const SAMPLED_SUBSETS: u64 = 4096;

/// For subsets S of Φ+, `-ΣS` must have vanishing cohomology or cohomology
/// `L(0)` in a single degree.
pub fn distinct_roots_check(rs: &RootSystem, seed: u64) -> DistinctRootsReport {
    let np = rs.num_positive_roots();
    let check = |mask: &[bool]| -> Option<(Vec<usize>, LineCohomology)> {
        let mut chi = Weight::zero(rs.rank);
        let mut subset = Vec::new();
        for (i, &on) in mask.iter().enumerate() {
            if on {
                chi.add_assign_scaled(&rs.positive_roots[i].weight, -1);
                subset.push(i);
            }
        }
        match line_cohomology(rs, &chi) {
            LineCohomology::Vanishes => None,
            LineCohomology::Concentrated { ref weight, .. } if weight.is_zero() => None,
            other => Some((subset, other)),
        }
    };
    if np <= EXHAUSTIVE_ROOT_LIMIT {
        let total = 1u64 << np;
        let violations: Vec<_> = (0..total)
            .into_par_iter()
            .filter_map(|bits| {
                let mask: Vec<bool> = (0..np).map(|i| bits >> i & 1 == 1).collect();
                check(&mask)
            })
            .collect();
        DistinctRootsReport { subsets_checked: total, exhaustive: true, violations }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut violations = Vec::new();
        for _ in 0..SAMPLED_SUBSETS {
            let mask: Vec<bool> = (0..np).map(|_| rng.gen_bool(0.5)).collect();
            if let Some(v) = check(&mask) {
                violations.push(v);
            }
        }
        DistinctRootsReport { subsets_checked: SAMPLED_SUBSETS, exhaustive: false, violations }
    }
}

/// `<λ + ρ, α^∨> = 0` for a positive root given by root coordinates.
pub fn is_wall_certificate(rs: &RootSystem, lambda: &Weight, root_coords: &[i64]) -> bool {
    let w = rs.weight_from_root_integers(root_coords);
    let idx = match rs.positive_root_index(&w) {
        Some(i) => i,
        None => return false,
    };
    rs.positive_roots[idx].pair(&(lambda + &rs.rho)) == 0
}
