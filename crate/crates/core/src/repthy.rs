//! Irreducible G-modules: Weyl dimensions, multiplicities and tensor decompositions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::bundles::{self, BundleExpr, WeightMultiset};
use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Weight};
use crate::weyl;

/// Largest module dimension accepted by the decomposition routines.
pub const SIZE_CAP: u64 = 5_000_000;

/// A finite direct sum of irreducibles `⊕ L(λ)^{m_λ}`, keyed by dominant highest weight.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct FormalGModule {
    components: BTreeMap<Weight, u64>,
}

impl FormalGModule {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn irreducible(lambda: Weight) -> Result<Self> {
        let mut m = Self::new();
        m.insert(lambda, 1)?;
        Ok(m)
    }

    /// `ℂ^{⊕mult}`.
    pub fn trivial(rank: usize, mult: u64) -> Self {
        let mut m = Self::new();
        if mult > 0 {
            m.components.insert(Weight::zero(rank), mult);
        }
        m
    }

    pub fn from_components<I: IntoIterator<Item = (Weight, u64)>>(items: I) -> Result<Self> {
        let mut m = Self::new();
        for (w, c) in items {
            m.insert(w, c)?;
        }
        Ok(m)
    }

    pub fn insert(&mut self, lambda: Weight, mult: u64) -> Result<()> {
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        if mult > 0 {
            *self.components.entry(lambda).or_insert(0) += mult;
        }
        Ok(())
    }

    pub fn multiplicity(&self, lambda: &Weight) -> u64 {
        self.components.get(lambda).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.components.iter().map(|(w, &m)| (w, m))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Number of distinct irreducible summands.
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Whether every summand is the trivial module.
    pub fn is_trivial_isotypic(&self) -> bool {
        self.components.keys().all(Weight::is_zero)
    }

    pub fn dim(&self, rs: &RootSystem) -> BigUint {
        self.iter()
            .map(|(w, m)| weyl_dim(rs, w).expect("keys are dominant") * BigUint::from(m))
            .sum()
    }

    pub fn scaled(&self, k: u64) -> FormalGModule {
        if k == 0 {
            return Self::new();
        }
        FormalGModule { components: self.components.iter().map(|(w, &m)| (w.clone(), m * k)).collect() }
    }

    pub fn direct_sum(&self, other: &FormalGModule) -> FormalGModule {
        let mut out = self.clone();
        for (w, m) in other.iter() {
            *out.components.entry(w.clone()).or_insert(0) += m;
        }
        out
    }

    /// `self ⊗ V` where `V` is given by its (W-invariant) weight multiset.
    pub fn tensor_with_weights(&self, rs: &RootSystem, chi: &WeightMultiset) -> Result<FormalGModule> {
        check_invariant(rs, chi)?;
        let mut signed: HashMap<Weight, i128> = HashMap::new();
        for (lambda, a) in self.iter() {
            let part = klimyk(rs, lambda, chi);
            for (w, c) in part {
                *signed.entry(w).or_insert(0) += c * i128::from(a);
            }
        }
        from_signed(signed)
    }
}

impl fmt::Display for FormalGModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, m)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m == 1 {
                write!(f, "L({w})")?;
            } else {
                write!(f, "L({w})^{m}")?;
            }
        }
        Ok(())
    }
}

/// Weyl dimension formula, `Π_{α>0} <λ+ρ, α^∨> / <ρ, α^∨>`.
pub fn weyl_dim(rs: &RootSystem, lambda: &Weight) -> Result<BigUint> {
    rs.check_rank(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let v = weyl_polynomial(rs, lambda);
    Ok(v.to_biguint().expect("dominant weights give positive dimension"))
}

/// The Weyl dimension polynomial evaluated at an arbitrary weight. By
/// Borel-Weil-Bott this is the Euler characteristic `Σ (-1)^k dim H^k(X, L_λ)`.
pub fn weyl_polynomial(rs: &RootSystem, lambda: &Weight) -> BigInt {
    let shifted = lambda + &rs.rho;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for r in &rs.positive_roots {
        num *= BigInt::from(r.pair(&shifted));
        den *= BigInt::from(r.pair(&rs.rho));
    }
    let (q, rem) = (&num / &den, &num % &den);
    debug_assert!(rem.is_zero());
    q
}

fn check_size(rs: &RootSystem, expr: &BundleExpr) -> Result<()> {
    let d = bundles::dim(rs, expr);
    if d > BigUint::from(SIZE_CAP) {
        return Err(Error::SizeCap {
            what: expr.to_string(),
            size: d.to_u128().unwrap_or(u128::MAX),
            cap: u128::from(SIZE_CAP),
        });
    }
    Ok(())
}

/// Weight multiplicities must be constant along W-orbits.
fn check_invariant(rs: &RootSystem, chi: &WeightMultiset) -> Result<()> {
    for (w, m) in chi.iter() {
        for i in 0..rs.rank {
            let mut s = w.clone();
            weyl::reflect(rs, i, &mut s);
            let ms = chi.multiplicity(&s);
            if ms != m {
                return Err(Error::NotAGModule(format!(
                    "weight {w} has multiplicity {m} but s{}({w}) = {s} has {ms}",
                    i + 1
                )));
            }
        }
    }
    Ok(())
}

/// The weights of a G-module expression, after the size and invariance checks.
pub fn module_weights(rs: &RootSystem, expr: &BundleExpr) -> Result<WeightMultiset> {
    check_size(rs, expr)?;
    let chi = bundles::weights(rs, expr)?;
    check_invariant(rs, &chi)?;
    Ok(chi)
}

/// `Σ_{w ∈ W} (-1)^{ℓ(w)} m(w·μ)`, the multiplicity of `L(μ)` in the expression.
pub fn mult_in(rs: &RootSystem, expr: &BundleExpr, mu: &Weight) -> Result<u64> {
    rs.check_rank(mu)?;
    if !mu.is_dominant() {
        return Err(Error::NotDominant(mu.to_string()));
    }
    let chi = module_weights(rs, expr)?;
    let group = weyl::enumerate(rs);
    let elements: Vec<_> = group.iter().collect();
    let total: i128 = elements
        .par_iter()
        .map(|(len, el)| {
            let m = i128::from(chi.multiplicity(&weyl::dot(rs, &el.word, mu)));
            if len % 2 == 0 {
                m
            } else {
                -m
            }
        })
        .sum();
    u64::try_from(total).map_err(|_| Error::NotAGModule(format!("negative multiplicity {total} for L({mu})")))
}

pub fn invariant_dim(rs: &RootSystem, expr: &BundleExpr) -> Result<u64> {
    mult_in(rs, expr, &Weight::zero(rs.rank))
}

/// Full decomposition by reflecting every weight into the dominant chamber.
pub fn decompose(rs: &RootSystem, expr: &BundleExpr) -> Result<FormalGModule> {
    let chi = module_weights(rs, expr)?;
    decompose_weights(rs, &chi)
}

/// Decomposition of a W-invariant weight multiset.
pub fn decompose_weights(rs: &RootSystem, chi: &WeightMultiset) -> Result<FormalGModule> {
    check_invariant(rs, chi)?;
    FormalGModule::trivial(rs.rank, 1).tensor_with_weights(rs, chi)
}

// L(λ) ⊗ V = Σ_{ν ∈ χ(V)} ε · L(dominant(λ + ν)), dropping singular terms.
fn klimyk(rs: &RootSystem, lambda: &Weight, chi: &WeightMultiset) -> HashMap<Weight, i128> {
    let entries: Vec<(&Weight, u64)> = chi.iter().collect();
    entries
        .par_chunks(512)
        .map(|chunk| {
            let mut acc: HashMap<Weight, i128> = HashMap::new();
            for (nu, m) in chunk {
                if let Some((len, dom)) = weyl::chamber_walk(rs, &(lambda + nu)) {
                    let c = i128::from(*m);
                    *acc.entry(dom).or_insert(0) += if len % 2 == 0 { c } else { -c };
                }
            }
            acc
        })
        .reduce(HashMap::new, |mut x, y| {
            for (k, v) in y {
                *x.entry(k).or_insert(0) += v;
            }
            x
        })
}

fn from_signed(signed: HashMap<Weight, i128>) -> Result<FormalGModule> {
    let mut out = FormalGModule::new();
    let mut sorted: Vec<_> = signed.into_iter().filter(|(_, c)| *c != 0).collect();
    sorted.sort();
    for (w, c) in sorted {
        let m = u64::try_from(c).map_err(|_| Error::NotAGModule(format!("negative multiplicity {c} for L({w})")))?;
        out.insert(w, m)?;
    }
    Ok(out)
}

/// Signed Euler characteristic of a weight multiset: `Σ_λ m(λ) · χ(X, L_λ)`.
pub fn euler_characteristic(rs: &RootSystem, chi: &WeightMultiset) -> BigInt {
    chi.iter().map(|(w, m)| weyl_polynomial(rs, w) * BigInt::from(m)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundles::parse;
    use crate::bwb;
    use crate::rootsys::{build_root_system, Family};
    use proptest::prelude::*;

    fn a(rank: usize) -> RootSystem {
        build_root_system(Family::A, rank).unwrap()
    }

    fn b2() -> RootSystem {
        build_root_system(Family::B, 2).unwrap()
    }

    // Product over positive roots written out from scratch, no shared code.
    fn brute_weyl_dim(rs: &RootSystem, lambda: &Weight) -> u128 {
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for r in &rs.positive_roots {
            let pair = |v: &[i64]| -> i64 {
                let coroot: Vec<i64> = r.coroot.clone();
                v.iter().zip(&coroot).map(|(x, c)| x * c).sum()
            };
            let shifted: Vec<i64> = lambda.0.iter().map(|c| c + 1).collect();
            num *= pair(&shifted) as u128;
            den *= pair(&vec![1; rs.rank]) as u128;
        }
        num / den
    }

    #[test]
    fn weyl_dim_examples() {
        let a2 = a(2);
        assert_eq!(weyl_dim(&a2, &Weight(vec![1, 1])).unwrap(), BigUint::from(8u32));
        let a3 = a(3);
        let l = a3.weight_from_root_integers(&[1, 2, 1]);
        assert_eq!(l, Weight(vec![0, 2, 0]));
        assert_eq!(weyl_dim(&a3, &l).unwrap(), BigUint::from(brute_weyl_dim(&a3, &l)));
        assert_eq!(weyl_dim(&a3, &l).unwrap(), BigUint::from(20u32));
        let a5 = a(5);
        let l = a5.weight_from_root_integers(&[1, 2, 3, 2, 1]);
        assert_eq!(weyl_dim(&a5, &l).unwrap(), BigUint::from(brute_weyl_dim(&a5, &l)));
        assert_eq!(weyl_dim(&a5, &l).unwrap(), BigUint::from(175u32));
        assert!(matches!(weyl_dim(&a2, &Weight(vec![-1, 0])), Err(Error::NotDominant(_))));
    }

    #[test]
    fn decompose_examples() {
        let a2 = a(2);
        let gg = decompose(&a2, &parse("g*g").unwrap()).unwrap();
        let expected = FormalGModule::from_components([
            (Weight(vec![0, 0]), 1),
            (Weight(vec![1, 1]), 2),
            (Weight(vec![3, 0]), 1),
            (Weight(vec![0, 3]), 1),
            (Weight(vec![2, 2]), 1),
        ])
        .unwrap();
        assert_eq!(gg, expected);
        assert_eq!(gg.dim(&a2), BigUint::from(64u32));
        assert_eq!(
            decompose(&a2, &parse("g").unwrap()).unwrap(),
            FormalGModule::irreducible(Weight(vec![1, 1])).unwrap()
        );
        let b = b2();
        let g = decompose(&b, &parse("g").unwrap()).unwrap();
        assert_eq!(g, FormalGModule::irreducible(Weight(vec![2, 0])).unwrap());
        assert_eq!(g.dim(&b), BigUint::from(10u32));
        assert_eq!(b.highest_root().weight, Weight(vec![2, 0]));
    }

    #[test]
    fn mult_in_examples() {
        let a2 = a(2);
        let gg = parse("g*g").unwrap();
        assert_eq!(mult_in(&a2, &gg, &Weight(vec![1, 1])).unwrap(), 2);
        assert_eq!(mult_in(&a2, &gg, &Weight(vec![0, 0])).unwrap(), 1);
        for rs in [a(2), a(3), b2()] {
            assert_eq!(invariant_dim(&rs, &parse("g").unwrap()).unwrap(), 0);
        }
        assert_eq!(invariant_dim(&a2, &parse("g^3").unwrap()).unwrap(), 2);
    }

    #[test]
    fn borel_is_not_a_g_module() {
        let a2 = a(2);
        assert!(matches!(decompose(&a2, &parse("b").unwrap()), Err(Error::NotAGModule(_))));
        assert!(matches!(invariant_dim(&a2, &parse("g*b").unwrap()), Err(Error::NotAGModule(_))));
        // n ⊕ q is W-invariant even though neither summand is
        assert_eq!(decompose(&a2, &parse("n+h+q").unwrap()).unwrap(), FormalGModule::irreducible(Weight(vec![1, 1])).unwrap());
    }

    #[test]
    fn size_cap_is_enforced() {
        let a7 = a(7);
        let err = decompose(&a7, &parse("g^4").unwrap()).unwrap_err();
        assert!(matches!(err, Error::SizeCap { .. }));
    }

    #[test]
    fn klimyk_matches_direct_decomposition() {
        let a2 = a(2);
        let g = decompose(&a2, &parse("g").unwrap()).unwrap();
        let chi = bundles::weights(&a2, &parse("g").unwrap()).unwrap();
        assert_eq!(g.tensor_with_weights(&a2, &chi).unwrap(), decompose(&a2, &parse("g*g").unwrap()).unwrap());
    }

    #[test]
    fn weyl_polynomial_matches_bott() {
        for rs in [a(2), a(3), b2()] {
            for x in -4..=4 {
                for y in -4..=4 {
                    let mut c = vec![x, y];
                    c.resize(rs.rank, 1 - x);
                    let w = Weight(c);
                    let expected = match bwb::line_cohomology(&rs, &w) {
                        bwb::LineCohomology::Vanishes => BigInt::zero(),
                        bwb::LineCohomology::Concentrated { degree, weight } => {
                            let d = BigInt::from(weyl_dim(&rs, &weight).unwrap());
                            if degree % 2 == 0 {
                                d
                            } else {
                                -d
                            }
                        }
                    };
                    assert_eq!(weyl_polynomial(&rs, &w), expected, "{} {w}", rs.label());
                }
            }
        }
    }

    fn g_word() -> impl Strategy<Value = String> {
        prop::collection::vec(prop_oneof![Just("g"), Just("(n+h+q)"), Just("sym^2(g)"), Just("wedge^2(g)")], 1..=3)
            .prop_map(|f| f.join("*"))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn decomposition_dimension_matches(text in g_word(), which in 0usize..3) {
            let rs = vec![a(2), b2(), a(3)].swap_remove(which);
            let expr = parse(&text).unwrap();
            if bundles::dim(&rs, &expr) <= BigUint::from(20_000u32) {
                let m = decompose(&rs, &expr).unwrap();
                prop_assert_eq!(m.dim(&rs), bundles::dim(&rs, &expr));
            }
        }

        #[test]
        fn multiplicity_ignores_factor_order(mut factors in prop::collection::vec(prop_oneof![Just("g"), Just("wedge^2(g)"), Just("sym^2(g)")], 2..=3), x in 0i64..3, y in 0i64..3) {
            let rs = a(2);
            let mu = Weight(vec![x, y]);
            let forward = parse(&factors.join("*")).unwrap();
            factors.reverse();
            let backward = parse(&factors.join("*")).unwrap();
            prop_assert_eq!(mult_in(&rs, &forward, &mu).unwrap(), mult_in(&rs, &backward, &mu).unwrap());
            prop_assert_eq!(
                mult_in(&rs, &forward, &mu).unwrap(),
                decompose(&rs, &forward).unwrap().multiplicity(&mu)
            );
        }
    }
}
