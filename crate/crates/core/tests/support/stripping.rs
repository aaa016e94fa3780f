// Independent decomposition oracle: Freudenthal characters of irreducibles and
// repeated removal of the highest weight. Shares nothing with the library's
// decomposition code beyond the root system data and the invariant form.

use std::collections::BTreeMap;

use bott_null_core::{RootSystem, Weight};
use num_rational::Rational64;

pub type Multiset = BTreeMap<Weight, u64>;

fn add(a: &Weight, b: &Weight, k: i64) -> Weight {
    Weight(a.0.iter().zip(&b.0).map(|(x, y)| x + k * y).collect())
}

fn norm_shifted(rs: &RootSystem, w: &Weight) -> Rational64 {
    let s = add(w, &rs.rho, 1);
    rs.invariant_form(&s, &s)
}

/// Weight multiplicities of L(λ).
pub fn character(rs: &RootSystem, lambda: &Weight) -> Multiset {
    let top = norm_shifted(rs, lambda);
    let mut mult: Multiset = BTreeMap::new();
    mult.insert(lambda.clone(), 1);
    let mut level = vec![lambda.clone()];
    let mut depth = 0i64;
    while !level.is_empty() {
        depth += 1;
        let mut candidates: Vec<Weight> = Vec::new();
        for mu in &level {
            for i in 0..rs.rank {
                let nu = add(mu, &rs.simple_root(i), -1);
                if !candidates.contains(&nu) {
                    candidates.push(nu);
                }
            }
        }
        let mut next = Vec::new();
        for nu in candidates {
            let mut num = Rational64::from_integer(0);
            for r in &rs.positive_roots {
                let mut k = 1;
                while k * r.height <= depth {
                    let up = add(&nu, &r.weight, k);
                    if let Some(&m) = mult.get(&up) {
                        num += rs.invariant_form(&up, &r.weight) * Rational64::from_integer(m as i64);
                    }
                    k += 1;
                }
            }
            num *= Rational64::from_integer(2);
            let den = top - norm_shifted(rs, &nu);
            if num == Rational64::from_integer(0) {
                continue;
            }
            let m = num / den;
            assert!(m.is_integer() && m > Rational64::from_integer(0), "Freudenthal gave {m} at {nu}");
            mult.insert(nu.clone(), *m.numer() as u64);
            next.push(nu);
        }
        level = next;
    }
    mult
}

/// Decomposition of a W-invariant multiset by stripping highest weights.
pub fn strip(rs: &RootSystem, chi: &Multiset) -> Multiset {
    let mut rest = chi.clone();
    rest.retain(|_, m| *m > 0);
    let mut out = BTreeMap::new();
    while let Some(top) = rest
        .keys()
        .max_by_key(|w| rs.invariant_form(w, &rs.rho))
        .cloned()
    {
        assert!(top.is_dominant(), "highest remaining weight {top} is not dominant");
        let m = rest[&top];
        for (w, c) in character(rs, &top) {
            let have = rest.get_mut(&w).unwrap_or_else(|| panic!("weight {w} of L({top}) missing"));
            assert!(*have >= c * m, "negative remainder at {w}");
            *have -= c * m;
            if *have == 0 {
                rest.remove(&w);
            }
        }
        out.insert(top, m);
    }
    out
}
