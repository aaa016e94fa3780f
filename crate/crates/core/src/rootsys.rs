//! Cartan data for the supported root systems.
//!
//! Weights are stored in fundamental-weight coordinates, `coords[i] = <λ, α_i^∨>`.
//! The Cartan matrix follows `cartan[i][j] = <α_j, α_i^∨>`, so column `j` is the
//! simple root `α_j` in fundamental coordinates and the simple reflection is
//! `s_i(λ) = λ - λ[i] α_i`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported type-A rank (A7, i.e. sl_8).
pub const MAX_A_RANK: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => f.write_str("A"),
            Family::B => f.write_str("B"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            other => Err(format!("unknown family `{other}` (expected A or B)")),
        }
    }
}

/// An integral weight in fundamental-weight coordinates.
///
/// Ordering is lexicographic on the coordinates, which is the canonical
/// ordering used by every multiset in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Dominant iff every coordinate is non-negative.
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }

    pub fn add_assign_scaled(&mut self, other: &Weight, k: i64) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += k * b;
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("f:")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

/// Rational coordinates over the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootCoords(pub Vec<Rational64>);

impl RootCoords {
    pub fn from_integers(coords: &[i64]) -> Self {
        RootCoords(coords.iter().map(|&c| Rational64::from_integer(c)).collect())
    }

    /// Integer coordinates, if every entry is integral.
    pub fn to_integers(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

impl fmt::Display for RootCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("r:")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveRoot {
    /// Coordinates over the simple roots.
    pub root_coords: Vec<i64>,
    /// Fundamental-weight coordinates.
    pub weight: Weight,
    /// Coordinates of the coroot over the simple coroots, so that
    /// `<λ, α^∨> = Σ coroot[i] λ[i]`.
    pub coroot: Vec<i64>,
    pub height: i64,
}

impl PositiveRoot {
    /// `<λ, α^∨>` for a weight in fundamental coordinates.
    pub fn pair(&self, lambda: &Weight) -> i64 {
        self.coroot.iter().zip(&lambda.0).map(|(a, b)| a * b).sum()
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<PositiveRoot>,
    pub rho: Weight,
    pub highest_root: usize,
    /// Half squared lengths of the simple roots; short roots have squared length 2.
    symmetrizer: Vec<Rational64>,
    inverse_cartan: Vec<Vec<Rational64>>,
    root_index: HashMap<Weight, usize>,
}

/// Builds A_rank (rank 1..=7) or B2.
pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystem> {
    let unsupported = Error::UnsupportedFamilyRank { family, rank };
    let cartan = match family {
        Family::A if (1..=MAX_A_RANK).contains(&rank) => {
            let mut c = vec![vec![0i64; rank]; rank];
            for i in 0..rank {
                c[i][i] = 2;
                if i + 1 < rank {
                    c[i][i + 1] = -1;
                    c[i + 1][i] = -1;
                }
            }
            c
        }
        // α1 short: <α2, α1^∨> = -2, <α1, α2^∨> = -1.
        Family::B if rank == 2 => vec![vec![2, -2], vec![-1, 2]],
        _ => return Err(unsupported),
    };
    RootSystem::from_cartan(family, cartan)
}

impl RootSystem {
    /// Builds the root system of a finite-type Cartan matrix. `family` is only a label.
    pub fn from_cartan(family: Family, cartan: Vec<Vec<i64>>) -> Result<RootSystem> {
        let rank = cartan.len();
        if rank == 0 || cartan.iter().any(|row| row.len() != rank) {
            return Err(Error::InvalidCartan("matrix must be square and non-empty".into()));
        }
        for i in 0..rank {
            for j in 0..rank {
                let c = cartan[i][j];
                if i == j && c != 2 {
                    return Err(Error::InvalidCartan(format!("diagonal entry ({i},{j}) is {c}")));
                }
                if i != j && (c > 0 || (c == 0) != (cartan[j][i] == 0)) {
                    return Err(Error::InvalidCartan(format!("off-diagonal entry ({i},{j}) is {c}")));
                }
            }
        }
        let symmetrizer = symmetrizer(&cartan)?;
        let inverse_cartan = invert(&cartan).ok_or_else(|| Error::InvalidCartan("singular".into()))?;

        let simple_weight = |j: usize| Weight((0..rank).map(|i| cartan[i][j]).collect());
        let weight_of = |rc: &[i64]| {
            let mut w = Weight::zero(rank);
            for (j, &k) in rc.iter().enumerate() {
                w.add_assign_scaled(&simple_weight(j), k);
            }
            w
        };

        // Root strings: β + α_i is a root iff q = p - <β, α_i^∨> > 0.
        let mut roots: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                let mut v = vec![0; rank];
                v[i] = 1;
                v
            })
            .collect();
        let mut known: std::collections::HashSet<Vec<i64>> = roots.iter().cloned().collect();
        let mut layer = roots.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                let w = weight_of(beta);
                for i in 0..rank {
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if known.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    if p - w.0[i] > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if known.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            if roots.len() > 400 {
                return Err(Error::InvalidCartan("not of finite type".into()));
            }
            roots.extend(next.iter().cloned());
            layer = next;
        }
        roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });

        let positive_roots: Vec<PositiveRoot> = roots
            .into_iter()
            .map(|rc| {
                let weight = weight_of(&rc);
                let half_norm = half_norm(&weight, &rc, &symmetrizer);
                let coroot = rc
                    .iter()
                    .zip(&symmetrizer)
                    .map(|(&k, &d)| {
                        let c = Rational64::from_integer(k) * d / half_norm;
                        debug_assert!(c.is_integer());
                        c.to_integer()
                    })
                    .collect();
                let height = rc.iter().sum();
                PositiveRoot { root_coords: rc, weight, coroot, height }
            })
            .collect();

        let highest_root = positive_roots
            .iter()
            .enumerate()
            .max_by_key(|(i, r)| (r.height, std::cmp::Reverse(*i)))
            .map(|(i, _)| i)
            .expect("non-empty root system");
        let root_index = positive_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.weight.clone(), i))
            .collect();

        Ok(RootSystem {
            family,
            rank,
            cartan,
            positive_roots,
            rho: Weight(vec![1; rank]),
            highest_root,
            symmetrizer,
            inverse_cartan,
            root_index,
        })
    }

    /// Short label such as `A5` or `B2`.
    pub fn label(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Simple root `α_i` (0-based) in fundamental coordinates.
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight((0..self.rank).map(|r| self.cartan[r][i]).collect())
    }

    pub fn highest_root(&self) -> &PositiveRoot {
        &self.positive_roots[self.highest_root]
    }

    /// Index of a positive root given in fundamental coordinates.
    pub fn positive_root_index(&self, w: &Weight) -> Option<usize> {
        self.root_index.get(w).copied()
    }

    pub fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: w.rank() });
        }
        Ok(())
    }

    /// The weight with the given integer root coordinates.
    pub fn weight_from_root_integers(&self, rc: &[i64]) -> Weight {
        let mut w = Weight::zero(self.rank);
        for (j, &k) in rc.iter().enumerate() {
            w.add_assign_scaled(&self.simple_root(j), k);
        }
        w
    }

    /// `<λ, λ'>` for the invariant form with short roots of squared length 2.
    pub fn invariant_form(&self, lambda: &Weight, mu: &Weight) -> Rational64 {
        // <λ, α_i> = d_i <λ, α_i^∨> = d_i λ_i, and μ = Σ rc_i α_i.
        let rc = weight_to_root_coords(self, mu);
        lambda
            .0
            .iter()
            .zip(&self.symmetrizer)
            .zip(&rc.0)
            .map(|((&l, &d), &c)| Rational64::from_integer(l) * d * c)
            .fold(Rational64::zero(), |acc, x| acc + x)
    }
}

fn half_norm(weight: &Weight, rc: &[i64], symmetrizer: &[Rational64]) -> Rational64 {
    // <α, α> = Σ_i k_i <α, α_i> = Σ_i k_i d_i <α, α_i^∨>
    let norm = rc
        .iter()
        .zip(symmetrizer)
        .zip(&weight.0)
        .map(|((&k, &d), &w)| Rational64::from_integer(k * w) * d)
        .fold(Rational64::zero(), |acc, x| acc + x);
    norm / Rational64::from_integer(2)
}

/// `d_i` with `d_i cartan[i][j] = d_j cartan[j][i]`, normalized so the smallest is 1.
fn symmetrizer(cartan: &[Vec<i64>]) -> Result<Vec<Rational64>> {
    let rank = cartan.len();
    let mut d: Vec<Option<Rational64>> = vec![None; rank];
    for start in 0..rank {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rational64::one());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let di = d[i].expect("visited");
            for j in 0..rank {
                if i == j || cartan[i][j] == 0 {
                    continue;
                }
                let dj = di * Rational64::new(cartan[i][j], cartan[j][i]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(existing) if existing != dj => {
                        return Err(Error::InvalidCartan("not symmetrizable".into()));
                    }
                    _ => {}
                }
            }
        }
    }
    let d: Vec<Rational64> = d.into_iter().map(|x| x.expect("all visited")).collect();
    let min = d.iter().copied().fold(d[0], |a, b| if b < a { b } else { a });
    Ok(d.into_iter().map(|x| x / min).collect())
}

fn invert(m: &[Vec<i64>]) -> Option<Vec<Vec<Rational64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational64> = row.iter().map(|&x| Rational64::from_integer(x)).collect();
            r.extend((0..n).map(|j| if i == j { Rational64::one() } else { Rational64::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..2 * n {
                    let v = a[col][c];
                    a[r][c] -= f * v;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// `C^{-1} λ`: the coordinates of λ over the simple roots.
pub fn weight_to_root_coords(rs: &RootSystem, lambda: &Weight) -> RootCoords {
    RootCoords(
        rs.inverse_cartan
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&lambda.0)
                    .map(|(&c, &l)| c * Rational64::from_integer(l))
                    .fold(Rational64::zero(), |acc, x| acc + x)
            })
            .collect(),
    )
}

/// `C · rc`, failing if the result is not integral.
pub fn root_to_weight(rs: &RootSystem, rc: &RootCoords) -> Result<Weight> {
    if rc.0.len() != rs.rank {
        return Err(Error::RankMismatch { expected: rs.rank, found: rc.0.len() });
    }
    rs.cartan
        .iter()
        .map(|row| {
            let v = row
                .iter()
                .zip(&rc.0)
                .map(|(&c, &x)| Rational64::from_integer(c) * x)
                .fold(Rational64::zero(), |acc, x| acc + x);
            if v.is_integer() {
                Ok(v.to_integer())
            } else {
                Err(Error::NonIntegralWeight)
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(Weight)
}

/// Root-coordinate annotation for display, if the weight lies in the root lattice.
pub fn root_label(rs: &RootSystem, lambda: &Weight) -> Option<String> {
    let rc = weight_to_root_coords(rs, lambda);
    rc.to_integers().map(|ints| {
        let parts: Vec<String> = ints.iter().map(|c| c.to_string()).collect();
        format!("r:{}", parts.join(","))
    })
}

/// Parses `f:c1,c2,...` (fundamental) or `r:c1,c2,...` (root coordinates, `p/q` allowed).
pub fn parse_weight(rs: &RootSystem, text: &str) -> Result<Weight> {
    let text = text.trim();
    let bad = |msg: &str| Error::Syntax { pos: 0, msg: format!("{msg}: `{text}`") };
    let (kind, body) = text.split_once(':').ok_or_else(|| bad("expected `f:` or `r:` prefix"))?;
    let parts: Vec<&str> = body.split(',').map(str::trim).collect();
    if parts.len() != rs.rank {
        return Err(Error::RankMismatch { expected: rs.rank, found: parts.len() });
    }
    match kind.trim() {
        "f" => parts
            .iter()
            .map(|p| p.parse::<i64>().map_err(|_| bad("non-integer fundamental coordinate")))
            .collect::<Result<Vec<_>>>()
            .map(Weight),
        "r" => {
            let coords = parts
                .iter()
                .map(|p| parse_rational64(p))
                .collect::<Result<Vec<_>>>()?;
            root_to_weight(rs, &RootCoords(coords))
        }
        _ => Err(bad("expected `f:` or `r:` prefix")),
    }
}

pub(crate) fn parse_rational64(s: &str) -> Result<Rational64> {
    let bad = || Error::BadRational(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(n, d))
        }
        None => s.trim().parse::<i64>().map(Rational64::from_integer).map_err(|_| bad()),
    }
}
