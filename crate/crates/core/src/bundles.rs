//! Bundle expressions and their weight multisets.
//!
//! An expression describes a B-representation built from the atoms
//! `n` (nilradical), `h` (Cartan, `b/n`), `b`, `g`, `q` (`g/b`) and line
//! characters `L[c1,...,cr]`. Its only semantics is the multiset of torus
//! weights of an associated graded, which is all the cohomology bounds need.
//!
//! Grammar (whitespace-insensitive, `^` binds tighter than `*`, then `+`):
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := atom | atom '^' int | 'wedge' '^' int '(' expr ')'
//!         | 'sym' '^' int '(' expr ')' | '(' expr ')' | '(' expr ')' '^' int
//! atom   := 'n' | 'h' | 'b' | 'g' | 'q' | 'L[' int (',' int)* ']'
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    N,
    H,
    B,
    G,
    Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BundleExpr {
    Atom(Atom),
    Line(Weight),
    Tensor(Box<BundleExpr>, Box<BundleExpr>),
    Sum(Box<BundleExpr>, Box<BundleExpr>),
    Wedge(u32, Box<BundleExpr>),
    Sym(u32, Box<BundleExpr>),
    TensorPower(Box<BundleExpr>, u32),
}

impl BundleExpr {
    pub fn tensor(l: BundleExpr, r: BundleExpr) -> Self {
        BundleExpr::Tensor(Box::new(l), Box::new(r))
    }

    pub fn sum(l: BundleExpr, r: BundleExpr) -> Self {
        BundleExpr::Sum(Box::new(l), Box::new(r))
    }

    pub fn wedge(k: u32, e: BundleExpr) -> Self {
        BundleExpr::Wedge(k, Box::new(e))
    }

    pub fn sym(k: u32, e: BundleExpr) -> Self {
        BundleExpr::Sym(k, Box::new(e))
    }

    pub fn power(e: BundleExpr, k: u32) -> Self {
        BundleExpr::TensorPower(Box::new(e), k)
    }

    /// Whether every line atom has the given rank.
    pub(crate) fn check_rank(&self, rank: usize) -> Result<()> {
        match self {
            BundleExpr::Atom(_) => Ok(()),
            BundleExpr::Line(w) => {
                if w.rank() == rank {
                    Ok(())
                } else {
                    Err(Error::RankMismatch { expected: rank, found: w.rank() })
                }
            }
            BundleExpr::Tensor(l, r) | BundleExpr::Sum(l, r) => {
                l.check_rank(rank)?;
                r.check_rank(rank)
            }
            BundleExpr::Wedge(_, e) | BundleExpr::Sym(_, e) | BundleExpr::TensorPower(e, _) => {
                e.check_rank(rank)
            }
        }
    }
}

// Printing levels: 0 = sum, 1 = term, 2 = factor.
fn write_expr(e: &BundleExpr, level: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let own = match e {
        BundleExpr::Sum(..) => 0,
        BundleExpr::Tensor(..) => 1,
        _ => 2,
    };
    if own < level {
        f.write_str("(")?;
        write_expr(e, 0, f)?;
        return f.write_str(")");
    }
    match e {
        BundleExpr::Atom(a) => f.write_str(match a {
            Atom::N => "n",
            Atom::H => "h",
            Atom::B => "b",
            Atom::G => "g",
            Atom::Q => "q",
        }),
        BundleExpr::Line(w) => {
            let parts: Vec<String> = w.0.iter().map(|c| c.to_string()).collect();
            write!(f, "L[{}]", parts.join(","))
        }
        BundleExpr::Sum(l, r) => {
            write_expr(l, 0, f)?;
            f.write_str("+")?;
            write_expr(r, 1, f)
        }
        BundleExpr::Tensor(l, r) => {
            write_expr(l, 1, f)?;
            f.write_str("*")?;
            write_expr(r, 2, f)
        }
        BundleExpr::Wedge(k, inner) => {
            write!(f, "wedge^{k}(")?;
            write_expr(inner, 0, f)?;
            f.write_str(")")
        }
        BundleExpr::Sym(k, inner) => {
            write!(f, "sym^{k}(")?;
            write_expr(inner, 0, f)?;
            f.write_str(")")
        }
        BundleExpr::TensorPower(inner, k) => {
            match **inner {
                BundleExpr::Atom(_) | BundleExpr::Line(_) => write_expr(inner, 2, f)?,
                _ => {
                    f.write_str("(")?;
                    write_expr(inner, 0, f)?;
                    f.write_str(")")?;
                }
            }
            write!(f, "^{k}")
        }
    }
}

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(self, 0, f)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.err(format!("expected `{}`, found `{}`", c as char, x as char)),
            None => self.err(format!("expected `{}`, found end of input", c as char)),
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        match text.parse() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                self.err("expected an integer")
            }
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        let start = self.pos;
        let v = self.int()?;
        u32::try_from(v).or_else(|_| {
            self.pos = start;
            self.err("exponent must be a non-negative integer")
        })
    }

    fn expr(&mut self) -> Result<BundleExpr> {
        let mut lhs = self.term()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = BundleExpr::sum(lhs, rhs);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<BundleExpr> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = BundleExpr::tensor(lhs, rhs);
        }
        Ok(lhs)
    }

    fn ident(&mut self) -> (usize, String) {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        (start, String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn factor(&mut self) -> Result<BundleExpr> {
        let base = match self.peek() {
            None => return self.err("unexpected end of input"),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                inner
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let (start, name) = self.ident();
                match name.as_str() {
                    "wedge" | "sym" => {
                        self.expect(b'^')?;
                        let k = self.exponent()?;
                        self.expect(b'(')?;
                        let inner = self.expr()?;
                        self.expect(b')')?;
                        return Ok(if name == "wedge" {
                            BundleExpr::wedge(k, inner)
                        } else {
                            BundleExpr::sym(k, inner)
                        });
                    }
                    "n" => BundleExpr::Atom(Atom::N),
                    "h" => BundleExpr::Atom(Atom::H),
                    "b" => BundleExpr::Atom(Atom::B),
                    "g" => BundleExpr::Atom(Atom::G),
                    "q" => BundleExpr::Atom(Atom::Q),
                    "L" => {
                        self.expect(b'[')?;
                        let mut coords = vec![self.int()?];
                        while self.peek() == Some(b',') {
                            self.pos += 1;
                            coords.push(self.int()?);
                        }
                        self.expect(b']')?;
                        BundleExpr::Line(Weight(coords))
                    }
                    _ => return Err(Error::UnknownAtom { pos: start, name }),
                }
            }
            Some(c) => return self.err(format!("unexpected `{}`", c as char)),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.exponent()?;
            return Ok(BundleExpr::power(base, k));
        }
        Ok(base)
    }
}

/// Parses the expression grammar described in the module docs.
pub fn parse(text: &str) -> Result<BundleExpr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some(c) => p.err(format!("unexpected trailing `{}`", c as char)),
    }
}

/// A multiset of weights with positive multiplicities, canonically ordered.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightMultiset {
    map: BTreeMap<Weight, u64>,
    total_dim: u64,
}

impl WeightMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(w: Weight) -> Self {
        let mut m = Self::new();
        m.insert(w, 1);
        m
    }

    pub fn insert(&mut self, w: Weight, mult: u64) {
        if mult == 0 {
            return;
        }
        *self.map.entry(w).or_insert(0) += mult;
        self.total_dim += mult;
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.map.get(w).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> u64 {
        self.total_dim
    }

    /// Number of distinct weights.
    pub fn distinct(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.map.iter().map(|(w, &m)| (w, m))
    }

    pub fn as_map(&self) -> &BTreeMap<Weight, u64> {
        &self.map
    }

    pub fn union(&self, other: &WeightMultiset) -> WeightMultiset {
        let mut out = self.clone();
        for (w, m) in other.iter() {
            out.insert(w.clone(), m);
        }
        out
    }

    /// Pairwise sums with multiplicity products.
    pub fn convolve(&self, other: &WeightMultiset) -> WeightMultiset {
        let (big, small) = if self.distinct() >= other.distinct() { (self, other) } else { (other, self) };
        let entries: Vec<(&Weight, u64)> = big.iter().collect();
        let partial: HashMap<Weight, u64> = entries
            .par_chunks(256)
            .map(|chunk| {
                let mut acc: HashMap<Weight, u64> = HashMap::new();
                for (a, ma) in chunk {
                    for (b, mb) in small.iter() {
                        *acc.entry(*a + b).or_insert(0) += ma * mb;
                    }
                }
                acc
            })
            .reduce(HashMap::new, |mut x, y| {
                if x.len() < y.len() {
                    return merge_into(y, x);
                }
                for (k, v) in y {
                    *x.entry(k).or_insert(0) += v;
                }
                x
            });
        WeightMultiset::from_counts(partial)
    }

    pub fn from_counts<I: IntoIterator<Item = (Weight, u64)>>(counts: I) -> Self {
        let mut out = WeightMultiset::new();
        for (w, m) in counts {
            out.insert(w, m);
        }
        out
    }

    /// Degree-k part of `Π_ν (1 + t e^ν)^{m_ν}` (exterior) or `Π_ν (1 - t e^ν)^{-m_ν}` (symmetric).
    fn graded_power(&self, k: u32, rank: usize, exterior: bool) -> WeightMultiset {
        let k = k as usize;
        // layers[j] = weights of degree-j part so far
        let mut layers: Vec<HashMap<Weight, u64>> = vec![HashMap::new(); k + 1];
        layers[0].insert(Weight::zero(rank), 1);
        for (nu, m) in self.iter() {
            let mut next: Vec<HashMap<Weight, u64>> = vec![HashMap::new(); k + 1];
            for (j, layer) in layers.iter().enumerate() {
                for (w, &c) in layer {
                    let max_take = if exterior { (m as usize).min(k - j) } else { k - j };
                    let mut shifted = w.clone();
                    for take in 0..=max_take {
                        let coeff = if exterior {
                            binomial(m, take as u64)
                        } else {
                            binomial(m + take as u64 - 1, take as u64)
                        };
                        *next[j + take].entry(shifted.clone()).or_insert(0) += c * coeff;
                        shifted.add_assign_scaled(nu, 1);
                    }
                }
            }
            layers = next;
        }
        WeightMultiset::from_counts(layers.pop().expect("k+1 layers"))
    }
}

fn merge_into(mut x: HashMap<Weight, u64>, y: HashMap<Weight, u64>) -> HashMap<Weight, u64> {
    for (k, v) in y {
        *x.entry(k).or_insert(0) += v;
    }
    x
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    u64::try_from(acc).expect("binomial coefficient fits in u64")
}

impl fmt::Display for WeightMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (w, m)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}×{m}")?;
        }
        f.write_str("}")
    }
}

fn atom_weights(rs: &RootSystem, atom: Atom) -> WeightMultiset {
    let negative = || WeightMultiset::from_counts(rs.positive_roots.iter().map(|r| (-&r.weight, 1)));
    let positive = || WeightMultiset::from_counts(rs.positive_roots.iter().map(|r| (r.weight.clone(), 1)));
    let cartan = || WeightMultiset::from_counts([(Weight::zero(rs.rank), rs.rank as u64)]);
    match atom {
        Atom::N => negative(),
        Atom::H => cartan(),
        Atom::B => negative().union(&cartan()),
        Atom::Q => positive(),
        Atom::G => negative().union(&cartan()).union(&positive()),
    }
}

/// The weight multiset χ(E) of an expression.
pub fn weights(rs: &RootSystem, expr: &BundleExpr) -> Result<WeightMultiset> {
    expr.check_rank(rs.rank)?;
    Ok(eval(rs, expr))
}

fn eval(rs: &RootSystem, expr: &BundleExpr) -> WeightMultiset {
    match expr {
        BundleExpr::Atom(a) => atom_weights(rs, *a),
        BundleExpr::Line(w) => WeightMultiset::singleton(w.clone()),
        BundleExpr::Tensor(l, r) => eval(rs, l).convolve(&eval(rs, r)),
        BundleExpr::Sum(l, r) => eval(rs, l).union(&eval(rs, r)),
        BundleExpr::Wedge(k, e) => eval(rs, e).graded_power(*k, rs.rank, true),
        BundleExpr::Sym(k, e) => eval(rs, e).graded_power(*k, rs.rank, false),
        BundleExpr::TensorPower(e, k) => {
            let base = eval(rs, e);
            let mut acc = WeightMultiset::singleton(Weight::zero(rs.rank));
            for _ in 0..*k {
                acc = acc.convolve(&base);
            }
            acc
        }
    }
}

/// Dimension of an expression, computed combinatorially without expanding weights.
pub fn dim(rs: &RootSystem, expr: &BundleExpr) -> BigUint {
    let np = BigUint::from(rs.num_positive_roots());
    let rank = BigUint::from(rs.rank);
    match expr {
        BundleExpr::Atom(Atom::N) | BundleExpr::Atom(Atom::Q) => np,
        BundleExpr::Atom(Atom::H) => rank,
        BundleExpr::Atom(Atom::B) => np + rank,
        BundleExpr::Atom(Atom::G) => np.clone() + np + rank,
        BundleExpr::Line(_) => BigUint::one(),
        BundleExpr::Tensor(l, r) => dim(rs, l) * dim(rs, r),
        BundleExpr::Sum(l, r) => dim(rs, l) + dim(rs, r),
        BundleExpr::Wedge(k, e) => big_binomial(&dim(rs, e), *k),
        BundleExpr::Sym(k, e) => {
            let d = dim(rs, e);
            if d.is_zero() {
                return if *k == 0 { BigUint::one() } else { BigUint::zero() };
            }
            big_binomial(&(d + BigUint::from(*k) - BigUint::one()), *k)
        }
        BundleExpr::TensorPower(e, k) => dim(rs, e).pow(*k),
    }
}

fn big_binomial(n: &BigUint, k: u32) -> BigUint {
    let k_big = BigUint::from(k);
    if &k_big > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - BigUint::from(i)) / BigUint::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, Family};
    use proptest::prelude::*;

    fn a2() -> RootSystem {
        build_root_system(Family::A, 2).unwrap()
    }

    #[test]
    fn parse_examples() {
        let b = BundleExpr::Atom(Atom::B);
        assert_eq!(parse("b*b").unwrap(), BundleExpr::tensor(b.clone(), b.clone()));
        assert_eq!(
            parse("wedge^2(n)+h").unwrap(),
            BundleExpr::sum(BundleExpr::wedge(2, BundleExpr::Atom(Atom::N)), BundleExpr::Atom(Atom::H))
        );
        assert_eq!(parse("b^4").unwrap(), BundleExpr::power(b.clone(), 4));
        assert_eq!(parse(" ( g + q ) ^ 2 ").unwrap(), BundleExpr::power(parse("g+q").unwrap(), 2));
        assert_eq!(parse("L[1,-2]").unwrap(), BundleExpr::Line(Weight(vec![1, -2])));
    }

    #[test]
    fn precedence() {
        // ^ > * > +
        assert_eq!(parse("b+g*q^2").unwrap().to_string(), "b+g*q^2");
        assert_eq!(
            parse("b+g*q^2").unwrap(),
            BundleExpr::sum(
                BundleExpr::Atom(Atom::B),
                BundleExpr::tensor(BundleExpr::Atom(Atom::G), BundleExpr::power(BundleExpr::Atom(Atom::Q), 2))
            )
        );
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse("x*b"), Err(Error::UnknownAtom { pos: 0, .. })));
        assert!(matches!(parse("b*foo"), Err(Error::UnknownAtom { pos: 2, .. })));
        assert!(matches!(parse("b*"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse("(b"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("b^-1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("b b"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse("wedge(b)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse(""), Err(Error::Syntax { .. })));
    }

    #[test]
    fn pretty_print_keeps_structure() {
        let tricky = BundleExpr::tensor(
            BundleExpr::Atom(Atom::B),
            BundleExpr::tensor(BundleExpr::Atom(Atom::G), BundleExpr::sum(BundleExpr::Atom(Atom::N), BundleExpr::Atom(Atom::H))),
        );
        let printed = tricky.to_string();
        assert_eq!(printed, "b*(g*(n+h))");
        assert_eq!(parse(&printed).unwrap(), tricky);
        let p = BundleExpr::power(BundleExpr::tensor(BundleExpr::Atom(Atom::B), BundleExpr::Atom(Atom::B)), 2);
        assert_eq!(parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn atom_weights_a2() {
        let rs = a2();
        let n = weights(&rs, &parse("n").unwrap()).unwrap();
        let expected: Vec<Weight> = [[-1, 0], [0, -1], [-1, -1]]
            .iter()
            .map(|rc| rs.weight_from_root_integers(rc))
            .collect();
        assert_eq!(n.total_dim(), 3);
        for w in &expected {
            assert_eq!(n.multiplicity(w), 1);
        }
        let bb = weights(&rs, &parse("b*b").unwrap()).unwrap();
        assert_eq!(bb.total_dim(), 25);
        // only h⊗h contributes the zero weight
        assert_eq!(bb.multiplicity(&Weight::zero(2)), 4);
    }

    #[test]
    fn wedge2_n_is_pair_sums() {
        let rs = a2();
        let w = weights(&rs, &parse("wedge^2(n)").unwrap()).unwrap();
        let expected = WeightMultiset::from_counts(
            [[-1, -1], [-2, -1], [-1, -2]].iter().map(|rc| (rs.weight_from_root_integers(rc), 1)),
        );
        assert_eq!(w, expected);
    }

    #[test]
    fn wedge_beyond_dimension_is_empty() {
        let rs = a2();
        assert!(weights(&rs, &parse("wedge^4(n)").unwrap()).unwrap().is_empty());
        assert_eq!(
            weights(&rs, &parse("wedge^0(n)").unwrap()).unwrap(),
            WeightMultiset::singleton(Weight::zero(2))
        );
        assert_eq!(weights(&rs, &parse("b^0").unwrap()).unwrap().total_dim(), 1);
    }

    #[test]
    fn dimensions() {
        let rs = a2();
        assert_eq!(dim(&rs, &parse("g").unwrap()), BigUint::from(8u32));
        assert_eq!(dim(&rs, &parse("b^4").unwrap()), BigUint::from(625u32));
        let a5 = build_root_system(Family::A, 5).unwrap();
        assert_eq!(dim(&a5, &parse("b").unwrap()), BigUint::from(20u32));
        assert_eq!(dim(&rs, &parse("sym^3(g)").unwrap()), BigUint::from(120u32));
        assert_eq!(dim(&rs, &parse("wedge^3(b)").unwrap()), BigUint::from(10u32));
    }

    #[test]
    fn rank_mismatch_rejected() {
        assert!(matches!(
            weights(&a2(), &parse("L[1,2,3]").unwrap()),
            Err(Error::RankMismatch { .. })
        ));
    }

    /// Index-expanded brute force over k-subsets (exterior) or k-multisubsets (symmetric).
    fn brute_power(ms: &WeightMultiset, k: usize, exterior: bool, rank: usize) -> WeightMultiset {
        let flat: Vec<Weight> = ms
            .iter()
            .flat_map(|(w, m)| std::iter::repeat(w.clone()).take(m as usize))
            .collect();
        let mut out = WeightMultiset::new();
        fn rec(
            flat: &[Weight],
            start: usize,
            left: usize,
            exterior: bool,
            acc: Weight,
            out: &mut WeightMultiset,
        ) {
            if left == 0 {
                out.insert(acc, 1);
                return;
            }
            for i in start..flat.len() {
                let next = if exterior { i + 1 } else { i };
                rec(flat, next, left - 1, exterior, &acc + &flat[i], out);
            }
        }
        rec(&flat, 0, k, exterior, Weight::zero(rank), &mut out);
        out
    }

    fn small_expr() -> impl Strategy<Value = BundleExpr> {
        let leaf = prop_oneof![
            Just(BundleExpr::Atom(Atom::N)),
            Just(BundleExpr::Atom(Atom::H)),
            Just(BundleExpr::Atom(Atom::B)),
            Just(BundleExpr::Atom(Atom::Q)),
            (-2i64..3, -2i64..3).prop_map(|(a, b)| BundleExpr::Line(Weight(vec![a, b]))),
        ];
        leaf.prop_recursive(2, 4, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(l, r)| BundleExpr::sum(l, r)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| BundleExpr::tensor(l, r)),
            ]
        })
    }

    proptest! {
        #[test]
        fn sym2_plus_wedge2_is_square(e in small_expr()) {
            let rs = a2();
            let sq = weights(&rs, &BundleExpr::tensor(e.clone(), e.clone())).unwrap();
            let s2 = weights(&rs, &BundleExpr::sym(2, e.clone())).unwrap();
            let w2 = weights(&rs, &BundleExpr::wedge(2, e.clone())).unwrap();
            prop_assert_eq!(s2.union(&w2), sq);
        }

        #[test]
        fn graded_powers_match_brute_force(e in small_expr(), k in 0usize..4) {
            let rs = a2();
            let base = weights(&rs, &e).unwrap();
            prop_assume!(base.total_dim() <= 12);
            let wedge = weights(&rs, &BundleExpr::wedge(k as u32, e.clone())).unwrap();
            let sym = weights(&rs, &BundleExpr::sym(k as u32, e.clone())).unwrap();
            prop_assert_eq!(wedge, brute_power(&base, k, true, 2));
            prop_assert_eq!(sym, brute_power(&base, k, false, 2));
        }

        #[test]
        fn dim_matches_total_dim(e in small_expr(), k in 0u32..3) {
            let rs = a2();
            for expr in [e.clone(), BundleExpr::wedge(k, e.clone()), BundleExpr::sym(k, e.clone()), BundleExpr::power(e.clone(), k)] {
                let ms = weights(&rs, &expr).unwrap();
                prop_assert_eq!(dim(&rs, &expr), BigUint::from(ms.total_dim()));
            }
        }

        #[test]
        fn convolution_commutes_and_associates(x in small_expr(), y in small_expr(), z in small_expr()) {
            let rs = a2();
            let (x, y, z) = (weights(&rs, &x).unwrap(), weights(&rs, &y).unwrap(), weights(&rs, &z).unwrap());
            prop_assert_eq!(x.convolve(&y), y.convolve(&x));
            prop_assert_eq!(x.convolve(&y).convolve(&z), x.convolve(&y.convolve(&z)));
        }

        #[test]
        fn pretty_print_round_trips(e in small_expr()) {
            prop_assert_eq!(parse(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn adjoint_weights_are_w_invariant() {
        for rs in [a2(), build_root_system(Family::B, 2).unwrap(), build_root_system(Family::A, 4).unwrap()] {
            let g = weights(&rs, &parse("g").unwrap()).unwrap();
            for i in 0..rs.rank {
                for (w, m) in g.iter() {
                    let mut r = w.clone();
                    crate::weyl::reflect(&rs, i, &mut r);
                    assert_eq!(g.multiplicity(&r), m);
                }
            }
        }
    }
}
