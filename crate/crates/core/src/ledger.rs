//! Known cohomology of tensor powers of the Borel subalgebra, the spectral-sequence
//! page built from it, and normality / rational-singularity verdicts.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::bundles::{self, Atom, BundleExpr};
use crate::bwb::{self, PotentialSupport};
use crate::error::{Error, Result};
use crate::repthy::{self, FormalGModule, SIZE_CAP};
use crate::rootsys::{build_root_system, Family, RootSystem, Weight, MAX_A_RANK};

pub const LEDGER_FORMAT: &str = "bott-null-ledger/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TableKey {
    pub family: Family,
    pub rank: usize,
    pub q: usize,
    pub p: usize,
}

impl fmt::Display for TableKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}/{}/{}", self.family, self.rank, self.q, self.p)
    }
}

impl std::str::FromStr for TableKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedLedger(format!("bad entry key `{s}`"));
        let parts: Vec<&str> = s.split('/').collect();
        if parts.len() != 4 {
            return Err(bad());
        }
        Ok(TableKey {
            family: parts[0].parse().map_err(|_| bad())?,
            rank: parts[1].parse().map_err(|_| bad())?,
            q: parts[2].parse().map_err(|_| bad())?,
            p: parts[3].parse().map_err(|_| bad())?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryStatus {
    Exact,
    /// Only trivial summands occur; how many is not known.
    TrivialIsotypicUnresolved,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub module: FormalGModule,
    pub status: EntryStatus,
    pub provenance: String,
}

impl LedgerEntry {
    fn exact(module: FormalGModule, provenance: &str) -> Self {
        LedgerEntry { module, status: EntryStatus::Exact, provenance: provenance.to_string() }
    }

    pub fn is_resolved(&self) -> bool {
        self.status == EntryStatus::Exact
    }
}

/// `H^p(X, b^{⊗q})` for the systems and degrees where it is known.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CohomologyTable {
    entries: BTreeMap<TableKey, LedgerEntry>,
}

impl CohomologyTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, key: TableKey, entry: LedgerEntry) {
        self.entries.insert(key, entry);
    }

    pub fn get(&self, key: &TableKey) -> Option<&LedgerEntry> {
        self.entries.get(key)
    }

    pub fn get_mut(&mut self, key: &TableKey) -> Option<&mut LedgerEntry> {
        self.entries.get_mut(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TableKey, &LedgerEntry)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_json(&self) -> String {
        let file = LedgerFile {
            format: LEDGER_FORMAT.to_string(),
            entries: self
                .entries
                .iter()
                .map(|(k, e)| {
                    let module = e.module.iter().map(|(w, m)| (w.0.clone(), m)).collect();
                    (k.to_string(), EntryJson { module, status: e.status, provenance: e.provenance.clone() })
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("ledger serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: LedgerFile = serde_json::from_str(text).map_err(|e| Error::MalformedLedger(e.to_string()))?;
        if file.format != LEDGER_FORMAT {
            return Err(Error::MalformedLedger(format!("unsupported format `{}`", file.format)));
        }
        let mut table = CohomologyTable::new();
        for (k, e) in file.entries {
            let key: TableKey = k.parse()?;
            let module = FormalGModule::from_components(e.module.into_iter().map(|(c, m)| (Weight(c), m)))
                .map_err(|err| Error::MalformedLedger(format!("{key}: {err}")))?;
            if module.iter().any(|(w, _)| w.rank() != key.rank) {
                return Err(Error::MalformedLedger(format!("{key}: weight of the wrong rank")));
            }
            table.insert(key, LedgerEntry { module, status: e.status, provenance: e.provenance });
        }
        Ok(table)
    }
}

#[derive(Serialize, Deserialize)]
struct LedgerFile {
    format: String,
    entries: BTreeMap<String, EntryJson>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    module: Vec<(Vec<i64>, u64)>,
    status: EntryStatus,
    provenance: String,
}

fn supported_systems() -> Vec<(Family, usize)> {
    let mut out: Vec<(Family, usize)> = (1..=MAX_A_RANK).map(|r| (Family::A, r)).collect();
    out.push((Family::B, 2));
    out
}

/// Fill every degree `0..=|Φ+|` of one `(system, q)` column; unspecified degrees are zero.
fn put_column(table: &mut CohomologyTable, rs: &RootSystem, q: usize, known: Vec<(usize, LedgerEntry)>, zero_note: &str) {
    let mut known: BTreeMap<usize, LedgerEntry> = known.into_iter().collect();
    for p in 0..=rs.num_positive_roots() {
        let key = TableKey { family: rs.family, rank: rs.rank, q, p };
        let entry = known.remove(&p).unwrap_or_else(|| LedgerEntry::exact(FormalGModule::new(), zero_note));
        table.insert(key, entry);
    }
}

fn irreducible_root(rs: &RootSystem, rc: &[i64]) -> FormalGModule {
    FormalGModule::irreducible(rs.weight_from_root_integers(rc)).expect("dominant by construction")
}

/// The established values of `H^p(X, b^{⊗q})`.
pub fn builtin_tables() -> CohomologyTable {
    let mut table = CohomologyTable::new();
    for (family, rank) in supported_systems() {
        let rs = build_root_system(family, rank).expect("supported system");
        put_column(&mut table, &rs, 1, vec![], "b has no cohomology: H(n) sits in degree 1 and is cancelled by H0(g) -> H0(g/b)");
        let trivial = |m| FormalGModule::trivial(rank, m);
        match (family, rank) {
            (Family::A, 2..) => {
                let n = rank + 1;
                put_column(
                    &mut table,
                    &rs,
                    2,
                    vec![(1, LedgerEntry::exact(trivial(1), "b⊗b in type A: one trivial summand in degree 1"))],
                    "b⊗b in type A vanishes outside degree 1",
                );
                let h2 = if n == 3 {
                    let mut m = trivial(2);
                    m = m.direct_sum(&irreducible_root(&rs, &[1, 1]).scaled(5));
                    m = m.direct_sum(&irreducible_root(&rs, &[2, 1]));
                    m.direct_sum(&irreducible_root(&rs, &[1, 2]))
                } else {
                    trivial(2)
                };
                let mut b3 = vec![(2, LedgerEntry::exact(h2, "b^3 in type A, degree 2"))];
                if n == 4 {
                    b3.push((3, LedgerEntry::exact(irreducible_root(&rs, &[1, 2, 1]), "b^3 in sl4, degree 3")));
                }
                put_column(&mut table, &rs, 3, b3, "b^3 in type A vanishes in degrees other than 2 and (for sl4) 3");
                if n == 6 || n == 7 {
                    let unresolved = |k: usize| {
                        (
                            k,
                            LedgerEntry {
                                module: trivial(1),
                                status: EntryStatus::TrivialIsotypicUnresolved,
                                provenance: format!("b^4 in degree {k}: a sum of trivial modules, count not determined"),
                            },
                        )
                    };
                    let mut b4 = vec![unresolved(2), unresolved(3)];
                    if n == 6 {
                        b4.push((5, LedgerEntry::exact(irreducible_root(&rs, &[1, 2, 3, 2, 1]), "b^4 in sl6, degree 5")));
                    }
                    put_column(&mut table, &rs, 4, b4, "b^4 in sl6/sl7 vanishes outside degrees 2, 3 (and 5 for sl6)");
                }
            }
            (Family::B, 2) => {
                put_column(
                    &mut table,
                    &rs,
                    2,
                    vec![
                        (1, LedgerEntry::exact(trivial(1), "b⊗b in B2, degree 1")),
                        (2, LedgerEntry::exact(irreducible_root(&rs, &[1, 1]), "b⊗b in B2, degree 2")),
                    ],
                    "b⊗b in B2 vanishes outside degrees 1 and 2",
                );
            }
            _ => {}
        }
    }
    table
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub entries_checked: usize,
    /// `(family, rank, q)` columns whose potential support was computed.
    pub columns: Vec<(Family, usize, usize)>,
}

/// Every entry must be bounded by the potential support of `b^{⊗q}` in its degree.
pub fn validate_table(table: &CohomologyTable) -> Result<ValidationReport> {
    let mut columns: BTreeMap<(Family, usize, usize), Vec<(&TableKey, &LedgerEntry)>> = BTreeMap::new();
    for (k, e) in table.iter() {
        columns.entry((k.family, k.rank, k.q)).or_default().push((k, e));
    }
    let mut checked = 0;
    let mut done = Vec::new();
    for (&(family, rank, q), entries) in &columns {
        let fail = |key: &TableKey, reason: String| Error::ValidationFailure { key: key.to_string(), reason };
        let rs = build_root_system(family, rank).map_err(|e| fail(entries[0].0, e.to_string()))?;
        let np = rs.num_positive_roots();
        let mut ps: Option<PotentialSupport> = None;
        for (key, entry) in entries {
            checked += 1;
            if key.p > np && !entry.module.is_zero() {
                return Err(fail(key, format!("degree {} exceeds dim X = {np}", key.p)));
            }
            if entry.module.is_zero() {
                continue;
            }
            if entry.status == EntryStatus::TrivialIsotypicUnresolved && !entry.module.is_trivial_isotypic() {
                return Err(fail(key, "unresolved entry must be trivial-isotypic".into()));
            }
            if ps.is_none() {
                ps = Some(bwb::psupp(&rs, &b_power(q)).map_err(|e| fail(key, e.to_string()))?);
            }
            let bound = ps.as_ref().expect("computed above");
            for (w, m) in entry.module.iter() {
                let allowed = bound.multiplicity(key.p, w);
                if allowed == 0 {
                    return Err(fail(key, format!("L({w}) is not in the potential support in degree {}", key.p)));
                }
                if entry.is_resolved() && m > allowed {
                    return Err(fail(key, format!("L({w}) has multiplicity {m}, potential support allows {allowed}")));
                }
            }
        }
        if ps.is_some() {
            done.push((family, rank, q));
        }
    }
    Ok(ValidationReport { entries_checked: checked, columns: done })
}

fn b_power(q: usize) -> BundleExpr {
    BundleExpr::power(BundleExpr::Atom(Atom::B), q as u32)
}

/// A value of `H^p(X, b^{⊗q})` and whether it is fully known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Known {
    pub module: FormalGModule,
    pub resolved: bool,
}

impl Known {
    fn zero() -> Self {
        Known { module: FormalGModule::new(), resolved: true }
    }

    pub fn certainly_zero(&self) -> bool {
        self.resolved && self.module.is_zero()
    }

    pub fn certainly_nonzero(&self) -> bool {
        self.resolved && !self.module.is_zero()
    }
}

/// Degrees `0..=|Φ+|` of `H(X, b^{⊗q})`; `None` where neither the table nor the
/// potential support decides the value.
fn column(table: &CohomologyTable, rs: &RootSystem, q: usize) -> Vec<Option<Known>> {
    let np = rs.num_positive_roots();
    if q == 0 {
        return (0..=np)
            .map(|p| Some(if p == 0 { Known { module: FormalGModule::trivial(rs.rank, 1), resolved: true } } else { Known::zero() }))
            .collect();
    }
    let mut out: Vec<Option<Known>> = (0..=np)
        .map(|p| {
            table
                .get(&TableKey { family: rs.family, rank: rs.rank, q, p })
                .map(|e| Known { module: e.module.clone(), resolved: e.is_resolved() })
        })
        .collect();
    if out.iter().any(Option::is_none) && bundles::dim(rs, &b_power(q)) <= BigUint::from(SIZE_CAP) {
        if let Ok(ps) = bwb::psupp(rs, &b_power(q)) {
            for (p, slot) in out.iter_mut().enumerate() {
                if slot.is_none() && ps.at(p).map_or(true, BTreeMap::is_empty) {
                    *slot = Some(Known::zero());
                }
            }
        }
    }
    out
}

/// `H^p(X, b^{⊗q})` from the table, dimension vanishing, or an empty potential support.
pub fn lookup(table: &CohomologyTable, rs: &RootSystem, q: usize, p: usize) -> Result<Known> {
    if p > rs.num_positive_roots() {
        return Ok(Known::zero());
    }
    column(table, rs, q)[p]
        .clone()
        .ok_or(Error::LedgerGap { family: rs.family, rank: rs.rank, q, p })
}

/// One position `(a, b) = (-q, p)` of the page: `C(r, q)` copies of `g^{⊗(r-q)} ⊗ H^p(X, b^{⊗q})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageCell {
    pub a: i64,
    pub b: usize,
    pub copies: u64,
    pub tensor_power: usize,
    pub cohomology: Known,
}

impl PageCell {
    pub fn total_degree(&self) -> i64 {
        self.a + self.b as i64
    }

    pub fn certainly_zero(&self) -> bool {
        self.cohomology.certainly_zero()
    }

    /// The full G-module at this position.
    pub fn decompose(&self, rs: &RootSystem) -> Result<FormalGModule> {
        if self.cohomology.module.is_zero() {
            return Ok(FormalGModule::new());
        }
        let g = repthy::module_weights(rs, &BundleExpr::power(BundleExpr::Atom(Atom::G), self.tensor_power as u32))?;
        Ok(self.cohomology.module.tensor_with_weights(rs, &g)?.scaled(self.copies))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EPage {
    pub family: Family,
    pub rank: usize,
    pub r: usize,
    /// Keyed by `(a, b)`, covering `a ∈ [-r, 0]`, `b ∈ [0, |Φ+|]`.
    pub cells: BTreeMap<(i64, usize), PageCell>,
}

impl EPage {
    pub fn cell(&self, a: i64, b: i64) -> Option<&PageCell> {
        if b < 0 {
            return None;
        }
        self.cells.get(&(a, b as usize))
    }

    /// Positions outside the rectangle are zero.
    pub fn certainly_zero_at(&self, a: i64, b: i64) -> bool {
        self.cell(a, b).map_or(true, PageCell::certainly_zero)
    }

    pub fn nonzero_cells(&self) -> impl Iterator<Item = &PageCell> {
        self.cells.values().filter(|c| !c.certainly_zero())
    }

    /// No differential `d_s` (s ≥ 1) can enter or leave the position.
    pub fn certainly_survives(&self, a: i64, b: i64) -> bool {
        let Some(cell) = self.cell(a, b) else { return false };
        if !cell.cohomology.certainly_nonzero() {
            return false;
        }
        let r = self.r as i64;
        let height = self.cells.keys().map(|&(_, b)| b as i64).max().unwrap_or(0);
        (1..=r + height + 1).all(|s| {
            self.certainly_zero_at(a - s, b + s - 1) && self.certainly_zero_at(a + s, b - s + 1)
        })
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

pub fn e_page(table: &CohomologyTable, family: Family, rank: usize, r: usize) -> Result<EPage> {
    let rs = build_root_system(family, rank)?;
    let mut cells = BTreeMap::new();
    for q in 0..=r {
        let col = column(table, &rs, q);
        for (p, known) in col.into_iter().enumerate() {
            let cohomology = known.ok_or(Error::LedgerGap { family, rank, q, p })?;
            let a = -(q as i64);
            cells.insert((a, p), PageCell { a, b: p, copies: binomial(r, q), tensor_power: r - q, cohomology });
        }
    }
    Ok(EPage { family, rank, r, cells })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Normality {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rationality {
    Yes,
    NormalizationNotRational,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub a: i64,
    pub b: usize,
    pub module: FormalGModule,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub normal: Normality,
    pub rational: Rationality,
    pub witnesses: Vec<Witness>,
    /// Whether the vanishing criterion (rather than the page) decided the verdict.
    pub by_vanishing_criterion: bool,
}

/// `H^i(X, b^{⊗q}) = 0` for all `i ≥ q ≥ 1`; `None` if the table cannot decide.
fn vanishing_criterion(table: &CohomologyTable, rs: &RootSystem) -> Option<bool> {
    let np = rs.num_positive_roots();
    for q in 1..=np {
        let col = column(table, rs, q);
        for known in &col[q..] {
            match known {
                Some(k) if k.certainly_zero() => {}
                Some(k) if k.certainly_nonzero() => return Some(false),
                _ => return None,
            }
        }
    }
    Some(true)
}

pub fn verdict(table: &CohomologyTable, family: Family, rank: usize, r: usize) -> Result<Verdict> {
    let rs = build_root_system(family, rank)?;
    if vanishing_criterion(table, &rs) == Some(true) {
        return Ok(Verdict {
            normal: Normality::Yes,
            rational: Rationality::Yes,
            witnesses: Vec::new(),
            by_vanishing_criterion: true,
        });
    }
    let page = e_page(table, family, rank, r)?;
    let mut witnesses = Vec::new();
    let (mut not_normal, mut not_rational) = (false, false);
    for cell in page.cells.values() {
        let total = cell.total_degree();
        if cell.a >= 0 || total < 0 || !page.certainly_survives(cell.a, cell.b as i64) {
            continue;
        }
        let reason = if total == 0 {
            not_normal = true;
            format!("survives at total degree 0, so g^{r} -> H0((g/b)^{r}) is not onto")
        } else {
            not_rational = true;
            format!("survives at total degree {total}, so H^{total}((g/b)^{r}) is nonzero")
        };
        witnesses.push(Witness { a: cell.a, b: cell.b, module: cell.decompose(&rs)?, reason });
    }
    Ok(Verdict {
        normal: if not_normal { Normality::No } else { Normality::Unknown },
        rational: if not_rational { Rationality::NormalizationNotRational } else { Rationality::Unknown },
        witnesses,
        by_vanishing_criterion: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(family: Family, rank: usize, q: usize, p: usize) -> TableKey {
        TableKey { family, rank, q, p }
    }

    fn rs(family: Family, rank: usize) -> RootSystem {
        build_root_system(family, rank).unwrap()
    }

    #[test]
    fn builtin_examples() {
        let t = builtin_tables();
        assert_eq!(t.get(&key(Family::A, 2, 2, 1)).unwrap().module, FormalGModule::trivial(2, 1));
        let b2 = rs(Family::B, 2);
        assert_eq!(
            t.get(&key(Family::B, 2, 2, 2)).unwrap().module,
            FormalGModule::irreducible(b2.weight_from_root_integers(&[1, 1])).unwrap()
        );
        assert_eq!(
            t.get(&key(Family::A, 5, 4, 5)).unwrap().module,
            FormalGModule::irreducible(Weight(vec![0, 0, 2, 0, 0])).unwrap()
        );
        for p in [2, 3] {
            for rank in [5, 6] {
                assert_eq!(t.get(&key(Family::A, rank, 4, p)).unwrap().status, EntryStatus::TrivialIsotypicUnresolved);
            }
        }
        assert!(t.get(&key(Family::A, 6, 4, 5)).unwrap().module.is_zero());
        assert!(t.get(&key(Family::A, 4, 4, 5)).is_none());
        let a2_h2 = &t.get(&key(Family::A, 2, 3, 2)).unwrap().module;
        assert_eq!(a2_h2.dim(&rs(Family::A, 2)), BigUint::from(2u32 + 5 * 8 + 10 + 10));
    }

    #[test]
    fn json_round_trip() {
        let t = builtin_tables();
        let text = t.to_json();
        assert!(text.contains("\"A/5/4/5\""));
        assert_eq!(CohomologyTable::from_json(&text).unwrap(), t);
        assert!(matches!(CohomologyTable::from_json("{\"format\":\"x\",\"entries\":{}}"), Err(Error::MalformedLedger(_))));
    }

    #[test]
    fn empty_table_validates() {
        assert_eq!(validate_table(&CohomologyTable::new()).unwrap().entries_checked, 0);
    }

    #[test]
    fn lookup_rules() {
        let t = builtin_tables();
        let a2 = rs(Family::A, 2);
        assert!(lookup(&t, &a2, 0, 0).unwrap().certainly_nonzero());
        assert!(lookup(&t, &a2, 0, 1).unwrap().certainly_zero());
        assert!(lookup(&t, &a2, 3, 9).unwrap().certainly_zero());
        assert!(matches!(lookup(&t, &a2, 4, 0), Err(Error::LedgerGap { q: 4, p: 0, .. })));
    }

    #[test]
    fn a2_page() {
        let t = builtin_tables();
        let page = e_page(&t, Family::A, 2, 2).unwrap();
        let nonzero: Vec<(i64, usize)> = page.nonzero_cells().map(|c| (c.a, c.b)).collect();
        assert_eq!(nonzero, vec![(-2, 1), (0, 0)]);
        let a2 = rs(Family::A, 2);
        assert_eq!(page.cell(-2, 1).unwrap().decompose(&a2).unwrap(), FormalGModule::trivial(2, 1));
        let top = page.cell(0, 0).unwrap().decompose(&a2).unwrap();
        assert_eq!(top, repthy::decompose(&a2, &crate::bundles::parse("g*g").unwrap()).unwrap());
        assert_eq!(top.dim(&a2), BigUint::from(64u32));
        // (0, 0) is a possible target of d_2 from (-2, 1)
        assert!(!page.certainly_survives(-2, 1));
    }

    #[test]
    fn b2_page() {
        let t = builtin_tables();
        let page = e_page(&t, Family::B, 2, 2).unwrap();
        let nonzero: Vec<(i64, usize)> = page.nonzero_cells().map(|c| (c.a, c.b)).collect();
        assert_eq!(nonzero, vec![(-2, 1), (-2, 2), (0, 0)]);
        assert!(page.certainly_survives(-2, 2));
    }

    #[test]
    fn verdict_examples() {
        let t = builtin_tables();
        for r in 1..=6 {
            let v = verdict(&t, Family::A, 2, r).unwrap();
            assert_eq!((v.normal, v.rational), (Normality::Yes, Rationality::Yes));
            assert!(v.by_vanishing_criterion);
        }
        let v = verdict(&t, Family::B, 2, 2).unwrap();
        assert_eq!(v.normal, Normality::No);
        assert_eq!((v.witnesses[0].a, v.witnesses[0].b), (-2, 2));
        let v = verdict(&t, Family::A, 3, 3).unwrap();
        assert_eq!(v.normal, Normality::No);
        assert_eq!((v.witnesses[0].a, v.witnesses[0].b), (-3, 3));
        let a5 = rs(Family::A, 5);
        let v = verdict(&t, Family::A, 5, 4).unwrap();
        assert_eq!(v.rational, Rationality::NormalizationNotRational);
        assert_eq!(v.normal, Normality::Unknown);
        assert_eq!(v.witnesses.len(), 1);
        let w = &v.witnesses[0];
        assert_eq!((w.a, w.b), (-4, 5));
        assert_eq!(w.module.dim(&a5), BigUint::from(175u32));
    }

    #[test]
    fn verdict_ignores_unresolved_multiplicities() {
        let base = builtin_tables();
        let expected: Vec<Verdict> =
            [(5, 4), (6, 4)].iter().map(|&(rank, r)| verdict(&base, Family::A, rank, r).unwrap()).collect();
        for mult in [2, 3, 40] {
            let mut t = base.clone();
            for rank in [5, 6] {
                for p in [2, 3] {
                    t.get_mut(&key(Family::A, rank, 4, p)).unwrap().module = FormalGModule::trivial(rank, mult);
                }
            }
            let got: Vec<Verdict> =
                [(5, 4), (6, 4)].iter().map(|&(rank, r)| verdict(&t, Family::A, rank, r).unwrap()).collect();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn verdict_independent_of_insertion_order() {
        let base = builtin_tables();
        let mut reversed = CohomologyTable::new();
        let entries: Vec<_> = base.iter().map(|(k, e)| (*k, e.clone())).collect();
        for (k, e) in entries.into_iter().rev() {
            reversed.insert(k, e);
        }
        for (family, rank, r) in [(Family::A, 3, 3), (Family::B, 2, 2), (Family::A, 2, 2)] {
            assert_eq!(verdict(&base, family, rank, r).unwrap(), verdict(&reversed, family, rank, r).unwrap());
        }
    }

    #[test]
    fn missing_column_is_a_gap() {
        let t = builtin_tables();
        assert!(matches!(verdict(&t, Family::B, 2, 3), Err(Error::LedgerGap { q: 3, .. })));
    }
}
