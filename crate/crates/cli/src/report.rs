//! Every known table for one root system, recomputed and checked.

use std::collections::{BTreeMap, BTreeSet};

use bott_null_core::bundles::{parse, BundleExpr};
use bott_null_core::bwb::{self, LineCohomology};
use bott_null_core::ledger::{self, builtin_tables, e_page, validate_table, CohomologyTable, EntryStatus, Normality, Rationality, TableKey};
use bott_null_core::repthy::{self, FormalGModule};
use bott_null_core::weyl::{self, WeylWord};
use bott_null_core::{Family, RootSystem, Weight};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::commands::verdict_json;
use crate::output::{big, module_json, root_or_null, Output, Table};
use crate::Failure;

struct Artifact {
    name: &'static str,
    pass: bool,
    details: Value,
}

fn artifact(name: &'static str, pass: bool, details: Value) -> Artifact {
    Artifact { name, pass, details }
}

pub(crate) fn run(rs: &RootSystem, seed: u64) -> Result<Output, Failure> {
    let table = builtin_tables();
    let n = rs.rank + 1;
    let type_a = rs.family == Family::A;
    let mut items = vec![b_vanishes(rs, &table)?];
    if rs.num_positive_roots() <= 10 {
        items.push(kostant(rs));
    }
    items.push(distinct_roots(rs, seed));
    if let Some(a) = dot_identities(rs) {
        items.push(a);
    }
    if type_a && (3..=7).contains(&n) {
        items.push(singular_certificates(rs));
    }
    if type_a && n >= 3 || rs.family == Family::B {
        let extra: Vec<(usize, Vec<Vec<i64>>)> = if type_a { vec![] } else { vec![(2, vec![vec![1, 1]])] };
        let max_degree = if type_a { None } else { Some(3) };
        items.push(support_artifact("b-squared-potential-support", rs, "b*b", &extra, max_degree)?);
        items.push(b_squared_cohomology(rs, &table)?);
    }
    if type_a && n >= 3 {
        items.push(g_mod_b_squared_sections(rs, &table)?);
        let extra = match n {
            3 => vec![(2, vec![vec![1, 1], vec![2, 1], vec![1, 2]]), (3, vec![vec![1, 1]])],
            4 => vec![(3, vec![vec![1, 2, 1]])],
            _ => vec![],
        };
        items.push(support_artifact("b-cubed-potential-support", rs, "b^3", &extra, None)?);
        items.push(b_cubed_cohomology(rs, &table)?);
    }
    if type_a && (n == 6 || n == 7) {
        let extra = if n == 6 { vec![(5, vec![vec![1, 2, 3, 2, 1]])] } else { vec![] };
        items.push(support_artifact("b-fourth-potential-support", rs, "b^4", &extra, None)?);
        items.push(b_fourth_cohomology(rs, &table)?);
    }
    if let Some(a) = verdicts(rs, &table)? {
        items.push(a);
    }

    let passed = items.iter().filter(|a| a.pass).count();
    let failed = items.len() - passed;
    let rows = items
        .iter()
        .map(|a| vec![a.name.to_string(), if a.pass { "pass" } else { "fail" }.to_string()])
        .collect();
    let artifacts: Vec<Value> = items
        .into_iter()
        .map(|a| json!({ "name": a.name, "status": if a.pass { "pass" } else { "fail" }, "details": a.details }))
        .collect();
    let mut out = Output::with_table(
        json!({ "artifacts": artifacts, "passed": passed, "failed": failed }),
        Table { headers: vec!["artifact", "status"], rows },
    );
    out.ok = failed == 0;
    Ok(out)
}

fn column_table(table: &CohomologyTable, rs: &RootSystem, q: usize) -> CohomologyTable {
    let mut out = CohomologyTable::new();
    for (k, e) in table.iter() {
        if k.family == rs.family && k.rank == rs.rank && k.q == q {
            out.insert(*k, e.clone());
        }
    }
    out
}

/// Ledger column `q` as JSON plus whether it passes validation and matches `expected`.
fn check_column(
    table: &CohomologyTable,
    rs: &RootSystem,
    q: usize,
    expected: &BTreeMap<usize, (FormalGModule, EntryStatus)>,
) -> Result<(bool, Value), Failure> {
    let column = column_table(table, rs, q);
    let validation = validate_table(&column);
    let complete = column.len() == rs.num_positive_roots() + 1;
    let mut matches = complete;
    let mut nonzero = Vec::new();
    for (k, e) in column.iter() {
        let (want, status) = expected
            .get(&k.p)
            .cloned()
            .unwrap_or((FormalGModule::new(), EntryStatus::Exact));
        let same = if status == EntryStatus::Exact { e.module == want } else { e.module.is_trivial_isotypic() };
        matches &= same && e.status == status;
        if !e.module.is_zero() {
            nonzero.push(json!({
                "p": k.p,
                "module": module_json(rs, &e.module),
                "status": e.status,
                "provenance": e.provenance,
            }));
        }
    }
    let details = json!({
        "q": q,
        "entries": column.len(),
        "nonzero": nonzero,
        "validated": validation.is_ok(),
        "validation_error": validation.as_ref().err().map(ToString::to_string),
    });
    Ok((validation.is_ok() && matches, details))
}

fn irr(rs: &RootSystem, rc: &[i64]) -> FormalGModule {
    FormalGModule::irreducible(rs.weight_from_root_integers(rc)).expect("dominant")
}

fn b_vanishes(rs: &RootSystem, table: &CohomologyTable) -> Result<Artifact, Failure> {
    let (ok, mut details) = check_column(table, rs, 1, &BTreeMap::new())?;
    let ps = bwb::psupp(rs, &BundleExpr::Atom(bott_null_core::bundles::Atom::B))?;
    let zero = Weight::zero(rs.rank);
    let only_trivial = ps.set_view().values().all(|s| s.iter().all(|w| *w == zero));
    details["potential_support_degrees"] = json!(ps.degrees.keys().collect::<Vec<_>>());
    Ok(artifact("b-cohomology-vanishes", ok && only_trivial, details))
}

fn kostant(rs: &RootSystem) -> Artifact {
    let counts = weyl::poincare_counts(rs);
    let mut verified = Vec::new();
    let mut errors = Vec::new();
    for k in 0..=rs.num_positive_roots() {
        match bwb::kostant_check(rs, k) {
            Ok(c) => verified.push(c),
            Err(e) => errors.push(e.to_string()),
        }
    }
    let pass = errors.is_empty() && verified == counts;
    artifact("kostant-hodge", pass, json!({ "length_profile": counts, "trivial_multiplicities": verified, "errors": errors }))
}

fn distinct_roots(rs: &RootSystem, seed: u64) -> Artifact {
    let r = bwb::distinct_roots_check(rs, seed);
    artifact(
        "distinct-roots",
        r.violations.is_empty(),
        json!({ "subsets_checked": r.subsets_checked, "exhaustive": r.exhaustive, "violations": r.violations.len() }),
    )
}

fn dot_identities(rs: &RootSystem) -> Option<Artifact> {
    // (letters in product order, argument, expected) in root coordinates
    let cases: Vec<(Vec<usize>, Vec<i64>, Vec<i64>)> = match (rs.family, rs.rank) {
        (Family::A, 2) => vec![
            (vec![1, 2], vec![2, 1], vec![-3, 0]),
            (vec![2, 1], vec![1, 2], vec![0, -3]),
            (vec![1, 2, 1], vec![1, 1], vec![-3, -3]),
        ],
        (Family::A, 3) => vec![(vec![2, 1, 3], vec![1, 2, 1], vec![0, -3, 0])],
        // s5 s1 s4 s2 s3 read in order of application
        (Family::A, 5) => vec![(vec![3, 2, 4, 1, 5], vec![1, 2, 3, 2, 1], vec![0, 0, -4, 0, 0])],
        _ => return None,
    };
    let mut pass = true;
    let mut rows = Vec::new();
    for (letters, arg, want) in cases {
        let w = WeylWord::new(letters);
        let lambda = rs.weight_from_root_integers(&arg);
        let got = weyl::dot(rs, &w, &lambda);
        let cross = weyl::dot_via_inversions(rs, &w, &lambda);
        let ok = got == rs.weight_from_root_integers(&want) && cross == got;
        pass &= ok;
        rows.push(json!({
            "word": w.to_string(),
            "argument": root_or_null(rs, &lambda),
            "dot": root_or_null(rs, &got),
            "ok": ok,
        }));
    }
    Some(artifact("dot-identities", pass, json!(rows)))
}

fn singular_certificates(rs: &RootSystem) -> Artifact {
    let rank = rs.rank;
    let mut pass = true;
    let mut rows = Vec::new();
    for i in 0..rank {
        let lambda = rs.simple_root(i).scaled(-2);
        let mut walls = Vec::new();
        for j in [i.checked_sub(1), (i + 1 < rank).then_some(i + 1)].into_iter().flatten() {
            let mut rc = vec![0; rank];
            rc[i] = 1;
            rc[j] = 1;
            let ok = bwb::is_wall_certificate(rs, &lambda, &rc);
            pass &= ok;
            walls.push(json!({ "root": root_or_null(rs, &rs.weight_from_root_integers(&rc)), "pairing_zero": ok }));
        }
        let vanishes = bwb::line_cohomology(rs, &lambda) == LineCohomology::Vanishes;
        pass &= vanishes;
        rows.push(json!({ "simple_root": i + 1, "walls": walls, "vanishes": vanishes }));
    }
    artifact("singular-certificates", pass, json!(rows))
}

/// Set view of PSupp: every nonempty degree holds `{0}` plus the listed extra weights.
fn support_artifact(
    name: &'static str,
    rs: &RootSystem,
    expr: &str,
    extra: &[(usize, Vec<Vec<i64>>)],
    max_degree: Option<usize>,
) -> Result<Artifact, Failure> {
    let ps = bwb::psupp(rs, &parse(expr)?)?;
    let view = ps.set_view();
    let zero = Weight::zero(rs.rank);
    let expected_at = |k: usize| -> BTreeSet<Weight> {
        let mut s = BTreeSet::from([zero.clone()]);
        for (d, ws) in extra {
            if *d == k {
                s.extend(ws.iter().map(|rc| rs.weight_from_root_integers(rc)));
            }
        }
        s
    };
    let mut pass = view.iter().all(|(&k, s)| *s == expected_at(k));
    pass &= extra.iter().all(|(d, _)| view.contains_key(d));
    if let Some(m) = max_degree {
        pass &= view.keys().all(|&k| k <= m);
    }
    let degrees: Vec<Value> = view
        .iter()
        .map(|(k, s)| json!({ "degree": k, "support": s.iter().map(|w| root_or_null(rs, w)).collect::<Vec<_>>() }))
        .collect();
    Ok(artifact(name, pass, json!({ "expr": expr, "degrees": degrees })))
}

fn b_squared_cohomology(rs: &RootSystem, table: &CohomologyTable) -> Result<Artifact, Failure> {
    let mut expected = BTreeMap::from([(1, (FormalGModule::trivial(rs.rank, 1), EntryStatus::Exact))]);
    let mut pass = true;
    let mut extra = Value::Null;
    if rs.family == Family::B {
        expected.insert(2, (irr(rs, &[1, 1]), EntryStatus::Exact));
        // the weight α1+α2 must occur exactly once, in degree 2
        let ps = bwb::psupp(rs, &parse("b*b")?)?;
        let alpha = rs.weight_from_root_integers(&[1, 1]);
        let occurrences: Vec<(usize, u64)> =
            ps.degrees.iter().filter_map(|(&k, m)| m.get(&alpha).map(|&c| (k, c))).collect();
        pass &= occurrences == vec![(2, 1)];
        extra = json!(occurrences);
    }
    let (ok, mut details) = check_column(table, rs, 2, &expected)?;
    details["short_root_sum_occurrences"] = extra;
    Ok(artifact("b-squared-cohomology", ok && pass, details))
}

fn g_mod_b_squared_sections(rs: &RootSystem, table: &CohomologyTable) -> Result<Artifact, Failure> {
    let page = e_page(table, rs.family, rs.rank, 2)?;
    let cells: Vec<(i64, usize)> = page.nonzero_cells().map(|c| (c.a, c.b)).collect();
    let lower = page.cell(-2, 1).map(|c| c.cohomology.module.clone()).unwrap_or_default();
    let gg = repthy::decompose(rs, &parse("g*g")?)?;
    let invariants = repthy::invariant_dim(rs, &parse("g*g")?)?;
    // the class at (-2, 1) sits in negative total degree, so d_2 must embed it into (0, 0)
    let mut sections = gg.clone();
    let shape_ok = cells == vec![(-2, 1), (0, 0)] && lower == FormalGModule::trivial(rs.rank, 1) && invariants == 1;
    if shape_ok {
        sections = FormalGModule::from_components(gg.iter().map(|(w, m)| (w.clone(), if w.is_zero() { m - 1 } else { m })))?;
    }
    let g_dim = BigUint::from(2 * rs.num_positive_roots() + rs.rank);
    let dim_ok = sections.dim(rs) + BigUint::from(1u32) == g_dim.pow(2);
    Ok(artifact(
        "g-mod-b-squared-sections",
        shape_ok && dim_ok && sections.multiplicity(&Weight::zero(rs.rank)) == 0,
        json!({
            "page_nonzero": cells.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
            "invariants_in_g_tensor_g": invariants,
            "h0": module_json(rs, &sections),
            "h0_dim": big(&sections.dim(rs)),
        }),
    ))
}

fn b_cubed_cohomology(rs: &RootSystem, table: &CohomologyTable) -> Result<Artifact, Failure> {
    let n = rs.rank + 1;
    let h2 = if n == 3 {
        FormalGModule::trivial(2, 2).direct_sum(&irr(rs, &[1, 1]).scaled(5)).direct_sum(&irr(rs, &[2, 1])).direct_sum(&irr(rs, &[1, 2]))
    } else {
        FormalGModule::trivial(rs.rank, 2)
    };
    let mut expected = BTreeMap::from([(2, (h2, EntryStatus::Exact))]);
    if n == 4 {
        expected.insert(3, (irr(rs, &[1, 2, 1]), EntryStatus::Exact));
    }
    let (ok, mut details) = check_column(table, rs, 3, &expected)?;
    // trivial part of H^2(b^3) equals the invariants of g^3
    let invariants = repthy::invariant_dim(rs, &parse("g^3")?)?;
    let stored = table
        .get(&TableKey { family: rs.family, rank: rs.rank, q: 3, p: 2 })
        .map_or(0, |e| e.module.multiplicity(&Weight::zero(rs.rank)));
    details["invariants_in_g_cubed"] = json!(invariants);
    details["trivial_multiplicity_degree_2"] = json!(stored);
    Ok(artifact("b-cubed-cohomology", ok && invariants == 2 && stored == invariants, details))
}

fn b_fourth_cohomology(rs: &RootSystem, table: &CohomologyTable) -> Result<Artifact, Failure> {
    let unresolved = (FormalGModule::trivial(rs.rank, 1), EntryStatus::TrivialIsotypicUnresolved);
    let mut expected = BTreeMap::from([(2, unresolved.clone()), (3, unresolved)]);
    if rs.rank == 5 {
        expected.insert(5, (irr(rs, &[1, 2, 3, 2, 1]), EntryStatus::Exact));
    }
    let (ok, details) = check_column(table, rs, 4, &expected)?;
    Ok(artifact("b-fourth-cohomology", ok, details))
}

fn verdicts(rs: &RootSystem, table: &CohomologyTable) -> Result<Option<Artifact>, Failure> {
    let mut rows = Vec::new();
    let mut pass = true;
    match (rs.family, rs.rank) {
        (Family::A, 2) => {
            for r in 1..=6 {
                let v = ledger::verdict(table, rs.family, rs.rank, r)?;
                pass &= v.normal == Normality::Yes && v.rational == Rationality::Yes;
                rows.push(verdict_json(rs, r, &v));
            }
            // d_2 from (-2, 1) can hit (0, 0), so that class is not an isolated survivor
            let page = e_page(table, rs.family, rs.rank, 2)?;
            let flagged = page.certainly_survives(-2, 1);
            pass &= !flagged;
            rows.push(json!({ "r": 2, "cell": [-2, 1], "certainly_survives": flagged }));
        }
        (Family::A, 3) => {
            let v = ledger::verdict(table, rs.family, rs.rank, 3)?;
            pass &= v.normal == Normality::No && v.witnesses.iter().any(|w| (w.a, w.b) == (-3, 3));
            rows.push(verdict_json(rs, 3, &v));
        }
        (Family::A, 5) => {
            let v = ledger::verdict(table, rs.family, rs.rank, 4)?;
            let witness_ok = v
                .witnesses
                .iter()
                .any(|w| (w.a, w.b) == (-4, 5) && w.module.dim(rs) == BigUint::from(175u32));
            pass &= v.rational == Rationality::NormalizationNotRational && witness_ok;
            rows.push(verdict_json(rs, 4, &v));
        }
        (Family::B, 2) => {
            let v = ledger::verdict(table, rs.family, rs.rank, 2)?;
            pass &= v.normal == Normality::No && v.witnesses.iter().any(|w| (w.a, w.b) == (-2, 2));
            rows.push(verdict_json(rs, 2, &v));
        }
        _ => return Ok(None),
    }
    Ok(Some(artifact("verdicts", pass, json!(rows))))
}
