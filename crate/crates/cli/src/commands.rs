use std::fs;

use bott_null_core::bundles::{self, parse};
use bott_null_core::bwb::{self, LineCohomology};
use bott_null_core::ledger::{self, builtin_tables, CohomologyTable, Verdict};
use bott_null_core::nullcone::{self, MatrixTuple};
use bott_null_core::repthy;
use bott_null_core::rootsys::{parse_weight, weight_to_root_coords};
use bott_null_core::weyl::{self, DominanceResult, WeylWord};
use bott_null_core::RootSystem;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::output::{big, module_json, root_or_null, weight_fields, Output, Table};
use crate::{report, root_system, Cli, Command, Failure};

pub(crate) fn dispatch(cli: &Cli) -> Result<(Option<String>, Output), Failure> {
    if let Command::Nullcone { matrices, samples, size, count } = &cli.command {
        return Ok((None, nullcone_cmd(cli, matrices.as_deref(), *samples, *size, *count)?));
    }
    let rs = root_system(cli)?;
    let out = match &cli.command {
        Command::Roots => roots(&rs),
        Command::Weyl { word, weight } => weyl_cmd(&rs, word.as_deref(), weight.as_deref())?,
        Command::Bwb { weight } => bwb_cmd(&rs, weight)?,
        Command::Weights { expr } => weights_cmd(&rs, expr)?,
        Command::Psupp { expr } => psupp_cmd(&rs, expr)?,
        Command::Mult { expr, weight } => {
            let mu = parse_weight(&rs, weight)?;
            let m = repthy::mult_in(&rs, &parse(expr)?, &mu)?;
            let mut o = weight_fields(&rs, &mu);
            o.insert("expr".into(), json!(expr));
            o.insert("multiplicity".into(), json!(m));
            Output::new(Value::Object(o))
        }
        Command::Dim { expr } => {
            let e = parse(expr)?;
            Output::new(json!({ "expr": e.to_string(), "dim": big(&bundles::dim(&rs, &e)) }))
        }
        Command::Decompose { expr } => decompose_cmd(&rs, expr)?,
        Command::Verdict { r, ledger } => verdict_cmd(&rs, *r, ledger.as_deref())?,
        Command::Report => report::run(&rs, cli.seed)?,
        Command::Nullcone { .. } => unreachable!("handled above"),
    };
    Ok((Some(rs.label()), out))
}

fn roots(rs: &RootSystem) -> Output {
    let rows: Vec<Vec<String>> = rs
        .positive_roots
        .iter()
        .map(|r| {
            vec![
                r.height.to_string(),
                weight_to_root_coords(rs, &r.weight).to_string(),
                r.weight.to_string(),
                r.coroot.iter().map(i64::to_string).collect::<Vec<_>>().join(","),
            ]
        })
        .collect();
    let roots: Vec<Value> = rs
        .positive_roots
        .iter()
        .map(|r| {
            let mut o = weight_fields(rs, &r.weight);
            o.insert("height".into(), json!(r.height));
            o.insert("coroot".into(), json!(r.coroot));
            Value::Object(o)
        })
        .collect();
    let payload = json!({
        "cartan": rs.cartan,
        "rho": rs.rho.to_string(),
        "highest_root": weight_fields(rs, &rs.highest_root().weight),
        "num_positive_roots": rs.num_positive_roots(),
        "positive_roots": roots,
    });
    Output::with_table(payload, Table { headers: vec!["height", "root", "weight", "coroot"], rows })
}

fn parse_word(rs: &RootSystem, text: &str) -> Result<WeylWord, Failure> {
    let t = text.trim();
    if t.is_empty() || t == "e" {
        return Ok(WeylWord::identity());
    }
    let parts: Vec<&str> = if t.starts_with('s') {
        t.split('s').filter(|p| !p.is_empty()).collect()
    } else {
        t.split(',').collect()
    };
    let mut letters = Vec::with_capacity(parts.len());
    for p in parts {
        let l: usize = p.trim().parse().map_err(|_| Failure::usage(format!("bad Weyl word `{text}`")))?;
        if l == 0 || l > rs.rank {
            return Err(Failure::usage(format!("letter {l} out of range 1..={}", rs.rank)));
        }
        letters.push(l);
    }
    Ok(WeylWord::new(letters))
}

fn weyl_cmd(rs: &RootSystem, word: Option<&str>, weight: Option<&str>) -> Result<Output, Failure> {
    let Some(word) = word else {
        let counts = weyl::poincare_counts(rs);
        let order: u64 = counts.iter().sum();
        let rows = counts.iter().enumerate().map(|(k, c)| vec![k.to_string(), c.to_string()]).collect();
        return Ok(Output::with_table(
            json!({ "order": order, "length_profile": counts }),
            Table { headers: vec!["length", "count"], rows },
        ));
    };
    let w = parse_word(rs, word)?;
    let reduced = weyl::reduce(rs, &w);
    let inversions: Vec<Value> =
        weyl::inversion_set(rs, &w).into_iter().map(|i| root_or_null(rs, &rs.positive_roots[i].weight)).collect();
    let mut payload = json!({
        "word": w.to_string(),
        "reduced": reduced.to_string(),
        "length": weyl::length(rs, &w),
        "inversions": inversions,
    });
    if let Some(text) = weight {
        let lambda = parse_weight(rs, text)?;
        let obj = payload.as_object_mut().expect("object");
        obj.insert("input".into(), Value::Object(weight_fields(rs, &lambda)));
        obj.insert("action".into(), Value::Object(weight_fields(rs, &weyl::act(rs, &w, &lambda))));
        obj.insert("dot".into(), Value::Object(weight_fields(rs, &weyl::dot(rs, &w, &lambda))));
    }
    Ok(Output::new(payload))
}

fn bwb_cmd(rs: &RootSystem, weight: &str) -> Result<Output, Failure> {
    let lambda = parse_weight(rs, weight)?;
    let mut o = serde_json::Map::new();
    o.insert("input".into(), Value::Object(weight_fields(rs, &lambda)));
    match weyl::to_dominant(rs, &lambda) {
        DominanceResult::Singular => {
            o.insert("vanishes".into(), json!(true));
            let wall = rs
                .positive_roots
                .iter()
                .find(|r| r.pair(&(&lambda + &rs.rho)) == 0)
                .map(|r| root_or_null(rs, &r.weight));
            o.insert("wall".into(), wall.unwrap_or(Value::Null));
        }
        DominanceResult::Regular { length, word, dominant } => {
            debug_assert_eq!(
                bwb::line_cohomology(rs, &lambda),
                LineCohomology::Concentrated { degree: length, weight: dominant.clone() }
            );
            o.insert("vanishes".into(), json!(false));
            o.insert("degree".into(), json!(length));
            o.insert("weight".into(), json!(dominant.to_string()));
            o.insert("root".into(), root_or_null(rs, &dominant));
            o.insert("word".into(), json!(word.to_string()));
            o.insert("dim".into(), big(&repthy::weyl_dim(rs, &dominant)?));
        }
    }
    Ok(Output::new(Value::Object(o)))
}

fn weights_cmd(rs: &RootSystem, expr: &str) -> Result<Output, Failure> {
    let e = parse(expr)?;
    let chi = bundles::weights(rs, &e)?;
    let mut rows = Vec::new();
    let mut list = Vec::new();
    for (w, m) in chi.iter() {
        let root = root_or_null(rs, w);
        rows.push(vec![w.to_string(), root.as_str().unwrap_or("").to_string(), m.to_string()]);
        let mut o = weight_fields(rs, w);
        o.insert("mult".into(), json!(m));
        list.push(Value::Object(o));
    }
    let payload = json!({ "expr": e.to_string(), "dim": chi.total_dim(), "distinct": chi.distinct(), "weights": list });
    Ok(Output::with_table(payload, Table { headers: vec!["weight", "root", "mult"], rows }))
}

fn psupp_cmd(rs: &RootSystem, expr: &str) -> Result<Output, Failure> {
    let e = parse(expr)?;
    let ps = bwb::psupp(rs, &e)?;
    let mut rows = Vec::new();
    let mut degrees = Vec::new();
    for (k, m) in &ps.degrees {
        let mut entries = Vec::new();
        for (w, c) in m {
            let root = root_or_null(rs, w);
            rows.push(vec![k.to_string(), w.to_string(), root.as_str().unwrap_or("").to_string(), c.to_string()]);
            let mut o = weight_fields(rs, w);
            o.insert("mult".into(), json!(c));
            entries.push(Value::Object(o));
        }
        degrees.push(json!({ "degree": k, "support": entries }));
    }
    let payload = json!({ "expr": e.to_string(), "degrees": degrees });
    Ok(Output::with_table(payload, Table { headers: vec!["degree", "weight", "root", "mult"], rows }))
}

fn decompose_cmd(rs: &RootSystem, expr: &str) -> Result<Output, Failure> {
    let e = parse(expr)?;
    let m = repthy::decompose(rs, &e)?;
    let rows = m
        .iter()
        .map(|(w, c)| {
            let root = root_or_null(rs, w);
            vec![
                w.to_string(),
                root.as_str().unwrap_or("").to_string(),
                c.to_string(),
                repthy::weyl_dim(rs, w).expect("dominant").to_string(),
            ]
        })
        .collect();
    let payload = json!({ "expr": e.to_string(), "dim": big(&m.dim(rs)), "components": module_json(rs, &m) });
    Ok(Output::with_table(payload, Table { headers: vec!["weight", "root", "mult", "dim"], rows }))
}

pub(crate) fn verdict_json(rs: &RootSystem, r: usize, v: &Verdict) -> Value {
    let witnesses: Vec<Value> = v
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "a": w.a,
                "b": w.b,
                "module": module_json(rs, &w.module),
                "dim": big(&w.module.dim(rs)),
                "reason": w.reason,
            })
        })
        .collect();
    json!({
        "r": r,
        "normal": v.normal,
        "rational": v.rational,
        "route": if v.by_vanishing_criterion { "vanishing-criterion" } else { "page-isolation" },
        "witnesses": witnesses,
    })
}

fn verdict_cmd(rs: &RootSystem, r: usize, ledger_path: Option<&str>) -> Result<Output, Failure> {
    if r == 0 {
        return Err(Failure::usage("-r must be at least 1"));
    }
    let table = match ledger_path {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {path}: {e}")))?;
            let table = CohomologyTable::from_json(&text)?;
            ledger::validate_table(&table)?;
            table
        }
        None => builtin_tables(),
    };
    let v = ledger::verdict(&table, rs.family, rs.rank, r)?;
    let rows = v
        .witnesses
        .iter()
        .map(|w| vec![w.a.to_string(), w.b.to_string(), w.module.to_string(), w.reason.clone()])
        .collect();
    let mut out = Output::with_table(verdict_json(rs, r, &v), Table { headers: vec!["a", "b", "module", "reason"], rows });
    if v.witnesses.is_empty() {
        out.table = None;
    }
    Ok(out)
}

fn nullcone_cmd(
    cli: &Cli,
    matrices: Option<&str>,
    samples: Option<usize>,
    size: Option<usize>,
    count: Option<usize>,
) -> Result<Output, Failure> {
    match (matrices, samples) {
        (Some(text), None) => {
            let text = match text.strip_prefix('@') {
                Some(path) => fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {path}: {e}")))?,
                None => text.to_string(),
            };
            let t = MatrixTuple::from_json(&text)?;
            let flag = nullcone::common_flag(&t);
            let basis = flag.as_ref().map(|f| nullcone::matrix_to_json(&f.matrix()));
            Ok(Output::new(json!({
                "size": t.size(),
                "count": t.matrices().len(),
                "in_nullcone": nullcone::in_nullcone(&t),
                "flag_basis_columns": basis,
            })))
        }
        (None, Some(n_samples)) => {
            let n = size.ok_or_else(|| Failure::usage("--size is required with --samples"))?;
            let r = count.ok_or_else(|| Failure::usage("-r is required with --samples"))?;
            if n == 0 || r == 0 {
                return Err(Failure::usage("--size and -r must be positive"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let (mut members, mut disagreements) = (0usize, 0usize);
            for _ in 0..n_samples {
                let t = nullcone::random_tuple(&mut rng, n, r);
                let member = nullcone::in_nullcone(&t);
                let flag_ok = match nullcone::common_flag(&t) {
                    Some(f) => member && f.triangularizes(&t),
                    None => !member,
                };
                members += usize::from(member);
                disagreements += usize::from(!flag_ok);
            }
            Ok(Output::new(json!({
                "size": n,
                "count": r,
                "seed": cli.seed,
                "samples": n_samples,
                "members": members,
                "flag_disagreements": disagreements,
            })))
        }
        _ => Err(Failure::usage("give exactly one of --matrices or --samples")),
    }
}
