use bott_null_core::bundles::parse;
use bott_null_core::ledger::{builtin_tables, e_page, validate_table, TableKey};
use bott_null_core::repthy::FormalGModule;
use bott_null_core::{build_root_system, Error, Family, Weight};
use num_bigint::BigUint;
use std::time::Instant;

#[test]
fn builtin_tables_pass_validation() {
    let start = Instant::now();
    let report = validate_table(&builtin_tables()).unwrap();
    assert!(report.entries_checked > 100);
    assert!(report.columns.contains(&(Family::A, 5, 4)));
    assert!(report.columns.contains(&(Family::B, 2, 2)));
    eprintln!("validated {} entries in {:?}", report.entries_checked, start.elapsed());
}

#[test]
fn corrupted_entry_fails_validation() {
    let mut t = builtin_tables();
    let key = TableKey { family: Family::A, rank: 2, q: 2, p: 1 };
    t.get_mut(&key).unwrap().module = FormalGModule::irreducible(Weight(vec![1, 1])).unwrap();
    match validate_table(&t) {
        Err(Error::ValidationFailure { key, .. }) => assert_eq!(key, "A/2/2/1"),
        other => panic!("expected a validation failure, got {other:?}"),
    }
}

#[test]
fn excess_multiplicity_fails_validation() {
    let mut t = builtin_tables();
    let key = TableKey { family: Family::B, rank: 2, q: 2, p: 2 };
    let rs = build_root_system(Family::B, 2).unwrap();
    let alpha = rs.weight_from_root_integers(&[1, 1]);
    t.get_mut(&key).unwrap().module = FormalGModule::irreducible(alpha).unwrap().scaled(2);
    assert!(matches!(validate_table(&t), Err(Error::ValidationFailure { .. })));
}

#[test]
fn page_origin_is_the_tensor_power_of_g() {
    let t = builtin_tables();
    for (family, rank, r) in [(Family::A, 2, 1), (Family::A, 2, 2), (Family::A, 3, 2), (Family::B, 2, 2), (Family::A, 3, 3)] {
        let rs = build_root_system(family, rank).unwrap();
        let page = e_page(&t, family, rank, r).unwrap();
        let origin = page.cell(0, 0).unwrap().decompose(&rs).unwrap();
        let g_dim = 2 * rs.num_positive_roots() + rank;
        assert_eq!(origin.dim(&rs), BigUint::from(g_dim).pow(r as u32));
        let text = vec!["g"; r].join("*");
        assert_eq!(origin, bott_null_core::repthy::decompose(&rs, &parse(&text).unwrap()).unwrap());
        assert!(page.cells.keys().all(|&(a, b)| (-(r as i64)..=0).contains(&a) && b <= rs.num_positive_roots()));
    }
}
