use iomdin_core::fixtures::{list_fixtures, load_fixture, mismatches};
use iomdin_core::report::invariant_report;

#[test]
fn every_fixture_reproduces_its_expected_values() {
    for name in list_fixtures() {
        let s = load_fixture(name).unwrap();
        let report = invariant_report(&s).unwrap_or_else(|e| panic!("{name}: {e}"));
        let diff = mismatches(s.expected.as_ref().unwrap(), &report);
        assert!(diff.is_empty(), "{name}: {diff:#?}");
    }
}

#[test]
fn brieskorn_family() {
    for name in ["brieskorn-2-2-2", "brieskorn-2-3-5", "brieskorn-3-3-4"] {
        let s = load_fixture(name).unwrap();
        let diff = mismatches(s.expected.as_ref().unwrap(), &invariant_report(&s).unwrap());
        assert!(diff.is_empty(), "{name}: {diff:#?}");
    }
}

#[test]
fn exported_datasets_never_fail() {
    use iomdin_core::strat::{branch_tables, export_dataset, verify_stratified_identities, Status};
    for name in ["cylinder", "three-lines", "d-infinity", "three-axes", "a2-polar", "cusp-isolated"] {
        let s = load_fixture(name).unwrap();
        let thr = iomdin_core::iomdin::prepare(&s).unwrap().threshold;
        for n in thr..thr + 3 {
            let e = export_dataset(&s, n).unwrap_or_else(|e| panic!("{name} N = {n}: {e}"));
            let v = verify_stratified_identities(e.dataset.as_ref().unwrap(), e.dim, None, &branch_tables(&e));
            assert!(v.iter().all(|v| v.status != Status::Fail), "{name} N = {n}: {v:#?}");
            let main = v.iter().find(|v| v.identity == "main-theorem").unwrap();
            if !branch_tables(&e).is_empty() {
                assert_eq!(main.status, Status::Pass, "{name} N = {n}");
            }
        }
    }
}

#[test]
fn bls_is_stable_under_refinement() {
    use iomdin_core::strat::{bls_euler_obstruction, Space};
    for name in ["cusp-curve", "node-curve"] {
        let s = load_fixture(name).unwrap();
        let ds = s.dataset.clone().unwrap();
        let before = bls_euler_obstruction(&ds, Space::X).unwrap();
        let mut refined = ds.clone();
        let reg = refined.records.iter().position(|r| r.name == "reg").unwrap();
        let mut half = refined.records[reg].clone();
        let chi = half.chi[&iomdin_core::strat::Func::L];
        half.chi.insert(iomdin_core::strat::Func::L, chi - 1);
        let mut piece = half.clone();
        piece.name = "reg-piece".into();
        piece.chi.insert(iomdin_core::strat::Func::L, 1);
        refined.records[reg] = half;
        refined.records.push(piece);
        assert_eq!(bls_euler_obstruction(&refined, Space::X).unwrap(), before, "{name}");
    }
}
