//! The ten acceptance criteria, each at exact integer equality.

use iomdin_core::algebra::{QuotientDim, Ring};
use iomdin_core::fixtures::{list_fixtures, load_fixture};
use iomdin_core::frontend::{load_scenario, parse_poly, print_poly, save_scenario, FSpec, Scenario};
use iomdin_core::iomdin::{prepare, verify_sweep, RowRange, VerdictTable};
use iomdin_core::local::{jacobian_ideal, milnor_number};
use iomdin_core::polar::{intersection_number, relative_polar_ideal, verify_polar_decomposition};
use iomdin_core::report::invariant_report;
use iomdin_core::strat::{self, Space, Status};
use iomdin_core::Limits;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(name: &str) -> Scenario {
    load_fixture(name).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn given_f(s: &Scenario) -> iomdin_core::algebra::Poly {
    match &s.f {
        FSpec::Given(f) => f.clone(),
        FSpec::GenericLinear => panic!("{} has a generic f", s.name),
    }
}

/// Brieskorn-Pham: `μ(Σ x_i^{a_i}) = Π (a_i - 1)`.
fn brieskorn(exps: &[u32]) -> u64 {
    exps.iter().map(|&a| u64::from(a - 1)).product()
}

/// Sweep over `[threshold, threshold + 6]`.
fn sweep(name: &str) -> Result<VerdictTable, String> {
    let s = fixture(name);
    let thr = prepare(&s).map_err(|e| e.to_string())?.threshold;
    verify_sweep(&s, (thr, thr + 6), 0).map_err(|e| e.to_string())
}

fn verdict<'a>(row: &'a iomdin_core::iomdin::Row, id: &str) -> &'a strat::Verdict {
    row.verdicts.iter().find(|v| v.identity == id).unwrap_or_else(|| panic!("no {id} verdict at N = {}", row.n))
}

fn milnor_kernel() -> Outcome {
    let lim = Limits::default();
    let r3 = Ring::new(&["x", "y", "z"]).unwrap();
    for a in 2..=5 {
        for b in 2..=5 {
            for c in 2..=5 {
                let g = parse_poly(&format!("x^{a}+y^{b}+z^{c}"), &r3).unwrap();
                let mu = milnor_number(&g, &lim).map_err(|e| e.to_string())?;
                ensure(mu == brieskorn(&[a, b, c]), || format!("μ(x^{a}+y^{b}+z^{c}) = {mu}"))?;
            }
        }
    }
    // C[x,y]/<3x^2, 3y^2> has monomial basis 1, x, y, xy.
    let g = parse_poly("x^3+y^3", &Ring::new(&["x", "y"]).unwrap()).unwrap();
    let mu = milnor_number(&g, &lim).map_err(|e| e.to_string())?;
    ensure(mu == 4, || format!("μ(x^3+y^3) = {mu}"))
}

fn le_numbers() -> Outcome {
    let expect = [("cylinder", [0, 1]), ("three-lines", [0, 4])];
    // Isolated germs with their Milnor numbers from closed forms.
    let isolated = [("cusp-isolated", 4), ("brieskorn-2-3-4", brieskorn(&[2, 3, 4])), ("a2-polar", brieskorn(&[2, 2, 3]))];
    let all = expect.iter().map(|(n, l)| (*n, *l)).chain(isolated.iter().map(|(n, mu)| (*n, [*mu, 0])));
    for (name, want) in all {
        let p = prepare(&fixture(name)).map_err(|e| format!("{name}: {e}"))?;
        let got = [p.le.lambda0, p.le.lambda1];
        ensure(got == want, || format!("{name}: λ = {got:?}, expected {want:?}"))?;
    }
    Ok(())
}

/// `(fixture, μ(g~) oracle)`: Thom-Sebastiani with `μ(z^N) = N - 1`.
const SWEEPS: [(&str, u64); 2] = [("cylinder", 1), ("three-lines", 4)];

fn massey() -> Outcome {
    for (name, mu_h) in SWEEPS {
        let t = sweep(name)?;
        for row in &t.rows {
            let oracle = mu_h * u64::from(row.n - 1);
            ensure(row.mu_tilde == QuotientDim::Finite(oracle), || format!("{name} N = {}: μ(g~) = {}", row.n, row.mu_tilde))?;
            let v = verdict(row, "massey");
            ensure(v.status == Status::Pass && v.right == Some(oracle as i64), || format!("{name}: {v:?}"))?;
        }
    }
    Ok(())
}

fn chi_identity() -> Outcome {
    for (name, mu_h) in SWEEPS {
        let t = sweep(name)?;
        for row in &t.rows {
            let n = i64::from(row.n);
            let want = 1 + mu_h as i64 * (n - 1);
            let v = verdict(row, "chi");
            ensure(v.status == Status::Pass && v.left == Some(want) && v.right == Some(want), || {
                format!("{name} N = {n}: {v:?}, expected both sides {want}")
            })?;
        }
    }
    Ok(())
}

fn tibar_identity() -> Outcome {
    for (name, _) in SWEEPS {
        let t = sweep(name)?;
        for row in &t.rows {
            let chi = verdict(row, "chi");
            let tibar = verdict(row, "tibar");
            let chi_defect = (chi.left.unwrap() - t.chi_g, chi.right.unwrap() - t.chi_g);
            ensure(tibar.status == Status::Pass && (tibar.left.unwrap(), tibar.right.unwrap()) == chi_defect, || {
                format!("{name} N = {}: Tibăr {tibar:?} against χ defects {chi_defect:?}", row.n)
            })?;
        }
    }
    Ok(())
}

fn polar_decomposition() -> Outcome {
    for name in ["cylinder", "three-lines", "a2-polar"] {
        let s = fixture(name);
        let (g, f) = (s.g().unwrap().clone(), given_f(&s));
        for n in [2, 3, 5] {
            let v = verify_polar_decomposition(&f, &g, n, &s.limits).map_err(|e| e.to_string())?;
            ensure(v.pass, || format!("{name} N = {n}: {v:?}"))?;
        }
    }
    Ok(())
}

fn gap_ratio_lemma() -> Outcome {
    let s = fixture("a2-polar");
    let (g, f) = (s.g().unwrap().clone(), given_f(&s));
    let thr = prepare(&s).map_err(|e| e.to_string())?.threshold;
    let gamma = relative_polar_ideal(&f, &g, &s.limits).map_err(|e| e.to_string())?.ideal;
    // Γ is the z-axis and g(0, 0, t) = t^3.
    let left = intersection_number(&gamma, &g, &s.limits).map_err(|e| e.to_string())?;
    ensure(left == 3, || format!("([Γ]·[V(g)])_0 = {left}"))?;
    for n in thr..=thr + 6 {
        let gt = &g + &f.pow(n);
        let right = intersection_number(&gamma, &gt, &s.limits).map_err(|e| e.to_string())?;
        ensure(right == left, || format!("N = {n}: ([Γ]·[V(g~)])_0 = {right}"))?;
    }
    Ok(())
}

fn stratified_ledger() -> Outcome {
    let cusp = fixture("cusp-curve");
    let eu = strat::bls_euler_obstruction(cusp.dataset.as_ref().unwrap(), Space::X).map_err(|e| e.to_string())?;
    // A generic line meets the cusp (t^2, t^3) in two points.
    ensure(eu == 2, || format!("cusp Eu_X(0) = {eu}"))?;

    let exported = strat::export_dataset(&fixture("cylinder"), 3).map_err(|e| e.to_string())?;
    let v = strat::verify_stratified_identities(exported.dataset.as_ref().unwrap(), 3, None, &strat::branch_tables(&exported));
    let main = v.iter().find(|v| v.identity == "main-theorem").unwrap();
    ensure(main.status == Status::Pass && main.left == Some(3) && main.right == Some(3), || format!("exported cylinder: {main:?}"))?;
    ensure(v.iter().all(|v| v.status != Status::Fail), || format!("exported cylinder has a failure: {v:?}"))?;

    for (name, id, left, right) in
        [("negative/theorem-violation", "main-theorem", 4, 3), ("negative/parity-violation", "parity", 1, 2)]
    {
        let s = fixture(name);
        let v = strat::verify_stratified_identities(s.dataset.as_ref().unwrap(), s.dim, Some(s.n_range.0), &strat::branch_tables(&s));
        let w = v.iter().find(|v| v.identity == id).unwrap();
        ensure(w.status == Status::Fail && w.left == Some(left) && w.right == Some(right), || format!("{name}: {w:?}"))?;
    }
    Ok(())
}

fn isolation_certificate() -> Outcome {
    for name in list_fixtures() {
        let s = fixture(name);
        if s.g.is_none() {
            continue;
        }
        let p = prepare(&s).map_err(|e| format!("{name}: {e}"))?;
        let hi = s.n_range.1.max(p.threshold + 6);
        let table = verify_sweep(&s, (2, hi), 0).map_err(|e| format!("{name}: {e}"))?;
        for row in &table.rows {
            match row.range {
                RowRange::InRange => {
                    let direct = jacobian_ideal(&(&p.g + &p.f.pow(row.n))).quotient_dim_local(&s.limits).unwrap();
                    ensure(matches!(direct, QuotientDim::Finite(_)) && direct == row.mu_tilde, || {
                        format!("{name} N = {}: certificate {direct}", row.n)
                    })?;
                }
                RowRange::OutOfRange => {
                    ensure(row.verdicts.is_empty(), || format!("{name} N = {}: sub-threshold row asserted verdicts", row.n))?
                }
            }
        }
    }
    Ok(())
}

fn determinism_and_round_trip() -> Outcome {
    for name in ["cylinder", "three-lines", "three-axes"] {
        let s = fixture(name);
        let a = serde_json::to_string_pretty(&verify_sweep(&s, s.n_range, 1).unwrap()).unwrap();
        let b = serde_json::to_string_pretty(&verify_sweep(&s, s.n_range, 4).unwrap()).unwrap();
        ensure(a == b, || format!("{name}: sweep JSON differs between runs"))?;
    }
    for name in list_fixtures() {
        let s = fixture(name);
        let a = serde_json::to_string(&invariant_report(&s).unwrap()).unwrap();
        let b = serde_json::to_string(&invariant_report(&fixture(name)).unwrap()).unwrap();
        ensure(a == b, || format!("{name}: report JSON differs between runs"))?;
        let saved = save_scenario(&s);
        let reloaded = load_scenario(&saved).map_err(|e| format!("{name}: {e}"))?;
        ensure(reloaded == s, || format!("{name}: load/save round trip changed the scenario"))?;
        ensure(save_scenario(&reloaded) == saved, || format!("{name}: save is not canonical"))?;
        let mut polys: Vec<_> = s.g.iter().cloned().collect();
        if let FSpec::Given(f) = &s.f {
            polys.push(f.clone());
        }
        for p in &polys {
            ensure(parse_poly(&print_poly(p), p.ring()).as_ref() == Ok(p), || format!("{name}: {p} does not round-trip"))?;
        }
        for b in &s.branches {
            for c in b.components.iter().flatten() {
                ensure(parse_poly(&print_poly(c), c.ring()).as_ref() == Ok(c), || format!("{name}: {c} does not round-trip"))?;
            }
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("1 milnor kernel", milnor_kernel),
        ("2 le numbers", le_numbers),
        ("3 massey le-iomdin", massey),
        ("4 chi identity", chi_identity),
        ("5 tibar identity", tibar_identity),
        ("6 polar decomposition", polar_decomposition),
        ("7 gap-ratio lemma", gap_ratio_lemma),
        ("8 stratified ledger", stratified_ledger),
        ("9 isolation certificate", isolation_certificate),
        ("10 determinism and round trip", determinism_and_round_trip),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let start = std::time::Instant::now();
        match run() {
            Ok(()) => println!("PASS  {name}  ({:.2?})", start.elapsed()),
            Err(e) => {
                println!("FAIL  {name}: {e}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
