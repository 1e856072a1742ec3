//! Acceptance gate: one test per headline claim the model must reproduce,
//! each printing a single verdict line. The checks themselves live in the
//! validation module; this target pins each claim to its named check so a
//! regression points straight at the number that moved.

use std::sync::OnceLock;

use catoptric::{
    find_epsilon_tolerance, run_all, sweep, CavityParams, CheckResult, FaultInjection, RunConfig,
    SweepAxis, SweepSpec, ToleranceMetric, C64,
};

static REPORT: OnceLock<Vec<CheckResult>> = OnceLock::new();

fn report() -> &'static [CheckResult] {
    REPORT.get_or_init(|| run_all(FaultInjection::None))
}

fn assert_criterion(number: u8, label: &str, names: &[&str]) {
    let results: Vec<&CheckResult> = names
        .iter()
        .map(|name| {
            report()
                .iter()
                .find(|r| r.name == *name)
                .unwrap_or_else(|| panic!("no check named {name}"))
        })
        .collect();
    let passed = results.iter().all(|r| r.passed);
    let verdict = if passed { "PASS" } else { "FAIL" };
    let detail = results
        .iter()
        .map(|r| format!("{}: {}", r.name, r.detail))
        .collect::<Vec<_>>()
        .join("; ");
    println!("criterion {number:02} ({label}): {verdict} [{detail}]");
    assert!(passed, "criterion {number:02} ({label}) failed: {detail}");
}

#[test]
fn criterion_01_fidelity_loss_budgets() {
    assert_criterion(1, "mirror-loss budgets at fixed fidelity", &["loss-budget-fidelity"]);
}

#[test]
fn criterion_02_witness_loss_budgets() {
    assert_criterion(2, "mirror-loss budgets at fixed cattiness", &["loss-budget-witness"]);
}

#[test]
fn criterion_03_coupled_reflection_loss() {
    assert_criterion(3, "coupled-branch scattering loss anchor", &["coupled-reflection-loss"]);
}

#[test]
fn criterion_04_empty_cavity_loss() {
    assert_criterion(4, "leaky empty-cavity loss anchor", &["empty-cavity-loss"]);
}

#[test]
fn criterion_05_frozen_amplitude_law() {
    assert_criterion(
        5,
        "critically damped amplitude freezing",
        &["freezing-law", "freezing-approximation"],
    );
}

#[test]
fn criterion_06_large_cat_witness() {
    assert_criterion(6, "witness above ten at a thousand passes", &["large-cat-witness"]);
}

#[test]
fn criterion_07_cavity_incidence_bound() {
    assert_criterion(7, "per-pass cavity incidence below one photon", &["zone1-suppression"]);
}

#[test]
fn criterion_08_deep_zeno_fidelity() {
    assert_criterion(8, "fast-reflector fidelity point", &["deep-zeno-fidelity"]);
}

#[test]
fn criterion_09_fiber_loss_fidelity() {
    assert_criterion(9, "fiber-grade loss fidelity points", &["fiber-loss-fidelity"]);
}

#[test]
fn criterion_10_witness_oracle_equivalence() {
    assert_criterion(
        10,
        "closed form agrees with number-basis evaluation",
        &["oracle-cattiness-agreement"],
    );
}

#[test]
fn criterion_11_exact_case_suite() {
    assert_criterion(
        11,
        "exact identities",
        &[
            "ideal-run-exact",
            "down-branch-closed-form",
            "epsilon-intensity-law",
            "scatter-unitarity",
            "delta-symmetry",
        ],
    );
}

#[test]
fn criterion_12_reproducibility() {
    let checks_equal = run_all(FaultInjection::None) == run_all(FaultInjection::None);

    let base = RunConfig {
        alpha: C64::new(2.0, 0.0),
        m_cycles: 25,
        epsilon: 0.0,
        cavity: CavityParams {
            g: 7.8,
            gamma: 3.0,
            kappa_r: 2.3,
            kappa_t: 0.0,
            delta: 0.0,
        },
        trace_enabled: false,
    };
    let spec = SweepSpec {
        axis: SweepAxis::GammaTilde,
        grid: catoptric::build_grid(0.0, 1.0, 101, false).unwrap(),
        base,
        include_single_reflection: true,
    };
    let sweeps_equal = sweep(&spec).unwrap() == sweep(&spec).unwrap();

    let search = |_| find_epsilon_tolerance(&base, ToleranceMetric::EffectiveFidelity, 0.9);
    let searches_equal = search(()).unwrap() == search(()).unwrap();

    let passed = checks_equal && sweeps_equal && searches_equal;
    let verdict = if passed { "PASS" } else { "FAIL" };
    println!(
        "criterion 12 (run-to-run reproducibility): {verdict} [checks: {checks_equal}, sweeps: {sweeps_equal}, searches: {searches_equal}]"
    );
    assert!(passed);
}
