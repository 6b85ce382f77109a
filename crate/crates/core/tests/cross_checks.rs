//! Closed forms, pool iteration, and exact graph solvers each compute the
//! same constants by unrelated routes; these tests pin them against each
//! other. Pool-side estimates are repeated end to end with independent
//! seeds so the pooled standard error reflects every noise source.

use sparselim::closedform::{
    limit_ind_poisson, limit_ind_regular, limit_match_poisson, solve_b_ind_poisson,
    solve_b_ind_regular, solve_b_match_poisson,
};
use sparselim::harness::{run_experiment, ExperimentConfig, Model, SolveMethod};
use sparselim::rde::{
    bracket_iterate, limit_from_pool, uniqueness_verdict, Objective, OperatorSpec, Quantity,
    RdeStream, RootDegree, Verdict,
};
use sparselim::weights::WeightSpec;
use sparselim::EmpiricalDist;

const E: f64 = std::f64::consts::E;

struct PoolRun {
    weight: f64,
    cardinality: f64,
    atom: f64,
}

/// One end-to-end pool estimate: bracket, merge, evaluate both functionals.
/// The merged bracket is used even when the verdict is still inconclusive —
/// near a threshold the two chains straddle the fixed point and their union
/// balances the truncation bias.
fn pool_run(
    op: &OperatorSpec,
    root: RootDegree,
    steps: usize,
    pool_size: usize,
    mc: usize,
    seed: u64,
) -> PoolRun {
    let mut stream = RdeStream::new(seed);
    let bracket = bracket_iterate(op, steps, pool_size, &mut stream);
    let pool = match uniqueness_verdict(&bracket, 0.05) {
        Ok(Verdict::Unique(pool)) => pool,
        _ => bracket.merged(),
    };
    let w = limit_from_pool(op, &pool, root, Quantity::WeightPerNode, mc, &mut stream);
    let c = limit_from_pool(op, &pool, root, Quantity::CardinalityPerNode, mc, &mut stream);
    PoolRun { weight: w.value, cardinality: c.value, atom: pool.atom_at_zero() }
}

fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn assert_within_pooled_se(label: &str, theory: f64, runs: &[f64]) {
    let (mean, se) = mean_se(runs);
    assert!(
        (theory - mean).abs() < 3.0 * se,
        "{label}: theory {theory:.5} vs pool {mean:.5} ± {se:.5}"
    );
}

#[test]
fn ind_regular_closed_forms_match_pools() {
    for r in 1..=4usize {
        let theory = limit_ind_regular(r).unwrap();
        let b = solve_b_ind_regular(r).b;
        let (op, root) =
            OperatorSpec::regular(Objective::IndependentSet, r, WeightSpec::exponential());
        let mut weights = Vec::new();
        let mut cards = Vec::new();
        let mut atoms = Vec::new();
        for run in 0..6u64 {
            let pr = pool_run(&op, root, 30, 30_000, 400_000, 2000 + 10 * r as u64 + run);
            weights.push(pr.weight);
            cards.push(pr.cardinality);
            atoms.push(pr.atom);
        }
        // the pool atom reproduces the scalar fixed point (averaged over the
        // runs: a single finite pool wanders around the fixed point with a
        // standard deviation amplified by the operator's weak contraction)
        let (atom_mean, _) = mean_se(&atoms);
        assert!((atom_mean - b).abs() < 0.01, "r = {r}: mean atom {atom_mean} vs b {b}");
        assert_within_pooled_se(&format!("ind regular r={r} weight"), theory.weight_limit, &weights);
        assert_within_pooled_se(
            &format!("ind regular r={r} cardinality"),
            theory.cardinality_limit,
            &cards,
        );
    }
}

#[test]
fn ind_regular_fixed_point_tails_are_exponential() {
    for r in 2..=4usize {
        let (op, _) =
            OperatorSpec::regular(Objective::IndependentSet, r, WeightSpec::exponential());
        let bracket = bracket_iterate(&op, 30, 100_000, &mut RdeStream::new(2100 + r as u64));
        let pool = match uniqueness_verdict(&bracket, 0.02).unwrap() {
            Verdict::Unique(pool) => pool,
            other => panic!("r = {r} must be unique, got {}", other.label()),
        };
        let tail = pool.positive_part().unwrap();
        let d = tail.ks_distance_to_cdf(|t| 1.0 - (-t).exp());
        assert!(d < 0.01, "r = {r}: positive part vs Exp(1) distance {d}");
    }
}

#[test]
fn ind_poisson_closed_forms_match_pools() {
    for &(c, steps, pool_size, runs) in
        [(0.5, 30, 30_000, 6usize), (1.0, 30, 30_000, 6), (2.0, 40, 30_000, 6)].iter()
    {
        let theory = limit_ind_poisson(c).unwrap();
        let b = solve_b_ind_poisson(c).b;
        let (op, root) =
            OperatorSpec::poisson(Objective::IndependentSet, c, WeightSpec::exponential()).unwrap();
        let mut weights = Vec::new();
        let mut cards = Vec::new();
        let mut atoms = Vec::new();
        for run in 0..runs as u64 {
            let pr = pool_run(&op, root, steps, pool_size, 400_000, 2200 + (c * 100.0) as u64 + run);
            weights.push(pr.weight);
            cards.push(pr.cardinality);
            atoms.push(pr.atom);
        }
        let (atom_mean, _) = mean_se(&atoms);
        assert!((atom_mean - b).abs() < 0.01, "c = {c}: mean atom {atom_mean} vs b {b}");
        assert_within_pooled_se(&format!("ind poisson c={c} weight"), theory.weight_limit, &weights);
        assert_within_pooled_se(
            &format!("ind poisson c={c} cardinality"),
            theory.cardinality_limit,
            &cards,
        );
    }
}

#[test]
fn ind_poisson_at_the_threshold_matches_pools() {
    // c = 2e sits exactly at the uniqueness threshold: the bracket closes
    // only polynomially fast, so the merged bracket stands in for the fixed
    // point and more steps are spent
    let c = 2.0 * E;
    let theory = limit_ind_poisson(c).unwrap();
    let (op, root) =
        OperatorSpec::poisson(Objective::IndependentSet, c, WeightSpec::exponential()).unwrap();
    let mut weights = Vec::new();
    for run in 0..4u64 {
        let pr = pool_run(&op, root, 120, 30_000, 400_000, 2300 + run);
        weights.push(pr.weight);
    }
    assert_within_pooled_se("ind poisson c=2e weight", theory.weight_limit, &weights);
}

#[test]
fn match_poisson_closed_form_matches_pools_at_c5() {
    let c = 5.0;
    let theory = limit_match_poisson(c);
    let (op, root) =
        OperatorSpec::poisson(Objective::Matching, c, WeightSpec::exponential()).unwrap();
    let mut weights = Vec::new();
    for run in 0..6u64 {
        let pr = pool_run(&op, root, 30, 30_000, 400_000, 2400 + run);
        weights.push(pr.weight);
    }
    assert_within_pooled_se("match poisson c=5 weight", theory, &weights);
}

#[test]
fn match_poisson_closed_form_matches_graphs_at_c1() {
    // graph-level oracle: exact matchings on G(n, 1/n); adjudicates the
    // self-consistent fixed-point equation against its printed variant
    // (which would predict b = 0.416 instead of 0.285)
    let theory = limit_match_poisson(1.0);
    let cfg = ExperimentConfig {
        model: Model::Poisson(1.0),
        objective: Objective::Matching,
        weight: WeightSpec::exponential(),
        n: 100_000,
        trials: 10,
        method: SolveMethod::Auto,
        seed: 2500,
        out: None,
    };
    let row = run_experiment(&cfg).unwrap();
    assert!(
        (row.mean_value_per_node - theory).abs() < 0.005,
        "graphs {} vs quadrature {theory}",
        row.mean_value_per_node
    );
    assert_eq!(row.theory_value, Some(theory));
}

#[test]
fn unique_fixed_point_is_stable_under_the_operator() {
    // when the verdict is unique, one more application moves the merged
    // pool by no more than sampling noise
    use sparselim::rde::apply_operator;
    for (objective, offspring) in [
        (Objective::IndependentSet, sparselim::rde::Offspring::FixedCount(2)),
        (Objective::Matching, sparselim::rde::Offspring::Poisson(3.0)),
    ] {
        let op = OperatorSpec::new(objective, offspring, WeightSpec::exponential()).unwrap();
        let mut stream = RdeStream::new(2600);
        let bracket = bracket_iterate(&op, 30, 50_000, &mut stream);
        let pool = match uniqueness_verdict(&bracket, 0.02).unwrap() {
            Verdict::Unique(pool) => pool,
            other => panic!("expected unique, got {}", other.label()),
        };
        let image = apply_operator(&op, &pool, &mut stream);
        let d = pool.kolmogorov_distance(&image);
        assert!(d < 3.0 * pool.noise_floor(), "fixed point moved by {d}");
    }
}

#[test]
fn pool_csv_export_round_trips_through_text() {
    let pool = EmpiricalDist::from_values(vec![0.0, 0.5, 1.25]).unwrap();
    let mut buf = Vec::new();
    pool.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let values: Vec<f64> =
        text.lines().skip(1).map(|l| l.parse().unwrap()).collect();
    assert_eq!(values, pool.samples());
}
