use proptest::prelude::*;

use srgbm_core::analytics::{critical_time, moment, MomentOrder};
use srgbm_core::sde::simulate_euler;
use srgbm_core::{RngStream, SimGrid};
use srgbm_harness::experiments::{
    p_top_series, run, run_analytics_table, run_ergodicity_sweep, run_regimes_timeseries, run_self_averaging,
    run_single_path,
};
use srgbm_harness::{Cell, Experiment, ExperimentConfig, ResultTable, Sampler};

fn small(experiment: Experiment) -> ExperimentConfig {
    let mut c = ExperimentConfig::defaults(experiment);
    c.horizon = 20.0;
    c.realizations = c.realizations.min(4);
    c
}

#[test]
fn single_path_resets_land_on_x0() {
    let mut c = small(Experiment::SinglePath);
    c.horizon = 100.0;
    let table = run_single_path(&c).unwrap().table;
    let reset = table.column_f64("is_reset").unwrap();
    let x = table.column_f64("x_euler").unwrap();
    let renewal = table.column_f64("x_renewal").unwrap();
    assert!(reset.iter().filter(|&&v| v == 1.0).count() > 3, "r t = 16 should reset repeatedly");
    for i in 0..x.len() {
        if reset[i] == 1.0 {
            assert_eq!(x[i], c.x0);
            assert_eq!(renewal[i], c.x0);
        }
    }
}

#[test]
fn deterministic_path_matches_compound_growth() {
    let mut c = small(Experiment::SinglePath);
    c.sigma2 = 0.0;
    c.r = 0.0;
    let table = run_single_path(&c).unwrap().table;
    let t = table.column_f64("t").unwrap();
    let x = table.column_f64("x_euler").unwrap();
    for (k, (&tk, &xk)) in t.iter().zip(&x).enumerate() {
        let compound = c.x0 * (1.0 + c.mu * c.dt).powi(k as i32);
        assert!((xk / compound - 1.0).abs() < 1e-12);
        // Euler lags the continuous solution by O(dt).
        let gap = (c.x0 * (c.mu * tk).exp() - xk) / xk;
        assert!(gap >= -1e-15 && gap <= c.mu * c.mu * c.dt * tk);
    }
}

#[test]
fn euler_and_renewal_paths_agree_to_first_order() {
    let c = small(Experiment::SinglePath);
    let table = run_single_path(&c).unwrap().table;
    let x = table.column_f64("x_euler").unwrap();
    let renewal = table.column_f64("x_renewal").unwrap();
    let worst = x.iter().zip(&renewal).map(|(a, b)| (a / b).ln().abs()).fold(0.0, f64::max);
    assert!(worst < 0.05, "worst log gap {worst}");
}

#[test]
fn sweep_table_covers_the_grid() {
    let mut c = small(Experiment::ErgodicitySweep);
    c.n_list = vec![1, 10];
    c.r_list = vec![0.0, 0.03, 0.1];
    for sampler in [Sampler::Exact, Sampler::Euler] {
        c.sampler = sampler;
        let out = run_ergodicity_sweep(&c).unwrap();
        assert_eq!(out.table.rows.len(), 6);
        let analytic = out.table.column_f64("analytic_mean").unwrap();
        let r = out.table.column_f64("r").unwrap();
        for (i, &ri) in r.iter().enumerate() {
            let expect = moment(&c.params(ri), MomentOrder::FIRST, c.horizon);
            assert!((analytic[i] - expect).abs() <= 1e-12 * expect);
        }
        assert!(out.table.column_f64("median_sample_avg").unwrap().iter().all(|v| *v > 0.0));
    }
}

#[test]
fn critical_time_table_is_consistent() {
    let c = ExperimentConfig::defaults(Experiment::SelfAveraging);
    let out = run_self_averaging(&c).unwrap();
    let table = out.table;
    assert_eq!(table.rows.len(), c.r_list.len() * c.n_list.len());
    let n = table.column_f64("N").unwrap();
    let r = table.column_f64("r").unwrap();
    let tc = table.column_f64("t_c_exact").unwrap();
    for i in 0..tc.len() {
        let direct = critical_time(&c.params(r[i]), n[i] as u64).unwrap().t_c;
        assert!(tc[i] == direct || (tc[i].is_infinite() && direct.is_infinite()));
    }
    // Rows run over N within each r; larger samples self-average for longer.
    let per_r = c.n_list.len();
    for i in 0..c.r_list.len() {
        for j in 1..per_r {
            let (a, b) = (tc[i * per_r + j - 1], tc[i * per_r + j]);
            assert!(b >= a, "r = {}: {a} then {b}", r[i * per_r]);
        }
    }
    let regime = table.column_index("regime").unwrap();
    assert!(table
        .rows
        .iter()
        .all(|row| matches!(row[regime].as_text(), Some("frozen" | "unstable-annealed" | "stable-annealed"))));
}

#[test]
fn analytics_table_labels() {
    let mut c = ExperimentConfig::defaults(Experiment::AnalyticsTable);
    c.realizations = 50;
    let table = run_analytics_table(&c).unwrap().table;
    assert_eq!(table.rows.len(), 10);
    let b = table.column_index("behavior").unwrap();
    let labels: Vec<&str> = table.rows.iter().map(|row| row[b].as_text().unwrap()).collect();
    assert_eq!(
        labels,
        [
            "exponential", "exponential", "linear", "exponential", "convergent", "exponential", "convergent",
            "linear", "convergent", "convergent"
        ]
    );
}

#[test]
fn p_top_walkers_follow_their_own_streams() {
    let c = small(Experiment::RegimesTimeseries);
    let params = c.params(0.03);
    let grid = SimGrid::with_horizon(0.01, 5.0).unwrap().with_stride(50).unwrap();
    let seed = 99;
    // With one walker the top share is always 1; with two it is the larger
    // walker's share, reproducible from the individual streams.
    let pair = p_top_series(&params, &grid, 2, 0.5, seed).unwrap();
    let a = simulate_euler(&params, &grid, RngStream::new(seed, 0)).unwrap().positions;
    let b = simulate_euler(&params, &grid, RngStream::new(seed, 1)).unwrap().positions;
    assert_eq!(pair.times.len(), a.len());
    for j in 0..a.len() {
        let expect = a[j].max(b[j]) / (a[j] + b[j]);
        assert!((pair.p_top[j] - expect).abs() < 1e-12);
    }
    assert!(p_top_series(&params, &grid, 1, 0.01, seed).unwrap().p_top.iter().all(|&p| p == 1.0));
}

#[test]
fn regimes_table_quantiles_are_ordered() {
    let mut c = small(Experiment::RegimesTimeseries);
    c.n_list = vec![50];
    c.realizations = 5;
    let table = run_regimes_timeseries(&c).unwrap().table;
    let lo = table.column_f64("p_top_q05").unwrap();
    let med = table.column_f64("p_top_median").unwrap();
    let hi = table.column_f64("p_top_q95").unwrap();
    for i in 0..med.len() {
        assert!(lo[i] <= med[i] && med[i] <= hi[i] && hi[i] <= 1.0);
    }
}

#[test]
fn dispatch_runs_every_experiment() {
    for exp in Experiment::ALL {
        let mut c = small(exp);
        c.n_list = vec![10];
        c.r_list = vec![0.05];
        let out = run(&c).unwrap();
        assert!(!out.table.rows.is_empty(), "{exp:?}");
    }
}

fn cell() -> impl Strategy<Value = Cell> {
    prop_oneof![
        any::<f64>().prop_map(Cell::Float),
        any::<i64>().prop_map(Cell::Int),
        "[a-z][a-z_-]{0,12}"
            .prop_filter("reserved words", |s| !matches!(s.as_str(), "inf" | "nan"))
            .prop_map(Cell::Text),
    ]
}

proptest! {
    #[test]
    fn csv_round_trip_preserves_cells(rows in prop::collection::vec(prop::collection::vec(cell(), 3), 0..20)) {
        let mut table = ResultTable::new(&["a", "b", "c"]);
        for row in rows {
            table.push(row);
        }
        let back = ResultTable::read_csv(table.to_csv_string().as_bytes()).unwrap();
        prop_assert_eq!(back, table);
    }

    #[test]
    fn config_hash_ignores_output_dir(seed in any::<u64>(), dir in "[a-z]{1,8}") {
        let mut a = ExperimentConfig::defaults(Experiment::SelfAveraging);
        a.master_seed = seed;
        let mut b = a.clone();
        b.output_dir = dir.into();
        prop_assert_eq!(a.hash(), b.hash());
        b.master_seed = seed.wrapping_add(1);
        prop_assert_ne!(a.hash(), b.hash());
    }
}
