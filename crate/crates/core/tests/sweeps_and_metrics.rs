use num_traits::Pow;
use unipos::codecs::DecodeMode;
use unipos::error_lab::{sweep, ErrorModel, EventSelection, SweepConfig, SweepParams, ValueSource};
use unipos::metrics::{measure, table1_report, tradeoff_report, EncodingSpec};
use unipos::{Scheme, Value};

fn sampled(
    scheme: Scheme,
    params: SweepParams,
    model: ErrorModel,
    seed: u64,
    jobs: usize,
) -> SweepConfig {
    let mut cfg = SweepConfig::new(scheme, params, model);
    cfg.values = ValueSource::Sampled(2_000);
    cfg.events = EventSelection::Sampled;
    cfg.seed = Some(seed);
    cfg.jobs = jobs;
    cfg
}

#[test]
fn reports_do_not_depend_on_job_count() {
    let params = SweepParams {
        n: Some(16),
        k: Some(4),
        ..Default::default()
    };
    for (scheme, model) in [
        (Scheme::UnaryPositional, ErrorModel::DigitFlip),
        (Scheme::TemporalRate, ErrorModel::SpikeShift),
        (Scheme::TemporalRate, ErrorModel::SpikeInsertDelete),
    ] {
        let serial = sweep(&sampled(scheme, params, model, 7, 1)).unwrap();
        for jobs in [2, 3, 8] {
            let parallel = sweep(&sampled(scheme, params, model, 7, jobs)).unwrap();
            assert_eq!(parallel, serial);
            assert_eq!(parallel.to_json_string(), serial.to_json_string());
        }
    }
}

#[test]
fn seeds_change_sampled_reports() {
    let params = SweepParams {
        n: Some(16),
        k: Some(4),
        ..Default::default()
    };
    let a = sweep(&sampled(
        Scheme::UnaryPositional,
        params,
        ErrorModel::DigitFlip,
        1,
        0,
    ))
    .unwrap();
    let b = sweep(&sampled(
        Scheme::UnaryPositional,
        params,
        ErrorModel::DigitFlip,
        2,
        0,
    ))
    .unwrap();
    assert_eq!(a.trials, b.trials);
    assert_ne!(a.histogram, b.histogram);
    // sampled flips still respect the bound
    assert!(a.max_abs_impact <= Pow::pow(Value::from(16u32), 3u32));
}

#[test]
fn temporal_order_mode_sweep_runs() {
    let mut cfg = SweepConfig::new(
        Scheme::Temporal,
        SweepParams {
            base: Some(2),
            k: Some(6),
            ..Default::default()
        },
        ErrorModel::SpikeShift,
    );
    cfg.mode = DecodeMode::FirstSpikeOrder;
    let report = sweep(&cfg).unwrap();
    assert!(report.trials > 0);
    assert_eq!(report.params["mode"], "order");
}

#[test]
fn latency_laws() {
    let spec = |s: &str| s.parse::<EncodingSpec>().unwrap();
    for x in [1u64, 10, 100, 355] {
        assert_eq!(
            measure(&Value::from(x), &spec("rate-unary"))
                .unwrap()
                .latency,
            Value::from(x)
        );
        assert_eq!(
            measure(&Value::from(x), &spec("temporal-rate-8:3"))
                .unwrap()
                .latency,
            Value::from(24u32)
        );
        assert_eq!(
            measure(&Value::from(x), &spec("temporal-8:3"))
                .unwrap()
                .latency,
            Value::from(3u32)
        );
    }
    for (n, k) in [(2u64, 3usize), (4, 2), (8, 3), (16, 2)] {
        let top = Value::from(n.pow(k as u32) - 1);
        let rate = measure(&top, &spec("rate-unary")).unwrap().latency;
        let tr = measure(&top, &spec(&format!("temporal-rate-{n}:{k}")))
            .unwrap()
            .latency;
        let t = measure(&top, &spec(&format!("temporal-{n}:{k}")))
            .unwrap()
            .latency;
        assert!(rate >= tr && tr >= t);
        if n.pow(k as u32) > k as u64 * n && k as u64 * n > k as u64 {
            assert!(rate > tr && tr > t, "n={n} k={k}");
        }
    }
}

#[test]
fn utilization_stays_in_unit_interval() {
    use num_rational::BigRational;
    use num_traits::{One, Zero};
    for x in 0..512u64 {
        for s in [
            "rate-unary",
            "temporal-2:9",
            "temporal-8:3",
            "temporal-rate-8:3",
        ] {
            let m = measure(&Value::from(x), &s.parse().unwrap()).unwrap();
            assert!(m.utilization >= BigRational::zero() && m.utilization <= BigRational::one());
        }
    }
}

#[test]
fn table1_monotone_in_digits() {
    let rows = table1_report(&[2, 3, 10], 1..=20).unwrap();
    for pair in rows.windows(2).filter(|w| w[0].base == w[1].base) {
        assert_eq!(&pair[0].unary_length * pair[0].base, pair[1].unary_length);
    }
}

#[test]
fn tradeoff_across_several_values() {
    let values: Vec<Value> = [3u64, 73, 355].into_iter().map(Value::from).collect();
    let specs: Vec<EncodingSpec> = ["rate-unary", "temporal-rate-8"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let rows = tradeoff_report(&values, &specs).unwrap();
    assert_eq!(rows[0].max_latency, Value::from(355u32));
    assert_eq!(rows[0].total_marks, Value::from(3u32 + 73 + 355));
    assert_eq!(rows[1].spec.k, Some(3));
    assert_eq!(rows[1].max_latency, Value::from(24u32));
    // 3 -> 0,0,3; 73 -> 1,1,1; 355 -> 5,4,3
    assert_eq!(rows[1].total_marks, Value::from(3u32 + 3 + 12));
}
