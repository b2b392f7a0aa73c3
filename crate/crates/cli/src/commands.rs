//! Command implementations. Each returns the text to emit.

use std::io::Read;
use std::ops::RangeInclusive;
use std::path::Path;

use unipos::codecs::{compare_encoded, CountPolicy};
use unipos::error_lab::{impact, sweep, ErrorEvent, SweepConfig, SweepParams, SweepReport};
use unipos::metrics::{
    measure, measure_csv, table1_csv, table1_examples, table1_examples_csv, table1_report,
    tradeoff_csv, tradeoff_report, EncodingSpec,
};
use unipos::numeral::{
    digit_count, parse_value, unary_positional_decode, unary_positional_encode, PositionalNumeral,
    UnaryPositionalWord,
};
use unipos::{Error, Scheme, Value};

use crate::args::{
    BenchCommand, Cli, Command, CompareArgs, ConvertArgs, DecodeArgs, EncodeArgs, Format,
    InjectArgs, SweepArgs,
};
use crate::artifact::{Artifact, Codec};
use crate::CliError;

type Result<T> = std::result::Result<T, CliError>;

pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Encode(args) => encode(args, cli.format),
        Command::Decode(args) => decode(args, cli.format),
        Command::Convert(args) => convert(args, cli.format),
        Command::Inject(args) => inject(args, cli.format),
        Command::Sweep(args) => run_sweep(args, cli),
        Command::Bench(bench) => run_bench(bench, cli.format),
        Command::Compare(args) => compare(args, cli.format),
    }
}

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        None => read_stdin(),
        Some(p) if p == Path::new("-") => read_stdin(),
        Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::Io(p.display().to_string(), e)),
    }
}

fn read_stdin() -> Result<String> {
    let mut buf = String::new();
    std::io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| CliError::Io("stdin".into(), e))?;
    Ok(buf)
}

fn value_output(value: &Value, format: Option<Format>) -> String {
    match format.unwrap_or(Format::Text) {
        Format::Text => value.to_string(),
        Format::Json => serde_json::json!({ "value": value.to_string() }).to_string(),
        Format::Csv => format!("value\n{value}"),
    }
}

fn encode(args: &EncodeArgs, format: Option<Format>) -> Result<String> {
    let codec = Codec::from_args(&args.scheme)?;
    let value = parse_value(&args.value)?;
    let artifact = codec.encode(&value)?;
    Ok(artifact.render(codec.scheme, format.unwrap_or(artifact.default_format())))
}

fn decode(args: &DecodeArgs, format: Option<Format>) -> Result<String> {
    let mut codec = Codec::from_args(&args.scheme)?.with_mode(args.mode);
    if args.lenient {
        codec.policy = CountPolicy::Lenient;
    }
    let input = read_input(args.input.as_deref())?;
    let value = codec.decode(&codec.read(&input)?)?;
    Ok(value_output(&value, format))
}

fn convert(args: &ConvertArgs, format: Option<Format>) -> Result<String> {
    let value = if args.value.contains("_u") {
        unary_positional_decode(&args.value.parse::<UnaryPositionalWord>()?)
    } else {
        parse_value(&args.value)?
    };
    let encoded = match (args.to_base, args.to_n) {
        (Some(base), _) => PositionalNumeral::encode(&value, base, None)?.to_string(),
        (None, Some(n)) => unary_positional_encode(&value, n, args.k)?.to_string(),
        (None, None) => value.to_string(),
    };
    Ok(match format.unwrap_or(Format::Text) {
        Format::Text => encoded,
        Format::Json => {
            serde_json::json!({ "value": value.to_string(), "encoded": encoded }).to_string()
        }
        Format::Csv => format!("value,encoded\n{value},{encoded}"),
    })
}

fn inject(args: &InjectArgs, format: Option<Format>) -> Result<String> {
    let codec = Codec::from_args(&args.scheme)?.with_mode(args.mode);
    let event: ErrorEvent = args.event.parse()?;
    let original = match &args.value {
        Some(v) => codec.encode(&parse_value(v)?)?,
        None => codec.read(&read_input(args.input.as_deref())?)?,
    };
    let perturbed = original.inject(&event)?;
    let original_value = codec.decode(&original)?;
    // Overfull temporal-rate windows still get a value, with the rejection noted.
    let (perturbed_value, strict_rejected) = match codec.decode(&perturbed) {
        Ok(v) => (v, false),
        Err(Error::CountOverflow { .. }) => {
            let lenient = Codec {
                policy: CountPolicy::Lenient,
                ..codec
            };
            (lenient.decode(&perturbed)?, true)
        }
        Err(e) => return Err(e.into()),
    };
    let delta = impact(&original_value, &perturbed_value);
    Ok(match format.unwrap_or(Format::Json) {
        Format::Text => perturbed.render(codec.scheme, perturbed.default_format()),
        Format::Json => serde_json::to_string_pretty(&serde_json::json!({
            "scheme": codec.scheme.tag(),
            "event": event.to_string(),
            "original_value": original_value.to_string(),
            "perturbed_value": perturbed_value.to_string(),
            "impact": delta.to_string(),
            "strict_rejected": strict_rejected,
            "artifact": perturbed.to_json_value(),
        }))
        .expect("JSON serialization is infallible"),
        Format::Csv => format!(
            "event,original_value,perturbed_value,impact\n{event},{original_value},{perturbed_value},{delta}"
        ),
    })
}

pub fn sweep_config(args: &SweepArgs, seed: Option<u64>, jobs: usize) -> Result<SweepConfig> {
    let s = &args.scheme;
    let scheme: Scheme = s.scheme.parse()?;
    let params = SweepParams {
        n: s.n,
        k: s.k,
        base: s.base,
        slot_cap: s.slot_cap,
    };
    let mut config = SweepConfig::new(scheme, params, args.errors.parse()?);
    config.values = args.values.parse()?;
    config.events = args.events.parse()?;
    config.mode = Codec::from_args(s)?.with_mode(args.mode).mode;
    config.seed = seed;
    config.jobs = jobs;
    Ok(config)
}

fn run_sweep(args: &SweepArgs, cli: &Cli) -> Result<String> {
    let report = sweep(&sweep_config(args, cli.seed, cli.jobs)?)?;
    Ok(match cli.format.unwrap_or(Format::Json) {
        Format::Json => report.to_json_string(),
        Format::Csv => histogram_csv(&report),
        Format::Text => format!(
            "scheme: {}\ntrials: {}\nmax |impact|: {}\nmean |impact|: {}\nstrict rejections: {}\ndraws without events: {}",
            report.scheme,
            report.trials,
            report.max_abs_impact,
            report.mean_abs_impact,
            report.strict_rejections,
            report.draws_without_events
        ),
    })
}

fn histogram_csv(report: &SweepReport) -> String {
    let mut out = String::from("abs_impact,trials\n");
    for (delta, count) in &report.histogram {
        out.push_str(&format!("{delta},{count}\n"));
    }
    out
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|item| {
            item.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("invalid {what} `{item}`")))
        })
        .collect()
}

/// `a..b` and `a..=b` are both inclusive; a single number is a one-element range.
fn parse_digit_range(s: &str) -> Result<RangeInclusive<u32>> {
    let bad = || CliError::Usage(format!("invalid digit range `{s}`, expected `a..b`"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
        None => (s, s),
    };
    let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

fn tabular<T: serde::Serialize>(rows: &[T], csv: String, format: Option<Format>) -> String {
    match format.unwrap_or(Format::Csv) {
        Format::Csv => csv,
        Format::Text => csv.replace(',', "\t"),
        Format::Json => {
            serde_json::to_string_pretty(rows).expect("JSON serialization is infallible")
        }
    }
}

fn run_bench(bench: &BenchCommand, format: Option<Format>) -> Result<String> {
    Ok(match bench {
        BenchCommand::Table1 { bases, digits } => {
            let rows = table1_report(
                &parse_list::<u32>(bases, "base")?,
                parse_digit_range(digits)?,
            )?;
            tabular(&rows, table1_csv(&rows), format)
        }
        BenchCommand::Examples => {
            let rows = table1_examples();
            tabular(&rows, table1_examples_csv(&rows), format)
        }
        BenchCommand::Measure { value, scheme } => {
            let spec: EncodingSpec = scheme.parse()?;
            let rows = [measure(&parse_value(value)?, &spec)?];
            tabular(&rows, measure_csv(&rows), format)
        }
        BenchCommand::Tradeoff { values, schemes } => {
            let values = values
                .split(',')
                .map(parse_value)
                .collect::<unipos::Result<Vec<_>>>()?;
            let specs = schemes
                .split(',')
                .map(|s| s.trim().parse::<EncodingSpec>())
                .collect::<unipos::Result<Vec<_>>>()?;
            let rows = tradeoff_report(&values, &specs)?;
            tabular(&rows, tradeoff_csv(&rows), format)
        }
    })
}

fn compare(args: &CompareArgs, format: Option<Format>) -> Result<String> {
    let scheme: Scheme = args.scheme.parse()?;
    if !matches!(scheme, Scheme::Temporal | Scheme::TemporalRate) {
        return Err(CliError::Usage(format!(
            "compare supports temporal and temporal-rate, not `{scheme}`"
        )));
    }
    let (a, b) = match (&args.values, &args.a, &args.b) {
        (Some(values), _, _) => {
            let pair = values
                .split(',')
                .map(parse_value)
                .collect::<unipos::Result<Vec<_>>>()?;
            let [x, y] = pair.as_slice() else {
                return Err(CliError::Usage(
                    "--values takes exactly two values, `a,b`".into(),
                ));
            };
            let k = match args.k {
                Some(k) => k,
                None => digit_count(x.max(y), args.base)?,
            };
            let codec = Codec {
                scheme,
                base: Some(args.base),
                n: Some(args.base as usize),
                k: Some(k),
                slot_cap: None,
                mode: Default::default(),
                policy: Default::default(),
            };
            (raster(codec.encode(x)?), raster(codec.encode(y)?))
        }
        (None, Some(a), Some(b)) => {
            let read = |p: &Path| -> Result<unipos::spike::SpikeRaster> {
                Ok(unipos::spike::SpikeRaster::from_json(&read_input(Some(
                    p,
                ))?)?)
            };
            (read(a)?, read(b)?)
        }
        _ => {
            return Err(CliError::Usage(
                "give either --values a,b or both --a and --b".into(),
            ))
        }
    };
    let outcome = compare_encoded(&a, &b, args.base, scheme)?;
    Ok(match format.unwrap_or(Format::Text) {
        Format::Json => serde_json::json!({ "outcome": outcome.to_string() }).to_string(),
        Format::Csv => format!("outcome\n{outcome}"),
        Format::Text => outcome.to_string(),
    })
}

fn raster(artifact: Artifact) -> unipos::spike::SpikeRaster {
    match artifact {
        Artifact::Raster(r) => r,
        _ => unreachable!("spiking schemes encode to rasters"),
    }
}
