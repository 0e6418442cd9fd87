use std::fmt;

use serde::Serialize;

use elocc::filters::DEFAULT_T2_CAP;
use elocc::sampling::{compare_filters, ComparisonConfig};
use elocc::scalar::decimal_12;
use elocc::search::CandidateRow;
use elocc::{
    dimension_bound, grid_scan, l_set, largest_below_uniform, lemma2_sufficient, majorization_distance,
    metric_report, min_catalyst_dimension_with, nielsen_convertible, p_max_catalytic, p_max_plain, prop2_report,
    protocol_feasible, protocol_trace, search_catalyst, two_dim_feasible_interval, universal_rank_reach,
    BatteryConfig, CatalysisPair, ErrorKind, GridSpec, ProbVector, Scalar, SearchOptions,
};

use crate::request::{CommandRequest, Format, Subcommand};

/// Failure of one invocation, rendered as a JSON error object.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliError {
    pub code: String,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn input(code: &str, message: impl Into<String>) -> Self {
        Self {
            code: code.to_string(),
            kind: "input",
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.kind {
            "input" => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

impl From<elocc::Error> for CliError {
    fn from(e: elocc::Error) -> Self {
        Self {
            code: e.code().to_string(),
            kind: match e.kind() {
                ErrorKind::Input => "input",
                ErrorKind::Precondition => "precondition",
            },
            message: e.to_string(),
        }
    }
}

type Outcome = Result<String, CliError>;

fn vector(name: &str, literals: &Option<Vec<String>>) -> Result<ProbVector, CliError> {
    let literals = literals
        .as_ref()
        .ok_or_else(|| CliError::input("MISSING_ARGUMENT", format!("vector -{name} is required")))?;
    Ok(ProbVector::parse(literals)?)
}

fn required<T: Copy>(name: &str, value: Option<T>) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::input("MISSING_ARGUMENT", format!("--{name} is required")))
}

fn json<T: Serialize>(value: &T) -> Outcome {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::input("SERIALIZE", e.to_string()))?;
    text.push('\n');
    Ok(text)
}

fn csv_rows<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Outcome {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| CliError::input("SERIALIZE", e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::input("SERIALIZE", e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::input("SERIALIZE", e.to_string()))
}

fn no_csv(sub: Subcommand) -> CliError {
    CliError::input(
        "UNSUPPORTED_FORMAT",
        format!("{} has no tabular form; use --format json", sub.name()),
    )
}

/// Grid denominator for catalyst dimension `k`: `ELOCC_DEFAULT_D<k>`, then
/// `ELOCC_DEFAULT_D`, then the library default.
pub fn default_denominator(k: usize) -> Result<u64, CliError> {
    for name in [format!("ELOCC_DEFAULT_D{k}"), "ELOCC_DEFAULT_D".to_string()] {
        if let Ok(value) = std::env::var(&name) {
            return value
                .trim()
                .parse()
                .map_err(|_| CliError::input("PARSE_ERROR", format!("{name}={value:?} is not a positive integer")));
        }
    }
    Ok(elocc::default_denominator(k))
}

pub fn run(req: &CommandRequest) -> Outcome {
    let o = &req.options;
    let csv = o.format == Format::Csv;
    let battery = BatteryConfig {
        t2_cap: o.t2_cap.unwrap_or(DEFAULT_T2_CAP),
        t2_subsets: !o.no_subsets.unwrap_or(false),
        ..BatteryConfig::default()
    };
    let search_opts = SearchOptions {
        workers: o.workers,
        battery: BatteryConfig {
            short_circuit: true,
            include_baseline: false,
            ..battery
        },
    };
    let grid = |k: Option<usize>| -> Result<GridSpec, CliError> {
        let k = required("k", k)?;
        let denominator = match o.denominator {
            Some(d) => d,
            None => default_denominator(k)?,
        };
        Ok(GridSpec {
            k,
            denominator,
            include_boundary_zeros: o.include_zeros.unwrap_or(false),
        })
    };
    let inputs = &req.inputs;

    match req.subcommand {
        Subcommand::Check => {
            let (p, q) = (vector("p", &inputs.p)?, vector("q", &inputs.q)?);
            let report = l_set(&p, &q);
            let out = CheckOutput {
                convertible: nielsen_convertible(&p, &q),
                classification: report.classification.as_str(),
                l: report.elements,
            };
            if csv {
                csv_rows([CheckRow {
                    convertible: out.convertible,
                    classification: out.classification,
                    l: join(out.l.iter()),
                }])
            } else {
                json(&out)
            }
        }
        Subcommand::Lset => {
            let report = l_set(&vector("p", &inputs.p)?, &vector("q", &inputs.q)?);
            if csv {
                csv_rows(report.elements.iter().map(|l| LRow { l: *l }))
            } else {
                json(&report)
            }
        }
        Subcommand::Reach => {
            let p = vector("p", &inputs.p)?;
            let t = required("t", inputs.t)?;
            let out = ReachOutput {
                t,
                schmidt_rank: p.schmidt_rank(),
                universal_rank_reach: universal_rank_reach(&p, t)?,
                largest_below_uniform: largest_below_uniform(&p, t)?,
                lemma2: inputs
                    .s
                    .map(|s| lemma2_sufficient(&p, t, s).map(|sufficient| Lemma2 { s, sufficient }))
                    .transpose()?,
            };
            if csv {
                csv_rows([ReachRow {
                    t: out.t,
                    schmidt_rank: out.schmidt_rank,
                    universal_rank_reach: out.universal_rank_reach,
                    largest_below_uniform: out.largest_below_uniform,
                    s: out.lemma2.as_ref().map(|l| l.s),
                    lemma2_sufficient: out.lemma2.as_ref().map(|l| l.sufficient),
                }])
            } else {
                json(&out)
            }
        }
        Subcommand::Filters => {
            let (p, q) = (vector("p", &inputs.p)?, vector("q", &inputs.q)?);
            let pair = CatalysisPair::new(&p, &q)?;
            match &inputs.r {
                Some(_) => {
                    let r = vector("r", &inputs.r)?;
                    let out = FiltersOutput {
                        battery: pair.battery(&r, &battery)?,
                        two_level: pair.cor1_all(&r)?,
                        two_level_choice: o.two_level.map(|(c1, c2, s)| pair.cor1(&r, c1, c2, s)).transpose()?,
                    };
                    if csv {
                        let verdicts = out
                            .battery
                            .verdicts
                            .iter()
                            .chain([&out.two_level])
                            .chain(out.two_level_choice.iter())
                            .chain(out.battery.baseline.iter());
                        csv_rows(verdicts.map(|v| VerdictRow {
                            filter: v.filter.as_str(),
                            accepted: v.accepted,
                            inconclusive: v.inconclusive,
                            witness: v
                                .witness
                                .as_ref()
                                .map(|w| join(w.violated.iter().map(|c| c.statement.clone())))
                                .unwrap_or_default(),
                        }))
                    } else {
                        json(&out)
                    }
                }
                // no catalyst: scan a grid, for plotting feasible regions
                None => {
                    let rows = grid_scan(&p, &q, grid(o.k)?, &search_opts)?;
                    scan_output(rows, csv)
                }
            }
        }
        Subcommand::Bound => {
            let (p, q) = (vector("p", &inputs.p)?, vector("q", &inputs.q)?);
            if csv {
                return Err(no_csv(req.subcommand));
            }
            json(&BoundOutput {
                bound: dimension_bound(&p, &q)?,
                two_dim_interval: two_dim_feasible_interval(&p, &q)?,
            })
        }
        Subcommand::Search => {
            let (p, q) = (vector("p", &inputs.p)?, vector("q", &inputs.q)?);
            let g = grid(o.k)?;
            if csv {
                return scan_output(grid_scan(&p, &q, g, &search_opts)?, true);
            }
            let out = search_catalyst(
                &p,
                &q,
                g,
                !o.no_filters.unwrap_or(false),
                o.max_results.unwrap_or(usize::MAX),
                &search_opts,
            )?;
            json(&out)
        }
        Subcommand::Mindim => {
            let (p, q) = (vector("p", &inputs.p)?, vector("q", &inputs.q)?);
            if csv {
                return Err(no_csv(req.subcommand));
            }
            let k_max = o.k_max.unwrap_or(4);
            // resolve denominators up front so a bad override is reported
            let dens: Vec<u64> = (0..=k_max)
                .map(|k| o.denominator.map_or_else(|| default_denominator(k), Ok))
                .collect::<Result<_, _>>()?;
            let pick = |k: usize| dens[k];
            json(&min_catalyst_dimension_with(&p, &q, k_max, &pick, &search_opts)?)
        }
        Subcommand::Pmax => {
            let (p, q) = (vector("p", &inputs.p)?, vector("q", &inputs.q)?);
            let catalytic = match &inputs.r {
                Some(_) => Some(p_max_catalytic(&p, &q, &vector("r", &inputs.r)?)),
                None => None,
            };
            let out = PmaxOutput {
                plain: p_max_plain(&p, &q),
                catalytic,
            };
            if csv {
                let mut rows = vec![ValueRow::new("plain", &out.plain.p_max, out.plain.argmin_l)];
                if let Some(c) = &out.catalytic {
                    rows.push(ValueRow::new("catalytic", &c.p_max, c.argmin_l));
                }
                csv_rows(rows)
            } else {
                json(&out)
            }
        }
        Subcommand::Distance => {
            let (p, q, r) = (vector("p", &inputs.p)?, vector("q", &inputs.q)?, vector("r", &inputs.r)?);
            let d = majorization_distance(&p, &q, &r);
            if csv {
                csv_rows([ValueRow::new("delta", &d.delta, d.argmax_l)])
            } else {
                json(&d)
            }
        }
        Subcommand::Prop2 => {
            let (p, q, r) = (vector("p", &inputs.p)?, vector("q", &inputs.q)?, vector("r", &inputs.r)?);
            let out = Prop2Output {
                metrics: metric_report(&p, &q, &r),
                check: prop2_report(&p, &q, &r),
            };
            if csv {
                csv_rows([out.check])
            } else {
                json(&out)
            }
        }
        Subcommand::Protocol => {
            let e = inputs.ensemble.as_ref().ok_or_else(|| {
                CliError::input("MISSING_ARGUMENT", "protocol needs an ensemble, given through --input")
            })?;
            if o.trace.unwrap_or(false) {
                if csv {
                    return Err(no_csv(req.subcommand));
                }
                return json(&protocol_trace(e)?);
            }
            let report = protocol_feasible(e)?;
            if csv {
                csv_rows(report.branches.iter().map(|b| BranchRow {
                    branch: b.branch,
                    catalyzes: b.catalyzes,
                    violated_prefix: b.violated_prefix,
                }))
            } else {
                json(&report)
            }
        }
        Subcommand::CompareFilters => {
            let config = ComparisonConfig {
                samples: o.samples.unwrap_or(10_000),
                seed: o.seed.unwrap_or(0),
                ..ComparisonConfig::default()
            };
            let summary = compare_filters(&config)?;
            if csv {
                csv_rows(summary.filters.iter())
            } else {
                json(&summary)
            }
        }
    }
}

fn join<T: ToString>(items: impl Iterator<Item = T>) -> String {
    items.map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

fn scan_output(rows: Vec<CandidateRow<elocc::Rational>>, csv: bool) -> Outcome {
    if !csv {
        return json(&rows);
    }
    csv_rows(rows.iter().map(|row| {
        let r = &row.candidate;
        ScanRow {
            candidate: join(r.render().into_iter()),
            decimal: join(r.to_f64().into_iter().map(decimal_12)),
            ratio_1_2: if r.at(2) > elocc::Rational::from_integer(0.into()) {
                decimal_12((r.at(1) / r.at(2)).to_f64())
            } else {
                "inf".into()
            },
            first_rejection: row.first_rejection.map(|f| f.as_str()).unwrap_or(""),
            catalyzes: row.catalyzes,
        }
    }))
}

#[derive(Serialize)]
struct CheckOutput {
    convertible: bool,
    classification: &'static str,
    #[serde(rename = "L")]
    l: Vec<usize>,
}

#[derive(Serialize)]
struct CheckRow {
    convertible: bool,
    classification: &'static str,
    #[serde(rename = "L")]
    l: String,
}

#[derive(Serialize)]
struct LRow {
    l: usize,
}

#[derive(Serialize)]
struct Lemma2 {
    s: usize,
    sufficient: bool,
}

#[derive(Serialize)]
struct ReachOutput {
    t: usize,
    schmidt_rank: usize,
    universal_rank_reach: bool,
    largest_below_uniform: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    lemma2: Option<Lemma2>,
}

#[derive(Serialize)]
struct ReachRow {
    t: usize,
    schmidt_rank: usize,
    universal_rank_reach: bool,
    largest_below_uniform: bool,
    s: Option<usize>,
    lemma2_sufficient: Option<bool>,
}

#[derive(Serialize)]
struct FiltersOutput {
    battery: elocc::BatteryReport<elocc::Rational>,
    two_level: elocc::FilterVerdict<elocc::Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    two_level_choice: Option<elocc::FilterVerdict<elocc::Rational>>,
}

#[derive(Serialize)]
struct VerdictRow {
    filter: &'static str,
    accepted: bool,
    inconclusive: bool,
    witness: String,
}

#[derive(Serialize)]
struct ScanRow {
    candidate: String,
    decimal: String,
    ratio_1_2: String,
    first_rejection: &'static str,
    catalyzes: bool,
}

#[derive(Serialize)]
struct BoundOutput {
    bound: elocc::BoundParams<elocc::Rational>,
    two_dim_interval: Option<elocc::RatioInterval<elocc::Rational>>,
}

#[derive(Serialize)]
struct PmaxOutput {
    plain: elocc::metrics::ProbabilityBound<elocc::Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    catalytic: Option<elocc::metrics::ProbabilityBound<elocc::Rational>>,
}

#[derive(Serialize)]
struct ValueRow {
    quantity: &'static str,
    value: String,
    decimal: String,
    index: usize,
}

impl ValueRow {
    fn new(quantity: &'static str, value: &elocc::Rational, index: usize) -> Self {
        Self {
            quantity,
            value: value.render(),
            decimal: decimal_12(value.to_f64()),
            index,
        }
    }
}

#[derive(Serialize)]
struct Prop2Output {
    metrics: elocc::MetricReport<elocc::Rational>,
    check: elocc::metrics::Prop2Report,
}

#[derive(Serialize)]
struct BranchRow {
    branch: usize,
    catalyzes: bool,
    violated_prefix: Option<usize>,
}
