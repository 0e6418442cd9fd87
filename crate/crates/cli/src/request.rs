//! Normalized form of one invocation. Command-line flags and `--input`
//! files are both folded into a [`CommandRequest`], which is what actually
//! runs and what `--dry-run` prints.

use serde::{Deserialize, Serialize};

use elocc::{EnsembleSpec, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subcommand {
    Check,
    Lset,
    Reach,
    Filters,
    Bound,
    Search,
    Mindim,
    Pmax,
    Distance,
    Prop2,
    Protocol,
    CompareFilters,
}

impl Subcommand {
    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Check => "check",
            Subcommand::Lset => "lset",
            Subcommand::Reach => "reach",
            Subcommand::Filters => "filters",
            Subcommand::Bound => "bound",
            Subcommand::Search => "search",
            Subcommand::Mindim => "mindim",
            Subcommand::Pmax => "pmax",
            Subcommand::Distance => "distance",
            Subcommand::Prop2 => "prop2",
            Subcommand::Protocol => "protocol",
            Subcommand::CompareFilters => "compare-filters",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Vectors are kept as the literal strings given, so a request replays
/// exactly as written.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Inputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ensemble: Option<EnsembleSpec<Rational>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denominator: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_results: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub no_filters: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub no_subsets: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t2_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub include_zeros: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<bool>,
    /// Two-level index choice `(c1, c2, s)` for a single extra check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_level: Option<(usize, usize, usize)>,
    #[serde(default)]
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommandRequest {
    pub subcommand: Subcommand,
    #[serde(default)]
    pub inputs: Inputs,
    #[serde(default)]
    pub options: Options,
}

/// Contents of an `--input` file: any subset of a request.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RequestFile {
    #[serde(default)]
    pub subcommand: Option<Subcommand>,
    #[serde(default)]
    pub inputs: Inputs,
    #[serde(default)]
    pub options: Options,
}

macro_rules! prefer {
    ($cli:expr, $file:expr, $($field:ident),+) => {
        $( if $cli.$field.is_none() { $cli.$field = $file.$field.take(); } )+
    };
}

impl CommandRequest {
    /// Fills every field left unset on the command line from `file`.
    pub fn merge_file(&mut self, mut file: RequestFile, format_given: bool) {
        prefer!(self.inputs, file.inputs, p, q, r, t, s, ensemble);
        prefer!(
            self.options,
            file.options,
            k,
            denominator,
            k_max,
            workers,
            seed,
            samples,
            max_results,
            no_filters,
            no_subsets,
            t2_cap,
            include_zeros,
            trace,
            two_level
        );
        if !format_given {
            self.options.format = file.options.format;
        }
    }
}
