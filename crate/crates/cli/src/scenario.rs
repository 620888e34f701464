use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use mstc_core::config::CONFIG_KEYS;
use mstc_core::Scheme;

use crate::error::CliError;

/// Experiment run by the CLI; each maps to one result figure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    PaprCcdf,
    Ber,
    BerQamCompare,
    Psd,
    Timedomain,
    Complexity,
}

impl Kind {
    pub const ALL: [Kind; 6] = [
        Kind::PaprCcdf,
        Kind::Ber,
        Kind::BerQamCompare,
        Kind::Psd,
        Kind::Timedomain,
        Kind::Complexity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::PaprCcdf => "papr_ccdf",
            Kind::Ber => "ber",
            Kind::BerQamCompare => "ber_qam_compare",
            Kind::Psd => "psd",
            Kind::Timedomain => "timedomain",
            Kind::Complexity => "complexity",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Kind::PaprCcdf => "CCDF of per-symbol PAPR per scheme, optional conventional IFFT-size sweep",
            Kind::Ber => "Monte-Carlo BER against Eb/N0 over AWGN per scheme",
            Kind::BerQamCompare => "conventional 16-QAM against M-STC BPSK at equal payload",
            Kind::Psd => "Welch PSD and occupied bandwidth per scheme",
            Kind::Timedomain => "time-domain envelope of one encoded block and symbol durations",
            Kind::Complexity => "IFFT multiplication and addition counts per scheme",
        }
    }

    /// Scenario-specific keys and their defaults.
    pub fn keys(self) -> &'static [(&'static str, &'static str)] {
        match self {
            Kind::PaprCcdf => &[("trials", "10000"), ("level", "0.001"), ("sweep_sizes", "none")],
            Kind::Ber => &[
                ("ebn0_min", "0"),
                ("ebn0_max", "10"),
                ("ebn0_step", "0.5"),
                ("min_bits", "200000"),
                ("max_errors", "200"),
                ("target_ber", "0.000001"),
            ],
            Kind::BerQamCompare => &[
                ("ebn0_min", "0"),
                ("ebn0_max", "14"),
                ("ebn0_step", "0.5"),
                ("min_bits", "200000"),
                ("max_errors", "200"),
                ("target_ber", "0.001"),
            ],
            Kind::Psd => &[
                ("profile", "narrowband"),
                ("symbols", "20000"),
                ("segment_len", "4096"),
                ("overlap", "0.5"),
                ("threshold_db", "-3"),
            ],
            Kind::Timedomain => &[("blocks", "1")],
            Kind::Complexity => &[("n", "128")],
        }
    }

    /// Whether `key` may be overridden for this kind. System configuration
    /// keys other than `scheme` are accepted everywhere.
    pub fn accepts(self, key: &str) -> bool {
        self.keys().iter().any(|(k, _)| *k == key) || (key != "scheme" && CONFIG_KEYS.contains(&key))
    }

    pub fn valid_names() -> String {
        Kind::ALL.map(Kind::name).join(", ")
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown kind '{s}'; valid kinds: {}", Kind::valid_names())))
    }
}

/// A fully parsed experiment request.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub kind: Kind,
    pub schemes: Vec<Scheme>,
    pub overrides: BTreeMap<String, String>,
    pub output_dir: PathBuf,
    pub seed: u64,
    pub jobs: Option<usize>,
}

impl Scenario {
    /// Value of a scenario key: the override if given, else the default.
    pub fn value(&self, key: &str) -> &str {
        self.overrides
            .get(key)
            .map(String::as_str)
            .or_else(|| self.kind.keys().iter().find(|(k, _)| *k == key).map(|(_, v)| *v))
            .unwrap_or_else(|| panic!("'{key}' is not a key of {}", self.kind))
    }

    pub fn parse<T: FromStr>(&self, key: &str) -> Result<T, CliError>
    where
        T::Err: fmt::Display,
    {
        let v = self.value(key);
        v.parse()
            .map_err(|e| CliError::Usage(format!("{key}={v}: {e}")))
    }
}
