//! `key = value` scenario files.
//!
//! One assignment per line, `#` starts a comment, blank lines are ignored.
//! Unknown and repeated keys are rejected.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("key `{key}` given twice, on lines {first} and {second}")]
    DuplicateKey {
        key: String,
        first: usize,
        second: usize,
    },
    #[error("line {line}: `{key}` expects {expected}, got `{value}`")]
    Malformed {
        line: usize,
        key: String,
        expected: &'static str,
        value: String,
    },
    #[error("missing required key `{0}`")]
    Missing(&'static str),
    #[error("`alpha` (line {alpha_line}) and `vg_over_c` (line {vg_line}) are mutually exclusive")]
    AlphaAndVelocity { alpha_line: usize, vg_line: usize },
    #[error("`vg_list` (line {list_line}) and `vg_log_range` (line {range_line}) are mutually exclusive")]
    ListAndRange { list_line: usize, range_line: usize },
    #[error("line {line}: {reason}")]
    Invalid { line: usize, reason: String },
    #[error("{0}")]
    Scenario(String),
    #[error("cannot read `{path}`: {reason}")]
    Unreadable { path: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    Fig1a,
    Fig1b,
    Fig2,
    Fig3,
    CustomReflectance,
    CustomSweep,
    EitEstimate,
}

impl FromStr for Scenario {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        Ok(match s {
            "fig1a" => Scenario::Fig1a,
            "fig1b" => Scenario::Fig1b,
            "fig2" => Scenario::Fig2,
            "fig3" => Scenario::Fig3,
            "custom-reflectance" => Scenario::CustomReflectance,
            "custom-sweep" => Scenario::CustomSweep,
            "eit-estimate" => Scenario::EitEstimate,
            _ => return Err(()),
        })
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scenario::Fig1a => "fig1a",
            Scenario::Fig1b => "fig1b",
            Scenario::Fig2 => "fig2",
            Scenario::Fig3 => "fig3",
            Scenario::CustomReflectance => "custom-reflectance",
            Scenario::CustomSweep => "custom-sweep",
            Scenario::EitEstimate => "eit-estimate",
        })
    }
}

/// How the medium's dispersion is specified.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Steepness {
    Alpha(f64),
    VgOverC(f64),
}

/// `lo hi count`, inclusive at both ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Range {
    pub fn linear(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.lo];
        }
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i == self.count - 1 {
                    self.hi
                } else {
                    self.lo + (self.hi - self.lo) * (i as f64 / last)
                }
            })
            .collect()
    }

    pub fn logarithmic(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.lo];
        }
        let last = (self.count - 1) as f64;
        let ratio = (self.hi / self.lo).ln();
        (0..self.count)
            .map(|i| {
                if i == self.count - 1 {
                    self.hi
                } else {
                    self.lo * (ratio * i as f64 / last).exp()
                }
            })
            .collect()
    }
}

/// Group velocities (as fractions of c) for sweep scenarios.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Velocities {
    List(Vec<f64>),
    LogRange(Range),
}

impl Velocities {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Velocities::List(v) => v.clone(),
            Velocities::LogRange(r) => r.logarithmic(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub n0: f64,
    pub omega0: f64,
    pub steepness: Option<Steepness>,
    pub delta_omega: f64,
    pub halfwidth: f64,
    pub count: usize,
    pub velocities: Option<Velocities>,
    /// Scaled detuning `(w - w0) / w0` for reflectance spectra.
    pub detuning_range: Option<Range>,
    /// Scaled frequency `w / w0` for the group-velocity comparison.
    pub frequency_range: Option<Range>,
    /// Scaled detuning of the two pulse tails.
    pub tail_detuning: f64,
    pub omega_p: Option<f64>,
    /// Atomic density in m^-3.
    pub density: Option<f64>,
    pub wavelength: Option<f64>,
    pub gamma: Option<f64>,
    pub rabi: Option<f64>,
    pub output: Option<PathBuf>,
}

const KEYS: &[&str] = &[
    "scenario",
    "n0",
    "omega0",
    "alpha",
    "vg_over_c",
    "delta_omega",
    "halfwidth",
    "count",
    "vg_list",
    "vg_log_range",
    "detuning_range",
    "frequency_range",
    "tail_detuning",
    "omega_p",
    "density",
    "wavelength",
    "gamma",
    "rabi",
    "output",
];

struct Entry<'a> {
    line: usize,
    value: &'a str,
}

struct Entries<'a>(BTreeMap<&'a str, Entry<'a>>);

impl<'a> Entries<'a> {
    fn line(&self, key: &str) -> Option<usize> {
        self.0.get(key).map(|e| e.line)
    }

    fn number(&self, key: &'static str) -> Result<Option<f64>, ConfigError> {
        let Some(e) = self.0.get(key) else {
            return Ok(None);
        };
        parse_number(key, e.line, e.value).map(Some)
    }

    fn positive(&self, key: &'static str) -> Result<Option<f64>, ConfigError> {
        let v = self.number(key)?;
        if let Some(x) = v {
            if !(x > 0.0) {
                return Err(ConfigError::Invalid {
                    line: self.0[key].line,
                    reason: format!("`{key}` must be > 0, got {x}"),
                });
            }
        }
        Ok(v)
    }

    fn list(&self, key: &'static str) -> Result<Option<Vec<f64>>, ConfigError> {
        let Some(e) = self.0.get(key) else {
            return Ok(None);
        };
        let values = e
            .value
            .split_whitespace()
            .map(|t| parse_number(key, e.line, t))
            .collect::<Result<Vec<_>, _>>()?;
        if values.is_empty() {
            return Err(ConfigError::Invalid {
                line: e.line,
                reason: format!("`{key}` is empty"),
            });
        }
        Ok(Some(values))
    }

    fn range(&self, key: &'static str) -> Result<Option<Range>, ConfigError> {
        let Some(e) = self.0.get(key) else {
            return Ok(None);
        };
        let malformed = || ConfigError::Malformed {
            line: e.line,
            key: key.to_string(),
            expected: "`lo hi count`",
            value: e.value.to_string(),
        };
        let parts: Vec<&str> = e.value.split_whitespace().collect();
        let [lo, hi, count] = parts.as_slice() else {
            return Err(malformed());
        };
        let lo = parse_number(key, e.line, lo)?;
        let hi = parse_number(key, e.line, hi)?;
        let count: usize = count.parse().map_err(|_| malformed())?;
        if count == 0 || !(lo < hi || (count == 1 && lo == hi)) {
            return Err(ConfigError::Invalid {
                line: e.line,
                reason: format!("`{key}` needs lo < hi and count >= 1"),
            });
        }
        Ok(Some(Range { lo, hi, count }))
    }
}

fn parse_number(key: &str, line: usize, text: &str) -> Result<f64, ConfigError> {
    match text.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(ConfigError::Malformed {
            line,
            key: key.to_string(),
            expected: "a finite number",
            value: text.to_string(),
        }),
    }
}

/// Parses and validates a scenario file.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let mut entries = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(ConfigError::Syntax {
                line,
                text: raw.to_string(),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || value.is_empty() {
            return Err(ConfigError::Syntax {
                line,
                text: raw.to_string(),
            });
        }
        if !KEYS.contains(&key) {
            return Err(ConfigError::UnknownKey {
                line,
                key: key.to_string(),
            });
        }
        if let Some(prev) = entries.insert(key, Entry { line, value }) {
            return Err(ConfigError::DuplicateKey {
                key: key.to_string(),
                first: prev.line,
                second: line,
            });
        }
    }
    let entries = Entries(entries);

    let scenario_entry = entries.0.get("scenario").ok_or(ConfigError::Missing("scenario"))?;
    let scenario: Scenario = scenario_entry.value.parse().map_err(|_| ConfigError::Malformed {
        line: scenario_entry.line,
        key: "scenario".into(),
        expected: "one of fig1a, fig1b, fig2, fig3, custom-reflectance, custom-sweep, eit-estimate",
        value: scenario_entry.value.to_string(),
    })?;

    let steepness = match (entries.positive("alpha")?, entries.positive("vg_over_c")?) {
        (Some(_), Some(_)) => {
            return Err(ConfigError::AlphaAndVelocity {
                alpha_line: entries.line("alpha").unwrap_or(0),
                vg_line: entries.line("vg_over_c").unwrap_or(0),
            })
        }
        (Some(a), None) => Some(Steepness::Alpha(a)),
        (None, Some(v)) => Some(Steepness::VgOverC(v)),
        (None, None) => None,
    };

    let velocities = match (entries.list("vg_list")?, entries.range("vg_log_range")?) {
        (Some(_), Some(_)) => {
            return Err(ConfigError::ListAndRange {
                list_line: entries.line("vg_list").unwrap_or(0),
                range_line: entries.line("vg_log_range").unwrap_or(0),
            })
        }
        (Some(list), None) => Some(Velocities::List(list)),
        (None, Some(range)) => {
            if !(range.lo > 0.0) {
                return Err(ConfigError::Invalid {
                    line: entries.line("vg_log_range").unwrap_or(0),
                    reason: "`vg_log_range` must be positive".into(),
                });
            }
            Some(Velocities::LogRange(range))
        }
        (None, None) => None,
    };

    let count = match entries.0.get("count") {
        None => crate::wavepacket::DEFAULT_COUNT,
        Some(e) => match e.value.parse::<usize>() {
            Ok(c) if c >= 64 && c.is_power_of_two() => c,
            _ => {
                return Err(ConfigError::Malformed {
                    line: e.line,
                    key: "count".into(),
                    expected: "a power of two >= 64",
                    value: e.value.to_string(),
                })
            }
        },
    };

    let mut config = ScenarioConfig {
        scenario,
        n0: entries.positive("n0")?.unwrap_or(1.0),
        omega0: entries.positive("omega0")?.unwrap_or(1e14),
        steepness,
        delta_omega: entries.positive("delta_omega")?.unwrap_or(1e6),
        halfwidth: entries.positive("halfwidth")?.unwrap_or(crate::wavepacket::DEFAULT_HALFWIDTH),
        count,
        velocities,
        detuning_range: entries.range("detuning_range")?,
        frequency_range: entries.range("frequency_range")?,
        tail_detuning: entries.positive("tail_detuning")?.unwrap_or(5e-9),
        omega_p: entries.positive("omega_p")?,
        density: entries.positive("density")?,
        wavelength: entries.positive("wavelength")?,
        gamma: entries.positive("gamma")?,
        rabi: entries.positive("rabi")?,
        output: entries.0.get("output").map(|e| PathBuf::from(e.value)),
    };

    if let Some(Velocities::List(list)) = &config.velocities {
        if list.windows(2).any(|w| !(w[0] < w[1])) || list[0] <= 0.0 {
            return Err(ConfigError::Invalid {
                line: entries.line("vg_list").unwrap_or(0),
                reason: "`vg_list` must be positive and strictly increasing".into(),
            });
        }
    }

    apply_scenario_requirements(&mut config, &entries)?;
    Ok(config)
}

fn require(entries: &Entries, key: &'static str) -> Result<(), ConfigError> {
    if entries.0.contains_key(key) {
        Ok(())
    } else {
        Err(ConfigError::Missing(key))
    }
}

/// Fills figure defaults and checks per-scenario required keys.
fn apply_scenario_requirements(
    config: &mut ScenarioConfig,
    entries: &Entries,
) -> Result<(), ConfigError> {
    match config.scenario {
        Scenario::Fig1a => {
            config
                .velocities
                .get_or_insert(Velocities::List(vec![1e-9, 1e-8, 2e-8]));
            config.detuning_range.get_or_insert(Range {
                lo: -2e-8,
                hi: 2e-8,
                count: 801,
            });
        }
        Scenario::Fig1b => {
            config.velocities.get_or_insert(Velocities::LogRange(Range {
                lo: 1e-10,
                hi: 1e-7,
                count: 61,
            }));
        }
        Scenario::Fig2 => {
            config.velocities.get_or_insert(Velocities::LogRange(Range {
                lo: 1e-10,
                hi: 1e-6,
                count: 41,
            }));
        }
        Scenario::Fig3 => {
            config.steepness.get_or_insert(Steepness::VgOverC(1e-8));
            config.frequency_range.get_or_insert(Range {
                lo: 1.0,
                hi: 4.0,
                count: 301,
            });
        }
        Scenario::CustomReflectance => {
            if config.steepness.is_none() {
                return Err(ConfigError::Scenario(
                    "custom-reflectance needs exactly one of `alpha` or `vg_over_c`".into(),
                ));
            }
            require(entries, "n0")?;
            require(entries, "omega0")?;
            require(entries, "detuning_range")?;
        }
        Scenario::CustomSweep => {
            require(entries, "n0")?;
            require(entries, "omega0")?;
            require(entries, "delta_omega")?;
            if config.velocities.is_none() {
                return Err(ConfigError::Scenario(
                    "custom-sweep needs `vg_list` or `vg_log_range`".into(),
                ));
            }
        }
        Scenario::EitEstimate => {
            require(entries, "density")?;
            require(entries, "wavelength")?;
            if config.gamma.is_some() != config.rabi.is_some() {
                return Err(ConfigError::Scenario(
                    "`gamma` and `rabi` must be given together".into(),
                ));
            }
        }
    }
    let sweeps = matches!(
        config.scenario,
        Scenario::Fig1a | Scenario::Fig1b | Scenario::Fig2 | Scenario::CustomSweep
    );
    if sweeps && config.steepness.is_some() {
        return Err(ConfigError::Scenario(format!(
            "{} sweeps the group velocity; `alpha`/`vg_over_c` do not apply",
            config.scenario
        )));
    }
    Ok(())
}
