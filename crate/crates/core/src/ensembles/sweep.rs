//! Monte Carlo sweeps over `(n, r)` grids with Wilson intervals.
//!
//! Trial `i` samples its points from `mix_seed(seed, i)` regardless of `r`,
//! so rows at different radii are coupled: the same point sets are reused
//! and only the connectivity radius changes.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{certificate_s, dagger_tiling_check, mix_seed, regime_radius, sample_uniform, Regime, RegimeConstants};
use crate::constructions::find_witness;
use crate::geograph::build_graph;
use crate::geometry::Point2;
use crate::solver::{center_pitfall_check, cop_number_with_budget, dismantle, CopNumber, DEFAULT_STATE_BUDGET};
use crate::strategies::{run_game, Greedy, StrategyConstants, TwoCop};

pub const CSV_HEADER: &str = "n,r,regime,measurement,successes,trials,ci_lo,ci_hi,seconds";

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959964;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected 'key = value'")]
    Syntax { line: usize },
    #[error("unknown key '{0}'")]
    UnknownKey(String),
    #[error("bad value for '{key}': {msg}")]
    BadValue { key: String, msg: String },
    #[error("missing '{0}'")]
    Missing(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measurement {
    /// Graph is dismantlable.
    CopwinRate,
    /// Center condition holds around `(½, ½)`.
    CenterConditionRate,
    /// Tiling certificate for `(†)` passes with `s = 5√(ln n / n)`.
    DaggerRate,
    /// A necklace witness is found.
    WitnessRate,
    /// Two-cop policy catches a greedy robber within its horizon.
    TwoCopCaptureRate,
    /// Exact cop number is at most 2.
    CopNumberSmall,
}

impl Measurement {
    pub const ALL: [Measurement; 6] = [
        Measurement::CopwinRate,
        Measurement::CenterConditionRate,
        Measurement::DaggerRate,
        Measurement::WitnessRate,
        Measurement::TwoCopCaptureRate,
        Measurement::CopNumberSmall,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measurement::CopwinRate => "copwin_rate",
            Measurement::CenterConditionRate => "center_condition_rate",
            Measurement::DaggerRate => "dagger_rate",
            Measurement::WitnessRate => "witness_rate",
            Measurement::TwoCopCaptureRate => "two_cop_capture_rate",
            Measurement::CopNumberSmall => "cop_number_small",
        }
    }
}

impl std::str::FromStr for Measurement {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Measurement::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Measurement::ALL.iter().map(|m| m.name()).collect();
            format!("unknown measurement '{s}' ({})", names.join(", "))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum RadiusSpec {
    Fixed(Vec<f64>),
    Regime(Regime),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub n_list: Vec<usize>,
    pub radius: RadiusSpec,
    pub trials: usize,
    pub seed: u64,
    pub measurement: Measurement,
    pub constants: RegimeConstants,
    pub budget: u64,
}

impl EnsembleSpec {
    pub fn new(n_list: Vec<usize>, radius: RadiusSpec, trials: usize, seed: u64, measurement: Measurement) -> Self {
        Self { n_list, radius, trials, seed, measurement, constants: RegimeConstants::default(), budget: DEFAULT_STATE_BUDGET }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |key: &str, msg: &str| Err(ConfigError::BadValue { key: key.into(), msg: msg.into() });
        if self.trials == 0 {
            return bad("trials", "must be at least 1");
        }
        if self.n_list.is_empty() || self.n_list.contains(&0) {
            return bad("n_list", "needs positive sizes");
        }
        match &self.radius {
            RadiusSpec::Fixed(rs) if rs.is_empty() || rs.iter().any(|&r| !(r > 0.0 && r.is_finite())) => {
                bad("r_list", "needs positive finite radii")
            }
            RadiusSpec::Regime(_) if self.n_list.iter().any(|&n| n < 2) => bad("n_list", "regime radii need n >= 2"),
            _ => Ok(()),
        }
    }

    fn radii(&self, n: usize) -> Vec<f64> {
        match &self.radius {
            RadiusSpec::Fixed(rs) => rs.clone(),
            RadiusSpec::Regime(reg) => vec![regime_radius(n, *reg, &self.constants)],
        }
    }

    fn regime_label(&self) -> &'static str {
        match &self.radius {
            RadiusSpec::Fixed(_) => "fixed",
            RadiusSpec::Regime(r) => r.name(),
        }
    }

    /// `key = value` lines that [`parse_config`] reads back.
    pub fn to_config(&self) -> String {
        let join = |v: Vec<String>| v.join(",");
        let mut s = format!("n_list = {}\n", join(self.n_list.iter().map(|n| n.to_string()).collect()));
        match &self.radius {
            RadiusSpec::Fixed(rs) => s += &format!("r_list = {}\n", join(rs.iter().map(|r| r.to_string()).collect())),
            RadiusSpec::Regime(reg) => {
                s += &format!("regime = {}\nK = {}\n", reg.name(), self.constants.get(*reg));
            }
        }
        s += &format!("trials = {}\nseed = {}\nmeasurement = {}\nbudget = {}\n", self.trials, self.seed, self.measurement.name(), self.budget);
        s
    }
}

fn parse_list<T: std::str::FromStr>(key: &str, v: &str) -> Result<Vec<T>, ConfigError>
where
    T::Err: std::fmt::Display,
{
    v.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|e| ConfigError::BadValue { key: key.into(), msg: e.to_string() }))
        .collect()
}

/// Reads `key = value` lines; `#` starts a comment. Keys: `n` or `n_list`,
/// `r` or `r_list` or `regime` (+ optional `K`), `trials`, `seed`,
/// `measurement`, `budget`.
pub fn parse_config(text: &str) -> Result<EnsembleSpec, ConfigError> {
    let mut kv = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or(ConfigError::Syntax { line: i + 1 })?;
        kv.insert(k.trim().to_string(), v.trim().to_string());
    }
    for k in kv.keys() {
        if !["n", "n_list", "r", "r_list", "regime", "K", "trials", "seed", "measurement", "budget"].contains(&k.as_str()) {
            return Err(ConfigError::UnknownKey(k.clone()));
        }
    }
    let bad = |key: &str, msg: String| ConfigError::BadValue { key: key.into(), msg };
    let n_list = match kv.get("n_list").or(kv.get("n")) {
        Some(v) => parse_list("n_list", v)?,
        None => return Err(ConfigError::Missing("n_list")),
    };
    let mut constants = RegimeConstants::default();
    let radius = match (kv.get("r_list").or(kv.get("r")), kv.get("regime")) {
        (Some(v), None) => RadiusSpec::Fixed(parse_list("r_list", v)?),
        (None, Some(reg)) => {
            let reg: Regime = reg.parse().map_err(|e| bad("regime", e))?;
            if let Some(k) = kv.get("K") {
                let k: f64 = k.parse().map_err(|e: std::num::ParseFloatError| bad("K", e.to_string()))?;
                constants = constants.with(reg, k);
            }
            RadiusSpec::Regime(reg)
        }
        (Some(_), Some(_)) => return Err(bad("regime", "give either r_list or regime, not both".into())),
        (None, None) => return Err(ConfigError::Missing("r_list or regime")),
    };
    let trials = kv.get("trials").ok_or(ConfigError::Missing("trials"))?;
    let trials: usize = trials.parse().map_err(|e: std::num::ParseIntError| bad("trials", e.to_string()))?;
    let seed: u64 = match kv.get("seed") {
        Some(s) => s.parse().map_err(|e: std::num::ParseIntError| bad("seed", e.to_string()))?,
        None => 0,
    };
    let measurement = kv.get("measurement").ok_or(ConfigError::Missing("measurement"))?;
    let measurement: Measurement = measurement.parse().map_err(|e| bad("measurement", e))?;
    let budget = match kv.get("budget") {
        Some(b) => b.parse().map_err(|e: std::num::ParseIntError| bad("budget", e.to_string()))?,
        None => DEFAULT_STATE_BUDGET,
    };
    let spec = EnsembleSpec { n_list, radius, trials, seed, measurement, constants, budget };
    spec.validate()?;
    Ok(spec)
}

/// Wilson score interval at 95%; `(0, 1)` when there are no trials.
pub fn wilson_interval(successes: usize, trials: usize) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    let lo = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if successes == trials { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TrialOutcome {
    Success,
    Failure,
    Skipped,
}

fn run_trial(m: Measurement, n: usize, r: f64, seed: u64, budget: u64) -> TrialOutcome {
    use TrialOutcome::*;
    let ps = sample_uniform(n, seed);
    let ok = |b: bool| if b { Success } else { Failure };
    if m == Measurement::DaggerRate {
        let s = 5.0 * ((n as f64).ln().max(0.0) / n as f64).sqrt();
        return ok(dagger_tiling_check(&ps, r, s).sufficient);
    }
    let g = build_graph(ps, r).expect("positive radius");
    match m {
        Measurement::CopwinRate => ok(dismantle(&g).copwin),
        Measurement::CenterConditionRate => ok(center_pitfall_check(&g, Point2::new(0.5, 0.5)).holds),
        Measurement::DaggerRate => unreachable!(),
        Measurement::WitnessRate => match find_witness(&g) {
            Ok(w) => ok(w.is_some()),
            Err(_) => Skipped,
        },
        Measurement::TwoCopCaptureRate => {
            let k = StrategyConstants::relaxed(r, certificate_s(n));
            let horizon = 10 * k.horizon(r);
            let mut cops = TwoCop::new(&g, k);
            let mut robber = Greedy::new(g.graph());
            match run_game(g.graph(), &mut cops, &mut robber, horizon, seed) {
                Ok(t) => ok(t.outcome.captured()),
                Err(_) => Failure,
            }
        }
        Measurement::CopNumberSmall => match cop_number_with_budget(g.graph(), 2, budget) {
            Ok(CopNumber::Exactly(_)) => Success,
            Ok(CopNumber::Exceeds(_)) => Failure,
            Err(_) => Skipped,
        },
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub r: f64,
    pub regime: String,
    pub measurement: String,
    pub successes: usize,
    /// Completed trials; skipped ones are excluded.
    pub trials: usize,
    pub skipped: usize,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub seconds: f64,
}

impl SweepRow {
    pub fn rate(&self) -> f64 {
        if self.trials == 0 {
            f64::NAN
        } else {
            self.successes as f64 / self.trials as f64
        }
    }
}

/// One row per `(n, r)`; trials run in parallel, results reduced in trial
/// order.
pub fn sweep(spec: &EnsembleSpec) -> Vec<SweepRow> {
    let mut rows = Vec::new();
    for &n in &spec.n_list {
        for r in spec.radii(n) {
            let t0 = Instant::now();
            let outcomes: Vec<TrialOutcome> = (0..spec.trials)
                .into_par_iter()
                .map(|i| run_trial(spec.measurement, n, r, mix_seed(spec.seed, i as u64), spec.budget))
                .collect();
            let successes = outcomes.iter().filter(|&&o| o == TrialOutcome::Success).count();
            let skipped = outcomes.iter().filter(|&&o| o == TrialOutcome::Skipped).count();
            let trials = outcomes.len() - skipped;
            let (ci_lo, ci_hi) = wilson_interval(successes, trials);
            rows.push(SweepRow {
                n,
                r,
                regime: spec.regime_label().into(),
                measurement: spec.measurement.name().into(),
                successes,
                trials,
                skipped,
                ci_lo,
                ci_hi,
                seconds: t0.elapsed().as_secs_f64(),
            });
        }
    }
    rows
}

/// Config as `#` lines, then the fixed header and one line per row.
pub fn write_sweep_csv(mut w: impl Write, spec: &EnsembleSpec, rows: &[SweepRow]) -> std::io::Result<()> {
    for line in spec.to_config().lines() {
        writeln!(w, "# {line}")?;
    }
    let k = &spec.constants;
    writeln!(w, "# constants: K1 = {}, K2 = {} (assumed default), K3 = {} (assumed default)", k.k1, k.k2, k.k3)?;
    let skipped: usize = rows.iter().map(|r| r.skipped).sum();
    if skipped > 0 {
        writeln!(w, "# skipped trials (solver budget or invalid parameters): {skipped}")?;
    }
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(CSV_HEADER.split(','))?;
    for r in rows {
        csv.write_record([
            r.n.to_string(),
            r.r.to_string(),
            r.regime.clone(),
            r.measurement.clone(),
            r.successes.to_string(),
            r.trials.to_string(),
            r.ci_lo.to_string(),
            r.ci_hi.to_string(),
            format!("{:.3}", r.seconds),
        ])?;
    }
    csv.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_known_values() {
        let (lo, hi) = wilson_interval(0, 50);
        assert_eq!(lo, 0.0);
        assert!((hi - 0.0713).abs() < 1e-3);
        let (lo, hi) = wilson_interval(50, 50);
        assert!((lo - 0.9287).abs() < 1e-3);
        assert_eq!(hi, 1.0);
        let (lo, hi) = wilson_interval(5, 10);
        assert!((lo - 0.2366).abs() < 1e-3 && (hi - 0.7634).abs() < 1e-3);
    }

    #[test]
    fn config_round_trip() {
        let text = "# demo\nn_list = 100, 200\nregime = lower\nK = 0.3\ntrials = 5\nseed = 9\nmeasurement = copwin_rate\n";
        let spec = parse_config(text).unwrap();
        assert_eq!(spec.n_list, vec![100, 200]);
        assert_eq!(spec.constants.k3, 0.3);
        assert_eq!(parse_config(&spec.to_config()).unwrap(), spec);
        assert!(matches!(parse_config("n = 5\nr = 0.1\ntrials = 0\nmeasurement = copwin_rate"), Err(ConfigError::BadValue { .. })));
        assert!(matches!(parse_config("n = 5\nr = 0.1\ntrials = 1\nmeasurement = nope"), Err(ConfigError::BadValue { .. })));
        assert!(matches!(parse_config("n = 5\nr = 0.1\nbogus = 1"), Err(ConfigError::UnknownKey(_))));
        assert!(matches!(parse_config("n 5"), Err(ConfigError::Syntax { line: 1 })));
    }

    #[test]
    fn clique_and_disconnected_extremes() {
        let spec = EnsembleSpec::new(vec![60], RadiusSpec::Fixed(vec![0.01, 1.5]), 10, 4, Measurement::CopwinRate);
        let rows = sweep(&spec);
        assert_eq!(rows[0].successes, 0);
        assert_eq!(rows[1].successes, 10);
    }

    #[test]
    fn csv_is_deterministic() {
        let spec = EnsembleSpec::new(vec![40], RadiusSpec::Fixed(vec![0.2, 0.4]), 6, 1, Measurement::CenterConditionRate);
        let strip = |rows: Vec<SweepRow>| {
            let mut buf = Vec::new();
            let rows: Vec<SweepRow> = rows.into_iter().map(|r| SweepRow { seconds: 0.0, ..r }).collect();
            write_sweep_csv(&mut buf, &spec, &rows).unwrap();
            String::from_utf8(buf).unwrap()
        };
        let a = strip(sweep(&spec));
        assert_eq!(a, strip(sweep(&spec)));
        assert!(a.lines().any(|l| l == CSV_HEADER));
        assert!(a.starts_with("# n_list = 40"));
    }

    #[test]
    fn every_measurement_runs() {
        for m in Measurement::ALL {
            let spec = EnsembleSpec::new(vec![30], RadiusSpec::Fixed(vec![0.5]), 2, 3, m);
            let rows = sweep(&spec);
            assert_eq!(rows.len(), 1);
            assert_eq!(rows[0].trials + rows[0].skipped, 2);
        }
    }
}
