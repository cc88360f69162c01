//! Named verification suites, their configuration and the resource guard.

use crate::field::{format_ratu, parse_scalar, QCtx, QMode, RatU, Scalar, Q};
use crate::report::CheckReport;
use crate::rmatrix::RMatrixSet;
use crate::{drinfeld, gauss, rep, rmatrix, CheckOptions};
use rayon::prelude::*;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use thiserror::Error;

/// Largest flattened operator a configuration may require.
pub const MAX_ROWS: usize = 10_000;

/// Largest `q`-exponent used by the Cartan suite.
const CARTAN_KMAX: i64 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SuiteId {
    Ybe,
    Unitarity,
    Crossing,
    ScalarF,
    Rll,
    Gauss,
    Minors,
    Embedding,
    Drinfeld,
    Center,
    MainMap,
    Cartan,
    All,
}

impl SuiteId {
    /// Every concrete suite, in the order `all` runs them.
    pub const CONCRETE: [SuiteId; 12] = [
        SuiteId::Ybe,
        SuiteId::Unitarity,
        SuiteId::Crossing,
        SuiteId::ScalarF,
        SuiteId::Rll,
        SuiteId::Gauss,
        SuiteId::Minors,
        SuiteId::Embedding,
        SuiteId::Drinfeld,
        SuiteId::Center,
        SuiteId::MainMap,
        SuiteId::Cartan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::Ybe => "ybe",
            SuiteId::Unitarity => "unitarity",
            SuiteId::Crossing => "crossing",
            SuiteId::ScalarF => "scalar-f",
            SuiteId::Rll => "rll",
            SuiteId::Gauss => "gauss",
            SuiteId::Minors => "minors",
            SuiteId::Embedding => "embedding",
            SuiteId::Drinfeld => "drinfeld",
            SuiteId::Center => "center",
            SuiteId::MainMap => "main-map",
            SuiteId::Cartan => "cartan",
            SuiteId::All => "all",
        }
    }

    /// Rows of the largest flattened operator the suite builds.
    pub fn max_rows(self, n: usize, m: usize) -> usize {
        let d = 2 * n;
        let pow = |e: usize| d.checked_pow(e as u32).unwrap_or(usize::MAX);
        match self {
            SuiteId::Ybe | SuiteId::Unitarity | SuiteId::Crossing => pow(3),
            SuiteId::ScalarF | SuiteId::Cartan => d,
            SuiteId::Rll | SuiteId::Minors => pow(m + 2),
            SuiteId::Gauss | SuiteId::Embedding | SuiteId::Drinfeld | SuiteId::Center | SuiteId::MainMap => pow(m + 1),
            SuiteId::All => SuiteId::CONCRETE.iter().map(|s| s.max_rows(n, m)).max().unwrap_or(0),
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteId {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SuiteId::CONCRETE
            .iter()
            .chain(std::iter::once(&SuiteId::All))
            .find(|id| id.name() == s)
            .copied()
            .ok_or_else(|| SuiteError::InvalidConfig(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SuiteError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("refusing suite {suite} at n={n}, m={m}: it needs a {rows}-row operator, above the cap of {cap}")]
    TooLarge { suite: String, n: usize, m: usize, rows: usize, cap: usize },
    #[error("worker pool: {0}")]
    Workers(String),
}

/// `symbolic` or `pinned:<rational>`.
pub fn parse_q_mode(s: &str) -> Result<QMode, SuiteError> {
    if s == "symbolic" {
        return Ok(QMode::Symbolic);
    }
    let v = s.strip_prefix("pinned:").ok_or_else(|| SuiteError::InvalidConfig(format!("q-mode {s:?} is neither symbolic nor pinned:<rational>")))?;
    let q = Q::from_str(v).map_err(|_| SuiteError::InvalidConfig(format!("pinned value {v:?} is not a rational")))?;
    if q == Q::from(0) || q == Q::from(1) || q == Q::from(-1) {
        return Err(SuiteError::InvalidConfig(format!("pinned q = {v} is a root of unity or zero")));
    }
    Ok(QMode::Pinned(q))
}

/// Comma-separated evaluation parameters: plain rationals, or scalars in
/// the `q`-dependent text form.
pub fn parse_params(s: &str) -> Result<Vec<Scalar>, SuiteError> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            match Q::from_str(t) {
                Ok(v) if v == Q::from(0) => Err(SuiteError::InvalidConfig("evaluation parameters must be nonzero".into())),
                Ok(v) => Ok(Scalar::rational(v)),
                Err(_) => parse_scalar(t).map_err(|e| SuiteError::InvalidConfig(format!("parameter {t:?}: {e}"))),
            }
        })
        .collect()
}

/// One run of a suite.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: SuiteId,
    pub n: usize,
    /// Fusion length `m`.
    pub m: usize,
    pub opts: CheckOptions,
    /// Worker threads; `None` uses every core.
    pub workers: Option<usize>,
}

impl SuiteConfig {
    pub fn new(suite: SuiteId, n: usize, m: usize, opts: CheckOptions) -> Self {
        SuiteConfig { suite, n, m, opts, workers: None }
    }

    pub fn validate(&self) -> Result<(), SuiteError> {
        if self.n == 0 {
            return Err(SuiteError::InvalidConfig("n must be at least 1".into()));
        }
        if self.m == 0 {
            return Err(SuiteError::InvalidConfig("fusion m must be at least 1".into()));
        }
        if self.opts.trunc == 0 {
            return Err(SuiteError::InvalidConfig("truncation K must be at least 1".into()));
        }
        if let Some(p) = &self.opts.eval_params {
            if p.len() != self.m {
                return Err(SuiteError::InvalidConfig(format!("{} parameters given for fusion m = {}", p.len(), self.m)));
            }
        }
        if self.workers == Some(0) {
            return Err(SuiteError::InvalidConfig("workers must be at least 1".into()));
        }
        let rows = self.suite.max_rows(self.n, self.m);
        if rows > MAX_ROWS {
            return Err(SuiteError::TooLarge { suite: self.suite.name().into(), n: self.n, m: self.m, rows, cap: MAX_ROWS });
        }
        Ok(())
    }
}

fn run_one(id: SuiteId, n: usize, m: usize, opts: &CheckOptions) -> CheckReport {
    match id {
        SuiteId::Ybe => rmatrix::check_ybe(n, opts),
        SuiteId::Unitarity => rmatrix::check_unitarity(n, opts),
        SuiteId::Crossing => rmatrix::check_crossing(n, opts),
        SuiteId::ScalarF => rmatrix::check_scalar_f(n, opts),
        SuiteId::Rll => rep::check_rll(n, m, opts),
        SuiteId::Gauss => gauss::check_gauss(n, m, opts),
        SuiteId::Minors => gauss::check_minors(n, m, opts),
        SuiteId::Embedding => gauss::check_embedding(n, m, opts),
        SuiteId::Drinfeld => drinfeld::check_drinfeld(n, m, opts),
        SuiteId::Center => drinfeld::check_center(n, m, opts),
        SuiteId::MainMap => drinfeld::check_main_map(n, m, opts),
        SuiteId::Cartan => rep::check_cartan(n, CARTAN_KMAX, opts),
        SuiteId::All => unreachable!("expanded by run_suite"),
    }
}

/// Runs a suite. `all` merges every concrete suite, prefixing item ids and
/// parameter keys with the suite name; the output is independent of the
/// worker count.
pub fn run_suite(cfg: &SuiteConfig) -> Result<CheckReport, SuiteError> {
    cfg.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cfg.workers {
        builder = builder.num_threads(w);
    }
    let pool = builder.build().map_err(|e| SuiteError::Workers(e.to_string()))?;
    let (n, m, opts) = (cfg.n, cfg.m, &cfg.opts);
    Ok(pool.install(|| {
        if cfg.suite != SuiteId::All {
            return run_one(cfg.suite, n, m, opts);
        }
        let parts: Vec<CheckReport> = SuiteId::CONCRETE.par_iter().map(|&id| run_one(id, n, m, opts)).collect();
        let mut params = opts.params();
        params.insert("n".into(), n.to_string());
        params.insert("m".into(), m.to_string());
        let mut all = CheckReport::new("all", params);
        for part in parts {
            for (k, v) in &part.params {
                if all.params.get(k) != Some(v) {
                    all.params.insert(format!("{}/{k}", part.suite), v.clone());
                }
            }
            all.absorb(part);
        }
        all
    }))
}

/// Writes `Rbar(u)` and the fused `L(u)` as one line per nonzero entry.
pub fn dump_matrices(cfg: &SuiteConfig, dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let invalid = |e: String| std::io::Error::new(std::io::ErrorKind::InvalidInput, e);
    std::fs::create_dir_all(dir)?;
    let ctx = QCtx::new(gauss::effective_mode(cfg.n, cfg.m, &cfg.opts.mode).0);
    let set = RMatrixSet::<RatU>::build(cfg.n, &ctx).map_err(|e| invalid(e.to_string()))?;
    let rbar = set.rbar(&RatU::var(), &RatU::constant(Scalar::int(1))).ok_or_else(|| invalid("Rbar(u) is singular".into()))?;
    let params = rep::eval_params(cfg.m, &cfg.opts);
    let l = rep::fused_l(cfg.n, &params, rep::Sign::Plus, &ctx).map_err(|e| invalid(e.to_string()))?;
    let mut out = Vec::new();
    for (name, op) in [("rbar.txt", &rbar), ("fused_l.txt", &l.matrix)] {
        let path = dir.join(name);
        let mut text = op.dump(format_ratu).join("\n");
        text.push('\n');
        std::fs::write(&path, text)?;
        out.push(path);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for id in SuiteId::CONCRETE.iter().chain(std::iter::once(&SuiteId::All)) {
            assert_eq!(id.name().parse::<SuiteId>().unwrap(), *id);
        }
        assert!("nope".parse::<SuiteId>().is_err());
    }

    #[test]
    fn q_mode_parsing() {
        assert_eq!(parse_q_mode("symbolic").unwrap(), QMode::Symbolic);
        assert_eq!(parse_q_mode("pinned:3/5").unwrap(), QMode::Pinned(Q::from_signeds(3, 5)));
        assert!(parse_q_mode("pinned:1").is_err());
        assert!(parse_q_mode("pinned:x").is_err());
        assert!(parse_q_mode("other").is_err());
    }

    #[test]
    fn guard_refuses_large_modules() {
        let cfg = SuiteConfig::new(SuiteId::Rll, 3, 4, CheckOptions::default());
        match cfg.validate() {
            Err(SuiteError::TooLarge { rows, .. }) => assert_eq!(rows, 6usize.pow(6)),
            other => panic!("expected refusal, got {other:?}"),
        }
        assert!(SuiteConfig::new(SuiteId::Gauss, 2, 2, CheckOptions::default()).validate().is_ok());
        assert!(SuiteConfig::new(SuiteId::Ybe, 0, 1, CheckOptions::default()).validate().is_err());
    }

    #[test]
    fn params_parse() {
        let p = parse_params("2, 3/7").unwrap();
        assert_eq!(p, vec![Scalar::int(2), Scalar::frac(3, 7)]);
        assert!(parse_params("0").is_err());
        assert!(parse_params("x").is_err());
    }
}
