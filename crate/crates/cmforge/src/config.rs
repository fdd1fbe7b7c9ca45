//! Job description shared by the CLI and library callers.

use anyhow::{bail, Result};
use cmforge_core::field::{make_field, RayModulus};
use cmforge_core::invariants::InvariantKind;
use serde::Serialize;

/// Precision used when none is given on the command line or in the environment.
pub const DEFAULT_PRECISION: u32 = 120;
/// Automatic precision doubles up to this many digits before giving up.
pub const MAX_AUTO_PRECISION: u32 = 4800;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum InvariantName {
    /// `g_{(s/N, t/N)}(theta)^{12N}`, default `(s, t) = (0, 1)`.
    SrInvariant,
    /// `g_{(s/N, t/N)}^m / g_{(0, 1/N)}^m`.
    Thm51Quotient,
    /// Quotient built from `p | N`.
    Cor52,
    /// Real quotient: `-s` for `g_{(0, s/N)}^m / g_{(0, 1/N)}^m`, `-t` for the `(1/2, t/N)` form.
    Thm62Real,
    /// Real quotient for `p^2 | N`.
    Cor63,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, Serialize)]
pub struct JobConfig {
    pub d: i64,
    #[serde(rename = "N")]
    pub n: u64,
    pub kind: InvariantName,
    pub s: Option<i64>,
    pub t: Option<i64>,
    pub p: Option<u64>,
    /// Decimal digits; `None` selects automatically and escalates on failure.
    pub precision: Option<u32>,
    pub level: Option<u64>,
    #[serde(skip)]
    pub threads: usize,
    #[serde(skip)]
    pub format: OutputFormat,
}

impl JobConfig {
    pub fn new(d: i64, n: u64, kind: InvariantName) -> Self {
        JobConfig { d, n, kind, s: None, t: None, p: None, precision: None, level: None, threads: 0, format: OutputFormat::Json }
    }

    pub fn modulus(&self) -> Result<RayModulus> {
        Ok(RayModulus::new(&make_field(self.d)?, self.n)?)
    }

    /// Map the kind and its parameters to a core invariant, rejecting stray parameters.
    pub fn invariant(&self) -> Result<InvariantKind> {
        let (s, t, p) = (self.s, self.t, self.p);
        let need_p = || match p {
            Some(p) => Ok(p),
            None => bail!("--kind {} needs -p", self.kind_name()),
        };
        Ok(match self.kind {
            InvariantName::SrInvariant | InvariantName::Thm51Quotient => {
                if p.is_some() {
                    bail!("-p is not used by --kind {}", self.kind_name());
                }
                let (s, t) = match (s, t, self.kind) {
                    (None, None, InvariantName::SrInvariant) => (0, 1),
                    (Some(s), Some(t), _) => (s, t),
                    _ => bail!("--kind {} needs both -s and -t", self.kind_name()),
                };
                if self.kind == InvariantName::SrInvariant {
                    InvariantKind::SrInvariant { s, t }
                } else {
                    InvariantKind::Quotient { s, t }
                }
            }
            InvariantName::Cor52 | InvariantName::Cor63 => {
                if s.is_some() || t.is_some() {
                    bail!("--kind {} takes only -p", self.kind_name());
                }
                let p = need_p()?;
                if self.kind == InvariantName::Cor52 {
                    InvariantKind::BetaQuotient { p }
                } else {
                    InvariantKind::RealPrimeSquare { p }
                }
            }
            InvariantName::Thm62Real => match (s, t, p) {
                (Some(s), None, None) => InvariantKind::RealQuotient { s },
                (None, Some(t), None) => InvariantKind::RealHalfQuotient { t },
                _ => bail!("--kind thm62_real needs exactly one of -s or -t"),
            },
        })
    }

    fn kind_name(&self) -> &'static str {
        match self.kind {
            InvariantName::SrInvariant => "sr_invariant",
            InvariantName::Thm51Quotient => "thm51_quotient",
            InvariantName::Cor52 => "cor52",
            InvariantName::Thm62Real => "thm62_real",
            InvariantName::Cor63 => "cor63",
        }
    }

    /// Validate everything that can be checked before any evaluation.
    pub fn validate(&self) -> Result<()> {
        let m = self.modulus()?;
        cmforge_core::invariants::build_spec(&m, self.invariant()?)?;
        if self.precision.is_some_and(|p| p < 50) {
            bail!("precision must be at least 50 digits");
        }
        Ok(())
    }
}
