use std::fmt;
use std::str::FromStr;

use picalc_core::{
    machin_term_count, pi_brent_salamin_traced, pi_legendre_family, pi_machin, FixedReal, MachinFormula,
    ModulusPair, PrecisionContext,
};

use crate::error::CliError;

pub const DEFAULT_K: &str = "0.6";

/// One way of computing π, written `agm`, `legendre@0.6` (or
/// `legendre@k=0.6`) and `machin@gauss3` (or `machin@<expression>`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PiAlgorithm {
    Agm,
    Legendre { k: String },
    Machin { formula: MachinFormula },
}

impl PiAlgorithm {
    pub fn legendre(k: &str) -> Self {
        PiAlgorithm::Legendre { k: k.trim().to_string() }
    }

    pub fn machin(name_or_expr: &str) -> Result<Self, CliError> {
        let formula = MachinFormula::from_name_or_expr(name_or_expr).map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(PiAlgorithm::Machin { formula })
    }

    pub fn default_set() -> Vec<PiAlgorithm> {
        ["agm", "legendre@0.6", "machin@machin", "machin@gauss3"].iter().map(|s| s.parse().unwrap()).collect()
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for PiAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PiAlgorithm::Agm => f.write_str("agm"),
            PiAlgorithm::Legendre { k } => write!(f, "legendre@{k}"),
            PiAlgorithm::Machin { formula } => write!(f, "machin@{}", formula.name()),
        }
    }
}

impl FromStr for PiAlgorithm {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let s = s.trim();
        let (kind, param) = match s.split_once('@') {
            Some((kind, param)) => (kind, Some(param)),
            None => (s, None),
        };
        match (kind, param) {
            ("agm", None) => Ok(PiAlgorithm::Agm),
            ("legendre", None) => Ok(PiAlgorithm::legendre(DEFAULT_K)),
            ("legendre", Some(p)) => Ok(PiAlgorithm::legendre(p.strip_prefix("k=").unwrap_or(p))),
            ("machin", None) => PiAlgorithm::machin("machin"),
            ("machin", Some(p)) => PiAlgorithm::machin(p),
            _ => Err(CliError::Usage(format!("unknown algorithm `{s}` (expected agm, legendre@K or machin@FORMULA)"))),
        }
    }
}

/// π from one algorithm, with its iteration or series-term count when it
/// has one.
#[derive(Debug, Clone)]
pub struct PiRun {
    pub value: FixedReal,
    pub iterations_or_terms: Option<u64>,
}

pub fn compute_pi(algo: &PiAlgorithm, ctx: &PrecisionContext) -> Result<PiRun, CliError> {
    match algo {
        PiAlgorithm::Agm => {
            let (value, run) = pi_brent_salamin_traced(ctx)?;
            Ok(PiRun { value, iterations_or_terms: Some(run.iterations as u64) })
        }
        PiAlgorithm::Legendre { k } => {
            let pair = ModulusPair::from_decimal(k, ctx).map_err(|e| CliError::Usage(format!("invalid k `{k}`: {e}")))?;
            Ok(PiRun { value: pi_legendre_family(pair.k(), ctx)?, iterations_or_terms: None })
        }
        PiAlgorithm::Machin { formula } => {
            let value = pi_machin(formula, ctx)?;
            Ok(PiRun { value, iterations_or_terms: Some(machin_term_count(formula, ctx)) })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        for label in ["agm", "legendre@0.3", "machin@machin", "machin@gauss3", "machin@euler"] {
            assert_eq!(label.parse::<PiAlgorithm>().unwrap().label(), label);
        }
        assert_eq!("legendre@k=0.6".parse::<PiAlgorithm>().unwrap().label(), "legendre@0.6");
        assert_eq!("legendre".parse::<PiAlgorithm>().unwrap().label(), "legendre@0.6");
    }

    #[test]
    fn expression_formulas() {
        let a: PiAlgorithm = "machin@atan(1/2) + atan(1/3)".parse().unwrap();
        assert!(matches!(a, PiAlgorithm::Machin { .. }));
        assert!(matches!("machin@atan(2)".parse::<PiAlgorithm>(), Err(CliError::Usage(_))));
        assert!(matches!("chudnovsky".parse::<PiAlgorithm>(), Err(CliError::Usage(_))));
        assert!(matches!("agm@1".parse::<PiAlgorithm>(), Err(CliError::Usage(_))));
    }

    #[test]
    fn bad_k_is_a_usage_error() {
        let ctx = PrecisionContext::new(10).unwrap();
        for k in ["1.5", "0", "abc", "-0.2"] {
            assert!(matches!(compute_pi(&PiAlgorithm::legendre(k), &ctx), Err(CliError::Usage(_))), "{k}");
        }
    }
}
