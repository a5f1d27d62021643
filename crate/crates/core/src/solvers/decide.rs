use super::{solve, Method, Objective, SolveOptions};
use crate::error::{CfpError, Result};
use crate::instance::CfpInstance;
use crate::rational::Rational;
use crate::solution::CfpSolution;

/// Threshold question: is there a solution with `f1 <= c` / efficacy `>= c`?
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecisionQuery {
    F1AtMost(u64),
    EfficacyAtLeast(Rational),
}

impl DecisionQuery {
    pub fn efficacy_at_least(threshold: Rational) -> Result<Self> {
        if threshold < Rational::ZERO || threshold > Rational::ONE {
            return Err(CfpError::ThresholdOutOfRange(format!(
                "efficacy threshold {threshold} outside [0, 1]"
            )));
        }
        Ok(DecisionQuery::EfficacyAtLeast(threshold))
    }

    pub fn objective(&self) -> Objective {
        match self {
            DecisionQuery::F1AtMost(_) => Objective::F1,
            DecisionQuery::EfficacyAtLeast(_) => Objective::Efficacy,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    /// The witness meets the threshold.
    Yes(CfpSolution),
    No,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }
}

/// Answers `query` from the optimum found by `method`. With the oracle or
/// exact solver a `No` is certified; with the heuristic it only means no
/// witness was found.
pub fn decide(
    instance: &CfpInstance,
    query: DecisionQuery,
    method: Method,
    options: &SolveOptions,
) -> Result<Decision> {
    if let DecisionQuery::EfficacyAtLeast(t) = query {
        DecisionQuery::efficacy_at_least(t)?;
    }
    let result = solve(instance, query.objective(), method, options)?;
    let meets = match query {
        DecisionQuery::F1AtMost(c) => result.report.f1 <= c,
        DecisionQuery::EfficacyAtLeast(t) => result.report.efficacy()? >= t,
    };
    Ok(if meets {
        Decision::Yes(result.best)
    } else {
        Decision::No
    })
}
