//! The 5x7 example instance and its three-cell solution, shipped as files
//! under `fixtures/`.

use crate::instance::CfpInstance;
use crate::io::{parse_instance, parse_solution};
use crate::rational::Rational;
use crate::solution::CfpSolution;

pub const TABLE1_CFP: &str = include_str!("../fixtures/table1.cfp");
pub const TABLE2_SOL: &str = include_str!("../fixtures/table2.sol");

/// Minimum of `e + v` on [`table1`] (e = 7, v = 1).
pub const TABLE1_F1_OPT: u64 = 8;

/// Maximum grouping efficacy on [`table1`] (e = 4, v = 5).
pub fn table1_f2_opt() -> Rational {
    Rational::new(17, 26).expect("nonzero denominator")
}

pub fn table1() -> CfpInstance {
    parse_instance(TABLE1_CFP).expect("bundled fixture parses")
}

pub fn table2() -> CfpSolution {
    parse_solution(TABLE2_SOL, &table1()).expect("bundled fixture parses")
}
