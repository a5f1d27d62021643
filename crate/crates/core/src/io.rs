//! Plain-text formats.
//!
//! Instance:
//!
//! ```text
//! # comment lines start with '#'
//! 2 3
//! 1 0 1
//! 0 1 1
//! ```
//!
//! Weighted or capacity-limited instances (merge products) append
//! `row_weights w1 .. wm`, `col_weights u1 .. up` and `capacity K` lines;
//! these are omitted when they hold default values.
//!
//! Solution:
//!
//! ```text
//! cells 2
//! machines 0 1
//! parts 0 0 1
//! ```
//!
//! Edge list: a `left right edges` header followed by one `u v` line per edge.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::bgep::BgepInstance;
use crate::error::{CfpError, Result};
use crate::instance::CfpInstance;
use crate::matrix::BoolMatrix;
use crate::solution::{validate, CfpSolution};

/// A whitespace-separated token with its 1-based position.
#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn error(&self, message: impl Into<String>) -> CfpError {
        CfpError::parse(self.line, self.column, message)
    }

    fn number<T: std::str::FromStr>(&self, what: &str) -> Result<T> {
        if !self.text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(self.error(format!("expected {what}, found {:?}", self.text)));
        }
        self.text
            .parse()
            .map_err(|_| self.error(format!("{what} out of range: {}", self.text)))
    }
}

/// Non-comment lines, each split into tokens.
fn lines(text: &str) -> Vec<(usize, Vec<Token<'_>>)> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        if raw.trim_start().starts_with('#') {
            continue;
        }
        let mut tokens = Vec::new();
        let mut start = None;
        for (idx, ch) in raw.char_indices().chain(std::iter::once((raw.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(idx),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &raw[s..idx],
                        line: n + 1,
                        column: raw[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            out.push((n + 1, tokens));
        }
    }
    out
}

fn end_of_input(text: &str) -> CfpError {
    CfpError::parse(text.lines().count().max(1), 1, "unexpected end of input")
}

pub fn parse_instance(text: &str) -> Result<CfpInstance> {
    let lines = lines(text);
    let mut it = lines.iter();
    let (_, header) = it.next().ok_or_else(|| end_of_input(text))?;
    if header.len() != 2 {
        return Err(header[0].error("header must be `m p`"));
    }
    let m: usize = header[0].number("machine count")?;
    let p: usize = header[1].number("part count")?;
    if m == 0 || p == 0 {
        return Err(header[0].error("empty matrix"));
    }
    let mut matrix = BoolMatrix::zeros(m, p)?;
    for i in 0..m {
        let (line, row) = it.next().ok_or_else(|| end_of_input(text))?;
        for (j, tok) in row.iter().enumerate() {
            if j >= p {
                return Err(tok.error(format!("row has more than {p} entries")));
            }
            match tok.text {
                "0" => {}
                "1" => matrix.set(i, j, true),
                other => return Err(tok.error(format!("bad token {other:?}, expected 0 or 1"))),
            }
        }
        if row.len() < p {
            let last = row.last().expect("lines are non-empty");
            return Err(CfpError::parse(
                *line,
                last.column + last.text.len(),
                format!("row has {} entries, expected {p}", row.len()),
            ));
        }
    }

    let (mut row_weights, mut col_weights, mut capacity) = (None, None, None);
    for (_, tokens) in it {
        let key = tokens[0];
        let values = &tokens[1..];
        let weights = |n: usize| -> Result<Vec<u64>> {
            if values.len() != n {
                return Err(key.error(format!("{} expects {n} values", key.text)));
            }
            values.iter().map(|t| t.number("weight")).collect()
        };
        match key.text {
            "row_weights" if row_weights.is_none() => row_weights = Some(weights(m)?),
            "col_weights" if col_weights.is_none() => col_weights = Some(weights(p)?),
            "capacity" if capacity.is_none() => {
                if values.len() != 1 {
                    return Err(key.error("capacity expects one value"));
                }
                capacity = Some(values[0].number::<usize>("capacity")?);
            }
            _ => return Err(key.error(format!("unexpected {:?} after the matrix", key.text))),
        }
    }
    let instance = CfpInstance::with_weights(
        matrix,
        row_weights.unwrap_or_else(|| vec![1; m]),
        col_weights.unwrap_or_else(|| vec![1; p]),
    )
    .map_err(|e| CfpError::parse(1, 1, e.to_string()))?;
    match capacity {
        Some(c) => instance
            .with_capacity(c)
            .map_err(|e| CfpError::parse(1, 1, e.to_string())),
        None => Ok(instance),
    }
}

fn join<T: ToString>(values: &[T]) -> String {
    values.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

pub fn write_instance(instance: &CfpInstance) -> String {
    let mut out = String::new();
    let (m, p) = (instance.machines(), instance.parts());
    let _ = writeln!(out, "{m} {p}");
    for i in 0..m {
        let row: Vec<&str> = (0..p).map(|j| if instance.a(i, j) { "1" } else { "0" }).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    if instance.row_weights().iter().any(|&w| w != 1) {
        let _ = writeln!(out, "row_weights {}", join(instance.row_weights()));
    }
    if instance.col_weights().iter().any(|&w| w != 1) {
        let _ = writeln!(out, "col_weights {}", join(instance.col_weights()));
    }
    if !instance.has_default_capacity() {
        let _ = writeln!(out, "capacity {}", instance.capacity());
    }
    out
}

/// Parses a solution without checking it against an instance.
pub fn parse_solution_unchecked(text: &str) -> Result<CfpSolution> {
    let tokens: Vec<Token<'_>> = lines(text).into_iter().flat_map(|(_, t)| t).collect();
    let mut rest = tokens.iter();
    match rest.next() {
        Some(t) if t.text == "cells" => {}
        Some(t) => return Err(t.error(format!("expected `cells`, found {:?}", t.text))),
        None => return Err(end_of_input(text)),
    }
    let k_tok = rest.next().ok_or_else(|| end_of_input(text))?;
    let k: usize = k_tok.number("cell count")?;
    let machines_tok = rest.next().ok_or_else(|| end_of_input(text))?;
    if machines_tok.text != "machines" {
        return Err(machines_tok.error(format!("expected `machines`, found {:?}", machines_tok.text)));
    }
    let mut machine_cell = Vec::new();
    let mut saw_parts = false;
    for t in rest.by_ref() {
        if t.text == "parts" {
            saw_parts = true;
            break;
        }
        machine_cell.push(t.number("cell index")?);
    }
    if !saw_parts {
        return Err(end_of_input(text));
    }
    let part_cell = rest.map(|t| t.number("cell index")).collect::<Result<Vec<usize>>>()?;
    let solution = CfpSolution::new(machine_cell, part_cell);
    if solution.num_cells() != k {
        return Err(k_tok.error(format!("declares {k} cells but {} are used", solution.num_cells())));
    }
    Ok(solution)
}

/// Parses a solution and checks dimensions and index bounds against `instance`.
pub fn parse_solution(text: &str, instance: &CfpInstance) -> Result<CfpSolution> {
    let solution = parse_solution_unchecked(text)?;
    for v in validate(instance, &solution) {
        if v.is_structural() {
            return Err(CfpError::parse(1, 1, v.to_string()));
        }
    }
    Ok(solution)
}

pub fn write_solution(solution: &CfpSolution) -> String {
    format!(
        "cells {}\nmachines {}\nparts {}\n",
        solution.num_cells(),
        join(solution.machine_cells()),
        join(solution.part_cells())
    )
}

pub fn parse_edge_list(text: &str) -> Result<BgepInstance> {
    let lines = lines(text);
    let mut it = lines.iter();
    let (_, header) = it.next().ok_or_else(|| end_of_input(text))?;
    if header.len() != 3 {
        return Err(header[0].error("header must be `left right edges`"));
    }
    let left: usize = header[0].number("left vertex count")?;
    let right: usize = header[1].number("right vertex count")?;
    let count: usize = header[2].number("edge count")?;
    if left == 0 || right == 0 {
        return Err(header[0].error("graph needs at least one vertex on each side"));
    }
    let mut edges = BTreeSet::new();
    for (_, toks) in it.by_ref().take(count) {
        if toks.len() != 2 {
            return Err(toks[0].error("edge line must be `u v`"));
        }
        let u: usize = toks[0].number("vertex")?;
        let v: usize = toks[1].number("vertex")?;
        if u >= left || v >= right {
            return Err(toks[0].error(format!("edge ({u}, {v}) out of range")));
        }
        if !edges.insert((u, v)) {
            return Err(toks[0].error(format!("duplicate edge ({u}, {v})")));
        }
    }
    if edges.len() != count {
        return Err(end_of_input(text));
    }
    if let Some((_, toks)) = it.next() {
        return Err(toks[0].error("more edges than the header declares"));
    }
    BgepInstance::new(left, right, edges)
}

pub fn write_edge_list(graph: &BgepInstance) -> String {
    let mut out = format!("{} {} {}\n", graph.left(), graph.right(), graph.edges().len());
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
