//! Independent reference helpers shared by the integration tests. None of
//! these call the library's evaluation or search code.

#![allow(dead_code)]

use cfp::{BoolMatrix, CfpInstance, CfpSolution, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Instance with each entry 1 with probability 1/2.
pub fn random_instance(rng: &mut ChaCha8Rng, m: usize, p: usize) -> CfpInstance {
    CfpInstance::new(BoolMatrix::from_fn(m, p, |_, _| rng.gen_bool(0.5)).unwrap())
}

/// The 3x3 matrix whose row-major bits are those of `code`.
pub fn matrix_from_code(m: usize, p: usize, code: u32) -> CfpInstance {
    CfpInstance::new(BoolMatrix::from_fn(m, p, |i, j| code >> (i * p + j) & 1 == 1).unwrap())
}

pub fn code_of(inst: &CfpInstance) -> u32 {
    let p = inst.parts();
    let mut code = 0;
    for i in 0..inst.machines() {
        for j in 0..p {
            if inst.a(i, j) {
                code |= 1 << (i * p + j);
            }
        }
    }
    code
}

/// Triple loop over (i, j) pairs with weights; returns `(n1, e, v)`.
pub fn naive_counts(inst: &CfpInstance, sol: &CfpSolution) -> (u64, u64, u64) {
    let (mut n1, mut e, mut v) = (0, 0, 0);
    for i in 0..inst.machines() {
        for j in 0..inst.parts() {
            let w = inst.row_weights()[i] * inst.col_weights()[j];
            let same = sol.machine_cells()[i] == sol.part_cells()[j];
            match (inst.a(i, j), same) {
                (true, true) => n1 += w,
                (true, false) => {
                    n1 += w;
                    e += w;
                }
                (false, true) => v += w,
                (false, false) => {}
            }
        }
    }
    (n1, e, v)
}

pub fn naive_efficacy(inst: &CfpInstance, sol: &CfpSolution) -> Option<Rational> {
    let (n1, e, v) = naive_counts(inst, sol);
    (n1 + v > 0).then(|| Rational::new((n1 - e) as i128, (n1 + v) as i128).unwrap())
}

/// Every labeling of machines then parts with labels in `0..k`, as a
/// base-`k` counter. Visits non-canonical duplicates too.
pub fn for_each_labeling(m: usize, p: usize, k: usize, mut f: impl FnMut(&CfpSolution)) {
    let n = m + p;
    let mut digits = vec![0usize; n];
    loop {
        f(&CfpSolution::new(digits[..m].to_vec(), digits[m..].to_vec()));
        let mut pos = 0;
        loop {
            if pos == n {
                return;
            }
            digits[pos] += 1;
            if digits[pos] < k {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// Minimum `e + v` by counting over every labeling with `k` labels.
pub fn brute_min_f1(inst: &CfpInstance, k: usize) -> u64 {
    let mut best = u64::MAX;
    for_each_labeling(inst.machines(), inst.parts(), k, |s| {
        let (_, e, v) = naive_counts(inst, s);
        best = best.min(e + v);
    });
    best
}

/// Whether the bipartite graph with biadjacency `rows` (bitmasks over
/// columns) is a disjoint union of bicliques plus isolated vertices: every
/// two non-empty rows are equal or disjoint.
pub fn is_bicluster(rows: &[u32]) -> bool {
    rows.iter()
        .enumerate()
        .all(|(i, &a)| rows[i + 1..].iter().all(|&b| a == 0 || b == 0 || a == b || a & b == 0))
}

pub fn row_masks(code: u32, m: usize, p: usize) -> Vec<u32> {
    (0..m).map(|i| (code >> (i * p)) & ((1 << p) - 1)).collect()
}

/// Instance with some rows and columns duplicated; base `m0 x p0` grows to
/// `m x p`, duplicates inserted at random positions.
pub fn with_duplicates(rng: &mut ChaCha8Rng, m0: usize, p0: usize, m: usize, p: usize) -> CfpInstance {
    let base = random_instance(rng, m0, p0);
    let mut rows: Vec<usize> = (0..m0).collect();
    while rows.len() < m {
        let src = rows[rng.gen_range(0..rows.len())];
        rows.insert(rng.gen_range(0..=rows.len()), src);
    }
    let mut cols: Vec<usize> = (0..p0).collect();
    while cols.len() < p {
        let src = cols[rng.gen_range(0..cols.len())];
        cols.insert(rng.gen_range(0..=cols.len()), src);
    }
    CfpInstance::new(BoolMatrix::from_fn(m, p, |i, j| base.a(rows[i], cols[j])).unwrap())
}
