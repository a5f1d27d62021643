//! Correspondence between cell formation and bicluster graph editing.
//!
//! Machines are left vertices, parts are right vertices and the machine-part
//! matrix is the biadjacency matrix. A solution's exceptions are the edges to
//! remove and its voids are the edges to add; after editing, every cell that
//! holds both machines and parts is an isolated biclique.

use std::collections::BTreeSet;

use crate::error::{CfpError, Result};
use crate::instance::CfpInstance;
use crate::matrix::BoolMatrix;
use crate::solution::{check_structure, CfpSolution};

pub type Edge = (usize, usize);

/// A bipartite graph with `left` machine vertices and `right` part vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BgepInstance {
    left: usize,
    right: usize,
    edges: BTreeSet<Edge>,
}

/// Edges to add (voids) and remove (exceptions).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct EditSet {
    pub added: BTreeSet<Edge>,
    pub removed: BTreeSet<Edge>,
}

impl EditSet {
    pub fn len(&self) -> usize {
        self.added.len() + self.removed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.added.is_empty() && self.removed.is_empty()
    }
}

/// Outcome of [`is_bicluster_graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BiclusterCheck {
    /// Every component is a complete bipartite graph. `bicliques` counts
    /// components with at least one edge; `isolated` counts lone vertices.
    Yes { bicliques: usize, isolated: usize },
    /// `missing` is a (left, right) pair in one component without an edge.
    No { missing: Edge },
}

impl BiclusterCheck {
    pub fn is_yes(&self) -> bool {
        matches!(self, BiclusterCheck::Yes { .. })
    }
}

impl BgepInstance {
    pub fn new(left: usize, right: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= left || v >= right {
                return Err(CfpError::InvalidGraph(format!(
                    "edge ({u}, {v}) outside {left}+{right} vertices"
                )));
            }
            if !set.insert((u, v)) {
                return Err(CfpError::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(BgepInstance {
            left,
            right,
            edges: set,
        })
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u, v))
    }

    /// Connected-component id for each vertex; left vertices come first,
    /// right vertex `v` is at `left + v`.
    fn components(&self) -> Vec<usize> {
        let n = self.left + self.right;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(u, v) in &self.edges {
            let a = find(&mut parent, u);
            let b = find(&mut parent, self.left + v);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        (0..n).map(|x| find(&mut parent, x)).collect()
    }
}

pub fn cfp_to_bgep(instance: &CfpInstance) -> Result<BgepInstance> {
    if !instance.is_unweighted() {
        return Err(CfpError::Weighted("expand weights before converting to a graph"));
    }
    let (m, p) = (instance.machines(), instance.parts());
    let edges = (0..m).flat_map(|i| (0..p).map(move |j| (i, j)));
    BgepInstance::new(m, p, edges.filter(|&(i, j)| instance.a(i, j)))
}

pub fn bgep_to_cfp(graph: &BgepInstance) -> Result<CfpInstance> {
    let matrix = BoolMatrix::from_fn(graph.left, graph.right, |i, j| graph.has_edge(i, j))?;
    Ok(CfpInstance::new(matrix))
}

pub fn solution_to_edit_set(instance: &CfpInstance, solution: &CfpSolution) -> Result<EditSet> {
    if !instance.is_unweighted() {
        return Err(CfpError::Weighted("edit sets are defined on unweighted instances"));
    }
    check_structure(instance, solution)?;
    let mut edits = EditSet::default();
    for (i, &ci) in solution.machine_cells().iter().enumerate() {
        for (j, &cj) in solution.part_cells().iter().enumerate() {
            match (instance.a(i, j), ci == cj) {
                (true, false) => {
                    edits.removed.insert((i, j));
                }
                (false, true) => {
                    edits.added.insert((i, j));
                }
                _ => {}
            }
        }
    }
    Ok(edits)
}

pub fn apply_edits(graph: &BgepInstance, edits: &EditSet) -> Result<BgepInstance> {
    if let Some(e) = edits.added.intersection(&edits.removed).next() {
        return Err(CfpError::InconsistentEdits(format!(
            "edge {e:?} both added and removed"
        )));
    }
    let mut edges = graph.edges.clone();
    for &e in &edits.removed {
        if !edges.remove(&e) {
            return Err(CfpError::InconsistentEdits(format!(
                "removed edge {e:?} is not in the graph"
            )));
        }
    }
    for &(u, v) in &edits.added {
        if u >= graph.left || v >= graph.right {
            return Err(CfpError::InconsistentEdits(format!(
                "added edge ({u}, {v}) out of range"
            )));
        }
        if !edges.insert((u, v)) {
            return Err(CfpError::InconsistentEdits(format!(
                "added edge ({u}, {v}) already present"
            )));
        }
    }
    Ok(BgepInstance {
        left: graph.left,
        right: graph.right,
        edges,
    })
}

pub fn is_bicluster_graph(graph: &BgepInstance) -> BiclusterCheck {
    let comp = graph.components();
    let n = comp.len();
    let (mut lefts, mut rights, mut edges) = (vec![0usize; n], vec![0usize; n], vec![0usize; n]);
    for u in 0..graph.left {
        lefts[comp[u]] += 1;
    }
    for v in 0..graph.right {
        rights[comp[graph.left + v]] += 1;
    }
    for &(u, _) in &graph.edges {
        edges[comp[u]] += 1;
    }
    let (mut bicliques, mut isolated) = (0, 0);
    for root in 0..n {
        let size = lefts[root] + rights[root];
        if size == 0 {
            continue;
        }
        if size == 1 {
            isolated += 1;
        } else if edges[root] == lefts[root] * rights[root] {
            bicliques += 1;
        } else {
            for u in (0..graph.left).filter(|&u| comp[u] == root) {
                for v in (0..graph.right).filter(|&v| comp[graph.left + v] == root) {
                    if !graph.has_edge(u, v) {
                        return BiclusterCheck::No { missing: (u, v) };
                    }
                }
            }
            unreachable!("incomplete component without a missing pair");
        }
    }
    BiclusterCheck::Yes { bicliques, isolated }
}

/// Reads a cell assignment off the edited graph: each biclique becomes a
/// cell, isolated machines share one machine-only cell and isolated parts
/// share one part-only cell.
pub fn edit_set_to_solution(instance: &CfpInstance, edits: &EditSet) -> Result<CfpSolution> {
    let edited = apply_edits(&cfp_to_bgep(instance)?, edits)?;
    if let BiclusterCheck::No { missing: (u, v) } = is_bicluster_graph(&edited) {
        return Err(CfpError::NotBicluster(u, v));
    }
    let comp = edited.components();
    let (m, p) = (edited.left, edited.right);
    let is_isolated = |x: usize| comp.iter().filter(|&&c| c == comp[x]).count() == 1;
    const LONE_MACHINES: usize = usize::MAX - 1;
    const LONE_PARTS: usize = usize::MAX;
    let machine_cell = (0..m)
        .map(|i| if is_isolated(i) { LONE_MACHINES } else { comp[i] })
        .collect();
    let part_cell = (0..p)
        .map(|j| if is_isolated(m + j) { LONE_PARTS } else { comp[m + j] })
        .collect();
    let solution = CfpSolution::new(machine_cell, part_cell).canonicalize();
    let capacity = instance.capacity();
    if solution.num_cells() <= capacity {
        return Ok(solution);
    }
    // Only reachable with a capacity below the default; fold surplus cells into cell 0.
    let fold = |c: &usize| if *c >= capacity { 0 } else { *c };
    Ok(CfpSolution::new(
        solution.machine_cells().iter().map(fold).collect(),
        solution.part_cells().iter().map(fold).collect(),
    )
    .canonicalize())
}
