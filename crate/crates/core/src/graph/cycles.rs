use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::EdgeLabeledGraph;
use crate::error::{Error, Result};
use crate::field::Field;

/// A simple closed walk. `edges[i]` is traversed from `vertices[i]` to
/// `vertices[i + 1]` (wrapping), with sign `+1` when that runs from the
/// edge's lower endpoint to its higher one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Cycle {
    edges: Vec<usize>,
    signs: Vec<i8>,
    vertices: Vec<usize>,
}

impl Cycle {
    /// Orients the edge set of a simple cycle: the walk starts with the
    /// lowest edge id traversed forward. `None` if the edges do not form
    /// one simple cycle.
    pub fn from_edge_set<F: Field>(g: &EdgeLabeledGraph<F>, edge_ids: &[usize]) -> Option<Cycle> {
        let mut ids: Vec<usize> = edge_ids.to_vec();
        ids.sort_unstable();
        ids.dedup();
        if ids.len() < 2 || ids.len() != edge_ids.len() || ids.iter().any(|&e| e >= g.num_edges()) {
            return None;
        }
        let mut deg = vec![0usize; g.num_vertices()];
        for &e in &ids {
            deg[g.edges[e].u] += 1;
            deg[g.edges[e].v] += 1;
        }
        if deg.iter().any(|&d| d != 0 && d != 2) {
            return None;
        }
        let first = ids[0];
        let start = g.edges[first].u;
        let mut used = vec![false; ids.len()];
        used[0] = true;
        let mut edges = vec![first];
        let mut signs = vec![1i8];
        let mut vertices = vec![start];
        let mut cur = g.edges[first].v;
        while cur != start {
            let k = (0..ids.len()).find(|&k| !used[k] && (g.edges[ids[k]].u == cur || g.edges[ids[k]].v == cur))?;
            used[k] = true;
            let e = &g.edges[ids[k]];
            edges.push(ids[k]);
            signs.push(if e.u == cur { 1 } else { -1 });
            vertices.push(cur);
            cur = e.other(cur);
        }
        if used.iter().all(|&u| u) {
            Some(Cycle { edges, signs, vertices })
        } else {
            None
        }
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edges.contains(&e)
    }

    pub fn sign_of(&self, e: usize) -> Option<i8> {
        self.edges.iter().position(|&x| x == e).map(|i| self.signs[i])
    }

    pub fn sorted_edges(&self) -> Vec<usize> {
        let mut v = self.edges.clone();
        v.sort_unstable();
        v
    }

    fn key(&self) -> (usize, Vec<usize>) {
        (self.len(), self.sorted_edges())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CycleBasisMode {
    /// Horton's minimum cycle basis: shortest possible cycles.
    #[default]
    Minimum,
    /// Fundamental cycles of a BFS spanning forest.
    Fundamental,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleBasis {
    cycles: Vec<Cycle>,
    mode: CycleBasisMode,
}

impl CycleBasis {
    /// Wraps an arbitrary list of cycles; independence is not checked.
    pub fn from_cycles(cycles: Vec<Cycle>, mode: CycleBasisMode) -> Self {
        CycleBasis { cycles, mode }
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn mode(&self) -> CycleBasisMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }
}

fn bits(nedges: usize, edges: &[usize]) -> Vec<u64> {
    let mut b = vec![0u64; nedges.div_ceil(64)];
    for &e in edges {
        b[e / 64] ^= 1 << (e % 64);
    }
    b
}

fn lowest_bit(b: &[u64]) -> Option<usize> {
    b.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// Incremental GF(2) independence over edge space.
struct Gf2Basis {
    rows: Vec<(usize, Vec<u64>)>,
}

impl Gf2Basis {
    fn insert(&mut self, mut b: Vec<u64>) -> bool {
        for (p, row) in &self.rows {
            if b[p / 64] >> (p % 64) & 1 == 1 {
                for (x, y) in b.iter_mut().zip(row) {
                    *x ^= y;
                }
            }
        }
        match lowest_bit(&b) {
            None => false,
            Some(p) => {
                self.rows.push((p, b));
                true
            }
        }
    }
}

/// BFS tree from `root`: parent edge per reached vertex.
fn bfs_tree<F: Field>(g: &EdgeLabeledGraph<F>, inc: &[Vec<usize>], root: usize) -> Vec<Option<Option<usize>>> {
    let mut parent: Vec<Option<Option<usize>>> = vec![None; g.num_vertices()];
    parent[root] = Some(None);
    let mut queue = VecDeque::from([root]);
    while let Some(w) = queue.pop_front() {
        for &e in &inc[w] {
            let o = g.edges[e].other(w);
            if parent[o].is_none() {
                parent[o] = Some(Some(e));
                queue.push_back(o);
            }
        }
    }
    parent
}

/// Tree path from `w` up to the root: (vertices including both ends, edges).
fn tree_path<F: Field>(
    g: &EdgeLabeledGraph<F>,
    parent: &[Option<Option<usize>>],
    mut w: usize,
) -> (Vec<usize>, Vec<usize>) {
    let mut vs = vec![w];
    let mut es = Vec::new();
    while let Some(Some(e)) = parent[w] {
        es.push(e);
        w = g.edges[e].other(w);
        vs.push(w);
    }
    (vs, es)
}

fn horton<F: Field>(g: &EdgeLabeledGraph<F>) -> Vec<Cycle> {
    let target = g.cycle_space_dim();
    if target == 0 {
        return Vec::new();
    }
    let inc = g.incidence();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut cands: Vec<Cycle> = Vec::new();
    for r in 0..g.num_vertices() {
        let parent = bfs_tree(g, &inc, r);
        for (k, e) in g.edges.iter().enumerate() {
            if parent[e.u].is_none() || parent[e.u] == Some(Some(k)) || parent[e.v] == Some(Some(k)) {
                continue;
            }
            let (va, ea) = tree_path(g, &parent, e.u);
            let (vb, eb) = tree_path(g, &parent, e.v);
            let set_a: HashSet<usize> = va.iter().copied().collect();
            if vb.iter().filter(|v| set_a.contains(v)).count() != 1 {
                continue;
            }
            let mut es: Vec<usize> = ea.into_iter().chain(eb).chain([k]).collect();
            es.sort_unstable();
            if seen.insert(es.clone()) {
                if let Some(c) = Cycle::from_edge_set(g, &es) {
                    cands.push(c);
                }
            }
        }
    }
    cands.sort_by_key(Cycle::key);
    let mut gf2 = Gf2Basis { rows: Vec::new() };
    let mut out = Vec::new();
    for c in cands {
        if gf2.insert(bits(g.num_edges(), c.edges())) {
            out.push(c);
            if out.len() == target {
                break;
            }
        }
    }
    out
}

fn fundamental<F: Field>(g: &EdgeLabeledGraph<F>) -> Vec<Cycle> {
    let inc = g.incidence();
    let mut parent: Vec<Option<Option<usize>>> = vec![None; g.num_vertices()];
    for s in 0..g.num_vertices() {
        if parent[s].is_some() {
            continue;
        }
        let tree = bfs_tree(g, &inc, s);
        for (v, p) in tree.into_iter().enumerate() {
            if p.is_some() {
                parent[v] = p;
            }
        }
    }
    let mut out = Vec::new();
    for (k, e) in g.edges.iter().enumerate() {
        if parent[e.u] == Some(Some(k)) || parent[e.v] == Some(Some(k)) {
            continue;
        }
        let (_, ea) = tree_path(g, &parent, e.u);
        let (_, eb) = tree_path(g, &parent, e.v);
        let b = bits(g.num_edges(), &ea);
        let mut sym = bits(g.num_edges(), &eb);
        for (x, y) in sym.iter_mut().zip(&b) {
            *x ^= y;
        }
        let mut es: Vec<usize> = (0..g.num_edges()).filter(|&i| sym[i / 64] >> (i % 64) & 1 == 1).collect();
        es.push(k);
        out.push(Cycle::from_edge_set(g, &es).expect("fundamental cycle"));
    }
    out
}

/// A GF(2) basis of the cycle space of `g`. Minimum bases list cycles by
/// length, then by their sorted edge ids.
pub fn cycle_basis<F: Field>(g: &EdgeLabeledGraph<F>, mode: CycleBasisMode) -> CycleBasis {
    let cycles = match mode {
        CycleBasisMode::Minimum => horton(g),
        CycleBasisMode::Fundamental => fundamental(g),
    };
    CycleBasis { cycles, mode }
}

/// Every simple cycle of `g`, found among the GF(2) combinations of a
/// cycle basis. Meant for small graphs; refuses bases of more than 20 cycles.
pub fn simple_cycles<F: Field>(g: &EdgeLabeledGraph<F>) -> Result<Vec<Cycle>> {
    let basis = cycle_basis(g, CycleBasisMode::Fundamental);
    let k = basis.len();
    if k > 20 {
        return Err(Error::Hypothesis(format!("{k} independent cycles are too many to enumerate")));
    }
    let rows: Vec<Vec<u64>> = basis.cycles().iter().map(|c| bits(g.num_edges(), c.edges())).collect();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << k) {
        let mut acc = vec![0u64; g.num_edges().div_ceil(64)];
        for (i, r) in rows.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for (x, y) in acc.iter_mut().zip(r) {
                    *x ^= y;
                }
            }
        }
        let es: Vec<usize> = (0..g.num_edges()).filter(|&i| acc[i / 64] >> (i % 64) & 1 == 1).collect();
        if let Some(c) = Cycle::from_edge_set(g, &es) {
            out.push(c);
        }
    }
    out.sort_by_key(Cycle::key);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeClass {
    Interior,
    Exterior,
    Free,
}

impl EdgeClass {
    pub fn from_count(n: usize) -> Self {
        match n {
            0 => EdgeClass::Free,
            1 => EdgeClass::Exterior,
            _ => EdgeClass::Interior,
        }
    }
}

/// Interior: on two or more basis cycles; exterior: on exactly one; free: on none.
pub fn classify_edges<F: Field>(g: &EdgeLabeledGraph<F>, basis: &CycleBasis) -> Vec<EdgeClass> {
    (0..g.num_edges()).map(|e| EdgeClass::from_count(basis.cycles().iter().filter(|c| c.contains(e)).count())).collect()
}
