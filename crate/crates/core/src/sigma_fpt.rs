//! `σ₀` of a complex from a nice tree decomposition of its 1-skeleton.
//!
//! `σ₀` only depends on the number of connected components of each induced
//! subgraph, so the DP counts vertex subsets of the visited part of the graph
//! by size `m` and component count `c`. A table key records which bag
//! vertices are chosen (`S`) and how they are grouped into components so far
//! (`π`); components that no longer meet the bag are counted in `c` but not
//! tracked in `π`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::complex::{binomial, Graph};
use crate::oracle::EMPTY_SET_REDUCED_BETTI0;
use crate::treewidth::{validate, NiceTreeDecomposition, NodeKind, Strategy, TreewidthError};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SigmaFptError {
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("join of tables over different bags {left:?} and {right:?}")]
    BagMismatch { left: Vec<usize>, right: Vec<usize> },
    #[error("root table still has {0} non-empty keys")]
    ResidualKeys(usize),
    #[error(transparent)]
    Treewidth(#[from] TreewidthError),
}

/// A set `S` of bag vertices with a partition of `S`, blocks sorted and
/// ordered by least element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PartitionKey {
    pub s: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
}

impl PartitionKey {
    pub fn empty() -> Self {
        PartitionKey { s: Vec::new(), blocks: Vec::new() }
    }

    pub fn new(mut blocks: Vec<Vec<usize>>) -> Self {
        blocks.retain(|b| !b.is_empty());
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        blocks.sort();
        let mut s: Vec<usize> = blocks.iter().flatten().copied().collect();
        s.sort_unstable();
        PartitionKey { s, blocks }
    }
}

/// `(c, m)` → number of chosen subsets with `m` vertices and `c` components.
pub type Cells = BTreeMap<(usize, usize), BigUint>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub bag: Vec<usize>,
    /// Graph vertices already introduced below this node.
    pub visited: usize,
    pub entries: BTreeMap<PartitionKey, Cells>,
}

impl CountTable {
    fn empty_bag() -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(PartitionKey::empty(), Cells::from([((0, 0), BigUint::one())]));
        CountTable { bag: Vec::new(), visited: 0, entries }
    }

    pub fn total(&self) -> BigUint {
        self.entries.values().flat_map(|c| c.values()).sum()
    }

    pub fn max_cells(&self) -> usize {
        self.entries.values().map(|c| c.len()).max().unwrap_or(0)
    }
}

fn add_cell(cells: &mut Cells, key: (usize, usize), count: BigUint) {
    *cells.entry(key).or_insert_with(BigUint::zero) += count;
}

fn add_cells(entries: &mut BTreeMap<PartitionKey, Cells>, key: PartitionKey, cells: impl IntoIterator<Item = ((usize, usize), BigUint)>) {
    let slot = entries.entry(key).or_default();
    for (k, n) in cells {
        add_cell(slot, k, n);
    }
}

pub fn leaf_table(v: usize) -> CountTable {
    let mut entries = BTreeMap::new();
    entries.insert(PartitionKey::empty(), Cells::from([((0, 0), BigUint::one())]));
    entries.insert(PartitionKey::new(vec![vec![v]]), Cells::from([((1, 1), BigUint::one())]));
    CountTable { bag: vec![v], visited: 1, entries }
}

/// `neighbours`: the neighbours of `v` inside the new bag.
pub fn introduce_step(table: &CountTable, v: usize, neighbours: &[usize]) -> CountTable {
    let mut entries = BTreeMap::new();
    for (key, cells) in &table.entries {
        add_cells(&mut entries, key.clone(), cells.clone());
        let (touching, mut rest): (Vec<Vec<usize>>, Vec<Vec<usize>>) =
            key.blocks.iter().cloned().partition(|b| b.iter().any(|u| neighbours.contains(u)));
        let mut merged: Vec<usize> = touching.concat();
        merged.push(v);
        rest.push(merged);
        let t = touching.len();
        add_cells(
            &mut entries,
            PartitionKey::new(rest),
            cells.iter().map(|(&(c, m), n)| ((c + 1 - t, m + 1), n.clone())),
        );
    }
    let mut bag = table.bag.clone();
    bag.push(v);
    bag.sort_unstable();
    CountTable { bag, visited: table.visited + 1, entries }
}

pub fn forget_step(table: &CountTable, v: usize) -> CountTable {
    let mut entries = BTreeMap::new();
    for (key, cells) in &table.entries {
        let blocks = key.blocks.iter().map(|b| b.iter().copied().filter(|&u| u != v).collect()).collect();
        add_cells(&mut entries, PartitionKey::new(blocks), cells.clone());
    }
    let bag = table.bag.iter().copied().filter(|&u| u != v).collect();
    CountTable { bag, visited: table.visited, entries }
}

/// Join of two partitions of the same set in the partition lattice.
fn partition_join(a: &[Vec<usize>], b: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let elems: Vec<usize> = {
        let mut e: Vec<usize> = a.iter().flatten().copied().collect();
        e.sort_unstable();
        e
    };
    let idx = |x: usize| elems.binary_search(&x).expect("same ground set");
    let mut parent: Vec<usize> = (0..elems.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for block in a.iter().chain(b) {
        for w in block.windows(2) {
            let (x, y) = (find(&mut parent, idx(w[0])), find(&mut parent, idx(w[1])));
            parent[x] = y;
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &e) in elems.iter().enumerate() {
        groups.entry(find(&mut parent, i)).or_default().push(e);
    }
    groups.into_values().collect()
}

pub fn join_step(left: &CountTable, right: &CountTable) -> Result<CountTable, SigmaFptError> {
    if left.bag != right.bag {
        return Err(SigmaFptError::BagMismatch { left: left.bag.clone(), right: right.bag.clone() });
    }
    let mut by_set: BTreeMap<&[usize], Vec<(&PartitionKey, &Cells)>> = BTreeMap::new();
    for (k, c) in &right.entries {
        by_set.entry(&k.s).or_default().push((k, c));
    }
    let mut entries = BTreeMap::new();
    for (lk, lc) in &left.entries {
        let Some(partners) = by_set.get(lk.s.as_slice()) else { continue };
        for (rk, rc) in partners {
            let joined = partition_join(&lk.blocks, &rk.blocks);
            let (pl, pr, pj, s) = (lk.blocks.len(), rk.blocks.len(), joined.len(), lk.s.len());
            let key = PartitionKey::new(joined);
            let mut cells = Cells::new();
            for (&(c1, m1), n1) in lc.iter() {
                for (&(c2, m2), n2) in rc.iter() {
                    add_cell(&mut cells, (c1 - pl + c2 - pr + pj, m1 + m2 - s), n1 * n2);
                }
            }
            add_cells(&mut entries, key, cells);
        }
    }
    Ok(CountTable { bag: left.bag.clone(), visited: left.visited + right.visited - left.bag.len(), entries })
}

/// `σ₀ = -1 + Σ_{m ≥ 1} Σ_c N[c, m] (c - 1) / C(n, m)` from the terminal
/// table, whose only key must be `(∅, ∅)`.
pub fn sigma0_from_counts(root: &CountTable, n: usize) -> Result<Rational, SigmaFptError> {
    let residual = root.entries.keys().filter(|k| !k.s.is_empty()).count();
    if residual > 0 {
        return Err(SigmaFptError::ResidualKeys(residual));
    }
    let mut sigma = Rational::from_integer(BigInt::from(EMPTY_SET_REDUCED_BETTI0));
    if let Some(cells) = root.entries.get(&PartitionKey::empty()) {
        for (&(c, m), count) in cells {
            if m == 0 || c <= 1 {
                continue;
            }
            let num = BigInt::from(count.clone()) * BigInt::from(c - 1);
            sigma += Rational::new(num, BigInt::from(binomial(n, m).expect("binomial fits")));
        }
    }
    Ok(sigma)
}

/// Table shape after one node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeStats {
    pub node: usize,
    pub keys: usize,
    pub max_cells: usize,
    pub visited: usize,
    /// Whether the counts summed to `2^visited`.
    pub conserved: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DpTrace {
    pub nodes: Vec<NodeStats>,
    pub max_keys: usize,
    pub max_cells: usize,
}

pub fn sigma0_treewidth(g: &Graph, t: &NiceTreeDecomposition) -> Result<Rational, SigmaFptError> {
    sigma0_treewidth_traced(g, t).map(|(s, _)| s)
}

/// Runs the DP and records table sizes per node. Count conservation
/// (`Σ counts = 2^visited`) and the per-key cell bound are checked at every
/// node in debug builds.
pub fn sigma0_treewidth_traced(g: &Graph, t: &NiceTreeDecomposition) -> Result<(Rational, DpTrace), SigmaFptError> {
    let n = g.vertex_count();
    t.check_structure().map_err(SigmaFptError::InvalidDecomposition)?;
    validate(&t.as_tree_decomposition(), g).map_err(|v| SigmaFptError::InvalidDecomposition(v.to_string()))?;
    let mut tables: Vec<Option<CountTable>> = vec![None; t.nodes.len()];
    let mut stats = Vec::with_capacity(t.nodes.len());
    for (i, node) in t.nodes.iter().enumerate() {
        let mut child = |k: usize| tables[node.children[k]].take().expect("child processed once");
        let table = match node.kind {
            NodeKind::Leaf => match node.bag.first() {
                Some(&v) => leaf_table(v),
                None => CountTable::empty_bag(),
            },
            NodeKind::Introduce(v) => {
                let nb: Vec<usize> = g.neighbours(v).iter().copied().filter(|u| node.bag.contains(u)).collect();
                introduce_step(&child(0), v, &nb)
            }
            NodeKind::Forget(v) => forget_step(&child(0), v),
            NodeKind::Join => {
                let l = child(0);
                let r = child(1);
                join_step(&l, &r)?
            }
            NodeKind::Root => node.bag.iter().fold(child(0), |acc, &v| forget_step(&acc, v)),
        };
        let conserved = table.total() == BigUint::one() << table.visited;
        debug_assert!(conserved);
        debug_assert!(table.max_cells() <= (n * n).max(2));
        stats.push(NodeStats {
            node: i,
            keys: table.entries.len(),
            max_cells: table.max_cells(),
            visited: table.visited,
            conserved,
        });
        tables[i] = Some(table);
    }
    let root = tables.pop().flatten().expect("root table");
    let sigma = sigma0_from_counts(&root, n)?;
    let trace = DpTrace {
        max_keys: stats.iter().map(|s| s.keys).max().unwrap_or(0),
        max_cells: stats.iter().map(|s| s.max_cells).max().unwrap_or(0),
        nodes: stats,
    };
    Ok((sigma, trace))
}

/// Decomposes `g` with `strategy`, makes it nice and runs the DP. The empty
/// graph has `σ₀ = -1` (only the empty subset).
pub fn sigma0_of_graph(g: &Graph, strategy: Strategy) -> Result<Rational, SigmaFptError> {
    if g.vertex_count() == 0 {
        return Ok(Rational::from_integer(BigInt::from(EMPTY_SET_REDUCED_BETTI0)));
    }
    let nice = crate::treewidth::nice_decomposition(g, strategy)?;
    sigma0_treewidth(g, &nice)
}
