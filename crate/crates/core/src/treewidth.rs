//! Tree decompositions and nice tree decompositions.
//!
//! Decompositions come from elimination orderings. `MinDegree` and `MinFill`
//! are the usual greedy heuristics; `ExactSmall` finds an optimal ordering
//! for graphs with at most [`EXACT_SMALL_LIMIT`] vertices.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::complex::Graph;

pub const EXACT_SMALL_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    MinDegree,
    MinFill,
    ExactSmall,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "min_degree" | "min-degree" => Ok(Strategy::MinDegree),
            "min_fill" | "min-fill" => Ok(Strategy::MinFill),
            "exact_small" | "exact-small" | "exact" => Ok(Strategy::ExactSmall),
            _ => Err(format!("unknown strategy {s:?} (min_degree, min_fill, exact_small)")),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::MinDegree => "min_degree",
            Strategy::MinFill => "min_fill",
            Strategy::ExactSmall => "exact_small",
        })
    }
}

/// The first condition of a tree decomposition found to fail.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("vertex coverage: vertex {0} lies in no bag")]
    VertexCoverage(usize),
    #[error("edge coverage: edge {0}-{1} lies in no bag")]
    EdgeCoverage(usize, usize),
    #[error("subtree property: bags containing vertex {0} are disconnected")]
    SubtreeProperty(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TreewidthError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("exact_small supports at most {EXACT_SMALL_LIMIT} vertices, graph has {0}")]
    ExactTooLarge(usize),
    #[error("invalid tree decomposition: {0}")]
    Invalid(#[from] Violation),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Largest bag size minus one; `-1` for a decomposition without
    /// vertices.
    pub fn width(&self) -> isize {
        self.bags.iter().map(|b| b.len() as isize).max().unwrap_or(0) - 1
    }
}

pub fn decompose(g: &Graph, strategy: Strategy) -> Result<TreeDecomposition, TreewidthError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(TreewidthError::EmptyGraph);
    }
    let order = match strategy {
        Strategy::MinDegree => greedy_order(g, |adj, v| adj[v].len()),
        Strategy::MinFill => greedy_order(g, fill_in),
        Strategy::ExactSmall => {
            if n > EXACT_SMALL_LIMIT {
                return Err(TreewidthError::ExactTooLarge(n));
            }
            exact_order(g)
        }
    };
    Ok(from_elimination_order(g, &order))
}

fn adjacency_sets(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut adj = vec![vec![false; n]; n];
    for (a, b) in g.edges() {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    adj
}

fn fill_in(adj: &[Vec<usize>], v: usize) -> usize {
    let nb = &adj[v];
    let mut missing = 0;
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            if adj[a].binary_search(&b).is_err() {
                missing += 1;
            }
        }
    }
    missing
}

/// Greedy elimination: repeatedly remove the vertex of least score (ties by
/// degree, then id) and turn its neighbourhood into a clique.
fn greedy_order(g: &Graph, score: impl Fn(&[Vec<usize>], usize) -> usize) -> Vec<usize> {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbours(v).to_vec()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (score(&adj, v), adj[v].len(), v))
            .expect("a vertex remains");
        alive[v] = false;
        order.push(v);
        let nb = std::mem::take(&mut adj[v]);
        for &a in &nb {
            adj[a].retain(|&x| x != v);
            for &b in &nb {
                if a != b {
                    if let Err(pos) = adj[a].binary_search(&b) {
                        adj[a].insert(pos, b);
                    }
                }
            }
        }
    }
    order
}

/// Optimal elimination order by dynamic programming over vertex subsets:
/// `tw(S) = min_{v in S} max(tw(S - v), |Q(S - v, v)|)` where `Q(S, v)` is
/// the set of vertices outside `S + v` reachable from `v` through `S`.
fn exact_order(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let adj: Vec<u32> = (0..n).map(|v| g.neighbours(v).iter().fold(0u32, |m, &u| m | 1 << u)).collect();
    let q = |s: u32, v: usize| -> u32 {
        let mut seen = 1u32 << v;
        let mut frontier = 1u32 << v;
        let mut out = 0u32;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let nb = adj[x] & !seen;
            seen |= nb;
            out |= nb & !s;
            frontier |= nb & s;
        }
        out.count_ones()
    };
    let full = (1u32 << n) - 1;
    let mut tw = vec![u32::MAX; 1 << n];
    let mut last = vec![0u8; 1 << n];
    tw[0] = 0;
    for s in 1..=full {
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << v);
            let cost = tw[prev as usize].max(q(prev, v));
            if cost < tw[s as usize] {
                tw[s as usize] = cost;
                last[s as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = last[s as usize] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    order
}

/// One bag `{v} ∪ N⁺(v)` per vertex, where `N⁺(v)` are the neighbours of `v`
/// still present when it is eliminated. The bag of `v` hangs below the bag
/// of the first of them to be eliminated; bags without such a neighbour
/// are chained together.
fn from_elimination_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.vertex_count();
    let mut adj = adjacency_sets(g);
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut bags = Vec::with_capacity(n);
    let mut parent_vertex = vec![None; n];
    for &v in order {
        let later: Vec<usize> = (0..n).filter(|&u| adj[v][u] && position[u] > position[v]).collect();
        for &a in &later {
            for &b in &later {
                if a != b {
                    adj[a][b] = true;
                }
            }
        }
        parent_vertex[v] = later.iter().copied().min_by_key(|&u| position[u]);
        let mut bag = later;
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
    }
    let mut edges = Vec::new();
    let mut previous_root: Option<usize> = None;
    for (i, &v) in order.iter().enumerate() {
        match parent_vertex[v] {
            Some(u) => edges.push((i, position[u])),
            None => {
                if let Some(r) = previous_root {
                    edges.push((r, i));
                }
                previous_root = Some(i);
            }
        }
    }
    TreeDecomposition { bags, edges }
}

pub fn validate(t: &TreeDecomposition, g: &Graph) -> Result<(), Violation> {
    let m = t.bags.len();
    if m == 0 {
        return if g.vertex_count() == 0 { Ok(()) } else { Err(Violation::VertexCoverage(0)) };
    }
    if t.edges.len() != m - 1 {
        return Err(Violation::NotATree(format!("{} bags joined by {} edges", m, t.edges.len())));
    }
    let mut tree = vec![Vec::new(); m];
    for &(a, b) in &t.edges {
        if a >= m || b >= m || a == b {
            return Err(Violation::NotATree(format!("bad tree edge {a}-{b}")));
        }
        tree[a].push(b);
        tree[b].push(a);
    }
    if reach(&tree, 0, |_| true).iter().filter(|&&x| x).count() != m {
        return Err(Violation::NotATree("bag tree is disconnected".into()));
    }
    let n = g.vertex_count();
    let mut holders = vec![Vec::new(); n];
    for (i, bag) in t.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                return Err(Violation::NotATree(format!("bag {i} holds unknown vertex {v}")));
            }
            holders[v].push(i);
        }
    }
    if let Some(v) = (0..n).find(|&v| holders[v].is_empty()) {
        return Err(Violation::VertexCoverage(v));
    }
    for (a, b) in g.edges() {
        if !holders[a].iter().any(|&i| t.bags[i].contains(&b)) {
            return Err(Violation::EdgeCoverage(a, b));
        }
    }
    for v in 0..n {
        let seen = reach(&tree, holders[v][0], |i| t.bags[i].contains(&v));
        if holders[v].iter().any(|&i| !seen[i]) {
            return Err(Violation::SubtreeProperty(v));
        }
    }
    Ok(())
}

fn reach(tree: &[Vec<usize>], start: usize, allowed: impl Fn(usize) -> bool) -> Vec<bool> {
    let mut seen = vec![false; tree.len()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &y in &tree[x] {
            if !seen[y] && allowed(y) {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "vertex", rename_all = "snake_case")]
pub enum NodeKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
    Root,
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeKind::Leaf => write!(f, "leaf"),
            NodeKind::Introduce(v) => write!(f, "introduce({v})"),
            NodeKind::Forget(v) => write!(f, "forget({v})"),
            NodeKind::Join => write!(f, "join"),
            NodeKind::Root => write!(f, "root"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NiceNode {
    pub kind: NodeKind,
    /// Sorted.
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
    pub parent: Option<usize>,
}

/// Nodes in bottom-up order: every child has a smaller index than its
/// parent and the root is the last node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
}

impl NiceTreeDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> isize {
        self.nodes.iter().map(|x| x.bag.len() as isize).max().unwrap_or(0) - 1
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn as_tree_decomposition(&self) -> TreeDecomposition {
        let edges = self
            .nodes
            .iter()
            .enumerate()
            .flat_map(|(i, x)| x.children.iter().map(move |&c| (c, i)))
            .collect();
        TreeDecomposition { bags: self.nodes.iter().map(|x| x.bag.clone()).collect(), edges }
    }

    /// Checks the typed-bag rules: leaf bags have one vertex, introduce and
    /// forget change the child bag by exactly the named vertex, joins have
    /// two children with identical bags, and the root is last with a bag of
    /// size at most one. Leaf and root bags are empty only when the input
    /// decomposition had an empty bag.
    pub fn check_structure(&self) -> Result<(), String> {
        if self.nodes.is_empty() {
            return Err("no nodes".into());
        }
        for (i, x) in self.nodes.iter().enumerate() {
            if x.children.iter().any(|&c| c >= i || self.nodes[c].parent != Some(i)) {
                return Err(format!("node {i}: children must precede it and point back"));
            }
            if x.bag.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("node {i}: bag not strictly sorted"));
            }
            let child = |k: usize| &self.nodes[x.children[k]].bag;
            let ok = match x.kind {
                NodeKind::Leaf => x.children.is_empty() && x.bag.len() <= 1,
                NodeKind::Introduce(v) => {
                    x.children.len() == 1 && !child(0).contains(&v) && with(child(0), v) == x.bag
                }
                NodeKind::Forget(v) => x.children.len() == 1 && child(0).contains(&v) && without(child(0), v) == x.bag,
                NodeKind::Join => x.children.len() == 2 && *child(0) == x.bag && *child(1) == x.bag,
                NodeKind::Root => {
                    i == self.nodes.len() - 1 && x.children.len() == 1 && *child(0) == x.bag && x.bag.len() <= 1
                }
            };
            if !ok {
                return Err(format!("node {i} ({}) violates its bag rule", x.kind));
            }
            if (x.kind == NodeKind::Root) != (i == self.nodes.len() - 1) {
                return Err(format!("node {i}: root must be exactly the last node"));
            }
        }
        Ok(())
    }
}

fn with(bag: &[usize], v: usize) -> Vec<usize> {
    let mut b = bag.to_vec();
    b.push(v);
    b.sort_unstable();
    b
}

fn without(bag: &[usize], v: usize) -> Vec<usize> {
    bag.iter().copied().filter(|&x| x != v).collect()
}

struct Builder {
    nodes: Vec<NiceNode>,
}

impl Builder {
    fn push(&mut self, kind: NodeKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
        let id = self.nodes.len();
        for &c in &children {
            self.nodes[c].parent = Some(id);
        }
        self.nodes.push(NiceNode { kind, bag, children, parent: None });
        id
    }

    fn introduce(&mut self, mut node: usize, vertices: impl IntoIterator<Item = usize>) -> usize {
        for v in vertices {
            let bag = with(&self.nodes[node].bag, v);
            node = self.push(NodeKind::Introduce(v), bag, vec![node]);
        }
        node
    }

    fn forget(&mut self, mut node: usize, vertices: impl IntoIterator<Item = usize>) -> usize {
        for v in vertices {
            let bag = without(&self.nodes[node].bag, v);
            node = self.push(NodeKind::Forget(v), bag, vec![node]);
        }
        node
    }

    fn leaf(&mut self, bag: &[usize]) -> usize {
        let first = self.push(NodeKind::Leaf, bag[..1.min(bag.len())].to_vec(), vec![]);
        self.introduce(first, bag.iter().copied().skip(1))
    }
}

/// Converts a valid tree decomposition into a nice one of the same width.
/// The input tree is rooted at bag 0; above it a chain of forgets leaves a
/// single vertex, capped by the root node.
pub fn make_nice(t: &TreeDecomposition, g: &Graph) -> Result<NiceTreeDecomposition, TreewidthError> {
    validate(t, g)?;
    let m = t.bags.len();
    let bags: Vec<Vec<usize>> = t
        .bags
        .iter()
        .map(|b| {
            let mut b = b.clone();
            b.sort_unstable();
            b.dedup();
            b
        })
        .collect();
    let mut tree = vec![Vec::new(); m];
    for &(a, b) in &t.edges {
        tree[a].push(b);
        tree[b].push(a);
    }
    // iterative post-order from bag 0
    let mut order = Vec::with_capacity(m);
    let mut parent = vec![usize::MAX; m];
    let mut stack = vec![0];
    parent[0] = 0;
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in tree[x].iter().rev() {
            if parent[y] == usize::MAX {
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    let mut b = Builder { nodes: Vec::new() };
    let mut top = vec![usize::MAX; m];
    for &x in order.iter().rev() {
        let children: Vec<usize> = tree[x].iter().copied().filter(|&y| parent[y] == x && y != x).collect();
        let target = &bags[x];
        let mut branches = Vec::new();
        for &c in &children {
            let from = top[c];
            let gone: Vec<usize> = bags[c].iter().copied().filter(|v| !target.contains(v)).collect();
            let new: Vec<usize> = target.iter().copied().filter(|v| !bags[c].contains(v)).collect();
            let node = b.forget(from, gone);
            branches.push(b.introduce(node, new));
        }
        top[x] = match branches.split_first() {
            None => b.leaf(target),
            Some((&first, rest)) => rest.iter().fold(first, |acc, &y| b.push(NodeKind::Join, target.clone(), vec![acc, y])),
        };
    }
    let rootbag = bags[0].clone();
    let node = b.forget(top[0], rootbag.iter().copied().skip(1));
    let bag = b.nodes[node].bag.clone();
    b.push(NodeKind::Root, bag, vec![node]);
    let nice = NiceTreeDecomposition { nodes: b.nodes };
    debug_assert_eq!(nice.width(), t.width());
    Ok(nice)
}

/// Nice decomposition of `g` straight from a strategy.
pub fn nice_decomposition(g: &Graph, strategy: Strategy) -> Result<NiceTreeDecomposition, TreewidthError> {
    make_nice(&decompose(g, strategy)?, g)
}
