//! Abstract simplicial complexes given by their facets.
//!
//! Vertices are interned to dense ids `0..n` when a complex is built. The
//! external labels are kept in a symbol table and only used for input and
//! output. Labels that all parse as integers are ordered numerically,
//! otherwise lexicographically, and ids follow that order, so the
//! lexicographic order on faces agrees with the order of their labels.

mod generators;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

pub use generators::{
    boundary_simplex, connected_sum, connected_sum_with_rotation, cross_polytope, glue_triangles,
    icosahedron, moebius_torus7, rp2_6, validate_two_sphere, Fixture, GeneratorError,
};

/// Dense vertex index, `0..f₀`.
pub type VertexId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("complex has no facets")]
    Empty,
    #[error("facet {index} is empty")]
    EmptyFacet { index: usize },
    #[error("facet {index} repeats vertex {label}")]
    DuplicateVertex { index: usize, label: String },
    #[error("dimension {k} out of range for a complex of dimension {dim}")]
    DimensionOutOfRange { k: usize, dim: usize },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("complex is not pure")]
    NotPure,
    #[error("ridge {ridge} lies in {count} facets")]
    RidgeOverloaded { ridge: String, count: usize },
}

/// A face as a strictly increasing list of vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct Face(Vec<VertexId>);

impl Face {
    /// Builds a face from arbitrary vertex ids, sorting them. Returns `None`
    /// when a vertex is repeated or the list is empty.
    pub fn new(mut vertices: Vec<VertexId>) -> Option<Self> {
        vertices.sort_unstable();
        if vertices.is_empty() || vertices.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Face(vertices))
    }

    pub(crate) fn from_sorted(vertices: Vec<VertexId>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Face(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subface_of(&self, other: &Face) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    /// The codimension-one faces, the `i`-th one omitting the `i`-th vertex.
    pub fn facets_of_boundary(&self) -> impl Iterator<Item = Face> + '_ {
        (0..self.0.len()).filter(|_| self.0.len() > 1).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            Face(v)
        })
    }

    /// All non-empty subfaces with exactly `size` vertices, in lexicographic order.
    pub fn subfaces(&self, size: usize) -> Vec<Face> {
        let mut out = Vec::new();
        if size == 0 || size > self.0.len() {
            return out;
        }
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(Face(idx.iter().map(|&i| self.0[i]).collect()));
            let mut i = size;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if idx[i] < self.0.len() - size + i {
                    idx[i] += 1;
                    for j in i + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Face counts by dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }
}

/// Simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list; loops and repeated edges are dropped.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Graph::new(n);
        for (a, b) in edges {
            assert!(a < n && b < n, "edge endpoint out of range");
            if a != b {
                g.adj[a].push(b);
                g.adj[b].push(a);
            }
        }
        for list in &mut g.adj {
            list.sort_unstable();
            list.dedup();
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (a, list) in self.adj.iter().enumerate() {
            for &b in list {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Connected component index per vertex, numbered in order of first vertex.
    pub fn components(&self) -> Vec<usize> {
        let n = self.adj.len();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }
}

/// An immutable simplicial complex stored by its facets.
///
/// Face lists per dimension are computed on first use and cached; the cache
/// is safe to populate from several threads.
#[derive(Debug)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    facets: Vec<Face>,
    dim: usize,
    faces: Vec<OnceLock<Vec<Face>>>,
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        SimplicialComplex::from_parts(self.labels.clone(), self.facets.clone())
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

fn label_order(labels: &[String]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..labels.len()).collect();
    let numeric: Option<Vec<i128>> = labels.iter().map(|l| l.parse::<i128>().ok()).collect();
    match numeric {
        Some(values) => order.sort_by(|&a, &b| values[a].cmp(&values[b]).then(labels[a].cmp(&labels[b]))),
        None => order.sort_by(|&a, &b| labels[a].cmp(&labels[b])),
    }
    order
}

/// Keeps only inclusion-maximal faces, sorted and deduplicated.
fn maximal_faces(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    faces.dedup();
    let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
    for f in faces {
        if !kept.iter().any(|k| k.len() > f.len() && f.is_subface_of(k)) {
            kept.push(f);
        }
    }
    kept.sort();
    kept
}

impl SimplicialComplex {
    /// Builds a complex from facets given by external labels.
    ///
    /// Repeated facets and facets contained in other facets are dropped.
    pub fn from_facets<I, F, L>(facets: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = L>,
        L: ToString,
    {
        let raw: Vec<Vec<String>> = facets
            .into_iter()
            .map(|f| f.into_iter().map(|l| l.to_string()).collect())
            .collect();
        if raw.is_empty() {
            return Err(ComplexError::Empty);
        }
        let mut seen = BTreeSet::new();
        for (index, f) in raw.iter().enumerate() {
            if f.is_empty() {
                return Err(ComplexError::EmptyFacet { index });
            }
            let mut local = BTreeSet::new();
            for l in f {
                if !local.insert(l) {
                    return Err(ComplexError::DuplicateVertex { index, label: l.clone() });
                }
                seen.insert(l.clone());
            }
        }
        let distinct: Vec<String> = seen.into_iter().collect();
        let order = label_order(&distinct);
        let labels: Vec<String> = order.iter().map(|&i| distinct[i].clone()).collect();
        let index: HashMap<&str, usize> =
            labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let faces = raw
            .iter()
            .map(|f| Face::new(f.iter().map(|l| index[l.as_str()]).collect()).expect("checked above"))
            .collect();
        Ok(Self::from_parts(labels, maximal_faces(faces)))
    }

    /// The complex with no faces at all.
    pub fn empty() -> Self {
        SimplicialComplex { labels: Vec::new(), facets: Vec::new(), dim: 0, faces: Vec::new() }
    }

    /// `facets` must be maximal, sorted and cover every id in `0..labels.len()`.
    pub(crate) fn from_parts(labels: Vec<String>, facets: Vec<Face>) -> Self {
        let dim = facets.iter().map(Face::dim).max().unwrap_or(0);
        let faces = if facets.is_empty() { Vec::new() } else { (0..=dim).map(|_| OnceLock::new()).collect() };
        SimplicialComplex { labels, facets, dim, faces }
    }

    /// Builds from id-based faces (not necessarily maximal), keeping only the
    /// vertices that occur and relabelling them densely in id order.
    /// Returns the complex and the map from new ids to the given ids.
    pub(crate) fn from_id_faces(labels: &[String], faces: Vec<Face>) -> (Self, Vec<VertexId>) {
        let used: BTreeSet<VertexId> = faces.iter().flat_map(|f| f.0.iter().copied()).collect();
        let old_of_new: Vec<VertexId> = used.into_iter().collect();
        let mut new_of_old = HashMap::with_capacity(old_of_new.len());
        for (i, &o) in old_of_new.iter().enumerate() {
            new_of_old.insert(o, i);
        }
        let faces = faces
            .into_iter()
            .map(|f| Face::from_sorted(f.0.iter().map(|v| new_of_old[v]).collect()))
            .collect();
        let new_labels = old_of_new.iter().map(|&o| labels[o].clone()).collect();
        (Self::from_parts(new_labels, maximal_faces(faces)), old_of_new)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension of the largest facet; the empty complex reports 0.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn vertex_of(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label)
    }

    /// Facets as label lists, for output.
    pub fn facet_labels(&self) -> Vec<Vec<String>> {
        self.facets.iter().map(|f| self.face_labels(f)).collect()
    }

    pub fn face_labels(&self, f: &Face) -> Vec<String> {
        f.0.iter().map(|&v| self.labels[v].clone()).collect()
    }

    pub fn is_pure(&self) -> bool {
        self.facets.iter().all(|f| f.dim() == self.dim)
    }

    /// All `k`-faces in lexicographic order (empty for the empty complex).
    pub fn faces(&self, k: usize) -> &[Face] {
        if self.is_empty() || k > self.dim {
            return &[];
        }
        self.faces[k].get_or_init(|| {
            let mut set = BTreeSet::new();
            for f in &self.facets {
                for s in f.subfaces(k + 1) {
                    set.insert(s);
                }
            }
            set.into_iter().collect()
        })
    }

    /// Like [`faces`](Self::faces) but rejecting `k > dim`.
    pub fn faces_checked(&self, k: usize) -> Result<&[Face], ComplexError> {
        if !self.is_empty() && k > self.dim {
            return Err(ComplexError::DimensionOutOfRange { k, dim: self.dim });
        }
        Ok(self.faces(k))
    }

    pub fn contains_face(&self, f: &Face) -> bool {
        f.dim() <= self.dim && self.faces(f.dim()).binary_search(f).is_ok()
    }

    /// Index of a face within `faces(dim)`.
    pub fn face_index(&self, f: &Face) -> Option<usize> {
        if f.dim() > self.dim {
            return None;
        }
        self.faces(f.dim()).binary_search(f).ok()
    }

    pub fn f_vector(&self) -> FVector {
        if self.is_empty() {
            return FVector(Vec::new());
        }
        FVector((0..=self.dim).map(|k| self.faces(k).len()).collect())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }

    /// The link of `v`: faces not containing `v` whose join with `v` is a face.
    pub fn link(&self, v: VertexId) -> Result<SimplicialComplex, ComplexError> {
        if v >= self.vertex_count() {
            return Err(ComplexError::UnknownVertex(v.to_string()));
        }
        let faces: Vec<Face> = self
            .facets
            .iter()
            .filter(|f| f.contains(v) && f.len() > 1)
            .map(|f| Face::from_sorted(f.0.iter().copied().filter(|&w| w != v).collect()))
            .collect();
        Ok(Self::from_id_faces(&self.labels, faces).0)
    }

    pub fn link_of_label(&self, label: &str) -> Result<SimplicialComplex, ComplexError> {
        let v = self.vertex_of(label).ok_or_else(|| ComplexError::UnknownVertex(label.to_string()))?;
        self.link(v)
    }

    /// The subcomplex induced by the vertex set `w`, together with the map
    /// from its vertex ids back to ids of `self`.
    pub fn induced_with_map(&self, w: &[VertexId]) -> Result<(SimplicialComplex, Vec<VertexId>), ComplexError> {
        let n = self.vertex_count();
        let mut member = vec![false; n];
        for &v in w {
            if v >= n {
                return Err(ComplexError::UnknownVertex(v.to_string()));
            }
            member[v] = true;
        }
        let faces: Vec<Face> = self
            .facets
            .iter()
            .map(|f| f.0.iter().copied().filter(|&v| member[v]).collect::<Vec<_>>())
            .filter(|f| !f.is_empty())
            .map(Face::from_sorted)
            .collect();
        if faces.is_empty() {
            return Ok((SimplicialComplex::empty(), Vec::new()));
        }
        Ok(Self::from_id_faces(&self.labels, faces))
    }

    pub fn induced(&self, w: &[VertexId]) -> Result<SimplicialComplex, ComplexError> {
        Ok(self.induced_with_map(w)?.0)
    }

    pub fn induced_by_labels<S: AsRef<str>>(&self, w: &[S]) -> Result<SimplicialComplex, ComplexError> {
        let ids = w
            .iter()
            .map(|l| self.vertex_of(l.as_ref()).ok_or_else(|| ComplexError::UnknownVertex(l.as_ref().to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        self.induced(&ids)
    }

    pub fn one_skeleton(&self) -> Graph {
        let edges = self.faces(1).iter().map(|e| (e.0[0], e.0[1]));
        Graph::from_edges(self.vertex_count(), edges)
    }

    pub fn is_connected(&self) -> bool {
        !self.is_empty() && self.one_skeleton().is_connected()
    }

    /// Checks purity and that every ridge lies in at most two facets.
    /// Returns the ridge-to-facets incidence on success.
    pub(crate) fn ridge_incidence(&self) -> Result<Vec<(Face, Vec<usize>)>, ComplexError> {
        if self.is_empty() || !self.is_pure() {
            return Err(ComplexError::NotPure);
        }
        if self.dim == 0 {
            return Ok(Vec::new());
        }
        let ridges = self.faces(self.dim - 1);
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); ridges.len()];
        for (i, f) in self.facets.iter().enumerate() {
            for r in f.facets_of_boundary() {
                let idx = ridges.binary_search(&r).expect("ridge of a facet is a face");
                incident[idx].push(i);
            }
        }
        for (r, inc) in ridges.iter().zip(&incident) {
            if inc.len() > 2 {
                return Err(ComplexError::RidgeOverloaded {
                    ridge: self.face_labels(r).join(" "),
                    count: inc.len(),
                });
            }
        }
        Ok(ridges.iter().cloned().zip(incident).collect())
    }

    pub fn is_weak_pseudomanifold(&self) -> bool {
        self.ridge_incidence().is_ok()
    }

    /// Weak pseudomanifold in which every ridge lies in exactly two facets.
    pub fn is_closed_pseudomanifold(&self) -> bool {
        match self.ridge_incidence() {
            Ok(inc) => self.dim > 0 && inc.iter().all(|(_, f)| f.len() == 2),
            Err(_) => false,
        }
    }

    /// The dual graph: one vertex per facet (in facet order), one edge per
    /// shared ridge.
    pub fn dual_graph(&self) -> Result<Graph, ComplexError> {
        let inc = self.ridge_incidence()?;
        let edges = inc.iter().filter(|(_, f)| f.len() == 2).map(|(_, f)| (f[0], f[1]));
        Ok(Graph::from_edges(self.facets.len(), edges))
    }

    /// True iff every `k`-subset of vertices spans a face.
    pub fn is_k_neighbourly(&self, k: usize) -> bool {
        if k == 0 {
            return true;
        }
        let n = self.vertex_count();
        if k > n {
            return true;
        }
        if k - 1 > self.dim || self.is_empty() {
            return false;
        }
        binomial(n, k).map_or(false, |b| self.faces(k - 1).len() as u128 == b)
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(facets: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets.iter().map(|f| f.iter().copied())).unwrap()
    }

    fn octahedron() -> SimplicialComplex {
        cross_polytope(2).unwrap()
    }

    #[test]
    fn build_three_cycle() {
        let t = c(&[&[1, 2], &[2, 3], &[1, 3]]);
        assert_eq!(t.f_vector().0, vec![3, 3]);
        assert_eq!(t.faces(1).len(), 3);
    }

    #[test]
    fn build_drops_contained_facets() {
        let t = c(&[&[1, 2, 3], &[1, 2]]);
        assert_eq!(t.facets().len(), 1);
        assert_eq!(t.f_vector().0, vec![3, 3, 1]);
    }

    #[test]
    fn build_solid_simplex() {
        let t = c(&[&[1, 2, 3, 4, 5]]);
        assert_eq!(t.f_vector().0, vec![5, 10, 10, 5, 1]);
    }

    #[test]
    fn build_errors() {
        let empty: Vec<Vec<u32>> = vec![];
        assert_eq!(SimplicialComplex::from_facets(empty), Err(ComplexError::Empty));
        assert!(matches!(
            SimplicialComplex::from_facets(vec![vec![1, 1, 2]]),
            Err(ComplexError::DuplicateVertex { index: 0, .. })
        ));
        assert!(matches!(
            SimplicialComplex::from_facets(vec![vec![1, 2], vec![]]),
            Err(ComplexError::EmptyFacet { index: 1 })
        ));
    }

    #[test]
    fn labels_are_ordered_numerically() {
        let t = c(&[&[10, 2, 9]]);
        assert_eq!(t.labels(), &["2", "9", "10"]);
        let s = SimplicialComplex::from_facets(vec![vec!["b", "a"], vec!["c", "a"]]).unwrap();
        assert_eq!(s.labels(), &["a", "b", "c"]);
    }

    #[test]
    fn f_vectors_of_spheres() {
        assert_eq!(boundary_simplex(3).unwrap().f_vector().0, vec![4, 6, 4]);
        assert_eq!(boundary_simplex(4).unwrap().f_vector().0, vec![5, 10, 10, 5]);
        assert_eq!(octahedron().f_vector().0, vec![6, 12, 8]);
    }

    #[test]
    fn faces_queries() {
        let s = boundary_simplex(3).unwrap();
        assert_eq!(s.faces(1).len(), 6);
        assert!(s.faces(1).windows(2).all(|w| w[0] < w[1]));
        let t = c(&[&[1, 2], &[2, 3], &[1, 3]]);
        let e: Vec<Vec<String>> = t.faces(1).iter().map(|f| t.face_labels(f)).collect();
        assert_eq!(e, vec![vec!["1", "2"], vec!["1", "3"], vec!["2", "3"]]);
        let o = octahedron();
        assert_eq!(o.faces(1).len(), 12);
        for (a, b) in [("1", "2"), ("3", "4"), ("5", "6")] {
            let f = Face::new(vec![o.vertex_of(a).unwrap(), o.vertex_of(b).unwrap()]).unwrap();
            assert!(!o.contains_face(&f));
        }
        assert!(matches!(s.faces_checked(3), Err(ComplexError::DimensionOutOfRange { .. })));
    }

    #[test]
    fn links() {
        let s = boundary_simplex(4).unwrap();
        for v in 0..s.vertex_count() {
            assert_eq!(s.link(v).unwrap().f_vector().0, vec![4, 6, 4]);
        }
        let o = octahedron();
        for v in 0..6 {
            let l = o.link(v).unwrap();
            assert_eq!(l.f_vector().0, vec![4, 4]);
            assert!(l.one_skeleton().is_connected());
        }
        let t = moebius_torus7().unwrap();
        for v in 0..7 {
            let l = t.link(v).unwrap();
            assert_eq!(l.f_vector().0, vec![6, 6]);
            assert!((0..6).all(|w| l.one_skeleton().degree(w) == 2));
        }
        assert!(o.link(17).is_err());
    }

    #[test]
    fn induced_subcomplexes() {
        let o = octahedron();
        let pair = o.induced_by_labels(&["1", "2"]).unwrap();
        assert_eq!(pair.f_vector().0, vec![2]);
        assert_eq!(o.induced(&(0..6).collect::<Vec<_>>()).unwrap(), o);
        let s = boundary_simplex(3).unwrap();
        let tri = s.induced(&[0, 1, 3]).unwrap();
        assert_eq!(tri.f_vector().0, vec![3, 3, 1]);
        assert!(s.induced(&[]).unwrap().is_empty());
        assert!(o.induced_by_labels(&["9"]).is_err());
    }

    #[test]
    fn skeleta_and_dual_graphs() {
        let s = boundary_simplex(3).unwrap();
        assert_eq!(s.one_skeleton().edge_count(), 6);
        let ico = icosahedron().unwrap().one_skeleton();
        assert_eq!(ico.edge_count(), 30);
        assert!((0..12).all(|v| ico.degree(v) == 5));
        for d in 3..=7 {
            let g = boundary_simplex(d).unwrap().dual_graph().unwrap();
            assert_eq!(g.vertex_count(), d + 1);
            assert_eq!(g.edge_count(), (d + 1) * d / 2);
        }
        let two = c(&[&[1, 2, 3], &[2, 3, 4]]);
        assert_eq!(two.dual_graph().unwrap().edges(), vec![(0, 1)]);
        let three = c(&[&[1, 2, 3], &[2, 3, 4], &[2, 3, 5]]);
        assert!(matches!(three.dual_graph(), Err(ComplexError::RidgeOverloaded { count: 3, .. })));
        let mixed = c(&[&[1, 2, 3], &[3, 4]]);
        assert_eq!(mixed.dual_graph(), Err(ComplexError::NotPure));
    }

    #[test]
    fn neighbourliness_and_euler() {
        assert!(!octahedron().is_k_neighbourly(2));
        assert!(boundary_simplex(5).unwrap().is_k_neighbourly(2));
        let t = moebius_torus7().unwrap();
        assert!(t.is_k_neighbourly(2));
        assert_eq!(t.f_vector().0, vec![7, 21, 14]);
        assert_eq!(t.euler_characteristic(), 0);
        assert_eq!(boundary_simplex(3).unwrap().euler_characteristic(), 2);
        assert_eq!(boundary_simplex(4).unwrap().euler_characteristic(), 0);
        assert_eq!(c(&[&[1, 2, 3]]).euler_characteristic(), 1);
    }

    #[test]
    fn subfaces_enumeration() {
        let f = Face::new(vec![0, 1, 2, 3]).unwrap();
        assert_eq!(f.subfaces(2).len(), 6);
        assert_eq!(f.subfaces(4), vec![f.clone()]);
        assert!(f.subfaces(5).is_empty());
        let b: Vec<Face> = f.facets_of_boundary().collect();
        assert_eq!(b[0].vertices(), &[1, 2, 3]);
        assert_eq!(b[3].vertices(), &[0, 1, 2]);
    }
}
