//! Bag-local chain patterns `(A, b, 𝒞)`: a visible piece `A` of a `j`-chain,
//! its boundary `b`, and the visible completions `C` with `A + C` a cycle.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::TightFptError;
use crate::complex::Face;

/// Largest number of `j`-faces of a facet for which [`leaf_init`]
/// enumerates patterns.
pub const LEAF_PATTERN_LIMIT: usize = 12;

/// A chain with `F₂` coefficients: the set of faces with coefficient one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ChainF2 {
    pub dim: usize,
    pub faces: BTreeSet<Face>,
}

impl ChainF2 {
    pub fn zero(dim: usize) -> Self {
        ChainF2 { dim, faces: BTreeSet::new() }
    }

    pub fn new(dim: usize, faces: impl IntoIterator<Item = Face>) -> Self {
        let mut c = ChainF2::zero(dim);
        for f in faces {
            assert_eq!(f.dim(), dim, "face {f} in a {dim}-chain");
            if !c.faces.insert(f.clone()) {
                c.faces.remove(&f);
            }
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn add(&self, other: &ChainF2) -> ChainF2 {
        ChainF2 { dim: self.dim, faces: self.faces.symmetric_difference(&other.faces).cloned().collect() }
    }

    /// `∂` with `F₂` coefficients; 0-chains have zero boundary.
    pub fn boundary(&self) -> ChainF2 {
        if self.dim == 0 {
            return ChainF2::zero(0);
        }
        ChainF2::new(self.dim - 1, self.faces.iter().flat_map(|f| f.facets_of_boundary().collect::<Vec<_>>()))
    }

    pub fn is_cycle(&self) -> bool {
        self.boundary().is_zero()
    }

    pub fn meets(&self, other: &BTreeSet<Face>) -> bool {
        self.faces.iter().any(|f| other.contains(f))
    }
}

impl fmt::Display for ChainF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.faces.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.faces.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct TripleEntry {
    pub a: ChainF2,
    pub b: ChainF2,
    /// Sorted, without repetitions; may contain the zero chain.
    pub completions: Vec<ChainF2>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BagState {
    pub j: usize,
    pub facets: Vec<Face>,
    /// Sorted by `(a, b)`.
    pub entries: Vec<TripleEntry>,
}

fn subsets(faces: &[Face], dim: usize) -> impl Iterator<Item = ChainF2> + '_ {
    (0u32..1 << faces.len()).map(move |mask| {
        ChainF2::new(dim, faces.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, f)| f.clone()))
    })
}

fn merged(j: usize, facets: Vec<Face>, entries: impl IntoIterator<Item = TripleEntry>) -> BagState {
    let mut by_key: BTreeMap<(ChainF2, ChainF2), BTreeSet<ChainF2>> = BTreeMap::new();
    for e in entries {
        by_key.entry((e.a, e.b)).or_default().extend(e.completions);
    }
    let entries = by_key
        .into_iter()
        .map(|((a, b), c)| TripleEntry { a, b, completions: c.into_iter().collect() })
        .collect();
    BagState { j, facets, entries }
}

/// Patterns of a single facet: every set `A` of its `j`-faces with
/// `b = ∂A` and all completions `C` disjoint from `A` making `A + C` a cycle.
pub fn leaf_init(facet: &Face, j: usize) -> Result<BagState, TightFptError> {
    let faces = facet.subfaces(j + 1);
    if faces.is_empty() || faces.len() > LEAF_PATTERN_LIMIT {
        return Err(TightFptError::BadDegree { j, reason: format!("{} {j}-faces in the facet", faces.len()) });
    }
    let entries = subsets(&faces, j).map(|a| {
        let rest: Vec<Face> = faces.iter().filter(|f| !a.faces.contains(*f)).cloned().collect();
        let completions = subsets(&rest, j).filter(|c| a.add(c).is_cycle()).collect();
        TripleEntry { b: a.boundary(), a, completions }
    });
    Ok(merged(j, vec![facet.clone()], entries))
}

/// Forgetting faces: entries whose boundary meets a forgotten `(j-1)`-face
/// are discarded, forgotten `j`-faces are stripped from `A`, completions
/// using a forgotten face are deleted, and equal entries are merged.
pub fn forget_patterns(state: &BagState, forgotten: &[Face], remaining_facets: Vec<Face>) -> BagState {
    let gone: BTreeSet<Face> = forgotten.iter().cloned().collect();
    let entries = state.entries.iter().filter(|e| !e.b.meets(&gone)).map(|e| TripleEntry {
        a: ChainF2 { dim: e.a.dim, faces: e.a.faces.difference(&gone).cloned().collect() },
        b: e.b.clone(),
        completions: e.completions.iter().filter(|c| !c.meets(&gone)).cloned().collect(),
    });
    merged(state.j, remaining_facets, entries)
}

/// Combining the patterns of two branches over the same bag.
pub fn join_patterns(left: &BagState, right: &BagState) -> Result<BagState, TightFptError> {
    if left.facets != right.facets || left.j != right.j {
        return Err(TightFptError::BagMismatch);
    }
    let mut out = Vec::new();
    for l in &left.entries {
        for r in &right.entries {
            let a = l.a.add(&r.a);
            let completions = l
                .completions
                .iter()
                .flat_map(|c| r.completions.iter().map(move |d| c.add(d)))
                .filter(|c| !c.meets(&a.faces))
                .collect();
            out.push(TripleEntry { b: l.b.add(&r.b), a, completions });
        }
    }
    Ok(merged(left.j, left.facets.clone(), out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: &[usize]) -> Face {
        Face::new(v.to_vec()).unwrap()
    }

    fn chain(dim: usize, faces: &[&[usize]]) -> ChainF2 {
        ChainF2::new(dim, faces.iter().map(|x| f(x)))
    }

    #[test]
    fn chain_algebra() {
        let tri = chain(2, &[&[1, 2, 3]]);
        assert_eq!(tri.boundary(), chain(1, &[&[1, 2], &[1, 3], &[2, 3]]));
        assert!(tri.boundary().boundary().is_zero());
        let a = chain(1, &[&[1, 2], &[2, 3]]);
        assert_eq!(a.add(&a), ChainF2::zero(1));
        assert_eq!(a.boundary(), chain(0, &[&[1], &[3]]));
    }

    #[test]
    fn triangle_leaf() {
        let s = leaf_init(&f(&[1, 2, 3]), 1).unwrap();
        assert_eq!(s.entries.len(), 8);
        let find = |a: &ChainF2| s.entries.iter().find(|e| &e.a == a).unwrap();
        let e = find(&chain(1, &[&[1, 2]]));
        assert_eq!(e.b, chain(0, &[&[1], &[2]]));
        assert_eq!(e.completions, vec![chain(1, &[&[1, 3], &[2, 3]])]);
        let e = find(&ChainF2::zero(1));
        assert_eq!(e.b, ChainF2::zero(0));
        assert_eq!(e.completions, vec![ChainF2::zero(1), chain(1, &[&[1, 2], &[1, 3], &[2, 3]])]);
        let e = find(&chain(1, &[&[1, 2], &[1, 3], &[2, 3]]));
        assert!(e.b.is_zero());
        assert!(e.completions.contains(&ChainF2::zero(1)));
        let sorted: Vec<_> = {
            let mut x = s.entries.clone();
            x.sort();
            x
        };
        assert_eq!(sorted, s.entries);
    }

    #[test]
    fn forgetting() {
        let s = leaf_init(&f(&[1, 2, 3]), 1).unwrap();
        assert_eq!(forget_patterns(&s, &[], s.facets.clone()), s);
        let t = forget_patterns(&s, &[f(&[1]), f(&[1, 2])], vec![]);
        // every surviving entry has a boundary avoiding vertex 1
        assert!(t.entries.iter().all(|e| !e.b.faces.contains(&f(&[1]))));
        let stripped: Vec<_> = t.entries.iter().map(|e| e.a.clone()).collect();
        assert!(stripped.iter().all(|a| !a.faces.contains(&f(&[1, 2]))));
        assert!(t.entries.len() < s.entries.len());
    }

    #[test]
    fn joining() {
        let s = leaf_init(&f(&[1, 2, 3]), 1).unwrap();
        let trivial = BagState {
            j: 1,
            facets: s.facets.clone(),
            entries: vec![TripleEntry { a: ChainF2::zero(1), b: ChainF2::zero(0), completions: vec![ChainF2::zero(1)] }],
        };
        assert_eq!(join_patterns(&trivial, &s).unwrap(), s);
        let other = leaf_init(&f(&[1, 2, 4]), 1).unwrap();
        assert_eq!(join_patterns(&s, &other), Err(TightFptError::BagMismatch));
    }
}
