#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use rand::Rng;
use tightness::complex::{boundary_simplex, connected_sum, cross_polytope, icosahedron, moebius_torus7, rp2_6};
use tightness::{Graph, SimplicialComplex};

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Fixtures whose `tight --json` reports are pinned.
pub const GOLDEN: [&str; 5] = ["boundary_simplex_4", "octahedron", "moebius_torus7", "cross_polytope_3", "boundary_simplex_5"];

pub fn golden_argv(name: &str) -> Vec<String> {
    let path = fixtures_dir().join(format!("{name}.cplx"));
    ["tightness", "tight", path.to_str().unwrap(), "--field", "2", "--json"].iter().map(|s| s.to_string()).collect()
}

/// Every named fixture with a short name.
pub fn named_fixtures() -> Vec<(String, SimplicialComplex)> {
    let mut out = Vec::new();
    for d in 2..=5 {
        out.push((format!("boundary_simplex({d})"), boundary_simplex(d).unwrap()));
    }
    for d in 2..=4 {
        out.push((format!("cross_polytope({d})"), cross_polytope(d).unwrap()));
    }
    out.push(("moebius_torus7".into(), moebius_torus7().unwrap()));
    out.push(("rp2_6".into(), rp2_6().unwrap()));
    out.push(("icosahedron".into(), icosahedron().unwrap()));
    for (k, l) in [(0, 1), (0, 2), (0, 3), (1, 0), (1, 1)] {
        out.push((format!("connected_sum({k},{l})"), connected_sum(k, l).unwrap()));
    }
    out.push(("subdivided_boundary_simplex(4)".into(), subdivided_boundary_simplex_4()));
    out
}

/// `∂Δ⁴` with one tetrahedron replaced by the cone over its boundary.
pub fn subdivided_boundary_simplex_4() -> SimplicialComplex {
    let mut facets: Vec<Vec<usize>> = boundary_simplex(4).unwrap().facets().iter().map(|f| f.vertices().to_vec()).collect();
    let t = facets.remove(0);
    for i in 0..4 {
        let mut g: Vec<usize> = t.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
        g.push(5);
        facets.push(g);
    }
    SimplicialComplex::from_facets(facets).unwrap()
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|_| rng.gen_bool(p)).collect::<Vec<_>>();
    Graph::from_edges(n, edges)
}

pub fn complete_graph(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))))
}

pub fn cycle_graph(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// All labelled connected closed 2-dimensional weak pseudomanifolds with at
/// most `max_facets` triangles reachable by closing the least open edge with
/// an old or a fresh vertex. Every isomorphism type occurs at least once.
pub fn closed_surfaces(max_facets: usize) -> Vec<SimplicialComplex> {
    fn edges(t: &[usize; 3]) -> [(usize, usize); 3] {
        [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]
    }
    fn grow(tris: &mut Vec<[usize; 3]>, n: usize, max: usize, out: &mut BTreeSet<Vec<[usize; 3]>>) {
        let mut count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for t in tris.iter() {
            for e in edges(t) {
                *count.entry(e).or_default() += 1;
            }
        }
        let Some((&(a, b), _)) = count.iter().find(|(_, &c)| c == 1) else {
            let mut key = tris.clone();
            key.sort_unstable();
            out.insert(key);
            return;
        };
        if tris.len() == max {
            return;
        }
        for c in 0..=n {
            if c == a || c == b {
                continue;
            }
            let mut t = [a, b, c];
            t.sort_unstable();
            if tris.contains(&t) || edges(&t).iter().any(|e| count.get(e).copied().unwrap_or(0) >= 2) {
                continue;
            }
            tris.push(t);
            grow(tris, n.max(c + 1), max, out);
            tris.pop();
        }
    }
    let mut out = BTreeSet::new();
    grow(&mut vec![[0, 1, 2]], 3, max_facets, &mut out);
    out.into_iter().map(|ts| SimplicialComplex::from_facets(ts.iter().map(|t| t.to_vec())).unwrap()).collect()
}

/// Two tetrahedron boundaries sharing one vertex.
pub fn wedge_of_spheres() -> SimplicialComplex {
    let a = [0, 1, 2, 3];
    let b = [0, 4, 5, 6];
    let facets = [a, b].iter().flat_map(|s| (0..4).map(move |i| s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect::<Vec<_>>())).collect::<Vec<_>>();
    SimplicialComplex::from_facets(facets).unwrap()
}
