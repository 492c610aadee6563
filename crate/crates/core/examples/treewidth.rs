//! Tree decompositions of the icosahedral graph.

use tightness::complex::icosahedron;
use tightness::treewidth::{decompose, make_nice, validate, NodeKind, Strategy};

fn main() {
    let g = icosahedron().unwrap().one_skeleton();
    for s in [Strategy::MinDegree, Strategy::MinFill, Strategy::ExactSmall] {
        let t = decompose(&g, s).unwrap();
        validate(&t, &g).unwrap();
        println!("{s:?}: width {} with {} bags", t.width(), t.bags.len());
    }
    let nice = make_nice(&decompose(&g, Strategy::MinFill).unwrap(), &g).unwrap();
    let joins = nice.nodes.iter().filter(|x| matches!(x.kind, NodeKind::Join)).count();
    println!("nice: {} nodes, {joins} joins, width {}", nice.len(), nice.width());
}
