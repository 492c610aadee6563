//! F₂-tightness over the dual graph, with an obstruction when there is one.

use tightness::complex::{cross_polytope, moebius_torus7, rp2_6};
use tightness::tight_fpt::decide_tight_f2;

fn main() {
    for (name, c) in [("moebius_torus7", moebius_torus7().unwrap()), ("rp2_6", rp2_6().unwrap()), ("octahedron", cross_polytope(2).unwrap())] {
        let r = decide_tight_f2(&c).unwrap();
        println!("{name}: tight = {}", r.tight);
        for p in &r.passes {
            println!("  j = {}: width {}, deficit {}", p.j, p.width, p.deficit);
        }
        if let Some(o) = &r.obstruction {
            println!("  obstruction in degree {} on W = {:?}", o.j, o.w);
        }
    }
}
