use tightness::complex::{boundary_simplex, cross_polytope};
use tightness::decide::decide_tight_4;
use tightness::FieldChoice;

fn main() {
    for (name, c) in [("boundary_simplex(5)", boundary_simplex(5).unwrap()), ("cross_polytope(4)", cross_polytope(4).unwrap())] {
        let r = decide_tight_4(&c, FieldChoice::Any, false);
        println!("{name}: {} {}", r.verdict, serde_json::to_string(&r.certificate).unwrap());
    }
}
