//! The polynomial test for 3-manifolds and the closed σ₀ formula for links.

use tightness::complex::{boundary_simplex, connected_sum};
use tightness::decide::{decide_tight_3, sigma0_tight3_formula, split_link, Prefactor};
use tightness::oracle::sigma0_bruteforce;
use tightness::{format_rational, FieldChoice};

fn main() {
    let report = decide_tight_3(&boundary_simplex(4).unwrap(), FieldChoice::Any);
    println!("{}", serde_json::to_string_pretty(&report).unwrap());

    let link = connected_sum(1, 1).unwrap();
    let d = split_link(&link).unwrap();
    println!("link splits into k = {}, l = {}", d.k, d.l);
    for p in [Prefactor::Printed, Prefactor::Corrected] {
        println!("{p:?}: {}", format_rational(&sigma0_tight3_formula(d.k, d.l, p).unwrap()));
    }
    println!("oracle: {}", format_rational(&sigma0_bruteforce(&link).unwrap()));
}
