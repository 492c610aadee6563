//! Betti numbers over several fields and integral homology.

use tightness::complex::{moebius_torus7, rp2_6};
use tightness::homology::{betti, integral_homology};
use tightness::FieldSpec;

fn main() {
    let fields = [FieldSpec::Rationals, FieldSpec::F2, FieldSpec::prime(3).unwrap()];
    for (name, c) in [("rp2_6", rp2_6().unwrap()), ("moebius_torus7", moebius_torus7().unwrap())] {
        println!("{name}: chi = {}", c.euler_characteristic());
        for k in 0..=c.dim() {
            let b: Vec<String> = fields.iter().map(|&f| format!("{f}: {}", betti(&c, k, f))).collect();
            println!("  H{k} = {:<8} {}", integral_homology(&c, k).to_string(), b.join(", "));
        }
    }
}
