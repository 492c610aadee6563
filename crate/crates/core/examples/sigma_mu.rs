//! Brute-force σ- and μ-vectors of the 7-vertex torus.

use tightness::complex::moebius_torus7;
use tightness::oracle::{is_tight_bruteforce, sigma_mu_report};
use tightness::FieldSpec;

fn main() {
    let torus = moebius_torus7().unwrap();
    let report = sigma_mu_report(&torus, FieldSpec::F2).unwrap();
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    println!("tight over F2: {}", is_tight_bruteforce(&torus, FieldSpec::F2).unwrap().is_tight());
}
