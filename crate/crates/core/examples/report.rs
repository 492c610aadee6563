//! Parse a facet list, pick an algorithm automatically and print the JSON
//! report the command-line tool would print.

use tightness::cli::{parse_complex_str, report_document};
use tightness::{decide_auto, FieldChoice, FieldSpec, Method};

const TORUS: &str = "\
# seven-vertex torus
1 2 4
2 3 5
3 4 6
4 5 7
5 6 1
6 7 2
7 1 3
1 2 6
2 3 7
3 4 1
4 5 2
5 6 3
6 7 4
7 1 5
";

fn main() {
    let c = parse_complex_str(TORUS).unwrap();
    let report = decide_auto(&c, FieldChoice::Fixed(FieldSpec::F2), Method::Auto);
    println!("{}", serde_json::to_string_pretty(&report_document(&c, &report)).unwrap());
}
