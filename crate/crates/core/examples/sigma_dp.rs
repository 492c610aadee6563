//! σ₀ of a graph by dynamic programming over a nice tree decomposition.

use tightness::complex::connected_sum;
use tightness::oracle::sigma0_graph_bruteforce;
use tightness::sigma_fpt::sigma0_treewidth_traced;
use tightness::treewidth::{nice_decomposition, Strategy};
use tightness::format_rational;

fn main() {
    let g = connected_sum(2, 3).unwrap().one_skeleton();
    let nice = nice_decomposition(&g, Strategy::MinFill).unwrap();
    let (sigma, trace) = sigma0_treewidth_traced(&g, &nice).unwrap();
    println!("{} vertices, width {}", g.vertex_count(), nice.width());
    println!("sigma0 = {}", format_rational(&sigma));
    println!("largest table: {} keys, {} cells", trace.max_keys, trace.max_cells);
    if g.vertex_count() <= 20 {
        println!("oracle = {}", format_rational(&sigma0_graph_bruteforce(&g).unwrap()));
    }
}
