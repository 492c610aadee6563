//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{closed_surfaces, complete_graph, cycle_graph, golden_argv, golden_dir, named_fixtures, random_graph, wedge_of_spheres, GOLDEN};
use tightness::cli::{run, EXIT_INPUT, EXIT_NOT_APPLICABLE, EXIT_OK, EXIT_USAGE};
use tightness::complex::{boundary_simplex, connected_sum, cross_polytope, icosahedron, moebius_torus7, rp2_6};
use tightness::decide::{
    cut_sphere, decide_tight_3, decide_tight_4, induced_empty_triangles, sigma0_tight3_formula, split_link, split_link_with, Prefactor,
};
use tightness::homology::{betti, betti_from_integral, integral_homology};
use tightness::oracle::{is_tight_bruteforce, mu0, mu_vector, sigma0_bruteforce, sigma0_graph_bruteforce};
use tightness::sigma_fpt::sigma0_treewidth_traced;
use tightness::tight_fpt::decide_tight_f2;
use tightness::treewidth::{decompose, make_nice, validate, Strategy};
use tightness::{FieldChoice, FieldSpec, Graph, Rational, ReasonCode, SimplicialComplex, Verdict};

type Outcome = Result<(), String>;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fields() -> [FieldSpec; 3] {
    [FieldSpec::Rationals, FieldSpec::F2, FieldSpec::prime(3).unwrap()]
}

fn convention_triangulation() -> Outcome {
    let s = sigma0_bruteforce(&boundary_simplex(3).unwrap()).map_err(|e| e.to_string())?;
    ensure(s == q(-1, 1), || format!("sigma0(boundary of tetrahedron) = {s}"))?;
    let torus = moebius_torus7().unwrap();
    let c6 = torus.link(0).unwrap();
    ensure(c6.vertex_count() == 6 && c6.one_skeleton().edge_count() == 6, || "link is not a hexagon".into())?;
    let s = sigma0_bruteforce(&c6).map_err(|e| e.to_string())?;
    ensure(s == q(1, 1), || format!("sigma0(C6) = {s}"))?;
    let s = sigma0_bruteforce(&connected_sum(0, 2).unwrap()).map_err(|e| e.to_string())?;
    ensure(s == q(-9, 10), || format!("sigma0(5-vertex sphere) = {s}"))?;
    for (name, c, expected) in [("boundary_simplex(4)", boundary_simplex(4).unwrap(), 0), ("moebius_torus7", torus, 2)] {
        for f in fields() {
            let mu1 = mu_vector(&c, f).map_err(|e| e.to_string())?[1].clone();
            let b1 = betti(&c, 1, f);
            ensure(mu1 == q(expected, 1) && b1 == expected as usize, || format!("{name} over {f}: mu1 = {mu1}, beta1 = {b1}"))?;
        }
    }
    Ok(())
}

fn prefactor_resolution() -> Outcome {
    let cases = [(0, 1), (0, 2), (0, 3), (1, 0), (1, 1)];
    let brute: Vec<Rational> =
        cases.iter().map(|&(k, l)| sigma0_bruteforce(&connected_sum(k, l).unwrap()).unwrap()).collect::<Vec<_>>();
    let matches = |p: Prefactor| cases.iter().zip(&brute).all(|(&(k, l), b)| sigma0_tight3_formula(k, l, p).unwrap() == *b);
    let printed = matches(Prefactor::Printed);
    let corrected = matches(Prefactor::Corrected);
    ensure(printed != corrected, || format!("printed matches: {printed}, corrected matches: {corrected}"))?;
    ensure(matches(Prefactor::default()), || "the default prefactor does not match".into())
}

fn additivity() -> Outcome {
    let triangle = SimplicialComplex::from_facets([[0, 1], [0, 2], [1, 2]]).unwrap();
    let sigma_k = sigma0_bruteforce(&triangle).map_err(|e| e.to_string())?;
    ensure(sigma_k == q(-1, 1), || format!("sigma0(K) = {sigma_k}"))?;
    let scaled = |s: Rational, n: usize| s / BigInt::from(n + 1);
    for (k, l) in [(0, 2), (0, 3), (1, 1)] {
        let c = connected_sum(k, l).unwrap();
        let expected = split_link(&c).map_err(|e| e.to_string())?;
        ensure((expected.k, expected.l, expected.other) == (k, l, 0), || format!("split_link({k},{l}) gave {}/{}/{}", expected.k, expected.l, expected.other))?;
        let whole = sigma0_bruteforce(&c).unwrap();
        let cuts = induced_empty_triangles(&c);
        ensure(!cuts.is_empty(), || format!("connected_sum({k},{l}) has no empty triangle"))?;
        for t in cuts {
            let (a, b) = cut_sphere(&c, t).map_err(|e| e.to_string())?;
            let sum = scaled(sigma0_bruteforce(&a).unwrap(), a.vertex_count()) + scaled(sigma0_bruteforce(&b).unwrap(), b.vertex_count())
                - scaled(sigma_k.clone(), 3);
            let rhs = sum * BigInt::from(c.vertex_count() + 1);
            ensure(rhs == whole, || format!("connected_sum({k},{l}) cut at {t:?}: {rhs} != {whole}"))?;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed + (k * 10 + l) as u64);
        for _ in 0..10 {
            let d = split_link_with(&c, |n| rng.gen_range(0..n)).map_err(|e| e.to_string())?;
            ensure((d.k, d.l, d.other) == (expected.k, expected.l, expected.other), || format!("random order on ({k},{l}) gave {}/{}", d.k, d.l))?;
        }
    }
    Ok(())
}

fn poly3() -> Outcome {
    let bs4 = boundary_simplex(4).unwrap();
    for f in fields() {
        let r = decide_tight_3(&bs4, FieldChoice::Fixed(f));
        ensure(r.verdict == Verdict::Tight, || format!("boundary_simplex(4) over {f}: {}", r.verdict))?;
        ensure(is_tight_bruteforce(&bs4, f).unwrap().is_tight(), || format!("oracle rejects boundary_simplex(4) over {f}"))?;
    }
    for (name, c) in [("cross_polytope(3)", cross_polytope(3).unwrap()), ("subdivided boundary_simplex(4)", common::subdivided_boundary_simplex_4())] {
        for f in fields() {
            let r = decide_tight_3(&c, FieldChoice::Fixed(f));
            ensure(r.verdict == Verdict::NotTight && r.reason_code() == Some(ReasonCode::Not2Neighbourly), || {
                format!("{name} over {f}: {} {:?}", r.verdict, r.reason_code())
            })?;
            ensure(!is_tight_bruteforce(&c, f).unwrap().is_tight(), || format!("oracle accepts {name} over {f}"))?;
        }
    }
    Ok(())
}

fn sigma_dp_on(g: &Graph, label: &str, expected: Option<Rational>) -> Outcome {
    let brute = sigma0_graph_bruteforce(g).map_err(|e| e.to_string())?;
    if let Some(e) = expected {
        ensure(brute == e, || format!("{label}: oracle gave {brute}"))?;
    }
    let nice = make_nice(&decompose(g, Strategy::MinFill).map_err(|e| e.to_string())?, g).map_err(|e| e.to_string())?;
    let (sigma, trace) = sigma0_treewidth_traced(g, &nice).map_err(|e| e.to_string())?;
    ensure(sigma == brute, || format!("{label}: dp {sigma}, oracle {brute}"))?;
    ensure(trace.nodes.iter().all(|x| x.conserved), || format!("{label}: count conservation violated"))
}

fn sigma_fpt() -> Outcome {
    sigma_dp_on(&complete_graph(4), "K4", Some(q(-1, 1)))?;
    sigma_dp_on(&cycle_graph(6), "C6", Some(q(1, 1)))?;
    sigma_dp_on(&icosahedron().unwrap().one_skeleton(), "icosahedron", Some(q(47, 33)))?;
    sigma_dp_on(&complete_graph(5), "K5", Some(q(-1, 1)))?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..200 {
        let n = rng.gen_range(1..=15);
        let p = rng.gen_range(0.1..=0.9);
        sigma_dp_on(&random_graph(&mut rng, n, p), &format!("random graph {i} (n = {n}, p = {p:.2})"), None)?;
    }
    Ok(())
}

fn four_dimensional() -> Outcome {
    let bs5 = boundary_simplex(5).unwrap();
    let r = decide_tight_4(&bs5, FieldChoice::Any, false);
    ensure(r.verdict == Verdict::Tight, || format!("boundary_simplex(5): {}", r.verdict))?;
    ensure(r.mu1 == Some(q(0, 1)), || format!("mu1 = {:?}", r.mu1))?;
    let mut mu1 = mu0(&bs5);
    for v in 0..bs5.vertex_count() {
        let skeleton = bs5.link(v).unwrap().one_skeleton();
        ensure(skeleton == complete_graph(5), || format!("link of {v} is not K5"))?;
        let t = decompose(&skeleton, Strategy::MinFill).map_err(|e| e.to_string())?;
        validate(&t, &skeleton).map_err(|e| e.to_string())?;
        let nice = make_nice(&t, &skeleton).map_err(|e| e.to_string())?;
        let (s, _) = sigma0_treewidth_traced(&skeleton, &nice).map_err(|e| e.to_string())?;
        let brute = sigma0_graph_bruteforce(&skeleton).map_err(|e| e.to_string())?;
        ensure(s == brute && s == q(-1, 1), || format!("link {v}: dp {s}, oracle {brute}"))?;
        mu1 += s / BigInt::from(6);
    }
    ensure(Some(&mu1) == r.mu1.as_ref(), || format!("assembled mu1 = {mu1}"))?;
    let cp = cross_polytope(4).unwrap();
    let r = decide_tight_4(&cp, FieldChoice::Any, false);
    ensure(r.verdict == Verdict::NotTight && r.reason_code() == Some(ReasonCode::Not2Neighbourly), || {
        format!("cross_polytope(4): {} {:?}", r.verdict, r.reason_code())
    })
}

fn f2_fpt() -> Outcome {
    let mut cases: Vec<(String, SimplicialComplex)> = Vec::new();
    for d in 2..=5 {
        cases.push((format!("boundary_simplex({d})"), boundary_simplex(d).unwrap()));
    }
    for d in 2..=4 {
        cases.push((format!("cross_polytope({d})"), cross_polytope(d).unwrap()));
    }
    cases.push(("moebius_torus7".into(), moebius_torus7().unwrap()));
    cases.push(("rp2_6".into(), rp2_6().unwrap()));
    for l in 1..=3 {
        cases.push((format!("connected_sum(0,{l})"), connected_sum(0, l).unwrap()));
    }
    let surfaces = closed_surfaces(8);
    ensure(!surfaces.is_empty(), || "enumeration is empty".into())?;
    cases.extend(surfaces.into_iter().enumerate().map(|(i, c)| (format!("surface #{i}"), c)));
    cases.push(("wedge of two tetrahedron boundaries".into(), wedge_of_spheres()));
    let mut disagreements = Vec::new();
    for (name, c) in &cases {
        let fpt = decide_tight_f2(c).map_err(|e| format!("{name}: {e}"))?;
        let brute = is_tight_bruteforce(c, FieldSpec::F2).map_err(|e| format!("{name}: {e}"))?;
        if fpt.tight != brute.is_tight() {
            disagreements.push(name.clone());
        }
    }
    ensure(disagreements.is_empty(), || format!("{} of {} disagree: {disagreements:?}", disagreements.len(), cases.len()))
}

fn homology() -> Outcome {
    let ps = [FieldSpec::F2, FieldSpec::prime(3).unwrap(), FieldSpec::prime(5).unwrap()];
    for (name, c) in named_fixtures() {
        let h: Vec<_> = (0..=c.dim()).map(|k| integral_homology(&c, k)).collect();
        for f in ps.iter().copied().chain([FieldSpec::Rationals]) {
            let mut chi = 0i64;
            for k in 0..=c.dim() {
                let direct = betti(&c, k, f);
                let via_snf = betti_from_integral(&h[k], k.checked_sub(1).map(|i| &h[i]), f);
                ensure(direct == via_snf, || format!("{name}, k = {k}, {f}: {direct} vs {via_snf}"))?;
                chi += if k % 2 == 0 { direct as i64 } else { -(direct as i64) };
            }
            ensure(chi == c.euler_characteristic(), || format!("{name} over {f}: alternating sum {chi}"))?;
        }
    }
    let h1 = integral_homology(&rp2_6().unwrap(), 1);
    ensure(h1.rank == 0 && h1.torsion == vec![BigInt::from(2)], || format!("H1(rp2_6) = {h1}"))
}

fn treewidth() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..200 {
        let n = rng.gen_range(1..=25);
        let p = rng.gen_range(0.1..=0.9);
        let g = random_graph(&mut rng, n, p);
        let mut heuristic = isize::MAX;
        for s in [Strategy::MinDegree, Strategy::MinFill] {
            let t = decompose(&g, s).map_err(|e| e.to_string())?;
            validate(&t, &g).map_err(|e| format!("graph {i} {s:?}: {e}"))?;
            let nice = make_nice(&t, &g).map_err(|e| e.to_string())?;
            validate(&nice.as_tree_decomposition(), &g).map_err(|e| format!("graph {i} {s:?} nice: {e}"))?;
            nice.check_structure().map_err(|e| format!("graph {i} {s:?}: {e}"))?;
            ensure(nice.width() == t.width(), || format!("graph {i} {s:?}: width {} became {}", t.width(), nice.width()))?;
            heuristic = heuristic.min(t.width());
        }
        if n <= 12 {
            let exact = decompose(&g, Strategy::ExactSmall).map_err(|e| e.to_string())?;
            validate(&exact, &g).map_err(|e| e.to_string())?;
            ensure(exact.width() <= heuristic, || format!("graph {i}: exact {} > heuristic {heuristic}", exact.width()))?;
        }
    }
    Ok(())
}

fn cli() -> Outcome {
    for name in GOLDEN {
        let out = run(golden_argv(name));
        ensure(out.code == EXIT_OK, || format!("{name}: exit {}", out.code))?;
        let golden = std::fs::read_to_string(golden_dir().join(format!("{name}.json"))).map_err(|e| format!("{name}: {e}"))?;
        ensure(out.stdout == golden, || format!("{name}: report differs from golden file"))?;
        ensure(run(golden_argv(name)).stdout == out.stdout, || format!("{name}: not stable across runs"))?;
    }
    let fixture = |n: &str| common::fixtures_dir().join(n).to_str().unwrap().to_string();
    let bs4 = fixture("boundary_simplex_4.cplx");
    let matrix: [(Vec<String>, i32); 5] = [
        (vec!["tight".into(), bs4.clone()], EXIT_OK),
        (vec!["tight".into(), bs4.clone(), "--bogus".into()], EXIT_USAGE),
        (vec!["tight".into(), fixture("malformed.cplx")], EXIT_INPUT),
        (vec!["tight".into(), bs4.clone(), "--method".into(), "fptd".into(), "--field".into(), "q".into()], EXIT_NOT_APPLICABLE),
        (vec!["gen".into(), "no_such_family".into()], EXIT_USAGE),
    ];
    for (args, code) in matrix {
        let out = run(std::iter::once("tightness".to_string()).chain(args.iter().cloned()));
        ensure(out.code == code, || format!("{args:?}: exit {} instead of {code}", out.code))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 10] = [
        ("convention triangulation", Duration::from_secs(1), convention_triangulation),
        ("prefactor resolution", Duration::from_secs(30), prefactor_resolution),
        ("splitting additivity", Duration::from_secs(30), additivity),
        ("poly3 end-to-end", Duration::from_secs(5), poly3),
        ("sigma0 dp vs oracle", Duration::from_secs(60), sigma_fpt),
        ("4-dimensional pipeline", Duration::from_secs(5), four_dimensional),
        ("F2 dp vs oracle", Duration::from_secs(600), f2_fpt),
        ("homology kernel", Duration::from_secs(10), homology),
        ("treewidth toolchain", Duration::from_secs(60), treewidth),
        ("cli goldens and exit codes", Duration::from_secs(60), cli),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let elapsed = start.elapsed();
        let result = result.and_then(|()| ensure(elapsed <= limit, || format!("took longer than {limit:?}")));
        match result {
            Ok(()) => println!("PASS {:>2} {name} ({:.2?})", i + 1, elapsed),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({:.2?}): {why}", i + 1, elapsed);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
