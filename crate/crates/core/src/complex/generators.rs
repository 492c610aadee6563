//! Named fixture complexes. Every generator validates its output before
//! returning it; a validation failure is a construction bug.

use std::collections::BTreeSet;

use thiserror::Error;

use super::{Face, SimplicialComplex, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("unknown generator {0:?}")]
    UnknownName(String),
    #[error("bad parameters for {name}: {reason}")]
    BadParameters { name: String, reason: String },
    #[error("generated {name} failed validation: {reason}")]
    Validation { name: String, reason: String },
}

fn invalid(name: &str, reason: impl Into<String>) -> GeneratorError {
    GeneratorError::Validation { name: name.to_string(), reason: reason.into() }
}

fn from_ids(facets: &[Vec<usize>]) -> SimplicialComplex {
    SimplicialComplex::from_facets(facets.iter().map(|f| f.iter().map(|v| v + 1)))
        .expect("generator facets are well formed")
}

/// `∂Δ^d`: all `d`-subsets of `d + 1` vertices, a `(d-1)`-sphere.
pub fn boundary_simplex(d: usize) -> Result<SimplicialComplex, GeneratorError> {
    if d == 0 {
        return Err(GeneratorError::BadParameters {
            name: "boundary_simplex".into(),
            reason: "d must be at least 1".into(),
        });
    }
    let full = Face::from_sorted((0..=d).collect());
    let facets: Vec<Vec<usize>> = full.subfaces(d).into_iter().map(|f| f.0).collect();
    let c = from_ids(&facets);
    if c.vertex_count() != d + 1 || c.facets().len() != d + 1 || c.dim() != d - 1 {
        return Err(invalid("boundary_simplex", "unexpected face counts"));
    }
    if d >= 2 && !c.is_closed_pseudomanifold() {
        return Err(invalid("boundary_simplex", "not closed"));
    }
    Ok(c)
}

/// Boundary of the `(d+1)`-dimensional cross-polytope, a `d`-sphere on
/// `2d + 2` vertices. Labels `2i+1` and `2i+2` are antipodal.
pub fn cross_polytope(d: usize) -> Result<SimplicialComplex, GeneratorError> {
    if d == 0 || d > 12 {
        return Err(GeneratorError::BadParameters {
            name: "cross_polytope".into(),
            reason: "d must be between 1 and 12".into(),
        });
    }
    let pairs = d + 1;
    let facets: Vec<Vec<usize>> = (0..1usize << pairs)
        .map(|mask| (0..pairs).map(|i| 2 * i + ((mask >> i) & 1)).collect())
        .collect();
    let c = from_ids(&facets);
    let f = c.f_vector();
    if c.vertex_count() != 2 * pairs || f.0[d] != 1 << pairs || !c.is_closed_pseudomanifold() {
        return Err(invalid("cross_polytope", "unexpected face counts"));
    }
    let chi = if d % 2 == 0 { 2 } else { 0 };
    if c.euler_characteristic() != chi {
        return Err(invalid("cross_polytope", "wrong Euler characteristic"));
    }
    Ok(c)
}

// top 0, upper ring 1..=5, lower ring 6..=10 (lower i sits between upper i
// and upper i+1), bottom 11.
fn icosahedron_facets() -> Vec<Vec<usize>> {
    let up = |i: usize| 1 + i % 5;
    let low = |i: usize| 6 + i % 5;
    let mut facets = Vec::new();
    for i in 0..5 {
        facets.push(vec![0, up(i), up(i + 1)]);
        facets.push(vec![up(i), up(i + 1), low(i)]);
        facets.push(vec![low(i), low(i + 1), up(i + 1)]);
        facets.push(vec![11, low(i), low(i + 1)]);
    }
    facets
}

/// Antipodal map of the icosahedron labelling above.
fn icosahedron_antipode(v: usize) -> usize {
    match v {
        0 => 11,
        11 => 0,
        1..=5 => 6 + (v - 1 + 2) % 5,
        _ => 1 + (v - 6 + 3) % 5,
    }
}

/// The boundary of the icosahedron, `I²₁₂`.
pub fn icosahedron() -> Result<SimplicialComplex, GeneratorError> {
    let c = from_ids(&icosahedron_facets());
    if c.f_vector().0 != vec![12, 30, 20] {
        return Err(invalid("icosahedron", format!("f-vector {:?}", c.f_vector().0)));
    }
    validate_two_sphere(&c).map_err(|r| invalid("icosahedron", r))?;
    for v in 0..12 {
        if c.link(v).expect("vertex exists").facets().len() != 5 {
            return Err(invalid("icosahedron", "vertex link is not a 5-cycle"));
        }
    }
    Ok(c)
}

/// Möbius' 7-vertex torus: orbits of `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn moebius_torus7() -> Result<SimplicialComplex, GeneratorError> {
    let facets: Vec<Vec<usize>> = (0..7)
        .flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]])
        .collect();
    let c = from_ids(&facets);
    if c.f_vector().0 != vec![7, 21, 14] {
        return Err(invalid("moebius_torus7", format!("f-vector {:?}", c.f_vector().0)));
    }
    if !is_closed_surface(&c) || !c.is_k_neighbourly(2) || c.euler_characteristic() != 0 {
        return Err(invalid("moebius_torus7", "not a 2-neighbourly torus"));
    }
    Ok(c)
}

/// The 6-vertex real projective plane, the antipodal quotient of the icosahedron.
pub fn rp2_6() -> Result<SimplicialComplex, GeneratorError> {
    let class = |v: usize| v.min(icosahedron_antipode(v));
    let mut reps: BTreeSet<usize> = BTreeSet::new();
    let mut facets = BTreeSet::new();
    for f in icosahedron_facets() {
        let mut g: Vec<usize> = f.iter().map(|&v| class(v)).collect();
        g.sort_unstable();
        reps.extend(g.iter().copied());
        facets.insert(g);
    }
    let reps: Vec<usize> = reps.into_iter().collect();
    let facets: Vec<Vec<usize>> = facets
        .into_iter()
        .map(|f| f.iter().map(|v| reps.binary_search(v).unwrap()).collect())
        .collect();
    let c = from_ids(&facets);
    if c.f_vector().0 != vec![6, 15, 10] {
        return Err(invalid("rp2_6", format!("f-vector {:?}", c.f_vector().0)));
    }
    if !is_closed_surface(&c) || c.euler_characteristic() != 1 {
        return Err(invalid("rp2_6", "not a closed surface with Euler characteristic 1"));
    }
    Ok(c)
}

/// Closed connected surface: every edge in two triangles, every vertex link a
/// single cycle.
pub(crate) fn is_closed_surface(c: &SimplicialComplex) -> bool {
    if c.dim() != 2 || !c.is_closed_pseudomanifold() || !c.is_connected() {
        return false;
    }
    (0..c.vertex_count()).all(|v| {
        let l = c.link(v).expect("vertex exists");
        let g = l.one_skeleton();
        l.dim() == 1 && l.is_pure() && (0..g.vertex_count()).all(|w| g.degree(w) == 2) && g.is_connected()
    })
}

/// Checks that `c` is a triangulated 2-sphere.
pub fn validate_two_sphere(c: &SimplicialComplex) -> Result<(), String> {
    if !is_closed_surface(c) {
        return Err("not a closed connected surface".into());
    }
    if c.euler_characteristic() != 2 {
        return Err(format!("Euler characteristic {}", c.euler_characteristic()));
    }
    Ok(())
}

/// Glues two 2-dimensional complexes: removes triangle `ta` from `a` and `tb`
/// from `b` and identifies `tb[i]` with `ta[(i + rotation) % 3]`. The other
/// vertices of `b` become new vertices. The result is labelled `1..n`, with
/// the vertices of `a` first, in their original order.
pub fn glue_triangles(
    a: &SimplicialComplex,
    ta: &Face,
    b: &SimplicialComplex,
    tb: &Face,
    rotation: usize,
) -> Result<SimplicialComplex, GeneratorError> {
    let (na, fa) = (a.vertex_count(), ids(a));
    let fb = ids(b);
    let (n, facets) = glue_ids(na, &fa, ta.vertices(), b.vertex_count(), &fb, tb.vertices(), rotation)
        .map_err(|r| GeneratorError::BadParameters { name: "glue_triangles".into(), reason: r })?;
    debug_assert!(facets.iter().flatten().all(|&v| v < n));
    Ok(from_ids(&facets))
}

fn ids(c: &SimplicialComplex) -> Vec<Vec<usize>> {
    c.facets().iter().map(|f| f.vertices().to_vec()).collect()
}

fn glue_ids(
    na: usize,
    fa: &[Vec<usize>],
    ta: &[VertexId],
    nb: usize,
    fb: &[Vec<usize>],
    tb: &[VertexId],
    rotation: usize,
) -> Result<(usize, Vec<Vec<usize>>), String> {
    if ta.len() != 3 || tb.len() != 3 {
        return Err("gluing faces must be triangles".into());
    }
    if !fa.iter().any(|f| f == ta) || !fb.iter().any(|f| f == tb) {
        return Err("gluing triangle is not a facet".into());
    }
    let mut map = vec![usize::MAX; nb];
    for i in 0..3 {
        map[tb[i]] = ta[(i + rotation) % 3];
    }
    let mut next = na;
    for m in map.iter_mut() {
        if *m == usize::MAX {
            *m = next;
            next += 1;
        }
    }
    let mut facets: Vec<Vec<usize>> = fa.iter().filter(|f| f.as_slice() != ta).cloned().collect();
    for f in fb.iter().filter(|f| f.as_slice() != tb) {
        let mut g: Vec<usize> = f.iter().map(|&v| map[v]).collect();
        g.sort_unstable();
        facets.push(g);
    }
    Ok((next, facets))
}

/// `k I²₁₂ # l S²₄` with the gluing trios identified in label order.
pub fn connected_sum(k: usize, l: usize) -> Result<SimplicialComplex, GeneratorError> {
    connected_sum_with_rotation(k, l, 0)
}

/// Like [`connected_sum`], but every gluing identifies the trios through a
/// cyclic shift by `rotation`. The result is a different labelled complex
/// with the same `σ₀`.
///
/// Summands are the `k` icosahedra followed by the `l` tetrahedra. Each new
/// summand loses its first facet, and the sum built so far loses its
/// lexicographically last facet.
pub fn connected_sum_with_rotation(k: usize, l: usize, rotation: usize) -> Result<SimplicialComplex, GeneratorError> {
    if k == 0 && l == 0 {
        return Err(GeneratorError::BadParameters {
            name: "connected_sum".into(),
            reason: "need at least one summand".into(),
        });
    }
    let ico = icosahedron()?;
    let tet = boundary_simplex(3)?;
    let summands: Vec<&SimplicialComplex> = std::iter::repeat(&ico).take(k).chain(std::iter::repeat(&tet).take(l)).collect();
    let mut n = summands[0].vertex_count();
    let mut facets = ids(summands[0]);
    let mut trios = Vec::new();
    for s in &summands[1..] {
        facets.sort();
        let ta = facets.last().expect("non-empty").clone();
        let fb = ids(s);
        let tb = fb[0].clone();
        let (m, glued) = glue_ids(n, &facets, &ta, s.vertex_count(), &fb, &tb, rotation)
            .map_err(|r| invalid("connected_sum", r))?;
        trios.push(ta);
        n = m;
        facets = glued;
    }
    let c = from_ids(&facets);
    let name = "connected_sum";
    validate_two_sphere(&c).map_err(|r| invalid(name, r))?;
    if c.vertex_count() != 9 * k + l + 3 {
        return Err(invalid(name, format!("{} vertices", c.vertex_count())));
    }
    for trio in trios {
        let t = Face::from_sorted(trio);
        let spans_cycle = t.subfaces(2).iter().all(|e| c.contains_face(e));
        if !spans_cycle || c.contains_face(&t) {
            return Err(invalid(name, "gluing trio is not an induced empty 3-cycle"));
        }
    }
    Ok(c)
}

/// Generator names accepted on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fixture {
    BoundarySimplex(usize),
    CrossPolytope(usize),
    Icosahedron,
    MoebiusTorus7,
    Rp2_6,
    ConnectedSum(usize, usize),
}

impl Fixture {
    pub fn parse(name: &str, params: &[String]) -> Result<Self, GeneratorError> {
        let nums = params
            .iter()
            .map(|p| p.parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| GeneratorError::BadParameters { name: name.into(), reason: e.to_string() })?;
        let arity = |want: usize| {
            if nums.len() == want {
                Ok(())
            } else {
                Err(GeneratorError::BadParameters {
                    name: name.into(),
                    reason: format!("expected {want} parameter(s), got {}", nums.len()),
                })
            }
        };
        Ok(match name {
            "boundary_simplex" => {
                arity(1)?;
                Fixture::BoundarySimplex(nums[0])
            }
            "cross_polytope" => {
                arity(1)?;
                Fixture::CrossPolytope(nums[0])
            }
            "icosahedron" => {
                arity(0)?;
                Fixture::Icosahedron
            }
            "moebius_torus7" => {
                arity(0)?;
                Fixture::MoebiusTorus7
            }
            "rp2_6" => {
                arity(0)?;
                Fixture::Rp2_6
            }
            "connected_sum" => {
                arity(2)?;
                Fixture::ConnectedSum(nums[0], nums[1])
            }
            other => return Err(GeneratorError::UnknownName(other.to_string())),
        })
    }

    pub fn build(&self) -> Result<SimplicialComplex, GeneratorError> {
        match *self {
            Fixture::BoundarySimplex(d) => boundary_simplex(d),
            Fixture::CrossPolytope(d) => cross_polytope(d),
            Fixture::Icosahedron => icosahedron(),
            Fixture::MoebiusTorus7 => moebius_torus7(),
            Fixture::Rp2_6 => rp2_6(),
            Fixture::ConnectedSum(k, l) => connected_sum(k, l),
        }
    }
}
