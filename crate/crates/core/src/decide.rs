//! Decision pipelines and the dispatcher.
//!
//! * [`decide_tight_3`]: combinatorial 3-manifolds in polynomial time. After
//!   cheap counting gates every vertex link is cut along its induced empty
//!   3-cycles into primitive pieces, `σ₀` of each link follows from a closed
//!   formula in the numbers of icosahedra and tetrahedra, and the resulting
//!   `μ₁` is compared with `β₁`.
//! * [`decide_tight_4`]: 4-manifolds, with `σ₀` of each link skeleton from
//!   the treewidth dynamic program.
//! * [`decide_auto`]: picks a method, falling back to the `F₂` dynamic
//!   program and to brute force where they apply.
//!
//! Vertex links of 4-manifold inputs are only partially verified: each must
//! be a closed 3-manifold with the integral homology of `S³`. Whether it is
//! a PL sphere is taken on trust and the report says so.

use std::fmt::{self, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::complex::{binomial, icosahedron, validate_two_sphere, Face, Graph, SimplicialComplex, VertexId};
use crate::homology::{beta1_max, betti_from_integral, integral_homology, orientable, FieldSpec};
use crate::oracle::{brute_force_bound, is_tight_bruteforce, mu0, BruteForceVerdict};
use crate::sigma_fpt::sigma0_of_graph;
use crate::tight_fpt::{decide_tight_f2, PassStats, TightFptError};
use crate::treewidth::Strategy;
use crate::{format_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecideError {
    #[error("not a 2-sphere: {0}")]
    NotTwoSphere(String),
    #[error("the formula needs at least one summand")]
    NoSummands,
    #[error("not an induced empty 3-cycle")]
    NotAnEmptyTriangle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Tight,
    NotTight,
    NotApplicable,
}

impl Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Tight => "tight",
            Verdict::NotTight => "not tight",
            Verdict::NotApplicable => "not applicable",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Brute,
    Poly3,
    Fpt4,
    Fptd,
}

impl Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Brute => "brute",
            Algorithm::Poly3 => "poly3",
            Algorithm::Fpt4 => "fpt4",
            Algorithm::Fptd => "fptd",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Auto,
    Fixed(Algorithm),
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "auto" => Method::Auto,
            "brute" => Method::Fixed(Algorithm::Brute),
            "poly3" => Method::Fixed(Algorithm::Poly3),
            "fpt4" => Method::Fixed(Algorithm::Fpt4),
            "fptd" => Method::Fixed(Algorithm::Fptd),
            _ => return Err(format!("unknown method {s:?}")),
        })
    }
}

/// A fixed coefficient field, or "any field" (the 4-manifold pipeline then
/// maximises `β₁` over fields).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Fixed(FieldSpec),
    Any,
}

impl FromStr for FieldChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("any") {
            return Ok(FieldChoice::Any);
        }
        s.parse::<FieldSpec>().map(FieldChoice::Fixed).map_err(|e| e.to_string())
    }
}

impl Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::Fixed(s) => s.fmt(f),
            FieldChoice::Any => f.write_str("any"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ReasonCode {
    #[serde(rename = "NOT_2_NEIGHBOURLY")]
    Not2Neighbourly,
    NotOrientable,
    LinkNotPrimitiveForm,
    #[serde(rename = "MU1_NOT_INTEGRAL")]
    Mu1NotIntegral,
    #[serde(rename = "MU1_NE_BETA1")]
    Mu1NeBeta1,
    NotManifold,
}

impl Display for ReasonCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReasonCode::Not2Neighbourly => "NOT_2_NEIGHBOURLY",
            ReasonCode::NotOrientable => "NOT_ORIENTABLE",
            ReasonCode::LinkNotPrimitiveForm => "LINK_NOT_PRIMITIVE_FORM",
            ReasonCode::Mu1NotIntegral => "MU1_NOT_INTEGRAL",
            ReasonCode::Mu1NeBeta1 => "MU1_NE_BETA1",
            ReasonCode::NotManifold => "NOT_MANIFOLD",
        })
    }
}

impl ReasonCode {
    /// `NOT_MANIFOLD` means the pipeline does not apply; everything else is a
    /// decided non-tightness.
    pub fn verdict(self) -> Verdict {
        match self {
            ReasonCode::NotManifold => Verdict::NotApplicable,
            _ => Verdict::NotTight,
        }
    }
}

/// Why the verdict holds. Vertex sets and faces use the input labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// A `k`-cycle of `C[W]` that bounds in `C` but not in `C[W]`.
    Witness { w: Vec<String>, k: usize, cycle: Vec<(Vec<String>, String)> },
    /// Obstruction found by the `F₂` dynamic program.
    Obstruction { j: usize, node: Option<usize>, node_kind: String, event: String, w: Vec<String>, cycle: Vec<Vec<String>> },
    Reason { code: ReasonCode, detail: String },
    MuEqualsBeta { mu1: String, beta1: usize, field: FieldSpec },
    /// Every vertex subset was checked.
    Exhaustive { subsets: u64 },
    /// Every degree pass of the `F₂` dynamic program found no deficit.
    DpPasses { passes: Vec<PassStats> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkSummary {
    pub vertex: String,
    pub k: usize,
    pub l: usize,
    pub other: usize,
    #[serde(serialize_with = "ser_rational")]
    pub sigma0: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TightnessReport {
    pub verdict: Verdict,
    pub algorithm: Option<Algorithm>,
    pub field: String,
    #[serde(serialize_with = "ser_opt_rational")]
    pub mu1: Option<Rational>,
    pub beta1: Option<usize>,
    pub certificate: Option<Certificate>,
    /// `"full"`, `"verified-assuming-PL-links"` or `"trusted"`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<&'static str>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub links: Vec<LinkSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<Verdict>,
}

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

fn ser_opt_rational<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => ser_rational(r, s),
        None => s.serialize_none(),
    }
}

impl TightnessReport {
    fn new(verdict: Verdict, algorithm: Option<Algorithm>, field: impl Display) -> Self {
        TightnessReport {
            verdict,
            algorithm,
            field: field.to_string(),
            mu1: None,
            beta1: None,
            certificate: None,
            verification: None,
            links: Vec::new(),
            note: None,
            cross_check: None,
        }
    }

    fn reason(algorithm: Algorithm, field: impl Display, code: ReasonCode, detail: impl Into<String>) -> Self {
        let mut r = TightnessReport::new(code.verdict(), Some(algorithm), field);
        r.certificate = Some(Certificate::Reason { code, detail: detail.into() });
        r
    }

    fn not_applicable(algorithm: Option<Algorithm>, field: impl Display, note: impl Into<String>) -> Self {
        let mut r = TightnessReport::new(Verdict::NotApplicable, algorithm, field);
        r.note = Some(note.into());
        r
    }

    pub fn reason_code(&self) -> Option<ReasonCode> {
        match &self.certificate {
            Some(Certificate::Reason { code, .. }) => Some(*code),
            _ => None,
        }
    }

    pub fn is_tight(&self) -> bool {
        self.verdict == Verdict::Tight
    }
}

fn labels(m: &SimplicialComplex, vs: impl IntoIterator<Item = VertexId>) -> Vec<String> {
    vs.into_iter().map(|v| m.label(v).to_string()).collect()
}

/// The counting, link and orientability checks for a 2-neighbourly closed
/// combinatorial 3-manifold, in order. Orientability is checked only in odd
/// characteristic.
pub fn verify_2n_closed_3manifold(m: &SimplicialComplex, field: FieldSpec) -> Result<(), (ReasonCode, String)> {
    if m.is_empty() || m.dim() != 3 || !m.is_pure() {
        return Err((ReasonCode::NotManifold, "not a pure 3-dimensional complex".into()));
    }
    let n = m.vertex_count();
    let pairs = binomial(n, 2).expect("small") as usize;
    let (edges, tets) = (m.faces(1).len(), m.faces(3).len());
    if edges != pairs {
        return Err((ReasonCode::Not2Neighbourly, format!("{edges} edges, expected {pairs}")));
    }
    if tets + n != pairs {
        return Err((ReasonCode::NotManifold, format!("{tets} tetrahedra, expected {}", pairs - n)));
    }
    match m.ridge_incidence() {
        Ok(inc) => {
            if let Some((t, f)) = inc.iter().find(|(_, f)| f.len() != 2) {
                let t = m.face_labels(t).join(" ");
                return Err((ReasonCode::NotManifold, format!("triangle {t} lies in {} tetrahedra", f.len())));
            }
        }
        Err(e) => return Err((ReasonCode::NotManifold, e.to_string())),
    }
    for v in 0..n {
        let lk = m.link(v).expect("vertex in range");
        let tri = lk.faces(2).len();
        if lk.vertex_count() != n - 1 || tri != 2 * n - 6 {
            return Err((
                ReasonCode::NotManifold,
                format!("link of {} has {} vertices and {tri} triangles", m.label(v), lk.vertex_count()),
            ));
        }
        if let Err(e) = validate_two_sphere(&lk) {
            return Err((ReasonCode::NotManifold, format!("link of {}: {e}", m.label(v))));
        }
    }
    let p = field.characteristic();
    if p != 2 && !orientable(m, p).expect("closed and connected") {
        return Err((ReasonCode::NotOrientable, format!("not orientable over {field}")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ComponentClass {
    S4,
    I12,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDecomposition {
    pub components: Vec<SimplicialComplex>,
    pub k: usize,
    pub l: usize,
    pub other: usize,
}

type Tri = [VertexId; 3];

fn empty_triangles(tris: &[Tri]) -> Vec<Tri> {
    let mut verts: Vec<VertexId> = tris.iter().flatten().copied().collect();
    verts.sort_unstable();
    verts.dedup();
    let edge = |a: VertexId, b: VertexId| tris.iter().any(|t| t.contains(&a) && t.contains(&b));
    let face = |t: &Tri| tris.contains(t);
    let mut out = Vec::new();
    for (i, &a) in verts.iter().enumerate() {
        for (j, &b) in verts.iter().enumerate().skip(i + 1) {
            if !edge(a, b) {
                continue;
            }
            for &c in &verts[j + 1..] {
                let t = [a, b, c];
                if edge(a, c) && edge(b, c) && !face(&t) {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// Induced empty 3-cycles of a 2-dimensional complex, in lexicographic
/// order.
pub fn induced_empty_triangles(s: &SimplicialComplex) -> Vec<[VertexId; 3]> {
    empty_triangles(&triangles(s))
}

fn triangles(s: &SimplicialComplex) -> Vec<Tri> {
    s.faces(2).iter().map(|f| [f.vertices()[0], f.vertices()[1], f.vertices()[2]]).collect()
}

/// Cuts a 2-sphere along the induced empty 3-cycle `t` and caps both discs
/// with `t`. Labels are inherited.
pub fn cut_sphere(s: &SimplicialComplex, t: [VertexId; 3]) -> Result<(SimplicialComplex, SimplicialComplex), DecideError> {
    validate_two_sphere(s).map_err(DecideError::NotTwoSphere)?;
    let tris = triangles(s);
    if !empty_triangles(&tris).contains(&t) {
        return Err(DecideError::NotAnEmptyTriangle);
    }
    let (a, b) = cut(&tris, t);
    Ok((relabelled(s, &a), relabelled(s, &b)))
}

fn relabelled(s: &SimplicialComplex, tris: &[Tri]) -> SimplicialComplex {
    SimplicialComplex::from_facets(tris.iter().map(|t| t.iter().map(|&v| s.label(v).to_string()).collect::<Vec<_>>()))
        .expect("non-empty piece")
}

/// The two discs bounded by the cycle `t`, each capped by `t`.
fn cut(tris: &[Tri], t: Tri) -> (Vec<Tri>, Vec<Tri>) {
    let on_cycle = |a: VertexId, b: VertexId| t.contains(&a) && t.contains(&b);
    let shares_free_edge = |x: &Tri, y: &Tri| {
        let common: Vec<VertexId> = x.iter().copied().filter(|v| y.contains(v)).collect();
        common.len() == 2 && !on_cycle(common[0], common[1])
    };
    let mut side = vec![false; tris.len()];
    side[0] = true;
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..tris.len() {
            if !side[j] && shares_free_edge(&tris[i], &tris[j]) {
                side[j] = true;
                stack.push(j);
            }
        }
    }
    let mut a: Vec<Tri> = tris.iter().zip(&side).filter(|(_, &s)| s).map(|(x, _)| *x).collect();
    let mut b: Vec<Tri> = tris.iter().zip(&side).filter(|(_, &s)| !s).map(|(x, _)| *x).collect();
    a.push(t);
    b.push(t);
    (a, b)
}

/// Cuts a 2-sphere along induced empty 3-cycles until every piece is
/// primitive, taking the first candidate cycle (lexicographically) each time.
pub fn split_link(s: &SimplicialComplex) -> Result<LinkDecomposition, DecideError> {
    split_link_with(s, |_| 0)
}

/// Like [`split_link`]; `choose(count)` picks which of the `count` candidate
/// cycles of the current piece to cut along.
pub fn split_link_with(
    s: &SimplicialComplex,
    mut choose: impl FnMut(usize) -> usize,
) -> Result<LinkDecomposition, DecideError> {
    validate_two_sphere(s).map_err(DecideError::NotTwoSphere)?;
    let mut pending = vec![triangles(s)];
    let mut pieces = Vec::new();
    while let Some(tris) = pending.pop() {
        let cycles = empty_triangles(&tris);
        if cycles.is_empty() {
            pieces.push(tris);
            continue;
        }
        let t = cycles[choose(cycles.len()) % cycles.len()];
        let (a, b) = cut(&tris, t);
        pending.push(b);
        pending.push(a);
    }
    let components: Vec<SimplicialComplex> = pieces.iter().map(|tris| relabelled(s, tris)).collect();
    let (mut k, mut l, mut other) = (0, 0, 0);
    for c in &components {
        match classify_component(c) {
            ComponentClass::S4 => l += 1,
            ComponentClass::I12 => k += 1,
            ComponentClass::Other => other += 1,
        }
    }
    Ok(LinkDecomposition { components, k, l, other })
}

/// Graph isomorphism by backtracking over a breadth-first order of `g`.
pub fn isomorphic(g: &Graph, h: &Graph) -> bool {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut dg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return false;
    }
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        order.push(s);
        let mut i = order.len() - 1;
        while i < order.len() {
            for &u in g.neighbours(order[i]) {
                if !seen[u] {
                    seen[u] = true;
                    order.push(u);
                }
            }
            i += 1;
        }
    }
    fn extend(g: &Graph, h: &Graph, order: &[usize], map: &mut [usize], used: &mut [bool], i: usize) -> bool {
        let Some(&v) = order.get(i) else { return true };
        for c in 0..h.vertex_count() {
            if used[c] || h.degree(c) != g.degree(v) {
                continue;
            }
            if order[..i].iter().any(|&u| g.has_edge(v, u) != h.has_edge(c, map[u])) {
                continue;
            }
            map[v] = c;
            used[c] = true;
            if extend(g, h, order, map, used, i + 1) {
                return true;
            }
            used[c] = false;
        }
        false
    }
    extend(g, h, &order, &mut vec![usize::MAX; n], &mut vec![false; n], 0)
}

/// `S4` for the tetrahedron boundary, `I12` for a complex whose 1-skeleton is
/// the icosahedral graph, `Other` otherwise.
pub fn classify_component(p: &SimplicialComplex) -> ComponentClass {
    let g = p.one_skeleton();
    match g.vertex_count() {
        4 if g.edge_count() == 6 => ComponentClass::S4,
        12 if g.edge_count() == 30 && (0..12).all(|v| g.degree(v) == 5) => {
            let ico = icosahedron().expect("generator").one_skeleton();
            if isomorphic(&g, &ico) {
                ComponentClass::I12
            } else {
                ComponentClass::Other
            }
        }
        _ => ComponentClass::Other,
    }
}

/// Leading factor of the closed `σ₀` formula.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Prefactor {
    /// `9k + l + 3`, the number of vertices of the link.
    Printed,
    /// `9k + l + 4`, one more than the number of vertices.
    #[default]
    Corrected,
}

impl Prefactor {
    pub fn value(self, k: usize, l: usize) -> usize {
        9 * k + l + if self == Prefactor::Printed { 3 } else { 4 }
    }
}

/// `σ₀` of `k I²₁₂ # l S²₄`: `P · (617k/1716 + l/20 − 1/4)`.
pub fn sigma0_tight3_formula(k: usize, l: usize, prefactor: Prefactor) -> Result<Rational, DecideError> {
    if k == 0 && l == 0 {
        return Err(DecideError::NoSummands);
    }
    let q = |n: i64, d: i64| Rational::new(BigInt::from(n), BigInt::from(d));
    let inner = q(617, 1716) * BigInt::from(k) + q(1, 20) * BigInt::from(l) - q(1, 4);
    Ok(inner * BigInt::from(prefactor.value(k, l)))
}

fn as_integer(r: &Rational) -> Option<usize> {
    if r.is_integer() {
        usize::try_from(r.to_integer()).ok()
    } else {
        None
    }
}

fn beta1(m: &SimplicialComplex, field: FieldChoice) -> (usize, FieldSpec) {
    match field {
        FieldChoice::Fixed(f) => {
            let h0 = integral_homology(m, 0);
            (betti_from_integral(&integral_homology(m, 1), Some(&h0), f), f)
        }
        FieldChoice::Any => beta1_max(m).expect("closed and connected"),
    }
}

/// Compares an already assembled `μ₁` with `β₁` and fills in the verdict.
fn settle(mut report: TightnessReport, m: &SimplicialComplex, mu1: Rational, field: FieldChoice) -> TightnessReport {
    report.mu1 = Some(mu1.clone());
    let Some(int) = as_integer(&mu1) else {
        report.verdict = Verdict::NotTight;
        report.certificate = Some(Certificate::Reason {
            code: ReasonCode::Mu1NotIntegral,
            detail: format!("mu1 = {}", format_rational(&mu1)),
        });
        return report;
    };
    let (b, f) = beta1(m, field);
    report.beta1 = Some(b);
    if field == FieldChoice::Any {
        report.field = f.to_string();
    }
    if int == b {
        report.verdict = Verdict::Tight;
        report.certificate = Some(Certificate::MuEqualsBeta { mu1: format_rational(&mu1), beta1: b, field: f });
    } else {
        report.verdict = Verdict::NotTight;
        report.certificate =
            Some(Certificate::Reason { code: ReasonCode::Mu1NeBeta1, detail: format!("mu1 = {int}, beta1 = {b} over {f}") });
    }
    report
}

/// The polynomial-time procedure for combinatorial 3-manifolds.
pub fn decide_tight_3(m: &SimplicialComplex, field: FieldChoice) -> TightnessReport {
    let check_field = match field {
        FieldChoice::Fixed(f) => f,
        FieldChoice::Any => FieldSpec::F2,
    };
    if let Err((code, detail)) = verify_2n_closed_3manifold(m, check_field) {
        return TightnessReport::reason(Algorithm::Poly3, field, code, detail);
    }
    let n = m.vertex_count();
    let mut report = TightnessReport::new(Verdict::NotTight, Some(Algorithm::Poly3), field);
    report.verification = Some("full");
    let mut sum = Rational::zero();
    let mut unclassified = None;
    for v in 0..n {
        let lk = m.link(v).expect("vertex in range");
        let dec = split_link(&lk).expect("links verified");
        let sigma0 = if dec.other == 0 {
            debug_assert_eq!(lk.vertex_count(), 9 * dec.k + dec.l + 3);
            sigma0_tight3_formula(dec.k, dec.l, Prefactor::default()).expect("non-empty link")
        } else {
            unclassified.get_or_insert(v);
            sigma0_of_graph(&lk.one_skeleton(), Strategy::MinFill).expect("non-empty graph")
        };
        sum += &sigma0 / BigInt::from(lk.vertex_count() + 1);
        report.links.push(LinkSummary { vertex: m.label(v).to_string(), k: dec.k, l: dec.l, other: dec.other, sigma0 });
    }
    let mu1 = mu0(m) + sum;
    if let Some(v) = unclassified {
        report.mu1 = Some(mu1);
        report.certificate = Some(Certificate::Reason {
            code: ReasonCode::LinkNotPrimitiveForm,
            detail: format!("link of {} has a primitive piece other than S4 or I12", m.label(v)),
        });
        return report;
    }
    settle(report, m, mu1, field)
}

/// Checks run on each vertex link of a 4-dimensional input: a closed
/// connected 3-dimensional complex whose vertex links are 2-spheres, with
/// `χ = 0` and the integral homology of `S³`.
fn check_three_sphere_link(lk: &SimplicialComplex) -> Result<(), String> {
    if lk.dim() != 3 || !lk.is_closed_pseudomanifold() || !lk.is_connected() {
        return Err("not a closed connected 3-pseudomanifold".into());
    }
    if lk.euler_characteristic() != 0 {
        return Err(format!("Euler characteristic {}", lk.euler_characteristic()));
    }
    for w in 0..lk.vertex_count() {
        validate_two_sphere(&lk.link(w).expect("vertex in range")).map_err(|e| format!("edge link: {e}"))?;
    }
    for k in 1..=2 {
        let h = integral_homology(lk, k);
        if h.rank != 0 || !h.torsion.is_empty() {
            return Err(format!("H{k} = {h}"));
        }
    }
    Ok(())
}

/// The treewidth pipeline for combinatorial 4-manifolds. With `trusted`
/// the link checks are skipped.
pub fn decide_tight_4(m: &SimplicialComplex, field: FieldChoice, trusted: bool) -> TightnessReport {
    let na = |detail: String| TightnessReport::reason(Algorithm::Fpt4, field, ReasonCode::NotManifold, detail);
    if m.is_empty() || m.dim() != 4 || !m.is_pure() {
        return na("not a pure 4-dimensional complex".into());
    }
    if !m.is_connected() {
        return TightnessReport::reason(Algorithm::Fpt4, field, ReasonCode::Not2Neighbourly, "disconnected");
    }
    if !m.is_closed_pseudomanifold() {
        return na("some tetrahedron does not lie in exactly two facets".into());
    }
    if !trusted {
        for v in 0..m.vertex_count() {
            if let Err(e) = check_three_sphere_link(&m.link(v).expect("vertex in range")) {
                return na(format!("link of {}: {e}", m.label(v)));
            }
        }
    }
    if let Some((a, b)) = first_missing_edge(m) {
        return TightnessReport::reason(
            Algorithm::Fpt4,
            field,
            ReasonCode::Not2Neighbourly,
            format!("no edge {} {}", m.label(a), m.label(b)),
        );
    }
    if let FieldChoice::Fixed(f) = field {
        let p = f.characteristic();
        if p != 2 && !orientable(m, p).expect("closed and connected") {
            return TightnessReport::reason(Algorithm::Fpt4, field, ReasonCode::NotOrientable, format!("not orientable over {f}"));
        }
    }
    let mut report = TightnessReport::new(Verdict::NotTight, Some(Algorithm::Fpt4), field);
    report.verification = Some(if trusted { "trusted" } else { "verified-assuming-PL-links" });
    let mut mu1 = mu0(m);
    for v in 0..m.vertex_count() {
        let lk = m.link(v).expect("vertex in range");
        let sigma0 = sigma0_of_graph(&lk.one_skeleton(), Strategy::MinFill).expect("non-empty graph");
        mu1 += &sigma0 / BigInt::from(lk.vertex_count() + 1);
    }
    settle(report, m, mu1, field)
}

fn first_missing_edge(m: &SimplicialComplex) -> Option<(VertexId, VertexId)> {
    let g = m.one_skeleton();
    let n = m.vertex_count();
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).find(|&(a, b)| !g.has_edge(a, b))
}

/// Exhaustive check over all vertex subsets.
pub fn decide_brute(m: &SimplicialComplex, field: FieldSpec) -> TightnessReport {
    let bound = brute_force_bound();
    match is_tight_bruteforce(m, field) {
        Err(e) => TightnessReport::not_applicable(Some(Algorithm::Brute), field, format!("{e} (bound {bound})")),
        Ok(BruteForceVerdict::Tight) => {
            let mut r = TightnessReport::new(Verdict::Tight, Some(Algorithm::Brute), field);
            r.certificate = Some(Certificate::Exhaustive { subsets: 1u64 << m.vertex_count() });
            r
        }
        Ok(BruteForceVerdict::Disconnected) => {
            TightnessReport::reason(Algorithm::Brute, field, ReasonCode::Not2Neighbourly, "disconnected")
        }
        Ok(BruteForceVerdict::NotTight(w)) => {
            let mut r = TightnessReport::new(Verdict::NotTight, Some(Algorithm::Brute), field);
            r.certificate = Some(Certificate::Witness {
                w: labels(m, w.w.iter().copied()),
                k: w.k,
                cycle: w.cycle.iter().map(|(f, c)| (m.face_labels(f), c.clone())).collect(),
            });
            r
        }
    }
}

/// The `F₂` dynamic program over the dual graph.
pub fn decide_fptd(m: &SimplicialComplex) -> TightnessReport {
    let field = FieldSpec::F2;
    match decide_tight_f2(m) {
        Ok(r) if r.tight => {
            let mut rep = TightnessReport::new(Verdict::Tight, Some(Algorithm::Fptd), field);
            rep.certificate = Some(Certificate::DpPasses { passes: r.passes });
            rep
        }
        Ok(r) => {
            let o = r.obstruction.expect("non-tight reports carry an obstruction");
            let mut rep = TightnessReport::new(Verdict::NotTight, Some(Algorithm::Fptd), field);
            let face_labels = |f: &Face| m.face_labels(f);
            rep.certificate = Some(Certificate::Obstruction {
                j: o.j,
                node: o.node,
                node_kind: o.node_kind,
                event: o.event,
                w: labels(m, o.w),
                cycle: o.cycle.faces.iter().map(face_labels).collect(),
            });
            rep
        }
        Err(TightFptError::Disconnected) => {
            TightnessReport::reason(Algorithm::Fptd, field, ReasonCode::Not2Neighbourly, "disconnected")
        }
        Err(e) => TightnessReport::reason(Algorithm::Fptd, field, ReasonCode::NotManifold, e.to_string()),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DecideOptions {
    /// Skip the link checks of the 4-manifold pipeline.
    pub trusted_links: bool,
    /// Also run brute force when the input is small enough and record its
    /// verdict in the report.
    pub cross_check: bool,
}

/// Runs `method`, or picks one: `poly3` in dimension 3, `fpt4` in dimension
/// 4, then `fptd` over `F₂`, then brute force within its bound. A method
/// forced onto an input it does not handle yields `not_applicable`.
pub fn decide_auto(m: &SimplicialComplex, field: FieldChoice, method: Method) -> TightnessReport {
    decide_auto_with(m, field, method, DecideOptions::default())
}

pub fn decide_auto_with(m: &SimplicialComplex, field: FieldChoice, method: Method, opts: DecideOptions) -> TightnessReport {
    let mut report = match method {
        Method::Fixed(a) => run(m, field, a, opts),
        Method::Auto => {
            let mut plan = Vec::new();
            if !m.is_empty() && m.dim() == 3 {
                plan.push(Algorithm::Poly3);
            }
            if !m.is_empty() && m.dim() == 4 {
                plan.push(Algorithm::Fpt4);
            }
            plan.extend([Algorithm::Fptd, Algorithm::Brute]);
            let mut tried = plan.into_iter().map(|a| run(m, field, a, opts));
            let first = tried.next().expect("plan is non-empty");
            if first.verdict == Verdict::NotApplicable {
                tried.find(|r| r.verdict != Verdict::NotApplicable).unwrap_or(first)
            } else {
                first
            }
        }
    };
    if opts.cross_check && m.vertex_count() <= brute_force_bound() && report.algorithm != Some(Algorithm::Brute) {
        if let (FieldChoice::Fixed(f), Verdict::Tight | Verdict::NotTight) = (field, report.verdict) {
            report.cross_check = Some(decide_brute(m, f).verdict);
        }
    }
    report
}

fn run(m: &SimplicialComplex, field: FieldChoice, a: Algorithm, opts: DecideOptions) -> TightnessReport {
    if m.is_empty() {
        return TightnessReport::not_applicable(Some(a), field, "empty complex");
    }
    match a {
        Algorithm::Poly3 if m.dim() != 3 => {
            TightnessReport::not_applicable(Some(a), field, format!("poly3 needs a 3-dimensional complex, got dimension {}", m.dim()))
        }
        Algorithm::Poly3 => decide_tight_3(m, field),
        Algorithm::Fpt4 if m.dim() != 4 => {
            TightnessReport::not_applicable(Some(a), field, format!("fpt4 needs a 4-dimensional complex, got dimension {}", m.dim()))
        }
        Algorithm::Fpt4 => decide_tight_4(m, field, opts.trusted_links),
        Algorithm::Fptd => match field {
            FieldChoice::Fixed(f) if f == FieldSpec::F2 => decide_fptd(m),
            _ => TightnessReport::not_applicable(Some(a), field, "fptd decides tightness over F2 only"),
        },
        Algorithm::Brute => match field {
            FieldChoice::Fixed(f) => decide_brute(m, f),
            FieldChoice::Any => TightnessReport::not_applicable(Some(a), field, "brute force needs a fixed field"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{boundary_simplex, connected_sum, connected_sum_with_rotation, cross_polytope, moebius_torus7};
    use crate::oracle::sigma0_bruteforce;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn f2() -> FieldChoice {
        FieldChoice::Fixed(FieldSpec::F2)
    }

    #[test]
    fn formula_values() {
        let c = Prefactor::Corrected;
        assert_eq!(sigma0_tight3_formula(0, 1, c).unwrap(), q(-1, 1));
        assert_eq!(sigma0_tight3_formula(0, 2, c).unwrap(), q(-9, 10));
        assert_eq!(sigma0_tight3_formula(1, 0, c).unwrap(), q(47, 33));
        assert_eq!(sigma0_tight3_formula(1, 1, c).unwrap(), q(9583, 4290));
        assert_eq!(sigma0_tight3_formula(0, 0, c), Err(DecideError::NoSummands));
        assert_ne!(sigma0_tight3_formula(0, 1, Prefactor::Printed).unwrap(), q(-1, 1));
    }

    #[test]
    fn splitting() {
        let s4 = boundary_simplex(3).unwrap();
        let d = split_link(&s4).unwrap();
        assert_eq!((d.k, d.l, d.other, d.components.len()), (0, 1, 0, 1));
        let d = split_link(&connected_sum(0, 2).unwrap()).unwrap();
        assert_eq!((d.k, d.l, d.other), (0, 2, 0));
        assert!(d.components.iter().all(|c| c.one_skeleton().edge_count() == 6));
        let d = split_link(&icosahedron().unwrap()).unwrap();
        assert_eq!((d.k, d.l, d.other), (1, 0, 0));
        let d = split_link(&connected_sum_with_rotation(2, 3, 1).unwrap()).unwrap();
        assert_eq!((d.k, d.l, d.other), (2, 3, 0));
        let oct = split_link(&cross_polytope(2).unwrap()).unwrap();
        assert_eq!((oct.k, oct.l, oct.other), (0, 0, 1));
        assert!(split_link(&moebius_torus7().unwrap()).is_err());
        let bipyramid = connected_sum(0, 2).unwrap();
        let t = induced_empty_triangles(&bipyramid);
        assert_eq!(t.len(), 1);
        let (a, b) = cut_sphere(&bipyramid, t[0]).unwrap();
        assert_eq!((a.f_vector().0, b.f_vector().0), (vec![4, 6, 4], vec![4, 6, 4]));
        assert_eq!(cut_sphere(&bipyramid, [0, 1, 2]), Err(DecideError::NotAnEmptyTriangle));
    }

    #[test]
    fn isomorphism() {
        let ico = icosahedron().unwrap().one_skeleton();
        let perm: Vec<usize> = (0..12).map(|v| (v * 5) % 12).collect();
        let shuffled = Graph::from_edges(12, ico.edges().into_iter().map(|(a, b)| (perm[a], perm[b])));
        assert!(isomorphic(&ico, &shuffled));
        let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6)));
        let two_triangles = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert!(!isomorphic(&c6, &two_triangles));
    }

    #[test]
    fn boundary_of_four_simplex() {
        let m = boundary_simplex(4).unwrap();
        assert_eq!(verify_2n_closed_3manifold(&m, FieldSpec::Rationals), Ok(()));
        for f in [FieldSpec::Rationals, FieldSpec::F2, FieldSpec::prime(3).unwrap()] {
            let r = decide_tight_3(&m, FieldChoice::Fixed(f));
            assert!(r.is_tight(), "{r:?}");
            assert_eq!(r.mu1, Some(Rational::zero()));
            assert_eq!(r.beta1, Some(0));
        }
    }

    #[test]
    fn poly3_rejections() {
        let r = decide_tight_3(&cross_polytope(3).unwrap(), f2());
        assert_eq!(r.reason_code(), Some(ReasonCode::Not2Neighbourly));
        assert_eq!(r.verdict, Verdict::NotTight);
        let mut facets: Vec<Vec<usize>> = boundary_simplex(4).unwrap().facets().iter().map(|f| f.vertices().to_vec()).collect();
        let cone = facets.remove(0);
        for i in 0..4 {
            let mut g: Vec<usize> = cone.iter().copied().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v).collect();
            g.push(5);
            facets.push(g);
        }
        let sub = SimplicialComplex::from_facets(facets).unwrap();
        assert_eq!(decide_tight_3(&sub, f2()).reason_code(), Some(ReasonCode::Not2Neighbourly));
        let mut book: Vec<Vec<usize>> = boundary_simplex(4).unwrap().facets().iter().map(|f| f.vertices().to_vec()).collect();
        book.extend([vec![0, 1, 2, 5], vec![0, 3, 4, 5]]);
        let r = decide_tight_3(&SimplicialComplex::from_facets(book).unwrap(), f2());
        assert_eq!(r.verdict, Verdict::NotApplicable);
        assert_eq!(r.reason_code(), Some(ReasonCode::NotManifold));
    }

    #[test]
    fn four_dimensional() {
        let r = decide_tight_4(&boundary_simplex(5).unwrap(), FieldChoice::Any, false);
        assert!(r.is_tight(), "{r:?}");
        assert_eq!(r.mu1, Some(Rational::zero()));
        assert_eq!(r.verification, Some("verified-assuming-PL-links"));
        let r = decide_tight_4(&cross_polytope(4).unwrap(), FieldChoice::Any, false);
        assert_eq!(r.reason_code(), Some(ReasonCode::Not2Neighbourly));
        let r = decide_tight_4(&boundary_simplex(4).unwrap(), FieldChoice::Any, false);
        assert_eq!(r.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn link_sigma_agrees_with_oracle() {
        for (k, l) in [(0, 1), (0, 2), (0, 3), (1, 0)] {
            let s = connected_sum(k, l).unwrap();
            assert_eq!(sigma0_tight3_formula(k, l, Prefactor::Corrected).unwrap(), sigma0_bruteforce(&s).unwrap());
        }
    }

    #[test]
    fn dispatch() {
        let m = boundary_simplex(4).unwrap();
        let r = decide_auto(&m, f2(), Method::Auto);
        assert_eq!((r.verdict, r.algorithm), (Verdict::Tight, Some(Algorithm::Poly3)));
        let r = decide_auto(&moebius_torus7().unwrap(), f2(), Method::Auto);
        assert_eq!((r.verdict, r.algorithm), (Verdict::Tight, Some(Algorithm::Fptd)));
        let r = decide_auto(&m, FieldChoice::Fixed(FieldSpec::Rationals), Method::Fixed(Algorithm::Fptd));
        assert_eq!(r.verdict, Verdict::NotApplicable);
        let r = decide_auto(&moebius_torus7().unwrap(), FieldChoice::Fixed(FieldSpec::Rationals), Method::Auto);
        assert_eq!((r.verdict, r.algorithm), (Verdict::Tight, Some(Algorithm::Brute)));
        let opts = DecideOptions { cross_check: true, ..Default::default() };
        let r = decide_auto_with(&cross_polytope(2).unwrap(), f2(), Method::Auto, opts);
        assert_eq!(r.cross_check, Some(Verdict::NotTight));
        assert_eq!(r.verdict, Verdict::NotTight);
    }

    #[test]
    fn report_json_shape() {
        let r = decide_tight_3(&boundary_simplex(4).unwrap(), f2());
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["verdict"], "tight");
        assert_eq!(v["algorithm"], "poly3");
        assert_eq!(v["mu1"], "0/1");
        assert_eq!(v["beta1"], 0);
        assert_eq!(v["certificate"]["kind"], "mu_equals_beta");
        let r = decide_tight_3(&cross_polytope(3).unwrap(), f2());
        assert_eq!(serde_json::to_value(&r).unwrap()["certificate"]["code"], "NOT_2_NEIGHBOURLY");
    }
}
