//! Ground truth by definition: σ- and μ-vectors summed over every induced
//! subcomplex, and tightness checked subset by subset.
//!
//! Everything here is exponential in the number of vertices and guarded by a
//! bound ([`DEFAULT_BRUTE_FORCE_BOUND`], overridable through the
//! `TIGHTNESS_BRUTE_FORCE_BOUND` environment variable).

use std::fmt::{self, Display};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::complex::{binomial, Face, Graph, SimplicialComplex, VertexId};
use crate::homology::FieldSpec;
use crate::linalg::{self, FieldOps, PrimeOps, RationalOps};
use crate::Rational;

pub const DEFAULT_BRUTE_FORCE_BOUND: usize = 16;

/// `β̃₀` of the empty induced subcomplex. The `A = ∅` summand of `σ₀` is
/// therefore `-1`.
pub const EMPTY_SET_REDUCED_BETTI0: i64 = -1;

pub const EMPTY_SET_CONVENTION: &str = "reduced_betti0(empty) = -1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{n} vertices exceed the brute-force bound of {bound}")]
    BoundExceeded { n: usize, bound: usize },
}

/// The active bound: the default, or the value of
/// `TIGHTNESS_BRUTE_FORCE_BOUND` when set (never above 62).
pub fn brute_force_bound() -> usize {
    std::env::var("TIGHTNESS_BRUTE_FORCE_BOUND")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .unwrap_or(DEFAULT_BRUTE_FORCE_BOUND)
        .min(62)
}

fn check_bound(n: usize, bound: usize) -> Result<(), OracleError> {
    if n > bound.min(62) {
        Err(OracleError::BoundExceeded { n, bound })
    } else {
        Ok(())
    }
}

macro_rules! with_ops {
    ($field:expr, |$ops:ident| $body:expr) => {
        match $field {
            FieldSpec::Prime(p) => {
                let $ops = PrimeOps::new(p);
                $body
            }
            FieldSpec::Rationals => {
                let $ops = RationalOps;
                $body
            }
        }
    };
}

fn binom_rational(n: usize, k: usize) -> Rational {
    Rational::from_integer(BigInt::from(binomial(n, k).expect("binomial fits in u128")))
}

/// Faces of a complex as vertex bitmasks plus signed boundary incidences.
struct FaceTable {
    masks: Vec<Vec<u64>>,
    faces: Vec<Vec<Face>>,
    /// `bnd[k][j]`: the `(k-1)`-faces of the `j`-th `k`-face with signs.
    bnd: Vec<Vec<Vec<(usize, i64)>>>,
}

impl FaceTable {
    fn new(c: &SimplicialComplex) -> Self {
        let d = if c.is_empty() { 0 } else { c.dim() + 1 };
        let faces: Vec<Vec<Face>> = (0..d).map(|k| c.faces(k).to_vec()).collect();
        let masks = faces
            .iter()
            .map(|fs| fs.iter().map(|f| f.vertices().iter().fold(0u64, |m, &v| m | 1 << v)).collect())
            .collect();
        let mut bnd = vec![Vec::new()];
        for k in 1..d {
            let col = faces[k]
                .iter()
                .map(|f| {
                    f.facets_of_boundary()
                        .enumerate()
                        .map(|(i, r)| (faces[k - 1].binary_search(&r).expect("closed"), if i % 2 == 0 { 1 } else { -1 }))
                        .collect()
                })
                .collect();
            bnd.push(col);
        }
        FaceTable { masks, faces, bnd }
    }

    fn top(&self) -> usize {
        self.masks.len()
    }

    fn inside(&self, k: usize, w: u64) -> Vec<usize> {
        if k >= self.top() {
            return Vec::new();
        }
        (0..self.masks[k].len()).filter(|&j| self.masks[k][j] & !w == 0).collect()
    }

    /// Boundary vectors of the chosen `k`-faces in the `(k-1)`-face basis.
    fn boundary_rows<F: FieldOps>(&self, ops: &F, k: usize, cols: &[usize]) -> Vec<Vec<F::Elem>> {
        let len = self.masks[k - 1].len();
        cols.iter()
            .map(|&j| {
                let mut v = vec![ops.zero(); len];
                for &(r, s) in &self.bnd[k][j] {
                    v[r] = ops.from_i64(s);
                }
                v
            })
            .collect()
    }

    fn boundary_rank<F: FieldOps>(&self, ops: &F, k: usize, cols: &[usize]) -> usize {
        if k == 0 || k >= self.top() || cols.is_empty() {
            return 0;
        }
        linalg::rank(ops, &self.boundary_rows(ops, k, cols), self.masks[k - 1].len())
    }
}

fn sigma_generic<F: FieldOps>(ops: &F, c: &SimplicialComplex) -> Vec<Rational> {
    let n = c.vertex_count();
    let table = FaceTable::new(c);
    let d = table.top().max(1);
    // sums[i][m] = Σ_{|A| = m} β̃_i(C[A])
    let mut sums = vec![vec![0i64; n + 1]; d];
    sums[0][0] = EMPTY_SET_REDUCED_BETTI0;
    for w in 1u64..(1u64 << n) {
        let m = w.count_ones() as usize;
        let inside: Vec<Vec<usize>> = (0..=d).map(|k| table.inside(k, w)).collect();
        let ranks: Vec<usize> = (0..=d).map(|k| table.boundary_rank(ops, k, &inside[k])).collect();
        for i in 0..d {
            let b = inside[i].len() - ranks[i] - ranks[i + 1];
            sums[i][m] += b as i64 - if i == 0 { 1 } else { 0 };
        }
    }
    sums.into_iter()
        .map(|row| {
            row.into_iter()
                .enumerate()
                .fold(Rational::zero(), |acc, (m, s)| acc + Rational::from_integer(BigInt::from(s)) / binom_rational(n, m))
        })
        .collect()
}

/// `(σ₀, …, σ_d)` by summation over all vertex subsets, including `∅`.
pub fn sigma_vector_bruteforce(c: &SimplicialComplex, field: FieldSpec) -> Result<Vec<Rational>, OracleError> {
    sigma_vector_bruteforce_with_bound(c, field, brute_force_bound())
}

pub fn sigma_vector_bruteforce_with_bound(
    c: &SimplicialComplex,
    field: FieldSpec,
    bound: usize,
) -> Result<Vec<Rational>, OracleError> {
    check_bound(c.vertex_count(), bound)?;
    if c.is_empty() {
        return Ok(vec![Rational::from_integer(BigInt::from(EMPTY_SET_REDUCED_BETTI0))]);
    }
    Ok(with_ops!(field, |ops| sigma_generic(&ops, c)))
}

/// `σ₀` of the clique-free reading of a graph: the sum over induced
/// subgraphs of (components − 1), normalised per size. Field-independent.
pub fn sigma0_graph_bruteforce(g: &Graph) -> Result<Rational, OracleError> {
    let n = g.vertex_count();
    check_bound(n, brute_force_bound().max(DEFAULT_BRUTE_FORCE_BOUND))?;
    let adj: Vec<u64> = (0..n).map(|v| g.neighbours(v).iter().fold(0u64, |m, &u| m | 1 << u)).collect();
    let mut sums = vec![0u64; n + 1];
    for w in 1u64..(1u64 << n) {
        sums[w.count_ones() as usize] += (components_in(&adj, w) - 1) as u64;
    }
    let mut sigma = Rational::from_integer(BigInt::from(EMPTY_SET_REDUCED_BETTI0));
    for (m, s) in sums.into_iter().enumerate().skip(1) {
        sigma += Rational::from_integer(BigInt::from(s)) / binom_rational(n, m);
    }
    Ok(sigma)
}

fn components_in(adj: &[u64], w: u64) -> u32 {
    let mut rest = w;
    let mut count = 0;
    while rest != 0 {
        let mut comp = rest & rest.wrapping_neg();
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[v] & w & !comp;
            comp |= new;
            frontier |= new;
        }
        rest &= !comp;
        count += 1;
    }
    count
}

/// `σ₀(C)` through the 1-skeleton.
pub fn sigma0_bruteforce(c: &SimplicialComplex) -> Result<Rational, OracleError> {
    sigma0_graph_bruteforce(&c.one_skeleton())
}

/// `μ₀ = Σ_v 1/(1 + f₀(lk v))`.
pub fn mu0(c: &SimplicialComplex) -> Rational {
    (0..c.vertex_count())
        .map(|v| {
            let lk = c.link(v).expect("vertex in range");
            Rational::new(BigInt::one(), BigInt::from(lk.vertex_count() + 1))
        })
        .fold(Rational::zero(), |a, b| a + b)
}

/// `(μ₀, …, μ_d)` with link σ-vectors from the brute-force oracle.
pub fn mu_vector(c: &SimplicialComplex, field: FieldSpec) -> Result<Vec<Rational>, OracleError> {
    let d = c.dim();
    let m0 = mu0(c);
    let mut mu = vec![m0.clone()];
    mu.extend((1..=d).map(|i| if i == 1 { m0.clone() } else { Rational::zero() }));
    for v in 0..c.vertex_count() {
        let lk = c.link(v).expect("vertex in range");
        let weight = Rational::new(BigInt::one(), BigInt::from(lk.vertex_count() + 1));
        let sigma = sigma_vector_bruteforce(&lk, field)?;
        for i in 1..=d {
            if let Some(s) = sigma.get(i - 1) {
                mu[i] += s * &weight;
            }
        }
    }
    Ok(mu)
}

/// `μ₁` with an injected `σ₀` engine for the links.
pub fn mu1_with<E>(
    c: &SimplicialComplex,
    mut sigma0: impl FnMut(&SimplicialComplex) -> Result<Rational, E>,
) -> Result<Rational, E> {
    let mut mu1 = mu0(c);
    for v in 0..c.vertex_count() {
        let lk = c.link(v).expect("vertex in range");
        mu1 += sigma0(&lk)? / Rational::from_integer(BigInt::from(lk.vertex_count() + 1));
    }
    Ok(mu1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaMuReport {
    #[serde(serialize_with = "crate::ser_rationals")]
    pub sigma: Vec<Rational>,
    #[serde(serialize_with = "crate::ser_rationals")]
    pub mu: Vec<Rational>,
    pub field: FieldSpec,
    pub convention: &'static str,
}

pub fn sigma_mu_report(c: &SimplicialComplex, field: FieldSpec) -> Result<SigmaMuReport, OracleError> {
    Ok(SigmaMuReport {
        sigma: sigma_vector_bruteforce(c, field)?,
        mu: mu_vector(c, field)?,
        field,
        convention: EMPTY_SET_CONVENTION,
    })
}

/// A `k`-cycle of `C[W]` that bounds in `C` but not in `C[W]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TightnessWitness {
    pub w: Vec<VertexId>,
    pub k: usize,
    /// Faces of the cycle with their non-zero coefficients.
    pub cycle: Vec<(Face, String)>,
}

impl Display for TightnessWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W = {:?}, k = {}", self.w, self.k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BruteForceVerdict {
    Tight,
    Disconnected,
    NotTight(TightnessWitness),
}

impl BruteForceVerdict {
    pub fn is_tight(&self) -> bool {
        matches!(self, BruteForceVerdict::Tight)
    }
}

struct Injectivity<'a, F: FieldOps> {
    ops: F,
    table: &'a FaceTable,
    /// Row-reduced basis of `B_k(C)` for each `k`.
    boundaries: Vec<Vec<Vec<F::Elem>>>,
}

impl<'a, F: FieldOps> Injectivity<'a, F>
where
    F::Elem: Display,
{
    fn new(ops: F, table: &'a FaceTable) -> Self {
        let top = table.top();
        let boundaries = (0..top)
            .map(|k| {
                if k + 1 >= top {
                    return Vec::new();
                }
                let all: Vec<usize> = (0..table.masks[k + 1].len()).collect();
                let mut rows = table.boundary_rows(&ops, k + 1, &all);
                linalg::rref(&ops, &mut rows, table.masks[k].len());
                rows
            })
            .collect();
        Injectivity { ops, table, boundaries }
    }

    /// `None` when `H_k(C[W]) → H_k(C)` is injective, otherwise a cycle in
    /// the kernel (in the `k`-face basis of `C`).
    fn defect(&self, w: u64, k: usize) -> Option<Vec<F::Elem>> {
        let ops = &self.ops;
        let len = self.table.masks[k].len();
        let cols = self.table.inside(k, w);
        if cols.is_empty() {
            return None;
        }
        let z: Vec<Vec<F::Elem>> = if k == 0 {
            cols.iter()
                .map(|&j| {
                    let mut v = vec![ops.zero(); len];
                    v[j] = ops.from_i64(1);
                    v
                })
                .collect()
        } else {
            let mut local = vec![vec![ops.zero(); cols.len()]; self.table.masks[k - 1].len()];
            for (c, &j) in cols.iter().enumerate() {
                for &(r, s) in &self.table.bnd[k][j] {
                    local[r][c] = ops.from_i64(s);
                }
            }
            linalg::nullspace(ops, &local, cols.len())
                .into_iter()
                .map(|x| {
                    let mut v = vec![ops.zero(); len];
                    for (c, &j) in cols.iter().enumerate() {
                        v[j] = x[c].clone();
                    }
                    v
                })
                .collect()
        };
        if z.is_empty() {
            return None;
        }
        let b = &self.boundaries[k];
        let bw_rows = if k + 1 < self.table.top() {
            self.table.boundary_rows(ops, k + 1, &self.table.inside(k + 1, w))
        } else {
            Vec::new()
        };
        let bw = linalg::rank(ops, &bw_rows, len);
        let sum = linalg::rank(ops, &[z.clone(), b.clone()].concat(), len);
        if z.len() + b.len() - sum == bw {
            return None;
        }
        // Z_W ∩ B from the kernel of [Z | -B]
        let width = z.len() + b.len();
        let system: Vec<Vec<F::Elem>> = (0..len)
            .map(|r| {
                z.iter()
                    .map(|v| v[r].clone())
                    .chain(b.iter().map(|v| ops.sub(&ops.zero(), &v[r])))
                    .collect()
            })
            .collect();
        for x in linalg::nullspace(ops, &system, width) {
            let mut cycle = vec![ops.zero(); len];
            for (coef, v) in x.iter().zip(&z) {
                if ops.is_zero(coef) {
                    continue;
                }
                for (acc, e) in cycle.iter_mut().zip(v) {
                    *acc = ops.add(acc, &ops.mul(coef, e));
                }
            }
            let mut with = bw_rows.clone();
            with.push(cycle.clone());
            if linalg::rank(ops, &with, len) > bw {
                return Some(cycle);
            }
        }
        unreachable!("intersection larger than B_k(C[W]) must contain a non-bounding cycle")
    }

    fn witness(&self, w: u64, k: usize, cycle: Vec<F::Elem>) -> TightnessWitness {
        TightnessWitness {
            w: (0..64).filter(|&v| w >> v & 1 == 1).collect(),
            k,
            cycle: cycle
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !self.ops.is_zero(x))
                .map(|(j, x)| (self.table.faces[k][j].clone(), x.to_string()))
                .collect(),
        }
    }
}

fn mask_of(w: &[VertexId]) -> u64 {
    w.iter().fold(0u64, |m, &v| m | 1 << v)
}

/// Whether `H_k(C[W]; F) → H_k(C; F)` is injective.
pub fn is_injective_on_homology(c: &SimplicialComplex, w: &[VertexId], k: usize, field: FieldSpec) -> bool {
    assert!(c.vertex_count() <= 62, "vertex subsets are stored as 64-bit masks");
    let table = FaceTable::new(c);
    if k >= table.top() {
        return true;
    }
    with_ops!(field, |ops| Injectivity::new(ops, &table).defect(mask_of(w), k).is_none())
}

/// Subsets of `0..n` of size `s` in lexicographic order.
pub(crate) fn combinations(n: usize, s: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = if s <= n { Some((0..s).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = s;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if next[i] < n - s + i {
                next[i] += 1;
                for t in i + 1..s {
                    next[t] = next[t - 1] + 1;
                }
                cur = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// Tightness by definition. Subsets are scanned by `(|W|, W)` in
/// lexicographic order and degrees ascending, so the witness is the least
/// failing `(|W|, W, k)`.
pub fn is_tight_bruteforce(c: &SimplicialComplex, field: FieldSpec) -> Result<BruteForceVerdict, OracleError> {
    is_tight_bruteforce_with_bound(c, field, brute_force_bound())
}

pub fn is_tight_bruteforce_with_bound(
    c: &SimplicialComplex,
    field: FieldSpec,
    bound: usize,
) -> Result<BruteForceVerdict, OracleError> {
    let n = c.vertex_count();
    check_bound(n, bound)?;
    if !c.is_connected() {
        return Ok(BruteForceVerdict::Disconnected);
    }
    let table = FaceTable::new(c);
    Ok(with_ops!(field, |ops| {
        let inj = Injectivity::new(ops, &table);
        let mut verdict = BruteForceVerdict::Tight;
        'outer: for s in 1..n {
            for w in combinations(n, s) {
                let mask = mask_of(&w);
                for k in 0..table.top() {
                    if let Some(cycle) = inj.defect(mask, k) {
                        verdict = BruteForceVerdict::NotTight(inj.witness(mask, k, cycle));
                        break 'outer;
                    }
                }
            }
        }
        verdict
    }))
}
