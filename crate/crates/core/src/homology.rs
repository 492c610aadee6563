//! Simplicial homology with field and integer coefficients.
//!
//! Field Betti numbers are computed by Gaussian elimination over the field
//! itself. Integral homology goes through the Smith normal form of the
//! boundary matrices with arbitrary-precision integers, and
//! [`betti_from_integral`] recovers field Betti numbers from it by universal
//! coefficients, giving an independent second route.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::complex::{Face, SimplicialComplex};
use crate::linalg::{self, FieldOps, PrimeOps, RationalOps};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("cannot parse field {0:?} (use q, 2, or another prime)")]
    BadField(String),
    #[error("boundary degree {k} out of range for a complex of dimension {dim}")]
    DegreeOutOfRange { k: usize, dim: usize },
    #[error("orientation needs a connected complex in which every ridge lies in exactly two facets")]
    NotClosed,
}

/// Coefficient field: the rationals or `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub const F2: FieldSpec = FieldSpec::Prime(2);

    pub fn prime(p: u64) -> Result<Self, HomologyError> {
        if is_prime(p) && p < (1 << 32) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(HomologyError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = HomologyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "q" | "Q" | "rationals" => Ok(FieldSpec::Rationals),
            t => {
                let t = t.strip_prefix('F').or_else(|| t.strip_prefix('f')).unwrap_or(t);
                let p: u64 = t.parse().map_err(|_| HomologyError::BadField(s.to_string()))?;
                FieldSpec::prime(p)
            }
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Signed incidence matrix of `∂_k`, rows indexed by `(k-1)`-faces and
/// columns by `k`-faces, both in lexicographic order. The face obtained by
/// dropping the `i`-th vertex gets sign `(-1)^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub rows: Vec<Face>,
    pub cols: Vec<Face>,
    pub entries: Vec<Vec<i64>>,
}

pub fn boundary_matrix(c: &SimplicialComplex, k: usize) -> Result<BoundaryMatrix, HomologyError> {
    if k == 0 || c.is_empty() || k > c.dim() {
        return Err(HomologyError::DegreeOutOfRange { k, dim: c.dim() });
    }
    let rows = c.faces(k - 1).to_vec();
    let cols = c.faces(k).to_vec();
    let mut entries = vec![vec![0i64; cols.len()]; rows.len()];
    for (j, f) in cols.iter().enumerate() {
        for (i, r) in f.facets_of_boundary().enumerate() {
            let row = rows.binary_search(&r).expect("boundary face present");
            entries[row][j] = if i % 2 == 0 { 1 } else { -1 };
        }
    }
    Ok(BoundaryMatrix { rows, cols, entries })
}

/// Rank of `∂_k` over a field; zero outside `1..=dim`.
pub(crate) fn boundary_rank(c: &SimplicialComplex, k: usize, field: FieldSpec) -> usize {
    let Ok(m) = boundary_matrix(c, k) else { return 0 };
    matrix_rank(&m.entries, m.cols.len(), field)
}

pub(crate) fn matrix_rank(entries: &[Vec<i64>], cols: usize, field: FieldSpec) -> usize {
    match field {
        FieldSpec::Prime(p) => {
            let ops = PrimeOps::new(p);
            let rows: Vec<Vec<u64>> = entries.iter().map(|r| r.iter().map(|&x| ops.from_i64(x)).collect()).collect();
            linalg::rank(&ops, &rows, cols)
        }
        FieldSpec::Rationals => {
            let rows: Vec<Vec<_>> = entries.iter().map(|r| r.iter().map(|&x| RationalOps.from_i64(x)).collect()).collect();
            linalg::rank(&RationalOps, &rows, cols)
        }
    }
}

/// `β_k(C; F)`, unreduced.
pub fn betti(c: &SimplicialComplex, k: usize, field: FieldSpec) -> usize {
    if c.is_empty() || k > c.dim() {
        return 0;
    }
    c.faces(k).len() - boundary_rank(c, k, field) - boundary_rank(c, k + 1, field)
}

/// Reduced Betti number. The empty complex has `β̃₀ = -1` and all others 0.
pub fn reduced_betti(c: &SimplicialComplex, k: usize, field: FieldSpec) -> i64 {
    if c.is_empty() {
        return if k == 0 { -1 } else { 0 };
    }
    let b = betti(c, k, field) as i64;
    if k == 0 {
        b - 1
    } else {
        b
    }
}

/// `H_k(C; Z)` as free rank plus invariant factors greater than one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralHomology {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl IntegralHomology {
    pub fn trivial() -> Self {
        IntegralHomology { rank: 0, torsion: Vec::new() }
    }
}

impl fmt::Display for IntegralHomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".to_string() } else { format!("Z^{}", self.rank) });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn smith(c: &SimplicialComplex, k: usize) -> Vec<BigInt> {
    match boundary_matrix(c, k) {
        Ok(m) => linalg::smith_invariants(&m.entries, m.cols.len()),
        Err(_) => Vec::new(),
    }
}

pub fn integral_homology(c: &SimplicialComplex, k: usize) -> IntegralHomology {
    if c.is_empty() || k > c.dim() {
        return IntegralHomology::trivial();
    }
    let down = smith(c, k);
    let up = smith(c, k + 1);
    let rank = c.faces(k).len() - down.len() - up.len();
    let torsion = up.into_iter().filter(|d| !d.is_one()).collect();
    IntegralHomology { rank, torsion }
}

/// Universal coefficients: `β_k(F) = rank H_k + #{p | t in H_k} + #{p | t in H_{k-1}}`
/// for `F = F_p`, and `rank H_k` over the rationals.
pub fn betti_from_integral(h_k: &IntegralHomology, h_k_minus_1: Option<&IntegralHomology>, field: FieldSpec) -> usize {
    match field {
        FieldSpec::Rationals => h_k.rank,
        FieldSpec::Prime(p) => {
            let p = BigInt::from(p);
            let divisible = |h: &IntegralHomology| h.torsion.iter().filter(|t| (*t % &p).is_zero()).count();
            h_k.rank + divisible(h_k) + h_k_minus_1.map_or(0, divisible)
        }
    }
}

/// Orientability over a field of the given characteristic.
///
/// Characteristic 2 is always orientable. Otherwise facet signs are
/// propagated along the dual graph; two facets sharing a ridge must induce
/// opposite orientations on it.
pub fn orientable(c: &SimplicialComplex, characteristic: u64) -> Result<bool, HomologyError> {
    if !c.is_connected() {
        return Err(HomologyError::NotClosed);
    }
    let incidence = c.ridge_incidence().map_err(|_| HomologyError::NotClosed)?;
    if c.dim() == 0 || incidence.iter().any(|(_, f)| f.len() != 2) {
        return Err(HomologyError::NotClosed);
    }
    if characteristic == 2 {
        return Ok(true);
    }
    let facets = c.facets();
    // (neighbour, position of ridge in self, position in neighbour)
    let mut adj: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); facets.len()];
    for (ridge, inc) in &incidence {
        let pos = |f: &Face| {
            f.vertices().iter().position(|v| !ridge.contains(*v)).expect("facet has one extra vertex")
        };
        let (a, b) = (inc[0], inc[1]);
        let (pa, pb) = (pos(&facets[a]), pos(&facets[b]));
        adj[a].push((b, pa, pb));
        adj[b].push((a, pb, pa));
    }
    let mut sign = vec![0i8; facets.len()];
    for start in 0..facets.len() {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            for &(g, pf, pg) in &adj[f] {
                let parity = if (pf + pg) % 2 == 0 { 1 } else { -1 };
                let want = -sign[f] * parity;
                if sign[g] == 0 {
                    sign[g] = want;
                    queue.push_back(g);
                } else if sign[g] != want {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn prime_factors(n: &BigInt) -> Vec<u64> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut d = 2u64;
    while BigInt::from(d) * BigInt::from(d) <= n {
        let bd = BigInt::from(d);
        if (&n % &bd).is_zero() {
            out.push(d);
            while (&n % &bd).is_zero() {
                n /= &bd;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push(n.to_u64().expect("torsion coefficient fits in u64"));
    }
    out
}

/// The largest `β₁(M; F)` over fields for which `M` is `F`-orientable, with
/// the field attaining it. Ties prefer the rationals, then smaller primes.
pub fn beta1_max(c: &SimplicialComplex) -> Result<(usize, FieldSpec), HomologyError> {
    let h0 = integral_homology(c, 0);
    let h1 = integral_homology(c, 1);
    if !orientable(c, 0)? {
        return Ok((betti_from_integral(&h1, Some(&h0), FieldSpec::F2), FieldSpec::F2));
    }
    let mut candidates = vec![FieldSpec::Rationals, FieldSpec::F2];
    let mut primes: Vec<u64> = h1.torsion.iter().flat_map(prime_factors).filter(|&p| p != 2).collect();
    primes.sort_unstable();
    primes.dedup();
    candidates.extend(primes.into_iter().filter(|&p| p < (1 << 32)).map(FieldSpec::Prime));
    let mut best = (betti_from_integral(&h1, Some(&h0), candidates[0]), candidates[0]);
    for &f in &candidates[1..] {
        let b = betti_from_integral(&h1, Some(&h0), f);
        if b > best.0 {
            best = (b, f);
        }
    }
    Ok(best)
}
