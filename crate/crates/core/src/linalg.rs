//! Dense linear algebra over prime fields and the rationals.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) trait FieldOps {
    type Elem: Clone + PartialEq + Debug;
    fn zero(&self) -> Self::Elem;
    fn from_i64(&self, x: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

/// `Z/p` with `p < 2^32`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct PrimeOps {
    p: u64,
}

impl PrimeOps {
    pub(crate) fn new(p: u64) -> Self {
        assert!(p >= 2 && p < (1 << 32));
        PrimeOps { p }
    }
}

impl FieldOps for PrimeOps {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn inv(&self, a: &u64) -> u64 {
        // Fermat; p is prime.
        let (mut base, mut exp, mut acc) = (*a % self.p, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct RationalOps;

impl FieldOps for RationalOps {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn from_i64(&self, x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

/// Reduced row echelon form in place; zero rows are removed. Returns the
/// pivot column of each remaining row.
pub(crate) fn rref<F: FieldOps>(ops: &F, rows: &mut Vec<Vec<F::Elem>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !ops.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = ops.inv(&rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = ops.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || ops.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !ops.is_zero(y) {
                    *x = ops.sub(x, &ops.mul(&factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub(crate) fn rank<F: FieldOps>(ops: &F, rows: &[Vec<F::Elem>], cols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(ops, &mut m, cols).len()
}

/// Basis of `{x : A x = 0}` for `A` given by rows of length `cols`.
pub(crate) fn nullspace<F: FieldOps>(ops: &F, rows: &[Vec<F::Elem>], cols: usize) -> Vec<Vec<F::Elem>> {
    let mut m = rows.to_vec();
    let pivots = rref(ops, &mut m, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![ops.zero(); cols];
        x[free] = ops.from_i64(1);
        for (row, &p) in m.iter().zip(&pivots) {
            x[p] = ops.sub(&ops.zero(), &row[free]);
        }
        basis.push(x);
    }
    basis
}

/// Smith normal form invariants of an integer matrix: the non-zero diagonal
/// entries, positive and forming a divisibility chain.
pub(crate) fn smith_invariants(matrix: &[Vec<i64>], cols: usize) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = matrix.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let rows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows && t < cols {
        // pivot of minimal absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            // clear column t
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                let pivot_row = a[t].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row).skip(t) {
                    *x -= &q * y;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            // clear row t
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                for row in a.iter_mut().skip(t) {
                    let y = row[t].clone();
                    row[j] -= &q * &y;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // move the smallest remainder into the pivot position
                let mut best = (t, t);
                for i in t..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                a.swap(t, best.0);
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
                continue;
            }
            // divisibility: the pivot must divide every remaining entry
            let bad = (t + 1..rows).find_map(|i| (t + 1..cols).find(|&j| !(&a[i][j] % &a[t][t]).is_zero()).map(|j| (i, j)));
            match bad {
                Some((i, _)) => {
                    let row_i = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(&row_i) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag.sort();
    debug_assert!(diag.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    debug_assert!(diag.iter().all(|d| d >= &BigInt::one()));
    diag
}
