//! Bit vectors over F₂ and subspaces in canonical reduced echelon form.

/// Fixed-length bit vector; all vectors of one computation share a length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Bits(Vec<u64>);

impl Bits {
    pub(crate) fn zeros(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64).max(1)])
    }

    pub(crate) fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub(crate) fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    #[cfg(test)]
    pub(crate) fn flip(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }

    pub(crate) fn xor(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }

    pub(crate) fn or(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub(crate) fn lowest(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Lowest set bit that is also set in `mask`.
    pub(crate) fn lowest_in(&self, mask: &Bits) -> Option<usize> {
        self.0
            .iter()
            .zip(&mask.0)
            .enumerate()
            .find(|(_, (&w, &m))| w & m != 0)
            .map(|(i, (w, m))| i * 64 + (w & m).trailing_zeros() as usize)
    }

    pub(crate) fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    #[cfg(test)]
    pub(crate) fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// A subspace of F₂ⁿ stored as its fully reduced echelon basis: each row's
/// pivot is its lowest set bit, no other row has that bit, and rows are
/// sorted by pivot. The representation is unique, so equality of values is
/// equality of subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub(crate) struct Subspace {
    rows: Vec<(usize, Bits)>,
}

impl Subspace {
    pub(crate) fn zero() -> Self {
        Subspace { rows: Vec::new() }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn reduce(&self, v: &Bits) -> Bits {
        let mut v = v.clone();
        for (p, r) in &self.rows {
            if v.get(*p) {
                v.xor(r);
            }
        }
        v
    }

    pub(crate) fn contains(&self, v: &Bits) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub(crate) fn insert(&mut self, v: &Bits) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.lowest() else { return false };
        for (_, r) in self.rows.iter_mut() {
            if r.get(p) {
                r.xor(&v);
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        true
    }

    pub(crate) fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for (_, r) in &other.rows {
            s.insert(r);
        }
        s
    }

    pub(crate) fn intersection_dim(&self, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }

    /// Image under the projection that zeroes coordinate `i`.
    pub(crate) fn project_out(&self, i: usize) -> Subspace {
        if !self.rows.iter().any(|(_, r)| r.get(i)) {
            return self.clone();
        }
        let mut s = Subspace::zero();
        for (_, r) in &self.rows {
            let mut r = r.clone();
            r.clear(i);
            s.insert(&r);
        }
        s
    }

    /// The subspace of vectors with coordinate `i` equal to zero.
    pub(crate) fn restrict_zero(&self, i: usize) -> Subspace {
        let Some(first) = self.rows.iter().position(|(_, r)| r.get(i)) else { return self.clone() };
        let pivot_row = self.rows[first].1.clone();
        let mut s = Subspace::zero();
        for (k, (_, r)) in self.rows.iter().enumerate() {
            if k == first {
                continue;
            }
            let mut r = r.clone();
            if r.get(i) {
                r.xor(&pivot_row);
            }
            s.insert(&r);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(len: usize, ones: &[usize]) -> Bits {
        let mut b = Bits::zeros(len);
        for &i in ones {
            b.set(i);
        }
        b
    }

    #[test]
    fn bit_operations() {
        let mut b = bits(130, &[0, 64, 129]);
        assert_eq!(b.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        b.flip(0);
        assert_eq!(b.lowest(), Some(64));
        assert_eq!(b.lowest_in(&bits(130, &[129])), Some(129));
        assert_eq!(b.count(), 2);
        b.xor(&bits(130, &[64, 129]));
        assert!(b.is_zero());
    }

    #[test]
    fn canonical_form() {
        let mut a = Subspace::zero();
        a.insert(&bits(4, &[0, 1]));
        a.insert(&bits(4, &[1, 2]));
        let mut b = Subspace::zero();
        b.insert(&bits(4, &[0, 2]));
        b.insert(&bits(4, &[0, 1]));
        assert_eq!(a, b);
        assert!(!a.insert(&bits(4, &[0, 2])));
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn projections() {
        let mut a = Subspace::zero();
        a.insert(&bits(3, &[0, 1]));
        a.insert(&bits(3, &[2]));
        // x1 = 0 forces x0 = 0
        let z = a.restrict_zero(1);
        assert_eq!(z.dim(), 1);
        assert!(z.contains(&bits(3, &[2])));
        let p = a.project_out(1);
        assert_eq!(p.dim(), 2);
        assert!(p.contains(&bits(3, &[0])));
        let mut c = Subspace::zero();
        c.insert(&bits(3, &[0, 1, 2]));
        assert_eq!(a.intersection_dim(&c), 1);
    }
}
