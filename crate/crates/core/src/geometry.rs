//! Prime fields and the projective spaces `PG(2, q)` and `PG(3, q)` over them.

use alloc::vec::Vec;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("{0} is not prime")]
pub struct NotPrime(pub u32);

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The integers modulo a prime `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    q: u32,
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self, NotPrime> {
        if is_prime(q) {
            Ok(PrimeField { q })
        } else {
            Err(NotPrime(q))
        }
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn elements(&self) -> core::ops::Range<u32> {
        0..self.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.q
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.q - b) % self.q
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        (self.q - a) % self.q
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    pub fn pow(&self, mut base: u32, mut exp: u32) -> u32 {
        let mut acc = 1 % self.q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        (!a.is_multiple_of(self.q)).then(|| self.pow(a, self.q - 2))
    }

    pub fn dot<const N: usize>(&self, x: &[u32; N], y: &[u32; N]) -> u32 {
        x.iter().zip(y).fold(0, |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }
}

/// A point of `PG(N - 1, q)`: a nonzero vector scaled so its first nonzero
/// coordinate is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjectivePoint<const N: usize> {
    coords: [u32; N],
}

impl<const N: usize> ProjectivePoint<N> {
    /// Normalizes a vector; `None` for the zero vector.
    pub fn normalize(field: &PrimeField, mut coords: [u32; N]) -> Option<Self> {
        coords.iter_mut().for_each(|c| *c %= field.order());
        let lead = coords.iter().copied().find(|&c| c != 0)?;
        let scale = field.inv(lead)?;
        coords.iter_mut().for_each(|c| *c = field.mul(*c, scale));
        Some(ProjectivePoint { coords })
    }

    pub fn coords(&self) -> &[u32; N] {
        &self.coords
    }

    /// All points, in increasing coordinate order.
    ///
    /// Enumerates normalized vectors directly: a block of zeros, a leading 1,
    /// then arbitrary coordinates.
    pub fn all(field: &PrimeField) -> Vec<Self> {
        let q = field.order();
        let mut points = Vec::new();
        for lead in (0..N).rev() {
            let free = N - lead - 1;
            let count = q.pow(free as u32);
            for mut code in 0..count {
                let mut coords = [0u32; N];
                coords[lead] = 1;
                for slot in (lead + 1..N).rev() {
                    coords[slot] = code % q;
                    code /= q;
                }
                points.push(ProjectivePoint { coords });
            }
        }
        points
    }
}

/// A line of `PG(N - 1, q)`, stored as the reduced row-echelon basis of its
/// 2-dimensional subspace, so equal lines have equal bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalLine<const N: usize> {
    basis: [[u32; N]; 2],
    pivots: [usize; 2],
}

impl<const N: usize> CanonicalLine<N> {
    /// The line through two points; `None` if they coincide.
    pub fn through(field: &PrimeField, a: &ProjectivePoint<N>, b: &ProjectivePoint<N>) -> Option<Self> {
        let mut rows = [a.coords, b.coords];
        let mut pivots = [0usize; 2];
        let mut rank = 0;
        for col in 0..N {
            if rank == 2 {
                break;
            }
            let Some(r) = (rank..2).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, r);
            let inv = field.inv(rows[rank][col])?;
            for c in 0..N {
                rows[rank][c] = field.mul(rows[rank][c], inv);
            }
            for other in 0..2 {
                if other != rank && rows[other][col] != 0 {
                    let factor = rows[other][col];
                    for c in 0..N {
                        let sub = field.mul(factor, rows[rank][c]);
                        rows[other][c] = field.sub(rows[other][c], sub);
                    }
                }
            }
            pivots[rank] = col;
            rank += 1;
        }
        (rank == 2).then_some(CanonicalLine { basis: rows, pivots })
    }

    pub fn basis(&self) -> &[[u32; N]; 2] {
        &self.basis
    }

    /// Whether the point lies in the subspace spanned by the basis.
    pub fn contains(&self, field: &PrimeField, p: &ProjectivePoint<N>) -> bool {
        // with an RREF basis the coefficients are read off the pivot columns
        let (c0, c1) = (p.coords[self.pivots[0]], p.coords[self.pivots[1]]);
        (0..N).all(|i| {
            let combo = field.add(field.mul(c0, self.basis[0][i]), field.mul(c1, self.basis[1][i]));
            combo == p.coords[i]
        })
    }
}

/// The alternating form `x1 y2 - x2 y1 + x3 y4 - x4 y3` on `GF(q)^4`.
pub fn symplectic_form(field: &PrimeField, x: &[u32; 4], y: &[u32; 4]) -> u32 {
    let a = field.sub(field.mul(x[0], y[1]), field.mul(x[1], y[0]));
    let b = field.sub(field.mul(x[2], y[3]), field.mul(x[3], y[2]));
    field.add(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    #[test]
    fn primes() {
        let primes: Vec<u32> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(PrimeField::new(4), Err(NotPrime(4)));
        assert_eq!(PrimeField::new(1), Err(NotPrime(1)));
    }

    #[test]
    fn field_inverses() {
        for q in [2, 3, 5, 7, 11, 13] {
            let f = PrimeField::new(q).unwrap();
            assert_eq!(f.inv(0), None);
            for a in 1..q {
                let inv = f.inv(a).unwrap();
                assert_eq!(f.mul(a, inv), 1);
                assert_eq!(f.add(a, f.neg(a)), 0);
            }
        }
    }

    #[test]
    fn point_counts_and_normalization() {
        for q in [2u32, 3, 5] {
            let f = PrimeField::new(q).unwrap();
            let plane = ProjectivePoint::<3>::all(&f);
            assert_eq!(plane.len() as u32, q * q + q + 1);
            let space = ProjectivePoint::<4>::all(&f);
            assert_eq!(space.len() as u32, (q + 1) * (q * q + 1));
            let distinct: BTreeSet<_> = space.iter().collect();
            assert_eq!(distinct.len(), space.len());
            assert!(space.windows(2).all(|w| w[0] < w[1]));
            for p in &space {
                assert_eq!(ProjectivePoint::normalize(&f, *p.coords()), Some(*p));
                let scaled = p.coords().map(|c| f.mul(c, q - 1));
                assert_eq!(ProjectivePoint::normalize(&f, scaled), Some(*p));
            }
        }
        let f = PrimeField::new(3).unwrap();
        assert_eq!(ProjectivePoint::normalize(&f, [0, 0, 0]), None);
    }

    #[test]
    fn lines_are_canonical() {
        let f = PrimeField::new(3).unwrap();
        let points = ProjectivePoint::<3>::all(&f);
        let mut lines = BTreeSet::new();
        for a in &points {
            for b in &points {
                if let Some(l) = CanonicalLine::through(&f, a, b) {
                    assert!(l.contains(&f, a) && l.contains(&f, b));
                    lines.insert(l);
                }
            }
        }
        // PG(2, 3) has 13 lines of 4 points each
        assert_eq!(lines.len(), 13);
        for l in &lines {
            assert_eq!(points.iter().filter(|p| l.contains(&f, p)).count(), 4);
        }
        assert_eq!(CanonicalLine::through(&f, &points[0], &points[0]), None);
    }

    #[test]
    fn form_is_alternating() {
        let f = PrimeField::new(5).unwrap();
        for p in ProjectivePoint::<4>::all(&f) {
            assert_eq!(symplectic_form(&f, p.coords(), p.coords()), 0);
        }
    }
}
