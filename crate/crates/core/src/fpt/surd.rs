//! Exact arithmetic on numbers of the form `a + b*sqrt(q)` with rational `a, b, q`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::model::{format_rational, rat, Rational};

fn sign(x: &Rational) -> Ordering {
    x.cmp(&Rational::zero())
}

/// Sign of `a + b*sqrt(q)` for `q >= 0`.
pub fn sign2(a: &Rational, b: &Rational, q: &Rational) -> Ordering {
    if b.is_zero() || q.is_zero() {
        return sign(a);
    }
    let (sa, sb) = (sign(a), sign(b));
    if sa == Ordering::Equal || sa == sb {
        return sb;
    }
    match (a * a).cmp(&(b * b * q)) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Sign of `a + b*sqrt(p) + c*sqrt(r)` for `p, r >= 0`.
pub fn sign3(a: &Rational, b: &Rational, p: &Rational, c: &Rational, r: &Rational) -> Ordering {
    let sx = sign2(a, b, p);
    if c.is_zero() || r.is_zero() {
        return sx;
    }
    let sy = sign(c);
    if sx == Ordering::Equal || sx == sy {
        return sy;
    }
    // |X| vs |Y| through X^2 - Y^2 = (a^2 + b^2 p - c^2 r) + 2ab sqrt(p)
    let lead = a * a + b * b * p - c * c * r;
    let cross = rat(2) * a * b;
    match sign2(&lead, &cross, p) {
        Ordering::Greater => sx,
        Ordering::Less => sy,
        Ordering::Equal => Ordering::Equal,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    pub a: Rational,
    pub b: Rational,
    pub q: Rational,
}

impl Surd {
    pub fn rational(a: Rational) -> Self {
        Self { a, b: Rational::zero(), q: Rational::zero() }
    }

    pub fn new(a: Rational, b: Rational, q: Rational) -> Self {
        debug_assert!(!q.is_negative());
        Self { a, b, q }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.b.is_zero() || self.q.is_zero() {
            return Some(self.a.clone());
        }
        let root = rational_sqrt(&self.q)?;
        Some(&self.a + &self.b * root)
    }

    pub fn cmp_rational(&self, x: &Rational) -> Ordering {
        sign2(&(&self.a - x), &self.b, &self.q)
    }

    /// Rational bounds `lo <= self <= hi` with `hi - lo <= |b| / 2^bits`.
    fn bounds(&self, bits: u32) -> (Rational, Rational) {
        if self.b.is_zero() || self.q.is_zero() {
            return (self.a.clone(), self.a.clone());
        }
        let (lo, hi) = sqrt_bounds(&self.q, bits);
        let (x, y) = (&self.a + &self.b * &lo, &self.a + &self.b * &hi);
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        sign3(&(&self.a - &other.a), &self.b, &self.q, &-other.b.clone(), &other.q)
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", format_rational(&r));
        }
        write!(f, "{}+{}*sqrt({})", format_rational(&self.a), format_rational(&self.b), format_rational(&self.q))
    }
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

/// `lo <= sqrt(q) <= hi` with `hi - lo = 2^-bits`.
fn sqrt_bounds(q: &Rational, bits: u32) -> (Rational, Rational) {
    let scale = BigInt::from(1) << bits;
    // sqrt(n/d) = sqrt(n*d)/d
    let nd = q.numer() * q.denom();
    let root = (&nd * &scale * &scale).sqrt();
    let den = q.denom() * &scale;
    (Rational::new(root.clone(), den.clone()), Rational::new(root + 1, den))
}

/// A rational strictly between `x < y`.
pub fn rational_between(x: &Surd, y: &Surd) -> Rational {
    debug_assert!(x < y);
    let mut bits = 8;
    loop {
        let (_, xh) = x.bounds(bits);
        let (yl, _) = y.bounds(bits);
        if xh < yl {
            return (xh + yl) / rat(2);
        }
        bits *= 2;
    }
}

/// A point whose coordinates all lie in `Q(sqrt(q))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurdPoint {
    pub q: Rational,
    /// `(a, b)` per coordinate, meaning `a + b*sqrt(q)`.
    pub coords: Vec<(Rational, Rational)>,
}

impl SurdPoint {
    pub fn rational(point: &[Rational]) -> Self {
        Self { q: Rational::zero(), coords: point.iter().map(|x| (x.clone(), Rational::zero())).collect() }
    }

    pub fn coord(&self, i: usize) -> Surd {
        Surd::new(self.coords[i].0.clone(), self.coords[i].1.clone(), self.q.clone())
    }

    pub fn as_rational(&self) -> Option<Vec<Rational>> {
        (0..self.coords.len()).map(|i| self.coord(i).as_rational()).collect()
    }

    /// Compares the squared distance to `c` with `r2`.
    pub fn cmp_squared_distance(&self, c: &[Rational], r2: &Rational) -> Ordering {
        let mut a = -r2.clone();
        let mut b = Rational::zero();
        for ((x, y), ci) in self.coords.iter().zip(c) {
            let dx = x - ci;
            a += &dx * &dx + y * y * &self.q;
            b += rat(2) * &dx * y;
        }
        sign2(&a, &b, &self.q)
    }

    pub fn within(&self, bounds: &[crate::model::Interval]) -> bool {
        bounds.iter().enumerate().all(|(i, iv)| {
            let s = self.coord(i);
            s.cmp_rational(&iv.lo) != Ordering::Less && s.cmp_rational(&iv.hi) != Ordering::Greater
        })
    }
}

impl fmt::Display for SurdPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.coords.len()).map(|i| self.coord(i).to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ratio;

    #[test]
    fn signs() {
        assert_eq!(sign2(&rat(-1), &rat(1), &rat(2)), Ordering::Greater);
        assert_eq!(sign2(&rat(-2), &rat(1), &rat(4)), Ordering::Equal);
        assert_eq!(sign2(&rat(2), &rat(-1), &rat(5)), Ordering::Less);
        assert_eq!(sign2(&rat(0), &rat(0), &rat(5)), Ordering::Equal);
        // sqrt(2) + sqrt(3) - 3 > 0
        assert_eq!(sign3(&rat(-3), &rat(1), &rat(2), &rat(1), &rat(3)), Ordering::Greater);
        // 3*sqrt(2) - sqrt(18) = 0
        assert_eq!(sign3(&rat(0), &rat(3), &rat(2), &rat(-1), &rat(18)), Ordering::Equal);
    }

    #[test]
    fn ordering_and_between() {
        let s2 = Surd::new(rat(0), rat(1), rat(2));
        let s3 = Surd::new(rat(0), rat(1), rat(3));
        assert!(s2 < s3);
        let mid = rational_between(&s2, &s3);
        assert!(s2.cmp_rational(&mid) == Ordering::Less && s3.cmp_rational(&mid) == Ordering::Greater);
        let one = Surd::rational(rat(1));
        let near = Surd::new(rat(1), ratio(1, 1000), rat(2));
        let b = rational_between(&one, &near);
        assert!(b > rat(1) && near.cmp_rational(&b) == Ordering::Greater);
        assert_eq!(Surd::new(rat(1), rat(2), ratio(9, 4)).as_rational(), Some(rat(4)));
    }

    #[test]
    fn squared_distances() {
        // (1/2, sqrt(3)/2) is at distance 1 from the origin and from (1, 0).
        let p = SurdPoint { q: rat(3), coords: vec![(ratio(1, 2), rat(0)), (rat(0), ratio(1, 2))] };
        assert_eq!(p.cmp_squared_distance(&[rat(0), rat(0)], &rat(1)), Ordering::Equal);
        assert_eq!(p.cmp_squared_distance(&[rat(1), rat(0)], &rat(1)), Ordering::Equal);
        assert_eq!(p.cmp_squared_distance(&[rat(0), rat(1)], &rat(1)), Ordering::Less);
        assert_eq!(p.to_string(), "(1/2, 0+1/2*sqrt(3))");
    }
}
