//! Size bounds for bipartite graphs of girth 6 and 8.
//!
//! Every polynomial is evaluated in arbitrary-precision integers and every
//! inversion (`*_max_e`, the coarse bounds) is an exact integer computation.
//! Only [`balanced_approx`] works in floating point.
//!
//! Class sizes are `u64`. The inverting functions compute `v * w` exactly and
//! return a `u64`, so they require `v * w < 2^64`.

use alloc::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use thiserror::Error;

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

fn to_u64(x: &BigInt) -> u64 {
    u64::try_from(x).expect("bound exceeds u64 range")
}

/// `O(v, w, e) = e^2 - w e - v w (v - 1)`, nonpositive for girth at least 6 when `v <= w`.
pub fn eval_reiman(v: u64, w: u64, e: u64) -> BigInt {
    let (v, w, e) = (big(v), big(w), big(e));
    &e * &e - &w * &e - &v * &w * (&v - 1)
}

/// Largest `e` with `O(v, w, e) <= 0`: `floor((w + sqrt(w^2 + 4 v w (v - 1))) / 2)`.
fn reiman_root_floor(v: u64, w: u64) -> BigInt {
    let (bv, bw) = (big(v), big(w));
    let disc: BigInt = &bw * &bw + BigInt::from(4) * &bv * &bw * (&bv - 1);
    (bw + disc.sqrt()) / 2
}

/// Largest integer `e` with `O(a, b, e) <= 0` in both orientations.
///
/// The orientation with the smaller class first is always the binding one.
pub fn reiman_max_e(v: u64, w: u64) -> u64 {
    if v == 0 || w == 0 {
        return 0;
    }
    let (a, b) = (v.min(w), v.max(w));
    let e = reiman_root_floor(a, b).min(reiman_root_floor(b, a));
    to_u64(&e)
}

/// `P(v, w, e) = e^3 - (v + w) e^2 + 2 v w e - v^2 w^2`.
pub fn eval_cubic(v: u64, w: u64, e: u64) -> BigInt {
    let (v, w, e) = (big(v), big(w), big(e));
    let e2 = &e * &e;
    let vw = &v * &w;
    &e2 * &e - (&v + &w) * &e2 + BigInt::from(2) * &vw * &e - &vw * &vw
}

/// `P(v, w, e)` at a rational `e`.
pub fn eval_cubic_rational(v: u64, w: u64, e: &BigRational) -> BigRational {
    let s = BigRational::from_integer(big(v) + big(w));
    let p = BigRational::from_integer(big(v) * big(w));
    let e2 = e * e;
    &e2 * e - &s * &e2 + BigRational::from_integer(BigInt::from(2)) * &p * e - &p * &p
}

/// Largest integer `e >= 0` with `P(v, w, e) <= 0`.
///
/// `P(v, w, 0) = -(vw)^2 < 0` and `P(v, w, vw) = (vw)^2 (v - 1)(w - 1) >= 0`, and
/// `P` has a single positive root, so bisection on `[0, vw]` is exact.
pub fn cubic_max_e(v: u64, w: u64) -> u64 {
    if v == 0 || w == 0 {
        return 0;
    }
    let vw = v.checked_mul(w).expect("v * w overflows u64");
    if !eval_cubic(v, w, vw).is_positive() {
        return vw;
    }
    // P(lo) <= 0 < P(hi)
    let (mut lo, mut hi) = (0u64, vw);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if eval_cubic(v, w, mid).is_positive() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    lo
}

/// `max(v, w) + floor(min(v, w)^2 / 4)` when `max(v, w) >= floor(min(v, w)^2 / 4)`.
pub fn unbalanced_cap(v: u64, w: u64) -> Option<u64> {
    let (a, b) = (v.max(w), v.min(w));
    let quarter = b * b / 4;
    (a >= quarter).then_some(a + quarter)
}

/// C4-free bound with `v` as the class compared against `v(v-1)/2`.
fn girth6_coarse_oriented(v: u64, w: u64) -> u64 {
    let pairs = v * v.saturating_sub(1) / 2;
    if w <= pairs {
        let r: BigInt = BigInt::from(2) * big(v) * big(w) * (big(v) - 1);
        to_u64(&r.sqrt())
    } else {
        pairs + w
    }
}

/// `floor(sqrt(2 v w (v - 1)))` if `w <= v(v-1)/2`, else `v(v-1)/2 + w`,
/// minimized over both role assignments.
pub fn girth6_coarse_bound(v: u64, w: u64) -> u64 {
    girth6_coarse_oriented(v, w).min(girth6_coarse_oriented(w, v))
}

/// Pairs where `P(v, w, 2^{1/3} (vw)^{2/3})` changes sign; they take the
/// second alternative of [`girth8_coarse_bound`].
pub const GIRTH8_EXCEPTIONAL: [(u64, u64); 5] = [(1, 1), (1, 2), (2, 1), (2, 2), (3, 3)];

/// `floor(2^{1/3} (vw)^{2/3})` if `max <= floor(min^2 / 4)`, else
/// `floor(min^2 / 4) + max`. The cube-root branch is the largest `m` with
/// `m^3 <= 2 (vw)^2`.
pub fn girth8_coarse_bound(v: u64, w: u64) -> u64 {
    let (a, b) = (v.max(w), v.min(w));
    let quarter = b * b / 4;
    if a <= quarter && !GIRTH8_EXCEPTIONAL.contains(&(v, w)) {
        let vw = big(v) * big(w);
        let m = (BigInt::from(2) * &vw * &vw).cbrt();
        to_u64(&m)
    } else {
        quarter + a
    }
}

/// `v^{4/3} + (2/3) v - (2/9) v^{2/3} - (20/81) v^{1/3}`, an upper bound on the
/// size of a girth-8 bipartite graph with `v` vertices in each class.
///
/// Relative error stays below `1e-12` for `1 <= v <= 10^9`.
pub fn balanced_approx(v: u64) -> f64 {
    let vf = v as f64;
    let t = libm::cbrt(vf);
    vf * t + 2.0 / 3.0 * vf - 2.0 / 9.0 * t * t - 20.0 / 81.0 * t
}

/// [`balanced_approx`] evaluated exactly at `v = k^3`.
pub fn balanced_approx_cube(k: u64) -> BigRational {
    let k = BigRational::from_integer(big(k));
    let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let k2 = &k * &k;
    let k3 = &k2 * &k;
    &k3 * &k + r(2, 3) * &k3 - r(2, 9) * &k2 - r(20, 81) * &k
}

/// Symbols of the discriminant of `P(v, w, .)`, which equals `-(vw)^2 D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicDiagnostics {
    /// `v + w`
    pub s: BigInt,
    /// `v w`
    pub p: BigInt,
    /// `27 p^2 + 4 s^3 - 36 s p - 4 s^2 + 32 p`
    pub d: BigInt,
}

pub fn cubic_discriminant(v: u64, w: u64) -> CubicDiagnostics {
    let s = big(v) + big(w);
    let p = big(v) * big(w);
    let d = discriminant_d(&s, &p);
    CubicDiagnostics { s, p, d }
}

/// `D(s, p)` for arbitrary `s`, `p`.
pub fn discriminant_d(s: &BigInt, p: &BigInt) -> BigInt {
    BigInt::from(27) * p * p + BigInt::from(4) * s * s * s - BigInt::from(36) * s * p
        - BigInt::from(4) * s * s
        + BigInt::from(32) * p
}

/// `2e^2 + (1 - 2v) e + (w - w^2)(2v + 1) - v`, which equals
/// `P(v + 1, w, e + 1) - P(v, w, e)`.
pub fn growth_delta(v: u64, w: u64, e: u64) -> BigInt {
    let (v, w, e) = (big(v), big(w), big(e));
    let two = BigInt::from(2);
    &two * &e * &e + (BigInt::one() - &two * &v) * &e + (&w - &w * &w) * (&two * &v + 1) - &v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GirthTarget {
    Six,
    Eight,
}

impl GirthTarget {
    pub fn value(self) -> usize {
        match self {
            GirthTarget::Six => 6,
            GirthTarget::Eight => 8,
        }
    }

    pub fn from_value(g: usize) -> Option<Self> {
        match g {
            6 => Some(GirthTarget::Six),
            8 => Some(GirthTarget::Eight),
            _ => None,
        }
    }
}

/// Bound families. The declaration order is the tie-break order for
/// [`BoundReport::binding`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Reiman,
    Cubic,
    Cap,
    Coarse,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Reiman, Method::Cubic, Method::Cap, Method::Coarse];

    pub fn name(self) -> &'static str {
        match self {
            Method::Reiman => "reiman",
            Method::Cubic => "cubic",
            Method::Cap => "cap",
            Method::Coarse => "coarse",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Method::ALL.into_iter().find(|m| m.name() == name)
    }

    /// The bound this method gives for `(v, w)` at the target girth, if it applies.
    pub fn evaluate(self, v: u64, w: u64, girth: GirthTarget) -> Option<u64> {
        match (self, girth) {
            (Method::Reiman, _) => Some(reiman_max_e(v, w)),
            (Method::Cubic, GirthTarget::Eight) => Some(cubic_max_e(v, w)),
            (Method::Cap, GirthTarget::Eight) => unbalanced_cap(v, w),
            (Method::Coarse, GirthTarget::Six) => Some(girth6_coarse_bound(v, w)),
            (Method::Coarse, GirthTarget::Eight) => Some(girth8_coarse_bound(v, w)),
            (Method::Cubic | Method::Cap, GirthTarget::Six) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("class sizes must be at least 1 (got v = {v}, w = {w})")]
    EmptyClass { v: u64, w: u64 },
    #[error("method {method} does not apply at girth {girth}")]
    NotApplicable { method: &'static str, girth: usize },
}

/// Every applicable bound for `(v, w)` at a girth target, with the smallest flagged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub v: u64,
    pub w: u64,
    pub girth: GirthTarget,
    pub values: BTreeMap<Method, u64>,
    pub binding: Method,
}

impl BoundReport {
    pub fn new(v: u64, w: u64, girth: GirthTarget) -> Result<Self, BoundError> {
        Self::with_methods(v, w, girth, &Method::ALL)
    }

    /// A report restricted to `methods`; at least one must apply.
    pub fn with_methods(
        v: u64,
        w: u64,
        girth: GirthTarget,
        methods: &[Method],
    ) -> Result<Self, BoundError> {
        if v == 0 || w == 0 {
            return Err(BoundError::EmptyClass { v, w });
        }
        let values: BTreeMap<Method, u64> = methods
            .iter()
            .filter_map(|&m| m.evaluate(v, w, girth).map(|b| (m, b)))
            .collect();
        let binding = values
            .iter()
            .fold(None::<(Method, u64)>, |acc, (&m, &b)| match acc {
                Some((_, best)) if best <= b => acc,
                _ => Some((m, b)),
            })
            .map(|(m, _)| m);
        match binding {
            Some(binding) => Ok(BoundReport { v, w, girth, values, binding }),
            None => Err(BoundError::NotApplicable {
                method: methods.first().map_or("none", |m| m.name()),
                girth: girth.value(),
            }),
        }
    }

    pub fn binding_value(&self) -> u64 {
        self.values[&self.binding]
    }

    pub fn get(&self, method: Method) -> Option<u64> {
        self.values.get(&method).copied()
    }
}
