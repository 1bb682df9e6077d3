//! Exact anticanonical heights on `P^d` over Q, finite-place metric twists,
//! bounded-height point enumeration, and naive heights over real and
//! imaginary quadratic fields.
//!
//! The model metric is the naive one: on gcd-reduced integer coordinates the
//! height is `max_i |x_i|^{d+1}`, and a twist `{p -> a_p}` rescales every
//! height by `prod p^{a_p}`. Counting is exact: bound comparisons are done in
//! integer arithmetic even for fractional twist exponents.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{gcd_i64, gcd_u64, is_prime_u64, is_squarefree, Kahan};

/// Largest admissible reduced coordinate per dimension; the implied work is
/// roughly `T^(d+1)` for streaming and `T^d` lines for counting.
pub fn max_coord_cap(d: usize) -> Result<u64> {
    match d {
        1 => Ok(10_000_000),
        2 => Ok(1_000),
        3 => Ok(200),
        4 => Ok(56),
        _ => Err(Error::validation(format!("dimension {d} not supported (1..=4)"))),
    }
}

fn hist_cap(d: usize) -> u64 {
    match d {
        1 => 100_000,
        2 => 2_000,
        3 => 200,
        _ => 64,
    }
}

/// A rational point of `P^d` in canonical form: integer coordinates with
/// gcd one, first nonzero coordinate positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<i64>,
}

impl ProjPoint {
    pub fn new(mut coords: Vec<i64>) -> Result<Self> {
        if coords.is_empty() || coords.iter().all(|&c| c == 0) {
            return Err(Error::validation("projective point needs a nonzero coordinate".to_string()));
        }
        let mut g: u64 = 0;
        for &c in &coords {
            g = gcd_u64(g, c.unsigned_abs());
        }
        for c in &mut coords {
            *c /= g as i64;
        }
        if coords.iter().find(|&&c| c != 0).copied().unwrap_or(1) < 0 {
            for c in &mut coords {
                *c = -*c;
            }
        }
        Ok(ProjPoint { coords })
    }

    /// From rational coordinates: clears denominators then reduces.
    pub fn from_rationals(coords: &[Ratio<i64>]) -> Result<Self> {
        let lcm = coords
            .iter()
            .fold(1i64, |acc, c| acc.lcm(c.denom()));
        let ints: Vec<i64> = coords
            .iter()
            .map(|c| c.numer() * (lcm / c.denom()))
            .collect();
        ProjPoint::new(ints)
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn max_abs(&self) -> u64 {
        self.coords.iter().map(|c| c.unsigned_abs()).max().unwrap()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let coords: std::result::Result<Vec<i64>, _> =
            text.split(':').map(|t| t.trim().parse::<i64>()).collect();
        ProjPoint::new(coords.map_err(|e| Error::validation(format!("bad point {text:?}: {e}")))?)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(":"))
    }
}

/// A finite-place metric twist: finitely many primes `p` with rational
/// exponents `a_p`. All heights get multiplied by `prod p^{a_p}`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MetricTwist {
    entries: BTreeMap<u64, Ratio<i64>>,
}

/// Largest allowed denominator of a twist exponent.
pub const MAX_TWIST_DENOM: i64 = 60;

impl MetricTwist {
    pub fn empty() -> Self {
        MetricTwist::default()
    }

    pub fn new(entries: BTreeMap<u64, Ratio<i64>>) -> Result<Self> {
        for (&p, a) in &entries {
            if !is_prime_u64(p) {
                return Err(Error::validation(format!("twist index {p} is not prime")));
            }
            if *a.denom() > MAX_TWIST_DENOM {
                return Err(Error::validation(format!(
                    "twist exponent denominator {} exceeds {MAX_TWIST_DENOM}",
                    a.denom()
                )));
            }
        }
        Ok(MetricTwist {
            entries: entries.into_iter().filter(|(_, a)| !a.is_zero()).collect(),
        })
    }

    pub fn single(p: u64, a: Ratio<i64>) -> Result<Self> {
        MetricTwist::new([(p, a)].into_iter().collect())
    }

    /// Parse `"p=a,p=a"` with rational `a` as `n` or `n/d`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for part in text.split(',').filter(|s| !s.trim().is_empty()) {
            let (p, a) = part.split_once('=').ok_or_else(|| {
                Error::validation(format!("twist entry {part:?} is not of the form p=a"))
            })?;
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|e| Error::validation(format!("bad twist prime: {e}")))?;
            let a = crate::ratio_serde::parse(a.trim())
                .ok_or_else(|| Error::validation(format!("bad twist exponent {a:?}")))?;
            entries.insert(p, a);
        }
        MetricTwist::new(entries)
    }

    pub fn entries(&self) -> &BTreeMap<u64, Ratio<i64>> {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.entries.values().all(|a| a.is_integer())
    }

    /// `prod p^{a_p}` as a float.
    pub fn factor_f64(&self) -> f64 {
        self.entries
            .iter()
            .map(|(&p, a)| (p as f64).powf(a.to_f64().unwrap()))
            .product()
    }

    /// `prod p^{a_p}` as an exact rational when every exponent is integral.
    pub fn factor_exact(&self) -> Option<Ratio<i128>> {
        if !self.is_integral() {
            return None;
        }
        let mut num: i128 = 1;
        let mut den: i128 = 1;
        for (&p, a) in &self.entries {
            let e = a.to_integer();
            let target = if e >= 0 { &mut num } else { &mut den };
            for _ in 0..e.unsigned_abs() {
                *target = target.checked_mul(p as i128)?;
            }
        }
        Some(Ratio::new(num, den))
    }
}

impl fmt::Display for MetricTwist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(p, a)| format!("{p}={}", crate::ratio_serde::format(a)))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A height value: exact rational when the twist is integral, float otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum HeightValue {
    Exact(Ratio<i128>),
    Approx(f64),
}

impl HeightValue {
    pub fn as_f64(&self) -> f64 {
        match self {
            HeightValue::Exact(r) => *r.numer() as f64 / *r.denom() as f64,
            HeightValue::Approx(x) => *x,
        }
    }
}

/// Anticanonical (naive-model) height `max_i |x_i|^{d+1} * prod p^{a_p}`.
pub fn anticanonical_height(pt: &ProjPoint, twist: &MetricTwist) -> HeightValue {
    let d = pt.dim();
    let m = pt.max_abs() as i128;
    let mut raw: i128 = 1;
    for _ in 0..=d {
        raw = raw.saturating_mul(m);
    }
    match twist.factor_exact() {
        Some(f) if raw < i128::MAX => HeightValue::Exact(f * Ratio::from_integer(raw)),
        _ => HeightValue::Approx((m as f64).powi(d as i32 + 1) * twist.factor_f64()),
    }
}

/// Largest max-coordinate `T` such that `T^{d+1} * prod p^{a_p} <= bound`,
/// computed in exact integer arithmetic (the float bound is treated as the
/// exact rational it represents). Errors if `T` would exceed the dimension cap.
pub fn max_coord_threshold(d: usize, bound: f64, twist: &MetricTwist) -> Result<u64> {
    let cap = max_coord_cap(d)?;
    if !bound.is_finite() || bound < 0.0 {
        return Err(Error::validation(format!("bad bound {bound}")));
    }
    let b = BigRational::from_float(bound)
        .ok_or_else(|| Error::validation(format!("bad bound {bound}")))?;
    // common denominator of the twist exponents
    let mut denom: i64 = 1;
    for a in twist.entries.values() {
        denom = denom.lcm(a.denom());
    }
    let dd = denom as u32;
    // condition: T^{(d+1)*denom} * lhs * bden^denom <= bnum^denom * rhs
    let mut lhs = BigInt::one();
    let mut rhs = BigInt::one();
    for (&p, a) in &twist.entries {
        let e = (a * Ratio::from_integer(denom)).to_integer();
        let pw = BigInt::from(p).pow(e.unsigned_abs() as u32);
        if e >= 0 {
            lhs *= pw;
        } else {
            rhs *= pw;
        }
    }
    let rhs = b.numer().pow(dd) * rhs;
    let lhs_base = lhs * b.denom().pow(dd);
    let exponent = (d as u32 + 1) * dd;
    let ok = |t: u64| -> bool { BigInt::from(t).pow(exponent) * &lhs_base <= rhs };
    if b.numer().is_negative() || !ok(0) {
        return Ok(0);
    }
    if ok(cap + 1) {
        return Err(Error::size_limit(format!(
            "bound {bound} needs coordinates past the cap {cap} for dimension {d}"
        )));
    }
    let (mut lo, mut hi) = (0u64, cap + 1); // ok(lo), !ok(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Streaming enumeration of all canonical points of `P^d` with max
/// coordinate at most `t`, in lexicographic coordinate order.
pub struct PointIter {
    t: i64,
    coords: Vec<i64>,
    done: bool,
}

impl PointIter {
    pub fn up_to_max(d: usize, t: u64) -> Result<Self> {
        let cap = max_coord_cap(d)?;
        if t > cap {
            return Err(Error::size_limit(format!("max coordinate {t} exceeds cap {cap}")));
        }
        let t = t as i64;
        let mut coords = vec![-t; d + 1];
        coords[0] = 0;
        Ok(PointIter {
            t,
            coords,
            done: t == 0,
        })
    }

    /// All points with (twisted) height at most `bound`.
    pub fn with_bound(d: usize, bound: f64, twist: &MetricTwist) -> Result<Self> {
        Self::up_to_max(d, max_coord_threshold(d, bound, twist)?)
    }

    fn advance(&mut self) -> bool {
        // lexicographic odometer; position 0 runs over 0..=t, others -t..=t
        let mut pos = self.coords.len();
        loop {
            if pos == 0 {
                return false;
            }
            pos -= 1;
            if self.coords[pos] < self.t {
                self.coords[pos] += 1;
                for c in &mut self.coords[pos + 1..] {
                    *c = -self.t;
                }
                return true;
            }
        }
    }

    fn is_canonical(coords: &[i64]) -> bool {
        let mut g: u64 = 0;
        for &c in coords {
            g = gcd_u64(g, c.unsigned_abs());
        }
        if g != 1 {
            return false;
        }
        coords.iter().find(|&&c| c != 0).copied().unwrap_or(-1) > 0
    }
}

impl Iterator for PointIter {
    type Item = ProjPoint;

    fn next(&mut self) -> Option<ProjPoint> {
        if self.done {
            return None;
        }
        loop {
            if Self::is_canonical(&self.coords) {
                let pt = ProjPoint {
                    coords: self.coords.clone(),
                };
                if !self.advance() {
                    self.done = true;
                }
                return Some(pt);
            }
            if !self.advance() {
                self.done = true;
                return None;
            }
        }
    }
}

// --- fast counting ------------------------------------------------------

fn distinct_primes_small(mut g: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= g {
        if g % d == 0 {
            out.push(d);
            while g % d == 0 {
                g /= d;
            }
        }
        d += 1 + (d & 1);
    }
    if g > 1 {
        out.push(g);
    }
    out
}

/// Squarefree divisors of the radical of g, with Möbius signs.
fn moebius_divisors(g: u64) -> Vec<(u64, i64)> {
    let primes = distinct_primes_small(g);
    let mut out = vec![(1u64, 1i64)];
    for p in primes {
        let len = out.len();
        for i in 0..len {
            let (e, mu) = out[i];
            out.push((e * p, -mu));
        }
    }
    out
}

/// Count of `x` in `[-t, t]` with `gcd(x, g) = 1`, zero included iff
/// `g == 1` and `include_zero` is set.
fn coprime_line_count(divs: &[(u64, i64)], g: u64, t: u64, include_zero: bool) -> i64 {
    let mut c: i64 = if g == 1 && include_zero { 1 } else { 0 };
    for &(e, mu) in divs {
        c += mu * 2 * (t / e) as i64;
    }
    c
}

/// Iterate over all canonical-form "prefix lines": tuples of the first `d`
/// coordinates (position of first nonzero coordinate = j, that coordinate
/// positive), reporting `(gcd, max_abs)` per prefix. The last coordinate is
/// handled arithmetically by the callers.
fn for_each_prefix_line(d: usize, t_max: u64, mut f: impl FnMut(u64, u64)) {
    // j = position of the first nonzero coordinate among the first d coords
    let t = t_max as i64;
    for j in 0..d {
        let free = d - 1 - j; // coordinates after the leading one
        let mut rest = vec![-t; free];
        for lead in 1..=t {
            loop {
                let mut g = lead as u64;
                let mut m = lead as u64;
                for &c in &rest {
                    g = gcd_u64(g, c.unsigned_abs());
                    m = m.max(c.unsigned_abs());
                }
                f(g, m);
                // odometer over rest
                let mut pos = free;
                let mut advanced = false;
                while pos > 0 {
                    pos -= 1;
                    if rest[pos] < t {
                        rest[pos] += 1;
                        for r in &mut rest[pos + 1..] {
                            *r = -t;
                        }
                        advanced = true;
                        break;
                    }
                }
                if !advanced {
                    for r in &mut rest {
                        *r = -t;
                    }
                    break;
                }
            }
        }
    }
}

/// Exact counts of canonical points with max coordinate at most each
/// threshold (ascending). With `affine_only`, points whose last coordinate
/// vanishes are excluded.
pub fn count_at_thresholds(d: usize, thresholds: &[u64], affine_only: bool) -> Result<Vec<u64>> {
    let cap = max_coord_cap(d)?;
    if thresholds.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::validation("thresholds must be ascending".to_string()));
    }
    let Some(&t_max) = thresholds.last() else {
        return Ok(Vec::new());
    };
    if t_max > cap {
        return Err(Error::size_limit(format!("threshold {t_max} exceeds cap {cap}")));
    }

    let line = |acc: &mut Vec<i64>, g: u64, m: u64| {
        let divs = moebius_divisors(g);
        for (ti, &t) in thresholds.iter().enumerate() {
            if t >= m {
                acc[ti] += coprime_line_count(&divs, g, t, !affine_only);
            }
        }
    };

    // the point (0, ..., 0, 1)
    let mut total: Vec<i64> = thresholds.iter().map(|&t| i64::from(t >= 1)).collect();

    // leading coordinate x_0 >= 1, parallel over x_0
    let t = t_max as i64;
    let chunks: Vec<Vec<i64>> = (1..=t)
        .into_par_iter()
        .map(|lead| {
            let mut acc = vec![0i64; thresholds.len()];
            let free = d - 1;
            let mut rest = vec![-t; free];
            loop {
                let mut g = lead as u64;
                let mut m = lead as u64;
                for &c in &rest {
                    g = gcd_u64(g, c.unsigned_abs());
                    m = m.max(c.unsigned_abs());
                }
                line(&mut acc, g, m);
                let mut pos = free;
                let mut advanced = false;
                while pos > 0 {
                    pos -= 1;
                    if rest[pos] < t {
                        rest[pos] += 1;
                        for r in &mut rest[pos + 1..] {
                            *r = -t;
                        }
                        advanced = true;
                        break;
                    }
                }
                if !advanced {
                    break;
                }
            }
            acc
        })
        .collect();
    for chunk in chunks {
        for (ti, v) in chunk.into_iter().enumerate() {
            total[ti] += v;
        }
    }

    // branches where x_0 = ... = x_{j-1} = 0, j >= 1
    for j in 1..d {
        let free = d - 1 - j;
        for lead in 1..=t {
            let mut rest = vec![-t; free];
            loop {
                let mut g = lead as u64;
                let mut m = lead as u64;
                for &c in &rest {
                    g = gcd_u64(g, c.unsigned_abs());
                    m = m.max(c.unsigned_abs());
                }
                line(&mut total, g, m);
                let mut pos = free;
                let mut advanced = false;
                while pos > 0 {
                    pos -= 1;
                    if rest[pos] < t {
                        rest[pos] += 1;
                        for r in &mut rest[pos + 1..] {
                            *r = -t;
                        }
                        advanced = true;
                        break;
                    }
                }
                if !advanced {
                    break;
                }
            }
        }
    }

    Ok(total
        .into_iter()
        .map(|v| u64::try_from(v).expect("counts are nonnegative"))
        .collect())
}

/// `N(B)`: number of canonical points with twisted height at most `bound`.
pub fn count_points(d: usize, bound: f64, twist: &MetricTwist) -> Result<u64> {
    let t = max_coord_threshold(d, bound, twist)?;
    Ok(count_at_thresholds(d, &[t], false)?[0])
}

/// Sampled counting series at the given ascending bounds.
pub fn count_series(d: usize, bounds: &[f64], twist: &MetricTwist) -> Result<crate::series::CountSeries> {
    let thresholds: Result<Vec<u64>> = bounds
        .iter()
        .map(|&b| max_coord_threshold(d, b, twist))
        .collect();
    let mut thresholds = thresholds?;
    let mut order: Vec<usize> = (0..thresholds.len()).collect();
    order.sort_by_key(|&i| thresholds[i]);
    thresholds.sort_unstable();
    let counts = count_at_thresholds(d, &thresholds, false)?;
    let mut samples: Vec<(f64, u64)> = bounds.iter().map(|&b| (b, 0)).collect();
    for (pos, &i) in order.iter().enumerate() {
        samples[i].1 = counts[pos];
    }
    crate::series::CountSeries::new(samples)
}

/// Histogram of canonical points by max coordinate value (index = max).
/// Small-range path used by the quotient experiments; `affine_only`
/// excludes points with vanishing last coordinate.
pub fn max_histogram(d: usize, t_max: u64, affine_only: bool) -> Result<Vec<u64>> {
    if t_max > hist_cap(d) {
        return Err(Error::size_limit(format!(
            "histogram range {t_max} exceeds cap {} for dimension {d}",
            hist_cap(d)
        )));
    }
    max_coord_cap(d)?;
    let mut hist = vec![0i64; t_max as usize + 1];
    if t_max >= 1 {
        hist[1] += 1; // the point (0, ..., 0, 1)
    }
    for_each_prefix_line(d, t_max, |g, m| {
        if m > t_max {
            return;
        }
        let mu = moebius_divisors(g);
        if g == 1 && !affine_only {
            hist[m as usize] += 1;
        }
        for &(e, s) in &mu {
            let up = t_max / e;
            let inside = (m / e).min(up);
            hist[m as usize] += s * 2 * inside as i64;
            for y in inside + 1..=up {
                hist[(e * y) as usize] += s * 2;
            }
        }
    });
    Ok(hist
        .into_iter()
        .map(|v| u64::try_from(v).expect("histogram entries are nonnegative"))
        .collect())
}

/// Truncated height zeta: `sum H(x)^{-s}` over points with height <= cutoff.
/// Deterministic sequential compensated summation.
pub fn height_zeta_partial(d: usize, s: f64, cutoff: f64, twist: &MetricTwist) -> Result<f64> {
    if s <= 0.0 {
        return Err(Error::domain("zeta exponent must be positive".to_string()));
    }
    let factor = twist.factor_f64();
    let mut acc = Kahan::default();
    for pt in PointIter::with_bound(d, cutoff, twist)? {
        let h = (pt.max_abs() as f64).powi(d as i32 + 1) * factor;
        acc.add(h.powf(-s));
    }
    Ok(acc.value())
}

// --- quadratic fields ----------------------------------------------------

/// A point of `P^d` over `Q(sqrt(m))`: coordinates `u + v*sqrt(m)` with
/// rational `u, v`.
#[derive(Debug, Clone)]
pub struct QuadPoint {
    m: i64,
    coords: Vec<(Ratio<i64>, Ratio<i64>)>,
}

impl QuadPoint {
    pub fn new(m: i64, coords: Vec<(Ratio<i64>, Ratio<i64>)>) -> Result<Self> {
        if m == 0 || m == 1 || !is_squarefree(m.unsigned_abs()) {
            return Err(Error::validation(format!(
                "field index m = {m} must be squarefree and not 0 or 1"
            )));
        }
        if coords.iter().all(|(u, v)| u.is_zero() && v.is_zero()) {
            return Err(Error::validation("all coordinates are zero".to_string()));
        }
        Ok(QuadPoint { m, coords })
    }

    pub fn field_index(&self) -> i64 {
        self.m
    }

    pub fn coords(&self) -> &[(Ratio<i64>, Ratio<i64>)] {
        &self.coords
    }
}

/// Norm of the fractional ideal generated by integral coordinates
/// `u + v*sqrt(m)` inside the maximal order of `Q(sqrt(m))`, via a 2x2
/// Hermite reduction of the Z-lattice spanned by the coordinates and their
/// `omega`-multiples.
pub fn quad_content_norm(m: i64, coords: &[(i128, i128)]) -> u128 {
    // basis (1, omega); omega = sqrt(m) or (1 + sqrt(m))/2 for m = 1 mod 4
    let one_mod_four = m.rem_euclid(4) == 1;
    let to_basis = |(u, v): (i128, i128)| -> (i128, i128) {
        if one_mod_four {
            (u - v, 2 * v)
        } else {
            (u, v)
        }
    };
    let times_omega = |(a, b): (i128, i128)| -> (i128, i128) {
        if one_mod_four {
            (b * ((m as i128 - 1) / 4), a + b)
        } else {
            (b * m as i128, a)
        }
    };

    let mut rows: Vec<(i128, i128)> = Vec::with_capacity(coords.len() * 2);
    for &c in coords {
        let b = to_basis(c);
        rows.push(b);
        rows.push(times_omega(b));
    }

    // Hermite reduction to [[a, b], [0, c]]
    let mut v1: (i128, i128) = (0, 0);
    let mut c2: i128 = 0;
    for row in rows {
        let mut row = row;
        // cancel the first component against v1
        loop {
            if row.0 == 0 {
                break;
            }
            if v1.0 == 0 {
                std::mem::swap(&mut v1, &mut row);
                continue;
            }
            let q = row.0.div_euclid(v1.0);
            row.0 -= q * v1.0;
            row.1 -= q * v1.1;
            if row.0 != 0 {
                std::mem::swap(&mut v1, &mut row);
            }
        }
        c2 = c2.gcd(&row.1);
    }
    // fold v1's second component into the (0, *) sublattice — everything
    // with zero first component stays, so reduce v1.1 mod nothing; the
    // determinant is |v1.0 * c2|
    (v1.0.unsigned_abs()) * (c2.unsigned_abs())
}

/// Absolute multiplicative naive height of a point of `P^d(Q(sqrt(m)))`:
/// clear denominators, divide the archimedean product by the content-ideal
/// norm, and take the square root (degree of the field).
pub fn quad_height(pt: &QuadPoint) -> Result<f64> {
    let m = pt.m;
    // clear denominators
    let mut lcm: i64 = 1;
    for (u, v) in &pt.coords {
        lcm = lcm.lcm(u.denom()).lcm(v.denom());
    }
    let ints: Vec<(i128, i128)> = pt
        .coords
        .iter()
        .map(|(u, v)| {
            (
                (u.numer() * (lcm / u.denom())) as i128,
                (v.numer() * (lcm / v.denom())) as i128,
            )
        })
        .collect();
    let norm = quad_content_norm(m, &ints);
    debug_assert!(norm > 0);

    let s = (m.unsigned_abs() as f64).sqrt();
    let (mut max1, mut max2) = (0f64, 0f64);
    for &(u, v) in &ints {
        let (u, v) = (u as f64, v as f64);
        let (e1, e2) = if m > 0 {
            ((u + v * s).abs(), (u - v * s).abs())
        } else {
            let r = (u * u + (m.unsigned_abs() as f64) * v * v).sqrt();
            (r, r)
        };
        max1 = max1.max(e1);
        max2 = max2.max(e2);
    }
    let relative = max1 * max2 / norm as f64;
    Ok(relative.sqrt())
}

/// Anticanonical height of a quadratic point of `P^d`: the absolute naive
/// height raised to `d + 1`.
pub fn quad_anticanonical_height(pt: &QuadPoint, d: usize) -> Result<f64> {
    if pt.coords.len() != d + 1 {
        return Err(Error::validation(format!(
            "expected {} coordinates for P^{d}, got {}",
            d + 1,
            pt.coords.len()
        )));
    }
    Ok(quad_height(pt)?.powi(d as i32 + 1))
}
