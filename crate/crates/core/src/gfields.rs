//! Desk-scale enumeration of Galois fields over Q by discriminant:
//! quadratic fields (fundamental discriminants), cyclic cubics (conductor
//! sieve with class-field multiplicities), Klein-four fields (pairs of
//! quadratic subfields), CSV ingestion for groups we do not enumerate, and
//! the counting functions.

use std::io::BufRead;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{is_prime_u64, nth_root_floor, primes_up_to, squarefree_kernel};
use crate::permgroup::{gfie_fiber_count, PermGroup};
use crate::series::CountSeries;

/// Ramification data at one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamPrime {
    pub p: u64,
    /// label of the inertia class within the group (never the identity)
    pub inertia_class: String,
    /// false when p divides the inertia subgroup order
    pub tame: bool,
}

/// A Galois number field over Q with its group label and per-prime inertia.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GFieldRecord {
    pub group_label: String,
    pub degree: u32,
    /// signed discriminant
    pub disc: i64,
    pub ram_primes: Vec<RamPrime>,
    /// provenance: conductor, subfield triple, or CSV row id
    pub defining_data: String,
}

impl GFieldRecord {
    /// `d_L`: the absolute discriminant.
    pub fn d_l(&self) -> u64 {
        self.disc.unsigned_abs()
    }

    pub fn validate(&self) -> Result<()> {
        if self.disc == 0 {
            return Err(Error::validation("discriminant must be nonzero".to_string()));
        }
        for rp in &self.ram_primes {
            if !is_prime_u64(rp.p) {
                return Err(Error::validation(format!("{} is not prime", rp.p)));
            }
            if self.disc.unsigned_abs() % rp.p != 0 {
                return Err(Error::validation(format!(
                    "ramified prime {} does not divide disc {}",
                    rp.p, self.disc
                )));
            }
            if rp.inertia_class.is_empty()
                || rp.inertia_class == "1"
                || rp.inertia_class == "id"
            {
                return Err(Error::validation(format!(
                    "inertia class at {} must be a non-identity class",
                    rp.p
                )));
            }
            if let Some(order) = inertia_order_by_convention(&self.group_label, &rp.inertia_class) {
                if rp.tame != (rp.p % order != 0 || rp.p > order) {
                    // tame iff p does not divide the inertia order
                    let expected = order % rp.p != 0;
                    if rp.tame != expected {
                        return Err(Error::validation(format!(
                            "tame flag at {} contradicts inertia order {order}",
                            rp.p
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Inertia subgroup orders for the label conventions of the built-in
/// enumerations; None for groups we only ingest.
fn inertia_order_by_convention(group: &str, class: &str) -> Option<u64> {
    match (group, class) {
        ("C2", "s") => Some(2),
        ("C3", "c3") => Some(3),
        ("V4", "s1") | ("V4", "s2") | ("V4", "s3") => Some(2),
        ("V4", "full") => Some(4),
        _ => None,
    }
}

// --- quadratic fields ------------------------------------------------------

/// Cap for materializing quadratic records (counting has no such cap).
pub const QUADRATIC_RECORD_CAP: u64 = 10_000_000;
/// Cap for quadratic disc counting.
pub const QUADRATIC_COUNT_CAP: u64 = 1_000_000_000;

const SEGMENT: u64 = 1 << 20;

fn squarefree_segment(lo: u64, hi: u64, primes: &[u64]) -> Vec<bool> {
    let mut flags = vec![true; (hi - lo) as usize];
    if lo == 0 {
        flags[0] = false; // 0 is not squarefree
    }
    for &p in primes {
        let p2 = p * p;
        if p2 >= hi {
            break;
        }
        let mut q = lo.div_ceil(p2) * p2;
        while q < hi {
            flags[(q - lo) as usize] = false;
            q += p2;
        }
    }
    flags
}

/// Visit every fundamental discriminant `D` with `|D| <= bound`, grouped by
/// the squarefree core `n = |m|` in ascending order (`D(m) = m` for
/// `m = 1 mod 4`, else `4m`).
pub fn for_each_fundamental_disc(bound: u64, mut f: impl FnMut(i64)) -> Result<()> {
    if bound > QUADRATIC_COUNT_CAP {
        return Err(Error::size_limit(format!(
            "quadratic bound {bound} exceeds cap {QUADRATIC_COUNT_CAP}"
        )));
    }
    let primes = primes_up_to(nth_root_floor(bound as u128, 2) + 1);
    let mut lo = 1u64;
    while lo <= bound {
        let hi = (lo + SEGMENT).min(bound + 1);
        let flags = squarefree_segment(lo, hi, &primes);
        for n in lo..hi {
            if !flags[(n - lo) as usize] {
                continue;
            }
            for d in discs_for_core(n, bound) {
                f(d);
            }
        }
        lo = hi;
    }
    Ok(())
}

/// The 0, 1, or 2 fundamental discriminants with squarefree core `±n`,
/// restricted to `|D| <= bound` (n itself must be squarefree).
fn discs_for_core(n: u64, bound: u64) -> Vec<i64> {
    let mut out = Vec::with_capacity(2);
    if n == 1 {
        // only m = -1 gives a field: D = -4
        if 4 <= bound {
            out.push(-4);
        }
        return out;
    }
    match n % 4 {
        1 => {
            if n <= bound {
                out.push(n as i64); // m = n = 1 mod 4
            }
            if 4 * n <= bound {
                out.push(-(4 * n as i64)); // m = -n = 3 mod 4
            }
        }
        3 => {
            if n <= bound {
                out.push(-(n as i64)); // m = -n = 1 mod 4
            }
            if 4 * n <= bound {
                out.push(4 * n as i64); // m = n = 3 mod 4
            }
        }
        2 => {
            if 4 * n <= bound {
                out.push(4 * n as i64);
                out.push(-(4 * n as i64));
            }
        }
        _ => {} // n = 0 mod 4 is never squarefree
    }
    out
}

/// Exact counts of quadratic fields with `|disc| <= B` at each sample bound.
pub fn quadratic_count_series(bounds: &[f64]) -> Result<CountSeries> {
    let caps: Vec<u64> = bounds.iter().map(|&b| b.max(0.0) as u64).collect();
    let Some(&bound) = caps.last() else {
        return CountSeries::new(Vec::new());
    };
    if bound > QUADRATIC_COUNT_CAP {
        return Err(Error::size_limit(format!(
            "quadratic bound {bound} exceeds cap {QUADRATIC_COUNT_CAP}"
        )));
    }
    let primes = primes_up_to(nth_root_floor(bound as u128, 2) + 1);
    let seg_starts: Vec<u64> = (0..)
        .map(|i| 1 + i * SEGMENT)
        .take_while(|&lo| lo <= bound)
        .collect();
    let buckets: Vec<Vec<u64>> = seg_starts
        .par_iter()
        .map(|&lo| {
            let hi = (lo + SEGMENT).min(bound + 1);
            let flags = squarefree_segment(lo, hi, &primes);
            let mut local = vec![0u64; caps.len()];
            for n in lo..hi {
                if !flags[(n - lo) as usize] {
                    continue;
                }
                for d in discs_for_core(n, bound) {
                    let abs = d.unsigned_abs();
                    if let Some(idx) = caps.iter().position(|&c| abs <= c) {
                        local[idx] += 1;
                    }
                }
            }
            local
        })
        .collect();
    let mut totals = vec![0u64; caps.len()];
    for b in buckets {
        for (i, v) in b.into_iter().enumerate() {
            totals[i] += v;
        }
    }
    let mut cum = 0u64;
    let samples: Vec<(f64, u64)> = bounds
        .iter()
        .zip(totals)
        .map(|(&b, v)| {
            cum += v;
            (b, cum)
        })
        .collect();
    CountSeries::new(samples)
}

/// All quadratic field records with `|disc| <= bound`, sorted by
/// `(|disc|, disc)`, with per-prime inertia data.
pub fn enumerate_quadratic(bound: u64) -> Result<Vec<GFieldRecord>> {
    if bound > QUADRATIC_RECORD_CAP {
        return Err(Error::size_limit(format!(
            "quadratic record bound {bound} exceeds cap {QUADRATIC_RECORD_CAP}"
        )));
    }
    let mut records = Vec::new();
    for_each_fundamental_disc(bound, |d| {
        records.push(quadratic_record(d));
    })?;
    records.sort_by_key(|r| (r.d_l(), r.disc));
    Ok(records)
}

/// The record of the quadratic field with fundamental discriminant `d`.
pub fn quadratic_record(d: i64) -> GFieldRecord {
    let abs = d.unsigned_abs();
    let mut ram = Vec::new();
    if abs % 2 == 0 {
        ram.push(RamPrime {
            p: 2,
            inertia_class: "s".to_string(),
            tame: false,
        });
    }
    let mut rest = abs >> abs.trailing_zeros();
    let mut p = 3u64;
    while p * p <= rest {
        if rest % p == 0 {
            ram.push(RamPrime {
                p,
                inertia_class: "s".to_string(),
                tame: true,
            });
            while rest % p == 0 {
                rest /= p;
            }
        }
        p += 2;
    }
    if rest > 1 {
        ram.push(RamPrime {
            p: rest,
            inertia_class: "s".to_string(),
            tame: true,
        });
    }
    GFieldRecord {
        group_label: "C2".to_string(),
        degree: 2,
        disc: d,
        ram_primes: ram,
        defining_data: format!("fundamental_disc={d}"),
    }
}

// --- cyclic cubic fields ----------------------------------------------------

/// Cap on the cubic discriminant bound (conductor <= 10^5).
pub const CUBIC_COUNT_CAP: u64 = 10_000_000_000;

/// Admissible cyclic-cubic conductors `f = 9^e * p_1 ... p_t` with distinct
/// primes `p_i = 1 mod 3`, `t + e >= 1`; returns `t + e` or None.
fn cubic_conductor_weight(f: u64) -> Option<u32> {
    if f < 7 {
        return None;
    }
    let mut parts = 0u32;
    let mut n = f;
    let three = n % 3 == 0;
    if three {
        if n % 9 != 0 || n % 27 == 0 {
            return None;
        }
        n /= 9;
        parts += 1;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            if p % 3 != 1 {
                return None;
            }
            n /= p;
            if n % p == 0 {
                return None; // not squarefree
            }
            parts += 1;
        }
        p += 1;
    }
    if n > 1 {
        if n % 3 != 1 {
            return None;
        }
        parts += 1;
    }
    (parts >= 1).then_some(parts)
}

/// Number of cyclic cubic fields with conductor `f`: `2^{t+e-1}` for an
/// admissible conductor (class field theory over Q; cross-checked against
/// the classical first conductors in the tests).
pub fn cyclic_cubic_multiplicity(f: u64) -> u64 {
    match cubic_conductor_weight(f) {
        Some(parts) => 1u64 << (parts - 1),
        None => 0,
    }
}

/// All cyclic cubic fields with `disc = f^2 <= bound`, one record per field.
pub fn enumerate_cyclic_cubic(bound: u64) -> Result<Vec<GFieldRecord>> {
    if bound > CUBIC_COUNT_CAP {
        return Err(Error::size_limit(format!(
            "cubic bound {bound} exceeds cap {CUBIC_COUNT_CAP}"
        )));
    }
    let fmax = nth_root_floor(bound as u128, 2);
    let mut records = Vec::new();
    for f in 7..=fmax {
        let mult = cyclic_cubic_multiplicity(f);
        if mult == 0 {
            continue;
        }
        let mut ram = Vec::new();
        let mut rest = f;
        if rest % 3 == 0 {
            ram.push(RamPrime {
                p: 3,
                inertia_class: "c3".to_string(),
                tame: false,
            });
            rest /= 9;
        }
        let mut p = 2u64;
        while p * p <= rest {
            if rest % p == 0 {
                ram.push(RamPrime {
                    p,
                    inertia_class: "c3".to_string(),
                    tame: true,
                });
                rest /= p;
            }
            p += 1;
        }
        if rest > 1 {
            ram.push(RamPrime {
                p: rest,
                inertia_class: "c3".to_string(),
                tame: true,
            });
        }
        ram.sort_by_key(|r| r.p);
        for branch in 1..=mult {
            records.push(GFieldRecord {
                group_label: "C3".to_string(),
                degree: 3,
                disc: (f * f) as i64,
                ram_primes: ram.clone(),
                defining_data: format!("conductor={f};branch={branch}of{mult}"),
            });
        }
    }
    Ok(records)
}

/// Counts of cyclic cubic fields with `disc <= B` at each sample bound.
pub fn cyclic_cubic_count_series(bounds: &[f64]) -> Result<CountSeries> {
    let Some(&max_b) = bounds.last() else {
        return CountSeries::new(Vec::new());
    };
    if max_b as u64 > CUBIC_COUNT_CAP {
        return Err(Error::size_limit(format!(
            "cubic bound {max_b} exceeds cap {CUBIC_COUNT_CAP}"
        )));
    }
    let fmax = nth_root_floor(max_b as u128, 2);
    let mut weighted: Vec<(u64, u64)> = Vec::new(); // (disc, multiplicity)
    for f in 7..=fmax {
        let mult = cyclic_cubic_multiplicity(f);
        if mult > 0 {
            weighted.push((f * f, mult));
        }
    }
    let samples: Vec<(f64, u64)> = bounds
        .iter()
        .map(|&b| {
            let cap = b as u64;
            let n: u64 = weighted
                .iter()
                .take_while(|&&(d, _)| d <= cap)
                .map(|&(_, m)| m)
                .sum();
            (b, n)
        })
        .collect();
    CountSeries::new(samples)
}

// --- Klein four fields --------------------------------------------------

/// Cap on the V4 discriminant bound.
pub const V4_COUNT_CAP: u64 = 100_000_000;

/// All Klein-four fields with `d_L = |D_1 D_2 D_3| <= bound`, one record per
/// field, sorted by `(d_L, subfield triple)`. Subfield discriminants are
/// carried in `defining_data`; inertia labels `s1..s3` point at the sorted
/// triple position of the subfield in which the prime is unramified.
pub fn enumerate_v4(bound: u64) -> Result<Vec<GFieldRecord>> {
    if bound > V4_COUNT_CAP {
        return Err(Error::size_limit(format!(
            "V4 bound {bound} exceeds cap {V4_COUNT_CAP}"
        )));
    }
    let mut discs: Vec<i64> = Vec::new();
    for_each_fundamental_disc(nth_root_floor(bound as u128, 2), |d| discs.push(d))?;
    discs.sort_by_key(|d| (d.unsigned_abs(), *d));

    let core = |d: i64| -> i64 {
        if d.rem_euclid(4) == 1 {
            d
        } else {
            d / 4
        }
    };
    let disc_of_core = |m: i64| -> i64 {
        if m.rem_euclid(4) == 1 {
            m
        } else {
            4 * m
        }
    };

    let mut records = Vec::new();
    for (i, &d1) in discs.iter().enumerate() {
        if (d1.unsigned_abs() as u128).pow(3) > bound as u128 {
            break;
        }
        for &d2 in &discs[i + 1..] {
            let (m1, m2) = (core(d1), core(d2));
            let g = num_integer::gcd(m1.abs(), m2.abs());
            let m3 = (m1 / g) * (m2 / g) * if m1 < 0 && m2 < 0 { -1 } else { 1 };
            // m3 = squarefree core of m1*m2 (signs handled directly)
            let m3 = if (m1 < 0) ^ (m2 < 0) { -m3.abs() } else { m3.abs() };
            debug_assert_ne!(m3, 1);
            let d3 = disc_of_core(m3);
            let key = |d: i64| (d.unsigned_abs(), d);
            let d_l = (d1.unsigned_abs() as u128) * (d2.unsigned_abs() as u128) * (d3.unsigned_abs() as u128);
            if d_l > bound as u128 {
                continue;
            }
            let mut triple = [d1, d2, d3];
            triple.sort_by_key(|&d| key(d));
            // canonical generating pair: the two smallest subfields
            if [triple[0], triple[1]] != [d1, d2] {
                continue;
            }
            records.push(v4_record(triple, d_l as u64));
        }
    }
    records.sort_by_key(|r| (r.d_l(), r.defining_data.clone()));
    Ok(records)
}

fn v4_record(triple: [i64; 3], d_l: u64) -> GFieldRecord {
    let mut ram = Vec::new();
    let mut rest = d_l;
    let mut push = |p: u64, rest: &mut u64| {
        while *rest % p == 0 {
            *rest /= p;
        }
        let divided: Vec<usize> = (0..3)
            .filter(|&k| triple[k].unsigned_abs() % p == 0)
            .collect();
        let tame = p != 2;
        let class = if divided.len() == 2 {
            let unramified = (0..3).find(|k| !divided.contains(k)).unwrap();
            format!("s{}", unramified + 1)
        } else {
            // p ramifies in every subfield: inertia is the full group
            "full".to_string()
        };
        ram.push(RamPrime {
            p,
            inertia_class: class,
            tame,
        });
    };
    if rest % 2 == 0 {
        push(2, &mut rest);
    }
    let mut p = 3u64;
    while p * p <= rest {
        if rest % p == 0 {
            push(p, &mut rest);
        }
        p += 2;
    }
    if rest > 1 {
        push(rest, &mut rest);
    }
    ram.sort_by_key(|r| r.p);
    GFieldRecord {
        group_label: "V4".to_string(),
        degree: 4,
        disc: d_l as i64,
        ram_primes: ram,
        defining_data: format!("subfields={},{},{}", triple[0], triple[1], triple[2]),
    }
}

// --- CSV ingestion --------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct IngestReport {
    pub records: Vec<GFieldRecord>,
    /// (line number, reason) for rows failing validation
    pub rejected: Vec<(usize, String)>,
}

/// Read records from CSV with header `group,degree,disc,ram_data` where
/// `ram_data` is `p:class:tame` triples joined by `;` (empty for unramified
/// everywhere, which cannot happen for genuine fields but is accepted for
/// counting experiments). Malformed structure is a hard error; rows failing
/// semantic validation are collected in the report.
pub fn ingest_fields_csv<R: BufRead>(reader: R) -> Result<IngestReport> {
    let mut records = Vec::new();
    let mut rejected = Vec::new();
    let mut lines = reader.lines().enumerate();
    match lines.next() {
        Some((_, Ok(h))) if h.trim() == "group,degree,disc,ram_data" => {}
        Some((_, Ok(h))) => {
            return Err(Error::Parse {
                line: 1,
                message: format!("expected header group,degree,disc,ram_data, got {h:?}"),
            })
        }
        Some((_, Err(e))) => return Err(e.into()),
        None => return Ok(IngestReport { records, rejected }),
    }
    for (idx, line) in lines {
        let lineno = idx + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.splitn(4, ',').collect();
        if fields.len() != 4 {
            return Err(Error::Parse {
                line: lineno,
                message: "expected 4 comma-separated fields".to_string(),
            });
        }
        let degree: u32 = fields[1].trim().parse().map_err(|e| Error::Parse {
            line: lineno,
            message: format!("bad degree: {e}"),
        })?;
        let disc: i64 = fields[2].trim().parse().map_err(|e| Error::Parse {
            line: lineno,
            message: format!("bad disc: {e}"),
        })?;
        let mut ram = Vec::new();
        let mut ram_ok = true;
        for part in fields[3].split(';').filter(|s| !s.trim().is_empty()) {
            let bits: Vec<&str> = part.split(':').collect();
            if bits.len() != 3 {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("ram entry {part:?} is not p:class:tame"),
                });
            }
            let Ok(p) = bits[0].trim().parse::<u64>() else {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("bad ram prime {:?}", bits[0]),
                });
            };
            let tame = match bits[2].trim() {
                "true" | "1" => true,
                "false" | "0" => false,
                other => {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("bad tame flag {other:?}"),
                    })
                }
            };
            ram.push(RamPrime {
                p,
                inertia_class: bits[1].trim().to_string(),
                tame,
            });
            ram_ok &= true;
        }
        let record = GFieldRecord {
            group_label: fields[0].trim().to_string(),
            degree,
            disc,
            ram_primes: ram,
            defining_data: format!("csv_line={lineno}"),
        };
        if !ram_ok {
            continue;
        }
        match record.validate() {
            Ok(()) => records.push(record),
            Err(e) => rejected.push((lineno, e.to_string())),
        }
    }
    Ok(IngestReport { records, rejected })
}

// --- counting -------------------------------------------------------------

/// `n(G, B)`: how many of the records have `d_L <= B`, per sample bound.
/// The records must share one group label.
pub fn malle_count(records: &[GFieldRecord], bounds: &[f64]) -> Result<CountSeries> {
    if let Some(first) = records.first() {
        if let Some(bad) = records.iter().find(|r| r.group_label != first.group_label) {
            return Err(Error::domain(format!(
                "mixed group labels {} and {}",
                first.group_label, bad.group_label
            )));
        }
    }
    let mut discs: Vec<u64> = records.iter().map(|r| r.d_l()).collect();
    discs.sort_unstable();
    let samples: Vec<(f64, u64)> = bounds
        .iter()
        .map(|&b| {
            let n = discs.partition_point(|&d| d as f64 <= b) as u64;
            (b, n)
        })
        .collect();
    CountSeries::new(samples)
}

/// Large-field counts: small-field counts scaled by the exact fiber ratio
/// of the group. Errors if the scaled counts are not integers.
pub fn large_field_count(
    records: &[GFieldRecord],
    group: &PermGroup,
    bounds: &[f64],
) -> Result<CountSeries> {
    let ratio = gfie_fiber_count(group)?;
    let small = malle_count(records, bounds)?;
    let samples: Result<Vec<(f64, u64)>> = small
        .samples
        .into_iter()
        .map(|(b, n)| {
            let scaled = Ratio::from_integer(n as i64) * ratio;
            if !scaled.is_integer() {
                return Err(Error::domain(format!(
                    "large-field count {scaled} at B = {b} is not an integer"
                )));
            }
            Ok((b, scaled.to_integer() as u64))
        })
        .collect();
    CountSeries::new(samples?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn discs_up_to(bound: u64) -> Vec<i64> {
        let mut v = Vec::new();
        for_each_fundamental_disc(bound, |d| v.push(d)).unwrap();
        v.sort_by_key(|d| (d.unsigned_abs(), *d));
        v
    }

    #[test]
    fn fundamental_discs_first_values() {
        let ds = discs_up_to(25);
        let expected: Vec<i64> = vec![
            -3, -4, 5, -7, -8, 8, -11, 12, 13, -15, 17, -19, -20, 21, -23, -24, 24,
        ];
        assert_eq!(ds, expected);
    }

    #[test]
    fn smallest_positive_disc_is_five() {
        let first_pos = discs_up_to(30).into_iter().find(|&d| d > 0).unwrap();
        assert_eq!(first_pos, 5);
    }

    #[test]
    fn bound_four_contains_exactly_the_two_imaginary_fields() {
        assert_eq!(discs_up_to(4), vec![-3, -4]);
    }

    #[test]
    fn every_emitted_disc_is_fundamental_by_direct_test() {
        for d in discs_up_to(2000) {
            let abs = d.unsigned_abs();
            let r = d.rem_euclid(4);
            let ok = if r == 1 {
                crate::numeric::is_squarefree(abs)
            } else if r == 0 {
                let m = d / 4;
                let mr = m.rem_euclid(4);
                crate::numeric::is_squarefree(m.unsigned_abs()) && (mr == 2 || mr == 3)
            } else {
                false
            };
            assert!(ok, "emitted {d} is not fundamental");
            assert!(abs <= 2000);
        }
        // no duplicates
        let ds = discs_up_to(2000);
        let mut dedup = ds.clone();
        dedup.dedup();
        assert_eq!(ds.len(), dedup.len());
    }

    #[test]
    fn quadratic_series_matches_enumeration() {
        let series = quadratic_count_series(&[10.0, 100.0, 1000.0]).unwrap();
        for (b, n) in series.samples {
            let brute = discs_up_to(b as u64).len() as u64;
            assert_eq!(n, brute, "B = {b}");
        }
    }

    #[test]
    fn quadratic_records_are_validated() {
        let recs = enumerate_quadratic(100).unwrap();
        assert!(recs.iter().all(|r| r.validate().is_ok()));
        // the field with disc 8 is wild at 2, disc 5 tame everywhere
        let r8 = recs.iter().find(|r| r.disc == 8).unwrap();
        assert!(!r8.ram_primes[0].tame);
        let r5 = recs.iter().find(|r| r.disc == 5).unwrap();
        assert!(r5.ram_primes.iter().all(|rp| rp.tame));
        assert_eq!(r5.ram_primes.len(), 1);
        // disc -24: wild at 2, tame at 3
        let r24 = recs.iter().find(|r| r.disc == -24).unwrap();
        let tames: Vec<bool> = r24.ram_primes.iter().map(|rp| rp.tame).collect();
        assert_eq!(tames, vec![false, true]);
    }

    #[test]
    fn cubic_conductors_first_values() {
        // classical first cyclic cubic fields: disc 49 (f=7), 81 (f=9),
        // 169 (f=13), 361 (f=19), then 961, 1369, 1849, 3721, two at 3969,
        // 4489
        let recs = enumerate_cyclic_cubic(5000).unwrap();
        let discs: Vec<i64> = recs.iter().map(|r| r.disc).collect();
        assert_eq!(
            discs,
            vec![49, 81, 169, 361, 961, 1369, 1849, 3721, 3969, 3969, 4489]
        );
        // conductor 9 gives exactly one field with disc 81
        assert_eq!(cyclic_cubic_multiplicity(9), 1);
        assert_eq!(cyclic_cubic_multiplicity(7), 1);
        // conductor 63 = 9*7 gives two fields
        assert_eq!(cyclic_cubic_multiplicity(63), 2);
        // conductor 91 = 7*13 gives two fields
        assert_eq!(cyclic_cubic_multiplicity(91), 2);
        // rejected conductors
        for f in [2u64, 3, 4, 5, 6, 8, 10, 11, 12, 14, 15, 21, 27, 49, 99] {
            assert_eq!(cyclic_cubic_multiplicity(f), 0, "f = {f}");
        }
    }

    #[test]
    fn cubic_disc_is_square_and_ramified_set_is_conductor() {
        for r in enumerate_cyclic_cubic(100_000).unwrap() {
            let f = nth_root_floor(r.disc as u128, 2);
            assert_eq!((f * f) as i64, r.disc);
            let mut prod = 1u64;
            for rp in &r.ram_primes {
                prod *= rp.p;
                assert_eq!(rp.tame, rp.p != 3);
                assert!(f % rp.p == 0);
            }
            // squarefree kernel of the conductor equals the ramified product
            assert_eq!(squarefree_kernel(f as i64) as u64, prod);
            assert!(r.validate().is_ok());
        }
    }

    #[test]
    fn cubic_series_matches_records() {
        let bounds = [100.0, 10_000.0, 1_000_000.0];
        let series = cyclic_cubic_count_series(&bounds).unwrap();
        let recs = enumerate_cyclic_cubic(1_000_000).unwrap();
        for (b, n) in series.samples {
            let brute = recs.iter().filter(|r| r.disc as f64 <= b).count() as u64;
            assert_eq!(n, brute);
        }
    }

    #[test]
    fn v4_classical_fields() {
        let recs = enumerate_v4(3000).unwrap();
        // Q(i, sqrt(2)) = Q(zeta_8): subfields -4, 8, -8, d_L = 256
        let zeta8 = recs.iter().find(|r| r.d_l() == 256).unwrap();
        assert_eq!(zeta8.defining_data, "subfields=-4,-8,8");
        // Q(sqrt2, sqrt3) has subfields 8, 12, 24 -> 2304; Q(i, sqrt6) and
        // Q(sqrt-2, sqrt3) share that discriminant
        let at_2304: Vec<&str> = recs
            .iter()
            .filter(|r| r.d_l() == 2304)
            .map(|r| r.defining_data.as_str())
            .collect();
        assert_eq!(
            at_2304,
            vec!["subfields=-4,-24,24", "subfields=-8,12,-24", "subfields=8,12,24"]
        );
        // smallest V4 field: Q(i, sqrt(3)) with subfields -3, -4, 12: 144
        assert_eq!(recs.first().unwrap().d_l(), 144);
    }

    #[test]
    fn v4_no_duplicates_and_valid() {
        let recs = enumerate_v4(100_000).unwrap();
        let mut keys: Vec<&str> = recs.iter().map(|r| r.defining_data.as_str()).collect();
        let n = keys.len();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), n);
        for r in &recs {
            assert!(r.validate().is_ok(), "{r:?}");
            // odd tame primes ramify in exactly two subfields
            for rp in &r.ram_primes {
                if rp.p != 2 {
                    assert!(rp.inertia_class.starts_with('s'));
                }
            }
        }
    }

    #[test]
    fn ingest_round_trip_and_rejection() {
        let csv = "group,degree,disc,ram_data\n\
                   S3,6,-23,23:t:true\n\
                   S3,6,-31,31:t:true\n\
                   S3,6,-44,11:t:true;2:t:false\n\
                   S3,6,49,5:t:true\n";
        let report = ingest_fields_csv(csv.as_bytes()).unwrap();
        assert_eq!(report.records.len(), 3);
        // the row with 5 not dividing 49 is rejected with its line number
        assert_eq!(report.rejected.len(), 1);
        assert_eq!(report.rejected[0].0, 5);

        assert!(ingest_fields_csv("bad,header\n".as_bytes()).is_err());
        assert!(ingest_fields_csv("group,degree,disc,ram_data\nS3,6,notanint,\n".as_bytes()).is_err());
        let empty = ingest_fields_csv("group,degree,disc,ram_data\n".as_bytes()).unwrap();
        assert!(empty.records.is_empty());
    }

    #[test]
    fn malle_count_and_fiber_scaling() {
        let recs = enumerate_quadratic(100).unwrap();
        let series = malle_count(&recs, &[10.0, 50.0, 100.0]).unwrap();
        let brute10 = recs.iter().filter(|r| r.d_l() <= 10).count() as u64;
        assert_eq!(series.samples[0].1, brute10);
        assert_eq!(
            series.samples.last().unwrap().1,
            recs.len() as u64
        );
        // empty record set: all-zero series
        let empty = malle_count(&[], &[10.0, 100.0]).unwrap();
        assert!(empty.samples.iter().all(|&(_, n)| n == 0));
        // mixed groups rejected
        let mut mixed = recs.clone();
        mixed.push(enumerate_cyclic_cubic(100).unwrap().pop().unwrap());
        assert!(malle_count(&mixed, &[10.0]).is_err());

        // C3 large-field count is twice the small-field count
        let cubic = enumerate_cyclic_cubic(100_000).unwrap();
        let c3 = PermGroup::cyclic(3).unwrap();
        let small = malle_count(&cubic, &[1000.0, 100_000.0]).unwrap();
        let large = large_field_count(&cubic, &c3, &[1000.0, 100_000.0]).unwrap();
        for (s, l) in small.samples.iter().zip(&large.samples) {
            assert_eq!(l.1, 2 * s.1);
        }
    }
}
