//! The leading constant for point counts on `P^d` over Q as an Euler product
//! of local densities times an archimedean factor.
//!
//! The finite places telescope exactly: `(1 - 1/p) * sum_{i<=d} p^{-i}
//! = 1 - p^{-(d+1)}`, so the untwisted finite part is `1/zeta(d+1)` and a
//! twist multiplies in `p^{-a_p}` per twisted prime. The archimedean factor
//! is the chart integral of `max(1, |x_1|, …, |x_d|)^{-(d+1)}` over `R^d`,
//! normalized by a constant pinned against the d = 1 enumeration (the chart
//! Lebesgue integral overcounts the normalized density by `d + 1`).

use std::sync::OnceLock;

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::heights::{count_series, MetricTwist};
use crate::numeric::{is_prime_u64, sig15, zeta};

/// Local density of `P^d` at `p` with twist exponent `a`:
/// `p^{-a} * sum_{i=0}^{d} p^{-i}`.
#[derive(Debug, Clone, Serialize)]
pub struct LocalDensity {
    pub p: u64,
    pub d: usize,
    #[serde(with = "crate::ratio_serde")]
    pub a_p: Ratio<i64>,
    /// exact value when the exponent is integral
    pub exact: Option<String>,
    pub value: f64,
}

/// Exact local density for integral twist exponents.
pub fn local_density_exact(d: usize, p: u64, a: i64) -> Option<Ratio<i128>> {
    let p = p as i128;
    let mut sum = Ratio::new(0, 1);
    let mut pw: i128 = 1;
    for _ in 0..=d {
        sum += Ratio::new(1, pw);
        pw = pw.checked_mul(p)?;
    }
    let mut factor = Ratio::new(1, 1);
    for _ in 0..a.unsigned_abs() {
        factor *= if a >= 0 {
            Ratio::new(1, p)
        } else {
            Ratio::new(p, 1)
        };
    }
    Some(sum * factor)
}

pub fn local_density(d: usize, p: u64, a: Ratio<i64>) -> Result<LocalDensity> {
    if !is_prime_u64(p) {
        return Err(Error::validation(format!("{p} is not prime")));
    }
    let value: f64 = (0..=d).map(|i| (p as f64).powi(-(i as i32))).sum::<f64>()
        * (p as f64).powf(-a.to_f64().unwrap());
    let exact = if a.is_integer() {
        local_density_exact(d, p, a.to_integer()).map(|r| {
            if r.is_integer() {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        })
    } else {
        None
    };
    Ok(LocalDensity {
        p,
        d,
        a_p: a,
        exact,
        value,
    })
}

/// Product over all finite places of `(1 - 1/p) * density_p`. Untwisted
/// factors telescope to `1/zeta(d+1)`; twisted primes contribute `p^{-a_p}`.
pub fn finite_part(d: usize, twist: &MetricTwist) -> f64 {
    let mut value = 1.0 / zeta(d as f64 + 1.0);
    for (&p, a) in twist.entries() {
        value *= (p as f64).powf(-a.to_f64().unwrap());
    }
    value
}

/// Exact chart integral of `max(1, |x_1|, …, |x_d|)^{-(d+1)}` over `R^d`,
/// by decomposing into the unit box plus one region per coordinate
/// attaining the max. Each outer region integrates to `2^d`, so the total
/// is `(d+1) * 2^d`.
pub fn archimedean_chart_integral(d: usize) -> Result<Ratio<i64>> {
    if d == 0 || d > 4 {
        return Err(Error::validation(format!("dimension {d} not supported (1..=4)")));
    }
    let two_pow_d = 1i64 << d;
    // unit box: volume 2^d, integrand 1
    let mut total = Ratio::from_integer(two_pow_d);
    for _region in 0..d {
        // |x_j| >= 1 and |x_i| <= |x_j|: slice area (2u)^{d-1}, integrand
        // u^{-(d+1)}, both signs of x_j:
        //   2 * 2^{d-1} * Integral_1^inf u^{(d-1)-(d+1)} du
        let decay = (d as i64 + 1) - (d as i64 - 1); // = 2
        let tail = Ratio::new(1, decay - 1); // Integral_1^inf u^{-2}
        total += Ratio::from_integer(2) * Ratio::from_integer(two_pow_d / 2) * tail;
    }
    Ok(total)
}

/// Result of calibrating the archimedean normalization against enumeration.
#[derive(Debug, Clone, Serialize)]
pub struct Calibration {
    pub d: usize,
    pub bound: f64,
    /// empirical N(B)/B divided by finite_part * chart integral
    pub kappa: f64,
    /// relative drift of kappa across the top two sampled decades
    pub drift: f64,
}

/// Measure `N(B)/B / (finite_part * chart_integral)` at decade bounds up to
/// `bound` and require stability (< 2% drift across the top two decades).
pub fn calibrate_normalization(d: usize, bound: f64) -> Result<Calibration> {
    let samples: Vec<f64> = crate::series::decade_samples(bound)
        .into_iter()
        .filter(|&b| b >= bound / 100.0)
        .collect();
    if samples.len() < 3 {
        return Err(Error::Calibration(format!(
            "need at least two decades below {bound} for a drift estimate"
        )));
    }
    let twist = MetricTwist::empty();
    let series = count_series(d, &samples, &twist)?;
    let denom = finite_part(d, &twist) * archimedean_chart_integral(d)?.to_f64().unwrap();
    let kappas: Vec<f64> = series
        .samples
        .iter()
        .map(|&(b, n)| n as f64 / b / denom)
        .collect();
    let last = *kappas.last().unwrap();
    let first = kappas[0];
    let drift = (last / first - 1.0).abs();
    if drift > 0.02 {
        return Err(Error::Calibration(format!(
            "normalization drifts by {:.3}% across the top two decades (kappas {:?})",
            drift * 100.0,
            kappas
        )));
    }
    Ok(Calibration {
        d,
        bound,
        kappa: last,
        drift,
    })
}

/// The d-independent normalization constant: the chart integral relates to
/// the normalized archimedean density by `1/(d+1)` times this constant,
/// which calibration at d = 1 pins to approximately 1.
pub fn normalization_constant() -> Result<f64> {
    static CONST: OnceLock<f64> = OnceLock::new();
    if let Some(&c) = CONST.get() {
        return Ok(c);
    }
    let calibration = calibrate_normalization(1, 1e6)?;
    // kappa_1 = c / (1 + 1)
    let c = calibration.kappa * 2.0;
    Ok(*CONST.get_or_init(|| c))
}

/// Full constant with its factor breakdown.
#[derive(Debug, Clone, Serialize)]
pub struct PeyreConstant {
    pub d: usize,
    pub twist: String,
    /// residue of zeta_Q at 1 divided by |disc Q|^{d/2}: exactly 1 over Q
    pub residue_factor: f64,
    pub finite_part: f64,
    /// exact chart integral before normalization
    pub archimedean_chart_integral: f64,
    /// chart integral * calibration / (d+1)
    pub archimedean_part: f64,
    /// calibration constant from the d = 1 enumeration
    pub calibration: f64,
    pub value: f64,
}

pub fn peyre_constant(d: usize, twist: &MetricTwist) -> Result<PeyreConstant> {
    let finite = finite_part(d, twist);
    let chart = archimedean_chart_integral(d)?.to_f64().unwrap();
    let c = normalization_constant()?;
    let arch = chart * c / (d as f64 + 1.0);
    Ok(PeyreConstant {
        d,
        twist: twist.to_string(),
        residue_factor: 1.0,
        finite_part: sig15(finite),
        archimedean_chart_integral: chart,
        archimedean_part: sig15(arch),
        calibration: sig15(c),
        value: sig15(finite * arch),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Ratio<i64> {
        Ratio::new(n, d)
    }

    #[test]
    fn local_density_values() {
        // d=2, p=3, a=0: 1 + 1/3 + 1/9 = 13/9
        let ld = local_density(2, 3, r(0, 1)).unwrap();
        assert_eq!(ld.exact.as_deref(), Some("13/9"));
        // d=1, p=2, a=1: (1 + 1/2) / 2 = 3/4
        let tw = local_density(1, 2, r(1, 1)).unwrap();
        assert_eq!(tw.exact.as_deref(), Some("3/4"));
        // d=0: 1
        assert_eq!(local_density(0, 7, r(0, 1)).unwrap().exact.as_deref(), Some("1"));
        assert!(local_density(1, 6, r(0, 1)).is_err());
    }

    #[test]
    fn telescoping_identity_exact() {
        for p in [2i128, 3, 5, 7, 11, 13] {
            for d in 1..=4usize {
                let density = local_density_exact(d, p as u64, 0).unwrap();
                let lhs = (Ratio::new(1, 1) - Ratio::new(1, p)) * density;
                let mut pw: i128 = 1;
                for _ in 0..=d {
                    pw *= p;
                }
                let rhs = Ratio::new(1, 1) - Ratio::new(1, pw);
                assert_eq!(lhs, rhs, "p={p} d={d}");
            }
        }
    }

    #[test]
    fn finite_part_values() {
        let no = MetricTwist::empty();
        let pi = std::f64::consts::PI;
        assert!((finite_part(1, &no) - 6.0 / (pi * pi)).abs() < 1e-12);
        assert!((finite_part(2, &no) - 1.0 / zeta(3.0)).abs() < 1e-12);
        let tw = MetricTwist::single(2, r(1, 1)).unwrap();
        assert!((finite_part(1, &tw) - 3.0 / (pi * pi)).abs() < 1e-12);
    }

    #[test]
    fn chart_integral_closed_forms() {
        assert_eq!(archimedean_chart_integral(1).unwrap(), Ratio::from_integer(4));
        assert_eq!(archimedean_chart_integral(2).unwrap(), Ratio::from_integer(12));
        assert_eq!(archimedean_chart_integral(3).unwrap(), Ratio::from_integer(32));
        assert_eq!(archimedean_chart_integral(4).unwrap(), Ratio::from_integer(80));
    }

    #[test]
    fn chart_integral_agrees_with_quadrature() {
        // midpoint quadrature oracle, d = 1
        let n = 200_000;
        let r_box = 200.0;
        let h = 2.0 * r_box / n as f64;
        let mut sum = 0.0;
        for i in 0..n {
            let x: f64 = -r_box + (i as f64 + 0.5) * h;
            sum += h * x.abs().max(1.0).powi(-2);
        }
        sum += 2.0 / r_box; // exact tail
        assert!((sum - 4.0).abs() < 1e-3, "quadrature {sum}");

        // d = 2 on a coarser grid
        let n2 = 1200;
        let r2 = 60.0;
        let h2 = 2.0 * r2 / n2 as f64;
        let mut sum2 = 0.0;
        for i in 0..n2 {
            let x = -r2 + (i as f64 + 0.5) * h2;
            for j in 0..n2 {
                let y = -r2 + (j as f64 + 0.5) * h2;
                sum2 += h2 * h2 * x.abs().max(y.abs()).max(1.0).powi(-3);
            }
        }
        // tail outside the box is below 12/r2
        assert!((sum2 - 12.0).abs() < 12.0 / r2 + 0.05, "quadrature {sum2}");
    }

    #[test]
    fn calibration_and_constant() {
        let cal = calibrate_normalization(1, 1e6).unwrap();
        assert!(cal.drift < 0.02);
        // kappa should be very nearly 1/2
        assert!((cal.kappa - 0.5).abs() < 0.01, "kappa {}", cal.kappa);
        let c = normalization_constant().unwrap();
        assert!((c - 1.0).abs() < 0.02, "c {c}");
    }

    #[test]
    fn peyre_constant_d1_matches_schanuel() {
        let no = MetricTwist::empty();
        let pc = peyre_constant(1, &no).unwrap();
        let truth = 12.0 / (std::f64::consts::PI * std::f64::consts::PI);
        assert!((pc.value / truth - 1.0).abs() < 0.02, "value {}", pc.value);
        // twist covariance: the constant scales by p^{-a}
        let tw = MetricTwist::single(2, r(1, 1)).unwrap();
        let twisted = peyre_constant(1, &tw).unwrap();
        assert!((twisted.value - pc.value / 2.0).abs() < 1e-12);
    }

    #[test]
    fn finite_part_decreases_with_twist_weight() {
        let base = finite_part(2, &MetricTwist::empty());
        let t1 = finite_part(2, &MetricTwist::single(3, r(1, 1)).unwrap());
        let t2 = finite_part(2, &MetricTwist::single(3, r(2, 1)).unwrap());
        assert!(base > t1 && t1 > t2 && t2 > 0.0);
    }
}
