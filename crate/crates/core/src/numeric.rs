//! Small exact-arithmetic helpers used throughout: integer roots, prime
//! sieves, squarefree kernels, a Riemann zeta evaluator and compensated
//! summation.

/// Compensated (Kahan) accumulator for long float sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Round to 15 significant digits. Used when serializing floats so that
/// reports are byte-identical across platforms and thread counts.
pub fn sig15(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().unwrap()
}

/// Floor of the k-th root of n, exact (saturating at `u64::MAX`).
pub fn nth_root_floor(n: u128, k: u32) -> u64 {
    assert!(k >= 1);
    if n == 0 {
        return 0;
    }
    if k == 1 {
        return u64::try_from(n).unwrap_or(u64::MAX);
    }
    let mut r = (n as f64).powf(1.0 / k as f64) as u64;
    // float seed, then correct exactly
    while r > 0 && checked_pow_u128(r as u128, k).is_none_or(|p| p > n) {
        r -= 1;
    }
    while r < u64::MAX && checked_pow_u128((r + 1) as u128, k).is_some_and(|p| p <= n) {
        r += 1;
    }
    r
}

pub fn checked_pow_u128(base: u128, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i64(a: i64, b: i64) -> u64 {
    gcd_u64(a.unsigned_abs(), b.unsigned_abs())
}

/// Primes up to `n` inclusive, by Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut q = p * p;
            while q <= n {
                composite[q] = true;
                q += p;
            }
        }
    }
    primes
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of |n|, ascending.
pub fn prime_factors(n: u64) -> Vec<u64> {
    let mut n = n;
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1 + (d & 1);
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut n = n;
    let mut d = 2u64;
    while d * d <= n {
        if n % (d * d) == 0 {
            return false;
        }
        while n % d == 0 {
            n /= d;
        }
        d += 1 + (d & 1);
    }
    true
}

/// Squarefree kernel of n (product of distinct prime factors), sign preserved.
pub fn squarefree_kernel(n: i64) -> i64 {
    assert!(n != 0);
    let sign = n.signum();
    let mut n = n.unsigned_abs();
    let mut kernel: u64 = 1;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            kernel *= d;
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1 + (d & 1);
    }
    kernel *= n;
    sign * kernel as i64
}

/// Riemann zeta at real s > 1 by Euler–Maclaurin, absolute accuracy
/// well below 1e-12 for s >= 2.
pub fn zeta(s: f64) -> f64 {
    assert!(s > 1.0, "zeta evaluated only for s > 1");
    const N: u32 = 24;
    // Bernoulli numbers B_2, B_4, ..., B_12
    const BERN: [f64; 6] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
    ];
    let nf = N as f64;
    let mut sum = 0.0;
    for k in 1..N {
        sum += (k as f64).powf(-s);
    }
    sum += nf.powf(-s) / 2.0;
    sum += nf.powf(1.0 - s) / (s - 1.0);
    // correction terms B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^{-s-2j+1}
    let mut rising = s; // s(s+1)...(s+2j-2), starts at j=1 with value s
    let mut fact = 2.0; // (2j)!
    for (j, b) in BERN.iter().enumerate() {
        sum += b / fact * rising * nf.powf(-s - 2.0 * j as f64 - 1.0);
        rising *= (s + 2.0 * j as f64 + 1.0) * (s + 2.0 * j as f64 + 2.0);
        fact *= (2.0 * j as f64 + 3.0) * (2.0 * j as f64 + 4.0);
    }
    sum
}

/// Gamma(n) = (n-1)! for integer n >= 1.
pub fn gamma_integer(n: u32) -> f64 {
    assert!(n >= 1);
    let mut acc = 1.0f64;
    for k in 2..n {
        acc *= k as f64;
    }
    acc
}
