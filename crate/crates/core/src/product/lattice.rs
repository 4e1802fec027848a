use num_integer::Integer as _;

use super::Convention;

/// A lattice point visible from the origin: `gcd(j, k) = 1`, `k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint {
    pub j: u64,
    pub k: u64,
}

impl LatticePoint {
    pub fn new(j: u64, k: u64) -> Option<Self> {
        (k >= 1 && j.gcd(&k) == 1).then_some(LatticePoint { j, k })
    }
}

/// Visible points of the box `1 <= j <= nj`, `1 <= k <= nk`, preceded by the
/// axis point `(0, 1)` under [`Convention::Axis`], in lexicographic order.
pub fn visible_points(nj: u64, nk: u64, convention: Convention) -> Vec<LatticePoint> {
    let mut out = Vec::new();
    if convention == Convention::Axis {
        out.push(LatticePoint { j: 0, k: 1 });
    }
    for j in 1..=nj {
        out.extend((1..=nk).filter(|k| j.gcd(k) == 1).map(|k| LatticePoint { j, k }));
    }
    out
}

/// Möbius function on `0..=n` by a linear sieve (`mu[0]` is unused).
pub fn mobius_table(n: usize) -> Vec<i8> {
    let mut mu = vec![1i8; n + 1];
    let mut is_composite = vec![false; n + 1];
    let mut primes = Vec::new();
    mu[0] = 0;
    for i in 2..=n {
        if !is_composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let m = i * p;
            if m > n {
                break;
            }
            is_composite[m] = true;
            if i % p == 0 {
                mu[m] = 0;
                break;
            }
            mu[m] = -mu[i];
        }
    }
    mu
}

/// `#{(j, k) : 1 <= j, k <= n, gcd(j, k) = 1}` as `Σ_{d<=n} μ(d)·⌊n/d⌋²`.
pub fn count_visible(n: u64) -> u64 {
    let mu = mobius_table(n as usize);
    let total: i128 = (1..=n)
        .map(|d| {
            let q = i128::from(n / d);
            i128::from(mu[d as usize]) * q * q
        })
        .sum();
    total as u64
}
