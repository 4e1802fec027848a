//! Integer factorization: trial division by the primes below 10^6, then
//! Pollard-Brent splitting of whatever cofactor is left.

use std::sync::OnceLock;

use rug::integer::IsPrime;
use rug::Integer;

const TRIAL_LIMIT: u32 = 1_000_000;
const PRIMALITY_REPS: u32 = 30;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve(TRIAL_LIMIT))
}

/// Primes strictly below `limit`, by the sieve of Eratosthenes.
pub fn sieve(limit: u32) -> Vec<u32> {
    let n = limit as usize;
    if n < 3 {
        return Vec::new();
    }
    let mut composite = vec![false; n];
    let mut primes = Vec::new();
    for i in 2..n {
        if composite[i] {
            continue;
        }
        primes.push(i as u32);
        let mut m = i * i;
        while m < n {
            composite[m] = true;
            m += i;
        }
    }
    primes
}

/// Primality check used for every prime stored in a `PrimePowerProduct`.
///
/// Exact below 10^12 (trial division), Baillie-PSW plus random Miller-Rabin
/// rounds above that.
pub fn is_prime(n: &Integer) -> bool {
    if *n < 2 {
        return false;
    }
    if *n < Integer::from(TRIAL_LIMIT) * TRIAL_LIMIT {
        let n = n.to_u64().expect("below 10^12");
        return small_primes()
            .iter()
            .take_while(|&&p| u64::from(p) * u64::from(p) <= n)
            .all(|&p| n % u64::from(p) > 0);
    }
    n.is_probably_prime(PRIMALITY_REPS) != IsPrime::No
}

/// Factor `m >= 1` into `(prime, exponent)` pairs with strictly increasing primes.
///
/// Panics if `m < 1`.
pub fn factorize(m: &Integer) -> Vec<(Integer, u32)> {
    assert!(*m >= 1, "factorize requires m >= 1, got {m}");
    let mut n = m.clone();
    let mut out: Vec<(Integer, u32)> = Vec::new();
    for &p in small_primes() {
        if n == 1 {
            return out;
        }
        if Integer::from(p) * p > n {
            break;
        }
        if n.is_divisible_u(p) {
            let mut e = 0;
            while n.is_divisible_u(p) {
                n.div_exact_u_mut(p);
                e += 1;
            }
            out.push((Integer::from(p), e));
        }
    }
    if n == 1 {
        return out;
    }
    // Every prime factor of n now exceeds the trial bound (or n is prime).
    let mut large = Vec::new();
    split(n, &mut large);
    large.sort();
    for p in large {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

fn split(n: Integer, acc: &mut Vec<Integer>) {
    if n == 1 {
        return;
    }
    if is_prime(&n) {
        acc.push(n);
        return;
    }
    if let Some(r) = perfect_root(&n) {
        let (root, k) = r;
        for _ in 0..k {
            split(root.clone(), acc);
        }
        return;
    }
    let d = pollard_brent(&n);
    let q = Integer::from(&n / &d);
    split(d, acc);
    split(q, acc);
}

/// Returns `(r, k)` with `r^k = n`, `k >= 2`, when `n` is a perfect power.
fn perfect_root(n: &Integer) -> Option<(Integer, u32)> {
    if !n.is_perfect_power() {
        return None;
    }
    let bits = n.significant_bits();
    (2..=bits).rev().find_map(|k| {
        let (r, rem) = n.clone().root_rem(Integer::new(), k);
        (rem == 0 && r > 1).then_some((r, k))
    })
}

/// Nontrivial factor of a composite `n` with no factors below the trial bound.
fn pollard_brent(n: &Integer) -> Integer {
    let mut c = Integer::from(1);
    loop {
        if let Some(d) = brent_cycle(n, &c) {
            return d;
        }
        c += 1;
    }
}

fn brent_cycle(n: &Integer, c: &Integer) -> Option<Integer> {
    const BATCH: u32 = 128;
    let step = |x: &Integer| -> Integer {
        let mut y = Integer::from(x * x);
        y += c;
        y %= n;
        y
    };
    let mut y = Integer::from(2);
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut g = Integer::from(1);
    let mut q = Integer::from(1);
    let mut r: u64 = 1;
    while g == 1 {
        x.clone_from(&y);
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys.clone_from(&y);
            for _ in 0..BATCH.min((r - k) as u32) {
                y = step(&y);
                let diff = Integer::from(&x - &y).abs();
                q *= diff;
                q %= n;
            }
            g = Integer::from(q.gcd_ref(n));
            k += u64::from(BATCH);
        }
        r *= 2;
    }
    if g == *n {
        // Batched gcd overshot; retrace one step at a time.
        loop {
            ys = step(&ys);
            let diff = Integer::from(&x - &ys).abs();
            g = diff.gcd(n);
            if g > 1 {
                break;
            }
        }
    }
    (g != *n).then_some(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;

    fn multiply_back(f: &[(Integer, u32)]) -> Integer {
        f.iter()
            .fold(Integer::from(1), |acc, (p, e)| acc * Integer::from(p.pow(*e)))
    }

    fn ints(pairs: &[(u64, u32)]) -> Vec<(Integer, u32)> {
        pairs.iter().map(|&(p, e)| (Integer::from(p), e)).collect()
    }

    #[test]
    fn one_is_the_empty_product() {
        assert!(factorize(&Integer::from(1)).is_empty());
    }

    #[test]
    fn table_values() {
        assert_eq!(factorize(&Integer::from(288)), ints(&[(2, 5), (3, 2)]));
        assert_eq!(factorize(&Integer::from(157464)), ints(&[(2, 3), (3, 9)]));
        assert_eq!(factorize(&Integer::from(30375)), ints(&[(3, 5), (5, 3)]));
    }

    #[test]
    fn every_m_up_to_a_million_multiplies_back() {
        let primes = sieve(1_000_001);
        for m in 1u32..=1_000_000 {
            let f = factorize(&Integer::from(m));
            assert_eq!(multiply_back(&f), m, "m = {m}");
            assert!(f.windows(2).all(|w| w[0].0 < w[1].0));
            assert!(f
                .iter()
                .all(|(p, _)| primes.binary_search(&p.to_u32().unwrap()).is_ok()));
        }
    }

    #[test]
    fn large_cofactors_are_split() {
        // 1000003 and 1000033 are both above the trial bound.
        let p = Integer::from(1_000_003u64);
        let q = Integer::from(1_000_033u64);
        let n = Integer::from(&p * &q) * Integer::from((&p).pow(2u32)) * 12u32;
        let f = factorize(&n);
        assert_eq!(
            f,
            vec![
                (Integer::from(2), 2),
                (Integer::from(3), 1),
                (p.clone(), 3),
                (q.clone(), 1)
            ]
        );
        // 2^61 - 1 is prime.
        let m61 = (Integer::from(1) << 61) - 1u32;
        let a = Integer::from(1_000_000_007u64);
        let b = Integer::from(1_000_000_009u64);
        let n = Integer::from(&a * &b) * &m61;
        assert_eq!(factorize(&n), vec![(a, 1), (b, 1), (m61, 1)]);
    }

    #[test]
    fn perfect_powers_of_large_primes() {
        let p = Integer::from(1_000_000_007u64);
        let n = Integer::from((&p).pow(4u32));
        assert_eq!(factorize(&n), vec![(p, 4)]);
    }

    #[test]
    fn primality() {
        assert!(!is_prime(&Integer::from(1)));
        assert!(is_prime(&Integer::from(2)));
        assert!(!is_prime(&Integer::from(561)));
        assert!(is_prime(&Integer::from(999_983)));
        assert!(is_prime(&((Integer::from(1) << 127) - 1u32)));
        assert!(!is_prime(&((Integer::from(1) << 128) + 1u32)));
    }
}
