use num_integer::Integer as _;
use rug::ops::Pow;
use rug::Rational;

/// Both sides of the truncated regrouping identity, as exact rationals:
///
/// * left: `Σ (1/k)·(X^j Y^k)^m / m` over visible `(j, k)` with `j, k >= 1`
///   and `m >= 1`, `jm <= nj`, `km <= nk`;
/// * right: `Σ X^J Y^K / K` over `1 <= J <= nj`, `1 <= K <= nk`.
///
/// The identity is termwise (`J = jm`, `K = km`, `m = gcd(J, K)`), so it
/// holds for every rational `X`, `Y`, convergent or not.
pub fn regroup_sides(x: &Rational, y: &Rational, nj: u64, nk: u64) -> (Rational, Rational) {
    let mut left = Rational::new();
    for j in 1..=nj {
        for k in (1..=nk).filter(|k| j.gcd(k) == 1) {
            let monomial = Rational::from(x.pow(j as i32)) * Rational::from(y.pow(k as i32));
            let mut power = Rational::from(1);
            for m in 1..=(nj / j).min(nk / k) {
                power *= &monomial;
                left += Rational::from(&power / (k * m));
            }
        }
    }

    let mut right = Rational::new();
    let mut xj = Rational::from(1);
    for _ in 1..=nj {
        xj *= x;
        let mut yk = Rational::from(1);
        for k in 1..=nk {
            yk *= y;
            right += Rational::from(&xj * &yk) / k;
        }
    }
    (left, right)
}

/// True when the two sides of [`regroup_sides`] agree exactly.
pub fn exact_regroup_check(x: &Rational, y: &Rational, nj: u64, nk: u64) -> bool {
    let (left, right) = regroup_sides(x, y, nj, nk);
    left == right
}
