use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const TRIAL_LIMIT: u32 = 10_000;
const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller-Rabin with the first 13 prime bases; deterministic below 3.3e24.
pub fn is_probable_prime(n: &BigInt) -> bool {
    let n = n.abs();
    if n < BigInt::from(2) {
        return false;
    }
    for &p in &MR_BASES {
        let p = BigInt::from(p);
        if n == p {
            return true;
        }
        if (&n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_one: BigInt = &n - 1;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d: BigInt = &n_minus_one >> s;
    'witness: for &a in &MR_BASES {
        let mut x = BigInt::from(a).modpow(&d, &n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % &n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigInt, c: u32) -> Option<BigInt> {
    let c = BigInt::from(c);
    let step = |x: &BigInt| (x * x + &c) % n;
    let mut y = BigInt::from(2);
    let mut r: u64 = 1;
    let mut q = BigInt::one();
    let m: u64 = 128;
    let mut g = BigInt::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = step(&y);
                q = (q * (&x - &y).abs()) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = step(&ys);
            g = (&x - &ys).abs().gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

fn split_into(n: BigInt, out: &mut Vec<BigInt>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    let r = n.sqrt();
    if &r * &r == n {
        split_into(r.clone(), out);
        split_into(r, out);
        return;
    }
    for c in 1..64 {
        if let Some(d) = pollard_brent(&n, c) {
            let other = &n / &d;
            split_into(d, out);
            split_into(other, out);
            return;
        }
    }
    // Pollard failed for every constant; treat as prime rather than loop.
    out.push(n);
}

/// Prime factorization of `|n|` as sorted `(prime, exponent)` pairs.
/// `0` and `±1` factor as the empty product.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut primes: Vec<BigInt> = Vec::new();
    if n.is_zero() {
        return Vec::new();
    }
    let mut p: u32 = 2;
    while p <= TRIAL_LIMIT {
        if let Some(small) = n.to_u64() {
            if (p as u64) * (p as u64) > small {
                break;
            }
            let mut m = small;
            while m % p as u64 == 0 {
                m /= p as u64;
                primes.push(BigInt::from(p));
            }
            n = BigInt::from(m);
        } else {
            while (&n % p).is_zero() {
                n /= p;
                primes.push(BigInt::from(p));
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        if BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT) > n {
            primes.push(n);
        } else {
            split_into(n, &mut primes);
        }
    }
    primes.sort();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

/// Positive divisors of `|n|` in increasing order. Empty for `n = 0`.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return Vec::new();
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factorize(n) {
        let len = divs.len();
        let mut pk = BigInt::one();
        for _ in 0..e {
            pk *= &p;
            for i in 0..len {
                divs.push(&divs[i] * &pk);
            }
        }
    }
    divs.sort();
    divs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(f: &[(BigInt, u32)]) -> BigInt {
        f.iter().fold(BigInt::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    #[test]
    fn small_factorizations() {
        assert!(factorize(&BigInt::from(1)).is_empty());
        assert_eq!(factorize(&BigInt::from(-360)), vec![(2.into(), 3), (3.into(), 2), (5.into(), 1)]);
        assert_eq!(divisors(&BigInt::from(12)).len(), 6);
        assert!(divisors(&BigInt::from(0)).is_empty());
    }

    #[test]
    fn large_semiprime_splits() {
        let p = BigInt::from(1_000_000_007u64);
        let q = BigInt::from(998_244_353u64);
        let f = factorize(&(&p * &q * &q));
        assert_eq!(f, vec![(q.clone(), 2), (p.clone(), 1)]);
    }

    #[test]
    fn factorization_multiplies_back() {
        let n: BigInt = "123456789012345678901234567890".parse().unwrap();
        let f = factorize(&n);
        assert_eq!(product(&f), n);
        assert!(f.iter().all(|(p, _)| is_probable_prime(p)));
    }

    #[test]
    fn primality() {
        assert!(is_probable_prime(&BigInt::from(2)));
        assert!(is_probable_prime(&BigInt::from(1_000_000_007u64)));
        assert!(!is_probable_prime(&BigInt::from(561)));
        assert!(!is_probable_prime(&BigInt::from(1)));
    }
}
