//! Integer factorization at desk scale.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

const TRIAL_LIMIT: usize = 1_000_000;
const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const EXTRA_ROUNDS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// Distinct primes with exponents, ascending.
    pub factors: Vec<(BigInt, u32)>,
    /// Composite cofactor left unfactored, or 1.
    pub unresolved: BigInt,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.unresolved.is_one()
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn exponent_of(&self, p: &BigInt) -> u32 {
        self.factors.iter().find(|(q, _)| q == p).map_or(0, |(_, e)| *e)
    }

    /// Product of the prime powers times the cofactor.
    pub fn value(&self) -> BigInt {
        self.factors
            .iter()
            .map(|(p, e)| num_traits::pow(p.clone(), *e as usize))
            .product::<BigInt>()
            * &self.unresolved
    }
}

#[derive(Clone, Copy, Debug)]
pub struct FactorOptions {
    pub seed: u64,
    /// Total Pollard rho iterations allowed over the whole factorization.
    pub rho_budget: u64,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions {
            seed: 0,
            rho_budget: 2_000_000,
        }
    }
}

/// Miller–Rabin; deterministic below `3.3 * 10^24`.
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for &b in &MR_BASES {
        let b = BigInt::from(b);
        if *n == b {
            return true;
        }
        if n.is_multiple_of(&b) {
            return false;
        }
    }
    let (d, s) = odd_part(&(n - 1));
    if !MR_BASES.iter().all(|&a| strong_probable_prime(n, &d, s, &BigInt::from(a))) {
        return false;
    }
    let bound: BigInt = "3317044064679887385961981".parse().unwrap();
    if n < &bound {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    (0..EXTRA_ROUNDS).all(|_| {
        let a = random_below(&mut rng, &(n - 3)) + 2;
        strong_probable_prime(n, &d, s, &a)
    })
}

fn odd_part(m: &BigInt) -> (BigInt, u64) {
    let s = m.trailing_zeros().unwrap_or(0);
    (m >> s, s)
}

fn strong_probable_prime(n: &BigInt, d: &BigInt, s: u64, a: &BigInt) -> bool {
    let n1 = n - 1;
    let mut x = a.modpow(d, n);
    if x.is_one() || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n1 {
            return true;
        }
    }
    false
}

pub(crate) fn random_below(rng: &mut ChaCha8Rng, n: &BigInt) -> BigInt {
    let words = (n.bits() / 32 + 2) as usize;
    let digits: Vec<u32> = (0..words).map(|_| rng.next_u32()).collect();
    BigInt::from_biguint(Sign::Plus, BigUint::new(digits)) % n
}

fn small_primes(limit: usize) -> Vec<u32> {
    let mut sieve = vec![true; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if sieve[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= limit {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

pub fn factor(n: &BigInt) -> Factorization {
    factor_with(n, &FactorOptions::default())
}

/// Trial division to `10^6`, then Brent–Pollard rho within the effort budget.
pub fn factor_with(n: &BigInt, opts: &FactorOptions) -> Factorization {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut rest = n.abs();
    let mut primes: Vec<BigInt> = Vec::new();
    let mut unresolved = BigInt::one();

    if let Some(small) = rest.to_u64() {
        trial_divide_u64(small, &mut primes, &mut rest);
    } else {
        for p in small_primes(TRIAL_LIMIT) {
            let pb = BigInt::from(p);
            if &pb * &pb > rest {
                break;
            }
            while rest.is_multiple_of(&pb) {
                rest /= &pb;
                primes.push(pb.clone());
            }
        }
    }
    let limit = BigInt::from(TRIAL_LIMIT);
    if !rest.is_one() && rest <= (&limit * &limit) {
        // no factor below the trial limit, so it is prime
        primes.push(core::mem::take(&mut rest));
        rest = BigInt::one();
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut budget = opts.rho_budget;
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            primes.push(m);
            continue;
        }
        if let Some((root, k)) = perfect_power(&m) {
            for _ in 0..k {
                stack.push(root.clone());
            }
            continue;
        }
        match brent_rho(&m, &mut rng, &mut budget) {
            Some(d) => {
                stack.push(&m / &d);
                stack.push(d);
            }
            None => unresolved *= m,
        }
    }

    primes.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Factorization { factors, unresolved }
}

fn trial_divide_u64(mut n: u64, primes: &mut Vec<BigInt>, rest: &mut BigInt) {
    let mut d = 2u64;
    while d <= TRIAL_LIMIT as u64 && d * d <= n {
        while n.is_multiple_of(d) {
            n /= d;
            primes.push(BigInt::from(d));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    *rest = BigInt::from(n);
}

/// Largest `k ≥ 2` with `m = r^k`.
fn perfect_power(m: &BigInt) -> Option<(BigInt, u32)> {
    let max_k = m.bits() as u32;
    (2..=max_k).rev().find_map(|k| {
        let r = m.nth_root(k);
        (num_traits::pow(r.clone(), k as usize) == *m).then_some((r, k))
    })
}

fn brent_rho(n: &BigInt, rng: &mut ChaCha8Rng, budget: &mut u64) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    while *budget > 0 {
        let c = random_below(rng, &(n - 1)) + 1;
        let mut y = random_below(rng, n);
        let m = 128u64;
        let (mut g, mut r, mut q) = (BigInt::one(), 1u64, BigInt::one());
        let mut x = BigInt::zero();
        let mut ys = BigInt::zero();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = (&y * &y + &c) % n;
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = m.min(r - k);
                for _ in 0..steps {
                    y = (&y * &y + &c) % n;
                    q = (&q * (&x - &y).abs()) % n;
                }
                *budget = budget.saturating_sub(steps);
                g = q.gcd(n);
                k += m;
                if *budget == 0 && g.is_one() {
                    return None;
                }
            }
            r *= 2;
        }
        if &g == n {
            // backtrack one step at a time
            loop {
                ys = (&ys * &ys + &c) % n;
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}
