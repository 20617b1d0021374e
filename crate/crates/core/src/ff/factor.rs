//! Integer helpers: primality, factorization, divisors.

/// Trial-division primality test; adequate for the word-sized moduli used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut k = 3u64;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 2;
    }
    true
}

/// Prime factors of `m` with multiplicity, ascending. `factorize(1)` is empty.
pub fn factorize(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if m <= 1 {
        return out;
    }
    while m % 2 == 0 {
        out.push(2);
        m /= 2;
    }
    let mut k = 3u64;
    while k * k <= m {
        while m % k == 0 {
            out.push(k);
            m /= k;
        }
        k += 2;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Distinct prime factors, ascending.
pub fn prime_divisors(m: u64) -> Vec<u64> {
    let mut f = factorize(m);
    f.dedup();
    f
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    let mut f = factorize(n);
    f.dedup();
    let full = factorize(n);
    for prime in f {
        let mult = full.iter().filter(|&&x| x == prime).count();
        let existing = out.len();
        let mut pk = 1u64;
        for _ in 0..mult {
            pk *= prime;
            for i in 0..existing {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Odd primes up to `limit` (inclusive) via a simple sieve.
pub fn odd_primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        if i > 2 {
            out.push(i as u64);
        }
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}
