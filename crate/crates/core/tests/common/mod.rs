//! Independent oracles for integration tests. Nothing here calls into the
//! table, bitset or hull code paths it is used to check.

#![allow(dead_code)]

use cayley_cliques::ff::{Element, FieldTable};

/// Product of two elements by schoolbook polynomial multiplication and
/// reduction modulo the field's modulus, without exp/log tables.
pub fn poly_mul(t: &FieldTable, a: Element, b: Element) -> Element {
    let p = t.p();
    let e = t.degree() as usize;
    if e == 1 {
        return Element((a.0 as u64 * b.0 as u64 % p) as u32);
    }
    let f = &t.params().modulus;
    let digits = |x: u32| -> [u64; 32] {
        let mut x = x as u64;
        let mut out = [0u64; 32];
        for d in out.iter_mut().take(e) {
            *d = x % p;
            x /= p;
        }
        out
    };
    let (da, db) = (digits(a.0), digits(b.0));
    let mut prod = [0u64; 64];
    for i in 0..e {
        for j in 0..e {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    for k in (e..2 * e).rev() {
        let c = prod[k];
        if c != 0 {
            for i in 0..=e {
                prod[k - e + i] = (prod[k - e + i] + (p - c) * f[i]) % p;
            }
        }
    }
    let mut code = 0u64;
    for i in (0..e).rev() {
        code = code * p + prod[i];
    }
    Element(code as u32)
}

/// Clique number by exhaustive subset search (dynamic programming over
/// bitmasks). Feasible up to about 24 vertices.
pub fn exhaustive_clique_number(n: usize, adj: impl Fn(usize, usize) -> bool) -> usize {
    assert!(n <= 26);
    if n == 0 {
        return 0;
    }
    let nbr: Vec<u32> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && adj(i, j)).fold(0u32, |m, j| m | (1 << j)))
        .collect();
    let mut is_clique = vec![false; 1usize << n];
    is_clique[0] = true;
    let mut best = 0;
    for mask in 1usize..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let ok = is_clique[rest] && (nbr[low] as usize & rest) == rest;
        is_clique[mask] = ok;
        if ok {
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

/// min over multisets of size 1..=kmax from {ζ_d^j : j ∈ classes} of |Σ|/k.
pub fn multiset_min_ratio(d: u64, classes: &[u64], kmax: usize) -> f64 {
    fn rec(d: u64, classes: &[u64], start: usize, left: usize, k: usize, re: f64, im: f64, best: &mut f64) {
        if k > 0 {
            *best = best.min(re.hypot(im) / k as f64);
        }
        if left == 0 {
            return;
        }
        for i in start..classes.len() {
            let a = 2.0 * std::f64::consts::PI * classes[i] as f64 / d as f64;
            rec(d, classes, i, left - 1, k + 1, re + a.cos(), im + a.sin(), best);
        }
    }
    let mut best = f64::INFINITY;
    rec(d, classes, 0, kmax, 0, 0.0, 0.0, &mut best);
    best
}

/// Odd prime powers up to `limit` as (p, e, p^e), ascending by order.
pub fn odd_prime_powers(limit: u64) -> Vec<(u64, u32, u64)> {
    let is_prime = |n: u64| n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| n % k != 0);
    let mut out = Vec::new();
    for p in (3..=limit).step_by(2).filter(|&p| is_prime(p)) {
        let mut q = p;
        let mut e = 1;
        while q <= limit {
            out.push((p, e, q));
            q *= p;
            e += 1;
        }
    }
    out.sort_by_key(|x| x.2);
    out
}
