//! Dense polynomials over F_p, coefficients stored constant term first.
//!
//! Used only while building a field table: irreducibility testing of
//! candidate moduli and order checks for primitive-root candidates.

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod_int(a, p - 2, p)
}

pub(crate) fn pow_mod_int(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Remainder of `a` modulo the monic polynomial `f`.
pub fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p);
    while r.len() > df {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        if c != 0 {
            let shift = top - df;
            for (i, &fi) in f.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * fi % p) % p;
            }
        }
        trim(&mut r);
    }
    r
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

pub fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), f, p)
}

pub fn pow_mod(a: &[u64], mut exp: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], f, p);
    let mut base = rem(a, f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &base, f, p);
        }
        base = mul_mod(&base, &base, f, p);
        exp >>= 1;
    }
    acc
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

/// Monic gcd.
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let li = inv_mod(lead, p);
        for c in x.iter_mut() {
            *c = *c * li % p;
        }
    }
    x
}

fn has_root(f: &[u64], p: u64) -> bool {
    (0..p).any(|t| {
        let mut acc = 0u64;
        for &c in f.iter().rev() {
            acc = (acc * t + c) % p;
        }
        acc == 0
    })
}

/// Irreducibility of a monic `f` over F_p: root filter, then the
/// Frobenius/gcd test (x^(p^e) = x mod f and gcd(x^(p^(e/l)) - x, f) = 1
/// for every prime l dividing e).
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let e = f.len() - 1;
    if e == 0 {
        return false;
    }
    if e == 1 {
        return true;
    }
    if has_root(f, p) {
        return false;
    }
    let x = vec![0, 1];
    // frob[k] = x^(p^k) mod f
    let mut frob = Vec::with_capacity(e + 1);
    let mut cur = rem(&x, f, p);
    frob.push(cur.clone());
    for _ in 0..e {
        cur = pow_mod(&cur, p, f, p);
        frob.push(cur.clone());
    }
    if sub(&frob[e], &rem(&x, f, p), p) != Vec::<u64>::new() {
        return false;
    }
    for l in super::factor::prime_divisors(e as u64) {
        let k = e / l as usize;
        let h = sub(&frob[k], &x, p);
        if gcd(&h, f, p) != vec![1] {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `e`,
/// comparing coefficient vectors from the constant term upward.
pub fn smallest_irreducible(p: u64, e: u32) -> Vec<u64> {
    let e = e as usize;
    // digits[0] is the most significant position in the enumeration order.
    let mut digits = vec![0u64; e];
    loop {
        let mut f = digits.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        // increment with c_{e-1} as the least significant digit
        let mut i = e;
        loop {
            assert!(i > 0, "no irreducible polynomial of degree {e} over F_{p}");
            i -= 1;
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
        }
    }
}
