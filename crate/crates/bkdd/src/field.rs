//! Exact arithmetic in GF(p^m).
//!
//! Elements are residue polynomials modulo a fixed monic irreducible
//! polynomial of degree m over the prime field, packed into a single
//! integer in base p (coefficient of x^i is the i-th base-p digit).
//! The modulus is chosen deterministically: the lexicographically least
//! monic irreducible, ordering candidates by their packed value.

use crate::error::{BkError, Result};

const MAX_M: u32 = 12;
// Packed-element cap; keeps the exhaustive irreducibility search cheap
// (trial divisors number at most p^(m/2) <= sqrt(2^31)).
const MAX_Q: u64 = 1 << 31;

/// An element of GF(p^m), valid only for the [`FieldCtx`] that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Elt(pub u64);

impl Elt {
    pub const ZERO: Elt = Elt(0);
    pub const ONE: Elt = Elt(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The context of a finite field GF(p^m) with a fixed modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    p: u64,
    m: u32,
    q: u64,
    /// Monic modulus, coefficients low to high; length m+1, last entry 1.
    modulus: Vec<u64>,
}

/// Returns true if `p` is prime (trial division; desk scale).
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Builds GF(p^m) with the deterministic least irreducible modulus.
pub fn field_create(p: u64, m: u32) -> Result<FieldCtx> {
    if !is_prime(p) || p == 2 {
        return Err(BkError::NotPrime(p));
    }
    if m == 0 || m > MAX_M {
        return Err(BkError::DegreeTooLarge(format!(
            "m = {m} outside 1..={MAX_M}"
        )));
    }
    let mut q: u64 = 1;
    for _ in 0..m {
        q = q.checked_mul(p).filter(|&q| q <= MAX_Q).ok_or_else(|| {
            BkError::DegreeTooLarge(format!("p^m = {p}^{m} exceeds the desk-scale cap"))
        })?;
    }
    let modulus = least_irreducible(p, m);
    Ok(FieldCtx { p, m, q, modulus })
}

/// Least monic irreducible of degree m, by exhaustive factor search.
fn least_irreducible(p: u64, m: u32) -> Vec<u64> {
    let mut q: u64 = 1;
    for _ in 0..m {
        q *= p;
    }
    for v in 0..q {
        let mut cand = unpack(p, v, m as usize + 1);
        cand[m as usize] = 1;
        if is_irreducible(p, &cand) {
            return cand;
        }
    }
    unreachable!("irreducibles of every degree exist over F_p");
}

/// Exhaustive irreducibility test: no monic factor of degree 1..=m/2.
fn is_irreducible(p: u64, poly: &[u64]) -> bool {
    let m = poly.len() - 1;
    for d in 1..=m / 2 {
        let nd = p.pow(d as u32);
        for v in 0..nd {
            let mut g = unpack(p, v, d + 1);
            g[d] = 1;
            if poly_rem(p, poly, &g).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn unpack(p: u64, mut v: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for slot in out.iter_mut() {
        *slot = v % p;
        v /= p;
        if v == 0 {
            break;
        }
    }
    out
}

/// Remainder of `a` by monic `g`, coefficients low to high.
fn poly_rem(p: u64, a: &[u64], g: &[u64]) -> Vec<u64> {
    let dg = g.len() - 1;
    let mut rem: Vec<u64> = a.to_vec();
    while rem.len() > dg {
        let lead = *rem.last().unwrap();
        let top = rem.len() - 1;
        if lead != 0 {
            for k in 0..dg {
                let sub = (lead * g[k]) % p;
                let idx = top - dg + k;
                rem[idx] = (rem[idx] + p * p - sub) % p;
            }
        }
        rem.pop();
    }
    rem
}

impl FieldCtx {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Field size q = p^m.
    pub fn size(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients, low to high (length m+1, monic).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Embeds an integer through the prime subfield.
    pub fn from_int(&self, n: u64) -> Elt {
        Elt(n % self.p)
    }

    /// Element from base-p packed value; must be < q.
    pub fn elt(&self, packed: u64) -> Elt {
        assert!(packed < self.q, "packed value outside field");
        Elt(packed)
    }

    /// All field elements in packed order (zero first).
    pub fn elements(&self) -> impl Iterator<Item = Elt> {
        (0..self.q).map(Elt)
    }

    /// All nonzero elements.
    pub fn units(&self) -> impl Iterator<Item = Elt> {
        (1..self.q).map(Elt)
    }

    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        if self.m == 1 {
            return Elt((a.0 + b.0) % self.p);
        }
        let (p, mut x, mut y) = (self.p, a.0, b.0);
        let mut out = 0u64;
        let mut place = 1u64;
        while x != 0 || y != 0 {
            out += place * ((x % p + y % p) % p);
            x /= p;
            y /= p;
            place *= p;
        }
        Elt(out)
    }

    pub fn neg(&self, a: Elt) -> Elt {
        if self.m == 1 {
            return Elt((self.p - a.0) % self.p);
        }
        let p = self.p;
        let mut x = a.0;
        let mut out = 0u64;
        let mut place = 1u64;
        while x != 0 {
            out += place * ((p - x % p) % p);
            x /= p;
            place *= p;
        }
        Elt(out)
    }

    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        let p = self.p;
        if self.m == 1 {
            return Elt((a.0 * b.0) % p);
        }
        if a.0 == 0 || b.0 == 0 {
            return Elt::ZERO;
        }
        let m = self.m as usize;
        let mut da = [0u64; MAX_M as usize];
        let mut db = [0u64; MAX_M as usize];
        digits(p, a.0, &mut da);
        digits(p, b.0, &mut db);
        let mut prod = [0u64; 2 * MAX_M as usize];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        // Reduce by the monic modulus.
        for deg in (m..2 * m - 1).rev() {
            let lead = prod[deg];
            if lead == 0 {
                continue;
            }
            prod[deg] = 0;
            for k in 0..m {
                let sub = (lead * self.modulus[k]) % p;
                prod[deg - m + k] = (prod[deg - m + k] + p - sub) % p;
            }
        }
        let mut out = 0u64;
        for i in (0..m).rev() {
            out = out * p + prod[i];
        }
        Elt(out)
    }

    pub fn pow(&self, a: Elt, mut e: u64) -> Elt {
        let mut base = a;
        let mut acc = Elt::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: Elt) -> Elt {
        assert!(!a.is_zero(), "inverse of zero");
        self.pow(a, self.q - 2)
    }

    pub fn product<I: IntoIterator<Item = Elt>>(&self, it: I) -> Elt {
        it.into_iter().fold(Elt::ONE, |acc, x| self.mul(acc, x))
    }
}

fn digits(p: u64, mut v: u64, out: &mut [u64]) {
    for slot in out.iter_mut() {
        *slot = v % p;
        v /= p;
        if v == 0 {
            break;
        }
    }
}
