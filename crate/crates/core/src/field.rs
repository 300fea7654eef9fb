//! Small finite fields `F_q`, `q = p^k <= 64`, as full lookup tables.
//!
//! An element is a `u8` encoding the coefficients of its polynomial
//! representative in base `p`: `c0 + c1*p + ... + c_{k-1}*p^{k-1}`. For prime
//! `q` this is just the residue.

use crate::error::{Error, Result};

pub const MAX_FIELD_SIZE: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTable {
    q: u32,
    p: u32,
    k: u32,
    /// Coefficients `c0..c_{k-1}` of the monic modulus (leading 1 omitted).
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    zeta: u8,
}

/// Returns `(p, k)` with `q = p^k`, or `None`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut r = q;
    let mut k = 0;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

impl FieldTable {
    /// Builds `F_q` with the least primitive element as `ζ`.
    pub fn new(q: u32) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge(q));
        }
        let modulus = if k == 1 {
            vec![0]
        } else {
            least_irreducible(p, k)
        };
        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..q {
            for b in 0..q {
                add[(a * q + b) as usize] = poly_add(p, k, a, b) as u8;
                mul[(a * q + b) as usize] = poly_mul(p, k, &modulus, a, b) as u8;
            }
        }
        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8;
            if a != 0 {
                inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap() as u8;
            }
        }
        let mut f = FieldTable {
            q,
            p,
            k,
            modulus,
            add,
            mul,
            neg,
            inv,
            zeta: 0,
        };
        f.zeta = f.primitive_elements()[0];
        Ok(f)
    }

    /// Same field with a caller-chosen primitive element.
    pub fn with_primitive(q: u32, zeta: u8) -> Result<Self> {
        let mut f = Self::new(q)?;
        if !f.primitive_elements().contains(&zeta) {
            return Err(Error::BadParams(format!(
                "{zeta} is not a primitive element of F_{q}"
            )));
        }
        f.zeta = zeta;
        Ok(f)
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Non-leading coefficients of the defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zeta(&self) -> u8 {
        self.zeta
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn div(&self, a: u8, b: u8) -> Option<u8> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: u8, mut e: u64) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The image of an integer under `Z -> F_q` (lands in the prime field).
    pub fn from_int(&self, n: i64) -> u8 {
        n.rem_euclid(self.p as i64) as u8
    }

    pub fn multiplicative_order(&self, a: u8) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        Some(n)
    }

    /// All generators of `F_q^*` in increasing encoding order.
    pub fn primitive_elements(&self) -> Vec<u8> {
        (1..self.q as u8)
            .filter(|&a| self.multiplicative_order(a) == Some(self.q - 1))
            .collect()
    }
}

fn digits(p: u32, k: u32, mut a: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn undigits(p: u32, ds: &[u32]) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn poly_add(p: u32, k: u32, a: u32, b: u32) -> u32 {
    let (da, db) = (digits(p, k, a), digits(p, k, b));
    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
    undigits(p, &s)
}

fn poly_mul(p: u32, k: u32, modulus: &[u32], a: u32, b: u32) -> u32 {
    let (da, db) = (digits(p, k, a), digits(p, k, b));
    let k = k as usize;
    let mut prod = vec![0u32; 2 * k];
    for i in 0..k {
        for j in 0..k {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    // x^k = -(c0 + c1 x + ... ), reduce from the top
    for deg in (k..2 * k).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &m) in modulus.iter().enumerate() {
            prod[deg - k + i] = (prod[deg - k + i] + (p - m) * c) % p;
        }
    }
    undigits(p, &prod[..k])
}

/// Monic polynomial as coefficients `c0..c_{deg-1}` plus an implied leading 1.
fn is_irreducible(p: u32, coeffs: &[u32]) -> bool {
    let deg = coeffs.len();
    let mut full = coeffs.to_vec();
    full.push(1);
    for d in 1..=deg / 2 {
        for enc in 0..p.pow(d as u32) {
            let mut divisor = digits(p, d as u32, enc);
            divisor.push(1);
            if poly_rem(p, &full, &divisor).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(p: u32, num: &[u32], den: &[u32]) -> Vec<u32> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in den.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - c) * lead % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Least irreducible monic polynomial of degree `k`, ordered by the base-`p`
/// encoding of its non-leading coefficients.
fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
    (0..p.pow(k))
        .map(|enc| digits(p, k, enc))
        .find(|c| is_irreducible(p, c))
        .expect("irreducible polynomials exist in every degree")
}
