//! Table-driven arithmetic in GF(q) for prime q and for q in {4, 8, 9}.
//!
//! An element is stored as its polynomial-basis index `sum c_i * p^i`, so
//! index 0 is zero and index 1 is one in every supported field.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("unsupported field order {0}: expected a prime below 256 or one of 4, 8, 9")]
    UnsupportedOrder(u32),
    #[error("division by zero in GF(q)")]
    DivisionByZero,
    #[error("element index {index} out of range for GF({q})")]
    OutOfRange { index: u32, q: u32 },
}

/// A field element, identified by its index in `[0, q)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub u8);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// GF(p^e) with precomputed operation tables.
#[derive(Clone)]
pub struct Field {
    p: u32,
    e: u32,
    q: usize,
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}

impl Eq for Field {}

fn is_prime(n: u32) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Built-in irreducible moduli, coefficients low to high including the leading 1.
fn builtin_modulus(q: u32) -> Option<(u32, u32, Vec<u8>)> {
    match q {
        4 => Some((2, 2, vec![1, 1, 1])),    // x^2 + x + 1
        8 => Some((2, 3, vec![1, 1, 0, 1])), // x^3 + x + 1
        9 => Some((3, 2, vec![1, 0, 1])),    // x^2 + 1
        _ => None,
    }
}

impl Field {
    pub fn new(q: u32) -> Result<Self, FieldError> {
        let (p, e, modulus) = if is_prime(q) && q < 256 {
            (q, 1, Vec::new())
        } else if let Some(spec) = builtin_modulus(q) {
            spec
        } else {
            return Err(FieldError::UnsupportedOrder(q));
        };
        let qs = q as usize;
        let digits = |mut x: usize| -> Vec<u32> {
            (0..e)
                .map(|_| {
                    let d = (x % p as usize) as u32;
                    x /= p as usize;
                    d
                })
                .collect()
        };
        let undigits =
            |ds: &[u32]| -> u8 { ds.iter().rev().fold(0u32, |acc, &d| acc * p + d) as u8 };

        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..qs {
            let da = digits(a);
            for b in 0..qs {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = undigits(&sum);

                // schoolbook product, then reduce by the monic modulus
                let mut prod = vec![0u32; 2 * e as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                if e > 1 {
                    for deg in (e as usize..prod.len()).rev() {
                        let c = prod[deg];
                        if c == 0 {
                            continue;
                        }
                        for (k, &mk) in modulus.iter().enumerate().take(e as usize) {
                            let idx = deg - e as usize + k;
                            prod[idx] = (prod[idx] + (p - c) * mk as u32) % p;
                        }
                        prod[deg] = 0;
                    }
                }
                mul[a * qs + b] = undigits(&prod[..e as usize]);
            }
        }
        let neg = (0..qs)
            .map(|a| (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8)
            .collect();
        let inv = (0..qs)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap_or(0) as u8
                }
            })
            .collect();
        Ok(Field {
            p,
            e,
            q: qs,
            modulus,
            add,
            mul,
            neg,
            inv,
        })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Modulus coefficients, low to high; empty for prime fields.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn elem(&self, index: u32) -> Result<Elem, FieldError> {
        if (index as usize) < self.q {
            Ok(Elem(index as u8))
        } else {
            Err(FieldError::OutOfRange {
                index,
                q: self.q as u32,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.q).map(|i| Elem(i as u8))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + '_ {
        (1..self.q).map(|i| Elem(i as u8))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.add[a.index() * self.q + b.index()])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.mul[a.index() * self.q + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.index()])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a.is_zero() {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(Elem(self.inv[a.index()]))
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, mut n: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// `acc + a * b`, the inner step of every dot product here.
    #[inline]
    pub fn mul_add(&self, acc: Elem, a: Elem, b: Elem) -> Elem {
        self.add(acc, self.mul(a, b))
    }

    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter()
            .zip(b)
            .fold(Elem::ZERO, |acc, (&x, &y)| self.mul_add(acc, x, y))
    }
}
