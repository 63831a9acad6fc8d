//! Dense univariate polynomials over a [`Field`].

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// Coefficients lowest degree first, without trailing zeros. The zero
/// polynomial is the empty sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&Scalar> {
        self.coeffs.get(i)
    }
}

/// Arithmetic context for polynomials over one field.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing {
    field: Field,
}

impl PolyRing {
    pub fn new(field: Field) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<Scalar>) -> UniPoly {
        while coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(&self, coeffs: &[i64]) -> UniPoly {
        self.from_coeffs(coeffs.iter().map(|&c| self.field.from_i64(c)).collect())
    }

    pub fn zero(&self) -> UniPoly {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one(&self) -> UniPoly {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: Scalar) -> UniPoly {
        self.from_coeffs(vec![c])
    }

    pub fn x(&self) -> UniPoly {
        self.from_coeffs(vec![self.field.zero(), self.field.one()])
    }

    /// `x - a`
    pub fn linear(&self, a: &Scalar) -> UniPoly {
        self.from_coeffs(vec![self.field.neg(a), self.field.one()])
    }

    pub fn add(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = self.field.zero();
        let coeffs = (0..n)
            .map(|i| {
                self.field.add(
                    a.coeffs.get(i).unwrap_or(&zero),
                    b.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect();
        self.from_coeffs(coeffs)
    }

    pub fn neg(&self, a: &UniPoly) -> UniPoly {
        self.from_coeffs(a.coeffs.iter().map(|c| self.field.neg(c)).collect())
    }

    pub fn sub(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &UniPoly, c: &Scalar) -> UniPoly {
        self.from_coeffs(a.coeffs.iter().map(|x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut out = vec![self.field.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.field.add(&out[i + j], &self.field.mul(x, y));
            }
        }
        self.from_coeffs(out)
    }

    pub fn pow(&self, a: &UniPoly, mut e: u32) -> UniPoly {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn divrem(&self, a: &UniPoly, b: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let Some(db) = b.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lead_inv = self.field.inv(b.leading().unwrap())?;
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return Ok((self.zero(), a.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - db];
        for k in (db..rem.len()).rev() {
            let c = self.field.mul(&rem[k], &lead_inv);
            if self.field.is_zero(&c) {
                continue;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                rem[k - db + j] = self.field.sub(&rem[k - db + j], &self.field.mul(&c, bc));
            }
            quot[k - db] = c;
        }
        rem.truncate(db);
        Ok((self.from_coeffs(quot), self.from_coeffs(rem)))
    }

    pub fn rem(&self, a: &UniPoly, b: &UniPoly) -> Result<UniPoly> {
        Ok(self.divrem(a, b)?.1)
    }

    /// Quotient of an exact division; panics in debug builds if inexact.
    pub fn div_exact(&self, a: &UniPoly, b: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.divrem(a, b)?;
        debug_assert!(r.is_zero(), "inexact polynomial division");
        Ok(q)
    }

    pub fn monic(&self, a: &UniPoly) -> UniPoly {
        match a.leading() {
            None => a.clone(),
            Some(l) => self.scale(a, &self.field.inv(l).expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = self.rem(&a, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    pub fn derivative(&self, a: &UniPoly) -> UniPoly {
        let coeffs = a
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.field.mul(c, &self.field.from_i64(i as i64)))
            .collect();
        self.from_coeffs(coeffs)
    }

    pub fn eval(&self, a: &UniPoly, x: &Scalar) -> Scalar {
        a.coeffs.iter().rev().fold(self.field.zero(), |acc, c| {
            self.field.add(&self.field.mul(&acc, x), c)
        })
    }

    pub fn mul_mod(&self, a: &UniPoly, b: &UniPoly, m: &UniPoly) -> UniPoly {
        self.rem(&self.mul(a, b), m).expect("nonzero modulus")
    }

    pub fn pow_mod(&self, base: &UniPoly, exp: &BigUint, m: &UniPoly) -> UniPoly {
        let mut acc = self.rem(&self.one(), m).expect("nonzero modulus");
        if exp.is_zero() {
            return acc;
        }
        let base = self.rem(base, m).expect("nonzero modulus");
        for i in (0..exp.bits()).rev() {
            acc = self.mul_mod(&acc, &acc, m);
            if exp.bit(i) {
                acc = self.mul_mod(&acc, &base, m);
            }
        }
        acc
    }

    pub fn format(&self, a: &UniPoly) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in a.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            let c = self.field.format(c);
            parts.push(match i {
                0 => c,
                1 => format!("{}*x", c),
                _ => format!("{}*x^{}", c, i),
            });
        }
        parts.join(" + ")
    }
}
