//! Exact ground fields: the rationals, prime fields and prime-power fields.
//!
//! A [`Field`] is a cheap, shareable handle; [`Scalar`] values are plain data
//! whose meaning depends on the field that produced them. All arithmetic goes
//! through the field handle.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest prime accepted for `Prime` and `PrimePower` fields. Products of two
/// residues must fit into a `u64`.
pub const MAX_PRIME: u64 = (1 << 32) - 1;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum FieldSpec {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Fp")]
    Prime { p: u64 },
    /// `modulus` holds the coefficients of a monic irreducible polynomial
    /// over F_p, lowest degree first.
    #[serde(rename = "Fq")]
    PrimePower { p: u64, modulus: Vec<u64> },
}

/// A field element in canonical form.
///
/// * `Rational`: reduced fraction with positive denominator.
/// * `Residue`: integer in `[0, p)`.
/// * `Ext`: residue polynomial of degree `< r` packed as `sum c_i p^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Residue(u64),
    Ext(u64),
}

struct Inner {
    spec: FieldSpec,
    p: u64,
    degree: usize,
    order: Option<u64>,
    modulus: Vec<u64>,
}

#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.spec {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime { p } => write!(f, "F{}", p),
            FieldSpec::PrimePower { p, .. } => write!(f, "F{}^{}", p, self.0.degree),
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
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

pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

impl Field {
    pub fn rational() -> Field {
        Field(Arc::new(Inner {
            spec: FieldSpec::Rational,
            p: 0,
            degree: 1,
            order: None,
            modulus: Vec::new(),
        }))
    }

    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(Error::InvalidField(format!(
                "{} is not a prime below 2^32",
                p
            )));
        }
        Ok(Field(Arc::new(Inner {
            spec: FieldSpec::Prime { p },
            p,
            degree: 1,
            order: Some(p),
            modulus: Vec::new(),
        })))
    }

    /// Builds F_p[t]/(modulus). The modulus must be monic, of degree at least
    /// two, and irreducible over F_p.
    pub fn prime_power(p: u64, modulus: Vec<u64>) -> Result<Field> {
        let base = Field::prime(p)?;
        let mut modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        while modulus.last() == Some(&0) {
            modulus.pop();
        }
        if modulus.len() < 3 {
            return Err(Error::InvalidField(
                "modulus must have degree at least 2".into(),
            ));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        let degree = modulus.len() - 1;
        let order = (0..degree).try_fold(1u64, |acc, _| acc.checked_mul(p));
        let order = order
            .filter(|q| *q < (1u64 << 63))
            .ok_or_else(|| Error::InvalidField("field order exceeds 2^63".into()))?;
        let ring = crate::poly::PolyRing::new(base.clone());
        let poly = ring.from_coeffs(modulus.iter().map(|&c| Scalar::Residue(c)).collect());
        if !crate::factor::is_irreducible(&ring, &poly)? {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        Ok(Field(Arc::new(Inner {
            spec: FieldSpec::PrimePower {
                p,
                modulus: modulus.clone(),
            },
            p,
            degree,
            order: Some(order),
            modulus,
        })))
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Field> {
        match spec {
            FieldSpec::Rational => Ok(Field::rational()),
            FieldSpec::Prime { p } => Field::prime(*p),
            FieldSpec::PrimePower { p, modulus } => Field::prime_power(*p, modulus.clone()),
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    /// Degree over the prime field (1 for Q and F_p).
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// Number of elements, `None` for Q.
    pub fn order(&self) -> Option<u64> {
        self.0.order
    }

    pub fn is_finite(&self) -> bool {
        self.0.order.is_some()
    }

    pub(crate) fn prime_modulus(&self) -> Option<u64> {
        match self.0.spec {
            FieldSpec::Prime { p } => Some(p),
            _ => None,
        }
    }

    /// The prime subfield F_p of a finite field, or Q itself.
    pub fn prime_subfield(&self) -> Field {
        match self.0.spec {
            FieldSpec::Rational | FieldSpec::Prime { .. } => self.clone(),
            FieldSpec::PrimePower { p, .. } => Field::prime(p).expect("validated prime"),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self.0.spec {
            FieldSpec::Rational => Scalar::Rational(BigRational::zero()),
            FieldSpec::Prime { .. } => Scalar::Residue(0),
            FieldSpec::PrimePower { .. } => Scalar::Ext(0),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.0.spec {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime { p } => Scalar::Residue(v.rem_euclid(p as i64) as u64),
            FieldSpec::PrimePower { p, .. } => Scalar::Ext(v.rem_euclid(p as i64) as u64),
        }
    }

    fn reduce_bigint(&self, v: &BigInt) -> Scalar {
        match self.0.spec {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::Prime { p } | FieldSpec::PrimePower { p, .. } => {
                let r = v.mod_floor(&BigInt::from(p)).to_u64().unwrap();
                if self.0.degree == 1 {
                    Scalar::Residue(r)
                } else {
                    Scalar::Ext(r)
                }
            }
        }
    }

    /// `num / den` interpreted in this field.
    pub fn from_fraction(&self, num: i64, den: i64) -> Result<Scalar> {
        self.div(&self.from_i64(num), &self.from_i64(den))
    }

    /// True when `a` is a canonical element of this field.
    pub fn contains(&self, a: &Scalar) -> bool {
        match (&self.0.spec, a) {
            (FieldSpec::Rational, Scalar::Rational(_)) => true,
            (FieldSpec::Prime { p }, Scalar::Residue(v)) => v < p,
            (FieldSpec::PrimePower { .. }, Scalar::Ext(v)) => *v < self.0.order.unwrap(),
            _ => false,
        }
    }

    fn check(&self, a: &Scalar) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!(
                "{:?} is not an element of {}",
                a, self
            )))
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue(v) | Scalar::Ext(v) => *v == 0,
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue(v) | Scalar::Ext(v) => *v == 1,
        }
    }

    pub(crate) fn ext_digits(&self, v: u64) -> Vec<u64> {
        let p = self.0.p;
        let mut out = vec![0u64; self.0.degree];
        let mut v = v;
        for d in out.iter_mut() {
            *d = v % p;
            v /= p;
        }
        out
    }

    pub(crate) fn ext_pack(&self, digits: &[u64]) -> u64 {
        let p = self.0.p;
        digits.iter().rev().fold(0u64, |acc, &d| acc * p + d)
    }

    fn ext_add(&self, a: u64, b: u64, negate_b: bool) -> u64 {
        let p = self.0.p;
        let da = self.ext_digits(a);
        let db = self.ext_digits(b);
        let sum: Vec<u64> = da
            .iter()
            .zip(&db)
            .map(|(&x, &y)| {
                if negate_b {
                    (x + p - y) % p
                } else {
                    (x + y) % p
                }
            })
            .collect();
        self.ext_pack(&sum)
    }

    fn ext_mul(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        let r = self.0.degree;
        let da = self.ext_digits(a);
        let db = self.ext_digits(b);
        let mut prod = vec![0u64; 2 * r - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let modulus = &self.0.modulus;
        for k in (r..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..r {
                let t = c * modulus[j] % p;
                prod[k - r + j] = (prod[k - r + j] + p - t) % p;
            }
        }
        self.ext_pack(&prod[..r])
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Scalar::Residue(x), Scalar::Residue(y)) => Scalar::Residue((x + y) % self.0.p),
            (Scalar::Ext(x), Scalar::Ext(y)) => Scalar::Ext(self.ext_add(*x, *y, false)),
            _ => panic!("scalar kinds differ: {:?} and {:?}", a, b),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x - y),
            (Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue((x + self.0.p - y) % self.0.p)
            }
            (Scalar::Ext(x), Scalar::Ext(y)) => Scalar::Ext(self.ext_add(*x, *y, true)),
            _ => panic!("scalar kinds differ: {:?} and {:?}", a, b),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Scalar::Residue(x), Scalar::Residue(y)) => Scalar::Residue(x * y % self.0.p),
            (Scalar::Ext(x), Scalar::Ext(y)) => Scalar::Ext(self.ext_mul(*x, *y)),
            _ => panic!("scalar kinds differ: {:?} and {:?}", a, b),
        }
    }

    pub fn pow(&self, a: &Scalar, mut exp: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match a {
            Scalar::Rational(x) => Scalar::Rational(x.recip()),
            Scalar::Residue(x) => Scalar::Residue(mod_inv(*x, self.0.p)),
            Scalar::Ext(_) => self.pow(a, self.0.order.unwrap() - 2),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Checked variants validate membership of both operands first.
    pub fn checked_add(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn checked_sub(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.sub(a, b))
    }

    pub fn checked_mul(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn checked_div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.check(a)?;
        self.check(b)?;
        self.div(a, b)
    }

    /// Inverse of the Frobenius `a -> a^p` (defined on every finite field).
    pub(crate) fn pth_root(&self, a: &Scalar) -> Scalar {
        match self.0.spec {
            FieldSpec::Prime { .. } | FieldSpec::Rational => a.clone(),
            FieldSpec::PrimePower { p, .. } => self.pow(a, self.0.order.unwrap() / p),
        }
    }

    /// The class of `t` in F_p[t]/(modulus); `None` unless prime-power.
    pub fn generator(&self) -> Option<Scalar> {
        match self.0.spec {
            FieldSpec::PrimePower { p, .. } => Some(Scalar::Ext(p)),
            _ => None,
        }
    }

    /// Coordinates over the prime field (length `degree`).
    pub fn coordinates(&self, a: &Scalar) -> Vec<Scalar> {
        match a {
            Scalar::Ext(v) => self
                .ext_digits(*v)
                .into_iter()
                .map(Scalar::Residue)
                .collect(),
            other => vec![other.clone()],
        }
    }

    /// Inverse of [`Field::coordinates`].
    pub fn from_coordinates(&self, coords: &[Scalar]) -> Result<Scalar> {
        if coords.len() != self.0.degree {
            return Err(Error::ShapeMismatch(format!(
                "expected {} coordinates",
                self.0.degree
            )));
        }
        match self.0.spec {
            FieldSpec::PrimePower { .. } => {
                let mut digits = Vec::with_capacity(coords.len());
                for c in coords {
                    match c {
                        Scalar::Residue(v) if *v < self.0.p => digits.push(*v),
                        _ => return Err(Error::FieldMismatch("coordinate not in F_p".into())),
                    }
                }
                Ok(Scalar::Ext(self.ext_pack(&digits)))
            }
            _ => {
                self.check(&coords[0])?;
                Ok(coords[0].clone())
            }
        }
    }

    /// Maps an element of `sub` into this field. `sub` must be this field or
    /// its prime subfield.
    pub fn embed(&self, sub: &Field, a: &Scalar) -> Result<Scalar> {
        if sub == self {
            return Ok(a.clone());
        }
        match (&sub.0.spec, &self.0.spec, a) {
            (FieldSpec::Prime { p }, FieldSpec::PrimePower { p: q, .. }, Scalar::Residue(v))
                if p == q =>
            {
                Ok(Scalar::Ext(*v))
            }
            _ => Err(Error::NotAnExtension),
        }
    }

    /// The element of the prime subfield equal to `a`, if there is one.
    pub fn to_prime_subfield(&self, a: &Scalar) -> Option<Scalar> {
        match a {
            Scalar::Ext(v) if *v < self.0.p => Some(Scalar::Residue(*v)),
            Scalar::Ext(_) => None,
            other => Some(other.clone()),
        }
    }

    /// Uniform element of a finite field; small integers in `[-5, 5]` over Q.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self.0.spec {
            FieldSpec::Rational => self.from_i64(rng.gen_range(-5..=5)),
            FieldSpec::Prime { p } => Scalar::Residue(rng.gen_range(0..p)),
            FieldSpec::PrimePower { .. } => Scalar::Ext(rng.gen_range(0..self.0.order.unwrap())),
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let a = self.random(rng);
            if !self.is_zero(&a) {
                return a;
            }
        }
    }

    /// All elements of a finite field of order at most `limit`.
    pub fn elements(&self, limit: u64) -> Option<Vec<Scalar>> {
        let q = self.0.order?;
        if q > limit {
            return None;
        }
        Some(match self.0.spec {
            FieldSpec::Prime { .. } => (0..q).map(Scalar::Residue).collect(),
            _ => (0..q).map(Scalar::Ext).collect(),
        })
    }

    /// Canonical string form: an integer or `a/b`, a decimal residue, or
    /// `[c0,c1,...]`.
    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Rational(r) if r.is_integer() => r.numer().to_string(),
            Scalar::Rational(r) => format!("{}/{}", r.numer(), r.denom()),
            Scalar::Residue(v) => v.to_string(),
            Scalar::Ext(v) => {
                let digits: Vec<String> =
                    self.ext_digits(*v).iter().map(|d| d.to_string()).collect();
                format!("[{}]", digits.join(","))
            }
        }
    }

    /// Parses `a/b`, an integer, or (prime-power fields) `[c0,c1,...]`.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            if self.0.degree < 2 {
                return Err(Error::Parse(format!(
                    "coefficient list '{}' needs an Fq field",
                    s
                )));
            }
            let gen = self.generator().unwrap();
            let mut acc = self.zero();
            let mut power = self.one();
            for part in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let c = self.parse_fraction(part)?;
                acc = self.add(&acc, &self.mul(&c, &power));
                power = self.mul(&power, &gen);
            }
            return Ok(acc);
        }
        self.parse_fraction(s)
    }

    fn parse_fraction(&self, s: &str) -> Result<Scalar> {
        let parse_int = |t: &str| -> Result<BigInt> {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("invalid integer '{}'", t)))
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (parse_int(n)?, parse_int(d)?),
            None => (parse_int(s)?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in '{}'", s)));
        }
        match self.0.spec {
            FieldSpec::Rational => Ok(Scalar::Rational(BigRational::new(num, den))),
            _ => {
                let d = self.reduce_bigint(&den);
                self.div(&self.reduce_bigint(&num), &d)
                    .map_err(|_| Error::Parse(format!("denominator of '{}' vanishes mod p", s)))
            }
        }
    }

    /// Exact rational value, for Q only.
    pub fn as_rational<'a>(&self, a: &'a Scalar) -> Option<&'a BigRational> {
        match a {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }
}
