//! Polynomial factorization.
//!
//! Over finite fields the factorization is complete: squarefree
//! decomposition, distinct-degree splitting, then Cantor-Zassenhaus
//! equal-degree splitting driven by a seeded generator. Over Q only rational
//! roots are extracted; cofactors of degree two or three without rational
//! roots are irreducible, anything larger is reported as unresolved.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, Scalar};
use crate::poly::{PolyRing, UniPoly};

pub const DEFAULT_FACTOR_SEED: u64 = 0x6661_6374_6f72;

#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub unit: Scalar,
    /// Monic irreducible factors with multiplicities.
    pub factors: Vec<(UniPoly, u32)>,
    /// Monic squarefree pieces whose irreducibility could not be decided.
    /// Always empty over finite fields.
    pub unresolved: Vec<(UniPoly, u32)>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.unresolved.is_empty()
    }

    /// Multiplies everything back together.
    pub fn expand(&self, ring: &PolyRing) -> UniPoly {
        self.factors
            .iter()
            .chain(&self.unresolved)
            .fold(ring.constant(self.unit.clone()), |acc, (f, m)| {
                ring.mul(&acc, &ring.pow(f, *m))
            })
    }

    /// Pairwise coprime prime-power parts `(base, exponent, irreducible)`.
    pub fn coprime_parts(&self) -> Vec<(UniPoly, u32, bool)> {
        self.factors
            .iter()
            .map(|(f, m)| (f.clone(), *m, true))
            .chain(self.unresolved.iter().map(|(f, m)| (f.clone(), *m, false)))
            .collect()
    }
}

fn sort_factors(v: &mut [(UniPoly, u32)]) {
    v.sort_by(|a, b| (a.0.degree(), &a.0, a.1).cmp(&(b.0.degree(), &b.0, b.1)));
}

/// Squarefree decomposition of a monic polynomial into pairwise coprime
/// squarefree pieces with multiplicities.
pub fn squarefree_decomposition(ring: &PolyRing, f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let field = ring.field();
    let p = field.characteristic();
    let df = ring.derivative(f);
    if df.is_zero() {
        // Only reachable in characteristic p: f is a p-th power.
        let root = pth_root_poly(ring, f);
        for (g, m) in squarefree_decomposition(ring, &root) {
            out.push((g, m * p as u32));
        }
        return out;
    }
    let mut c = ring.gcd(f, &df);
    let mut w = ring.div_exact(f, &c).unwrap();
    let mut i = 1u32;
    while w.degree().unwrap_or(0) > 0 {
        let y = ring.gcd(&w, &c);
        let z = ring.div_exact(&w, &y).unwrap();
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        w = y.clone();
        c = ring.div_exact(&c, &y).unwrap();
        i += 1;
    }
    if c.degree().unwrap_or(0) > 0 && p > 0 {
        let root = pth_root_poly(ring, &c);
        for (g, m) in squarefree_decomposition(ring, &root) {
            out.push((g, m * p as u32));
        }
    }
    out
}

fn pth_root_poly(ring: &PolyRing, f: &UniPoly) -> UniPoly {
    let field = ring.field();
    let p = field.characteristic() as usize;
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|c| field.pth_root(c))
        .collect();
    ring.from_coeffs(coeffs)
}

fn distinct_degree(ring: &PolyRing, f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let q = BigUint::from(ring.field().order().unwrap());
    let x = ring.x();
    let mut rest = f.clone();
    let mut h = ring.rem(&x, &rest).unwrap();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap() >= 2 * d {
        h = ring.pow_mod(&h, &q, &rest);
        let g = ring.gcd(&rest, &ring.sub(&h, &x));
        if g.degree().unwrap() > 0 {
            rest = ring.div_exact(&rest, &g).unwrap();
            h = ring.rem(&h, &rest).unwrap();
            out.push((g, d));
        }
        d += 1;
    }
    if rest.degree().unwrap() > 0 {
        let deg = rest.degree().unwrap();
        out.push((rest, deg));
    }
    out
}

fn equal_degree<R: Rng>(ring: &PolyRing, f: &UniPoly, d: usize, rng: &mut R) -> Vec<UniPoly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let field = ring.field();
    let q = field.order().unwrap();
    let p = field.characteristic();
    loop {
        let a = ring.from_coeffs((0..n).map(|_| field.random(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // Trace to F_2: a + a^2 + a^4 + ... over r*d squarings.
            let steps = field.degree() * d;
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..steps {
                t = ring.mul_mod(&t, &t, f);
                acc = ring.add(&acc, &t);
            }
            acc
        } else {
            let exp = (BigUint::from(q).pow(d as u32) - 1u32) / 2u32;
            ring.sub(&ring.pow_mod(&a, &exp, f), &ring.one())
        };
        let g = ring.gcd(f, &b);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let other = ring.div_exact(f, &g).unwrap();
            let mut out = equal_degree(ring, &g, d, rng);
            out.extend(equal_degree(ring, &other, d, rng));
            return out;
        }
    }
}

/// Complete factorization over a finite field.
pub fn poly_factor(ring: &PolyRing, f: &UniPoly) -> Result<Factorization> {
    poly_factor_seeded(ring, f, DEFAULT_FACTOR_SEED)
}

pub fn poly_factor_seeded(ring: &PolyRing, f: &UniPoly, seed: u64) -> Result<Factorization> {
    if !ring.field().is_finite() {
        return Err(Error::UnsupportedField(
            "complete factorization needs a finite field; use rational_roots over Q".into(),
        ));
    }
    let Some(lead) = f.leading() else {
        return Err(Error::DivisionByZero);
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let monic = ring.monic(f);
    let mut factors = Vec::new();
    for (piece, m) in squarefree_decomposition(ring, &monic) {
        for (g, d) in distinct_degree(ring, &piece) {
            for h in equal_degree(ring, &g, d, &mut rng) {
                factors.push((ring.monic(&h), m));
            }
        }
    }
    sort_factors(&mut factors);
    Ok(Factorization {
        unit: lead.clone(),
        factors,
        unresolved: Vec::new(),
    })
}

/// Irreducibility over a finite field; over Q only decided for degree <= 3.
pub fn is_irreducible(ring: &PolyRing, f: &UniPoly) -> Result<bool> {
    let Some(deg) = f.degree() else {
        return Ok(false);
    };
    if deg == 0 {
        return Ok(false);
    }
    let fac = factor(ring, f)?;
    if !fac.is_complete() {
        return Err(Error::IncompleteFactorization(ring.format(f)));
    }
    Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
}

/// Random monic irreducible of degree `r` over F_p, found by rejection.
pub fn find_irreducible(p: u64, r: usize, seed: u64) -> Result<Vec<u64>> {
    let field = Field::prime(p)?;
    let ring = PolyRing::new(field.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut coeffs: Vec<Scalar> = (0..r).map(|_| field.random(&mut rng)).collect();
        coeffs.push(field.one());
        let f = ring.from_coeffs(coeffs);
        if is_irreducible(&ring, &f)? {
            return Ok(f
                .coeffs()
                .iter()
                .map(|c| match c {
                    Scalar::Residue(v) => *v,
                    _ => unreachable!(),
                })
                .collect());
        }
    }
}

/// Factorization over any implemented field: complete over finite fields,
/// possibly with unresolved pieces over Q.
pub fn factor(ring: &PolyRing, f: &UniPoly) -> Result<Factorization> {
    match ring.field().spec() {
        FieldSpec::Rational => factor_rational(ring, f),
        _ => poly_factor(ring, f),
    }
}

pub fn factor_rational(ring: &PolyRing, f: &UniPoly) -> Result<Factorization> {
    let Some(lead) = f.leading() else {
        return Err(Error::DivisionByZero);
    };
    let monic = ring.monic(f);
    let mut factors = Vec::new();
    let mut unresolved = Vec::new();
    for (piece, m) in squarefree_decomposition(ring, &monic) {
        let roots = match rational_roots(ring, &piece) {
            Ok(r) => r,
            Err(Error::IncompleteFactorization(_)) => {
                unresolved.push((piece, m));
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut rest = piece;
        for r in roots {
            let lin = ring.linear(&r);
            rest = ring.div_exact(&rest, &lin)?;
            factors.push((lin, m));
        }
        match rest.degree().unwrap_or(0) {
            0 => {}
            1..=3 => factors.push((rest, m)),
            _ => unresolved.push((rest, m)),
        }
    }
    sort_factors(&mut factors);
    sort_factors(&mut unresolved);
    Ok(Factorization {
        unit: lead.clone(),
        factors,
        unresolved,
    })
}

/// Integer coefficients of a nonzero scalar multiple of `f`.
fn integer_form(ring: &PolyRing, f: &UniPoly) -> Vec<BigInt> {
    let field = ring.field();
    let rats: Vec<&BigRational> = f
        .coeffs()
        .iter()
        .map(|c| field.as_rational(c).expect("rational coefficient"))
        .collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    rats.iter()
        .map(|r| r.numer() * (&lcm / r.denom()))
        .collect()
}

/// All rational roots (distinct, ascending) of a nonzero polynomial over Q.
pub fn rational_roots(ring: &PolyRing, f: &UniPoly) -> Result<Vec<Scalar>> {
    let field = ring.field();
    if *field.spec() != FieldSpec::Rational {
        return Err(Error::UnsupportedField("rational_roots needs Q".into()));
    }
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut ints = integer_form(ring, f);
    let mut roots: Vec<BigRational> = Vec::new();
    let low = ints.iter().take_while(|c| c.is_zero()).count();
    if low > 0 {
        roots.push(BigRational::zero());
        ints.drain(..low);
    }
    let n = ints.len() - 1;
    if n > 0 {
        // y = a_n x turns the polynomial monic with integer coefficients;
        // rational roots x become integer roots y dividing the constant term.
        let an = ints[n].clone();
        let monic: Vec<BigInt> = (0..=n)
            .map(|i| &ints[i] * num_traits::pow(an.clone(), n - i) / &an)
            .collect();
        let c0 = monic[0].abs().to_biguint().unwrap();
        let divisors = integer_divisors(&c0).ok_or_else(|| {
            Error::IncompleteFactorization(format!("could not factor constant term {}", c0))
        })?;
        let eval = |y: &BigInt| -> BigInt {
            monic
                .iter()
                .rev()
                .fold(BigInt::zero(), |acc, c| acc * y + c)
        };
        let f1 = eval(&BigInt::one());
        let fm1 = eval(&-BigInt::one());
        for d in divisors {
            for y in [BigInt::from(d.clone()), -BigInt::from(d)] {
                // (y - 1) | F(1) and (y + 1) | F(-1) are cheap filters.
                let ym1: BigInt = &y - 1;
                if !ym1.is_zero() && !(&f1 % &ym1).is_zero() {
                    continue;
                }
                let yp1: BigInt = &y + 1;
                if !yp1.is_zero() && !(&fm1 % &yp1).is_zero() {
                    continue;
                }
                if eval(&y).is_zero() {
                    roots.push(BigRational::new(y, an.clone()));
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots.into_iter().map(Scalar::Rational).collect())
}

const TRIAL_LIMIT: u64 = 1_000_000;

fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if (n % p).is_zero() {
            return *n == BigUint::from(p);
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap();
    let d = &nm1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigUint) -> Option<BigUint> {
    let one = BigUint::one();
    for c in 1u32..20 {
        let f = |x: &BigUint| (x * x + c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        for _ in 0..200_000 {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            let d = diff.gcd(n);
            if d == *n {
                break;
            }
            if d != one {
                return Some(d);
            }
        }
    }
    None
}

fn prime_factors(n: BigUint, out: &mut Vec<BigUint>) -> Option<()> {
    let one = BigUint::one();
    if n == one {
        return Some(());
    }
    if is_probable_prime(&n) {
        out.push(n);
        return Some(());
    }
    let d = pollard_rho(&n)?;
    let rest = &n / &d;
    prime_factors(d, out)?;
    prime_factors(rest, out)
}

/// Positive divisors of `n` (`n = 0` has none we need: returns `[1]`).
fn integer_divisors(n: &BigUint) -> Option<Vec<BigUint>> {
    if n.is_zero() {
        return Some(vec![BigUint::one()]);
    }
    let mut primes = Vec::new();
    let mut rest = n.clone();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT && BigUint::from(p * p) <= rest {
        while (&rest % p).is_zero() {
            primes.push(BigUint::from(p));
            rest /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > BigUint::one() {
        if rest
            .to_u64()
            .is_some_and(|r| r <= TRIAL_LIMIT * TRIAL_LIMIT)
        {
            primes.push(rest);
        } else {
            prime_factors(rest, &mut primes)?;
        }
    }
    primes.sort();
    let mut divisors = vec![BigUint::one()];
    let mut i = 0;
    while i < primes.len() {
        let p = primes[i].clone();
        let mut e = 0;
        while i < primes.len() && primes[i] == p {
            e += 1;
            i += 1;
        }
        let current = divisors.clone();
        let mut pk = BigUint::one();
        for _ in 0..e {
            pk *= &p;
            divisors.extend(current.iter().map(|d| d * &pk));
        }
    }
    divisors.sort();
    Some(divisors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64) -> PolyRing {
        PolyRing::new(Field::prime(p).unwrap())
    }

    #[test]
    fn factor_x2_plus_x_over_f2() {
        let r = ring(2);
        let f = r.from_ints(&[0, 1, 1]);
        let fac = poly_factor(&r, &f).unwrap();
        assert_eq!(
            fac.factors,
            vec![(r.from_ints(&[0, 1]), 1), (r.from_ints(&[1, 1]), 1)]
        );
    }

    #[test]
    fn factor_x2_plus_1_over_f5() {
        let r = ring(5);
        let fac = poly_factor(&r, &r.from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(
            fac.factors,
            vec![(r.from_ints(&[2, 1]), 1), (r.from_ints(&[3, 1]), 1)]
        );
    }

    #[test]
    fn irreducible_quadratic_over_f2() {
        let r = ring(2);
        let f = r.from_ints(&[1, 1, 1]);
        let fac = poly_factor(&r, &f).unwrap();
        assert_eq!(fac.factors, vec![(f, 1)]);
    }

    #[test]
    fn p_th_powers_are_handled() {
        let r = ring(3);
        // (x + 1)^3 (x^2 + 1)^2 over F_3
        let a = r.pow(&r.from_ints(&[1, 1]), 3);
        let b = r.pow(&r.from_ints(&[1, 0, 1]), 2);
        let f = r.mul(&a, &b);
        let fac = poly_factor(&r, &f).unwrap();
        assert_eq!(
            fac.factors,
            vec![(r.from_ints(&[1, 1]), 3), (r.from_ints(&[1, 0, 1]), 2)]
        );
    }

    #[test]
    fn rational_field_is_rejected() {
        let r = PolyRing::new(Field::rational());
        let err = poly_factor(&r, &r.from_ints(&[1, 1])).unwrap_err();
        assert_eq!(err.code(), "UnsupportedField");
    }

    #[test]
    fn rational_root_examples() {
        let q = Field::rational();
        let r = PolyRing::new(q.clone());
        let show = |v: Vec<Scalar>| v.iter().map(|s| q.format(s)).collect::<Vec<_>>();
        assert_eq!(
            show(rational_roots(&r, &r.from_ints(&[-1, 0, 1])).unwrap()),
            ["-1", "1"]
        );
        assert!(rational_roots(&r, &r.from_ints(&[-2, 0, 1]))
            .unwrap()
            .is_empty());
        assert_eq!(
            show(rational_roots(&r, &r.from_ints(&[1, -3, 2])).unwrap()),
            ["1/2", "1"]
        );
    }

    #[test]
    fn rational_factorization_flags_unresolved() {
        let r = PolyRing::new(Field::rational());
        // (x^2 - 2)(x - 3)
        let f = r.mul(&r.from_ints(&[-2, 0, 1]), &r.from_ints(&[-3, 1]));
        let fac = factor_rational(&r, &f).unwrap();
        assert!(fac.is_complete());
        assert_eq!(fac.factors.len(), 2);
        // (x^2 - 2)(x^2 - 3) has no rational roots and degree 4: undecided.
        let g = r.mul(&r.from_ints(&[-2, 0, 1]), &r.from_ints(&[-3, 0, 1]));
        let fac = factor_rational(&r, &g).unwrap();
        assert!(!fac.is_complete());
        assert_eq!(fac.expand(&r), g);
    }

    #[test]
    fn large_constant_terms() {
        let r = PolyRing::new(Field::rational());
        // (x - 1000003)(x + 999983)
        let f = r.mul(&r.from_ints(&[-1_000_003, 1]), &r.from_ints(&[999_983, 1]));
        let roots = rational_roots(&r, &f).unwrap();
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn irreducible_search() {
        let m = find_irreducible(2, 3, 1).unwrap();
        assert!(m == vec![1, 1, 0, 1] || m == vec![1, 0, 1, 1]);
    }
}
