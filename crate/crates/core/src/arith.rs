//! Monomorphised arithmetic kernels for the dense elimination loops.
//!
//! Prime fields run on raw `u64` residues; everything else goes through the
//! generic [`Field`] dispatch.

use crate::field::{mod_inv, Field, Scalar};

pub(crate) trait Arith {
    type E: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// Caller guarantees `a != 0`.
    fn inv(&self, a: &Self::E) -> Self::E;
    /// `a - b * c`
    fn sub_mul(&self, a: &Self::E, b: &Self::E, c: &Self::E) -> Self::E {
        self.sub(a, &self.mul(b, c))
    }
    fn lift(&self, s: &Scalar) -> Self::E;
    fn lower(&self, e: Self::E) -> Scalar;
}

#[derive(Clone, Copy)]
pub(crate) struct PrimeArith {
    p: u64,
}

impl PrimeArith {
    pub(crate) fn new(p: u64) -> Self {
        PrimeArith { p }
    }
}

impl Arith for PrimeArith {
    type E = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        mod_inv(*a, self.p)
    }
    #[inline]
    fn sub_mul(&self, a: &u64, b: &u64, c: &u64) -> u64 {
        let t = b * c % self.p;
        self.sub(a, &t)
    }
    fn lift(&self, s: &Scalar) -> u64 {
        match s {
            Scalar::Residue(v) => *v,
            other => panic!("expected a residue, got {:?}", other),
        }
    }
    fn lower(&self, e: u64) -> Scalar {
        Scalar::Residue(e)
    }
}

pub(crate) struct GenericArith<'a>(pub(crate) &'a Field);

impl Arith for GenericArith<'_> {
    type E = Scalar;

    fn zero(&self) -> Scalar {
        self.0.zero()
    }
    fn one(&self) -> Scalar {
        self.0.one()
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        self.0.is_zero(a)
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.0.add(a, b)
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.0.sub(a, b)
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.0.mul(a, b)
    }
    fn inv(&self, a: &Scalar) -> Scalar {
        self.0.inv(a).expect("pivot is nonzero")
    }
    fn lift(&self, s: &Scalar) -> Scalar {
        s.clone()
    }
    fn lower(&self, e: Scalar) -> Scalar {
        e
    }
}

/// Runs `$body` with `$k` bound to the fastest kernel for `$field`.
macro_rules! with_arith {
    ($field:expr, $k:ident => $body:expr) => {{
        match $field.prime_modulus() {
            Some(p) => {
                let $k = $crate::arith::PrimeArith::new(p);
                $body
            }
            None => {
                let $k = $crate::arith::GenericArith($field);
                $body
            }
        }
    }};
}
pub(crate) use with_arith;

/// In-place Gauss-Jordan elimination of a row-major `rows x cols` block.
/// Pivots are the first nonzero entry in column order. Returns pivot columns.
pub(crate) fn rref_in_place<K: Arith>(
    k: &K,
    rows: usize,
    cols: usize,
    data: &mut [K::E],
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !k.is_zero(&data[i * cols + c])) else {
            continue;
        };
        if pr != r {
            for j in c..cols {
                data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = k.inv(&data[r * cols + c]);
        for j in c..cols {
            data[r * cols + j] = k.mul(&data[r * cols + j], &inv);
        }
        let pivot_row: Vec<K::E> = data[r * cols + c..(r + 1) * cols].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = data[i * cols + c].clone();
            if k.is_zero(&factor) {
                continue;
            }
            let row = &mut data[i * cols + c..(i + 1) * cols];
            for (x, pv) in row.iter_mut().zip(&pivot_row) {
                if !k.is_zero(pv) {
                    *x = k.sub_mul(x, &factor, pv);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Right null space of a reduced matrix, one vector per free column.
pub(crate) fn kernel_from_rref<K: Arith>(
    k: &K,
    cols: usize,
    data: &[K::E],
    pivots: &[usize],
) -> Vec<Vec<K::E>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![k.zero(); cols];
        v[free] = k.one();
        for (row, &pc) in pivots.iter().enumerate() {
            let e = &data[row * cols + free];
            if !k.is_zero(e) {
                v[pc] = k.sub(&k.zero(), e);
            }
        }
        out.push(v);
    }
    out
}

/// Dense product of row-major blocks.
pub(crate) fn mat_mul<K: Arith>(
    k: &K,
    a: &[K::E],
    b: &[K::E],
    n: usize,
    m: usize,
    p: usize,
) -> Vec<K::E> {
    let mut out = vec![k.zero(); n * p];
    for i in 0..n {
        for l in 0..m {
            let x = &a[i * m + l];
            if k.is_zero(x) {
                continue;
            }
            let row_b = &b[l * p..(l + 1) * p];
            let row_o = &mut out[i * p..(i + 1) * p];
            for (o, y) in row_o.iter_mut().zip(row_b) {
                if !k.is_zero(y) {
                    *o = k.add(o, &k.mul(x, y));
                }
            }
        }
    }
    out
}
