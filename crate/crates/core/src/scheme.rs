//! Equations of the module scheme and orbit data of its points.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{FreePresentation, ModuleRep};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::homcalc::{hom_basis, is_isomorphic};
use crate::linalg::Mat;

/// Sparse exponent vector: `(variable, exponent)` pairs sorted by variable,
/// exponents positive.
pub type Monomial = Vec<(u32, u32)>;

/// Commutative polynomial with sparse monomials and no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Field, c: Scalar) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(field, Vec::new(), c);
        p
    }

    pub fn variable(field: &Field, v: u32) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(field, vec![(v, 1)], field.one());
        p
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.iter().map(|(_, e)| e).sum())
            .max()
    }

    fn add_term(&mut self, field: &Field, m: Monomial, c: Scalar) {
        if field.is_zero(&c) {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field.add(o.get(), &c);
                if field.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, field: &Field, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(field, m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, field: &Field, c: &Scalar) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, x) in &self.terms {
            out.add_term(field, m.clone(), field.mul(x, c));
        }
        out
    }

    pub fn mul(&self, field: &Field, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(field, mono_mul(ma, mb), field.mul(ca, cb));
            }
        }
        out
    }

    pub fn eval(&self, field: &Field, point: &[Scalar]) -> Scalar {
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m {
                t = field.mul(&t, &field.pow(&point[v as usize], e as u64));
            }
            acc = field.add(&acc, &t);
        }
        acc
    }

    pub fn format(&self, field: &Field, name: &dyn Fn(u32) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let text = field.format(c);
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            let mut factors = Vec::new();
            if m.is_empty() || magnitude != "1" {
                factors.push(magnitude);
            }
            for &(v, e) in m {
                factors.push(if e == 1 {
                    name(v)
                } else {
                    format!("{}^{}", name(v), e)
                });
            }
            out.push_str(match (k, negative) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            });
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// Generators of the ideal of `Mod(A, n)`: the `n^2` entries of every
/// relation evaluated at generic matrices, relation by relation, row-major.
#[derive(Clone, Debug)]
pub struct SchemeEquations {
    pub algebra: Arc<FreePresentation>,
    pub n: usize,
    pub equations: Vec<MultiPoly>,
}

impl SchemeEquations {
    pub fn num_variables(&self) -> usize {
        self.algebra.num_generators() * self.n * self.n
    }

    /// Variable index of entry `(r, c)` of generator `g`.
    pub fn variable(&self, g: usize, r: usize, c: usize) -> u32 {
        (g * self.n * self.n + r * self.n + c) as u32
    }

    pub fn variable_name(&self, v: u32) -> String {
        let n2 = (self.n * self.n) as u32;
        let n = self.n as u32;
        format!("t[{}][{}][{}]", v / n2, (v % n2) / n, v % n)
    }

    pub fn variable_names(&self) -> Vec<String> {
        (0..self.num_variables() as u32)
            .map(|v| self.variable_name(v))
            .collect()
    }

    /// One equation per line.
    pub fn to_text(&self) -> String {
        let f = self.algebra.field();
        let mut out = String::new();
        for e in &self.equations {
            out.push_str(&e.format(f, &|v| self.variable_name(v)));
            out.push('\n');
        }
        out
    }
}

type PolyMat = Vec<Vec<MultiPoly>>;

fn poly_mat_mul(f: &Field, a: &PolyMat, b: &PolyMat) -> PolyMat {
    let n = a.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    (0..n).fold(MultiPoly::zero(), |acc, k| {
                        acc.add(f, &a[r][k].mul(f, &b[k][c]))
                    })
                })
                .collect()
        })
        .collect()
}

pub fn module_scheme_equations(algebra: &Arc<FreePresentation>, n: usize) -> SchemeEquations {
    let f = algebra.field();
    let m = algebra.num_generators();
    let generic: Vec<PolyMat> = (0..m)
        .map(|g| {
            (0..n)
                .map(|r| {
                    (0..n)
                        .map(|c| MultiPoly::variable(f, (g * n * n + r * n + c) as u32))
                        .collect()
                })
                .collect()
        })
        .collect();
    let identity: PolyMat = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    if r == c {
                        MultiPoly::constant(f, f.one())
                    } else {
                        MultiPoly::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut equations = Vec::new();
    for rel in algebra.relations() {
        let mut acc: PolyMat = vec![vec![MultiPoly::zero(); n]; n];
        for (c, w) in rel.terms() {
            let mut prod = identity.clone();
            for &g in w {
                prod = poly_mat_mul(f, &prod, &generic[g]);
            }
            for r in 0..n {
                for k in 0..n {
                    acc[r][k] = acc[r][k].add(f, &prod[r][k].scale(f, c));
                }
            }
        }
        equations.extend(acc.into_iter().flatten());
    }
    SchemeEquations {
        algebra: algebra.clone(),
        n,
        equations,
    }
}

/// Residual of every equation at the point given by one matrix per
/// generator.
pub fn evaluate_point(eqs: &SchemeEquations, mats: &[Mat]) -> Result<Vec<Scalar>> {
    let f = eqs.algebra.field();
    if mats.len() != eqs.algebra.num_generators() {
        return Err(Error::ShapeMismatch(format!(
            "{} matrices for {} generators",
            mats.len(),
            eqs.algebra.num_generators()
        )));
    }
    let mut point = Vec::with_capacity(eqs.num_variables());
    for m in mats {
        if m.shape() != (eqs.n, eqs.n) {
            return Err(Error::ShapeMismatch(format!(
                "point matrix is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                eqs.n,
                eqs.n
            )));
        }
        if m.field() != f {
            return Err(Error::FieldMismatch("point matrix".into()));
        }
        point.extend_from_slice(m.entries());
    }
    Ok(eqs.equations.iter().map(|e| e.eval(f, &point)).collect())
}

/// Dimension of the stabilizer of a module point, which equals
/// `dim End(x)` because the automorphism group is open in `End(x)`.
pub fn stabilizer_dimension(x: &ModuleRep) -> Result<usize> {
    Ok(hom_basis(x, x)?.len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitData {
    pub stab_dim: usize,
    pub orbit_dim: usize,
}

pub fn orbit_data(x: &ModuleRep) -> Result<OrbitData> {
    let stab_dim = stabilizer_dimension(x)?;
    Ok(OrbitData {
        stab_dim,
        orbit_dim: x.dim() * x.dim() - stab_dim,
    })
}

/// Two points of `Mod(A, n)` lie in one orbit exactly when the modules are
/// isomorphic.
pub fn same_orbit(x: &ModuleRep, y: &ModuleRep) -> Result<bool> {
    x.same_algebra(y)?;
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {}",
            x.dim(),
            y.dim()
        )));
    }
    Ok(is_isomorphic(x, y)?.is_some())
}
