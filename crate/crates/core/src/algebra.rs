//! Algebra descriptions and their finite-dimensional modules.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Mat, Subspace};

/// Noncommutative polynomial in the generators `x_0, ..., x_{m-1}`.
///
/// A word `[w0, w1, ..., wk]` is the product `x_{w0} x_{w1} ... x_{wk}`;
/// the empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NCPoly {
    terms: Vec<(Scalar, Vec<usize>)>,
}

impl NCPoly {
    /// Merges terms with equal words (first appearance fixes the order) and
    /// drops zero coefficients.
    pub fn new(field: &Field, terms: Vec<(Scalar, Vec<usize>)>) -> NCPoly {
        let mut merged: Vec<(Scalar, Vec<usize>)> = Vec::new();
        for (c, w) in terms {
            match merged.iter_mut().find(|(_, v)| *v == w) {
                Some(slot) => slot.0 = field.add(&slot.0, &c),
                None => merged.push((c, w)),
            }
        }
        merged.retain(|(c, _)| !field.is_zero(c));
        NCPoly { terms: merged }
    }

    pub fn from_ints(field: &Field, terms: &[(i64, &[usize])]) -> NCPoly {
        NCPoly::new(
            field,
            terms
                .iter()
                .map(|(c, w)| (field.from_i64(*c), w.to_vec()))
                .collect(),
        )
    }

    pub fn terms(&self) -> &[(Scalar, Vec<usize>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn reversed(&self) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(c, w)| (c.clone(), w.iter().rev().copied().collect()))
                .collect(),
        }
    }

    fn map_coeffs(&self, f: &impl Fn(&Scalar) -> Result<Scalar>) -> Result<NCPoly> {
        Ok(NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(c, w)| Ok((f(c)?, w.clone())))
                .collect::<Result<_>>()?,
        })
    }

    /// Evaluates at `n x n` matrices, one per generator.
    pub fn eval(&self, field: &Field, n: usize, mats: &[Mat]) -> Result<Mat> {
        let mut acc = Mat::zeros(field, n, n);
        for (c, w) in &self.terms {
            let mut prod = Mat::identity(field, n);
            for &g in w {
                let m = mats.get(g).ok_or_else(|| {
                    Error::ShapeMismatch(format!("no action for generator {}", g))
                })?;
                prod = prod.mul(m)?;
            }
            acc = acc.add(&prod.scale(c))?;
        }
        Ok(acc)
    }

    pub fn format(&self, field: &Field, names: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, w)| {
                let word = if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter().map(|&g| names(g)).collect::<Vec<_>>().join("*")
                };
                format!("{}*{}", field.format(c), word)
            })
            .collect();
        parts.join(" + ")
    }
}

/// `k<x_0, ..., x_{m-1}> / (relations)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FreePresentation {
    field: Field,
    num_generators: usize,
    relations: Vec<NCPoly>,
}

impl FreePresentation {
    pub fn new(field: &Field, num_generators: usize, relations: Vec<NCPoly>) -> Result<Self> {
        for (i, r) in relations.iter().enumerate() {
            for (c, w) in r.terms() {
                if !field.contains(c) {
                    return Err(Error::FieldMismatch(format!(
                        "coefficient in relation {}",
                        i
                    )));
                }
                if let Some(&g) = w.iter().find(|&&g| g >= num_generators) {
                    return Err(Error::InvalidPresentation(format!(
                        "relation {} uses generator {} of {}",
                        i, g, num_generators
                    )));
                }
            }
        }
        Ok(FreePresentation {
            field: field.clone(),
            num_generators,
            relations,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn relations(&self) -> &[NCPoly] {
        &self.relations
    }
}

/// Metadata kept when a structure algebra comes from a bound quiver.
#[derive(Clone, Debug, PartialEq)]
pub struct QuiverInfo {
    pub vertices: usize,
    /// `(name, source, target)`
    pub arrows: Vec<(String, usize, usize)>,
    /// Basis element `i` is the path with this word (arrow indices, last
    /// arrow traversed first); trivial paths carry their vertex.
    pub basis_paths: Vec<(usize, Vec<usize>)>,
}

/// Finite-dimensional algebra given by structure constants.
pub struct StructureAlgebra {
    field: Field,
    dim: usize,
    /// `mult[i * dim + j]` holds the coordinates of `e_i e_j`.
    mult: Vec<Vec<Scalar>>,
    unit: Vec<Scalar>,
    labels: Vec<String>,
    quiver: Option<QuiverInfo>,
    left_mult: OnceLock<Vec<Mat>>,
    generators: OnceLock<Vec<usize>>,
    pub(crate) projective: OnceLock<Result<Arc<crate::homological::ProjectiveData>>>,
}

impl fmt::Debug for StructureAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "StructureAlgebra(dim {} over {}, basis {:?})",
            self.dim, self.field, self.labels
        )
    }
}

impl PartialEq for StructureAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.unit == other.unit
            && self.mult == other.mult
    }
}

impl StructureAlgebra {
    /// Checks associativity on every basis triple and the unit laws.
    pub fn new(
        field: &Field,
        dim: usize,
        mult: Vec<Vec<Scalar>>,
        unit: Vec<Scalar>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let bad = |m: String| Error::InvalidPresentation(m);
        if mult.len() != dim * dim || mult.iter().any(|v| v.len() != dim) || unit.len() != dim {
            return Err(Error::ShapeMismatch(format!(
                "structure constants for dimension {}",
                dim
            )));
        }
        if mult
            .iter()
            .flatten()
            .chain(&unit)
            .any(|x| !field.contains(x))
        {
            return Err(Error::FieldMismatch("structure constants".into()));
        }
        let labels = labels.unwrap_or_else(|| (0..dim).map(|i| format!("b{}", i)).collect());
        if labels.len() != dim {
            return Err(Error::ShapeMismatch("basis labels".into()));
        }
        let alg = StructureAlgebra {
            field: field.clone(),
            dim,
            mult,
            unit,
            labels,
            quiver: None,
            left_mult: OnceLock::new(),
            generators: OnceLock::new(),
            projective: OnceLock::new(),
        };
        for i in 0..dim {
            let e = alg.basis_vector(i);
            if alg.mul(&alg.unit, &e) != e || alg.mul(&e, &alg.unit) != e {
                return Err(bad(format!("unit law fails at basis element {}", i)));
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let ij = &alg.mult[i * dim + j];
                for k in 0..dim {
                    let left = alg.mul(ij, &alg.basis_vector(k));
                    let right = alg.mul(&alg.basis_vector(i), &alg.mult[j * dim + k]);
                    if left != right {
                        return Err(bad(format!("associativity fails at ({}, {}, {})", i, j, k)));
                    }
                }
            }
        }
        Ok(alg)
    }

    pub(crate) fn with_quiver(mut self, info: QuiverInfo) -> Self {
        self.quiver = Some(info);
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn quiver(&self) -> Option<&QuiverInfo> {
        self.quiver.as_ref()
    }

    /// Coordinates of `e_i e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.mult[i * self.dim + j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim];
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if f.is_zero(y) {
                    continue;
                }
                let xy = f.mul(x, y);
                for (o, c) in out.iter_mut().zip(&self.mult[i * self.dim + j]) {
                    if !f.is_zero(c) {
                        *o = f.add(o, &f.mul(&xy, c));
                    }
                }
            }
        }
        out
    }

    /// Left multiplication by basis element `i` as a `dim x dim` matrix.
    pub fn left_mult(&self) -> &[Mat] {
        self.left_mult.get_or_init(|| {
            (0..self.dim)
                .map(|i| {
                    Mat::from_fn(&self.field, self.dim, self.dim, |r, c| {
                        self.mult[i * self.dim + c][r].clone()
                    })
                })
                .collect()
        })
    }

    /// Basis indices that generate the algebra together with the unit,
    /// chosen greedily in basis order.
    pub fn generating_subset(&self) -> &[usize] {
        self.generators.get_or_init(|| {
            let mut gens: Vec<usize> = Vec::new();
            let mut span = self.subalgebra(&gens);
            for i in 0..self.dim {
                if span.dim() == self.dim {
                    break;
                }
                if !span.contains(&self.basis_vector(i)) {
                    gens.push(i);
                    span = self.subalgebra(&gens);
                }
            }
            gens
        })
    }

    fn subalgebra(&self, gens: &[usize]) -> Subspace {
        let mut span = Subspace::new(&self.field, self.dim);
        let mut queue = vec![self.unit.clone()];
        span.insert(&self.unit);
        while let Some(v) = queue.pop() {
            for &g in gens {
                let w = self.mul(&self.basis_vector(g), &v);
                if span.insert(&w) {
                    queue.push(w);
                }
            }
        }
        span
    }

    pub fn opposite(&self) -> StructureAlgebra {
        let d = self.dim;
        StructureAlgebra {
            field: self.field.clone(),
            dim: d,
            mult: (0..d * d)
                .map(|k| self.mult[(k % d) * d + k / d].clone())
                .collect(),
            unit: self.unit.clone(),
            labels: self.labels.clone(),
            quiver: None,
            left_mult: OnceLock::new(),
            generators: OnceLock::new(),
            projective: OnceLock::new(),
        }
    }

    fn map_field(
        &self,
        target: &Field,
        f: &impl Fn(&Scalar) -> Result<Scalar>,
    ) -> Result<StructureAlgebra> {
        let map_vec = |v: &Vec<Scalar>| v.iter().map(f).collect::<Result<Vec<_>>>();
        Ok(StructureAlgebra {
            field: target.clone(),
            dim: self.dim,
            mult: self.mult.iter().map(map_vec).collect::<Result<_>>()?,
            unit: map_vec(&self.unit)?,
            labels: self.labels.clone(),
            quiver: self.quiver.clone(),
            left_mult: OnceLock::new(),
            generators: OnceLock::new(),
            projective: OnceLock::new(),
        })
    }
}

/// An algebra in one of the two supported forms.
#[derive(Clone, Debug)]
pub enum Algebra {
    Free(Arc<FreePresentation>),
    Structure(Arc<StructureAlgebra>),
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Algebra::Free(a), Algebra::Free(b)) => Arc::ptr_eq(a, b) || a == b,
            (Algebra::Structure(a), Algebra::Structure(b)) => Arc::ptr_eq(a, b) || a == b,
            _ => false,
        }
    }
}

impl From<FreePresentation> for Algebra {
    fn from(p: FreePresentation) -> Self {
        Algebra::Free(Arc::new(p))
    }
}

impl From<StructureAlgebra> for Algebra {
    fn from(a: StructureAlgebra) -> Self {
        Algebra::Structure(Arc::new(a))
    }
}

impl Algebra {
    pub fn field(&self) -> &Field {
        match self {
            Algebra::Free(p) => &p.field,
            Algebra::Structure(a) => &a.field,
        }
    }

    /// Number of action matrices a module carries.
    pub fn num_actions(&self) -> usize {
        match self {
            Algebra::Free(p) => p.num_generators,
            Algebra::Structure(a) => a.dim,
        }
    }

    /// Indices of action matrices that determine Hom spaces.
    pub fn hom_generators(&self) -> Vec<usize> {
        match self {
            Algebra::Free(p) => (0..p.num_generators).collect(),
            Algebra::Structure(a) => a.generating_subset().to_vec(),
        }
    }

    pub fn structure(&self) -> Result<&Arc<StructureAlgebra>> {
        match self {
            Algebra::Structure(a) => Ok(a),
            Algebra::Free(_) => Err(Error::RequiresStructureForm),
        }
    }

    pub fn free(&self) -> Option<&Arc<FreePresentation>> {
        match self {
            Algebra::Free(p) => Some(p),
            Algebra::Structure(_) => None,
        }
    }

    pub fn opposite(&self) -> Algebra {
        match self {
            Algebra::Free(p) => Algebra::Free(Arc::new(FreePresentation {
                field: p.field.clone(),
                num_generators: p.num_generators,
                relations: p.relations.iter().map(NCPoly::reversed).collect(),
            })),
            Algebra::Structure(a) => Algebra::Structure(Arc::new(a.opposite())),
        }
    }

    /// The same presentation read over `target`, mapping every coefficient.
    pub(crate) fn map_field(
        &self,
        target: &Field,
        f: impl Fn(&Scalar) -> Result<Scalar>,
    ) -> Result<Algebra> {
        Ok(match self {
            Algebra::Free(p) => Algebra::Free(Arc::new(FreePresentation {
                field: target.clone(),
                num_generators: p.num_generators,
                relations: p
                    .relations
                    .iter()
                    .map(|r| r.map_coeffs(&f))
                    .collect::<Result<_>>()?,
            })),
            Algebra::Structure(a) => Algebra::Structure(Arc::new(a.map_field(target, &f)?)),
        })
    }

    pub fn action_label(&self, i: usize) -> String {
        match self {
            Algebra::Free(_) => format!("x{}", i),
            Algebra::Structure(a) => a.labels[i].clone(),
        }
    }
}

/// One failed identity with its residual matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub relation: String,
    pub residual: Mat,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A finite-dimensional module: one `dim x dim` matrix per generator (free
/// form) or per basis element (structure form).
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleRep {
    algebra: Algebra,
    dim: usize,
    action: Vec<Mat>,
}

impl ModuleRep {
    /// Checks shapes and fields only; see [`ModuleRep::validate`].
    pub fn new(algebra: &Algebra, dim: usize, action: Vec<Mat>) -> Result<Self> {
        if action.len() != algebra.num_actions() {
            return Err(Error::ShapeMismatch(format!(
                "{} action matrices, algebra needs {}",
                action.len(),
                algebra.num_actions()
            )));
        }
        for (i, m) in action.iter().enumerate() {
            if m.shape() != (dim, dim) {
                return Err(Error::ShapeMismatch(format!(
                    "action {} is {}x{}, module dimension {}",
                    i,
                    m.rows(),
                    m.cols(),
                    dim
                )));
            }
            if m.field() != algebra.field() {
                return Err(Error::FieldMismatch(format!("action {}", i)));
            }
        }
        Ok(ModuleRep {
            algebra: algebra.clone(),
            dim,
            action,
        })
    }

    /// Like [`ModuleRep::new`] but rejects modules failing validation.
    pub fn checked(algebra: &Algebra, dim: usize, action: Vec<Mat>) -> Result<Self> {
        let m = ModuleRep::new(algebra, dim, action)?;
        let report = m.validate()?;
        match report.violations.first() {
            None => Ok(m),
            Some(v) => Err(Error::InvalidPresentation(format!(
                "module violates {}",
                v.relation
            ))),
        }
    }

    pub fn zero(algebra: &Algebra) -> Self {
        let f = algebra.field();
        ModuleRep {
            algebra: algebra.clone(),
            dim: 0,
            action: vec![Mat::zeros(f, 0, 0); algebra.num_actions()],
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Mat] {
        &self.action
    }

    pub(crate) fn same_algebra(&self, other: &ModuleRep) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    /// Residual of every defining identity, in a fixed order: one per
    /// relation (free form), or the unit followed by all basis products
    /// `e_i e_j` (structure form).
    pub fn relation_residuals(&self) -> Result<Vec<(String, Mat)>> {
        let f = self.field();
        let n = self.dim;
        match &self.algebra {
            Algebra::Free(p) => p
                .relations
                .iter()
                .enumerate()
                .map(|(i, r)| Ok((format!("relation {}", i), r.eval(f, n, &self.action)?)))
                .collect(),
            Algebra::Structure(a) => {
                let d = a.dim;
                let combine = |coords: &[Scalar]| -> Result<Mat> {
                    let mut acc = Mat::zeros(f, n, n);
                    for (c, m) in coords.iter().zip(&self.action) {
                        if !f.is_zero(c) {
                            acc = acc.add(&m.scale(c))?;
                        }
                    }
                    Ok(acc)
                };
                let mut out = vec![(
                    "unit".to_string(),
                    combine(&a.unit)?.sub(&Mat::identity(f, n))?,
                )];
                for i in 0..d {
                    for j in 0..d {
                        let lhs = self.action[i].mul(&self.action[j])?;
                        let rhs = combine(&a.mult[i * d + j])?;
                        out.push((format!("{}*{}", a.labels[i], a.labels[j]), lhs.sub(&rhs)?));
                    }
                }
                Ok(out)
            }
        }
    }

    pub fn validate(&self) -> Result<ValidationReport> {
        Ok(ValidationReport {
            violations: self
                .relation_residuals()?
                .into_iter()
                .filter(|(_, m)| !m.is_zero())
                .map(|(relation, residual)| Violation { relation, residual })
                .collect(),
        })
    }

    /// Action matrices that determine Hom spaces.
    pub fn generator_actions(&self) -> Vec<&Mat> {
        self.algebra
            .hom_generators()
            .into_iter()
            .map(|i| &self.action[i])
            .collect()
    }

    /// The module transported along `p`: actions `p^-1 X p`.
    pub fn conjugate(&self, p: &Mat) -> Result<ModuleRep> {
        let inv = p.inverse()?;
        let action = self
            .action
            .iter()
            .map(|m| inv.mul(m)?.mul(p))
            .collect::<Result<Vec<_>>>()?;
        ModuleRep::new(&self.algebra, self.dim, action)
    }

    /// Restriction to the invariant subspace spanned by the columns of `basis`.
    pub fn submodule(&self, basis: &Mat) -> Result<ModuleRep> {
        let k = basis.cols();
        let left = basis.left_inverse()?;
        let mut action = Vec::with_capacity(self.action.len());
        for m in &self.action {
            let image = m.mul(basis)?;
            let coords = left.mul(&image)?;
            if basis.mul(&coords)? != image {
                return Err(Error::InvalidPresentation(
                    "subspace is not invariant".into(),
                ));
            }
            action.push(coords);
        }
        ModuleRep::new(&self.algebra, k, action)
    }

    /// Quotient by the invariant subspace spanned by the columns of `sub`.
    /// The quotient basis is the set of non-pivot coordinates of the
    /// subspace's reduced echelon form; also returns the projection matrix.
    pub fn quotient(&self, sub: &Mat) -> Result<(ModuleRep, Mat)> {
        let f = self.field();
        let n = self.dim;
        let mut space = Subspace::new(f, n);
        for c in 0..sub.cols() {
            space.insert(&sub.col(c));
        }
        let mut is_pivot = vec![false; n];
        for &p in space.pivots() {
            is_pivot[p] = true;
        }
        let keep: Vec<usize> = (0..n).filter(|&i| !is_pivot[i]).collect();
        let proj_of = |v: &[Scalar]| -> Vec<Scalar> {
            let r = space.reduce(v);
            keep.iter().map(|&i| r[i].clone()).collect()
        };
        let proj = Mat::from_columns(
            f,
            keep.len(),
            &(0..n)
                .map(|i| {
                    let mut e = vec![f.zero(); n];
                    e[i] = f.one();
                    proj_of(&e)
                })
                .collect::<Vec<_>>(),
        );
        let incl = Mat::from_fn(f, n, keep.len(), |r, c| {
            if keep[c] == r {
                f.one()
            } else {
                f.zero()
            }
        });
        for m in &self.action {
            let moved = m.mul(sub)?;
            for c in 0..moved.cols() {
                if !space.contains(&moved.col(c)) {
                    return Err(Error::InvalidPresentation(
                        "subspace is not invariant".into(),
                    ));
                }
            }
        }
        let action = self
            .action
            .iter()
            .map(|m| proj.mul(m)?.mul(&incl))
            .collect::<Result<Vec<_>>>()?;
        Ok((ModuleRep::new(&self.algebra, keep.len(), action)?, proj))
    }

    /// Checks `t * X_g = Y_g * t` for every action matrix.
    pub fn is_intertwiner(&self, target: &ModuleRep, t: &Mat) -> Result<bool> {
        self.same_algebra(target)?;
        if t.shape() != (target.dim, self.dim) {
            return Err(Error::ShapeMismatch(format!(
                "map is {}x{}, expected {}x{}",
                t.rows(),
                t.cols(),
                target.dim,
                self.dim
            )));
        }
        for (x, y) in self.action.iter().zip(&target.action) {
            if t.mul(x)? != y.mul(t)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub(crate) fn map_field(
        &self,
        algebra: &Algebra,
        f: impl Fn(&Scalar) -> Result<Scalar>,
    ) -> Result<ModuleRep> {
        let target = algebra.field();
        let action = self
            .action
            .iter()
            .map(|m| {
                let data = m.entries().iter().map(&f).collect::<Result<Vec<_>>>()?;
                Mat::from_vec(target, m.rows(), m.cols(), data)
            })
            .collect::<Result<Vec<_>>>()?;
        ModuleRep::new(algebra, self.dim, action)
    }
}

/// The left regular module: basis element `i` acts by left multiplication.
pub fn regular_module(algebra: &Algebra) -> Result<ModuleRep> {
    let a = algebra.structure()?;
    ModuleRep::new(algebra, a.dim, a.left_mult().to_vec())
}

/// Basis of the Jacobson radical as the columns of a `dim x r` matrix.
///
/// Uses the kernel of the trace form `(a, b) -> tr(L_a L_b)`, which is the
/// radical in characteristic 0 or `p > dim`.
pub fn algebra_radical(algebra: &Algebra) -> Result<Mat> {
    let a = algebra.structure()?;
    let f = &a.field;
    let p = f.characteristic();
    if p != 0 && p <= a.dim as u64 {
        return Err(Error::UnsupportedCharacteristic {
            characteristic: p,
            dim: a.dim,
        });
    }
    let l = a.left_mult();
    let mut gram = Mat::zeros(f, a.dim, a.dim);
    for i in 0..a.dim {
        for j in i..a.dim {
            let t = l[i].mul(&l[j])?.trace();
            gram.set(i, j, t.clone());
            gram.set(j, i, t);
        }
    }
    let rad = gram.kernel_basis();
    debug_assert!(ideal_is_nilpotent(a, &rad));
    Ok(rad)
}

/// Whether the span of the columns of `basis` (assumed an ideal) is nilpotent.
pub(crate) fn ideal_is_nilpotent(a: &StructureAlgebra, basis: &Mat) -> bool {
    let gens: Vec<Vec<Scalar>> = (0..basis.cols()).map(|c| basis.col(c)).collect();
    let mut power = gens.clone();
    for _ in 0..=a.dim {
        if power.is_empty() {
            return true;
        }
        let mut next = Subspace::new(&a.field, a.dim);
        for x in &power {
            for y in &gens {
                next.insert(&a.mul(x, y));
            }
        }
        if next.dim() == power.len() {
            return false;
        }
        power = next.basis().to_vec();
    }
    power.is_empty()
}

/// A complete set of orthogonal primitive idempotents, as coordinate
/// vectors, read off a decomposition of the regular module.
pub fn primitive_idempotents(algebra: &Algebra) -> Result<Vec<Vec<Scalar>>> {
    let a = algebra.structure()?;
    let reg = regular_module(algebra)?;
    let dec = crate::homcalc::decompose(&reg)?;
    if !dec.is_complete() {
        return Err(Error::IncompleteDecomposition(
            "regular module did not split into certified indecomposables".into(),
        ));
    }
    let p = &dec.change_of_basis;
    let pinv = p.inverse()?;
    let unit = Mat::column(&a.field, a.unit.clone());
    let v = pinv.mul(&unit)?;
    let mut out = Vec::new();
    let mut offset = 0;
    for s in &dec.summands {
        let mut block = vec![a.field.zero(); a.dim];
        for (k, slot) in block
            .iter_mut()
            .enumerate()
            .skip(offset)
            .take(s.module.dim())
        {
            *slot = v.get(k, 0).clone();
        }
        offset += s.module.dim();
        out.push(p.mul(&Mat::column(&a.field, block))?.col(0));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn commuting(f: &Field) -> Algebra {
        let rel = NCPoly::from_ints(f, &[(1, &[0, 1]), (-1, &[1, 0])]);
        FreePresentation::new(f, 2, vec![rel]).unwrap().into()
    }

    #[test]
    fn commutator_residual() {
        let q = Field::rational();
        let alg = commuting(&q);
        let x = Mat::from_ints(&q, &[&[0, 1], &[0, 0]]);
        let y = Mat::from_ints(&q, &[&[0, 0], &[1, 0]]);
        let m = ModuleRep::new(&alg, 2, vec![x, y]).unwrap();
        let report = m.validate().unwrap();
        assert_eq!(report.violations.len(), 1);
        assert_eq!(
            report.violations[0].residual,
            Mat::from_ints(&q, &[&[1, 0], &[0, -1]])
        );
    }

    #[test]
    fn nilpotent_square_is_valid() {
        let q = Field::rational();
        let rel = NCPoly::from_ints(&q, &[(1, &[0, 0])]);
        let alg: Algebra = FreePresentation::new(&q, 1, vec![rel]).unwrap().into();
        let m = ModuleRep::new(&alg, 2, vec![Mat::from_ints(&q, &[&[0, 1], &[0, 0]])]).unwrap();
        assert!(m.validate().unwrap().is_valid());
        let free: Algebra = FreePresentation::new(&q, 1, vec![]).unwrap().into();
        let any = ModuleRep::new(&free, 2, vec![Mat::from_ints(&q, &[&[3, 1], &[4, 1]])]).unwrap();
        assert!(any.validate().unwrap().is_valid());
    }

    #[test]
    fn ncpoly_merges_terms() {
        let q = Field::rational();
        let p = NCPoly::from_ints(&q, &[(1, &[0]), (2, &[1]), (-1, &[0])]);
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.terms()[0].1, vec![1]);
    }

    #[test]
    fn bad_structure_constants_rejected() {
        let q = Field::rational();
        // basis (1, x) with x*x = 1 + x is fine; break the unit instead
        let mult = vec![
            vec![q.one(), q.zero()],
            vec![q.zero(), q.one()],
            vec![q.zero(), q.one()],
            vec![q.one(), q.one()],
        ];
        assert!(StructureAlgebra::new(&q, 2, mult.clone(), vec![q.one(), q.zero()], None).is_ok());
        let err = StructureAlgebra::new(&q, 2, mult, vec![q.zero(), q.one()], None).unwrap_err();
        assert_eq!(err.code(), "InvalidPresentation");
    }

    #[test]
    fn opposite_twice_is_identity() {
        let q = Field::rational();
        let alg = commuting(&q);
        assert_eq!(alg.opposite().opposite(), alg);
    }

    #[test]
    fn quotient_and_submodule() {
        let q = Field::rational();
        let free: Algebra = FreePresentation::new(&q, 1, vec![]).unwrap().into();
        let n = Mat::from_ints(&q, &[&[0, 0], &[1, 0]]);
        let m = ModuleRep::new(&free, 2, vec![n]).unwrap();
        let soc = Mat::from_ints(&q, &[&[0], &[1]]);
        let s = m.submodule(&soc).unwrap();
        assert_eq!(s.dim(), 1);
        let (top, proj) = m.quotient(&soc).unwrap();
        assert_eq!(top.dim(), 1);
        assert!(top.action()[0].is_zero());
        assert!(m.is_intertwiner(&top, &proj).unwrap());
        let top_line = Mat::from_ints(&q, &[&[1], &[0]]);
        assert!(m.submodule(&top_line).is_err());
    }
}
