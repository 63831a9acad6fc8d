//! Projective covers, syzygies, Ext and membership predicates.

use std::sync::Arc;

use crate::algebra::{algebra_radical, primitive_idempotents, regular_module, Algebra, ModuleRep};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::homcalc::{direct_sum_all, dual_module, hom_basis, is_isomorphic};
use crate::linalg::{rank_of_vectors, Mat, Subspace};

/// Indecomposable projectives (one per isomorphism class), their tops and
/// the radical of the algebra.
#[derive(Debug)]
pub struct ProjectiveData {
    /// A complete set of primitive orthogonal idempotents.
    pub idempotents: Vec<Vec<Scalar>>,
    /// Idempotent `e_i` chosen for each class of indecomposable projective.
    pub class_idempotents: Vec<Vec<Scalar>>,
    /// `P_i = A e_i` with its basis inside `A` (columns).
    pub projectives: Vec<(ModuleRep, Mat)>,
    pub simples: Vec<ModuleRep>,
    /// Basis of `J(A)` as columns.
    pub radical: Mat,
}

pub fn projective_data(algebra: &Algebra) -> Result<Arc<ProjectiveData>> {
    let a = algebra.structure()?;
    a.projective
        .get_or_init(|| compute_projective_data(algebra).map(Arc::new))
        .clone()
}

fn compute_projective_data(algebra: &Algebra) -> Result<ProjectiveData> {
    let a = algebra.structure()?;
    let f = a.field();
    let d = a.dim();
    let radical = algebra_radical(algebra)?;
    let idempotents = primitive_idempotents(algebra)?;
    let reg = regular_module(algebra)?;
    let mut class_idempotents = Vec::new();
    let mut projectives: Vec<(ModuleRep, Mat)> = Vec::new();
    for e in &idempotents {
        let columns: Vec<Vec<Scalar>> = (0..d).map(|k| a.mul(&a.basis_vector(k), e)).collect();
        let basis = Mat::from_columns(f, d, &columns).column_basis();
        let p = reg.submodule(&basis)?;
        let mut seen = false;
        for (q, _) in &projectives {
            if is_isomorphic(q, &p)?.is_some() {
                seen = true;
                break;
            }
        }
        if !seen {
            class_idempotents.push(e.clone());
            projectives.push((p, basis));
        }
    }
    let mut simples = Vec::with_capacity(projectives.len());
    for (p, _) in &projectives {
        let jp = radical_submodule_with(p, &radical)?;
        simples.push(p.quotient(&jp)?.0);
    }
    Ok(ProjectiveData {
        idempotents,
        class_idempotents,
        projectives,
        simples,
        radical,
    })
}

/// Action of an algebra element given by coordinates.
fn element_action(x: &ModuleRep, coords: &[Scalar]) -> Result<Mat> {
    let f = x.field();
    let mut acc = Mat::zeros(f, x.dim(), x.dim());
    for (c, m) in coords.iter().zip(x.action()) {
        if !f.is_zero(c) {
            acc = acc.add(&m.scale(c))?;
        }
    }
    Ok(acc)
}

fn radical_submodule_with(x: &ModuleRep, radical: &Mat) -> Result<Mat> {
    let f = x.field();
    let mut span = Subspace::new(f, x.dim());
    for r in 0..radical.cols() {
        let m = element_action(x, &radical.col(r))?;
        for c in 0..m.cols() {
            span.insert(&m.col(c));
        }
    }
    Ok(Mat::from_columns(f, x.dim(), span.basis()))
}

/// Column basis of `J(A) X`.
pub fn radical_submodule(x: &ModuleRep) -> Result<Mat> {
    let data = projective_data(x.algebra())?;
    radical_submodule_with(x, &data.radical)
}

pub fn simple_modules(algebra: &Algebra) -> Result<Vec<ModuleRep>> {
    Ok(projective_data(algebra)?.simples.clone())
}

pub fn indecomposable_projectives(algebra: &Algebra) -> Result<Vec<ModuleRep>> {
    Ok(projective_data(algebra)?
        .projectives
        .iter()
        .map(|(p, _)| p.clone())
        .collect())
}

/// Indecomposable injectives `D(e_i A)`, obtained by dualizing the
/// projectives of the opposite algebra.
pub fn indecomposable_injectives(algebra: &Algebra) -> Result<Vec<ModuleRep>> {
    let op = algebra.opposite();
    let mut out = Vec::new();
    for p in indecomposable_projectives(&op)? {
        let d = crate::homcalc::dual_over(&p, algebra)?;
        out.push(d);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub module: ModuleRep,
    /// Surjection onto the covered module.
    pub map: Mat,
    /// Class index (into the indecomposable projectives) of each summand.
    pub classes: Vec<usize>,
}

/// Minimal projective cover: generators are picked greedily from `e_i X`
/// outside `J X` plus the submodule generated so far.
pub fn projective_cover(x: &ModuleRep) -> Result<ProjectiveCover> {
    let algebra = x.algebra();
    let data = projective_data(algebra)?;
    let f = x.field();
    let n = x.dim();
    let mut span = Subspace::new(f, n);
    let jx = radical_submodule_with(x, &data.radical)?;
    for c in 0..jx.cols() {
        span.insert(&jx.col(c));
    }
    let mut parts = Vec::new();
    let mut maps = Vec::new();
    let mut classes = Vec::new();
    for (i, e) in data.class_idempotents.iter().enumerate() {
        let ex = element_action(x, e)?;
        while let Some(v) = (0..n).map(|c| ex.col(c)).find(|v| !span.contains(v)) {
            let images: Vec<Vec<Scalar>> = x
                .action()
                .iter()
                .map(|m| m.mul(&Mat::column(f, v.clone())).map(|c| c.col(0)))
                .collect::<Result<_>>()?;
            for w in &images {
                span.insert(w);
            }
            let (p, basis) = &data.projectives[i];
            let through = Mat::from_columns(f, n, &images).mul(basis)?;
            parts.push(p.clone());
            maps.push(through);
            classes.push(i);
        }
    }
    debug_assert_eq!(span.dim(), n);
    let module = direct_sum_all(algebra, &parts)?;
    let map = if maps.is_empty() {
        Mat::zeros(f, n, 0)
    } else {
        Mat::hstack(&maps)?
    };
    debug_assert!(map.rank() == n);
    debug_assert!({
        let jp = radical_submodule_with(&module, &data.radical)?;
        let ker = map.kernel_basis();
        let mut s = Subspace::new(f, module.dim());
        for c in 0..jp.cols() {
            s.insert(&jp.col(c));
        }
        (0..ker.cols()).all(|c| s.contains(&ker.col(c)))
    });
    Ok(ProjectiveCover {
        module,
        map,
        classes,
    })
}

pub fn is_projective(x: &ModuleRep) -> Result<bool> {
    Ok(projective_cover(x)?.module.dim() == x.dim())
}

/// First syzygy together with its inclusion into the projective cover.
pub fn syzygy_step(x: &ModuleRep) -> Result<(ModuleRep, Mat, ProjectiveCover)> {
    let cover = projective_cover(x)?;
    let k = cover.map.kernel_basis();
    let omega = cover.module.submodule(&k)?;
    Ok((omega, k, cover))
}

pub fn syzygy(x: &ModuleRep, n: usize) -> Result<ModuleRep> {
    if n == 0 {
        return Err(Error::PreconditionViolated {
            index: 0,
            reason: "syzygy order must be at least 1".into(),
        });
    }
    let mut cur = x.clone();
    for _ in 0..n {
        cur = syzygy_step(&cur)?.0;
    }
    Ok(cur)
}

/// `phi: P1 -> P0` between projectives with recomputed membership flags.
#[derive(Clone, Debug)]
pub struct PresentationMorphism {
    p1: ModuleRep,
    p0: ModuleRep,
    phi: Mat,
    membership: PMembership,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PMembership {
    /// `phi` is a morphism between projective modules.
    pub proj2: bool,
    /// Additionally `Im phi` lies in `J P0`.
    pub p1: bool,
    /// Additionally `ker phi` lies in `J P1`.
    pub p2: bool,
}

fn contained(f: &crate::field::Field, len: usize, sub: &Mat, space: &Mat) -> bool {
    let mut s = Subspace::new(f, len);
    for c in 0..space.cols() {
        s.insert(&space.col(c));
    }
    (0..sub.cols()).all(|c| s.contains(&sub.col(c)))
}

impl PresentationMorphism {
    pub fn new(p1: ModuleRep, p0: ModuleRep, phi: Mat) -> Result<Self> {
        p1.same_algebra(&p0)?;
        let membership = p_membership_of(&p1, &p0, &phi)?;
        Ok(PresentationMorphism {
            p1,
            p0,
            phi,
            membership,
        })
    }

    pub fn p1(&self) -> &ModuleRep {
        &self.p1
    }

    pub fn p0(&self) -> &ModuleRep {
        &self.p0
    }

    pub fn phi(&self) -> &Mat {
        &self.phi
    }

    pub fn membership(&self) -> PMembership {
        self.membership
    }
}

fn p_membership_of(p1: &ModuleRep, p0: &ModuleRep, phi: &Mat) -> Result<PMembership> {
    let f = p0.field();
    let proj2 = p1.is_intertwiner(p0, phi)? && is_projective(p1)? && is_projective(p0)?;
    if !proj2 {
        return Ok(PMembership {
            proj2,
            p1: false,
            p2: false,
        });
    }
    let in_p1 = contained(f, p0.dim(), &phi.column_basis(), &radical_submodule(p0)?);
    let in_p2 = in_p1 && contained(f, p1.dim(), &phi.kernel_basis(), &radical_submodule(p1)?);
    Ok(PMembership {
        proj2,
        p1: in_p1,
        p2: in_p2,
    })
}

pub fn p_membership(pm: &PresentationMorphism) -> PMembership {
    pm.membership
}

/// `P1 -> P0 -> X -> 0` built from the cover of `X` and the cover of its
/// syzygy.
pub fn minimal_presentation(x: &ModuleRep) -> Result<PresentationMorphism> {
    let (omega, incl, cover0) = syzygy_step(x)?;
    let cover1 = projective_cover(&omega)?;
    let phi = incl.mul(&cover1.map)?;
    PresentationMorphism::new(cover1.module, cover0.module, phi)
}

pub fn coker_of_presentation(pm: &PresentationMorphism) -> Result<ModuleRep> {
    Ok(pm.p0.quotient(&pm.phi.column_basis())?.0)
}

/// `dim Ext^n(m, x)` as the cokernel of restriction
/// `Hom(P0, x) -> Hom(Omega^n m, x)` along the last syzygy inclusion.
pub fn ext_dim(n: usize, m: &ModuleRep, x: &ModuleRep) -> Result<usize> {
    m.same_algebra(x)?;
    if n == 0 {
        return Ok(hom_basis(m, x)?.len());
    }
    let z = if n == 1 { m.clone() } else { syzygy(m, n - 1)? };
    let (omega, incl, cover) = syzygy_step(&z)?;
    let target = hom_basis(&omega, x)?;
    if target.is_empty() {
        return Ok(0);
    }
    let restricted: Vec<Vec<Scalar>> = hom_basis(&cover.module, x)?
        .iter()
        .map(|h| h.mul(&incl).map(Mat::into_entries))
        .collect::<Result<_>>()?;
    let r = rank_of_vectors(x.field(), x.dim() * omega.dim(), &restricted);
    Ok(target.len() - r)
}

fn all_simples(algebra: &Algebra) -> Result<ModuleRep> {
    direct_sum_all(algebra, &simple_modules(algebra)?)
}

/// Projective dimension at most `n`: `Ext^{n+1}(x, S) = 0` for the sum of
/// simples `S`.
pub fn pdim_le(x: &ModuleRep, n: usize) -> Result<bool> {
    Ok(ext_dim(n + 1, x, &all_simples(x.algebra())?)? == 0)
}

/// Injective dimension at most `n`: `Ext^{n+1}(S, x) = 0`.
pub fn idim_le(x: &ModuleRep, n: usize) -> Result<bool> {
    Ok(ext_dim(n + 1, &all_simples(x.algebra())?, x)? == 0)
}

/// Whether the images of all maps `m -> x` span `x`.
pub fn gen_membership(m: &ModuleRep, x: &ModuleRep) -> Result<bool> {
    m.same_algebra(x)?;
    if x.dim() == 0 {
        return Ok(true);
    }
    let homs = hom_basis(m, x)?;
    if homs.is_empty() {
        return Ok(false);
    }
    Ok(Mat::hstack(&homs)?.rank() == x.dim())
}

pub fn cogen_membership(m: &ModuleRep, x: &ModuleRep) -> Result<bool> {
    m.same_algebra(x)?;
    gen_membership(&dual_module(m)?, &dual_module(x)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orthogonality {
    Hom,
    Ext(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrthogonalSide {
    /// `Hom(m, x) = 0` (or `Ext^n(m, x) = 0`).
    Right,
    /// `Hom(x, m) = 0` (or `Ext^n(x, m) = 0`), computed on duals.
    Left,
}

pub fn hom_ext_orthogonal(
    m: &ModuleRep,
    x: &ModuleRep,
    mode: Orthogonality,
    side: OrthogonalSide,
) -> Result<bool> {
    m.same_algebra(x)?;
    let (a, b) = match side {
        OrthogonalSide::Right => (m.clone(), x.clone()),
        OrthogonalSide::Left => (dual_module(m)?, dual_module(x)?),
    };
    Ok(match mode {
        Orthogonality::Hom => hom_basis(&a, &b)?.is_empty(),
        Orthogonality::Ext(n) => ext_dim(n, &a, &b)? == 0,
    })
}

/// `0 -> l -f-> m -g-> n -> 0`, checked exact on construction.
#[derive(Clone, Debug)]
pub struct SesData {
    pub l: ModuleRep,
    pub m: ModuleRep,
    pub n: ModuleRep,
    pub f: Mat,
    pub g: Mat,
}

impl SesData {
    pub fn new(l: ModuleRep, m: ModuleRep, n: ModuleRep, f: Mat, g: Mat) -> Result<Self> {
        l.same_algebra(&m)?;
        m.same_algebra(&n)?;
        if !l.is_intertwiner(&m, &f)? || !m.is_intertwiner(&n, &g)? {
            return Err(Error::NotIntertwiner);
        }
        let rf = f.rank();
        let rg = g.rank();
        if rf != l.dim() {
            return Err(Error::NotExact(format!(
                "first map has rank {} < {}",
                rf,
                l.dim()
            )));
        }
        if rg != n.dim() {
            return Err(Error::NotExact(format!(
                "second map has rank {} < {}",
                rg,
                n.dim()
            )));
        }
        if !g.mul(&f)?.is_zero() || rf + rg != m.dim() {
            return Err(Error::NotExact(
                "image of the first map is not the kernel of the second".into(),
            ));
        }
        Ok(SesData { l, m, n, f, g })
    }
}

/// Whether every map `l -> x` extends along `f` to `m -> x`.
pub fn relative_injectivity(seq: &SesData, x: &ModuleRep) -> Result<bool> {
    seq.m.same_algebra(x)?;
    let target = hom_basis(&seq.l, x)?.len();
    if target == 0 {
        return Ok(true);
    }
    let restricted: Vec<Vec<Scalar>> = hom_basis(&seq.m, x)?
        .iter()
        .map(|h| h.mul(&seq.f).map(Mat::into_entries))
        .collect::<Result<_>>()?;
    Ok(rank_of_vectors(x.field(), x.dim() * seq.l.dim(), &restricted) == target)
}
