//! Hom spaces, isomorphism, Krull-Schmidt decomposition and friends.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, ModuleRep};
use crate::error::{Error, Result};
use crate::factor::factor;
use crate::field::{Field, Scalar};
use crate::linalg::{Mat, Subspace};
use crate::poly::{PolyRing, UniPoly};
use crate::quiver::{kronecker_algebra, representation};

pub const DEFAULT_SEED: u64 = 0x005e_ed0f_4b5c;

const SPLIT_ATTEMPTS: usize = 64;
const ISO_ATTEMPTS: usize = 16;

/// Basis of `Hom_A(x, y)` as `dim y x dim x` matrices.
pub fn hom_basis(x: &ModuleRep, y: &ModuleRep) -> Result<Vec<Mat>> {
    x.same_algebra(y)?;
    let f = x.field();
    let (nx, ny) = (x.dim(), y.dim());
    let n = nx * ny;
    if n == 0 {
        return Ok(Vec::new());
    }
    let gens = x.algebra().hom_generators();
    // columns of `current` are flattened candidate maps
    let mut current = Mat::identity(f, n);
    for g in gens {
        let (xg, yg) = (&x.action()[g], &y.action()[g]);
        let mut cols = Vec::with_capacity(current.cols());
        for c in 0..current.cols() {
            let t = Mat::reshape(f, ny, nx, current.col(c));
            cols.push(t.mul(xg)?.sub(&yg.mul(&t)?)?.into_entries());
        }
        let system = Mat::from_columns(f, n, &cols);
        let ker = system.kernel_basis();
        current = current.mul(&ker)?;
        if current.cols() == 0 {
            break;
        }
    }
    Ok((0..current.cols())
        .map(|c| Mat::reshape(f, ny, nx, current.col(c)))
        .collect())
}

pub fn direct_sum(x: &ModuleRep, y: &ModuleRep) -> Result<ModuleRep> {
    x.same_algebra(y)?;
    direct_sum_all(x.algebra(), &[x.clone(), y.clone()])
}

pub fn direct_sum_all(algebra: &Algebra, parts: &[ModuleRep]) -> Result<ModuleRep> {
    let f = algebra.field();
    let dim = parts.iter().map(ModuleRep::dim).sum();
    let mut action = Vec::with_capacity(algebra.num_actions());
    for g in 0..algebra.num_actions() {
        let blocks: Vec<Mat> = parts
            .iter()
            .map(|p| {
                if p.algebra() != algebra {
                    return Err(Error::AlgebraMismatch);
                }
                Ok(p.action()[g].clone())
            })
            .collect::<Result<_>>()?;
        action.push(Mat::block_diag(f, &blocks)?);
    }
    ModuleRep::new(algebra, dim, action)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompositionStatus {
    Complete,
    NotCertified,
}

#[derive(Clone, Debug)]
pub struct Summand {
    pub module: ModuleRep,
    /// Basis of the endomorphism algebra of the summand.
    pub endomorphisms: Vec<Mat>,
    /// Basis of the radical of the endomorphism algebra, present when the
    /// algebra was certified local.
    pub radical: Option<Vec<Mat>>,
}

impl Summand {
    pub fn is_certified(&self) -> bool {
        self.radical.is_some()
    }
}

/// `change_of_basis^-1 * X_g * change_of_basis` is block diagonal with the
/// summand actions as blocks, in order.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    pub change_of_basis: Mat,
    pub status: DecompositionStatus,
    pub seed: u64,
}

impl Decomposition {
    pub fn is_complete(&self) -> bool {
        self.status == DecompositionStatus::Complete
    }

    pub fn dims(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.module.dim()).collect()
    }
}

pub fn decompose(x: &ModuleRep) -> Result<Decomposition> {
    decompose_seeded(x, DEFAULT_SEED)
}

/// Splits `x` along primary components of random endomorphisms, then
/// certifies each piece local: an ideal `N` generated by elements `g(u)`
/// (with `g` the irreducible radical of a primary minimal polynomial) is
/// checked nilpotent with `dim End - dim N = deg g`, which makes
/// `End / N` the field `k[u]/(g)` and `N` the radical.
pub fn decompose_seeded(x: &ModuleRep, seed: u64) -> Result<Decomposition> {
    let f = x.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let endo = hom_basis(x, x)?;
    let mut done: Vec<(Summand, Mat)> = Vec::new();
    let mut stack = vec![(x.clone(), Mat::identity(f, x.dim()), endo)];
    while let Some((module, embedding, endo)) = stack.pop() {
        if module.dim() == 0 {
            continue;
        }
        match split_or_certify(&module, &endo, &mut rng)? {
            Step::Split(parts) => {
                // push in reverse so that pieces come out in kernel order
                for (m, k, e) in parts.into_iter().rev() {
                    let emb = embedding.mul(&k)?;
                    stack.push((m, emb, e));
                }
            }
            Step::Local(radical) => done.push((
                Summand {
                    module,
                    endomorphisms: endo,
                    radical: Some(radical),
                },
                embedding,
            )),
            Step::Stuck => done.push((
                Summand {
                    module,
                    endomorphisms: endo,
                    radical: None,
                },
                embedding,
            )),
        }
    }
    let change_of_basis = if done.is_empty() {
        Mat::zeros(f, x.dim(), 0)
    } else {
        Mat::hstack(&done.iter().map(|(_, e)| e.clone()).collect::<Vec<_>>())?
    };
    let status = if done.iter().all(|(s, _)| s.is_certified()) {
        DecompositionStatus::Complete
    } else {
        DecompositionStatus::NotCertified
    };
    Ok(Decomposition {
        summands: done.into_iter().map(|(s, _)| s).collect(),
        change_of_basis,
        status,
        seed,
    })
}

enum Step {
    Split(Vec<(ModuleRep, Mat, Vec<Mat>)>),
    Local(Vec<Mat>),
    Stuck,
}

pub(crate) fn random_combination(f: &Field, basis: &[Mat], rng: &mut ChaCha8Rng) -> Result<Mat> {
    let mut acc = Mat::zeros(f, basis[0].rows(), basis[0].cols());
    for b in basis {
        let c = f.random(rng);
        if !f.is_zero(&c) {
            acc = acc.add(&b.scale(&c))?;
        }
    }
    Ok(acc)
}

/// Minimal polynomial of a square matrix via the Krylov sequence of powers.
pub fn minimal_polynomial(u: &Mat) -> Result<UniPoly> {
    let f = u.field();
    let ring = PolyRing::new(f.clone());
    let n = u.rows();
    let mut span = Subspace::new(f, n * n);
    let mut powers = vec![Mat::identity(f, n)];
    span.insert(powers[0].entries());
    loop {
        let next = powers.last().unwrap().mul(u)?;
        if !span.insert(next.entries()) {
            powers.push(next);
            break;
        }
        powers.push(next);
    }
    let cols: Vec<Vec<Scalar>> = powers.iter().map(|p| p.entries().to_vec()).collect();
    let ker = Mat::from_columns(f, n * n, &cols).kernel_basis();
    debug_assert_eq!(ker.cols(), 1);
    Ok(ring.monic(&ring.from_coeffs(ker.col(0))))
}

fn split_or_certify(module: &ModuleRep, endo: &[Mat], rng: &mut ChaCha8Rng) -> Result<Step> {
    let f = module.field();
    let m = module.dim();
    if endo.len() == 1 {
        return Ok(Step::Local(Vec::new()));
    }
    let ring = PolyRing::new(f.clone());
    let mut ideal = Subspace::new(f, m * m);
    for _ in 0..SPLIT_ATTEMPTS {
        let u = random_combination(f, endo, rng)?;
        let mu = minimal_polynomial(&u)?;
        let parts = factor(&ring, &mu)?.coprime_parts();
        if parts.len() >= 2 {
            return split_along(module, endo, &u, &ring, &parts).map(Step::Split);
        }
        let (g, _, irreducible) = &parts[0];
        if !irreducible {
            continue;
        }
        let gu = u.eval_poly(g)?;
        if !gu.is_zero() {
            close_ideal(&mut ideal, endo, &gu)?;
        }
        let deg = g.degree().unwrap_or(0);
        if endo.len() - ideal.dim() == deg && ideal_is_nilpotent(f, m, &ideal)? {
            let radical = ideal
                .basis()
                .iter()
                .map(|v| Mat::reshape(f, m, m, v.clone()))
                .collect();
            return Ok(Step::Local(radical));
        }
    }
    Ok(Step::Stuck)
}

/// Two-sided ideal closure inside the span of `endo` (which contains 1).
fn close_ideal(ideal: &mut Subspace, endo: &[Mat], seed: &Mat) -> Result<()> {
    let mut queue = Vec::new();
    if ideal.insert(seed.entries()) {
        queue.push(seed.clone());
    }
    while let Some(n) = queue.pop() {
        for e in endo {
            for prod in [e.mul(&n)?, n.mul(e)?] {
                if ideal.insert(prod.entries()) {
                    queue.push(prod);
                }
            }
        }
    }
    Ok(())
}

fn ideal_is_nilpotent(f: &Field, m: usize, ideal: &Subspace) -> Result<bool> {
    let gens: Vec<Mat> = ideal
        .basis()
        .iter()
        .map(|v| Mat::reshape(f, m, m, v.clone()))
        .collect();
    let mut power = gens.clone();
    loop {
        if power.is_empty() {
            return Ok(true);
        }
        let mut next = Subspace::new(f, m * m);
        for a in &power {
            for b in &gens {
                next.insert(a.mul(b)?.entries());
            }
        }
        if next.dim() >= power.len() {
            return Ok(false);
        }
        power = next
            .basis()
            .iter()
            .map(|v| Mat::reshape(f, m, m, v.clone()))
            .collect();
    }
}

type Piece = (ModuleRep, Mat, Vec<Mat>);

fn split_along(
    module: &ModuleRep,
    endo: &[Mat],
    u: &Mat,
    ring: &PolyRing,
    parts: &[(UniPoly, u32, bool)],
) -> Result<Vec<Piece>> {
    let f = module.field();
    let kernels: Vec<Mat> = parts
        .iter()
        .map(|(q, a, _)| Ok(u.eval_poly(&ring.pow(q, *a))?.kernel_basis()))
        .collect::<Result<_>>()?;
    let p = Mat::hstack(&kernels)?;
    let pinv = p.inverse()?;
    let mut out = Vec::with_capacity(kernels.len());
    let mut offset = 0;
    for k in kernels {
        let d = k.cols();
        let proj = pinv.submatrix(offset..offset + d, 0..module.dim());
        offset += d;
        let action = module
            .action()
            .iter()
            .map(|a| proj.mul(a)?.mul(&k))
            .collect::<Result<Vec<_>>>()?;
        let sub = ModuleRep::new(module.algebra(), d, action)?;
        let mut span = Subspace::new(f, d * d);
        let mut sub_endo = Vec::new();
        for e in endo {
            let r = proj.mul(e)?.mul(&k)?;
            if span.insert(r.entries()) {
                sub_endo.push(r);
            }
        }
        out.push((sub, k, sub_endo));
    }
    Ok(out)
}

pub fn is_isomorphic(x: &ModuleRep, y: &ModuleRep) -> Result<Option<Mat>> {
    is_isomorphic_seeded(x, y, DEFAULT_SEED)
}

/// Returns an invertible intertwiner `t` with `t X_g = Y_g t` when the
/// modules are isomorphic.
pub fn is_isomorphic_seeded(x: &ModuleRep, y: &ModuleRep, seed: u64) -> Result<Option<Mat>> {
    x.same_algebra(y)?;
    let f = x.field();
    if x.dim() != y.dim() {
        return Ok(None);
    }
    if x.dim() == 0 {
        return Ok(Some(Mat::zeros(f, 0, 0)));
    }
    let hxy = hom_basis(x, y)?;
    if hxy.is_empty() {
        return Ok(None);
    }
    if hom_basis(y, x)?.len() != hxy.len() || hom_basis(x, x)?.len() != hxy.len() {
        return Ok(None);
    }
    if let Some(t) = hxy.iter().find(|t| t.is_invertible()) {
        return Ok(Some(t.clone()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ISO_ATTEMPTS {
        let t = random_combination(f, &hxy, &mut rng)?;
        if t.is_invertible() {
            return Ok(Some(t));
        }
    }
    let dx = decompose_seeded(x, seed)?;
    let dy = decompose_seeded(y, seed)?;
    match_decompositions(&dx, &dy)
}

fn require_complete(d: &Decomposition) -> Result<()> {
    if d.is_complete() {
        Ok(())
    } else {
        Err(Error::IncompleteDecomposition(
            "a summand could not be certified indecomposable".into(),
        ))
    }
}

/// Isomorphism between certified indecomposables: some `g f` outside the
/// radical of `End a` makes `f` an isomorphism.
pub fn iso_between_indecomposables(a: &Summand, b: &ModuleRep) -> Result<Option<Mat>> {
    let Some(radical) = &a.radical else {
        return Err(Error::IncompleteDecomposition(
            "summand is not certified".into(),
        ));
    };
    let x = &a.module;
    if x.dim() != b.dim() {
        return Ok(None);
    }
    let f = x.field();
    let fwd = hom_basis(x, b)?;
    if fwd.is_empty() {
        return Ok(None);
    }
    let back = hom_basis(b, x)?;
    let mut rad = Subspace::new(f, x.dim() * x.dim());
    for r in radical {
        rad.insert(r.entries());
    }
    for t in &fwd {
        for g in &back {
            if !rad.contains(g.mul(t)?.entries()) {
                debug_assert!(t.is_invertible());
                return Ok(Some(t.clone()));
            }
        }
    }
    Ok(None)
}

fn match_decompositions(dx: &Decomposition, dy: &Decomposition) -> Result<Option<Mat>> {
    require_complete(dx)?;
    require_complete(dy)?;
    if dx.summands.len() != dy.summands.len() {
        return Ok(None);
    }
    let f = dx.change_of_basis.field();
    let n = dx.change_of_basis.rows();
    let offsets = |d: &Decomposition| -> Vec<usize> {
        d.summands
            .iter()
            .scan(0, |acc, s| {
                let o = *acc;
                *acc += s.module.dim();
                Some(o)
            })
            .collect()
    };
    let (ox, oy) = (offsets(dx), offsets(dy));
    let mut used = vec![false; dy.summands.len()];
    let mut w = Mat::zeros(f, n, n);
    for (i, a) in dx.summands.iter().enumerate() {
        let mut found = false;
        for (j, b) in dy.summands.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(t) = iso_between_indecomposables(a, &b.module)? {
                used[j] = true;
                w.set_block(oy[j], ox[i], &t);
                found = true;
                break;
            }
        }
        if !found {
            return Ok(None);
        }
    }
    let t = dy
        .change_of_basis
        .mul(&w)?
        .mul(&dx.change_of_basis.inverse()?)?;
    Ok(Some(t))
}

/// Groups certified indecomposable summands into isomorphism classes.
/// Returns a class index per summand, classes numbered by first appearance.
pub fn iso_classes(summands: &[Summand]) -> Result<Vec<usize>> {
    let mut reps: Vec<usize> = Vec::new();
    let mut out = Vec::with_capacity(summands.len());
    for (i, s) in summands.iter().enumerate() {
        let mut class = None;
        for (c, &r) in reps.iter().enumerate() {
            if iso_between_indecomposables(&summands[r], &s.module)?.is_some() {
                class = Some(c);
                break;
            }
        }
        out.push(class.unwrap_or_else(|| {
            reps.push(i);
            reps.len() - 1
        }));
    }
    Ok(out)
}

/// Whether `y` is isomorphic to a direct summand of `z`, by matching
/// Krull-Schmidt decompositions.
pub fn is_direct_summand(y: &ModuleRep, z: &ModuleRep) -> Result<bool> {
    y.same_algebra(z)?;
    let dy = decompose(y)?;
    let dz = decompose(z)?;
    require_complete(&dy)?;
    require_complete(&dz)?;
    let mut used = vec![false; dz.summands.len()];
    for a in &dy.summands {
        let mut found = false;
        for (j, b) in dz.summands.iter().enumerate() {
            if !used[j] && iso_between_indecomposables(a, &b.module)?.is_some() {
                used[j] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether every component of `f` between indecomposable summands of `x`
/// and `y` fails to be an isomorphism.
pub fn is_radical_morphism(f: &Mat, x: &ModuleRep, y: &ModuleRep) -> Result<bool> {
    if !x.is_intertwiner(y, f)? {
        return Err(Error::NotIntertwiner);
    }
    let dx = decompose(x)?;
    let dy = decompose(y)?;
    require_complete(&dx)?;
    require_complete(&dy)?;
    let g = dy
        .change_of_basis
        .inverse()?
        .mul(f)?
        .mul(&dx.change_of_basis)?;
    let mut r0 = 0;
    for b in &dy.summands {
        let mut c0 = 0;
        for a in &dx.summands {
            if a.module.dim() == b.module.dim() {
                let block = g.submatrix(r0..r0 + b.module.dim(), c0..c0 + a.module.dim());
                if block.is_invertible() {
                    return Ok(false);
                }
            }
            c0 += a.module.dim();
        }
        r0 += b.module.dim();
    }
    Ok(true)
}

/// Basis of the radical morphisms between two indecomposable modules.
pub fn radical_hom_basis(x: &ModuleRep, y: &ModuleRep) -> Result<Vec<Mat>> {
    let single = |m: &ModuleRep, index: usize| -> Result<Decomposition> {
        let d = decompose(m)?;
        require_complete(&d)?;
        if d.summands.len() != 1 {
            return Err(Error::PreconditionViolated {
                index,
                reason: "module is decomposable".into(),
            });
        }
        Ok(d)
    };
    let dx = single(x, 0)?;
    single(y, 1)?;
    let s = &dx.summands[0];
    let Some(t) = iso_between_indecomposables(s, y)? else {
        return hom_basis(x, y);
    };
    // with s = P^-1 x P, the radical is t J(End s) P^-1
    let pinv = dx.change_of_basis.inverse()?;
    s.radical
        .as_ref()
        .expect("certified summand")
        .iter()
        .map(|j| t.mul(j)?.mul(&pinv))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct HaradaSaiReport {
    pub bound: usize,
    /// `2^bound - 1`
    pub threshold: usize,
    pub length: usize,
    /// Whether the composite of the first `k + 1` maps is zero.
    pub prefix_vanishes: Vec<bool>,
    /// Set when the chain reaches the threshold length and its composite
    /// of that length is nonzero. This contradicts the lemma and signals a
    /// bug in the library.
    pub violation: bool,
}

/// `maps[i]` goes from `modules[i]` to `modules[i + 1]`.
pub fn harada_sai_chain_check(
    modules: &[ModuleRep],
    maps: &[Mat],
    bound: usize,
) -> Result<HaradaSaiReport> {
    if modules.len() != maps.len() + 1 {
        return Err(Error::ShapeMismatch(format!(
            "{} modules for a chain of {} maps",
            modules.len(),
            maps.len()
        )));
    }
    for (i, m) in modules.iter().enumerate() {
        if m.dim() > bound {
            return Err(Error::PreconditionViolated {
                index: i,
                reason: format!("module dimension {} exceeds bound {}", m.dim(), bound),
            });
        }
        let d = decompose(m)?;
        if d.summands.len() != 1 || !d.is_complete() {
            return Err(Error::PreconditionViolated {
                index: i,
                reason: "module is not a certified indecomposable".into(),
            });
        }
    }
    for (i, f) in maps.iter().enumerate() {
        let ok = match is_radical_morphism(f, &modules[i], &modules[i + 1]) {
            Ok(r) => r,
            Err(Error::NotIntertwiner) => {
                return Err(Error::PreconditionViolated {
                    index: i,
                    reason: "map is not an intertwiner".into(),
                })
            }
            Err(e) => return Err(e),
        };
        if !ok {
            return Err(Error::PreconditionViolated {
                index: i,
                reason: "map is not radical".into(),
            });
        }
    }
    let threshold = (1usize << bound.min(62)) - 1;
    let mut prefix_vanishes = Vec::with_capacity(maps.len());
    let mut composite: Option<Mat> = None;
    let mut violation = false;
    for (k, f) in maps.iter().enumerate() {
        let c = match composite {
            None => f.clone(),
            Some(prev) => f.mul(&prev)?,
        };
        let zero = c.is_zero();
        if k + 1 == threshold && !zero {
            violation = true;
        }
        prefix_vanishes.push(zero);
        composite = Some(c);
    }
    Ok(HaradaSaiReport {
        bound,
        threshold,
        length: maps.len(),
        prefix_vanishes,
        violation,
    })
}

/// `D X = Hom_k(X, k)` over the opposite algebra: transposed actions.
pub fn dual_module(x: &ModuleRep) -> Result<ModuleRep> {
    let op = x.algebra().opposite();
    dual_over(x, &op)
}

pub(crate) fn dual_over(x: &ModuleRep, op: &Algebra) -> Result<ModuleRep> {
    ModuleRep::new(op, x.dim(), x.action().iter().map(Mat::transpose).collect())
}

/// Embeds modules over the free algebra `k<x_1..x_n>` into modules over the
/// `(n+1)`-Kronecker algebra: both vertices carry `X`, arrow `i` acts by
/// `X_i` and the last arrow by the identity.
pub fn kronecker_embed(x: &ModuleRep) -> Result<ModuleRep> {
    let Some(p) = x.algebra().free() else {
        return Err(Error::InvalidPresentation(
            "Kronecker embedding needs a free presentation".into(),
        ));
    };
    if !p.relations().is_empty() {
        return Err(Error::InvalidPresentation(
            "Kronecker embedding needs a presentation without relations".into(),
        ));
    }
    let f = x.field();
    let n = p.num_generators();
    let target = kronecker_algebra(f, n + 1)?;
    let mut maps: Vec<Mat> = x.action().to_vec();
    maps.push(Mat::identity(f, x.dim()));
    representation(&target, &[x.dim(), x.dim()], &maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FreePresentation;
    use crate::quiver::truncated_polynomial_algebra;

    fn one_loop(f: &Field) -> Algebra {
        FreePresentation::new(f, 1, vec![]).unwrap().into()
    }

    fn module(alg: &Algebra, rows: &[&[i64]]) -> ModuleRep {
        let m = Mat::from_ints(alg.field(), rows);
        ModuleRep::new(alg, m.rows(), vec![m]).unwrap()
    }

    #[test]
    fn hom_between_distinct_scalars() {
        let q = Field::rational();
        let alg = one_loop(&q);
        assert!(hom_basis(&module(&alg, &[&[0]]), &module(&alg, &[&[1]]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn commutant_of_nilpotent() {
        let q = Field::rational();
        let alg = one_loop(&q);
        let x = module(&alg, &[&[0, 1], &[0, 0]]);
        let end = hom_basis(&x, &x).unwrap();
        assert_eq!(end.len(), 2);
        let mut span = Subspace::new(&q, 4);
        for e in &end {
            span.insert(e.entries());
        }
        assert!(span.contains(Mat::identity(&q, 2).entries()));
        assert!(span.contains(x.action()[0].entries()));
        let xx = direct_sum(&x, &x).unwrap();
        assert_eq!(hom_basis(&x, &xx).unwrap().len(), 4);
    }

    #[test]
    fn split_diagonal() {
        let q = Field::rational();
        let alg = one_loop(&q);
        let d = decompose(&module(&alg, &[&[0, 0], &[0, 1]])).unwrap();
        assert_eq!(d.dims(), vec![1, 1]);
        assert!(d.is_complete());
    }

    #[test]
    fn jordan_block_is_indecomposable() {
        for f in [Field::rational(), Field::prime(2).unwrap()] {
            let alg = one_loop(&f);
            let x = module(&alg, &[&[0, 1], &[0, 0]]);
            let d = decompose(&x).unwrap();
            assert_eq!(d.dims(), vec![2]);
            assert!(d.is_complete());
            let xx = direct_sum(&x, &x).unwrap();
            let d = decompose(&xx).unwrap();
            assert_eq!(d.dims(), vec![2, 2]);
            for s in &d.summands {
                assert!(is_isomorphic(&s.module, &x).unwrap().is_some());
            }
        }
    }

    #[test]
    fn block_diagonal_after_change_of_basis() {
        let f = Field::prime(101).unwrap();
        let alg = one_loop(&f);
        let x = module(
            &alg,
            &[&[2, 1, 0, 0], &[0, 2, 0, 0], &[0, 0, 5, 0], &[0, 0, 0, 2]],
        );
        let d = decompose(&x).unwrap();
        let p = &d.change_of_basis;
        let conj = p
            .inverse()
            .unwrap()
            .mul(&x.action()[0])
            .unwrap()
            .mul(p)
            .unwrap();
        let blocks: Vec<Mat> = d
            .summands
            .iter()
            .map(|s| s.module.action()[0].clone())
            .collect();
        assert_eq!(conj, Mat::block_diag(&f, &blocks).unwrap());
        let mut dims = d.dims();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 2]);
    }

    #[test]
    fn irreducible_quadratic_endomorphism_is_local() {
        // x acts by the companion matrix of t^2 + 1 over Q: End = Q(i)
        let q = Field::rational();
        let alg = one_loop(&q);
        let d = decompose(&module(&alg, &[&[0, -1], &[1, 0]])).unwrap();
        assert_eq!(d.dims(), vec![2]);
        assert!(d.is_complete());
    }

    #[test]
    fn isomorphism_witness() {
        let f = Field::prime(101).unwrap();
        let alg = one_loop(&f);
        let x = module(&alg, &[&[3, 1], &[0, 3]]);
        let p = Mat::from_ints(&f, &[&[1, 2], &[3, 4]]);
        let y = x.conjugate(&p).unwrap();
        let t = is_isomorphic(&x, &y).unwrap().unwrap();
        assert!(x.is_intertwiner(&y, &t).unwrap());
        assert!(t.is_invertible());
        let z = module(&alg, &[&[3, 0], &[0, 3]]);
        assert!(is_isomorphic(&x, &z).unwrap().is_none());
    }

    #[test]
    fn socle_inclusion_is_radical() {
        let q = Field::rational();
        let alg = truncated_polynomial_algebra(&q, 2).unwrap();
        let p = crate::algebra::regular_module(&alg).unwrap();
        let s = ModuleRep::new(&alg, 1, vec![Mat::identity(&q, 1), Mat::zeros(&q, 1, 1)]).unwrap();
        let incl = Mat::from_ints(&q, &[&[0], &[1]]);
        assert!(is_radical_morphism(&incl, &s, &p).unwrap());
        assert!(!is_radical_morphism(&Mat::identity(&q, 2), &p, &p).unwrap());
        let bad = Mat::from_ints(&q, &[&[1], &[0]]);
        assert_eq!(
            is_radical_morphism(&bad, &s, &p).unwrap_err(),
            Error::NotIntertwiner
        );
    }

    #[test]
    fn harada_sai_socle_then_top() {
        let q = Field::rational();
        let alg = truncated_polynomial_algebra(&q, 2).unwrap();
        let p = crate::algebra::regular_module(&alg).unwrap();
        let s = ModuleRep::new(&alg, 1, vec![Mat::identity(&q, 1), Mat::zeros(&q, 1, 1)]).unwrap();
        let incl = Mat::from_ints(&q, &[&[0], &[1]]);
        let top = Mat::from_ints(&q, &[&[1, 0]]);
        let r = harada_sai_chain_check(&[s.clone(), p, s], &[incl, top], 2).unwrap();
        assert_eq!(r.prefix_vanishes, vec![false, true]);
        assert!(!r.violation);
    }

    #[test]
    fn radical_endomorphisms_of_projective() {
        let q = Field::rational();
        let alg = truncated_polynomial_algebra(&q, 2).unwrap();
        let p = crate::algebra::regular_module(&alg).unwrap();
        let rad = radical_hom_basis(&p, &p).unwrap();
        assert_eq!(rad.len(), 1);
        assert_eq!(rad[0].rank(), 1);
        assert!(is_radical_morphism(&rad[0], &p, &p).unwrap());
    }

    #[test]
    fn dual_transposes() {
        let q = Field::rational();
        let alg = one_loop(&q);
        let x = module(&alg, &[&[0, 1], &[0, 0]]);
        let d = dual_module(&x).unwrap();
        assert_eq!(d.action()[0], Mat::from_ints(&q, &[&[0, 0], &[1, 0]]));
    }

    #[test]
    fn kronecker_embedding_of_point() {
        let q = Field::rational();
        let alg = one_loop(&q);
        let e = kronecker_embed(&module(&alg, &[&[0]])).unwrap();
        assert_eq!(e.dim(), 2);
        assert!(e.validate().unwrap().is_valid());
    }
}
