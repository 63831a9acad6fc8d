//! Polynomial bimodule families, their tubes, scalar restriction and
//! extension, and the experiment harnesses built on them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, ModuleRep};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, Scalar};
use crate::homcalc::{
    decompose_seeded, harada_sai_chain_check, is_isomorphic_seeded, radical_hom_basis,
    random_combination,
};
use crate::homological::SesData;
use crate::linalg::Mat;
use crate::poly::{PolyRing, UniPoly};

/// Matrix with entries in `k[x]`, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<UniPoly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<UniPoly>) -> Result<PolyMatrix> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {}x{} polynomial matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        Ok(PolyMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(ring: &PolyRing, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix {
            rows,
            cols,
            entries: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &PolyRing, n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = ring.one();
        }
        m
    }

    /// Constant polynomial matrix.
    pub fn from_mat(ring: &PolyRing, m: &Mat) -> PolyMatrix {
        PolyMatrix {
            rows: m.rows(),
            cols: m.cols(),
            entries: m
                .entries()
                .iter()
                .map(|c| ring.constant(c.clone()))
                .collect(),
        }
    }

    /// Entries given as integer coefficient lists, lowest degree first.
    pub fn from_int_coeffs(ring: &PolyRing, rows: &[&[&[i64]]]) -> PolyMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        PolyMatrix {
            rows: r,
            cols: c,
            entries: rows
                .iter()
                .flat_map(|row| row.iter().map(|p| ring.from_ints(p)))
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &UniPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn entries(&self) -> &[UniPoly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(UniPoly::is_zero)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(UniPoly::degree).max()
    }

    pub fn mul(&self, ring: &PolyRing, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMatrix::zeros(ring, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.entries[idx] = ring.add(&out.entries[idx], &ring.mul(a, other.get(k, c)));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, ring: &PolyRing, other: &PolyMatrix) -> Result<PolyMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch("polynomial matrix sum".into()));
        }
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| ring.add(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, ring: &PolyRing, p: &UniPoly) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| ring.mul(a, p)).collect(),
        }
    }

    pub fn format(&self, ring: &PolyRing) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|r| {
                let row: Vec<String> = (0..self.cols)
                    .map(|c| ring.format(self.get(r, c)))
                    .collect();
                format!("[{}]", row.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

/// An `A`-`k[x, 1/f]` bimodule, free of rank `rank` over `k[x, 1/f]`.
/// Action `k` is `action[k] / f^den_powers[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BimoduleFamily {
    algebra: Algebra,
    rank: usize,
    action: Vec<PolyMatrix>,
    den_powers: Vec<u32>,
    denominator: UniPoly,
}

impl BimoduleFamily {
    pub fn new(
        algebra: &Algebra,
        rank: usize,
        action: Vec<PolyMatrix>,
        den_powers: Vec<u32>,
        denominator: UniPoly,
    ) -> Result<BimoduleFamily> {
        let f = algebra.field();
        if action.len() != algebra.num_actions() || den_powers.len() != action.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} action matrices and {} denominator powers for {} actions",
                action.len(),
                den_powers.len(),
                algebra.num_actions()
            )));
        }
        for (k, m) in action.iter().enumerate() {
            if (m.rows, m.cols) != (rank, rank) {
                return Err(Error::ShapeMismatch(format!(
                    "action {} is {}x{}, expected {}x{}",
                    k, m.rows, m.cols, rank, rank
                )));
            }
            if m.entries
                .iter()
                .flat_map(|p| p.coeffs())
                .any(|c| !f.contains(c))
            {
                return Err(Error::FieldMismatch(format!("coefficient in action {}", k)));
            }
        }
        if denominator.is_zero() {
            return Err(Error::InvalidPresentation("zero denominator".into()));
        }
        if denominator.coeffs().iter().any(|c| !f.contains(c)) {
            return Err(Error::FieldMismatch("denominator coefficient".into()));
        }
        Ok(BimoduleFamily {
            algebra: algebra.clone(),
            rank,
            action,
            den_powers,
            denominator,
        })
    }

    /// Family without denominators.
    pub fn polynomial(
        algebra: &Algebra,
        rank: usize,
        action: Vec<PolyMatrix>,
    ) -> Result<BimoduleFamily> {
        let ring = PolyRing::new(algebra.field().clone());
        let n = action.len();
        BimoduleFamily::new(algebra, rank, action, vec![0; n], ring.one())
    }

    /// Family over a quiver algebra given by one polynomial matrix per arrow
    /// (`dims[target] x dims[source]`), coordinates ordered vertex by vertex.
    pub fn from_representation(
        algebra: &Algebra,
        dims: &[usize],
        arrow_maps: &[PolyMatrix],
    ) -> Result<BimoduleFamily> {
        let a = algebra.structure()?;
        let info = a
            .quiver()
            .ok_or_else(|| Error::InvalidPresentation("algebra carries no quiver data".into()))?;
        if dims.len() != info.vertices || arrow_maps.len() != info.arrows.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} dims and {} maps for {} vertices and {} arrows",
                dims.len(),
                arrow_maps.len(),
                info.vertices,
                info.arrows.len()
            )));
        }
        let ring = PolyRing::new(a.field().clone());
        let n: usize = dims.iter().sum();
        let offsets: Vec<usize> = dims
            .iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        let place = |r0: usize, c0: usize, block: &PolyMatrix| {
            let mut big = PolyMatrix::zeros(&ring, n, n);
            for r in 0..block.rows {
                for c in 0..block.cols {
                    big.entries[(r0 + r) * n + c0 + c] = block.get(r, c).clone();
                }
            }
            big
        };
        let mut embedded = Vec::with_capacity(arrow_maps.len());
        for (k, (m, (_, s, t))) in arrow_maps.iter().zip(&info.arrows).enumerate() {
            if (m.rows, m.cols) != (dims[*t], dims[*s]) {
                return Err(Error::ShapeMismatch(format!(
                    "arrow {} map is {}x{}, expected {}x{}",
                    k, m.rows, m.cols, dims[*t], dims[*s]
                )));
            }
            embedded.push(place(offsets[*t], offsets[*s], m));
        }
        let mut action = Vec::with_capacity(a.dim());
        for (v, w) in &info.basis_paths {
            if w.is_empty() {
                action.push(place(
                    offsets[*v],
                    offsets[*v],
                    &PolyMatrix::identity(&ring, dims[*v]),
                ));
            } else {
                let mut prod = embedded[w[0]].clone();
                for &arrow in &w[1..] {
                    prod = prod.mul(&ring, &embedded[arrow])?;
                }
                action.push(prod);
            }
        }
        BimoduleFamily::polynomial(algebra, n, action)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    pub fn ring(&self) -> PolyRing {
        PolyRing::new(self.field().clone())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self) -> &[PolyMatrix] {
        &self.action
    }

    pub fn den_powers(&self) -> &[u32] {
        &self.den_powers
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.denominator
    }
}

/// One failed identity with its residual after clearing denominators.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyViolation {
    pub relation: String,
    pub residual: PolyMatrix,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyReport {
    pub violations: Vec<FamilyViolation>,
}

impl FamilyReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every defining identity as a polynomial matrix identity, each
/// side multiplied by the power of `f` that clears its denominators.
pub fn validate_family(family: &BimoduleFamily) -> Result<FamilyReport> {
    let ring = family.ring();
    let n = family.rank;
    let fpow = |e: u32| ring.pow(&family.denominator, e);
    // terms: (coefficient, product of actions, total denominator power)
    let combine = |terms: Vec<(Scalar, PolyMatrix, u32)>| -> Result<PolyMatrix> {
        let top = terms.iter().map(|t| t.2).max().unwrap_or(0);
        let mut acc = PolyMatrix::zeros(&ring, n, n);
        for (c, m, e) in terms {
            let factor = ring.scale(&fpow(top - e), &c);
            acc = acc.add(&ring, &m.scale(&ring, &factor))?;
        }
        Ok(acc)
    };
    let mut residuals = Vec::new();
    match &family.algebra {
        Algebra::Free(p) => {
            for (i, r) in p.relations().iter().enumerate() {
                let mut terms = Vec::new();
                for (c, w) in r.terms() {
                    let mut prod = PolyMatrix::identity(&ring, n);
                    let mut e = 0;
                    for &g in w {
                        prod = prod.mul(&ring, &family.action[g])?;
                        e += family.den_powers[g];
                    }
                    terms.push((c.clone(), prod, e));
                }
                residuals.push((format!("relation {}", i), combine(terms)?));
            }
        }
        Algebra::Structure(a) => {
            let f = a.field();
            let d = a.dim();
            let linear = |coords: &[Scalar]| -> Vec<(Scalar, PolyMatrix, u32)> {
                coords
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !f.is_zero(c))
                    .map(|(k, c)| (c.clone(), family.action[k].clone(), family.den_powers[k]))
                    .collect()
            };
            let mut unit = linear(a.unit());
            unit.push((f.from_i64(-1), PolyMatrix::identity(&ring, n), 0));
            residuals.push(("unit".to_string(), combine(unit)?));
            for i in 0..d {
                for j in 0..d {
                    let lhs = family.action[i].mul(&ring, &family.action[j])?;
                    let mut terms =
                        vec![(f.one(), lhs, family.den_powers[i] + family.den_powers[j])];
                    for (c, m, e) in linear(a.product(i, j)) {
                        terms.push((f.neg(&c), m, e));
                    }
                    residuals.push((
                        format!("{}*{}", a.labels()[i], a.labels()[j]),
                        combine(terms)?,
                    ));
                }
            }
        }
    }
    Ok(FamilyReport {
        violations: residuals
            .into_iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(relation, residual)| FamilyViolation { relation, residual })
            .collect(),
    })
}

/// `lambda I + N` with `N` the lower subdiagonal shift.
pub fn jordan_block(field: &Field, lambda: &Scalar, i: usize) -> Mat {
    Mat::from_fn(field, i, i, |r, c| {
        if r == c {
            lambda.clone()
        } else if r == c + 1 {
            field.one()
        } else {
            field.zero()
        }
    })
}

fn check_point(family: &BimoduleFamily, lambda: &Scalar) -> Result<()> {
    let f = family.field();
    if !f.contains(lambda) {
        return Err(Error::FieldMismatch("eigenvalue".into()));
    }
    if f.is_zero(&family.ring().eval(&family.denominator, lambda)) {
        return Err(Error::DenominatorVanishes);
    }
    Ok(())
}

/// `M (x) k[x]/(x - lambda)^i`: every entry `p` becomes the block
/// `p(J) f(J)^-e` with `J` the `i x i` Jordan block. Coordinates are indexed
/// by (family basis, Jordan basis), family basis outermost.
pub fn specialize(family: &BimoduleFamily, lambda: &Scalar, i: usize) -> Result<ModuleRep> {
    if i == 0 {
        return Err(Error::PreconditionViolated {
            index: 0,
            reason: "tube index must be at least 1".into(),
        });
    }
    check_point(family, lambda)?;
    let f = family.field();
    let n = family.rank;
    let j = jordan_block(f, lambda, i);
    let finv = j.eval_poly(&family.denominator)?.inverse()?;
    let mut inv_powers = vec![Mat::identity(f, i)];
    let top = family.den_powers.iter().copied().max().unwrap_or(0);
    for _ in 0..top {
        let next = inv_powers.last().unwrap().mul(&finv)?;
        inv_powers.push(next);
    }
    let mut action = Vec::with_capacity(family.action.len());
    for (m, &e) in family.action.iter().zip(&family.den_powers) {
        let mut big = Mat::zeros(f, n * i, n * i);
        for r in 0..n {
            for c in 0..n {
                let p = m.get(r, c);
                if p.is_zero() {
                    continue;
                }
                let block = j.eval_poly(p)?.mul(&inv_powers[e as usize])?;
                big.set_block(r * i, c * i, &block);
            }
        }
        action.push(big);
    }
    ModuleRep::new(&family.algebra, n * i, action)
}

fn check_indices(i: usize, j: usize) -> Result<()> {
    if i == 0 || i >= j {
        return Err(Error::IndexOrder { i, j });
    }
    Ok(())
}

/// Multiplication by `(x - lambda)^(j - i)` from the `i`-th to the `j`-th
/// member of the tube.
pub fn tube_inclusion(family: &BimoduleFamily, lambda: &Scalar, i: usize, j: usize) -> Result<Mat> {
    check_indices(i, j)?;
    check_point(family, lambda)?;
    let f = family.field();
    let shift = Mat::from_fn(
        f,
        j,
        i,
        |r, c| if r == c + j - i { f.one() } else { f.zero() },
    );
    Mat::identity(f, family.rank).kronecker(&shift)
}

/// Projection of the `j`-th member onto the `(j - i)`-th, killing the image
/// of [`tube_inclusion`].
pub fn tube_projection(
    family: &BimoduleFamily,
    lambda: &Scalar,
    i: usize,
    j: usize,
) -> Result<Mat> {
    check_indices(i, j)?;
    check_point(family, lambda)?;
    let f = family.field();
    let top = Mat::from_fn(f, j - i, j, |r, c| if r == c { f.one() } else { f.zero() });
    Mat::identity(f, family.rank).kronecker(&top)
}

/// `0 -> X_i -> X_j -> X_(j-i) -> 0`, with the cokernel of the inclusion
/// checked isomorphic to the specialization at `j - i`.
pub fn tube_ses(family: &BimoduleFamily, lambda: &Scalar, i: usize, j: usize) -> Result<SesData> {
    let incl = tube_inclusion(family, lambda, i, j)?;
    let proj = tube_projection(family, lambda, i, j)?;
    let l = specialize(family, lambda, i)?;
    let m = specialize(family, lambda, j)?;
    let n = specialize(family, lambda, j - i)?;
    let (quotient, _) = m.quotient(&incl.column_basis())?;
    if is_isomorphic_seeded(&quotient, &n, crate::homcalc::DEFAULT_SEED)?.is_none() {
        return Err(Error::NotExact(
            "cokernel of the inclusion is not the expected tube member".into(),
        ));
    }
    SesData::new(l, m, n, incl, proj)
}

/// `r x r` matrix of multiplication by `c` on `F_(p^r)` over `F_p`; column
/// `k` holds the coordinates of `c t^k`.
pub fn multiplication_matrix(field: &Field, c: &Scalar) -> Result<Mat> {
    let Some(t) = field.generator() else {
        return Err(Error::FieldMismatch(
            "not a proper prime-power field".into(),
        ));
    };
    let base = field.prime_subfield();
    let r = field.degree();
    let mut cols = Vec::with_capacity(r);
    let mut cur = c.clone();
    for _ in 0..r {
        cols.push(field.coordinates(&cur));
        cur = field.mul(&cur, &t);
    }
    Ok(Mat::from_columns(&base, r, &cols))
}

/// Restriction of scalars from `A (x) F_(p^r)` to `A`: every entry becomes
/// its multiplication matrix over `F_p`.
pub fn restrict_scalars(y: &ModuleRep) -> Result<ModuleRep> {
    let f = y.field();
    if !matches!(f.spec(), FieldSpec::PrimePower { .. }) {
        return Err(Error::FieldMismatch(
            "restriction needs a prime-power field".into(),
        ));
    }
    let base = f.prime_subfield();
    let r = f.degree();
    let algebra = y.algebra().map_field(&base, |c| {
        f.to_prime_subfield(c).ok_or_else(|| {
            Error::FieldMismatch("algebra is not defined over the prime field".into())
        })
    })?;
    let n = y.dim();
    let mut action = Vec::with_capacity(y.action().len());
    for m in y.action() {
        let mut big = Mat::zeros(&base, n * r, n * r);
        for a in 0..n {
            for b in 0..n {
                let c = m.get(a, b);
                if !f.is_zero(c) {
                    big.set_block(a * r, b * r, &multiplication_matrix(f, c)?);
                }
            }
        }
        action.push(big);
    }
    ModuleRep::new(&algebra, n * r, action)
}

/// `X (x)_k F` over `A (x)_k F`: the same matrices read in the larger field.
pub fn extend_scalars(x: &ModuleRep, target: &FieldSpec) -> Result<ModuleRep> {
    let tf = Field::from_spec(target)?;
    let sf = x.field();
    if &tf == sf {
        return Ok(x.clone());
    }
    if tf.characteristic() != sf.characteristic() || tf.prime_subfield() != *sf {
        return Err(Error::NotAnExtension);
    }
    let algebra = x.algebra().map_field(&tf, |c| tf.embed(sf, c))?;
    x.map_field(&algebra, |c| tf.embed(sf, c))
}

/// One specialization in a Brauer-Thrall run.
#[derive(Clone, Debug, PartialEq)]
pub struct Bt1Row {
    pub lambda: Scalar,
    pub i: usize,
    pub dim: usize,
    pub num_summands: Option<usize>,
    pub max_summand_dim: Option<usize>,
    pub certified: bool,
    /// Isomorphism class among all rows, numbered by first appearance.
    pub iso_class_id: Option<usize>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DimensionSummary {
    pub dim: usize,
    /// Indices into the report rows.
    pub rows: Vec<usize>,
    pub class_count: usize,
    /// `non_isomorphic[a][b]` for rows `rows[a]`, `rows[b]`; false on the
    /// diagonal.
    pub non_isomorphic: Vec<Vec<bool>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Bt1Report {
    pub seed: u64,
    pub rows: Vec<Bt1Row>,
    pub dimensions: Vec<DimensionSummary>,
    pub max_dim: usize,
    /// Largest dimension reached at each `i = 1..=i_max`.
    pub max_dim_by_i: Vec<usize>,
    pub strictly_increasing: bool,
}

impl Bt1Report {
    pub fn to_csv(&self, field: &Field) -> String {
        let mut out = String::from("lambda,i,dim,num_summands,iso_class_id\n");
        let opt = |v: Option<usize>| v.map_or(String::new(), |v| v.to_string());
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                field.format(&r.lambda),
                r.i,
                r.dim,
                opt(r.num_summands),
                opt(r.iso_class_id)
            ));
        }
        out
    }
}

/// Specializes the family at every `(lambda, i)`, decomposes each module and
/// sorts them into isomorphism classes by dimension.
pub fn bt1_experiment(
    family: &BimoduleFamily,
    lambdas: &[Scalar],
    i_max: usize,
    seed: u64,
) -> Result<Bt1Report> {
    let mut rows = Vec::new();
    let mut modules: Vec<Option<ModuleRep>> = Vec::new();
    for lambda in lambdas {
        for i in 1..=i_max {
            let mut row = Bt1Row {
                lambda: lambda.clone(),
                i,
                dim: family.rank * i,
                num_summands: None,
                max_summand_dim: None,
                certified: false,
                iso_class_id: None,
                error: None,
            };
            let module = specialize(family, lambda, i).and_then(|m| {
                let d = decompose_seeded(&m, seed)?;
                row.num_summands = Some(d.summands.len());
                row.max_summand_dim = d.dims().into_iter().max();
                row.certified = d.is_complete();
                Ok(m)
            });
            match module {
                Ok(m) => modules.push(Some(m)),
                Err(e) => {
                    row.error = Some(e.to_string());
                    modules.push(None);
                }
            }
            rows.push(row);
        }
    }
    let mut dims: Vec<usize> = rows
        .iter()
        .filter(|r| r.error.is_none())
        .map(|r| r.dim)
        .collect();
    dims.sort_unstable();
    dims.dedup();
    let mut next_class = 0;
    let mut class_of: Vec<Option<usize>> = vec![None; rows.len()];
    let mut dimensions = Vec::new();
    for &dim in &dims {
        let members: Vec<usize> = (0..rows.len())
            .filter(|&k| rows[k].dim == dim && modules[k].is_some())
            .collect();
        let s = members.len();
        let mut non_iso = vec![vec![false; s]; s];
        let mut reps: Vec<(usize, usize)> = Vec::new();
        for a in 0..s {
            for b in a + 1..s {
                let x = modules[members[a]].as_ref().unwrap();
                let y = modules[members[b]].as_ref().unwrap();
                let iso = is_isomorphic_seeded(x, y, seed)?.is_some();
                non_iso[a][b] = !iso;
                non_iso[b][a] = !iso;
            }
            let class = reps.iter().find(|(r, _)| !non_iso[*r][a]).map(|(_, c)| *c);
            let class = class.unwrap_or_else(|| {
                reps.push((a, next_class));
                next_class += 1;
                next_class - 1
            });
            class_of[members[a]] = Some(class);
        }
        dimensions.push(DimensionSummary {
            dim,
            rows: members,
            class_count: reps.len(),
            non_isomorphic: non_iso,
        });
    }
    // class ids by first appearance in row order
    let mut renumber = std::collections::HashMap::new();
    for (row, class) in rows.iter_mut().zip(&class_of) {
        if let Some(c) = class {
            let len = renumber.len();
            row.iso_class_id = Some(*renumber.entry(*c).or_insert(len));
        }
    }
    let max_dim_by_i: Vec<usize> = (1..=i_max)
        .map(|i| {
            rows.iter()
                .filter(|r| r.i == i && r.error.is_none())
                .map(|r| r.dim)
                .max()
                .unwrap_or(0)
        })
        .collect();
    let strictly_increasing = max_dim_by_i.windows(2).all(|w| w[0] < w[1]);
    Ok(Bt1Report {
        seed,
        max_dim: dims.last().copied().unwrap_or(0),
        rows,
        dimensions,
        max_dim_by_i,
        strictly_increasing,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct HaradaSaiExperiment {
    pub bound: usize,
    pub seed: u64,
    pub chains: usize,
    /// Maps per chain, `2^bound - 1`.
    pub length: usize,
    /// Chains whose full composite vanished.
    pub vanished: usize,
    pub violations: usize,
    /// Longest run of maps with a nonzero composite seen in any chain.
    pub longest_nonzero_prefix: usize,
}

/// Random chains of radical maps through the catalog members of dimension
/// at most `bound`. Each step moves to a module with a nonzero radical map
/// when one exists and picks a random element of the radical Hom space.
pub fn harada_sai_experiment(
    catalog: &[ModuleRep],
    bound: usize,
    chains: usize,
    seed: u64,
) -> Result<HaradaSaiExperiment> {
    let pool: Vec<&ModuleRep> = catalog
        .iter()
        .filter(|m| m.dim() <= bound && m.dim() > 0)
        .collect();
    if pool.is_empty() {
        return Err(Error::PreconditionViolated {
            index: 0,
            reason: format!("no catalog module of dimension at most {}", bound),
        });
    }
    let f = pool[0].field().clone();
    let mut rad = Vec::with_capacity(pool.len());
    for x in &pool {
        let mut row = Vec::with_capacity(pool.len());
        for y in &pool {
            row.push(radical_hom_basis(x, y)?);
        }
        rad.push(row);
    }
    let length = (1usize << bound.min(20)) - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vanished = 0;
    let mut violations = 0;
    let mut longest = 0;
    for _ in 0..chains {
        let mut cur = rng.gen_range(0..pool.len());
        let mut modules = vec![pool[cur].clone()];
        let mut maps = Vec::with_capacity(length);
        for _ in 0..length {
            let live: Vec<usize> = (0..pool.len())
                .filter(|&b| !rad[cur][b].is_empty())
                .collect();
            let next = if live.is_empty() {
                rng.gen_range(0..pool.len())
            } else {
                live[rng.gen_range(0..live.len())]
            };
            let map = if rad[cur][next].is_empty() {
                Mat::zeros(&f, pool[next].dim(), pool[cur].dim())
            } else {
                random_combination(&f, &rad[cur][next], &mut rng)?
            };
            maps.push(map);
            modules.push(pool[next].clone());
            cur = next;
        }
        let report = harada_sai_chain_check(&modules, &maps, bound)?;
        if report.prefix_vanishes.last().copied().unwrap_or(true) {
            vanished += 1;
        }
        if report.violation {
            violations += 1;
        }
        let prefix = report.prefix_vanishes.iter().take_while(|z| !**z).count();
        longest = longest.max(prefix);
    }
    Ok(HaradaSaiExperiment {
        bound,
        seed,
        chains,
        length,
        vanished,
        violations,
        longest_nonzero_prefix: longest,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FreePresentation, NCPoly};
    use crate::catalog::kronecker_family;
    use crate::homcalc::{decompose, is_direct_summand};

    fn f101() -> Field {
        Field::prime(101).unwrap()
    }

    #[test]
    fn kronecker_family_is_valid() {
        let fam = kronecker_family(&f101()).unwrap();
        assert!(validate_family(&fam).unwrap().is_valid());
    }

    #[test]
    fn commuting_families() {
        let q = Field::rational();
        let ring = PolyRing::new(q.clone());
        let rel = NCPoly::from_ints(&q, &[(1, &[0, 1]), (-1, &[1, 0])]);
        let alg: Algebra = FreePresentation::new(&q, 2, vec![rel]).unwrap().into();
        let x = PolyMatrix::from_int_coeffs(&ring, &[&[&[0, 1]]]);
        let fam = BimoduleFamily::polynomial(&alg, 1, vec![x.clone(), x]).unwrap();
        assert!(validate_family(&fam).unwrap().is_valid());
        let a = PolyMatrix::from_int_coeffs(&ring, &[&[&[], &[1]], &[&[], &[]]]);
        let b = PolyMatrix::from_int_coeffs(&ring, &[&[&[], &[]], &[&[0, 1], &[]]]);
        let fam = BimoduleFamily::polynomial(&alg, 2, vec![a, b]).unwrap();
        let report = validate_family(&fam).unwrap();
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].residual.max_degree(), Some(1));
    }

    #[test]
    fn denominators_clear() {
        // x acts by 1/(x - 1) and y by x - 1: xy = yx = 1 after clearing
        let q = Field::rational();
        let ring = PolyRing::new(q.clone());
        let rel = NCPoly::from_ints(&q, &[(1, &[0, 1]), (-1, &[])]);
        let alg: Algebra = FreePresentation::new(&q, 2, vec![rel]).unwrap().into();
        let one = PolyMatrix::from_int_coeffs(&ring, &[&[&[1]]]);
        let y = PolyMatrix::from_int_coeffs(&ring, &[&[&[-1, 1]]]);
        let fam = BimoduleFamily::new(&alg, 1, vec![one, y], vec![1, 0], ring.from_ints(&[-1, 1]))
            .unwrap();
        assert!(validate_family(&fam).unwrap().is_valid());
        let m = specialize(&fam, &q.from_i64(3), 3).unwrap();
        assert!(m.validate().unwrap().is_valid());
        assert_eq!(
            specialize(&fam, &q.one(), 2).unwrap_err(),
            Error::DenominatorVanishes
        );
    }

    #[test]
    fn kronecker_specializations() {
        let f = f101();
        let fam = kronecker_family(&f).unwrap();
        let r0 = specialize(&fam, &f.zero(), 1).unwrap();
        assert_eq!(r0.dim(), 2);
        assert_eq!(r0.action()[2], Mat::from_ints(&f, &[&[0, 0], &[1, 0]]));
        assert!(r0.action()[3].is_zero());
        let m = specialize(&fam, &f.from_i64(5), 2).unwrap();
        assert!(m.validate().unwrap().is_valid());
        assert_eq!(
            m.action()[3].submatrix(2..4, 0..2),
            jordan_block(&f, &f.from_i64(5), 2)
        );
        let d = decompose(&m).unwrap();
        assert!(d.is_complete());
        assert_eq!(d.dims(), vec![4]);
    }

    #[test]
    fn inclusions_compose() {
        let f = f101();
        let fam = kronecker_family(&f).unwrap();
        let l = f.from_i64(7);
        let a = tube_inclusion(&fam, &l, 1, 2).unwrap();
        let b = tube_inclusion(&fam, &l, 2, 4).unwrap();
        let c = tube_inclusion(&fam, &l, 1, 4).unwrap();
        assert_eq!(b.mul(&a).unwrap(), c);
        assert_eq!(a.rank(), 2);
        let x1 = specialize(&fam, &l, 1).unwrap();
        let x2 = specialize(&fam, &l, 2).unwrap();
        assert!(x1.is_intertwiner(&x2, &a).unwrap());
        assert_eq!(
            tube_inclusion(&fam, &l, 2, 2).unwrap_err(),
            Error::IndexOrder { i: 2, j: 2 }
        );
    }

    #[test]
    fn ses_at_zero() {
        let f = f101();
        let fam = kronecker_family(&f).unwrap();
        let s = tube_ses(&fam, &f.zero(), 1, 2).unwrap();
        assert_eq!(s.f.rank() + s.g.rank(), s.m.dim());
        assert_eq!(s.n.dim(), 2);
    }

    fn f4() -> Field {
        Field::prime_power(2, vec![1, 1, 1]).unwrap()
    }

    #[test]
    fn restriction_of_omega() {
        let f = f4();
        let alg: Algebra = FreePresentation::new(&f, 1, vec![]).unwrap().into();
        let w = f.generator().unwrap();
        let y = ModuleRep::new(&alg, 1, vec![Mat::from_vec(&f, 1, 1, vec![w]).unwrap()]).unwrap();
        let r = restrict_scalars(&y).unwrap();
        let f2 = Field::prime(2).unwrap();
        assert_eq!(r.action()[0], Mat::from_ints(&f2, &[&[0, 1], &[1, 1]]));
        let back = extend_scalars(&r, f.spec()).unwrap();
        assert!(is_direct_summand(&y, &back).unwrap());
    }

    #[test]
    fn restriction_of_prime_entries_doubles() {
        let f = f4();
        let alg: Algebra = FreePresentation::new(&f, 1, vec![]).unwrap().into();
        let y = ModuleRep::new(&alg, 2, vec![Mat::from_ints(&f, &[&[0, 1], &[0, 0]])]).unwrap();
        let r = restrict_scalars(&y).unwrap();
        assert_eq!(r.dim(), 4);
        let f2 = Field::prime(2).unwrap();
        let alg2: Algebra = FreePresentation::new(&f2, 1, vec![]).unwrap().into();
        let y2 = ModuleRep::new(&alg2, 2, vec![Mat::from_ints(&f2, &[&[0, 1], &[0, 0]])]).unwrap();
        let yy = crate::homcalc::direct_sum(&y2, &y2).unwrap();
        assert!(crate::homcalc::is_isomorphic(&r, &yy).unwrap().is_some());
    }

    #[test]
    fn extension_errors() {
        let f2 = Field::prime(2).unwrap();
        let alg: Algebra = FreePresentation::new(&f2, 1, vec![]).unwrap().into();
        let x = ModuleRep::new(&alg, 1, vec![Mat::identity(&f2, 1)]).unwrap();
        assert_eq!(
            extend_scalars(&x, &FieldSpec::Prime { p: 3 }).unwrap_err(),
            Error::NotAnExtension
        );
        assert_eq!(restrict_scalars(&x).unwrap_err().code(), "FieldMismatch");
        let e = extend_scalars(&x, f4().spec()).unwrap();
        assert_eq!(e.dim(), 1);
    }

    #[test]
    fn small_bt1_run() {
        let f = f101();
        let fam = kronecker_family(&f).unwrap();
        let lambdas: Vec<Scalar> = (0..4).map(|v| f.from_i64(v)).collect();
        let report = bt1_experiment(&fam, &lambdas, 3, 1).unwrap();
        assert_eq!(report.rows.len(), 12);
        assert!(report
            .rows
            .iter()
            .all(|r| r.certified && r.num_summands == Some(1)));
        assert_eq!(
            report.dimensions.iter().map(|d| d.dim).collect::<Vec<_>>(),
            vec![2, 4, 6]
        );
        assert!(report.dimensions.iter().all(|d| d.class_count == 4));
        assert!(report.strictly_increasing);
        let empty = bt1_experiment(&fam, &[], 3, 1).unwrap();
        assert!(empty.rows.is_empty() && empty.dimensions.is_empty());
    }
}
