//! JSON documents for algebras, modules, families, sequences and
//! presentations. Scalars are strings in the field's canonical syntax and
//! matrices are arrays of rows.

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, FreePresentation, ModuleRep, NCPoly, StructureAlgebra};
use crate::error::{Error, Result};
use crate::factor::is_irreducible;
use crate::field::{Field, FieldSpec, Scalar};
use crate::homological::{PresentationMorphism, SesData};
use crate::linalg::Mat;
use crate::poly::{PolyRing, UniPoly};
use crate::quiver::{representation, Arrow, QuiverPresentation, DEFAULT_MAX_PATH_LENGTH};
use crate::tubes::{BimoduleFamily, PolyMatrix};

pub type MatDoc = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub c: String,
    pub w: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "lowercase")]
pub enum AlgebraDoc {
    Free {
        field: FieldSpec,
        generators: usize,
        #[serde(default)]
        relations: Vec<Vec<TermDoc>>,
    },
    Structure {
        field: FieldSpec,
        dim: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
        unit: Vec<String>,
        /// `mult[i][j]` holds the coordinates of `e_i e_j`.
        mult: Vec<Vec<Vec<String>>>,
    },
    Quiver {
        field: FieldSpec,
        vertices: usize,
        arrows: Vec<ArrowDoc>,
        #[serde(default)]
        relations: Vec<Vec<TermDoc>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_length: Option<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleBody {
    Action {
        dim: usize,
        action: Vec<MatDoc>,
    },
    Quiver {
        dims: Vec<usize>,
        arrows: Vec<MatDoc>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleDoc {
    pub algebra: AlgebraDoc,
    #[serde(flatten)]
    pub body: ModuleBody,
}

/// Polynomial matrix: rows of entries, each a coefficient list (lowest
/// degree first).
pub type PolyMatDoc = Vec<Vec<Vec<String>>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FamilyBody {
    Action {
        rank: usize,
        action: Vec<PolyMatDoc>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        den_powers: Option<Vec<u32>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        denominator: Option<Vec<String>>,
    },
    Quiver {
        dims: Vec<usize>,
        arrows: Vec<PolyMatDoc>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub algebra: AlgebraDoc,
    #[serde(flatten)]
    pub body: FamilyBody,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SesDoc {
    pub algebra: AlgebraDoc,
    pub l: ModuleBody,
    pub m: ModuleBody,
    pub n: ModuleBody,
    pub f: MatDoc,
    pub g: MatDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub algebra: AlgebraDoc,
    pub p1: ModuleBody,
    pub p0: ModuleBody,
    pub phi: MatDoc,
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(parse_err)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable document");
    s.push('\n');
    s
}

/// `Q`, `F<p>` or `F<p>^<r>`. Prime powers use the least monic irreducible
/// modulus in lexicographic order of coefficients from the top down.
pub fn parse_field(s: &str) -> Result<FieldSpec> {
    let s = s.trim();
    if s == "Q" {
        return Ok(FieldSpec::Rational);
    }
    let rest = s
        .strip_prefix('F')
        .ok_or_else(|| Error::Parse(format!("unknown field '{}'", s)))?;
    let num = |t: &str| {
        t.parse::<u64>()
            .map_err(|_| Error::Parse(format!("unknown field '{}'", s)))
    };
    let spec = match rest.split_once('^') {
        None => FieldSpec::Prime { p: num(rest)? },
        Some((p, r)) => {
            let (p, r) = (num(p)?, num(r)? as usize);
            if r <= 1 {
                FieldSpec::Prime { p }
            } else {
                FieldSpec::PrimePower {
                    p,
                    modulus: least_irreducible(p, r)?,
                }
            }
        }
    };
    Field::from_spec(&spec)?;
    Ok(spec)
}

fn least_irreducible(p: u64, r: usize) -> Result<Vec<u64>> {
    let field = Field::prime(p)?;
    let ring = PolyRing::new(field.clone());
    let total = p
        .checked_pow(r as u32)
        .ok_or_else(|| Error::UnsupportedField(format!("F{}^{} is too large", p, r)))?;
    for k in 0..total {
        // digit i of k is the coefficient of x^(r-1-i)
        let mut digits = vec![0u64; r];
        let mut v = k;
        for i in (0..r).rev() {
            digits[i] = v % p;
            v /= p;
        }
        let mut coeffs: Vec<u64> = digits.iter().rev().copied().collect();
        if coeffs[0] == 0 {
            continue;
        }
        coeffs.push(1);
        let poly = ring.from_coeffs(coeffs.iter().map(|&c| Scalar::Residue(c)).collect());
        if is_irreducible(&ring, &poly)? {
            return Ok(coeffs);
        }
    }
    Err(Error::UnsupportedField(format!(
        "no irreducible of degree {} over F{}",
        r, p
    )))
}

/// Canonical short name of a field spec; inverse of [`parse_field`] for
/// fields with the default modulus.
pub fn field_name(spec: &FieldSpec) -> String {
    Field::from_spec(spec)
        .map(|f| f.to_string())
        .unwrap_or_else(|_| format!("{:?}", spec))
}

pub fn mat_to_doc(m: &Mat) -> MatDoc {
    let f = m.field();
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|c| f.format(c)).collect())
        .collect()
}

/// Reads a matrix of known shape; an empty row list stands for any
/// `0 x cols` matrix.
pub fn mat_from_doc(field: &Field, rows: usize, cols: usize, doc: &MatDoc) -> Result<Mat> {
    if doc.len() != rows || doc.iter().any(|r| r.len() != cols) {
        let got_cols = doc.first().map_or(0, Vec::len);
        return Err(Error::ShapeMismatch(format!(
            "matrix is {}x{}, expected {}x{}",
            doc.len(),
            got_cols,
            rows,
            cols
        )));
    }
    let data = doc
        .iter()
        .flatten()
        .map(|s| field.parse(s))
        .collect::<Result<Vec<_>>>()?;
    Mat::from_vec(field, rows, cols, data)
}

/// Reads a matrix whose shape is taken from the document.
pub fn mat_from_doc_any(field: &Field, doc: &MatDoc) -> Result<Mat> {
    let cols = doc.first().map_or(0, Vec::len);
    mat_from_doc(field, doc.len(), cols, doc)
}

fn terms_to_poly(field: &Field, terms: &[TermDoc]) -> Result<NCPoly> {
    let parsed = terms
        .iter()
        .map(|t| Ok((field.parse(&t.c)?, t.w.clone())))
        .collect::<Result<Vec<_>>>()?;
    Ok(NCPoly::new(field, parsed))
}

fn poly_to_terms(field: &Field, p: &NCPoly) -> Vec<TermDoc> {
    p.terms()
        .iter()
        .map(|(c, w)| TermDoc {
            c: field.format(c),
            w: w.clone(),
        })
        .collect()
}

impl AlgebraDoc {
    pub fn field_spec(&self) -> &FieldSpec {
        match self {
            AlgebraDoc::Free { field, .. }
            | AlgebraDoc::Structure { field, .. }
            | AlgebraDoc::Quiver { field, .. } => field,
        }
    }

    /// The same document read over another field.
    pub fn with_field(mut self, spec: &FieldSpec) -> AlgebraDoc {
        match &mut self {
            AlgebraDoc::Free { field, .. }
            | AlgebraDoc::Structure { field, .. }
            | AlgebraDoc::Quiver { field, .. } => *field = spec.clone(),
        }
        self
    }

    pub fn to_algebra(&self) -> Result<Algebra> {
        let field = Field::from_spec(self.field_spec())?;
        match self {
            AlgebraDoc::Free {
                generators,
                relations,
                ..
            } => {
                let rels = relations
                    .iter()
                    .map(|r| terms_to_poly(&field, r))
                    .collect::<Result<Vec<_>>>()?;
                Ok(FreePresentation::new(&field, *generators, rels)?.into())
            }
            AlgebraDoc::Structure {
                dim,
                labels,
                unit,
                mult,
                ..
            } => {
                let vec =
                    |v: &[String]| v.iter().map(|s| field.parse(s)).collect::<Result<Vec<_>>>();
                if mult.len() != *dim || mult.iter().any(|row| row.len() != *dim) {
                    return Err(Error::ShapeMismatch(format!(
                        "multiplication table must be {}x{}",
                        dim, dim
                    )));
                }
                let table = mult
                    .iter()
                    .flatten()
                    .map(|v| vec(v))
                    .collect::<Result<Vec<_>>>()?;
                Ok(StructureAlgebra::new(&field, *dim, table, vec(unit)?, labels.clone())?.into())
            }
            AlgebraDoc::Quiver {
                vertices,
                arrows,
                relations,
                max_length,
                ..
            } => {
                let rels = relations
                    .iter()
                    .map(|r| terms_to_poly(&field, r))
                    .collect::<Result<Vec<_>>>()?;
                let mut q = QuiverPresentation::new(
                    &field,
                    *vertices,
                    arrows
                        .iter()
                        .map(|a| Arrow {
                            name: a.name.clone(),
                            source: a.source,
                            target: a.target,
                        })
                        .collect(),
                    rels,
                );
                q.max_length = max_length.unwrap_or(DEFAULT_MAX_PATH_LENGTH);
                Ok(q.to_structure()?.into())
            }
        }
    }
}

/// Free algebras keep their presentation; structure algebras (including
/// those built from quivers) are written as structure constants.
pub fn algebra_to_doc(algebra: &Algebra) -> AlgebraDoc {
    let field = algebra.field();
    match algebra {
        Algebra::Free(p) => AlgebraDoc::Free {
            field: field.spec().clone(),
            generators: p.num_generators(),
            relations: p
                .relations()
                .iter()
                .map(|r| poly_to_terms(field, r))
                .collect(),
        },
        Algebra::Structure(a) => {
            let d = a.dim();
            let vec = |v: &[Scalar]| v.iter().map(|c| field.format(c)).collect::<Vec<_>>();
            AlgebraDoc::Structure {
                field: field.spec().clone(),
                dim: d,
                labels: Some(a.labels().to_vec()),
                unit: vec(a.unit()),
                mult: (0..d)
                    .map(|i| (0..d).map(|j| vec(a.product(i, j))).collect())
                    .collect(),
            }
        }
    }
}

impl ModuleBody {
    pub fn to_module(&self, algebra: &Algebra) -> Result<ModuleRep> {
        let field = algebra.field();
        match self {
            ModuleBody::Action { dim, action } => {
                let mats = action
                    .iter()
                    .map(|m| mat_from_doc(field, *dim, *dim, m))
                    .collect::<Result<Vec<_>>>()?;
                ModuleRep::new(algebra, *dim, mats)
            }
            ModuleBody::Quiver { dims, arrows } => {
                let a = algebra.structure()?;
                let info = a.quiver().ok_or_else(|| {
                    Error::InvalidPresentation(
                        "quiver module over an algebra without quiver".into(),
                    )
                })?;
                if arrows.len() != info.arrows.len() || dims.len() != info.vertices {
                    return Err(Error::ShapeMismatch(format!(
                        "{} dims and {} arrow maps for {} vertices and {} arrows",
                        dims.len(),
                        arrows.len(),
                        info.vertices,
                        info.arrows.len()
                    )));
                }
                let mats = arrows
                    .iter()
                    .zip(&info.arrows)
                    .map(|(m, (_, s, t))| mat_from_doc(field, dims[*t], dims[*s], m))
                    .collect::<Result<Vec<_>>>()?;
                representation(algebra, dims, &mats)
            }
        }
    }
}

pub fn module_to_body(m: &ModuleRep) -> ModuleBody {
    ModuleBody::Action {
        dim: m.dim(),
        action: m.action().iter().map(mat_to_doc).collect(),
    }
}

pub fn module_to_doc(m: &ModuleRep) -> ModuleDoc {
    ModuleDoc {
        algebra: algebra_to_doc(m.algebra()),
        body: module_to_body(m),
    }
}

fn poly_from_doc(ring: &PolyRing, coeffs: &[String]) -> Result<UniPoly> {
    let f = ring.field();
    Ok(ring.from_coeffs(
        coeffs
            .iter()
            .map(|s| f.parse(s))
            .collect::<Result<Vec<_>>>()?,
    ))
}

fn poly_to_doc(ring: &PolyRing, p: &UniPoly) -> Vec<String> {
    p.coeffs().iter().map(|c| ring.field().format(c)).collect()
}

fn polymat_from_doc(
    ring: &PolyRing,
    rows: usize,
    cols: usize,
    doc: &PolyMatDoc,
) -> Result<PolyMatrix> {
    if doc.len() != rows || doc.iter().any(|r| r.len() != cols) {
        return Err(Error::ShapeMismatch(format!(
            "polynomial matrix has {} rows, expected {}x{}",
            doc.len(),
            rows,
            cols
        )));
    }
    let entries = doc
        .iter()
        .flatten()
        .map(|p| poly_from_doc(ring, p))
        .collect::<Result<Vec<_>>>()?;
    PolyMatrix::new(rows, cols, entries)
}

fn polymat_to_doc(ring: &PolyRing, m: &PolyMatrix) -> PolyMatDoc {
    (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| poly_to_doc(ring, m.get(r, c)))
                .collect()
        })
        .collect()
}

impl FamilyBody {
    pub fn to_family(&self, algebra: &Algebra) -> Result<BimoduleFamily> {
        let ring = PolyRing::new(algebra.field().clone());
        match self {
            FamilyBody::Action {
                rank,
                action,
                den_powers,
                denominator,
            } => {
                let mats = action
                    .iter()
                    .map(|m| polymat_from_doc(&ring, *rank, *rank, m))
                    .collect::<Result<Vec<_>>>()?;
                let powers = den_powers.clone().unwrap_or_else(|| vec![0; mats.len()]);
                let den = match denominator {
                    Some(d) => poly_from_doc(&ring, d)?,
                    None => ring.one(),
                };
                BimoduleFamily::new(algebra, *rank, mats, powers, den)
            }
            FamilyBody::Quiver { dims, arrows } => {
                let a = algebra.structure()?;
                let info = a.quiver().ok_or_else(|| {
                    Error::InvalidPresentation(
                        "quiver family over an algebra without quiver".into(),
                    )
                })?;
                if arrows.len() != info.arrows.len() || dims.len() != info.vertices {
                    return Err(Error::ShapeMismatch("quiver family shape".into()));
                }
                let mats = arrows
                    .iter()
                    .zip(&info.arrows)
                    .map(|(m, (_, s, t))| polymat_from_doc(&ring, dims[*t], dims[*s], m))
                    .collect::<Result<Vec<_>>>()?;
                BimoduleFamily::from_representation(algebra, dims, &mats)
            }
        }
    }
}

pub fn family_to_doc(fam: &BimoduleFamily) -> FamilyDoc {
    let ring = fam.ring();
    FamilyDoc {
        algebra: algebra_to_doc(fam.algebra()),
        body: FamilyBody::Action {
            rank: fam.rank(),
            action: fam
                .action()
                .iter()
                .map(|m| polymat_to_doc(&ring, m))
                .collect(),
            den_powers: Some(fam.den_powers().to_vec()),
            denominator: Some(poly_to_doc(&ring, fam.denominator())),
        },
    }
}

impl SesDoc {
    pub fn to_ses(&self, algebra: &Algebra) -> Result<SesData> {
        let field = algebra.field();
        let l = self.l.to_module(algebra)?;
        let m = self.m.to_module(algebra)?;
        let n = self.n.to_module(algebra)?;
        let f = mat_from_doc(field, m.dim(), l.dim(), &self.f)?;
        let g = mat_from_doc(field, n.dim(), m.dim(), &self.g)?;
        SesData::new(l, m, n, f, g)
    }
}

pub fn ses_to_doc(s: &SesData) -> SesDoc {
    SesDoc {
        algebra: algebra_to_doc(s.m.algebra()),
        l: module_to_body(&s.l),
        m: module_to_body(&s.m),
        n: module_to_body(&s.n),
        f: mat_to_doc(&s.f),
        g: mat_to_doc(&s.g),
    }
}

impl PresentationDoc {
    pub fn to_presentation(&self, algebra: &Algebra) -> Result<PresentationMorphism> {
        let p1 = self.p1.to_module(algebra)?;
        let p0 = self.p0.to_module(algebra)?;
        let phi = mat_from_doc(algebra.field(), p0.dim(), p1.dim(), &self.phi)?;
        PresentationMorphism::new(p1, p0, phi)
    }
}

pub fn presentation_to_doc(pm: &PresentationMorphism) -> PresentationDoc {
    PresentationDoc {
        algebra: algebra_to_doc(pm.p0().algebra()),
        p1: module_to_body(pm.p1()),
        p0: module_to_body(pm.p0()),
        phi: mat_to_doc(pm.phi()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{kronecker_family, kronecker_indecomposables};

    #[test]
    fn field_names() {
        assert_eq!(parse_field("Q").unwrap(), FieldSpec::Rational);
        assert_eq!(parse_field("F101").unwrap(), FieldSpec::Prime { p: 101 });
        assert_eq!(
            parse_field("F2^2").unwrap(),
            FieldSpec::PrimePower {
                p: 2,
                modulus: vec![1, 1, 1]
            }
        );
        assert_eq!(
            parse_field("F3^2").unwrap(),
            FieldSpec::PrimePower {
                p: 3,
                modulus: vec![1, 0, 1]
            }
        );
        assert!(parse_field("F4").is_err());
        assert!(parse_field("R").is_err());
    }

    #[test]
    fn quiver_module_document() {
        let text = r#"{
            "algebra": {"form": "quiver", "field": {"type": "Fp", "p": 101}, "vertices": 2,
                        "arrows": [{"name": "a", "source": 0, "target": 1},
                                   {"name": "b", "source": 0, "target": 1}]},
            "dims": [1, 1], "arrows": [[["1"]], [["0"]]]
        }"#;
        let doc: ModuleDoc = from_json(text).unwrap();
        let alg = doc.algebra.to_algebra().unwrap();
        let m = doc.body.to_module(&alg).unwrap();
        assert_eq!(m.dim(), 2);
        let back: ModuleDoc = from_json(&to_json(&module_to_doc(&m))).unwrap();
        let alg2 = back.algebra.to_algebra().unwrap();
        assert_eq!(alg2, alg);
        assert_eq!(back.body.to_module(&alg2).unwrap(), m);
    }

    #[test]
    fn roundtrips() {
        let f = Field::prime(101).unwrap();
        let fam = kronecker_family(&f).unwrap();
        let doc = family_to_doc(&fam);
        let again: FamilyDoc = from_json(&to_json(&doc)).unwrap();
        assert_eq!(again, doc);
        let alg = again.algebra.to_algebra().unwrap();
        assert_eq!(again.body.to_family(&alg).unwrap(), fam);
        let (_, cat) = kronecker_indecomposables(&f).unwrap();
        for (_, m) in cat {
            let doc = module_to_doc(&m);
            let again: ModuleDoc = from_json(&to_json(&doc)).unwrap();
            assert_eq!(again, doc);
        }
    }

    #[test]
    fn bad_documents() {
        assert_eq!(from_json::<AlgebraDoc>("{").unwrap_err().code(), "Parse");
        let f = Field::rational();
        let e = mat_from_doc(&f, 2, 2, &vec![vec!["1".into()]]).unwrap_err();
        assert_eq!(e.code(), "ShapeMismatch");
        assert_eq!(
            mat_from_doc(&f, 1, 1, &vec![vec!["x".into()]])
                .unwrap_err()
                .code(),
            "Parse"
        );
    }
}
