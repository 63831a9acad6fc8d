//! Bound quiver algebras converted to structure constants.

use std::collections::HashMap;

use crate::algebra::{Algebra, ModuleRep, NCPoly, QuiverInfo, StructureAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Mat, Subspace};

#[derive(Clone, Debug, PartialEq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// Quiver with relations. Relation words use arrow indices; the word
/// `[a0, ..., ak]` is the path traversing `ak` first, matching the product
/// `a0 * ... * ak` acting on left modules.
#[derive(Clone, Debug, PartialEq)]
pub struct QuiverPresentation {
    pub field: Field,
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<NCPoly>,
    /// Every path of this length must vanish in the quotient.
    pub max_length: usize,
}

pub const DEFAULT_MAX_PATH_LENGTH: usize = 12;

impl QuiverPresentation {
    pub fn new(field: &Field, vertices: usize, arrows: Vec<Arrow>, relations: Vec<NCPoly>) -> Self {
        QuiverPresentation {
            field: field.clone(),
            vertices,
            arrows,
            relations,
            max_length: DEFAULT_MAX_PATH_LENGTH,
        }
    }

    /// `(source, target)` of a nonempty word, or `None` if not composable.
    fn endpoints(&self, word: &[usize]) -> Option<(usize, usize)> {
        let last = &self.arrows[*word.last()?];
        let first = &self.arrows[word[0]];
        for pair in word.windows(2) {
            if self.arrows[pair[0]].source != self.arrows[pair[1]].target {
                return None;
            }
        }
        Some((last.source, first.target))
    }

    fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidPresentation(m));
        for (i, a) in self.arrows.iter().enumerate() {
            if a.source >= self.vertices || a.target >= self.vertices {
                return bad(format!("arrow {} leaves the vertex set", i));
            }
        }
        for (i, r) in self.relations.iter().enumerate() {
            let mut shape = None;
            for (c, w) in r.terms() {
                if !self.field.contains(c) {
                    return Err(Error::FieldMismatch(format!(
                        "coefficient in relation {}",
                        i
                    )));
                }
                if w.is_empty() || w.iter().any(|&a| a >= self.arrows.len()) {
                    return bad(format!(
                        "relation {} has a term that is not an arrow path",
                        i
                    ));
                }
                let Some(ends) = self.endpoints(w) else {
                    return bad(format!("relation {} contains a non-composable word", i));
                };
                let key = (ends, w.len());
                match shape {
                    None => shape = Some(key),
                    Some(s) if s != key => {
                        return bad(format!("relation {} mixes endpoints or path lengths", i))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    /// Structure constants of the path algebra modulo the relation ideal.
    ///
    /// Basis: trivial paths in vertex order, then the surviving paths of
    /// each length in enumeration order (paths of length `l + 1` prepend
    /// arrows to paths of length `l`). Inside one length the ideal is
    /// eliminated linearly and later paths are rewritten in terms of
    /// earlier ones.
    pub fn to_structure(&self) -> Result<StructureAlgebra> {
        self.check()?;
        let f = &self.field;
        // strata[l]: all composable words of length l with their normal forms
        let mut strata: Vec<Stratum> = Vec::new();
        let mut basis: Vec<(usize, Vec<usize>)> =
            (0..self.vertices).map(|v| (v, Vec::new())).collect();
        let mut prev_words: Vec<Vec<usize>> = Vec::new();
        let mut prev_ideal: Vec<Vec<Scalar>> = Vec::new();
        let mut length = 1;
        loop {
            let words: Vec<Vec<usize>> = if length == 1 {
                (0..self.arrows.len()).map(|a| vec![a]).collect()
            } else {
                let mut out = Vec::new();
                for w in &prev_words {
                    let target = self.arrows[w[0]].target;
                    for (a, arrow) in self.arrows.iter().enumerate() {
                        if arrow.source == target {
                            let mut nw = Vec::with_capacity(w.len() + 1);
                            nw.push(a);
                            nw.extend_from_slice(w);
                            out.push(nw);
                        }
                    }
                }
                out
            };
            let index: HashMap<Vec<usize>, usize> = words
                .iter()
                .enumerate()
                .map(|(i, w)| (w.clone(), i))
                .collect();
            let n = words.len();
            let mut ideal = Subspace::new(f, n);
            // reversed coordinates so that pivots land on later paths
            let rev = |i: usize| n - 1 - i;
            let push = |ideal: &mut Subspace, terms: Vec<(Scalar, Vec<usize>)>| {
                let mut v = vec![f.zero(); n];
                for (c, w) in terms {
                    let k = rev(index[&w]);
                    v[k] = f.add(&v[k], &c);
                }
                ideal.insert(&v);
            };
            for r in &self.relations {
                if r.terms().first().is_some_and(|t| t.1.len() == length) {
                    push(&mut ideal, r.terms().to_vec());
                }
            }
            let prev_n = prev_words.len();
            for v in &prev_ideal {
                let terms: Vec<(Scalar, Vec<usize>)> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !f.is_zero(c))
                    .map(|(k, c)| (c.clone(), prev_words[prev_n - 1 - k].clone()))
                    .collect();
                for (a, arrow) in self.arrows.iter().enumerate() {
                    let left: Vec<_> = terms
                        .iter()
                        .filter(|(_, w)| self.arrows[w[0]].target == arrow.source)
                        .map(|(c, w)| {
                            let mut nw = vec![a];
                            nw.extend_from_slice(w);
                            (c.clone(), nw)
                        })
                        .collect();
                    if !left.is_empty() {
                        push(&mut ideal, left);
                    }
                    let right: Vec<_> = terms
                        .iter()
                        .filter(|(_, w)| self.arrows[*w.last().unwrap()].source == arrow.target)
                        .map(|(c, w)| {
                            let mut nw = w.clone();
                            nw.push(a);
                            (c.clone(), nw)
                        })
                        .collect();
                    if !right.is_empty() {
                        push(&mut ideal, right);
                    }
                }
            }
            let mut is_pivot = vec![false; n];
            for &p in ideal.pivots() {
                is_pivot[p] = true;
            }
            let survivors: Vec<usize> = (0..n).filter(|&i| !is_pivot[rev(i)]).collect();
            if survivors.is_empty() {
                break;
            }
            if length >= self.max_length {
                return Err(Error::BasisNotFinite(self.max_length));
            }
            let offset = basis.len();
            let position: HashMap<usize, usize> = survivors
                .iter()
                .enumerate()
                .map(|(k, &i)| (i, offset + k))
                .collect();
            for &i in &survivors {
                let (s, _) = self.endpoints(&words[i]).unwrap();
                basis.push((s, words[i].clone()));
            }
            strata.push(Stratum {
                index,
                ideal: ideal.clone(),
                position,
                len: n,
            });
            prev_words = words;
            prev_ideal = ideal.basis().to_vec();
            length += 1;
        }

        let d = basis.len();
        let normal_form = |word: &[usize]| -> Vec<Scalar> {
            let mut out = vec![f.zero(); d];
            let Some(st) = strata.get(word.len() - 1) else {
                return out;
            };
            let Some(&i) = st.index.get(word) else {
                return out;
            };
            let mut v = vec![f.zero(); st.len];
            v[st.len - 1 - i] = f.one();
            let r = st.ideal.reduce(&v);
            for (k, c) in r.iter().enumerate() {
                if !f.is_zero(c) {
                    out[st.position[&(st.len - 1 - k)]] = c.clone();
                }
            }
            out
        };
        let mut mult = Vec::with_capacity(d * d);
        for (sa, wa) in &basis {
            for (sb, wb) in &basis {
                let target_b = if wb.is_empty() {
                    *sb
                } else {
                    self.arrows[wb[0]].target
                };
                let mut out = vec![f.zero(); d];
                if target_b == *sa {
                    if wa.is_empty() {
                        out = unit_vector(
                            f,
                            d,
                            basis.iter().position(|x| x == &(*sb, wb.clone())).unwrap(),
                        );
                    } else if wb.is_empty() {
                        out = unit_vector(
                            f,
                            d,
                            basis.iter().position(|x| x == &(*sa, wa.clone())).unwrap(),
                        );
                    } else {
                        let mut w = wa.clone();
                        w.extend_from_slice(wb);
                        out = normal_form(&w);
                    }
                }
                mult.push(out);
            }
        }
        let mut unit = vec![f.zero(); d];
        for u in unit.iter_mut().take(self.vertices) {
            *u = f.one();
        }
        let labels = basis
            .iter()
            .map(|(s, w)| {
                if w.is_empty() {
                    format!("e{}", s)
                } else {
                    w.iter()
                        .map(|&a| self.arrows[a].name.clone())
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect();
        let info = QuiverInfo {
            vertices: self.vertices,
            arrows: self
                .arrows
                .iter()
                .map(|a| (a.name.clone(), a.source, a.target))
                .collect(),
            basis_paths: basis,
        };
        Ok(StructureAlgebra::new(f, d, mult, unit, Some(labels))?.with_quiver(info))
    }
}

struct Stratum {
    index: HashMap<Vec<usize>, usize>,
    ideal: Subspace,
    /// reversed coordinate of a surviving path -> global basis index
    position: HashMap<usize, usize>,
    len: usize,
}

fn unit_vector(f: &Field, d: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![f.zero(); d];
    v[i] = f.one();
    v
}

/// `n`-Kronecker quiver `0 => 1` with arrows `a0, ..., a{n-1}`, no relations.
pub fn kronecker_algebra(field: &Field, arrows: usize) -> Result<Algebra> {
    let q = QuiverPresentation::new(
        field,
        2,
        (0..arrows)
            .map(|i| Arrow {
                name: format!("a{}", i),
                source: 0,
                target: 1,
            })
            .collect(),
        Vec::new(),
    );
    Ok(q.to_structure()?.into())
}

/// One loop `x` at one vertex with `x^n = 0`: the algebra `k[x]/(x^n)`.
pub fn truncated_polynomial_algebra(field: &Field, n: usize) -> Result<Algebra> {
    let q = QuiverPresentation::new(
        field,
        1,
        vec![Arrow {
            name: "x".into(),
            source: 0,
            target: 0,
        }],
        vec![NCPoly::new(field, vec![(field.one(), vec![0; n])])],
    );
    Ok(q.to_structure()?.into())
}

/// Module of a quiver algebra from a vertex dimension vector and one
/// `dims[target] x dims[source]` matrix per arrow. Coordinates are ordered
/// vertex by vertex.
pub fn representation(algebra: &Algebra, dims: &[usize], arrow_maps: &[Mat]) -> Result<ModuleRep> {
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
    let f = a.field();
    let n: usize = dims.iter().sum();
    let offsets: Vec<usize> = dims
        .iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let mut embedded = Vec::with_capacity(arrow_maps.len());
    for (k, (m, (_, s, t))) in arrow_maps.iter().zip(&info.arrows).enumerate() {
        if m.shape() != (dims[*t], dims[*s]) {
            return Err(Error::ShapeMismatch(format!(
                "arrow {} map is {}x{}, expected {}x{}",
                k,
                m.rows(),
                m.cols(),
                dims[*t],
                dims[*s]
            )));
        }
        let mut big = Mat::zeros(f, n, n);
        big.set_block(offsets[*t], offsets[*s], m);
        embedded.push(big);
    }
    let mut action = Vec::with_capacity(a.dim());
    for (v, w) in &info.basis_paths {
        if w.is_empty() {
            let mut e = Mat::zeros(f, n, n);
            e.set_block(offsets[*v], offsets[*v], &Mat::identity(f, dims[*v]));
            action.push(e);
        } else {
            let mut prod = embedded[w[0]].clone();
            for &arrow in &w[1..] {
                prod = prod.mul(&embedded[arrow])?;
            }
            action.push(prod);
        }
    }
    ModuleRep::new(algebra, n, action)
}

/// Vertex dimension vector of a module over a quiver algebra.
pub fn dimension_vector(module: &ModuleRep) -> Result<Vec<usize>> {
    let a = module.algebra().structure()?;
    let info = a
        .quiver()
        .ok_or_else(|| Error::InvalidPresentation("algebra carries no quiver data".into()))?;
    Ok((0..info.vertices)
        .map(|v| module.action()[v].rank())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_basis() {
        let q = Field::rational();
        let alg = kronecker_algebra(&q, 2).unwrap();
        let a = alg.structure().unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.labels(), ["e0", "e1", "a0", "a1"]);
    }

    #[test]
    fn truncated_loop() {
        let q = Field::rational();
        let alg = truncated_polynomial_algebra(&q, 2).unwrap();
        assert_eq!(alg.structure().unwrap().dim(), 2);
        let alg = truncated_polynomial_algebra(&q, 4).unwrap();
        assert_eq!(alg.structure().unwrap().dim(), 4);
    }

    #[test]
    fn single_vertex() {
        let q = Field::rational();
        let a = QuiverPresentation::new(&q, 1, vec![], vec![])
            .to_structure()
            .unwrap();
        assert_eq!(a.dim(), 1);
    }

    #[test]
    fn free_loop_is_infinite() {
        let q = Field::rational();
        let arrows = vec![Arrow {
            name: "x".into(),
            source: 0,
            target: 0,
        }];
        let err = QuiverPresentation::new(&q, 1, arrows, vec![])
            .to_structure()
            .unwrap_err();
        assert_eq!(err, Error::BasisNotFinite(DEFAULT_MAX_PATH_LENGTH));
    }

    #[test]
    fn commutative_square() {
        // 0 -a-> 1 -b-> 3, 0 -c-> 2 -d-> 3 with ba = dc
        let q = Field::rational();
        let arrow = |name: &str, s, t| Arrow {
            name: name.into(),
            source: s,
            target: t,
        };
        let arrows = vec![
            arrow("a", 0, 1),
            arrow("b", 1, 3),
            arrow("c", 0, 2),
            arrow("d", 2, 3),
        ];
        let rel = NCPoly::from_ints(&q, &[(1, &[1, 0]), (-1, &[3, 2])]);
        let a = QuiverPresentation::new(&q, 4, arrows, vec![rel])
            .to_structure()
            .unwrap();
        assert_eq!(a.dim(), 9);
        let alg: Algebra = a.into();
        let one = Mat::identity(&q, 1);
        let m = representation(
            &alg,
            &[1, 1, 1, 1],
            &[one.clone(), one.clone(), one.clone(), one.clone()],
        )
        .unwrap();
        assert!(m.validate().unwrap().is_valid());
        let neg = one.scale(&q.from_i64(-1));
        let bad =
            representation(&alg, &[1, 1, 1, 1], &[one.clone(), one.clone(), one, neg]).unwrap();
        assert!(!bad.validate().unwrap().is_valid());
    }

    #[test]
    fn mixed_lengths_rejected() {
        let q = Field::rational();
        let arrows = vec![Arrow {
            name: "x".into(),
            source: 0,
            target: 0,
        }];
        let rel = NCPoly::from_ints(&q, &[(1, &[0, 0]), (-1, &[0])]);
        let err = QuiverPresentation::new(&q, 1, arrows, vec![rel])
            .to_structure()
            .unwrap_err();
        assert_eq!(err.code(), "InvalidPresentation");
    }
}
