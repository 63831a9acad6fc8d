use std::path::{Path, PathBuf};

use repcalc_core::algebra::algebra_radical;
use repcalc_core::catalog::{dual_numbers_indecomposables, kronecker_indecomposables};
use repcalc_core::homcalc::{
    decompose_seeded, dual_module, hom_basis, iso_classes, kronecker_embed, radical_hom_basis,
    DecompositionStatus,
};
use repcalc_core::homological::{
    cogen_membership, ext_dim, gen_membership, hom_ext_orthogonal, minimal_presentation, pdim_le,
    projective_data, relative_injectivity, OrthogonalSide, Orthogonality, PresentationMorphism,
};
use repcalc_core::io::{
    self, mat_to_doc, module_to_doc, parse_field, ses_to_doc, AlgebraDoc, FamilyDoc, ModuleDoc,
    PresentationDoc, SesDoc,
};
use repcalc_core::scheme::{module_scheme_equations, orbit_data, same_orbit};
use repcalc_core::tubes::{
    bt1_experiment, harada_sai_experiment, specialize, tube_ses, validate_family, BimoduleFamily,
};
use repcalc_core::{Algebra, Error, Field, FieldSpec, ModuleRep};
use serde_json::{json, Value};

use crate::{CatalogName, Cli, Command, Format, Membership, Side};

pub enum Failure {
    Usage(String),
    /// Serialized `{code, message, context}` object.
    Domain(String),
}

struct Ctx<'a> {
    cli: &'a Cli,
    field: Option<FieldSpec>,
    inputs: Vec<PathBuf>,
    algebras: Vec<(AlgebraDoc, Algebra)>,
}

enum Out {
    Json(Value),
    Csv(String),
    Text(String),
}

type CmdResult<T> = std::result::Result<T, Failure>;

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::AlgebraCheck { .. } => "algebra-check",
        Command::ModuleValidate { .. } => "module-validate",
        Command::ModuleDecompose { .. } => "module-decompose",
        Command::ModuleHom { .. } => "module-hom",
        Command::ModuleExt { .. } => "module-ext",
        Command::ModuleDual { .. } => "module-dual",
        Command::Membership { .. } => "membership",
        Command::EmbedKronecker { .. } => "embed-kronecker",
        Command::SchemeEquations { .. } => "scheme-equations",
        Command::SchemeOrbit { .. } => "scheme-orbit",
        Command::TubeSpecialize { .. } => "tube-specialize",
        Command::TubeSes { .. } => "tube-ses",
        Command::ExperimentBt1 { .. } => "experiment-bt1",
        Command::ExperimentHaradaSai { .. } => "experiment-harada-sai",
    }
}

impl<'a> Ctx<'a> {
    fn domain(&self, e: Error) -> Failure {
        let inputs: Vec<String> = self
            .inputs
            .iter()
            .map(|p| p.display().to_string())
            .collect();
        let obj = json!({
            "code": e.code(),
            "message": e.to_string(),
            "context": {
                "command": command_name(&self.cli.command),
                "inputs": inputs,
            },
        });
        Failure::Domain(obj.to_string())
    }

    fn read<T: for<'de> serde::Deserialize<'de>>(&mut self, path: &Path) -> CmdResult<T> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {}", path.display(), e)))?;
        self.inputs.push(path.to_path_buf());
        io::from_json(&text).map_err(|e| self.domain(e))
    }

    /// Parses an algebra document, sharing one value between identical
    /// documents so cached data is reused.
    fn algebra(&mut self, doc: AlgebraDoc) -> CmdResult<Algebra> {
        let doc = match &self.field {
            Some(spec) => doc.with_field(spec),
            None => doc,
        };
        if let Some((_, a)) = self.algebras.iter().find(|(d, _)| *d == doc) {
            return Ok(a.clone());
        }
        let a = doc.to_algebra().map_err(|e| self.domain(e))?;
        self.algebras.push((doc, a.clone()));
        Ok(a)
    }

    fn module(&mut self, path: &Path) -> CmdResult<ModuleRep> {
        let doc: ModuleDoc = self.read(path)?;
        let alg = self.algebra(doc.algebra)?;
        doc.body.to_module(&alg).map_err(|e| self.domain(e))
    }

    fn family(&mut self, path: &Path) -> CmdResult<BimoduleFamily> {
        let doc: FamilyDoc = self.read(path)?;
        let alg = self.algebra(doc.algebra)?;
        doc.body.to_family(&alg).map_err(|e| self.domain(e))
    }

    fn ok<T>(&self, r: repcalc_core::Result<T>) -> CmdResult<T> {
        r.map_err(|e| self.domain(e))
    }

    fn scalar(&self, field: &Field, s: &str) -> CmdResult<repcalc_core::Scalar> {
        self.ok(field.parse(s))
    }
}

pub fn run(cli: &Cli) -> CmdResult<()> {
    let field = match &cli.field {
        Some(s) => Some(parse_field(s).map_err(|e| Failure::Usage(e.to_string()))?),
        None => None,
    };
    let mut ctx = Ctx {
        cli,
        field,
        inputs: Vec::new(),
        algebras: Vec::new(),
    };
    let out = dispatch(&mut ctx)?;
    let text = match (out, cli.format) {
        (Out::Json(v), Format::Json) => io::to_json(&v),
        (Out::Csv(s), Format::Csv) | (Out::Text(s), Format::Text) => s,
        (_, f) => {
            return Err(Failure::Usage(
                format!(
                    "{} does not support --format {:?}",
                    command_name(&cli.command),
                    f
                )
                .to_lowercase(),
            ))
        }
    };
    match &cli.output {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {}", p.display(), e))),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn json_doc<T: serde::Serialize>(doc: &T) -> Out {
    Out::Json(serde_json::to_value(doc).expect("serializable document"))
}

fn dispatch(ctx: &mut Ctx) -> CmdResult<Out> {
    let cli = ctx.cli;
    let seed = cli.seed;
    match &cli.command {
        Command::AlgebraCheck { algebra } => {
            let doc: AlgebraDoc = ctx.read(algebra)?;
            let form = match &doc {
                AlgebraDoc::Free { .. } => "free",
                AlgebraDoc::Structure { .. } => "structure",
                AlgebraDoc::Quiver { .. } => "quiver",
            };
            let alg = ctx.algebra(doc)?;
            let mut report = json!({
                "valid": true,
                "form": form,
                "field": alg.field().to_string(),
            });
            match &alg {
                Algebra::Free(p) => {
                    let f = p.field();
                    report["generators"] = json!(p.num_generators());
                    report["relations"] = json!(p
                        .relations()
                        .iter()
                        .map(|r| r.format(f, &|g| format!("x{}", g)))
                        .collect::<Vec<_>>());
                }
                Algebra::Structure(a) => {
                    report["dim"] = json!(a.dim());
                    report["labels"] = json!(a.labels());
                    match algebra_radical(&alg) {
                        Ok(r) => {
                            report["radical_dim"] = json!(r.cols());
                            let data = ctx.ok(projective_data(&alg))?;
                            let dims: Vec<usize> =
                                data.projectives.iter().map(|(p, _)| p.dim()).collect();
                            report["projective_dims"] = json!(dims);
                        }
                        Err(e @ Error::UnsupportedCharacteristic { .. }) => {
                            report["radical_dim"] = Value::Null;
                            report["note"] = json!(e.to_string());
                        }
                        Err(e) => return Err(ctx.domain(e)),
                    }
                }
            }
            Ok(Out::Json(report))
        }
        Command::ModuleValidate { module } => {
            let m = ctx.module(module)?;
            let report = ctx.ok(m.validate())?;
            let violations: Vec<Value> = report
                .violations
                .iter()
                .map(|v| json!({"relation": v.relation, "residual": mat_to_doc(&v.residual)}))
                .collect();
            Ok(Out::Json(
                json!({"valid": report.is_valid(), "violations": violations}),
            ))
        }
        Command::ModuleDecompose { module } => {
            let m = ctx.module(module)?;
            let d = ctx.ok(decompose_seeded(&m, seed))?;
            let classes = if d.is_complete() {
                ctx.ok(iso_classes(&d.summands))?
                    .into_iter()
                    .map(Some)
                    .collect()
            } else {
                vec![None; d.summands.len()]
            };
            let summands: Vec<Value> = d
                .summands
                .iter()
                .zip(&classes)
                .map(|(s, c)| {
                    json!({
                        "dim": s.module.dim(),
                        "certified": s.is_certified(),
                        "iso_class": c,
                        "endomorphism_dim": s.endomorphisms.len(),
                    })
                })
                .collect();
            let status = match d.status {
                DecompositionStatus::Complete => "complete",
                DecompositionStatus::NotCertified => "not_certified",
            };
            Ok(Out::Json(json!({
                "seed": d.seed,
                "status": status,
                "dims": d.dims(),
                "summands": summands,
                "change_of_basis": mat_to_doc(&d.change_of_basis),
            })))
        }
        Command::ModuleHom {
            source,
            target,
            radical,
        } => {
            let x = ctx.module(source)?;
            let y = ctx.module(target)?;
            let basis = if *radical {
                ctx.ok(radical_hom_basis(&x, &y))?
            } else {
                ctx.ok(hom_basis(&x, &y))?
            };
            Ok(Out::Json(json!({
                "radical": radical,
                "dim": basis.len(),
                "basis": basis.iter().map(mat_to_doc).collect::<Vec<_>>(),
            })))
        }
        Command::ModuleExt {
            source,
            target,
            degree,
        } => {
            let x = ctx.module(source)?;
            let y = ctx.module(target)?;
            let d = ctx.ok(ext_dim(*degree, &x, &y))?;
            Ok(Out::Json(json!({"degree": degree, "dim": d})))
        }
        Command::ModuleDual { module } => {
            let m = ctx.module(module)?;
            let d = ctx.ok(dual_module(&m))?;
            Ok(json_doc(&module_to_doc(&d)))
        }
        Command::Membership { predicate } => membership(ctx, predicate),
        Command::EmbedKronecker { module } => {
            let m = ctx.module(module)?;
            let e = ctx.ok(kronecker_embed(&m))?;
            Ok(json_doc(&module_to_doc(&e)))
        }
        Command::SchemeEquations { algebra, n } => {
            let doc: AlgebraDoc = ctx.read(algebra)?;
            let alg = ctx.algebra(doc)?;
            let Some(p) = alg.free() else {
                return Err(ctx.domain(Error::InvalidPresentation(
                    "module scheme equations need a free presentation".into(),
                )));
            };
            let eqs = module_scheme_equations(p, *n);
            if cli.format == Format::Text {
                return Ok(Out::Text(eqs.to_text()));
            }
            let f = p.field();
            Ok(Out::Json(json!({
                "field": f.to_string(),
                "n": n,
                "variables": eqs.variable_names(),
                "equations": eqs
                    .equations
                    .iter()
                    .map(|e| e.format(f, &|v| eqs.variable_name(v)))
                    .collect::<Vec<_>>(),
            })))
        }
        Command::SchemeOrbit { module, other } => {
            let x = ctx.module(module)?;
            let o = ctx.ok(orbit_data(&x))?;
            let mut report = json!({
                "dim": x.dim(),
                "stab_dim": o.stab_dim,
                "orbit_dim": o.orbit_dim,
            });
            if let Some(other) = other {
                let y = ctx.module(other)?;
                report["same_orbit"] = json!(ctx.ok(same_orbit(&x, &y))?);
                report["seed"] = json!(seed);
            }
            Ok(Out::Json(report))
        }
        Command::TubeSpecialize {
            family,
            lambda,
            index,
        } => {
            let fam = ctx.family(family)?;
            let l = ctx.scalar(fam.field(), lambda)?;
            let m = ctx.ok(specialize(&fam, &l, *index))?;
            Ok(json_doc(&module_to_doc(&m)))
        }
        Command::TubeSes {
            family,
            lambda,
            i,
            j,
        } => {
            let fam = ctx.family(family)?;
            let l = ctx.scalar(fam.field(), lambda)?;
            let s = ctx.ok(tube_ses(&fam, &l, *i, *j))?;
            Ok(json_doc(&ses_to_doc(&s)))
        }
        Command::ExperimentBt1 {
            family,
            lambdas,
            i_max,
        } => {
            let fam = ctx.family(family)?;
            let report = ctx.ok(validate_family(&fam))?;
            if !report.is_valid() {
                return Err(ctx.domain(Error::InvalidPresentation(format!(
                    "family violates {}",
                    report.violations[0].relation
                ))));
            }
            let f = fam.field().clone();
            let ls = lambdas
                .iter()
                .map(|s| ctx.scalar(&f, s))
                .collect::<CmdResult<Vec<_>>>()?;
            let r = ctx.ok(bt1_experiment(&fam, &ls, *i_max, seed))?;
            if cli.format == Format::Csv {
                eprintln!("seed: {}", r.seed);
                return Ok(Out::Csv(r.to_csv(&f)));
            }
            let rows: Vec<Value> = r
                .rows
                .iter()
                .map(|row| {
                    json!({
                        "lambda": f.format(&row.lambda),
                        "i": row.i,
                        "dim": row.dim,
                        "num_summands": row.num_summands,
                        "max_summand_dim": row.max_summand_dim,
                        "certified": row.certified,
                        "iso_class_id": row.iso_class_id,
                        "error": row.error,
                    })
                })
                .collect();
            let dims: Vec<Value> = r
                .dimensions
                .iter()
                .map(|d| {
                    json!({
                        "dim": d.dim,
                        "rows": d.rows,
                        "class_count": d.class_count,
                        "non_isomorphic": d.non_isomorphic,
                    })
                })
                .collect();
            Ok(Out::Json(json!({
                "seed": r.seed,
                "field": f.to_string(),
                "rows": rows,
                "dimensions": dims,
                "max_dim": r.max_dim,
                "max_dim_by_i": r.max_dim_by_i,
                "strictly_increasing": r.strictly_increasing,
            })))
        }
        Command::ExperimentHaradaSai {
            catalog,
            bound,
            chains,
            modules,
        } => {
            let (name, members) = if modules.is_empty() {
                let spec = ctx.field.clone().unwrap_or(FieldSpec::Prime { p: 101 });
                let f = ctx.ok(Field::from_spec(&spec))?;
                let (name, cat) = match catalog {
                    CatalogName::Kronecker => {
                        ("kronecker", ctx.ok(kronecker_indecomposables(&f))?.1)
                    }
                    CatalogName::DualNumbers => {
                        ("dual-numbers", ctx.ok(dual_numbers_indecomposables(&f))?.1)
                    }
                };
                (
                    name.to_string(),
                    cat.into_iter().map(|(_, m)| m).collect::<Vec<_>>(),
                )
            } else {
                let mut ms = Vec::new();
                for p in modules {
                    ms.push(ctx.module(p)?);
                }
                ("custom".to_string(), ms)
            };
            let r = ctx.ok(harada_sai_experiment(&members, *bound, *chains, seed))?;
            Ok(Out::Json(json!({
                "catalog": name,
                "field": members.first().map(|m| m.field().to_string()),
                "seed": r.seed,
                "bound": r.bound,
                "chains": r.chains,
                "length": r.length,
                "vanished": r.vanished,
                "violations": r.violations,
                "longest_nonzero_prefix": r.longest_nonzero_prefix,
            })))
        }
    }
}

fn side(s: Side) -> OrthogonalSide {
    match s {
        Side::Right => OrthogonalSide::Right,
        Side::Left => OrthogonalSide::Left,
    }
}

fn presentation(
    ctx: &mut Ctx,
    doc: &Option<PathBuf>,
    module: &Option<PathBuf>,
) -> CmdResult<PresentationMorphism> {
    match (doc, module) {
        (Some(p), None) => {
            let d: PresentationDoc = ctx.read(p)?;
            let alg = ctx.algebra(d.algebra.clone())?;
            ctx.ok(d.to_presentation(&alg))
        }
        (None, Some(m)) => {
            let x = ctx.module(m)?;
            ctx.ok(minimal_presentation(&x))
        }
        _ => Err(Failure::Usage(
            "give either a presentation document or --module".into(),
        )),
    }
}

fn membership(ctx: &mut Ctx, predicate: &Membership) -> CmdResult<Out> {
    let (name, value, extra) = match predicate {
        Membership::Gen { module, target } => {
            let (m, x) = (ctx.module(module)?, ctx.module(target)?);
            ("gen", ctx.ok(gen_membership(&m, &x))?, Value::Null)
        }
        Membership::Cogen { module, target } => {
            let (m, x) = (ctx.module(module)?, ctx.module(target)?);
            ("cogen", ctx.ok(cogen_membership(&m, &x))?, Value::Null)
        }
        Membership::HomOrth {
            module,
            target,
            side: s,
        } => {
            let (m, x) = (ctx.module(module)?, ctx.module(target)?);
            let v = ctx.ok(hom_ext_orthogonal(&m, &x, Orthogonality::Hom, side(*s)))?;
            ("hom-orth", v, Value::Null)
        }
        Membership::ExtOrth {
            module,
            target,
            degree,
            side: s,
        } => {
            let (m, x) = (ctx.module(module)?, ctx.module(target)?);
            let v = ctx.ok(hom_ext_orthogonal(
                &m,
                &x,
                Orthogonality::Ext(*degree),
                side(*s),
            ))?;
            ("ext-orth", v, Value::Null)
        }
        Membership::Pdim { module, bound } => {
            let m = ctx.module(module)?;
            ("pdim", ctx.ok(pdim_le(&m, *bound))?, Value::Null)
        }
        Membership::RelInj { ses, target } => {
            let doc: SesDoc = ctx.read(ses)?;
            let alg = ctx.algebra(doc.algebra.clone())?;
            let s = ctx.ok(doc.to_ses(&alg))?;
            let x = ctx.module(target)?;
            (
                "rel-inj",
                ctx.ok(relative_injectivity(&s, &x))?,
                Value::Null,
            )
        }
        Membership::P1 {
            presentation: p,
            module,
        }
        | Membership::P2 {
            presentation: p,
            module,
        } => {
            let pm = presentation(ctx, p, module)?;
            let flags = pm.membership();
            let is_p1 = matches!(predicate, Membership::P1 { .. });
            let doc = io::presentation_to_doc(&pm);
            (
                if is_p1 { "p1" } else { "p2" },
                if is_p1 { flags.p1 } else { flags.p2 },
                json!({
                    "flags": {"proj2": flags.proj2, "p1": flags.p1, "p2": flags.p2},
                    "p1_dim": pm.p1().dim(),
                    "p0_dim": pm.p0().dim(),
                    "phi": doc.phi,
                }),
            )
        }
    };
    let mut report = json!({"predicate": name, "value": value});
    if let Value::Object(map) = extra {
        for (k, v) in map {
            report[k] = v;
        }
    }
    Ok(Out::Json(report))
}
