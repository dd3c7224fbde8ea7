use std::fmt::Write as _;
use std::path::Path;

use jnp_core::affine::verify_affinization;
use jnp_core::catalog::{self, Assignment, SamplingPlan};
use jnp_core::construct::{self, ConstructionReport};
use jnp_core::frobenius::{self, FrobeniusAnswer};
use jnp_core::io::{self, matrix_json, module_json, render, vector_json, AlgebraFile};
use jnp_core::laws;
use jnp_core::representation::{self, ModuleStructure};
use jnp_core::search::{self, SearchLaw};
use jnp_core::{vector, Error, Field, Matrix, Result, Scalar, Verdict, Which};
use serde_json::{json, Value};

use crate::args::{Catalog, Cli, Command, Construct, LawArg, Module, Output, WhichArg};

/// What a subcommand prints and how it exits.
pub struct Outcome {
    pub code: u8,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    fn verdicts(vs: Vec<Verdict>) -> Outcome {
        let pass = vs.iter().all(|v| v.pass);
        let text = vs.iter().map(|v| v.summary() + "\n").collect();
        let json = if vs.len() == 1 {
            serde_json::to_value(&vs[0]).expect("verdicts serialize")
        } else {
            json!({"pass": pass, "verdicts": vs})
        };
        Outcome {
            code: if pass { 0 } else { 1 },
            text,
            json,
        }
    }
}

pub fn error_code(e: &Error) -> u8 {
    match e {
        Error::LawFailure(_) | Error::Internal(_) => 1,
        _ => 2,
    }
}

fn read(path: &Path) -> Result<AlgebraFile> {
    io::read_file(path)
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

/// Writes `file` to `-o` or returns it as the payload.
fn emit_file(file: &AlgebraFile, out: &Output, summary: String) -> Result<Outcome> {
    emit_value(file.to_json(), out, summary)
}

fn emit_value(value: Value, out: &Output, summary: String) -> Result<Outcome> {
    match &out.output {
        Some(path) => {
            std::fs::write(path, render(&value)).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
            Ok(Outcome {
                code: 0,
                text: format!("{summary}\nwrote {}\n", path.display()),
                json: json!({"written": path.display().to_string(), "summary": summary}),
            })
        }
        None => Ok(Outcome {
            code: 0,
            text: render(&value),
            json: value,
        }),
    }
}

fn parse_vec(field: Field, s: &str) -> Result<Vec<Scalar>> {
    vector::parse(field, s)
}

/// `p=P`, `P`, or `Q`/`rational`.
pub fn parse_field(s: &str) -> Result<Field> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rational") {
        return Ok(Field::Rational);
    }
    let digits = t.strip_prefix("p=").unwrap_or(t);
    let p: u64 = digits
        .parse()
        .map_err(|_| Error::Format(format!("field must be p=P or Q, got {s:?}")))?;
    Field::prime(p)
}

fn parse_grid(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::Format(format!("grid must be LO..HI, got {s:?}"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

fn parse_sets(sets: &[String]) -> Result<Assignment> {
    let mut out = Assignment::new();
    for s in sets {
        let (k, v) = s
            .split_once('=')
            .ok_or_else(|| Error::Format(format!("--set expects K=V, got {s:?}")))?;
        if out.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(Error::Format(format!("parameter {k} given twice")));
        }
    }
    Ok(out)
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Check {
            file,
            law,
            map,
            map2,
            which,
            budget,
        } => check(&read(&file)?, law, &map, &map2, which, budget),
        Command::Integrals { file } => integrals(&read(&file)?),
        Command::Forms { file } => forms(&read(&file)?),
        Command::Frobenius { file, budget } => frobenius_cmd(&read(&file)?, budget),
        Command::Construct(c) => construct_cmd(c),
        Command::Affinize {
            file,
            grid,
            allow_prime,
        } => {
            let (lo, hi) = parse_grid(&grid)?;
            let r = verify_affinization(&read(&file)?.algebra, lo..=hi, allow_prime)?;
            let mut text = format!("grid {lo}..{hi}, {} basis triples\n", r.basis_triples);
            if r.prime_override {
                text.push_str("evaluated over a prime field by override\n");
            }
            text.push_str(&r.verdict.summary());
            text.push('\n');
            Ok(Outcome {
                code: if r.verdict.pass { 0 } else { 1 },
                text,
                json: serde_json::to_value(&r)?,
            })
        }
        Command::Module(m) => module_cmd(m),
        Command::Catalog(c) => catalog_cmd(c),
        Command::Search {
            base,
            field,
            law,
            budget,
        } => search_cmd(&read(&base)?, parse_field(&field)?, SearchLaw::parse(&law)?, budget),
        Command::Simple { file, budget } => {
            Ok(Outcome::verdicts(vec![laws::check_simple_novikov(&read(&file)?.algebra, budget)?]))
        }
    }
}

fn check(file: &AlgebraFile, law: LawArg, map: &str, map2: &str, which: WhichArg, budget: u128) -> Result<Outcome> {
    let alg = &file.algebra;
    let v = match law {
        LawArg::UnitalCommAssoc => laws::check_unital_comm_assoc(alg),
        LawArg::Novikov => laws::check_novikov(alg)?,
        LawArg::RightNovikov => laws::check_right_novikov(alg)?,
        LawArg::Dnp => laws::check_dnp(alg)?,
        LawArg::Jnp => laws::check_jnp(alg)?,
        LawArg::RightJnp => laws::check_right_jnp(alg)?,
        LawArg::Jacobi => laws::check_jacobi(alg)?,
        LawArg::TransposedPoisson => laws::check_transposed_poisson(alg)?,
        LawArg::Quadratic => frobenius::check_quadratic(alg, file.form()?)?,
        LawArg::DotFrobenius => frobenius::check_dot_frobenius(alg, file.form()?)?,
        LawArg::FrobeniusJacobi => frobenius::check_frobenius_jacobi(alg, file.form()?)?,
        LawArg::Derivation => {
            let w = match which {
                WhichArg::Dot => Which::Dot,
                WhichArg::Circ => Which::Circ,
                WhichArg::Bracket => Which::Bracket,
            };
            laws::check_derivation(alg, w, file.map(map)?)?
        }
        LawArg::Admissible => laws::check_admissible_pair(alg, file.map(map)?, file.map(map2)?)?,
        LawArg::Simple => laws::check_simple_novikov(alg, budget)?,
    };
    Ok(Outcome::verdicts(vec![v]))
}

fn integrals(file: &AlgebraFile) -> Result<Outcome> {
    let basis = frobenius::integral_space(&file.algebra)?;
    let mut text = format!("integral space of dimension {}\n", basis.len());
    for v in &basis {
        let _ = writeln!(text, "  [{}]", vector::to_strings(v).join(", "));
    }
    Ok(Outcome {
        code: 0,
        text,
        json: json!({"dim": basis.len(), "basis": basis.iter().map(|v| vector_json(v)).collect::<Vec<_>>()}),
    })
}

fn matrix_text(m: &Matrix, indent: &str) -> String {
    m.to_rows()
        .iter()
        .map(|r| format!("{indent}[{}]\n", vector::to_strings(r).join(", ")))
        .collect()
}

fn forms(file: &AlgebraFile) -> Result<Outcome> {
    let basis = frobenius::invariant_form_space(&file.algebra)?;
    let mut text = format!("invariant form space of dimension {}\n", basis.len());
    for (i, g) in basis.iter().enumerate() {
        let _ = writeln!(text, "form {i}:");
        text.push_str(&matrix_text(g, "  "));
    }
    Ok(Outcome {
        code: 0,
        text,
        json: json!({"dim": basis.len(), "basis": basis.iter().map(matrix_json).collect::<Vec<_>>()}),
    })
}

fn frobenius_cmd(file: &AlgebraFile, budget: u128) -> Result<Outcome> {
    let alg = &file.algebra;
    match frobenius::is_frobenius(alg, budget)? {
        FrobeniusAnswer::No => Ok(Outcome {
            code: 1,
            text: "no nondegenerate integral\n".into(),
            json: json!({"answer": "no", "reason": "no nondegenerate integral"}),
        }),
        FrobeniusAnswer::Yes { integral, form } => {
            let pair = frobenius::frobenius_pair(alg, &integral)?;
            let mut text = format!("yes\nv = [{}]\nform:\n", vector::to_strings(&integral).join(", "));
            text.push_str(&matrix_text(&form, "  "));
            text.push_str("E:\n");
            text.push_str(&matrix_text(&pair.casimir, "  "));
            let _ = writeln!(text, "omega = [{}]", vector::to_strings(&pair.euler_casimir).join(", "));
            Ok(Outcome {
                code: 0,
                text,
                json: json!({
                    "answer": "yes",
                    "form": matrix_json(&form),
                    "pair": {
                        "v": vector_json(&integral),
                        "E": matrix_json(&pair.casimir),
                        "omega": vector_json(&pair.euler_casimir),
                    },
                }),
            })
        }
    }
}

fn construct_cmd(c: Construct) -> Result<Outcome> {
    let (report, out): (ConstructionReport, Output) = match c {
        Construct::FromDerivation { file, map, out } => {
            let f = read(&file)?;
            (construct::from_derivation(&f.algebra, f.map(&map)?)?, out)
        }
        Construct::CircQ {
            file,
            map,
            map2,
            q,
            out,
        } => {
            let f = read(&file)?;
            let q = f.algebra.field.parse(&q)?;
            (construct::circ_q(&f.algebra, f.map(&map)?, f.map(&map2)?, &q)?, out)
        }
        Construct::Commutator { file, out } => (construct::commutator_jacobi(&read(&file)?.algebra)?, out),
        Construct::Twisted { file, map, out } => {
            let f = read(&file)?;
            (construct::twisted_jacobi(&f.algebra, f.map(&map)?)?, out)
        }
        Construct::TensorJnp { a, b, out } => (construct::tensor_jnp(&read(&a)?.algebra, &read(&b)?.algebra)?, out),
        Construct::TensorJacobi { a, b, out } => {
            (construct::tensor_jacobi(&read(&a)?.algebra, &read(&b)?.algebra)?, out)
        }
        Construct::XiShift { file, xi, out } => {
            let alg = read(&file)?.algebra;
            let xi = parse_vec(alg.field, &xi)?;
            (construct::xi_shift(&alg, &xi)?, out)
        }
        Construct::Kantor { file, u, out } => {
            let alg = read(&file)?.algebra;
            let u = parse_vec(alg.field, &u)?;
            (construct::kantor_deform(&alg, &u)?, out)
        }
        Construct::Conformal { file, u, out } => {
            let alg = read(&file)?.algebra;
            let u = parse_vec(alg.field, &u)?;
            (construct::conformal_deform_jacobi(&alg, &u)?, out)
        }
    };
    let checks: Vec<String> = report.verdicts.iter().map(Verdict::summary).collect();
    let summary = format!("{}: {}", report.provenance, checks.join("; "));
    emit_file(&AlgebraFile::new(report.output), &out, summary)
}

/// A module file is either `{"dim", "l", "r", "s"}` or an algebra file with
/// a `module` key.
fn read_module(alg_file: &AlgebraFile, path: &Path) -> Result<ModuleStructure> {
    let v = read_json(path)?;
    if v.get("module").is_some() {
        let f = AlgebraFile::from_json(&v)?;
        return f.module.ok_or_else(|| Error::Format("module missing".into()));
    }
    let a = &alg_file.algebra;
    io::parse_module(a.field, a.dim, &v)
}

fn module_cmd(m: Module) -> Result<Outcome> {
    match m {
        Module::Check { algebra, module } => {
            let f = read(&algebra)?;
            let md = read_module(&f, &module)?;
            Ok(Outcome::verdicts(vec![representation::check_module(&f.algebra, &md)?]))
        }
        Module::Adjoint { algebra, out } => {
            let f = read(&algebra)?;
            let md = representation::adjoint_module(&f.algebra)?;
            emit_value(module_json(&md), &out, format!("adjoint module of dimension {}", md.dim))
        }
        Module::Dual { algebra, module, out } => {
            let f = read(&algebra)?;
            let md = read_module(&f, &module)?;
            let dual = representation::dual_module(&f.algebra, &md)?;
            emit_value(module_json(&dual), &out, format!("dual module of dimension {}", dual.dim))
        }
    }
}

fn catalog_cmd(c: Catalog) -> Result<Outcome> {
    match c {
        Catalog::List => {
            let list = catalog::list_entries();
            let mut text = String::new();
            for e in &list {
                let params: Vec<&str> = e.params.iter().map(|p| p.name).collect();
                let _ = writeln!(
                    text,
                    "{:22} {:24} {:10} [{}] {}",
                    e.name,
                    serde_json::to_value(e.law)?.as_str().unwrap_or_default(),
                    e.field,
                    params.join(", "),
                    e.description
                );
            }
            Ok(Outcome {
                code: 0,
                text,
                json: serde_json::to_value(&list)?,
            })
        }
        Catalog::Emit { name, set, field, out } => {
            let field = field.as_deref().map(parse_field).transpose()?;
            let file = catalog::emit(&name, field, &parse_sets(&set)?)?;
            emit_file(&file, &out, format!("emitted {name}"))
        }
        Catalog::Verify { plan } => {
            let plan = match plan {
                Some(p) => SamplingPlan::from_json(&read_json(&p)?)?,
                None => SamplingPlan::default(),
            };
            let report = catalog::verify_catalog(&plan)?;
            let mut text = String::new();
            for e in &report.entries {
                let status = if e.failures.is_empty() { "ok" } else { "FAIL" };
                let _ = writeln!(
                    text,
                    "{:22} {status:4} {}/{} passed, {} skipped",
                    e.name, e.passed, e.instances, e.skipped
                );
                for f in &e.failures {
                    let _ = writeln!(text, "    {:?} over {}: {}", f.assignment, f.field, f.verdict.summary());
                }
            }
            Ok(Outcome {
                code: if report.all_pass() { 0 } else { 1 },
                text,
                json: serde_json::to_value(&report)?,
            })
        }
    }
}

fn search_cmd(base: &AlgebraFile, field: Field, law: SearchLaw, budget: u128) -> Result<Outcome> {
    let r = search::enumerate_jnp(&base.algebra, field, law, budget)?;
    let mut text = format!(
        "{} of {} candidates over {} satisfy {}\n{} invariant classes\n",
        r.count,
        r.candidates,
        field,
        serde_json::to_value(law)?.as_str().unwrap_or_default(),
        r.buckets.len()
    );
    for b in &r.buckets {
        let entries: Vec<String> = b
            .representative
            .nonzero_entries()
            .iter()
            .map(|(i, j, k, c)| format!("({i},{j},{k})={c}"))
            .collect();
        let shown = if entries.is_empty() { "0".to_string() } else { entries.join(" ") };
        let _ = writeln!(text, "  size {:4}: {shown}", b.size);
    }
    Ok(Outcome {
        code: 0,
        text,
        json: serde_json::to_value(&r)?,
    })
}
