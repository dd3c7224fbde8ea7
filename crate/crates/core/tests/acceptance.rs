//! Acceptance run: prints one PASS/FAIL line per criterion and exits nonzero
//! if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use jnp_core::affine::verify_affinization;
use jnp_core::catalog::{self, assignment, emit, samples, SamplingPlan};
use jnp_core::construct::{self, admissible_partners, derivation_space, dot_inverse};
use jnp_core::frobenius::{self, FrobeniusAnswer};
use jnp_core::io::AlgebraFile;
use jnp_core::laws;
use jnp_core::representation::check_frobenius_via_modules;
use jnp_core::search::{cross_check_reduction, enumerate_jnp, projection, SearchLaw};
use jnp_core::{Algebra, Field, Matrix, Scalar, StructureTensor, Which};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q() -> Field {
    Field::Rational
}

fn s(f: Field, x: &str) -> Scalar {
    f.parse(x).unwrap()
}

fn vecs(f: Field, xs: &[&str]) -> Vec<Scalar> {
    xs.iter().map(|x| s(f, x)).collect()
}

/// Tensor with the listed nonzero products, everything else zero.
fn tensor(f: Field, n: usize, entries: &[(usize, usize, &[&str])]) -> StructureTensor {
    let mut t = StructureTensor::zeros(f, n);
    for (i, j, v) in entries {
        for (k, x) in v.iter().enumerate() {
            t.set(*i, *j, k, s(f, x));
        }
    }
    t
}

fn corpus() -> Vec<(String, Algebra)> {
    catalog::standard_corpus()
        .into_iter()
        .map(|(name, file)| (name, file.algebra))
        .collect()
}

fn small_rational(rng: &mut ChaCha8Rng) -> String {
    let n: i64 = rng.gen_range(-3..=3);
    let d: i64 = rng.gen_range(1..=3);
    format!("{n}/{d}")
}

fn random_vector(rng: &mut ChaCha8Rng, f: Field, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| s(f, &small_rational(rng))).collect()
}

fn random_combination(rng: &mut ChaCha8Rng, f: Field, n: usize, basis: &[Matrix]) -> Matrix {
    let mut m = Matrix::zeros(f, n, n);
    for b in basis {
        m = m.add(&b.scale(&s(f, &small_rational(rng)))).unwrap();
    }
    m
}

fn random_invertible(rng: &mut ChaCha8Rng, alg: &Algebra) -> Vec<Scalar> {
    loop {
        let u = random_vector(rng, alg.field, alg.dim);
        if dot_inverse(alg, &u).is_ok() {
            return u;
        }
    }
}

const J3D: [&str; 23] = [
    "3d-J1", "3d-J2", "3d-J3", "3d-J4", "3d-J5", "3d-J6", "3d-J7", "3d-J8", "3d-J9", "3d-J10", "3d-J11", "3d-J12",
    "3d-J13", "3d-J14", "3d-J15", "3d-J16", "3d-J17", "3d-J18", "3d-J19", "3d-J20", "3d-J21", "3d-J22", "3d-J23",
];

fn criterion_1() -> Outcome {
    let mut names: Vec<String> = ["2d-J1", "2d-J2", "2d-J3"].iter().map(|s| s.to_string()).collect();
    names.extend(J3D.iter().map(|s| s.to_string()));
    let plan = SamplingPlan {
        entries: names.clone(),
        ..SamplingPlan::default()
    };
    let report = catalog::verify_catalog(&plan).map_err(|e| e.to_string())?;
    ensure(report.entries.len() == names.len(), || format!("{} entries swept", report.entries.len()))?;
    let mut total = 0;
    for e in &report.entries {
        let params = catalog::find(e.name).unwrap().params.len() as u32;
        ensure(e.instances == 4usize.pow(params), || format!("{}: {} instances", e.name, e.instances))?;
        ensure(e.failures.is_empty(), || {
            format!("{}: {} failures, first {}", e.name, e.failures.len(), e.failures[0].verdict.summary())
        })?;
        total += e.instances;
    }
    Ok(format!("{} entries, {total} instances, 0 failures", names.len()))
}

fn criterion_2() -> Outcome {
    let entry = catalog::find("char3-simple").unwrap();
    let all = samples(&entry, &SamplingPlan::default());
    ensure(all.len() == 162, || format!("{} assignments", all.len()))?;
    for (field, a) in &all {
        let alg = entry.emit(Some(*field), a).map_err(|e| format!("{a:?}: {e}"))?.algebra;
        let j = laws::check_jnp(&alg).unwrap();
        ensure(j.pass, || format!("{a:?}: {}", j.summary()))?;
        let simple = laws::check_simple_novikov(&alg, 1_000).unwrap();
        ensure(simple.pass, || format!("{a:?}: {}", simple.summary()))?;
    }
    Ok("162 assignments pass jnp and simplicity".into())
}

fn criterion_3() -> Outcome {
    let entry = catalog::find("charp-simple").unwrap();
    let all = samples(&entry, &SamplingPlan::default());
    ensure(all.len() == 16, || format!("{} instances", all.len()))?;
    for (field, a) in &all {
        let alg = entry.emit(Some(*field), a).map_err(|e| e.to_string())?.algebra;
        let v = laws::check_jnp(&alg).unwrap();
        ensure(v.pass, || format!("{field} {a:?}: {}", v.summary()))?;
    }
    Ok("16 instances over F_3, F_5, F_7 pass jnp".into())
}

/// Adds 1 to the first circ (or dot) entry whose change breaks the axioms.
fn corrupt(alg: &Algebra, which: Which) -> Algebra {
    let n = alg.dim;
    let one = alg.field.one();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut out = alg.clone();
                let t = match which {
                    Which::Dot => &mut out.dot,
                    _ => out.circ.as_mut().unwrap(),
                };
                let x = t.get(i, j, k) + &one;
                t.set(i, j, k, x);
                if !laws::check_jnp(&out).unwrap().pass {
                    return out;
                }
            }
        }
    }
    panic!("no corruption breaks the axioms");
}

fn criterion_4() -> Outcome {
    let corpus = corpus();
    let mut passes = 0;
    for (name, alg) in &corpus {
        let jnp = laws::check_jnp(alg).unwrap().pass;
        let r = verify_affinization(alg, -2..=2, false).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.verdict.pass == jnp, || format!("{name}: affinization {} vs jnp {jnp}", r.verdict.pass))?;
        ensure(jnp, || format!("{name} is not JNP"))?;
        passes += 1;
    }
    let picks = [
        ("2d-J1[k1=1,k2=0]", Which::Circ),
        ("2d-J3[k1=1,k2=0]", Which::Circ),
        ("3d-J5[k1=1,k2=2,k3=-1]", Which::Circ),
        ("conformal-3d", Which::Circ),
        ("2d-J2[k1=1,k2=-2]", Which::Dot),
    ];
    for (label, which) in picks {
        let alg = &corpus.iter().find(|(n, _)| n == label).ok_or(format!("missing {label}"))?.1;
        let bad = corrupt(alg, which);
        let r = verify_affinization(&bad, -2..=2, false).unwrap();
        ensure(!r.verdict.pass, || format!("corrupted {label} passes affinization"))?;
        ensure(r.verdict.counterexample.is_some(), || format!("corrupted {label}: no witness"))?;
    }
    Ok(format!("{passes} corpus algebras pass, 5 corrupted tensors fail with witnesses"))
}

fn criterion_5() -> Outcome {
    let file = emit("4d-diff-frobenius", None, &assignment(&[])).unwrap();
    let (alg, p, g) = (&file.algebra, file.map("P").unwrap(), file.form().unwrap());
    let f = q();
    let phat = frobenius::adjoint_operator(alg, p, g).unwrap();
    let cols = [
        vecs(f, &["1", "1", "1", "0"]),
        vecs(f, &["0", "2/3", "1/2", "0"]),
        vecs(f, &["0", "0", "1/3", "0"]),
        vecs(f, &["0", "0", "0", "0"]),
    ];
    ensure(phat == Matrix::from_columns(f, 4, &cols), || "adjoint operator differs".into())?;
    let (out, verdict) = frobenius::differential_frobenius_construct(alg, p, g, &s(f, "-1/2")).unwrap();
    let expected = tensor(
        f,
        4,
        &[
            (0, 0, &["-1/2", "-1/2", "-1/2", "0"]),
            (0, 1, &["0", "0", "1/4", "1"]),
            (0, 2, &["0", "0", "1/2", "1"]),
            (0, 3, &["0", "0", "0", "1"]),
            (1, 0, &["0", "-1/2", "-1/2", "-1/2"]),
            (1, 1, &["0", "0", "0", "1/4"]),
            (1, 2, &["0", "0", "0", "1/2"]),
            (2, 0, &["0", "0", "-1/2", "-1/2"]),
            (3, 0, &["0", "0", "0", "-1/2"]),
        ],
    );
    ensure(out.circ.as_ref() == Some(&expected), || "circ table at q = -1/2 differs".into())?;
    let mut products: Vec<(usize, usize)> = expected.nonzero_entries().iter().map(|e| (e.0, e.1)).collect();
    products.dedup();
    ensure(products.len() == 9, || "table transcription".into())?;
    ensure(verdict.pass, || verdict.summary())?;
    let direct = frobenius::check_quadratic(&out, g).unwrap();
    ensure(direct.pass, || direct.summary())?;
    let (zero, v0) = frobenius::differential_frobenius_construct(alg, p, g, &f.zero()).unwrap();
    ensure(!v0.pass && !frobenius::check_quadratic(&zero, g).unwrap().pass, || "q = 0 passes".into())?;
    Ok("adjoint operator and 9-product table match; q = -1/2 quadratic, q = 0 not".into())
}

fn criterion_6() -> Outcome {
    let f = q();
    let a = emit("final-jnp", None, &assignment(&[])).unwrap();
    let b = emit("final-right-jnp", None, &assignment(&[])).unwrap();
    let fj = frobenius::frobenius_jacobi_tensor(&a.algebra, a.form().unwrap(), &b.algebra, b.form().unwrap())
        .map_err(|e| e.to_string())?;
    let dot = tensor(
        f,
        4,
        &[
            (0, 0, &["1", "0", "0", "0"]),
            (0, 1, &["0", "1", "0", "0"]),
            (1, 0, &["0", "1", "0", "0"]),
            (0, 2, &["0", "0", "1", "0"]),
            (2, 0, &["0", "0", "1", "0"]),
            (0, 3, &["0", "0", "0", "1"]),
            (3, 0, &["0", "0", "0", "1"]),
            (1, 2, &["0", "0", "0", "1"]),
            (2, 1, &["0", "0", "0", "1"]),
        ],
    );
    let bracket = tensor(
        f,
        4,
        &[
            (0, 1, &["0", "3", "0", "0"]),
            (1, 0, &["0", "-3", "0", "0"]),
            (0, 2, &["0", "0", "-3", "0"]),
            (2, 0, &["0", "0", "3", "0"]),
            (1, 2, &["0", "0", "0", "3"]),
            (2, 1, &["0", "0", "0", "-3"]),
        ],
    );
    let form = Matrix::from_i64(f, &[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]]);
    ensure(fj.algebra.dot == dot, || "dot differs".into())?;
    ensure(fj.algebra.bracket.as_ref() == Some(&bracket), || "bracket differs".into())?;
    ensure(fj.form == form, || "form differs".into())?;
    ensure(fj.verdict.pass, || fj.verdict.summary())?;
    let jac = laws::check_jacobi(&fj.algebra).unwrap();
    ensure(jac.pass, || jac.summary())?;
    let inv = frobenius::check_frobenius_jacobi(&fj.algebra, &fj.form).unwrap();
    ensure(inv.pass, || inv.summary())?;
    Ok("dot, bracket (coefficient 3) and form match; Jacobi and invariance pass".into())
}

fn criterion_7() -> Outcome {
    let corpus = corpus();
    for (name, alg) in &corpus {
        let ints = frobenius::integral_space(alg).unwrap();
        let forms = frobenius::invariant_form_space(alg).unwrap();
        ensure(ints.len() == forms.len(), || format!("{name}: {} integrals vs {} forms", ints.len(), forms.len()))?;
        for v in &ints {
            let g = frobenius::integral_to_form(alg, v).unwrap();
            ensure(&frobenius::form_to_integral(alg, &g).unwrap() == v, || format!("{name}: v -> B -> v"))?;
        }
        for g in &forms {
            let v = frobenius::form_to_integral(alg, g).unwrap();
            ensure(&frobenius::integral_to_form(alg, &v).unwrap() == g, || format!("{name}: B -> v -> B"))?;
        }
    }
    Ok(format!("{} corpus algebras: dimensions agree, both maps invert", corpus.len()))
}

/// Integrals `Σ c_i v_i` with `c_i ∈ {-2..2}`, enough to hit a nonzero of
/// a determinant of degree at most 4 in each coefficient.
fn integral_grid(alg: &Algebra) -> Vec<Vec<Scalar>> {
    let basis = frobenius::integral_space(alg).unwrap();
    let f = alg.field;
    let mut out = vec![vec![f.zero(); alg.dim]];
    for b in &basis {
        let mut next = Vec::new();
        for v in &out {
            for c in -2..=2 {
                let c = f.from_i64(c);
                next.push(v.iter().zip(b).map(|(x, y)| x + &(&c * y)).collect());
            }
        }
        out = next;
    }
    out
}

fn criterion_8() -> Outcome {
    let labels = [
        "2d-J1[k1=1,k2=0]",
        "2d-J1[k1=1,k2=-2]",
        "2d-J1[k1=0,k2=0]",
        "2d-J2[k1=1,k2=-2]",
        "2d-J3[k1=1,k2=0]",
        "2d-J3[k1=0,k2=0]",
        "3d-J1[k1=1,k2=2,k3=-1]",
        "conformal-3d",
        "poly-truncated[N=3]",
        "final-jnp",
    ];
    let corpus = corpus();
    let (mut yes, mut no) = (0, 0);
    for label in labels {
        let alg = &corpus.iter().find(|(n, _)| n == label).ok_or(format!("missing {label}"))?.1;
        let a = matches!(frobenius::is_frobenius(alg, 1_000_000).unwrap(), FrobeniusAnswer::Yes { .. });
        let grid = integral_grid(alg);
        let b = grid.iter().any(|v| {
            let g = frobenius::gram_of_functional(alg, v).unwrap();
            frobenius::is_nondegenerate(&g) && frobenius::frobenius_pair(alg, v).is_ok()
        });
        let c = grid.iter().any(|v| check_frobenius_via_modules(alg, v).unwrap().pass);
        ensure(a == b && b == c, || format!("{label}: form {a}, pair {b}, modules {c}"))?;
        if a {
            yes += 1;
        } else {
            no += 1;
        }
    }
    ensure(yes > 0 && no > 0, || format!("{yes} Frobenius, {no} not"))?;
    Ok(format!("10 algebras ({yes} Frobenius, {no} not): all three conditions agree"))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let corpus = corpus();
    let partners: Vec<&Algebra> = corpus.iter().filter(|(_, a)| a.dim == 2).map(|(_, a)| a).collect();
    let mut runs = 0;
    let pass = |v: &jnp_core::Verdict, what: &str, name: &str| ensure(v.pass, || format!("{name} {what}: {}", v.summary()));
    for (name, alg) in &corpus {
        let f = alg.field;
        let n = alg.dim;
        let ders = derivation_space(alg, &[Which::Dot]).unwrap();
        let both = derivation_space(alg, &[Which::Dot, Which::Circ]).unwrap();
        let comm = construct::commutator_jacobi(alg).map_err(|e| format!("{name}: {e}"))?;
        pass(&laws::check_jacobi(&comm.output).unwrap(), "commutator", name)?;
        pass(&laws::check_transposed_poisson(&comm.output).unwrap(), "commutator tp", name)?;
        for _ in 0..20 {
            let p = random_combination(&mut rng, f, n, &ders);
            let out = construct::from_derivation(alg, &p).map_err(|e| format!("{name}: {e}"))?;
            pass(&laws::check_jnp(&out.output).unwrap(), "from-derivation", name)?;

            let (part, hom) = admissible_partners(alg, &p).unwrap();
            let qmap = part.unwrap().add(&random_combination(&mut rng, f, n, &hom)).unwrap();
            let qs = s(f, &small_rational(&mut rng));
            let out = construct::circ_q(alg, &p, &qmap, &qs).map_err(|e| format!("{name}: {e}"))?;
            pass(&laws::check_jnp(&out.output).unwrap(), "circ-q", name)?;

            let partner = partners[rng.gen_range(0..partners.len())];
            let out = construct::tensor_jnp(alg, partner).map_err(|e| format!("{name}: {e}"))?;
            pass(&laws::check_jnp(&out.output).unwrap(), "tensor-jnp", name)?;

            let xi = random_vector(&mut rng, f, n);
            let out = construct::xi_shift(alg, &xi).map_err(|e| format!("{name}: {e}"))?;
            pass(&laws::check_jnp(&out.output).unwrap(), "xi-shift", name)?;

            let u = random_vector(&mut rng, f, n);
            let out = construct::kantor_deform(alg, &u).map_err(|e| format!("{name}: {e}"))?;
            pass(&laws::check_jnp(&out.output).unwrap(), "kantor", name)?;

            let d = random_combination(&mut rng, f, n, &both);
            let out = construct::twisted_jacobi(alg, &d).map_err(|e| format!("{name}: {e}"))?;
            pass(&laws::check_jacobi(&out.output).unwrap(), "twisted", name)?;

            let right = partners[rng.gen_range(0..partners.len())].opposite();
            let out = construct::tensor_jacobi(alg, &right).map_err(|e| format!("{name}: {e}"))?;
            pass(&laws::check_jacobi(&out.output).unwrap(), "tensor-jacobi", name)?;

            let u = random_invertible(&mut rng, alg);
            let out = construct::conformal_deform_jacobi(&comm.output, &u).map_err(|e| format!("{name}: {e}"))?;
            pass(&laws::check_jacobi(&out.output).unwrap(), "conformal", name)?;
            runs += 1;
        }
    }
    Ok(format!("{} corpus algebras x 20 parameter draws, 9 constructions each", runs / 20))
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let corpus = corpus();
    let mut rights: Vec<(String, Algebra)> = corpus
        .iter()
        .filter(|(_, a)| a.dim == 2)
        .map(|(n, a)| (format!("op {n}"), a.opposite()))
        .collect();
    rights.push(("final-right-jnp".into(), emit("final-right-jnp", None, &assignment(&[])).unwrap().algebra));
    let mut checked = 0;
    for (an, a) in &corpus {
        for (bn, b) in &rights {
            for _ in 0..5 {
                let u = random_invertible(&mut rng, a);
                let v = random_invertible(&mut rng, b);
                let verdict = construct::check_deformation_compatibility(a, &u, b, &v)
                    .map_err(|e| format!("{an} x {bn}: {e}"))?;
                ensure(verdict.pass, || format!("{an} x {bn}: {}", verdict.summary()))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (A, B, u, v) quadruples compatible"))
}

fn criterion_11() -> Outcome {
    let base = |name: &str| emit(name, None, &assignment(&[])).unwrap().algebra;
    let (a1, a2) = (base("2d-A1"), base("2d-A2"));
    let mut counts = Vec::new();
    for p in [3, 5] {
        let f = Field::Prime(p);
        let r1 = enumerate_jnp(&a1, f, SearchLaw::Jnp, 10_000).unwrap();
        for sol in &r1.solutions {
            let l = projection(sol);
            ensure(l[0] == l[5] && [2, 4, 6, 7].iter().all(|&i| l[i].is_zero()), || {
                format!("A1 over F_{p}: solution outside case 1 shape")
            })?;
        }
        let r2 = enumerate_jnp(&a2, f, SearchLaw::Jnp, 10_000).unwrap();
        for sol in &r2.solutions {
            let l = projection(sol);
            let s12 = &l[0] + &l[1];
            ensure(
                [3, 5, 7].iter().all(|&i| l[i] == s12) && [2, 4, 6].iter().all(|&i| l[i].is_zero()),
                || format!("A2 over F_{p}: solution outside case 2 shape"),
            )?;
        }
        counts.push(format!("F_{p}: {}/{}", r1.count, r2.count));
    }
    for (b, p) in [(&a1, 2), (&a1, 3), (&a2, 2), (&a2, 3)] {
        ensure(cross_check_reduction(b, Field::Prime(p), 10_000).unwrap(), || format!("reduction over F_{p}"))?;
    }
    Ok(format!("shapes hold ({}), reduction cross-check passes for p = 2, 3", counts.join(", ")))
}

fn criterion_12() -> Outcome {
    let quad: Vec<String> = catalog::entries()
        .iter()
        .filter(|e| e.name.starts_with("quad-"))
        .map(|e| e.name.to_string())
        .collect();
    let plan = SamplingPlan {
        entries: quad.clone(),
        ..SamplingPlan::default()
    };
    let report = catalog::verify_catalog(&plan).map_err(|e| e.to_string())?;
    let mut total = 0;
    for e in &report.entries {
        ensure(e.instances > 0, || format!("{}: no admissible samples", e.name))?;
        ensure(e.failures.is_empty(), || format!("{}: {}", e.name, e.failures[0].verdict.summary()))?;
        total += e.instances;
    }
    let mut negatives = 0;
    for k1 in [-1i64, 1, 2] {
        for k2 in [-1i64, 0, 1, 2, 3] {
            if k2 == -2 * k1 {
                continue;
            }
            let file: AlgebraFile =
                emit("2d-J1", None, &assignment(&[("k1", &k1.to_string()), ("k2", &k2.to_string())])).unwrap();
            let ans = frobenius::is_frobenius(&file.algebra, 1_000_000).unwrap();
            ensure(ans == FrobeniusAnswer::No, || format!("J1 k1={k1} k2={k2} is Frobenius"))?;
            negatives += 1;
        }
    }
    Ok(format!("{} rows, {total} instances pass; {negatives} J1 cases correctly not Frobenius", quad.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("classification tables", criterion_1),
        ("char-3 exhaustive", criterion_2),
        ("char-p family", criterion_3),
        ("affinization iff", criterion_4),
        ("4-dim differential Frobenius example", criterion_5),
        ("closing tensor example", criterion_6),
        ("integral/form duality", criterion_7),
        ("Frobenius coherence", criterion_8),
        ("construction closure", criterion_9),
        ("deformation compatibility", criterion_10),
        ("search shape recovery", criterion_11),
        ("quadratic tables", criterion_12),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {:2} PASS  {name}: {detail} ({ms} ms)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:2} FAIL  {name}: {detail} ({ms} ms)", i + 1);
            }
        }
    }
    println!("{} of 12 criteria pass", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
