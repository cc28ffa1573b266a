use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use fincat::cat::{
    cofinal_by_reachability, compare_categories, is_cofinal, is_filtered, is_isomorphism, product_category,
    validate_category, validate_functor, validate_nat_trans, CompareMode, FinCategory, ValidationReport,
};
use fincat::diagram::{
    free_path_category, fun_category_direct, fun_category_pie, fun_category_via_pie, matrix_category,
    quotient_by_relations, rep_category_direct, rep_category_pie, rep_category_via_pie, FiniteField, Fp,
    SUPPORTED_PRIMES,
};
use fincat::factorization::{
    equifier_factorize, inserter_canonical_analysis, inserter_factorize, verify_equifier_certificate,
    verify_inserter_certificate, LiftProblem,
};
use fincat::io::{
    builtin_quiver, canonical_json, category_digest, detect_format, digest_of, load_category_file, parse_json,
    read_text, Bundle, BundleFile, CategoryFile, Provenance, QuiverFile, TwoCategoryFile, TwoFunctorFile,
};
use fincat::limits2::{
    builtin as builtin2, conical_pie, lax_limit_direct, lax_limit_via_pie, oplax_limit_direct, oplax_limit_via_pie,
    pseudo_limit_as_weighted, pseudo_limit_direct, pseudo_limit_via_pie, terminal_weight, validate_two_category,
    validate_two_functor, weighted_pseudolimit, LimitKind, TwoFunctor,
};
use fincat::pie::{
    equifier, inserter, iso_inserter, pseudopullback_direct, pseudopullback_pie, pseudopullback_via_pie, PieOptions,
    ViaPie,
};
use fincat::{Budget, Error, Result};

use crate::report::{Check, InputRecord, Report, ResultSummary};
use crate::{Args, Method, Mode};

/// Input keys of each command, in the order bare values fill them.
fn keys(command: &str) -> &'static [&'static str] {
    match command {
        "validate" => &["file"],
        "product" | "compare" => &["A", "B"],
        "inserter" | "iso-inserter" | "pseudopullback" => &["bundle", "F", "G"],
        "equifier" => &["bundle", "phi", "psi"],
        "funcat" => &["C", "K"],
        "quiver-rep" => &["Q", "p", "d"],
        "laxlim" | "oplaxlim" | "pseudolim" => &["H"],
        "weighted" => &["H", "W"],
        "factorize" => &[
            "bundle",
            "presentation",
            "case",
            "f",
            "phi",
            "psi",
            "F",
            "G",
            "s",
            "t",
            "sigma",
            "object",
            "context",
        ],
        "cofinal" => &["bundle", "functor"],
        "filtered" => &["C"],
        _ => &[],
    }
}

fn has_methods(command: &str) -> bool {
    matches!(
        command,
        "pseudopullback" | "funcat" | "quiver-rep" | "laxlim" | "oplaxlim" | "pseudolim"
    )
}

fn parse_params(command: &str, raw: &[String]) -> Result<BTreeMap<String, String>> {
    let allowed = keys(command);
    let mut out = BTreeMap::new();
    let mut next_bare = 0;
    for p in raw {
        let (k, v) = match p.split_once('=') {
            Some((k, v)) => (k.to_owned(), v.to_owned()),
            None => {
                let k = allowed
                    .iter()
                    .filter(|k| !out.contains_key(**k))
                    .nth(0)
                    .filter(|_| next_bare < allowed.len())
                    .ok_or_else(|| Error::Input(format!("unexpected argument {p}")))?;
                next_bare += 1;
                (k.to_string(), p.clone())
            }
        };
        if !allowed.contains(&k.as_str()) {
            return Err(Error::Input(format!("{command} takes no input {k}")));
        }
        if out.insert(k.clone(), v).is_some() {
            return Err(Error::Input(format!("input {k} given twice")));
        }
    }
    Ok(out)
}

fn is_path(v: &str) -> bool {
    v.ends_with(".json") || v.contains('/')
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Direct => "direct",
        Method::Pie => "pie",
        Method::Both => "both",
    }
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Iso => "iso",
        Mode::Equivalence => "equivalence",
    }
}

fn violations(r: &ValidationReport) -> Vec<String> {
    r.violations
        .iter()
        .map(|v| format!("{}({})", v.law, v.witness.join(",")))
        .collect()
}

struct Ctx<'a> {
    command: &'static str,
    args: &'a Args,
    params: BTreeMap<String, String>,
    budget: Budget,
    report: Report,
    first: Option<Arc<FinCategory>>,
}

impl Ctx<'_> {
    fn get(&self, k: &str) -> Result<&str> {
        self.params
            .get(k)
            .map(String::as_str)
            .ok_or_else(|| Error::Input(format!("{} needs input {k}", self.command)))
    }

    fn opt(&self, k: &str) -> Option<&str> {
        self.params.get(k).map(String::as_str)
    }

    fn record(&mut self, key: &str, source: String, digest: String) {
        self.report
            .provenance
            .inputs
            .insert(key.to_owned(), InputRecord { source, digest });
    }

    fn category(&mut self, key: &str) -> Result<Arc<FinCategory>> {
        let v = self.get(key)?.to_owned();
        if is_path(&v) {
            let (file, c) = load_category_file(Path::new(&v), None)?;
            self.record(key, format!("file:{v}"), digest_of(&file));
            Ok(Arc::new(c))
        } else {
            let c = fincat::cat::builtin::by_name(&v)
                .ok_or_else(|| Error::Input(format!("unknown builtin category {v}")))?;
            self.record(key, format!("builtin:{v}"), category_digest(&c));
            Ok(Arc::new(c))
        }
    }

    fn bundle(&mut self) -> Result<Bundle> {
        let v = self.get("bundle")?.to_owned();
        let path = PathBuf::from(&v);
        let file: BundleFile = parse_json(&read_text(&path)?, &v)?;
        let b = file.load(path.parent().unwrap_or(Path::new(".")))?;
        self.record("bundle", format!("file:{v}"), digest_of(&file));
        Ok(b)
    }

    fn two_functor(&mut self, key: &str) -> Result<TwoFunctor> {
        let v = self.get(key)?.to_owned();
        let (h, source) = if is_path(&v) {
            let path = PathBuf::from(&v);
            let file: TwoFunctorFile = parse_json(&read_text(&path)?, &v)?;
            (file.load(path.parent().unwrap_or(Path::new(".")))?, format!("file:{v}"))
        } else {
            let h =
                builtin2::functor_by_name(&v).ok_or_else(|| Error::Input(format!("unknown builtin 2-functor {v}")))?;
            (h, format!("builtin:{v}"))
        };
        self.record(key, source, digest_of(&TwoFunctorFile::from_two_functor(&h)));
        Ok(h)
    }

    fn quiver(&mut self, key: &str) -> Result<QuiverFile> {
        let v = self.get(key)?.to_owned();
        let (q, source) = if is_path(&v) {
            (parse_json(&read_text(Path::new(&v))?, &v)?, format!("file:{v}"))
        } else {
            let q = builtin_quiver(&v).ok_or_else(|| Error::Input(format!("unknown builtin quiver {v}")))?;
            (q, format!("builtin:{v}"))
        };
        self.record(key, source, digest_of(&q));
        Ok(q)
    }

    fn result(&mut self, label: &str, c: &Arc<FinCategory>) {
        self.report.results.push(ResultSummary {
            label: label.to_owned(),
            objects: c.num_objects(),
            morphisms: c.num_morphisms(),
            digest: category_digest(c),
        });
        if self.first.is_none() {
            self.first = Some(c.clone());
        }
    }

    fn check(&mut self, name: &str, holds: bool, witness: Vec<String>) {
        self.report.checks.push(Check {
            name: name.to_owned(),
            holds,
            witness,
        });
    }

    fn validation(&mut self, name: &str, r: &ValidationReport) {
        self.check(name, r.ok, violations(r));
    }

    fn stages(&mut self, stages: &[(String, usize, usize)]) {
        let v: Vec<serde_json::Value> = stages
            .iter()
            .map(|(n, o, m)| serde_json::json!({"stage": n, "objects": o, "morphisms": m}))
            .collect();
        self.report.payload = Some(serde_json::json!({ "stages": v }));
    }

    /// Records a direct-vs-PIE pair and their agreement in the chosen mode.
    fn compare_methods(&mut self, via: ViaPie) -> Result<()> {
        self.result("direct", &via.direct);
        self.result("pie", &via.category);
        let holds = match self.args.mode {
            Mode::Iso => via.witness_is_iso,
            Mode::Equivalence => {
                compare_categories(&via.direct, &via.category, CompareMode::Equivalence, &self.budget)?.holds
            }
        };
        self.check("direct agrees with pie", holds, Vec::new());
        self.stages(&via.stages);
        Ok(())
    }

    /// Dispatches on `--method` for constructions with both routes.
    fn methods(
        &mut self,
        direct: impl FnOnce(&Budget) -> Result<Arc<FinCategory>>,
        pie: impl FnOnce(&Budget) -> Result<(Arc<FinCategory>, Vec<(String, usize, usize)>)>,
        both: impl FnOnce(&Budget) -> Result<ViaPie>,
    ) -> Result<()> {
        let budget = self.budget;
        match self.args.method {
            Method::Direct => {
                let c = direct(&budget)?;
                self.result("direct", &c);
            }
            Method::Pie => {
                let (c, stages) = pie(&budget)?;
                self.result("pie", &c);
                self.stages(&stages);
            }
            Method::Both => self.compare_methods(both(&budget)?)?,
        }
        Ok(())
    }
}

fn execute(command: &'static str, args: &Args) -> Result<(Report, Option<Arc<FinCategory>>)> {
    let params = parse_params(command, &args.params)?;
    if !has_methods(command) && args.method != Method::Direct {
        return Err(Error::Input(format!("{command} has only a direct construction")));
    }
    let mut ctx = Ctx {
        command,
        args,
        params,
        budget: Budget {
            candidates: args.budget,
            table_entries: args.table_budget,
        },
        report: Report::new(command),
        first: None,
    };
    if has_methods(command) {
        ctx.report.provenance.method = Some(method_name(args.method).to_owned());
    }
    if command == "compare" || (has_methods(command) && args.method == Method::Both) {
        ctx.report.provenance.mode = Some(mode_name(args.mode).to_owned());
    }
    match command {
        "validate" => validate(&mut ctx)?,
        "product" => {
            let (a, b) = (ctx.category("A")?, ctx.category("B")?);
            let p = product_category(&[a, b], &ctx.budget)?;
            ctx.result("product", &p.category);
        }
        "inserter" | "iso-inserter" => {
            let b = ctx.bundle()?;
            let (f, g) = (b.functor(ctx.get("F")?)?, b.functor(ctx.get("G")?)?);
            let ins = if command == "inserter" {
                inserter(f, g, &ctx.budget)?
            } else {
                iso_inserter(f, g, &ctx.budget)?
            };
            ctx.result(command, &ins.category);
        }
        "equifier" => {
            let b = ctx.bundle()?;
            let (phi, psi) = (b.transformation(ctx.get("phi")?)?, b.transformation(ctx.get("psi")?)?);
            let view = equifier(phi, psi)?;
            let sub = view.materialize("equifier")?;
            ctx.result("equifier", &Arc::new(sub.category));
        }
        "pseudopullback" => {
            let b = ctx.bundle()?;
            let (f, g) = (b.functor(ctx.get("F")?)?.clone(), b.functor(ctx.get("G")?)?.clone());
            ctx.methods(
                |bu| Ok(pseudopullback_direct(&f, &g, bu)?.category),
                |bu| {
                    let build = pseudopullback_pie(&f, &g, &PieOptions::default(), bu)?.0;
                    Ok((build.category, build.stages))
                },
                |bu| pseudopullback_via_pie(&f, &g, bu),
            )?;
        }
        "funcat" => {
            let (c, k) = (ctx.category("C")?, ctx.category("K")?);
            ctx.methods(
                |bu| Ok(fun_category_direct(&c, &k, bu)?.category),
                |bu| {
                    let build = fun_category_pie(&c, &k, &PieOptions::default(), bu)?.0;
                    Ok((build.category, build.stages))
                },
                |bu| fun_category_via_pie(&c, &k, bu),
            )?;
        }
        "quiver-rep" => quiver_rep(&mut ctx)?,
        "laxlim" | "oplaxlim" | "pseudolim" => {
            let h = ctx.two_functor("H")?;
            let kind = match command {
                "laxlim" => LimitKind::Lax,
                "oplaxlim" => LimitKind::Oplax,
                _ => LimitKind::Pseudo,
            };
            ctx.methods(
                |bu| {
                    Ok(match kind {
                        LimitKind::Lax => lax_limit_direct(&h, bu)?,
                        LimitKind::Oplax => oplax_limit_direct(&h, bu)?,
                        LimitKind::Pseudo => pseudo_limit_direct(&h, bu)?,
                    }
                    .category)
                },
                |bu| {
                    let build = conical_pie(&h, kind, &PieOptions::default(), bu)?.0;
                    Ok((build.category, build.stages))
                },
                |bu| match kind {
                    LimitKind::Lax => lax_limit_via_pie(&h, bu),
                    LimitKind::Oplax => oplax_limit_via_pie(&h, bu),
                    LimitKind::Pseudo => pseudo_limit_via_pie(&h, bu),
                },
            )?;
        }
        "weighted" => weighted(&mut ctx)?,
        "factorize" => factorize(&mut ctx)?,
        "cofinal" => {
            let b = ctx.bundle()?;
            let delta = b.functor(ctx.get("functor")?)?;
            let v = is_cofinal(delta);
            if let Some(r) = cofinal_by_reachability(delta) {
                ctx.check("reachability criterion agrees", r.holds == v.holds, Vec::new());
            }
            ctx.check("cofinal", v.holds, v.witness);
        }
        "filtered" => {
            let c = ctx.category("C")?;
            let v = is_filtered(&c);
            ctx.check("filtered", v.holds, v.witness);
        }
        "compare" => {
            let (a, b) = (ctx.category("A")?, ctx.category("B")?);
            let (mode, name) = match args.mode {
                Mode::Iso => (CompareMode::Iso, "isomorphic"),
                Mode::Equivalence => (CompareMode::Equivalence, "equivalent"),
            };
            let r = compare_categories(&a, &b, mode, &ctx.budget)?;
            if let Some(w) = &r.witness {
                let map: BTreeMap<&str, &str> = a
                    .objects()
                    .map(|x| (a.object_name(x), b.object_name(w.obj(x))))
                    .collect();
                ctx.report.payload = Some(serde_json::json!({ "objects": map }));
            }
            ctx.check(name, r.holds, Vec::new());
        }
        _ => unreachable!("unknown command {command}"),
    }
    Ok((ctx.report, ctx.first))
}

fn validate(ctx: &mut Ctx) -> Result<()> {
    let v = ctx.get("file")?.to_owned();
    let path = PathBuf::from(&v);
    let text = read_text(&path)?;
    let format = detect_format(&text, &v)?;
    let source = format!("file:{v}");
    let base = path.parent().unwrap_or(Path::new(".")).to_owned();
    match format.as_str() {
        "category" => {
            let mut file: CategoryFile = parse_json(&text, &v)?;
            file.canonicalize();
            ctx.record("file", source, digest_of(&file));
            let c = Arc::new(file.to_category()?);
            ctx.result("category", &c);
            let r = validate_category(&c);
            ctx.validation("category laws", &r);
        }
        "bundle" => {
            let file: BundleFile = parse_json(&text, &v)?;
            ctx.record("file", source, digest_of(&file));
            let b = file.load(&base)?;
            for (k, c) in &b.categories {
                ctx.validation(&format!("category {k}"), &validate_category(c));
            }
            for (k, f) in &b.functors {
                ctx.validation(&format!("functor {k}"), &validate_functor(f));
            }
            for (k, t) in &b.transformations {
                ctx.validation(&format!("transformation {k}"), &validate_nat_trans(t));
            }
            for (k, p) in &b.presentations {
                ctx.validation(&format!("presentation {k}"), &p.validate());
            }
        }
        "two-category" => {
            let mut file: TwoCategoryFile = parse_json(&text, &v)?;
            file.canonicalize();
            ctx.record("file", source, digest_of(&file));
            let g = file.to_two_category()?;
            ctx.validation("2-category laws", &validate_two_category(&g));
        }
        "two-functor" => {
            let file: TwoFunctorFile = parse_json(&text, &v)?;
            let h = file.load(&base)?;
            ctx.record("file", source, digest_of(&TwoFunctorFile::from_two_functor(&h)));
            ctx.validation("2-category laws", &validate_two_category(h.source()));
            ctx.validation("2-functor laws", &validate_two_functor(&h));
        }
        "quiver" => {
            let file: QuiverFile = parse_json(&text, &v)?;
            ctx.record("file", source, digest_of(&file));
            let q = file.to_quiver()?;
            file.relations::<i64>(&q)?;
            ctx.check("acyclic", q.is_acyclic(), Vec::new());
        }
        other => return Err(Error::Parse(format!("{v}: unknown format {other}"))),
    }
    Ok(())
}

fn rep_with<F: FiniteField>(ctx: &mut Ctx, file: &QuiverFile, d: usize) -> Result<()> {
    let q = file.to_quiver()?;
    let rels = file.relations::<F>(&q)?;
    let a = quotient_by_relations(&free_path_category::<F>(Arc::new(q))?, rels)?;
    let m = matrix_category::<F>(d, &ctx.budget)?;
    ctx.methods(
        |bu| Ok(rep_category_direct(&a, &m, bu)?.category),
        |bu| {
            let build = rep_category_pie(&a, &m, &PieOptions::default(), bu)?.0;
            Ok((build.category, build.stages))
        },
        |bu| rep_category_via_pie(&a, &m, bu),
    )
}

fn quiver_rep(ctx: &mut Ctx) -> Result<()> {
    let file = ctx.quiver("Q")?;
    let num = |ctx: &Ctx, k: &str, default: usize| -> Result<usize> {
        match ctx.opt(k) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| Error::Input(format!("{k} must be a natural number, got {v}"))),
        }
    };
    let (p, d) = (num(ctx, "p", 2)?, num(ctx, "d", 1)?);
    let params = &mut ctx.report.provenance.parameters;
    params.insert("p".to_owned(), p.to_string());
    params.insert("d".to_owned(), d.to_string());
    match p {
        2 => rep_with::<Fp<2>>(ctx, &file, d),
        3 => rep_with::<Fp<3>>(ctx, &file, d),
        5 => rep_with::<Fp<5>>(ctx, &file, d),
        7 => rep_with::<Fp<7>>(ctx, &file, d),
        11 => rep_with::<Fp<11>>(ctx, &file, d),
        13 => rep_with::<Fp<13>>(ctx, &file, d),
        _ => Err(Error::Unsupported(format!(
            "no field with {p} elements; supported: {SUPPORTED_PRIMES:?}"
        ))),
    }
}

fn weighted(ctx: &mut Ctx) -> Result<()> {
    let h = ctx.two_functor("H")?;
    let gamma = h.source().clone();
    let w = match ctx.opt("W") {
        Some(_) => ctx.two_functor("W")?,
        None => terminal_weight(&gamma),
    };
    let lim = weighted_pseudolimit(&w, &h, &ctx.budget)?;
    ctx.result("weighted", &lim.category);
    if ctx.opt("W").is_none() {
        let (conical, _, witness) = pseudo_limit_as_weighted(&h, &ctx.budget)?;
        ctx.result("pseudolimit", &conical.category);
        ctx.check(
            "terminal weight gives the pseudolimit",
            is_isomorphism(&witness),
            Vec::new(),
        );
    }
    let g = gamma.underlying();
    if g.num_objects() == 1 && g.num_morphisms() == 1 && gamma.num_cells() == 1 {
        let x = fincat::ObjId(0);
        let fun = fun_category_direct(w.obj(x), h.obj(x), &ctx.budget)?;
        ctx.result("functor category", &fun.category);
        let r = compare_categories(&lim.category, &fun.category, CompareMode::Iso, &ctx.budget)?;
        ctx.check("terminal shape gives the functor category", r.holds, Vec::new());
    }
    Ok(())
}

fn factorize(ctx: &mut Ctx) -> Result<()> {
    let b = ctx.bundle()?;
    let case = ctx.get("case")?.to_owned();
    ctx.report.provenance.parameters.insert("case".to_owned(), case.clone());
    let mor = |c: &FinCategory, k: &str, v: &str| {
        c.morphism_id(v)
            .ok_or_else(|| Error::Input(format!("{k}: unknown morphism {v}")))
    };
    match case.as_str() {
        "equifier" => {
            let p = b.presentation(ctx.get("presentation")?)?;
            let (phi, psi) = (b.transformation(ctx.get("phi")?)?, b.transformation(ctx.get("psi")?)?);
            let f = mor(p.target(), "f", ctx.get("f")?)?;
            let cert = equifier_factorize(f, phi, psi, p)?;
            let r = verify_equifier_certificate(&cert, f, phi, psi, p);
            ctx.validation("certificate verifies", &r);
            let rec = cert.record(p, Some(phi.target().target()));
            ctx.report.payload = Some(serde_json::to_value(rec).expect("record serializes"));
        }
        "inserter" => {
            let p = b.presentation(ctx.get("presentation")?)?;
            let (f, g) = (b.functor(ctx.get("F")?)?, b.functor(ctx.get("G")?)?);
            let (k, l) = (f.source(), f.target());
            let q = LiftProblem {
                s: mor(k, "s", ctx.get("s")?)?,
                t: mor(k, "t", ctx.get("t")?)?,
                sigma: mor(l, "sigma", ctx.get("sigma")?)?,
                phi: mor(l, "phi", ctx.get("phi")?)?,
            };
            let cert = inserter_factorize(f, g, &q, p)?;
            let r = verify_inserter_certificate(&cert, f, g, &q, p);
            ctx.validation("certificate verifies", &r);
            let rec = cert.record(p, Some(l));
            ctx.report.payload = Some(serde_json::to_value(rec).expect("record serializes"));
        }
        "analysis" => {
            let (f, g) = (b.functor(ctx.get("F")?)?, b.functor(ctx.get("G")?)?);
            let cx = b.context(ctx.get("context")?)?;
            let ins = inserter(f, g, &ctx.budget)?;
            let name = ctx.get("object")?;
            let e = ins
                .category
                .object_id(name)
                .ok_or_else(|| Error::Input(format!("object: {name} is not an object of the inserter")))?;
            let a = inserter_canonical_analysis(&ins, e, cx)?;
            ctx.result("inserter", &ins.category);
            ctx.check(
                "canonical diagram is filtered",
                a.filtered.holds,
                a.filtered.witness.clone(),
            );
            ctx.check("comparison is cofinal", a.cofinal.holds, a.cofinal.witness.clone());
            ctx.report.payload = Some(serde_json::to_value(a.summary()).expect("summary serializes"));
        }
        other => {
            return Err(Error::Input(format!(
                "case must be equifier, inserter or analysis, got {other}"
            )))
        }
    }
    Ok(())
}

/// Runs one command: builds the report, applies `--seedless`, `--timing`
/// and `--emit`.
pub fn run(command: &'static str, args: &Args) -> Result<Report> {
    let start = Instant::now();
    let (mut report, first) = execute(command, args)?;
    let elapsed = start.elapsed();
    if args.seedless {
        let (again, _) = execute(command, args)?;
        let same = canonical_json(&again) == canonical_json(&report);
        report.checks.push(Check {
            name: "deterministic".to_owned(),
            holds: same,
            witness: Vec::new(),
        });
    }
    if let Some(path) = &args.emit {
        let c = first.ok_or_else(|| Error::Input(format!("{command} constructs no category to emit")))?;
        let mut file = CategoryFile::from_category(&c);
        file.provenance = Some(Provenance {
            construction: command.to_owned(),
            method: report.provenance.method.clone(),
            inputs: report
                .provenance
                .inputs
                .iter()
                .map(|(k, v)| (k.clone(), v.digest.clone()))
                .collect(),
        });
        std::fs::write(path, canonical_json(&file))
            .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    if args.timing {
        let mut t = BTreeMap::new();
        t.insert("total".to_owned(), elapsed.as_secs_f64() * 1000.0);
        report.timing_ms = Some(t);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_values_fill_keys_in_order() {
        let p = parse_params("funcat", &["arrow".into(), "sets1".into()]).unwrap();
        assert_eq!(p["C"], "arrow");
        assert_eq!(p["K"], "sets1");
        let p = parse_params("funcat", &["K=sets1".into(), "arrow".into()]).unwrap();
        assert_eq!(p["C"], "arrow");
        assert!(parse_params("funcat", &["X=1".into()]).is_err());
        assert!(parse_params("filtered", &["a".into(), "b".into()]).is_err());
    }
}
