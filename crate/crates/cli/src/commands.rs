//! One function per verb. Each loads its inputs, calls the library and
//! renders the result; none of them computes anything on its own.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use gyrokit::axioms::{verify_axioms, verify_identities, CheckReport, Window};
use gyrokit::builtin::{self, builtin_finite, Builtin};
use gyrokit::extension::{extract_factor_system, Extension, Section};
use gyrokit::factor::{build_extension, FactorSystem};
use gyrokit::gyrogroup::{FiniteGyrogroup, FiniteMagma, Magma};
use gyrokit::io::{
    extension_to_text, load_extension, parse_morphism, parse_section, resolve_structure,
};
use gyrokit::morphism::{
    induce_fs_morphism, random_section, section_change as change_section,
    verify_extension_morphism, verify_fs_morphism,
};
use gyrokit::semi_cross::{
    enumerate_sigmas, is_split, semi_cross_unchecked, validate_sigma, xyy_mismatches, xyy_table,
    SigmaMap,
};
use gyrokit::structure::{is_normal, quotient as quotient_by};
use gyrokit::{k8, CayleyTable, GyroError, Result, RuleGyrogroup, Subset};
use serde_json::{json, Value};

use crate::report::{checks_text, report_text, table_text, to_json, Outcome};
use crate::Source;

pub struct Context {
    pub seed: u64,
    pub window: i64,
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Reads a table without the identity/Latin checks, so that a defective
/// table still reaches the axiom checks.
fn read_table_lenient(path: &Path) -> Result<CayleyTable> {
    let text = fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e == "json") {
        let v: Value = serde_json::from_str(&text)?;
        let rows: Vec<Vec<usize>> = serde_json::from_value(v["table"].clone())?;
        CayleyTable::from_rows_lenient(rows)
    } else {
        CayleyTable::parse_lenient(&text)
    }
}

enum Loaded {
    Table(FiniteMagma),
    Finite(FiniteGyrogroup),
    Rule(RuleGyrogroup),
}

fn load_any(s: &Source) -> Result<Loaded> {
    match (&s.builtin, &s.table) {
        (Some(name), _) => Ok(match builtin::builtin(name)? {
            Builtin::Finite(g) => Loaded::Finite(g),
            Builtin::Rule(r) => Loaded::Rule(r),
        }),
        (None, Some(path)) => Ok(Loaded::Table(FiniteMagma::new(
            stem(path),
            read_table_lenient(path)?,
        ))),
        (None, None) => Err(GyroError::Parse("give --builtin or --table".into())),
    }
}

fn load_finite(s: &Source) -> Result<FiniteGyrogroup> {
    match (&s.builtin, &s.table) {
        (Some(name), _) => builtin_finite(name),
        (None, Some(path)) => FiniteGyrogroup::new(stem(path), CayleyTable::load(path)?),
        (None, None) => Err(GyroError::Parse("give --builtin or --table".into())),
    }
}

type Suite<M> = fn(&M, &Window<<M as Magma>::Elem>) -> CheckReport<<M as Magma>::Elem>;

fn checked<M: Magma>(
    title: &str,
    m: &M,
    w: &Window<M::Elem>,
    radius: Option<i64>,
    run: Suite<M>,
) -> Outcome {
    let r = run(m, w);
    let passed = r.passed();
    let scope = match radius {
        Some(r) => format!("window |m| ≤ {r}, {} elements", w.elements.len()),
        None => format!("{} elements", w.elements.len()),
    };
    let text = format!(
        "{}\n  ({scope})\nresult: {}",
        report_text(title, &r),
        verdict(passed)
    );
    let json = json!({
        "command": title,
        "structure": r.structure,
        "elements": w.elements.len(),
        "window": radius,
        "passed": passed,
        "checks": to_json(&r.checks),
    });
    Outcome::new(passed, text, json)
}

fn run_on_any(
    ctx: &Context,
    s: &Source,
    title: &str,
    finite: Suite<FiniteMagma>,
    gyro: Suite<FiniteGyrogroup>,
    rule: Suite<RuleGyrogroup>,
) -> Result<Outcome> {
    Ok(match load_any(s)? {
        Loaded::Table(m) => checked(title, &m, &Window::full(m.order()), None, finite),
        Loaded::Finite(g) => checked(title, &g, &Window::full(g.order()), None, gyro),
        Loaded::Rule(r) => {
            let w = r.window(ctx.window);
            checked(title, &r, &w, Some(ctx.window), rule)
        }
    })
}

pub fn verify(ctx: &Context, s: &Source) -> Result<Outcome> {
    run_on_any(
        ctx,
        s,
        "axioms",
        verify_axioms,
        verify_axioms,
        verify_axioms,
    )
}

pub fn identities(ctx: &Context, s: &Source) -> Result<Outcome> {
    run_on_any(
        ctx,
        s,
        "identities",
        verify_identities,
        verify_identities,
        verify_identities,
    )
}

pub fn gyrtab(s: &Source, all: bool) -> Result<Outcome> {
    let g = load_finite(s)?;
    let n = g.order();
    let mut text = format!("gyroautomorphisms of {} ({n} elements)\n", g.name());
    let mut entries = Vec::new();
    let mut nontrivial = 0;
    for a in g.elements() {
        for b in g.elements() {
            let p = g.gyr(a, b)?;
            if !p.is_identity() {
                nontrivial += 1;
            }
            if all || !p.is_identity() {
                let _ = writeln!(text, "gyr[{a},{b}] = {p}");
                entries.push(json!({ "a": a, "b": b, "gyr": p.as_slice() }));
            }
        }
    }
    let _ = write!(text, "{nontrivial} of {} pairs nontrivial", n * n);
    let json = json!({
        "command": "gyrtab",
        "structure": g.name(),
        "nontrivial": nontrivial,
        "pairs": entries,
        "passed": true,
    });
    Ok(Outcome::new(true, text, json))
}

pub fn quotient(s: &Source, subset: &str) -> Result<Outcome> {
    let g = load_finite(s)?;
    let h = Subset::parse(&g, subset)?;
    let normal = is_normal(&g, &h)?;
    let mut text = format!(
        "normality of {:?} in {}\n{}",
        h.elements(),
        g.name(),
        checks_text(normal.checks())
    );
    let mut json = json!({
        "command": "quotient",
        "structure": g.name(),
        "subset": h.elements(),
        "normal": normal.passed(),
        "checks": to_json(&normal.checks()),
        "passed": normal.passed(),
    });
    if normal.passed() {
        let q = quotient_by(&g, &h)?;
        let _ = write!(text, "\ncosets ({}):", q.cosets.len());
        for (i, c) in q.cosets.iter().enumerate() {
            let _ = write!(text, "\n  {i}: {c:?}");
        }
        let rows = q.gyrogroup.table().rows();
        let _ = write!(text, "\nquotient table:\n{}", table_text(&rows));
        json["cosets"] = to_json(&q.cosets);
        json["projection"] = to_json(&q.projection);
        json["table"] = to_json(&rows);
    }
    let _ = write!(text, "\nresult: {}", verdict(normal.passed()));
    Ok(Outcome::new(normal.passed(), text, json))
}

/// A builtin name with exactly this table, if any.
fn builtin_ref(g: &FiniteGyrogroup) -> Option<String> {
    let n = g.order();
    let mut names: Vec<String> = builtin::FINITE.iter().map(|s| s.to_string()).collect();
    names.push(format!("Z{n}"));
    names
        .into_iter()
        .find(|name| builtin_finite(name).is_ok_and(|b| b.table() == g.table()))
}

/// A reference to `g` for a file in `dir`: a builtin name, or a table file
/// written next to it.
fn reference_for(g: &FiniteGyrogroup, dir: &Path, fallback: &str) -> Result<String> {
    if let Some(name) = builtin_ref(g) {
        return Ok(name);
    }
    fs::write(dir.join(fallback), g.table().to_text())?;
    Ok(fallback.to_string())
}

fn section_for(
    ctx: &Context,
    e: &Extension,
    from_file: Option<Section>,
    path: Option<&Path>,
    random: bool,
) -> Result<(Section, String)> {
    if let Some(p) = path {
        let t = parse_section(&fs::read_to_string(p)?, e)?;
        return Ok((t, format!("section from {}", p.display())));
    }
    match from_file {
        Some(t) if !random => Ok((t, "section from the extension file".into())),
        _ => Ok((
            random_section(e, ctx.seed),
            format!("random section, seed {}", ctx.seed),
        )),
    }
}

pub fn extract(
    ctx: &Context,
    extension: &Path,
    section: Option<&Path>,
    random: bool,
) -> Result<Outcome> {
    let (e, t_file) = load_extension(extension)?;
    let (t, origin) = section_for(ctx, &e, t_file, section, random)?;
    let fs = extract_factor_system(&e, &t)?;
    let report = fs.validate();
    let h_ref = builtin_ref(e.h()).unwrap_or_else(|| "H.tbl".into());
    let k_ref = builtin_ref(e.k()).unwrap_or_else(|| "K.tbl".into());
    let passed = report.passed();
    let text = format!(
        "# {origin}: {:?}\n{}\n{}\n# result: {}",
        t.values(),
        fs.to_text(&h_ref, &k_ref).trim_end(),
        report_text("factor system conditions", &report)
            .lines()
            .map(|l| format!("# {l}"))
            .collect::<Vec<_>>()
            .join("\n"),
        verdict(passed)
    );
    let json = json!({
        "command": "extract",
        "seed": ctx.seed,
        "section": t.values(),
        "factor_system": to_json(&fs),
        "checks": to_json(&report.checks),
        "passed": passed,
    });
    Ok(Outcome::new(passed, text, json))
}

pub fn build(path: &Path, out: Option<&Path>) -> Result<Outcome> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let text = fs::read_to_string(path)?;
    let fs = FactorSystem::parse(&text, |r| resolve_structure(r, dir))?;
    let report = fs.validate();
    if !report.passed() {
        let text = format!(
            "{}\nresult: FAIL",
            report_text("factor system conditions", &report)
        );
        let json = json!({
            "command": "build",
            "checks": to_json(&report.checks),
            "passed": false,
        });
        return Ok(Outcome::new(false, text, json));
    }
    let built = build_extension(&fs)?;
    let g = &built.gyrogroup;
    let mut text = format!(
        "{}\n{}\nbuilt {} ({} elements)\n{}",
        report_text("factor system conditions", &report),
        checks_text([&built.gyr_check]),
        g.name(),
        g.order(),
        g.table().to_text().trim_end()
    );
    if let Some(out) = out {
        let out_dir = out.parent().unwrap_or(Path::new("."));
        fs::write(out, g.table().to_text())?;
        let k_ref = reference_for(fs.k(), out_dir, &format!("{}.K.tbl", stem(out)))?;
        let g_ref = out
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let ext_path: PathBuf = out.with_extension("ext");
        fs::write(
            &ext_path,
            extension_to_text(&g_ref, &k_ref, &built.extension, Some(&built.section)),
        )?;
        let _ = write!(text, "\nwrote {} and {}", out.display(), ext_path.display());
    }
    text.push_str("\nresult: PASS");
    let json = json!({
        "command": "build",
        "checks": to_json(&report.checks),
        "gyr_check": to_json(&built.gyr_check),
        "table": to_json(g.table()),
        "section": built.section.values(),
        "passed": true,
    });
    Ok(Outcome::new(true, text, json))
}

fn structure(reference: &str) -> Result<FiniteGyrogroup> {
    resolve_structure(reference, Path::new("."))
}

pub fn semicross(h_ref: &str, k_ref: &str, sigma: Option<&Path>) -> Result<Outcome> {
    let (h, k) = (structure(h_ref)?, structure(k_ref)?);
    let sigma = match sigma {
        Some(p) => SigmaMap::parse(&h, &k, &fs::read_to_string(p)?)?,
        None => SigmaMap::trivial(&h, &k),
    };
    let report = validate_sigma(&h, &k, &sigma);
    let passed = report.passed();
    let mut text = report_text("σ conditions", &report.conditions);
    if let Some(s) = &report.simplified {
        let _ = write!(text, "\nsimplified form:\n{}", checks_text([s]));
    }
    let mut json = json!({
        "command": "semicross",
        "h": h.name(),
        "k": k.name(),
        "sigma": to_json(&sigma),
        "report": to_json(&report),
        "passed": passed,
    });
    if passed {
        let g = semi_cross_unchecked(&h, &k, &sigma)?;
        let _ = write!(
            text,
            "\n{} ({} elements)\n{}",
            g.name(),
            g.order(),
            g.table().to_text().trim_end()
        );
        json["table"] = to_json(g.table());
    }
    let _ = write!(text, "\nresult: {}", verdict(passed));
    Ok(Outcome::new(passed, text, json))
}

pub fn enumerate_sigma(h_ref: &str, k_ref: &str, list: bool) -> Result<Outcome> {
    let (h, k) = (structure(h_ref)?, structure(k_ref)?);
    let e = enumerate_sigmas(&h, &k)?;
    let agree = e.simplified_count.is_none_or(|c| c == e.valid.len());
    let mut text = format!(
        "σ: {} → Aut({})\n  candidates {}\n  valid {}\n  simplified {}",
        k.name(),
        h.name(),
        e.candidates,
        e.valid.len(),
        e.simplified_count
            .map_or("n/a".to_string(), |c| c.to_string())
    );
    if list {
        for (i, s) in e.valid.iter().enumerate() {
            let _ = write!(text, "\n# σ {i}\n{}", s.to_text().trim_end());
        }
    }
    let _ = write!(text, "\nresult: {}", verdict(agree));
    let json = json!({
        "command": "enumerate-sigma",
        "candidates": e.candidates.to_string(),
        "valid": e.valid.len(),
        "simplified": e.simplified_count,
        "sigmas": if list { to_json(&e.valid) } else { Value::Null },
        "passed": agree,
    });
    Ok(Outcome::new(agree, text, json))
}

pub fn split(extension: &Path) -> Result<Outcome> {
    let (e, _) = load_extension(extension)?;
    let found = is_split(&e)?;
    let text = match &found {
        Some(t) => format!("split: homomorphic section {:?}\nresult: PASS", t.values()),
        None => "not split: no homomorphic section\nresult: FAIL".to_string(),
    };
    let json = json!({
        "command": "split",
        "split": found.is_some(),
        "section": found.as_ref().map(|t| t.values().to_vec()),
        "passed": found.is_some(),
    });
    Ok(Outcome::new(found.is_some(), text, json))
}

pub fn morphism(ctx: &Context, source: &Path, target: &Path, file: &Path) -> Result<Outcome> {
    let (e1, t1) = load_extension(source)?;
    let (e2, t2) = load_extension(target)?;
    let m = parse_morphism(&fs::read_to_string(file)?)?;
    let square = verify_extension_morphism(&m, &e1, &e2)?;
    let mut text = report_text("extension morphism", &square);
    let mut json = json!({
        "command": "morphism",
        "seed": ctx.seed,
        "extension_morphism": to_json(&square.checks),
    });
    let mut passed = square.passed();
    if passed {
        let t1 = t1.unwrap_or_else(|| random_section(&e1, ctx.seed));
        let t2 = t2.unwrap_or_else(|| random_section(&e2, ctx.seed.wrapping_add(1)));
        let (induced, equations) = induce_fs_morphism(&m, &e1, &t1, &e2, &t2)?;
        let fs1 = extract_factor_system(&e1, &t1)?;
        let fs2 = extract_factor_system(&e2, &t2)?;
        let gfac = verify_fs_morphism(&induced, &fs1, &fs2)?;
        passed = equations.passed() && gfac.passed();
        let _ = write!(
            text,
            "\nsections {:?} and {:?}\ninduced (ν, g, λ) = ({:?}, {:?}, {:?})\n{}\n{}",
            t1.values(),
            t2.values(),
            induced.nu,
            induced.g,
            induced.lambda,
            report_text("induced equations", &equations),
            report_text("factor-system morphism", &gfac)
        );
        json["induced"] = to_json(&induced);
        json["equations"] = to_json(&equations.checks);
        json["gfac"] = to_json(&gfac.checks);
    }
    json["passed"] = json!(passed);
    let _ = write!(text, "\nresult: {}", verdict(passed));
    Ok(Outcome::new(passed, text, json))
}

pub fn section_change(
    ctx: &Context,
    extension: &Path,
    s: Option<&Path>,
    t: Option<&Path>,
    pairs: usize,
) -> Result<Outcome> {
    let (e, _) = load_extension(extension)?;
    let read = |p: &Path| -> Result<Section> { parse_section(&fs::read_to_string(p)?, &e) };
    let given = (s.map(read).transpose()?, t.map(read).transpose()?);
    let count = if given.0.is_some() && given.1.is_some() {
        1
    } else {
        pairs
    };
    let mut text = format!("section changes on {} (seed {})", e.g().name(), ctx.seed);
    let mut runs = Vec::new();
    let mut passed = true;
    for i in 0..count as u64 {
        let base = ctx.seed.wrapping_add(2 * i);
        let s = given.0.clone().unwrap_or_else(|| random_section(&e, base));
        let t = given
            .1
            .clone()
            .unwrap_or_else(|| random_section(&e, base.wrapping_add(1)));
        let sc = change_section(&e, &s, &t)?;
        passed &= sc.report.passed();
        let _ = write!(
            text,
            "\npair {i}: s = {:?}, t = {:?}, g = {:?}: {}",
            s.values(),
            t.values(),
            sc.g,
            verdict(sc.report.passed())
        );
        if !sc.report.passed() {
            let _ = write!(text, "\n{}", checks_text(&sc.report.checks));
        }
        runs.push(json!({
            "s": s.values(),
            "t": t.values(),
            "g": sc.g,
            "checks": to_json(&sc.report.checks),
            "passed": sc.report.passed(),
        }));
    }
    let _ = write!(text, "\nresult: {}", verdict(passed));
    let json = json!({
        "command": "section-change",
        "seed": ctx.seed,
        "pairs": runs,
        "passed": passed,
    });
    Ok(Outcome::new(passed, text, json))
}

pub fn xyy(s: &Source) -> Result<Outcome> {
    let k = load_finite(s)?;
    let table = xyy_table(&k);
    let mut text = format!("(x ⊕ y) ⊕ y for {}\n{}", k.name(), table_text(&table));
    let mut json = json!({
        "command": "xyy",
        "structure": k.name(),
        "table": table,
        "passed": true,
    });
    if k.table() == &k8::table() {
        let published: Vec<Vec<usize>> = k8::PUBLISHED_XYY.iter().map(|r| r.to_vec()).collect();
        let diffs = xyy_mismatches(&k, &published);
        let _ = write!(
            text,
            "\n{} of 64 cells agree with the published table",
            64 - diffs.len()
        );
        for (x, y, c, p) in &diffs {
            let _ = write!(text, "\n  ({x},{y}): computed {c}, published {p}");
        }
        json["published_mismatches"] = to_json(&diffs);
    }
    Ok(Outcome::new(true, text, json))
}

pub fn builtin(name: Option<&str>, list: bool) -> Result<Outcome> {
    let name = match (name, list) {
        (Some(n), false) => n,
        _ => {
            let text = builtin::NAMES.join("\n");
            return Ok(Outcome::new(
                true,
                text,
                json!({ "command": "builtin", "names": builtin::NAMES, "passed": true }),
            ));
        }
    };
    let (text, json) = match builtin::builtin(name)? {
        Builtin::Finite(g) => {
            let n = g.order();
            let trivial = (0..n).all(|a| (0..n).all(|b| g.gyr_is_trivial(a, b)));
            let nontrivial = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| !g.gyr_is_trivial(a, b))
                .count();
            (
                format!(
                    "{name}: finite, {n} elements, {}, {nontrivial} pairs with nontrivial gyr\n{}",
                    if trivial { "a group" } else { "not a group" },
                    g.table().to_text().trim_end()
                ),
                json!({
                    "command": "builtin",
                    "name": name,
                    "order": n,
                    "group": trivial,
                    "nontrivial_gyr_pairs": nontrivial,
                    "table": to_json(g.table()),
                    "passed": true,
                }),
            )
        }
        Builtin::Rule(r) => {
            let negated: Vec<usize> = (0..r.k().order()).filter(|&x| r.negate()[x]).collect();
            (
                format!(
                    "{name}: rule-backed over ℤ × {}, σ_x = -I for x in {negated:?}",
                    r.k().name()
                ),
                json!({
                    "command": "builtin",
                    "name": name,
                    "k": r.k().name(),
                    "negate_at": negated,
                    "passed": true,
                }),
            )
        }
    };
    Ok(Outcome::new(true, text, json))
}

/// The JSON form is the table alone, so it can be re-imported as a `.json`
/// table file.
pub fn export(s: &Source) -> Result<Outcome> {
    let g = load_finite(s)?;
    let text = g.table().to_text().trim_end().to_string();
    Ok(Outcome::new(true, text, to_json(g.table())))
}
