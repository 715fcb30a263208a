use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use super::report::matrix_json;
use super::{Command, Failure, GenKind, Report, RunConfig, Status};
use crate::cubechain::build_complex;
use crate::exactseq::{
    check_relative_pair, good_cover_check, les_relative, mayer_vietoris, relative_complex, ExactSequenceReport,
    RelativePairReport,
};
use crate::ez::{degree_zero_obstruction, ez_verify, kunneth_check};
use crate::graded::Quiver;
use crate::homology::{cochain_dual, homology_table};
use crate::precubical::{
    directed_disc, directed_segment, directed_sphere, domino, point, realization, standard_cube, sub, tensor,
    validate, PrecubicalSet, SubsetSpec,
};
use crate::scalars::extend_subcomplex;

/// Printed wherever degree-1 values appear.
pub const SHIFT_NOTE: &str = "degrees are unshifted: H_i is built from cube chains of dimension i, the sum of \
(n_k - 1) over the cubes; conventions that shift the complex by one place report other degree-1 values";

pub fn dispatch(cmd: &Command, cfg: &RunConfig, warnings: &mut Vec<String>) -> Result<Report, Failure> {
    match cmd {
        Command::Validate { path } => cmd_validate(path),
        Command::Homology { path, actions } => cmd_homology(&load_valid(path)?, cfg, *actions),
        Command::Cohomology { path } => cmd_cohomology(&load_valid(path)?, cfg),
        Command::Relative { path, subset } => {
            let x = load_valid(path)?;
            let y = parse_subset(&x, subset, cfg, warnings)?;
            cmd_relative(&x, &y, cfg)
        }
        Command::CheckPair { path, subset } => {
            let x = load_valid(path)?;
            let y = parse_subset(&x, subset, cfg, warnings)?;
            cmd_check_pair(&x, &y, cfg)
        }
        Command::Mv { path, x1, x2 } => {
            let x = load_valid(path)?;
            let a = parse_subset(&x, x1, cfg, warnings)?;
            let b = parse_subset(&x, x2, cfg, warnings)?;
            cmd_mv(&x, &a, &b, cfg)
        }
        Command::Kunneth { x, y, obstruction } => cmd_kunneth(&load_valid(x)?, &load_valid(y)?, cfg, *obstruction),
        Command::Generate { kind, params, out } => cmd_generate(*kind, params, out.as_deref()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<PrecubicalSet, Failure> {
    PrecubicalSet::from_json(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_valid(path: &Path) -> Result<PrecubicalSet, Failure> {
    let x = load(path)?;
    let violations = validate(&x);
    if let Some(v) = violations.first() {
        return Err(Failure::input(format!("{}: not a valid acyclic precubical set: {v}", path.display())));
    }
    Ok(x)
}

/// Inline JSON list of cell ids, or a path to a file holding one.
fn parse_subset(
    x: &PrecubicalSet,
    arg: &str,
    cfg: &RunConfig,
    warnings: &mut Vec<String>,
) -> Result<SubsetSpec, Failure> {
    let text = if arg.trim_start().starts_with('[') { arg.to_string() } else { read(Path::new(arg))? };
    let ids: Vec<String> =
        serde_json::from_str(&text).map_err(|e| Failure::input(format!("subset must be a JSON list of cell ids: {e}")))?;
    let names: Vec<&str> = ids.iter().map(String::as_str).collect();
    if cfg.strict {
        return Ok(SubsetSpec::new(x, &names)?);
    }
    let (spec, completed) = SubsetSpec::closure_of(x, &names)?;
    if completed {
        warnings.push(format!("subset {arg} completed to its face closure ({} cells)", spec.len()));
    }
    Ok(spec)
}

/// Splits `s,e` at the first comma outside parentheses, so tensor vertex names work.
pub fn split_pair(p: &str) -> Option<(String, String)> {
    let mut depth = 0i32;
    for (i, ch) in p.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((p[..i].trim().to_string(), p[i + 1..].trim().to_string())),
            _ => {}
        }
    }
    None
}

/// The pairs to report: all of `pairs`, or the one named by `--pair`.
fn select(q: &Quiver, pairs: Vec<(usize, usize)>, cfg: &RunConfig) -> Result<Vec<(usize, usize)>, Failure> {
    let Some((s, e)) = &cfg.pair else { return Ok(pairs) };
    let (s, e) = (q.vertex(s)?, q.vertex(e)?);
    if !pairs.contains(&(s, e)) {
        return Err(Failure::input(format!(
            "no directed path from {} to {}",
            q.vertex_name(s),
            q.vertex_name(e)
        )));
    }
    Ok(vec![(s, e)])
}

fn names(q: &Quiver, s: usize, e: usize) -> (String, String) {
    (q.vertex_name(s).to_string(), q.vertex_name(e).to_string())
}

fn dims_line(prefix: &str, dims: &[usize]) -> String {
    dims.iter().enumerate().map(|(i, d)| format!("{prefix}{i}: {d}")).collect::<Vec<_>>().join(", ")
}

fn cmd_validate(path: &Path) -> Result<Report, Failure> {
    let x = load(path)?;
    let violations: Vec<String> = validate(&x).iter().map(ToString::to_string).collect();
    let valid = violations.is_empty();
    let mut text = format!("{}: cell counts {:?}\n", x.name(), x.counts());
    if valid {
        text.push_str("valid\n");
    } else {
        text.push_str("invalid\n");
        for v in &violations {
            text.push_str(&format!("  {v}\n"));
        }
    }
    let mut table = vec![vec!["violation".to_string()]];
    table.extend(violations.iter().map(|v| vec![v.clone()]));
    Ok(Report {
        json: json!({
            "schema": "dihom.validate.v1",
            "set": x.name(),
            "counts": x.counts(),
            "valid": valid,
            "violations": violations,
        }),
        text,
        table,
        status: if valid { Status::Ok } else { Status::Negative },
    })
}

fn cmd_homology(x: &PrecubicalSet, cfg: &RunConfig, actions: bool) -> Result<Report, Failure> {
    let cx = build_complex(x, cfg.max_degree, cfg.field)?;
    let h = homology_table(&cx.complex)?;
    let q = cx.complex.quiver();
    let pairs = select(q, h.pairs(), cfg)?;
    let mut text = format!("homology of {} over {}, degrees 0..={}\n", x.name(), cfg.field, cfg.max_degree);
    let mut rows = Vec::new();
    let mut table = vec![vec!["src".into(), "dst".into(), "degree".into(), "dim".into()]];
    for &(s, e) in &pairs {
        let (sn, en) = names(q, s, e);
        let dims: Vec<usize> = (0..=cfg.max_degree).map(|i| h.dim(i, s, e)).collect();
        text.push_str(&format!("({sn},{en}) {}\n", dims_line("H", &dims)));
        for (i, d) in dims.iter().enumerate() {
            table.push(vec![sn.clone(), en.clone(), i.to_string(), d.to_string()]);
        }
        rows.push(json!({ "src": sn, "dst": en, "dims": dims }));
    }
    text.push_str(&format!("note: {SHIFT_NOTE}\n"));
    let mut doc = json!({
        "schema": "dihom.homology.v1",
        "set": x.name(),
        "field": cfg.field.to_string(),
        "max_degree": cfg.max_degree,
        "convention": SHIFT_NOTE,
        "pairs": rows,
    });
    if actions {
        let mut acts = Vec::new();
        for a in 0..q.arc_count() {
            let (u, v) = q.arc(a);
            for &(s, e) in &pairs {
                for i in 0..=cfg.max_degree {
                    if s == v && h.dim(i, s, e) > 0 {
                        acts.push(json!({
                            "edge": q.arc_name(a), "side": "left", "degree": i,
                            "from": [q.vertex_name(s), q.vertex_name(e)], "to": [q.vertex_name(u), q.vertex_name(e)],
                            "matrix": matrix_json(&h.left_action(a, i, e)),
                        }));
                    }
                    if e == u && h.dim(i, s, e) > 0 {
                        acts.push(json!({
                            "edge": q.arc_name(a), "side": "right", "degree": i,
                            "from": [q.vertex_name(s), q.vertex_name(e)], "to": [q.vertex_name(s), q.vertex_name(v)],
                            "matrix": matrix_json(&h.right_action(a, i, s)),
                        }));
                    }
                }
            }
        }
        text.push_str(&format!("{} action matrices (use --format json to see them)\n", acts.len()));
        doc["actions"] = Value::Array(acts);
    }
    Ok(Report { json: doc, text, table, status: Status::Ok })
}

fn cmd_cohomology(x: &PrecubicalSet, cfg: &RunConfig) -> Result<Report, Failure> {
    let cx = build_complex(x, cfg.max_degree, cfg.field)?;
    let dual = cochain_dual(&cx.complex);
    let q = cx.complex.quiver();
    let pairs = select(q, cx.complex.pairs().collect(), cfg)?;
    let mut text = format!("cohomology of {} over {}, degrees 0..={}\n", x.name(), cfg.field, cfg.max_degree);
    let mut rows = Vec::new();
    let mut table = vec![vec!["src".into(), "dst".into(), "degree".into(), "dim".into()]];
    for &(s, e) in &pairs {
        let (sn, en) = names(q, s, e);
        let dims = (0..=cfg.max_degree).map(|i| dual.cohomology_dim(i, s, e)).collect::<Result<Vec<_>, _>>()?;
        text.push_str(&format!("({sn},{en}) {}\n", dims_line("H^", &dims)));
        for (i, d) in dims.iter().enumerate() {
            table.push(vec![sn.clone(), en.clone(), i.to_string(), d.to_string()]);
        }
        rows.push(json!({ "src": sn, "dst": en, "dims": dims }));
    }
    text.push_str(&format!("note: {SHIFT_NOTE}\n"));
    Ok(Report {
        json: json!({
            "schema": "dihom.cohomology.v1",
            "set": x.name(),
            "field": cfg.field.to_string(),
            "max_degree": cfg.max_degree,
            "convention": SHIFT_NOTE,
            "pairs": rows,
        }),
        text,
        table,
        status: Status::Ok,
    })
}

fn pair_text(r: &RelativePairReport) -> String {
    let mut t = format!("relative pair: {}\n", if r.accepted { "accepted" } else { "rejected" });
    match &r.offending_path {
        None => t.push_str("  path criterion: ok\n"),
        Some(p) => t.push_str(&format!("  path criterion fails along {}\n", p.join(" -> "))),
    }
    if r.monic {
        t.push_str("  extension injective: ok\n");
    }
    for m in &r.monic_failures {
        t.push_str(&format!(
            "  extension not injective in degree {} at ({},{}): presented {}, image {}\n",
            m.degree, m.src, m.dst, m.presented, m.subspace
        ));
    }
    t
}

fn sequence_text(r: &ExactSequenceReport, cfg: &RunConfig, name: &str) -> String {
    let mut t = String::new();
    let failures: Vec<_> = r.sequences.iter().filter(|s| !s.exact()).collect();
    if failures.is_empty() {
        t.push_str(&format!("{name}: exact at every checked node ({} pairs)\n", r.sequences.len()));
    } else {
        for s in failures {
            let bad: Vec<&str> = s.nodes.iter().filter(|n| n.checked && !n.exact).map(|n| n.label.as_str()).collect();
            t.push_str(&format!("{name}: NOT exact at ({},{}) at {}\n", s.src, s.dst, bad.join(", ")));
        }
    }
    if let Some((s, e)) = &cfg.pair {
        if let Some(seq) = r.at(s, e) {
            for n in &seq.nodes {
                let mark = if !n.checked { " (unchecked)" } else if n.exact { "" } else { " NOT EXACT" };
                t.push_str(&format!("  {} = {}{mark}\n", n.label, n.dim));
            }
        }
    }
    t
}

fn cmd_check_pair(x: &PrecubicalSet, y: &SubsetSpec, cfg: &RunConfig) -> Result<Report, Failure> {
    let r = check_relative_pair(x, y, cfg.max_degree, cfg.field)?;
    let mut table = vec![vec!["degree".into(), "src".into(), "dst".into(), "presented".into(), "image".into()]];
    for m in &r.monic_failures {
        table.push(vec![
            m.degree.to_string(),
            m.src.clone(),
            m.dst.clone(),
            m.presented.to_string(),
            m.subspace.to_string(),
        ]);
    }
    Ok(Report {
        json: json!({ "schema": "dihom.check-pair.v1", "set": x.name(), "subset": y.names(x), "report": r }),
        text: pair_text(&r),
        table,
        status: if r.accepted { Status::Ok } else { Status::Negative },
    })
}

fn cmd_relative(x: &PrecubicalSet, y: &SubsetSpec, cfg: &RunConfig) -> Result<Report, Failure> {
    let verdict = check_relative_pair(x, y, cfg.max_degree, cfg.field)?;
    let mut text = pair_text(&verdict);
    let mut doc = json!({
        "schema": "dihom.relative.v1",
        "set": x.name(),
        "subset": y.names(x),
        "field": cfg.field.to_string(),
        "max_degree": cfg.max_degree,
        "pair": verdict,
        "convention": SHIFT_NOTE,
    });
    let mut table = vec![vec!["src".into(), "dst".into(), "degree".into(), "dim".into()]];
    if !verdict.accepted && !cfg.force {
        text.push_str("not computing relative homology; pass --force to compute the quotient anyway\n");
        return Ok(Report { json: doc, text, table, status: Status::Negative });
    }
    let (_, inc) = sub(x, y, "Y")?;
    let cx = build_complex(x, cfg.max_degree, cfg.field)?;
    let ext = extend_subcomplex(&inc, &cx)?;
    let rel = relative_complex(&cx, &ext)?;
    let h = homology_table(&rel.complex)?;
    let q = cx.complex.quiver();
    let pairs = select(q, cx.complex.pairs().collect(), cfg)?;
    let mut rows = Vec::new();
    text.push_str(&format!("relative homology over {}:\n", cfg.field));
    for &(s, e) in &pairs {
        let (sn, en) = names(q, s, e);
        let dims: Vec<usize> = (0..=cfg.max_degree).map(|i| h.dim(i, s, e)).collect();
        text.push_str(&format!("({sn},{en}) {}\n", dims_line("H", &dims)));
        for (i, d) in dims.iter().enumerate() {
            table.push(vec![sn.clone(), en.clone(), i.to_string(), d.to_string()]);
        }
        rows.push(json!({ "src": sn, "dst": en, "dims": dims }));
    }
    doc["relative"] = Value::Array(rows);
    let mut status = Status::Ok;
    if verdict.accepted {
        let les = les_relative(x, y, cfg.max_degree, cfg.field)?;
        text.push_str(&sequence_text(&les, cfg, "long exact sequence"));
        if !les.exact() {
            status = Status::Internal;
        }
        doc["les"] = serde_json::to_value(&les).expect("report serializes");
    } else {
        let why = "long exact sequence skipped: the subset does not form a relative pair";
        text.push_str(why);
        text.push('\n');
        doc["les"] = Value::Null;
        doc["les_skipped"] = json!(why);
    }
    text.push_str(&format!("note: {SHIFT_NOTE}\n"));
    Ok(Report { json: doc, text, table, status })
}

fn cmd_mv(x: &PrecubicalSet, x1: &SubsetSpec, x2: &SubsetSpec, cfg: &RunConfig) -> Result<Report, Failure> {
    let cover = good_cover_check(x, x1, x2, cfg.max_degree, cfg.field)?;
    let mut text = format!("cover of {}: {}\n", x.name(), if cover.good { "good" } else { "not good" });
    for (name, ok) in &cover.pairs {
        text.push_str(&format!("  {name}: {}\n", if *ok { "relative pair" } else { "not a relative pair" }));
    }
    for (i, s, e) in &cover.excision_failures {
        text.push_str(&format!("  excision fails in degree {i} at ({s},{e})\n"));
    }
    let mut doc = json!({
        "schema": "dihom.mv.v1",
        "set": x.name(),
        "field": cfg.field.to_string(),
        "max_degree": cfg.max_degree,
        "cover": cover,
    });
    let mut table = vec![vec!["src".into(), "dst".into(), "node".into(), "dim".into(), "exact".into()]];
    if !cover.good && !cfg.force {
        text.push_str("not assembling the sequence; pass --force to try anyway\n");
        return Ok(Report { json: doc, text, table, status: Status::Negative });
    }
    let seq = mayer_vietoris(x, x1, x2, cfg.max_degree, cfg.field)?;
    text.push_str(&sequence_text(&seq, cfg, "Mayer-Vietoris sequence"));
    for s in &seq.sequences {
        for n in &s.nodes {
            table.push(vec![s.src.clone(), s.dst.clone(), n.label.clone(), n.dim.to_string(), n.exact.to_string()]);
        }
    }
    doc["sequence"] = serde_json::to_value(&seq).expect("report serializes");
    let status = match (seq.exact(), cover.good) {
        (true, true) => Status::Ok,
        (false, true) => Status::Internal,
        _ => Status::Negative,
    };
    Ok(Report { json: doc, text, table, status })
}

fn cmd_kunneth(x: &PrecubicalSet, y: &PrecubicalSet, cfg: &RunConfig, obstruction: bool) -> Result<Report, Failure> {
    let ez = ez_verify(x, y, cfg.max_degree, cfg.field)?;
    let k = kunneth_check(x, y, cfg.max_degree, cfg.field)?;
    let mark = |b: bool| if b { "ok" } else { "FAILED" };
    let mut text = format!("{} (x) {} over {}, degrees 0..={}\n", x.name(), y.name(), cfg.field, cfg.max_degree);
    text.push_str(&format!("alpha is a chain map: {}\n", mark(ez.alpha_chain_map)));
    text.push_str(&format!("beta is a chain map: {}\n", mark(ez.beta_chain_map)));
    text.push_str(&format!("alpha beta = id: {}\n", mark(ez.alpha_beta_identity)));
    text.push_str(&format!("beta alpha = id on chains: {}\n", if ez.beta_alpha_identity { "yes" } else { "no" }));
    text.push_str(&format!("inverse on homology: {}\n", mark(ez.homology_inverse)));
    text.push_str(&format!("alpha equivariant: {}\n", mark(ez.alpha_equivariant)));
    text.push_str(&format!("beta equivariant on homology: {}\n", mark(ez.beta_bar_equivariant)));
    let mut table = vec![vec!["degree".into(), "src".into(), "dst".into(), "product".into(), "factors".into()]];
    let filter = |e: &&crate::ez::KunnethEntry| cfg.pair.as_ref().is_none_or(|(s, d)| &e.src == s && &e.dst == d);
    for e in k.entries.iter().filter(filter) {
        let sign = if e.product == e.factors { "=" } else { "!=" };
        let tick = if e.product == e.factors { "✓" } else { "✗" };
        text.push_str(&format!("H{} at ({},{}): {} {sign} {} {tick}\n", e.degree, e.src, e.dst, e.product, e.factors));
        table.push(vec![
            e.degree.to_string(),
            e.src.clone(),
            e.dst.clone(),
            e.product.to_string(),
            e.factors.to_string(),
        ]);
    }
    let mut doc = json!({
        "schema": "dihom.kunneth.v1",
        "x": x.name(),
        "y": y.name(),
        "field": cfg.field.to_string(),
        "max_degree": cfg.max_degree,
        "comparison": ez,
        "kunneth": k,
        "convention": SHIFT_NOTE,
    });
    if obstruction {
        let o = degree_zero_obstruction(x, y, cfg.field)?;
        text.push_str(&format!(
            "degree 0: {} cube chains in the product, {} pure tensors; degree 1: {} cube chains\n",
            o.chains_degree0, o.tensors_degree0, o.chains_degree1
        ));
        if o.differs {
            text.push_str("the degree-0 sides differ in size, so no equivalence is the identity in degree 0\n");
        }
        doc["obstruction"] = serde_json::to_value(&o).expect("report serializes");
    }
    text.push_str(&format!("note: {SHIFT_NOTE}\n"));
    let status = if ez.passed() && k.holds() { Status::Ok } else { Status::Internal };
    Ok(Report { json: doc, text, table, status })
}

fn count_param(params: &[String]) -> Result<usize, Failure> {
    match params {
        [n] => n.parse().map_err(|_| Failure::input(format!("expected a count, got '{n}'"))),
        _ => Err(Failure::input("expected one count parameter")),
    }
}

fn cmd_generate(kind: GenKind, params: &[String], out: Option<&Path>) -> Result<Report, Failure> {
    let set = match kind {
        GenKind::Point => point(),
        GenKind::Segment => directed_segment(),
        GenKind::Domino => domino(),
        GenKind::Cube => standard_cube(count_param(params)?),
        GenKind::Disc => directed_disc(count_param(params)?)?,
        GenKind::Sphere => directed_sphere(count_param(params)?)?,
        GenKind::Realization => {
            let joined = params.join(",");
            let seq = joined
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse::<usize>().map_err(|_| Failure::input(format!("bad sequence entry '{t}'"))))
                .collect::<Result<Vec<_>, _>>()?;
            realization(&seq)?.set
        }
        GenKind::Tensor => match params {
            [a, b] => tensor(&load_valid(Path::new(a))?, &load_valid(Path::new(b))?),
            _ => return Err(Failure::input("tensor expects two file paths")),
        },
    };
    let body = set.to_json();
    let (text, json) = match out {
        Some(p) => {
            fs::write(p, &body).map_err(|e| Failure::input(format!("{}: {e}", p.display())))?;
            (format!("wrote {} to {}\n", set.name(), p.display()), json!({ "schema": "dihom.generate.v1", "set": set.name(), "path": p.display().to_string() }))
        }
        None => (format!("{body}\n"), serde_json::from_str(&body).expect("generated JSON parses")),
    };
    Ok(Report { json, text, table: vec![vec!["set".into()], vec![set.name().to_string()]], status: Status::Ok })
}
