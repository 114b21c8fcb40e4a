use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use hallinv::braids::{fixture, horizontal_presentation, parse_permutation};
use hallinv::census::{a2_a3, alpha_k, c_p, census as census_report, Method};
use hallinv::charvar::{
    b1_cover_abelian, beta_distribution_with, check_bounds_congruence, BetaOptions, CoverCheck,
};
use hallinv::foxcalc::{abelianization, alexander_matrix};
use hallinv::hall::{aut_order_abelian, construct_mpqs, AbelianGroupSpec};
use hallinv::oracle::{
    aut_order, cover_homology, cyclic_action, hom_count, FiniteGroupTable, HomMode,
};
use hallinv::presentations::Presentation;
use hallinv::tables::{table_row, Target, TABLE1_COLUMNS, TABLE1_ROWS, TABLE2_COLUMNS, TABLE2_ROWS};
use hallinv::Error;
use num_bigint::BigInt;

use crate::Input;

pub struct Report {
    pub text: String,
    pub json: Value,
}

#[derive(Debug)]
pub struct Failure {
    pub message: String,
    pub code: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Infeasible { .. }) { 2 } else { 1 };
        Failure {
            message: e.to_string(),
            code,
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        message: message.into(),
        code: 1,
    }
}

/// Big integers are JSON numbers when they fit in 64 bits, strings otherwise.
fn number(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(x) => Value::from(x),
        Err(_) => Value::from(v.to_string()),
    }
}

pub fn load(input: &Input) -> Result<Presentation, Failure> {
    if let Some(path) = &input.file {
        let text = if path == "-" {
            std::io::read_to_string(std::io::stdin())
                .map_err(|e| input_error(format!("cannot read standard input: {e}")))?
        } else {
            std::fs::read_to_string(path)
                .map_err(|e| input_error(format!("cannot read {path}: {e}")))?
        };
        return text
            .parse::<Presentation>()
            .map_err(|e| input_error(format!("{path}: {e}")));
    }
    if let Some(name) = &input.fixture {
        return Ok(fixture(name)?);
    }
    let perm = input.perm.as_deref().expect("clap requires an input");
    Ok(horizontal_presentation(&parse_permutation(perm)?)?)
}

pub fn parse(p: &Presentation) -> Result<Report, Failure> {
    let relators: Vec<String> = p.relators().iter().map(|r| r.render(p.generators())).collect();
    Ok(Report {
        text: format!("{}\n", p.render()),
        json: json!({
            "generators": p.generators(),
            "relators": relators,
        }),
    })
}

pub fn abelianize(p: &Presentation) -> Result<Report, Failure> {
    let h = abelianization(p);
    let mut b1 = Map::new();
    let mut text = format!("H1 = {}\n", h.describe());
    for q in [0u64, 2, 3, 5, 7] {
        b1.insert(q.to_string(), json!(h.b1(q)));
        writeln!(text, "b1 mod {q} = {}", h.b1(q)).unwrap();
    }
    Ok(Report {
        text,
        json: json!({
            "free_rank": h.free_rank(),
            "torsion": h.torsion(),
            "b1": b1,
        }),
    })
}

pub fn alexander(p: &Presentation) -> Result<Report, Failure> {
    let a = alexander_matrix(p);
    let mut entries = Vec::new();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let e = a.get(i, j);
            if !e.is_zero() {
                entries.push(json!({"row": i + 1, "col": j + 1, "entry": e.render()}));
            }
        }
    }
    let dump = a.dump();
    Ok(Report {
        text: format!("{} x {} over Z[H1], H1 = {}\n{dump}", a.rows(), a.cols(), a.abel().describe()),
        json: json!({
            "rows": a.rows(),
            "cols": a.cols(),
            "h1": a.abel().describe(),
            "entries": entries,
        }),
    })
}

pub fn beta(p: &Presentation, prime: u64, q: u64, check_galois: bool) -> Result<Report, Failure> {
    let opts = BetaOptions {
        alternate_root: false,
        check_galois,
    };
    let b = beta_distribution_with(&alexander_matrix(p), prime, q, opts)?;
    let mut counts = Map::new();
    let mut text = format!("beta_{prime}^({q}) = {:?}\n", b.positive_part());
    for (&d, &c) in &b.counts {
        counts.insert(d.to_string(), json!(c));
        writeln!(text, "  depth {d}: {c}").unwrap();
    }
    Ok(Report {
        text,
        json: json!({
            "p": prime,
            "q": q,
            "n_p": b.n_p,
            "beta": counts,
            "method": "character depths",
        }),
    })
}

fn metabelian_aut(p: u64, q: u64) -> Result<BigInt, Failure> {
    Ok(BigInt::from(construct_mpqs(p, q)?.aut_order()))
}

fn target_table(t: &Target) -> Result<(FiniteGroupTable, BigInt), Failure> {
    match t {
        Target::Abelian(g) => {
            let orders = g.invariant_factors().into_iter().map(|o| o as usize).collect::<Vec<_>>();
            Ok((FiniteGroupTable::abelian(&orders)?, aut_order_abelian(g)))
        }
        Target::Metabelian { p, q } => Ok((construct_mpqs(*p, *q)?.table, metabelian_aut(*p, *q)?)),
    }
}

pub fn delta(p: &Presentation, targets: &[String], budget: Option<u64>) -> Result<Report, Failure> {
    let mut text = String::new();
    let mut out = Vec::new();
    for name in targets {
        let t: Target = name.parse()?;
        let d = t.delta(p)?;
        let method = match t {
            Target::Abelian(_) => "abelian formula",
            Target::Metabelian { .. } => "metabelian formula",
        };
        write!(text, "delta_{t} = {d}").unwrap();
        let mut entry = json!({"target": t.to_string(), "delta": number(&d), "method": method});
        if let Some(budget) = budget {
            let (table, aut) = target_table(&t)?;
            let epi = hom_count(p, &table, HomMode::Epi, budget)?;
            let brute = epi / aut;
            write!(text, " (enumeration {brute})").unwrap();
            entry["oracle"] = number(&brute);
        }
        text.push('\n');
        out.push(entry);
    }
    Ok(Report {
        text,
        json: json!({"deltas": out}),
    })
}

fn parse_ints(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| input_error(format!("bad integer `{t}`"))))
        .collect()
}

pub fn cover(p: &Presentation, order: &[u64], images: &str, q: u64, oracle: bool) -> Result<Report, Failure> {
    let per_generator: Vec<Vec<i64>> = if order.len() == 1 && !images.contains(';') {
        parse_ints(images)?.into_iter().map(|x| vec![x]).collect()
    } else {
        images.split(';').map(parse_ints).collect::<Result<_, _>>()?
    };
    let b1 = b1_cover_abelian(p, &per_generator, order, q)?;
    let index: u64 = order.iter().product();
    let b1_group = abelianization(p).b1(q);
    let check = CoverCheck {
        b1_group,
        b1_cover: b1,
        index,
        num_generators: p.num_generators(),
        max_depth: None,
    };
    check_bounds_congruence(&check)?;
    let mut text = format!("index {index}: b1 mod {q} of the cover = {b1} (group: {b1_group})\n");
    let mut out = json!({
        "index": index,
        "q": q,
        "b1": b1,
        "b1_group": b1_group,
        "method": "character depths",
    });
    if oracle {
        if order.len() != 1 {
            return Err(input_error("--oracle supports cyclic quotients only"));
        }
        let lam: Vec<i64> = per_generator.iter().map(|v| v[0]).collect();
        let h = cover_homology(p, &cyclic_action(&lam, order[0] as usize))?;
        writeln!(text, "enumeration: b1 mod {q} = {}", h.b1(q)).unwrap();
        out["oracle"] = json!(h.b1(q));
    }
    Ok(Report { text, json: out })
}

pub struct CensusFilter {
    pub normal: bool,
    pub abelian_quotient: bool,
    pub conjugacy: bool,
}

fn census_value(v: &Option<(BigInt, Method)>) -> Value {
    match v {
        Some((x, m)) => json!({"value": number(x), "method": m.as_str()}),
        None => Value::Null,
    }
}

pub fn census(p: &Presentation, k: u64, only: CensusFilter, budget: u64) -> Result<Report, Failure> {
    if k == 0 {
        return Err(input_error("index k must be positive"));
    }
    let any = only.normal || only.abelian_quotient || only.conjugacy;
    let mut text = String::new();
    let mut out = json!({"k": k});
    if !any {
        let r = census_report(p, k, Some(budget))?;
        for (name, v) in [("a_k", &r.a_k), ("a_k_normal", &r.a_k_normal), ("alpha_k", &r.alpha_k), ("c_k", &r.c_k)] {
            if let Some((x, m)) = v {
                writeln!(text, "{name} = {x} ({})", m.as_str()).unwrap();
            }
            out[name] = census_value(v);
        }
        return Ok(Report { text, json: out });
    }
    if only.normal {
        let v = hallinv::census::a_normal(p, k)?;
        writeln!(text, "a_k_normal = {v} (formula)").unwrap();
        out["a_k_normal"] = census_value(&Some((v, Method::Formula)));
    }
    if only.abelian_quotient {
        let v = alpha_k(p, k);
        writeln!(text, "alpha_k = {v} (formula)").unwrap();
        out["alpha_k"] = census_value(&Some((v, Method::Formula)));
    }
    if only.conjugacy {
        let a = match k {
            2 => a2_a3(p)?.0,
            3 => a2_a3(p)?.1,
            _ => census_report(p, k, Some(budget))?
                .a_k
                .map(|(v, _)| v)
                .ok_or_else(|| input_error("a_k unavailable"))?,
        };
        let v = c_p(p, k, &a)?;
        writeln!(text, "c_k = {v} (formula)").unwrap();
        out["c_k"] = census_value(&Some((v, Method::Formula)));
    }
    Ok(Report { text, json: out })
}

pub fn arr(perm: Option<&str>, name: Option<&str>) -> Result<Report, Failure> {
    let (p, label) = match (perm, name) {
        (Some(t), _) => (horizontal_presentation(&parse_permutation(t)?)?, format!("A({t})")),
        (None, Some(n)) => (fixture(n)?, n.to_string()),
        (None, None) => return Err(input_error("give --perm or --fixture")),
    };
    let rendered = p.render();
    Ok(Report {
        text: format!("# {label}\n{rendered}\n"),
        json: json!({"name": label, "presentation": rendered}),
    })
}

fn read_table(path: &str) -> Result<FiniteGroupTable, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("cannot read {path}: {e}")))?;
    let mut nums = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap();
        for tok in line.split_whitespace() {
            nums.push(
                tok.parse::<u32>()
                    .map_err(|_| input_error(format!("{path}: bad entry `{tok}`")))?,
            );
        }
    }
    let (&n, mul) = nums.split_first().ok_or_else(|| input_error(format!("{path}: empty table")))?;
    if mul.len() != (n as usize) * (n as usize) {
        return Err(input_error(format!("{path}: expected {} entries after the order", n * n)));
    }
    Ok(FiniteGroupTable::new(n as usize, mul.to_vec())?)
}

fn oracle_group(spec: &str) -> Result<FiniteGroupTable, Failure> {
    let s = spec.trim();
    if let Some(path) = s.strip_prefix("table:") {
        return read_table(path);
    }
    if let Some(rest) = s.strip_prefix("mpq:") {
        let (p, q) = rest.split_once(',').ok_or_else(|| input_error(format!("bad target `{s}`")))?;
        let p = p.trim().parse().map_err(|_| input_error(format!("bad target `{s}`")))?;
        let q = q.trim().parse().map_err(|_| input_error(format!("bad target `{s}`")))?;
        return Ok(construct_mpqs(p, q)?.table);
    }
    let lower = s.to_ascii_lowercase();
    let n = |prefix: &str| lower.strip_prefix(prefix).and_then(|r| r.parse::<usize>().ok());
    if let Some(n) = n("s") {
        return Ok(FiniteGroupTable::symmetric(n)?.0);
    }
    if let Some(n) = n("a") {
        return Ok(FiniteGroupTable::alternating(n)?);
    }
    if let Some(n) = n("d") {
        if n >= 6 && n % 2 == 0 {
            return Ok(construct_mpqs(2, n as u64 / 2)?.table);
        }
    }
    if lower.starts_with('z') {
        let orders: Vec<u64> = lower
            .split('+')
            .map(|f| f.trim().trim_start_matches('z').parse::<u64>())
            .collect::<Result<_, _>>()
            .map_err(|_| input_error(format!("bad target `{s}`")))?;
        let spec = AbelianGroupSpec::from_cyclic(&orders)?;
        let inv: Vec<usize> = spec.invariant_factors().into_iter().map(|o| o as usize).collect();
        return Ok(FiniteGroupTable::abelian(&inv)?);
    }
    Err(input_error(format!("unknown target group `{s}`")))
}

pub fn oracle_target(p: &Presentation, spec: &str, budget: u64) -> Result<Report, Failure> {
    let t = oracle_group(spec)?;
    let hom = hom_count(p, &t, HomMode::All, budget)?;
    let epi = hom_count(p, &t, HomMode::Epi, budget)?;
    let aut = aut_order(&t);
    let delta = &epi / BigInt::from(aut);
    Ok(Report {
        text: format!(
            "|T| = {}\n|Hom(G,T)| = {hom}\n|Epi(G,T)| = {epi}\n|Aut T| = {aut}\ndelta = {delta}\n",
            t.order()
        ),
        json: json!({
            "target": spec,
            "order": t.order(),
            "hom": number(&hom),
            "epi": number(&epi),
            "aut": aut,
            "delta": number(&delta),
            "method": "enumeration",
        }),
    })
}

pub fn oracle_cover(p: &Presentation, images: &str, order: u64) -> Result<Report, Failure> {
    let lam = parse_ints(images)?;
    if lam.len() != p.num_generators() {
        return Err(input_error(format!(
            "{} images given for {} generators",
            lam.len(),
            p.num_generators()
        )));
    }
    let h = cover_homology(p, &cyclic_action(&lam, order as usize))?;
    let torsion: Vec<Value> = h.torsion.iter().map(number).collect();
    let mut text = format!("index {}: rank {}, torsion {:?}\n", h.index, h.betti, h.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>());
    let mut b1 = Map::new();
    for q in [0u64, 2, 3, 5, 7] {
        b1.insert(q.to_string(), json!(h.b1(q)));
        writeln!(text, "b1 mod {q} = {}", h.b1(q)).unwrap();
    }
    Ok(Report {
        text,
        json: json!({
            "index": h.index,
            "betti": h.betti,
            "torsion": torsion,
            "b1": b1,
            "method": "permutation representation",
        }),
    })
}

fn render_table(rows: &[(String, Vec<BigInt>)], columns: &[&str]) -> Report {
    let first = rows.iter().map(|(n, _)| n.len()).max().unwrap_or(0).max(5);
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(j, c)| {
            rows.iter()
                .map(|(_, v)| v[j].to_string().len())
                .max()
                .unwrap_or(0)
                .max(c.len())
        })
        .collect();
    let mut text = format!("{:<first$}", "group");
    for (c, w) in columns.iter().zip(&widths) {
        write!(text, "  {c:>w$}").unwrap();
    }
    text.push('\n');
    let mut out = Vec::new();
    for (name, vals) in rows {
        write!(text, "{name:<first$}").unwrap();
        let mut entry = Map::new();
        for ((c, w), v) in columns.iter().zip(&widths).zip(vals) {
            write!(text, "  {:>w$}", v.to_string()).unwrap();
            entry.insert(c.to_string(), number(v));
        }
        text.push('\n');
        out.push(json!({"group": name, "delta": entry}));
    }
    Report {
        text,
        json: json!({"columns": columns, "rows": out}),
    }
}

pub fn table1(rows: &[String]) -> Result<Report, Failure> {
    let names: Vec<String> = if rows.is_empty() {
        TABLE1_ROWS.iter().map(|s| s.to_string()).collect()
    } else {
        rows.to_vec()
    };
    let mut computed = Vec::new();
    for name in names {
        let vals = table_row(&fixture(&name)?, &TABLE1_COLUMNS)?;
        computed.push((name, vals));
    }
    Ok(render_table(&computed, &TABLE1_COLUMNS))
}

pub fn table2(rows: &[String]) -> Result<Report, Failure> {
    let perms: Vec<String> = if rows.is_empty() {
        TABLE2_ROWS.iter().map(|s| s.to_string()).collect()
    } else {
        rows.to_vec()
    };
    let mut computed = Vec::new();
    for tau in perms {
        let g = horizontal_presentation(&parse_permutation(&tau)?)?;
        computed.push((format!("A({tau})"), table_row(&g, &TABLE2_COLUMNS)?));
    }
    Ok(render_table(&computed, &TABLE2_COLUMNS))
}
