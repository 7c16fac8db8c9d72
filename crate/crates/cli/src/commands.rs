use std::fmt::Write as _;

use serde::Serialize;
use uqcenter::affine_orbits::orbit_table;
use uqcenter::blocks::{block_report, closed_form_crosscheck};
use uqcenter::uqsl2::{AlgElemJson, Status};
use uqcenter::{CharElem, CharRing, Error, Result, SmallQuantumGroup};

use crate::config::{Format, RunConfig};
use crate::{CharOp, Sl2Op};

pub struct Outcome {
    pub text: String,
    pub code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }

    fn verdict(text: String, pass: bool) -> Self {
        Outcome {
            text,
            code: if pass { 0 } else { 1 },
        }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Inadmissible { .. }
        | Error::InvalidOrder { .. }
        | Error::InvalidRootDatum { .. }
        | Error::BudgetExceeded { .. }
        | Error::Unsupported(_)
        | Error::OutOfRange { .. } => 2,
        _ => 1,
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Output(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn no_csv(config: &RunConfig, command: &str) -> Result<()> {
    if config.format == Format::Csv {
        return Err(Error::Unsupported(format!("--csv is only available for blocks, not {command}")));
    }
    Ok(())
}

#[derive(Serialize)]
struct CheckLJson<'a> {
    r#type: String,
    l: u32,
    ok: bool,
    reason: Option<String>,
    coxeter_number: u32,
    det_cartan: i64,
    gcd: u64,
    cartan_invertible_mod_l: bool,
    failures: &'a [String],
}

pub fn check_l(config: &RunConfig) -> Result<Outcome> {
    no_csv(config, "check-l")?;
    let a = config.admissibility()?;
    let ok = a.is_ok();
    let reason = (!ok).then(|| a.failures.join("; "));
    let text = match config.format {
        Format::Json => json(&CheckLJson {
            r#type: config.type_label(),
            l: config.l,
            ok,
            reason: reason.clone(),
            coxeter_number: a.coxeter_number,
            det_cartan: a.det_cartan,
            gcd: a.gcd,
            cartan_invertible_mod_l: a.cartan_invertible_mod_l,
            failures: &a.failures,
        })?,
        _ => match &reason {
            None => format!(
                "{} l={}: ok (h={}, det={}, gcd={})\n",
                config.type_label(),
                config.l,
                a.coxeter_number,
                a.det_cartan,
                a.gcd
            ),
            Some(r) => format!("{} l={}: inadmissible: {r}\n", config.type_label(), config.l),
        },
    };
    Ok(Outcome {
        text,
        code: if ok { 0 } else { 2 },
    })
}

pub fn orbits(config: &RunConfig) -> Result<Outcome> {
    no_csv(config, "orbits")?;
    let datum = config.validated()?;
    let table = orbit_table(&datum, config.l, config.action, config.budget)?;
    if config.format == Format::Json {
        return Ok(Outcome::ok(json(&table.to_json())?));
    }
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} l={} action={}: {} orbits on {} points",
        table.type_label(),
        table.l(),
        table.action(),
        table.len(),
        table.total_points()
    );
    let _ = writeln!(s, "{:<16} {:>6} {:>10} regular", "rep", "size", "stab_order");
    for o in table.orbits() {
        let _ = writeln!(
            s,
            "{:<16} {:>6} {:>10} {}",
            o.representative.to_string(),
            o.size,
            o.stabilizer_order,
            o.regular
        );
    }
    let profile: Vec<String> = table.size_histogram().iter().map(|(size, n)| format!("{n}x{size}")).collect();
    let _ = writeln!(s, "profile: {}", profile.join(" + "));
    Ok(Outcome::ok(s))
}

pub fn blocks(config: &RunConfig) -> Result<Outcome> {
    let datum = config.validated()?;
    let table = orbit_table(&datum, config.l, uqcenter::Action::BulletOnP, config.budget)?;
    let report = block_report(&table)?;
    let text = match config.format {
        Format::Json => json(&report)?,
        Format::Csv => {
            let mut buf = vec![];
            report.write_csv(&mut buf)?;
            String::from_utf8(buf).map_err(|e| Error::Output(e.to_string()))?
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{} l={}: {} blocks", report.r#type, report.l, report.blocks.len());
            let _ = writeln!(
                s,
                "{:<16} {:>6} {:>7} {:>7} {:>6} {:>6}",
                "rep", "index", "ztilde", "zprime", "meet", "sum"
            );
            for b in &report.blocks {
                let _ = writeln!(
                    s,
                    "{:<16} {:>6} {:>7} {:>7} {:>6} {:>6}{}",
                    b.rep.to_string(),
                    b.index,
                    b.ztilde,
                    b.zprime,
                    b.intersection,
                    b.sum,
                    if b.steinberg { "  steinberg" } else { "" }
                );
            }
            let t = &report.totals;
            let _ = writeln!(
                s,
                "totals: ztilde={} zprime={} intersection={} sum={} xbar={}",
                t.ztilde, t.zprime, t.intersection, t.sum, t.xbar
            );
            s
        }
    };
    Ok(Outcome::ok(text))
}

pub fn crosscheck(config: &RunConfig, max_l: u32) -> Result<Outcome> {
    no_csv(config, "crosscheck")?;
    let rows = closed_form_crosscheck(config.root_type, config.rank, max_l)?;
    let pass = rows.iter().all(|r| r.pass);
    let text = if config.format == Format::Json {
        json(&rows)?
    } else {
        let mut s = String::new();
        for r in &rows {
            let verdict = match (r.admissible, r.pass) {
                (false, _) => "skip (inadmissible)".to_string(),
                (true, true) => "pass".to_string(),
                (true, false) => "FAIL".to_string(),
            };
            let detail = r
                .enumerated
                .as_ref()
                .map(|t| format!(" ztilde={} sum={} xbar={}", t.ztilde, t.sum, t.xbar))
                .unwrap_or_default();
            let _ = writeln!(s, "{} l={:<3} {verdict}{detail}", config.type_label(), r.l);
        }
        s
    };
    Ok(Outcome::verdict(text, pass))
}

#[derive(Serialize)]
struct CharJson<'a> {
    l: u32,
    op: &'a str,
    result: Vec<CharElem>,
}

pub fn charring(config: &RunConfig, op: &CharOp) -> Result<Outcome> {
    no_csv(config, "charring")?;
    config.validated_sl2()?;
    let ring = CharRing::new(config.l)?;
    let index = |i: usize| -> Result<CharElem> {
        if i >= ring.dim() {
            return Err(Error::OutOfRange { index: i, bound: ring.dim() });
        }
        Ok(ring.xi(i))
    };
    let (name, result) = match op {
        CharOp::Xi { i } => ("xi", vec![index(*i)?]),
        CharOp::Product { i, j } => ("product", vec![ring.product(&index(*i)?, &index(*j)?)?]),
        CharOp::Radical => ("radical", ring.radical()),
        CharOp::Socle => ("socle", ring.socle_basis()?),
        CharOp::Tilting => ("tilting", (0..ring.dim() - 1).map(|i| ring.tilting_character(i)).collect()),
        CharOp::Steinberg => {
            let report = ring.steinberg_checks()?;
            let pass = report.all_pass();
            let text = if config.format == Format::Json {
                json(&report)?
            } else {
                format!(
                    "l={}: socle dim {}, socle^2 dim {}, tilting formula {}, steinberg square {} ({})\n{}\n",
                    report.l,
                    report.socle_dim,
                    report.socle_square_dim,
                    report.tilting_formula,
                    report.steinberg_square_formula,
                    report.steinberg_square,
                    if pass { "all pass" } else { "FAIL" }
                )
            };
            return Ok(Outcome::verdict(text, pass));
        }
    };
    let text = if config.format == Format::Json {
        json(&CharJson { l: config.l, op: name, result })?
    } else {
        result.iter().map(|x| format!("{x}\n")).collect()
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
struct ElemsJson<'a> {
    l: u32,
    dim: usize,
    basis: Vec<AlgElemJson<'a>>,
}

#[derive(Serialize)]
struct SubalgebrasJson {
    l: u32,
    dims: uqcenter::uqsl2::CentralDims,
    blocks: Vec<uqcenter::uqsl2::BlockShape>,
}

pub fn sl2(config: &RunConfig, op: &Sl2Op) -> Result<Outcome> {
    no_csv(config, "sl2")?;
    config.validated_sl2()?;
    let g = SmallQuantumGroup::new(config.l)?;
    let l = config.l;
    let elems = |xs: &[uqcenter::AlgElem]| -> Result<String> {
        if config.format == Format::Json {
            json(&ElemsJson {
                l,
                dim: xs.len(),
                basis: xs.iter().map(|elem| AlgElemJson { elem, l }).collect(),
            })
        } else {
            Ok(xs.iter().map(|x| format!("{}\n", x.display(l))).collect())
        }
    };
    match op {
        Sl2Op::Center => Ok(Outcome::ok(elems(&g.center_basis())?)),
        Sl2Op::Integral => Ok(Outcome::ok(elems(std::slice::from_ref(g.integral()?))?)),
        Sl2Op::Subalgebras => {
            let cs = g.central_subalgebras()?;
            let report = SubalgebrasJson { l, dims: cs.dims(), blocks: cs.blocks.clone() };
            if config.format == Format::Json {
                return Ok(Outcome::ok(json(&report)?));
            }
            let d = &report.dims;
            let mut s = format!(
                "l={l}: dim Z={} Z~={} Z'={} meet={} sum={} rad={} idempotents={}\n",
                d.center, d.ztilde, d.zprime, d.intersection, d.sum, d.radical, d.idempotents
            );
            for b in &report.blocks {
                let _ = writeln!(
                    s,
                    "block {:?}: dim {} (Z~ {}, Z' {}, meet {})",
                    b.weights, b.dim, b.ztilde_dim, b.zprime_dim, b.intersection_dim
                );
            }
            Ok(Outcome::ok(s))
        }
        Sl2Op::VerifyAll => {
            let report = g.verify_all()?;
            let pass = report.all_pass();
            if config.format == Format::Json {
                return Ok(Outcome::verdict(json(&report)?, pass));
            }
            let mut s = String::new();
            for c in &report.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skipped => "SKIP",
                };
                let detail = if c.detail.is_empty() { String::new() } else { format!("  ({})", c.detail) };
                let _ = writeln!(s, "{tag} {}{detail}", c.name);
            }
            let d = &report.dims;
            let show = |c: &Option<uqcenter::CycloNum>| c.as_ref().map_or("none".into(), |c| c.to_string());
            let _ = writeln!(
                s,
                "l={l}: dim u={} dim Z={} dim C_r={} |Xbar|={} Z~={} Z'={} meet={} sum={}",
                report.dim_u, d.center, report.dim_c_r, report.xbar, d.ztilde, d.zprime, d.intersection, d.sum
            );
            let _ = writeln!(
                s,
                "F^2 = c S^-1 with c = {}; F(1) = c' Lambda with c' = {}",
                show(&report.scalars.fourier_square),
                show(&report.scalars.fourier_one)
            );
            let failed = report.failures().count();
            let _ = writeln!(
                s,
                "{}",
                if pass { "all checks pass".to_string() } else { format!("{failed} checks failed") }
            );
            Ok(Outcome::verdict(s, pass))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(l: u32, format: Format) -> RunConfig {
        RunConfig { l, format, ..RunConfig::default() }
    }

    #[test]
    fn usage_errors_map_to_2() {
        let e = config(4, Format::Text).validated_sl2().unwrap_err();
        assert_eq!(exit_code(&e), 2);
        assert_eq!(exit_code(&Error::OutOfRange { index: 9, bound: 5 }), 2);
        assert_eq!(exit_code(&Error::Output("disk full".into())), 1);
    }

    #[test]
    fn csv_only_for_blocks() {
        let c = config(5, Format::Csv);
        assert!(matches!(orbits(&c), Err(Error::Unsupported(_))));
        let out = blocks(&c).unwrap();
        assert_eq!(out.code, 0);
        assert_eq!(out.text.lines().count(), 1 + 3);
    }

    #[test]
    fn char_index_is_bounded() {
        let c = config(5, Format::Text);
        assert!(matches!(charring(&c, &CharOp::Xi { i: 5 }), Err(Error::OutOfRange { .. })));
        assert_eq!(charring(&c, &CharOp::Socle).unwrap().text.lines().count(), 3);
    }

    #[test]
    fn json_ends_with_newline() {
        let out = check_l(&config(5, Format::Json)).unwrap();
        assert!(out.text.ends_with("}\n"));
        assert_eq!(out.code, 0);
    }
}
