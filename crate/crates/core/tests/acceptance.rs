//! End-to-end acceptance run: one line per criterion, nonzero exit if any fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use uqcenter::affine_orbits::{orbit_table, Action, OrbitTable, DEFAULT_BUDGET};
use uqcenter::blocks::block_report;
use uqcenter::linalg::Subspace;
use uqcenter::uqsl2::{CheckGroup, Status};
use uqcenter::{CharElem, CharRing, RootDatum, RootType, SmallQuantumGroup};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:?}, limit {limit:?}"))
}

fn datum(rank: usize) -> RootDatum {
    RootDatum::build(RootType::A, rank).expect("type A datum")
}

fn table(rank: usize, l: u32) -> Result<OrbitTable, String> {
    orbit_table(&datum(rank), l, Action::BulletOnP, DEFAULT_BUDGET).map_err(|e| e.to_string())
}

fn group_ok(label: &str, g: &CheckGroup, allow_skip: bool) -> Result<usize, String> {
    let mut skipped = 0;
    for c in &g.checks {
        match c.status {
            Status::Pass => {}
            Status::Skipped if allow_skip => skipped += 1,
            _ => return Err(format!("{label}: {} {:?} {}", c.name, c.status, c.detail)),
        }
    }
    Ok(skipped)
}

fn require(label: &str, g: &CheckGroup, names: &[&str]) -> Result<(), String> {
    for n in names {
        let c = g.get(n).ok_or_else(|| format!("{label}: missing check {n}"))?;
        ensure(c.passed(), || format!("{label}: {n} {:?}", c.status))?;
    }
    Ok(())
}

fn admissibility() -> Outcome {
    let start = Instant::now();
    let a1 = datum(1);
    let a2 = datum(2);
    for l in (3..=13).step_by(2) {
        let v = a1.check_l(l);
        ensure(v.is_ok() && v.tests_agree(), || format!("A1 l={l}: {:?}", v.failures))?;
    }
    for l in [5, 7, 11, 13] {
        let v = a2.check_l(l);
        ensure(v.is_ok() && v.tests_agree(), || format!("A2 l={l}: {:?}", v.failures))?;
    }
    let v = a2.check_l(9);
    ensure(!v.is_ok() && v.tests_agree(), || "A2 l=9 accepted".into())?;
    ensure(v.failures.iter().any(|f| f == "gcd(l, det)=3"), || format!("A2 l=9 reasons {:?}", v.failures))?;
    for l in (4..=14).step_by(2) {
        let v = a1.check_l(l);
        ensure(!v.is_ok() && v.tests_agree(), || format!("A1 l={l} accepted"))?;
        ensure(v.failures.iter().any(|f| f.contains("odd")), || format!("A1 l={l} reasons {:?}", v.failures))?;
    }
    within(start, Duration::from_secs(1), "admissibility")?;
    Ok("A1 odd l 3..13 and A2 l in {5,7,11,13} pass; A2 l=9 gcd(l, det)=3; even l rejected".into())
}

fn orbit_tables() -> Outcome {
    let start = Instant::now();
    let t = table(1, 5)?;
    let reps: Vec<(Vec<u32>, u64)> = t.orbits().iter().map(|o| (o.representative.0.clone(), o.size)).collect();
    ensure(reps == vec![(vec![0], 2), (vec![1], 2), (vec![4], 1)], || format!("sl2 l=5: {reps:?}"))?;
    within(start, Duration::from_secs(1), "sl2 l=5 table")?;
    for (l, profile) in [(5, vec![(1, 1), (3, 4), (6, 2)]), (7, vec![(1, 1), (3, 6), (6, 5)])] {
        let start = Instant::now();
        let t = table(2, l)?;
        ensure(t.size_histogram() == profile, || format!("sl3 l={l}: {:?}", t.size_histogram()))?;
        ensure(t.total_points() == u64::from(l * l), || format!("sl3 l={l}: {} points", t.total_points()))?;
        within(start, Duration::from_secs(1), "sl3 table")?;
    }
    Ok("sl2 l=5 reps {0,1,4} sizes (2,2,1); sl3 l=5 1x1+4x3+2x6; sl3 l=7 1x1+6x3+5x6".into())
}

fn dimension_formulas() -> Outcome {
    let start = Instant::now();
    for l in [5u64, 7, 11, 13] {
        let r = block_report(&table(2, l as u32)?).map_err(|e| e.to_string())?;
        let closed = 1 + 5 * (l - 1) + 11 * (l - 1) * (l - 2) / 6;
        ensure(r.totals.ztilde == l * l, || format!("sl3 l={l}: dim Z~ = {}", r.totals.ztilde))?;
        ensure(r.totals.sum == 2 * l * l - r.totals.xbar, || format!("sl3 l={l}: sum {}", r.totals.sum))?;
        ensure(r.totals.sum == closed, || format!("sl3 l={l}: sum {} vs closed form {closed}", r.totals.sum))?;
    }
    for l in (3u64..=13).step_by(2) {
        let r = block_report(&table(1, l as u32)?).map_err(|e| e.to_string())?;
        ensure(r.totals.ztilde == l, || format!("sl2 l={l}: dim Z~ = {}", r.totals.ztilde))?;
        ensure(r.totals.sum == 2 * l - l.div_ceil(2), || format!("sl2 l={l}: sum {}", r.totals.sum))?;
        ensure(r.totals.sum == 2 * l - r.totals.xbar, || format!("sl2 l={l}: |Xbar| {}", r.totals.xbar))?;
    }
    within(start, Duration::from_secs(1), "dimension formulas")?;
    Ok("sl3 l in {5,7,11,13} and sl2 odd l 3..13 match the closed forms".into())
}

fn span(n: usize, xs: &[CharElem]) -> Subspace<BigRational> {
    Subspace::span(n, xs.iter().map(CharElem::to_sparse))
}

fn character_ring() -> Outcome {
    let start = Instant::now();
    for l in [3usize, 5, 7] {
        let r = CharRing::new(l as u32).map_err(|e| e.to_string())?;
        let socle = r.socle_basis().map_err(|e| e.to_string())?;
        ensure(socle.len() == l.div_ceil(2), || format!("l={l}: dim Soc = {}", socle.len()))?;
        let ann = r.annihilator(&r.radical());
        ensure(span(l, &socle).same_as(&span(l, &ann)), || format!("l={l}: Soc != Ann(Rad)"))?;

        let st = r.steinberg();
        let two = BigRational::from_integer(BigInt::from(2));
        // ch T(l+i) = 2(xi(i) + xi(l-2-i)) for i <= l-2, and xi(l-1) R is spanned by these
        // together with xi(l-1); xi(l-1) xi(1) = ch T(l) is the smallest case
        let mut tilting = vec![st.clone()];
        for i in 0..=l - 2 {
            let rhs = r.xi(i).add(&r.xi(l - 2 - i)).scale(&two);
            ensure(r.tilting_character(i) == rhs, || format!("l={l}: ch T(l+{i}) mismatch"))?;
            tilting.push(rhs);
        }
        let first = r.product(&st, &r.xi(1)).map_err(|e| e.to_string())?;
        ensure(first == tilting[1], || format!("l={l}: xi(l-1) xi(1) = {first}"))?;
        let multiples = (0..l).map(|j| r.product(&st, &r.xi(j))).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
        ensure(span(l, &multiples).same_as(&span(l, &tilting)), || format!("l={l}: xi(l-1) R is not spanned by tilting characters"))?;

        let mut squares = vec![];
        for a in &socle {
            for b in &socle {
                squares.push(r.product(a, b).map_err(|e| e.to_string())?);
            }
        }
        let st2 = r.product(&st, &st).map_err(|e| e.to_string())?;
        let sq = span(l, &squares);
        ensure(sq.dim() == 1 && sq.same_as(&span(l, &[st2])), || format!("l={l}: Soc^2 has dim {}", sq.dim()))?;
    }
    within(start, Duration::from_secs(1), "character ring")?;
    Ok("l in {3,5,7}: Soc = Ann(Rad) of dim (l+1)/2; ch T(l+j) = 2(xi(j)+xi(l-2-j)) span xi(l-1) R with xi(l-1); Soc^2 = <xi(l-1)^2>".into())
}

struct Groups {
    g3: SmallQuantumGroup,
    g5: SmallQuantumGroup,
}

impl Groups {
    fn both(&self) -> [&SmallQuantumGroup; 2] {
        [&self.g3, &self.g5]
    }
}

fn hopf_suite(gs: &Groups) -> Outcome {
    let start = Instant::now();
    let g = &gs.g3;
    group_ok("l=3 hopf", &g.verify_hopf(), false)?;
    group_ok("l=3 quasitriangular", &g.verify_quasitriangular(), false)?;
    let t3 = start.elapsed();
    let g = &gs.g5;
    let mut skipped = group_ok("l=5 hopf", &g.verify_hopf(), true)?;
    let qt = g.verify_quasitriangular();
    skipped += group_ok("l=5 quasitriangular", &qt, true)?;
    let names = ["r_intertwines_coproduct", "delta_left_r", "delta_right_r"];
    if skipped == 0 {
        require("l=5", &qt, &names)?;
    }
    Ok(format!(
        "Hopf axioms, S^2 = Ad(K^-1), R D = D^op R, (D x id)R = R13 R23, (id x D)R = R13 R12 at l=3 ({t3:.1?}) and l=5 ({skipped} skipped)"
    ))
}

fn duality_suite(gs: &Groups) -> Outcome {
    let mut dims = vec![];
    for g in gs.both() {
        let (d, dim_c_r) = g.verify_duality().map_err(|e| e.to_string())?;
        let label = format!("l={}", g.l());
        group_ok(&label, &d, false)?;
        require(
            &label,
            &d,
            &["integral_unique", "phi_round_trip", "right_integral_in_c_r", "dim_c_r_equals_dim_z"],
        )?;
        dims.push(format!("l={}: dim C_r = dim Z = {dim_c_r}", g.l()));
    }
    Ok(format!("unique integral, phi round trip on the full basis, lambda_r in C_r; {}", dims.join(", ")))
}

fn center_suite(gs: &Groups) -> Outcome {
    let start = Instant::now();
    let mut out = vec![];
    for (g, expected) in [(&gs.g3, 4), (&gs.g5, 7)] {
        let l = g.l();
        let cs = g.central_subalgebras().map_err(|e| e.to_string())?;
        let orbits = table(1, l)?;
        let d = cs.dims();
        ensure(d.center == expected, || format!("l={l}: dim Z = {}", d.center))?;
        group_ok(&format!("l={l}"), &g.verify_center(&cs, &orbits), false)?;
        out.push(format!("l={l}: Z={} Z~={} Z'={} meet={} idempotents={}", d.center, d.ztilde, d.zprime, d.intersection, d.idempotents));
    }
    within(start, Duration::from_secs(600), "center suite")?;
    Ok(out.join("; "))
}

fn fourier_suite(gs: &Groups) -> Outcome {
    let mut out = vec![];
    for g in gs.both() {
        let cs = g.central_subalgebras().map_err(|e| e.to_string())?;
        let report = g.fourier_report(&cs).map_err(|e| e.to_string())?;
        group_ok(&format!("l={}", g.l()), &g.verify_fourier(&report), false)?;
        let c = report.square_scalar.as_ref().map_or("none".into(), ToString::to_string);
        let c1 = report.one_scalar.as_ref().map_or("none".into(), ToString::to_string);
        out.push(format!("l={}: F^2 = ({c}) S^-1, F(1) = ({c1}) Lambda", g.l()));
    }
    Ok(out.join("; "))
}

fn cross_module(gs: &Groups) -> Outcome {
    let g = &gs.g5;
    group_ok("l=5", &g.verify_character_ring().map_err(|e| e.to_string())?, false)?;
    Ok("l=5: J(xi(i)) J(xi(j)) has the character ring structure constants".into())
}

fn main() {
    let mut results: Vec<(usize, &str, Outcome, Duration)> = vec![];
    let mut record = |n: usize, name: &'static str, f: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let (tag, text) = match &outcome {
            Ok(s) => ("PASS", s.as_str()),
            Err(s) => ("FAIL", s.as_str()),
        };
        println!("criterion {n} [{name}]: {tag} ({elapsed:.2?}) {text}");
        results.push((n, name, outcome, elapsed));
    };
    record(1, "admissibility", &admissibility);
    record(2, "orbit tables", &orbit_tables);
    record(3, "dimension formulas", &dimension_formulas);
    record(4, "character ring", &character_ring);

    let groups = SmallQuantumGroup::new(3).and_then(|g3| Ok(Groups { g3, g5: SmallQuantumGroup::new(5)? }));
    match groups {
        Ok(gs) => {
            record(5, "hopf and quasitriangular", &|| hopf_suite(&gs));
            record(6, "integrals and duality", &|| duality_suite(&gs));
            record(7, "center structure", &|| center_suite(&gs));
            record(8, "fourier transform", &|| fourier_suite(&gs));
            record(9, "cross-module consistency", &|| cross_module(&gs));
        }
        Err(e) => {
            for (n, name) in [(5, "hopf and quasitriangular"), (6, "integrals and duality"), (7, "center structure"), (8, "fourier transform"), (9, "cross-module consistency")] {
                record(n, name, &|| Err(format!("could not build u_q(sl2): {e}")));
            }
        }
    }

    let passed = results.iter().filter(|r| r.2.is_ok()).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
