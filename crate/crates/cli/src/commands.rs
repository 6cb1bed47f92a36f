use std::fmt::Write as _;
use std::path::PathBuf;

use hyperred::arith::{factor, Int, Rat};
use hyperred::bounds::{bounds_report, pi_odd, FieldDescriptor};
use hyperred::curves::{
    bad_odd_primes, candidate_primes, cluster_picture, has_pot_good_reduction_at, model_discriminant,
    unit_criterion_at, RosenhainCurve,
};
use hyperred::enumerate::enumerate_genus_g;
use hyperred::forge::{
    build_cyclotomic_curve, build_genus5_curve, build_tuple_curve, find_cyclotomic_witness_with,
    find_genus5_witness_with, find_tuple_witness_with, low_omega_search, ConstructionMode, FamilyWitness,
    SearchControl, SearchOutcome, Verdict,
};
use hyperred::sunit::{exceptional_triple_search, lambda_set, s3_orbits, solve_two_term, PrimeSet, DEFAULT_BOUND};
use hyperred::Error;
use serde::Serialize;
use serde_json::json;

use crate::cli::{
    BoundsArgs, EnumerateArgs, ExceptionalArgs, ForgeCommand, OmegaArgs, PiOddArgs, ReduceArgs, SearchArgs, SunitArgs,
};
use crate::config::Config;
use crate::output::Report;

const DEFAULT_CAP: u64 = 10_000_000;

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, Error> {
    text.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| Error::Parse(format!("bad {what} {:?}", t.trim()))))
        .collect()
}

fn prime_set(flag: Option<&str>, cfg: &Config) -> Result<PrimeSet, Error> {
    let text = flag.or(cfg.s.as_deref()).unwrap_or("2,3");
    text.parse()
}

fn field(flag: Option<&str>, cfg: &Config) -> Result<FieldDescriptor, Error> {
    flag.or(cfg.field.as_deref()).unwrap_or("q").parse()
}

fn genus(flag: Option<usize>, cfg: &Config, default: usize) -> usize {
    flag.or(cfg.genus).unwrap_or(default)
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ")
}

#[derive(Serialize)]
struct PrimeVerdict {
    prime: String,
    /// `None` at 2, which is never decided.
    potentially_good: Option<bool>,
    unit_criterion: Option<bool>,
    cluster_picture: Option<String>,
}

pub fn reduce(a: &ReduceArgs) -> Result<Report, Error> {
    let roots: Vec<Rat> = parse_list(&a.roots, "root")?;
    let twist: Rat = match &a.twist {
        Some(t) => t.parse()?,
        None => Rat::one(),
    };
    let curve = RosenhainCurve::with_twist(twist, roots)?;
    let primes: Vec<Int> = match &a.primes {
        Some(list) if !a.auto => parse_list(list, "prime")?,
        _ => candidate_primes(&curve).into_iter().collect(),
    };
    let mut verdicts = Vec::new();
    for p in &primes {
        if *p == Int::from(2) {
            verdicts.push(PrimeVerdict {
                prime: p.to_string(),
                potentially_good: None,
                unit_criterion: None,
                cluster_picture: None,
            });
            continue;
        }
        let good = has_pot_good_reduction_at(&curve, p)?;
        // The unit form needs 0 and 1 among the roots.
        let unit = if curve.is_normalized() { Some(unit_criterion_at(&curve, p)?) } else { None };
        if unit.is_some_and(|u| u != good) {
            return Err(Error::Invariant(format!("criteria disagree at {p}")));
        }
        verdicts.push(PrimeVerdict {
            prime: p.to_string(),
            potentially_good: Some(good),
            unit_criterion: unit,
            cluster_picture: Some(cluster_picture(&curve, p)?.to_string()),
        });
    }
    let bad = bad_odd_primes(&curve);
    if !bad.verify() {
        return Err(Error::Invariant("bad-prime witnesses do not re-verify".into()));
    }
    let disc = model_discriminant(&curve);
    let disc_num = factor(disc.numer())?;
    let disc_den = factor(disc.denom())?;

    let mut text = format!("{curve}\ngenus {}\n", curve.genus());
    for v in &verdicts {
        match (v.potentially_good, &v.cluster_picture) {
            (Some(good), Some(pic)) => {
                let word = if good { "potentially good" } else { "not potentially good" };
                writeln!(text, "p = {}: {word}; clusters {pic}", v.prime).unwrap();
            }
            _ => writeln!(text, "p = {}: undetermined, counted as bad", v.prime).unwrap(),
        }
    }
    writeln!(text, "B_odd = {{{}}}", join(&bad.primes)).unwrap();
    write!(text, "model discriminant = {disc}").unwrap();
    let fac = |f: &hyperred::arith::Factorization| {
        f.factors.iter().map(|(p, e)| format!("{p}^{e}")).collect::<Vec<_>>().join(" * ")
    };
    write!(text, " = {}", fac(&disc_num)).unwrap();
    if !disc_den.factors.is_empty() {
        write!(text, " / {}", fac(&disc_den)).unwrap();
    }

    let args = json!({ "roots": curve.roots(), "twist": curve.twist(), "primes": primes.iter().map(|p| p.to_string()).collect::<Vec<_>>() });
    let payload = json!({
        "curve": curve,
        "verdicts": verdicts,
        "bad_primes": bad,
        "discriminant": disc,
        "discriminant_factorization": { "numerator": disc_num, "denominator": disc_den },
    });
    Ok(Report::new("reduce", args, payload, text))
}

pub fn sunit(a: &SunitArgs, cfg: &Config) -> Result<Report, Error> {
    let s = prime_set(a.s.as_deref(), cfg)?;
    let bound = a.bound.or(cfg.bound).unwrap_or(DEFAULT_BOUND);
    let solutions = solve_two_term(&s, bound);
    let orbits = if a.orbits { Some(s3_orbits(&lambda_set(&s, bound))?) } else { None };

    let mut text = format!("{} solutions of x + y = 1 in S-units, S = {s}, exponents up to {bound}\n", solutions.len());
    for sol in &solutions {
        writeln!(text, "  x = {}, y = {}", sol.x, sol.y).unwrap();
    }
    if let Some(orbits) = &orbits {
        let sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
        writeln!(text, "orbits under x -> 1 - x, x -> 1/x: sizes {sizes:?}").unwrap();
        for o in orbits {
            writeln!(text, "  {{{}}}", join(o)).unwrap();
        }
    }
    let args = json!({ "s": s, "bound": bound, "orbits": a.orbits });
    let payload = json!({ "s": s, "bound": bound, "count": solutions.len(), "solutions": solutions, "orbits": orbits });
    Ok(Report::new("sunit", args, payload, text.trim_end().to_string()))
}

pub fn enumerate(a: &EnumerateArgs, cfg: &Config) -> Result<Report, Error> {
    let s = prime_set(a.s.as_deref(), cfg)?;
    let bound = a.bound.or(cfg.bound).unwrap_or(DEFAULT_BOUND);
    let g = genus(a.genus, cfg, 2);
    let cap = a.cap.or(cfg.cap).unwrap_or(DEFAULT_CAP);
    let e = enumerate_genus_g(&s, g, bound, cap)?;

    let mut text = format!(
        "genus {g}, S = {s}, bound {bound}: {} values of λ, {} root sets, {} classes{}\n",
        e.lambda_count,
        e.candidates,
        e.classes.len(),
        if e.exhaustive { "" } else { " (search capped, incomplete)" }
    );
    for c in &e.classes {
        writeln!(
            text,
            "  {{{}}}: {} root sets, B_odd = {{{}}}, discriminant {}",
            join(&c.canonical),
            c.members.len(),
            join(&c.bad_primes.primes),
            c.discriminant
        )
        .unwrap();
    }
    let args = json!({ "s": s, "bound": bound, "genus": g, "cap": cap });
    Ok(Report::new("enumerate", args, &e, text.trim_end().to_string()))
}

pub fn bounds(a: &BoundsArgs, cfg: &Config) -> Result<Report, Error> {
    let k = field(a.field.as_deref(), cfg)?;
    let g = a.genus.or(cfg.genus.map(|g| g as u64)).unwrap_or(2);
    let r = bounds_report(&k, g)?;
    let args = json!({ "field": k.to_string(), "genus": g });
    let text = r.to_string();
    Ok(Report::new("bounds", args, &r, text))
}

pub fn pi_odd_cmd(a: &PiOddArgs, cfg: &Config) -> Result<Report, Error> {
    let k = field(a.field.as_deref(), cfg)?;
    let value = pi_odd(&k, a.x)?;
    let args = json!({ "field": k.to_string(), "x": a.x });
    let text = format!("pi_odd({k}, {}) = {value}", a.x);
    Ok(Report::new("pi-odd", args, json!({ "field": k, "x": a.x, "value": value }), text))
}

pub fn exceptional(a: &ExceptionalArgs, cfg: &Config) -> Result<Report, Error> {
    let s = prime_set(a.s.as_deref(), cfg)?;
    let bound = a.bound.or(cfg.bound).unwrap_or(12);
    if a.from > a.to {
        return Err(Error::OutOfRange(format!("prime range {}..={}", a.from, a.to)));
    }
    let hits = exceptional_triple_search(&s, a.from..=a.to, bound);
    for (_, w) in &hits {
        if !w.verify(&s) {
            return Err(Error::Invariant(format!("triple witness at {} does not re-verify", w.p)));
        }
    }
    let mut text = format!("S = {s}, bound {bound}, primes in [{}, {}]: {} with witnesses\n", a.from, a.to, hits.len());
    for (p, w) in &hits {
        writeln!(text, "  p = {p}: (x, y, z) = ({}, {}, {})", w.x, w.y, w.z).unwrap();
    }
    let args = json!({ "s": s, "bound": bound, "from": a.from, "to": a.to });
    let witnesses: Vec<_> = hits.iter().map(|(_, w)| w).collect();
    let report = Report::new("exceptional", args, json!({ "witnesses": witnesses }), text.trim_end().to_string());
    Ok(if hits.is_empty() { report.with_code(1) } else { report })
}

fn control(a: &SearchArgs, cfg: &Config) -> SearchControl {
    let (checkpoint, resume): (Option<PathBuf>, bool) = match (&a.resume, &a.checkpoint) {
        (Some(p), _) => (Some(p.clone()), true),
        (None, Some(p)) => (Some(p.clone()), false),
        (None, None) => (None, false),
    };
    let mut ctl = SearchControl { checkpoint, resume, stop_after_segments: a.interrupt_after, ..Default::default() };
    if let Some(n) = a.checkpoint_interval.or(cfg.checkpoint_interval) {
        ctl.interval = n.max(1);
    }
    ctl
}

fn witness_text(w: &FamilyWitness) -> String {
    format!(
        "{}\nB_odd = {{{}}}; with 2: {} of budget {}\nverdict: {}",
        w.curve,
        join(&w.bad_primes.primes),
        w.bad_count(),
        w.budget,
        if w.verdict == Verdict::Pass { "PASS" } else { "FAIL" }
    )
}

fn search_report(
    name: &str,
    args: serde_json::Value,
    outcome: SearchOutcome,
    build: impl FnOnce(u64) -> Result<FamilyWitness, Error>,
) -> Result<Report, Error> {
    let witness = match outcome.found() {
        Some(v) => {
            let w = build(v)?;
            if !w.verify() {
                return Err(Error::Invariant(format!("{name}: witness {v} does not re-verify")));
            }
            Some(w)
        }
        None => None,
    };
    let text = match (&outcome, &witness) {
        (SearchOutcome::Found { value }, Some(w)) => format!("{name}: least witness {value}\n{}", witness_text(w)),
        (SearchOutcome::NotFound { scanned_upto }, _) => format!("{name}: no witness up to {scanned_upto}"),
        (SearchOutcome::Interrupted { scanned_upto }, _) => {
            format!("{name}: stopped after {scanned_upto}; resume from the checkpoint")
        }
        _ => unreachable!("found outcomes carry a witness"),
    };
    let code = i32::from(witness.is_none());
    Ok(Report::new(name, args, json!({ "search": outcome, "witness": witness }), text).with_code(code))
}

pub fn forge(cmd: &ForgeCommand, cfg: &Config) -> Result<Report, Error> {
    match cmd {
        ForgeCommand::Tuple { search, mode } => {
            let g = genus(search.genus, cfg, 2);
            let mode: ConstructionMode = mode.as_deref().or(cfg.mode.as_deref()).unwrap_or("corrected").parse()?;
            let limit = search.limit.or(cfg.limit).unwrap_or(1_000_000);
            let outcome = find_tuple_witness_with(g, limit, &control(search, cfg))?;
            let args = json!({ "genus": g, "limit": limit, "mode": mode });
            search_report("forge tuple", args, outcome, |p| build_tuple_curve(g, &Int::from(p), mode))
        }
        ForgeCommand::Cyclotomic { search } => {
            let g = genus(search.genus, cfg, 2);
            let limit = search.limit.or(cfg.limit).unwrap_or(10_000_000);
            let outcome = find_cyclotomic_witness_with(g, limit, &control(search, cfg))?;
            let args = json!({ "genus": g, "limit": limit });
            search_report("forge cyclotomic", args, outcome, |k| build_cyclotomic_curve(g, &Int::from(k)))
        }
        ForgeCommand::Genus5 { search } => {
            if search.genus.is_some_and(|g| g != 5) {
                return Err(Error::OutOfRange("the genus-5 family has genus 5".into()));
            }
            let limit = search.limit.or(cfg.limit).unwrap_or(100_000);
            let outcome = find_genus5_witness_with(limit, &control(search, cfg))?;
            let args = json!({ "genus": 5, "limit": limit });
            search_report("forge genus5", args, outcome, |k| build_genus5_curve(&Int::from(k)))
        }
        ForgeCommand::Omega(OmegaArgs { genus: g, limit }) => {
            let g = genus(*g, cfg, 2);
            let limit = limit.or(cfg.limit).unwrap_or(1_000_000);
            let hit = low_omega_search(g, limit);
            let text = match hit {
                Some((k, w)) => format!("genus {g}: least k = {k}, omega = {w}"),
                None => format!("genus {g}: nothing up to {limit}"),
            };
            let payload = json!({ "genus": g, "limit": limit, "hit": hit.map(|(k, w)| json!({ "k": k, "omega": w })) });
            let report = Report::new("forge omega", json!({ "genus": g, "limit": limit }), payload, text);
            Ok(if hit.is_none() { report.with_code(1) } else { report })
        }
    }
}
