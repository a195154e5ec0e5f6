use std::io::Write;
use std::path::Path;

use conormal_core::charp::{self, Certificate};
use conormal_core::classes::{a_invariant, chow_bidegree, cohomology_basis, motivic_class, resolution_betti};
use conormal_core::fans::{self, Block, LatticeVector, Sign, SquareBiflat};
use conormal_core::matroid::sets;
use conormal_core::{Configuration, Matroid, Scalar};
use serde_json::{json, Value};

use crate::input::Input;
use crate::{Failure, OutputFormat, WhichFan};

/// A finished report. A verification failure still prints the report, then
/// exits with code 3.
pub struct Output {
    pub text: Vec<String>,
    pub json: Value,
    pub verification_failure: Option<String>,
}

impl Output {
    fn new(seed: u64, command: &str) -> Self {
        Output {
            text: vec![format!("seed: {seed}")],
            json: json!({ "seed": seed, "command": command }),
            verification_failure: None,
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    fn set(&mut self, key: &str, v: Value) {
        self.json[key] = v;
    }

    fn fail(&mut self, msg: String) {
        self.verification_failure.get_or_insert(msg);
    }

    /// Writes the report to stdout. A closed pipe ends output quietly.
    pub fn print(&self, format: OutputFormat) {
        let mut stdout = std::io::stdout().lock();
        let _ = match format {
            OutputFormat::Text => self.text.iter().try_for_each(|l| writeln!(stdout, "{l}")),
            OutputFormat::Json => {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&self.json).expect("serializable"))
            }
        };
    }
}

fn scalars(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn labels(m: &Matroid, flats: &[sets::Subset]) -> Vec<String> {
    flats.iter().map(|&f| m.label(f)).collect()
}

pub fn matroid_info(input: &Input, seed: u64) -> Result<Output, Failure> {
    let m = input.matroid();
    let mut out = Output::new(seed, "matroid-info");
    out.line(format!("ground set: {} elements, rank {}", m.n(), m.rank()));
    out.line(format!("bases: {}", m.bases().len()));
    let lattice = m.flats();
    let mut by_rank = Vec::new();
    for k in 0..=m.rank() {
        let names = labels(m, &lattice.of_rank(k));
        out.line(format!("flats of rank {k}: {}", names.join(", ")));
        by_rank.push(names);
    }
    let connected = m.is_connected();
    let round = m.is_round();
    let nonround = labels(m, &m.nonround_flats());
    out.line(format!("connected: {connected}"));
    if round {
        out.line("round: true");
    } else {
        out.line(format!("round: false; non-round flats: {}", nonround.join(", ")));
    }
    let chi = m.char_poly().map(|p| p.to_string());
    let reduced = m.reduced_char_poly().map(|p| p.to_string());
    let show = |r: &Result<String, _>| match r {
        Ok(s) => s.clone(),
        Err(e) => format!("unavailable ({e})"),
    };
    out.line(format!("characteristic polynomial: {}", show(&chi)));
    out.line(format!("reduced characteristic polynomial: {}", show(&reduced)));
    let dual = m.dual();
    out.line(format!(
        "dual: rank {}, {} bases, round: {}, connected: {}",
        dual.rank(),
        dual.bases().len(),
        dual.is_round(),
        dual.is_connected()
    ));
    out.set("n", json!(m.n()));
    out.set("rank", json!(m.rank()));
    out.set("bases", json!(m.bases().len()));
    out.set("flats_by_rank", json!(by_rank));
    out.set("connected", json!(connected));
    out.set("round", json!(round));
    out.set("nonround_flats", json!(nonround));
    out.set("char_poly", json!(chi.ok()));
    out.set("reduced_char_poly", json!(reduced.ok()));
    out.set("dual", json!({ "rank": dual.rank(), "bases": dual.bases().len(), "round": dual.is_round() }));
    if let Input::Realized(c) = input {
        let witnesses = witnesses(c, seed)?;
        for w in &witnesses {
            out.line(format!(
                "witness over {} ({}): w = {}, β = {}, jacobian rank {} of {}",
                w["flat"].as_str().unwrap_or_default(),
                w["kind"].as_str().unwrap_or_default(),
                w["w"].as_str().unwrap_or_default(),
                w["beta"].as_str().unwrap_or_default(),
                w["jacobian_rank"],
                c.rank()
            ));
        }
        out.set("witnesses", Value::Array(witnesses));
    }
    Ok(out)
}

/// A smooth point over the generic stratum and a singular point over each
/// non-round flat, all drawn from `seed`.
fn witnesses(c: &Configuration, seed: u64) -> Result<Vec<Value>, Failure> {
    let m = c.matroid();
    let mut found = Vec::new();
    let generic = m.closure(0);
    if let Ok((w, beta)) = c.sample_smooth_witness(generic, seed) {
        found.push(("smooth", generic, w, beta));
    }
    for f in m.nonround_flats() {
        if let Some((w, beta)) = c.sample_singular_witness(f, seed)? {
            found.push(("singular", f, w, beta));
        }
    }
    found
        .into_iter()
        .map(|(kind, f, w, beta)| {
            let rank = c.jacobian_rank(&w, &beta)?;
            Ok(json!({
                "flat": m.label(f),
                "kind": kind,
                "w": scalars(&w),
                "beta": scalars(&beta),
                "jacobian_rank": rank,
            }))
        })
        .collect()
}

pub fn psi(input: &Input, seed: u64, check_det: bool) -> Result<Output, Failure> {
    let c = input.configuration()?;
    let psi = c.psi_basis_expansion();
    let rendered = psi.to_colex_string();
    let mut out = Output::new(seed, "psi");
    out.line(format!("psi: {rendered}"));
    out.line(format!("terms: {}", psi.num_terms()));
    out.set("psi", json!(rendered));
    out.set("terms", json!(psi.num_terms()));
    if check_det {
        let verdict = match c.psi_det() {
            Ok(d) if d == *psi => "pass",
            Ok(_) | Err(conormal_core::ConfigError::Mismatch) => "fail",
            Err(e) => return Err(e.into()),
        };
        out.line(format!("determinant check: {verdict}"));
        out.set("det_check", json!(verdict));
        if verdict == "fail" {
            out.fail("determinant expansion differs from the basis expansion".into());
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct FanChecks {
    pub unimodular: bool,
    pub maps: bool,
    pub refines: bool,
}

fn ray_vector(v: &LatticeVector) -> String {
    let block = |b: &[i64]| b.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    if v.num_blocks() > 1 {
        format!("({} | {})", block(v.block(0)), block(v.block(1)))
    } else {
        format!("({})", block(v.block(0)))
    }
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

pub fn fan(
    input: &Input,
    seed: u64,
    which: WhichFan,
    checks: FanChecks,
    write: Option<&Path>,
) -> Result<Output, Failure> {
    let m = input.matroid();
    let (name, fan) = match which {
        WhichFan::Bergman => ("bergman", fans::bergman_fan(m)?),
        WhichFan::SquareConormal => ("square-conormal", fans::square_conormal_fan(m)?),
        WhichFan::Delta => ("delta", fans::delta_fan(m)?),
        WhichFan::DeltaTilde => ("delta-tilde", fans::delta_tilde_fan(m)?),
    };
    let mut out = Output::new(seed, "fan");
    out.line(format!("fan: {name}"));
    out.line(format!("rays: {}", fan.rays().len()));
    out.line(format!("maximal cones: {}", fan.count_maximal_cones()));
    out.line(format!("dimension: {}", fan.dim()));
    out.line(format!("pure: {}, smooth: {}", fan.is_pure(), fan.is_smooth()));
    for r in fan.rays() {
        out.line(format!("  {:<12} {}", r.label, ray_vector(&r.vector)));
    }
    out.set("which", json!(name));
    out.set("fan", serde_json::from_str(&fan.to_json()).expect("valid JSON"));
    let mut report = serde_json::Map::new();

    if checks.unimodular {
        let bad = fan.maximal_cones().iter().filter(|c| !fans::is_unimodular(&fan.cone(c))).count();
        out.line(format!(
            "unimodular: {} ({} of {} maximal cones fail)",
            pass_fail(bad == 0),
            bad,
            fan.count_maximal_cones()
        ));
        report.insert("unimodular".into(), json!(pass_fail(bad == 0)));
        if bad > 0 {
            out.fail(format!("{bad} maximal cones are not unimodular"));
        }
    }
    if checks.maps {
        let single_block = fan.rays().first().is_none_or(|r| r.vector.num_blocks() == 1);
        let mut parts = Vec::new();
        let targets: &[(&str, Block, Sign)] = if single_block {
            &[("π1", Block::First, Sign::Plus)]
        } else {
            &[("π1", Block::First, Sign::Plus), ("-π2", Block::Second, Sign::Minus)]
        };
        for &(label, block, sign) in targets {
            let bad = fan.coordinate_map_violations(block, sign);
            parts.push(format!("{label}: {}", pass_fail(bad.is_empty())));
            report.insert(label.into(), json!(pass_fail(bad.is_empty())));
            if let Some(first) = bad.first() {
                let names: Vec<&str> = first.iter().map(|&i| fan.rays()[i].label.as_str()).collect();
                out.fail(format!("{label} maps the cone [{}] into no coordinate cone", names.join(", ")));
            }
        }
        out.line(parts.join(", "));
    }
    if checks.refines {
        if !matches!(which, WhichFan::Delta | WhichFan::DeltaTilde) {
            return Err(Failure::Compute(
                "--verify-refines compares the delta-tilde and delta fans; use --which delta or delta-tilde"
                    .into(),
            ));
        }
        let fine = fans::delta_tilde_fan(m)?;
        let coarse = fans::delta_fan(m)?;
        let ok = fans::refines(&fine, &coarse)?;
        out.line(format!("delta-tilde refines delta: {}", pass_fail(ok)));
        report.insert("refines".into(), json!(pass_fail(ok)));
        if !ok {
            out.fail("delta-tilde does not refine delta".into());
        }
    }
    if !report.is_empty() {
        out.set("checks", Value::Object(report));
    }
    if let Some(path) = write {
        std::fs::write(path, fan.to_json())
            .map_err(|e| Failure::Compute(format!("{}: {e}", path.display())))?;
        out.line(format!("written: {}", path.display()));
    }
    Ok(out)
}

fn parse_subset(m: &Matroid, text: &str) -> Result<sets::Subset, Failure> {
    sets::parse_label(text, m.n())
        .ok_or_else(|| Failure::Parse(format!("{text:?} is not a subset of a {}-element set", m.n())))
}

fn incidence_word(meets: bool) -> &'static str {
    if meets {
        "meet"
    } else {
        "disjoint"
    }
}

pub fn resolve_report(
    input: &Input,
    seed: u64,
    flat: &str,
    subset: &str,
    incidence: &[String],
) -> Result<Output, Failure> {
    let m = input.matroid();
    let f = parse_subset(m, flat)?;
    let s = parse_subset(m, subset)?;
    let fibre = fans::fibre_fan(m, f, s)?;
    let biflats = fans::square_biflats(m)?;
    let lookup = |label: &str| -> Result<SquareBiflat, Failure> {
        let b = SquareBiflat::parse(label, m.n())?;
        if biflats.contains(&b) {
            Ok(b)
        } else {
            Err(Failure::Compute(format!("{label} is not a square biflat of the matroid")))
        }
    };

    let mut out = Output::new(seed, "resolve-report");
    out.line(format!("fibre fan over F={}, S={}", m.label(f), m.label(s)));
    let rays: Vec<SquareBiflat> = fibre.rays().iter().map(|r| lookup(&r.label)).collect::<Result<_, _>>()?;
    out.line(format!("rays: {}", rays.len()));
    out.line("divisors:");
    for r in fibre.rays() {
        out.line(format!("  {:<12} {}", r.label, ray_vector(&r.vector)));
    }
    let faces: Vec<usize> = (1..=fibre.dim()).map(|k| fibre.cones_of_size(k).len()).collect();
    out.line(format!(
        "faces by dimension: {}",
        faces.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    ));
    out.line("pairwise incidence:");
    let mut table = Vec::new();
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            let meets = fans::divisor_incidence(&[rays[i], rays[j]]);
            out.line(format!("  {} · {}: {}", rays[i].label(), rays[j].label(), incidence_word(meets)));
            table.push(json!([rays[i].label(), rays[j].label(), meets]));
        }
    }
    out.set("flat", json!(m.label(f)));
    out.set("subset", json!(m.label(s)));
    out.set("rays", json!(fibre.ray_labels()));
    out.set("faces_by_dimension", json!(faces));
    out.set("fan", serde_json::from_str(&fibre.to_json()).expect("valid JSON"));
    out.set("incidence", Value::Array(table));

    if !incidence.is_empty() {
        let query: Vec<SquareBiflat> = incidence
            .iter()
            .flat_map(|s| s.split(','))
            .map(|s| lookup(s.trim()))
            .collect::<Result<_, _>>()?;
        let meets = fans::divisor_incidence(&query);
        let names: Vec<String> = query.iter().map(SquareBiflat::label).collect();
        out.line(format!("incidence({}): {}", names.join(", "), incidence_word(meets)));
        out.set("query", json!({ "divisors": names, "meet": meets }));
    }
    Ok(out)
}

pub fn classes(input: &Input, seed: u64) -> Result<Output, Failure> {
    let m = input.matroid();
    let (n, r) = (m.n(), m.rank());
    let lambda = motivic_class(m);
    let bidegree = chow_bidegree(n, r)?;
    let a = a_invariant(n, r)?;
    let betti = resolution_betti(n, r)?;
    let mut out = Output::new(seed, "classes");
    let lambda_text = match &lambda {
        Ok(p) => p.to_string(),
        Err(e) => format!("unavailable ({e})"),
    };
    out.line(format!("[Λ]={lambda_text}; bidegree {bidegree}; a-inv={a}; type={}", betti.cm_type()));
    let cohomology = cohomology_basis(m);
    match &cohomology {
        Ok(ranks) => out.line(format!(
            "cohomology ranks: {}",
            ranks.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
        )),
        Err(e) => out.line(format!("cohomology ranks: unavailable ({e})")),
    }
    out.line(format!("regularity: {}", betti.regularity()));
    out.line("resolution:");
    out.text.extend(betti.to_string().lines().map(|l| format!("  {l}")));
    out.set("motivic_class", json!(lambda.as_ref().ok().map(ToString::to_string)));
    out.set("bidegree", json!(bidegree.to_string()));
    out.set("a_invariant", json!(a));
    out.set("type", json!(betti.cm_type()));
    out.set("regularity", json!(betti.regularity()));
    out.set("cohomology_ranks", json!(cohomology.ok()));
    out.set("betti", serde_json::to_value(&betti).expect("serializable"));
    Ok(out)
}

fn certificate_lines(out: &mut Output, cert: &Certificate) {
    let kind = serde_json::to_value(cert.kind).expect("serializable");
    let mut head = format!("{}: {}", kind.as_str().unwrap_or_default(), pass_fail(cert.passed()));
    if let Some(p) = cert.p {
        head.push_str(&format!(" (p = {p})"));
    }
    out.line(head);
    if !cert.permutation.is_empty() {
        let perm: Vec<String> = cert.permutation.iter().map(ToString::to_string).collect();
        out.line(format!("  column order: {}", perm.join(" ")));
    }
    if !cert.leads.is_empty() {
        out.line(format!("  leads: {}", cert.leads.join(", ")));
    }
    if let Some(w) = &cert.witness {
        out.line(format!("  witness: {w}"));
    }
    for g in &cert.generators {
        out.line(format!("  generator: {g}"));
    }
    if let Some(reason) = &cert.reason {
        out.line(format!("  reason: {reason}"));
    }
    for c in &cert.cited {
        out.line(format!("  cited: {c}"));
    }
}

pub fn charp(input: &Input, seed: u64, p: u64, strict: bool) -> Result<Output, Failure> {
    let c = input.configuration()?;
    let (standard, mut initial) = charp::certify_initial_ideal(c)?;
    if strict {
        let permutation = initial.permutation.clone();
        initial = charp::strict_lead_term_certificate(&standard)?;
        initial.permutation = permutation;
    }
    let mut purity = charp::fedder_witness(&standard, p)?;
    purity.permutation = initial.permutation.clone();
    let linkage = charp::linkage_certificate(&standard)?;

    let mut out = Output::new(seed, "charp");
    out.line(format!("order: {}", charp::ORDER_LABEL));
    let certs = [initial, purity, linkage];
    for cert in &certs {
        certificate_lines(&mut out, cert);
        if !cert.passed() {
            out.fail(cert.reason.clone().unwrap_or_else(|| "certificate failed".into()));
        }
    }
    out.set("p", json!(p));
    out.set(
        "certificates",
        Value::Array(certs.iter().map(|c| serde_json::to_value(c).expect("serializable")).collect()),
    );
    Ok(out)
}
