//! The subcommands. Exit status 0 means the requested property was
//! certified, 2 that it was not, 1 that the run itself failed.

use std::thread;

use catalog::{all_fixtures, fixture};
use continuation::{
    chain_from_json, chain_to_json, continue_branch, nk_validate_point, seed_point, track, BranchCertificate,
    ContinuationError, NKBounds, NKOptions, PointValidation, StepPolicy,
};
use interval_core::Interval;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use stability::{stability_over_segment, stability_test, SegmentOptions, SegmentStability, StabilityOptions, StabilityError};
use vortex_model::flow::integrate_full;
use vortex_model::vec3::V3;
use vortex_model::{fmt_f64, hamiltonian, momentum, FullConfiguration, HamiltonianScale, RingSystem, VortexParameters};

use crate::args::*;
use crate::input::{load, read, Input};
use crate::manifest::Run;
use crate::CliError;

/// Environment variable seeding every random choice of the CLI.
pub const SEED_VAR: &str = "VORTEX_CERT_SEED";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Certified,
    NotCertified,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Certified => 0,
            Outcome::NotCertified => 2,
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Certify(a) => certify(a),
        Command::Continue(a) => continue_cmd(a),
        Command::Stability(a) => stability_cmd(a),
        Command::Diagram(a) => diagram(a),
        Command::Simulate(a) => simulate(a),
        Command::Catalog(c) => catalog_cmd(c),
    }
}

fn workers(w: Option<usize>) -> usize {
    w.unwrap_or_else(|| thread::available_parallelism().map(|n| n.get()).unwrap_or(1)).max(1)
}

fn finite(flag: &str, x: f64) -> Result<f64, CliError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Input(format!("{flag} must be finite")))
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json serializes")
}

/// Timestamps belong to the manifest.
fn detach(mut c: BranchCertificate) -> BranchCertificate {
    c.provenance.created = None;
    c
}

fn note_input(run: &mut Run, input: &Input) {
    if let Some(p) = &input.path {
        run.input(p);
    }
    run.param("input", &input.label);
    run.param("shape", [input.rings.m(), input.rings.n(), input.rings.p()]);
}

fn not_validated(omega: [f64; 2], reason: &str, bounds: Option<&NKBounds>) -> Value {
    json!({"status": "NotValidated", "omega": omega, "reason": reason, "bounds": bounds})
}

/// Point validation at `omega`, or the NotValidated report.
fn validate_point(rs: &RingSystem, omega: f64) -> Result<Result<PointValidation, Value>, CliError> {
    let x = match seed_point(rs, omega) {
        Ok(x) => x,
        Err(e @ ContinuationError::NoConvergence { .. }) => {
            return Ok(Err(not_validated([omega, omega], &e.to_string(), None)))
        }
        Err(e) => return Err(e.into()),
    };
    match nk_validate_point(rs.shape, &x, &rs.u, &NKOptions::default()) {
        Ok(v) => Ok(Ok(v)),
        Err(ContinuationError::NotValidated(d)) => Ok(Err(not_validated(d.omega, &d.reason, Some(&d.bounds)))),
        Err(e) => Err(e.into()),
    }
}

fn certify(a: &CertifyArgs) -> Result<Outcome, CliError> {
    let mut run = Run::new("certify", &a.output);
    let input = load(&a.input)?;
    note_input(&mut run, &input);
    let omega = finite("--omega", a.omega.or(input.omega).unwrap_or(0.0))?;
    run.param("omega", omega);
    let rs = &input.rings;
    let outcome = match validate_point(rs, omega)? {
        Ok(v) => {
            let cert = detach(v.certificate(rs.shape));
            let mut j = serde_json::to_value(&cert).expect("certificate serializes");
            j["radii"] = json!(v.radii);
            run.stage("validation", "validated");
            run.artifact(&pretty(&j))?;
            run.summary(
                &format!("validated: {} at omega = {omega}, r0 = {:e}", input.label, v.r0()),
                json!({"status": "validated", "omega": omega, "r0": v.r0()}),
            );
            Outcome::Certified
        }
        Err(report) => {
            run.stage("validation", "NotValidated");
            run.artifact(&pretty(&report))?;
            run.summary(&format!("not validated: {}", report["reason"].as_str().unwrap_or("")), report.clone());
            Outcome::NotCertified
        }
    };
    run.finish()?;
    Ok(outcome)
}

/// Color of a segment whose stability was not examined.
fn existence_color(c: &BranchCertificate) -> &'static str {
    if c.status == "validated" {
        "yellow"
    } else {
        "unverified"
    }
}

fn continue_cmd(a: &ContinueArgs) -> Result<Outcome, CliError> {
    let mut run = Run::new("continue", &a.output);
    let input = load(&a.input)?;
    note_input(&mut run, &input);
    let from = finite("--omega-from", a.omega_from.or(input.omega).unwrap_or(0.0))?;
    let to = finite("--omega-to", a.omega_to)?;
    if !(a.step > 0.0 && a.step.is_finite()) {
        return Err(CliError::Input("--step must be positive".into()));
    }
    let policy = StepPolicy {
        initial: a.step,
        max: a.step,
        rigor: !a.no_rigor,
        workers: workers(a.workers),
        ..StepPolicy::default()
    };
    run.param("omega_from", from);
    run.param("omega_to", to);
    run.param("step", a.step);
    run.param("workers", policy.workers);
    run.param("rigor", policy.rigor);

    let rs = &input.rings;
    let walk = || -> Result<Vec<BranchCertificate>, ContinuationError> {
        if !(to > from) {
            return Ok(Vec::new());
        }
        // reach the start along the branch through the input
        let base = input.omega.unwrap_or(from);
        let mut start = seed_point(rs, base)?;
        if base != from {
            start = track(rs.shape, &start, from, &policy)?.pop().expect("walk keeps its start");
        }
        continue_branch(&start.rings(rs.shape)?, from, to, &policy)
    };
    let (chain, stall) = match walk() {
        Ok(chain) => (chain, None),
        Err(ContinuationError::BranchStalled {
            omega,
            certificates,
            last,
        }) => {
            let reason = last.map(|d| d.to_string()).unwrap_or_else(|| "stalled".into());
            (certificates, Some((omega, reason)))
        }
        Err(e @ ContinuationError::NoConvergence { .. }) => (Vec::new(), Some((from, e.to_string()))),
        Err(e) => return Err(e.into()),
    };
    let chain: Vec<BranchCertificate> = chain.into_iter().map(detach).collect();
    run.artifact(&chain_to_json(&chain))?;
    let segments: Vec<Value> = chain
        .iter()
        .map(|c| json!({"omega": c.omega, "status": existence_color(c)}))
        .collect();
    let mut text = format!("{} segments on [{from}, {to}]", chain.len());
    let stall_json = match &stall {
        Some((omega, reason)) => {
            run.stage("continuation", format!("stalled at omega = {omega}"));
            text += &format!("; black on [{omega}, {to}]: {reason}");
            json!({"omega": [omega, to], "status": "black", "reason": reason})
        }
        None => {
            run.stage("continuation", if policy.rigor { "validated" } else { "numeric" });
            Value::Null
        }
    };
    run.summary(&text, json!({"segments": segments, "stall": stall_json}));
    run.finish()?;
    Ok(if stall.is_some() {
        Outcome::NotCertified
    } else {
        Outcome::Certified
    })
}

/// Segment verdicts in chain order, `k` segments at a time.
fn segment_verdicts(chain: &[BranchCertificate], k: usize) -> Vec<Result<SegmentStability, StabilityError>> {
    let opts = SegmentOptions::default();
    let mut out = Vec::with_capacity(chain.len());
    for batch in chain.chunks(k.max(1)) {
        let done: Vec<_> = thread::scope(|s| {
            let handles: Vec<_> = batch.iter().map(|c| s.spawn(|| stability_over_segment(c, &opts))).collect();
            handles.into_iter().map(|h| h.join().expect("stability worker panicked")).collect()
        });
        out.extend(done);
    }
    out
}

fn segment_color(c: &BranchCertificate, s: &Result<SegmentStability, StabilityError>) -> &'static str {
    match s {
        _ if c.status != "validated" => "black",
        Ok(s) if s.is_stable() => "green",
        _ => "yellow",
    }
}

fn stability_cmd(a: &StabilityArgs) -> Result<Outcome, CliError> {
    let mut run = Run::new("stability", &a.output);
    let k = workers(a.workers);
    run.param("workers", k);
    let outcome = if let Some(path) = &a.chain {
        run.input(path);
        let chain = chain_from_json(&read(path)?)?;
        let verdicts = segment_verdicts(&chain, k);
        let mut counts = std::collections::BTreeMap::<&str, usize>::new();
        let entries: Vec<Value> = chain
            .iter()
            .zip(&verdicts)
            .map(|(c, s)| {
                let mut j = match s {
                    Ok(s) => s.to_json(),
                    Err(e) => json!({"omega": c.omega, "verdict": "Inconclusive", "reason": e.to_string()}),
                };
                j["color"] = json!(segment_color(c, s));
                *counts.entry(segment_color(c, s)).or_default() += 1;
                j
            })
            .collect();
        run.artifact(&pretty(&Value::Array(entries)))?;
        let stable = verdicts.iter().all(|s| matches!(s, Ok(s) if s.is_stable()));
        run.stage("stability", if stable { "CertifiedStable" } else { "not certified" });
        let text: Vec<String> = counts.iter().map(|(c, n)| format!("{n} {c}")).collect();
        run.summary(
            &format!("{} segments: {}", chain.len(), text.join(", ")),
            json!({"segments": chain.len(), "colors": counts, "stable": stable}),
        );
        if stable {
            Outcome::Certified
        } else {
            Outcome::NotCertified
        }
    } else {
        let input = load(&a.input)?;
        note_input(&mut run, &input);
        let omega = finite("--omega", a.omega.or(input.omega).unwrap_or(0.0))?;
        run.param("omega", omega);
        let rs = &input.rings;
        match validate_point(rs, omega)? {
            Err(report) => {
                run.stage("validation", "NotValidated");
                run.artifact(&pretty(&report))?;
                run.summary("not validated", report.clone());
                Outcome::NotCertified
            }
            Ok(v) => {
                run.stage("validation", "validated");
                let e = v.enclosure();
                let u: Vec<V3<Interval>> = (0..rs.n()).map(|j| [e[3 * j], e[3 * j + 1], e[3 * j + 2]]).collect();
                let opts = StabilityOptions {
                    parallel: k > 1,
                    ..StabilityOptions::default()
                };
                let verdict = stability_test(&rs.shape, &u, Interval::point(omega), &opts)?;
                let mut j = verdict.to_json();
                j["color"] = json!(if verdict.is_stable() { "green" } else { "yellow" });
                run.stage("stability", verdict.verdict.label());
                run.artifact(&pretty(&j))?;
                let mut text = format!("{}: {}", input.label, verdict.verdict.label());
                if let Some(r) = j.get("reason").and_then(|r| r.as_str()) {
                    text += &format!(" ({r})");
                }
                run.summary(&text, json!({"verdict": verdict.verdict.label(), "omega": omega}));
                if verdict.is_stable() {
                    Outcome::Certified
                } else {
                    Outcome::NotCertified
                }
            }
        }
    };
    run.finish()?;
    Ok(outcome)
}

fn csv_text(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

pub const DIAGRAM_COLUMNS: [&str; 7] = ["omega_lo", "omega_hi", "mu_lo", "mu_hi", "H_lo", "H_hi", "status"];

fn diagram(a: &DiagramArgs) -> Result<Outcome, CliError> {
    let mut run = Run::new("diagram", &a.output);
    run.input(&a.chain);
    let chain = chain_from_json(&read(&a.chain)?)?;
    run.param("rigor", !a.no_rigor);
    let colors: Vec<&str> = if a.no_rigor {
        chain.iter().map(|c| if c.status == "validated" { "yellow" } else { "black" }).collect()
    } else {
        let k = workers(a.workers);
        run.param("workers", k);
        let v = segment_verdicts(&chain, k);
        chain.iter().zip(&v).map(|(c, s)| segment_color(c, s)).collect()
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(DIAGRAM_COLUMNS)?;
    for (c, color) in chain.iter().zip(&colors) {
        let mu = c.mu_enclosure();
        let h = c.energy_enclosure();
        let row = [c.omega[0], c.omega[1], mu.lo(), mu.hi(), h.lo(), h.hi()].map(fmt_f64);
        w.write_record(row.iter().map(String::as_str).chain([*color]))?;
    }
    run.artifact(&csv_text(w)?)?;
    run.stage("diagram", format!("{} rows", chain.len()));
    let green = colors.iter().filter(|&&c| c == "green").count();
    run.summary(
        &format!("{} rows, {green} green", chain.len()),
        json!({"rows": chain.len(), "green": green}),
    );
    run.finish()?;
    Ok(Outcome::Certified)
}

/// Seed from `VORTEX_CERT_SEED`, 0 when unset.
pub fn seed_from_env() -> Result<u64, CliError> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("{SEED_VAR} must be an unsigned integer, got {s:?}"))),
        Err(_) => Ok(0),
    }
}

fn simulate(a: &SimulateArgs) -> Result<Outcome, CliError> {
    if !(a.dt > 0.0 && a.dt.is_finite()) {
        return Err(CliError::Input("--dt must be positive".into()));
    }
    if !(a.t >= 0.0 && a.t.is_finite()) {
        return Err(CliError::Input("--t must be finite and non-negative".into()));
    }
    if a.every == 0 {
        return Err(CliError::Input("--every must be positive".into()));
    }
    if !(a.perturb >= 0.0 && a.perturb.is_finite()) {
        return Err(CliError::Input("--perturb must be finite and non-negative".into()));
    }
    let mut run = Run::new("simulate", &a.output);
    let input = load(&a.input)?;
    note_input(&mut run, &input);
    let seed = seed_from_env()?;
    run.param("t", a.t);
    run.param("dt", a.dt);
    run.param("every", a.every);
    run.param("perturb", a.perturb);
    run.param("seed", seed);

    let mut v0 = input.rings.lift().vortices;
    if a.perturb > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for v in v0.iter_mut() {
            for c in v.iter_mut() {
                *c += rng.gen_range(-a.perturb..=a.perturb);
            }
            let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            *v = [v[0] / r, v[1] / r, v[2] / r];
        }
    }
    FullConfiguration::new(v0.clone())?;
    let steps = (a.t / a.dt).round() as usize;
    let traj = integrate_full(&v0, &VortexParameters::default(), a.dt, steps);

    let mut header = vec!["t".to_string(), "H".into(), "phi_x".into(), "phi_y".into(), "phi_z".into()];
    for i in 0..v0.len() {
        header.extend(["x", "y", "z"].map(|c| format!("{c}{i}")));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header)?;
    let h0 = hamiltonian(&v0, HamiltonianScale::Half);
    let p0 = momentum(&v0);
    let (mut dh, mut dp) = (0.0f64, 0.0f64);
    for (s, v) in traj.iter().enumerate() {
        let h = hamiltonian(v, HamiltonianScale::Half);
        let p = momentum(v);
        dh = dh.max((h - h0).abs());
        dp = (0..3).fold(dp, |d, i| d.max((p[i] - p0[i]).abs()));
        if s % a.every != 0 && s != steps {
            continue;
        }
        let mut row = vec![fmt_f64(s as f64 * a.dt), fmt_f64(h), fmt_f64(p[0]), fmt_f64(p[1]), fmt_f64(p[2])];
        row.extend(v.iter().flat_map(|x| x.map(fmt_f64)));
        w.write_record(&row)?;
    }
    run.artifact(&csv_text(w)?)?;
    run.stage("integration", format!("{steps} steps"));
    run.summary(
        &format!("{steps} RK4 steps: |H - H0| <= {dh:e}, |Phi - Phi0| <= {dp:e}"),
        json!({"steps": steps, "h_drift": dh, "phi_drift": dp}),
    );
    run.finish()?;
    Ok(Outcome::Certified)
}

fn labels(forms: &[(usize, usize, usize)]) -> String {
    let v: Vec<String> = forms.iter().map(|(m, n, p)| format!("({m},{n},{p})")).collect();
    v.join(" ")
}

fn catalog_cmd(c: &CatalogCommand) -> Result<Outcome, CliError> {
    match c {
        CatalogCommand::List { output } => {
            let mut run = Run::new("catalog list", output);
            let all = all_fixtures();
            let text = if output.json {
                let v: Vec<Value> = all
                    .iter()
                    .map(|f| {
                        json!({"name": f.name, "N": f.n_vortices(), "forms": f.labels(), "omega": f.omega,
                               "description": f.description, "provenance": f.provenance})
                    })
                    .collect();
                pretty(&Value::Array(v))
            } else {
                let rows: Vec<String> = all
                    .iter()
                    .map(|f| {
                        format!("{:<14} N={:<3} omega={:<5} {:<24} {}", f.name, f.n_vortices(), f.omega, labels(&f.labels()), f.description)
                    })
                    .collect();
                rows.join("\n")
            };
            run.artifact(&text)?;
            run.finish()?;
        }
        CatalogCommand::Show { name, form, output } => {
            let mut run = Run::new("catalog show", output);
            let f = fixture(name)?;
            let rs = match form {
                Some(m) => f.form(*m)?,
                None => f.primary(),
            };
            run.param("name", name);
            run.param("form", rs.m());
            let text = if output.json || output.out.is_some() {
                f.to_json(rs)
            } else {
                let mut s = format!(
                    "{}: {}\nN = {}, omega = {}, forms {}\nform (m,n,p) = ({},{},{})\n",
                    f.name,
                    f.description,
                    f.n_vortices(),
                    f.omega,
                    labels(&f.labels()),
                    rs.m(),
                    rs.n(),
                    rs.p()
                );
                for u in &rs.u {
                    s += &format!("  {}\n", vortex_model::fmt_vec3(u));
                }
                s += &format!("source: {}", f.provenance);
                s
            };
            run.artifact(&text)?;
            run.finish()?;
        }
    }
    Ok(Outcome::Certified)
}
