//! Acceptance battery: one line per criterion with its verdict, elapsed time and limit.
//!
//! Every criterion runs on the default suite configuration (seed 0, groups C2, C3, C4, S3,
//! cubes up to dimension 4) and must hold within its wall-clock limit. The target runs
//! without the libtest harness so the verdict lines always reach the test log.

use std::time::{Duration, Instant};

use kan_vect::Exec;
use workbench_cli::{replay, run_property, PropertyReport, RunOptions, Status, SuiteConfig, WitnessFile};

struct Criterion {
    number: usize,
    title: &'static str,
    property: &'static str,
    limit: Duration,
    /// Criterion-specific requirements beyond the property status.
    extra: fn(&PropertyReport) -> Result<(), String>,
}

fn none(_: &PropertyReport) -> Result<(), String> {
    Ok(())
}

fn leading_count(detail: &str, suffix: &str) -> Option<usize> {
    let end = detail.find(suffix)?;
    detail[..end].split_whitespace().last()?.parse().ok()
}

fn face_transport_extra(r: &PropertyReport) -> Result<(), String> {
    let total = r
        .checks
        .iter()
        .find(|c| c.name == "sample count")
        .and_then(|c| leading_count(&c.detail, " diagrams"))
        .ok_or("no sample count reported")?;
    if total < 200 {
        return Err(format!("only {total} diagrams"));
    }
    for c in r.checks.iter().filter(|c| c.name.contains("-cube")) {
        let detected = leading_count(&c.detail, " mutations detected").unwrap_or(0);
        if detected == 0 {
            return Err(format!("{}: no mutation detected", c.name));
        }
    }
    Ok(())
}

fn norm_extra(r: &PropertyReport) -> Result<(), String> {
    for g in ["C2", "C3"] {
        let name = format!("{g} free orbit norm");
        let found = r.checks.iter().any(|c| c.name == name && c.status == Status::PaperPredicted);
        if !found {
            return Err(format!("{name} not confirmed"));
        }
    }
    let trivial = r.checks.iter().any(|c| c.name == "trivial group" && c.status == Status::Pass);
    if !trivial {
        return Err("trivial group norm not confirmed".into());
    }
    Ok(())
}

fn probe_extra(r: &PropertyReport) -> Result<(), String> {
    let path = r.witness.as_ref().ok_or("no witness stored")?;
    let file = WitnessFile::load(std::path::Path::new(path))?;
    let again = replay(&file)?;
    if again.reproduced {
        Ok(())
    } else {
        Err(format!("replay did not reproduce: {}", again.detail))
    }
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { number: 1, title: "lattice laws", property: "lattice_laws", limit: secs(1), extra: none },
        Criterion {
            number: 2,
            title: "complement decomposition",
            property: "complement_decomposition",
            limit: secs(1),
            extra: none,
        },
        Criterion {
            number: 3,
            title: "face transport",
            property: "face_transport",
            limit: secs(30),
            extra: face_transport_extra,
        },
        Criterion {
            number: 4,
            title: "excisive approximation",
            property: "excisive_approximation",
            limit: secs(10),
            extra: none,
        },
        Criterion { number: 5, title: "orbital base", property: "orbital_base", limit: secs(5), extra: none },
        Criterion {
            number: 6,
            title: "cubes and singletons",
            property: "cubes_and_singletons",
            limit: secs(30),
            extra: none,
        },
        Criterion { number: 7, title: "homotopy engine", property: "homotopy_engine", limit: secs(60), extra: none },
        Criterion { number: 8, title: "sphere calculus", property: "sphere_calculus", limit: secs(60), extra: none },
        Criterion { number: 9, title: "norm and semiadditivity", property: "norm", limit: secs(60), extra: norm_extra },
        Criterion { number: 10, title: "faithfulness probe", property: "probe", limit: secs(120), extra: probe_extra },
        Criterion {
            number: 11,
            title: "colimit decomposition",
            property: "colimit_decomposition",
            limit: secs(10),
            extra: none,
        },
    ]
}

fn main() {
    let dir = tempfile::tempdir().expect("temporary witness directory");
    let cfg = SuiteConfig::default();
    let opts = RunOptions { witness_dir: Some(dir.path().to_path_buf()), timings: false, exec: Exec::Sequential };
    let mut failures = Vec::new();
    for c in criteria() {
        let start = Instant::now();
        let report = run_property(&cfg, c.property, &opts);
        let elapsed = start.elapsed();
        let verdict = if report.status == Status::Fail || report.status == Status::Skipped {
            let failed: Vec<_> =
                report.checks.iter().filter(|l| l.status == Status::Fail).map(|l| l.name.as_str()).collect();
            Err(format!("status {}: {}", report.status.label(), failed.join("; ")))
        } else if elapsed > c.limit {
            Err(format!("over the time limit of {} s", c.limit.as_secs()))
        } else {
            (c.extra)(&report)
        };
        let line = match &verdict {
            Ok(()) => "PASS".to_string(),
            Err(e) => format!("FAIL ({e})"),
        };
        println!(
            "criterion {:>2} {:<26} {line} in {:.2} s (limit {} s)",
            c.number,
            c.title,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
        if verdict.is_err() {
            failures.push(c.number);
        }
    }
    if failures.is_empty() {
        println!("acceptance: all {} criteria pass", criteria().len());
    } else {
        println!("acceptance: failed criteria {failures:?}");
        std::process::exit(1);
    }
}
