//! Acceptance criteria, one PASS/FAIL line each. Runs without the test
//! harness so the lines are always printed.

use std::process::Command;
use std::time::{Duration, Instant};

use sp2_brackets::frames::{build_frame, Case};
use sp2_brackets::identities::{cmd_identities, Status};
use sp2_brackets::verify::{cmd_special_sweep, cmd_standard_sphere, cmd_verify, RunConfig, VerifyReport};
use sp2_brackets::Backend;

struct Outcome {
    ok: bool,
    detail: String,
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn cfg(backend: Backend, samples: usize, seed: u64) -> RunConfig {
    RunConfig { backend, samples, seed, ..RunConfig::default() }
}

fn structural(r: &VerifyReport) -> bool {
    r.passed() && r.rank_10 == r.samples && r.max_bracket_free_rank <= 7
}

fn standard_sphere() -> Outcome {
    let t = Instant::now();
    let r = cmd_standard_sphere();
    let el = t.elapsed();
    check(
        r.passed() && el < Duration::from_secs(1),
        format!("exact rank {} (u's {}, brackets {}), certificate {}, {:?}", r.rank, r.u_rank, r.bracket_rank, r.certificate.unwrap_or_default(), el),
    )
}

fn main_sweep() -> Outcome {
    let float = cmd_verify(&cfg(Backend::Float, 10_000, 42)).expect("float sweep runs");
    let pivot = float.min_relative_pivot.unwrap_or(0.0);
    let exact = cmd_verify(&cfg(Backend::Exact, 200, 42)).expect("exact sweep runs");
    let reachable = ["I-a", "I-b(i)", "I-r", "II"].iter().all(|c| exact.tallies.contains_key(*c));
    check(
        structural(&float) && pivot > 1e-6 && float.wall_time_s < 60.0 && structural(&exact) && exact.exact_certificates == 200 && reachable,
        format!(
            "float {}/{} rank 10, min relative pivot {pivot:.3e}, {:.2}s; exact {}/{} certified over {:?}",
            float.rank_10, float.samples, float.wall_time_s, exact.exact_certificates, exact.samples, exact.tallies
        ),
    )
}

fn case_boundaries() -> Outcome {
    let r = cmd_special_sweep(&cfg(Backend::Exact, 1, 0)).expect("sweep runs");
    let covered = ["I-a", "I-b(i)", "I-b(ii)", "I-r", "II"].iter().all(|c| r.tallies.get(*c).copied().unwrap_or(0) > 0);
    check(
        structural(&r) && covered && r.exact_certificates == r.samples,
        format!("{} exact points, all rank 10: {:?}", r.samples, r.tallies),
    )
}

fn identities() -> Outcome {
    let r = cmd_identities(42, 200, 100, 1000).expect("identity suite runs");
    let need_pass = [
        "Ad-invariance of <u,w>",
        "Tr U_j = Tr U_k = 0",
        "-t11 s12 + t12 factorisation",
        "-t11 s12 + t12 != 0",
        "alpha: single fraction = two terms",
        "standard sphere commutators",
    ];
    let strict = need_pass.iter().all(|n| r.get(n).is_some_and(|c| c.status == Status::Pass && c.samples >= 6));
    let commutators = r.checks.iter().filter(|c| c.name.starts_with("commutator [")).all(|c| c.status != Status::Fail);
    let warns: Vec<_> = r.checks.iter().filter(|c| c.status == Status::Warn).map(|c| c.name.as_str()).collect();
    check(
        r.passed() && strict && commutators,
        format!("{} checks, warnings {:?}", r.checks.len(), warns),
    )
}

fn structural_invariants() -> Outcome {
    let r = cmd_identities(7, 1, 2, 1000).expect("identity suite runs");
    let names = [
        "dim Ad_p(h_p) = 4",
        "frame u-entries satisfy membership",
        "(1,1) entry of Ad_p^-1(u_rho) vanishes",
        "ell_rho: formula = rho Id - p rho+ p*",
    ];
    let ok = names.iter().all(|n| r.get(n).is_some_and(|c| c.status == Status::Pass && c.samples >= 1000));
    // the float sweep checks membership and the (1,1) entry at every frame too
    let float = cmd_verify(&cfg(Backend::Float, 2000, 5)).expect("float sweep runs");
    check(ok && float.passed(), format!("1000 exact points, {} float frames", float.samples))
}

fn negative_control() -> Outcome {
    let a = cmd_verify(&cfg(Backend::Float, 2000, 9)).expect("runs");
    let b = cmd_verify(&cfg(Backend::Exact, 50, 9)).expect("runs");
    let c = cmd_special_sweep(&cfg(Backend::Exact, 1, 0)).expect("runs");
    let max = a.max_bracket_free_rank.max(b.max_bracket_free_rank).max(c.max_bracket_free_rank);
    let status = Command::new(env!("CARGO_BIN_EXE_sp2-verify"))
        .args(["verify", "--samples", "1", "--drop-entry", "U_j"])
        .output()
        .expect("binary runs")
        .status
        .code();
    let identity_frame = build_frame(&sp2_brackets::Sp2Point::<sp2_brackets::Rational>::identity(), 0.0).unwrap();
    check(
        max <= 7 && status == Some(1) && identity_frame.kind == sp2_brackets::frames::FrameKind::Exotic(Case::II),
        format!("max rank without brackets {max}, corrupted run exit code {status:?}"),
    )
}

fn determinism() -> Outcome {
    let one = cmd_verify(&RunConfig { jobs: 1, ..cfg(Backend::Float, 1000, 7) }).expect("runs");
    let eight = cmd_verify(&RunConfig { jobs: 8, ..cfg(Backend::Float, 1000, 7) }).expect("runs");
    let run = |jobs: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_sp2-verify"))
            .args(["verify", "--samples", "1000", "--seed", "7", "--jobs", jobs])
            .output()
            .expect("binary runs");
        let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("json report");
        v.as_object_mut().unwrap().remove("wall_time_s");
        v.to_string()
    };
    check(
        one.canonical_json() == eight.canonical_json() && run("1") == run("8"),
        "jobs 1 and 8 give identical canonical reports",
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("1 standard sphere, exact rank 10", standard_sphere),
        ("2 main sweep (10k float, 200 exact)", main_sweep),
        ("3 case-boundary sweep, exact", case_boundaries),
        ("4 identity suite", identities),
        ("5 structural invariants", structural_invariants),
        ("6 negative control", negative_control),
        ("7 determinism across --jobs", determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let o = f();
        println!("{} criterion {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        if !o.ok {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
