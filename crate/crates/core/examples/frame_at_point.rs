//! Build the frame at one point, exactly and in floating point, and print the JSON report.

use sp2_brackets::bundle::{normalize_fiber, random_sp2_at};
use sp2_brackets::frames::{build_frame, classify};
use sp2_brackets::json::AnyPoint;
use sp2_brackets::sample::exact_sample;
use sp2_brackets::verify::cmd_frame;

fn main() -> sp2_brackets::Result<()> {
    let p = exact_sample(2024, 0)?;
    let (pn, _) = normalize_fiber(&p, 0.0)?;
    let tag = classify(&pn, 0.0)?;
    println!("case {}, v = {}", tag.case, tag.v.as_ref().map(ToString::to_string).unwrap_or_default());
    let frame = build_frame(&pn, 0.0)?;
    println!("exact rank {}", frame.rank(0.0).rank);
    println!("invariant violations: {:?}", frame.check_invariants(&pn, 0.0));

    let report = cmd_frame(&AnyPoint::Float(random_sp2_at(2024, 0)?), 1e-9)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("serializes"));
    Ok(())
}
