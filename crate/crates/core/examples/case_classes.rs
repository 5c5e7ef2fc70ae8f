//! Walk the deterministic grid that visits every case class, including the
//! quarter-threshold points that need coordinates in Q(sqrt 2).

use std::collections::BTreeMap;

use sp2_brackets::frames::{build_frame, classify};
use sp2_brackets::sample::{case_boundary_grid, GridPoint};

fn main() -> sp2_brackets::Result<()> {
    let mut per_case = BTreeMap::new();
    for sp in case_boundary_grid()? {
        let (case, rank) = match &sp.point {
            GridPoint::Rational(p) => (classify(p, 0.0)?.case, build_frame(p, 0.0)?.rank(0.0).rank),
            GridPoint::Sqrt2(p) => (classify(p, 0.0)?.case, build_frame(p, 0.0)?.rank(0.0).rank),
        };
        assert_eq!(case, sp.expected);
        println!("{:<8} {:<40} rank {rank}", case.name(), sp.label);
        *per_case.entry(case).or_insert(0) += 1;
    }
    println!("{per_case:?}");
    Ok(())
}
