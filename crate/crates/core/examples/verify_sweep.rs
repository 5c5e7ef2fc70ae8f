//! Random sweeps on both backends, with the worst float pivot per case.

use sp2_brackets::verify::{cmd_verify, RunConfig};
use sp2_brackets::Backend;

fn main() -> sp2_brackets::Result<()> {
    let float = cmd_verify(&RunConfig { samples: 5000, seed: 3, ..RunConfig::default() })?;
    print!("{}", float.to_text());
    let exact = cmd_verify(&RunConfig { samples: 50, seed: 3, backend: Backend::Exact, ..RunConfig::default() })?;
    print!("{}", exact.to_text());
    Ok(())
}
