//! Run the closed-form identity suite and print its table.

use sp2_brackets::identities::cmd_identities;

fn main() -> sp2_brackets::Result<()> {
    let report = cmd_identities(1, 50, 40, 100)?;
    print!("{}", report.to_text());
    std::process::exit(report.exit_code());
}
