// Running the built-in invariant suite from code rather than the CLI.
//
// ```bash
// cargo run --example invariant_suite
// ```

use iwahori::checks::{run_all, BUILTIN_SPECS};
use iwahori::group::IwahoriWeyl;

pub fn run_example() -> iwahori::Result<()> {
    for spec in BUILTIN_SPECS {
        let g: IwahoriWeyl = spec.parse()?;
        let report = run_all(&g, 3);
        let cases: usize = report.results.iter().map(|r| r.cases).sum();
        println!("{spec:<4} {} checks, {cases} cases, passed: {}", report.results.len(), report.passed());
        assert!(report.passed(), "{spec} failed the invariant suite");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> iwahori::Result<()> {
    run_example()
}
