// What `validate` reports for complete, under-determined and
// over-determined inputs, including the Hall violator behind a failure.

use causord::structure::{parse_text, ParseOptions, Witness};

pub fn run() -> causord::Result<()> {
    let inputs = [
        ("complete", "f1: x1\nf2: x1 x2\n"),
        ("under-determined", "f1: x1 x2\n"),
        ("over-determined", "f1: x1\nf2: x1\nf3: x2 x3\n"),
    ];
    for (label, text) in inputs {
        let s = parse_text(text, ParseOptions::default())?;
        let report = s.validate();
        println!("{label:<17} {report}");
        if let Some(Witness::HallViolation {
            equations,
            variables,
        }) = &report.witness
        {
            println!(
                "  {} equations share {} variables",
                equations.len(),
                variables.len()
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> causord::Result<()> {
    run()
}
