//! The scriptable pipeline: parse a system from its JSON schema, run a
//! full analysis programmatically, and render the structured report —
//! exactly what the `centerfocus` binary does, minus the process
//! boundary.
//!
//! Run with: `cargo run --example batch_report`

use centerfocus::cli::{
    parse_system_json, render_outcome, render_system_json, run, AnalysisRequest, Command,
    OutputFormat, RunOutcome,
};

fn main() {
    let input = r#"{"n":2,"P1":{"p10":"1","p01":"0"},"Pn":{"2,0":"1","0,2":"-1"}}"#;

    // The schema is lossless: parse ∘ render is the identity.
    let sys = parse_system_json(input).unwrap();
    let rendered = render_system_json(&sys);
    assert_eq!(parse_system_json(&rendered).unwrap(), sys);
    println!("parsed:     {sys}");
    println!("re-rendered: {rendered}\n");

    // Run the full analysis through a temp file, as the binary would.
    let path = std::env::temp_dir().join(format!("centerfocus-batch-{}.json", std::process::id()));
    std::fs::write(&path, input).unwrap();
    let request = AnalysisRequest {
        input_path: path.to_string_lossy().into_owned(),
        command: Command::Analyze,
        order: Some(8),
        numeric: true,
        tol: 1e-9,
        format: OutputFormat::Json,
        ladder: None,
    };
    let outcome = run(&request).unwrap();
    println!("{}", render_outcome(&outcome, OutputFormat::Json));

    // The same report renders as text with the machine-greppable verdict.
    let text = render_outcome(&outcome, OutputFormat::Text);
    let verdict_line = text.lines().find(|l| l.starts_with("verdict:")).unwrap();
    println!("\ntext verdict line: {verdict_line}");

    if let RunOutcome::Analysis(report) = &outcome {
        assert!(!report.is_center);
        assert_eq!(report.focal.as_ref().unwrap().first_nonzero, Some(5));
    }
    std::fs::remove_file(&path).ok();
}
