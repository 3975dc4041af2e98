//! JSON state documents and the in-process report functions behind the CLI.
//!
//! cargo run --example state_documents

use sqt::cli::{analyze, check, StateDocument};
use sqt::families;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let state = families::w_standard();
    let doc = StateDocument::from_state(&state, Some("w".into()));
    let text = serde_json::to_string(&doc)?;
    println!("{text}");

    let back: StateDocument = serde_json::from_str(&text)?;
    let state = back.to_state()?;
    let report = analyze(&state, back.receiver(), back.label.clone())?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    let verdict = check(&state, back.receiver(), 1e-9, back.label)?;
    println!("verdict: {}", verdict.verdict);

    // Unknown fields and short amplitude lists are rejected.
    for bad in [r#"{"n":1,"amplitudes":[[1,0],[0,0]],"extra":1}"#, r#"{"n":2,"amplitudes":[[1,0]]}"#] {
        let parsed = serde_json::from_str::<StateDocument>(bad).map_err(|e| e.to_string());
        let outcome = parsed.and_then(|d| d.to_state().map_err(|e| e.to_string()));
        println!("{bad}: {}", outcome.err().unwrap_or_default());
    }
    Ok(())
}
