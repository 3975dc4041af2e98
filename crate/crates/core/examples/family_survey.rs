//! Every generator with default parameters: concurrence, MAF and verdict.
//!
//! cargo run --example family_survey

use sqt::conditions::{check_general, DEFAULT_TOLERANCE};
use sqt::families::FamilySpec;
use sqt::schmidt::schmidt_form;

fn main() -> sqt::Result<()> {
    let requests: &[(&str, &[&str])] = &[
        ("ghz", &["3"]),
        ("ghz", &["6"]),
        ("w", &["0.5773502691896258", "0.5773502691896258", "0.5773502691896258"]),
        ("w", &["0.5", "0.5", "0.7071067811865476"]),
        ("separable", &["0.5", "0.3"]),
        ("entangled", &["0.3", "0.4", "1.1", "0.5"]),
        ("acin", &["0.5", "0", "0.3", "0.4", "0.7071067811865476"]),
        ("acin-alt", &["0.6", "0", "0.7071067811865476", "0.3741657386773941", "0"]),
        ("counterexample", &["a=0.4", "b=0.3", "gamma=0.3"]),
        ("random", &["4", "seed=3"]),
    ];
    println!("{:<48} {:>9} {:>9}  perfect", "family", "C", "MAF");
    for (family, params) in requests {
        let params: Vec<String> = params.iter().map(|s| s.to_string()).collect();
        let spec = FamilySpec::parse(family, &params)?;
        let s = spec.build()?;
        let bob = s.num_qubits() - 1;
        let summary = schmidt_form(&s, bob)?.summary();
        let v = check_general(&s, bob, DEFAULT_TOLERANCE)?;
        println!("{:<48} {:>9.6} {:>9.6}  {}", spec.to_string(), summary.concurrence, summary.maf, v.verdict);
    }
    Ok(())
}
