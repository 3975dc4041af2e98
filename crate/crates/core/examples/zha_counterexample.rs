//! A perfect three-qubit resource outside both zero-coefficient forms.
//!
//! cargo run --example zha_counterexample -- [a] [b]

use sqt::conditions::{check_3qubit, check_general, labeled_amplitudes, matches_zha_pattern, ZhaForm};
use sqt::families::zha_counterexample;
use sqt::protocol::{haar_random_info_seeded, Teleporter};

fn main() -> sqt::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<f64>());
    let a = args.next().transpose().ok().flatten().unwrap_or(0.4);
    let b = args.next().transpose().ok().flatten().unwrap_or(0.3);

    let s = zha_counterexample(a, b, 0.1, 0.2, 0.3)?;
    println!("state: {s}");
    let labels = ["A", "B", "C", "D", "E", "F", "G", "H"];
    for (l, x) in labels.iter().zip(labeled_amplitudes(&s, 2)?) {
        println!("  {l} = {x:.6}");
    }

    let g = check_general(&s, 2, 1e-9)?;
    let t = check_3qubit(&s, 2, 1e-9)?;
    println!("general check: {}, amplitude check: {}", g.verdict, t.verdict);
    for form in ZhaForm::all() {
        println!("matches {form:?} support {:?}: {}", form.support(), matches_zha_pattern(&s, 2, form, 1e-9)?);
    }

    let sim = Teleporter::new(&s, 2)?;
    let info = haar_random_info_seeded(42);
    for r in 0..4 {
        let run = sim.run_outcome(&info, r)?;
        println!("outcome {r}: fidelity {:.12}", run.outcome.fidelity);
    }
    Ok(())
}
