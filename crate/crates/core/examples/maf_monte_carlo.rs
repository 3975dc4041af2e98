//! Haar-averaged fidelity by sampling, next to the closed form (2+C)/3.
//!
//! cargo run --release --example maf_monte_carlo -- [samples]

use sqt::families::{self, random_state};
use sqt::protocol::average_fidelity_mc;
use sqt::schmidt::{concurrence, maf};
use sqt::StateVector;

fn main() -> sqt::Result<()> {
    let samples: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100_000);

    let mut resources: Vec<(String, StateVector)> = vec![
        ("ghz(3)".into(), families::ghz(3)?),
        ("w".into(), families::w_standard()),
        ("|000>".into(), StateVector::basis(3, 0)?),
    ];
    for n in 2..=4 {
        for seed in 0..3 {
            resources.push((format!("random n={n} #{seed}"), random_state(n, seed)?));
        }
    }

    println!("{:<18} {:>9} {:>10} {:>10} {:>9}", "resource", "C", "MC", "(2+C)/3", "SE");
    for (label, s) in &resources {
        let bob = s.num_qubits() - 1;
        let c = concurrence(s, bob)?;
        let est = average_fidelity_mc(s, bob, samples, 1)?;
        println!(
            "{label:<18} {c:>9.6} {:>10.6} {:>10.6} {:>9.2e}",
            est.mean,
            maf(c)?,
            est.std_error
        );
    }
    Ok(())
}
