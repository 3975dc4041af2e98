//! One teleportation run end to end: build the measurement basis, project the
//! sender's qubits, sample an outcome, and apply the receiver's correction.
//!
//! cargo run --example teleport_simulation -- [seed]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sqt::families;
use sqt::protocol::{outcome_table, InfoQubit, Teleporter};
use sqt::Complex64;

fn main() -> sqt::Result<()> {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);

    let resource = families::w_standard();
    let info = InfoQubit::new(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8))?;
    let sim = Teleporter::new(&resource, 2)?;
    let form = sim.form();
    println!("resource: {resource}");
    println!("Abar = {:.6}, Bbar = {:.6}, C = {:.6}", form.abar, form.bbar, form.concurrence);
    println!("basis Gram deviation: {:.1e}", sim.basis().gram_deviation());

    println!("\n r      P(r)  correction      F(r)");
    let table = outcome_table(&info, form);
    for rec in &table {
        println!("{:>2}  {:>8.6}  {:<10}  {:>8.6}", rec.r, rec.prob, rec.correction.label(), rec.fidelity);
    }
    let avg: f64 = table.iter().map(|r| r.prob * r.fidelity).sum();
    println!("sum P(r)F(r) = {avg:.6}");

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let run = sim.run(&info, &mut rng)?;
    println!("\nsampled outcome r = {} (seed {seed})", run.outcome.r);
    println!("receiver after correction: {}", run.final_state);
    println!("fidelity with the input: {:.6}", run.outcome.fidelity);
    Ok(())
}
