//! Split a resource around its receiver qubit, rotate the receiver basis so the
//! two branches become orthogonal, and compare with the reduced-density route.
//!
//! cargo run --example schmidt_form

use std::f64::consts::FRAC_1_SQRT_2;

use sqt::schmidt::{concurrence_oracle, maf, rotation_roots, schmidt_form, split_by_receiver};
use sqt::{Complex64, StateVector};

fn main() -> sqt::Result<()> {
    // (1/√2)|000⟩ + ½|001⟩ + ½|011⟩: the raw branches overlap.
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    amps[0b000] = FRAC_1_SQRT_2.into();
    amps[0b001] = 0.5.into();
    amps[0b011] = 0.5.into();
    let state = StateVector::new(3, amps)?;
    println!("state: {state}");

    for bob in 0..3 {
        let split = split_by_receiver(&state, bob)?;
        println!("\nreceiver {bob}: A = {:.6}, B = {:.6}, K = {:.6}", split.a, split.b, split.k);
        if let Some([z0, z1]) = rotation_roots(&split) {
            println!("  rotation roots: {z0:.6}, {z1:.6}");
        }
        let form = schmidt_form(&state, bob)?;
        println!("  chosen z = {:.6}", form.z);
        println!("  Abar = {:.6}, Bbar = {:.6}", form.abar, form.bbar);
        println!("  |<psibar1|psibar0>| = {:.1e}", form.branch_overlap());
        println!("  reconstruction error = {:.1e}", form.reconstruct()?.distance_up_to_phase(&state)?);
        println!(
            "  C = {:.6} (oracle {:.6}), MAF = {:.6}",
            form.concurrence,
            concurrence_oracle(&state, bob)?,
            maf(form.concurrence)?
        );
    }
    Ok(())
}
