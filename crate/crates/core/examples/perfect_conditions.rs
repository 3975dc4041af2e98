//! Perfect-teleportation residuals along the W family, with both checkers.
//!
//! cargo run --example perfect_conditions

use sqt::conditions::{check_3qubit, check_general, DEFAULT_TOLERANCE};
use sqt::families;
use sqt::protocol::average_fidelity_mc;
use sqt::StateVector;

fn main() -> sqt::Result<()> {
    // B|100⟩ + C|010⟩ + E|001⟩ with |B| = |C| and weight x on the first two.
    println!("{:>5} {:>9} {:>9} {:>9} {:>9}  {:<7} {:>8}", "x", "balance", "overlap", "amp bal", "amp ovl", "verdict", "MAF");
    for i in 0..=10 {
        let x = 0.25 + 0.05 * i as f64;
        let bc = (x / 2.0).sqrt();
        let s = families::w_general(bc.into(), bc.into(), (1.0 - x).sqrt().into())?;
        let g = check_general(&s, 2, DEFAULT_TOLERANCE)?;
        let t = check_3qubit(&s, 2, DEFAULT_TOLERANCE)?;
        let est = average_fidelity_mc(&s, 2, 20_000, 0)?;
        println!(
            "{x:>5.2} {:>9.6} {:>9.6} {:>9.6} {:>9.6}  {:<7} {:>8.5}",
            g.residual_balance, g.residual_overlap, t.residual_balance, t.residual_overlap, g.verdict, est.mean
        );
    }

    let uniform = StateVector::from_real(3, &[8f64.sqrt().recip(); 8])?;
    let g = check_general(&uniform, 2, DEFAULT_TOLERANCE)?;
    let t = check_3qubit(&uniform, 2, DEFAULT_TOLERANCE)?;
    println!("\nuniform state: |K| = {:.6}, amplitude overlap = {:.6}", g.residual_overlap, t.residual_overlap);
    Ok(())
}
