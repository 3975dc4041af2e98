//! Five-term canonical three-qubit states: which ones the zero-coefficient
//! forms cover, and what the alternative representation's df = 0 rule says.
//!
//! cargo run --example canonical_forms

use std::f64::consts::FRAC_1_SQRT_2;

use sqt::conditions::{classify_acin_alt, classify_zha, DEFAULT_TOLERANCE};

fn main() -> sqt::Result<()> {
    let h = FRAC_1_SQRT_2;
    let canonical = [
        ([0.5, 0.0, 0.3, 0.4, h], 0.0),
        ([0.0, 0.5, 0.3, 0.41f64.sqrt(), 0.5], 0.7),
        ([0.5, 0.0, 0.3, 0.5, 0.41f64.sqrt()], 0.0),
        ([0.5, 0.4, 0.3, 0.5, 0.5], 0.9),
        ([h, 0.0, 0.0, 0.0, h], 0.0),
    ];
    println!("canonical form");
    for (kappa, theta) in canonical {
        match classify_zha(kappa, theta, DEFAULT_TOLERANCE) {
            Ok(r) => println!(
                "  {kappa:.3?} theta={theta}: k0k1={:.3} forms={:?} fixed={} perfect={}",
                r.kappa_product, r.forms, r.fixed_coefficients, r.state_check.verdict
            ),
            Err(e) => println!("  {kappa:.3?}: {e}"),
        }
    }

    // a|000⟩ + b|100⟩ + c|101⟩ + d|110⟩ + f e^{iθ}|111⟩
    let alternative = [
        ([0.6, 0.0, h, 0.14f64.sqrt(), 0.0], 0.4),
        ([0.5, 0.3, 0.5, 0.4, 0.5], 0.0),
        ([0.6, 0.3, 0.5, 0.0, 0.3f64.sqrt()], 0.2),
        ([0.5, 0.0, 0.5, 0.0, h], 1.0),
    ];
    println!("\nalternative form");
    for (p, theta) in alternative {
        match classify_acin_alt(p, theta, DEFAULT_TOLERANCE) {
            Ok(r) => println!(
                "  {p:.3?}: df={:.3} df_rule={} overlap={:.3} balance={:.3} perfect={}",
                r.df_product, r.df_condition, r.residual_overlap, r.residual_balance, r.verdict
            ),
            Err(e) => println!("  {p:.3?}: {e}"),
        }
    }
    Ok(())
}
