//! The plain sec² sum identity has no even-k counterpart; this confirms it.
//!
//! cargo run --example even_k_control

use std::f64::consts::PI;

use ttw_dihedral::trig::{self, FamilyTag, SamplingPlan, SumFamily, TrigIdentity};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let k2 = SumFamily::new(FamilyTag::Sec2Plain, 2)?;
    for phi in [PI / 8.0, PI / 6.0] {
        println!("k = 2, φ = {phi:.4}: lhs {:.6}  rhs {:.6}", k2.lhs(phi), k2.rhs(phi));
    }
    let plan = SamplingPlan::default();
    for k in [2, 4, 6] {
        let r = trig::even_k_negative_control(k, &plan)?;
        println!(
            "k = {k}: {:.1}% of points miss by more than {}; csc² sum residual {:.2e}; {:?}",
            100.0 * r.details["fraction_above_threshold"],
            r.tolerance,
            r.details["csc2_plain_max_rel_residual"],
            r.status()
        );
        if !r.pass {
            return Err(format!("even-k failure not confirmed at k = {k}").into());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("even_k_control");
}
