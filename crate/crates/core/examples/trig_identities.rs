//! Samples every catalogued trigonometric sum identity for odd k.
//!
//! cargo run --example trig_identities

use ttw_dihedral::trig::{self, SamplingPlan, SumFamily, TrigIdentity};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let plan = SamplingPlan::default();
    let mut failed = 0;
    for k in [1, 3, 5, 7, 9, 11] {
        println!("k = {k} (degree bound {})", SamplingPlan::degree_bound(k));
        for family in SumFamily::all(k)? {
            let r = trig::verify_identity(&family, &plan, trig::IDENTITY_TOL)?;
            println!(
                "  {:<34} evaluated {:>4}  skipped {:>2}  max rel {:.3e}  {}",
                family.check_id(),
                r.n_evaluated,
                r.n_skipped_near_pole,
                r.max_rel_residual,
                if r.pass { "ok" } else { "FAILED" }
            );
            failed += usize::from(!r.pass);
        }
        let d = trig::verify_derivative_consistency(k, &plan, trig::DERIVATIVE_STEP, trig::DERIVATIVE_TOL)?;
        println!("  d/dφ of tan sums vs sec² sums: max rel {:.3e}", d.max_rel_residual);
        failed += usize::from(!d.pass);
    }
    if failed > 0 {
        return Err(format!("{failed} identities failed").into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("trig_identities");
}
