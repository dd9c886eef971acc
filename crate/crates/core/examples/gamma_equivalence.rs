//! The dihedral difference, rewritten with fermions, equals the
//! supersymmetric coefficient operator 4ωΓ for odd k.
//!
//! cargo run --example gamma_equivalence

use ttw_dihedral::extension::{self, ModelParams};
use ttw_dihedral::fock::max_rel_diff;
use ttw_dihedral::trig::SamplingPlan;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let p = ModelParams::new(3, 1.7, 0.4, 1.0, 1.0)?;
    let phi = 0.3;
    let gamma = extension::gamma_susy(&p).evaluate(phi)?;
    let tilde = extension::gamma_tilde_rotated(&p)?.evaluate(phi)?;
    let diff = extension::dihedral_difference(&p)?.evaluate(phi)?;
    println!("4ωΓ at φ = {phi}: {gamma:?}");
    println!("4ωΓ̃ at φ = {phi}: {tilde:?}");
    println!(
        "Γ̃ vs Γ: {:.3e}, difference vs Γ̃: {:.3e}",
        max_rel_diff(&tilde, &gamma),
        max_rel_diff(&diff, &tilde)
    );

    let plan = SamplingPlan::with_samples(500);
    for k in [1, 3, 5, 7, 9, 11] {
        let p = ModelParams::couplings(k, 1.7, 0.4)?;
        let r = extension::verify_gamma_equivalence(&p, &plan)?;
        let paths = extension::verify_assembly_paths(&p, &plan)?;
        println!(
            "k = {k:>2}: Γ̃ = Γ max rel {:.3e} ({:?}); three assembly paths {:.3e}",
            r.max_rel_residual,
            r.status(),
            paths.max_rel_residual
        );
        if !(r.pass && paths.pass) {
            return Err(format!("equivalence failed at k = {k}").into());
        }
    }

    let even = extension::verify_gamma_equivalence(&ModelParams::couplings(2, 1.0, 1.0)?, &plan)?;
    println!("k =  2: max rel {:.3e} ({:?})", even.max_rel_residual, even.status());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("gamma_equivalence");
}
