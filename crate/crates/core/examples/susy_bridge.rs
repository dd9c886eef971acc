//! Adding -2ω[½(1 + R^k)I + k(a + b)] to the dihedral extension gives the
//! supersymmetric one.
//!
//! cargo run --example susy_bridge

use ttw_dihedral::extension::{self, ModelParams};
use ttw_dihedral::trig::SamplingPlan;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let p = ModelParams::new(5, 1.2, 2.5, 0.8, 1.0)?;
    println!("bridge operator = {:?}", extension::bridge_operator(&p));
    println!("4ωY            = {:?}", extension::y_operator(&p));
    let bridge = extension::verify_susy_bridge(&p);
    println!(
        "bridge identity residual {:.3e} -> {:?}",
        bridge.max_abs_residual,
        bridge.status()
    );

    let full = extension::verify_supersymmetric_hamiltonian(&p, &SamplingPlan::with_samples(400))?;
    println!(
        "(ℋ_k - H_k) + bridge = 4ω(Γ + Y) over {} angles: max rel {:.3e} -> {:?}",
        full.n_evaluated,
        full.max_rel_residual,
        full.status()
    );
    if !(bridge.pass && full.pass) {
        return Err("bridge failed".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("susy_bridge");
}
