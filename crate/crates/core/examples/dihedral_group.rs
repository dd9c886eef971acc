//! The dihedral group D_2k realized on Fock space.
//!
//! cargo run --example dihedral_group -- 5

use ttw_dihedral::dihedral::{self, DihedralParams};

pub fn run_with(k: u32) -> Result<(), Box<dyn std::error::Error>> {
    let p = DihedralParams::new(k)?;
    println!("k = {k}: {} elements", p.order());
    println!("R = {:?}", dihedral::rotation_r(&p));
    println!("I = {:?}", dihedral::inversion_i());
    println!("R^k I = {:?}", dihedral::reflection_closed(&p, i64::from(k)));

    let conj = dihedral::ladder_conjugation(&p);
    println!(
        "R b†_m R^-1 coefficients {:?}, det {:.15}, angle {:.12} (pi/k = {:.12})",
        conj.coefficients,
        conj.determinant(),
        conj.angle(),
        std::f64::consts::PI / f64::from(k)
    );

    let reports = [
        dihedral::verify_group_relations(&p),
        dihedral::verify_closed_powers(&p),
        dihedral::verify_reflection_ladder_form(&p),
        dihedral::verify_deformed_anticommutators(&p),
    ];
    for r in &reports {
        println!(
            "{:<26} max residual {:.3e}  tol {:e}  {}",
            r.check_id,
            r.max_abs_residual,
            r.tolerance,
            if r.pass { "ok" } else { "FAILED" }
        );
        for (key, value) in &r.details {
            println!("    {key:<36} {value:.3e}");
        }
    }
    if reports.iter().any(|r| !r.pass) {
        return Err("dihedral check failed".into());
    }
    Ok(())
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    run_with(3)
}

#[allow(dead_code)]
fn main() {
    let k = std::env::args()
        .nth(1)
        .map_or(Ok(3), |s| s.parse())
        .expect("k must be a positive integer");
    run_with(k).expect("dihedral_group");
}
