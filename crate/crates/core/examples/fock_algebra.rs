//! Ladder operators on the two-mode Fock space and their anticommutators.
//!
//! cargo run --example fock_algebra

use ttw_dihedral::fock::{self, annihilator, creator, number, FockBasis, Mode};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    println!("basis ordering (n_x, n_y): {:?}", FockBasis::STATES);

    let b_x = annihilator(Mode::X);
    let b_y = annihilator(Mode::Y);
    println!("b_x = {b_x:?}");
    println!("b_y = {b_y:?}");

    // b_y picks up (-1)^{n_x}
    let lowered = b_y.apply(&FockBasis::vector(1, 1));
    println!("b_y |1,1> = {:+} |1,0>", lowered[FockBasis::index(1, 0)].re);

    let car = fock::verify_canonical_relations();
    println!(
        "canonical relations: max residual {:.3e} (tol {:e}) -> {}",
        car.max_abs_residual,
        car.tolerance,
        if car.pass { "ok" } else { "FAILED" }
    );

    let n_tot = number(Mode::X) + number(Mode::Y);
    println!("N_x + N_y = {n_tot:?}");
    println!("parity = {:?}", fock::parity());
    println!(
        "{{b_x, b†_y}} vanishes: {}",
        fock::anticommutator(&b_x, &creator(Mode::Y)).max_abs() == 0.0
    );
    if !car.pass {
        return Err("canonical relations failed".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("fock_algebra");
}
