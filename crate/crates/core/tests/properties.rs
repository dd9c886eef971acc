use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use ttw_dihedral::dihedral::{self, DihedralParams};
use ttw_dihedral::extension::{self, AngularOperator, ModelParams};
use ttw_dihedral::fock::{self, annihilator, max_abs_diff, max_rel_diff, FockBasis, FockOperator, Mode, DIM};
use ttw_dihedral::trig::POLE_MARGIN;

fn complex_operator() -> impl Strategy<Value = FockOperator> {
    proptest::collection::vec((-2.0..2.0_f64, -2.0..2.0_f64), DIM * DIM).prop_map(|entries| {
        let m = nalgebra::Matrix4::from_iterator(entries.into_iter().map(|(re, im)| Complex64::new(re, im)));
        FockOperator::try_from_matrix(m).expect("finite entries")
    })
}

fn odd_k() -> impl Strategy<Value = u32> {
    (0..6_u32).prop_map(|n| 2 * n + 1)
}

fn coupling() -> impl Strategy<Value = f64> {
    0.3..5.0_f64
}

/// A generic angle at least twice the pole margin away from every pole.
fn generic_phi(k: u32) -> impl Strategy<Value = f64> {
    let probe = ModelParams::couplings(k, 1.0, 1.0).expect("valid");
    (0.0..PI).prop_filter("near a pole", move |&phi| probe.pole_distance(phi) > 2.0 * POLE_MARGIN)
}

fn all_operators(p: &ModelParams) -> Vec<AngularOperator> {
    let mut ops = vec![extension::gamma_susy(p)];
    if p.k % 2 == 1 {
        ops.push(extension::gamma_tilde_rotated(p).expect("odd k"));
        ops.push(extension::gamma_tilde_expanded(p).expect("odd k"));
        ops.push(extension::dihedral_difference(p).expect("odd k"));
    }
    ops
}

proptest! {
    #[test]
    fn adjoint_reverses_products(a in complex_operator(), b in complex_operator()) {
        let lhs = a.compose(&b).adjoint();
        let rhs = b.adjoint().compose(&a.adjoint());
        prop_assert!(max_abs_diff(&lhs, &rhs) < 1e-13);
        prop_assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn closed_powers_form_a_homomorphism(k in 1..=12_u32, i in -30..30_i64, j in -30..30_i64) {
        let p = DihedralParams::new(k).unwrap();
        let product = dihedral::power_r_closed(&p, i).compose(&dihedral::power_r_closed(&p, j));
        prop_assert!(max_abs_diff(&product, &dihedral::power_r_closed(&p, i + j)) < 1e-12);
    }

    #[test]
    fn rotated_operators_flip_sign_after_a_full_turn(k in 1..=12_u32, i in -30..30_i64) {
        let p = DihedralParams::new(k).unwrap();
        let shifted = dihedral::rotated_annihilator(&p, i + 2 * i64::from(k));
        prop_assert!(max_abs_diff(&shifted, &-dihedral::rotated_annihilator(&p, i)) < 1e-14);
        prop_assert!(max_abs_diff(
            &dihedral::rotated_number(&p, i + 2 * i64::from(k)),
            &dihedral::rotated_number(&p, i),
        ) < 1e-14);
    }

    #[test]
    fn annihilators_kill_the_vacuum(k in 1..=12_u32, i in 0..24_i64) {
        let vacuum = FockBasis::vacuum();
        for m in Mode::ALL {
            prop_assert_eq!(annihilator(m).apply(&vacuum).norm(), 0.0);
        }
        let p = DihedralParams::new(k).unwrap();
        prop_assert!(dihedral::rotated_annihilator(&p, i).apply(&vacuum).norm() < 1e-15);
    }

    #[test]
    fn angular_operators_are_hermitian(
        (k, phi) in (1..=12_u32).prop_flat_map(|k| (Just(k), generic_phi(k))),
        a in coupling(),
        b in coupling(),
    ) {
        let p = ModelParams::couplings(k, a, b).unwrap();
        for op in all_operators(&p) {
            let m = op.evaluate(phi).unwrap();
            prop_assert!(m.is_hermitian(1e-12 * (1.0 + m.max_abs())), "{:?} at k={}", op.kind, k);
            prop_assert_eq!(m.max_imag(), 0.0);
        }
    }

    #[test]
    fn angular_operators_are_linear_in_couplings(
        (k, phi) in odd_k().prop_flat_map(|k| (Just(k), generic_phi(k))),
        a in coupling(),
        b in coupling(),
    ) {
        let at = |a, b| all_operators(&ModelParams::couplings(k, a, b).unwrap());
        for ((full, only_a), only_b) in at(a, b).iter().zip(at(a, 0.0)).zip(at(0.0, b)) {
            let sum = only_a.assemble(phi) + only_b.assemble(phi);
            prop_assert!(max_rel_diff(&full.assemble(phi), &sum) < 1e-12, "{:?}", full.kind);
        }
    }

    #[test]
    fn angular_operators_scale_as_inverse_square_radius(
        (k, phi) in odd_k().prop_flat_map(|k| (Just(k), generic_phi(k))),
        a in coupling(),
        b in coupling(),
        r in 0.2..5.0_f64,
    ) {
        let unit = ModelParams::couplings(k, a, b).unwrap();
        let scaled = ModelParams { r, ..unit };
        for (u, s) in all_operators(&unit).iter().zip(all_operators(&scaled)) {
            let expected = u.assemble(phi) * (1.0 / (r * r));
            prop_assert!(max_rel_diff(&s.assemble(phi), &expected) < 1e-12, "{:?}", u.kind);
        }
    }

    #[test]
    fn angular_operators_have_period_pi(
        (k, phi) in (1..=12_u32).prop_flat_map(|k| (Just(k), generic_phi(k))),
        a in coupling(),
        b in coupling(),
    ) {
        let p = ModelParams::couplings(k, a, b).unwrap();
        for op in all_operators(&p) {
            prop_assert!(max_rel_diff(&op.assemble(phi + PI), &op.assemble(phi)) < 1e-9, "{:?}", op.kind);
        }
    }

    #[test]
    fn three_assembly_paths_agree(
        (k, phi) in odd_k().prop_flat_map(|k| (Just(k), generic_phi(k))),
        a in coupling(),
        b in coupling(),
    ) {
        let p = ModelParams::couplings(k, a, b).unwrap();
        let rotated = extension::gamma_tilde_rotated(&p).unwrap().assemble(phi);
        let expanded = extension::gamma_tilde_expanded(&p).unwrap().assemble(phi);
        let difference = extension::dihedral_difference(&p).unwrap().assemble(phi);
        let gamma = extension::gamma_susy(&p).assemble(phi);
        prop_assert!(max_rel_diff(&rotated, &expanded) < 1e-12);
        prop_assert!(max_rel_diff(&difference, &rotated) < 1e-12);
        prop_assert!(max_rel_diff(&rotated, &gamma) < 1e-9);
    }

    #[test]
    fn gamma_at_real_k_is_hermitian_and_kills_the_vacuum(k in 0.1..8.0_f64, phi in 0.0..PI, a in coupling(), b in coupling()) {
        match extension::gamma_susy_real_k(k, a, b, 1.0, phi) {
            Ok(m) => {
                prop_assert!(m.is_hermitian(1e-12 * (1.0 + m.max_abs())));
                prop_assert_eq!(m.apply(&FockBasis::vacuum()).norm(), 0.0);
            }
            Err(e) => prop_assert!(matches!(e, ttw_dihedral::Error::NearPole { .. }), "{}", e),
        }
    }

    #[test]
    fn gamma_at_real_k_extends_the_integer_case(
        (k, phi) in (1..=12_u32).prop_flat_map(|k| (Just(k), generic_phi(k))),
        a in coupling(),
        b in coupling(),
    ) {
        let integer = extension::gamma_susy(&ModelParams::couplings(k, a, b).unwrap()).assemble(phi);
        let real = extension::gamma_susy_real_k(f64::from(k), a, b, 1.0, phi).unwrap();
        prop_assert_eq!(real, integer);
    }

    #[test]
    fn tampered_annihilator_breaks_canonical_relations(row in 0..DIM, col in 0..DIM, eps in 1e-6..1e-3_f64) {
        let b_x = annihilator(Mode::X).with_entry_shifted(row, col, Complex64::new(eps, 0.0));
        prop_assert!(!fock::verify_canonical_relations_for(&b_x, &annihilator(Mode::Y)).pass);
    }
}
