use std::f64::consts::TAU;

use cdd_core::engine::{
    density_matrix_oracle, integrate_trajectory, prepare_trace, propagate, sweep_initial_states,
    sweep_temperature_cycles, SimGrid,
};
use cdd_core::geometry::{hadamard_gate, make_unit, orthogonal_control_axis};
use cdd_core::{BathSpec, ComplexVec3, ControlProgram, UnitVec3, Vec3};

const TAU_S: f64 = 1e-10;

fn lambda() -> ComplexVec3 {
    ComplexVec3::from_parts(
        Vec3::new(0.8, 0.0, 2.0 * 2f64.sqrt() / 5.0),
        Vec3::new(0.0, 0.2, 0.0),
    )
}

fn uc() -> UnitVec3 {
    make_unit(Vec3::new(1.0, 0.0, -2f64.sqrt())).unwrap()
}

fn bath() -> BathSpec {
    BathSpec::with_cutoff_product(1.0 / 16.0, TAU, 0.25, TAU_S).unwrap()
}

fn baseline() -> ControlProgram {
    ControlProgram::gate_only(hadamard_gate(), TAU_S).unwrap()
}

fn protected() -> ControlProgram {
    ControlProgram::full(hadamard_gate(), uc(), 5, TAU_S).unwrap()
}

const R0: Vec3 = Vec3::new(0.5, 0.0, 0.0);

#[test]
fn baseline_fidelity_converges() {
    let f: Vec<f64> = [512, 1024, 2048]
        .iter()
        .map(|&n| {
            integrate_trajectory(&baseline(), lambda(), &bath(), SimGrid::new(n).unwrap(), R0)
                .unwrap()
                .final_fidelity()
        })
        .collect();
    let d1 = (f[0] - f[1]).abs();
    let d2 = (f[1] - f[2]).abs();
    let order = (d1 / d2).log2();
    println!("fidelities {f:?}, observed order {order:.2}");
    assert!(order >= 2.0, "observed order {order}");
    assert!((f[2] - 0.7199).abs() < 1e-4);
}

#[test]
fn protected_run_stays_physical() {
    let t = integrate_trajectory(
        &protected(),
        lambda(),
        &bath(),
        SimGrid::new(1024).unwrap(),
        R0,
    )
    .unwrap();
    assert!(!t.purity_excess);
    assert!(t.max_bloch_norm <= 0.5 + 1e-3);
    assert!(t.fidelity.iter().all(|f| f.is_finite()));
    assert_eq!(t.fidelity[0], 1.0);
    assert!((t.final_fidelity() - 0.9965).abs() < 5e-4);
}

#[test]
fn density_matrix_route_agrees_on_headline_runs() {
    for prog in [baseline(), protected()] {
        let grid = SimGrid::new(512).unwrap();
        let a = integrate_trajectory(&prog, lambda(), &bath(), grid, R0).unwrap();
        let b = density_matrix_oracle(&prog, lambda(), &bath(), grid, R0).unwrap();
        let worst = a
            .bloch
            .iter()
            .zip(&b.trajectory.bloch)
            .map(|(x, y)| (*x - *y).max_abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-10, "{worst}");
        assert!(b.max_trace_error < 1e-12);
    }
}

#[test]
fn oracle_with_zero_coupling_is_constant() {
    let b = density_matrix_oracle(
        &protected(),
        ComplexVec3::ZERO,
        &bath(),
        SimGrid::new(64).unwrap(),
        R0,
    )
    .unwrap();
    assert!(b
        .trajectory
        .fidelity
        .iter()
        .all(|f| (f - 1.0).abs() < 1e-15));
}

#[test]
fn single_cell_sweep_matches_single_run() {
    let grid = SimGrid::new(256).unwrap();
    let s = sweep_initial_states(&protected(), lambda(), &bath(), grid, 1, 1).unwrap();
    let t = integrate_trajectory(&protected(), lambda(), &bath(), grid, R0).unwrap();
    assert_eq!(s.cells.len(), 1);
    assert_eq!(s.cells[0].theta, std::f64::consts::FRAC_PI_2);
    assert!((s.min - t.final_fidelity()).abs() < 1e-15);
    assert_eq!(s.min, s.max);
}

#[test]
fn inset_single_pair_matches_single_run() {
    let grid = SimGrid::new(256).unwrap();
    let table =
        sweep_temperature_cycles(&protected(), lambda(), &bath(), grid, R0, &[0.25], &[5]).unwrap();
    let t = integrate_trajectory(&protected(), lambda(), &bath(), grid, R0).unwrap();
    assert_eq!(table.fidelity, vec![vec![t.final_fidelity()]]);
}

#[test]
fn trace_reuse_matches_fresh_integration() {
    let grid = SimGrid::new(128).unwrap();
    let trace = prepare_trace(&protected(), lambda(), &bath(), grid).unwrap();
    let r = Vec3::new(0.1, 0.2, -0.3);
    assert_eq!(
        propagate(&trace, r).unwrap(),
        integrate_trajectory(&protected(), lambda(), &bath(), grid, r).unwrap()
    );
}

#[test]
fn repeated_runs_are_bit_identical() {
    let grid = SimGrid::new(256).unwrap();
    let a = integrate_trajectory(&protected(), lambda(), &bath(), grid, R0).unwrap();
    let b = integrate_trajectory(&protected(), lambda(), &bath(), grid, R0).unwrap();
    assert_eq!(a, b);
}

#[test]
fn computed_axis_also_protects() {
    // the cross-product axis is the negative of the hand-picked one; both decouple
    let axis = orthogonal_control_axis(lambda()).unwrap();
    assert!((axis.vec() + uc().vec()).max_abs() < 1e-15);
    let prog = protected().with_control_axis(axis);
    let f = integrate_trajectory(&prog, lambda(), &bath(), SimGrid::new(1024).unwrap(), R0)
        .unwrap()
        .final_fidelity();
    assert!(f > 0.99, "{f}");
}
