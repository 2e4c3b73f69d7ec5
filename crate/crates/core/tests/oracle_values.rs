//! Values computed by an independent script (direct pair expansion with
//! log-gamma weights and a dictionary-based partial trace) and frozen here.

use num_complex::Complex64;
use scspdc::sweep::{evaluate_point, PointParams, FIGURE_MAX_PAIRS};
use scspdc::TruncationPolicy;

fn at(lambda: f64, photons: usize, z: f64, r: f64) -> scspdc::sweep::PointResult {
    let p = PointParams {
        lambda,
        photons,
        z: Complex64::new(z, 0.0),
        r,
        theta: 0.0,
    };
    let policy = TruncationPolicy::new(1e-12, FIGURE_MAX_PAIRS).unwrap();
    evaluate_point(&p, &policy).unwrap()
}

fn close(got: f64, want: f64, tol: f64) {
    assert!((got - want).abs() <= tol, "got {got}, want {want}");
}

#[test]
fn moderate_pump_observables() {
    let rep = at(0.5, 4, 1.0, 0.5).report;
    close(rep.entropy, 0.710713732011686, 1e-10);
    close(rep.n_s, 4.673223928835145, 1e-10);
    close(rep.n_i, 2.042179245241073, 1e-10);
    close(rep.q_s.unwrap(), -0.25873771636505866, 1e-10);
    close(rep.q_i.unwrap(), 0.6962686549176488, 1e-10);
    close(rep.g2.unwrap(), 1.2474565580211732, 1e-10);
}

#[test]
fn strong_pump_three_photon_seed() {
    let rep = at(1.0, 3, 2.0, 1.0).report;
    close(rep.entropy, 0.9093989582114499, 1e-10);
    close(rep.n_s, 8.441252180229794, 1e-9);
    close(rep.n_i, 5.607530584104733, 1e-9);
    close(rep.q_s.unwrap(), 0.6941387839877546, 1e-9);
    close(rep.q_i.unwrap(), 1.550258529928581, 1e-9);
    close(rep.g2.unwrap(), 1.298721106455637, 1e-10);
}

#[test]
fn saturated_entropy_at_largest_pump() {
    // converged at 6000 pairs in the reference computation
    close(at(0.0, 4, 1.0, 3.0).report.entropy, 0.9973830605569283, 1e-10);
    close(at(0.5, 4, 1.0, 3.0).report.entropy, 0.9982650323044032, 1e-10);
    close(at(1.0, 4, 1.0, 3.0).report.entropy, 0.9984987710356192, 1e-10);
}

#[test]
fn curved_joint_probabilities() {
    let joint = at(10.0, 4, 1.0, 0.1).report.joint;
    close(joint.get(4, 0), 0.9457435913761315, 1e-12);
    close(joint.get(5, 1), 0.046973708848141255, 1e-12);
}
