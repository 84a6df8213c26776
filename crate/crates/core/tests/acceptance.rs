//! Acceptance suite: one line per criterion, nonzero exit if any fails.
#![allow(clippy::approx_constant)]

use std::f64::consts::TAU;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{rngs::StdRng, Rng, SeedableRng};
use rotovac::circle::{
    eigenvalue, mode_function, rotating_energy, rotating_energy_regularized, static_energy,
};
use rotovac::numerics::{rect_energy_oracle, required_truncation, RegulatorGrid};
use rotovac::rectangle::{rect_energy, rect_energy_printed};
use rotovac::tube::{
    critical_length, omega_min, rotational_energy, tube_energy_longtube, vacuum_moment_per_length,
};
use rotovac::{CircleGeometry, ModeLabel, RectangleGeometry, RotationState, SeriesTolerance, TubeGeometry};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn static_circle() -> Outcome {
    let e = static_energy(&CircleGeometry::new(1.0).unwrap());
    let err = (e + 1.0 / 48.0).abs();
    outcome(err < 1e-12, format!("E = {e:.15}, |err| = {err:.1e} (tol 1e-12)"))
}

fn rotating_circle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let geom = CircleGeometry::new(1.0).unwrap();
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let x = rng.random_range(-0.999_999..0.999_999);
        let e = rotating_energy(&geom, &RotationState::new(x).unwrap());
        worst = worst.max((e * 48.0 + 1.0 + x * x).abs());
    }
    outcome(worst < 1e-12, format!("max |48R·E + 1 + x²| = {worst:.1e} over 100 samples (tol 1e-12)"))
}

fn circle_oracle() -> Outcome {
    let geom = CircleGeometry::new(1.0).unwrap();
    let mut worst: f64 = 0.0;
    for &x in &[0.0, 0.3, 0.7] {
        let rot = RotationState::new(x).unwrap();
        match rotating_energy_regularized(&geom, &rot, None) {
            Ok(e) => worst = worst.max(rel(e, rotating_energy(&geom, &rot))),
            Err(e) => return outcome(false, format!("oracle failed at x = {x}: {e}")),
        }
    }
    outcome(worst < 1e-8, format!("max relative deviation {worst:.1e} at x ∈ {{0, 0.3, 0.7}} (tol 1e-8)"))
}

fn rectangle_oracle() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for &(h, w) in &[(1.0, 1.0), (1.0, 2.0), (1.0, 5.0)] {
        let geom = RectangleGeometry::new(h, w).unwrap();
        let fit = RegulatorGrid::for_rectangle(&geom)
            .and_then(|grid| rect_energy_oracle(&geom, &grid, required_truncation(&geom, &grid)));
        let (fit, closed) = match (fit, rect_energy(&geom)) {
            (Ok(f), Ok(c)) => (f, c),
            (Err(e), _) | (_, Err(e)) => return outcome(false, format!("({h},{w}): {e}")),
        };
        let d = rel(fit.finite_part, closed);
        pass &= d < 1e-3;
        parts.push(format!("({h},{w}) rel {d:.1e} fit residual {:.1e}", fit.relative_residual));
    }
    outcome(pass, format!("{} (tol 1e-3)", parts.join("; ")))
}

fn rectangle_symmetry() -> Outcome {
    let tol = SeriesTolerance::default();
    let mut worst: f64 = 0.0;
    let mut at = 1.0;
    for i in 0..=76 {
        let aspect = 1.0 + 0.25 * i as f64;
        let a = rect_energy_printed(&RectangleGeometry::new(1.0, aspect).unwrap(), &tol);
        let b = rect_energy_printed(&RectangleGeometry::new(aspect, 1.0).unwrap(), &tol);
        let (a, b) = match (a, b) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return outcome(false, format!("aspect {aspect}: {e}")),
        };
        let d = (a - b).abs() / a.abs();
        if d > worst {
            worst = d;
            at = aspect;
        }
    }
    outcome(worst <= 1e-10, format!("max |E(L,l) − E(l,L)|/|E| = {worst:.1e} at l/L = {at} (tol 1e-10)"))
}

fn critical() -> Outcome {
    match critical_length(1.0, 1e-6) {
        Ok(lc) => outcome((47.6..=48.6).contains(&lc), format!("L_c = {lc:.4} R (required [47.6, 48.6])")),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn optimal_frequency_limit() -> Outcome {
    match omega_min(&TubeGeometry::new(1.0, 1e4).unwrap()) {
        Ok(r) => outcome(
            (r.omega_x - 0.7071).abs() <= 1e-3,
            format!("Ω_min·R = {:.6} at L = 1e4 R (target 0.7071 ± 1e-3)", r.omega_x),
        ),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn universal_moment() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for &(r, l) in &[(1.0, 1e6), (5.0, 5e6)] {
        match vacuum_moment_per_length(&TubeGeometry::new(r, l).unwrap()) {
            Ok(v) => {
                pass &= (v + 0.003635).abs() <= 1e-5;
                parts.push(format!("R={r}: {v:.7}"));
            }
            Err(e) => return outcome(false, e.to_string()),
        }
    }
    outcome(pass, format!("{} (target −0.003635 ± 1e-5)", parts.join(", ")))
}

fn long_tube_consistency() -> Outcome {
    let geom = TubeGeometry::new(1.0, 1000.0).unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    for &x in &[0.3, 0.5, 0.7071] {
        let rot = RotationState::new(x).unwrap();
        let exact = match rotational_energy(&geom, &rot) {
            Ok(e) => e,
            Err(e) => return outcome(false, e.to_string()),
        };
        let approx = tube_energy_longtube(&geom, &rot);
        let d = ((exact - approx) / approx).abs();
        pass &= d <= 0.01;
        parts.push(format!("x={x}: {:.2}%", 100.0 * d));
    }
    outcome(pass, format!("{} (tol 1%)", parts.join(", ")))
}

fn barrier_shape() -> Outcome {
    let geom = TubeGeometry::new(1.0, 100.0).unwrap();
    let n = 2000;
    let mut curve = Vec::with_capacity(n);
    for i in 1..=n {
        let x = 0.999 * i as f64 / n as f64;
        match rotational_energy(&geom, &RotationState::new(x).unwrap()) {
            Ok(e) => curve.push((x, e)),
            Err(e) => return outcome(false, e.to_string()),
        }
    }
    let first_positive = curve.iter().find(|(_, e)| *e > 0.0).map(|p| p.0);
    let later_negative = first_positive.and_then(|xa| curve.iter().find(|(x, e)| *x > xa && *e < 0.0).map(|p| p.0));
    let first_negative = curve.iter().find(|(_, e)| *e < 0.0).map(|p| p.0);
    match (first_positive, later_negative) {
        (Some(xa), Some(xb)) => outcome(true, format!("E_rot > 0 at x_a = {xa:.4}, E_rot < 0 at x_b = {xb:.4}")),
        _ => outcome(
            false,
            format!(
                "no x with E_rot > 0 before a negative region at L = 100 R; first E_rot < 0 at x = {}",
                first_negative.map_or("none".into(), |x| format!("{x:.4}"))
            ),
        ),
    }
}

fn mode_contract() -> Outcome {
    const H: f64 = 1e-4;
    let geom = CircleGeometry::new(1.0).unwrap();
    let mut worst_residual: f64 = 0.0;
    let mut worst_cut: f64 = 0.0;
    for &x in &[0.0, 0.5, -0.5] {
        let rot = RotationState::new(x).unwrap();
        let omega_rot = rot.angular_frequency(1.0);
        for m in 1..=10 {
            let label = ModeLabel::new(m, 0.9).unwrap();
            let f = |t: f64, phi: f64| mode_function(&label, &geom, &rot, t, phi);
            let lambda = eigenvalue(&label, &geom, &rot);
            let scale = (m * m) as f64 / 4.0 + 0.81 / rot.contraction();
            for &(t, phi) in &[(0.2, 1.1), (0.9, 3.3), (-0.4, 5.0)] {
                let c = f(t, phi);
                let dtt = (f(t + H, phi) - 2.0 * c + f(t - H, phi)) / (H * H);
                let dpp = (f(t, phi + H) - 2.0 * c + f(t, phi - H)) / (H * H);
                let r = ((dtt - dpp) - lambda * c).norm() / (scale * c.norm().max(1e-3));
                worst_residual = worst_residual.max(r);
            }
            for &t in &[0.0, 0.6] {
                let cut = omega_rot * t;
                for phi in [cut + 1e-9, cut + TAU - 1e-9, cut - 1e-9] {
                    worst_cut = worst_cut.max(f(t, phi).norm() / (m as f64 * 1e-9));
                }
                worst_cut = worst_cut.max(f(t, cut).norm());
            }
        }
    }
    let pass = worst_residual <= 1e-6 && worst_cut <= 1.0;
    outcome(
        pass,
        format!("max □-residual {worst_residual:.1e} (tol 1e-6); max |ψ|/(mδ) at distance δ = 1e-9 from the cut {worst_cut:.3} (tol 1)"),
    )
}

fn cli_determinism() -> Outcome {
    let args = ["tube-sweep", "--radius", "1", "--height", "1000", "--omega-min", "0", "--omega-max", "0.95", "--steps", "96"];
    let run = || Command::new(env!("CARGO_BIN_EXE_rotovac")).args(args).output();
    match (run(), run()) {
        (Ok(a), Ok(b)) => {
            let ok = a.status.success() && b.status.success() && a.stdout == b.stdout;
            outcome(ok, format!("{} bytes, identical = {}", a.stdout.len(), a.stdout == b.stdout))
        }
        (Err(e), _) | (_, Err(e)) => outcome(false, e.to_string()),
    }
}

type Criterion = (u32, &'static str, fn() -> Outcome, Duration);

fn main() {
    let criteria: [Criterion; 12] = [
        (1, "static circle energy", static_circle, Duration::from_secs(1)),
        (2, "rotating circle law", rotating_circle, Duration::from_secs(1)),
        (3, "1-D cutoff oracle", circle_oracle, Duration::from_secs(1)),
        (4, "rectangle vs cutoff oracle", rectangle_oracle, Duration::from_secs(30)),
        (5, "rectangle symmetry", rectangle_symmetry, Duration::from_secs(5)),
        (6, "critical length", critical, Duration::from_secs(60)),
        (7, "optimal frequency limit", optimal_frequency_limit, Duration::from_secs(30)),
        (8, "universal moment of inertia", universal_moment, Duration::from_secs(30)),
        (9, "long-tube consistency", long_tube_consistency, Duration::from_secs(10)),
        (10, "barrier then rotation at L = 100R", barrier_shape, Duration::from_secs(10)),
        (11, "mode-function contract", mode_contract, Duration::from_secs(5)),
        (12, "CLI determinism", cli_determinism, Duration::from_secs(10)),
    ];
    let mut failed = Vec::new();
    for (n, name, check, budget) in criteria {
        let start = Instant::now();
        let o = check();
        let elapsed = start.elapsed();
        let pass = o.pass && elapsed <= budget;
        println!(
            "criterion {n:>2} {}: {name}: {} [{:.2}s, budget {}s]",
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
        if !pass {
            failed.push(n);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 12 criteria pass");
    } else {
        println!("acceptance: {} of 12 fail: {:?}", failed.len(), failed);
        std::process::exit(1);
    }
}
