use mellin_dglap::dual_representation::{eval_dual, DualSeriesConfig};
use mellin_dglap::evolution::{evolve_moment, Coupling, EvolutionSpec};
use mellin_dglap::mellin_inversion::{
    build_vertical_contour, invert_direct, invert_mapped, mapped_moment, mapped_variable,
};
use mellin_dglap::special_functions::phi_series_signed;
use mellin_dglap::{phi_closed_form, Complex64, EvolutionPoint};
use proptest::prelude::*;

const X_GRID: [f64; 9] = [0.01, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.8, 0.9];
const U_GRID: [f64; 7] = [1.0, 2.0, 4.0, 10.0, 25.0, 50.0, 100.0];

#[test]
fn subtracting_the_leading_pole_helps_everywhere() {
    for (t, n) in [(200.0, 4001), (1000.0, 20001)] {
        let contour = build_vertical_contour(0.5, t, n).unwrap();
        for &x in &X_GRID {
            for &u in &U_GRID {
                let p = EvolutionPoint::new(x, u).unwrap();
                let with = invert_direct(&p, &contour, true).unwrap();
                let without = invert_direct(&p, &contour, false).unwrap();
                assert!(
                    with.deviation_from_oracle < without.deviation_from_oracle,
                    "T={t} x={x} u={u}: {} vs {}",
                    with.deviation_from_oracle,
                    without.deviation_from_oracle
                );
            }
        }
    }
}

#[test]
fn mapped_route_converges_geometrically() {
    for &x in &X_GRID {
        for &u in &U_GRID[1..] {
            let p = EvolutionPoint::new(x, u).unwrap();
            let mut prev = f64::INFINITY;
            for n in [4, 8, 16, 32, 64] {
                let dev = invert_mapped(&p, n).unwrap().deviation_from_oracle;
                // each doubling gains at least a decade until roundoff
                assert!(
                    dev <= (0.1 * prev).max(1e-14),
                    "x={x} u={u} n={n}: {dev} after {prev}"
                );
                prev = dev;
            }
        }
    }
}

#[test]
fn mapped_error_estimate_covers_the_deviation() {
    for &x in &X_GRID {
        for &u in &U_GRID[1..] {
            let p = EvolutionPoint::new(x, u).unwrap();
            let oracle = phi_closed_form(&p, 1e-16).unwrap().value;
            for n in [8, 16] {
                let r = invert_mapped(&p, n).unwrap();
                assert!(
                    (r.value - oracle).abs() <= r.error_estimate,
                    "x={x} u={u} n={n}"
                );
            }
        }
    }
}

proptest! {
    #[test]
    fn dual_agrees_with_the_signed_series(x in 0.001f64..1.0, u in 0.01f64..200.0) {
        let p = EvolutionPoint::new(x, u).unwrap();
        let dual = eval_dual(&p, &DualSeriesConfig::default()).unwrap().value;
        let series = x * phi_series_signed(p.t(), 1e-16).unwrap().value;
        prop_assert!((dual - series).abs() <= 1e-14 * (1.0 + series.abs()), "{} vs {}", dual, series);
    }

    #[test]
    fn map_round_trip(re in -0.5f64..3.0, im in -3.0f64..3.0, w in 0.05f64..5.0) {
        let m = Complex64::new(re, im);
        let n = mapped_moment(m, w);
        let back = mapped_variable(n, w);
        prop_assume!((n + 1.0).norm() > 1e-3);
        prop_assert!((back - m).norm() <= 1e-10 * (1.0 + m.norm()), "m={} n={} back={}", m, n, back);
    }

    #[test]
    fn fixed_coupling_evolution_composes(
        re in 0.0f64..5.0,
        im in -5.0f64..5.0,
        u1 in 1.0f64..10.0,
        r1 in 1.0f64..10.0,
        r2 in 1.0f64..10.0,
    ) {
        let n = Complex64::new(re, im);
        let (u2, u3) = (u1 * r1, u1 * r1 * r2);
        let f0 = Complex64::new(0.3, -0.7);
        let step = |a: f64, b: f64, f: Complex64| {
            evolve_moment(&EvolutionSpec::new(n, a, b, Coupling::FixedAbsorbed).unwrap(), f, 1e-12).unwrap()
        };
        let two_steps = step(u2, u3, step(u1, u2, f0));
        let one_step = step(u1, u3, f0);
        prop_assert!((two_steps - one_step).norm() <= 1e-12 * one_step.norm());
    }

    #[test]
    fn running_evolution_composes(u1 in 1.0f64..10.0, r1 in 1.0f64..10.0, r2 in 1.0f64..10.0) {
        let n = Complex64::new(1.5, 0.5);
        let coupling = Coupling::running(|s| 1.0 / (1.0 + s));
        let (u2, u3) = (u1 * r1, u1 * r1 * r2);
        let f0 = Complex64::new(1.0, 0.0);
        let step = |a: f64, b: f64, f: Complex64| {
            evolve_moment(&EvolutionSpec::new(n, a, b, coupling.clone()).unwrap(), f, 1e-13).unwrap()
        };
        let two_steps = step(u2, u3, step(u1, u2, f0));
        let one_step = step(u1, u3, f0);
        prop_assert!((two_steps - one_step).norm() <= 1e-11 * one_step.norm());
    }
}
