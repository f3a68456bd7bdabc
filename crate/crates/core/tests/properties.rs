//! Property-based invariants over randomly generated flow data.

use proptest::prelude::*;

use ruelle::complexes::C64;
use ruelle::flow::{
    load_spec, save_spec, time_reversed, validate_spec, ClosedOrbit, FixedPoint, FlatBundleData,
    FlowSpec,
};
use ruelle::rational::{format_rational, parse_rational, rat, rat_int, Rat};
use ruelle::specfun::{orbit_dirichlet_sum, PrecisionPolicy};
use ruelle::spectrum::{alternating_dimension_sum, dim_resonant_space, resonances};

fn arb_spec() -> impl Strategy<Value = FlowSpec> {
    (1usize..=4, 1usize..=3).prop_flat_map(|(n, rank)| {
        let fixed = prop::collection::vec(0usize..=n, 0..=2).prop_map(|dims| {
            dims.into_iter()
                .enumerate()
                .map(|(i, stable_dim)| FixedPoint {
                    id: format!("f{i}"),
                    stable_dim,
                })
                .collect::<Vec<_>>()
        });
        let orbit = (
            1usize..=n,
            (1i64..=12, 1i64..=4),
            any::<bool>(),
            prop::collection::vec(0i64..12, rank),
        );
        let orbits = prop::collection::vec(orbit, 0..=2).prop_map(|rows| {
            rows.into_iter()
                .enumerate()
                .map(|(i, (stable_dim, (num, den), twisted, phases))| ClosedOrbit {
                    id: format!("o{i}"),
                    period: rat(num, den),
                    stable_dim,
                    twisted,
                    holonomy_phases: phases.into_iter().map(|k| rat(k, 12)).collect(),
                })
                .collect::<Vec<_>>()
        });
        let betti = prop::option::of(prop::collection::vec(0usize..=3, n + 1));
        (fixed, orbits, betti).prop_map(move |(mut fixed_points, closed_orbits, betti)| {
            if fixed_points.is_empty() && closed_orbits.is_empty() {
                fixed_points.push(FixedPoint {
                    id: "anchor".into(),
                    stable_dim: 0,
                });
            }
            FlowSpec {
                manifold_dim: n,
                bundle: FlatBundleData { rank },
                fixed_points,
                closed_orbits,
                smale_order: None,
                betti,
            }
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_specs_pass_validation(spec in arb_spec()) {
        let report = validate_spec(&spec);
        prop_assert!(report.is_valid(), "{:?}", report.first_failure());
    }

    #[test]
    fn specs_roundtrip_through_json(spec in arb_spec()) {
        let text = save_spec(&spec);
        let back = load_spec(&text).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(spec, back);
    }

    #[test]
    fn alternating_sums_vanish_off_the_zero_line(spec in arb_spec()) {
        let lines = resonances(&spec, &rat_int(2))
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        for line in lines {
            let sum = alternating_dimension_sum(&spec, &line.frequency);
            if line.frequency == rat_int(0) {
                prop_assert_eq!(sum, spec.chi());
            } else {
                prop_assert_eq!(sum, 0, "nu = {}", line.frequency);
            }
        }
    }

    #[test]
    fn duality_pairs_every_line_with_its_negative(spec in arb_spec()) {
        let reversed = time_reversed(&spec);
        let n = spec.manifold_dim;
        let lines = resonances(&spec, &rat_int(2))
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        for line in lines {
            let negated = -&line.frequency;
            for k in 0..=n {
                let forward = dim_resonant_space(&spec, k, &line.frequency)
                    .map_err(|e| TestCaseError::fail(e.to_string()))?;
                let backward = dim_resonant_space(&reversed, n - k, &negated)
                    .map_err(|e| TestCaseError::fail(e.to_string()))?;
                prop_assert_eq!(
                    forward, backward,
                    "degree {} at nu = {}", k, line.frequency
                );
            }
        }
    }

    #[test]
    fn smaller_windows_are_prefixes_of_larger_ones(spec in arb_spec()) {
        let small = resonances(&spec, &rat_int(1))
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        let large = resonances(&spec, &rat_int(3))
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        let window: Rat = rat_int(1);
        let kept: Vec<_> = large
            .into_iter()
            .filter(|line| {
                let nu = &line.frequency;
                let abs = if nu < &rat_int(0) { -nu } else { nu.clone() };
                abs <= window
            })
            .collect();
        prop_assert_eq!(small, kept);
    }

    #[test]
    fn rationals_roundtrip_through_formatting(num in -10_000i64..10_000, den in 1i64..10_000) {
        let value = rat(num, den);
        let text = format_rational(&value);
        let back = parse_rational(&text).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(value, back);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn dirichlet_sum_matches_direct_summation(
        re_s in 0.6f64..2.5,
        im_s in -2.0f64..2.0,
        modulus in 0.05f64..0.85,
        angle in 0.0f64..6.28,
    ) {
        let s = C64::new(re_s, im_s);
        let x = C64::from_polar(modulus, angle);
        let policy = PrecisionPolicy::default();
        let fast = orbit_dirichlet_sum(s, x, &policy)
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        let mut direct = C64::new(0.0, 0.0);
        let mut power = C64::new(1.0, 0.0);
        for m in 1..=3000u32 {
            power *= x;
            direct += power * C64::new(m as f64, 0.0).powc(s - C64::new(1.0, 0.0));
        }
        let scale = 1.0 + fast.norm();
        prop_assert!(
            (fast - direct).norm() <= 1e-9 * scale,
            "s = {}, x = {}, difference {:.3e}",
            s, x, (fast - direct).norm()
        );
    }
}
