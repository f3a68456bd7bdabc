//! The imaginary-axis resonance spectrum and its dimension bookkeeping.
//!
//! Every resonance sits at `z0 = -2 i pi nu` for an exact rational
//! frequency `nu`. Fixed points contribute only at `nu = 0` (one state of
//! degree `stable_dim` per bundle line); a closed orbit contributes, for
//! every bundle line `j` and integer winding `p` with
//! `nu = (p + twist + gamma_j) / period`, a pair of states in degrees
//! `stable_dim - 1` and `stable_dim`. Frequencies are compared exactly, so
//! coincidences between orbits are grouped correctly no matter the
//! denominators involved.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complexes::{numerical_rank, CMat, C64};
use crate::error::{Error, Result};
use crate::flow::{orbit_multiplicity_m, FlowSpec, StrictOrder};
use crate::rational::{is_integer, Rat};

/// Which kind of basis state a contributor denotes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    /// Fixed-point state, degree `stable_dim`, at frequency zero only.
    Fixed,
    /// Orbit state of degree `stable_dim - 1`; lies in the kernel of the
    /// tangential contraction.
    OrbitU,
    /// Orbit state of degree `stable_dim`; not in that kernel.
    OrbitUTilde,
}

/// One basis state on a resonance line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contributor {
    pub element: String,
    /// Bundle line index, `0..rank`.
    pub line_index: usize,
    /// Integer winding `p` for orbit states; `None` for fixed points.
    pub winding: Option<BigInt>,
    pub kind: StateKind,
}

impl Contributor {
    /// Compact text form, e.g. `circle.j0.p-1.U` or `min.j0`.
    pub fn label(&self) -> String {
        let mut s = format!("{}.j{}", self.element, self.line_index);
        if let Some(p) = &self.winding {
            s.push_str(&format!(".p{p}"));
        }
        match self.kind {
            StateKind::Fixed => {}
            StateKind::OrbitU => s.push_str(".U"),
            StateKind::OrbitUTilde => s.push_str(".Ut"),
        }
        s
    }
}

/// A resonance line: frequency plus per-degree dimension data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResonanceLine {
    /// Frequency `nu`; the resonance itself is `z0 = -2 i pi nu`.
    pub frequency: Rat,
    /// `dim C^k` for `k = 0..=n`.
    pub per_degree_dim: Vec<usize>,
    /// Dimension of the tangential-contraction kernel per degree.
    pub per_degree_kernel_dim: Vec<usize>,
    /// The states behind those dimensions, per degree.
    pub contributors: Vec<Vec<Contributor>>,
}

impl ResonanceLine {
    pub fn total_dim(&self) -> usize {
        self.per_degree_dim.iter().sum()
    }
}

/// One orbit state pair `(orbit, line, winding)` sitting on a given
/// frequency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPair {
    pub orbit_index: usize,
    pub line_index: usize,
    pub winding: BigInt,
}

/// All `(orbit, line, winding)` triples whose frequency equals `nu`.
pub fn pairs_on_line(spec: &FlowSpec, nu: &Rat) -> Vec<OrbitPair> {
    let mut pairs = Vec::new();
    for (oi, orbit) in spec.closed_orbits.iter().enumerate() {
        for (j, gamma) in orbit.holonomy_phases.iter().enumerate() {
            // nu * period - twist - gamma must be an integer winding.
            let p = nu * &orbit.period - orbit.twist_offset() - gamma;
            if is_integer(&p) {
                pairs.push(OrbitPair {
                    orbit_index: oi,
                    line_index: j,
                    winding: p.to_integer(),
                });
            }
        }
    }
    pairs
}

/// Enumerate all resonance lines with `|nu| <= window`, grouped exactly by
/// frequency and sorted by ascending frequency.
pub fn resonances(spec: &FlowSpec, window: &Rat) -> Result<Vec<ResonanceLine>> {
    if window.is_negative() {
        return Err(Error::domain("resonance window must be nonnegative"));
    }
    let n = spec.manifold_dim;
    let rank = spec.bundle.rank;

    struct Builder {
        dims: Vec<usize>,
        kernel: Vec<usize>,
        contributors: Vec<Vec<Contributor>>,
    }
    let fresh = |n: usize| Builder {
        dims: vec![0; n + 1],
        kernel: vec![0; n + 1],
        contributors: vec![Vec::new(); n + 1],
    };
    let mut lines: BTreeMap<Rat, Builder> = BTreeMap::new();

    let mut add =
        |nu: Rat, degree: usize, in_kernel: bool, contributor: Contributor| {
            let b = lines.entry(nu).or_insert_with(|| fresh(n));
            b.dims[degree] += 1;
            if in_kernel {
                b.kernel[degree] += 1;
            }
            b.contributors[degree].push(contributor);
        };

    if !spec.fixed_points.is_empty() {
        for f in &spec.fixed_points {
            for j in 0..rank {
                add(
                    Rat::zero(),
                    f.stable_dim,
                    true,
                    Contributor {
                        element: f.id.clone(),
                        line_index: j,
                        winding: None,
                        kind: StateKind::Fixed,
                    },
                );
            }
        }
    }

    for orbit in &spec.closed_orbits {
        for (j, gamma) in orbit.holonomy_phases.iter().enumerate() {
            let base = orbit.twist_offset() + gamma;
            // |(p + base)/period| <= window, solved exactly for p.
            let lo = (-window * &orbit.period - &base).ceil().to_integer();
            let hi = (window * &orbit.period - &base).floor().to_integer();
            let mut p = lo;
            while p <= hi {
                let nu = (Rat::from_integer(p.clone()) + &base) / &orbit.period;
                add(
                    nu.clone(),
                    orbit.stable_dim - 1,
                    true,
                    Contributor {
                        element: orbit.id.clone(),
                        line_index: j,
                        winding: Some(p.clone()),
                        kind: StateKind::OrbitU,
                    },
                );
                add(
                    nu,
                    orbit.stable_dim,
                    false,
                    Contributor {
                        element: orbit.id.clone(),
                        line_index: j,
                        winding: Some(p.clone()),
                        kind: StateKind::OrbitUTilde,
                    },
                );
                p += BigInt::one();
            }
        }
    }

    Ok(lines
        .into_iter()
        .map(|(frequency, b)| ResonanceLine {
            frequency,
            per_degree_dim: b.dims,
            per_degree_kernel_dim: b.kernel,
            contributors: b.contributors,
        })
        .collect())
}

/// Number of orbit states of degree-group `j` on the line `nu`: triples
/// `(orbit, line, winding)` with `stable_dim(orbit) = j` and matching
/// frequency. Degree groups beyond the orbit range are empty.
fn orbit_group_count(spec: &FlowSpec, j: usize, nu: &Rat) -> usize {
    spec.closed_orbits
        .iter()
        .filter(|o| o.stable_dim == j)
        .map(|o| {
            o.holonomy_phases
                .iter()
                .filter(|g| is_integer(&(nu * &o.period - o.twist_offset() - *g)))
                .count()
        })
        .sum()
}

/// Dimension of the degree-`k` resonant space at frequency `nu`, from the
/// counting rules alone (no matrices).
pub fn dim_resonant_space(spec: &FlowSpec, k: usize, nu: &Rat) -> Result<usize> {
    let n = spec.manifold_dim;
    if k > n {
        return Err(Error::domain(format!(
            "degree {k} out of range 0..={n}"
        )));
    }
    let fixed = if nu.is_zero() {
        spec.bundle.rank * spec.fixed_count(k)
    } else {
        0
    };
    Ok(fixed + orbit_group_count(spec, k, nu) + orbit_group_count(spec, k + 1, nu))
}

/// Dimension of the tangential-contraction kernel inside the degree-`k`
/// space at frequency `nu`: fixed-point states plus the lower orbit states.
pub fn dim_kernel_space(spec: &FlowSpec, k: usize, nu: &Rat) -> Result<usize> {
    let n = spec.manifold_dim;
    if k > n {
        return Err(Error::domain(format!(
            "degree {k} out of range 0..={n}"
        )));
    }
    let fixed = if nu.is_zero() {
        spec.bundle.rank * spec.fixed_count(k)
    } else {
        0
    };
    Ok(fixed + orbit_group_count(spec, k + 1, nu))
}

/// `sum over k of (-1)^k dim C^k(nu)`: zero away from frequency zero, the
/// Euler characteristic at frequency zero.
pub fn alternating_dimension_sum(spec: &FlowSpec, nu: &Rat) -> i64 {
    (0..=spec.manifold_dim)
        .map(|k| {
            let d = dim_resonant_space(spec, k, nu).expect("degree in range") as i64;
            if k % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .sum()
}

// ---------------------------------------------------------------------------
// Morse inequalities

/// One row of the Morse inequality report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseRow {
    pub degree: usize,
    /// Counting side: orbit multiplicities above degree `k` plus the
    /// alternating fixed-point counts.
    pub lhs: i64,
    /// Topological side: alternating Betti numbers.
    pub rhs: i64,
    pub holds: bool,
}

/// The full report: one row per degree; the top row must be an equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseReport {
    pub rows: Vec<MorseRow>,
    pub top_equality: bool,
    pub pass: bool,
}

/// Multiplicity sum `A_j` of orbits with `stable_dim = j`: total count of
/// bundle lines with trivial combined holonomy.
fn orbit_multiplicity_sum(spec: &FlowSpec, j: usize) -> i64 {
    spec.closed_orbits
        .iter()
        .filter(|o| o.stable_dim == j)
        .map(|o| orbit_multiplicity_m(o, &spec.bundle) as i64)
        .sum()
}

/// Evaluate the Morse inequalities. Requires declared Betti numbers.
pub fn morse_report(spec: &FlowSpec) -> Result<MorseReport> {
    let n = spec.manifold_dim;
    let betti = spec
        .betti
        .as_ref()
        .ok_or_else(|| Error::domain("Morse inequalities need betti numbers in the flow data"))?;
    let rank = spec.bundle.rank as i64;
    let mut rows = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut lhs = orbit_multiplicity_sum(spec, k + 1);
        let mut rhs = 0i64;
        for j in 0..=k {
            let sign = if (k - j) % 2 == 0 { 1 } else { -1 };
            lhs += sign * rank * spec.fixed_count(j) as i64;
            rhs += sign * betti[j] as i64;
        }
        rows.push(MorseRow {
            degree: k,
            lhs,
            rhs,
            holds: lhs >= rhs,
        });
    }
    let top_equality = rows[n].lhs == rows[n].rhs;
    let pass = rows.iter().all(|r| r.holds) && top_equality;
    Ok(MorseReport {
        rows,
        top_equality,
        pass,
    })
}

// ---------------------------------------------------------------------------
// Koszul homology of the zero-frequency complex

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum KoszulKind {
    Fixed,
    U,
    UTilde,
}

#[derive(Debug, Clone)]
struct KoszulState {
    element: String,
    line_index: usize,
    kind: KoszulKind,
}

fn koszul_basis(spec: &FlowSpec) -> Vec<Vec<KoszulState>> {
    let n = spec.manifold_dim;
    let mut basis: Vec<Vec<KoszulState>> = vec![Vec::new(); n + 1];
    for f in &spec.fixed_points {
        for j in 0..spec.bundle.rank {
            basis[f.stable_dim].push(KoszulState {
                element: f.id.clone(),
                line_index: j,
                kind: KoszulKind::Fixed,
            });
        }
    }
    for o in &spec.closed_orbits {
        for j in 0..o.holonomy_phases.len() {
            if o.combined_phase(j).is_one() {
                basis[o.stable_dim - 1].push(KoszulState {
                    element: o.id.clone(),
                    line_index: j,
                    kind: KoszulKind::U,
                });
                basis[o.stable_dim].push(KoszulState {
                    element: o.id.clone(),
                    line_index: j,
                    kind: KoszulKind::UTilde,
                });
            }
        }
    }
    basis
}

/// Homology of the zero-frequency complex under the tangential contraction:
/// the upper orbit state of each trivial-holonomy line maps to its lower
/// partner, everything else maps to zero. When a seed is given, each such
/// image additionally picks up random kernel-type terms from elements
/// strictly below in the Smale order; the homology is unchanged by
/// construction, which makes the seeded variant a numerical cross-check.
fn koszul_homology_inner(spec: &FlowSpec, seed: Option<u64>) -> Result<Vec<usize>> {
    let n = spec.manifold_dim;
    let basis = koszul_basis(spec);
    let order = StrictOrder::of(spec)?;
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);

    // Contraction matrices I_k : C^k -> C^{k-1}, index k-1.
    let mut maps: Vec<CMat> = Vec::with_capacity(n);
    for k in 1..=n {
        let rows = basis[k - 1].len();
        let cols = basis[k].len();
        let mut m = CMat::zeros(rows, cols);
        for (c, col_state) in basis[k].iter().enumerate() {
            if col_state.kind != KoszulKind::UTilde {
                continue;
            }
            for (r, row_state) in basis[k - 1].iter().enumerate() {
                let partner = row_state.kind == KoszulKind::U
                    && row_state.element == col_state.element
                    && row_state.line_index == col_state.line_index;
                if partner {
                    m[(r, c)] = C64::new(1.0, 0.0);
                } else if let Some(rng) = rng.as_mut() {
                    // Kernel-type state from a strictly lower element.
                    let kernel_type = row_state.kind != KoszulKind::UTilde;
                    if kernel_type && order.strictly_less(&row_state.element, &col_state.element)
                    {
                        m[(r, c)] =
                            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    }
                }
            }
        }
        maps.push(m);
    }

    let ranks: Vec<usize> = maps.iter().map(|m| numerical_rank(m, 1e-10).0).collect();
    let mut dims = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let incoming = if k < n { ranks[k] } else { 0 }; // rank I_{k+1}
        let outgoing = if k > 0 { ranks[k - 1] } else { 0 }; // rank I_k
        let h = basis[k].len() as i64 - incoming as i64 - outgoing as i64;
        debug_assert!(h >= 0, "negative homology dimension in degree {k}");
        dims.push(h.max(0) as usize);
    }
    Ok(dims)
}

/// Koszul homology dimensions `H_0..H_n` of the zero-frequency complex.
pub fn koszul_homology(spec: &FlowSpec) -> Result<Vec<usize>> {
    koszul_homology_inner(spec, None)
}

/// Same homology computed from a seeded lower-order perturbation of the
/// contraction; must agree with [`koszul_homology`].
pub fn koszul_homology_seeded(spec: &FlowSpec, seed: u64) -> Result<Vec<usize>> {
    koszul_homology_inner(spec, Some(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{builtin_example, builtin_examples, ClosedOrbit, FixedPoint};
    use crate::rational::{rat, rat_int};

    #[test]
    fn sphere_spectrum_is_one_line_at_zero() {
        let spec = builtin_example("s2-height").unwrap();
        for window in [rat_int(0), rat_int(1), rat_int(10)] {
            let lines = resonances(&spec, &window).unwrap();
            assert_eq!(lines.len(), 1);
            let line = &lines[0];
            assert!(line.frequency.is_zero());
            assert_eq!(line.per_degree_dim, vec![1, 0, 1]);
            assert_eq!(line.per_degree_kernel_dim, vec![1, 0, 1]);
        }
    }

    #[test]
    fn rotation_spectrum_in_unit_window() {
        let spec = builtin_example("s1-rotation").unwrap();
        let lines = resonances(&spec, &rat_int(1)).unwrap();
        let freqs: Vec<Rat> = lines.iter().map(|l| l.frequency.clone()).collect();
        let expected = [
            rat(-11, 12),
            rat(-7, 12),
            rat(-1, 4),
            rat(1, 12),
            rat(5, 12),
            rat(3, 4),
        ];
        assert_eq!(freqs, expected);
        for line in &lines {
            assert_eq!(line.per_degree_dim, vec![1, 1]);
            assert_eq!(line.per_degree_kernel_dim, vec![1, 0]);
            assert!(!line.frequency.is_zero());
        }
    }

    #[test]
    fn negative_window_is_rejected() {
        let spec = builtin_example("s1-rotation").unwrap();
        assert!(resonances(&spec, &rat(-1, 2)).is_err());
    }

    #[test]
    fn seifert_dimension_samples() {
        let spec = builtin_example("s3-seifert").unwrap();
        // Orbit with stable_dim 3 sits on nu = p + 1/3.
        assert_eq!(dim_resonant_space(&spec, 2, &rat(1, 3)).unwrap(), 1);
        assert_eq!(dim_resonant_space(&spec, 3, &rat(1, 3)).unwrap(), 1);
        assert_eq!(dim_kernel_space(&spec, 2, &rat(1, 3)).unwrap(), 1);
        assert_eq!(dim_kernel_space(&spec, 3, &rat(1, 3)).unwrap(), 0);
        // Orbit with stable_dim 1 sits on nu = (p + 1/5)/2.
        assert_eq!(dim_resonant_space(&spec, 0, &rat(3, 5)).unwrap(), 1);
        assert_eq!(dim_resonant_space(&spec, 1, &rat(3, 5)).unwrap(), 1);
        // Nothing lives off the lines.
        assert_eq!(dim_resonant_space(&spec, 2, &rat(1, 7)).unwrap(), 0);
        assert!(dim_resonant_space(&spec, 4, &rat_int(0)).is_err());
    }

    #[test]
    fn twisted_orbit_shifts_to_half_integer_lines() {
        let spec = builtin_example("twisted-orbit").unwrap();
        // At frequency zero only the fixed points contribute (m = 0).
        assert_eq!(dim_resonant_space(&spec, 0, &rat_int(0)).unwrap(), 1);
        assert_eq!(dim_resonant_space(&spec, 1, &rat_int(0)).unwrap(), 0);
        assert_eq!(dim_resonant_space(&spec, 2, &rat_int(0)).unwrap(), 1);
        // The twist puts the orbit on half-integer frequencies.
        assert_eq!(dim_resonant_space(&spec, 0, &rat(1, 2)).unwrap(), 1);
        assert_eq!(dim_resonant_space(&spec, 1, &rat(1, 2)).unwrap(), 1);
        assert_eq!(dim_resonant_space(&spec, 2, &rat(1, 2)).unwrap(), 0);
    }

    #[test]
    fn alternating_sums_vanish_off_zero_and_give_chi_at_zero() {
        for (name, spec) in builtin_examples() {
            let window = rat_int(3);
            for line in resonances(&spec, &window).unwrap() {
                let expected = if line.frequency.is_zero() {
                    spec.chi()
                } else {
                    0
                };
                assert_eq!(
                    alternating_dimension_sum(&spec, &line.frequency),
                    expected,
                    "{name} at {}",
                    line.frequency
                );
            }
        }
    }

    #[test]
    fn morse_rows_hold_with_top_equality() {
        for name in ["s2-height", "torus-gradient", "twisted-orbit"] {
            let spec = builtin_example(name).unwrap();
            let report = morse_report(&spec).unwrap();
            assert!(report.pass, "{name}: {:?}", report.rows);
        }
    }

    #[test]
    fn morse_with_trivial_holonomy_orbit_gains_slack() {
        // Twisted orbit with phase 1/2 has trivial combined holonomy, so
        // the degree-0 inequality becomes strict.
        let mut spec = builtin_example("twisted-orbit").unwrap();
        spec.closed_orbits[0].holonomy_phases = vec![rat(1, 2)];
        let report = morse_report(&spec).unwrap();
        assert!(report.pass);
        assert_eq!(report.rows[0].lhs, 2);
        assert_eq!(report.rows[0].rhs, 1);
        assert_eq!(report.rows[2].lhs, report.rows[2].rhs);
    }

    #[test]
    fn morse_needs_betti() {
        let mut spec = builtin_example("s2-height").unwrap();
        spec.betti = None;
        assert!(morse_report(&spec).is_err());
    }

    #[test]
    fn koszul_homology_matches_fixed_point_counts() {
        for (name, spec) in builtin_examples() {
            let expected: Vec<usize> = (0..=spec.manifold_dim)
                .map(|k| spec.bundle.rank * spec.fixed_count(k))
                .collect();
            assert_eq!(koszul_homology(&spec).unwrap(), expected, "{name}");
            assert_eq!(
                koszul_homology_seeded(&spec, 7).unwrap(),
                expected,
                "{name} seeded"
            );
        }
    }

    /// A spec whose zero-frequency complex has genuine orbit states and a
    /// same-degree lower element, so the seeded contraction actually mixes.
    fn koszul_workout_spec() -> crate::flow::FlowSpec {
        crate::flow::FlowSpec {
            manifold_dim: 2,
            bundle: crate::flow::FlatBundleData { rank: 1 },
            fixed_points: vec![
                FixedPoint { id: "min".into(), stable_dim: 0 },
                FixedPoint { id: "saddle".into(), stable_dim: 1 },
                FixedPoint { id: "max".into(), stable_dim: 2 },
            ],
            closed_orbits: vec![ClosedOrbit {
                id: "loop".into(),
                period: rat_int(1),
                stable_dim: 2,
                twisted: false,
                holonomy_phases: vec![rat_int(0)],
            }],
            smale_order: Some(vec![("saddle".into(), "loop".into())]),
            betti: None,
        }
    }

    #[test]
    fn koszul_homology_with_orbit_states_and_mixing() {
        let spec = koszul_workout_spec();
        // Basis: degree 0 {min}, degree 1 {saddle, U}, degree 2 {max, Ut}.
        let expected = vec![1, 1, 1];
        assert_eq!(koszul_homology(&spec).unwrap(), expected);
        for seed in 0..20 {
            assert_eq!(koszul_homology_seeded(&spec, seed).unwrap(), expected);
        }
    }

    #[test]
    fn pairs_on_line_finds_exact_coincidences() {
        let spec = builtin_example("s3-seifert").unwrap();
        assert_eq!(pairs_on_line(&spec, &rat(1, 3)).len(), 1);
        assert_eq!(pairs_on_line(&spec, &rat(3, 5)).len(), 1);
        assert_eq!(pairs_on_line(&spec, &rat(1, 2)).len(), 0);
        // 4/3 hits the first orbit (p=1); 4/3 on the second needs
        // 8/3 - 1/5 integral, which fails.
        let pairs = pairs_on_line(&spec, &rat(4, 3));
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].orbit_index, 0);
        assert_eq!(pairs[0].winding, BigInt::from(1));
    }
}
