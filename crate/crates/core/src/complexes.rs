//! Finite based complexes and their torsion.
//!
//! Each resonance line carries a finite cochain complex with a preferred
//! basis. Away from frequency zero the complex is acyclic and comes with a
//! canonical contraction, so it has a torsion: the absolute determinant of
//! the even-to-odd pairing `D + R`. This module builds those model
//! complexes (optionally conjugated by a seeded unit-triangular base change
//! respecting the Smale order), evaluates the determinant and its closed
//! form, computes cohomology of arbitrary based complexes, and computes the
//! torsion of a bare acyclic complex by synthesizing a contraction.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::flow::{FlowSpec, StrictOrder};
use crate::rational::{rat_to_f64, Rat};
use crate::spectrum::{pairs_on_line, OrbitPair};

pub type C64 = num_complex::Complex64;
pub type CMat = nalgebra::DMatrix<C64>;

/// Relative threshold under which a singular value counts as zero.
pub const RANK_REL_TOL: f64 = 1e-10;
/// Tolerance for the structural identities `D^2 = 0`, `R^2 = 0`,
/// `(D + R)^2 = Id` on complexes handed to the torsion routines.
pub const CONTRACTION_TOL: f64 = 1e-8;

/// Numerical rank of a complex matrix and an ambiguity flag: the flag is
/// set when some singular value falls within a factor 10 of the cut
/// threshold, i.e. the rank decision is not clean at this tolerance.
pub fn numerical_rank(m: &CMat, rel_tol: f64) -> (usize, bool) {
    if m.nrows() == 0 || m.ncols() == 0 {
        return (0, false);
    }
    let svd = m.clone().svd(false, false);
    let sigma = &svd.singular_values;
    let max = sigma.iter().cloned().fold(0.0f64, f64::max);
    if max == 0.0 {
        return (0, false);
    }
    let threshold = rel_tol * max;
    let rank = sigma.iter().filter(|&&s| s > threshold).count();
    let ambiguous = sigma
        .iter()
        .any(|&s| s > threshold / 10.0 && s < threshold * 10.0);
    (rank, ambiguous)
}

/// Name of one basis element of a based complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisLabel {
    /// Fixed-point state on the zero line.
    Fixed { element: String, line_index: usize },
    /// Orbit state of degree `stable_dim - 1`.
    Lower {
        element: String,
        line_index: usize,
        winding: BigInt,
    },
    /// Orbit state of degree `stable_dim`.
    Upper {
        element: String,
        line_index: usize,
        winding: BigInt,
    },
    /// Free-form label for hand-built complexes.
    Formal(String),
}

impl BasisLabel {
    /// Id of the flow element behind this state, when there is one.
    pub fn element_id(&self) -> Option<&str> {
        match self {
            BasisLabel::Fixed { element, .. }
            | BasisLabel::Lower { element, .. }
            | BasisLabel::Upper { element, .. } => Some(element),
            BasisLabel::Formal(_) => None,
        }
    }

    pub fn text(&self) -> String {
        match self {
            BasisLabel::Fixed { element, line_index } => format!("{element}.j{line_index}"),
            BasisLabel::Lower {
                element,
                line_index,
                winding,
            } => format!("{element}.j{line_index}.p{winding}.U"),
            BasisLabel::Upper {
                element,
                line_index,
                winding,
            } => format!("{element}.j{line_index}.p{winding}.Ut"),
            BasisLabel::Formal(s) => s.clone(),
        }
    }
}

/// A finite cochain complex with a preferred basis in every degree, an
/// explicit differential, and optionally a contraction.
#[derive(Debug, Clone)]
pub struct BasedComplex {
    /// Basis labels per degree `0..=top`.
    pub labels: Vec<Vec<BasisLabel>>,
    /// `differentials[k]` is the matrix of `D_k : C^k -> C^{k+1}`
    /// (rows indexed by degree `k+1`, columns by degree `k`).
    pub differentials: Vec<CMat>,
    /// `contraction[k-1]` is the matrix of `R_k : C^k -> C^{k-1}`.
    pub contraction: Option<Vec<CMat>>,
    /// Set when the complex was requested at a frequency carrying no
    /// states; such a complex is empty and its torsion is 1.
    pub off_line: bool,
}

impl BasedComplex {
    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn top_degree(&self) -> usize {
        self.labels.len().saturating_sub(1)
    }

    pub fn total_dim(&self) -> usize {
        self.labels.iter().map(Vec::len).sum()
    }

    fn d(&self, k: usize) -> Option<&CMat> {
        self.differentials.get(k)
    }

    fn r(&self, k: usize) -> Option<&CMat> {
        let rs = self.contraction.as_ref()?;
        if k == 0 {
            None
        } else {
            rs.get(k - 1)
        }
    }

    /// Largest entry of any composition `D_{k+1} D_k`; zero for a genuine
    /// complex.
    pub fn differential_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for k in 0..self.top_degree() {
            if let (Some(d1), Some(d0)) = (self.d(k + 1), self.d(k)) {
                worst = worst.max(max_abs(&(d1 * d0)));
            }
        }
        worst
    }

    /// Largest deviation from the contraction identities
    /// `R_k R_{k+1} = 0` and `D_{k-1} R_k + R_{k+1} D_k = Id`.
    /// `None` when the complex carries no contraction.
    pub fn contraction_defect(&self) -> Option<f64> {
        self.contraction.as_ref()?;
        let mut worst = 0.0f64;
        let top = self.top_degree();
        for k in 0..=top {
            let nk = self.labels[k].len();
            let mut s = CMat::zeros(nk, nk);
            if k >= 1 {
                if let (Some(d), Some(r)) = (self.d(k - 1), self.r(k)) {
                    s += d * r;
                }
            }
            if let (Some(r), Some(d)) = (self.r(k + 1), self.d(k)) {
                s += r * d;
            }
            s -= CMat::identity(nk, nk);
            worst = worst.max(max_abs(&s));
            if let (Some(r0), Some(r1)) = (self.r(k), self.r(k + 1)) {
                worst = worst.max(max_abs(&(r0 * r1)));
            }
        }
        Some(worst.max(self.differential_defect()))
    }
}

fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Absolute-value torsion, returned in both linear and log scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorsionValue {
    pub value: f64,
    pub log_value: f64,
}

impl TorsionValue {
    fn from_log(log_value: f64) -> Self {
        TorsionValue {
            value: log_value.exp(),
            log_value,
        }
    }
}

// ---------------------------------------------------------------------------
// Model complexes

fn sort_key(spec: &FlowSpec, label: &BasisLabel) -> (usize, String, u8, usize, BigInt) {
    let (element, line_index, kind, winding) = match label {
        BasisLabel::Lower {
            element,
            line_index,
            winding,
        } => (element.clone(), *line_index, 0u8, winding.clone()),
        BasisLabel::Upper {
            element,
            line_index,
            winding,
        } => (element.clone(), *line_index, 1u8, winding.clone()),
        BasisLabel::Fixed { element, line_index } => {
            (element.clone(), *line_index, 2u8, BigInt::zero())
        }
        BasisLabel::Formal(s) => (s.clone(), 0, 3u8, BigInt::zero()),
    };
    let dim = spec.unstable_dim_of(&element).unwrap_or(0);
    (dim, element, kind, line_index, winding)
}

/// Unit-triangular base change per degree: off-diagonal entries only where
/// the row label's element lies strictly below the column label's element
/// in the Smale order. Entries are seeded pseudo-random complex numbers.
fn triangular_base_changes(
    labels: &[Vec<BasisLabel>],
    order: &StrictOrder,
    seed: u64,
) -> Vec<CMat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    labels
        .iter()
        .map(|degree_labels| {
            let n = degree_labels.len();
            let mut t = CMat::identity(n, n);
            for c in 0..n {
                for r in 0..n {
                    if r == c {
                        continue;
                    }
                    let below = match (
                        degree_labels[r].element_id(),
                        degree_labels[c].element_id(),
                    ) {
                        (Some(a), Some(b)) => order.strictly_less(a, b),
                        _ => false,
                    };
                    if below {
                        t[(r, c)] = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    }
                }
            }
            t
        })
        .collect()
}

/// Build the based complex of the resonance line at frequency `nu`.
///
/// For each contributing `(orbit, line, winding)` the complex gains a
/// lower state in degree `stable_dim - 1` and an upper state in degree
/// `stable_dim`; writing `z0 = -2 i pi nu`, the differential sends the
/// lower state to `-z0` times the upper one and the contraction sends the
/// upper state to `-1/z0` times the lower one, so `(D + R)^2 = Id` and
/// `R^2 = 0` hold exactly. The result is then conjugated by a seeded
/// unit-triangular base change in every degree (entries flow only from
/// strictly Smale-smaller elements), which re-expresses `D` and `R` in a
/// perturbed preferred basis without changing the torsion.
///
/// Frequency zero is rejected (that complex is not acyclic). A frequency
/// on no line yields an empty complex flagged `off_line`.
pub fn model_complex(spec: &FlowSpec, nu: &Rat, seed: u64) -> Result<BasedComplex> {
    if nu.is_zero() {
        return Err(Error::domain(
            "the zero-frequency complex is not acyclic and has no torsion",
        ));
    }
    let n = spec.manifold_dim;
    let pairs = pairs_on_line(spec, nu);
    if pairs.is_empty() {
        return Ok(BasedComplex {
            labels: vec![Vec::new(); n + 1],
            differentials: (0..n).map(|_| CMat::zeros(0, 0)).collect(),
            contraction: Some((0..n).map(|_| CMat::zeros(0, 0)).collect()),
            off_line: true,
        });
    }

    let mut labels: Vec<Vec<BasisLabel>> = vec![Vec::new(); n + 1];
    for OrbitPair {
        orbit_index,
        line_index,
        winding,
    } in &pairs
    {
        let orbit = &spec.closed_orbits[*orbit_index];
        labels[orbit.stable_dim - 1].push(BasisLabel::Lower {
            element: orbit.id.clone(),
            line_index: *line_index,
            winding: winding.clone(),
        });
        labels[orbit.stable_dim].push(BasisLabel::Upper {
            element: orbit.id.clone(),
            line_index: *line_index,
            winding: winding.clone(),
        });
    }
    for degree_labels in &mut labels {
        degree_labels.sort_by_key(|l| sort_key(spec, l));
    }

    let dims: Vec<usize> = labels.iter().map(Vec::len).collect();
    let mut differentials: Vec<CMat> = (0..n)
        .map(|k| CMat::zeros(dims[k + 1], dims[k]))
        .collect();
    let mut contraction: Vec<CMat> = (0..n)
        .map(|k| CMat::zeros(dims[k], dims[k + 1]))
        .collect();

    let nu_f = rat_to_f64(nu);
    let minus_z0 = C64::new(0.0, 2.0 * std::f64::consts::PI * nu_f);
    let minus_inv_z0 = C64::new(1.0, 0.0) / minus_z0;

    let position = |k: usize, label: &BasisLabel| -> usize {
        labels[k]
            .iter()
            .position(|l| l == label)
            .expect("label present in its degree")
    };
    for OrbitPair {
        orbit_index,
        line_index,
        winding,
    } in &pairs
    {
        let orbit = &spec.closed_orbits[*orbit_index];
        let lower = BasisLabel::Lower {
            element: orbit.id.clone(),
            line_index: *line_index,
            winding: winding.clone(),
        };
        let upper = BasisLabel::Upper {
            element: orbit.id.clone(),
            line_index: *line_index,
            winding: winding.clone(),
        };
        let k = orbit.stable_dim - 1;
        let row = position(k + 1, &upper);
        let col = position(k, &lower);
        differentials[k][(row, col)] = minus_z0;
        contraction[k][(col, row)] = minus_inv_z0;
    }

    let order = StrictOrder::of(spec)?;
    let t = triangular_base_changes(&labels, &order, seed);
    let t_inv: Vec<CMat> = t
        .iter()
        .map(|m| {
            m.clone()
                .try_inverse()
                .ok_or_else(|| Error::numerical("unit-triangular base change not invertible"))
        })
        .collect::<Result<_>>()?;
    for k in 0..n {
        differentials[k] = &t_inv[k + 1] * &differentials[k] * &t[k];
        contraction[k] = &t_inv[k] * &contraction[k] * &t[k + 1];
    }

    Ok(BasedComplex {
        labels,
        differentials,
        contraction: Some(contraction),
        off_line: false,
    })
}

// ---------------------------------------------------------------------------
// Torsion determinant

/// Absolute determinant of the even-to-odd pairing `D + R` of an acyclic
/// complex with contraction, accumulated in log scale through an LU
/// factorization.
pub fn torsion_determinant(cx: &BasedComplex) -> Result<TorsionValue> {
    if cx.contraction.is_none() {
        return Err(Error::domain(
            "torsion determinant needs a complex with a contraction",
        ));
    }
    let defect = cx.contraction_defect().expect("contraction present");
    if defect > CONTRACTION_TOL {
        return Err(Error::domain(format!(
            "contraction identities violated: defect {defect:.3e} exceeds {CONTRACTION_TOL:.0e}"
        )));
    }

    let dims = cx.dims();
    let top = cx.top_degree();
    let even_total: usize = (0..=top).step_by(2).map(|k| dims[k]).sum();
    let odd_total: usize = (1..=top).step_by(2).map(|k| dims[k]).sum();
    if even_total != odd_total {
        return Err(Error::domain(format!(
            "complex is not acyclic: even dimension {even_total} differs from odd dimension {odd_total}"
        )));
    }
    if even_total == 0 {
        return Ok(TorsionValue::from_log(0.0));
    }

    // Row offset of each odd degree inside the stacked odd space.
    let mut row_offset = vec![0usize; top + 2];
    let mut acc = 0usize;
    for k in (1..=top).step_by(2) {
        row_offset[k] = acc;
        acc += dims[k];
    }

    let mut pairing = CMat::zeros(odd_total, even_total);
    let mut col0 = 0usize;
    for k in (0..=top).step_by(2) {
        if let Some(d) = cx.d(k) {
            let r0 = row_offset[k + 1];
            pairing.view_mut((r0, col0), (d.nrows(), d.ncols())).copy_from(d);
        }
        if k >= 1 {
            if let Some(r) = cx.r(k) {
                let r0 = row_offset[k - 1];
                pairing.view_mut((r0, col0), (r.nrows(), r.ncols())).copy_from(r);
            }
        }
        col0 += dims[k];
    }

    let lu = pairing.lu();
    let u = lu.u();
    let diag: Vec<f64> = (0..even_total).map(|i| u[(i, i)].norm()).collect();
    let scale = diag.iter().cloned().fold(0.0f64, f64::max);
    if diag.iter().any(|&d| d <= 1e-12 * scale.max(1.0)) {
        return Err(Error::domain(
            "complex is not acyclic: the even-to-odd pairing is singular",
        ));
    }
    let log_value = diag.iter().map(|d| d.ln()).sum();
    Ok(TorsionValue::from_log(log_value))
}

/// Closed form of the model-complex torsion at frequency `nu`: a product
/// over contributing `(orbit, line, winding)` states in which every factor
/// equals `2 pi |nu|`, raised to a sign depending on the orbit's unstable
/// dimension. The empty product (a frequency on no line) is 1.
pub fn torsion_closed_form(spec: &FlowSpec, nu: &Rat) -> Result<TorsionValue> {
    if nu.is_zero() {
        return Err(Error::domain(
            "the zero-frequency complex is not acyclic and has no torsion",
        ));
    }
    let factor = (2.0 * std::f64::consts::PI * rat_to_f64(&nu.abs())).ln();
    let mut log_value = 0.0f64;
    for pair in pairs_on_line(spec, nu) {
        let orbit = &spec.closed_orbits[pair.orbit_index];
        let exponent = spec.manifold_dim + orbit.unstable_dim(spec.manifold_dim);
        log_value += if exponent % 2 == 0 { factor } else { -factor };
    }
    Ok(TorsionValue::from_log(log_value))
}

// ---------------------------------------------------------------------------
// Cohomology

/// Cohomology dimensions of a based complex, with the degrees whose rank
/// decisions were numerically ambiguous at the stated tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct CohomologyReport {
    pub dims: Vec<usize>,
    pub ambiguous_degrees: Vec<usize>,
    pub relative_tolerance: f64,
}

impl CohomologyReport {
    pub fn is_acyclic(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }
}

/// Compute `dim ker D_k - rank D_{k-1}` per degree through singular value
/// decompositions of the differentials.
pub fn complex_cohomology(cx: &BasedComplex) -> CohomologyReport {
    let top = cx.top_degree();
    let dims = cx.dims();
    let mut ranks = vec![0usize; top + 1]; // rank of D_k, D_top = 0
    let mut fuzzy = vec![false; top + 1];
    for k in 0..top {
        if let Some(d) = cx.d(k) {
            let (rank, ambiguous) = numerical_rank(d, RANK_REL_TOL);
            ranks[k] = rank;
            fuzzy[k] = ambiguous;
        }
    }
    let mut out = Vec::with_capacity(top + 1);
    let mut ambiguous_degrees = Vec::new();
    for k in 0..=top {
        let below = if k > 0 { ranks[k - 1] } else { 0 };
        let h = dims[k] as i64 - ranks[k] as i64 - below as i64;
        out.push(h.max(0) as usize);
        if fuzzy[k] || (k > 0 && fuzzy[k - 1]) || h < 0 {
            ambiguous_degrees.push(k);
        }
    }
    CohomologyReport {
        dims: out,
        ambiguous_degrees,
        relative_tolerance: RANK_REL_TOL,
    }
}

// ---------------------------------------------------------------------------
// CW torsion

/// Torsion of a bare acyclic based complex: a contraction is synthesized
/// degree by degree as the least-squares right inverse (pseudoinverse) of
/// the differential, after which the even-to-odd determinant applies. On
/// an acyclic complex that choice automatically satisfies `R^2 = 0` and
/// `(D + R)^2 = Id`; both are verified before the determinant is taken.
pub fn cw_torsion(cx: &BasedComplex) -> Result<TorsionValue> {
    let dd = cx.differential_defect();
    if dd > CONTRACTION_TOL {
        return Err(Error::domain(format!(
            "not a complex: D^2 defect {dd:.3e}"
        )));
    }
    let cohomology = complex_cohomology(cx);
    if !cohomology.is_acyclic() {
        return Err(Error::domain(format!(
            "complex is not acyclic: cohomology dimensions {:?}",
            cohomology.dims
        )));
    }

    let top = cx.top_degree();
    let mut contraction = Vec::with_capacity(top);
    for k in 0..top {
        let d = cx.d(k).expect("differential present below top degree");
        contraction.push(pseudo_inverse(d)?);
    }
    let with_contraction = BasedComplex {
        labels: cx.labels.clone(),
        differentials: cx.differentials.clone(),
        contraction: Some(contraction),
        off_line: cx.off_line,
    };
    // The defect check inside the determinant enforces the synthesized
    // contraction's identities.
    torsion_determinant(&with_contraction)
}

fn pseudo_inverse(m: &CMat) -> Result<CMat> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(CMat::zeros(m.ncols(), m.nrows()));
    }
    let svd = m.clone().svd(true, true);
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    svd.pseudo_inverse(1e-12 * (1.0 + sigma_max))
        .map_err(Error::numerical)
}

/// The cellular complex of the circle with holonomy `u`: one cell in
/// degree 0, one in degree 1, differential `u - 1`.
pub fn circle_complex(u: C64) -> BasedComplex {
    BasedComplex {
        labels: vec![
            vec![BasisLabel::Formal("vertex".into())],
            vec![BasisLabel::Formal("edge".into())],
        ],
        differentials: vec![CMat::from_element(1, 1, u - C64::new(1.0, 0.0))],
        contraction: None,
        off_line: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{builtin_example, ClosedOrbit, FlatBundleData, FlowSpec};
    use crate::rational::{rat, rat_int};
    use std::f64::consts::PI;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn model_complex_entries_on_the_rotation_example() {
        let spec = builtin_example("s1-rotation").unwrap();
        let cx = model_complex(&spec, &rat(1, 12), 0).unwrap();
        assert_eq!(cx.dims(), vec![1, 1]);
        // -z0 = 2 i pi / 12 = i pi / 6.
        let d = cx.differentials[0][(0, 0)];
        assert!(close(d.re, 0.0, 1e-15) && close(d.im, PI / 6.0, 1e-15), "{d}");
        // -1/z0 = -6 i / pi.
        let r = cx.contraction.as_ref().unwrap()[0][(0, 0)];
        assert!(close(r.re, 0.0, 1e-15) && close(r.im, -6.0 / PI, 1e-15), "{r}");
        assert!(cx.contraction_defect().unwrap() < 1e-14);
    }

    #[test]
    fn torsion_matches_closed_form_on_builtins() {
        let cases = [
            ("s1-rotation", rat(1, 12), PI / 6.0),
            ("s1-rotation", rat(-1, 4), PI / 2.0),
            ("s3-seifert", rat(4, 3), 8.0 * PI / 3.0),
        ];
        for (name, nu, expected) in cases {
            let spec = builtin_example(name).unwrap();
            let det = torsion_determinant(&model_complex(&spec, &nu, 1).unwrap()).unwrap();
            let closed = torsion_closed_form(&spec, &nu).unwrap();
            assert!(close(det.value, expected, 1e-12), "{name} det {}", det.value);
            assert!(close(closed.value, expected, 1e-12), "{name} closed {}", closed.value);
        }
    }

    #[test]
    fn zero_frequency_is_rejected() {
        let spec = builtin_example("s1-rotation").unwrap();
        assert!(model_complex(&spec, &rat_int(0), 0).is_err());
        assert!(torsion_closed_form(&spec, &rat_int(0)).is_err());
    }

    #[test]
    fn off_line_frequency_gives_flagged_empty_complex() {
        let spec = builtin_example("s1-rotation").unwrap();
        // nu = 1/2 needs 3/2 - 1/4 integral; it is not.
        let cx = model_complex(&spec, &rat(1, 2), 0).unwrap();
        assert!(cx.off_line);
        assert_eq!(cx.total_dim(), 0);
        let t = torsion_determinant(&cx).unwrap();
        assert_eq!(t.value, 1.0);
        assert_eq!(torsion_closed_form(&spec, &rat(1, 2)).unwrap().value, 1.0);
    }

    /// Two orbits sharing every resonance line, with overlapping degrees,
    /// so the triangular base change genuinely mixes states.
    fn entangled_spec() -> FlowSpec {
        FlowSpec {
            manifold_dim: 2,
            bundle: FlatBundleData { rank: 1 },
            fixed_points: vec![],
            closed_orbits: vec![
                ClosedOrbit {
                    id: "inner".into(),
                    period: rat_int(1),
                    stable_dim: 2,
                    twisted: false,
                    holonomy_phases: vec![rat(1, 3)],
                },
                ClosedOrbit {
                    id: "outer".into(),
                    period: rat_int(1),
                    stable_dim: 1,
                    twisted: false,
                    holonomy_phases: vec![rat(1, 3)],
                },
            ],
            smale_order: None,
            betti: Some(vec![0, 0, 0]),
        }
    }

    #[test]
    fn entangled_orbits_mix_and_keep_their_torsion() {
        let spec = entangled_spec();
        let nu = rat(4, 3);
        let closed = torsion_closed_form(&spec, &nu).unwrap();
        // Signs cancel between the two orbits, so the product is 1.
        assert!(close(closed.value, 1.0, 1e-12));
        let mut saw_mixing = false;
        for seed in 0..25 {
            let cx = model_complex(&spec, &nu, seed).unwrap();
            assert_eq!(cx.dims(), vec![1, 2, 1]);
            // Degree 1 holds the inner lower state and the outer upper
            // state; the base change may couple them.
            let d0 = &cx.differentials[0];
            if d0.iter().any(|z| z.norm() > 1e-12 && (z.im - 2.0 * PI * 4.0 / 3.0).abs() > 1e-9) {
                saw_mixing = true;
            }
            assert!(cx.contraction_defect().unwrap() < 1e-10, "seed {seed}");
            let det = torsion_determinant(&cx).unwrap();
            assert!(
                close(det.value, closed.value, 1e-9),
                "seed {seed}: {} vs {}",
                det.value,
                closed.value
            );
        }
        assert!(saw_mixing, "base change never mixed the entangled states");
    }

    #[test]
    fn model_complex_is_acyclic_off_zero() {
        let spec = builtin_example("s1-rotation").unwrap();
        let cx = model_complex(&spec, &rat(1, 12), 3).unwrap();
        let coh = complex_cohomology(&cx);
        assert_eq!(coh.dims, vec![0, 0]);
        assert!(coh.ambiguous_degrees.is_empty());
    }

    #[test]
    fn cohomology_of_a_non_acyclic_complex() {
        // D = 0 on dims (1, 1): cohomology (1, 1).
        let cx = BasedComplex {
            labels: vec![
                vec![BasisLabel::Formal("a".into())],
                vec![BasisLabel::Formal("b".into())],
            ],
            differentials: vec![CMat::zeros(1, 1)],
            contraction: None,
            off_line: false,
        };
        let coh = complex_cohomology(&cx);
        assert_eq!(coh.dims, vec![1, 1]);
        assert!(cw_torsion(&cx).is_err());
    }

    #[test]
    fn circle_torsion_values() {
        let sqrt2 = cw_torsion(&circle_complex(C64::new(0.0, 1.0))).unwrap();
        assert!(close(sqrt2.value, 2.0f64.sqrt(), 1e-12), "{}", sqrt2.value);
        let two = cw_torsion(&circle_complex(C64::new(-1.0, 0.0))).unwrap();
        assert!(close(two.value, 2.0, 1e-12));
        assert!(cw_torsion(&circle_complex(C64::new(1.0, 0.0))).is_err());
    }

    #[test]
    fn determinant_requires_balanced_dimensions() {
        // One basis vector in even degree, none in odd: not acyclic.
        let cx = BasedComplex {
            labels: vec![vec![BasisLabel::Formal("a".into())], vec![]],
            differentials: vec![CMat::zeros(0, 1)],
            contraction: Some(vec![CMat::zeros(1, 0)]),
            off_line: false,
        };
        assert!(torsion_determinant(&cx).is_err());
    }

    #[test]
    fn rank_flags_threshold_straddlers() {
        let mut m = CMat::zeros(2, 2);
        m[(0, 0)] = C64::new(1.0, 0.0);
        m[(1, 1)] = C64::new(RANK_REL_TOL * 3.0, 0.0);
        let (_, ambiguous) = numerical_rank(&m, RANK_REL_TOL);
        assert!(ambiguous);
        let mut clean = CMat::zeros(2, 2);
        clean[(0, 0)] = C64::new(1.0, 0.0);
        clean[(1, 1)] = C64::new(0.5, 0.0);
        let (rank, ambiguous) = numerical_rank(&clean, RANK_REL_TOL);
        assert_eq!(rank, 2);
        assert!(!ambiguous);
    }
}
