//! Combinatorial flow data: elements, bundle rank, JSON (de)serialization,
//! validation, and the bundled example specs.
//!
//! A `FlowSpec` records the nonwandering data of a Morse-Smale flow without
//! fixed-orbit heteroclinics: fixed points with their stable dimensions, and
//! closed orbits with exact rational periods, an orientation twist, and one
//! unitary holonomy phase per bundle line. Validation checks data
//! consistency only; geometric realizability of the flow is out of scope.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::rational::{format_rational, frac_mod_one, parse_rational, rat, rat_int, Rat};

/// A hyperbolic fixed point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPoint {
    pub id: String,
    /// Dimension of the stable manifold, in `0..=n`.
    pub stable_dim: usize,
}

impl FixedPoint {
    /// Dimension of the unstable manifold on an `n`-manifold.
    pub fn unstable_dim(&self, manifold_dim: usize) -> usize {
        manifold_dim - self.stable_dim
    }
}

/// A hyperbolic closed orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedOrbit {
    pub id: String,
    /// Primitive period, a positive exact rational.
    pub period: Rat,
    /// Dimension of the stable manifold, in `1..=n` (it contains the flow
    /// direction).
    pub stable_dim: usize,
    /// Whether the orbit's unstable bundle is non-orientable along the
    /// orbit; contributes a half-integer shift to every phase.
    pub twisted: bool,
    /// One holonomy phase per bundle line, each in `[0, 1)`.
    pub holonomy_phases: Vec<Rat>,
}

impl ClosedOrbit {
    /// Dimension of the unstable manifold on an `n`-manifold; the orbit
    /// direction belongs to both manifolds, so stable + unstable = n + 1.
    pub fn unstable_dim(&self, manifold_dim: usize) -> usize {
        manifold_dim + 1 - self.stable_dim
    }

    /// Twist offset: `0` untwisted, `1/2` twisted.
    pub fn twist_offset(&self) -> Rat {
        if self.twisted {
            rat(1, 2)
        } else {
            Rat::zero()
        }
    }

    /// Combined phase `q_j = (twist + phase_j) mod 1`, mapped into `(0, 1]`
    /// so that a trivial combined holonomy reads as `q_j = 1`.
    pub fn combined_phase(&self, j: usize) -> Rat {
        let f = frac_mod_one(&(self.twist_offset() + &self.holonomy_phases[j]));
        if f.is_zero() {
            Rat::one()
        } else {
            f
        }
    }

    /// All combined phases `q_1..q_N`, each in `(0, 1]`.
    pub fn combined_phases(&self) -> Vec<Rat> {
        (0..self.holonomy_phases.len())
            .map(|j| self.combined_phase(j))
            .collect()
    }
}

/// Count of bundle lines along which the orbit's combined holonomy is
/// trivial (`q_j = 1`); these lines put the orbit on the zero-frequency
/// resonance line.
pub fn orbit_multiplicity_m(orbit: &ClosedOrbit, bundle: &FlatBundleData) -> usize {
    debug_assert_eq!(orbit.holonomy_phases.len(), bundle.rank);
    orbit
        .combined_phases()
        .iter()
        .filter(|q| q.is_one())
        .count()
}

/// Flat unitary bundle data. Only the rank is needed: the per-orbit
/// monodromy eigenvalues live on the orbits as phases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatBundleData {
    pub rank: usize,
}

/// The full combinatorial input.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowSpec {
    pub manifold_dim: usize,
    pub bundle: FlatBundleData,
    pub fixed_points: Vec<FixedPoint>,
    pub closed_orbits: Vec<ClosedOrbit>,
    /// Directed edges `(a, b)` meaning `a` is below `b` in the Smale
    /// closure order. Optional; dimension counts never need it.
    pub smale_order: Option<Vec<(String, String)>>,
    /// Twisted Betti numbers `b_0..b_n`, when known.
    pub betti: Option<Vec<usize>>,
}

impl FlowSpec {
    /// Euler characteristic `N * sum over fixed points of (-1)^stable_dim`.
    pub fn chi(&self) -> i64 {
        let n_lines = self.bundle.rank as i64;
        let signed: i64 = self
            .fixed_points
            .iter()
            .map(|f| if f.stable_dim % 2 == 0 { 1 } else { -1 })
            .sum();
        n_lines * signed
    }

    /// Ids of all elements, fixed points first, in stored order.
    pub fn element_ids(&self) -> Vec<&str> {
        self.fixed_points
            .iter()
            .map(|f| f.id.as_str())
            .chain(self.closed_orbits.iter().map(|o| o.id.as_str()))
            .collect()
    }

    /// Unstable dimension of the element with the given id, if any.
    pub fn unstable_dim_of(&self, id: &str) -> Option<usize> {
        if let Some(f) = self.fixed_points.iter().find(|f| f.id == id) {
            return Some(f.unstable_dim(self.manifold_dim));
        }
        self.closed_orbits
            .iter()
            .find(|o| o.id == id)
            .map(|o| o.unstable_dim(self.manifold_dim))
    }

    /// Number of fixed points with stable dimension `k`.
    pub fn fixed_count(&self, k: usize) -> usize {
        self.fixed_points
            .iter()
            .filter(|f| f.stable_dim == k)
            .count()
    }
}

/// Euler characteristic report: the element count value, and the
/// alternating Betti sum when Betti numbers are supplied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerCharacteristic {
    pub chi: i64,
    pub betti_alternating: Option<i64>,
    pub mismatch: bool,
}

pub fn euler_characteristic(spec: &FlowSpec) -> EulerCharacteristic {
    let chi = spec.chi();
    let betti_alternating = spec.betti.as_ref().map(|b| {
        b.iter()
            .enumerate()
            .map(|(k, &bk)| if k % 2 == 0 { bk as i64 } else { -(bk as i64) })
            .sum()
    });
    let mismatch = betti_alternating.map(|s| s != chi).unwrap_or(false);
    EulerCharacteristic {
        chi,
        betti_alternating,
        mismatch,
    }
}

// ---------------------------------------------------------------------------
// Validation

/// Outcome of one named validation rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleCheck {
    pub rule: &'static str,
    pub ok: bool,
    pub detail: String,
}

/// Pass/fail status of every validation rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<RuleCheck>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RuleCheck> {
        self.checks.iter().filter(|c| !c.ok)
    }

    pub fn first_failure(&self) -> Option<&RuleCheck> {
        self.failures().next()
    }
}

fn rule(checks: &mut Vec<RuleCheck>, rule: &'static str, problems: Vec<String>) {
    checks.push(RuleCheck {
        rule,
        ok: problems.is_empty(),
        detail: problems.join("; "),
    });
}

/// Run every validation rule and report each one's outcome.
pub fn validate_spec(spec: &FlowSpec) -> ValidationReport {
    let n = spec.manifold_dim;
    let mut checks = Vec::new();

    rule(
        &mut checks,
        "bundle-rank-positive",
        if spec.bundle.rank >= 1 {
            vec![]
        } else {
            vec!["bundle rank must be at least 1".into()]
        },
    );

    rule(
        &mut checks,
        "manifold-dim-positive",
        if n >= 1 {
            vec![]
        } else {
            vec!["manifold_dim must be at least 1".into()]
        },
    );

    let mut seen = BTreeSet::new();
    let mut dup = Vec::new();
    for id in spec.element_ids() {
        if !seen.insert(id) {
            dup.push(format!("duplicate element id {id:?}"));
        }
    }
    rule(&mut checks, "ids-unique", dup);

    rule(
        &mut checks,
        "nonwandering-nonempty",
        if spec.fixed_points.is_empty() && spec.closed_orbits.is_empty() {
            vec!["at least one fixed point or closed orbit required".into()]
        } else {
            vec![]
        },
    );

    rule(
        &mut checks,
        "fixed-stable-dim-range",
        spec.fixed_points
            .iter()
            .filter(|f| f.stable_dim > n)
            .map(|f| {
                format!(
                    "fixed point {:?} has stable_dim {} > manifold_dim {}",
                    f.id, f.stable_dim, n
                )
            })
            .collect(),
    );

    rule(
        &mut checks,
        "orbit-stable-dim-range",
        spec.closed_orbits
            .iter()
            .filter(|o| o.stable_dim < 1 || o.stable_dim > n)
            .map(|o| {
                format!(
                    "orbit {:?} has stable_dim {}; orbit stable_dim \u{2265} 1 and \u{2264} manifold_dim required",
                    o.id, o.stable_dim
                )
            })
            .collect(),
    );

    rule(
        &mut checks,
        "orbit-period-positive",
        spec.closed_orbits
            .iter()
            .filter(|o| !o.period.is_positive())
            .map(|o| format!("orbit {:?} has nonpositive period {}", o.id, format_rational(&o.period)))
            .collect(),
    );

    rule(
        &mut checks,
        "phase-count-matches-rank",
        spec.closed_orbits
            .iter()
            .filter(|o| o.holonomy_phases.len() != spec.bundle.rank)
            .map(|o| {
                format!(
                    "orbit {:?} carries {} holonomy phases, bundle rank is {}",
                    o.id,
                    o.holonomy_phases.len(),
                    spec.bundle.rank
                )
            })
            .collect(),
    );

    let mut phase_problems = Vec::new();
    for o in &spec.closed_orbits {
        for g in &o.holonomy_phases {
            if g.is_negative() || *g >= Rat::one() {
                phase_problems.push(format!(
                    "orbit {:?} phase {} out of [0,1)",
                    o.id,
                    format_rational(g)
                ));
            }
        }
    }
    rule(&mut checks, "phase-range", phase_problems);

    // Smale order rules.
    let ids: BTreeSet<&str> = spec.element_ids().into_iter().collect();
    let edges = spec.smale_order.as_deref().unwrap_or(&[]);

    rule(
        &mut checks,
        "smale-order-known-ids",
        edges
            .iter()
            .flat_map(|(a, b)| [a, b])
            .filter(|id| !ids.contains(id.as_str()))
            .map(|id| format!("smale_order references unknown element id {id:?}"))
            .collect(),
    );

    let closure = StrictOrder::from_edges(spec, edges);
    rule(
        &mut checks,
        "smale-order-acyclic",
        match &closure {
            Ok(_) => vec![],
            Err(cycle_ids) => vec![format!(
                "order not acyclic: cycle through {}",
                cycle_ids.join(", ")
            )],
        },
    );

    rule(
        &mut checks,
        "smale-order-dimension-monotone",
        edges
            .iter()
            .filter_map(|(a, b)| {
                let da = spec.unstable_dim_of(a)?;
                let db = spec.unstable_dim_of(b)?;
                (da > db).then(|| {
                    format!(
                        "edge {a:?} \u{2264} {b:?} violates unstable-dimension monotonicity ({da} > {db})"
                    )
                })
            })
            .collect(),
    );

    rule(
        &mut checks,
        "betti-length",
        match &spec.betti {
            Some(b) if b.len() != n + 1 => vec![format!(
                "betti list has length {}, expected {} for manifold_dim {}",
                b.len(),
                n + 1,
                n
            )],
            _ => vec![],
        },
    );

    ValidationReport { checks }
}

// ---------------------------------------------------------------------------
// Strict Smale order

/// Strict partial order on elements used to shape triangular base changes.
///
/// With an explicit `smale_order` this is the transitive closure of its
/// edges; without one it defaults to the unstable-dimension grading
/// (`a < b` iff `unstable_dim(a) < unstable_dim(b)`).
#[derive(Debug, Clone)]
pub struct StrictOrder {
    index: BTreeMap<String, usize>,
    less: Vec<Vec<bool>>,
}

impl StrictOrder {
    /// Build the order for a spec. Errors if the explicit order has a cycle
    /// or references unknown ids.
    pub fn of(spec: &FlowSpec) -> Result<Self> {
        match &spec.smale_order {
            Some(edges) => {
                let ids: BTreeSet<&str> = spec.element_ids().into_iter().collect();
                for (a, b) in edges {
                    for id in [a, b] {
                        if !ids.contains(id.as_str()) {
                            return Err(Error::domain(format!(
                                "smale_order references unknown element id {id:?}"
                            )));
                        }
                    }
                }
                Self::from_edges(spec, edges).map_err(|cycle| {
                    Error::domain(format!("order not acyclic: cycle through {}", cycle.join(", ")))
                })
            }
            None => {
                let ids: Vec<String> =
                    spec.element_ids().into_iter().map(String::from).collect();
                let dims: Vec<usize> = ids
                    .iter()
                    .map(|id| spec.unstable_dim_of(id).unwrap_or(0))
                    .collect();
                let m = ids.len();
                let mut less = vec![vec![false; m]; m];
                for (i, row) in less.iter_mut().enumerate() {
                    for (j, cell) in row.iter_mut().enumerate() {
                        *cell = dims[i] < dims[j];
                    }
                }
                let index = ids
                    .iter()
                    .enumerate()
                    .map(|(i, id)| (id.clone(), i))
                    .collect();
                Ok(StrictOrder { index, less })
            }
        }
    }

    /// Transitive closure of explicit edges. `Err` carries the ids on a
    /// detected cycle. Unknown ids in edges are ignored here (a separate
    /// rule reports them).
    fn from_edges(
        spec: &FlowSpec,
        edges: &[(String, String)],
    ) -> std::result::Result<Self, Vec<String>> {
        let ids: Vec<String> = spec.element_ids().into_iter().map(String::from).collect();
        let index: BTreeMap<String, usize> = ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i))
            .collect();
        let m = ids.len();
        let mut less = vec![vec![false; m]; m];
        for (a, b) in edges {
            if a == b {
                continue; // reflexive edge, carries no strict information
            }
            if let (Some(&i), Some(&j)) = (index.get(a), index.get(b)) {
                less[i][j] = true;
            }
        }
        for k in 0..m {
            for i in 0..m {
                if less[i][k] {
                    for j in 0..m {
                        if less[k][j] {
                            less[i][j] = true;
                        }
                    }
                }
            }
        }
        let on_cycle: Vec<String> = (0..m).filter(|&i| less[i][i]).map(|i| ids[i].clone()).collect();
        if !on_cycle.is_empty() {
            return Err(on_cycle);
        }
        Ok(StrictOrder { index, less })
    }

    /// True when `a` is strictly below `b`.
    pub fn strictly_less(&self, a: &str, b: &str) -> bool {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&i), Some(&j)) => self.less[i][j],
            _ => false,
        }
    }
}

// ---------------------------------------------------------------------------
// JSON load/save

const FORMAT_VERSION: u64 = 1;

/// Parse and validate a spec document. The text must be a JSON object in
/// the canonical schema; rational fields accept `"p/q"` strings, integer
/// strings, or plain JSON numbers (decimals are converted to the nearest
/// rational with denominator at most 10^12).
/// Parse a flow data document against the schema without running the
/// validation rules. [`load_spec`] is this plus the validation pass;
/// parse-only access lets a caller report every rule outcome itself.
pub fn parse_spec(doc: &str) -> Result<FlowSpec> {
    let value: Value =
        serde_json::from_str(doc).map_err(|e| Error::schema(format!("not valid JSON: {e}")))?;
    spec_from_value(&value)
}

pub fn load_spec(doc: &str) -> Result<FlowSpec> {
    let spec = parse_spec(doc)?;
    let report = validate_spec(&spec);
    if let Some(fail) = report.first_failure() {
        return Err(Error::Invalid {
            rule: fail.rule,
            detail: fail.detail.clone(),
        });
    }
    Ok(spec)
}

fn expect_object<'a>(v: &'a Value, ctx: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::schema(format!("{ctx}: expected an object")))
}

fn expect_array<'a>(v: &'a Value, ctx: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::schema(format!("{ctx}: expected an array")))
}

fn field<'a>(map: &'a Map<String, Value>, key: &str, ctx: &str) -> Result<&'a Value> {
    map.get(key)
        .ok_or_else(|| Error::schema(format!("{ctx}: missing field {key:?}")))
}

fn check_keys(map: &Map<String, Value>, allowed: &[&str], ctx: &str) -> Result<()> {
    for key in map.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(Error::schema(format!("{ctx}: unknown field {key:?}")));
        }
    }
    Ok(())
}

fn expect_usize(v: &Value, ctx: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|u| usize::try_from(u).ok())
        .ok_or_else(|| Error::schema(format!("{ctx}: expected a nonnegative integer")))
}

fn expect_bool(v: &Value, ctx: &str) -> Result<bool> {
    v.as_bool()
        .ok_or_else(|| Error::schema(format!("{ctx}: expected a boolean")))
}

fn expect_string(v: &Value, ctx: &str) -> Result<String> {
    v.as_str()
        .map(String::from)
        .ok_or_else(|| Error::schema(format!("{ctx}: expected a string")))
}

fn expect_rational(v: &Value, ctx: &str) -> Result<Rat> {
    let literal = match v {
        Value::String(s) => s.clone(),
        // With arbitrary-precision numbers the display form is the exact
        // literal from the document, so no precision is lost here.
        Value::Number(n) => n.to_string(),
        _ => return Err(Error::schema(format!("{ctx}: expected a rational (string or number)"))),
    };
    parse_rational(&literal).map_err(|e| Error::schema(format!("{ctx}: {e}")))
}

fn spec_from_value(value: &Value) -> Result<FlowSpec> {
    let root = expect_object(value, "document root")?;
    check_keys(
        root,
        &[
            "format_version",
            "manifold_dim",
            "bundle",
            "fixed_points",
            "closed_orbits",
            "smale_order",
            "betti",
        ],
        "document root",
    )?;

    let version = expect_usize(field(root, "format_version", "document root")?, "format_version")?;
    if version as u64 != FORMAT_VERSION {
        return Err(Error::schema(format!(
            "unsupported format_version {version}, expected {FORMAT_VERSION}"
        )));
    }

    let manifold_dim = expect_usize(field(root, "manifold_dim", "document root")?, "manifold_dim")?;

    let bundle_map = expect_object(field(root, "bundle", "document root")?, "bundle")?;
    check_keys(bundle_map, &["rank"], "bundle")?;
    let rank = expect_usize(field(bundle_map, "rank", "bundle")?, "bundle.rank")?;

    let mut fixed_points = Vec::new();
    for (i, item) in expect_array(field(root, "fixed_points", "document root")?, "fixed_points")?
        .iter()
        .enumerate()
    {
        let ctx = format!("fixed_points[{i}]");
        let map = expect_object(item, &ctx)?;
        check_keys(map, &["id", "stable_dim"], &ctx)?;
        fixed_points.push(FixedPoint {
            id: expect_string(field(map, "id", &ctx)?, &format!("{ctx}.id"))?,
            stable_dim: expect_usize(
                field(map, "stable_dim", &ctx)?,
                &format!("{ctx}.stable_dim"),
            )?,
        });
    }

    let mut closed_orbits = Vec::new();
    for (i, item) in expect_array(field(root, "closed_orbits", "document root")?, "closed_orbits")?
        .iter()
        .enumerate()
    {
        let ctx = format!("closed_orbits[{i}]");
        let map = expect_object(item, &ctx)?;
        check_keys(
            map,
            &["id", "period", "stable_dim", "twisted", "holonomy_phases"],
            &ctx,
        )?;
        let phases = expect_array(
            field(map, "holonomy_phases", &ctx)?,
            &format!("{ctx}.holonomy_phases"),
        )?
        .iter()
        .enumerate()
        .map(|(j, p)| expect_rational(p, &format!("{ctx}.holonomy_phases[{j}]")))
        .collect::<Result<Vec<_>>>()?;
        closed_orbits.push(ClosedOrbit {
            id: expect_string(field(map, "id", &ctx)?, &format!("{ctx}.id"))?,
            period: expect_rational(field(map, "period", &ctx)?, &format!("{ctx}.period"))?,
            stable_dim: expect_usize(
                field(map, "stable_dim", &ctx)?,
                &format!("{ctx}.stable_dim"),
            )?,
            twisted: expect_bool(field(map, "twisted", &ctx)?, &format!("{ctx}.twisted"))?,
            holonomy_phases: phases,
        });
    }

    let smale_order = match root.get("smale_order") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let mut edges = Vec::new();
            for (i, e) in expect_array(v, "smale_order")?.iter().enumerate() {
                let ctx = format!("smale_order[{i}]");
                let pair = expect_array(e, &ctx)?;
                if pair.len() != 2 {
                    return Err(Error::schema(format!("{ctx}: expected a pair [idA, idB]")));
                }
                edges.push((
                    expect_string(&pair[0], &format!("{ctx}[0]"))?,
                    expect_string(&pair[1], &format!("{ctx}[1]"))?,
                ));
            }
            Some(edges)
        }
    };

    let betti = match root.get("betti") {
        None | Some(Value::Null) => None,
        Some(v) => Some(
            expect_array(v, "betti")?
                .iter()
                .enumerate()
                .map(|(i, b)| expect_usize(b, &format!("betti[{i}]")))
                .collect::<Result<Vec<_>>>()?,
        ),
    };

    Ok(FlowSpec {
        manifold_dim,
        bundle: FlatBundleData { rank },
        fixed_points,
        closed_orbits,
        smale_order,
        betti,
    })
}

/// Serialize a spec in the canonical schema with stable field order and
/// rationals in lowest terms. `load_spec(save_spec(s))` reproduces `s`
/// field for field, and `save_spec` is a fixed point on its own output.
pub fn save_spec(spec: &FlowSpec) -> String {
    let mut root = Map::new();
    root.insert("format_version".into(), Value::from(FORMAT_VERSION));
    root.insert("manifold_dim".into(), Value::from(spec.manifold_dim as u64));

    let mut bundle = Map::new();
    bundle.insert("rank".into(), Value::from(spec.bundle.rank as u64));
    root.insert("bundle".into(), Value::Object(bundle));

    let fixed: Vec<Value> = spec
        .fixed_points
        .iter()
        .map(|f| {
            let mut m = Map::new();
            m.insert("id".into(), Value::from(f.id.clone()));
            m.insert("stable_dim".into(), Value::from(f.stable_dim as u64));
            Value::Object(m)
        })
        .collect();
    root.insert("fixed_points".into(), Value::Array(fixed));

    let orbits: Vec<Value> = spec
        .closed_orbits
        .iter()
        .map(|o| {
            let mut m = Map::new();
            m.insert("id".into(), Value::from(o.id.clone()));
            m.insert("period".into(), Value::from(format_rational(&o.period)));
            m.insert("stable_dim".into(), Value::from(o.stable_dim as u64));
            m.insert("twisted".into(), Value::from(o.twisted));
            m.insert(
                "holonomy_phases".into(),
                Value::Array(
                    o.holonomy_phases
                        .iter()
                        .map(|g| Value::from(format_rational(g)))
                        .collect(),
                ),
            );
            Value::Object(m)
        })
        .collect();
    root.insert("closed_orbits".into(), Value::Array(orbits));

    if let Some(edges) = &spec.smale_order {
        root.insert(
            "smale_order".into(),
            Value::Array(
                edges
                    .iter()
                    .map(|(a, b)| {
                        Value::Array(vec![Value::from(a.clone()), Value::from(b.clone())])
                    })
                    .collect(),
            ),
        );
    }
    if let Some(betti) = &spec.betti {
        root.insert(
            "betti".into(),
            Value::Array(betti.iter().map(|&b| Value::from(b as u64)).collect()),
        );
    }

    let mut out = serde_json::to_string_pretty(&Value::Object(root)).expect("serialization");
    out.push('\n');
    out
}

// ---------------------------------------------------------------------------
// Time reversal

/// The time-reversed spec: stable and unstable manifolds swap, so fixed
/// stable dimensions become `n - k`, orbit stable dimensions become
/// `n + 1 - k`, and holonomy phases are traversed backwards
/// (`gamma -> (-gamma) mod 1`). The Smale order reverses, and the Betti
/// list is read backwards (Poincare duality pairs degree `k` with `n - k`).
pub fn time_reversed(spec: &FlowSpec) -> FlowSpec {
    let n = spec.manifold_dim;
    FlowSpec {
        manifold_dim: n,
        bundle: spec.bundle.clone(),
        fixed_points: spec
            .fixed_points
            .iter()
            .map(|f| FixedPoint {
                id: f.id.clone(),
                stable_dim: n - f.stable_dim,
            })
            .collect(),
        closed_orbits: spec
            .closed_orbits
            .iter()
            .map(|o| ClosedOrbit {
                id: o.id.clone(),
                period: o.period.clone(),
                stable_dim: n + 1 - o.stable_dim,
                twisted: o.twisted,
                holonomy_phases: o
                    .holonomy_phases
                    .iter()
                    .map(|g| frac_mod_one(&(-g)))
                    .collect(),
            })
            .collect(),
        smale_order: spec
            .smale_order
            .as_ref()
            .map(|edges| edges.iter().map(|(a, b)| (b.clone(), a.clone())).collect()),
        betti: spec.betti.as_ref().map(|b| {
            let mut r = b.clone();
            r.reverse();
            r
        }),
    }
}

// ---------------------------------------------------------------------------
// Bundled examples

/// Names of the bundled example specs, in listing order.
pub fn builtin_names() -> &'static [&'static str] {
    &[
        "s2-height",
        "torus-gradient",
        "s1-rotation",
        "s3-seifert",
        "twisted-orbit",
    ]
}

/// One-line description of a bundled example.
pub fn builtin_summary(name: &str) -> Option<&'static str> {
    match name {
        "s2-height" => Some("height flow on the 2-sphere: two fixed points, trivial line bundle"),
        "torus-gradient" => Some("gradient flow on the 2-torus: four fixed points"),
        "s1-rotation" => Some("rotation of the circle: one closed orbit, period 3, phase 1/4"),
        "s3-seifert" => Some("Seifert flow on the 3-sphere: two closed orbits, phases 1/3 and 1/5"),
        "twisted-orbit" => Some("surface flow with a twisted closed orbit and two fixed points"),
        _ => None,
    }
}

/// Fetch a bundled example by name.
pub fn builtin_example(name: &str) -> Result<FlowSpec> {
    let spec = match name {
        "s2-height" => FlowSpec {
            manifold_dim: 2,
            bundle: FlatBundleData { rank: 1 },
            fixed_points: vec![
                FixedPoint { id: "min".into(), stable_dim: 0 },
                FixedPoint { id: "max".into(), stable_dim: 2 },
            ],
            closed_orbits: vec![],
            smale_order: None,
            betti: Some(vec![1, 0, 1]),
        },
        "torus-gradient" => FlowSpec {
            manifold_dim: 2,
            bundle: FlatBundleData { rank: 1 },
            fixed_points: vec![
                FixedPoint { id: "min".into(), stable_dim: 0 },
                FixedPoint { id: "saddle-a".into(), stable_dim: 1 },
                FixedPoint { id: "saddle-b".into(), stable_dim: 1 },
                FixedPoint { id: "max".into(), stable_dim: 2 },
            ],
            closed_orbits: vec![],
            smale_order: None,
            betti: Some(vec![1, 2, 1]),
        },
        "s1-rotation" => FlowSpec {
            manifold_dim: 1,
            bundle: FlatBundleData { rank: 1 },
            fixed_points: vec![],
            closed_orbits: vec![ClosedOrbit {
                id: "circle".into(),
                period: rat_int(3),
                stable_dim: 1,
                twisted: false,
                holonomy_phases: vec![rat(1, 4)],
            }],
            smale_order: None,
            betti: Some(vec![0, 0]),
        },
        "s3-seifert" => FlowSpec {
            manifold_dim: 3,
            bundle: FlatBundleData { rank: 1 },
            fixed_points: vec![],
            closed_orbits: vec![
                ClosedOrbit {
                    id: "fiber-a".into(),
                    period: rat_int(1),
                    stable_dim: 3,
                    twisted: false,
                    holonomy_phases: vec![rat(1, 3)],
                },
                ClosedOrbit {
                    id: "fiber-b".into(),
                    period: rat_int(2),
                    stable_dim: 1,
                    twisted: false,
                    holonomy_phases: vec![rat(1, 5)],
                },
            ],
            smale_order: None,
            betti: Some(vec![0, 0, 0, 0]),
        },
        "twisted-orbit" => FlowSpec {
            manifold_dim: 2,
            bundle: FlatBundleData { rank: 1 },
            fixed_points: vec![
                FixedPoint { id: "min".into(), stable_dim: 0 },
                FixedPoint { id: "max".into(), stable_dim: 2 },
            ],
            closed_orbits: vec![ClosedOrbit {
                id: "belt".into(),
                period: rat_int(1),
                stable_dim: 1,
                twisted: true,
                holonomy_phases: vec![rat_int(0)],
            }],
            smale_order: None,
            betti: Some(vec![1, 0, 1]),
        },
        other => return Err(Error::UnknownExample(other.to_string())),
    };
    debug_assert!(validate_spec(&spec).is_valid());
    Ok(spec)
}

/// All bundled examples, in listing order.
pub fn builtin_examples() -> Vec<(&'static str, FlowSpec)> {
    builtin_names()
        .iter()
        .map(|&name| (name, builtin_example(name).expect("builtin")))
        .collect()
}

/// Render a short table of the bundled examples.
pub fn describe_builtins() -> String {
    let mut out = String::new();
    for name in builtin_names() {
        let _ = writeln!(out, "{name:<16} {}", builtin_summary(name).unwrap_or(""));
    }
    out
}
