//! Inequalities between `ISD_a` and other degree-based indices, evaluated on
//! concrete graphs.
//!
//! [`check_bound`] computes both sides of one inequality for a `(graph, a)`
//! pair, decides whether it holds, whether either side is attained, and
//! which structural class the equality case is expected to need. A bound
//! that fails to hold on a valid graph indicates a bug in this crate, never a
//! property of the graph.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{ClassTag, ExtremalClass, Graph};
use crate::indices::{
    arithmetic_geometric, degree_pow, general_randic, general_sum_connectivity,
    geometric_arithmetic, isd, variable_first_zagreb,
};

/// Relative tolerance for `holds` and the equality flags.
pub const EQUALITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    #[error("unknown theorem `{0}`")]
    UnknownTheorem(String),
    #[error("exponent grid is empty")]
    EmptyGrid,
    #[error("exponent must be finite, got {0}")]
    NonFiniteExponent(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    /// `m/(2Δ^a) ≤ ISD_a ≤ m/(2δ^a)` for `a > 0`, reversed for `a < 0`.
    P1EdgeBound,
    /// `½δ^a R_{-a} ≤ ISD_a ≤ ½Δ^a R_{-a}` for `a > 0`, reversed for `a < 0`.
    T2RandicRelation,
    /// `Δ^{-2a} ISD_{-a} ≤ ISD_a ≤ δ^{-2a} ISD_{-a}` for `a > 0`, reversed for `a < 0`.
    T3NegatedExponent,
    /// `ISD_a` against `χ_{-a}` and `2^{a-1} χ_{-a}`, three regimes, `a ∉ {0, 1}`.
    T4ChiRelation,
    /// `ISD_a ≥ ½Δ^{-a} GA` (`a > 0`), `ISD_a ≥ ½δ^{-a} GA` (`a < 0`).
    T5GaLower,
    /// `ISD_a ≤ ½δ^{-a} AG` (`a > 0`), `ISD_a ≤ ½Δ^{-a} AG` (`a < 0`).
    T6AgUpper,
    /// `ISD_a + M1^{a+1} ≥ 5m/2` (`a > 0`), `≥ 2m` (`a < 0`).
    T7M1Sum,
    /// `ISD_a + M1^{a+1} ≥ (2δ^a + 1/(2δ^a)) m` for `a > 0`, or `δ > 1` and
    /// `a ≤ -ln 2 / ln δ`.
    T8M1SumDeltaRefined,
    /// `ISD_a + M1^{a+1} ≤ (2Δ^a + 1/(2Δ^a)) m` for `a > 0`.
    T9M1SumDeltaUpper,
    /// `m² ≤ ISD_a M1^{a+1} ≤ (Δ^a + δ^a)²/(4Δ^a δ^a) m²` for `a ≠ 0`.
    T10M1Product,
}

impl TheoremId {
    pub const ALL: [TheoremId; 10] = [
        Self::P1EdgeBound,
        Self::T2RandicRelation,
        Self::T3NegatedExponent,
        Self::T4ChiRelation,
        Self::T5GaLower,
        Self::T6AgUpper,
        Self::T7M1Sum,
        Self::T8M1SumDeltaRefined,
        Self::T9M1SumDeltaUpper,
        Self::T10M1Product,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::P1EdgeBound => "P1_EdgeBound",
            Self::T2RandicRelation => "T2_RandicRelation",
            Self::T3NegatedExponent => "T3_NegatedExponent",
            Self::T4ChiRelation => "T4_ChiRelation",
            Self::T5GaLower => "T5_GALower",
            Self::T6AgUpper => "T6_AGUpper",
            Self::T7M1Sum => "T7_M1Sum",
            Self::T8M1SumDeltaRefined => "T8_M1SumDeltaRefined",
            Self::T9M1SumDeltaUpper => "T9_M1SumDeltaUpper",
            Self::T10M1Product => "T10_M1Product",
        }
    }

    /// Whether the inequality has a case covering `a` on a graph with minimum
    /// degree `min_degree`.
    pub fn applies(self, a: f64, min_degree: usize) -> bool {
        if !a.is_finite() || a == 0.0 {
            return false;
        }
        match self {
            Self::T4ChiRelation => a != 1.0,
            Self::T8M1SumDeltaRefined => {
                a > 0.0
                    || (min_degree > 1
                        && a <= -(2f64.ln()) / (min_degree as f64).ln() + 1e-12)
            }
            Self::T9M1SumDeltaUpper => a > 0.0,
            _ => true,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = BoundError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim();
        Self::ALL
            .into_iter()
            .find(|t| {
                t.as_str().eq_ignore_ascii_case(key)
                    || t.as_str()
                        .split('_')
                        .next()
                        .is_some_and(|short| short.eq_ignore_ascii_case(key))
            })
            .ok_or_else(|| BoundError::UnknownTheorem(key.to_string()))
    }
}

/// One side of an inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Side {
    pub bound: f64,
    /// The inequality on this side is strict (`<` rather than `≤`).
    pub strict: bool,
    /// Class whose members attain this side, when the characterization is
    /// known.
    pub predicted: Option<ClassTag>,
}

impl Side {
    fn attained_by(bound: f64, class: ClassTag) -> Self {
        Self {
            bound,
            strict: false,
            predicted: Some(class),
        }
    }

    fn strict(bound: f64) -> Self {
        Self {
            bound,
            strict: true,
            predicted: None,
        }
    }

    fn uncharacterized(bound: f64) -> Self {
        Self {
            bound,
            strict: false,
            predicted: None,
        }
    }
}

/// One inequality evaluated on one graph at one exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub theorem: TheoremId,
    pub a: f64,
    pub applicable: bool,
    /// The bounded quantity; `None` when not applicable.
    pub value: Option<f64>,
    pub lower: Option<Side>,
    pub upper: Option<Side>,
    /// `value − lower`.
    pub slack_lower: Option<f64>,
    /// `upper − value`.
    pub slack_upper: Option<f64>,
    pub equality_lower: bool,
    pub equality_upper: bool,
    /// Every present side holds up to [`EQUALITY_TOLERANCE`].
    pub holds: bool,
    /// Strict sides hold strictly, with no tolerance.
    pub holds_strictly: bool,
    /// Whether the predicted classes characterize equality in both
    /// directions. False only for the lower side of T10 on disconnected
    /// graphs, where membership is sufficient but not necessary.
    pub converse_asserted: bool,
    pub actual_class: ExtremalClass,
}

impl BoundReport {
    fn not_applicable(theorem: TheoremId, a: f64, actual_class: ExtremalClass) -> Self {
        Self {
            theorem,
            a,
            applicable: false,
            value: None,
            lower: None,
            upper: None,
            slack_lower: None,
            slack_upper: None,
            equality_lower: false,
            equality_upper: false,
            holds: false,
            holds_strictly: false,
            converse_asserted: false,
            actual_class,
        }
    }

    /// Applicable but failing. On a valid graph this is a bug.
    pub fn violated(&self) -> bool {
        self.applicable && !(self.holds && self.holds_strictly)
    }

    pub fn predicted_lower(&self) -> Option<ClassTag> {
        self.lower.and_then(|s| s.predicted)
    }

    pub fn predicted_upper(&self) -> Option<ClassTag> {
        self.upper.and_then(|s| s.predicted)
    }

    /// Compact rendering of the predicted equality classes.
    pub fn predicted_class_label(&self) -> String {
        match (self.predicted_lower(), self.predicted_upper()) {
            (None, None) => ClassTag::None.to_string(),
            (Some(c), None) | (None, Some(c)) => c.to_string(),
            (Some(l), Some(u)) if l == u => l.to_string(),
            (Some(l), Some(u)) => format!("lower:{l}|upper:{u}"),
        }
    }

    /// Whether the equality flags agree with the predicted classes on
    /// `graph` (the graph the report was computed for).
    ///
    /// Strict sides must never be attained. Sides without a characterization
    /// are unconstrained. Where the converse is not asserted, only global
    /// regularity or biregularity is required to force equality.
    pub fn equality_consistent(&self, graph: &Graph) -> bool {
        if !self.applicable {
            return true;
        }
        let side_ok = |side: Option<Side>, attained: bool| -> bool {
            let Some(side) = side else {
                return true;
            };
            if side.strict {
                return !attained;
            }
            match side.predicted {
                None => true,
                Some(tag) => attained == graph.satisfies(tag),
            }
        };
        let lower_ok = if self.converse_asserted {
            side_ok(self.lower, self.equality_lower)
        } else {
            !graph.is_regular_or_biregular() || self.equality_lower
        };
        lower_ok && side_ok(self.upper, self.equality_upper)
    }
}

struct Evaluation {
    value: f64,
    lower: Option<Side>,
    upper: Option<Side>,
    converse_asserted: bool,
}

/// Evaluates one inequality on `g` at exponent `a`.
///
/// Exponents outside every case of the theorem yield a report with
/// `applicable == false` and nothing evaluated.
pub fn check_bound(theorem: TheoremId, g: &Graph, a: f64) -> Result<BoundReport, BoundError> {
    if !a.is_finite() {
        return Err(BoundError::NonFiniteExponent(a));
    }
    let actual_class = g.classify_extremal();
    if !theorem.applies(a, g.min_degree()) {
        return Ok(BoundReport::not_applicable(theorem, a, actual_class));
    }
    let eval = evaluate(theorem, g, a);
    let value = eval.value;
    let tol = EQUALITY_TOLERANCE * value.abs().max(1.0);

    let slack_lower = eval.lower.map(|s| value - s.bound);
    let slack_upper = eval.upper.map(|s| s.bound - value);
    let holds = slack_lower.is_none_or(|s| s >= -tol) && slack_upper.is_none_or(|s| s >= -tol);
    let strict_ok = |side: Option<Side>, slack: Option<f64>| match (side, slack) {
        (Some(side), Some(slack)) if side.strict => slack > 0.0,
        _ => true,
    };
    let holds_strictly =
        strict_ok(eval.lower, slack_lower) && strict_ok(eval.upper, slack_upper);

    Ok(BoundReport {
        theorem,
        a,
        applicable: true,
        value: Some(value),
        lower: eval.lower,
        upper: eval.upper,
        slack_lower,
        slack_upper,
        equality_lower: slack_lower.is_some_and(|s| s.abs() <= tol),
        equality_upper: slack_upper.is_some_and(|s| s.abs() <= tol),
        holds,
        holds_strictly,
        converse_asserted: eval.converse_asserted,
        actual_class,
    })
}

fn evaluate(theorem: TheoremId, g: &Graph, a: f64) -> Evaluation {
    use ClassTag::{ComponentwiseRegular, Regular, RegularOrBiregularComponents, UnionOfP2};

    let m = g.edge_count() as f64;
    let (min_deg, max_deg) = g.degree_extremes();
    let min_pow = degree_pow(min_deg, a);
    let max_pow = degree_pow(max_deg, a);
    let positive = a > 0.0;
    let regular_pair = |low: f64, high: f64| {
        (
            Some(Side::attained_by(low, Regular)),
            Some(Side::attained_by(high, Regular)),
        )
    };
    let isd_a = || isd(g, a);
    let isd_plus_m1 = || isd(g, a) + variable_first_zagreb(g, a + 1.0);

    let mut converse_asserted = true;
    let (value, (lower, upper)) = match theorem {
        TheoremId::P1EdgeBound => {
            let at_min = m / (2.0 * min_pow);
            let at_max = m / (2.0 * max_pow);
            let sides = if positive {
                regular_pair(at_max, at_min)
            } else {
                regular_pair(at_min, at_max)
            };
            (isd_a(), sides)
        }
        TheoremId::T2RandicRelation => {
            let randic = general_randic(g, -a).expect("a ≠ 0 here");
            let at_min = 0.5 * min_pow * randic;
            let at_max = 0.5 * max_pow * randic;
            let sides = if positive {
                regular_pair(at_min, at_max)
            } else {
                regular_pair(at_max, at_min)
            };
            (isd_a(), sides)
        }
        TheoremId::T3NegatedExponent => {
            let negated = isd(g, -a);
            let at_min = degree_pow(min_deg, -2.0 * a) * negated;
            let at_max = degree_pow(max_deg, -2.0 * a) * negated;
            let sides = if positive {
                regular_pair(at_max, at_min)
            } else {
                regular_pair(at_min, at_max)
            };
            (isd_a(), sides)
        }
        TheoremId::T4ChiRelation => {
            let chi = general_sum_connectivity(g, -a);
            let scaled = 2f64.powf(a - 1.0) * chi;
            let sides = if a > 1.0 {
                (
                    Some(Side::strict(chi)),
                    Some(Side::attained_by(scaled, ComponentwiseRegular)),
                )
            } else if positive {
                (
                    Some(Side::attained_by(scaled, ComponentwiseRegular)),
                    Some(Side::strict(chi)),
                )
            } else {
                (None, Some(Side::attained_by(scaled, ComponentwiseRegular)))
            };
            (isd_a(), sides)
        }
        TheoremId::T5GaLower => {
            let ga = geometric_arithmetic(g);
            let deg = if positive { max_deg } else { min_deg };
            let bound = 0.5 * degree_pow(deg, -a) * ga;
            (isd_a(), (Some(Side::attained_by(bound, Regular)), None))
        }
        TheoremId::T6AgUpper => {
            let ag = arithmetic_geometric(g);
            let deg = if positive { min_deg } else { max_deg };
            let bound = 0.5 * degree_pow(deg, -a) * ag;
            (isd_a(), (None, Some(Side::attained_by(bound, Regular))))
        }
        TheoremId::T7M1Sum => {
            let lower = if positive {
                Side::attained_by(2.5 * m, UnionOfP2)
            } else {
                Side::uncharacterized(2.0 * m)
            };
            (isd_plus_m1(), (Some(lower), None))
        }
        TheoremId::T8M1SumDeltaRefined => {
            let s = 2.0 * min_pow;
            let bound = (s + 1.0 / s) * m;
            (isd_plus_m1(), (Some(Side::attained_by(bound, Regular)), None))
        }
        TheoremId::T9M1SumDeltaUpper => {
            let s = 2.0 * max_pow;
            let bound = (s + 1.0 / s) * m;
            (isd_plus_m1(), (None, Some(Side::attained_by(bound, Regular))))
        }
        TheoremId::T10M1Product => {
            let value = isd(g, a) * variable_first_zagreb(g, a + 1.0);
            let ratio = (max_pow + min_pow).powi(2) / (4.0 * max_pow * min_pow);
            converse_asserted = g.is_connected();
            (
                value,
                (
                    Some(Side::attained_by(m * m, RegularOrBiregularComponents)),
                    Some(Side::attained_by(ratio * m * m, Regular)),
                ),
            )
        }
    };
    Evaluation {
        value,
        lower,
        upper,
        converse_asserted,
    }
}

/// Every theorem at every grid point, theorem-major then in grid order.
pub fn verify_all(g: &Graph, a_grid: &[f64]) -> Result<Vec<BoundReport>, BoundError> {
    if a_grid.is_empty() {
        return Err(BoundError::EmptyGrid);
    }
    if let Some(&bad) = a_grid.iter().find(|a| !a.is_finite()) {
        return Err(BoundError::NonFiniteExponent(bad));
    }
    let cells: Vec<(TheoremId, f64)> = TheoremId::ALL
        .iter()
        .flat_map(|&t| a_grid.iter().map(move |&a| (t, a)))
        .collect();
    cells
        .into_par_iter()
        .map(|(t, a)| check_bound(t, g, a))
        .collect()
}
