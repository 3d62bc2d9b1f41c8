//! Degree-based topological indices.
//!
//! Every edge index has the shape `Σ_{uv ∈ E} F(d_u, d_v)` and is evaluated
//! by [`edge_sum`] over the canonical edge order with compensated
//! accumulation. The variable first Zagreb index is a vertex sum.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::Graph;
use crate::sum::CompensatedSum;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IndexError {
    #[error("non-finite term on edge ({0}, {1})")]
    NonFiniteTerm(usize, usize),
    #[error("the general Randic index is undefined for exponent 0")]
    ZeroExponent,
    #[error("exponent must be finite, got {0}")]
    NonFiniteExponent(f64),
    #[error("index `{0}` requires an exponent, e.g. `{0}:1`")]
    MissingExponent(&'static str),
    #[error("index `{0}` takes no exponent")]
    UnexpectedExponent(&'static str),
    #[error("unknown index family `{0}`")]
    UnknownFamily(String),
    #[error("cannot parse exponent `{0}`")]
    BadExponent(String),
}

/// `d^a` for a positive integer degree.
///
/// The exponents `-1, 0, 1, 2` are evaluated exactly; everything else goes
/// through `exp(a ln d)`.
#[inline]
pub fn degree_pow(d: usize, a: f64) -> f64 {
    let x = d as f64;
    if a == 1.0 {
        x
    } else if a == 0.0 {
        1.0
    } else if a == -1.0 {
        1.0 / x
    } else if a == 2.0 {
        x * x
    } else if d == 1 {
        1.0
    } else {
        (a * x.ln()).exp()
    }
}

/// Lookup table of `d^a` for `d = 0..=max_degree`.
#[derive(Debug, Clone)]
pub struct DegreePowers {
    table: Vec<f64>,
}

impl DegreePowers {
    pub fn new(max_degree: usize, a: f64) -> Self {
        let mut table = Vec::with_capacity(max_degree + 1);
        table.push(if a == 0.0 { 1.0 } else { 0.0 });
        table.extend((1..=max_degree).map(|d| degree_pow(d, a)));
        Self { table }
    }

    #[inline]
    pub fn get(&self, d: usize) -> f64 {
        self.table[d]
    }
}

/// `Σ_{uv ∈ E} f(d_u, d_v)` in canonical edge order.
///
/// Fails on the first edge whose term is NaN or infinite.
pub fn edge_sum<F>(g: &Graph, f: F) -> Result<f64, IndexError>
where
    F: Fn(usize, usize) -> f64,
{
    let mut acc = CompensatedSum::new();
    for &(u, v) in g.edges() {
        let term = f(g.degree(u), g.degree(v));
        if !term.is_finite() {
            return Err(IndexError::NonFiniteTerm(u, v));
        }
        acc.add(term);
    }
    Ok(acc.value())
}

fn sum_over_edges<F>(g: &Graph, f: F) -> f64
where
    F: Fn(usize, usize) -> f64,
{
    g.edges()
        .iter()
        .map(|&(u, v)| f(g.degree(u), g.degree(v)))
        .collect::<CompensatedSum>()
        .value()
}

/// Variable inverse sum deg index `ISD_a = Σ 1/(d_u^a + d_v^a)`.
pub fn isd(g: &Graph, a: f64) -> f64 {
    let pow = DegreePowers::new(g.max_degree(), a);
    sum_over_edges(g, |x, y| 1.0 / (pow.get(x) + pow.get(y)))
}

/// General Randić index `R_α = Σ (d_u d_v)^α`, defined for `α ≠ 0`.
pub fn general_randic(g: &Graph, alpha: f64) -> Result<f64, IndexError> {
    if alpha == 0.0 {
        return Err(IndexError::ZeroExponent);
    }
    let pow = DegreePowers::new(g.max_degree(), alpha);
    Ok(sum_over_edges(g, |x, y| pow.get(x) * pow.get(y)))
}

/// General sum-connectivity index `χ_α = Σ (d_u + d_v)^α`.
pub fn general_sum_connectivity(g: &Graph, alpha: f64) -> f64 {
    let pow = DegreePowers::new(2 * g.max_degree(), alpha);
    sum_over_edges(g, |x, y| pow.get(x + y))
}

/// Geometric-arithmetic index `GA = Σ 2√(d_u d_v)/(d_u + d_v)`.
pub fn geometric_arithmetic(g: &Graph) -> f64 {
    sum_over_edges(g, |x, y| {
        let (x, y) = (x as f64, y as f64);
        2.0 * (x * y).sqrt() / (x + y)
    })
}

/// Arithmetic-geometric index `AG = Σ (d_u + d_v)/(2√(d_u d_v))`.
pub fn arithmetic_geometric(g: &Graph) -> f64 {
    sum_over_edges(g, |x, y| {
        let (x, y) = (x as f64, y as f64);
        (x + y) / (2.0 * (x * y).sqrt())
    })
}

/// Variable first Zagreb index `M1^α = Σ_{u ∈ V} d_u^α`.
pub fn variable_first_zagreb(g: &Graph, alpha: f64) -> f64 {
    let pow = DegreePowers::new(g.max_degree(), alpha);
    g.degrees()
        .iter()
        .map(|&d| pow.get(d))
        .collect::<CompensatedSum>()
        .value()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexFamily {
    Isd,
    GeneralRandic,
    GeneralSumConnectivity,
    GeometricArithmetic,
    ArithmeticGeometric,
    VariableFirstZagreb,
}

impl IndexFamily {
    pub const ALL: [IndexFamily; 6] = [
        Self::Isd,
        Self::GeneralRandic,
        Self::GeneralSumConnectivity,
        Self::GeometricArithmetic,
        Self::ArithmeticGeometric,
        Self::VariableFirstZagreb,
    ];

    /// Short name used in `family[:exponent]` strings.
    pub fn name(self) -> &'static str {
        match self {
            Self::Isd => "isd",
            Self::GeneralRandic => "randic",
            Self::GeneralSumConnectivity => "chi",
            Self::GeometricArithmetic => "ga",
            Self::ArithmeticGeometric => "ag",
            Self::VariableFirstZagreb => "m1",
        }
    }

    pub fn takes_exponent(self) -> bool {
        !matches!(self, Self::GeometricArithmetic | Self::ArithmeticGeometric)
    }
}

impl FromStr for IndexFamily {
    type Err = IndexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|f| f.name() == lower)
            .ok_or_else(|| IndexError::UnknownFamily(s.trim().to_string()))
    }
}

impl fmt::Display for IndexFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An index family together with its exponent, written `family[:exponent]`.
///
/// GA and AG carry no exponent; every other family requires one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexSpec {
    family: IndexFamily,
    exponent: Option<f64>,
}

impl IndexSpec {
    pub fn new(family: IndexFamily, exponent: Option<f64>) -> Result<Self, IndexError> {
        match (family.takes_exponent(), exponent) {
            (true, None) => Err(IndexError::MissingExponent(family.name())),
            (false, Some(_)) => Err(IndexError::UnexpectedExponent(family.name())),
            (_, Some(a)) if !a.is_finite() => Err(IndexError::NonFiniteExponent(a)),
            (_, Some(a)) if a == 0.0 && family == IndexFamily::GeneralRandic => {
                Err(IndexError::ZeroExponent)
            }
            _ => Ok(Self { family, exponent }),
        }
    }

    pub fn isd(a: f64) -> Result<Self, IndexError> {
        Self::new(IndexFamily::Isd, Some(a))
    }

    pub fn family(&self) -> IndexFamily {
        self.family
    }

    pub fn exponent(&self) -> Option<f64> {
        self.exponent
    }

    /// Same family with another exponent; exponent-free families are returned
    /// unchanged.
    pub fn with_exponent(&self, a: f64) -> Result<Self, IndexError> {
        if self.family.takes_exponent() {
            Self::new(self.family, Some(a))
        } else {
            Ok(*self)
        }
    }

    /// Evaluates the index, rejecting non-finite terms.
    pub fn evaluate(&self, g: &Graph) -> Result<f64, IndexError> {
        let a = self.exponent.unwrap_or(f64::NAN);
        match self.family {
            IndexFamily::Isd => {
                let pow = DegreePowers::new(g.max_degree(), a);
                edge_sum(g, |x, y| 1.0 / (pow.get(x) + pow.get(y)))
            }
            IndexFamily::GeneralRandic => {
                let pow = DegreePowers::new(g.max_degree(), a);
                edge_sum(g, |x, y| pow.get(x) * pow.get(y))
            }
            IndexFamily::GeneralSumConnectivity => {
                let pow = DegreePowers::new(2 * g.max_degree(), a);
                edge_sum(g, |x, y| pow.get(x + y))
            }
            IndexFamily::GeometricArithmetic => Ok(geometric_arithmetic(g)),
            IndexFamily::ArithmeticGeometric => Ok(arithmetic_geometric(g)),
            IndexFamily::VariableFirstZagreb => {
                let value = variable_first_zagreb(g, a);
                if value.is_finite() {
                    Ok(value)
                } else {
                    Err(IndexError::NonFiniteExponent(a))
                }
            }
        }
    }
}

impl FromStr for IndexSpec {
    type Err = IndexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, exponent) = match s.split_once(':') {
            Some((name, exp)) => {
                let exp = exp.trim();
                let a: f64 = exp
                    .parse()
                    .map_err(|_| IndexError::BadExponent(exp.to_string()))?;
                (name, Some(a))
            }
            None => (s, None),
        };
        Self::new(name.parse()?, exponent)
    }
}

impl fmt::Display for IndexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            Some(a) => write!(f, "{}:{}", self.family, a),
            None => write!(f, "{}", self.family),
        }
    }
}
