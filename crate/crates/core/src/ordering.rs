//! The Gaussian ordering class.
//!
//! An ordering is selected by a Gaussian kernel applied to the symmetric
//! characteristic function,
//!
//! ```text
//! f(u, v) = exp(g1 u² + g2 v² + 2i g3 u v),
//! ```
//!
//! so a real triple `(g1, g2, g3)` picks one quasi-distribution out of the
//! family. The usual distributions are specific triples: Wigner `(0,0,0)`,
//! P `(1/4,1/4,0)`, Q `(-1/4,-1/4,0)`, standard `(0,0,1/4)`, antistandard
//! (Kirkwood–Rihaczek) `(0,0,-1/4)`, and the s-ordered family `(s/4,s/4,0)`.
//!
//! The same kernel can be written over the complex dual variable
//! β = (u+iv)/√2 with a triple `(a1, a2, a3)`; [`alpha_to_qp`] and
//! [`qp_to_alpha`] convert between the two parameterizations.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordering kernel parameters over the real dual variables `(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderingParams {
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
}

/// Ordering kernel parameters over the complex dual variable β.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderingParamsAlpha {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl OrderingParams {
    pub fn new(g1: f64, g2: f64, g3: f64) -> Self {
        Self { g1, g2, g3 }
    }

    /// Symmetric ordering (Wigner function).
    pub fn wigner() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }

    /// Normal ordering (Glauber P function).
    pub fn normal() -> Self {
        Self::new(0.25, 0.25, 0.0)
    }

    /// Antinormal ordering (Husimi Q function).
    pub fn antinormal() -> Self {
        Self::new(-0.25, -0.25, 0.0)
    }

    /// Standard ordering (anti Kirkwood–Rihaczek function).
    pub fn standard() -> Self {
        Self::new(0.0, 0.0, 0.25)
    }

    /// Antistandard ordering (Kirkwood–Rihaczek function).
    pub fn antistandard() -> Self {
        Self::new(0.0, 0.0, -0.25)
    }

    /// The s-ordered family of Cahill and Glauber; s = 1, 0, -1 give the
    /// normal, Wigner, and antinormal orderings.
    pub fn s_ordered(s: f64) -> Self {
        Self::new(0.25 * s, 0.25 * s, 0.0)
    }

    /// Kernel value `exp(g1 u² + g2 v² + 2i g3 u v)`.
    pub fn kernel_value(&self, u: f64, v: f64) -> Complex64 {
        Complex64::new(self.g1 * u * u + self.g2 * v * v, 2.0 * self.g3 * u * v).exp()
    }

    pub fn is_finite(&self) -> bool {
        self.g1.is_finite() && self.g2.is_finite() && self.g3.is_finite()
    }
}

impl OrderingParamsAlpha {
    pub fn new(a1: f64, a2: f64, a3: f64) -> Self {
        Self { a1, a2, a3 }
    }
}

/// Convert β-space kernel parameters to `(u, v)`-space ones.
pub fn alpha_to_qp(a: OrderingParamsAlpha) -> OrderingParams {
    OrderingParams {
        g1: 0.5 * (a.a1 + a.a2 + a.a3),
        g2: 0.5 * (a.a1 - a.a2 - a.a3),
        g3: 0.5 * (a.a2 - a.a3),
    }
}

/// Convert `(u, v)`-space kernel parameters to β-space ones.
/// Exact inverse of [`alpha_to_qp`].
pub fn qp_to_alpha(g: OrderingParams) -> OrderingParamsAlpha {
    OrderingParamsAlpha {
        a1: g.g1 + g.g2,
        a2: 0.5 * (g.g1 - g.g2 + 2.0 * g.g3),
        a3: 0.5 * (g.g1 - g.g2 - 2.0 * g.g3),
    }
}

/// Look up one of the named orderings. `s` is required for (and only used
/// by) `"s-ordered"`.
///
/// Accepted names: `wigner`, `normal`, `antinormal`, `standard`,
/// `antistandard`, `s-ordered`.
pub fn named_ordering(name: &str, s: Option<f64>) -> Result<OrderingParams> {
    match name {
        "wigner" => Ok(OrderingParams::wigner()),
        "normal" => Ok(OrderingParams::normal()),
        "antinormal" => Ok(OrderingParams::antinormal()),
        "standard" => Ok(OrderingParams::standard()),
        "antistandard" => Ok(OrderingParams::antistandard()),
        "s-ordered" => s
            .map(OrderingParams::s_ordered)
            .ok_or(Error::MissingOrderingParameter),
        other => Err(Error::UnknownOrdering(other.to_owned())),
    }
}

/// All named orderings with their parameter triples, for listings.
pub fn named_orderings() -> Vec<(&'static str, OrderingParams)> {
    vec![
        ("wigner", OrderingParams::wigner()),
        ("normal", OrderingParams::normal()),
        ("antinormal", OrderingParams::antinormal()),
        ("standard", OrderingParams::standard()),
        ("antistandard", OrderingParams::antistandard()),
        ("s-ordered (s)", OrderingParams::s_ordered(f64::NAN)),
    ]
}
