//! Run configuration schema.
//!
//! A run is described by one JSON file; there are no positional math
//! arguments, so every run is a reproducible artifact. Example:
//!
//! ```json
//! {
//!   "model": {
//!     "hamiltonian": {"coherent": {"omega": 1.0, "V": [0, 0], "A": [0, 0]}},
//!     "damping": {"gamma": 0.2, "N": 0.5, "M": [0, 0]}
//!   },
//!   "ordering": "wigner",
//!   "state": {"kind": "cat", "alpha": [1.5, 0.0]},
//!   "grid": {"nq": 256, "np": 256, "qmin": -8, "qmax": 8, "pmin": -8, "pmax": 8},
//!   "time": {"T": 0.8, "dt": 1e-4, "slices": 1},
//!   "output": {"path": "out/run1", "format": "csv"}
//! }
//! ```
//!
//! The Hamiltonian may instead be given in q,p form with exponential-sum
//! coefficients: `{"qp": {"k1": [[0.3, -0.2]], "k2": [[0.3, 0.2]], "k3": [[0.1, 0]]}}`.
//! An ordering is a name, a `{"name": "s-ordered", "s": 0.6}` object, or an
//! explicit `{"g1": .., "g2": .., "g3": ..}` triple. `convert` uses
//! `ordering_from`/`ordering_to` instead of `ordering`.

use num_complex::Complex64;
use serde::Deserialize;

use qprop::error::{Error, Result};
use qprop::model::{
    CoefficientFn, CoherentHamiltonian, DampingSpec, QPHamiltonian, QuadraticModel,
};
use qprop::ordering::{named_ordering, OrderingParams};
use qprop::phasegrid::GridSpec;
use qprop::states::StateSpec;
use qprop::weinorman::IntegratorConfig;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelConfig,
    #[serde(default)]
    pub ordering: Option<OrderingConfig>,
    #[serde(default)]
    pub ordering_from: Option<OrderingConfig>,
    #[serde(default)]
    pub ordering_to: Option<OrderingConfig>,
    pub state: StateSpec,
    pub grid: GridSpec,
    pub time: TimeConfig,
    pub output: OutputConfig,
    #[serde(default)]
    pub oracle: OracleConfig,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub hamiltonian: HamiltonianConfig,
    #[serde(default)]
    pub damping: Option<DampingConfig>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum HamiltonianConfig {
    Coherent {
        omega: f64,
        #[serde(rename = "V", default)]
        v: (f64, f64),
        #[serde(rename = "A", default)]
        a: (f64, f64),
    },
    Qp {
        #[serde(default)]
        k1: Vec<(f64, f64)>,
        #[serde(default)]
        k2: Vec<(f64, f64)>,
        #[serde(default)]
        k3: Vec<(f64, f64)>,
        #[serde(default)]
        k4: Vec<(f64, f64)>,
        #[serde(default)]
        k5: Vec<(f64, f64)>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DampingConfig {
    pub gamma: f64,
    #[serde(rename = "N")]
    pub n: f64,
    #[serde(rename = "M", default)]
    pub m: (f64, f64),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum OrderingConfig {
    Name(String),
    NamedWithParameter { name: String, s: f64 },
    Triple { g1: f64, g2: f64, g3: f64 },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeConfig {
    #[serde(rename = "T")]
    pub t_final: f64,
    #[serde(default)]
    pub dt: Option<f64>,
    #[serde(default)]
    pub slices: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub path: String,
    #[serde(default)]
    pub format: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleConfig {
    /// Fock cutoff for the density-matrix oracle.
    #[serde(default)]
    pub cutoff: Option<usize>,
    /// Oracle integrator step.
    #[serde(default)]
    pub dt: Option<f64>,
}

impl RunConfig {
    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let config: RunConfig = serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        if !(self.time.t_final.is_finite() && self.time.t_final >= 0.0) {
            return Err(Error::Config(format!(
                "time.T must be >= 0, got {}",
                self.time.t_final
            )));
        }
        if let Some(dt) = self.time.dt {
            if !(dt.is_finite() && dt > 0.0) {
                return Err(Error::Config(format!("time.dt must be > 0, got {dt}")));
            }
        }
        if self.time.slices == Some(0) {
            return Err(Error::Config("time.slices must be >= 1".into()));
        }
        if let Some(format) = &self.output.format {
            if format != "csv" {
                return Err(Error::Config(format!(
                    "output.format: only \"csv\" is supported, got {format:?}"
                )));
            }
        }
        Ok(())
    }

    pub fn model(&self) -> Result<QuadraticModel> {
        let mut model = match &self.model.hamiltonian {
            HamiltonianConfig::Coherent { omega, v, a } => {
                QuadraticModel::from_coherent(CoherentHamiltonian::new(
                    *omega,
                    Complex64::new(v.0, v.1),
                    Complex64::new(a.0, a.1),
                ))
            }
            HamiltonianConfig::Qp { k1, k2, k3, k4, k5 } => {
                let f = |terms: &Vec<(f64, f64)>, name: &str| -> Result<CoefficientFn> {
                    let c = CoefficientFn::new(terms.clone());
                    if !c.is_finite() {
                        return Err(Error::Config(format!(
                            "model.hamiltonian.qp.{name}: non-finite term"
                        )));
                    }
                    Ok(c)
                };
                QuadraticModel::from_qp(QPHamiltonian {
                    k1: f(k1, "k1")?,
                    k2: f(k2, "k2")?,
                    k3: f(k3, "k3")?,
                    k4: f(k4, "k4")?,
                    k5: f(k5, "k5")?,
                })
            }
        };
        if let Some(d) = &self.model.damping {
            model = model.with_damping(DampingSpec::new(
                d.gamma,
                d.n,
                Complex64::new(d.m.0, d.m.1),
            )?)?;
        }
        Ok(model)
    }

    pub fn ordering(&self) -> Result<OrderingParams> {
        match &self.ordering {
            Some(o) => o.resolve(),
            None => Err(Error::Config("ordering: missing".into())),
        }
    }

    pub fn ordering_pair(&self) -> Result<(OrderingParams, OrderingParams)> {
        let from = self
            .ordering_from
            .as_ref()
            .ok_or_else(|| Error::Config("ordering_from: missing".into()))?
            .resolve()?;
        let to = self
            .ordering_to
            .as_ref()
            .ok_or_else(|| Error::Config("ordering_to: missing".into()))?
            .resolve()?;
        Ok((from, to))
    }

    pub fn integrator(&self) -> IntegratorConfig {
        match self.time.dt {
            Some(dt) => IntegratorConfig::with_dt(dt),
            None => IntegratorConfig::for_duration(self.time.t_final),
        }
    }

    pub fn slices(&self) -> usize {
        self.time.slices.unwrap_or(1)
    }

    /// Exponential-mass parameters (ε, δ) read off the k1 coefficient when
    /// it is a single exponential term; used by analytic comparison cases.
    pub fn mass_parameters(&self) -> (f64, f64) {
        if let HamiltonianConfig::Qp { k1, .. } = &self.model.hamiltonian {
            if k1.len() == 1 {
                return (k1[0].0, -0.5 * k1[0].1);
            }
        }
        (0.0, 0.0)
    }
}

impl OrderingConfig {
    pub fn resolve(&self) -> Result<OrderingParams> {
        match self {
            OrderingConfig::Name(name) => named_ordering(name, None),
            OrderingConfig::NamedWithParameter { name, s } => named_ordering(name, Some(*s)),
            OrderingConfig::Triple { g1, g2, g3 } => {
                let g = OrderingParams::new(*g1, *g2, *g3);
                if !g.is_finite() {
                    return Err(Error::Config("ordering: non-finite triple".into()));
                }
                Ok(g)
            }
        }
    }
}
