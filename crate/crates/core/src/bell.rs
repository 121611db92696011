//! Event probabilities, correlation functions and the four-configuration
//! Bell inequality.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

use crate::error::{Error, Result};
use crate::quantum::{quantum_probabilities, Angle};

/// Outcome pair: first letter side A, second side B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Event {
    YY,
    YN,
    NY,
    NN,
}

impl Event {
    pub const ALL: [Event; 4] = [Event::YY, Event::YN, Event::NY, Event::NN];

    /// Position in the `(yy, yn, ny, nn)` product basis.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_sides(a_on: bool, b_on: bool) -> Event {
        match (a_on, b_on) {
            (true, true) => Event::YY,
            (true, false) => Event::YN,
            (false, true) => Event::NY,
            (false, false) => Event::NN,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Event::YY => "yy",
            Event::YN => "yn",
            Event::NY => "ny",
            Event::NN => "nn",
        }
    }

    /// `+1` when both lamps agree, `−1` otherwise.
    pub fn parity(self) -> f64 {
        match self {
            Event::YY | Event::NN => 1.0,
            Event::YN | Event::NY => -1.0,
        }
    }
}

/// The four probabilities `w(y,y), w(y,n), w(n,y), w(n,n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EventProbabilities([f64; 4]);

impl EventProbabilities {
    pub const SUM_TOL: f64 = 1e-12;

    /// Validates that each entry lies in `[0, 1]` and that they sum to one
    /// within `sum_tol`.
    pub fn new(values: [f64; 4], sum_tol: f64) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InvalidProbabilities(format!(
                "{v} is outside [0, 1]"
            )));
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > sum_tol {
            return Err(Error::InvalidProbabilities(format!("entries sum to {sum}")));
        }
        Ok(EventProbabilities(values))
    }

    /// Unchecked constructor for values produced by the models in this crate.
    pub(crate) fn from_raw(values: [f64; 4]) -> Self {
        EventProbabilities(values)
    }

    pub fn values(&self) -> [f64; 4] {
        self.0
    }

    pub fn get(&self, event: Event) -> f64 {
        self.0[event.index()]
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Probability that lamp A is on.
    pub fn marginal_a(&self) -> f64 {
        self.0[0] + self.0[1]
    }

    /// Probability that lamp B is on.
    pub fn marginal_b(&self) -> f64 {
        self.0[0] + self.0[2]
    }

    pub fn max_abs_diff(&self, other: &EventProbabilities) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn correlation(&self) -> f64 {
        correlation(self)
    }
}

/// `K = w(y,y) + w(n,n) − w(y,n) − w(n,y)`.
pub fn correlation(p: &EventProbabilities) -> f64 {
    let [yy, yn, ny, nn] = p.0;
    yy + nn - yn - ny
}

/// Probabilities of the incoherent two-branch model: each emission branch is
/// counted separately and the results added.
pub fn classical_probabilities(alpha: Angle, beta: Angle) -> EventProbabilities {
    let (sa, ca) = alpha.radians().sin_cos();
    let (sb, cb) = beta.radians().sin_cos();
    let (sa2, ca2, sb2, cb2) = (sa * sa, ca * ca, sb * sb, cb * cb);
    let same = 0.5 * (sa2 * cb2 + sb2 * ca2);
    let diff = 0.5 * (ca2 * cb2 + sb2 * sa2);
    EventProbabilities([same, diff, diff, same])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Quantum,
    Classical,
}

impl Model {
    pub fn probabilities(self, alpha: Angle, beta: Angle) -> EventProbabilities {
        match self {
            Model::Quantum => quantum_probabilities(alpha, beta),
            Model::Classical => classical_probabilities(alpha, beta),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Model::Quantum => "quantum",
            Model::Classical => "classical",
        }
    }
}

/// `|K(α,β) − K(α,β′)| + |K(α′,β) + K(α′,β′)| − 2`; positive means violated.
pub fn bell_lhs(k_ab: f64, k_ab2: f64, k_a2b: f64, k_a2b2: f64) -> f64 {
    (k_ab - k_ab2).abs() + (k_a2b + k_a2b2).abs() - 2.0
}

/// Margin above zero required before a battery counts as violating.
pub const VIOLATION_MARGIN: f64 = 1e-9;

/// Settings `(α,β), (α,β′), (α′,β), (α′,β′)`.
pub type BatteryConfigs = [(Angle, Angle); 4];

/// `(0, π/8), (0, 3π/8), (π/4, π/8), (π/4, 3π/8)`.
pub fn standard_battery() -> BatteryConfigs {
    let (a, a2) = (Angle::ZERO, Angle::new(FRAC_PI_4));
    let (b, b2) = (Angle::new(FRAC_PI_8), Angle::new(3.0 * FRAC_PI_8));
    [(a, b), (a, b2), (a2, b), (a2, b2)]
}

#[derive(Debug, Clone, PartialEq)]
pub struct BellBattery {
    pub configs: BatteryConfigs,
    pub correlations: [f64; 4],
    pub lhs: f64,
}

impl BellBattery {
    pub fn from_correlations(configs: BatteryConfigs, correlations: [f64; 4]) -> Self {
        let [k1, k2, k3, k4] = correlations;
        BellBattery {
            configs,
            correlations,
            lhs: bell_lhs(k1, k2, k3, k4),
        }
    }

    pub fn violated(&self) -> bool {
        self.lhs > VIOLATION_MARGIN
    }
}

pub fn run_battery(model: Model, configs: BatteryConfigs) -> BellBattery {
    let correlations = configs.map(|(a, b)| model.probabilities(a, b).correlation());
    BellBattery::from_correlations(configs, correlations)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Quantum,
    Classical,
    Inconclusive,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Quantum => "Quantum",
            Verdict::Classical => "Classical",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

/// Quantum expectation at `α = β = π/4`.
pub const QUANTUM_TEMPLATE: [f64; 4] = [0.0, 0.5, 0.5, 0.0];
/// Classical expectation at `α = β = π/4`.
pub const CLASSICAL_TEMPLATE: [f64; 4] = [0.25; 4];

/// Compares probabilities measured at `α = β = π/4` with the two model
/// templates, entry by entry.
pub fn discriminate(p: &EventProbabilities, tol: f64) -> Verdict {
    let within = |t: &[f64; 4]| p.0.iter().zip(t).all(|(a, b)| (a - b).abs() <= tol);
    if within(&QUANTUM_TEMPLATE) {
        Verdict::Quantum
    } else if within(&CLASSICAL_TEMPLATE) {
        Verdict::Classical
    } else {
        Verdict::Inconclusive
    }
}
