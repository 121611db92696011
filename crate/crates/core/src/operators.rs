//! Statistical operators as weighted sums of pure-state projectors.
//!
//! The quantum operator uses four normalized states: the two rescaled branch
//! states and two fixed states that move probability between the "same" and
//! "different" event pairs. Its last two weights are equal and opposite, so
//! one of them is negative whenever the interference term is present.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::bell::{Event, EventProbabilities};
use crate::error::{Error, Result};
use crate::quantum::Angle;
use crate::statevec::Ket4;
use crate::IDENTITY_TOL;

/// Ordered list of `(weight, normalized state)` pairs. Weights sum to one but
/// may individually be negative.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct WeightedStateOperator {
    terms: Vec<(f64, Ket4)>,
}

impl WeightedStateOperator {
    /// Checks that every state is normalized and that the weights sum to one.
    pub fn new(terms: Vec<(f64, Ket4)>) -> Result<Self> {
        if let Some((_, s)) = terms.iter().find(|(_, s)| !s.is_normalized()) {
            return Err(Error::NotNormalized {
                norm_sqr: s.norm_sqr(),
            });
        }
        let op = WeightedStateOperator { terms };
        let trace = op.trace();
        if (trace - 1.0).abs() > IDENTITY_TOL {
            return Err(Error::InvalidWeights(format!("weights sum to {trace}")));
        }
        Ok(op)
    }

    pub fn terms(&self) -> &[(f64, Ket4)] {
        &self.terms
    }

    pub fn weights(&self) -> Vec<f64> {
        self.terms.iter().map(|(w, _)| *w).collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of weights; each projector has unit trace.
    pub fn trace(&self) -> f64 {
        self.terms.iter().map(|(w, s)| w * s.norm_sqr()).sum()
    }

    /// Number of terms whose weight is not exactly zero.
    pub fn nonzero_terms(&self) -> usize {
        self.terms.iter().filter(|(w, _)| *w != 0.0).count()
    }

    /// `<i,k| ρ |j,l>` for product-basis indices in `(yy, yn, ny, nn)` order.
    pub fn matrix_element(&self, row: usize, col: usize) -> f64 {
        self.terms.iter().map(|(w, s)| w * s[row] * s[col]).sum()
    }

    pub fn event_probability(&self, event: Event) -> f64 {
        event_probability(self, event)
    }

    pub fn probabilities(&self) -> EventProbabilities {
        EventProbabilities::from_raw(Event::ALL.map(|e| event_probability(self, e)))
    }
}

/// Diagonal element of the operator on the event's basis vector.
pub fn event_probability(op: &WeightedStateOperator, event: Event) -> f64 {
    let i = event.index();
    op.terms.iter().map(|(w, s)| w * s[i] * s[i]).sum()
}

/// The four normalized states `Φ̃1..Φ̃4`.
pub fn tilde_states(alpha: Angle, beta: Angle) -> [Ket4; 4] {
    let (sa, ca) = alpha.radians().sin_cos();
    let (sb, cb) = beta.radians().sin_cos();
    let r = FRAC_1_SQRT_2;
    [
        Ket4::new(-ca * sb, ca * cb, -sa * sb, sa * cb),
        Ket4::new(sa * cb, sa * sb, -ca * cb, -ca * sb),
        Ket4::new(0.0, r, r, 0.0),
        Ket4::new(r, 0.0, 0.0, r),
    ]
}

/// `sinα·sinβ·cosα·cosβ`, the amplitude of the interference redistribution.
pub fn interference_product(alpha: Angle, beta: Angle) -> f64 {
    let (sa, ca) = alpha.radians().sin_cos();
    let (sb, cb) = beta.radians().sin_cos();
    sa * sb * ca * cb
}

/// `(½, ½, 2c, −2c)` with `c` from [`interference_product`].
pub fn quasi_weights(alpha: Angle, beta: Angle) -> [f64; 4] {
    let p3 = 2.0 * interference_product(alpha, beta);
    [0.5, 0.5, p3, -p3]
}

pub fn qbb_operator(alpha: Angle, beta: Angle) -> WeightedStateOperator {
    let states = tilde_states(alpha, beta);
    let weights = quasi_weights(alpha, beta);
    WeightedStateOperator {
        terms: weights.into_iter().zip(states).collect(),
    }
}

/// Two-term operator with the interference states dropped.
pub fn classical_operator(alpha: Angle, beta: Angle) -> WeightedStateOperator {
    let [t1, t2, _, _] = tilde_states(alpha, beta);
    WeightedStateOperator {
        terms: vec![(0.5, t1), (0.5, t2)],
    }
}

/// True when both interference weights vanish (`|c| ≤ tol`).
pub fn interference_free(alpha: Angle, beta: Angle, tol: f64) -> bool {
    interference_product(alpha, beta).abs() <= tol
}

/// Symmetric 4×4 matrix of inner products of the tilde states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GramMatrix(pub [[f64; 4]; 4]);

impl GramMatrix {
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.0[i][j]
    }

    /// `⟨Φ̃1|Φ̃3⟩ = cos(α+β)/√2`.
    pub fn g1(&self) -> f64 {
        self.0[0][2]
    }

    /// `⟨Φ̃1|Φ̃4⟩ = sin(α−β)/√2`.
    pub fn g2(&self) -> f64 {
        self.0[0][3]
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..4).all(|i| (0..4).all(|j| (self.0[i][j] - self.0[j][i]).abs() <= tol))
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn determinant(&self) -> f64 {
        let mut m = self.0;
        let mut det = 1.0;
        for col in 0..4 {
            let pivot = (col..4)
                .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
                .unwrap_or(col);
            if m[pivot][col] == 0.0 {
                return 0.0;
            }
            if pivot != col {
                m.swap(pivot, col);
                det = -det;
            }
            det *= m[col][col];
            let pivot_row = m[col];
            for row in m.iter_mut().skip(col + 1) {
                let f = row[col] / pivot_row[col];
                for (x, p) in row.iter_mut().zip(pivot_row).skip(col) {
                    *x -= f * p;
                }
            }
        }
        det
    }
}

pub fn gram(alpha: Angle, beta: Angle) -> GramMatrix {
    let t = tilde_states(alpha, beta);
    GramMatrix(std::array::from_fn(|i| {
        std::array::from_fn(|j| t[i].dot(&t[j]))
    }))
}

/// Closed-form determinant of [`gram`].
///
/// The matrix has block form `[[I, B], [Bᵀ, I]]` with `BᵀB = diag(2g1², 2g2²)`,
/// so `det = (1 − 2g1²)(1 − 2g2²) = sin²(α+β)·cos²(α−β)`.
pub fn gram_determinant(alpha: Angle, beta: Angle) -> f64 {
    let s = (alpha + beta).radians().sin();
    let c = (alpha - beta).radians().cos();
    s * s * c * c
}

/// Default threshold for [`linearly_independent`].
pub const INDEPENDENCE_TOL: f64 = 1e-12;

/// True when the four tilde states span the product space, i.e. the Gram
/// determinant exceeds `tol` in magnitude.
pub fn linearly_independent(alpha: Angle, beta: Angle, tol: f64) -> bool {
    gram_determinant(alpha, beta).abs() > tol
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureEntry {
    pub weight: f64,
    pub alpha: Angle,
    pub beta: Angle,
}

/// Classical weights `r_k` over configurations `(α_k, β_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureConfig {
    entries: Vec<MixtureEntry>,
}

impl MixtureConfig {
    pub const WEIGHT_TOL: f64 = 1e-12;

    pub fn new(entries: Vec<MixtureEntry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidWeights("mixture has no entries".into()));
        }
        if let Some(e) = entries
            .iter()
            .find(|e| e.weight.is_nan() || e.weight < 0.0 || !e.weight.is_finite())
        {
            return Err(Error::InvalidWeights(format!(
                "weight {} is negative or not finite",
                e.weight
            )));
        }
        let sum: f64 = entries.iter().map(|e| e.weight).sum();
        if (sum - 1.0).abs() > Self::WEIGHT_TOL {
            return Err(Error::InvalidWeights(format!("weights sum to {sum}")));
        }
        Ok(MixtureConfig { entries })
    }

    pub fn entries(&self) -> &[MixtureEntry] {
        &self.entries
    }
}

/// Incoherent mixture: the quantum operators of every configuration, each
/// weight scaled by its `r_k`. Repeated configurations are kept as-is.
pub fn mixture(config: &MixtureConfig) -> WeightedStateOperator {
    let terms = config
        .entries
        .iter()
        .flat_map(|e| {
            qbb_operator(e.alpha, e.beta)
                .terms
                .into_iter()
                .map(move |(p, s)| (e.weight * p, s))
        })
        .collect();
    WeightedStateOperator { terms }
}
