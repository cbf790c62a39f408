//! Problem files: a JSON schema for the three objective kinds, plus the
//! seeded instance generators.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use sparsopt_core::models::{LeastSquaresModel, Objective, QuadraticModel, QuarticModel};
use sparsopt_core::numerics::DenseMatrix;
use sparsopt_core::sparsity::SparsityBudget;

use crate::rng::CounterRng;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemKind {
    LeastSquares,
    Quadratic,
    Quartic,
}

/// Where an instance came from; enough to regenerate it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    pub seed: u64,
    /// Generator parameters, stringly typed for schema stability.
    pub params: BTreeMap<String, String>,
}

/// On-disk problem description.
///
/// Field usage by kind:
/// * `least_squares`: `a` (m x n row-major), `b` (length m);
/// * `quadratic`: `q` (n x n row-major, symmetric), `b` (length n);
/// * `quartic`: `factors` (m rows of length n, rank-one measurements) or
///   `mats` (m full n x n matrices), and `c` (length m).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemInstance {
    pub format_version: u32,
    pub kind: ProblemKind,
    pub m: usize,
    pub n: usize,
    pub s: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mats: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_true: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

#[derive(Debug)]
pub enum InstanceError {
    UnsupportedFormatVersion(u32),
    MissingField(&'static str),
    BadDimensions(String),
    Model(String),
}

impl fmt::Display for InstanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceError::UnsupportedFormatVersion(v) => {
                write!(f, "unsupported format_version {v} (expected {FORMAT_VERSION})")
            }
            InstanceError::MissingField(name) => write!(f, "missing field `{name}` for kind"),
            InstanceError::BadDimensions(msg) => write!(f, "inconsistent dimensions: {msg}"),
            InstanceError::Model(msg) => write!(f, "model construction failed: {msg}"),
        }
    }
}

impl std::error::Error for InstanceError {}

/// Constructed objective, one variant per problem kind.
pub enum BuiltModel {
    LeastSquares(LeastSquaresModel),
    Quadratic(QuadraticModel),
    Quartic(QuarticModel),
}

impl BuiltModel {
    pub fn objective(&self) -> &dyn Objective {
        match self {
            BuiltModel::LeastSquares(m) => m,
            BuiltModel::Quadratic(m) => m,
            BuiltModel::Quartic(m) => m,
        }
    }

    pub fn least_squares(&self) -> Option<&LeastSquaresModel> {
        match self {
            BuiltModel::LeastSquares(m) => Some(m),
            _ => None,
        }
    }
}

impl ProblemInstance {
    pub fn budget(&self) -> Result<SparsityBudget, InstanceError> {
        SparsityBudget::new(self.s, self.n)
            .map_err(|e| InstanceError::BadDimensions(e.to_string()))
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        if self.format_version != FORMAT_VERSION {
            return Err(InstanceError::UnsupportedFormatVersion(self.format_version));
        }
        self.budget()?;
        self.build_model().map(|_| ())
    }

    pub fn build_model(&self) -> Result<BuiltModel, InstanceError> {
        let model_err = |e: &dyn fmt::Display| InstanceError::Model(e.to_string());
        match self.kind {
            ProblemKind::LeastSquares => {
                let a = self.a.as_ref().ok_or(InstanceError::MissingField("a"))?;
                let b = self.b.as_ref().ok_or(InstanceError::MissingField("b"))?;
                let a = DenseMatrix::new(self.m, self.n, a.clone())
                    .map_err(|e| model_err(&e))?;
                if b.len() != self.m {
                    return Err(InstanceError::BadDimensions(format!(
                        "b has length {}, expected m = {}",
                        b.len(),
                        self.m
                    )));
                }
                LeastSquaresModel::new(a, b.clone())
                    .map(BuiltModel::LeastSquares)
                    .map_err(|e| model_err(&e))
            }
            ProblemKind::Quadratic => {
                let q = self.q.as_ref().ok_or(InstanceError::MissingField("q"))?;
                let b = self.b.as_ref().ok_or(InstanceError::MissingField("b"))?;
                let q = DenseMatrix::new(self.n, self.n, q.clone())
                    .map_err(|e| model_err(&e))?;
                QuadraticModel::new(q, b.clone())
                    .map(BuiltModel::Quadratic)
                    .map_err(|e| model_err(&e))
            }
            ProblemKind::Quartic => {
                let c = self.c.as_ref().ok_or(InstanceError::MissingField("c"))?;
                if let Some(factors) = &self.factors {
                    QuarticModel::from_rank_one(factors.clone(), c.clone())
                        .map(BuiltModel::Quartic)
                        .map_err(|e| model_err(&e))
                } else if let Some(mats) = &self.mats {
                    let mats = mats
                        .iter()
                        .map(|d| DenseMatrix::new(self.n, self.n, d.clone()))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| model_err(&e))?;
                    QuarticModel::new(mats, c.clone())
                        .map(BuiltModel::Quartic)
                        .map_err(|e| model_err(&e))
                } else {
                    Err(InstanceError::MissingField("factors or mats"))
                }
            }
        }
    }
}

/// Gaussian least-squares instance: A has iid standard normal entries,
/// optionally column-normalized; in planted mode b = A x_true for a random
/// s-sparse x_true, otherwise b is iid standard normal.
pub fn generate_gaussian_ls(
    seed: u64,
    m: usize,
    n: usize,
    s: usize,
    normalize_columns: bool,
    planted: bool,
) -> ProblemInstance {
    let mut rng = CounterRng::new(seed);
    let mut a: Vec<f64> = (0..m * n).map(|_| rng.normal()).collect();
    if normalize_columns {
        for j in 0..n {
            let norm = (0..m).map(|i| a[i * n + j] * a[i * n + j]).sum::<f64>().sqrt();
            for i in 0..m {
                a[i * n + j] /= norm;
            }
        }
    }
    let (b, x_true) = if planted {
        let support = rng.subset(n, s);
        let mut x = vec![0.0; n];
        for &i in &support {
            x[i] = rng.normal();
        }
        let b: Vec<f64> = (0..m)
            .map(|i| (0..n).map(|j| a[i * n + j] * x[j]).sum())
            .collect();
        (b, Some(x))
    } else {
        ((0..m).map(|_| rng.normal()).collect(), None)
    };
    let mut params = BTreeMap::new();
    params.insert("m".into(), m.to_string());
    params.insert("n".into(), n.to_string());
    params.insert("s".into(), s.to_string());
    params.insert("normalize_columns".into(), normalize_columns.to_string());
    params.insert("planted".into(), planted.to_string());
    ProblemInstance {
        format_version: FORMAT_VERSION,
        kind: ProblemKind::LeastSquares,
        m,
        n,
        s,
        a: Some(a),
        q: None,
        b: Some(b),
        mats: None,
        factors: None,
        c: None,
        x_true,
        provenance: Some(Provenance {
            generator: "gaussian_ls".into(),
            seed,
            params,
        }),
    }
}

/// Rank-one quartic instance: measurement vectors a_i with iid standard
/// normal entries, planted s-sparse x_true, targets c_i = (a_i^T x_true)^2.
/// Both x_true and -x_true attain objective zero.
pub fn generate_quartic(seed: u64, m: usize, n: usize, s: usize) -> ProblemInstance {
    let mut rng = CounterRng::new(seed);
    let factors: Vec<Vec<f64>> = (0..m)
        .map(|_| (0..n).map(|_| rng.normal()).collect())
        .collect();
    let support = rng.subset(n, s);
    let mut x_true = vec![0.0; n];
    for &i in &support {
        x_true[i] = rng.normal();
    }
    let c: Vec<f64> = factors
        .iter()
        .map(|a| {
            let d: f64 = a.iter().zip(&x_true).map(|(ai, xi)| ai * xi).sum();
            d * d
        })
        .collect();
    let mut params = BTreeMap::new();
    params.insert("m".into(), m.to_string());
    params.insert("n".into(), n.to_string());
    params.insert("s".into(), s.to_string());
    ProblemInstance {
        format_version: FORMAT_VERSION,
        kind: ProblemKind::Quartic,
        m,
        n,
        s,
        a: None,
        q: None,
        b: None,
        mats: None,
        factors: Some(factors),
        c: Some(c),
        x_true: Some(x_true),
        provenance: Some(Provenance {
            generator: "rank_one_quartic".into(),
            seed,
            params,
        }),
    }
}
