//! Cartan data with a quasi-split diagram involution.
//!
//! Node indices are 0-based internally; every external format (JSON `tau`,
//! the expression language, rendered output) uses 1-based positions.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DatumError {
    #[error("invalid Cartan datum: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("cannot read datum JSON: {0}")]
    Json(String),
}

/// Classification of a node under the diagram involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeClass {
    Split,
    Swapped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct DatumJson {
    nodes: Vec<String>,
    cartan: Vec<Vec<i64>>,
    eps: Vec<i64>,
    tau: Vec<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    black: Vec<i64>,
}

/// A symmetrizable generalized Cartan matrix with symmetrizer and involution.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanDatum {
    nodes: Vec<String>,
    cartan: Vec<Vec<i64>>,
    eps: Vec<i64>,
    tau: Vec<usize>,
}

/// The pairing `<h_i, alpha_j> = a_ij` on `Y = X = Z^I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub pairing: Vec<Vec<i64>>,
}

/// Lists every violated structural condition; empty means valid.
pub fn validate_datum(nodes: &[String], cartan: &[Vec<i64>], eps: &[i64], tau: &[usize]) -> Vec<String> {
    let n = nodes.len();
    let mut v = Vec::new();
    if n == 0 {
        v.push("empty node set".to_string());
        return v;
    }
    if cartan.len() != n || cartan.iter().any(|r| r.len() != n) {
        v.push(format!("cartan matrix must be {n}x{n}"));
        return v;
    }
    if eps.len() != n {
        v.push(format!("eps must have {n} entries"));
        return v;
    }
    if tau.len() != n {
        v.push(format!("tau must have {n} entries"));
        return v;
    }
    for i in 0..n {
        if cartan[i][i] != 2 {
            v.push(format!("a_{{{},{}}} = {} but diagonal entries must be 2", i + 1, i + 1, cartan[i][i]));
        }
        if eps[i] < 1 {
            v.push(format!("eps_{} = {} must be positive", i + 1, eps[i]));
        }
        for j in 0..n {
            if i != j && cartan[i][j] > 0 {
                v.push(format!("a_{{{},{}}} = {} must be <= 0", i + 1, j + 1, cartan[i][j]));
            }
            if i < j && (cartan[i][j] == 0) != (cartan[j][i] == 0) {
                v.push(format!("a_{{{},{}}} and a_{{{},{}}} must vanish together", i + 1, j + 1, j + 1, i + 1));
            }
            if i < j && eps[i] * cartan[i][j] != eps[j] * cartan[j][i] {
                v.push(format!("not symmetrizable by given eps at ({}, {})", i + 1, j + 1));
            }
        }
    }
    for i in 0..n {
        if tau[i] >= n {
            v.push(format!("tau({}) out of range", i + 1));
            return v;
        }
    }
    for i in 0..n {
        if tau[tau[i]] != i {
            v.push(format!("tau is not an involution at node {}", i + 1));
        }
        if eps[tau[i]] != eps[i] {
            v.push(format!("eps not tau-invariant at node {}", i + 1));
        }
        for j in 0..n {
            if cartan[tau[i]][tau[j]] != cartan[i][j] {
                v.push(format!("tau does not preserve a_{{{},{}}}", i + 1, j + 1));
            }
        }
    }
    v
}

impl CartanDatum {
    /// Builds and validates a datum; `tau` is a 0-based image list.
    pub fn new(nodes: Vec<String>, cartan: Vec<Vec<i64>>, eps: Vec<i64>, tau: Vec<usize>) -> Result<Self, DatumError> {
        let v = validate_datum(&nodes, &cartan, &eps, &tau);
        if !v.is_empty() {
            return Err(DatumError::Invalid(v));
        }
        Ok(CartanDatum { nodes, cartan, eps, tau })
    }

    fn default_nodes(n: usize) -> Vec<String> {
        (1..=n).map(|k| k.to_string()).collect()
    }

    /// Split datum (trivial involution) with the minimal symmetrizer.
    pub fn split(cartan: Vec<Vec<i64>>) -> Result<Self, DatumError> {
        let n = cartan.len();
        let eps = minimal_symmetrizer(&cartan).ok_or_else(|| DatumError::Invalid(vec!["matrix is not symmetrizable".into()]))?;
        Self::new(Self::default_nodes(n), cartan, eps, (0..n).collect())
    }

    /// Split rank-2 datum with off-diagonal entries `a12`, `a21`.
    pub fn rank2(a12: i64, a21: i64) -> Result<Self, DatumError> {
        Self::split(vec![vec![2, a12], vec![a21, 2]])
    }

    pub fn a2() -> Self {
        Self::rank2(-1, -1).unwrap()
    }

    /// `B2` with `a_12 = -2`, `a_21 = -1` and symmetrizer `(1, 2)`.
    pub fn b2() -> Self {
        Self::rank2(-2, -1).unwrap()
    }

    /// `A3` with the involution swapping the end nodes.
    pub fn a3_swapped() -> Self {
        Self::new(
            Self::default_nodes(3),
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            vec![1, 1, 1],
            vec![2, 1, 0],
        )
        .unwrap()
    }

    pub fn rank(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `eps_i`, so that `q_i = q^{eps_i}`.
    pub fn eps(&self, i: usize) -> i64 {
        self.eps[i]
    }

    pub fn tau(&self, i: usize) -> usize {
        self.tau[i]
    }

    /// `i . j = eps_i a_ij`.
    pub fn dot(&self, i: usize, j: usize) -> i64 {
        self.eps[i] * self.cartan[i][j]
    }

    pub fn node_class(&self, j: usize) -> NodeClass {
        if self.tau[j] == j {
            NodeClass::Split
        } else {
            NodeClass::Swapped
        }
    }

    pub fn is_split(&self) -> bool {
        (0..self.rank()).all(|i| self.tau[i] == i)
    }

    pub fn root_datum(&self) -> RootDatum {
        RootDatum { pairing: self.cartan.clone() }
    }

    /// Parses the JSON form `{"nodes", "cartan", "eps", "tau"}` with a 1-based `tau`.
    pub fn from_json(text: &str) -> Result<Self, DatumError> {
        let raw: DatumJson = serde_json::from_str(text).map_err(|e| DatumError::Json(e.to_string()))?;
        if !raw.black.is_empty() {
            return Err(DatumError::Invalid(vec!["only quasi-split data are supported: the black node set must be empty".into()]));
        }
        let n = raw.nodes.len();
        let mut tau = Vec::with_capacity(n);
        let mut errs = Vec::new();
        for (k, &t) in raw.tau.iter().enumerate() {
            if t < 1 || t as usize > n {
                errs.push(format!("tau entry {} = {} is not a node position in 1..={}", k + 1, t, n));
            } else {
                tau.push(t as usize - 1);
            }
        }
        if !errs.is_empty() {
            return Err(DatumError::Invalid(errs));
        }
        Self::new(raw.nodes, raw.cartan, raw.eps, tau)
    }

    pub fn to_json(&self) -> String {
        let raw = DatumJson {
            nodes: self.nodes.clone(),
            cartan: self.cartan.clone(),
            eps: self.eps.clone(),
            tau: self.tau.iter().map(|t| *t as i64 + 1).collect(),
            black: Vec::new(),
        };
        serde_json::to_string(&raw).expect("datum serialization")
    }
}

impl fmt::Display for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

/// Smallest positive integer vector `d` with `d_i a_ij = d_j a_ji`, if one exists.
pub fn minimal_symmetrizer(cartan: &[Vec<i64>]) -> Option<Vec<i64>> {
    use num_integer::Integer;
    use num_rational::Ratio;
    let n = cartan.len();
    let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Ratio::from_integer(1));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i == j || cartan[i][j] == 0 {
                    continue;
                }
                if cartan[j][i] == 0 {
                    return None;
                }
                let dj = d[i].unwrap() * Ratio::new(cartan[i][j], cartan[j][i]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(x) if x != dj => return None,
                    _ => {}
                }
            }
        }
    }
    let den = d.iter().fold(1i64, |acc, x| acc.lcm(x.unwrap().denom()));
    let v: Vec<i64> = d.iter().map(|x| (x.unwrap() * den).to_integer()).collect();
    let g = v.iter().fold(0i64, |acc, x| acc.gcd(x));
    Some(v.into_iter().map(|x| x / g).collect())
}
