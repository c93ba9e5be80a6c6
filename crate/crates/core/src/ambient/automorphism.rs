use std::fmt;

use serde::{Deserialize, Serialize};

use super::root::{common_order, Root};
use super::AmbientError;

/// `P^{n_1} x ... x P^{n_m}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Ambient {
    dims: Vec<u32>,
}

impl TryFrom<Vec<u32>> for Ambient {
    type Error = AmbientError;
    fn try_from(dims: Vec<u32>) -> Result<Self, AmbientError> {
        Ambient::new(dims)
    }
}

impl From<Ambient> for Vec<u32> {
    fn from(a: Ambient) -> Self {
        a.dims
    }
}

impl Ambient {
    pub fn new(dims: Vec<u32>) -> Result<Self, AmbientError> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(AmbientError::InvalidAmbient(dims));
        }
        Ok(Ambient { dims })
    }

    /// Zero-dimensional factors are allowed here; they appear when an
    /// automorphism is restricted to a fixed component.
    pub(crate) fn with_points(dims: Vec<u32>) -> Self {
        assert!(!dims.is_empty());
        Ambient { dims }
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn factors(&self) -> usize {
        self.dims.len()
    }

    /// Number of homogeneous coordinates on factor `i`.
    pub fn coords(&self, i: usize) -> usize {
        self.dims[i] as usize + 1
    }

    pub fn dimension(&self) -> u32 {
        self.dims.iter().sum()
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|n| format!("P{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// A generalized permutation matrix: row `i` holds `roots[i]` in column
/// `perm[i]`, so `(M x)_i = roots[i] * x_{perm[i]}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialMatrix {
    perm: Vec<usize>,
    roots: Vec<Root>,
}

impl MonomialMatrix {
    pub fn new(perm: Vec<usize>, roots: Vec<Root>) -> Result<Self, AmbientError> {
        if perm.len() != roots.len() || !is_permutation(&perm) {
            return Err(AmbientError::MalformedMatrix(format!(
                "perm {perm:?} with {} entries is not a permutation",
                roots.len()
            )));
        }
        Ok(MonomialMatrix { perm, roots })
    }

    pub fn identity(size: usize) -> Self {
        MonomialMatrix {
            perm: (0..size).collect(),
            roots: vec![Root::ONE; size],
        }
    }

    pub fn diagonal(roots: Vec<Root>) -> Self {
        MonomialMatrix {
            perm: (0..roots.len()).collect(),
            roots,
        }
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// `self * other`.
    pub fn mul(&self, other: &MonomialMatrix) -> MonomialMatrix {
        let perm = self.perm.iter().map(|&j| other.perm[j]).collect();
        let roots = self
            .perm
            .iter()
            .zip(&self.roots)
            .map(|(&j, &r)| r + other.roots[j])
            .collect();
        MonomialMatrix { perm, roots }
    }

    pub fn inverse(&self) -> MonomialMatrix {
        let n = self.size();
        let mut perm = vec![0; n];
        let mut roots = vec![Root::ONE; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            roots[self.perm[i]] = -self.roots[i];
        }
        MonomialMatrix { perm, roots }
    }

    /// Rescaled so that the entry in row 0 is 1.
    pub fn normalized(&self) -> MonomialMatrix {
        match self.roots.first() {
            Some(&r0) => self.scaled(-r0),
            None => self.clone(),
        }
    }

    pub fn scaled(&self, s: Root) -> MonomialMatrix {
        MonomialMatrix {
            perm: self.perm.clone(),
            roots: self.roots.iter().map(|&r| r + s).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j) && self.roots.iter().all(Root::is_one)
    }

    /// Applies the matrix to a sparse vector of `(coordinate, root)` entries.
    pub fn apply_sparse(&self, v: &[(usize, Root)]) -> Vec<(usize, Root)> {
        let inv = self.inverse_perm();
        let mut out: Vec<(usize, Root)> = v
            .iter()
            .map(|&(a, x)| (inv[a], self.roots[inv[a]] + x))
            .collect();
        out.sort();
        out
    }

    fn inverse_perm(&self) -> Vec<usize> {
        let mut inv = vec![0; self.size()];
        for (i, &j) in self.perm.iter().enumerate() {
            inv[j] = i;
        }
        inv
    }

    pub fn root_order(&self) -> u64 {
        common_order(&self.roots)
    }
}

impl fmt::Debug for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .perm
            .iter()
            .zip(&self.roots)
            .map(|(j, r)| format!("{j}:{r}"))
            .collect();
        write!(f, "[{}]", rows.join(" "))
    }
}

pub(crate) fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&j| j < p.len() && !std::mem::replace(&mut seen[j], true))
}

pub(crate) fn invert_permutation(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// `g = (A_i) o sigma`, acting by `(g x)_i = A_i x_{sigma^{-1}(i)}`.
///
/// `sigma` is the one-line form (`sigma[i]` is the image of factor `i`,
/// 0-based). Every matrix is kept projectively normalized, so structural
/// equality is equality in `Aut(X)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawAutomorphism", into = "RawAutomorphism")]
pub struct MonomialAutomorphism {
    ambient: Ambient,
    sigma: Vec<usize>,
    mats: Vec<MonomialMatrix>,
}

#[derive(Serialize, Deserialize)]
struct RawAutomorphism {
    dims: Vec<u32>,
    sigma: Vec<usize>,
    mats: Vec<RawMatrix>,
}

#[derive(Serialize, Deserialize)]
struct RawMatrix {
    size: usize,
    entries: Vec<(usize, usize, i64)>,
    root_order: u64,
}

impl TryFrom<RawAutomorphism> for MonomialAutomorphism {
    type Error = AmbientError;

    fn try_from(raw: RawAutomorphism) -> Result<Self, AmbientError> {
        let ambient = Ambient::new(raw.dims)?;
        let mats = raw
            .mats
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                if m.root_order == 0 {
                    return Err(AmbientError::MalformedMatrix(format!(
                        "factor {i}: root_order must be positive"
                    )));
                }
                if m.entries.len() != m.size {
                    return Err(AmbientError::MalformedMatrix(format!(
                        "factor {i}: {} entries for size {}",
                        m.entries.len(),
                        m.size
                    )));
                }
                let mut perm = vec![usize::MAX; m.size];
                let mut roots = vec![Root::ONE; m.size];
                for (row, col, e) in m.entries {
                    if row >= m.size || col >= m.size || perm[row] != usize::MAX {
                        return Err(AmbientError::MalformedMatrix(format!(
                            "factor {i}: bad or repeated entry ({row}, {col})"
                        )));
                    }
                    perm[row] = col;
                    roots[row] = Root::new(e, m.root_order);
                }
                MonomialMatrix::new(perm, roots)
                    .map_err(|_| AmbientError::MalformedMatrix(format!("factor {i}: not monomial")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        MonomialAutomorphism::new(ambient, raw.sigma, mats)
    }
}

impl From<MonomialAutomorphism> for RawAutomorphism {
    fn from(g: MonomialAutomorphism) -> Self {
        RawAutomorphism {
            dims: g.ambient.dims.clone(),
            sigma: g.sigma.clone(),
            mats: g
                .mats
                .iter()
                .map(|m| {
                    let n = m.root_order();
                    RawMatrix {
                        size: m.size(),
                        entries: (0..m.size())
                            .map(|i| (i, m.perm[i], m.roots[i].exponent_in(n) as i64))
                            .collect(),
                        root_order: n,
                    }
                })
                .collect(),
        }
    }
}

impl MonomialAutomorphism {
    pub fn new(
        ambient: Ambient,
        sigma: Vec<usize>,
        mats: Vec<MonomialMatrix>,
    ) -> Result<Self, AmbientError> {
        let m = ambient.factors();
        if sigma.len() != m || !is_permutation(&sigma) {
            return Err(AmbientError::BadPermutation(sigma));
        }
        if mats.len() != m {
            return Err(AmbientError::MalformedMatrix(format!(
                "{} matrices for {m} factors",
                mats.len()
            )));
        }
        for i in 0..m {
            if ambient.dims[sigma[i]] != ambient.dims[i] {
                return Err(AmbientError::BadPermutation(sigma));
            }
            if mats[i].size() != ambient.coords(i) {
                return Err(AmbientError::MalformedMatrix(format!(
                    "factor {i}: size {} on P^{}",
                    mats[i].size(),
                    ambient.dims[i]
                )));
            }
        }
        let mats = mats.iter().map(MonomialMatrix::normalized).collect();
        Ok(MonomialAutomorphism {
            ambient,
            sigma,
            mats,
        })
    }

    pub fn identity(ambient: &Ambient) -> Self {
        let m = ambient.factors();
        MonomialAutomorphism {
            ambient: ambient.clone(),
            sigma: (0..m).collect(),
            mats: (0..m)
                .map(|i| MonomialMatrix::identity(ambient.coords(i)))
                .collect(),
        }
    }

    /// Pure factor permutation.
    pub fn permutation(ambient: &Ambient, sigma: Vec<usize>) -> Result<Self, AmbientError> {
        let mats = (0..ambient.factors()).map(|i| MonomialMatrix::identity(ambient.coords(i)));
        MonomialAutomorphism::new(ambient.clone(), sigma, mats.collect())
    }

    /// `(A_i) o id`.
    pub fn from_matrices(
        ambient: &Ambient,
        mats: Vec<MonomialMatrix>,
    ) -> Result<Self, AmbientError> {
        MonomialAutomorphism::new(ambient.clone(), (0..ambient.factors()).collect(), mats)
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn mats(&self) -> &[MonomialMatrix] {
        &self.mats
    }

    pub fn is_identity(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, &j)| i == j)
            && self.mats.iter().all(MonomialMatrix::is_identity)
    }

    /// `self o other`.
    pub fn compose(&self, other: &Self) -> Result<Self, AmbientError> {
        if self.ambient != other.ambient {
            return Err(AmbientError::AmbientMismatch);
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        let inv = invert_permutation(&self.sigma);
        let sigma = other.sigma.iter().map(|&j| self.sigma[j]).collect();
        let mats = (0..self.sigma.len())
            .map(|i| self.mats[i].mul(&other.mats[inv[i]]).normalized())
            .collect();
        MonomialAutomorphism {
            ambient: self.ambient.clone(),
            sigma,
            mats,
        }
    }

    pub fn inverse(&self) -> Self {
        let sigma = invert_permutation(&self.sigma);
        let mats = (0..self.sigma.len())
            .map(|j| self.mats[self.sigma[j]].inverse().normalized())
            .collect();
        MonomialAutomorphism {
            ambient: self.ambient.clone(),
            sigma,
            mats,
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = MonomialAutomorphism::identity(&self.ambient);
        for _ in 0..e.unsigned_abs() {
            acc = acc.compose_unchecked(&base);
        }
        acc
    }

    /// Least `k <= cap` with `g^k = 1`.
    pub fn order_of(&self, cap: u64) -> Result<u64, AmbientError> {
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc.is_identity() {
                return Ok(k);
            }
            acc = acc.compose_unchecked(self);
        }
        Err(AmbientError::OrderCapExceeded { cap })
    }

    /// Applies the automorphism to a point given by sparse homogeneous
    /// coordinates on each factor.
    pub fn apply(&self, point: &[Vec<(usize, Root)>]) -> Vec<Vec<(usize, Root)>> {
        let inv = invert_permutation(&self.sigma);
        (0..self.sigma.len())
            .map(|i| self.mats[i].apply_sparse(&point[inv[i]]))
            .collect()
    }
}

impl fmt::Debug for MonomialAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) o {:?}", self.mats, self.sigma)
    }
}

impl fmt::Display for MonomialAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
