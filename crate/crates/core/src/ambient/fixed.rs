//! Fixed loci of monomial automorphisms.
//!
//! For a factor cycle `i0 -> i1 = sigma(i0) -> ... -> i_{L-1}` a fixed point
//! satisfies `x_{i_j} ~ T_j x_{i0}` with `T_j = A_{i_j} ... A_{i_1}`, and
//! `x_{i0}` is an eigenvector of `M = A_{i0} T_{L-1}`. A monomial `M` splits
//! along the cycles of its column permutation: a coordinate cycle of length
//! `l` whose entries multiply to `e(theta)` carries the eigenvalues
//! `e((theta + j) / l)`, each with a one-dimensional eigenvector supported on
//! that cycle. A fixed component picks one eigenvalue per factor cycle.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::automorphism::{Ambient, MonomialAutomorphism, MonomialMatrix};
use super::root::Root;
use super::AmbientError;

/// Sparse vector: `(coordinate, root)` pairs sorted by coordinate; absent
/// coordinates are zero.
pub type SparseVec = Vec<(usize, Root)>;

/// One parameter direction of a piece, given on every factor of the piece.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisVector {
    pub blocks: Vec<SparseVec>,
}

/// The part of a component living on one factor cycle: the points
/// `([sum_c t_c w_c^{(f)}])_{f in factors}` for `t` in `P^{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Piece {
    pub factors: Vec<usize>,
    pub basis: Vec<BasisVector>,
}

impl Piece {
    pub fn dimension(&self) -> u32 {
        self.basis.len() as u32 - 1
    }

    /// Canonical representative of the same set of points.
    fn normalized(mut self) -> Piece {
        let mut order: Vec<usize> = (0..self.factors.len()).collect();
        order.sort_by_key(|&j| self.factors[j]);
        self.factors = order.iter().map(|&j| self.factors[j]).collect();
        for w in &mut self.basis {
            w.blocks = order
                .iter()
                .map(|&j| std::mem::take(&mut w.blocks[j]))
                .collect();
        }
        // Reparametrize each direction so that its leading entry on the
        // first factor is 1.
        for w in &mut self.basis {
            let s = w.blocks[0][0].1;
            for b in &mut w.blocks {
                for e in b.iter_mut() {
                    e.1 = e.1 - s;
                }
            }
        }
        self.basis.sort();
        // Rescale the remaining factors projectively.
        for f in 1..self.factors.len() {
            let s = self.basis[0].blocks[f][0].1;
            for w in &mut self.basis {
                for e in w.blocks[f].iter_mut() {
                    e.1 = e.1 - s;
                }
            }
        }
        self
    }
}

/// An irreducible component of a fixed locus: a product over factor cycles
/// of linearly embedded projective spaces.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FixedComponent {
    pub dimension: u32,
    /// Degrees against the hyperplane classes of the factors; present for
    /// points and curves.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub multidegree: Option<Vec<u32>>,
    pub pieces: Vec<Piece>,
}

impl FixedComponent {
    pub(crate) fn from_pieces(pieces: Vec<Piece>) -> FixedComponent {
        let mut pieces: Vec<Piece> = pieces.into_iter().map(Piece::normalized).collect();
        pieces.sort_by_key(|p| p.factors[0]);
        let dimension = pieces.iter().map(Piece::dimension).sum();
        let m = pieces.iter().map(|p| p.factors.len()).sum();
        let multidegree = (dimension <= 1).then(|| {
            let mut d = vec![0; m];
            for p in pieces.iter().filter(|p| p.basis.len() == 2) {
                for &f in &p.factors {
                    d[f] = 1;
                }
            }
            d
        });
        FixedComponent {
            dimension,
            multidegree,
            pieces,
        }
    }

    pub fn is_point(&self) -> bool {
        self.dimension == 0
    }

    /// Homogeneous coordinates, factor by factor, of a zero-dimensional
    /// component.
    pub fn as_point(&self) -> Option<Vec<SparseVec>> {
        if !self.is_point() {
            return None;
        }
        let m = self.pieces.iter().map(|p| p.factors.len()).sum();
        let mut out = vec![Vec::new(); m];
        for p in &self.pieces {
            for (j, &f) in p.factors.iter().enumerate() {
                out[f] = p.basis[0].blocks[j].clone();
            }
        }
        Some(out)
    }

    /// The image `b(C)`, which is a component of `Fix(b a b^{-1})` when `C`
    /// is a component of `Fix(a)`.
    pub fn transform(&self, b: &MonomialAutomorphism) -> FixedComponent {
        let sigma = b.sigma();
        let pieces = self
            .pieces
            .iter()
            .map(|p| Piece {
                factors: p.factors.iter().map(|&f| sigma[f]).collect(),
                basis: p
                    .basis
                    .iter()
                    .map(|w| BasisVector {
                        blocks: p
                            .factors
                            .iter()
                            .zip(&w.blocks)
                            .map(|(&f, blk)| b.mats()[sigma[f]].apply_sparse(blk))
                            .collect(),
                    })
                    .collect(),
            })
            .collect();
        FixedComponent::from_pieces(pieces)
    }

    /// For `x` with `x(C) = C`: the induced automorphism of the parameter
    /// space `prod_pieces P^{k-1}` (pieces in order).
    fn induced(&self, x: &MonomialAutomorphism) -> Result<MonomialAutomorphism, AmbientError> {
        let sigma = x.sigma();
        let r = self.pieces.len();
        let mut piece_sigma = vec![0; r];
        let mut mats = vec![MonomialMatrix::identity(1); r];
        for (pi, p) in self.pieces.iter().enumerate() {
            let mut image: Vec<usize> = p.factors.iter().map(|&f| sigma[f]).collect();
            image.sort();
            let qi = self
                .pieces
                .iter()
                .position(|q| q.factors == image)
                .ok_or(AmbientError::ComponentNotInvariant)?;
            let q = &self.pieces[qi];
            let target = q.factors[0];
            let src = p
                .factors
                .iter()
                .position(|&f| sigma[f] == target)
                .expect("image factor");
            let k = p.basis.len();
            let mut perm = vec![usize::MAX; k];
            let mut roots = vec![Root::ONE; k];
            for (c, w) in p.basis.iter().enumerate() {
                let img = x.mats()[target].apply_sparse(&w.blocks[src]);
                let d = q
                    .basis
                    .iter()
                    .position(|u| support(&u.blocks[0]) == support(&img))
                    .ok_or(AmbientError::ComponentNotInvariant)?;
                perm[d] = c;
                roots[d] = img[0].1 - q.basis[d].blocks[0][0].1;
            }
            piece_sigma[pi] = qi;
            mats[qi] = MonomialMatrix::new(perm, roots)?;
        }
        let ambient = Ambient::with_points(self.pieces.iter().map(Piece::dimension).collect());
        MonomialAutomorphism::new(ambient, piece_sigma, mats)
    }

    /// Maps a component of the parameter space back into the ambient space.
    fn embed(&self, sub: &FixedComponent) -> FixedComponent {
        let pieces = sub
            .pieces
            .iter()
            .map(|sp| {
                let factors: Vec<usize> = sp
                    .factors
                    .iter()
                    .flat_map(|&pi| self.pieces[pi].factors.clone())
                    .collect();
                let basis = sp
                    .basis
                    .iter()
                    .map(|u| {
                        let mut blocks = Vec::new();
                        for (j, &pi) in sp.factors.iter().enumerate() {
                            let p = &self.pieces[pi];
                            for fj in 0..p.factors.len() {
                                let mut blk: SparseVec = u.blocks[j]
                                    .iter()
                                    .flat_map(|&(c, rho)| {
                                        p.basis[c].blocks[fj]
                                            .iter()
                                            .map(move |&(a, r)| (a, r + rho))
                                    })
                                    .collect();
                                blk.sort();
                                blocks.push(blk);
                            }
                        }
                        BasisVector { blocks }
                    })
                    .collect();
                Piece { factors, basis }
            })
            .collect();
        FixedComponent::from_pieces(pieces)
    }
}

fn support(v: &[(usize, Root)]) -> Vec<usize> {
    v.iter().map(|e| e.0).collect()
}

/// Eigenvectors of a monomial matrix, grouped by eigenvalue.
fn eigenvectors(m: &MonomialMatrix) -> BTreeMap<Root, Vec<SparseVec>> {
    let n = m.size();
    let perm = m.perm();
    let roots = m.roots();
    let mut seen = vec![false; n];
    let mut out: BTreeMap<Root, Vec<SparseVec>> = BTreeMap::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut c = perm[start];
        while c != start {
            seen[c] = true;
            cycle.push(c);
            c = perm[c];
        }
        let theta = cycle.iter().fold(Root::ONE, |acc, &c| acc + roots[c]);
        for mu in theta.nth_roots(cycle.len() as u64) {
            let mut v = vec![(start, Root::ONE)];
            let mut cur = Root::ONE;
            for &c in &cycle[..cycle.len() - 1] {
                cur = cur + mu - roots[c];
                v.push((perm[c], cur));
            }
            v.sort();
            out.entry(mu).or_default().push(v);
        }
    }
    out
}

/// Irreducible components of `Fix(g)`, in canonical order.
pub fn fixed_components(g: &MonomialAutomorphism) -> Vec<FixedComponent> {
    let sigma = g.sigma();
    let mats = g.mats();
    let m = sigma.len();
    let mut seen = vec![false; m];
    // Per factor cycle, the candidate pieces (one per eigenvalue).
    let mut options: Vec<Vec<Piece>> = Vec::new();
    for i0 in 0..m {
        if seen[i0] {
            continue;
        }
        let mut cycle = vec![i0];
        seen[i0] = true;
        let mut i = sigma[i0];
        while i != i0 {
            seen[i] = true;
            cycle.push(i);
            i = sigma[i];
        }
        let mut transports = vec![MonomialMatrix::identity(mats[i0].size())];
        for &f in &cycle[1..] {
            let t = mats[f].mul(transports.last().expect("nonempty"));
            transports.push(t);
        }
        let monodromy = mats[i0].mul(transports.last().expect("nonempty"));
        let pieces = eigenvectors(&monodromy)
            .into_values()
            .map(|vecs| Piece {
                factors: cycle.clone(),
                basis: vecs
                    .iter()
                    .map(|v| BasisVector {
                        blocks: transports.iter().map(|t| t.apply_sparse(v)).collect(),
                    })
                    .collect(),
            })
            .collect();
        options.push(pieces);
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; options.len()];
    loop {
        let pieces = choice
            .iter()
            .zip(&options)
            .map(|(&c, o)| o[c].clone())
            .collect();
        out.push(FixedComponent::from_pieces(pieces));
        let mut k = 0;
        while k < choice.len() {
            choice[k] += 1;
            if choice[k] < options[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == choice.len() {
            break;
        }
    }
    out.sort();
    out
}

/// Components of `Fix(a) ∩ Fix(x)` for commuting `a` and `x`.
pub fn common_fixed_components(
    a: &MonomialAutomorphism,
    x: &MonomialAutomorphism,
) -> Result<Vec<FixedComponent>, AmbientError> {
    if a.compose(x)? != x.compose(a)? {
        return Err(AmbientError::NonCommuting);
    }
    let mut out = Vec::new();
    for c in fixed_components(a) {
        if c.transform(x) != c {
            continue;
        }
        let y = c.induced(x)?;
        for sub in fixed_components(&y) {
            out.push(c.embed(&sub));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// `(n_1 + 1, ..., n_m + 1)`.
pub fn anticanonical_multidegree(amb: &Ambient) -> Vec<u32> {
    amb.dims().iter().map(|n| n + 1).collect()
}

/// `sum_i d_i e_i` for a curve of multidegree `e`.
pub fn intersect_curve_divisor(c: &FixedComponent, d: &[u32]) -> Result<u64, AmbientError> {
    match (&c.multidegree, c.dimension) {
        (Some(e), 1) if e.len() == d.len() => {
            Ok(e.iter().zip(d).map(|(&a, &b)| a as u64 * b as u64).sum())
        }
        (Some(e), 1) => Err(AmbientError::DegreeLength {
            expected: e.len(),
            got: d.len(),
        }),
        _ => Err(AmbientError::NotACurve {
            dimension: c.dimension,
        }),
    }
}

/// Whether the point `p` (per-factor sparse coordinates) is fixed by `g`.
pub fn fixes_point(g: &MonomialAutomorphism, p: &[SparseVec]) -> bool {
    let img = g.apply(p);
    img.iter().zip(p).all(|(u, v)| {
        u.len() == v.len() && u.iter().zip(v).all(|(a, b)| a.0 == b.0) && {
            let s = u[0].1 - v[0].1;
            u.iter().zip(v).all(|(a, b)| a.1 - b.1 == s)
        }
    })
}
