//! Invariant multihomogeneous polynomials under a finite monomial action.
//!
//! Pulling a monomial back along `g` gives another monomial times a root of
//! unity, so an invariant polynomial is a combination of orbit sums with
//! root-of-unity weights. An orbit supports an invariant exactly when these
//! weights can be assigned consistently.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::automorphism::{invert_permutation, Ambient, MonomialAutomorphism};
use super::fixed::{FixedComponent, SparseVec};
use super::group::FiniteActionGroup;
use super::root::{common_order, Root};
use super::AmbientError;
use crate::exactnum::CyclotomicNumber;

/// Exponents of a monomial, factor by factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(pub Vec<Vec<u32>>);

impl Monomial {
    pub fn multidegree(&self) -> Vec<u32> {
        self.0.iter().map(|e| e.iter().sum()).collect()
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for (i, exps) in self.0.iter().enumerate() {
            for (a, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(format!("x{i}_{a}")),
                    _ => parts.push(format!("x{i}_{a}^{e}")),
                }
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// `sum c_alpha x^alpha` with root-of-unity coefficients; the leading
/// (smallest) monomial has coefficient 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSection {
    pub terms: Vec<(Monomial, Root)>,
}

/// All monomials of the given multidegree, in increasing order.
pub fn monomials(amb: &Ambient, d: &[u32]) -> Vec<Monomial> {
    let per_factor: Vec<Vec<Vec<u32>>> = (0..amb.factors())
        .map(|i| compositions(d[i], amb.coords(i)))
        .collect();
    let mut out = vec![Vec::new()];
    for options in &per_factor {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Vec<u32>>| {
                options.iter().map(move |o| {
                    let mut p = prefix.clone();
                    p.push(o.clone());
                    p
                })
            })
            .collect();
    }
    let mut out: Vec<Monomial> = out.into_iter().map(Monomial).collect();
    out.sort();
    out
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}

/// `x^alpha (g x) = chi * x^beta`.
pub fn pullback(g: &MonomialAutomorphism, alpha: &Monomial) -> (Root, Monomial) {
    let inv = invert_permutation(g.sigma());
    let mut beta: Vec<Vec<u32>> = alpha.0.iter().map(|e| vec![0; e.len()]).collect();
    let mut chi = Root::ONE;
    for (i, exps) in alpha.0.iter().enumerate() {
        let mat = &g.mats()[i];
        for (a, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            chi = chi + mat.roots()[a].pow(e as i64);
            beta[inv[i]][mat.perm()[a]] = e;
        }
    }
    (chi, Monomial(beta))
}

/// A basis of the polynomials of multidegree `d` fixed by every element.
pub fn invariant_sections(
    group: &FiniteActionGroup,
    d: &[u32],
) -> Result<Vec<InvariantSection>, AmbientError> {
    let amb = group.ambient();
    if d.len() != amb.factors() {
        return Err(AmbientError::DegreeLength {
            expected: amb.factors(),
            got: d.len(),
        });
    }
    let degree_preserved = group
        .elements()
        .iter()
        .all(|g| (0..d.len()).all(|i| d[g.sigma()[i]] == d[i]));
    if !degree_preserved {
        return Ok(Vec::new());
    }
    let all = monomials(amb, d);
    let mut visited = std::collections::HashSet::new();
    let mut basis = Vec::new();
    for alpha0 in &all {
        if visited.contains(alpha0) {
            continue;
        }
        let mut coeffs: BTreeMap<Monomial, Root> = BTreeMap::new();
        let mut consistent = true;
        for g in group.elements() {
            let (chi, beta) = pullback(g, alpha0);
            match coeffs.get(&beta) {
                Some(&c) if c != chi => consistent = false,
                Some(_) => {}
                None => {
                    coeffs.insert(beta, chi);
                }
            }
        }
        visited.extend(coeffs.keys().cloned());
        if !consistent {
            continue;
        }
        let section = InvariantSection {
            terms: coeffs.into_iter().collect(),
        };
        if group.elements().iter().all(|g| is_fixed_by(&section, g)) {
            basis.push(normalize(section));
        }
    }
    Ok(basis)
}

fn normalize(mut s: InvariantSection) -> InvariantSection {
    let c0 = s.terms[0].1;
    for t in &mut s.terms {
        t.1 = t.1 - c0;
    }
    s
}

/// `f(g x) = f(x)` as polynomials.
pub fn is_fixed_by(s: &InvariantSection, g: &MonomialAutomorphism) -> bool {
    let coeffs: BTreeMap<&Monomial, Root> = s.terms.iter().map(|(m, c)| (m, *c)).collect();
    s.terms.iter().all(|(alpha, c)| {
        let (chi, beta) = pullback(g, alpha);
        coeffs.get(&beta) == Some(&(*c + chi))
    })
}

fn check_point(amb: &Ambient, p: &[SparseVec]) -> Result<(), AmbientError> {
    if p.len() != amb.factors() {
        return Err(AmbientError::MalformedPoint(format!(
            "{} factors given, ambient has {}",
            p.len(),
            amb.factors()
        )));
    }
    for (i, v) in p.iter().enumerate() {
        if v.is_empty() {
            return Err(AmbientError::MalformedPoint(format!(
                "factor {i} is the zero vector"
            )));
        }
        if v.iter().any(|&(a, _)| a >= amb.coords(i)) || v.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(AmbientError::MalformedPoint(format!(
                "factor {i}: bad coordinates"
            )));
        }
    }
    Ok(())
}

/// Exact value of a section at a point with root-of-unity coordinates.
pub fn evaluate(s: &InvariantSection, p: &[SparseVec]) -> CyclotomicNumber {
    let coord = |i: usize, a: usize| p[i].iter().find(|e| e.0 == a).map(|e| e.1);
    let mut exps = Vec::new();
    'terms: for (alpha, c) in &s.terms {
        let mut v = *c;
        for (i, e) in alpha.0.iter().enumerate() {
            for (a, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match coord(i, a) {
                    Some(r) => v = v + r.pow(k as i64),
                    None => continue 'terms,
                }
            }
        }
        exps.push(v);
    }
    let n = common_order(&exps);
    CyclotomicNumber::from_power_sum(
        n,
        exps.iter()
            .map(|r| (r.exponent_in(n) as i64, crate::exactnum::rat_int(1))),
    )
    .expect("n > 0")
}

/// True iff some basis element is nonzero at `p`, i.e. the generic member
/// of the linear system avoids `p`.
pub fn base_point_check(
    amb: &Ambient,
    basis: &[InvariantSection],
    p: &[SparseVec],
) -> Result<bool, AmbientError> {
    check_point(amb, p)?;
    Ok(basis.iter().any(|s| !evaluate(s, p).is_zero()))
}

/// True iff some basis element does not vanish identically on `c`.
pub fn restricts_nonzero_on(
    amb: &Ambient,
    basis: &[InvariantSection],
    c: &FixedComponent,
) -> Result<bool, AmbientError> {
    // coordinate (factor, a) -> (parameter id, root)
    let mut subst: Vec<Vec<Option<(usize, Root)>>> = (0..amb.factors())
        .map(|i| vec![None; amb.coords(i)])
        .collect();
    let mut params = 0;
    let mut covered = vec![false; amb.factors()];
    for piece in &c.pieces {
        for w in &piece.basis {
            for (j, &f) in piece.factors.iter().enumerate() {
                if f >= amb.factors() {
                    return Err(AmbientError::UnsupportedComponent(
                        "factor out of range".into(),
                    ));
                }
                covered[f] = true;
                for &(a, r) in &w.blocks[j] {
                    let slot = subst[f].get_mut(a).ok_or_else(|| {
                        AmbientError::UnsupportedComponent("coordinate out of range".into())
                    })?;
                    if slot.is_some() {
                        return Err(AmbientError::UnsupportedComponent(
                            "overlapping parameter directions".into(),
                        ));
                    }
                    *slot = Some((params, r));
                }
            }
            params += 1;
        }
    }
    if covered.iter().any(|&x| !x) {
        return Err(AmbientError::UnsupportedComponent(
            "component misses a factor".into(),
        ));
    }
    for s in basis {
        let mut collected: BTreeMap<Vec<u32>, Vec<Root>> = BTreeMap::new();
        'terms: for (alpha, coeff) in &s.terms {
            let mut t = vec![0u32; params];
            let mut v = *coeff;
            for (i, e) in alpha.0.iter().enumerate() {
                for (a, &k) in e.iter().enumerate() {
                    if k == 0 {
                        continue;
                    }
                    match subst[i][a] {
                        Some((pid, r)) => {
                            t[pid] += k;
                            v = v + r.pow(k as i64);
                        }
                        None => continue 'terms,
                    }
                }
            }
            collected.entry(t).or_default().push(v);
        }
        for roots in collected.values() {
            let n = common_order(roots);
            let sum = CyclotomicNumber::from_power_sum(
                n,
                roots
                    .iter()
                    .map(|r| (r.exponent_in(n) as i64, crate::exactnum::rat_int(1))),
            )
            .expect("n > 0");
            if !sum.is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
