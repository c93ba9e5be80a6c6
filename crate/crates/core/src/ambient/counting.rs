use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::fixed::{common_fixed_components, intersect_curve_divisor, FixedComponent};
use super::group::FiniteActionGroup;
use super::sections::{base_point_check, restricts_nonzero_on, InvariantSection};
use super::AmbientError;

/// `(1/|G|) sum_g |Fix(g)|`, with `fix_sizes[i]` belonging to element `i`.
pub fn burnside_count(group: &FiniteActionGroup, fix_sizes: &[u64]) -> Result<u64, AmbientError> {
    if fix_sizes.len() != group.order() {
        return Err(AmbientError::FixSizes {
            expected: group.order(),
            got: fix_sizes.len(),
        });
    }
    let total: u64 = fix_sizes.iter().sum();
    let n = group.order() as u64;
    if !total.is_multiple_of(n) {
        return Err(AmbientError::NonIntegralAverage { total, order: n });
    }
    Ok(total / n)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentOrbits {
    pub components: usize,
    pub orbits: usize,
    pub orbit_sizes: Vec<usize>,
}

/// Orbits of the group on the union of the given fixed components, where
/// `tagged` pairs each element of a conjugation-closed family with the
/// components of its fixed locus. Uses `b(Fix(a)) = Fix(b a b^{-1})`.
pub fn component_orbits(
    group: &FiniteActionGroup,
    tagged: &[(usize, Vec<FixedComponent>)],
) -> Result<ComponentOrbits, AmbientError> {
    let by_element: BTreeMap<usize, &Vec<FixedComponent>> =
        tagged.iter().map(|(a, cs)| (*a, cs)).collect();
    for &a in by_element.keys() {
        for b in 0..group.order() {
            if !by_element.contains_key(&group.conjugate(b, a)) {
                return Err(AmbientError::NotConjugationClosed);
            }
        }
    }
    let mut ids: BTreeMap<&FixedComponent, usize> = BTreeMap::new();
    for cs in by_element.values() {
        for c in cs.iter() {
            let n = ids.len();
            ids.entry(c).or_insert(n);
        }
    }
    let mut parent: Vec<usize> = (0..ids.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (&a, cs) in &by_element {
        for b in 0..group.order() {
            let target = by_element[&group.conjugate(b, a)];
            for c in cs.iter() {
                let moved = c.transform(group.element(b));
                if !target.contains(&moved) {
                    return Err(AmbientError::ComponentNotInvariant);
                }
                let (x, y) = (find(&mut parent, ids[c]), find(&mut parent, ids[&moved]));
                parent[x] = y;
            }
        }
    }
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..parent.len() {
        *sizes.entry(find(&mut parent, i)).or_insert(0) += 1;
    }
    let mut orbit_sizes: Vec<usize> = sizes.into_values().collect();
    orbit_sizes.sort();
    Ok(ComponentOrbits {
        components: ids.len(),
        orbits: orbit_sizes.len(),
        orbit_sizes,
    })
}

/// How a fixed locus on the ambient space meets a generic member `Y` of the
/// linear system spanned by `basis`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixedOnY {
    /// Finitely many points, with their number.
    Isolated(u64),
    /// Some component meets `Y` in positive dimension.
    NonIsolated,
}

/// Counts `Y ∩ C` over the components `C`: a point counts once if every
/// section vanishes there, a curve not contained in `Y` contributes `Y.C`,
/// and anything of dimension two or more (or a curve inside `Y`) makes the
/// intersection non-isolated.
pub fn fixed_on_y(
    group: &FiniteActionGroup,
    basis: &[InvariantSection],
    divisor: &[u32],
    comps: &[FixedComponent],
) -> Result<FixedOnY, AmbientError> {
    let amb = group.ambient();
    let mut n = 0;
    for c in comps {
        match c.dimension {
            0 => {
                let p = c.as_point().expect("point");
                if !base_point_check(amb, basis, &p)? {
                    n += 1;
                }
            }
            1 => {
                if !restricts_nonzero_on(amb, basis, c)? {
                    return Ok(FixedOnY::NonIsolated);
                }
                n += intersect_curve_divisor(c, divisor)?;
            }
            _ => return Ok(FixedOnY::NonIsolated),
        }
    }
    Ok(FixedOnY::Isolated(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurnsideReport {
    /// `|S ∩ Fix(x)|` for each element `x`, in element order.
    pub terms: Vec<u64>,
    pub count: u64,
}

/// Burnside count of the orbits on `S = union of Fix_Y(a)` over the focus
/// elements `a`, which must have isolated fixed points on `Y`, be closed
/// under conjugation, and have pairwise disjoint fixed sets on `Y`.
pub fn burnside_on_fixed_points(
    group: &FiniteActionGroup,
    focus: &[usize],
    basis: &[InvariantSection],
    divisor: &[u32],
) -> Result<BurnsideReport, AmbientError> {
    for &a in focus {
        for b in 0..group.order() {
            if !focus.contains(&group.conjugate(b, a)) {
                return Err(AmbientError::NotConjugationClosed);
            }
        }
    }
    let own: Vec<u64> = focus
        .iter()
        .map(|&a| {
            let comps = super::fixed::fixed_components(group.element(a));
            match fixed_on_y(group, basis, divisor, &comps)? {
                FixedOnY::Isolated(n) => Ok(n),
                FixedOnY::NonIsolated => Err(AmbientError::NotIsolatedOnY),
            }
        })
        .collect::<Result<_, AmbientError>>()?;
    let common_on_y = |a: usize, x: usize| -> Result<u64, AmbientError> {
        let comps = common_fixed_components(group.element(a), group.element(x))?;
        match fixed_on_y(group, basis, divisor, &comps)? {
            FixedOnY::Isolated(n) => Ok(n),
            FixedOnY::NonIsolated => Err(AmbientError::NotIsolatedOnY),
        }
    };
    for (i, &a) in focus.iter().enumerate() {
        for &b in &focus[i + 1..] {
            if common_on_y(a, b)? != 0 {
                return Err(AmbientError::OverlappingFixedSets);
            }
        }
    }
    let terms = (0..group.order())
        .map(|x| {
            focus.iter().zip(&own).try_fold(0, |acc, (&a, &n)| {
                let t = if group.cyclic_subgroup(a).contains(&x) {
                    n
                } else {
                    common_on_y(a, x)?
                };
                Ok::<u64, AmbientError>(acc + t)
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let count = burnside_count(group, &terms)?;
    Ok(BurnsideReport { terms, count })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::automorphism::tests::{klein, p1x4};
    use crate::ambient::fixed::fixed_components;
    use crate::ambient::group::generate_group;
    use crate::ambient::sections::invariant_sections;

    #[test]
    fn plain_burnside() {
        let (g, h) = klein();
        let grp = generate_group(&[('g', g), ('h', h)], 8).unwrap();
        let gi = grp.generator('g').unwrap();
        let hi = grp.generator('h').unwrap();
        let gh = grp.mul(gi, hi);
        let mut sizes = vec![0; 4];
        sizes[0] = 32;
        sizes[gi] = 16;
        sizes[hi] = 16;
        sizes[gh] = 0;
        assert_eq!(burnside_count(&grp, &sizes).unwrap(), 16);
        assert_eq!(
            burnside_count(&FiniteActionGroup::trivial(&p1x4()), &[7]).unwrap(),
            7
        );
        let one = generate_group(&[('g', grp.element(gi).clone())], 4).unwrap();
        assert!(matches!(
            burnside_count(&one, &[3, 0]),
            Err(AmbientError::NonIntegralAverage { total: 3, order: 2 })
        ));
        assert!(burnside_count(&one, &[3]).is_err());
    }

    #[test]
    fn klein_orbit_count_on_y() {
        let (g, h) = klein();
        let grp = generate_group(&[('g', g), ('h', h)], 8).unwrap();
        let d = [2, 2, 2, 2];
        let basis = invariant_sections(&grp, &d).unwrap();
        let focus = [grp.generator('g').unwrap(), grp.generator('h').unwrap()];
        let rep = burnside_on_fixed_points(&grp, &focus, &basis, &d).unwrap();
        let mut terms = rep.terms.clone();
        terms.sort();
        assert_eq!(terms, vec![0, 16, 16, 32]);
        assert_eq!(rep.count, 16);
    }

    #[test]
    fn orbits_of_curves() {
        let (g, h) = klein();
        let grp = generate_group(&[('g', g), ('h', h)], 8).unwrap();
        let gi = grp.generator('g').unwrap();
        let tagged = vec![(gi, fixed_components(grp.element(gi)))];
        let rep = component_orbits(&grp, &tagged).unwrap();
        assert_eq!(rep.components, 4);
        // h swaps the last two factors, exchanging (P,P,Q1,Q2) and (P,P,Q2,Q1).
        assert_eq!(rep.orbits, 3);
        assert_eq!(rep.orbit_sizes, vec![1, 1, 2]);

        // Single element fixing everything: the identity has one component.
        let tagged = vec![(0, fixed_components(grp.element(0)))];
        assert_eq!(component_orbits(&grp, &tagged).unwrap().orbits, 1);
    }

    #[test]
    fn conjugation_closure_is_required() {
        let grp = crate::ambient::group::tests::d16xz2();
        let k = grp.generator('k').unwrap();
        let tagged = vec![(k, fixed_components(grp.element(k)))];
        assert!(matches!(
            component_orbits(&grp, &tagged),
            Err(AmbientError::NotConjugationClosed)
        ));
    }
}
