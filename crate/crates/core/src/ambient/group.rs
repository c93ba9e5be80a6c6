use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;

use super::automorphism::{Ambient, MonomialAutomorphism};
use super::words::{parse_relation, Atom, Word};
use super::AmbientError;

pub const DEFAULT_GROUP_CAP: usize = 512;

/// A finite group of monomial automorphisms with its multiplication table.
///
/// Element 0 is the identity; the rest are in the canonical order of
/// [`MonomialAutomorphism`], so the indexing is independent of how the
/// group was generated.
#[derive(Debug, Clone, Serialize)]
pub struct FiniteActionGroup {
    ambient: Ambient,
    elements: Vec<MonomialAutomorphism>,
    /// `table[i][j]` is the index of `elements[i] o elements[j]`.
    table: Vec<Vec<usize>>,
    generators: BTreeMap<char, usize>,
    #[serde(skip)]
    index: HashMap<MonomialAutomorphism, usize>,
}

/// Closure of the named generators under composition.
pub fn generate_group(
    gens: &[(char, MonomialAutomorphism)],
    cap: usize,
) -> Result<FiniteActionGroup, AmbientError> {
    let ambient = match gens.first() {
        Some((_, g)) => g.ambient().clone(),
        None => return Err(AmbientError::NoGenerators),
    };
    if gens.iter().any(|(_, g)| g.ambient() != &ambient) {
        return Err(AmbientError::AmbientMismatch);
    }
    let identity = MonomialAutomorphism::identity(&ambient);
    let mut seen: HashMap<MonomialAutomorphism, ()> = HashMap::new();
    seen.insert(identity.clone(), ());
    let mut queue = VecDeque::from([identity.clone()]);
    while let Some(x) = queue.pop_front() {
        for (_, g) in gens {
            let y = x.compose_unchecked(g);
            if !seen.contains_key(&y) {
                if seen.len() >= cap {
                    return Err(AmbientError::GroupCapExceeded { cap });
                }
                seen.insert(y.clone(), ());
                queue.push_back(y);
            }
        }
    }
    let mut rest: Vec<_> = seen.into_keys().filter(|g| !g.is_identity()).collect();
    rest.sort();
    let mut elements = vec![identity];
    elements.extend(rest);
    FiniteActionGroup::from_elements(ambient, elements, gens)
}

impl FiniteActionGroup {
    pub fn trivial(ambient: &Ambient) -> Self {
        let e = MonomialAutomorphism::identity(ambient);
        FiniteActionGroup::from_elements(ambient.clone(), vec![e], &[]).expect("closed")
    }

    fn from_elements(
        ambient: Ambient,
        elements: Vec<MonomialAutomorphism>,
        gens: &[(char, MonomialAutomorphism)],
    ) -> Result<Self, AmbientError> {
        let index: HashMap<_, _> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, g)| (g, i))
            .collect();
        let table = elements
            .iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| {
                        index
                            .get(&a.compose_unchecked(b))
                            .copied()
                            .ok_or(AmbientError::NotClosed)
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let generators = gens.iter().map(|(c, g)| (*c, index[g])).collect();
        Ok(FiniteActionGroup {
            ambient,
            elements,
            table,
            generators,
            index,
        })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[MonomialAutomorphism] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &MonomialAutomorphism {
        &self.elements[i]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn index_of(&self, g: &MonomialAutomorphism) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn generator(&self, name: char) -> Option<usize> {
        self.generators.get(&name).copied()
    }

    pub fn generators(&self) -> &BTreeMap<char, usize> {
        &self.generators
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.table[i]
            .iter()
            .position(|&k| k == 0)
            .expect("group has inverses")
    }

    pub fn pow(&self, i: usize, e: i64) -> usize {
        let base = if e < 0 { self.inverse(i) } else { i };
        (0..e.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut x = i;
        while x != 0 {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    /// `b a b^{-1}`.
    pub fn conjugate(&self, b: usize, a: usize) -> usize {
        self.mul(self.mul(b, a), self.inverse(b))
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Indices of `<a>`, in order `1, a, a^2, ...`.
    pub fn cyclic_subgroup(&self, a: usize) -> Vec<usize> {
        let mut out = vec![0];
        let mut x = a;
        while x != 0 {
            out.push(x);
            x = self.mul(x, a);
        }
        out
    }

    pub fn evaluate(&self, w: &Word) -> Result<usize, AmbientError> {
        let mut acc = 0;
        for (atom, e) in &w.0 {
            let base = match atom {
                Atom::Identity => 0,
                Atom::Generator(c) => self
                    .generator(*c)
                    .ok_or(AmbientError::UnknownGenerator(*c))?,
                Atom::Group(inner) => self.evaluate(inner)?,
            };
            acc = self.mul(acc, self.pow(base, *e));
        }
        Ok(acc)
    }

    pub fn evaluate_str(&self, s: &str) -> Result<usize, AmbientError> {
        self.evaluate(&Word::parse(s)?)
    }

    /// Whether all sides of `w1 = w2 = ...` evaluate to the same element.
    pub fn relation_holds(&self, rel: &str) -> Result<bool, AmbientError> {
        let vals = parse_relation(rel)?
            .iter()
            .map(|w| self.evaluate(w))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(vals.windows(2).all(|p| p[0] == p[1]))
    }

    pub fn verify_relations<S: AsRef<str>>(&self, rels: &[S]) -> Result<bool, AmbientError> {
        for r in rels {
            if !self.relation_holds(r.as_ref())? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Number of elements of each order.
    pub fn order_statistics(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for i in 0..self.order() {
            *m.entry(self.element_order(i)).or_insert(0) += 1;
        }
        m
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::ambient::automorphism::tests::{a, b, id2, klein, p1x4};
    use crate::ambient::MonomialMatrix;

    pub fn d16xz2() -> FiniteActionGroup {
        let x = p1x4();
        let g =
            MonomialAutomorphism::new(x.clone(), vec![3, 2, 0, 1], vec![id2(), id2(), id2(), a()])
                .unwrap();
        let h = MonomialAutomorphism::from_matrices(&x, vec![b(), b(), b(), b()]).unwrap();
        let k = MonomialAutomorphism::permutation(&x, vec![3, 2, 1, 0]).unwrap();
        generate_group(&[('g', g), ('h', h), ('k', k)], DEFAULT_GROUP_CAP).unwrap()
    }

    #[test]
    fn klein_four() {
        let (g, h) = klein();
        let grp = generate_group(&[('g', g), ('h', h)], 16).unwrap();
        assert_eq!(grp.order(), 4);
        assert_eq!(grp.order_statistics(), BTreeMap::from([(1, 1), (2, 3)]));
        assert!(grp.verify_relations(&["g^2=1", "h^2=1", "gh=hg"]).unwrap());
        assert!(grp.element(0).is_identity());
    }

    #[test]
    fn dihedral_times_two() {
        let grp = d16xz2();
        assert_eq!(grp.order(), 32);
        let g = grp.generator('g').unwrap();
        assert_eq!(grp.element_order(g), 8);
        assert_eq!(grp.element_order(grp.generator('h').unwrap()), 2);
        let rels = ["g^8=h^2=k^2=1", "gh=hg", "kh=hk", "gk=kg^-1"];
        assert!(grp.verify_relations(&rels).unwrap());
        assert!(!grp.relation_holds("gk=kg").unwrap());
        assert!(grp.relation_holds("g^0=1").unwrap());
        // every element with a k is an involution
        for a in 0..8 {
            for bb in 0..2 {
                let x = grp.evaluate_str(&format!("g^{a}h^{bb}k")).unwrap();
                assert_eq!(grp.element_order(x), 2);
            }
        }
        for i in 0..grp.order() {
            assert_eq!(grp.order() % grp.element_order(i), 0);
        }
    }

    #[test]
    fn errors() {
        let grp = d16xz2();
        assert!(matches!(
            grp.relation_holds("q=1"),
            Err(AmbientError::UnknownGenerator('q'))
        ));
        let (g, h) = klein();
        assert!(matches!(
            generate_group(&[('g', g), ('h', h)], 3),
            Err(AmbientError::GroupCapExceeded { cap: 3 })
        ));
        assert!(matches!(
            generate_group(&[], 3),
            Err(AmbientError::NoGenerators)
        ));
    }

    #[test]
    fn single_involution_and_trivial() {
        let x = Ambient::new(vec![1]).unwrap();
        let s = MonomialAutomorphism::from_matrices(
            &x,
            vec![MonomialMatrix::new(vec![1, 0], vec![crate::ambient::Root::ONE; 2]).unwrap()],
        )
        .unwrap();
        assert_eq!(generate_group(&[('s', s)], 8).unwrap().order(), 2);
        assert_eq!(FiniteActionGroup::trivial(&x).order(), 1);
    }

    #[test]
    fn table_is_closed_and_canonical() {
        let grp = d16xz2();
        for row in grp.table() {
            assert!(row.iter().all(|&k| k < grp.order()));
        }
        // Reordering generators gives the same element list.
        let again = generate_group(
            &[
                ('k', grp.element(grp.generator('k').unwrap()).clone()),
                ('g', grp.element(grp.generator('g').unwrap()).clone()),
                ('h', grp.element(grp.generator('h').unwrap()).clone()),
            ],
            64,
        )
        .unwrap();
        assert_eq!(again.elements(), grp.elements());
    }
}
