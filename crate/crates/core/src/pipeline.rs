//! Worked examples on products of projective spaces, run end to end.
//!
//! An example is a data file naming the generators of a group of monomial
//! automorphisms, the relations they should satisfy, the elements whose
//! fixed loci matter and the numbers expected from them. [`run_example`]
//! builds the group, computes fixed loci, intersects them with the generic
//! invariant member `Y` of the divisor class, and cross-checks isolated
//! fixed-point counts against the Lefschetz solver.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ambient::base_point_check;
use crate::ambient::{
    anticanonical_multidegree, burnside_on_fixed_points, component_orbits, fixed_components,
    fixed_on_y, generate_group, intersect_curve_divisor, invariant_sections, Ambient, AmbientError,
    BurnsideReport, ComponentOrbits, FiniteActionGroup, FixedComponent, FixedOnY,
    MonomialAutomorphism, DEFAULT_GROUP_CAP,
};
use crate::exactnum::is_prime;
use crate::lefschetz::{solve_configs_with, ConfigError};
use crate::par::{self, Execution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("unknown example '{0}' (known: p2p2, fermat5, p1x4-klein, d16xz2)")]
    UnknownExample(String),
    #[error("cannot parse example: {0}")]
    Parse(String),
    #[error("generator name '{0}' must be a single letter")]
    GeneratorName(String),
    #[error("generator '{name}' acts on {got:?}, example declares {expected:?}")]
    GeneratorAmbient {
        name: char,
        expected: Vec<u32>,
        got: Vec<u32>,
    },
    #[error(transparent)]
    Ambient(#[from] AmbientError),
    #[error(transparent)]
    Config(#[from] ConfigError),
}

const BUILTIN: [(&str, &str); 4] = [
    ("p2p2", include_str!("../data/examples/p2p2.json")),
    ("fermat5", include_str!("../data/examples/fermat5.json")),
    (
        "p1x4-klein",
        include_str!("../data/examples/p1x4-klein.json"),
    ),
    ("d16xz2", include_str!("../data/examples/d16xz2.json")),
];

pub fn builtin_names() -> Vec<&'static str> {
    BUILTIN.iter().map(|(n, _)| *n).collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentCounts {
    pub total: usize,
    pub curves: usize,
    pub points: usize,
}

/// Numbers an example is expected to reproduce. Keys are group words.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_order: Option<usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub components: BTreeMap<String, ComponentCounts>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub fixed_on_y: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub fixed_dimension: BTreeMap<String, u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub burnside: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_orbits: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExampleDef {
    pub name: String,
    #[serde(default)]
    pub summary: String,
    pub dims: Vec<u32>,
    pub generators: BTreeMap<String, MonomialAutomorphism>,
    #[serde(default)]
    pub relations: Vec<String>,
    /// Multidegree of `Y`; anticanonical when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisor: Option<Vec<u32>>,
    /// Elements whose fixed loci on `Y` are reported and counted.
    #[serde(default)]
    pub focus: Vec<String>,
    /// Elements expected to act freely on `Y`.
    #[serde(default)]
    pub free: Vec<String>,
    /// Count orbits on the union of the focus fixed sets on `Y`.
    #[serde(default)]
    pub burnside: bool,
    /// Seeds of a family whose conjugation closure is used for component orbits.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub orbit_family: Vec<String>,
    #[serde(default)]
    pub expect: Expectations,
}

impl ExampleDef {
    pub fn builtin(name: &str) -> Result<Self, PipelineError> {
        let (_, src) = BUILTIN
            .iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| PipelineError::UnknownExample(name.to_string()))?;
        Self::from_json(src)
    }

    pub fn from_json(s: &str) -> Result<Self, PipelineError> {
        serde_json::from_str(s).map_err(|e| PipelineError::Parse(e.to_string()))
    }

    fn named_generators(&self) -> Result<Vec<(char, MonomialAutomorphism)>, PipelineError> {
        self.generators
            .iter()
            .map(|(name, g)| {
                let mut cs = name.chars();
                match (cs.next(), cs.next()) {
                    (Some(c), None) if c.is_ascii_alphabetic() => {
                        if g.ambient().dims() != self.dims.as_slice() {
                            return Err(PipelineError::GeneratorAmbient {
                                name: c,
                                expected: self.dims.clone(),
                                got: g.ambient().dims().to_vec(),
                            });
                        }
                        Ok((c, g.clone()))
                    }
                    _ => Err(PipelineError::GeneratorName(name.clone())),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub relation: String,
    pub holds: bool,
}

/// One ambient fixed component with its meeting data against `Y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub component: FixedComponent,
    /// `Y.C` for a curve.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_degree: Option<u64>,
    /// Whether every invariant section vanishes at a point.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_point: Option<bool>,
}

/// Trace exponents `r` for which the solver admits a configuration with
/// exactly the observed number of isolated fixed points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzCrossCheck {
    pub p: u32,
    pub points: u64,
    pub trace_exponents: Vec<u32>,
    pub configs: usize,
}

impl LefschetzCrossCheck {
    pub fn consistent(&self) -> bool {
        self.configs > 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementReport {
    pub word: String,
    pub order: usize,
    /// Largest dimension of an ambient fixed component, if any.
    pub fixed_dimension: Option<u32>,
    pub components: Vec<ComponentSummary>,
    pub on_y: FixedOnY,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lefschetz: Option<LefschetzCrossCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub family: Vec<String>,
    #[serde(flatten)]
    pub orbits: ComponentOrbits,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

impl Check {
    fn new(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Check {
            name: name.into(),
            passed: expected == actual,
            expected,
            actual,
        }
    }

    fn at_least(name: impl Into<String>, min: usize, actual: usize) -> Self {
        Check {
            name: name.into(),
            expected: format!(">= {min}"),
            actual: actual.to_string(),
            passed: actual >= min,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleReport {
    pub name: String,
    pub summary: String,
    pub ambient: Vec<u32>,
    pub divisor: Vec<u32>,
    pub group_order: usize,
    /// Number of elements of each order.
    pub order_statistics: BTreeMap<usize, usize>,
    pub relations: Vec<RelationCheck>,
    pub invariant_sections: usize,
    pub elements: Vec<ElementReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub burnside: Option<BurnsideReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbits: Option<OrbitReport>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl ExampleReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn element(&self, word: &str) -> Option<&ElementReport> {
        self.elements.iter().find(|e| e.word == word)
    }
}

pub fn run_builtin(name: &str) -> Result<ExampleReport, PipelineError> {
    run_example(&ExampleDef::builtin(name)?)
}

pub fn run_example(def: &ExampleDef) -> Result<ExampleReport, PipelineError> {
    run_example_with(Execution::default(), def)
}

pub fn run_example_with(exec: Execution, def: &ExampleDef) -> Result<ExampleReport, PipelineError> {
    let ambient = Ambient::new(def.dims.clone())?;
    let group = generate_group(&def.named_generators()?, DEFAULT_GROUP_CAP)?;
    let divisor = def
        .divisor
        .clone()
        .unwrap_or_else(|| anticanonical_multidegree(&ambient));
    if divisor.len() != ambient.factors() {
        return Err(AmbientError::DegreeLength {
            expected: ambient.factors(),
            got: divisor.len(),
        }
        .into());
    }
    let relations = def
        .relations
        .iter()
        .map(|r| {
            Ok(RelationCheck {
                relation: r.clone(),
                holds: group.relation_holds(r)?,
            })
        })
        .collect::<Result<Vec<_>, PipelineError>>()?;
    let basis = invariant_sections(&group, &divisor)?;

    let mut words: Vec<&String> = Vec::new();
    let keyed = def
        .expect
        .components
        .keys()
        .chain(def.expect.fixed_on_y.keys());
    for w in def
        .focus
        .iter()
        .chain(&def.free)
        .chain(keyed)
        .chain(def.expect.fixed_dimension.keys())
    {
        if !words.contains(&w) {
            words.push(w);
        }
    }
    let indexed = words
        .iter()
        .map(|w| Ok(((*w).clone(), group.evaluate_str(w)?)))
        .collect::<Result<Vec<_>, PipelineError>>()?;
    let elements = par::map(exec, &indexed, |(w, i)| {
        element_report(exec, &group, &basis, &divisor, w, *i)
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;

    let mut checks = Vec::new();
    if let Some(n) = def.expect.group_order {
        checks.push(Check::new("group order", n, group.order()));
    }
    for r in &relations {
        checks.push(Check::new(
            format!("relation {}", r.relation),
            true,
            r.holds,
        ));
    }
    let find = |w: &str| {
        elements
            .iter()
            .find(|e| e.word == w)
            .expect("word evaluated")
    };
    for (w, want) in &def.expect.components {
        let comps = &find(w).components;
        let count = |d: u32| comps.iter().filter(|c| c.component.dimension == d).count();
        let got = ComponentCounts {
            total: comps.len(),
            curves: count(1),
            points: count(0),
        };
        checks.push(Check::new(
            format!("components of {w}"),
            counts(want),
            counts(&got),
        ));
        let degrees: BTreeSet<u64> = comps.iter().filter_map(|c| c.y_degree).collect();
        if got.curves > 0 {
            let shown: Vec<String> = degrees.iter().map(u64::to_string).collect();
            checks.push(Check {
                name: format!("curves of {w} meet Y equally"),
                expected: "one value".into(),
                actual: shown.join(","),
                passed: degrees.len() == 1,
            });
        }
    }
    for (w, n) in &def.expect.fixed_on_y {
        checks.push(Check::new(
            format!("fixed points of {w} on Y"),
            on_y(FixedOnY::Isolated(*n)),
            on_y(find(w).on_y),
        ));
    }
    for w in &def.free {
        checks.push(Check::new(
            format!("{w} acts freely on Y"),
            on_y(FixedOnY::Isolated(0)),
            on_y(find(w).on_y),
        ));
    }
    for (w, d) in &def.expect.fixed_dimension {
        let got = find(w)
            .fixed_dimension
            .map_or("empty".to_string(), |x| x.to_string());
        checks.push(Check::new(format!("fixed dimension of {w} on X"), d, got));
    }
    for e in &elements {
        if let Some(l) = &e.lefschetz {
            checks.push(Check {
                name: format!("Lefschetz admits {} fixed points of {}", l.points, e.word),
                expected: "some trace".into(),
                actual: format!("{:?}", l.trace_exponents),
                passed: l.consistent(),
            });
        }
    }

    let mut burnside = None;
    if def.burnside {
        let focus = def
            .focus
            .iter()
            .map(|w| group.evaluate_str(w))
            .collect::<Result<Vec<_>, _>>()?;
        let expected = def
            .expect
            .burnside
            .map_or("a count".to_string(), |n| n.to_string());
        match burnside_on_fixed_points(&group, &focus, &basis, &divisor) {
            Ok(rep) => {
                let mut c = Check::new("Burnside orbit count", &expected, rep.count);
                c.passed |= def.expect.burnside.is_none();
                checks.push(c);
                burnside = Some(rep);
            }
            Err(e) => checks.push(Check {
                name: "Burnside orbit count".into(),
                expected,
                actual: e.to_string(),
                passed: false,
            }),
        }
    }

    let mut orbits = None;
    if !def.orbit_family.is_empty() {
        let seeds = def
            .orbit_family
            .iter()
            .map(|w| group.evaluate_str(w))
            .collect::<Result<Vec<_>, _>>()?;
        let family = conjugation_closure(&group, &seeds);
        let tagged: Vec<(usize, Vec<FixedComponent>)> =
            par::map(exec, &family, |&a| (a, fixed_components(group.element(a))));
        let rep = component_orbits(&group, &tagged)?;
        if let Some(min) = def.expect.min_orbits {
            checks.push(Check::at_least("component orbits", min, rep.orbits));
        }
        orbits = Some(OrbitReport {
            family: family
                .iter()
                .map(|&a| group.element(a).to_string())
                .collect(),
            orbits: rep,
        });
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(ExampleReport {
        name: def.name.clone(),
        summary: def.summary.clone(),
        ambient: def.dims.clone(),
        divisor,
        group_order: group.order(),
        order_statistics: group.order_statistics(),
        relations,
        invariant_sections: basis.len(),
        elements,
        burnside,
        orbits,
        checks,
        passed,
    })
}

fn counts(c: &ComponentCounts) -> String {
    format!("{} ({} curves, {} points)", c.total, c.curves, c.points)
}

fn on_y(f: FixedOnY) -> String {
    match f {
        FixedOnY::Isolated(n) => format!("{n} isolated"),
        FixedOnY::NonIsolated => "not isolated".into(),
    }
}

fn conjugation_closure(group: &FiniteActionGroup, seeds: &[usize]) -> Vec<usize> {
    let mut out: BTreeSet<usize> = BTreeSet::new();
    for &a in seeds {
        for b in 0..group.order() {
            out.insert(group.conjugate(b, a));
        }
    }
    out.into_iter().collect()
}

fn element_report(
    exec: Execution,
    group: &FiniteActionGroup,
    basis: &[crate::ambient::InvariantSection],
    divisor: &[u32],
    word: &str,
    index: usize,
) -> Result<ElementReport, PipelineError> {
    let comps = fixed_components(group.element(index));
    let components = comps
        .iter()
        .map(|c| {
            let (mut y_degree, mut base_point) = (None, None);
            match c.dimension {
                0 => {
                    base_point = Some(!base_point_check(
                        group.ambient(),
                        basis,
                        &c.as_point().expect("point"),
                    )?)
                }
                1 => y_degree = Some(intersect_curve_divisor(c, divisor)?),
                _ => {}
            }
            Ok(ComponentSummary {
                component: c.clone(),
                y_degree,
                base_point,
            })
        })
        .collect::<Result<Vec<_>, PipelineError>>()?;
    let on_y = fixed_on_y(group, basis, divisor, &comps)?;
    let order = group.element_order(index);
    let lefschetz = match on_y {
        FixedOnY::Isolated(n) if n > 0 && is_prime(order as u64) => {
            Some(lefschetz_cross_check(exec, order as u32, n)?)
        }
        _ => None,
    };
    Ok(ElementReport {
        word: word.to_string(),
        order,
        fixed_dimension: comps.iter().map(|c| c.dimension).max(),
        components,
        on_y,
        lefschetz,
    })
}

/// Only nontrivial traces are tried: an automorphism with `r = 0` has no
/// isolated-point constraint beyond evenness, so it would not discriminate.
fn lefschetz_cross_check(
    exec: Execution,
    p: u32,
    points: u64,
) -> Result<LefschetzCrossCheck, PipelineError> {
    let mut trace_exponents = Vec::new();
    let mut configs = 0;
    if let Ok(cap) = u32::try_from(points) {
        for r in 1..p {
            let n = solve_configs_with(exec, p as u64, r as i64, cap)?
                .iter()
                .filter(|c| c.len() as u64 == points)
                .count();
            if n > 0 {
                trace_exponents.push(r);
                configs += n;
            }
        }
    }
    Ok(LefschetzCrossCheck {
        p,
        points,
        trace_exponents,
        configs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_parse_and_reject_unknown() {
        for n in builtin_names() {
            let s = ExampleDef::builtin(n).unwrap();
            assert_eq!(s.name, n);
        }
        assert_eq!(
            ExampleDef::builtin("nope"),
            Err(PipelineError::UnknownExample("nope".into()))
        );
        assert!(matches!(
            ExampleDef::from_json("{"),
            Err(PipelineError::Parse(_))
        ));
    }

    #[test]
    fn p2p2_runs_clean() {
        let rep = run_builtin("p2p2").unwrap();
        assert!(rep.passed, "{:#?}", rep.checks);
        let g = rep.element("g").unwrap();
        assert_eq!(g.on_y, FixedOnY::Isolated(9));
        let l = g.lefschetz.as_ref().unwrap();
        assert_eq!(l.trace_exponents, vec![1, 2]);
    }

    #[test]
    fn fermat_points_avoided() {
        let rep = run_builtin("fermat5").unwrap();
        assert!(rep.passed, "{:#?}", rep.checks);
        let g = rep.element("g").unwrap();
        assert!(g
            .components
            .iter()
            .filter(|c| c.component.dimension == 0)
            .all(|c| c.base_point == Some(false)));
        assert_eq!(
            g.components
                .iter()
                .filter_map(|c| c.y_degree)
                .collect::<Vec<_>>(),
            vec![5]
        );
    }

    #[test]
    fn bad_generator_names() {
        let mut s = ExampleDef::builtin("p2p2").unwrap();
        let g = s.generators.remove("g").unwrap();
        s.generators.insert("gg".into(), g.clone());
        assert_eq!(
            run_example(&s).unwrap_err(),
            PipelineError::GeneratorName("gg".into())
        );
        s.generators.clear();
        s.generators.insert("g".into(), g);
        s.dims = vec![2, 2, 1];
        assert!(matches!(
            run_example(&s),
            Err(PipelineError::GeneratorAmbient { .. })
        ));
    }

    #[test]
    fn sequential_matches_parallel() {
        let s = ExampleDef::builtin("p1x4-klein").unwrap();
        assert_eq!(
            run_example_with(Execution::Sequential, &s).unwrap(),
            run_example_with(Execution::Parallel, &s).unwrap()
        );
    }
}
