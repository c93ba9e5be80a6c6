use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::analysis::{order3_analysis, order5_analysis, Order3Record, Order5Record};
use super::sums::{contribution, cube_of_triangular, s_n};
use super::ConfigError;
use crate::exactnum::CyclotomicNumber;
use crate::localtypes::{check_prime, LocalType, SingularityClassification};

/// The isolated fixed points of a prime-order automorphism, together with
/// the trace exponent `r` of its action on `H^{0,3}`.
///
/// Construction enforces that every point is isolated, of order `p`, and
/// has `s = -r (mod p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawConfig", into = "RawConfig")]
pub struct FixedConfig {
    p: u32,
    r: u32,
    points: BTreeMap<LocalType, u32>,
}

#[derive(Serialize, Deserialize)]
struct RawConfig {
    p: u64,
    r: i64,
    points: Vec<RawPoint>,
}

#[derive(Serialize, Deserialize)]
struct RawPoint {
    exps: [i64; 3],
    multiplicity: u32,
}

impl TryFrom<RawConfig> for FixedConfig {
    type Error = ConfigError;

    fn try_from(raw: RawConfig) -> Result<Self, ConfigError> {
        let points = raw
            .points
            .iter()
            .map(|pt| Ok((LocalType::new(raw.p, pt.exps)?, pt.multiplicity)))
            .collect::<Result<Vec<_>, ConfigError>>()?;
        FixedConfig::new(raw.p, raw.r, points)
    }
}

impl From<FixedConfig> for RawConfig {
    fn from(c: FixedConfig) -> Self {
        RawConfig {
            p: c.p.into(),
            r: c.r.into(),
            points: c
                .points
                .iter()
                .map(|(t, &m)| RawPoint {
                    exps: t.exps().map(i64::from),
                    multiplicity: m,
                })
                .collect(),
        }
    }
}

impl FixedConfig {
    pub fn new<I>(p: u64, r: i64, points: I) -> Result<Self, ConfigError>
    where
        I: IntoIterator<Item = (LocalType, u32)>,
    {
        let p32 = check_prime(p)?;
        if r < 0 || r >= p as i64 {
            return Err(ConfigError::TraceExponent { r, p });
        }
        let r = r as u32;
        let mut map = BTreeMap::new();
        for (t, m) in points {
            if t.p() != p32 {
                return Err(ConfigError::MixedPrimes {
                    expected: p32,
                    found: t,
                });
            }
            if !t.is_isolated() {
                return Err(ConfigError::NotIsolated(t));
            }
            if !(t.s() + r).is_multiple_of(p32) {
                return Err(ConfigError::Inhomogeneous { local_type: t, r });
            }
            if m > 0 {
                *map.entry(t).or_insert(0) += m;
            }
        }
        if map.is_empty() && r != 0 {
            return Err(ConfigError::EmptyWithTrace { r });
        }
        Ok(FixedConfig {
            p: p32,
            r,
            points: map,
        })
    }

    /// Convenience constructor from raw exponent triples.
    pub fn from_exps(p: u64, r: i64, points: &[([i64; 3], u32)]) -> Result<Self, ConfigError> {
        let pts = points
            .iter()
            .map(|&(e, m)| Ok((LocalType::new(p, e)?, m)))
            .collect::<Result<Vec<_>, ConfigError>>()?;
        FixedConfig::new(p, r, pts)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn points(&self) -> &BTreeMap<LocalType, u32> {
        &self.points
    }

    pub fn len(&self) -> u32 {
        self.points.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn multiplicity(&self, t: &LocalType) -> u32 {
        self.points.get(t).copied().unwrap_or(0)
    }

    /// Re-expresses everything in terms of the primitive root `zeta^k`.
    pub fn relabel(&self, k: i64) -> Result<FixedConfig, ConfigError> {
        let p = self.p as i64;
        if k.rem_euclid(p) == 0 {
            return Err(ConfigError::TraceExponent {
                r: k,
                p: self.p.into(),
            });
        }
        let pts = self.points.iter().map(|(t, &m)| (t.power(k), m));
        FixedConfig::new(self.p.into(), (self.r as i64 * k).rem_euclid(p), pts)
    }

    /// `Lambda(X, g)`: the sum of the point contributions.
    pub fn lefschetz_sum(&self) -> CyclotomicNumber {
        let p = self.p as u64;
        self.points
            .iter()
            .fold(CyclotomicNumber::zero(p).expect("p > 0"), |acc, (t, &m)| {
                let c = contribution(t).expect("isolated by construction");
                &acc + &c.scale(&crate::exactnum::rat_int(m.into()))
            })
    }

    /// `1 - zeta^r`.
    pub fn expected_sum(&self) -> CyclotomicNumber {
        let p = self.p as u64;
        &CyclotomicNumber::one(p).expect("p > 0")
            - &CyclotomicNumber::root(p, self.r.into()).expect("p > 0")
    }
}

impl Ord for FixedConfig {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.p, self.r, self.len())
            .cmp(&(other.p, other.r, other.len()))
            .then_with(|| self.points.iter().cmp(other.points.iter()))
    }
}

impl PartialOrd for FixedConfig {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FixedConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} r={}: ", self.p, self.r)?;
        if self.points.is_empty() {
            return write!(f, "(no fixed points)");
        }
        let parts: Vec<String> = self
            .points
            .iter()
            .map(|(t, m)| {
                let [a, b, c] = t.exps();
                format!("{m}x({a},{b},{c})")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContiCheck {
    pub lhs: i64,
    pub rhs: i64,
    pub ok: bool,
}

/// `sum_P (p^3 (p-1)^3 / 8 - p S_0(P))` against `p^4` (or `0` when `r = 0`).
pub fn conti_check(c: &FixedConfig) -> ContiCheck {
    let p = c.p as u64;
    let base = cube_of_triangular(p) as i64;
    let lhs = c
        .points
        .iter()
        .map(|(t, &m)| {
            let s0 = s_n(t, 0).expect("isolated by construction") as i64;
            m as i64 * (base - p as i64 * s0)
        })
        .sum();
    let rhs = if c.r != 0 { (p as i64).pow(4) } else { 0 };
    ContiCheck {
        lhs,
        rhs,
        ok: lhs == rhs,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointReport {
    pub multiplicity: u32,
    pub s0: u64,
    pub contribution: CyclotomicNumber,
    pub classification: SingularityClassification,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigReport {
    pub config: FixedConfig,
    pub lhs: CyclotomicNumber,
    pub rhs: CyclotomicNumber,
    pub valid: bool,
    pub conti: ContiCheck,
    pub points: Vec<PointReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order3: Option<Order3Record>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order5: Option<Order5Record>,
}

pub fn verify_config(c: &FixedConfig) -> ConfigReport {
    let lhs = c.lefschetz_sum();
    let rhs = c.expected_sum();
    let valid = (&lhs - &rhs).is_zero();
    let points = c
        .points
        .iter()
        .map(|(t, &m)| PointReport {
            multiplicity: m,
            s0: s_n(t, 0).expect("isolated by construction"),
            contribution: contribution(t).expect("isolated by construction"),
            classification: t.classify(),
        })
        .collect();
    let order3 = (c.p == 3).then(|| order3_analysis(c).expect("p = 3"));
    let order5 = (c.p == 5 && c.r != 0).then(|| order5_analysis(c).expect("p = 5, r != 0"));
    ConfigReport {
        config: c.clone(),
        lhs,
        rhs,
        valid,
        conti: conti_check(c),
        points,
        order3,
        order5,
    }
}

impl ConfigReport {
    /// Lefschetz identity holds and the scalar consequence agrees.
    pub fn consistent(&self) -> bool {
        !self.valid || self.conti.ok
    }
}
