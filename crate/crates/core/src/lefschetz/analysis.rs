//! Structural consequences of the identity for orders 2, 3 and 5.

use serde::{Deserialize, Serialize};

use super::sums::s_n;
use super::{solve_configs, ConfigError, FixedConfig};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Order3Record {
    pub r: u32,
    /// Points of type `(1,1,1)` and `(2,2,2)`; only meaningful when `r = 0`.
    pub n1: u32,
    pub n2: u32,
    pub total: u32,
    pub all_terminal: bool,
    /// For `r = 0`: `n1 = n2`. Otherwise: nine points, all terminal.
    pub holds: bool,
}

pub fn order3_analysis(c: &FixedConfig) -> Result<Order3Record, ConfigError> {
    if c.p() != 3 {
        return Err(ConfigError::WrongPrime {
            expected: 3,
            got: c.p(),
        });
    }
    let count = |e: [u32; 3]| {
        c.points()
            .iter()
            .filter(|(t, _)| t.exps() == e)
            .map(|(_, &m)| m)
            .sum::<u32>()
    };
    let (n1, n2) = (count([1, 1, 1]), count([2, 2, 2]));
    let total = c.len();
    let all_terminal = c
        .points()
        .keys()
        .all(|t| t.is_terminal().expect("isolated"));
    let holds = if c.r() == 0 {
        n1 == n2
    } else {
        total == 9 && all_terminal
    };
    Ok(Order3Record {
        r: c.r(),
        n1,
        n2,
        total,
        all_terminal,
        holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Order5Record {
    /// Points with `S_0 = 175` (exactly the terminal ones).
    pub n: u32,
    /// Points with `S_0 = 200`.
    pub q1: u32,
    /// Points with `S_0 = 225`.
    pub q2: u32,
    /// Points with any other `S_0`; always zero in practice.
    pub other: u32,
    pub total: u32,
    /// `n = 5 + q2` and `total = 5 + q1 + 2 q2`.
    pub holds: bool,
}

pub fn order5_analysis(c: &FixedConfig) -> Result<Order5Record, ConfigError> {
    if c.p() != 5 {
        return Err(ConfigError::WrongPrime {
            expected: 5,
            got: c.p(),
        });
    }
    if c.r() == 0 {
        return Err(ConfigError::SymplecticOrder5);
    }
    let (mut n, mut q1, mut q2, mut other) = (0, 0, 0, 0);
    for (t, &m) in c.points() {
        match s_n(t, 0).expect("isolated") {
            175 => n += m,
            200 => q1 += m,
            225 => q2 += m,
            _ => other += m,
        }
    }
    let total = c.len();
    let holds = other == 0 && n == 5 + q2 && total == 5 + q1 + 2 * q2;
    Ok(Order5Record {
        n,
        q1,
        q2,
        other,
        total,
        holds,
    })
}

/// What is known about the fixed locus of an involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixDescription {
    Empty,
    Isolated(u32),
    Curve,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuotientKind {
    /// Free action: the quotient is a smooth Calabi-Yau threefold.
    Smooth,
    /// Isolated terminal singularities.
    TerminalIsolated,
    /// Canonical singularities along a smooth curve.
    CanonicalAlongCurve,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionRecord {
    pub symplectic: bool,
    pub quotient: QuotientKind,
    pub terminal_points: u32,
}

pub fn involution_classify(fix: FixDescription) -> Result<InvolutionRecord, ConfigError> {
    Ok(match fix {
        FixDescription::Empty => InvolutionRecord {
            symplectic: true,
            quotient: QuotientKind::Smooth,
            terminal_points: 0,
        },
        FixDescription::Curve => InvolutionRecord {
            symplectic: true,
            quotient: QuotientKind::CanonicalAlongCurve,
            terminal_points: 0,
        },
        FixDescription::Isolated(count) => {
            let sols = solve_configs(2, 1, count.max(16))?;
            if !sols.iter().any(|c| c.len() == count) {
                return Err(ConfigError::InconsistentInvolution { count });
            }
            InvolutionRecord {
                symplectic: false,
                quotient: QuotientKind::TerminalIsolated,
                terminal_points: count,
            }
        }
    })
}
