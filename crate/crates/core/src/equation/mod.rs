//! The six totient equations, exact solution checking, triviality and the
//! known solution families.
//!
//! | id  | equation                                               | parity      |
//! |-----|--------------------------------------------------------|-------------|
//! | 1.1 | `phi(|x^m - y^m|) = |x^n - y^n|`                        | signed x, y |
//! | 1.2 | `phi(|(x^m - y^m)/(x - y)|) = |(x^n - y^n)/(x - y)|`    | signed x, y |
//! | 1.3 | `phi(z (x^m - y^m)/(x - y)) = z (x^n - y^n)/(x - y)`    | any         |
//! | 1.4 | `phi(z (x^m + y^m)/(x + y)) = z (x^n + y^n)/(x + y)`    | m, n odd    |
//! | 1.5 | `phi(z (x^m - y^m)/(x + y)) = z (x^n + y^n)/(x + y)`    | m even, n odd |
//! | 1.6 | `phi(z (x^m + y^m)/(x + y)) = z (x^n - y^n)/(x + y)`    | m odd, n even |
//!
//! Equations 1.3 to 1.6 take `x > y >= 1` and `z >= 1`. When the argument of
//! `phi` is zero (1.1 with `x^m = y^m`) the equation is undefined and the
//! candidate is reported as not a solution.

mod cases;
mod family;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{euler_phi, Effort};
use crate::error::{Error, Result};
use crate::lucas::{lucas_quotient, QuotientKind};

pub use cases::{case_equation_holds, classify_case, CaseSplit, CaseTag, Form1Case, Form2Case};
pub use family::{
    e16_family_primes, family_of, is_trivial, known_families, reduce_to_coprime_exponents,
    FamilyPrime,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EquationId {
    #[serde(rename = "1.1")]
    E11,
    #[serde(rename = "1.2")]
    E12,
    #[serde(rename = "1.3")]
    E13,
    #[serde(rename = "1.4")]
    E14,
    #[serde(rename = "1.5")]
    E15,
    #[serde(rename = "1.6")]
    E16,
}

impl EquationId {
    pub const ALL: [EquationId; 6] = [
        EquationId::E11,
        EquationId::E12,
        EquationId::E13,
        EquationId::E14,
        EquationId::E15,
        EquationId::E16,
    ];

    pub fn label(self) -> &'static str {
        match self {
            EquationId::E11 => "1.1",
            EquationId::E12 => "1.2",
            EquationId::E13 => "1.3",
            EquationId::E14 => "1.4",
            EquationId::E15 => "1.5",
            EquationId::E16 => "1.6",
        }
    }

    /// Equations 1.1 and 1.2 range over signed `x, y` and carry no `z`.
    pub fn is_signed(self) -> bool {
        matches!(self, EquationId::E11 | EquationId::E12)
    }

    pub fn exponents_allowed(self, m: u32, n: u32) -> bool {
        if m == 0 || n == 0 {
            return false;
        }
        let (m_odd, n_odd) = (m % 2 == 1, n % 2 == 1);
        match self {
            EquationId::E11 | EquationId::E12 | EquationId::E13 => true,
            EquationId::E14 => m_odd && n_odd,
            EquationId::E15 => !m_odd && n_odd,
            EquationId::E16 => m_odd && !n_odd,
        }
    }

    /// Quotient shapes of the left (`m`) and right (`n`) side, for 1.3 to 1.6.
    pub fn quotient_kinds(self) -> Option<(QuotientKind, QuotientKind)> {
        use QuotientKind::*;
        match self {
            EquationId::E11 | EquationId::E12 => None,
            EquationId::E13 => Some((MinusOverMinus, MinusOverMinus)),
            EquationId::E14 => Some((PlusOverPlus, PlusOverPlus)),
            EquationId::E15 => Some((MinusOverPlus, PlusOverPlus)),
            EquationId::E16 => Some((PlusOverPlus, MinusOverPlus)),
        }
    }
}

impl fmt::Display for EquationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for EquationId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('E').trim_start_matches('e');
        let id = match s {
            "1.1" | "11" => EquationId::E11,
            "1.2" | "12" => EquationId::E12,
            "1.3" | "13" => EquationId::E13,
            "1.4" | "14" => EquationId::E14,
            "1.5" | "15" => EquationId::E15,
            "1.6" | "16" => EquationId::E16,
            other => return Err(Error::InvalidInput(format!("unknown equation '{other}'"))),
        };
        Ok(id)
    }
}

/// A tuple `(x, y, z, m, n)` for one of the equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CandidateSolution {
    pub eq: EquationId,
    pub x: i64,
    pub y: i64,
    pub z: Option<u64>,
    pub m: u32,
    pub n: u32,
}

impl CandidateSolution {
    /// Validated constructor.
    pub fn new(eq: EquationId, x: i64, y: i64, z: Option<u64>, m: u32, n: u32) -> Result<Self> {
        let c = CandidateSolution { eq, x, y, z, m, n };
        c.validate()?;
        Ok(c)
    }

    /// Candidate for 1.1 / 1.2.
    pub fn signed(eq: EquationId, x: i64, y: i64, m: u32, n: u32) -> Result<Self> {
        Self::new(eq, x, y, None, m, n)
    }

    /// Candidate for 1.3 to 1.6.
    pub fn with_z(eq: EquationId, x: u64, y: u64, z: u64, m: u32, n: u32) -> Result<Self> {
        let x = i64::try_from(x).map_err(|_| Error::Overflow("x"))?;
        let y = i64::try_from(y).map_err(|_| Error::Overflow("y"))?;
        Self::new(eq, x, y, Some(z), m, n)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInput(msg));
        if self.x == 0 || self.y == 0 {
            return bad(format!("xy must be nonzero: {self}"));
        }
        if self.m == 0 || self.n == 0 {
            return bad(format!("exponents must be positive: {self}"));
        }
        if self.eq.is_signed() {
            if self.z.is_some() {
                return bad(format!("equation {} carries no z: {self}", self.eq));
            }
            if self.x == self.y {
                return bad(format!("x = y makes the equation degenerate: {self}"));
            }
            if self.x == i64::MIN || self.y == i64::MIN {
                return Err(Error::Overflow("|x|"));
            }
        } else {
            if !(self.x > self.y && self.y >= 1) {
                return bad(format!("equation {} needs x > y >= 1: {self}", self.eq));
            }
            match self.z {
                Some(z) if z >= 1 => {}
                _ => return bad(format!("equation {} needs z >= 1: {self}", self.eq)),
            }
            if !self.eq.exponents_allowed(self.m, self.n) {
                return Err(Error::ParityViolation {
                    context: match self.eq {
                        EquationId::E14 => "equation 1.4 needs m, n odd",
                        EquationId::E15 => "equation 1.5 needs m even, n odd",
                        _ => "equation 1.6 needs m odd, n even",
                    },
                    exponent: self.m,
                });
            }
        }
        Ok(())
    }

    /// Argument of `phi` and the right-hand side, or `None` when the
    /// argument is zero.
    pub fn sides(&self) -> Result<Option<(u128, u128)>> {
        self.validate()?;
        match self.eq {
            EquationId::E11 => {
                let lhs = signed_power_difference(self.x, self.y, self.m)?.unsigned_abs();
                let rhs = signed_power_difference(self.x, self.y, self.n)?.unsigned_abs();
                Ok((lhs != 0).then_some((lhs, rhs)))
            }
            EquationId::E12 => {
                let den = (self.x as i128) - (self.y as i128);
                let lhs = signed_power_difference(self.x, self.y, self.m)? / den;
                let rhs = signed_power_difference(self.x, self.y, self.n)? / den;
                Ok((lhs != 0).then_some((lhs.unsigned_abs(), rhs.unsigned_abs())))
            }
            _ => {
                let (lk, rk) = self.eq.quotient_kinds().expect("z-equation");
                let (x, y) = (self.x as u64, self.y as u64);
                let z = self.z.expect("validated") as u128;
                let a = lucas_quotient(lk, x, y, self.m)?;
                let b = lucas_quotient(rk, x, y, self.n)?;
                let lhs = z.checked_mul(a).ok_or(Error::Overflow("z * lhs quotient"))?;
                let rhs = z.checked_mul(b).ok_or(Error::Overflow("z * rhs quotient"))?;
                Ok(Some((lhs, rhs)))
            }
        }
    }
}

impl fmt::Display for CandidateSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.z {
            Some(z) => write!(f, "E{}({}, {}, {}, {}, {})", self.eq, self.x, self.y, z, self.m, self.n),
            None => write!(f, "E{}({}, {}, {}, {})", self.eq, self.x, self.y, self.m, self.n),
        }
    }
}

/// `x^k - y^k` over the integers.
fn signed_power_difference(x: i64, y: i64, k: u32) -> Result<i128> {
    let xk = (x as i128).checked_pow(k).ok_or(Error::Overflow("x^k"))?;
    let yk = (y as i128).checked_pow(k).ok_or(Error::Overflow("y^k"))?;
    xk.checked_sub(yk).ok_or(Error::Overflow("x^k - y^k"))
}

/// Decides `phi(lhs) = rhs` exactly. Cheap necessary conditions are tried
/// before factoring `lhs`.
pub fn totient_equals(lhs: u128, rhs: u128, effort: &Effort) -> Result<bool> {
    if lhs == 0 || rhs == 0 || rhs > lhs {
        return Ok(false);
    }
    if lhs <= 2 {
        return Ok(rhs == 1);
    }
    // phi(k) is even for k >= 3; phi(k) = k only for k = 1.
    if rhs % 2 == 1 || rhs == lhs {
        return Ok(false);
    }
    Ok(euler_phi(lhs, effort)? == rhs)
}

/// Exact test of the equation for `c`.
pub fn check_solution(c: &CandidateSolution, effort: &Effort) -> Result<bool> {
    match c.sides()? {
        Some((lhs, rhs)) => totient_equals(lhs, rhs, effort),
        None => Ok(false),
    }
}

/// Tag of the solution family a record belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FamilyTag {
    /// `(+-(2^{t-1} +- 1), -+(2^{t-1} -+ 1), 2, 1)` of equation 1.1.
    #[serde(rename = "T1.1")]
    T11,
    /// `(a +- 1, -a, 1, 2)` and `(a +- i, -a, 2, 1)` of equation 1.2.
    #[serde(rename = "T1.2")]
    T12,
    /// `(2, 1, 2^b 3^s, 3, 1)` of equation 1.4.
    #[serde(rename = "T1.3-1")]
    T13First,
    /// `(a+1, a, 1, 2, 1)`, `(a+2, a, 2^s, 2, 1)`, `(a+3, a, 2^b 3^s, 2, 1)` of 1.5.
    #[serde(rename = "T1.3-2")]
    T13Second,
    /// `(2, 1, p^s 2^b, q, q-1)` with `q` and `p = (2^q+1)/3` prime, equation 1.6.
    #[serde(rename = "T1.3-3")]
    T13Third,
    #[serde(rename = "TRIVIAL")]
    Trivial,
    #[serde(rename = "UNEXPECTED")]
    Unexpected,
}

impl FamilyTag {
    pub fn label(self) -> &'static str {
        match self {
            FamilyTag::T11 => "T1.1",
            FamilyTag::T12 => "T1.2",
            FamilyTag::T13First => "T1.3-1",
            FamilyTag::T13Second => "T1.3-2",
            FamilyTag::T13Third => "T1.3-3",
            FamilyTag::Trivial => "TRIVIAL",
            FamilyTag::Unexpected => "UNEXPECTED",
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A verified solution with its classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub candidate: CandidateSolution,
    pub trivial: bool,
    pub family: FamilyTag,
}

impl SolutionRecord {
    /// Classifies a candidate already known to satisfy its equation.
    pub fn classify(candidate: CandidateSolution) -> Self {
        let trivial = is_trivial(&candidate);
        let family = if trivial {
            FamilyTag::Trivial
        } else {
            family_of(&candidate).unwrap_or(FamilyTag::Unexpected)
        };
        SolutionRecord {
            candidate,
            trivial,
            family,
        }
    }
}
