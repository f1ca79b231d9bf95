//! Sign/parity split of 1.1 and 1.2 into equations on `|x| > |y| >= 1`.

use serde::{Deserialize, Serialize};

use crate::arith::{euler_phi, Effort};
use crate::error::{Error, Result};

/// Cases a1-a4 of equation 1.1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Form1Case {
    /// `phi(X^m - Y^m) = X^n - Y^n`: `xy > 0`, or `xy < 0` with `m, n` even.
    A1,
    /// `phi(X^m + Y^m) = X^n + Y^n`: `xy < 0`, `m, n` odd.
    A2,
    /// `phi(X^m - Y^m) = X^n + Y^n`: `xy < 0`, `m` even, `n` odd.
    A3,
    /// `phi(X^m + Y^m) = X^n - Y^n`: `xy < 0`, `m` odd, `n` even.
    A4,
}

/// Cases a5-a9 of equation 1.2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Form2Case {
    /// Both sides over `X - Y`: `xy > 0`.
    A5,
    /// `(X^k - Y^k)/(X + Y)` on both sides: `xy < 0`, `m, n` even.
    A6,
    /// `(X^k + Y^k)/(X + Y)` on both sides: `xy < 0`, `m, n` odd.
    A7,
    /// `xy < 0`, `m` even, `n` odd.
    A8,
    /// `xy < 0`, `m` odd, `n` even.
    A9,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CaseSplit {
    pub form1: Form1Case,
    pub form2: Form2Case,
}

/// `None` unless `xy != 0` and `|x| > |y|`.
pub fn classify_case(x: i64, y: i64, m: u32, n: u32) -> Option<CaseSplit> {
    if x == 0 || y == 0 || x.unsigned_abs() <= y.unsigned_abs() {
        return None;
    }
    let split = if (x > 0) == (y > 0) {
        CaseSplit {
            form1: Form1Case::A1,
            form2: Form2Case::A5,
        }
    } else {
        match (m % 2 == 0, n % 2 == 0) {
            (true, true) => CaseSplit {
                form1: Form1Case::A1,
                form2: Form2Case::A6,
            },
            (false, false) => CaseSplit {
                form1: Form1Case::A2,
                form2: Form2Case::A7,
            },
            (true, false) => CaseSplit {
                form1: Form1Case::A3,
                form2: Form2Case::A8,
            },
            (false, true) => CaseSplit {
                form1: Form1Case::A4,
                form2: Form2Case::A9,
            },
        }
    };
    Some(split)
}

fn pow(v: u64, k: u32) -> Result<u128> {
    (v as u128).checked_pow(k).ok_or(Error::Overflow("|x|^k"))
}

fn plus(big: u64, small: u64, k: u32) -> Result<u128> {
    pow(big, k)?
        .checked_add(pow(small, k)?)
        .ok_or(Error::Overflow("X^k + Y^k"))
}

fn minus(big: u64, small: u64, k: u32) -> Result<u128> {
    Ok(pow(big, k)? - pow(small, k)?)
}

/// Evaluates the case equation on `X > Y >= 1`. Which of 1.1 / 1.2 is
/// meant follows from the case type.
pub fn case_equation_holds<C: Into<CaseTag>>(
    case: C,
    big: u64,
    small: u64,
    m: u32,
    n: u32,
    effort: &Effort,
) -> Result<bool> {
    if !(big > small && small >= 1) {
        return Err(Error::InvalidInput(format!("need X > Y >= 1, got ({big}, {small})")));
    }
    let (lhs, rhs) = match case.into() {
        CaseTag::Form1(c) => match c {
            Form1Case::A1 => (minus(big, small, m)?, minus(big, small, n)?),
            Form1Case::A2 => (plus(big, small, m)?, plus(big, small, n)?),
            Form1Case::A3 => (minus(big, small, m)?, plus(big, small, n)?),
            Form1Case::A4 => (plus(big, small, m)?, minus(big, small, n)?),
        },
        CaseTag::Form2(c) => {
            let diff = (big - small) as u128;
            let sum = big as u128 + small as u128;
            match c {
                Form2Case::A5 => (minus(big, small, m)? / diff, minus(big, small, n)? / diff),
                Form2Case::A6 => (minus(big, small, m)? / sum, minus(big, small, n)? / sum),
                Form2Case::A7 => (plus(big, small, m)? / sum, plus(big, small, n)? / sum),
                Form2Case::A8 => (minus(big, small, m)? / sum, plus(big, small, n)? / sum),
                Form2Case::A9 => (plus(big, small, m)? / sum, minus(big, small, n)? / sum),
            }
        }
    };
    if lhs == 0 {
        return Ok(false);
    }
    Ok(euler_phi(lhs, effort)? == rhs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    Form1(Form1Case),
    Form2(Form2Case),
}

impl From<Form1Case> for CaseTag {
    fn from(c: Form1Case) -> Self {
        CaseTag::Form1(c)
    }
}

impl From<Form2Case> for CaseTag {
    fn from(c: Form2Case) -> Self {
        CaseTag::Form2(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_examples() {
        let c = classify_case(5, -2, 3, 1).unwrap();
        assert_eq!((c.form1, c.form2), (Form1Case::A2, Form2Case::A7));
        let c = classify_case(5, 2, 2, 1).unwrap();
        assert_eq!((c.form1, c.form2), (Form1Case::A1, Form2Case::A5));
        let c = classify_case(5, -2, 2, 1).unwrap();
        assert_eq!((c.form1, c.form2), (Form1Case::A3, Form2Case::A8));
        let c = classify_case(-5, 2, 3, 2).unwrap();
        assert_eq!((c.form1, c.form2), (Form1Case::A4, Form2Case::A9));
        let c = classify_case(-5, 2, 4, 2).unwrap();
        assert_eq!((c.form1, c.form2), (Form1Case::A1, Form2Case::A6));
        assert!(classify_case(2, -5, 1, 1).is_none());
        assert!(classify_case(3, 0, 1, 1).is_none());
    }

    #[test]
    fn case_equation_on_known_solution() {
        // (3, -1, 2, 1): phi(3^2 - 1) = 3 + 1
        let e = Effort::default();
        assert!(case_equation_holds(Form1Case::A3, 3, 1, 2, 1, &e).unwrap());
        assert!(!case_equation_holds(Form1Case::A1, 3, 1, 2, 1, &e).unwrap());
    }
}
