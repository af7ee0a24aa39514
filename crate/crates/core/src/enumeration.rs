//! Counting periodic states: Fibonacci and Lucas numbers, the nine basic
//! avoid sets with their linear recurrences, and closed forms for the number
//! of orbits of every representative rule.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::rule::Rule;
use crate::state::{avoid_set, AvoidSpec, State, StateSet, MIN_N};
use crate::Error;

/// Largest `n` accepted by [`count_by_recurrence`]; every count then fits
/// in 64 bits.
pub const MAX_RECURRENCE_N: u32 = 64;

/// `Fib_1 = Fib_2 = 1`.
pub fn fibonacci(n: u32) -> Result<u128, Error> {
    if n == 0 || n > 186 {
        return Err(Error::OutOfRange { name: "n", value: n as u64 });
    }
    let (mut a, mut b) = (1u128, 1u128);
    for _ in 2..n {
        (a, b) = (b, a + b);
    }
    Ok(if n == 1 { a } else { b })
}

/// `Luc_1 = 1`, `Luc_2 = 3`.
pub fn lucas(n: u32) -> Result<u128, Error> {
    if n == 0 || n > 183 {
        return Err(Error::OutOfRange { name: "n", value: n as u64 });
    }
    let (mut a, mut b) = (1u128, 3u128);
    for _ in 2..n {
        (a, b) = (b, a + b);
    }
    Ok(if n == 1 { a } else { b })
}

/// The basic periodic sets, named by the abbreviations of the words they
/// avoid: `A = 11`, `B = 000`, `C = 111`, `D = 010`, `E = 101`, `F = 1100`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NSet {
    A,
    AB,
    AE,
    BCF,
    BC,
    C,
    CD,
    D,
    DE,
}

/// `a_n = Σ_k coefficients[k] · a_{n-1-k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecurrenceSpec {
    pub coefficients: &'static [i64],
}

impl RecurrenceSpec {
    pub fn order(&self) -> usize {
        self.coefficients.len()
    }
}

impl fmt::Display for RecurrenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a_n =")?;
        let mut first = true;
        for (k, &c) in self.coefficients.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            let coef = if mag == 1 { String::new() } else { alloc::format!("{mag}") };
            if first {
                write!(f, " {sign}{coef}a_(n-{})", k + 1)?;
            } else {
                write!(f, " {sign} {coef}a_(n-{})", k + 1)?;
            }
            first = false;
        }
        Ok(())
    }
}

impl NSet {
    pub const ALL: [NSet; 9] =
        [NSet::A, NSet::AB, NSet::AE, NSet::BCF, NSet::BC, NSet::C, NSet::CD, NSet::D, NSet::DE];

    pub fn letters(self) -> &'static str {
        match self {
            NSet::A => "A",
            NSet::AB => "AB",
            NSet::AE => "AE",
            NSet::BCF => "BCF",
            NSet::BC => "BC",
            NSet::C => "C",
            NSet::CD => "CD",
            NSet::D => "D",
            NSet::DE => "DE",
        }
    }

    pub fn name(self) -> String {
        alloc::format!("N_{}", self.letters())
    }

    pub fn avoid_spec(self) -> AvoidSpec {
        AvoidSpec::parse(self.letters()).expect("letters are abbreviations")
    }

    /// Avoided words as binary strings.
    pub fn words(self) -> Vec<String> {
        self.avoid_spec().words.iter().map(|w| alloc::format!("{w}")).collect()
    }

    pub fn recurrence(self) -> RecurrenceSpec {
        let coefficients: &'static [i64] = match self {
            NSet::A => &[1, 1],
            NSet::AB => &[0, 1, 1],
            NSet::AE => &[1, 0, 1],
            NSet::BCF => &[0, 1, 2],
            NSet::BC => &[0, 1, 2, 1],
            NSet::C => &[1, 1, 1],
            NSet::CD => &[1, 0, 1],
            NSet::D => &[2, -1, 1],
            NSet::DE => &[2, -1, 0, 1],
        };
        RecurrenceSpec { coefficients }
    }

    /// Sloane identifier, kept as metadata.
    pub fn oeis(self) -> &'static str {
        match self {
            NSet::A => "A000032",
            NSet::AB => "A001608",
            NSet::AE => "A001609",
            NSet::BCF => "A072328",
            NSet::BC => "A007040",
            NSet::C => "A001644",
            NSet::CD => "A001609",
            NSet::D => "A109377",
            NSet::DE => "A007039",
        }
    }

    pub fn states(self, n: u32) -> Result<StateSet, Error> {
        avoid_set(n, &self.avoid_spec())
    }
}

impl fmt::Display for NSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N_{}", self.letters())
    }
}

impl FromStr for NSet {
    type Err = Error;

    /// Accepts `N_AB`, `NAB` or `AB`, case-insensitively.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim().to_ascii_uppercase();
        let letters = t.strip_prefix("N_").or_else(|| t.strip_prefix('N')).unwrap_or(&t);
        NSet::ALL
            .into_iter()
            .find(|x| x.letters() == letters)
            .ok_or_else(|| Error::UnknownSet(String::from(s)))
    }
}

pub fn count_by_enumeration(set: NSet, n: u32) -> Result<u64, Error> {
    Ok(set.states(n)?.len() as u64)
}

/// Terms from `n = 4` on, seeded by enumeration at `n = 4..4+r`.
pub fn recurrence_terms(set: NSet, n_max: u32) -> Result<Vec<u128>, Error> {
    if !(MIN_N..=MAX_RECURRENCE_N).contains(&n_max) {
        return Err(Error::OutOfRange { name: "n", value: n_max as u64 });
    }
    let rec = set.recurrence();
    let r = rec.order() as u32;
    let mut terms: Vec<i128> = Vec::new();
    for n in MIN_N..=n_max {
        let value = if n < MIN_N + r {
            count_by_enumeration(set, n)? as i128
        } else {
            let k = terms.len();
            rec.coefficients.iter().enumerate().map(|(j, &c)| c as i128 * terms[k - 1 - j]).sum()
        };
        terms.push(value);
    }
    Ok(terms.into_iter().map(|v| v as u128).collect())
}

pub fn count_by_recurrence(set: NSet, n: u32) -> Result<u128, Error> {
    Ok(*recurrence_terms(set, n)?.last().expect("n >= 4"))
}

/// A periodic set written in terms of the basic sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PeriodicSet {
    Zero,
    ZeroAndOne,
    Avoid(NSet),
    AvoidWithOne(NSet),
    AvoidWithZero(NSet),
    All,
}

impl PeriodicSet {
    pub fn states(self, n: u32) -> Result<StateSet, Error> {
        let zero = State::zeros(n);
        let one = State::ones(n);
        Ok(match self {
            PeriodicSet::Zero => StateSet::empty(n)?.with(zero),
            PeriodicSet::ZeroAndOne => StateSet::empty(n)?.with(zero).with(one),
            PeriodicSet::Avoid(x) => x.states(n)?,
            PeriodicSet::AvoidWithOne(x) => x.states(n)?.with(one),
            PeriodicSet::AvoidWithZero(x) => x.states(n)?.with(zero),
            PeriodicSet::All => StateSet::full(n)?,
        })
    }

    fn candidates() -> impl Iterator<Item = PeriodicSet> {
        [PeriodicSet::Zero, PeriodicSet::ZeroAndOne, PeriodicSet::All].into_iter().chain(
            NSet::ALL.into_iter().flat_map(|x| {
                [PeriodicSet::Avoid(x), PeriodicSet::AvoidWithOne(x), PeriodicSet::AvoidWithZero(x)]
            }),
        )
    }
}

impl fmt::Display for PeriodicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PeriodicSet::Zero => write!(f, "{{0̄}}"),
            PeriodicSet::ZeroAndOne => write!(f, "{{0̄, 1̄}}"),
            PeriodicSet::Avoid(x) => write!(f, "{x}"),
            PeriodicSet::AvoidWithOne(x) => write!(f, "{x} ∪ 1̄"),
            PeriodicSet::AvoidWithZero(x) => write!(f, "{x} ∪ 0̄"),
            PeriodicSet::All => write!(f, "F_2^n"),
        }
    }
}

/// The periodic set of a representative rule, as a set expression.
pub fn periodic_set_formula(rule: Rule) -> Option<PeriodicSet> {
    use NSet::*;
    use PeriodicSet::*;
    Some(match rule.0 {
        0 | 8 | 32 | 40 => Zero,
        128 | 136 | 160 | 168 | 152 | 184 => ZeroAndOne,
        4 | 12 | 1 | 9 => Avoid(A),
        132 | 140 | 129 | 137 => AvoidWithOne(A),
        5 | 13 => Avoid(AB),
        133 | 141 => AvoidWithOne(AB),
        164 | 172 => AvoidWithOne(AE),
        77 => Avoid(BC),
        76 | 73 => Avoid(C),
        72 => Avoid(CD),
        200 => Avoid(D),
        232 => Avoid(DE),
        28 => AvoidWithZero(BCF),
        29 => Avoid(BCF),
        204 | 51 | 60 | 150 | 105 | 156 | 201 | 57 | 54 => All,
        _ => return None,
    })
}

/// Names `set` by its representative's formula when that matches, otherwise
/// by the first matching expression.
pub fn describe_periodic(rule: Rule, set: &StateSet) -> Option<PeriodicSet> {
    let n = set.n();
    let matches = |p: &PeriodicSet| p.states(n).map(|s| s == *set).unwrap_or(false);
    rule.representative()
        .and_then(periodic_set_formula)
        .filter(matches)
        .or_else(|| PeriodicSet::candidates().find(matches))
}

/// Closed form for the number of orbits of the dynamics group.
pub fn orbit_count_formula(rule: Rule, n: u32) -> Result<u128, Error> {
    use NSet::*;
    let rep = rule.representative().ok_or(Error::NotOmegaIndependent(rule.0))?;
    let count = |x: NSet| count_by_recurrence(x, n);
    Ok(match rep.0 {
        0 | 8 | 32 | 40 => 1,
        128 | 136 | 160 | 168 | 152 | 184 => 2,
        4 | 12 => count(A)?,
        132 | 140 => count(A)? + 1,
        5 | 13 | 29 => count(AB)?,
        133 | 141 | 28 => count(AB)? + 1,
        164 | 172 => count(AE)? + 1,
        77 => count(BC)?,
        76 => count(C)?,
        72 | 73 => count(CD)?,
        200 | 201 => count(D)?,
        232 => count(DE)?,
        204 => 1u128 << n,
        51 | 57 | 1 | 9 => 1,
        60 | 54 | 129 | 137 => 2,
        150 => (n / 2 + 2) as u128,
        105 => match n % 4 {
            1 | 3 => 2,
            2 => (2 * (n / 4) + 4) as u128,
            _ => (2 * (n / 4) + 2) as u128,
        },
        156 => lucas(n)? + 1,
        _ => unreachable!("every representative is listed"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rule::REPRESENTATIVES;
    use alloc::string::ToString;

    #[test]
    fn fibonacci_and_lucas_values() {
        let fib: Vec<u128> = (1..=8).map(|n| fibonacci(n).unwrap()).collect();
        assert_eq!(fib, [1, 1, 2, 3, 5, 8, 13, 21]);
        let luc: Vec<u128> = (1..=7).map(|n| lucas(n).unwrap()).collect();
        assert_eq!(luc, [1, 3, 4, 7, 11, 18, 29]);
        assert!(fibonacci(0).is_err());
        assert!(lucas(0).is_err());
        for n in 2..=60 {
            assert_eq!(lucas(n).unwrap(), fibonacci(n - 1).unwrap() + fibonacci(n + 1).unwrap());
        }
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(count_by_recurrence(NSet::A, 7).unwrap(), 29);
        assert_eq!(count_by_recurrence(NSet::AB, 4).unwrap(), 2);
        for n in 4..=40 {
            assert_eq!(count_by_recurrence(NSet::A, n).unwrap(), lucas(n).unwrap());
            assert_eq!(count_by_recurrence(NSet::AE, n).unwrap(), count_by_recurrence(NSet::CD, n).unwrap());
        }
        assert!(count_by_recurrence(NSet::A, 3).is_err());
        assert!(count_by_recurrence(NSet::A, 65).is_err());
        assert!(count_by_recurrence(NSet::D, 64).unwrap() < u64::MAX as u128);
    }

    #[test]
    fn recurrence_matches_enumeration() {
        for set in NSet::ALL {
            for n in 4..=16 {
                assert_eq!(
                    count_by_recurrence(set, n).unwrap(),
                    count_by_enumeration(set, n).unwrap() as u128,
                    "{set} at n = {n}"
                );
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for set in NSet::ALL {
            assert_eq!(set.name().parse::<NSet>().unwrap(), set);
            assert_eq!(set.letters().parse::<NSet>().unwrap(), set);
        }
        assert!("N_XY".parse::<NSet>().is_err());
        assert_eq!(NSet::BCF.words(), ["000", "111", "1100"]);
        assert_eq!(NSet::D.recurrence().to_string(), "a_n = 2a_(n-1) - a_(n-2) + a_(n-3)");
        assert_eq!(NSet::AB.recurrence().to_string(), "a_n = a_(n-2) + a_(n-3)");
    }

    #[test]
    fn orbit_formula_examples() {
        assert_eq!(orbit_count_formula(Rule(150), 6).unwrap(), 5);
        assert_eq!(orbit_count_formula(Rule(29), 5).unwrap(), 5);
        assert_eq!(orbit_count_formula(Rule(204), 4).unwrap(), 16);
        assert_eq!(orbit_count_formula(Rule(156), 5).unwrap(), 12);
        assert!(orbit_count_formula(Rule(30), 5).is_err());
    }

    #[test]
    fn every_representative_has_a_formula() {
        for &k in &REPRESENTATIVES {
            assert!(periodic_set_formula(Rule(k)).is_some(), "rule {k}");
            assert!(orbit_count_formula(Rule(k), 6).is_ok(), "rule {k}");
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(PeriodicSet::AvoidWithOne(NSet::AE).to_string(), "N_AE ∪ 1̄");
        assert_eq!(PeriodicSet::ZeroAndOne.to_string(), "{0̄, 1̄}");
    }
}
