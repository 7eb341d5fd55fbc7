//! Fixed-point decimal scores.
//!
//! Scores are stored as integer multiples of 10^-6 so equality and ordering
//! are exact. The number of fractional digits seen at parse time is kept for
//! display only; it takes no part in comparisons.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub const MAX_FRACTION_DIGITS: u8 = 6;
const UNIT: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecimalError {
    #[error("empty number")]
    Empty,
    #[error("invalid character in number")]
    InvalidChar,
    #[error("more than {MAX_FRACTION_DIGITS} fractional digits")]
    TooPrecise,
    #[error("number out of range")]
    Overflow,
}

#[derive(Clone, Copy)]
pub struct Decimal {
    micros: i64,
    digits: u8,
}

impl Decimal {
    /// Builds a value from units of 10^-6, displayed with `digits` fractional digits.
    pub fn from_micros(micros: i64, digits: u8) -> Self {
        Self {
            micros,
            digits: digits.min(MAX_FRACTION_DIGITS),
        }
    }

    pub fn micros(self) -> i64 {
        self.micros
    }

    pub fn fraction_digits(self) -> u8 {
        self.digits
    }

    pub fn to_f64(self) -> f64 {
        self.micros as f64 / UNIT as f64
    }
}

impl fmt::Debug for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Decimal({self})")
    }
}

impl PartialEq for Decimal {
    fn eq(&self, other: &Self) -> bool {
        self.micros == other.micros
    }
}

impl Eq for Decimal {}

impl Hash for Decimal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.micros.hash(state);
    }
}

impl PartialOrd for Decimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Decimal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.micros.cmp(&other.micros)
    }
}

impl FromStr for Decimal {
    type Err = DecimalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (negative, body) = match s.as_bytes().first() {
            None => return Err(DecimalError::Empty),
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            Some(_) => (false, s),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, Some(f)),
            None => (body, None),
        };
        if int_part.is_empty() || frac_part.is_some_and(str::is_empty) {
            return Err(if body.is_empty() {
                DecimalError::Empty
            } else {
                DecimalError::InvalidChar
            });
        }
        let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(int_part) || !frac_part.is_none_or(all_digits) {
            return Err(DecimalError::InvalidChar);
        }
        let frac = frac_part.unwrap_or("");
        if frac.len() > MAX_FRACTION_DIGITS as usize {
            return Err(DecimalError::TooPrecise);
        }

        let mut micros: i64 = 0;
        for b in int_part.bytes() {
            micros = micros
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as i64))
                .ok_or(DecimalError::Overflow)?;
        }
        micros = micros.checked_mul(UNIT).ok_or(DecimalError::Overflow)?;
        let mut place = UNIT / 10;
        for b in frac.bytes() {
            micros += (b - b'0') as i64 * place;
            place /= 10;
        }
        if negative {
            micros = -micros;
        }
        Ok(Self {
            micros,
            digits: frac.len() as u8,
        })
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.micros < 0 { "-" } else { "" };
        let abs = self.micros.unsigned_abs();
        let int = abs / UNIT as u64;
        if self.digits == 0 {
            return write!(f, "{sign}{int}");
        }
        let frac = abs % UNIT as u64;
        let shown = frac / 10u64.pow((MAX_FRACTION_DIGITS - self.digits) as u32);
        write!(
            f,
            "{sign}{int}.{shown:0width$}",
            width = self.digits as usize
        )
    }
}

impl Serialize for Decimal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Decimal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_displays() {
        let d: Decimal = "15.7".parse().unwrap();
        assert_eq!(d.micros(), 15_700_000);
        assert_eq!(d.to_string(), "15.7");
        assert_eq!("11.0".parse::<Decimal>().unwrap().to_string(), "11.0");
        assert_eq!("-0.000001".parse::<Decimal>().unwrap().micros(), -1);
        assert_eq!("42".parse::<Decimal>().unwrap().to_string(), "42");
    }

    #[test]
    fn equality_ignores_display_precision() {
        let a: Decimal = "11".parse().unwrap();
        let b: Decimal = "11.000".parse().unwrap();
        assert_eq!(a, b);
        assert!("15.7".parse::<Decimal>().unwrap() < "15.71".parse().unwrap());
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "-", "1.", ".5", "1e3", "1,5", "abc", "1.2.3", " 1"] {
            assert!(bad.parse::<Decimal>().is_err(), "{bad:?}");
        }
        assert_eq!(
            "1.1234567".parse::<Decimal>(),
            Err(DecimalError::TooPrecise)
        );
        assert_eq!(
            "99999999999999999".parse::<Decimal>(),
            Err(DecimalError::Overflow)
        );
    }
}
