//! Series literals: `2 + 3*T^2 - T^-1`, optionally suffixed by `@K`.
//!
//! The printed form lists terms by ascending exponent, omits unit
//! coefficients in front of `T`, and writes the zero series as `0`.
//! Printing then parsing returns the identical value.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::series::{NovikovSeries, Precision};
use super::NovikovError;

impl fmt::Display for NovikovSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let negative = c.is_negative();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let abs = c.abs();
            match (e, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => f.write_str("T")?,
                (1, false) => write!(f, "{abs}*T")?,
                (_, true) => write!(f, "T^{e}")?,
                (_, false) => write!(f, "{abs}*T^{e}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        if let Precision::Finite(k) = self.precision() {
            write!(f, " @{k}")?;
        }
        Ok(())
    }
}

impl FromStr for NovikovSeries {
    type Err = NovikovError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (body, precision) = match s.rfind('@') {
            Some(at) => {
                let k = s[at + 1..]
                    .trim()
                    .parse::<i64>()
                    .map_err(|_| NovikovError::Parse(format!("bad precision in {s:?}")))?;
                (&s[..at], Precision::Finite(k))
            }
            None => (s, Precision::Exact),
        };
        let terms = Parser::new(body).terms()?;
        for (e, _) in &terms {
            if !precision.covers(*e) {
                return Err(NovikovError::Parse(format!("term T^{e} lies beyond the declared precision in {s:?}")));
            }
        }
        Ok(NovikovSeries::from_terms(terms, precision))
    }
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, chars: src.chars().collect(), pos: 0 }
    }

    fn error(&self, what: &str) -> NovikovError {
        NovikovError::Parse(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn terms(&mut self) -> Result<Vec<(i64, BigInt)>, NovikovError> {
        let mut out = Vec::new();
        let mut negative = self.eat('-');
        if !negative {
            self.eat('+');
        }
        loop {
            let (e, c) = self.term()?;
            out.push((e, if negative { -c } else { c }));
            match self.peek() {
                None => break,
                Some('+') => {
                    self.pos += 1;
                    negative = false;
                }
                Some('-') => {
                    self.pos += 1;
                    negative = true;
                }
                Some(_) => return Err(self.error("expected '+' or '-'")),
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(i64, BigInt), NovikovError> {
        let coeff = match self.digits() {
            Some(d) => Some(d.parse::<BigInt>().map_err(|_| self.error("bad coefficient"))?),
            None => None,
        };
        let has_t = match coeff {
            Some(_) => {
                let star = self.eat('*');
                let t = self.eat('T');
                if star && !t {
                    return Err(self.error("expected 'T' after '*'"));
                }
                t
            }
            None => {
                if !self.eat('T') {
                    return Err(self.error("expected a coefficient or 'T'"));
                }
                true
            }
        };
        let coeff = coeff.unwrap_or_else(BigInt::one);
        if !has_t {
            return Ok((0, coeff));
        }
        if !self.eat('^') {
            return Ok((1, coeff));
        }
        let negative = self.eat('-');
        let d = self.digits().ok_or_else(|| self.error("expected an exponent"))?;
        let e: i64 = d.parse().map_err(|_| self.error("exponent out of range"))?;
        Ok((if negative { -e } else { e }, coeff))
    }
}
