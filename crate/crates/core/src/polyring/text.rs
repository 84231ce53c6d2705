//! Plain-text form used in traces and golden files.
//!
//! Terms are written in decreasing monomial order as `coeff*a<i>^e*...`,
//! joined by `" + "`. The coefficient is always present, exponents of one
//! are omitted and the zero polynomial is `0`. Parsing is strict so that a
//! round trip reproduces the input byte for byte.

use std::fmt;
use std::str::FromStr;

use super::monomial::{Monomial, Var};
use super::poly::{Coeff, Polynomial};
use crate::error::{Error, Result};

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (v, e) in m.iter() {
                if e == 1 {
                    write!(f, "*{v}")?;
                } else {
                    write!(f, "*{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

fn parse_term(s: &str) -> Result<(Monomial, Coeff)> {
    let mut parts = s.split('*');
    let head = parts.next().unwrap_or("");
    let c: Coeff = head
        .parse()
        .map_err(|_| Error::Parse(format!("bad coefficient '{head}'")))?;
    let mut m = Monomial::ONE;
    for p in parts {
        let body = p
            .strip_prefix('a')
            .ok_or_else(|| Error::Parse(format!("bad factor '{p}'")))?;
        let (idx, e) = match body.split_once('^') {
            Some((i, e)) => (i, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in '{p}'")))?),
            None => (body, 1),
        };
        let idx: u32 = idx
            .parse()
            .map_err(|_| Error::Parse(format!("bad variable '{p}'")))?;
        let v = Var::new(idx)?;
        if m.exp(v) != 0 || e == 0 {
            return Err(Error::Parse(format!("non-canonical factor '{p}'")));
        }
        m = m.with_exp(v, e);
    }
    Ok((m, c))
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Polynomial> {
        let s = s.trim();
        if s == "0" {
            return Ok(Polynomial::zero());
        }
        let terms = s
            .split(" + ")
            .map(parse_term)
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_format() {
        let p: Polynomial = "1*a1*a2 + -2*a3^2 + 5".parse().unwrap();
        assert_eq!(p.to_string(), "-2*a3^2 + 1*a1*a2 + 5");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("x1 + 2".parse::<Polynomial>().is_err());
        assert!("1*a1*a1".parse::<Polynomial>().is_err());
        assert!("1*a40".parse::<Polynomial>().is_err());
    }
}
