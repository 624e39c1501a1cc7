//! Polynomial ODE text, one equation per line:
//!
//! ```text
//! x1' = x3^2 - x1*x2 + 0.5*x3*x4
//! x2' = -2*x1*x2
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. The species count is
//! the number of equations; `x1..xn` must each be defined exactly once. A
//! bare number is a constant term.

use crn_realize_core::{ComplexVector, KineticPolynomialSystem, Rational, Scalar};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OdeError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: x{index}' is defined twice")]
    DuplicateEquation { line: usize, index: usize },
    #[error("no equation for x{0}'")]
    MissingEquation(usize),
    #[error("line {line}: x{index} is outside x1..x{count}")]
    UnknownVariable {
        line: usize,
        index: usize,
        count: usize,
    },
    #[error("line {line}: coefficient {text} is not representable")]
    Coefficient { line: usize, text: String },
    #[error("no equations")]
    Empty,
}

/// Parses with `f64` coefficients.
pub fn parse_ode(text: &str) -> Result<KineticPolynomialSystem<f64>, OdeError> {
    parse_with(text, |s| s.parse::<f64>().ok().filter(|v| v.is_finite()))
}

/// Parses with exact rational coefficients; decimals such as `0.25` become
/// `1/4`. Exponent notation is rejected.
pub fn parse_ode_exact(text: &str) -> Result<KineticPolynomialSystem<Rational>, OdeError> {
    parse_with(text, decimal_to_rational)
}

fn decimal_to_rational(text: &str) -> Option<Rational> {
    let (int, frac) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    let mut numer: i64 = 0;
    let mut denom: i64 = 1;
    for ch in int.chars().chain(frac.chars()) {
        let d = i64::from(ch.to_digit(10)?);
        numer = numer.checked_mul(10)?.checked_add(d)?;
    }
    for _ in 0..frac.len() {
        denom = denom.checked_mul(10)?;
    }
    Some(Rational::new(numer, denom))
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
    line: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> OdeError {
        OdeError::Syntax {
            line: self.line,
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), OdeError> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", byte as char)))
        }
    }

    fn integer(&mut self) -> Result<usize, OdeError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| self.error("integer too large"))
    }

    /// Decimal literal with optional fraction and exponent.
    fn number(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        let digits = |c: &mut Self| {
            while c.pos < c.bytes.len() && c.bytes[c.pos].is_ascii_digit() {
                c.pos += 1;
            }
        };
        digits(self);
        if self.bytes.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            digits(self);
        }
        if matches!(self.bytes.get(self.pos), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.bytes.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            let before = self.pos;
            digits(self);
            if before == self.pos {
                self.pos = save;
            }
        }
        std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii number")
    }

    /// `x<index>` with the index returned 1-based.
    fn variable(&mut self) -> Result<usize, OdeError> {
        self.expect(b'x')?;
        if !self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            return Err(self.error("expected a variable index"));
        }
        let index = self.integer()?;
        if index == 0 {
            return Err(self.error("variables are numbered from x1"));
        }
        Ok(index)
    }
}

/// One parsed term: sign, coefficient text, `(variable, power)` factors.
type Term = (bool, Option<String>, Vec<(usize, usize)>);

fn parse_line(cursor: &mut Cursor<'_>) -> Result<(usize, Vec<Term>), OdeError> {
    let lhs = cursor.variable()?;
    cursor.expect(b'\'')?;
    cursor.expect(b'=')?;
    let mut terms = Vec::new();
    let mut negative = match cursor.peek() {
        Some(b'-') => {
            cursor.pos += 1;
            true
        }
        Some(b'+') => {
            cursor.pos += 1;
            false
        }
        _ => false,
    };
    loop {
        let mut coefficient = None;
        let mut factors = Vec::new();
        match cursor.peek() {
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let text = cursor.number().to_string();
                if text == "." {
                    return Err(cursor.error("malformed number"));
                }
                coefficient = Some(text);
                if cursor.peek() == Some(b'*') {
                    cursor.pos += 1;
                } else {
                    // constant term
                    terms.push((negative, coefficient, factors));
                    match next_sign(cursor)? {
                        Some(sign) => {
                            negative = sign;
                            continue;
                        }
                        None => break,
                    }
                }
            }
            Some(b'x') => {}
            Some(_) => return Err(cursor.error("expected a term")),
            None => return Err(cursor.error("expected a term after the operator")),
        }
        loop {
            let var = cursor.variable()?;
            let mut power = 1;
            if cursor.peek() == Some(b'^') {
                cursor.pos += 1;
                if cursor.peek() == Some(b'-') {
                    return Err(cursor.error("negative exponents are not allowed"));
                }
                power = cursor.integer()?;
            }
            factors.push((var, power));
            if cursor.peek() == Some(b'*') {
                cursor.pos += 1;
            } else {
                break;
            }
        }
        terms.push((negative, coefficient, factors));
        match next_sign(cursor)? {
            Some(sign) => negative = sign,
            None => break,
        }
    }
    Ok((lhs, terms))
}

fn next_sign(cursor: &mut Cursor<'_>) -> Result<Option<bool>, OdeError> {
    match cursor.peek() {
        None => Ok(None),
        Some(b'+') => {
            cursor.pos += 1;
            Ok(Some(false))
        }
        Some(b'-') => {
            cursor.pos += 1;
            Ok(Some(true))
        }
        Some(_) => Err(cursor.error("expected '+', '-' or end of line")),
    }
}

fn parse_with<S, F>(text: &str, coefficient: F) -> Result<KineticPolynomialSystem<S>, OdeError>
where
    S: Scalar,
    F: Fn(&str) -> Option<S>,
{
    let mut equations = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut cursor = Cursor {
            bytes: raw.as_bytes(),
            pos: 0,
            line: k + 1,
        };
        let (lhs, terms) = parse_line(&mut cursor)?;
        if equations.iter().any(|(_, l, _)| *l == lhs) {
            return Err(OdeError::DuplicateEquation { line: k + 1, index: lhs });
        }
        equations.push((k + 1, lhs, terms));
    }
    if equations.is_empty() {
        return Err(OdeError::Empty);
    }
    let n = equations.len();
    for i in 1..=n {
        if !equations.iter().any(|(_, l, _)| *l == i) {
            return Err(OdeError::MissingEquation(i));
        }
    }
    let mut f = KineticPolynomialSystem::new(n);
    for (line, lhs, terms) in equations {
        for (negative, coef_text, factors) in terms {
            let mut value = match &coef_text {
                Some(t) => coefficient(t).ok_or_else(|| OdeError::Coefficient {
                    line,
                    text: t.clone(),
                })?,
                None => S::one(),
            };
            if negative {
                value = -value;
            }
            let mut exponent = vec![0u32; n];
            for (var, power) in factors {
                if var > n {
                    return Err(OdeError::UnknownVariable {
                        line,
                        index: var,
                        count: n,
                    });
                }
                let power = u32::try_from(power).map_err(|_| OdeError::Coefficient {
                    line,
                    text: power.to_string(),
                })?;
                exponent[var - 1] += power;
            }
            f.add_term(lhs - 1, ComplexVector::new(exponent), value)
                .expect("indices checked above");
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE2: &str = "\
x1' = x3^2 - x1*x2 + x3*x4 - 2*x1*x2^2*x3
x2' = x3^2 - x1*x2 + 2*x3*x4 - 4*x1*x2^2*x3
x3' = -2*x3^2 + x1*x2 - x1*x2^2*x3 + 2*x4^3
x4' = x1*x2 - x3*x4 + 4*x1*x2^2*x3 - 3*x4^3
";

    #[test]
    fn example2_has_five_monomials() {
        let f = parse_ode(EXAMPLE2).unwrap();
        assert_eq!(f.species_count(), 4);
        assert_eq!(f.len(), 5);
        let term = f.term(&ComplexVector::new(vec![1, 2, 1, 0])).unwrap();
        assert_eq!(term, &[-2.0, -4.0, -1.0, 4.0]);
    }

    #[test]
    fn single_negative_term() {
        let f = parse_ode("x1' = -x1").unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.term(&ComplexVector::new(vec![1])).unwrap(), &[-1.0]);
    }

    #[test]
    fn non_kinetic_text_still_parses() {
        assert!(parse_ode("x1' = 2*x2\nx2' = x1").unwrap().is_kinetic());
        let f = parse_ode("x1' = -2*x2\nx2' = x1").unwrap();
        assert!(!f.is_kinetic());
    }

    #[test]
    fn exact_decimals() {
        let f = parse_ode_exact("x1' = 0.25*x1^2 - 1.5*x1 + 3").unwrap();
        assert_eq!(f.term(&ComplexVector::new(vec![2])).unwrap(), &[Rational::new(1, 4)]);
        assert_eq!(f.term(&ComplexVector::new(vec![1])).unwrap(), &[Rational::new(-3, 2)]);
        assert_eq!(f.term(&ComplexVector::new(vec![0])).unwrap(), &[Rational::from_integer(3)]);
        assert!(matches!(parse_ode_exact("x1' = 1e3*x1"), Err(OdeError::Coefficient { .. })));
    }

    #[test]
    fn repeated_factors_multiply() {
        let f = parse_ode("x1' = x1*x1^2*x2\nx2' = 0*x1").unwrap();
        assert_eq!(f.term(&ComplexVector::new(vec![3, 1])).unwrap(), &[1.0, 0.0]);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_ode("x1' = x1^-2"), Err(OdeError::Syntax { line: 1, .. })));
        assert!(matches!(parse_ode("x1' = x1 +"), Err(OdeError::Syntax { .. })));
        assert!(matches!(parse_ode("x1 = x1"), Err(OdeError::Syntax { .. })));
        assert!(matches!(parse_ode("x1' = x1 x2"), Err(OdeError::Syntax { .. })));
        assert!(matches!(parse_ode("x1' = x3"), Err(OdeError::UnknownVariable { index: 3, .. })));
        assert!(matches!(parse_ode("x2' = x1"), Err(OdeError::MissingEquation(1))));
        assert!(matches!(
            parse_ode("x1' = x1\nx1' = x1"),
            Err(OdeError::DuplicateEquation { line: 2, index: 1 })
        ));
        assert!(matches!(parse_ode("# nothing\n\n"), Err(OdeError::Empty)));
    }
}
