//! Recursive-descent parser for the network grammar:
//!
//! ```text
//! element := "spring"   "(" "mu"  "=" number ")"
//!          | "dashpot"  "(" "eta" "=" number ")"
//!          | "series"   "(" element ("," element)+ ")"
//!          | "parallel" "(" element ("," element)+ ")"
//! ```
//!
//! Whitespace is ignored between tokens.

use thiserror::Error;

use super::NetworkExpr;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    /// `position` is a byte offset into the input.
    #[error("syntax error at position {position}: expected {expected}, found {found}")]
    Syntax {
        position: usize,
        expected: String,
        found: String,
    },
    #[error("parameter `{name}` at position {position} must be positive, got {value}")]
    NonPositiveParameter {
        position: usize,
        name: &'static str,
        value: f64,
    },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { position, .. }
            | ParseError::NonPositiveParameter { position, .. } => *position,
        }
    }
}

pub fn parse(text: &str) -> Result<NetworkExpr, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let expr = p.element()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("end of input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn found(&self) -> String {
        match self.rest().chars().next() {
            None => "end of input".to_string(),
            Some(_) => {
                let token: String = self
                    .rest()
                    .chars()
                    .take_while(|c| c.is_ascii_alphanumeric() || *c == '_' || *c == '.')
                    .collect();
                if token.is_empty() {
                    format!("`{}`", self.rest().chars().next().unwrap_or(' '))
                } else {
                    format!("`{token}`")
                }
            }
        }
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            position: self.pos,
            expected: expected.to_string(),
            found: self.found(),
        }
    }

    fn expect(&mut self, ch: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.rest().starts_with(ch) {
            self.pos += ch.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("`{ch}`")))
        }
    }

    fn ident(&mut self) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.rest().len());
        self.pos += len;
        (start, &self.src[start..start + len])
    }

    fn keyword(&mut self, word: &str) -> Result<(), ParseError> {
        let (start, id) = self.ident();
        if id == word {
            Ok(())
        } else {
            self.pos = start;
            Err(self.error(&format!("`{word}`")))
        }
    }

    fn number(&mut self) -> Result<(usize, f64), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.rest().as_bytes();
        let mut i = 0;
        if matches!(bytes.first(), Some(b'+' | b'-')) {
            i += 1;
        }
        let int_digits = bytes[i..].iter().take_while(|b| b.is_ascii_digit()).count();
        i += int_digits;
        let mut frac_digits = 0;
        if bytes.get(i) == Some(&b'.') {
            frac_digits = bytes[i + 1..]
                .iter()
                .take_while(|b| b.is_ascii_digit())
                .count();
            i += 1 + frac_digits;
        }
        if int_digits + frac_digits == 0 {
            return Err(self.error("number"));
        }
        if matches!(bytes.get(i), Some(b'e' | b'E')) {
            let mut j = i + 1;
            if matches!(bytes.get(j), Some(b'+' | b'-')) {
                j += 1;
            }
            let exp_digits = bytes[j..].iter().take_while(|b| b.is_ascii_digit()).count();
            if exp_digits == 0 {
                self.pos = start + j;
                return Err(self.error("exponent digits"));
            }
            i = j + exp_digits;
        }
        let text = &self.rest()[..i];
        let value: f64 = text.parse().map_err(|_| self.error("number"))?;
        self.pos += i;
        Ok((start, value))
    }

    fn parameter(&mut self, name: &'static str) -> Result<f64, ParseError> {
        self.expect('(')?;
        self.keyword(name)?;
        self.expect('=')?;
        let (position, value) = self.number()?;
        if !(value > 0.0 && value.is_finite()) {
            return Err(ParseError::NonPositiveParameter {
                position,
                name,
                value,
            });
        }
        self.expect(')')?;
        Ok(value)
    }

    fn children(&mut self) -> Result<Vec<NetworkExpr>, ParseError> {
        self.expect('(')?;
        let mut items = vec![self.element()?];
        loop {
            self.skip_ws();
            if self.rest().starts_with(',') {
                self.pos += 1;
                items.push(self.element()?);
            } else if self.rest().starts_with(')') {
                if items.len() < 2 {
                    return Err(self.error("`,` (a composite needs at least two elements)"));
                }
                self.pos += 1;
                return Ok(items);
            } else {
                return Err(self.error("`,` or `)`"));
            }
        }
    }

    fn element(&mut self) -> Result<NetworkExpr, ParseError> {
        let (start, id) = self.ident();
        match id {
            "spring" => Ok(NetworkExpr::Spring(self.parameter("mu")?)),
            "dashpot" => Ok(NetworkExpr::Dashpot(self.parameter("eta")?)),
            "series" => Ok(NetworkExpr::Series(self.children()?)),
            "parallel" => Ok(NetworkExpr::Parallel(self.children()?)),
            _ => {
                self.pos = start;
                Err(self.error("`spring`, `dashpot`, `series` or `parallel`"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_leaves_and_composites() {
        assert_eq!(parse("spring(mu=1.0)").unwrap(), NetworkExpr::Spring(1.0));
        assert_eq!(
            parse("series(spring(mu=1), dashpot(eta=2))").unwrap(),
            NetworkExpr::Series(vec![NetworkExpr::Spring(1.0), NetworkExpr::Dashpot(2.0)])
        );
        assert_eq!(
            parse("  parallel ( spring ( mu = 2.5e-1 ) ,dashpot(eta=3E2) , spring(mu=.5) ) ")
                .unwrap(),
            NetworkExpr::Parallel(vec![
                NetworkExpr::Spring(0.25),
                NetworkExpr::Dashpot(300.0),
                NetworkExpr::Spring(0.5)
            ])
        );
    }

    #[test]
    fn single_child_composite_is_a_syntax_error() {
        let err = parse("series(spring(mu=1))").unwrap_err();
        assert!(
            matches!(err, ParseError::Syntax { position: 19, .. }),
            "{err}"
        );
    }

    #[test]
    fn non_positive_parameters() {
        assert_eq!(
            parse("spring(mu=0)").unwrap_err(),
            ParseError::NonPositiveParameter {
                position: 10,
                name: "mu",
                value: 0.0
            }
        );
        assert!(matches!(
            parse("dashpot(eta=-2)").unwrap_err(),
            ParseError::NonPositiveParameter { .. }
        ));
    }

    #[test]
    fn syntax_error_positions() {
        assert_eq!(parse("sprang(mu=1)").unwrap_err().position(), 0);
        assert_eq!(parse("spring(eta=1)").unwrap_err().position(), 7);
        assert_eq!(parse("spring(mu=1) x").unwrap_err().position(), 13);
        assert_eq!(parse("spring(mu=1e)").unwrap_err().position(), 12);
        assert_eq!(
            parse("series(spring(mu=1) dashpot(eta=1))")
                .unwrap_err()
                .position(),
            20
        );
        assert_eq!(parse("").unwrap_err().position(), 0);
    }
}
