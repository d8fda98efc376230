//! The textual body grammar and its inverse.
//!
//! ```text
//! body := "point:" INT | "ball:" INT "," REAL | "box:" REAL {"," REAL}
//!       | "cube:" INT ["," REAL] | "product(" body ";" body ")"
//!       | "scale(" REAL ";" body ")" | "embed(" body ";" INT ")"
//! ```
//!
//! `cube:n,s` is sugar for `scale(s; cube:n)`. Formatting inverts parsing up
//! to that sugar; translated bodies have no textual form.

use ivlab::bodies::BodySpec;
use std::fmt;

/// A diagnostic pointing at the byte where parsing stopped making sense.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at byte {}", self.message, self.offset)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.input[self.pos..]
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError { offset: self.pos, message: message.into() }
    }

    fn eat(&mut self, token: &str) -> Result<(), ParseError> {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(self.err(format!("expected \"{token}\"")))
        }
    }

    fn parse_usize(&mut self) -> Result<usize, ParseError> {
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.err("expected an integer"));
        }
        let text = &self.rest()[..digits];
        let value = text.parse().map_err(|_| self.err("integer out of range"))?;
        self.pos += digits;
        Ok(value)
    }

    fn parse_real(&mut self) -> Result<f64, ParseError> {
        let allowed = |b: u8| b.is_ascii_digit() || matches!(b, b'.' | b'e' | b'E' | b'+' | b'-');
        let len = self.rest().bytes().take_while(|&b| allowed(b)).count();
        if len == 0 {
            return Err(self.err("expected a number"));
        }
        let text = &self.rest()[..len];
        let value: f64 = text
            .parse()
            .map_err(|_| self.err(format!("\"{text}\" is not a number")))?;
        self.pos += len;
        Ok(value)
    }

    fn parse_body(&mut self) -> Result<BodySpec, ParseError> {
        let rest = self.rest();
        if rest.starts_with("point:") {
            self.pos += 6;
            Ok(BodySpec::Point { dim: self.parse_usize()? })
        } else if rest.starts_with("ball:") {
            self.pos += 5;
            let dim = self.parse_usize()?;
            self.eat(",")?;
            Ok(BodySpec::Ball { dim, radius: self.parse_real()? })
        } else if rest.starts_with("box:") {
            self.pos += 4;
            let mut lengths = vec![self.parse_real()?];
            while self.rest().starts_with(',') {
                self.pos += 1;
                lengths.push(self.parse_real()?);
            }
            Ok(BodySpec::Box { lengths })
        } else if rest.starts_with("cube:") {
            self.pos += 5;
            let dim = self.parse_usize()?;
            if self.rest().starts_with(',') {
                // commit to the optional scale only if a real follows
                let before = self.pos;
                self.pos += 1;
                if let Ok(s) = self.parse_real() {
                    return Ok(BodySpec::scaled(s, BodySpec::cube(dim)));
                }
                self.pos = before;
            }
            Ok(BodySpec::cube(dim))
        } else if rest.starts_with("product(") {
            self.pos += 8;
            let left = self.parse_body()?;
            self.eat(";")?;
            let right = self.parse_body()?;
            self.eat(")")?;
            Ok(BodySpec::product(left, right))
        } else if rest.starts_with("scale(") {
            self.pos += 6;
            let factor = self.parse_real()?;
            self.eat(";")?;
            let inner = self.parse_body()?;
            self.eat(")")?;
            Ok(BodySpec::scaled(factor, inner))
        } else if rest.starts_with("embed(") {
            self.pos += 6;
            let inner = self.parse_body()?;
            self.eat(";")?;
            let extra = self.parse_usize()?;
            self.eat(")")?;
            Ok(BodySpec::embedded(inner, extra))
        } else {
            Err(self.err(
                "expected one of point:, ball:, box:, cube:, product(, scale(, embed(",
            ))
        }
    }
}

/// Parse a body expression. Syntax problems carry a byte offset; the parsed
/// body is also validated, so `ball:2,-1` is rejected here too.
pub fn parse_body(text: &str) -> Result<BodySpec, ParseError> {
    let mut p = Parser { input: text, pos: 0 };
    let body = p.parse_body()?;
    if p.pos != text.len() {
        return Err(p.err("unexpected trailing input"));
    }
    body.validate()
        .map_err(|e| ParseError { offset: 0, message: e.to_string() })?;
    Ok(body)
}

fn is_unit_cube(lengths: &[f64]) -> bool {
    !lengths.is_empty() && lengths.iter().all(|&l| l == 1.0)
}

/// Render a body in the grammar. The output reparses to an identical body.
/// Translated bodies are the one constructor without a textual form.
pub fn format_body(body: &BodySpec) -> Result<String, String> {
    match body {
        BodySpec::Point { dim } => Ok(format!("point:{dim}")),
        BodySpec::Ball { dim, radius } => Ok(format!("ball:{dim},{radius}")),
        BodySpec::Box { lengths } if is_unit_cube(lengths) => {
            Ok(format!("cube:{}", lengths.len()))
        }
        BodySpec::Box { lengths } => Ok(format!(
            "box:{}",
            lengths.iter().map(f64::to_string).collect::<Vec<_>>().join(",")
        )),
        BodySpec::Product { left, right } => Ok(format!(
            "product({};{})",
            format_body(left)?,
            format_body(right)?
        )),
        BodySpec::Scaled { factor, inner } => match inner.as_ref() {
            BodySpec::Box { lengths } if is_unit_cube(lengths) => {
                Ok(format!("cube:{},{factor}", lengths.len()))
            }
            _ => Ok(format!("scale({factor};{})", format_body(inner)?)),
        },
        BodySpec::Embedded { inner, extra_dims } => {
            Ok(format!("embed({};{extra_dims})", format_body(inner)?))
        }
        BodySpec::Translated { .. } => Err("translated bodies have no textual form".into()),
    }
}
