//! Angle expressions: plain decimals or rational multiples of π.
//!
//! ```text
//! angle   := '-'? (decimal | pi_expr)
//! decimal := DIGITS ('.' DIGITS?)? | '.' DIGITS
//! pi_expr := (INT '*'?)? 'pi' ('/' INT)?
//! ```
//!
//! `pi/8`, `3pi/8`, `3*pi/8`, `pi`, `0.5` and `-pi/4` are all accepted. For π
//! multiples the fraction is reduced before a single multiplication by π and
//! a single division, so `pi/8` yields exactly `PI / 8.0`.

use std::f64::consts::PI;

use bellbox_core::Angle;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid angle {input:?} at position {position}: {message}")]
pub struct ParseError {
    pub input: String,
    pub position: usize,
    pub message: String,
}

struct Cursor<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            input: self.src.to_string(),
            position: self.pos,
            message: message.into(),
        }
    }

    fn integer(&self, text: &str, at: usize) -> Result<u64, ParseError> {
        text.parse().map_err(|_| ParseError {
            input: self.src.to_string(),
            position: at,
            message: "integer out of range".into(),
        })
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn parse_angle(text: &str) -> Result<Angle, ParseError> {
    let mut cur = Cursor::new(text.trim());
    if cur.src.is_empty() {
        return Err(cur.error("empty angle"));
    }
    let negative = cur.eat(b'-');
    let int_start = cur.pos;
    let int_part = cur.digits();

    let value = if cur.src[cur.pos..].starts_with("pi") || cur.peek() == Some(b'*') {
        let numerator = if int_part.is_empty() {
            1
        } else {
            let n = cur.integer(int_part, int_start)?;
            if cur.eat(b'*') && !cur.src[cur.pos..].starts_with("pi") {
                return Err(cur.error("expected 'pi' after '*'"));
            }
            n
        };
        if !cur.src[cur.pos..].starts_with("pi") {
            return Err(cur.error("expected 'pi'"));
        }
        cur.pos += 2;
        let denominator = if cur.eat(b'/') {
            let at = cur.pos;
            let d = cur.digits();
            if d.is_empty() {
                return Err(cur.error("expected integer divisor"));
            }
            let d = cur.integer(d, at)?;
            if d == 0 {
                return Err(ParseError {
                    input: cur.src.to_string(),
                    position: at,
                    message: "divisor must be at least 1".into(),
                });
            }
            d
        } else {
            1
        };
        let g = gcd(numerator, denominator).max(1);
        (numerator / g) as f64 * PI / (denominator / g) as f64
    } else {
        let mut frac_part = "";
        if cur.eat(b'.') {
            frac_part = cur.digits();
        }
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(cur.error("expected a number or 'pi'"));
        }
        cur.src[int_start..cur.pos]
            .parse::<f64>()
            .map_err(|e| cur.error(e.to_string()))?
    };

    if cur.pos != cur.src.len() {
        return Err(cur.error("unexpected trailing input"));
    }
    let value = if negative { -value } else { value };
    Angle::try_new(value).map_err(|e| cur.error(e.to_string()))
}

/// Comma-separated list of angle expressions.
pub fn parse_angle_list(text: &str) -> Result<Vec<Angle>, ParseError> {
    text.split(',').map(parse_angle).collect()
}
