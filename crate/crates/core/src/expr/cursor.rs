use crate::error::{Error, ParseDiagnostics, Result};

/// Character cursor shared by the function and scale parsers.
pub(super) struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    pub fn new(src: &str) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    /// Next non-whitespace character, without consuming it.
    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let msg = match self.peek() {
                Some(found) => format!("expected '{c}', found '{found}'"),
                None => format!("expected '{c}', found end of input"),
            };
            Err(self.error_here(msg))
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn error_at(&self, position: usize, message: impl Into<String>) -> Error {
        Error::Syntax(ParseDiagnostics {
            position: position.min(self.chars.len()),
            message: message.into(),
        })
    }

    pub fn error_here(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    /// An ASCII identifier (letters, digits after the first, underscores).
    pub fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        if !self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphabetic() || *c == '_')
        {
            return None;
        }
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
        {
            self.pos += 1;
        }
        Some(self.chars[start..self.pos].iter().collect())
    }

    pub fn at_number(&mut self) -> bool {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => true,
            Some('.') => self
                .chars
                .get(self.pos + 1)
                .is_some_and(|c| c.is_ascii_digit()),
            _ => false,
        }
    }

    /// Unsigned decimal literal with optional fraction and exponent.
    pub fn number(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        let digits = |cur: &mut Cursor| {
            let s = cur.pos;
            while cur.chars.get(cur.pos).is_some_and(char::is_ascii_digit) {
                cur.pos += 1;
            }
            cur.pos - s
        };
        let mut n = digits(self);
        if self.chars.get(self.pos) == Some(&'.') {
            self.pos += 1;
            n += digits(self);
        }
        if n == 0 {
            self.pos = start;
            return Err(self.error_here("expected a number"));
        }
        if matches!(self.chars.get(self.pos), Some('e' | 'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.chars.get(self.pos), Some('+' | '-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                // `2e` followed by something else: leave the `e` for the caller
                self.pos = mark;
            }
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        let v: f64 = text
            .parse()
            .map_err(|_| self.error_at(start, format!("invalid number '{text}'")))?;
        if !v.is_finite() {
            return Err(self.error_at(start, format!("number '{text}' is out of range")));
        }
        Ok(v)
    }

    /// Optionally signed literal.
    pub fn signed_number(&mut self) -> Result<f64> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let v = self.number()?;
        Ok(if neg { -v } else { v })
    }
}
