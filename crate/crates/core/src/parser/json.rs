//! JSON reader that keeps the source position of every value and key.

use super::{ErrorKind, ParseError, Position};

const MAX_DEPTH: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Value {
    Null,
    Bool(bool),
    /// Raw literal text; `integer` is set when it is an integer fitting `i64`.
    Number {
        text: String,
        integer: Option<i64>,
    },
    String(String),
    Array(Vec<Spanned>),
    Object(Vec<(Spanned, Spanned)>),
}

impl Value {
    pub(crate) fn kind_name(&self) -> &'static str {
        match self {
            Value::Null => "null",
            Value::Bool(_) => "boolean",
            Value::Number {
                integer: Some(_), ..
            } => "integer",
            Value::Number { .. } => "number",
            Value::String(_) => "string",
            Value::Array(_) => "array",
            Value::Object(_) => "object",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Spanned {
    pub value: Value,
    pub pos: Position,
}

pub(crate) struct Reader<'a> {
    src: &'a str,
    idx: usize,
    line: usize,
    column: usize,
    last: Position,
}

impl<'a> Reader<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Reader {
            src,
            idx: 0,
            line: 1,
            column: 1,
            last: Position { line: 1, column: 1 },
        }
    }

    /// Parses exactly one value followed only by whitespace.
    pub(crate) fn document(mut self) -> Result<Spanned, ParseError> {
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.error_here(ErrorKind::Syntax, "empty document"));
        }
        let value = self.value(0)?;
        self.skip_ws();
        if self.peek().is_some() {
            return Err(self.error_here(ErrorKind::Syntax, "unexpected content after document"));
        }
        Ok(value)
    }

    fn pos(&self) -> Position {
        Position {
            line: self.line,
            column: self.column,
        }
    }

    /// Current position, or the last character when at end of input, so
    /// reported positions always fall inside the text.
    fn pos_inside(&self) -> Position {
        if self.idx < self.src.len() {
            self.pos()
        } else {
            self.last
        }
    }

    fn error_here(&self, kind: ErrorKind, message: impl Into<String>) -> ParseError {
        ParseError::new(self.pos_inside(), kind, message)
    }

    fn peek(&self) -> Option<char> {
        self.src[self.idx..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.last = self.pos();
        self.idx += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t' | '\n' | '\r')) {
            self.bump();
        }
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => {
                Err(self.error_here(ErrorKind::Syntax, format!("expected `{want}`, found `{c}`")))
            }
            None => Err(self.error_here(
                ErrorKind::Syntax,
                format!("expected `{want}`, found end of input"),
            )),
        }
    }

    fn value(&mut self, depth: usize) -> Result<Spanned, ParseError> {
        if depth > MAX_DEPTH {
            return Err(self.error_here(ErrorKind::Syntax, "nesting too deep"));
        }
        let pos = self.pos_inside();
        let value = match self.peek() {
            None => return Err(self.error_here(ErrorKind::Syntax, "unexpected end of input")),
            Some('{') => self.object(depth)?,
            Some('[') => self.array(depth)?,
            Some('"') => Value::String(self.string()?),
            Some('-' | '0'..='9') => self.number()?,
            Some(c) if c.is_ascii_alphabetic() => self.keyword()?,
            Some(c) => {
                return Err(
                    self.error_here(ErrorKind::Syntax, format!("unexpected character `{c}`"))
                )
            }
        };
        Ok(Spanned { value, pos })
    }

    fn keyword(&mut self) -> Result<Value, ParseError> {
        let start = self.pos();
        let begin = self.idx;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric()) {
            self.bump();
        }
        match &self.src[begin..self.idx] {
            "true" => Ok(Value::Bool(true)),
            "false" => Ok(Value::Bool(false)),
            "null" => Ok(Value::Null),
            word => Err(ParseError::new(
                start,
                ErrorKind::Syntax,
                format!("unexpected token `{word}`"),
            )),
        }
    }

    fn digits(&mut self) -> usize {
        let mut n = 0;
        while matches!(self.peek(), Some('0'..='9')) {
            self.bump();
            n += 1;
        }
        n
    }

    fn number(&mut self) -> Result<Value, ParseError> {
        let begin = self.idx;
        let mut integral = true;
        if self.peek() == Some('-') {
            self.bump();
        }
        let leading = self.peek();
        let n = self.digits();
        if n == 0 {
            return Err(self.error_here(ErrorKind::Syntax, "expected digits"));
        }
        if leading == Some('0') && n > 1 {
            return Err(self.error_here(ErrorKind::Syntax, "leading zeros are not allowed"));
        }
        if self.peek() == Some('.') {
            integral = false;
            self.bump();
            if self.digits() == 0 {
                return Err(self.error_here(ErrorKind::Syntax, "expected digits after `.`"));
            }
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            integral = false;
            self.bump();
            if matches!(self.peek(), Some('+' | '-')) {
                self.bump();
            }
            if self.digits() == 0 {
                return Err(self.error_here(ErrorKind::Syntax, "expected exponent digits"));
            }
        }
        let text = self.src[begin..self.idx].to_string();
        let integer = if integral {
            text.parse::<i64>().ok()
        } else {
            None
        };
        Ok(Value::Number { text, integer })
    }

    fn string(&mut self) -> Result<String, ParseError> {
        self.expect('"')?;
        let mut out = String::new();
        loop {
            let here = self.pos_inside();
            match self.bump() {
                None => return Err(self.error_here(ErrorKind::Syntax, "unterminated string")),
                Some('"') => return Ok(out),
                Some('\\') => {
                    let c = match self.bump() {
                        Some('"') => '"',
                        Some('\\') => '\\',
                        Some('/') => '/',
                        Some('b') => '\u{8}',
                        Some('f') => '\u{c}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('t') => '\t',
                        Some('u') => self.unicode_escape(here)?,
                        _ => {
                            return Err(ParseError::new(here, ErrorKind::Syntax, "invalid escape"))
                        }
                    };
                    out.push(c);
                }
                Some(c) if (c as u32) < 0x20 => {
                    return Err(ParseError::new(
                        here,
                        ErrorKind::Syntax,
                        "control character in string",
                    ))
                }
                Some(c) => out.push(c),
            }
        }
    }

    fn hex4(&mut self, at: Position) -> Result<u32, ParseError> {
        let mut v = 0;
        for _ in 0..4 {
            let d = self
                .bump()
                .and_then(|c| c.to_digit(16))
                .ok_or_else(|| ParseError::new(at, ErrorKind::Syntax, "invalid \\u escape"))?;
            v = v * 16 + d;
        }
        Ok(v)
    }

    fn unicode_escape(&mut self, at: Position) -> Result<char, ParseError> {
        let hi = self.hex4(at)?;
        let code = if (0xD800..0xDC00).contains(&hi) {
            if self.bump() != Some('\\') || self.bump() != Some('u') {
                return Err(ParseError::new(at, ErrorKind::Syntax, "unpaired surrogate"));
            }
            let lo = self.hex4(at)?;
            if !(0xDC00..0xE000).contains(&lo) {
                return Err(ParseError::new(at, ErrorKind::Syntax, "unpaired surrogate"));
            }
            0x10000 + ((hi - 0xD800) << 10) + (lo - 0xDC00)
        } else {
            hi
        };
        char::from_u32(code)
            .ok_or_else(|| ParseError::new(at, ErrorKind::Syntax, "invalid code point"))
    }

    fn array(&mut self, depth: usize) -> Result<Value, ParseError> {
        self.expect('[')?;
        let mut items = Vec::new();
        self.skip_ws();
        if self.peek() == Some(']') {
            self.bump();
            return Ok(Value::Array(items));
        }
        loop {
            self.skip_ws();
            items.push(self.value(depth + 1)?);
            self.skip_ws();
            match self.peek() {
                Some(',') => {
                    self.bump();
                }
                Some(']') => {
                    self.bump();
                    return Ok(Value::Array(items));
                }
                _ => return Err(self.error_here(ErrorKind::Syntax, "expected `,` or `]`")),
            }
        }
    }

    fn object(&mut self, depth: usize) -> Result<Value, ParseError> {
        self.expect('{')?;
        let mut fields = Vec::new();
        self.skip_ws();
        if self.peek() == Some('}') {
            self.bump();
            return Ok(Value::Object(fields));
        }
        loop {
            self.skip_ws();
            let key_pos = self.pos_inside();
            if self.peek() != Some('"') {
                return Err(self.error_here(ErrorKind::Syntax, "expected a field name"));
            }
            let key = Spanned {
                value: Value::String(self.string()?),
                pos: key_pos,
            };
            self.skip_ws();
            self.expect(':')?;
            self.skip_ws();
            let value = self.value(depth + 1)?;
            fields.push((key, value));
            self.skip_ws();
            match self.peek() {
                Some(',') => {
                    self.bump();
                }
                Some('}') => {
                    self.bump();
                    return Ok(Value::Object(fields));
                }
                _ => return Err(self.error_here(ErrorKind::Syntax, "expected `,` or `}`")),
            }
        }
    }
}
