use std::fmt;

use crate::error::{Error, Result};

/// A parameter value: integer, bare identifier, or integer list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Int(i64),
    Ident(String),
    List(Vec<i64>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Ident(s) => f.write_str(s),
            Value::List(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", parts.join(", "))
            }
        }
    }
}

/// Named parameters in the order written.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Params(pub Vec<(String, Value)>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: Value) -> Self {
        self.0.push((key.to_string(), value));
        self
    }

    pub fn with_int(self, key: &str, n: i64) -> Self {
        self.with(key, Value::Int(n))
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Rejects names outside `allowed` so typos do not pass silently.
    pub fn check_names(&self, rule: &str, allowed: &[&str]) -> Result<()> {
        for (k, _) in &self.0 {
            if !allowed.contains(&k.as_str()) {
                return Err(Error::InvalidParameter {
                    rule: rule.into(),
                    detail: format!("unexpected parameter '{k}' (expected one of: {})", allowed.join(", ")),
                });
            }
        }
        Ok(())
    }

    pub fn int(&self, rule: &str, key: &str) -> Result<Option<i64>> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Int(n)) => Ok(Some(*n)),
            Some(other) => Err(bad(rule, key, "an integer", other)),
        }
    }

    pub fn req_int(&self, rule: &str, key: &str) -> Result<i64> {
        self.int(rule, key)?.ok_or_else(|| missing(rule, key))
    }

    /// A required integer that must lie in `min..`.
    pub fn req_at_least(&self, rule: &str, key: &str, min: i64) -> Result<u32> {
        let n = self.req_int(rule, key)?;
        to_u32(rule, key, n, min)
    }

    pub fn opt_at_least(&self, rule: &str, key: &str, min: i64) -> Result<Option<u32>> {
        self.int(rule, key)?.map(|n| to_u32(rule, key, n, min)).transpose()
    }

    pub fn ident(&self, rule: &str, key: &str) -> Result<Option<&str>> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Ident(s)) => Ok(Some(s)),
            Some(other) => Err(bad(rule, key, "an identifier", other)),
        }
    }

    pub fn list(&self, rule: &str, key: &str) -> Result<Option<Vec<u32>>> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::List(xs)) => xs.iter().map(|&n| to_u32(rule, key, n, 0)).collect::<Result<_>>().map(Some),
            Some(Value::Int(n)) => Ok(Some(vec![to_u32(rule, key, *n, 0)?])),
            Some(other) => Err(bad(rule, key, "a list of integers", other)),
        }
    }
}

fn to_u32(rule: &str, key: &str, n: i64, min: i64) -> Result<u32> {
    if n < min {
        return Err(Error::InvalidParameter {
            rule: rule.into(),
            detail: format!("{key} = {n} must be at least {min}"),
        });
    }
    u32::try_from(n).map_err(|_| Error::InvalidParameter {
        rule: rule.into(),
        detail: format!("{key} = {n} is too large"),
    })
}

fn bad(rule: &str, key: &str, want: &str, got: &Value) -> Error {
    Error::InvalidParameter {
        rule: rule.into(),
        detail: format!("{key} must be {want}, got {got}"),
    }
}

fn missing(rule: &str, key: &str) -> Error {
    Error::InvalidParameter {
        rule: rule.into(),
        detail: format!("missing parameter '{key}'"),
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// A generator or construction call: `name(input, .., key=value, ..)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Call {
    pub name: String,
    pub inputs: Vec<String>,
    pub params: Params,
}

impl Call {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            inputs: Vec::new(),
            params: Params::new(),
        }
    }

    pub fn input(mut self, id: impl Into<String>) -> Self {
        self.inputs.push(id.into());
        self
    }

    pub fn param(mut self, key: &str, value: Value) -> Self {
        self.params.0.push((key.to_string(), value));
        self
    }

    pub fn int(self, key: &str, n: i64) -> Self {
        self.param(key, Value::Int(n))
    }

    pub fn ident(self, key: &str, s: &str) -> Self {
        self.param(key, Value::Ident(s.to_string()))
    }

    /// Script form: `name(a, b, k=v)`.
    pub fn script_form(&self) -> String {
        let mut parts: Vec<String> = self.inputs.clone();
        parts.extend(self.params.0.iter().map(|(k, v)| format!("{k}={v}")));
        format!("{}({})", self.name, parts.join(", "))
    }

    /// Trace form: `name(a, b; k=v)`.
    pub fn trace_form(&self) -> String {
        if self.params.is_empty() || self.inputs.is_empty() {
            self.script_form()
        } else {
            format!("{}({}; {})", self.name, self.inputs.join(", "), self.params)
        }
    }
}

pub fn is_ident_start(c: char) -> bool {
    c == '_' || c.is_ascii_alphabetic()
}

pub fn is_ident_char(c: char) -> bool {
    c == '_' || c == '.' || c.is_ascii_alphanumeric()
}

/// A small cursor over one line, tracking the column for diagnostics.
pub struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    pub fn column(&self) -> usize {
        self.src[..self.pos].chars().count() + 1
    }

    pub fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn skip_ws(&mut self) {
        let t = self.rest().trim_start();
        self.pos = self.src.len() - t.len();
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &str) -> std::result::Result<(), (usize, String)> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{tok}'")))
        }
    }

    pub fn error(&self, msg: String) -> (usize, String) {
        (self.column(), msg)
    }

    pub fn ident(&mut self) -> std::result::Result<String, (usize, String)> {
        self.skip_ws();
        let rest = self.rest();
        match rest.chars().next() {
            Some(c) if is_ident_start(c) => {}
            _ => return Err(self.error("expected an identifier".into())),
        }
        let len: usize = rest.chars().take_while(|&c| is_ident_char(c)).map(char::len_utf8).sum();
        self.pos += len;
        Ok(rest[..len].to_string())
    }

    pub fn int(&mut self) -> std::result::Result<i64, (usize, String)> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .char_indices()
            .take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && c == '-'))
            .count();
        let n = rest[..len]
            .parse()
            .map_err(|_| self.error("expected an integer".into()))?;
        self.pos += len;
        Ok(n)
    }

    fn value(&mut self) -> std::result::Result<Value, (usize, String)> {
        match self.peek() {
            Some('[') => {
                self.eat("[");
                let mut xs = Vec::new();
                if !self.eat("]") {
                    loop {
                        xs.push(self.int()?);
                        if self.eat("]") {
                            break;
                        }
                        self.expect(",")?;
                    }
                }
                Ok(Value::List(xs))
            }
            Some(c) if c == '-' || c.is_ascii_digit() => Ok(Value::Int(self.int()?)),
            Some(c) if is_ident_start(c) => Ok(Value::Ident(self.ident()?)),
            _ => Err(self.error("expected a value".into())),
        }
    }

    /// Parses `name(args)`; positional inputs must precede named
    /// parameters, and `;` may stand in for the separating comma.
    pub fn call(&mut self) -> std::result::Result<Call, (usize, String)> {
        let name = self.ident()?;
        self.expect("(")?;
        let mut call = Call::new(name);
        if self.eat(")") {
            return Ok(call);
        }
        loop {
            let col = self.column();
            let key = self.ident()?;
            if self.eat("=") {
                let v = self.value()?;
                if call.params.get(&key).is_some() {
                    return Err((col, format!("parameter '{key}' given twice")));
                }
                call.params.0.push((key, v));
            } else if call.params.is_empty() {
                call.inputs.push(key);
            } else {
                return Err((col, format!("input '{key}' after named parameters")));
            }
            if self.eat(")") {
                return Ok(call);
            }
            if !self.eat(",") && !self.eat(";") {
                return Err(self.error("expected ',' or ')'".into()));
            }
        }
    }
}

pub fn parse_call(src: &str) -> std::result::Result<Call, (usize, String)> {
    let mut c = Cursor::new(src);
    let call = c.call()?;
    if !c.at_end() {
        return Err(c.error("trailing input".into()));
    }
    Ok(call)
}
