//! Minimal JSON emitter with the two properties the report contract needs:
//! object keys serialize in insertion order, and floats are printed with 17
//! significant digits so reports are byte-reproducible.

#[derive(Debug, Clone)]
pub enum JVal {
    Null,
    Bool(bool),
    Int(i128),
    Float(f64),
    Str(String),
    Arr(Vec<JVal>),
    Obj(Vec<(String, JVal)>),
}

impl JVal {
    pub fn obj() -> JVal {
        JVal::Obj(Vec::new())
    }

    pub fn push(&mut self, key: &str, value: impl Into<JVal>) -> &mut Self {
        match self {
            JVal::Obj(fields) => fields.push((key.to_string(), value.into())),
            _ => unreachable!("push on non-object"),
        }
        self
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out);
        out
    }

    fn write(&self, out: &mut String) {
        match self {
            JVal::Null => out.push_str("null"),
            JVal::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            JVal::Int(v) => out.push_str(&v.to_string()),
            JVal::Float(v) => out.push_str(&format_float(*v)),
            JVal::Str(s) => write_escaped(s, out),
            JVal::Arr(items) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    item.write(out);
                }
                out.push(']');
            }
            JVal::Obj(fields) => {
                out.push('{');
                for (i, (k, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    write_escaped(k, out);
                    out.push(':');
                    v.write(out);
                }
                out.push('}');
            }
        }
    }
}

/// 17 significant digits in exponent form; non-finite values have no JSON
/// representation and become null.
pub fn format_float(v: f64) -> String {
    if !v.is_finite() {
        return "null".to_string();
    }
    format!("{v:.16e}")
}

fn write_escaped(s: &str, out: &mut String) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
}

impl From<bool> for JVal {
    fn from(v: bool) -> JVal {
        JVal::Bool(v)
    }
}
impl From<i128> for JVal {
    fn from(v: i128) -> JVal {
        JVal::Int(v)
    }
}
impl From<u64> for JVal {
    fn from(v: u64) -> JVal {
        JVal::Int(v as i128)
    }
}
impl From<usize> for JVal {
    fn from(v: usize) -> JVal {
        JVal::Int(v as i128)
    }
}
impl From<f64> for JVal {
    fn from(v: f64) -> JVal {
        JVal::Float(v)
    }
}
impl From<&str> for JVal {
    fn from(v: &str) -> JVal {
        JVal::Str(v.to_string())
    }
}
impl From<String> for JVal {
    fn from(v: String) -> JVal {
        JVal::Str(v)
    }
}
impl From<Vec<JVal>> for JVal {
    fn from(v: Vec<JVal>) -> JVal {
        JVal::Arr(v)
    }
}
