//! JSON rendering with fixed float formatting.

use num_bigint::BigInt;
use num_complex::Complex64;
use qreal::IntPoly;
use serde_json::{Map, Number, Value};

/// A float printed with 17 significant digits.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(format!("{x}"));
    }
    // normalise -0.0 so output does not depend on the sign of a zero
    let x = if x == 0.0 { 0.0 } else { x };
    let text = format!("{x:.16e}");
    Value::Number(text.parse::<Number>().expect("formatted float is valid JSON"))
}

pub fn int(b: &BigInt) -> Value {
    Value::Number(b.to_string().parse::<Number>().expect("integer is valid JSON"))
}

pub fn ints(cs: &[BigInt]) -> Value {
    Value::Array(cs.iter().map(int).collect())
}

pub fn poly(p: &IntPoly) -> Value {
    ints(p.coeffs())
}

pub fn complex(z: Complex64) -> Value {
    let mut m = Map::new();
    m.insert("re".into(), num(z.re));
    m.insert("im".into(), num(z.im));
    Value::Object(m)
}

/// `q` as a plain number when real.
pub fn q_value(q: Complex64) -> Value {
    if q.im == 0.0 {
        num(q.re)
    } else {
        complex(q)
    }
}

/// Ordered object builder.
#[derive(Default)]
pub struct Obj(Map<String, Value>);

impl Obj {
    pub fn new() -> Self {
        Obj(Map::new())
    }

    pub fn put(mut self, k: &str, v: impl Into<Value>) -> Self {
        self.0.insert(k.into(), v.into());
        self
    }

    pub fn build(self) -> Value {
        Value::Object(self.0)
    }
}
