//! Parsing of `--x`, `--q` and list-valued flags.

use num_complex::Complex64;
use qreal::cf_core::{cf_encode_rational, cf_encode_real, parse_rational, WordPrefix};
use qreal::{CFStream, CFWord, DigitSource, Error, Rational, Result};

/// A number given on the command line.
pub enum XInput {
    Rational(Rational),
    Stream(CFStream),
    Decimal { text: String, prefix: WordPrefix },
}

impl XInput {
    pub fn parse(s: &str, digits: usize) -> Result<XInput> {
        let s = s.trim();
        if s == "phi" {
            return Ok(XInput::Stream(CFStream::golden()));
        }
        if let Some(rest) = s.strip_prefix("arith:") {
            let (a, b) = rest.split_once(',').ok_or_else(|| Error::domain("arith needs s,r"))?;
            let a: u32 = a.trim().parse().map_err(|_| Error::domain("bad arith start"))?;
            let b: u32 = b.trim().parse().map_err(|_| Error::domain("bad arith step"))?;
            return Ok(XInput::Stream(CFStream::arithmetic(a, b)?));
        }
        if s.contains('.') {
            let prefix = WordPrefix(cf_encode_real(s, digits)?);
            return Ok(XInput::Decimal { text: s.to_string(), prefix });
        }
        Ok(XInput::Rational(parse_rational(s)?))
    }

    pub fn label(&self) -> String {
        match self {
            XInput::Rational(r) => r.to_string(),
            XInput::Stream(s) => s.label().to_string(),
            XInput::Decimal { text, .. } => text.clone(),
        }
    }

    /// A word for rationals `>= 1`; `None` otherwise.
    pub fn word(&self) -> Result<Option<CFWord>> {
        match self {
            XInput::Rational(r) if *r >= Rational::from_integer(1.into()) => Ok(Some(cf_encode_rational(r)?)),
            _ => Ok(None),
        }
    }

    pub fn source(&self) -> Result<Box<dyn DigitSource + '_>> {
        Ok(match self {
            XInput::Rational(_) => match self.word()? {
                Some(w) => Box::new(w),
                None => return Err(Error::domain("digit expansions need x >= 1")),
            },
            XInput::Stream(s) => Box::new(s.clone()),
            XInput::Decimal { prefix, .. } => Box::new(prefix.clone()),
        })
    }

    pub fn digits(&self, n: usize) -> Result<Vec<u32>> {
        Ok(match self {
            XInput::Rational(_) => self.word()?.ok_or_else(|| Error::domain("digit expansions need x >= 1"))?.digits().to_vec(),
            XInput::Stream(s) => s.prefix(n),
            XInput::Decimal { prefix, .. } => prefix.0.clone(),
        })
    }
}

/// `re` or `re,im`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::domain(format!("not a complex number: {s:?}"));
    let mut parts = s.split(',').map(str::trim);
    let re: f64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let im: f64 = match parts.next() {
        Some(p) => p.parse().map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() || !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

pub fn parse_range(s: &str) -> Result<(f64, f64)> {
    let z = parse_complex(s)?;
    Ok((z.re, z.im))
}

pub fn parse_word(s: &str) -> Result<CFWord> {
    let digits = s
        .split(',')
        .map(|d| d.trim().parse::<u32>().map_err(|_| Error::domain(format!("bad digit {d:?}"))))
        .collect::<Result<Vec<_>>>()?;
    CFWord::new(digits)
}
