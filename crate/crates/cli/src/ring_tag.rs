//! Parsing of `--ring` tags.

use std::str::FromStr;

use intdiff::scalar::{parse_scalar, Q};

/// A ring without matrix wrapper.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseRing {
    /// `Q[x]`.
    Qx,
    /// Laurent polynomials with logarithms.
    LaurentLog,
    /// Exponential polynomials with recursively defined integration.
    ExpRec,
    /// Exponential polynomials with integration from 0.
    ExpEval0,
    /// Hurwitz series over `Q` (`p = 0`) or `Z/pZ`, truncated at `len`.
    Hurwitz { p: u64, len: usize },
    /// `Q[x]` integrated from the point `c`.
    Shifted(Q),
}

/// The ring selected by `--ring`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingTag {
    /// A scalar ring.
    Base(BaseRing),
    /// `n×n` matrices over a scalar ring.
    Matrix(usize, BaseRing),
}

const PRIMES: [u64; 5] = [0, 2, 3, 5, 7];

impl FromStr for BaseRing {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        match s {
            "qx" => return Ok(BaseRing::Qx),
            "laurentlog" => return Ok(BaseRing::LaurentLog),
            "exppoly:rec" => return Ok(BaseRing::ExpRec),
            "exppoly:eval0" => return Ok(BaseRing::ExpEval0),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("hurwitz:") {
            let (p, len) = rest.split_once(',').ok_or("expected hurwitz:p,N")?;
            let p: u64 = p.trim().parse().map_err(|_| format!("bad characteristic '{p}'"))?;
            let len: usize = len.trim().parse().map_err(|_| format!("bad length '{len}'"))?;
            if !PRIMES.contains(&p) {
                return Err(format!("supported characteristics are {PRIMES:?}"));
            }
            if len == 0 {
                return Err("the truncation length must be positive".into());
            }
            return Ok(BaseRing::Hurwitz { p, len });
        }
        if let Some(c) = s.strip_prefix("shifted:") {
            return parse_scalar::<Q>(c).map(BaseRing::Shifted).ok_or_else(|| format!("bad rational '{c}'"));
        }
        Err(format!("unknown ring '{s}'"))
    }
}

impl FromStr for RingTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if let Some(rest) = s.trim().strip_prefix("matrix:") {
            let (n, inner) = rest.split_once(',').ok_or("expected matrix:n,<ring>")?;
            let n: usize = n.trim().parse().map_err(|_| format!("bad dimension '{n}'"))?;
            if n == 0 {
                return Err("the matrix dimension must be positive".into());
            }
            return Ok(RingTag::Matrix(n, inner.parse()?));
        }
        s.parse().map(RingTag::Base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags() {
        assert_eq!("qx".parse::<RingTag>(), Ok(RingTag::Base(BaseRing::Qx)));
        assert_eq!("hurwitz:5,8".parse::<RingTag>(), Ok(RingTag::Base(BaseRing::Hurwitz { p: 5, len: 8 })));
        assert_eq!("matrix:2,exppoly:eval0".parse::<RingTag>(), Ok(RingTag::Matrix(2, BaseRing::ExpEval0)));
        assert!("hurwitz:4,8".parse::<RingTag>().is_err());
        assert!("shifted:1/2".parse::<RingTag>().is_ok());
    }
}
