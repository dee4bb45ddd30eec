//! Scalar types: arbitrary-precision rationals and Gaussian rationals.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = num_rational::BigRational;

/// A complex number with exact rational real and imaginary parts.
/// Conjugation, equality and all field operations are exact.
pub type GaussRat = num_complex::Complex<Rat>;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Gaussian rational with zero imaginary part.
pub fn gr(re: Rat) -> GaussRat {
    GaussRat::new(re, Rat::zero())
}

pub fn gri(re: Rat, im: Rat) -> GaussRat {
    GaussRat::new(re, im)
}

pub fn gr_int(n: i64) -> GaussRat {
    gr(rat_int(n))
}

pub fn gr_frac(num: i64, den: i64) -> GaussRat {
    gr(rat(num, den))
}

/// `|c|^2 = re^2 + im^2`, exact and rational.
pub fn norm_sqr(c: &GaussRat) -> Rat {
    &c.re * &c.re + &c.im * &c.im
}

pub fn is_real(c: &GaussRat) -> bool {
    c.im.is_zero()
}

/// Renders a rational in the canonical `p/q` form used throughout the
/// JSON interfaces (`3`, `-3/4`).
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_from_string(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str, pos: usize| -> Result<BigInt> {
        t.parse::<BigInt>().map_err(|_| Error::Parse {
            pos,
            msg: format!("invalid integer `{t}`"),
        })
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let n = parse_int(num, 0)?;
            let d = parse_int(den, num.len() + 1)?;
            if d.is_zero() {
                return Err(Error::Parse {
                    pos: num.len() + 1,
                    msg: "zero denominator".into(),
                });
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(parse_int(s, 0)?)),
    }
}

/// Non-authoritative decimal rendering, for display only.
pub fn rat_to_f64(r: &Rat) -> f64 {
    let digits = 18u32;
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r.numer() * &scale / r.denom();
    let mut approx = 0.0f64;
    let mut rest = scaled.abs();
    let chunk = BigInt::from(1u64 << 32);
    let mut factor = 1.0f64;
    while !rest.is_zero() {
        let (q, r) = num_integer::Integer::div_rem(&rest, &chunk);
        let low: u64 = (&r).try_into().unwrap_or(0);
        approx += low as f64 * factor;
        factor *= 4294967296.0;
        rest = q;
    }
    let signed = if r.numer().is_negative() { -approx } else { approx };
    signed / 1e18
}

/// Formats a Gaussian rational the way the polynomial grammar expects:
/// `3/4`, `-i`, `1/2+3/4*i`.
pub fn gauss_to_string(c: &GaussRat) -> String {
    if c.im.is_zero() {
        return rat_to_string(&c.re);
    }
    let im_part = |im: &Rat| -> String {
        if im.is_one() {
            "i".into()
        } else if (-im.clone()).is_one() {
            "-i".into()
        } else {
            format!("{}*i", rat_to_string(im))
        }
    };
    if c.re.is_zero() {
        return im_part(&c.im);
    }
    if c.im.is_negative() {
        format!("{}{}", rat_to_string(&c.re), im_part(&c.im))
    } else {
        format!("{}+{}", rat_to_string(&c.re), im_part(&c.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_string_roundtrip() {
        for (n, d) in [(3, 1), (-3, 4), (0, 1), (22, 7)] {
            let r = rat(n, d);
            assert_eq!(rat_from_string(&rat_to_string(&r)).unwrap(), r);
        }
        assert!(rat_from_string("1/0").is_err());
        assert!(rat_from_string("x").is_err());
    }

    #[test]
    fn gauss_formatting() {
        assert_eq!(gauss_to_string(&gr_int(3)), "3");
        assert_eq!(gauss_to_string(&gri(rat_int(0), rat_int(-1))), "-i");
        assert_eq!(gauss_to_string(&gri(rat(1, 2), rat(3, 4))), "1/2+3/4*i");
        assert_eq!(gauss_to_string(&gri(rat(1, 2), rat(-3, 4))), "1/2-3/4*i");
    }

    #[test]
    fn approx_rendering() {
        assert!((rat_to_f64(&rat(1, 2)) - 0.5).abs() < 1e-12);
        assert!((rat_to_f64(&rat(-22, 7)) + 22.0 / 7.0).abs() < 1e-12);
    }
}
