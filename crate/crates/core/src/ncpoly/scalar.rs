use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational coefficient, always kept in lowest terms with a positive
/// denominator.
pub type Scalar = BigRational;

/// Renders a scalar as `num/den`, the form used in every JSON document.
pub fn format_scalar(c: &Scalar) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Parses `num/den` or a bare integer.
pub fn parse_scalar(text: &str) -> Option<Scalar> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

pub(crate) fn int(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

#[cfg(test)]
pub(crate) fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn to_f64(c: &Scalar) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn is_one(c: &Scalar) -> bool {
    c.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_text_round_trip() {
        let c = parse_scalar("-6/4").unwrap();
        assert_eq!(format_scalar(&c), "-3/2");
        assert_eq!(format_scalar(&int(0)), "0/1");
        assert_eq!(parse_scalar("7"), Some(int(7)));
        assert_eq!(parse_scalar("1/0"), None);
        assert_eq!(parse_scalar("x"), None);
    }
}
