//! Integer Laurent polynomials in one variable, the coefficient ring of the
//! Hecke modules. Arithmetic is exact; zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::{Error, Result};

/// A Laurent polynomial with integer coefficients, stored as a sparse map
/// exponent -> coefficient.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, c)
    }

    /// c * x^k
    pub fn monomial(k: i32, c: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != 0 {
            coeffs.insert(k, c);
        }
        LaurentPoly { coeffs }
    }

    /// x^k
    pub fn x_pow(k: i32) -> Self {
        Self::monomial(k, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i32) -> i64 {
        self.coeffs.get(&k).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    /// The bar involution x -> x^{-1}.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&k, &c)| (-k, c)).collect(),
        }
    }

    /// True if every exponent is negative (the x^{-1} Z[x^{-1}] condition
    /// with zero constant term).
    pub fn has_only_negative_exponents(&self) -> bool {
        self.coeffs.keys().all(|&k| k < 0)
    }

    /// The part of the polynomial with strictly negative exponents.
    pub fn negative_part(&self) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&k, _)| k < 0)
                .map(|(&k, &c)| (k, c))
                .collect(),
        }
    }

    fn insert_term(&mut self, k: i32, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(k).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&k);
        }
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&k, &c) in &rhs.coeffs {
            self.insert_term(k, c);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&k, &c) in &rhs.coeffs {
            self.insert_term(k, -c);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&j, &a) in &self.coeffs {
            for (&k, &b) in &rhs.coeffs {
                out.insert_term(j + k, a * b);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&k, &c)| (k, -c)).collect(),
        }
    }
}

/// Canonical text form, e.g. `x^-2 + 3 - x`: one term per exponent in
/// ascending exponent order, `x` and `x^k` monomials with explicit signs.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&k, &c) in &self.coeffs {
            let mag = c.abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (k, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "x")?,
                (1, m) => write!(f, "{m}*x")?,
                (_, 1) => write!(f, "x^{k}")?,
                (_, m) => write!(f, "{m}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        // Split on " + " / " - " while keeping a possible leading sign.
        let mut rest = s;
        let mut sign: i64 = 1;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r.trim_start();
        }
        loop {
            let (term, next) = match (rest.find(" + "), rest.find(" - ")) {
                (Some(p), Some(m)) if p < m => (&rest[..p], Some((1, &rest[p + 3..]))),
                (Some(_), Some(m)) => (&rest[..m], Some((-1, &rest[m + 3..]))),
                (Some(p), None) => (&rest[..p], Some((1, &rest[p + 3..]))),
                (None, Some(m)) => (&rest[..m], Some((-1, &rest[m + 3..]))),
                (None, None) => (rest, None),
            };
            let (mag, k) = parse_term(term.trim())?;
            out.insert_term(k, sign * mag);
            match next {
                Some((s2, r)) => {
                    sign = s2;
                    rest = r;
                }
                None => break,
            }
        }
        Ok(out)
    }
}

fn parse_term(t: &str) -> Result<(i64, i32)> {
    let bad = |m: &str| Error::Parse(format!("bad laurent term `{t}`: {m}"));
    if let Some(pos) = t.find('x') {
        let mag_part = t[..pos].trim().trim_end_matches('*').trim();
        let mag: i64 = if mag_part.is_empty() {
            1
        } else {
            mag_part.parse().map_err(|_| bad("coefficient"))?
        };
        let exp_part = &t[pos + 1..];
        let k: i32 = if exp_part.is_empty() {
            1
        } else {
            exp_part
                .strip_prefix('^')
                .ok_or_else(|| bad("missing ^"))?
                .parse()
                .map_err(|_| bad("exponent"))?
        };
        Ok((mag, k))
    } else {
        let mag: i64 = t.parse().map_err(|_| bad("constant"))?;
        Ok((mag, 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn display_roundtrip_examples() {
        let q = p("x^-2 + 3 - x");
        assert_eq!(q.coeff(-2), 1);
        assert_eq!(q.coeff(0), 3);
        assert_eq!(q.coeff(1), -1);
        assert_eq!(q.to_string(), "x^-2 + 3 - x");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("-2*x^3 + x^-1").to_string(), "x^-1 - 2*x^3");
    }

    #[test]
    fn bar_swaps_exponents() {
        let q = p("x - x^-1");
        assert_eq!(q.bar(), p("x^-1 - x"));
        assert_eq!(q.bar().bar(), q);
    }

    #[test]
    fn hecke_quadratic_identity() {
        // (t - x)(t + x^-1) expands to t^2 - (x - x^-1) t - 1 for a scalar t;
        // sanity-check the ring ops on the eigenvalues t = x and t = -x^-1.
        for t in [LaurentPoly::x_pow(1), -&LaurentPoly::x_pow(-1)] {
            let delta = &LaurentPoly::x_pow(1) - &LaurentPoly::x_pow(-1);
            let lhs = &(&t * &t) - &(&delta * &t);
            assert_eq!(lhs, LaurentPoly::one());
        }
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::btree_map(-5i32..6, -9i64..10, 0..6).prop_map(|m| {
            let mut q = LaurentPoly::zero();
            for (k, c) in m {
                q.insert_term(k, c);
            }
            q
        })
    }

    proptest! {
        #[test]
        fn distributive(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        }

        #[test]
        fn parse_display_roundtrip(a in arb_poly()) {
            let s = a.to_string();
            prop_assert_eq!(s.parse::<LaurentPoly>().unwrap(), a);
        }

        #[test]
        fn bar_is_ring_involution(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        }
    }
}
