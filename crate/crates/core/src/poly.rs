//! Exact integer polynomials and palindromicity.
//!
//! Coefficients are stored leading-first, `[a_0, a_1, ..., a_n]` for
//! `a_0 λ^n + a_1 λ^(n-1) + ... + a_n`, which is the indexing used throughout
//! the classification code. The zero polynomial is the empty vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Leading zeros are stripped.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let lead = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
        IntPolynomial {
            coeffs: coeffs[lead..].to_vec(),
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// `λ^d`.
    pub fn monomial(d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[0] = BigInt::one();
        IntPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `a_i`, the coefficient of `λ^(n-i)`.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.first().is_some_and(One::is_one)
    }

    /// Even-index coefficients `a_0, a_2, ...`.
    pub fn even_coeffs(&self) -> Vec<BigInt> {
        self.coeffs.iter().step_by(2).cloned().collect()
    }

    pub fn odd_coeffs_vanish(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    /// `λ^n p(1/λ)` for `n = deg p`, i.e. the reversed coefficient vector.
    pub fn reciprocal(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.coeffs.clone();
        c.extend(std::iter::repeat_n(BigInt::zero(), k));
        IntPolynomial { coeffs: c }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    pub fn from_decimal_strings(items: &[String]) -> Option<Self> {
        items
            .iter()
            .map(|s| s.parse::<BigInt>().ok())
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
    }
}

fn add_aligned(a: &[BigInt], b: &[BigInt], negate_b: bool) -> IntPolynomial {
    let len = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); len];
    for (i, c) in a.iter().enumerate() {
        out[len - a.len() + i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        if negate_b {
            out[len - b.len() + i] -= c;
        } else {
            out[len - b.len() + i] += c;
        }
    }
    IntPolynomial::new(out)
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        add_aligned(&self.coeffs, &rhs.coeffs, false)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        add_aligned(&self.coeffs, &rhs.coeffs, true)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial { coeffs: out }
    }
}

impl fmt::Display for IntPolynomial {
    /// Renders as `λ^6-7λ^4+7λ^2-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(n) = self.degree() else {
            return write!(f, "0");
        };
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = n - i;
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let mag_str = if mag.is_one() && power > 0 { String::new() } else { mag.to_string() };
            let var = match power {
                0 => String::new(),
                1 => "λ".to_string(),
                p => format!("λ^{p}"),
            };
            write!(f, "{sign}{mag_str}{var}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

/// JSON form is an array of decimal strings, leading coefficient first.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_decimal_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        Self::from_decimal_strings(&items)
            .ok_or_else(|| serde::de::Error::custom("coefficient is not a decimal integer"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PalindromeKind {
    Palindromic,
    Antipalindromic,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PalindromeClass {
    pub kind: PalindromeKind,
    pub absolute: bool,
}

impl PalindromeClass {
    pub fn is_signed_palindrome(&self) -> bool {
        self.kind != PalindromeKind::Neither
    }

    /// `palindromic`, `antipalindromic`, `absolutely-palindromic` or `neither`.
    pub fn label(&self) -> &'static str {
        match (self.kind, self.absolute) {
            (PalindromeKind::Palindromic, _) => "palindromic",
            (PalindromeKind::Antipalindromic, _) => "antipalindromic",
            (PalindromeKind::Neither, true) => "absolutely-palindromic",
            (PalindromeKind::Neither, false) => "neither",
        }
    }
}

impl fmt::Display for PalindromeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Compares `a_i` with `a_(n-i)` for every `i`.
pub fn classify(p: &IntPolynomial) -> Result<PalindromeClass> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let c = p.coeffs();
    let pairs = || c.iter().zip(c.iter().rev());
    let palindromic = pairs().all(|(a, b)| a == b);
    let antipalindromic = pairs().all(|(a, b)| *a == -b);
    let absolute = pairs().all(|(a, b)| a.abs() == b.abs());
    let kind = match (palindromic, antipalindromic) {
        (true, _) => PalindromeKind::Palindromic,
        (false, true) => PalindromeKind::Antipalindromic,
        _ => PalindromeKind::Neither,
    };
    Ok(PalindromeClass { kind, absolute })
}

/// `(p = λ^n p(1/λ), p = -λ^n p(1/λ))` as polynomial identities.
pub fn reverse_check(p: &IntPolynomial) -> Result<(bool, bool)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = p.degree().expect("nonzero");
    // keep trailing zeros of p as leading zeros of the reciprocal
    let rec = {
        let mut c = p.coeffs().to_vec();
        c.reverse();
        IntPolynomial::new(c)
    };
    let rec_full_degree = rec.degree() == Some(n);
    Ok((
        rec_full_degree && *p == rec,
        rec_full_degree && *p == -&rec,
    ))
}

/// `λ^(kn) p(λ - k/λ)` for monic `p` of degree `n`, expanded as
/// `Σ a_i λ^((k-1)n + i) (λ² - k)^(n-i)`. The result is monic of degree
/// `(k+1)n`.
pub fn substitute_hairing(p: &IntPolynomial, k: u32) -> Result<IntPolynomial> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = p.degree().expect("monic is nonzero");
    let quad = IntPolynomial::new(vec![BigInt::one(), BigInt::zero(), -BigInt::from(k)]);
    let mut powers = vec![IntPolynomial::one()];
    for _ in 0..n {
        let next = &powers[powers.len() - 1] * &quad;
        powers.push(next);
    }
    let base_shift = (k as usize - 1) * n;
    let mut total = IntPolynomial::zero();
    for (i, a) in p.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let term = powers[n - i].shift(base_shift + i).scale(a);
        total = &total + &term;
    }
    Ok(total)
}

/// `a_i = (-1)^(n+i) a_(2n-i)` for all `i` where `deg p = 2n`.
pub fn coefficient_reflection_check(p: &IntPolynomial, n: usize) -> Result<bool> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    if deg != 2 * n {
        return Err(Error::DegreeMismatch {
            expected: 2 * n,
            found: deg,
        });
    }
    Ok((0..=2 * n).all(|i| {
        let mirrored = p.coeff(2 * n - i);
        let expected = if (n + i) % 2 == 0 { mirrored } else { -mirrored };
        p.coeff(i) == expected
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn classification_examples() {
        let c = classify(&p(&[1, 0, -3, 0, 1])).unwrap();
        assert_eq!(c, PalindromeClass { kind: PalindromeKind::Palindromic, absolute: true });
        let c = classify(&p(&[1, 0, -1])).unwrap();
        assert_eq!(c.kind, PalindromeKind::Antipalindromic);
        assert!(c.absolute);
        let c = classify(&p(&[1, 0, -9, -2, -18, 2, -9, 0, 1])).unwrap();
        assert_eq!(c, PalindromeClass { kind: PalindromeKind::Neither, absolute: true });
        let c = classify(&p(&[1, 0, 0, 0])).unwrap();
        assert_eq!(c, PalindromeClass { kind: PalindromeKind::Neither, absolute: false });
        assert_eq!(classify(&IntPolynomial::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(reverse_check(&p(&[1, 0, -3, 0, 1])).unwrap(), (true, false));
        assert_eq!(reverse_check(&p(&[1, 0, -1])).unwrap(), (false, true));
        assert_eq!(reverse_check(&p(&[1, 1, 0])).unwrap(), (false, false));
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 0, -1]);
        assert_eq!(&a * &a, p(&[1, 0, -2, 0, 1]));
        assert_eq!(&a * &IntPolynomial::one(), a);
        assert_eq!(a.pow(3), p(&[1, 0, -3, 0, 3, 0, -1]));
        assert_eq!(&a - &a, IntPolynomial::zero());
        assert_eq!(&a + &p(&[1]), p(&[1, 0, 0]));
    }

    #[test]
    fn hairing_substitution() {
        assert_eq!(substitute_hairing(&p(&[1, 0]), 1).unwrap(), p(&[1, 0, -1]));
        assert_eq!(substitute_hairing(&p(&[1, 0, -1]), 1).unwrap(), p(&[1, 0, -3, 0, 1]));
        // H_2(K2) is the double broom: two adjacent centres with two leaves
        // each; its determinant expansion gives λ^6 - 5λ^4 + 4λ^2.
        assert_eq!(
            substitute_hairing(&p(&[1, 0, -1]), 2).unwrap(),
            p(&[1, 0, -5, 0, 4, 0, 0])
        );
    }

    #[test]
    fn reflection() {
        assert!(coefficient_reflection_check(&p(&[1, 0, -3, 0, 1]), 2).unwrap());
        assert!(coefficient_reflection_check(&p(&[1, 0, -5, 0, 5, 0, -1]), 3).unwrap());
        assert!(!coefficient_reflection_check(&p(&[1, 0, -3, 0, 0]), 2).unwrap());
        assert!(matches!(
            coefficient_reflection_check(&p(&[1, 0, -1]), 2),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[1, 0, -7, 0, 7, 0, -1]).to_string(), "λ^6-7λ^4+7λ^2-1");
        assert_eq!(p(&[1, 0]).to_string(), "λ");
        assert_eq!(p(&[2, -1, 3]).to_string(), "2λ^2-λ+3");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn json_round_trip() {
        let a = p(&[1, 0, -7, 0, 7, 0, -1]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"["1","0","-7","0","7","0","-1"]"#);
        assert_eq!(serde_json::from_str::<IntPolynomial>(&s).unwrap(), a);
    }

    fn arb_poly() -> impl Strategy<Value = IntPolynomial> {
        (prop::collection::vec(-3i64..=3, 1..=21), any::<bool>()).prop_map(|(mut c, mirror)| {
            if c[0] == 0 {
                c[0] = 1;
            }
            if mirror {
                // bias toward symmetric inputs so both classes are exercised
                let n = c.len();
                let sign = if c[0] % 2 == 0 { 1 } else { -1 };
                for i in 0..n / 2 {
                    c[n - 1 - i] = sign * c[i];
                }
            }
            IntPolynomial::from_i64(&c)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100_000))]
        #[test]
        fn classify_agrees_with_reverse_check(q in arb_poly()) {
            let class = classify(&q).unwrap();
            let (pal, anti) = reverse_check(&q).unwrap();
            prop_assert_eq!(pal, class.kind == PalindromeKind::Palindromic);
            prop_assert_eq!(anti, class.kind == PalindromeKind::Antipalindromic);
            if class.is_signed_palindrome() {
                prop_assert!(class.absolute);
            }
        }
    }
}
