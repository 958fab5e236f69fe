//! Continued fractions and their bridge to surgery words.
//!
//! A word `A^e1 D^e2 A^e3 D^e4 ...` (even length, all exponents positive)
//! sends `(1, 0)` to a vector `(t, u)` whose reversed ratio `u/t` is
//! exactly the continued fraction `1/(e1 + 1/(e2 + ...))`. Since
//! `C = A D`, such words with unit `D` exponents are plain surgery words,
//! so bounded-quotient fractions come with explicit planar witnesses.
//!
//! [`zaremba_weak`] exploits this: enumerating short words with exponents
//! in `{1, 2}` and pigeonholing their vectors yields, for any `N`, on the
//! order of `N^(1/4)` distinct denominators below `N` that carry a
//! numerator whose quotients are all 1 or 2.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{ext_gcd, FeasVec, Mat2};
use crate::spectrum::SimpleWord;

/// Errors from continued-fraction handling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CFracError {
    /// Quotients must be positive.
    InvalidQuotient,
    /// Word exponent lists must have even length and positive entries.
    MalformedWord(String),
    /// Modular evaluation hit a denominator sharing a factor with the
    /// modulus.
    NonInvertibleDenominator { denominator: u64, modulus: u64 },
    /// Argument outside the supported range.
    OutOfRange(String),
}

impl fmt::Display for CFracError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CFracError::InvalidQuotient => write!(f, "continued fraction quotients must be >= 1"),
            CFracError::MalformedWord(why) => write!(f, "malformed word: {why}"),
            CFracError::NonInvertibleDenominator {
                denominator,
                modulus,
            } => write!(f, "denominator {denominator} is not invertible mod {modulus}"),
            CFracError::OutOfRange(why) => write!(f, "out of range: {why}"),
        }
    }
}

impl std::error::Error for CFracError {}

/// A continued fraction `1/(a1 + 1/(a2 + ...))` with positive quotients.
/// The empty fraction is `0/1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CFrac {
    quotients: Vec<u64>,
}

impl CFrac {
    pub fn new(quotients: Vec<u64>) -> Result<Self, CFracError> {
        if quotients.iter().any(|&a| a == 0) {
            return Err(CFracError::InvalidQuotient);
        }
        Ok(CFrac { quotients })
    }

    pub fn quotients(&self) -> &[u64] {
        &self.quotients
    }

    /// Evaluates to `(numerator, denominator)`, automatically in lowest
    /// terms: the fold multiplies out the continuant matrices
    /// `[[a, 1], [1, 0]]` and reads off the first column.
    pub fn eval(&self) -> (BigUint, BigUint) {
        let mut den = BigUint::one(); // top-left of the running product
        let mut num = BigUint::zero(); // bottom-left
        let mut den_prev = BigUint::zero(); // top-right
        let mut num_prev = BigUint::one(); // bottom-right
        for &a in &self.quotients {
            let d = &den * a + &den_prev;
            let n = &num * a + &num_prev;
            den_prev = std::mem::replace(&mut den, d);
            num_prev = std::mem::replace(&mut num, n);
        }
        (num, den)
    }

    /// The fraction reduced mod `m`: `numerator * denominator^(-1)`.
    pub fn eval_mod(&self, m: u64) -> Result<u64, CFracError> {
        assert!(m >= 1, "modulus must be positive");
        let reduce = |x: &BigUint| (x % m).to_u64().expect("residue fits u64");
        let (num, den) = self.eval();
        let (num, den) = (reduce(&num), reduce(&den));
        let (g, inv, _) = ext_gcd(&BigInt::from(den), &BigInt::from(m)).expect("m >= 1");
        if !g.is_one() {
            return Err(CFracError::NonInvertibleDenominator {
                denominator: den,
                modulus: m,
            });
        }
        let inv = ((inv % m + m) % m).to_u64().expect("residue fits u64");
        Ok(((num as u128 * inv as u128) % m as u128) as u64)
    }
}

impl fmt::Display for CFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.quotients.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// Reads a word exponent list `[e1, e2, ...]` (for `A^e1 D^e2 ...`) as a
/// continued fraction. The list must have even length and positive
/// entries; the quotients are the exponents themselves.
pub fn cf_from_word(exponents: &[u64]) -> Result<CFrac, CFracError> {
    if exponents.len() % 2 != 0 {
        return Err(CFracError::MalformedWord(format!(
            "exponent list has odd length {}",
            exponents.len()
        )));
    }
    if exponents.iter().any(|&e| e == 0) {
        return Err(CFracError::MalformedWord("zero exponent".into()));
    }
    CFrac::new(exponents.to_vec())
}

/// Inverse of [`cf_from_word`]: a continued fraction of even length spells
/// an alternating word `A^a1 D^a2 ...`.
pub fn word_from_cf(cf: &CFrac) -> Result<Vec<u64>, CFracError> {
    if cf.quotients.len() % 2 != 0 {
        return Err(CFracError::MalformedWord(format!(
            "continued fraction has odd length {}",
            cf.quotients.len()
        )));
    }
    Ok(cf.quotients.clone())
}

/// The vector of the word `A^e1 D^e2 A^e3 D^e4 ...` applied to `(1, 0)`.
/// Exposed so the bridge `word vector (t, u) <-> fraction u/t` can be
/// checked directly.
pub fn word_vector(exponents: &[u64]) -> FeasVec {
    let mut m = Mat2::identity();
    for (i, &e) in exponents.iter().enumerate() {
        let letter = if i % 2 == 0 { Mat2::a() } else { Mat2::d() };
        m = m.mul(&letter.pow(e));
    }
    m.apply(&FeasVec::start()).expect("A/D products stay non-negative")
}

/// A denominator realized with bounded quotients: `t/u` equals `cf`, all
/// of whose quotients are 1 or 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZarembaCertificate {
    pub u: BigUint,
    pub t: BigUint,
    pub cf: CFrac,
}

impl ZarembaCertificate {
    /// The surgery word building a witness graph whose vector is
    /// `(u, t)`: with all `D` exponents equal to one, `A^a D = A^(a-1) C`.
    pub fn simple_word(&self) -> SimpleWord {
        SimpleWord::new(
            self.cf
                .quotients
                .chunks(2)
                .map(|pair| pair[0] - 1)
                .collect(),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "u": self.u.to_string(),
            "t": self.t.to_string(),
            "cf": self.cf.quotients.clone(),
            "word": self.simple_word().to_string(),
        })
    }
}

/// For `4 <= N < 2^45`, returns certificates for distinct denominators
/// `u < N`, each carrying a numerator `t` with `gcd(t, u) = 1` whose
/// continued fraction uses only the quotients 1 and 2. At least
/// `ceil(N^(1/4) / 2) - 1` denominators are always produced.
///
/// The construction enumerates the words `A D A^a2 D ... A^al D` with
/// `a_i` in `{1, 2}` and `l <= floor(log2(N) / 2)`; their vectors are
/// pairwise distinct, so either the first coordinates or the coordinate
/// sums take many values. In the latter case every word gains one more
/// leading `A` (turning its fraction from `[1, 1, ...]` into
/// `[2, 1, ...]`), which moves the sums into the first coordinate.
pub fn zaremba_weak(n: &BigUint) -> Result<Vec<ZarembaCertificate>, CFracError> {
    if *n < BigUint::from(4u32) {
        return Err(CFracError::OutOfRange(format!(
            "need N >= 4 to fit a word, got {n}"
        )));
    }
    if n.bits() > 45 {
        return Err(CFracError::OutOfRange(
            "N >= 2^45 would enumerate more than 2^22 words".into(),
        ));
    }
    let depth = ((n.bits() - 1) / 2).max(1);

    // lexicographic pre-order over exponent tails in {1, 2}
    let mut words: Vec<(Vec<u64>, FeasVec)> = Vec::new();
    fn descend(depth: u64, exps: &mut Vec<u64>, m: &Mat2, out: &mut Vec<(Vec<u64>, FeasVec)>) {
        let v = m.apply(&FeasVec::start()).expect("non-negative product");
        out.push((exps.clone(), v));
        if (exps.len() as u64) < depth {
            for a in [1u64, 2] {
                exps.push(a);
                descend(depth, exps, &m.mul(&Mat2::a().pow(a).mul(&Mat2::d())), out);
                exps.pop();
            }
        }
    }
    let seed = Mat2::c(); // A^1 D
    descend(depth, &mut vec![1], &seed, &mut words);

    let firsts: std::collections::BTreeSet<&BigUint> = words.iter().map(|(_, v)| &v.t).collect();
    let sums: std::collections::BTreeSet<BigUint> = words.iter().map(|(_, v)| v.tau()).collect();
    if sums.len() > firsts.len() {
        for (exps, v) in &mut words {
            exps[0] += 1;
            *v = Mat2::a().apply(v).expect("non-negative");
        }
    }

    let mut by_denominator: BTreeMap<BigUint, ZarembaCertificate> = BTreeMap::new();
    for (exps, v) in words {
        debug_assert!(v.t < *n, "denominators stay below N");
        let quotients: Vec<u64> = exps.iter().flat_map(|&a| [a, 1]).collect();
        let cf = cf_from_word(&quotients)?;
        debug_assert_eq!(cf.eval(), (v.u.clone(), v.t.clone()));
        by_denominator
            .entry(v.t.clone())
            .or_insert(ZarembaCertificate {
                u: v.t,
                t: v.u,
                cf,
            });
    }
    Ok(by_denominator.into_values().collect())
}
