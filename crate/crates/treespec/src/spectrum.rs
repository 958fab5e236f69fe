//! Enumeration and decoding of the vectors realizable by surgery words.
//!
//! Two word families are tracked. The *simple* family uses blocks `A^a C`
//! with `a >= 0`; a block of exponent `a` has weight `a + 1` and there are
//! exactly `2^n` simple words of weight at most `n`. The *full* family
//! additionally allows blocks `B^a C` with `a >= 1`; its word count obeys
//! `m_n = 2 m_(n-1) + m_(n-2)`.
//!
//! Every word of weight `w` builds a planar witness graph on `w + 2`
//! vertices, so distinct vectors here translate directly into lower bounds
//! on how many spanning-tree counts small planar graphs realize. Both
//! families decode greedily: simple vectors by peeling `A`s while the first
//! coordinate exceeds the second, full vectors by locating the leading
//! block through the disjoint ratio intervals `(1 + a, 2 + a]` (A-type)
//! and `(2/(a+2), 2/(a+1)]` (B-type).

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{FeasVec, Mat2};
use crate::witness::{OpLetter, OpWord};

/// Errors from enumeration and decoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpectrumError {
    /// Enumeration past the memory bound.
    TooLarge(String),
    /// The vector is not the value of any word in the requested family.
    NotDecodable(String),
    /// Set extraction needs at least one vector.
    EmptyInput,
}

impl fmt::Display for SpectrumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumError::TooLarge(what) => write!(f, "enumeration too large: {what}"),
            SpectrumError::NotDecodable(why) => write!(f, "vector not decodable: {why}"),
            SpectrumError::EmptyInput => write!(f, "need at least one vector"),
        }
    }
}

impl std::error::Error for SpectrumError {}

/// A word `A^a1 C A^a2 C ... A^at C`, stored as its exponent list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleWord {
    pub exponents: Vec<u64>,
}

impl SimpleWord {
    pub fn new(exponents: Vec<u64>) -> Self {
        SimpleWord { exponents }
    }

    /// Total letter count: each block `A^a C` weighs `a + 1`.
    pub fn weight(&self) -> u64 {
        self.exponents.iter().map(|&a| a + 1).sum()
    }

    pub fn to_opword(&self) -> OpWord {
        let mut letters = Vec::new();
        for &a in &self.exponents {
            letters.extend(std::iter::repeat(OpLetter::Subdivide).take(a as usize));
            letters.push(OpLetter::TriangleMove);
        }
        OpWord(letters)
    }

    pub fn vector(&self) -> FeasVec {
        let m = self
            .exponents
            .iter()
            .fold(Mat2::identity(), |acc, &a| acc.mul(&simple_block(a)));
        first_column(&m)
    }
}

impl fmt::Display for SimpleWord {
    /// Run-length text (`"A3 C C"`), parseable as an op word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &a in &self.exponents {
            write_block(f, &mut first, 'A', a)?;
        }
        Ok(())
    }
}

/// The block family of a full-alphabet block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockFamily {
    /// `A^a C` with `a >= 0`.
    AType,
    /// `B^a C` with `a >= 1`.
    BType,
}

/// One block of a full word; weight `a + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Block {
    pub family: BlockFamily,
    pub a: u64,
}

/// A word of `A^a C` and `B^a C` blocks, leftmost first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FullWord {
    pub blocks: Vec<Block>,
}

impl FullWord {
    pub fn weight(&self) -> u64 {
        self.blocks.iter().map(|b| b.a + 1).sum()
    }

    pub fn to_opword(&self) -> OpWord {
        let mut letters = Vec::new();
        for block in &self.blocks {
            let repeat = match block.family {
                BlockFamily::AType => OpLetter::Subdivide,
                BlockFamily::BType => OpLetter::TriangleKeep,
            };
            letters.extend(std::iter::repeat(repeat).take(block.a as usize));
            letters.push(OpLetter::TriangleMove);
        }
        OpWord(letters)
    }

    pub fn vector(&self) -> FeasVec {
        let m = self
            .blocks
            .iter()
            .fold(Mat2::identity(), |acc, b| acc.mul(&block_matrix(b)));
        first_column(&m)
    }
}

impl fmt::Display for FullWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for b in &self.blocks {
            let letter = match b.family {
                BlockFamily::AType => 'A',
                BlockFamily::BType => 'B',
            };
            write_block(f, &mut first, letter, b.a)?;
        }
        Ok(())
    }
}

fn write_block(f: &mut fmt::Formatter<'_>, first: &mut bool, letter: char, a: u64) -> fmt::Result {
    if a > 0 {
        if !*first {
            write!(f, " ")?;
        }
        *first = false;
        if a == 1 {
            write!(f, "{letter}")?;
        } else {
            write!(f, "{letter}{a}")?;
        }
    }
    if !*first {
        write!(f, " ")?;
    }
    *first = false;
    write!(f, "C")
}

/// `A^a C = [[a + 2, a + 1], [1, 1]]`.
fn simple_block(a: u64) -> Mat2 {
    let mut m = Mat2::new(2, 1, 1, 1);
    m.a11 += BigInt::from(a);
    m.a12 += BigInt::from(a);
    m
}

fn block_matrix(b: &Block) -> Mat2 {
    match b.family {
        BlockFamily::AType => simple_block(b.a),
        BlockFamily::BType => Mat2::b().pow(b.a).mul(&Mat2::c()),
    }
}

fn first_column(m: &Mat2) -> FeasVec {
    FeasVec {
        t: m.a11.to_biguint().expect("word products are non-negative"),
        u: m.a21.to_biguint().expect("word products are non-negative"),
    }
}

/// All simple words of weight at most `n` with their vectors, ordered by
/// block count and then lexicographically by exponents. Returns exactly
/// `2^n` entries; capped at `n = 22` by memory.
pub fn enum_simple(n: u32) -> Result<Vec<(SimpleWord, FeasVec)>, SpectrumError> {
    if n > 22 {
        return Err(SpectrumError::TooLarge(format!(
            "2^{n} simple words exceed the in-memory bound (n <= 22)"
        )));
    }
    let mut out = Vec::with_capacity(1usize << n);
    let mut exps: Vec<u64> = Vec::new();
    fn descend(
        budget: u64,
        prefix: &Mat2,
        exps: &mut Vec<u64>,
        out: &mut Vec<(SimpleWord, FeasVec)>,
    ) {
        out.push((SimpleWord::new(exps.clone()), first_column(prefix)));
        let mut a = 0;
        while a + 1 <= budget {
            let m = prefix.mul(&simple_block(a));
            exps.push(a);
            descend(budget - a - 1, &m, exps, out);
            exps.pop();
            a += 1;
        }
    }
    descend(n as u64, &Mat2::identity(), &mut exps, &mut out);
    out.sort_unstable_by(|(w1, _), (w2, _)| {
        (w1.exponents.len(), &w1.exponents).cmp(&(w2.exponents.len(), &w2.exponents))
    });
    Ok(out)
}

/// All full words of weight at most `n` with their vectors, ordered by
/// block count then block list (exponent before family, A before B).
/// Returns `m_n` entries; capped at `n = 18`.
pub fn enum_full(n: u32) -> Result<Vec<(FullWord, FeasVec)>, SpectrumError> {
    if n > 18 {
        return Err(SpectrumError::TooLarge(format!(
            "m_{n} full words exceed the in-memory bound (n <= 18)"
        )));
    }
    let mut out = Vec::new();
    let mut blocks: Vec<Block> = Vec::new();
    fn descend(
        budget: u64,
        prefix: &Mat2,
        blocks: &mut Vec<Block>,
        out: &mut Vec<(FullWord, FeasVec)>,
    ) {
        out.push((
            FullWord {
                blocks: blocks.clone(),
            },
            first_column(prefix),
        ));
        let mut a = 0;
        while a + 1 <= budget {
            for family in [BlockFamily::AType, BlockFamily::BType] {
                if family == BlockFamily::BType && a == 0 {
                    continue; // B^0 C is already the A-type block
                }
                let block = Block { family, a };
                let m = prefix.mul(&block_matrix(&block));
                blocks.push(block);
                descend(budget - a - 1, &m, blocks, out);
                blocks.pop();
            }
            a += 1;
        }
    }
    descend(n as u64, &Mat2::identity(), &mut blocks, &mut out);
    out.sort_unstable_by(|(w1, _), (w2, _)| {
        let key = |w: &FullWord| {
            (
                w.blocks.len(),
                w.blocks
                    .iter()
                    .map(|b| (b.a, b.family))
                    .collect::<Vec<_>>(),
            )
        };
        key(w1).cmp(&key(w2))
    });
    Ok(out)
}

/// Recovers the unique simple word with value `v`, by peeling: while the
/// first coordinate exceeds the second strip `A`s, then strip one `D`
/// (`C = A D`), repeating until `(1, 0)`.
pub fn decode_simple(v: &FeasVec) -> Result<SimpleWord, SpectrumError> {
    if *v == FeasVec::start() {
        return Ok(SimpleWord::new(Vec::new()));
    }
    let (mut t, mut u) = (v.t.clone(), v.u.clone());
    let mut exponents = Vec::new();
    loop {
        if t <= u {
            // every block contributes at least one leading A (C = A D), so
            // a valid intermediate vector always has first > second here
            return Err(SpectrumError::NotDecodable(format!(
                "expected first coordinate to dominate at ({t}, {u})"
            )));
        }
        if u.is_zero() {
            return Err(SpectrumError::NotDecodable(format!(
                "reached ({t}, 0) with t != 1"
            )));
        }
        // strip A^k down to the last vector with first <= second
        let (q, r) = t.div_rem(&u);
        let (k, t_next) = if r.is_zero() {
            (&q - 1u32, u.clone())
        } else {
            (q, r)
        };
        let u_next = &u - &t_next; // strip D
        let a = k
            .to_u64()
            .ok_or_else(|| SpectrumError::NotDecodable("exponent exceeds u64".into()))?;
        exponents.push(a - 1);
        if t_next.is_one() && u_next.is_zero() {
            return Ok(SimpleWord::new(exponents));
        }
        t = t_next;
        u = u_next;
    }
}

/// Recovers the unique full word with value `v`. The leading block is read
/// off the ratio `t/u`: in `(1 + a, 2 + a]` it is `A^a C`, in
/// `(2/(a+2), 2/(a+1)]` it is `B^a C`; the block is then inverted exactly
/// (checking divisibility by `det(B^a C) = 4^a`).
pub fn decode_full(v: &FeasVec) -> Result<FullWord, SpectrumError> {
    if *v == FeasVec::start() {
        return Ok(FullWord { blocks: Vec::new() });
    }
    let (mut t, mut u) = (v.t.clone(), v.u.clone());
    let mut blocks = Vec::new();
    loop {
        if t.is_zero() || u.is_zero() {
            return Err(SpectrumError::NotDecodable(format!(
                "reached ({t}, {u}) outside every block interval"
            )));
        }
        let block = if t > u {
            // ratio in (1 + a, 2 + a]: a = ceil(t/u) - 2
            let (q, r) = t.div_rem(&u);
            let ceil = if r.is_zero() { q } else { q + 1u32 };
            let a = (ceil - 2u32)
                .to_u64()
                .ok_or_else(|| SpectrumError::NotDecodable("exponent exceeds u64".into()))?;
            Block {
                family: BlockFamily::AType,
                a,
            }
        } else {
            // ratio in (2/(a+2), 2/(a+1)]: a = floor(2u/t) - 1, at least 1
            let a_big = (&u << 1u32) / &t - 1u32;
            // a valid B^a C block forces t >= 2^(a+1), so huge exponents
            // cannot be genuine and must not be materialized
            if a_big.bits() > 32 || a_big.to_u64().unwrap() + 1 > t.bits() {
                return Err(SpectrumError::NotDecodable(format!(
                    "({t}, {u}) implies an impossible B exponent"
                )));
            }
            Block {
                family: BlockFamily::BType,
                a: a_big.to_u64().unwrap(),
            }
        };
        // invert the block: w = adj(M) v, then divide by det(M) = 4^a (B)
        // or 1 (A), requiring exact division and a non-negative result
        let m = block_matrix(&block);
        let tb = BigInt::from(t.clone());
        let ub = BigInt::from(u.clone());
        let adj_t = &m.a22 * &tb - &m.a12 * &ub;
        let adj_u = &m.a11 * &ub - &m.a21 * &tb;
        let det = m.det();
        let (t_next, rt) = adj_t.div_rem(&det);
        let (u_next, ru) = adj_u.div_rem(&det);
        if !rt.is_zero() || !ru.is_zero() {
            return Err(SpectrumError::NotDecodable(format!(
                "({t}, {u}) is not an exact multiple of its block"
            )));
        }
        let (Some(t_next), Some(u_next)) = (t_next.to_biguint(), u_next.to_biguint()) else {
            return Err(SpectrumError::NotDecodable(format!(
                "inverting a block at ({t}, {u}) left the non-negative quadrant"
            )));
        };
        blocks.push(block);
        if t_next.is_one() && u_next.is_zero() {
            return Ok(FullWord { blocks });
        }
        t = t_next;
        u = u_next;
    }
}

/// Which pigeonhole branch produced the extracted set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TauSetBranch {
    /// At least sqrt(N) distinct second coordinates.
    DistinctSeconds,
    /// Some second coordinate repeats at least sqrt(N) times; the sums of
    /// that class are pairwise distinct.
    DistinctSums,
}

/// Pigeonhole extraction: from `N` distinct vectors, returns a set of at
/// least `sqrt(N)` values that are either all the distinct second
/// coordinates or all the coordinate sums within one second-coordinate
/// class. The returned set always satisfies `|set|^2 >= N`.
pub fn extract_tau_set(
    vs: &[FeasVec],
) -> Result<(BTreeSet<BigUint>, TauSetBranch), SpectrumError> {
    if vs.is_empty() {
        return Err(SpectrumError::EmptyInput);
    }
    let distinct: BTreeSet<&FeasVec> = vs.iter().collect();
    let n = distinct.len();
    let seconds: BTreeSet<BigUint> = distinct.iter().map(|v| v.u.clone()).collect();
    if seconds.len() * seconds.len() >= n {
        return Ok((seconds, TauSetBranch::DistinctSeconds));
    }
    let mut classes: BTreeMap<&BigUint, Vec<&FeasVec>> = BTreeMap::new();
    for v in &distinct {
        classes.entry(&v.u).or_default().push(v);
    }
    let class = classes
        .values()
        .max_by_key(|c| c.len()) // BTreeMap order makes ties deterministic
        .expect("nonempty input");
    let sums: BTreeSet<BigUint> = class.iter().map(|v| v.tau()).collect();
    debug_assert!(sums.len() * sums.len() >= n);
    Ok((sums, TauSetBranch::DistinctSums))
}

/// Distinct spanning-tree counts realized by planar graphs on at most `n`
/// vertices, harvested from the simple family of weight `n - 2`: for each
/// word vector, both `t + u` (the witness graph) and `u` (its edge-deleted
/// graph) are realized. Contains at least `2^(n/2 - 1)` values for even `n`.
pub fn spectrum_lower_bound(n: u32) -> Result<BTreeSet<BigUint>, SpectrumError> {
    if n < 2 {
        return Err(SpectrumError::TooLarge(format!(
            "need n >= 2 to place a witness graph, got {n}"
        )));
    }
    let words = enum_simple(n - 2)?;
    let mut set = BTreeSet::new();
    for (_, v) in words {
        set.insert(v.tau());
        set.insert(v.u);
    }
    Ok(set)
}

/// Certificate tying a word to its vector, printable as
/// `{"word", "t", "u", "tau", "vertices"}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorCertificate {
    pub word: String,
    pub t: BigUint,
    pub u: BigUint,
    pub vertices: u64,
}

impl VectorCertificate {
    pub fn simple(word: &SimpleWord, v: &FeasVec) -> Self {
        VectorCertificate {
            word: word.to_string(),
            t: v.t.clone(),
            u: v.u.clone(),
            vertices: word.weight() + 2,
        }
    }

    pub fn full(word: &FullWord, v: &FeasVec) -> Self {
        VectorCertificate {
            word: word.to_string(),
            t: v.t.clone(),
            u: v.u.clone(),
            vertices: word.weight() + 2,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "word": self.word,
            "t": self.t.to_string(),
            "u": self.u.to_string(),
            "tau": (&self.t + &self.u).to_string(),
            "vertices": self.vertices,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{count_full_words, count_simple_words};
    use crate::witness::{predicted_vector, WitnessGraph};

    fn v(t: u32, u: u32) -> FeasVec {
        FeasVec::new(t, u)
    }

    #[test]
    fn simple_enumeration_counts_are_powers_of_two() {
        for n in 0..=10u32 {
            let words = enum_simple(n).unwrap();
            assert_eq!(BigUint::from(words.len()), count_simple_words(n), "n={n}");
            let distinct: BTreeSet<_> = words.iter().map(|(_, v)| v.clone()).collect();
            assert_eq!(distinct.len(), words.len(), "vectors distinct at n={n}");
        }
    }

    #[test]
    fn simple_enumeration_small_cases_in_order() {
        let words = enum_simple(1).unwrap();
        assert_eq!(words.len(), 2);
        assert_eq!(words[0].0, SimpleWord::new(vec![]));
        assert_eq!(words[0].1, v(1, 0));
        assert_eq!(words[1].0, SimpleWord::new(vec![0]));
        assert_eq!(words[1].1, v(2, 1));

        let words = enum_simple(3).unwrap();
        let listed: Vec<_> = words.iter().map(|(w, _)| w.exponents.clone()).collect();
        assert_eq!(
            listed,
            vec![
                vec![],
                vec![0],
                vec![1],
                vec![2],
                vec![0, 0],
                vec![0, 1],
                vec![1, 0],
                vec![0, 0, 0],
            ]
        );
    }

    #[test]
    fn simple_vectors_match_built_witness_graphs() {
        for (word, vec) in enum_simple(6).unwrap() {
            let opword = word.to_opword();
            assert_eq!(vec, predicted_vector(&opword), "word {word}");
            assert_eq!(vec, WitnessGraph::build(&opword).vector(), "word {word}");
            assert_eq!(vec.gcd(), BigUint::one(), "simple vectors are coprime");
        }
    }

    #[test]
    fn full_enumeration_matches_the_recurrence() {
        for n in 0..=10u32 {
            let words = enum_full(n).unwrap();
            assert_eq!(BigUint::from(words.len()), count_full_words(n), "n={n}");
            let distinct: BTreeSet<_> = words.iter().map(|(_, v)| v.clone()).collect();
            assert_eq!(distinct.len(), words.len(), "vectors distinct at n={n}");
        }
    }

    #[test]
    fn full_enumeration_weight_two_is_the_known_quintet() {
        let words = enum_full(2).unwrap();
        let shown: Vec<String> = words.iter().map(|(w, _)| w.to_string()).collect();
        assert_eq!(shown, vec!["", "C", "A C", "B C", "C C"]);
        let vectors: Vec<_> = words.iter().map(|(_, v)| v.clone()).collect();
        assert_eq!(
            vectors,
            vec![v(1, 0), v(2, 1), v(3, 1), v(4, 4), v(5, 3)]
        );
    }

    #[test]
    fn full_vectors_match_built_witness_graphs() {
        for (word, vec) in enum_full(6).unwrap() {
            let opword = word.to_opword();
            assert_eq!(vec, predicted_vector(&opword), "word {word}");
            assert_eq!(vec, WitnessGraph::build(&opword).vector(), "word {word}");
        }
    }

    #[test]
    fn b_blocks_break_coprimality() {
        // the B family introduces factors of two: B C has vector (4, 4)
        let w = FullWord {
            blocks: vec![Block {
                family: BlockFamily::BType,
                a: 1,
            }],
        };
        assert_eq!(w.vector(), v(4, 4));
        assert_eq!(w.vector().gcd(), BigUint::from(4u32));
    }

    #[test]
    fn decode_simple_round_trips_the_enumeration() {
        for (word, vec) in enum_simple(12).unwrap() {
            assert_eq!(decode_simple(&vec).unwrap(), word, "vector {vec}");
        }
    }

    #[test]
    fn decode_simple_fixed_cases_and_rejections() {
        assert_eq!(decode_simple(&v(1, 0)).unwrap(), SimpleWord::new(vec![]));
        assert_eq!(decode_simple(&v(2, 1)).unwrap(), SimpleWord::new(vec![0]));
        assert_eq!(decode_simple(&v(3, 1)).unwrap(), SimpleWord::new(vec![1]));
        assert_eq!(decode_simple(&v(8, 3)).unwrap(), SimpleWord::new(vec![1, 0]));
        for bad in [v(0, 0), v(0, 5), v(5, 0), v(2, 2), v(3, 2), v(4, 4), v(1, 1)] {
            assert!(decode_simple(&bad).is_err(), "{bad} should not decode");
        }
    }

    #[test]
    fn decode_full_round_trips_the_enumeration() {
        for (word, vec) in enum_full(10).unwrap() {
            assert_eq!(decode_full(&vec).unwrap(), word, "vector {vec}");
        }
    }

    #[test]
    fn decode_full_fixed_cases_and_rejections() {
        assert_eq!(
            decode_full(&v(2, 1)).unwrap().blocks,
            vec![Block { family: BlockFamily::AType, a: 0 }]
        );
        assert_eq!(
            decode_full(&v(4, 4)).unwrap().blocks,
            vec![Block { family: BlockFamily::BType, a: 1 }]
        );
        assert_eq!(
            decode_full(&v(4, 1)).unwrap().blocks,
            vec![Block { family: BlockFamily::AType, a: 2 }]
        );
        for bad in [v(0, 0), v(0, 3), v(3, 0), v(1, 1), v(2, 2), v(7, 5)] {
            assert!(decode_full(&bad).is_err(), "{bad} should not decode");
        }
    }

    #[test]
    fn decode_rejects_huge_fake_exponents_quickly() {
        // ratio forces an absurd B exponent; must fail without building 2^a
        let huge = BigUint::from(10u32).pow(40);
        let bad = FeasVec {
            t: BigUint::from(3u32),
            u: huge,
        };
        assert!(decode_full(&bad).is_err());
    }

    #[test]
    fn peeling_direction_signs_hold_along_simple_words() {
        // multiplying by A keeps first > second (when first was positive);
        // multiplying by D flips it (when second becomes positive)
        for (word, _) in enum_simple(9).unwrap() {
            let mut vec = FeasVec::start();
            for &a in word.exponents.iter().rev() {
                vec = Mat2::d().apply(&vec).unwrap();
                if !vec.u.is_zero() {
                    assert!(vec.u >= vec.t);
                }
                for _ in 0..a + 1 {
                    vec = Mat2::a().apply(&vec).unwrap();
                    assert!(vec.t > vec.u);
                }
            }
        }
    }

    #[test]
    fn extract_tau_set_branches() {
        // same second coordinate: fall back to sums
        let (set, branch) = extract_tau_set(&[v(2, 1), v(3, 1)]).unwrap();
        assert_eq!(branch, TauSetBranch::DistinctSums);
        assert_eq!(set, BTreeSet::from([3u32.into(), 4u32.into()]));

        // two distinct seconds already square to the input size
        let (set, branch) = extract_tau_set(&[v(2, 1), v(4, 4)]).unwrap();
        assert_eq!(branch, TauSetBranch::DistinctSeconds);
        assert_eq!(set, BTreeSet::from([1u32.into(), 4u32.into()]));

        let (set, branch) = extract_tau_set(&[v(1, 0)]).unwrap();
        assert_eq!(branch, TauSetBranch::DistinctSeconds);
        assert_eq!(set, BTreeSet::from([0u32.into()]));

        assert_eq!(extract_tau_set(&[]), Err(SpectrumError::EmptyInput));
    }

    #[test]
    fn extract_tau_set_square_bound_on_enumerated_slices() {
        let words = enum_simple(10).unwrap();
        for take in [1usize, 5, 32, 100, words.len()] {
            let vs: Vec<_> = words.iter().take(take).map(|(_, v)| v.clone()).collect();
            let (set, _) = extract_tau_set(&vs).unwrap();
            assert!(set.len() * set.len() >= take, "take={take}");
        }
    }

    #[test]
    fn lower_bound_set_small_cases() {
        assert_eq!(
            spectrum_lower_bound(2).unwrap(),
            BTreeSet::from([0u32.into(), 1u32.into()])
        );
        let s4 = spectrum_lower_bound(4).unwrap();
        for expect in [0u32, 1, 3, 4, 8] {
            assert!(s4.contains(&BigUint::from(expect)), "{expect} missing");
        }
        assert!(spectrum_lower_bound(1).is_err());
    }

    #[test]
    fn lower_bound_set_meets_the_square_root_floor() {
        for n in (2..=12u32).step_by(2) {
            let set = spectrum_lower_bound(n).unwrap();
            let floor = 1usize << (n / 2 - 1).min(62);
            assert!(set.len() >= floor, "n={n}: {} < {floor}", set.len());
        }
    }

    #[test]
    fn word_display_round_trips_through_op_words() {
        for (word, vec) in enum_full(5).unwrap() {
            let parsed: OpWord = word.to_string().parse().unwrap();
            assert_eq!(parsed, word.to_opword());
            let _ = vec;
        }
        assert_eq!(SimpleWord::new(vec![3, 0]).to_string(), "A3 C C");
        assert_eq!(SimpleWord::new(vec![1]).to_string(), "A C");
    }

    #[test]
    fn certificates_carry_the_documented_fields() {
        let word = SimpleWord::new(vec![1]);
        let cert = VectorCertificate::simple(&word, &word.vector());
        let json = cert.to_json();
        assert_eq!(json["word"], "A C");
        assert_eq!(json["t"], "3");
        assert_eq!(json["u"], "1");
        assert_eq!(json["tau"], "4");
        assert_eq!(json["vertices"], 4);
    }

    #[test]
    fn enumeration_bounds_are_enforced() {
        assert!(matches!(enum_simple(23), Err(SpectrumError::TooLarge(_))));
        assert!(matches!(enum_full(19), Err(SpectrumError::TooLarge(_))));
    }
}
