//! Hitting residues: short surgery words whose vectors land in any wanted
//! class mod `N`.
//!
//! Everything runs through the two products `X = A D` and `Y = A^2 D`.
//! Both are single surgery steps away from each other (`X` is one
//! triangle move, `Y` a subdivision plus a triangle move), and together
//! they generate all of `SL2(Z_N)`: since the group is finite, the
//! semigroup they span is the full group, and `A = Y X^(-1)`,
//! `D = A^(-1) X` recover the standard unipotent generators.
//!
//! [`find_word`] therefore only has to search the Cayley graph of
//! `SL2(Z_N)`: a bidirectional breadth-first search from the identity and
//! from the coset of matrices with the wanted first column meets after
//! `O(log N)` letters, and each letter costs at most two graph vertices.
//! That turns into [`tau_mod_witness`]: a planar graph on `O(log N)`
//! vertices whose spanning-tree count is congruent to any given `u`, and
//! into [`zaremba_mod`]: a continued fraction with quotients 1 and 2
//! evaluating to any given residue.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};

use crate::algebra::{ext_gcd, FeasVec};
use crate::cfrac::{cf_from_word, CFrac};
use crate::witness::{predicted_vector, OpLetter, OpWord, WitnessGraph};

/// Errors from modular word search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModError {
    /// Modulus outside the supported range.
    BadModulus(u64),
    /// No matrix has first column `(t, u)`: `gcd(t, u, N) != 1`.
    BadColumn { t: u64, u: u64, modulus: u64 },
    /// Search exhausted its length cap or state budget.
    NotFound { cap: usize },
    /// Unreadable generator word text.
    Parse(String),
}

impl fmt::Display for ModError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModError::BadModulus(n) => write!(f, "unsupported modulus {n}"),
            ModError::BadColumn { t, u, modulus } => {
                write!(f, "({t}, {u}) shares a factor with {modulus}")
            }
            ModError::NotFound { cap } => {
                write!(f, "no word found within a length cap of {cap}")
            }
            ModError::Parse(why) => write!(f, "bad generator word: {why}"),
        }
    }
}

impl std::error::Error for ModError {}

/// Largest modulus the breadth-first searches accept; beyond this the
/// visited-state maps stop fitting in memory.
pub const MAX_SEARCH_MODULUS: u64 = 4096;

const STATE_BUDGET: usize = 4_000_000;

/// An element of `SL2(Z_N)`, entries reduced mod `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Sl2ModN {
    modulus: u64,
    a: u64,
    b: u64,
    c: u64,
    d: u64,
}

impl Sl2ModN {
    /// Validates `det = 1 (mod N)`. Moduli range over `2..=2^32`.
    pub fn new(modulus: u64, a: u64, b: u64, c: u64, d: u64) -> Result<Self, ModError> {
        if !(2..=1 << 32).contains(&modulus) {
            return Err(ModError::BadModulus(modulus));
        }
        let m = Sl2ModN {
            modulus,
            a: a % modulus,
            b: b % modulus,
            c: c % modulus,
            d: d % modulus,
        };
        if m.det() != 1 % modulus {
            return Err(ModError::BadColumn {
                t: a % modulus,
                u: c % modulus,
                modulus,
            });
        }
        Ok(m)
    }

    pub fn identity(modulus: u64) -> Self {
        Sl2ModN {
            modulus,
            a: 1 % modulus,
            b: 0,
            c: 0,
            d: 1 % modulus,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// First column `(a, c)`: the image of `(1, 0)`.
    pub fn column(&self) -> (u64, u64) {
        (self.a, self.c)
    }

    pub fn det(&self) -> u64 {
        let n = self.modulus as u128;
        let ad = self.a as u128 * self.d as u128 % n;
        let bc = self.b as u128 * self.c as u128 % n;
        ((ad + n - bc) % n) as u64
    }

    pub fn mul(&self, rhs: &Sl2ModN) -> Sl2ModN {
        assert_eq!(self.modulus, rhs.modulus);
        let n = self.modulus as u128;
        let dot = |x: u64, y: u64, z: u64, w: u64| {
            ((x as u128 * y as u128 + z as u128 * w as u128) % n) as u64
        };
        Sl2ModN {
            modulus: self.modulus,
            a: dot(self.a, rhs.a, self.b, rhs.c),
            b: dot(self.a, rhs.b, self.b, rhs.d),
            c: dot(self.c, rhs.a, self.d, rhs.c),
            d: dot(self.c, rhs.b, self.d, rhs.d),
        }
    }

    /// Injective for moduli up to `2^32`.
    pub fn encode(&self) -> u128 {
        let n = self.modulus as u128;
        self.a as u128 + n * (self.b as u128 + n * (self.c as u128 + n * self.d as u128))
    }

    /// `X = A D = [[2, 1], [1, 1]]`.
    pub fn x(modulus: u64) -> Self {
        Sl2ModN::new(modulus, 2, 1, 1, 1).expect("det 1")
    }

    /// `Y = A^2 D = [[3, 2], [1, 1]]`.
    pub fn y(modulus: u64) -> Self {
        Sl2ModN::new(modulus, 3, 2, 1, 1).expect("det 1")
    }

    fn x_inv(modulus: u64) -> Self {
        Sl2ModN::new(modulus, 1, modulus - 1, modulus - 1, 2).expect("det 1")
    }

    fn y_inv(modulus: u64) -> Self {
        Sl2ModN::new(modulus, 1, modulus - 2, modulus - 1, 3).expect("det 1")
    }

    fn shear(modulus: u64) -> Self {
        // A = [[1, 1], [0, 1]]: right multiplication reruns the coset of a
        // fixed first column
        Sl2ModN::new(modulus, 1, 1, 0, 1).expect("det 1")
    }
}

/// One generator letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gen {
    X,
    Y,
}

impl Gen {
    pub fn matrix(self, modulus: u64) -> Sl2ModN {
        match self {
            Gen::X => Sl2ModN::x(modulus),
            Gen::Y => Sl2ModN::y(modulus),
        }
    }

    pub fn letters(self) -> &'static [OpLetter] {
        match self {
            Gen::X => &[OpLetter::TriangleMove],
            Gen::Y => &[OpLetter::Subdivide, OpLetter::TriangleMove],
        }
    }
}

/// A word over `{X, Y}`, leftmost letter applied last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GenWord(pub Vec<Gen>);

impl GenWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Expansion into surgery letters: `X -> C`, `Y -> A C`.
    pub fn to_opword(&self) -> OpWord {
        OpWord(
            self.0
                .iter()
                .flat_map(|g| g.letters().iter().copied())
                .collect(),
        )
    }

    /// The exact integer vector of the expanded word.
    pub fn exact_vector(&self) -> FeasVec {
        predicted_vector(&self.to_opword())
    }

    /// Vertex count of the witness graph the word builds.
    pub fn vertices(&self) -> usize {
        self.to_opword().weight() + 2
    }

    pub fn matrix(&self, modulus: u64) -> Sl2ModN {
        self.0
            .iter()
            .fold(Sl2ModN::identity(modulus), |m, g| m.mul(&g.matrix(modulus)))
    }

    /// Word exponent list `[a1, 1, a2, 1, ...]`: each `X` contributes the
    /// pair `(1, 1)`, each `Y` the pair `(2, 1)`.
    pub fn ad_exponents(&self) -> Vec<u64> {
        self.0
            .iter()
            .flat_map(|g| match g {
                Gen::X => [1u64, 1],
                Gen::Y => [2, 1],
            })
            .collect()
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.0 {
            match g {
                Gen::X => write!(f, "X")?,
                Gen::Y => write!(f, "Y")?,
            }
        }
        Ok(())
    }
}

impl FromStr for GenWord {
    type Err = ModError;

    fn from_str(s: &str) -> Result<Self, ModError> {
        let mut w = Vec::new();
        for ch in s.chars() {
            match ch {
                'X' | 'x' => w.push(Gen::X),
                'Y' | 'y' => w.push(Gen::Y),
                c if c.is_whitespace() => {}
                c => return Err(ModError::Parse(format!("unexpected character {c:?}"))),
            }
        }
        Ok(GenWord(w))
    }
}

fn residue(x: &BigInt, n: u64) -> u64 {
    use num_traits::ToPrimitive;
    let n = BigInt::from(n);
    (((x % &n) + &n) % &n).to_u64().expect("residue fits")
}

/// Some `SL2(Z_N)` matrix with first column `(t, u)`; exists exactly when
/// `gcd(t, u, N) = 1`. The second column comes from an extended gcd.
pub fn complete_column(t: u64, u: u64, n: u64) -> Result<Sl2ModN, ModError> {
    if n < 2 {
        return Err(ModError::BadModulus(n));
    }
    let (t, u) = (t % n, u % n);
    let g0 = num_integer::gcd(t, u);
    if num_integer::gcd(g0, n) != 1 {
        return Err(ModError::BadColumn { t, u, modulus: n });
    }
    let (g, x, y) = ext_gcd(&BigInt::from(t), &BigInt::from(u)).expect("not both zero");
    debug_assert_eq!(g, BigInt::from(g0));
    let (_, inv, _) = ext_gcd(&BigInt::from(g0), &BigInt::from(n)).expect("nonzero");
    let inv = residue(&inv, n) as u128;
    let b = (residue(&-y, n) as u128 * inv % n as u128) as u64;
    let d = (residue(&x, n) as u128 * inv % n as u128) as u64;
    Sl2ModN::new(n, t, b, u, d)
}

const SEED: u8 = u8::MAX;

fn walk(parents: &HashMap<u128, (u128, u8)>, mut at: u128) -> Vec<Gen> {
    let mut letters = Vec::new();
    loop {
        let &(prev, letter) = parents.get(&at).expect("walk stays inside the map");
        if letter == SEED {
            return letters;
        }
        letters.push(if letter == 0 { Gen::X } else { Gen::Y });
        at = prev;
    }
}

/// Shortest-or-next-to-shortest word `W` over `{X, Y}` with
/// `W (1, 0) = (t, u) (mod N)`, found by bidirectional breadth-first
/// search: forward from the identity, backward (right-multiplying by
/// inverse letters) from the coset of matrices with the wanted column.
/// Deterministic: frontiers are scanned in insertion order and `X` is
/// tried before `Y`.
pub fn find_word(t: u64, u: u64, n: u64, max_len: usize) -> Result<GenWord, ModError> {
    if !(2..=MAX_SEARCH_MODULUS).contains(&n) {
        return Err(ModError::BadModulus(n));
    }
    let fwd_gen = [Sl2ModN::x(n), Sl2ModN::y(n)];
    let bwd_gen = [Sl2ModN::x_inv(n), Sl2ModN::y_inv(n)];

    // forward states carry the word from the identity; backward states a
    // suffix whose product moves them into the target coset
    let mut fwd: HashMap<u128, (u128, u8)> = HashMap::new();
    let mut bwd: HashMap<u128, (u128, u8)> = HashMap::new();
    let start = Sl2ModN::identity(n);
    fwd.insert(start.encode(), (start.encode(), SEED));
    let mut fwd_frontier = vec![start];

    let mut bwd_frontier = Vec::new();
    let shear = Sl2ModN::shear(n);
    let mut seed = complete_column(t, u, n)?;
    for _ in 0..n {
        if bwd.insert(seed.encode(), (seed.encode(), SEED)).is_none() {
            bwd_frontier.push(seed);
        }
        seed = seed.mul(&shear);
    }

    if bwd.contains_key(&start.encode()) {
        return Ok(GenWord(Vec::new())); // the identity already has column (t, u)
    }

    let (mut df, mut db) = (0usize, 0usize);
    while df + db < max_len {
        let expand_fwd = match (fwd_frontier.is_empty(), bwd_frontier.is_empty()) {
            (true, true) => return Err(ModError::NotFound { cap: max_len }),
            (false, true) => true,
            (true, false) => false,
            (false, false) => fwd_frontier.len() <= bwd_frontier.len(),
        };
        let mut meet = None;
        {
            let (frontier, own, other, letters) = if expand_fwd {
                (&mut fwd_frontier, &mut fwd, &bwd, &fwd_gen)
            } else {
                (&mut bwd_frontier, &mut bwd, &fwd, &bwd_gen)
            };
            let mut next = Vec::new();
            'expand: for state in frontier.iter() {
                for (idx, gen) in letters.iter().enumerate() {
                    let child = state.mul(gen);
                    let key = child.encode();
                    if own.contains_key(&key) {
                        continue;
                    }
                    own.insert(key, (state.encode(), idx as u8));
                    if other.contains_key(&key) {
                        meet = Some(key);
                        break 'expand;
                    }
                    next.push(child);
                }
            }
            *frontier = next;
        }
        if let Some(key) = meet {
            let mut word = walk(&fwd, key);
            word.reverse();
            word.extend(walk(&bwd, key));
            debug_assert_eq!(GenWord(word.clone()).matrix(n).column(), (t % n, u % n));
            return Ok(GenWord(word));
        }
        if fwd.len() + bwd.len() > STATE_BUDGET {
            return Err(ModError::NotFound { cap: max_len });
        }
        if expand_fwd {
            df += 1;
        } else {
            db += 1;
        }
    }
    Err(ModError::NotFound { cap: max_len })
}

/// A word together with the graph-level data certifying what it hits.
#[derive(Debug, Clone)]
pub struct ModCertificate {
    pub modulus: u64,
    pub t_target: u64,
    pub u_target: u64,
    pub word: GenWord,
    /// Exact integer vector of the expanded word.
    pub vector: FeasVec,
}

impl ModCertificate {
    pub fn opword(&self) -> OpWord {
        self.word.to_opword()
    }

    pub fn vertices(&self) -> usize {
        self.word.vertices()
    }

    pub fn tau(&self) -> BigUint {
        self.vector.tau()
    }

    /// Full replay: rebuilds the witness graph by surgery, recounts its
    /// spanning trees from the Laplacian, and reduces mod `N`.
    pub fn verify(&self) -> bool {
        let built = WitnessGraph::build(&self.opword());
        let v = built.vector();
        v == self.vector
            && &v.t % self.modulus == BigUint::from(self.t_target)
            && &v.u % self.modulus == BigUint::from(self.u_target)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "N": self.modulus,
            "t_target": self.t_target,
            "u_target": self.u_target,
            "word": self.word.to_string(),
            "opword": self.opword().to_string(),
            "t": self.vector.t.to_string(),
            "u": self.vector.u.to_string(),
            "tau": self.tau().to_string(),
            "vertices": self.vertices(),
        })
    }
}

fn length_cap(n: u64) -> usize {
    let bits = 64 - n.leading_zeros() as usize;
    12 * bits + 16
}

/// A word whose exact vector is congruent to `(t, u)` mod `N`, packaged
/// with its witness graph data. The length cap scales with `log2 N` and
/// is retried once, doubled.
pub fn feasible_mod(t: u64, u: u64, n: u64) -> Result<ModCertificate, ModError> {
    let cap = length_cap(n);
    let word = match find_word(t, u, n, cap) {
        Ok(w) => w,
        Err(ModError::NotFound { .. }) => find_word(t, u, n, 2 * cap)?,
        Err(e) => return Err(e),
    };
    let vector = word.exact_vector();
    let cert = ModCertificate {
        modulus: n,
        t_target: t % n,
        u_target: u % n,
        word,
        vector,
    };
    debug_assert!(cert.verify());
    Ok(cert)
}

/// A planar graph whose spanning-tree count is `u` mod `N`, on
/// `O(log N)` vertices: the word targets the column `(1, u - 1)`, and
/// the tree count of a witness graph is the sum of its vector entries.
pub fn tau_mod_witness(u: u64, n: u64) -> Result<ModCertificate, ModError> {
    if n < 2 {
        return Err(ModError::BadModulus(n));
    }
    let u = u % n;
    feasible_mod(1, (u + n - 1) % n, n)
}

/// A continued fraction with quotients 1 and 2 whose value is `u` mod
/// `N`: the word for the column `(1, u)` spells the fraction
/// `[a1, 1, a2, 1, ...]` whose denominator is congruent to 1 and hence
/// always invertible.
pub fn zaremba_mod(u: u64, n: u64) -> Result<(CFrac, ModCertificate), ModError> {
    if n < 2 {
        return Err(ModError::BadModulus(n));
    }
    let u = u % n;
    let cert = feasible_mod(1, u, n)?;
    let cf = cf_from_word(&cert.word.ad_exponents()).expect("X/Y exponent pairs are well formed");
    debug_assert_eq!(cf.eval(), (cert.vector.u.clone(), cert.vector.t.clone()));
    Ok((cf, cert))
}

/// `|SL2(Z_N)| = N^3 * prod over primes p | N of (1 - 1/p^2)`.
pub fn sl2_order(n: u64) -> u64 {
    assert!(n >= 1);
    let mut order = n * n * n;
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            order = order / (p * p) * (p * p - 1);
            while rest % p == 0 {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        order = order / (rest * rest) * (rest * rest - 1);
    }
    order
}

/// Exhaustive forward reachability report for small moduli.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeReport {
    pub modulus: u64,
    /// Group order by the product formula.
    pub order: u64,
    /// Matrices reached by words over `{X, Y}`.
    pub reached: u64,
    /// Length of the longest shortest word.
    pub diameter: u32,
}

/// Breadth-first search of the whole group from the identity, recording
/// how much of `SL2(Z_N)` the positive words reach and how long the worst
/// one is. Capped at `N <= 64` to stay quick.
pub fn diameter_probe(n: u64) -> Result<ProbeReport, ModError> {
    if !(2..=64).contains(&n) {
        return Err(ModError::BadModulus(n));
    }
    let gens = [Sl2ModN::x(n), Sl2ModN::y(n)];
    let mut seen = std::collections::HashSet::new();
    let start = Sl2ModN::identity(n);
    seen.insert(start.encode());
    let mut frontier = vec![start];
    let mut diameter = 0;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for state in &frontier {
            for gen in &gens {
                let child = state.mul(gen);
                if seen.insert(child.encode()) {
                    next.push(child);
                }
            }
        }
        if !next.is_empty() {
            diameter += 1;
        }
        frontier = next;
    }
    Ok(ProbeReport {
        modulus: n,
        order: sl2_order(n),
        reached: seen.len() as u64,
        diameter,
    })
}
