//! Elements of the symmetric group S_n, their inversion sets, and random
//! saturated chains in the weak order.
//!
//! Products compose left to right: `v.compose(&w)` maps `i` to `w(v(i))`.
//! Under this convention multiplying by a simple transposition on the right
//! toggles exactly one inversion pair, so the inversion sets along a reduced
//! word grow one pair at a time, and the permutation-matrix map
//! (`exterior::permutation_matrix`, with `P[i, w(i)] = 1`) is a homomorphism.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermutationError {
    #[error("one-line notation must be a bijection of 1..=n, got {0:?}")]
    NotABijection(Vec<u32>),
    #[error("permutation sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("cannot parse permutation from `{0}`")]
    Parse(String),
    #[error("vertex {0} out of range 1..={1}")]
    OutOfRange(u32, u32),
}

/// A permutation of `[n] = {1, ..., n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    /// images[i-1] = w(i)
    images: Vec<u32>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", strs.join(" "))
    }
}

impl Permutation {
    pub fn identity(n: u32) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The longest element w0, with w0(i) = n + 1 - i.
    pub fn longest_element(n: u32) -> Self {
        Permutation {
            images: (1..=n).rev().collect(),
        }
    }

    pub fn from_one_line(images: Vec<u32>) -> Result<Self, PermutationError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x as usize > n || seen[x as usize - 1] {
                return Err(PermutationError::NotABijection(images));
            }
            seen[x as usize - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// The transposition swapping `a` and `b` in S_n.
    pub fn transposition(n: u32, a: u32, b: u32) -> Result<Self, PermutationError> {
        if a == 0 || a > n {
            return Err(PermutationError::OutOfRange(a, n));
        }
        if b == 0 || b > n {
            return Err(PermutationError::OutOfRange(b, n));
        }
        let mut images: Vec<u32> = (1..=n).collect();
        images.swap(a as usize - 1, b as usize - 1);
        Ok(Permutation { images })
    }

    /// The simple transposition s_i = (i, i+1), 1 <= i < n.
    pub fn simple(n: u32, i: u32) -> Self {
        Self::transposition(n, i, i + 1).expect("simple transposition in range")
    }

    /// One-line notation, or the keywords `id` / `w0` for the given n.
    pub fn parse(s: &str, n: u32) -> Result<Self, PermutationError> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("id") {
            return Ok(Self::identity(n));
        }
        if s.eq_ignore_ascii_case("w0") {
            return Ok(Self::longest_element(n));
        }
        let images: Result<Vec<u32>, _> = s
            .split([' ', ','])
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>())
            .collect();
        let images = images.map_err(|_| PermutationError::Parse(s.into()))?;
        if images.len() != n as usize {
            return Err(PermutationError::Parse(format!(
                "{s} (expected {n} entries)"
            )));
        }
        Self::from_one_line(images)
    }

    pub fn n(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn one_line(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.images[i as usize - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i as u32 + 1)
    }

    /// `Some((a, b))` with a < b if the permutation swaps exactly two values.
    pub fn as_transposition(&self) -> Option<(u32, u32)> {
        let moved: Vec<u32> = (1..=self.n()).filter(|&i| self.apply(i) != i).collect();
        match moved[..] {
            [a, b] if self.apply(a) == b && self.apply(b) == a => Some((a, b)),
            _ => None,
        }
    }

    /// `self` followed by `then`: the result maps i to then(self(i)).
    pub fn compose(&self, then: &Permutation) -> Permutation {
        assert_eq!(
            self.n(),
            then.n(),
            "composing permutations of different sizes"
        );
        Permutation {
            images: self.images.iter().map(|&x| then.apply(x)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize - 1] = i as u32 + 1;
        }
        Permutation { images }
    }

    /// The position pairs (i, j), i < j, with w(i) > w(j).
    pub fn inversions(&self) -> InversionSet {
        let n = self.n();
        let mut pairs = BTreeSet::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                if self.apply(i) > self.apply(j) {
                    pairs.insert((i, j));
                }
            }
        }
        InversionSet { pairs }
    }

    /// Coxeter length = number of inversions.
    pub fn length(&self) -> usize {
        let n = self.n();
        let mut count = 0;
        for i in 1..=n {
            for j in (i + 1)..=n {
                if self.apply(i) > self.apply(j) {
                    count += 1;
                }
            }
        }
        count
    }
}

/// The inversion pairs of a permutation; these index the indeterminates of
/// the unipotent matrices in `exterior`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InversionSet {
    pairs: BTreeSet<(u32, u32)>,
}

impl InversionSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, i: u32, j: u32) -> bool {
        self.pairs.contains(&(i, j))
    }

    /// Ascending row-major iteration.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.pairs.iter().copied()
    }
}

/// A saturated chain id = v_0 < v_1 < ... < v_m = w in the weak order, where
/// each step composes with a simple transposition on the right and raises the
/// length by one. The chain is drawn uniformly among all reduced words of `w`
/// by weighting each descent with the number of reduced words below it.
pub fn right_weak_chain<R: Rng + ?Sized>(w: &Permutation, rng: &mut R) -> Vec<Permutation> {
    let n = w.n();
    let mut counts: HashMap<Permutation, u128> = HashMap::new();
    let mut chain = vec![w.clone()];
    let mut cur = w.clone();
    while !cur.is_identity() {
        let descents: Vec<(Permutation, u128)> = (1..n)
            .map(|i| cur.compose(&Permutation::simple(n, i)))
            .filter(|v| v.length() + 1 == cur.length())
            .map(|v| {
                let c = count_reduced_words(&v, &mut counts);
                (v, c)
            })
            .collect();
        let total: u128 = descents.iter().map(|(_, c)| c).sum();
        let mut pick = rng.gen_range(0..total);
        let mut chosen = None;
        for (v, c) in descents {
            if pick < c {
                chosen = Some(v);
                break;
            }
            pick -= c;
        }
        cur = chosen.expect("nonidentity permutation has a descent");
        chain.push(cur.clone());
    }
    chain.reverse();
    chain
}

/// Number of reduced words of `w`, memoized.
pub fn count_reduced_words(w: &Permutation, memo: &mut HashMap<Permutation, u128>) -> u128 {
    if w.is_identity() {
        return 1;
    }
    if let Some(&c) = memo.get(w) {
        return c;
    }
    let n = w.n();
    let len = w.length();
    let mut total = 0u128;
    for i in 1..n {
        let v = w.compose(&Permutation::simple(n, i));
        if v.length() + 1 == len {
            total += count_reduced_words(&v, memo);
        }
    }
    memo.insert(w.clone(), total);
    total
}
