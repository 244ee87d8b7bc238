//! Rook placements in one-line notation and their order.
//!
//! A rook placement on `n` letters is a 0-1 matrix with at most one 1 in
//! every row and column; in one-line notation it is the sequence
//! `(a_1, …, a_n)` where `a_j = i` when the matrix has a 1 at `(i, j)` and
//! `a_j = 0` when column `j` is empty. Nonzero entries are pairwise
//! distinct.
//!
//! The order studied here is generated by two kinds of moves
//! ([`Rook::ppr_moves_up`]): raising one entry to an unused larger value,
//! and swapping two entries into decreasing position. Both strictly
//! increase the length statistic [`Rook::length`], so the moves generate a
//! graded order whose covers are the single moves that raise length by
//! exactly one.
//!
//! Comparisons and covers inside a chosen [`Universe`] (all placements,
//! the upper-triangular ones, the strictly upper-triangular ones, rank
//! slices, idempotents) are answered from a memoized closure table built
//! over the enumerated universe ([`order_table`]); restricted-universe
//! covers are computed from the induced subposet rather than assumed to be
//! covers of the ambient order.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, LazyLock, Mutex};

use serde::{Deserialize, Serialize};

use crate::arc_diagrams::ArcDiagram;
use crate::bitmat::{disjoint, ones, BitMatrix};
use crate::error::{Error, ParseError};

/// Largest `n` for enumerating all placements; the count reaches 1.44
/// million at n = 8.
pub const MAX_FULL_ENUMERATE_N: usize = 8;

/// Largest `n` for enumerating the upper-triangular families.
pub const MAX_UPPER_ENUMERATE_N: usize = 9;

/// Largest universe size for which a closure table may be built; two
/// square bit matrices at this size stay near half a gigabyte.
const MAX_TABLE_ELEMENTS: usize = 45_000;

/// Largest `n` the comparison oracle accepts for arbitrary placements
/// (the full closure table above this is out of memory reach).
pub const MAX_ORACLE_N: usize = 6;

/// Serialized shape of [`Rook`]: `{ "n": 6, "a": [4,0,5,0,3,1] }`.
#[derive(Serialize, Deserialize)]
struct RookRepr {
    n: usize,
    a: Vec<usize>,
}

impl From<Rook> for RookRepr {
    fn from(x: Rook) -> Self {
        RookRepr {
            n: x.n(),
            a: x.entries().collect(),
        }
    }
}

impl TryFrom<RookRepr> for Rook {
    type Error = Error;

    fn try_from(r: RookRepr) -> Result<Self, Error> {
        if r.a.len() != r.n {
            return Err(Error::InvalidRook(format!(
                "declared size {} but {} entries",
                r.n,
                r.a.len()
            )));
        }
        Rook::new(r.a)
    }
}

/// A rook placement on `n` letters in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RookRepr", into = "RookRepr")]
pub struct Rook {
    a: Vec<u16>,
}

impl Rook {
    /// Builds a placement from its one-line entries; `n` is the sequence
    /// length.
    pub fn new(entries: impl IntoIterator<Item = usize>) -> Result<Self, Error> {
        let entries: Vec<usize> = entries.into_iter().collect();
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidRook("size must be positive".into()));
        }
        if n > u16::MAX as usize {
            return Err(Error::BoundExceeded {
                what: "Rook::new",
                param: "n",
                limit: u16::MAX as usize,
                got: n,
            });
        }
        let mut seen = vec![false; n + 1];
        let mut a = Vec::with_capacity(n);
        for &v in &entries {
            if v > n {
                return Err(Error::InvalidRook(format!(
                    "entry {v} exceeds the size {n}"
                )));
            }
            if v != 0 {
                if seen[v] {
                    return Err(Error::InvalidRook(format!(
                        "nonzero entry {v} repeats"
                    )));
                }
                seen[v] = true;
            }
            a.push(v as u16);
        }
        Ok(Rook { a })
    }

    /// The zero placement `(0, …, 0)`.
    pub fn zero(n: usize) -> Result<Self, Error> {
        Rook::new(vec![0; n])
    }

    /// The identity permutation `(1, 2, …, n)`.
    pub fn identity(n: usize) -> Result<Self, Error> {
        Rook::new((1..=n).collect::<Vec<_>>())
    }

    /// Parses `"4,0,5,0,3,1"`, with optional surrounding parentheses and
    /// whitespace around entries.
    pub fn parse(input: &str) -> Result<Self, ParseError> {
        let chars: Vec<char> = input.chars().collect();
        let mut lo = 0usize;
        let mut hi = chars.len();
        while lo < hi && chars[lo].is_whitespace() {
            lo += 1;
        }
        while hi > lo && chars[hi - 1].is_whitespace() {
            hi -= 1;
        }
        if lo < hi && chars[lo] == '(' && chars[hi - 1] == ')' {
            lo += 1;
            hi -= 1;
        }
        if lo >= hi {
            return Err(ParseError::new(input, lo, "empty placement"));
        }
        let mut entries = Vec::new();
        let mut pos = lo;
        loop {
            while pos < hi && chars[pos].is_whitespace() {
                pos += 1;
            }
            let start = pos;
            while pos < hi && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == start {
                let found = if pos < hi {
                    format!("unexpected character '{}'", chars[pos])
                } else {
                    "expected a number".to_string()
                };
                return Err(ParseError::new(input, pos, found));
            }
            let token: String = chars[start..pos].iter().collect();
            let v: usize = token
                .parse()
                .map_err(|_| ParseError::new(input, start, "entry too large"))?;
            entries.push((start, v));
            while pos < hi && chars[pos].is_whitespace() {
                pos += 1;
            }
            if pos == hi {
                break;
            }
            if chars[pos] != ',' {
                return Err(ParseError::new(
                    input,
                    pos,
                    format!("expected ',' but found '{}'", chars[pos]),
                ));
            }
            pos += 1;
            if pos == hi {
                return Err(ParseError::new(input, pos - 1, "trailing ','"));
            }
        }
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &(at, v) in &entries {
            if v > n {
                return Err(ParseError::new(
                    input,
                    at,
                    format!("entry {v} exceeds the size {n}"),
                ));
            }
            if v != 0 {
                if seen[v] {
                    return Err(ParseError::new(
                        input,
                        at,
                        format!("nonzero entry {v} repeats"),
                    ));
                }
                seen[v] = true;
            }
        }
        Ok(Rook {
            a: entries.iter().map(|&(_, v)| v as u16).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// One-line entries `a_1, …, a_n`.
    pub fn entries(&self) -> impl Iterator<Item = usize> + '_ {
        self.a.iter().map(|&v| v as usize)
    }

    /// The entry `a_j` (1-based column index).
    pub fn entry(&self, j: usize) -> Option<usize> {
        if j >= 1 && j <= self.a.len() {
            Some(self.a[j - 1] as usize)
        } else {
            None
        }
    }

    /// Number of nonzero entries.
    pub fn rank(&self) -> usize {
        self.a.iter().filter(|&&v| v != 0).count()
    }

    /// `a_i ≤ i` for every column.
    pub fn is_upper(&self) -> bool {
        self.a.iter().enumerate().all(|(i, &v)| (v as usize) <= i + 1)
    }

    /// `a_i < i` for every column (so `a_1 = 0`).
    pub fn is_strictly_upper(&self) -> bool {
        self.a.iter().enumerate().all(|(i, &v)| (v as usize) < i + 1)
    }

    /// Every entry is 0 or its own column index.
    pub fn is_idempotent(&self) -> bool {
        self.a.iter().enumerate().all(|(i, &v)| v == 0 || v as usize == i + 1)
    }

    /// Columns with `a_i = i`; for an idempotent this is its support.
    pub fn fixed_points(&self) -> Vec<usize> {
        self.a
            .iter()
            .enumerate()
            .filter(|&(i, &v)| v as usize == i + 1)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// `Σ a_i + inv`, where `inv` counts pairs `i < j` with `a_i > a_j`
    /// (zeros participate with value 0). Equals
    /// [`Rook::length_via_coinv`].
    pub fn length(&self) -> u64 {
        let sum: u64 = self.a.iter().map(|&v| v as u64).sum();
        sum + inversions(&self.a)
    }

    /// `Σ a_i* − coinv`, where `a_i* = a_i + n − i` over nonzero entries
    /// and `coinv` counts pairs `i < j` with `0 < a_i < a_j`.
    pub fn length_via_coinv(&self) -> u64 {
        let n = self.a.len() as u64;
        let starred: u64 = self
            .a
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v != 0)
            .map(|(i, &v)| v as u64 + n - (i as u64 + 1))
            .sum();
        starred - coinversions(&self.a)
    }

    /// All placements one generator move above this one: raise one entry
    /// to an unused larger value, or swap `a_i < a_j` (`i < j`) into
    /// decreasing position. Every result has strictly larger length.
    pub fn ppr_moves_up(&self) -> Vec<Rook> {
        let n = self.a.len();
        let mut used = vec![false; n + 1];
        for &v in &self.a {
            if v != 0 {
                used[v as usize] = true;
            }
        }
        let mut out = BTreeSet::new();
        for i in 0..n {
            for b in (self.a[i] as usize + 1)..=n {
                if !used[b] {
                    let mut a = self.a.clone();
                    a[i] = b as u16;
                    out.insert(Rook { a });
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.a[i] < self.a[j] {
                    let mut a = self.a.clone();
                    a.swap(i, j);
                    out.insert(Rook { a });
                }
            }
        }
        out.into_iter().collect()
    }

    fn one_line(&self) -> &[u16] {
        &self.a
    }
}

fn inversions(a: &[u16]) -> u64 {
    let mut count = 0u64;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if a[i] > a[j] {
                count += 1;
            }
        }
    }
    count
}

fn coinversions(a: &[u16]) -> u64 {
    let mut count = 0u64;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if a[i] != 0 && a[i] < a[j] {
                count += 1;
            }
        }
    }
    count
}

impl fmt::Display for Rook {
    /// `(4,0,5,0,3,1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.a.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Rook {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        Rook::parse(s)
    }
}

/// A family of placements on `n` letters, closed over for order queries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Universe {
    /// All placements.
    Full,
    /// Upper-triangular placements: `a_i ≤ i`.
    Upper,
    /// Strictly upper-triangular placements: `a_i < i`.
    StrictlyUpper,
    /// Idempotents: every entry 0 or its column index.
    Idempotents,
    /// Idempotents with exactly `k` nonzero entries.
    IdempotentsOfRank(usize),
    /// Upper-triangular placements with exactly `k` nonzero entries.
    UpperOfRank(usize),
}

impl Universe {
    pub fn contains(&self, x: &Rook) -> bool {
        match *self {
            Universe::Full => true,
            Universe::Upper => x.is_upper(),
            Universe::StrictlyUpper => x.is_strictly_upper(),
            Universe::Idempotents => x.is_idempotent(),
            Universe::IdempotentsOfRank(k) => x.is_idempotent() && x.rank() == k,
            Universe::UpperOfRank(k) => x.is_upper() && x.rank() == k,
        }
    }

    /// Enumeration bound on `n` for this family.
    pub fn max_enumeration_n(&self) -> usize {
        match self {
            Universe::Full => MAX_FULL_ENUMERATE_N,
            _ => MAX_UPPER_ENUMERATE_N,
        }
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Universe::Full => f.write_str("all placements"),
            Universe::Upper => f.write_str("upper-triangular placements"),
            Universe::StrictlyUpper => f.write_str("strictly upper-triangular placements"),
            Universe::Idempotents => f.write_str("idempotent placements"),
            Universe::IdempotentsOfRank(k) => {
                write!(f, "idempotent placements of rank {k}")
            }
            Universe::UpperOfRank(k) => {
                write!(f, "upper-triangular placements of rank {k}")
            }
        }
    }
}

/// Enumerates the universe on `n` letters, ascending in one-line
/// lexicographic order, without duplicates. Rank-restricted kinds with
/// `k > n` are empty.
pub fn enumerate_universe(universe: Universe, n: usize) -> Result<Vec<Rook>, Error> {
    if n == 0 {
        return Err(Error::InvalidRook("size must be positive".into()));
    }
    let limit = universe.max_enumeration_n();
    if n > limit {
        return Err(Error::BoundExceeded {
            what: "enumerate_universe",
            param: "n",
            limit,
            got: n,
        });
    }
    let mut out = Vec::new();
    let mut a = vec![0u16; n];
    let mut used = vec![false; n + 1];
    fill(universe, n, 0, 0, &mut a, &mut used, &mut out);
    Ok(out)
}

/// Backtracking enumeration; candidate values ascend at every position, so
/// the output is lexicographically sorted by construction.
fn fill(
    universe: Universe,
    n: usize,
    pos: usize,
    nonzeros: usize,
    a: &mut Vec<u16>,
    used: &mut Vec<bool>,
    out: &mut Vec<Rook>,
) {
    let want = match universe {
        Universe::IdempotentsOfRank(k) | Universe::UpperOfRank(k) => Some(k),
        _ => None,
    };
    if let Some(k) = want {
        // prune: cannot reach rank k from here
        if nonzeros > k || nonzeros + (n - pos) < k {
            return;
        }
    }
    if pos == n {
        out.push(Rook { a: a.clone() });
        return;
    }
    // zero is always admissible and sorts first
    a[pos] = 0;
    fill(universe, n, pos + 1, nonzeros, a, used, out);
    let top = match universe {
        Universe::Full => n,
        Universe::Upper | Universe::UpperOfRank(_) => pos + 1,
        Universe::StrictlyUpper => pos,
        Universe::Idempotents | Universe::IdempotentsOfRank(_) => pos + 1,
    };
    let bottom = match universe {
        Universe::Idempotents | Universe::IdempotentsOfRank(_) => pos + 1,
        _ => 1,
    };
    for v in bottom..=top {
        if used[v] {
            continue;
        }
        used[v] = true;
        a[pos] = v as u16;
        fill(universe, n, pos + 1, nonzeros + 1, a, used, out);
        used[v] = false;
    }
    a[pos] = 0;
}

/// Order data for one enumerated universe: elements in ascending one-line
/// order, the strict comparability matrix, and the Hasse covers of the
/// induced subposet.
pub struct UniverseOrder {
    universe: Universe,
    n: usize,
    elements: Vec<Rook>,
    index: HashMap<Vec<u16>, u32>,
    lengths: Vec<u64>,
    closure: BitMatrix,
    covers: Vec<Vec<u32>>,
}

impl UniverseOrder {
    fn build(universe: Universe, n: usize) -> Result<Self, Error> {
        let elements = enumerate_universe(universe, n)?;
        let m = elements.len();
        if m > MAX_TABLE_ELEMENTS {
            return Err(Error::BoundExceeded {
                what: "order table",
                param: "universe size",
                limit: MAX_TABLE_ELEMENTS,
                got: m,
            });
        }
        let mut index = HashMap::with_capacity(m);
        for (i, x) in elements.iter().enumerate() {
            index.insert(x.one_line().to_vec(), i as u32);
        }
        let lengths: Vec<u64> = elements.iter().map(Rook::length).collect();

        // Generator-move edges that stay inside the universe.
        let edges: Vec<Vec<u32>> = elements
            .iter()
            .map(|x| {
                x.ppr_moves_up()
                    .into_iter()
                    .filter_map(|y| index.get(y.one_line()).copied())
                    .collect()
            })
            .collect();

        // Reachability: process sources in descending length so every
        // target row is already complete when it is merged in.
        let mut closure = BitMatrix::new(m);
        let mut by_length_desc: Vec<u32> = (0..m as u32).collect();
        by_length_desc.sort_by(|&p, &q| {
            lengths[q as usize]
                .cmp(&lengths[p as usize])
                .then(p.cmp(&q))
        });
        for &x in &by_length_desc {
            for &y in &edges[x as usize] {
                closure.set(x as usize, y as usize);
                closure.or_row_into(x as usize, y as usize);
            }
        }

        // Covers of the induced subposet. Every cover is a move edge
        // (reachability chains pass through move edges), and a move edge
        // (x, y) is a cover exactly when nothing sits strictly between:
        // the strict up-set of x must not meet the strict down-set of y.
        let mut transpose = BitMatrix::new(m);
        for r in 0..m {
            for c in ones(closure.row(r)) {
                transpose.set(c, r);
            }
        }
        let covers: Vec<Vec<u32>> = edges
            .iter()
            .enumerate()
            .map(|(x, outgoing)| {
                outgoing
                    .iter()
                    .copied()
                    .filter(|&y| disjoint(closure.row(x), transpose.row(y as usize)))
                    .collect()
            })
            .collect();

        Ok(UniverseOrder {
            universe,
            n,
            elements,
            index,
            lengths,
            closure,
            covers,
        })
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements in ascending one-line order.
    pub fn elements(&self) -> &[Rook] {
        &self.elements
    }

    pub fn index_of(&self, x: &Rook) -> Option<usize> {
        self.index.get(x.one_line()).map(|&i| i as usize)
    }

    pub fn length_of(&self, idx: usize) -> u64 {
        self.lengths[idx]
    }

    /// Non-strict comparison by element index.
    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        i == j || self.closure.get(i, j)
    }

    /// Non-strict comparison; errors when either side is outside the
    /// universe.
    pub fn leq(&self, x: &Rook, y: &Rook) -> Result<bool, Error> {
        let i = self
            .index_of(x)
            .ok_or_else(|| Error::NotInUniverse(x.to_string(), self.universe.to_string()))?;
        let j = self
            .index_of(y)
            .ok_or_else(|| Error::NotInUniverse(y.to_string(), self.universe.to_string()))?;
        Ok(self.leq_idx(i, j))
    }

    /// Indices covering the element at `idx` in the induced subposet.
    pub fn covers_from_idx(&self, idx: usize) -> &[u32] {
        &self.covers[idx]
    }

    /// Every Hasse edge `(lower, upper)` by index, ascending.
    pub fn cover_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.covers
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y as usize)))
    }
}

static TABLE_CACHE: LazyLock<Mutex<HashMap<(Universe, usize), Arc<UniverseOrder>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// The memoized order table for a universe; built once per
/// `(universe, n)` and shared.
pub fn order_table(universe: Universe, n: usize) -> Result<Arc<UniverseOrder>, Error> {
    if let Some(t) = TABLE_CACHE.lock().expect("cache lock").get(&(universe, n)) {
        return Ok(Arc::clone(t));
    }
    let built = Arc::new(UniverseOrder::build(universe, n)?);
    let mut cache = TABLE_CACHE.lock().expect("cache lock");
    Ok(Arc::clone(
        cache.entry((universe, n)).or_insert(built),
    ))
}

/// All placements covering `x` inside the universe, ascending.
///
/// For the full universe these are exactly the single generator moves that
/// raise length by one, with no table needed. Restricted universes are
/// answered from the induced subposet of their order table.
pub fn covers_up(x: &Rook, universe: Universe) -> Result<Vec<Rook>, Error> {
    if !universe.contains(x) {
        return Err(Error::NotInUniverse(x.to_string(), universe.to_string()));
    }
    if universe == Universe::Full {
        let target = x.length() + 1;
        return Ok(x
            .ppr_moves_up()
            .into_iter()
            .filter(|y| y.length() == target)
            .collect());
    }
    let table = order_table(universe, x.n())?;
    let idx = table
        .index_of(x)
        .expect("membership was checked against the universe predicate");
    Ok(table
        .covers_from_idx(idx)
        .iter()
        .map(|&y| table.elements()[y as usize].clone())
        .collect())
}

/// Whether `x ≤ y` in the order generated by the moves, answered from a
/// memoized closure table.
///
/// The full table is feasible for `n ≤ 6`. Above that, comparisons
/// between two upper-triangular placements are answered from the
/// upper-triangular table (an interval of the full order, so the induced
/// comparison agrees) up to `n = 8`; anything else is out of reach.
pub fn bruhat_leq_oracle(x: &Rook, y: &Rook) -> Result<bool, Error> {
    if x.n() != y.n() {
        return Err(Error::SizeMismatch(x.n(), y.n()));
    }
    if x == y {
        return Ok(true);
    }
    let n = x.n();
    if n <= MAX_ORACLE_N {
        return order_table(Universe::Full, n)?.leq(x, y);
    }
    if x.is_upper() && y.is_upper() && n <= MAX_FULL_ENUMERATE_N {
        return order_table(Universe::Upper, n)?.leq(x, y);
    }
    Err(Error::BoundExceeded {
        what: "bruhat_leq_oracle",
        param: "n",
        limit: MAX_ORACLE_N,
        got: n,
    })
}

/// The placement with `a_j = i` for every arc `(i, j)` of the diagram.
/// Always strictly upper-triangular; inverse of [`phi_inv`].
pub fn phi(a: &ArcDiagram) -> Rook {
    let mut v = vec![0usize; a.n()];
    for (i, j) in a.arcs() {
        v[j - 1] = i;
    }
    Rook::new(v).expect("chains give distinct nonzero entries")
}

/// The diagram with an arc `(a_j, j)` for every nonzero entry.
pub fn phi_inv(x: &Rook) -> Result<ArcDiagram, Error> {
    if !x.is_strictly_upper() {
        return Err(Error::NotStrictlyUpper(x.to_string()));
    }
    let arcs = x
        .entries()
        .enumerate()
        .filter(|&(_, v)| v != 0)
        .map(|(j, v)| (v, j + 1));
    ArcDiagram::new(x.n(), arcs)
}

/// Forgets the always-empty first column of a strictly upper-triangular
/// placement, giving an upper-triangular placement on `n − 1` letters.
/// Preserves length and the order.
pub fn drop_first(x: &Rook) -> Result<Rook, Error> {
    if !x.is_strictly_upper() {
        return Err(Error::NotStrictlyUpper(x.to_string()));
    }
    if x.n() == 1 {
        return Err(Error::InvalidRook(
            "cannot drop the only column of a placement of size 1".into(),
        ));
    }
    Rook::new(x.entries().skip(1).collect::<Vec<_>>())
}

/// The bottom element `(0, …, 0, 1, 2, …, k)` of the rank-`k`
/// upper-triangular stratum.
pub fn min_of_p(n: usize, k: usize) -> Result<Rook, Error> {
    if k > n {
        return Err(Error::InvalidRook(format!("rank {k} exceeds the size {n}")));
    }
    let mut v = vec![0usize; n - k];
    v.extend(1..=k);
    Rook::new(v)
}

/// Common length of every rank-`k` idempotent on `n` letters:
/// `k(2n − k + 1)/2`.
pub fn idempotent_length(n: usize, k: usize) -> Result<u64, Error> {
    if k > n {
        return Err(Error::InvalidRook(format!("rank {k} exceeds the size {n}")));
    }
    let (n, k) = (n as u64, k as u64);
    Ok(k * (2 * n - k + 1) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn rook(v: &[usize]) -> Rook {
        Rook::new(v.to_vec()).unwrap()
    }

    #[test]
    fn worked_lengths() {
        assert_eq!(rook(&[4, 0, 5, 0, 3, 1]).length(), 21);
        assert_eq!(rook(&[4, 0, 5, 0, 6, 1]).length(), 22);
        assert_eq!(rook(&[4, 0, 5, 0, 3, 2]).length(), 22);
        assert_eq!(rook(&[2, 6, 5, 0, 4, 1, 7]).length(), 35);
        assert_eq!(rook(&[4, 6, 5, 0, 2, 1, 7]).length(), 36);
        assert_eq!(rook(&[7, 6, 5, 0, 4, 1, 2]).length(), 42);
        assert_eq!(Rook::zero(5).unwrap().length(), 0);
    }

    #[test]
    fn coinversion_route() {
        let x = rook(&[4, 0, 2, 3]);
        assert_eq!(coinversions(&[4, 0, 2, 3]), 1);
        assert_eq!(x.length_via_coinv(), 12);
        assert_eq!(x.length(), 12);
        assert_eq!(Rook::identity(3).unwrap().length_via_coinv(), 6);
        assert_eq!(Rook::zero(4).unwrap().length_via_coinv(), 0);
    }

    #[test]
    fn two_length_routes_agree() {
        for n in 1..=5 {
            for x in enumerate_universe(Universe::Full, n).unwrap() {
                assert_eq!(x.length(), x.length_via_coinv(), "{x}");
            }
        }
    }

    #[test]
    fn permutation_lengths() {
        // On permutations the length is n(n+1)/2 plus the inversion count.
        for w in enumerate_universe(Universe::Full, 4).unwrap() {
            if w.rank() == 4 {
                let a: Vec<u16> = w.entries().map(|v| v as u16).collect();
                assert_eq!(w.length(), 10 + inversions(&a));
            }
        }
    }

    #[test]
    fn moves_up_from_zero() {
        let moves = Rook::zero(2).unwrap().ppr_moves_up();
        let expected = vec![
            rook(&[0, 1]),
            rook(&[0, 2]),
            rook(&[1, 0]),
            rook(&[2, 0]),
        ];
        assert_eq!(moves, expected);
    }

    #[test]
    fn moves_up_swaps() {
        let moves = rook(&[0, 0, 1, 2]).ppr_moves_up();
        for y in [
            rook(&[0, 1, 0, 2]),
            rook(&[0, 0, 2, 1]),
            rook(&[1, 0, 0, 2]),
            rook(&[0, 2, 1, 0]),
        ] {
            assert!(moves.contains(&y), "missing {y}");
        }
    }

    #[test]
    fn moves_up_strictly_increase_length() {
        for n in 1..=5 {
            for x in enumerate_universe(Universe::Full, n).unwrap() {
                for y in x.ppr_moves_up() {
                    assert!(y.length() > x.length(), "{x} -> {y}");
                }
            }
        }
    }

    #[test]
    fn top_of_strictly_upper_has_no_moves_inside() {
        let top = rook(&[0, 1, 2]);
        assert!(top
            .ppr_moves_up()
            .iter()
            .all(|y| !y.is_strictly_upper()));
    }

    #[test]
    fn covers_in_full_universe() {
        let covers = covers_up(&rook(&[4, 0, 5, 0, 3, 1]), Universe::Full).unwrap();
        assert!(covers.contains(&rook(&[4, 0, 5, 0, 6, 1])));
        assert!(covers.contains(&rook(&[4, 0, 5, 0, 3, 2])));
        for y in &covers {
            assert_eq!(y.length(), 22);
        }

        let covers = covers_up(&rook(&[2, 6, 5, 0, 4, 1, 7]), Universe::Full).unwrap();
        assert!(covers.contains(&rook(&[4, 6, 5, 0, 2, 1, 7])));
        assert!(!covers.contains(&rook(&[7, 6, 5, 0, 4, 1, 2])));
    }

    #[test]
    fn covers_of_zero_in_strictly_upper() {
        for n in 2..=5 {
            let zero = Rook::zero(n).unwrap();
            let covers = covers_up(&zero, Universe::StrictlyUpper).unwrap();
            let mut expected = vec![0usize; n];
            expected[n - 1] = 1;
            assert_eq!(covers, vec![Rook::new(expected).unwrap()]);
        }
    }

    #[test]
    fn covers_error_outside_universe() {
        let x = rook(&[2, 0]);
        assert!(matches!(
            covers_up(&x, Universe::Upper),
            Err(Error::NotInUniverse(_, _))
        ));
    }

    #[test]
    fn oracle_examples() {
        let x = rook(&[0, 0, 1, 2]);
        assert!(bruhat_leq_oracle(&x, &x).unwrap());
        assert!(bruhat_leq_oracle(&x, &rook(&[0, 1, 2, 0])).unwrap());
        assert!(!bruhat_leq_oracle(&rook(&[0, 0, 2, 0]), &rook(&[0, 0, 1, 2])).unwrap());
        assert!(matches!(
            bruhat_leq_oracle(&rook(&[1, 0]), &rook(&[1, 0, 0])),
            Err(Error::SizeMismatch(2, 3))
        ));
    }

    #[test]
    fn oracle_upper_routing_and_bounds() {
        // Above the full-table bound, upper-triangular pairs still answer.
        let e = rook(&[0, 0, 0, 0, 0, 0, 7]);
        let f = Rook::identity(7).unwrap();
        assert!(bruhat_leq_oracle(&e, &f).unwrap());
        // Non-upper pairs at size 7 are out of reach.
        let g = rook(&[7, 0, 0, 0, 0, 0, 1]);
        assert!(matches!(
            bruhat_leq_oracle(&g, &f),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn closure_of_covers_matches_closure_of_moves() {
        // Rebuilding reachability from cover edges alone must give the
        // same relation the generator moves give.
        for (universe, n_max) in [(Universe::Full, 5), (Universe::StrictlyUpper, 6)] {
            for n in 1..=n_max {
                let table = order_table(universe, n).unwrap();
                let m = table.len();
                let mut from_covers = BitMatrix::new(m);
                let mut idx: Vec<usize> = (0..m).collect();
                idx.sort_by(|&p, &q| table.length_of(q).cmp(&table.length_of(p)));
                for x in idx {
                    for &y in table.covers_from_idx(x) {
                        from_covers.set(x, y as usize);
                        from_covers.or_row_into(x, y as usize);
                    }
                }
                for i in 0..m {
                    for j in 0..m {
                        assert_eq!(
                            from_covers.get(i, j),
                            table.closure.get(i, j),
                            "universe {universe}, n={n}, {} vs {}",
                            table.elements()[i],
                            table.elements()[j]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn table_order_matches_oracle_on_every_universe() {
        let kinds = [
            Universe::Upper,
            Universe::StrictlyUpper,
            Universe::Idempotents,
            Universe::IdempotentsOfRank(2),
            Universe::UpperOfRank(1),
            Universe::UpperOfRank(2),
        ];
        for universe in kinds {
            for n in 2..=5 {
                let table = order_table(universe, n).unwrap();
                for x in table.elements() {
                    for y in table.elements() {
                        assert_eq!(
                            table.leq(x, y).unwrap(),
                            bruhat_leq_oracle(x, y).unwrap(),
                            "universe {universe}, n={n}, {x} vs {y}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn restricted_covers_raise_length_by_one() {
        for universe in [
            Universe::Upper,
            Universe::StrictlyUpper,
            Universe::UpperOfRank(2),
        ] {
            for n in 2..=5 {
                let table = order_table(universe, n).unwrap();
                for (x, y) in table.cover_pairs() {
                    assert_eq!(table.length_of(y), table.length_of(x) + 1);
                }
            }
        }
    }

    #[test]
    fn upper_table_on_three_letters_matches_known_edges() {
        let table = order_table(Universe::Upper, 3).unwrap();
        assert_eq!(table.len(), 15);

        let edge_fixture: &[(&[usize], &[usize])] = &[
            (&[0, 0, 0], &[0, 0, 1]),
            (&[0, 0, 1], &[0, 1, 0]),
            (&[0, 0, 1], &[0, 0, 2]),
            (&[0, 1, 0], &[1, 0, 0]),
            (&[0, 1, 0], &[0, 2, 0]),
            (&[0, 1, 0], &[0, 1, 2]),
            (&[0, 0, 2], &[0, 2, 0]),
            (&[0, 0, 2], &[0, 1, 2]),
            (&[0, 0, 2], &[0, 0, 3]),
            (&[1, 0, 0], &[1, 0, 2]),
            (&[0, 2, 0], &[0, 2, 1]),
            (&[0, 1, 2], &[1, 0, 2]),
            (&[0, 1, 2], &[0, 2, 1]),
            (&[0, 1, 2], &[0, 1, 3]),
            (&[0, 0, 3], &[0, 1, 3]),
            (&[1, 0, 2], &[1, 2, 0]),
            (&[1, 0, 2], &[1, 0, 3]),
            (&[0, 2, 1], &[1, 2, 0]),
            (&[0, 2, 1], &[0, 2, 3]),
            (&[0, 1, 3], &[1, 0, 3]),
            (&[0, 1, 3], &[0, 2, 3]),
            (&[1, 2, 0], &[1, 2, 3]),
            (&[1, 0, 3], &[1, 2, 3]),
            (&[0, 2, 3], &[1, 2, 3]),
        ];
        let expected: BTreeSet<(Rook, Rook)> = edge_fixture
            .iter()
            .map(|&(x, y)| (rook(x), rook(y)))
            .collect();
        let actual: BTreeSet<(Rook, Rook)> = table
            .cover_pairs()
            .map(|(x, y)| {
                (
                    table.elements()[x].clone(),
                    table.elements()[y].clone(),
                )
            })
            .collect();
        assert_eq!(actual, expected);

        let mut histogram: BTreeMap<u64, usize> = BTreeMap::new();
        for i in 0..table.len() {
            *histogram.entry(table.length_of(i)).or_default() += 1;
        }
        let expected_histogram: BTreeMap<u64, usize> =
            [(0, 1), (1, 1), (2, 2), (3, 4), (4, 3), (5, 3), (6, 1)]
                .into_iter()
                .collect();
        assert_eq!(histogram, expected_histogram);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_universe(Universe::Full, 2).unwrap().len(), 7);
        let full_counts = [2usize, 7, 34, 209, 1546];
        for n in 1..=5 {
            assert_eq!(
                enumerate_universe(Universe::Full, n).unwrap().len(),
                full_counts[n - 1]
            );
        }
        let bell = [1usize, 1, 2, 5, 15, 52, 203, 877, 4140];
        for n in 1..=7 {
            assert_eq!(
                enumerate_universe(Universe::Upper, n).unwrap().len(),
                bell[n + 1],
                "upper n={n}"
            );
            assert_eq!(
                enumerate_universe(Universe::StrictlyUpper, n).unwrap().len(),
                bell[n],
                "strictly upper n={n}"
            );
        }
        assert_eq!(
            enumerate_universe(Universe::Idempotents, 5).unwrap().len(),
            32
        );
        assert_eq!(
            enumerate_universe(Universe::IdempotentsOfRank(1), 3)
                .unwrap()
                .len(),
            3
        );
        assert!(enumerate_universe(Universe::Full, 9).is_err());
        assert!(enumerate_universe(Universe::Upper, 10).is_err());
    }

    #[test]
    fn rank_strata_have_stirling_sizes() {
        // |rank-k stratum on n letters| = S(n+1, n+1-k); the k = 1 stratum
        // on three letters has S(4,3) = 6 elements.
        fn stirling2(n: usize, k: usize) -> usize {
            if n == 0 {
                return usize::from(k == 0);
            }
            if k == 0 || k > n {
                return 0;
            }
            stirling2(n - 1, k - 1) + k * stirling2(n - 1, k)
        }
        let p31 = enumerate_universe(Universe::UpperOfRank(1), 3).unwrap();
        assert_eq!(p31.len(), 6);
        for n in 1..=6 {
            for k in 0..=n {
                assert_eq!(
                    enumerate_universe(Universe::UpperOfRank(k), n).unwrap().len(),
                    stirling2(n + 1, n + 1 - k),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn enumeration_is_sorted_and_duplicate_free() {
        for universe in [
            Universe::Full,
            Universe::Upper,
            Universe::StrictlyUpper,
            Universe::Idempotents,
            Universe::UpperOfRank(2),
        ] {
            let all = enumerate_universe(universe, 5).unwrap();
            assert!(all.windows(2).all(|w| w[0] < w[1]), "{universe}");
        }
    }

    #[test]
    fn bijection_between_diagrams_and_strictly_upper() {
        let d = ArcDiagram::parse("18|2569|37|4").unwrap();
        assert_eq!(
            phi(&d),
            rook(&[0, 0, 0, 0, 2, 5, 3, 1, 6])
        );
        assert_eq!(phi(&ArcDiagram::empty(4).unwrap()), Rook::zero(4).unwrap());
        assert_eq!(phi(&ArcDiagram::new(2, [(1, 2)]).unwrap()), rook(&[0, 1]));

        for n in 1..=5 {
            let diagrams = ArcDiagram::enumerate(n).unwrap();
            let images: BTreeSet<Rook> = diagrams.iter().map(phi).collect();
            let strictly_upper: BTreeSet<Rook> =
                enumerate_universe(Universe::StrictlyUpper, n)
                    .unwrap()
                    .into_iter()
                    .collect();
            assert_eq!(images, strictly_upper);
            for d in &diagrams {
                assert_eq!(phi_inv(&phi(d)).unwrap(), *d);
                assert_eq!(phi(d).length(), d.t_index());
            }
        }
        assert!(phi_inv(&rook(&[1, 0])).is_err());
    }

    #[test]
    fn diagram_covers_match_placement_covers() {
        for n in 1..=5 {
            for d in ArcDiagram::enumerate(n).unwrap() {
                let via_diagram: BTreeSet<Rook> =
                    d.covers_up().iter().map(phi).collect();
                let via_placement: BTreeSet<Rook> =
                    covers_up(&phi(&d), Universe::StrictlyUpper)
                        .unwrap()
                        .into_iter()
                        .collect();
                assert_eq!(via_diagram, via_placement, "diagram {d}");
            }
        }
    }

    #[test]
    fn first_column_drop_examples() {
        assert_eq!(drop_first(&rook(&[0, 1, 0])).unwrap(), rook(&[1, 0]));
        assert_eq!(rook(&[0, 1, 0]).length(), 2);
        assert_eq!(rook(&[1, 0]).length(), 2);
        assert_eq!(
            drop_first(&Rook::zero(4).unwrap()).unwrap(),
            Rook::zero(3).unwrap()
        );
        assert_eq!(drop_first(&rook(&[0, 0, 1, 2])).unwrap(), rook(&[0, 1, 2]));
        assert!(drop_first(&rook(&[0, 2, 0])).is_err());
        assert!(drop_first(&rook(&[0])).is_err());
    }

    #[test]
    fn first_column_drop_is_an_order_isomorphism() {
        for n in 2..=6 {
            let nil = order_table(Universe::StrictlyUpper, n).unwrap();
            let upper = order_table(Universe::Upper, n - 1).unwrap();
            assert_eq!(nil.len(), upper.len());
            for x in nil.elements() {
                assert_eq!(x.length(), drop_first(x).unwrap().length());
            }
            let mapped: BTreeSet<(Rook, Rook)> = nil
                .cover_pairs()
                .map(|(x, y)| {
                    (
                        drop_first(&nil.elements()[x]).unwrap(),
                        drop_first(&nil.elements()[y]).unwrap(),
                    )
                })
                .collect();
            let direct: BTreeSet<(Rook, Rook)> = upper
                .cover_pairs()
                .map(|(x, y)| {
                    (
                        upper.elements()[x].clone(),
                        upper.elements()[y].clone(),
                    )
                })
                .collect();
            assert_eq!(mapped, direct, "n={n}");
        }
    }

    #[test]
    fn stratum_minimum() {
        assert_eq!(min_of_p(3, 2).unwrap(), rook(&[0, 1, 2]));
        assert_eq!(min_of_p(3, 2).unwrap().length(), 3);
        assert_eq!(min_of_p(4, 0).unwrap(), Rook::zero(4).unwrap());
        assert_eq!(min_of_p(4, 4).unwrap(), Rook::identity(4).unwrap());
        assert!(min_of_p(3, 4).is_err());

        for n in 1..=5 {
            for k in 0..=n {
                let e0 = min_of_p(n, k).unwrap();
                let table = order_table(Universe::UpperOfRank(k), n).unwrap();
                for x in table.elements() {
                    assert!(table.leq(&e0, x).unwrap(), "n={n} k={k} x={x}");
                }
            }
        }
    }

    #[test]
    fn idempotent_lengths() {
        assert_eq!(idempotent_length(3, 3).unwrap(), 6);
        assert_eq!(idempotent_length(3, 1).unwrap(), 3);
        assert_eq!(idempotent_length(5, 0).unwrap(), 0);
        assert!(idempotent_length(3, 4).is_err());
        for n in 1..=6 {
            for k in 0..=n {
                let expected = idempotent_length(n, k).unwrap();
                for e in enumerate_universe(Universe::IdempotentsOfRank(k), n).unwrap() {
                    assert_eq!(e.length(), expected, "{e}");
                }
            }
        }
    }

    #[test]
    fn idempotent_order_is_support_inclusion() {
        for n in 1..=5 {
            let idempotents = enumerate_universe(Universe::Idempotents, n).unwrap();
            for e in &idempotents {
                let se: BTreeSet<usize> = e.fixed_points().into_iter().collect();
                for f in &idempotents {
                    let sf: BTreeSet<usize> = f.fixed_points().into_iter().collect();
                    assert_eq!(
                        bruhat_leq_oracle(e, f).unwrap(),
                        se.is_subset(&sf),
                        "{e} vs {f}"
                    );
                }
            }
        }
    }

    #[test]
    fn equal_rank_idempotents_are_incomparable() {
        for n in 1..=5 {
            for k in 1..=n {
                let stratum =
                    enumerate_universe(Universe::IdempotentsOfRank(k), n).unwrap();
                for e in &stratum {
                    for f in &stratum {
                        if e != f {
                            assert!(!bruhat_leq_oracle(e, f).unwrap(), "{e} vs {f}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn order_respects_rank() {
        let table = order_table(Universe::Full, 4).unwrap();
        for (i, x) in table.elements().iter().enumerate() {
            for (j, y) in table.elements().iter().enumerate() {
                if table.leq_idx(i, j) {
                    assert!(x.rank() <= y.rank(), "{x} <= {y}");
                }
            }
        }
    }

    #[test]
    fn validation_errors() {
        assert!(Rook::new(vec![]).is_err());
        assert!(Rook::new(vec![3, 0]).is_err()); // entry exceeds size
        assert!(Rook::new(vec![1, 1, 0]).is_err()); // repeated nonzero
        assert!(Rook::new(vec![0, 0, 2, 2]).is_err());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(rook(&[4, 0, 5, 0, 3, 1]).to_string(), "(4,0,5,0,3,1)");
        assert_eq!(
            Rook::parse("(4,0,5,0,3,1)").unwrap(),
            rook(&[4, 0, 5, 0, 3, 1])
        );
        assert_eq!(Rook::parse("4, 0, 2, 3").unwrap(), rook(&[4, 0, 2, 3]));
        assert_eq!(Rook::parse(" ( 1 , 0 ) ").unwrap(), rook(&[1, 0]));

        let err = Rook::parse("4,0,x,1").unwrap_err();
        assert_eq!(err.position, 4);
        let err = Rook::parse("1,1").unwrap_err();
        assert_eq!(err.position, 2);
        let err = Rook::parse("1,2,").unwrap_err();
        assert_eq!(err.position, 3);
        let err = Rook::parse("5,0").unwrap_err();
        assert_eq!(err.position, 0);
    }

    #[test]
    fn json_roundtrip() {
        let x = rook(&[4, 0, 5, 0, 3, 1]);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"n":6,"a":[4,0,5,0,3,1]}"#);
        assert_eq!(serde_json::from_str::<Rook>(&json).unwrap(), x);
        assert!(serde_json::from_str::<Rook>(r#"{"n":2,"a":[1,1]}"#).is_err());
        assert!(serde_json::from_str::<Rook>(r#"{"n":3,"a":[1,0]}"#).is_err());
    }
}
