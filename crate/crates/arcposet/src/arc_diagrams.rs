//! Arc diagrams on `n` labeled vertices and their statistics.
//!
//! An arc diagram is a set of arcs `(i, j)` with `i < j` such that every
//! vertex starts at most one arc and ends at most one arc. The arcs then
//! decompose `{1..n}` into vertex-disjoint increasing chains, so diagrams on
//! `n` vertices are in bijection with set partitions of `{1..n}` (chains are
//! blocks).
//!
//! Two statistics grade the cover order built here: the depth index
//! [`ArcDiagram::t_index`] and the crossing index [`ArcDiagram::c_index`].
//! They agree on every diagram. Covers are generated natively by three local
//! moves ([`ArcDiagram::covers_up`]): sliding one arc endpoint inward,
//! uncrossing a crossing pair, and adding one new arc.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError};

/// Largest `n` for which exhaustive enumeration is allowed; the diagram
/// count is the n-th Bell number, which crosses four million at n = 12.
pub const MAX_ENUMERATE_N: usize = 12;

/// A set partition of `{1..n}` in standard form: each block sorted
/// ascending, blocks ordered by their minima.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Validates and canonicalizes the blocks into standard form.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidPartition("ground set must be nonempty".into()));
        }
        let mut seen = vec![false; n + 1];
        let mut count = 0usize;
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &v in block {
                if v == 0 || v > n {
                    return Err(Error::InvalidPartition(format!(
                        "element {v} out of range 1..={n}"
                    )));
                }
                if seen[v] {
                    return Err(Error::InvalidPartition(format!(
                        "element {v} appears in two blocks"
                    )));
                }
                seen[v] = true;
                count += 1;
            }
        }
        if count != n {
            let missing = (1..=n).find(|&v| !seen[v]).expect("count < n implies a gap");
            return Err(Error::InvalidPartition(format!(
                "element {missing} is not covered"
            )));
        }
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Blocks in standard form.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Parses bar notation: blocks separated by `|`, vertices inside a block
    /// written either as fused single digits (`18|2569|37|4`, fine for
    /// n ≤ 9) or as dot-separated numbers (`1.10|2.5`, needed beyond 9).
    pub fn parse(input: &str) -> Result<Self, ParseError> {
        let chars: Vec<char> = input.chars().collect();
        if chars.is_empty() {
            return Err(ParseError::new(input, 0, "empty partition string"));
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block: Vec<usize> = Vec::new();
        let mut block_start = 0usize;
        let mut pos = 0usize;
        let dotted = chars.contains(&'.');
        while pos <= chars.len() {
            if pos == chars.len() || chars[pos] == '|' {
                if block.is_empty() {
                    return Err(ParseError::new(input, block_start, "empty block"));
                }
                blocks.push(std::mem::take(&mut block));
                pos += 1;
                block_start = pos;
                if pos == chars.len() + 1 {
                    break;
                }
                if pos == chars.len() {
                    return Err(ParseError::new(input, pos - 1, "trailing '|'"));
                }
                continue;
            }
            let c = chars[pos];
            if dotted {
                if c == '.' {
                    return Err(ParseError::new(input, pos, "expected a number before '.'"));
                }
                let start = pos;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == start {
                    return Err(ParseError::new(
                        input,
                        pos,
                        format!("unexpected character '{c}'"),
                    ));
                }
                let token: String = chars[start..pos].iter().collect();
                let v: usize = token
                    .parse()
                    .map_err(|_| ParseError::new(input, start, "vertex label too large"))?;
                if v == 0 {
                    return Err(ParseError::new(input, start, "vertex labels start at 1"));
                }
                block.push(v);
                if pos < chars.len() && chars[pos] == '.' {
                    pos += 1;
                    if pos == chars.len() || chars[pos] == '|' {
                        return Err(ParseError::new(input, pos - 1, "dangling '.'"));
                    }
                }
            } else {
                match c {
                    '1'..='9' => block.push(c as usize - '0' as usize),
                    '0' => {
                        return Err(ParseError::new(input, pos, "vertex labels start at 1"));
                    }
                    _ => {
                        return Err(ParseError::new(
                            input,
                            pos,
                            format!("unexpected character '{c}'"),
                        ));
                    }
                }
                pos += 1;
            }
        }
        let n = blocks.iter().flatten().copied().max().unwrap_or(0);
        SetPartition::new(n, blocks).map_err(|e| ParseError::new(input, 0, e.to_string()))
    }
}

impl fmt::Display for SetPartition {
    /// Standard form; fused digits when every label fits in one digit,
    /// dot-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fused = self.n <= 9;
        for (bi, block) in self.blocks.iter().enumerate() {
            if bi > 0 {
                f.write_str("|")?;
            }
            for (vi, v) in block.iter().enumerate() {
                if !fused && vi > 0 {
                    f.write_str(".")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for SetPartition {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        SetPartition::parse(s)
    }
}

/// Serialized shape of [`ArcDiagram`]: `{ "n": 9, "arcs": [[1,8], …] }`.
#[derive(Serialize, Deserialize)]
struct ArcDiagramRepr {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl From<ArcDiagram> for ArcDiagramRepr {
    fn from(d: ArcDiagram) -> Self {
        ArcDiagramRepr {
            n: d.n(),
            arcs: d.arcs().collect(),
        }
    }
}

impl TryFrom<ArcDiagramRepr> for ArcDiagram {
    type Error = Error;

    fn try_from(r: ArcDiagramRepr) -> Result<Self, Error> {
        ArcDiagram::new(r.n, r.arcs)
    }
}

/// An arc diagram: `n` vertices on a line, arcs `(i, j)` with `i < j`
/// forming vertex-disjoint increasing chains.
///
/// Vertices are stored as `u16` internally (enumeration at the allowed
/// bounds creates millions of diagrams); the public API speaks `usize`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "ArcDiagramRepr", into = "ArcDiagramRepr")]
pub struct ArcDiagram {
    n: u16,
    arcs: Vec<(u16, u16)>,
    /// succ[v] = w when the arc (v, w) is present, else 0. Index 0 unused.
    succ: Vec<u16>,
    /// pred[w] = v when the arc (v, w) is present, else 0. Index 0 unused.
    pred: Vec<u16>,
}

impl ArcDiagram {
    /// Validates arcs and builds the endpoint maps.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidDiagram("vertex count must be positive".into()));
        }
        if n > u16::MAX as usize {
            return Err(Error::BoundExceeded {
                what: "ArcDiagram::new",
                param: "n",
                limit: u16::MAX as usize,
                got: n,
            });
        }
        let mut succ = vec![0u16; n + 1];
        let mut pred = vec![0u16; n + 1];
        let mut sorted: Vec<(u16, u16)> = Vec::new();
        for (i, j) in arcs {
            if i == 0 || j == 0 || i >= j || j > n {
                return Err(Error::InvalidDiagram(format!(
                    "arc ({i},{j}) violates 1 <= i < j <= {n}"
                )));
            }
            let (i, j) = (i as u16, j as u16);
            if succ[i as usize] != 0 {
                return Err(Error::InvalidDiagram(format!(
                    "vertex {i} is the left endpoint of two arcs"
                )));
            }
            if pred[j as usize] != 0 {
                return Err(Error::InvalidDiagram(format!(
                    "vertex {j} is the right endpoint of two arcs"
                )));
            }
            succ[i as usize] = j;
            pred[j as usize] = i;
            sorted.push((i, j));
        }
        sorted.sort_unstable();
        Ok(ArcDiagram {
            n: n as u16,
            arcs: sorted,
            succ,
            pred,
        })
    }

    /// The diagram with no arcs (the all-singletons partition).
    pub fn empty(n: usize) -> Result<Self, Error> {
        ArcDiagram::new(n, [])
    }

    /// Parses the bar-notation partition string and converts.
    pub fn parse(input: &str) -> Result<Self, ParseError> {
        Ok(ArcDiagram::from_set_partition(&SetPartition::parse(input)?))
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Arcs in ascending order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().map(|&(i, j)| (i as usize, j as usize))
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// The arc leaving `v` to the right, if any.
    pub fn arc_from(&self, v: usize) -> Option<usize> {
        match self.succ.get(v) {
            Some(&w) if w != 0 => Some(w as usize),
            _ => None,
        }
    }

    /// The arc entering `v` from the left, if any.
    pub fn arc_into(&self, v: usize) -> Option<usize> {
        match self.pred.get(v) {
            Some(&u) if u != 0 => Some(u as usize),
            _ => None,
        }
    }

    pub fn contains_arc(&self, i: usize, j: usize) -> bool {
        j <= self.n() && i < j && i >= 1 && self.succ[i] == j as u16
    }

    /// Maximal chains (including singleton vertices), each strictly
    /// increasing, ordered by first vertex. Their vertex sets are exactly
    /// the blocks of [`ArcDiagram::to_set_partition`].
    pub fn chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for start in 1..=self.n() {
            if self.pred[start] != 0 {
                continue;
            }
            let mut chain = vec![start];
            let mut v = start;
            while self.succ[v] != 0 {
                v = self.succ[v] as usize;
                chain.push(v);
            }
            out.push(chain);
        }
        out
    }

    /// Connects consecutive elements of every block.
    pub fn from_set_partition(p: &SetPartition) -> Self {
        let arcs = p
            .blocks()
            .iter()
            .flat_map(|b| b.windows(2).map(|w| (w[0], w[1])));
        ArcDiagram::new(p.n(), arcs).expect("a valid partition yields a valid diagram")
    }

    /// Chains become blocks.
    pub fn to_set_partition(&self) -> SetPartition {
        SetPartition::new(self.n(), self.chains())
            .expect("chains of a valid diagram form a valid partition")
    }

    /// Number of arcs `(r, s)` with `r < v < s`.
    pub fn depth_vertex(&self, v: usize) -> Result<usize, Error> {
        if v == 0 || v > self.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
        }
        let v = v as u16;
        Ok(self.arcs.iter().filter(|&&(r, s)| r < v && v < s).count())
    }

    /// Number of arcs `(r, s)` strictly spanning the arc: `r < i` and `s > j`.
    pub fn depth_arc(&self, arc: (usize, usize)) -> Result<usize, Error> {
        let (i, j) = arc;
        if !self.contains_arc(i, j) {
            return Err(Error::ArcNotPresent(i, j));
        }
        Ok(self.span_count(i as u16, j as u16))
    }

    /// Number of arcs strictly spanning the chain's extremes. `chain` must
    /// be one of [`ArcDiagram::chains`] verbatim.
    pub fn depth_chain(&self, chain: &[usize]) -> Result<usize, Error> {
        let valid = !chain.is_empty()
            && chain[0] >= 1
            && chain[0] <= self.n()
            && self.pred[chain[0]] == 0
            && chain.windows(2).all(|w| {
                w[0] < w[1] && w[1] <= self.n() && self.succ[w[0]] == w[1] as u16
            })
            && self.succ[chain[chain.len() - 1]] == 0;
        if !valid {
            return Err(Error::NotAChain(chain.to_vec()));
        }
        Ok(self.span_count(chain[0] as u16, chain[chain.len() - 1] as u16))
    }

    fn span_count(&self, i: u16, j: u16) -> usize {
        self.arcs.iter().filter(|&&(r, s)| r < i && s > j).count()
    }

    /// Number of distinct chains containing at least one arc crossing the
    /// given arc (a chain crossing it twice counts once). Two arcs
    /// `(i, j)` and `(r, s)` with `i < r` cross exactly when `i < r < j < s`;
    /// shared endpoints never cross.
    pub fn cross_arc(&self, arc: (usize, usize)) -> Result<usize, Error> {
        let (i, j) = arc;
        if !self.contains_arc(i, j) {
            return Err(Error::ArcNotPresent(i, j));
        }
        let a = (i as u16, j as u16);
        let mut chains_seen = BTreeSet::new();
        for &b in &self.arcs {
            if crosses(a, b) {
                chains_seen.insert(self.chain_root(b.0));
            }
        }
        Ok(chains_seen.len())
    }

    /// First vertex of the chain through `v`.
    fn chain_root(&self, v: u16) -> u16 {
        let mut v = v;
        while self.pred[v as usize] != 0 {
            v = self.pred[v as usize];
        }
        v
    }

    fn total_crossings(&self) -> usize {
        let mut count = 0;
        for (ai, &a) in self.arcs.iter().enumerate() {
            for &b in &self.arcs[ai + 1..] {
                if crosses(a, b) {
                    count += 1;
                }
            }
        }
        count
    }

    /// The depth index: with `k` arcs on `n` vertices,
    /// `t = Σ_{i=1..k}(n−i) − Σ_v depth(v) + Σ_arcs depth(arc)`.
    pub fn t_index(&self) -> u64 {
        let n = self.n() as i64;
        let k = self.arcs.len() as i64;
        let base: i64 = (1..=k).map(|i| n - i).sum();
        let vertex_depths: i64 = (1..=self.n())
            .map(|v| self.depth_vertex(v).expect("in range") as i64)
            .sum();
        let arc_depths: i64 = self
            .arcs
            .iter()
            .map(|&(i, j)| self.span_count(i, j) as i64)
            .sum();
        let t = base - vertex_depths + arc_depths;
        debug_assert!(t >= 0);
        t as u64
    }

    /// The crossing index: with `k` arcs on `n` vertices,
    /// `c = Σ_{i=1..k}(n−i) − Σ_chains depth(chain) − Σ_arcs cross(arc)`.
    /// Equals [`ArcDiagram::t_index`] on every diagram.
    pub fn c_index(&self) -> u64 {
        let n = self.n() as i64;
        let k = self.arcs.len() as i64;
        let base: i64 = (1..=k).map(|i| n - i).sum();
        let chain_depths: i64 = self
            .chains()
            .iter()
            .map(|ch| self.span_count(ch[0] as u16, ch[ch.len() - 1] as u16) as i64)
            .sum();
        let crossings: i64 = self
            .arcs
            .iter()
            .map(|&(i, j)| {
                self.cross_arc((i as usize, j as usize)).expect("present") as i64
            })
            .sum();
        let c = base - chain_depths - crossings;
        debug_assert!(c >= 0);
        c as u64
    }

    /// All diagrams covering this one, ascending. Three move families:
    ///
    /// 1. Slide one endpoint of an arc inward. Scanning from the old
    ///    endpoint toward the other one, a vertex whose incident arc nests
    ///    inside the moved arc is skipped, a vertex whose incident arc
    ///    crosses the shrunk arc aborts the scan, and the first free vertex
    ///    is the landing spot (at most one cover per endpoint).
    /// 2. Uncross: swap the right endpoints of a crossing pair into nested
    ///    position, accepted exactly when the total crossing count drops
    ///    by 1.
    /// 3. Add one arc into the last vertex with no incoming arc, provided
    ///    every vertex to its right has one; the left endpoint is found by
    ///    the same skip/abort/land scan (at most one cover per diagram).
    pub fn covers_up(&self) -> Vec<ArcDiagram> {
        let mut out: BTreeSet<ArcDiagram> = BTreeSet::new();

        // Rule 1, left endpoint slides right: (i, j) -> (v, j).
        for &(i, j) in &self.arcs {
            for v in i + 1..j {
                let w = self.succ[v as usize];
                if w != 0 {
                    if w < j {
                        continue; // (v, w) nests inside (i, j): skip
                    }
                    break; // (v, w) would cross (v', j) for any v' >= v: abort
                }
                out.insert(self.replace_arc((i, j), (v, j)));
                break;
            }
        }

        // Rule 1, right endpoint slides left: (i, j) -> (i, v).
        for &(i, j) in &self.arcs {
            for v in (i + 1..j).rev() {
                let u = self.pred[v as usize];
                if u != 0 {
                    if u > i {
                        continue; // (u, v) nests inside (i, j): skip
                    }
                    break; // (u, v) spans past i: abort
                }
                out.insert(self.replace_arc((i, j), (i, v)));
                break;
            }
        }

        // Rule 2: uncross (u, p), (w, q) with u < w < p < q into
        // (u, q), (w, p); the move must delete exactly one crossing.
        let before = self.total_crossings();
        for (ai, &a) in self.arcs.iter().enumerate() {
            for &b in &self.arcs[ai + 1..] {
                if !crosses(a, b) {
                    continue;
                }
                let ((u, p), (w, q)) = if a.0 < b.0 { (a, b) } else { (b, a) };
                debug_assert!(u < w && w < p && p < q);
                // Both right endpoints move at once; swapping them one at
                // a time would pass through an invalid diagram.
                let cand_arcs = self.arcs.iter().map(|&arc| {
                    let (x, y) = if arc == (u, p) {
                        (u, q)
                    } else if arc == (w, q) {
                        (w, p)
                    } else {
                        arc
                    };
                    (x as usize, y as usize)
                });
                let cand = ArcDiagram::new(self.n(), cand_arcs)
                    .expect("uncrossing a pair keeps one outgoing and one incoming arc per vertex");
                if cand.total_crossings() + 1 == before {
                    out.insert(cand);
                }
            }
        }

        // Rule 3: add an arc into j = the last incoming-free vertex.
        let j = (1..=self.n() as u16)
            .rev()
            .find(|&v| self.pred[v as usize] == 0)
            .expect("vertex 1 never has an incoming arc");
        if (j + 1..=self.n() as u16).all(|v| self.pred[v as usize] != 0) {
            for v in 1..j {
                let w = self.succ[v as usize];
                if w != 0 {
                    if w < j {
                        continue;
                    }
                    break;
                }
                let mut arcs = self.arcs.clone();
                arcs.push((v, j));
                out.insert(
                    ArcDiagram::new(self.n(), arcs.iter().map(|&(x, y)| (x as usize, y as usize)))
                        .expect("adding an arc between free endpoints keeps validity"),
                );
                break;
            }
        }

        out.into_iter().collect()
    }

    fn replace_arc(&self, old: (u16, u16), new: (u16, u16)) -> ArcDiagram {
        let arcs = self.arcs.iter().map(|&a| if a == old { new } else { a });
        ArcDiagram::new(self.n(), arcs.map(|(x, y)| (x as usize, y as usize)))
            .expect("cover moves construct valid diagrams")
    }

    /// Every diagram on `n` vertices, ascending; there are Bell(n) of them.
    pub fn enumerate(n: usize) -> Result<Vec<ArcDiagram>, Error> {
        Self::enumerate_filtered(n, None)
    }

    /// Every diagram on `n` vertices with exactly `k` arcs, ascending;
    /// there are S(n, n−k) of them (empty for k ≥ n).
    pub fn enumerate_with_arcs(n: usize, k: usize) -> Result<Vec<ArcDiagram>, Error> {
        Self::enumerate_filtered(n, Some(k))
    }

    fn enumerate_filtered(n: usize, k: Option<usize>) -> Result<Vec<ArcDiagram>, Error> {
        if n == 0 {
            return Err(Error::InvalidDiagram("vertex count must be positive".into()));
        }
        if n > MAX_ENUMERATE_N {
            return Err(Error::BoundExceeded {
                what: "ArcDiagram::enumerate",
                param: "n",
                limit: MAX_ENUMERATE_N,
                got: n,
            });
        }
        let mut out = Vec::new();
        // Restricted growth strings: rgs[0] = 0, rgs[i] <= 1 + max(prefix).
        // Each string assigns vertex i+1 to block rgs[i].
        let mut rgs = vec![0usize; n];
        let mut max_prefix = vec![0usize; n]; // max of rgs[..=i]
        let mut i = 0usize;
        loop {
            if i == n {
                let block_count = max_prefix[n - 1] + 1;
                if k.is_none_or(|k| n - block_count == k) {
                    let mut blocks = vec![Vec::new(); block_count];
                    for (v, &b) in rgs.iter().enumerate() {
                        blocks[b].push(v + 1);
                    }
                    let arcs = blocks
                        .iter()
                        .flat_map(|b| b.windows(2).map(|w| (w[0], w[1])));
                    out.push(ArcDiagram::new(n, arcs).expect("RGS blocks are a partition"));
                }
                // backtrack
                i = n - 1;
                loop {
                    let cap = if i == 0 { 0 } else { max_prefix[i - 1] + 1 };
                    if rgs[i] < cap {
                        rgs[i] += 1;
                        max_prefix[i] = if i == 0 {
                            rgs[i]
                        } else {
                            max_prefix[i - 1].max(rgs[i])
                        };
                        i += 1;
                        break;
                    }
                    if i == 0 {
                        out.sort_unstable();
                        return Ok(out);
                    }
                    i -= 1;
                }
            } else {
                rgs[i] = 0;
                max_prefix[i] = if i == 0 { 0 } else { max_prefix[i - 1] };
                i += 1;
            }
        }
    }
}

/// Strict interleaving test for two distinct arcs.
fn crosses(a: (u16, u16), b: (u16, u16)) -> bool {
    let ((i, j), (r, s)) = if a.0 < b.0 { (a, b) } else { (b, a) };
    i < r && r < j && j < s
}

impl fmt::Display for ArcDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_set_partition().fmt(f)
    }
}

impl FromStr for ArcDiagram {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        ArcDiagram::parse(s)
    }
}
