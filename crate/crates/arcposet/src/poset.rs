//! Generic finite-poset machinery over opaque labeled elements.
//!
//! A [`FinitePoset`] is built from cover candidates with [`FinitePoset::
//! from_covers`]; redundant edges are dropped (the stored Hasse diagram is
//! the transitive reduction) and cycles are rejected. Everything else is a
//! read-only query: comparisons, intervals, grading, meets and joins,
//! lattice and Möbius computations, isomorphism testing with a verified
//! witness, exhaustive checking of a candidate edge labeling, and DOT and
//! JSON export.
//!
//! The layer knows nothing about diagrams or rook placements; callers keep
//! their own payload arrays aligned with the element indices and supply
//! display labels.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::hash::{DefaultHasher, Hash, Hasher};

use serde::Serialize;

use crate::bitmat::{disjoint, ones, BitMatrix};
use crate::error::Error;

/// Largest element count for poset construction; the two closure bit
/// matrices stay near half a gigabyte at this size.
const MAX_POSET_ELEMENTS: usize = 45_000;

/// Largest poset size accepted by the isomorphism search.
const ISO_ELEMENT_BUDGET: usize = 2_000;

/// Backtracking-state budget for the isomorphism search.
const ISO_NODE_BUDGET: usize = 500_000;

/// DFS-step budget for saturated-chain enumeration.
const CHAIN_STEP_BUDGET: usize = 5_000_000;

/// A finite poset: labeled elements, Hasse covers, and cached
/// comparability in both directions.
pub struct FinitePoset {
    labels: Vec<String>,
    covers_up: Vec<Vec<u32>>,
    covers_down: Vec<Vec<u32>>,
    /// strict reachability: up.get(i, j) iff element i < element j
    up: BitMatrix,
    /// transpose of `up`
    down: BitMatrix,
}

/// Result of the grading test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Grading {
    /// Ranks: 0 on every minimal element, +1 along every cover.
    Graded { ranks: Vec<u64> },
    /// A cover whose endpoints cannot differ by one in any rank function.
    NotGraded { lower: usize, upper: usize },
}

/// Result of the lattice test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeVerdict {
    Lattice,
    /// A pair with no meet or no join.
    NotLattice {
        x: usize,
        y: usize,
        missing: BoundKind,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Meet,
    Join,
}

/// A total assignment of integer labels to cover edges.
#[derive(Clone, Debug, Default)]
pub struct EdgeLabeling {
    labels: BTreeMap<(u32, u32), i64>,
}

impl EdgeLabeling {
    pub fn new() -> Self {
        EdgeLabeling::default()
    }

    pub fn set(&mut self, lower: usize, upper: usize, label: i64) {
        self.labels.insert((lower as u32, upper as u32), label);
    }

    pub fn get(&self, lower: usize, upper: usize) -> Option<i64> {
        self.labels.get(&(lower as u32, upper as u32)).copied()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Result of checking an edge labeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElVerdict {
    Accepted,
    Rejected {
        lower: usize,
        upper: usize,
        reason: String,
    },
}

/// Options for DOT export.
#[derive(Clone, Debug)]
pub struct DotOptions {
    pub graph_name: String,
    /// Group elements of equal rank on one layer when the poset is graded.
    pub align_ranks: bool,
}

impl Default for DotOptions {
    fn default() -> Self {
        DotOptions {
            graph_name: "poset".into(),
            align_ranks: true,
        }
    }
}

#[derive(Serialize)]
struct PosetDump<'a> {
    elements: &'a [String],
    covers: Vec<(u32, u32)>,
}

impl FinitePoset {
    /// Builds a poset from cover candidates. Duplicate and transitively
    /// implied edges are dropped; a cycle is an error.
    pub fn from_covers(
        labels: Vec<String>,
        covers: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, Error> {
        let m = labels.len();
        if m > MAX_POSET_ELEMENTS {
            return Err(Error::BoundExceeded {
                what: "FinitePoset::from_covers",
                param: "elements",
                limit: MAX_POSET_ELEMENTS,
                got: m,
            });
        }
        let mut edges: BTreeSet<(u32, u32)> = BTreeSet::new();
        for (x, y) in covers {
            if x >= m || y >= m {
                return Err(Error::ElementNotFound(format!(
                    "cover index {} out of range 0..{m}",
                    x.max(y)
                )));
            }
            if x == y {
                return Err(Error::CycleDetected(labels[x].clone()));
            }
            edges.insert((x as u32, y as u32));
        }

        // Kahn's algorithm: a topological order exists exactly when the
        // edge digraph is acyclic.
        let mut outgoing: Vec<Vec<u32>> = vec![Vec::new(); m];
        let mut indegree = vec![0usize; m];
        for &(x, y) in &edges {
            outgoing[x as usize].push(y);
            indegree[y as usize] += 1;
        }
        let mut queue: Vec<u32> = (0..m as u32)
            .filter(|&i| indegree[i as usize] == 0)
            .collect();
        let mut topo: Vec<u32> = Vec::with_capacity(m);
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            topo.push(x);
            for &y in &outgoing[x as usize] {
                indegree[y as usize] -= 1;
                if indegree[y as usize] == 0 {
                    queue.push(y);
                }
            }
        }
        if topo.len() != m {
            let stuck = (0..m)
                .find(|&i| indegree[i] > 0)
                .expect("some node has positive in-degree in a cycle");
            return Err(Error::CycleDetected(labels[stuck].clone()));
        }

        // Strict reachability: fill rows from the top of the order down.
        let mut up = BitMatrix::new(m);
        for &x in topo.iter().rev() {
            for &y in &outgoing[x as usize] {
                up.set(x as usize, y as usize);
                up.or_row_into(x as usize, y as usize);
            }
        }
        let mut down = BitMatrix::new(m);
        for r in 0..m {
            for c in ones(up.row(r)) {
                down.set(c, r);
            }
        }

        // Transitive reduction: keep an edge only when nothing sits
        // strictly between its endpoints.
        let mut covers_up: Vec<Vec<u32>> = vec![Vec::new(); m];
        let mut covers_down: Vec<Vec<u32>> = vec![Vec::new(); m];
        for &(x, y) in &edges {
            if disjoint(up.row(x as usize), down.row(y as usize)) {
                covers_up[x as usize].push(y);
                covers_down[y as usize].push(x);
            }
        }
        for list in covers_up.iter_mut().chain(covers_down.iter_mut()) {
            list.sort_unstable();
        }

        Ok(FinitePoset {
            labels,
            covers_up,
            covers_down,
            up,
            down,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn position_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Elements covering `i`, ascending.
    pub fn covers_from(&self, i: usize) -> &[u32] {
        &self.covers_up[i]
    }

    /// Elements covered by `i`, ascending.
    pub fn covers_into(&self, i: usize) -> &[u32] {
        &self.covers_down[i]
    }

    /// All Hasse edges `(lower, upper)`, lexicographically ascending.
    pub fn cover_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.covers_up
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y as usize)))
    }

    pub fn cover_count(&self) -> usize {
        self.covers_up.iter().map(Vec::len).sum()
    }

    fn check_index(&self, i: usize) -> Result<(), Error> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::ElementNotFound(format!(
                "index {i} out of range 0..{}",
                self.len()
            )))
        }
    }

    /// Non-strict comparison.
    pub fn leq(&self, x: usize, y: usize) -> Result<bool, Error> {
        self.check_index(x)?;
        self.check_index(y)?;
        Ok(x == y || self.up.get(x, y))
    }

    fn leq_unchecked(&self, x: usize, y: usize) -> bool {
        x == y || self.up.get(x, y)
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.covers_down[i].is_empty())
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.covers_up[i].is_empty())
            .collect()
    }

    /// Indices of `{z : x ≤ z ≤ y}`, ascending; empty when `x ≰ y`.
    pub fn interval_elements(&self, x: usize, y: usize) -> Result<Vec<usize>, Error> {
        self.check_index(x)?;
        self.check_index(y)?;
        if x == y {
            return Ok(vec![x]);
        }
        if !self.up.get(x, y) {
            return Ok(Vec::new());
        }
        let mut zs = vec![x];
        zs.extend(
            ones(self.up.row(x)).filter(|&z| z == y || self.up.get(z, y)),
        );
        zs.sort_unstable();
        Ok(zs)
    }

    /// The induced subposet on `{z : x ≤ z ≤ y}`. Intervals are convex,
    /// so their covers are exactly the ambient covers between members.
    pub fn interval(&self, x: usize, y: usize) -> Result<FinitePoset, Error> {
        let zs = self.interval_elements(x, y)?;
        Ok(self.induced(&zs))
    }

    /// The subposet induced on ascending, duplicate-free `indices`,
    /// with comparability inherited from this poset. Cover edges of the
    /// result are computed from scratch, so the subset need not be convex.
    pub fn induced(&self, indices: &[usize]) -> FinitePoset {
        let labels: Vec<String> = indices.iter().map(|&z| self.labels[z].clone()).collect();
        let mut edges = Vec::new();
        for (pi, &p) in indices.iter().enumerate() {
            for (qi, &q) in indices.iter().enumerate() {
                if p != q && self.up.get(p, q) {
                    edges.push((pi, qi));
                }
            }
        }
        FinitePoset::from_covers(labels, edges)
            .expect("a relation induced from a poset is acyclic")
    }

    /// Rank function when one exists: 0 on every minimal element, +1
    /// along every cover.
    pub fn grading(&self) -> Grading {
        // The longest-path rank from the minimal elements is the only
        // candidate; the poset is graded exactly when every cover climbs
        // it by one.
        let ranks = self.longest_path_ranks();
        for (x, y) in self.cover_pairs() {
            if ranks[y] != ranks[x] + 1 {
                return Grading::NotGraded { lower: x, upper: y };
            }
        }
        Grading::Graded { ranks }
    }

    fn longest_path_ranks(&self) -> Vec<u64> {
        let m = self.len();
        let mut ranks = vec![0u64; m];
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&i| self.down.count_row(i));
        for &y in &order {
            for &x in &self.covers_down[y] {
                ranks[y] = ranks[y].max(ranks[x as usize] + 1);
            }
        }
        ranks
    }

    /// Checks a supplied statistic as a grading: it must be constant on
    /// minimal elements and climb by exactly one along every cover.
    /// Returns the offending cover otherwise.
    pub fn graded_by(&self, stat: &[u64]) -> Result<(), (usize, usize)> {
        assert_eq!(stat.len(), self.len(), "one statistic value per element");
        for (x, y) in self.cover_pairs() {
            if stat[y] != stat[x] + 1 {
                return Err((x, y));
            }
        }
        let minimals = self.minimal_elements();
        if let Some((&first, rest)) = minimals.split_first() {
            for &other in rest {
                if stat[other] != stat[first] {
                    return Err((first, other));
                }
            }
        }
        Ok(())
    }

    /// Whether every maximal chain of the whole poset has the same length.
    pub fn maximal_chains_equal_length(&self) -> bool {
        let ranks = self.longest_path_ranks();
        // Shortest-path version of the same quantity.
        let m = self.len();
        let mut short = vec![u64::MAX; m];
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&i| self.down.count_row(i));
        for &y in &order {
            if self.covers_down[y].is_empty() {
                short[y] = 0;
            } else {
                for &x in &self.covers_down[y] {
                    short[y] = short[y].min(short[x as usize] + 1);
                }
            }
        }
        (0..m).all(|i| !self.covers_up[i].is_empty() || short[i] == ranks[i])
            && self
                .maximal_elements()
                .iter()
                .map(|&i| ranks[i])
                .collect::<BTreeSet<_>>()
                .len()
                <= 1
    }

    fn inclusive_row(mat: &BitMatrix, i: usize) -> Vec<u64> {
        let mut words = mat.row(i).to_vec();
        words[i / 64] |= 1 << (i % 64);
        words
    }

    /// Greatest lower bound when it exists.
    pub fn meet(&self, x: usize, y: usize) -> Result<Option<usize>, Error> {
        self.check_index(x)?;
        self.check_index(y)?;
        let mut lower = Self::inclusive_row(&self.down, x);
        for (w, other) in lower.iter_mut().zip(Self::inclusive_row(&self.down, y)) {
            *w &= other;
        }
        Ok(self.unique_extreme(&lower, true))
    }

    /// Least upper bound when it exists.
    pub fn join(&self, x: usize, y: usize) -> Result<Option<usize>, Error> {
        self.check_index(x)?;
        self.check_index(y)?;
        let mut upper = Self::inclusive_row(&self.up, x);
        for (w, other) in upper.iter_mut().zip(Self::inclusive_row(&self.up, y)) {
            *w &= other;
        }
        Ok(self.unique_extreme(&upper, false))
    }

    /// The unique maximal (`want_max`) or minimal element of a down- or
    /// up-closed set given as a bit row, if there is exactly one.
    fn unique_extreme(&self, set: &[u64], want_max: bool) -> Option<usize> {
        let mut found: Option<usize> = None;
        for z in ones(set) {
            let dominated = ones(set).any(|w| {
                w != z
                    && if want_max {
                        self.up.get(z, w)
                    } else {
                        self.up.get(w, z)
                    }
            });
            if !dominated {
                if found.is_some() {
                    return None;
                }
                found = Some(z);
            }
        }
        found
    }

    /// Exhaustive meet/join test over all pairs; reports the first
    /// failing pair.
    pub fn is_lattice(&self) -> LatticeVerdict {
        for x in 0..self.len() {
            for y in x + 1..self.len() {
                if self.meet(x, y).expect("indices in range").is_none() {
                    return LatticeVerdict::NotLattice {
                        x,
                        y,
                        missing: BoundKind::Meet,
                    };
                }
                if self.join(x, y).expect("indices in range").is_none() {
                    return LatticeVerdict::NotLattice {
                        x,
                        y,
                        missing: BoundKind::Join,
                    };
                }
            }
        }
        LatticeVerdict::Lattice
    }

    /// Möbius function of the interval `[x, y]`.
    pub fn mobius(&self, x: usize, y: usize) -> Result<i64, Error> {
        if !self.leq(x, y)? {
            return Err(Error::Incomparable(
                self.labels[x].clone(),
                self.labels[y].clone(),
            ));
        }
        let interval = self.interval_elements(x, y)?;
        // Process in an order compatible with the poset so every strictly
        // smaller element is finished first.
        let mut order = interval.clone();
        order.sort_by_key(|&z| self.down.count_row(z));
        let mut mu: HashMap<usize, i64> = HashMap::new();
        for &z in &order {
            let value = if z == x {
                1
            } else {
                -interval
                    .iter()
                    .filter(|&&w| w != z && self.leq_unchecked(w, z))
                    .map(|&w| mu[&w])
                    .sum::<i64>()
            };
            mu.insert(z, value);
        }
        Ok(mu[&y])
    }

    /// Exact isomorphism via invariant refinement plus backtracking.
    /// Returns a bijection `self index → other index` that preserves
    /// covers both ways, or `None`. Budgeted: oversized inputs and
    /// runaway searches error out.
    pub fn are_isomorphic(&self, other: &FinitePoset) -> Result<Option<Vec<usize>>, Error> {
        if self.len() != other.len() || self.cover_count() != other.cover_count() {
            return Ok(None);
        }
        let m = self.len();
        if m > ISO_ELEMENT_BUDGET {
            return Err(Error::BudgetExceeded(format!(
                "isomorphism search on {m} elements exceeds the {ISO_ELEMENT_BUDGET}-element budget"
            )));
        }
        if m == 0 {
            return Ok(Some(Vec::new()));
        }

        let colors_p = self.stable_colors();
        let colors_q = other.stable_colors();
        let mut count_p: BTreeMap<u64, usize> = BTreeMap::new();
        let mut count_q: BTreeMap<u64, usize> = BTreeMap::new();
        for &c in &colors_p {
            *count_p.entry(c).or_default() += 1;
        }
        for &c in &colors_q {
            *count_q.entry(c).or_default() += 1;
        }
        if count_p != count_q {
            return Ok(None);
        }

        // Most constrained first: rare colors, then index for determinism.
        let mut vertex_order: Vec<usize> = (0..m).collect();
        vertex_order.sort_by_key(|&i| (count_p[&colors_p[i]], colors_p[i], i));
        let mut candidates: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for (j, &c) in colors_q.iter().enumerate() {
            candidates.entry(c).or_default().push(j);
        }

        let cover_p = self.cover_matrix();
        let cover_q = other.cover_matrix();
        let mut map = vec![usize::MAX; m];
        let mut used = vec![false; m];
        let mut nodes = 0usize;
        if self.assign(
            other,
            &vertex_order,
            0,
            &colors_p,
            &candidates,
            &cover_p,
            &cover_q,
            &mut map,
            &mut used,
            &mut nodes,
        )? {
            debug_assert!(self.verify_isomorphism(other, &map));
            if !self.verify_isomorphism(other, &map) {
                return Ok(None);
            }
            Ok(Some(map))
        } else {
            Ok(None)
        }
    }

    fn cover_matrix(&self) -> BitMatrix {
        let mut mat = BitMatrix::new(self.len());
        for (x, y) in self.cover_pairs() {
            mat.set(x, y);
        }
        mat
    }

    #[allow(clippy::too_many_arguments)]
    fn assign(
        &self,
        other: &FinitePoset,
        order: &[usize],
        depth: usize,
        colors_p: &[u64],
        candidates: &BTreeMap<u64, Vec<usize>>,
        cover_p: &BitMatrix,
        cover_q: &BitMatrix,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        nodes: &mut usize,
    ) -> Result<bool, Error> {
        if depth == order.len() {
            return Ok(true);
        }
        *nodes += 1;
        if *nodes > ISO_NODE_BUDGET {
            return Err(Error::BudgetExceeded(
                "isomorphism backtracking exceeded its node budget".into(),
            ));
        }
        let u = order[depth];
        for &q in &candidates[&colors_p[u]] {
            if used[q] {
                continue;
            }
            // Cover edges to already mapped vertices must match exactly.
            let consistent = order[..depth].iter().all(|&p| {
                let fp = map[p];
                cover_p.get(u, p) == cover_q.get(q, fp)
                    && cover_p.get(p, u) == cover_q.get(fp, q)
            });
            if !consistent {
                continue;
            }
            map[u] = q;
            used[q] = true;
            if self.assign(
                other, order, depth + 1, colors_p, candidates, cover_p, cover_q, map, used,
                nodes,
            )? {
                return Ok(true);
            }
            used[q] = false;
            map[u] = usize::MAX;
        }
        Ok(false)
    }

    fn verify_isomorphism(&self, other: &FinitePoset, map: &[usize]) -> bool {
        let forward: BTreeSet<(usize, usize)> = self
            .cover_pairs()
            .map(|(x, y)| (map[x], map[y]))
            .collect();
        let direct: BTreeSet<(usize, usize)> = other.cover_pairs().collect();
        forward == direct
    }

    /// Iterated neighborhood refinement: stable per-element invariants
    /// that any isomorphism must preserve.
    fn stable_colors(&self) -> Vec<u64> {
        let m = self.len();
        let mut colors: Vec<u64> = (0..m)
            .map(|i| {
                let mut h = DefaultHasher::new();
                (self.covers_up[i].len(), self.covers_down[i].len()).hash(&mut h);
                h.finish()
            })
            .collect();
        let mut classes = BTreeSet::from_iter(colors.iter().copied()).len();
        for _ in 0..m {
            let next: Vec<u64> = (0..m)
                .map(|i| {
                    let mut up: Vec<u64> = self.covers_up[i]
                        .iter()
                        .map(|&j| colors[j as usize])
                        .collect();
                    let mut dn: Vec<u64> = self.covers_down[i]
                        .iter()
                        .map(|&j| colors[j as usize])
                        .collect();
                    up.sort_unstable();
                    dn.sort_unstable();
                    let mut h = DefaultHasher::new();
                    (colors[i], up, dn).hash(&mut h);
                    h.finish()
                })
                .collect();
            let next_classes = BTreeSet::from_iter(next.iter().copied()).len();
            colors = next;
            if next_classes == classes {
                break;
            }
            classes = next_classes;
        }
        colors
    }

    /// Checks a candidate edge labeling: in every interval, exactly one
    /// maximal chain must carry a weakly increasing label sequence, and
    /// that sequence must be lexicographically smallest among all maximal
    /// chains of the interval.
    pub fn verify_el_labeling(&self, labeling: &EdgeLabeling) -> Result<ElVerdict, Error> {
        let total = self.cover_count();
        let mut have = 0usize;
        for (x, y) in self.cover_pairs() {
            if labeling.get(x, y).is_some() {
                have += 1;
            }
        }
        if have != total {
            return Err(Error::PartialLabeling(have, total));
        }

        let mut steps = 0usize;
        for x in 0..self.len() {
            for y in 0..self.len() {
                if x == y || !self.up.get(x, y) {
                    continue;
                }
                let chains = self.label_sequences(x, y, labeling, &mut steps)?;
                let increasing: Vec<&Vec<i64>> = chains
                    .iter()
                    .filter(|c| c.windows(2).all(|w| w[0] <= w[1]))
                    .collect();
                if increasing.len() != 1 {
                    return Ok(ElVerdict::Rejected {
                        lower: x,
                        upper: y,
                        reason: format!(
                            "{} weakly increasing maximal chains, need exactly 1",
                            increasing.len()
                        ),
                    });
                }
                let best = increasing[0];
                if chains.iter().any(|c| c < best) {
                    return Ok(ElVerdict::Rejected {
                        lower: x,
                        upper: y,
                        reason: "the increasing chain is not lexicographically smallest"
                            .into(),
                    });
                }
            }
        }
        Ok(ElVerdict::Accepted)
    }

    /// Label sequences of every maximal chain from `x` to `y`.
    fn label_sequences(
        &self,
        x: usize,
        y: usize,
        labeling: &EdgeLabeling,
        steps: &mut usize,
    ) -> Result<Vec<Vec<i64>>, Error> {
        let mut out = Vec::new();
        let mut stack: Vec<(usize, Vec<i64>)> = vec![(x, Vec::new())];
        while let Some((z, seq)) = stack.pop() {
            *steps += 1;
            if *steps > CHAIN_STEP_BUDGET {
                return Err(Error::BudgetExceeded(
                    "saturated-chain enumeration exceeded its step budget".into(),
                ));
            }
            if z == y {
                out.push(seq);
                continue;
            }
            for &w in &self.covers_up[z] {
                let w = w as usize;
                if self.leq_unchecked(w, y) {
                    let mut next = seq.clone();
                    next.push(labeling.get(z, w).expect("labeling is total"));
                    stack.push((w, next));
                }
            }
        }
        Ok(out)
    }

    /// DOT rendering of the Hasse diagram, drawn bottom-up, with stable
    /// node order and optional same-rank alignment.
    pub fn to_dot(&self, options: &DotOptions) -> String {
        let mut out = String::new();
        let name = escape_dot(&options.graph_name);
        let _ = writeln!(out, "digraph \"{name}\" {{");
        out.push_str("  rankdir=BT;\n  node [shape=box];\n");
        for (i, label) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape_dot(label));
        }
        for (x, y) in self.cover_pairs() {
            let _ = writeln!(out, "  n{x} -> n{y};");
        }
        if options.align_ranks {
            if let Grading::Graded { ranks } = self.grading() {
                let mut layers: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
                for (i, &r) in ranks.iter().enumerate() {
                    layers.entry(r).or_default().push(i);
                }
                for layer in layers.values() {
                    out.push_str("  { rank=same;");
                    for &i in layer {
                        let _ = write!(out, " n{i};");
                    }
                    out.push_str(" }\n");
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// Compact JSON dump `{"elements":[…],"covers":[[i,j],…]}` with
    /// covers sorted lexicographically; byte-stable for fixed input.
    pub fn to_json(&self) -> String {
        let dump = PosetDump {
            elements: &self.labels,
            covers: self
                .cover_pairs()
                .map(|(x, y)| (x as u32, y as u32))
                .collect(),
        };
        serde_json::to_string(&dump).expect("poset dump serializes")
    }
}

fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
