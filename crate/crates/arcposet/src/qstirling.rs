//! Polynomial refinements of the Stirling numbers of the second kind.
//!
//! The central object is [`QPolynomial`], a polynomial in one variable
//! `q` with arbitrary-precision integer coefficients. Four generating
//! routes produce these polynomials:
//!
//! - [`bracket_direct`]: sum `q^t(A)` over all diagrams on `n` vertices
//!   with exactly `k` arcs, where `t` is the diagram index.
//! - [`bracket_recurrence`]: the same family computed from a two-term
//!   recurrence instead of enumeration.
//! - [`gr_stirling`]: the classical q-Stirling numbers `S[n][k]` from
//!   the recurrence `S[n][k] = q^(k-1) S[n-1][k-1] + [k]_q S[n-1][k]`.
//! - [`staircase_rook_poly`]: rank-generating sums over strictly upper
//!   placements, with the complemented statistic `C(n,2) - length`.
//!
//! [`verify_identities`] cross-checks all four routes against each
//! other and against integer Stirling numbers at `q = 1`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use num_bigint::{BigInt, Sign};
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::arc_diagrams::ArcDiagram;
use crate::report::CheckReport;
use crate::rook_monoid::{enumerate_universe, Universe};
use crate::Error;

/// Largest `n` for which the enumeration-backed routes
/// ([`bracket_direct`], [`staircase_rook_poly`]) will run.
pub const MAX_DIRECT_N: usize = 9;

/// Largest `n_max` accepted by [`verify_identities`].
pub const MAX_IDENTITY_N: usize = 8;

fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// A polynomial in `q` with [`BigInt`] coefficients, stored sparsely by
/// exponent. The map never holds a zero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(try_from = "QPolynomialRepr")]
pub struct QPolynomial {
    coeffs: BTreeMap<u64, BigInt>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial::default()
    }

    pub fn one() -> Self {
        QPolynomial::monomial(0, 1)
    }

    /// The polynomial `q`.
    pub fn q() -> Self {
        QPolynomial::monomial(1, 1)
    }

    /// The single term `coeff * q^exp` (the zero polynomial when
    /// `coeff` is zero).
    pub fn monomial(exp: u64, coeff: impl Into<BigInt>) -> Self {
        let coeff = coeff.into();
        let mut coeffs = BTreeMap::new();
        if coeff.sign() != Sign::NoSign {
            coeffs.insert(exp, coeff);
        }
        QPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest exponent with a nonzero coefficient, or `None` for the
    /// zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.coeffs.keys().next_back().copied()
    }

    /// The coefficient of `q^exp` (zero when absent).
    pub fn coeff(&self, exp: u64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Value at `q = 1`: the sum of all coefficients.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    fn add_term(&mut self, exp: u64, coeff: &BigInt) {
        if coeff.sign() == Sign::NoSign {
            return;
        }
        let entry = self.coeffs.entry(exp).or_default();
        *entry += coeff;
        if entry.sign() == Sign::NoSign {
            self.coeffs.remove(&exp);
        }
    }

    /// This polynomial multiplied by `q^shift`.
    pub fn shifted(&self, shift: u64) -> Self {
        QPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e + shift, c.clone()))
                .collect(),
        }
    }

    /// Substitute `q -> 1/q`, then multiply by `q^shift`: every
    /// exponent `e` becomes `shift - e`. Fails when a term would land
    /// at a negative exponent, i.e. when `shift` is below the degree.
    pub fn reciprocal_shift(&self, shift: u64) -> Result<Self, Error> {
        let mut coeffs = BTreeMap::new();
        for (&e, c) in &self.coeffs {
            if e > shift {
                return Err(Error::NegativeExponent {
                    shift,
                    exponent: e,
                });
            }
            coeffs.insert(shift - e, c.clone());
        }
        Ok(QPolynomial { coeffs })
    }
}

impl AddAssign<&QPolynomial> for QPolynomial {
    fn add_assign(&mut self, rhs: &QPolynomial) {
        for (&e, c) in &rhs.coeffs {
            self.add_term(e, c);
        }
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = QPolynomial::zero();
        for (&ea, ca) in &self.coeffs {
            for (&eb, cb) in &rhs.coeffs {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }
}

impl fmt::Display for QPolynomial {
    /// Ascending exponents, e.g. `1 + 2q + q^2`; the zero polynomial
    /// prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (&exp, coeff)) in self.coeffs.iter().enumerate() {
            if i == 0 {
                if coeff.sign() == Sign::Minus {
                    write!(f, "-")?;
                }
            } else if coeff.sign() == Sign::Minus {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = coeff.magnitude();
            if exp == 0 {
                write!(f, "{abs}")?;
            } else {
                if *abs != 1u32.into() {
                    write!(f, "{abs}")?;
                }
                write!(f, "q")?;
                if exp > 1 {
                    write!(f, "^{exp}")?;
                }
            }
        }
        Ok(())
    }
}

impl Serialize for QPolynomial {
    /// `{"coeffs": {"0": 1, "1": 2}}` with keys in ascending numeric
    /// order; coefficients beyond the `i64` range become strings.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Coeffs<'a>(&'a BTreeMap<u64, BigInt>);

        impl Serialize for Coeffs<'_> {
            fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.len()))?;
                for (exp, coeff) in self.0 {
                    let key = exp.to_string();
                    match i64::try_from(coeff) {
                        Ok(small) => map.serialize_entry(&key, &small)?,
                        Err(_) => map.serialize_entry(&key, &coeff.to_string())?,
                    }
                }
                map.end()
            }
        }

        let mut map = serializer.serialize_map(Some(1))?;
        map.serialize_entry("coeffs", &Coeffs(&self.coeffs))?;
        map.end()
    }
}

#[derive(Deserialize)]
struct QPolynomialRepr {
    coeffs: BTreeMap<String, serde_json::Value>,
}

impl TryFrom<QPolynomialRepr> for QPolynomial {
    type Error = serde_json::Error;

    fn try_from(repr: QPolynomialRepr) -> Result<Self, Self::Error> {
        let mut poly = QPolynomial::zero();
        for (key, value) in repr.coeffs {
            let exp: u64 = key
                .parse()
                .map_err(|_| serde_json::Error::custom(format!("bad exponent key {key:?}")))?;
            let coeff: BigInt = match &value {
                serde_json::Value::Number(n) if n.is_i64() => n.as_i64().unwrap().into(),
                serde_json::Value::Number(n) if n.is_u64() => n.as_u64().unwrap().into(),
                serde_json::Value::String(s) => s.parse().map_err(|_| {
                    serde_json::Error::custom(format!("bad coefficient {s:?} for q^{exp}"))
                })?,
                other => {
                    return Err(serde_json::Error::custom(format!(
                        "coefficient for q^{exp} must be an integer or string, got {other}"
                    )))
                }
            };
            poly.add_term(exp, &coeff);
        }
        Ok(poly)
    }
}

/// The q-integer `[k]_q = 1 + q + ... + q^(k-1)`; `[0]_q = 0`.
pub fn q_int(k: u64) -> QPolynomial {
    QPolynomial {
        coeffs: (0..k).map(|e| (e, BigInt::from(1))).collect(),
    }
}

/// Stirling number of the second kind `S(n, k)`: partitions of an
/// `n`-set into `k` blocks.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    // Row-by-row triangle: S(r, j) = j * S(r-1, j) + S(r-1, j-1).
    let mut row = vec![BigInt::from(1)];
    for _ in 1..=n {
        let mut next = vec![BigInt::from(0); row.len() + 1];
        for (j, value) in row.iter().enumerate() {
            next[j] += BigInt::from(j as u64) * value;
            next[j + 1] += value;
        }
        row = next;
    }
    row.swap_remove(k)
}

/// Bell number `B(n)`: the total number of partitions of an `n`-set.
pub fn bell(n: usize) -> BigInt {
    (0..=n).map(|k| stirling2(n, k)).sum()
}

/// Sum of `q^t(A)` over all diagrams on `n` vertices with exactly `k`
/// arcs, computed by enumeration. `n = 0` contributes the empty
/// diagram when `k = 0`. Fails with a bound error for `n` above
/// [`MAX_DIRECT_N`].
pub fn bracket_direct(n: usize, k: usize) -> Result<QPolynomial, Error> {
    if n > MAX_DIRECT_N {
        return Err(Error::BoundExceeded {
            what: "diagram index generating polynomial",
            param: "n",
            limit: MAX_DIRECT_N,
            got: n,
        });
    }
    if n == 0 {
        return Ok(if k == 0 {
            QPolynomial::one()
        } else {
            QPolynomial::zero()
        });
    }
    let mut poly = QPolynomial::zero();
    for diagram in ArcDiagram::enumerate_with_arcs(n, k)? {
        poly.add_term(diagram.t_index(), &BigInt::from(1));
    }
    Ok(poly)
}

/// The same family as [`bracket_direct`], from the recurrence
/// `P(n, k) = q^k P(n-1, k) + [n-k]_q q^k P(n-1, k-1)` with
/// `P(m, 0) = 1` and `P(m, k) = 0` outside `0 <= k <= m`.
pub fn bracket_recurrence(n: usize, k: usize) -> QPolynomial {
    fn go(n: usize, k: usize, memo: &mut HashMap<(usize, usize), QPolynomial>) -> QPolynomial {
        if k > n {
            return QPolynomial::zero();
        }
        if k == 0 {
            return QPolynomial::one();
        }
        if let Some(hit) = memo.get(&(n, k)) {
            return hit.clone();
        }
        let same = go(n - 1, k, memo).shifted(k as u64);
        let fewer = go(n - 1, k - 1, memo);
        let stretch = q_int((n - k) as u64).shifted(k as u64);
        let value = &same + &(&stretch * &fewer);
        memo.insert((n, k), value.clone());
        value
    }
    go(n, k, &mut HashMap::new())
}

/// Classical q-Stirling number `S[n][k]` from the recurrence
/// `S[n][k] = q^(k-1) S[n-1][k-1] + [k]_q S[n-1][k]` with
/// `S[0][0] = 1` and `S[n][0] = 0` for `n >= 1`.
pub fn gr_stirling(n: usize, k: usize) -> QPolynomial {
    fn go(n: usize, k: usize, memo: &mut HashMap<(usize, usize), QPolynomial>) -> QPolynomial {
        if k > n {
            return QPolynomial::zero();
        }
        if n == 0 {
            return QPolynomial::one();
        }
        if k == 0 {
            return QPolynomial::zero();
        }
        if let Some(hit) = memo.get(&(n, k)) {
            return hit.clone();
        }
        let fewer = go(n - 1, k - 1, memo).shifted((k - 1) as u64);
        let same = &q_int(k as u64) * &go(n - 1, k, memo);
        let value = &fewer + &same;
        memo.insert((n, k), value.clone());
        value
    }
    go(n, k, &mut HashMap::new())
}

/// Rank-`k` staircase rook polynomial: the sum of
/// `q^(C(n,2) - length(x))` over strictly upper placements `x` of rank
/// `k` on `n` columns. The complemented statistic makes the rank-0
/// term `q^(C(n,2))` and the full staircase chain end at constant 1.
/// Fails with a bound error for `n` above [`MAX_DIRECT_N`].
pub fn staircase_rook_poly(n: usize, k: usize) -> Result<QPolynomial, Error> {
    if n > MAX_DIRECT_N {
        return Err(Error::BoundExceeded {
            what: "staircase rook polynomial",
            param: "n",
            limit: MAX_DIRECT_N,
            got: n,
        });
    }
    if n == 0 {
        return Ok(if k == 0 {
            QPolynomial::one()
        } else {
            QPolynomial::zero()
        });
    }
    let top = binom2(n as u64);
    let mut poly = QPolynomial::zero();
    for rook in enumerate_universe(Universe::StrictlyUpper, n)? {
        if rook.rank() == k {
            poly.add_term(top - rook.length(), &BigInt::from(1));
        }
    }
    Ok(poly)
}

/// Cross-checks the four polynomial routes for all `0 <= k <= n` up to
/// `n_max`:
///
/// 1. enumeration equals the two-term recurrence;
/// 2. evaluation at `q = 1` equals `S(n, n - k)`;
/// 3. `S[n][k]` equals the rank-`(n-k)` staircase rook polynomial;
/// 4. the diagram polynomial equals `q^(C(n,2))` times the staircase
///    polynomial at `1/q`.
///
/// A failure report names the identity and carries both sides; for the
/// staircase identities it also includes the sum under the raw
/// (uncomplemented) length statistic, so a normalization mismatch is
/// visible at a glance.
pub fn verify_identities(n_max: usize) -> Result<CheckReport, Error> {
    if n_max > MAX_IDENTITY_N {
        return Err(Error::BoundExceeded {
            what: "polynomial identity check",
            param: "n_max",
            limit: MAX_IDENTITY_N,
            got: n_max,
        });
    }
    let params = [("n_max", n_max as i64)];
    let mut cases = 0u64;
    for n in 1..=n_max {
        let raw_by_rank = staircase_raw_polys(n)?;
        for k in 0..=n {
            let direct = bracket_direct(n, k)?;
            let recurrence = bracket_recurrence(n, k);
            if direct != recurrence {
                return Ok(CheckReport::fail(
                    "q-identities",
                    params,
                    json!({
                        "identity": "enumeration vs recurrence",
                        "n": n, "k": k,
                        "enumeration": direct.to_string(),
                        "recurrence": recurrence.to_string(),
                    }),
                ));
            }
            let at_one = direct.eval_one();
            let expected = stirling2(n, n - k);
            if at_one != expected {
                return Ok(CheckReport::fail(
                    "q-identities",
                    params,
                    json!({
                        "identity": "evaluation at q = 1",
                        "n": n, "k": k,
                        "value": at_one.to_string(),
                        "expected": expected.to_string(),
                    }),
                ));
            }
            let classical = gr_stirling(n, k);
            let staircase = staircase_rook_poly(n, n - k)?;
            if classical != staircase {
                return Ok(CheckReport::fail(
                    "q-identities",
                    params,
                    json!({
                        "identity": "classical q-Stirling vs staircase",
                        "n": n, "k": k,
                        "classical": classical.to_string(),
                        "staircase_complemented": staircase.to_string(),
                        "staircase_raw": raw_by_rank[n - k].to_string(),
                    }),
                ));
            }
            let rank_poly = staircase_rook_poly(n, k)?;
            let reciprocal = rank_poly.reciprocal_shift(binom2(n as u64))?;
            if reciprocal != direct {
                return Ok(CheckReport::fail(
                    "q-identities",
                    params,
                    json!({
                        "identity": "diagram polynomial vs reciprocal staircase",
                        "n": n, "k": k,
                        "diagram": direct.to_string(),
                        "reciprocal_staircase": reciprocal.to_string(),
                        "staircase_raw": raw_by_rank.get(k).map(|p| p.to_string()),
                    }),
                ));
            }
            cases += 4;
        }
    }
    Ok(CheckReport::pass(
        "q-identities",
        params,
        json!({ "cases": cases }),
    ))
}

/// Per-rank sums of `q^length` (the uncomplemented statistic) over
/// strictly upper placements, used to annotate failure reports.
fn staircase_raw_polys(n: usize) -> Result<Vec<QPolynomial>, Error> {
    let mut by_rank = vec![QPolynomial::zero(); n + 1];
    for rook in enumerate_universe(Universe::StrictlyUpper, n)? {
        by_rank[rook.rank()].add_term(rook.length(), &BigInt::from(1));
    }
    Ok(by_rank)
}

/// Renders `(n, k, polynomial)` rows as a CSV table with a header.
pub fn csv_sweep(rows: impl IntoIterator<Item = (usize, usize, QPolynomial)>) -> String {
    let mut out = String::from("n,k,polynomial\n");
    for (n, k, poly) in rows {
        out.push_str(&format!("{n},{k},{poly}\n"));
    }
    out
}

/// CSV sweep of the diagram index polynomials for all `0 <= k <= n`
/// up to `n_max`.
pub fn bracket_sweep_csv(n_max: usize) -> Result<String, Error> {
    let mut rows = Vec::new();
    for n in 0..=n_max {
        for k in 0..=n {
            rows.push((n, k, bracket_direct(n, k)?));
        }
    }
    Ok(csv_sweep(rows))
}
