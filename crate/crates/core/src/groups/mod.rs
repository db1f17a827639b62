//! Finite groups given by Cayley tables.
//!
//! Every group in this crate is a [`FiniteGroup`]: a validated
//! multiplication table over the element indices `0..order`, with the
//! identity pinned at index 0. The small family of constructors in
//! [`families`] together with [`GroupSpec`] covers the nilpotent catalog
//! (cyclic groups, generalized quaternion and dihedral 2-groups,
//! Heisenberg groups over odd primes, and direct products of these).

mod families;
mod spec;

pub use families::{cyclic, dihedral, heisenberg, quaternion, trivial};
pub use spec::{Atom, GroupSpec, SpecError};

use std::fmt;

use thiserror::Error;

/// Upper bound on group orders handled by the library.
pub const DEFAULT_MAX_ORDER: usize = 4096;

/// Default bound for groups read from user-supplied input.
pub const CLI_MAX_ORDER: usize = 512;

/// A sorted list of element indices.
pub type ElementSet = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("cayley table is empty")]
    Empty,
    #[error("cayley table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry ({row}, {col}) = {value} is out of range for a group of order {order}")]
    OutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("identity law violated at ({row}, {col}): element 0 must be the identity")]
    IdentityLaw { row: usize, col: usize },
    #[error("associativity violated: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element {element} has no inverse (row must contain 0 exactly once)")]
    MissingInverse { element: usize },
    #[error("group order {order} exceeds the configured maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("cayley file line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// How much checking [`FiniteGroup::from_cayley_table_with`] performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Validation {
    /// Closure, identity, inverses and associativity over all triples.
    Full,
    /// Everything except the cubic associativity check.
    Trust,
}

/// A finite group stored as a row-major multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    name: String,
    labels: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("name", &self.name).field("order", &self.order).finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Builds a group from a square table and validates it fully.
    pub fn from_cayley_table(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        Self::from_cayley_table_with(rows, Validation::Full, DEFAULT_MAX_ORDER)
    }

    pub fn from_cayley_table_with(
        rows: &[Vec<usize>],
        validation: Validation,
        max_order: usize,
    ) -> Result<Self, GroupError> {
        let order = rows.len();
        if order == 0 {
            return Err(GroupError::Empty);
        }
        if order > max_order {
            return Err(GroupError::OrderTooLarge { order, max: max_order });
        }
        let mut table = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::NotSquare { row: i, len: row.len(), expected: order });
            }
            for (j, &value) in row.iter().enumerate() {
                if value >= order {
                    return Err(GroupError::OutOfRange { row: i, col: j, value, order });
                }
                table.push(value as u32);
            }
        }
        let group = FiniteGroup {
            order,
            table,
            name: format!("cayley{order}"),
            labels: (0..order).map(|i| i.to_string()).collect(),
        };
        group.check(validation)?;
        Ok(group)
    }

    /// Internal constructor for tables that are correct by construction.
    pub(crate) fn from_parts(order: usize, table: Vec<u32>, name: String, labels: Vec<String>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        debug_assert_eq!(labels.len(), order);
        FiniteGroup { order, table, name, labels }
    }

    pub(crate) fn into_table(self) -> Vec<u32> {
        self.table
    }

    /// Re-runs the full set of group axiom checks.
    pub fn validate(&self) -> Result<(), GroupError> {
        self.check(Validation::Full)
    }

    fn check(&self, validation: Validation) -> Result<(), GroupError> {
        let n = self.order;
        for j in 0..n {
            if self.mul(0, j) != j {
                return Err(GroupError::IdentityLaw { row: 0, col: j });
            }
            if self.mul(j, 0) != j {
                return Err(GroupError::IdentityLaw { row: j, col: 0 });
            }
        }
        for i in 0..n {
            let zeros = self.row(i).iter().filter(|&&v| v == 0).count();
            if zeros != 1 {
                return Err(GroupError::MissingInverse { element: i });
            }
        }
        if validation == Validation::Full {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    let row_ab = self.row(ab);
                    for c in 0..n {
                        if row_ab[c] as usize != self.mul(a, self.mul(b, c)) {
                            return Err(GroupError::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Display name of an element (used for DOT labels).
    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn row(&self, a: usize) -> &[u32] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    /// The table as nested rows.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| self.row(a).iter().map(|&v| v as usize).collect()).collect()
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.row(x).iter().position(|&v| v == 0).expect("validated group has inverses")
    }

    /// The sequence `e, x, x^2, ..., x^(o(x)-1)`.
    pub fn powers(&self, x: usize) -> Vec<usize> {
        let mut out = vec![0];
        let mut cur = x;
        while cur != 0 {
            out.push(cur);
            cur = self.mul(cur, x);
        }
        out
    }

    /// Least `n >= 1` with `x^n = e`, by iterated multiplication.
    pub fn element_order(&self, x: usize) -> usize {
        let mut n = 1;
        let mut cur = x;
        while cur != 0 {
            cur = self.mul(cur, x);
            n += 1;
        }
        n
    }

    /// `x^n` for any integer exponent.
    pub fn pow(&self, x: usize, n: i64) -> usize {
        let powers = self.powers(x);
        let k = n.rem_euclid(powers.len() as i64) as usize;
        powers[k]
    }

    /// The subgroup generated by `x`, sorted by index.
    pub fn cyclic_subgroup(&self, x: usize) -> ElementSet {
        let mut set = self.powers(x);
        set.sort_unstable();
        set
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order).map(|x| self.element_order(x)).collect()
    }

    /// Sorted multiset of element orders.
    pub fn order_multiset(&self) -> Vec<usize> {
        let mut orders = self.element_orders();
        orders.sort_unstable();
        orders
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commutes(a, b)))
    }

    /// A finite group is nilpotent iff elements of coprime orders commute.
    pub fn is_nilpotent(&self) -> bool {
        let orders = self.element_orders();
        for a in 0..self.order {
            for b in a + 1..self.order {
                if gcd(orders[a], orders[b]) == 1 && !self.commutes(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// Direct product on lexicographically indexed pairs: `(g, h)` has index `g * |H| + h`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
        self.direct_product_bounded(other, DEFAULT_MAX_ORDER)
    }

    pub fn direct_product_bounded(&self, other: &FiniteGroup, max_order: usize) -> Result<FiniteGroup, GroupError> {
        let order = self
            .order
            .checked_mul(other.order)
            .filter(|&o| o <= max_order)
            .ok_or(GroupError::OrderTooLarge { order: self.order.saturating_mul(other.order), max: max_order })?;
        let m = other.order;
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            let (a1, a2) = (a / m, a % m);
            for b in 0..order {
                let (b1, b2) = (b / m, b % m);
                table.push((self.mul(a1, b1) * m + other.mul(a2, b2)) as u32);
            }
        }
        let labels = (0..order).map(|a| format!("({},{})", self.labels[a / m], other.labels[a % m])).collect();
        let name = format!("{}x{}", self.name, other.name);
        Ok(FiniteGroup::from_parts(order, table, name, labels))
    }

    /// Parses the Cayley table text format: first line `n`, then `n` rows of
    /// whitespace-separated indices. Lines starting with `#` are ignored.
    pub fn parse_cayley(text: &str, validation: Validation, max_order: usize) -> Result<FiniteGroup, GroupError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line_no, header) = lines.next().ok_or(GroupError::Empty)?;
        let n: usize = header.parse().map_err(|_| GroupError::Parse {
            line: line_no,
            message: format!("expected the group order, found {header:?}"),
        })?;
        if n > max_order {
            return Err(GroupError::OrderTooLarge { order: n, max: max_order });
        }
        let mut rows = Vec::with_capacity(n);
        for (line_no, line) in lines {
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| GroupError::Parse { line: line_no, message: format!("bad entry {t:?}") })
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        if rows.len() != n {
            return Err(GroupError::Parse { line: 0, message: format!("expected {n} rows, found {}", rows.len()) });
        }
        FiniteGroup::from_cayley_table_with(&rows, validation, max_order)
    }

    pub fn to_cayley_text(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for a in 0..self.order {
            let row: Vec<String> = self.row(a).iter().map(|v| v.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, k)` when `n = p^k` with `p` prime and `k >= 1`.
pub fn prime_power(n: usize) -> Option<(usize, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}
