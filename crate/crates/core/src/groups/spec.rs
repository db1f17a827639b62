//! The catalog language: `spec := term ('x' term)*` with
//! `term := 'C'<n> | 'Q'<m> | 'D'<m> | 'H'<p>`, denoting a direct product.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{families, is_prime, prime_power, FiniteGroup, DEFAULT_MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("invalid atom {atom}: {reason}")]
    Range { atom: String, reason: &'static str },
    #[error("group order {order} exceeds the configured maximum {max}")]
    TooLarge { order: usize, max: usize },
}

/// One factor of a direct product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// Cyclic group of order `n >= 1`.
    Cyclic(usize),
    /// Generalized quaternion group of order `2^k`, `k >= 3`.
    Quaternion(usize),
    /// Dihedral group of order `2^k`, `k >= 2`.
    Dihedral(usize),
    /// Heisenberg group mod an odd prime `p` (order `p^3`).
    Heisenberg(usize),
}

impl Atom {
    pub fn order(&self) -> usize {
        match *self {
            Atom::Cyclic(n) | Atom::Quaternion(n) | Atom::Dihedral(n) => n,
            Atom::Heisenberg(p) => p.saturating_mul(p).saturating_mul(p),
        }
    }

    fn check(&self) -> Result<(), SpecError> {
        let bad = |reason| Err(SpecError::Range { atom: self.to_string(), reason });
        match *self {
            Atom::Cyclic(0) => bad("cyclic order must be at least 1"),
            Atom::Quaternion(m) if m < 8 || !m.is_power_of_two() => bad("quaternion order must be 2^k with k >= 3"),
            Atom::Dihedral(m) if m < 4 || !m.is_power_of_two() => bad("dihedral order must be 2^k with k >= 2"),
            Atom::Heisenberg(p) if p == 2 || !is_prime(p) => bad("heisenberg parameter must be an odd prime"),
            _ => Ok(()),
        }
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self, Atom::Cyclic(_) | Atom::Dihedral(4))
    }

    pub fn realize(&self) -> FiniteGroup {
        match *self {
            Atom::Cyclic(n) => families::cyclic(n),
            Atom::Quaternion(m) => families::quaternion(m),
            Atom::Dihedral(m) => families::dihedral(m),
            Atom::Heisenberg(p) => families::heisenberg(p),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Cyclic(n) => write!(f, "C{n}"),
            Atom::Quaternion(m) => write!(f, "Q{m}"),
            Atom::Dihedral(m) => write!(f, "D{m}"),
            Atom::Heisenberg(p) => write!(f, "H{p}"),
        }
    }
}

/// A direct product of atoms, in the order written.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSpec {
    terms: Vec<Atom>,
}

impl GroupSpec {
    pub fn new(terms: Vec<Atom>) -> Result<Self, SpecError> {
        Self::bounded(terms, DEFAULT_MAX_ORDER)
    }

    pub fn bounded(terms: Vec<Atom>, max_order: usize) -> Result<Self, SpecError> {
        if terms.is_empty() {
            return Err(SpecError::Syntax { position: 0, message: "empty spec".into() });
        }
        let mut order: usize = 1;
        for atom in &terms {
            atom.check()?;
            order = order.saturating_mul(atom.order());
        }
        if order > max_order {
            return Err(SpecError::TooLarge { order, max: max_order });
        }
        Ok(GroupSpec { terms })
    }

    pub fn parse(text: &str) -> Result<Self, SpecError> {
        Self::parse_bounded(text, DEFAULT_MAX_ORDER)
    }

    pub fn parse_bounded(text: &str, max_order: usize) -> Result<Self, SpecError> {
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < chars.len() && chars[*pos].is_whitespace() {
                *pos += 1;
            }
        };
        let mut terms = Vec::new();
        skip_ws(&mut pos);
        loop {
            let Some(&letter) = chars.get(pos) else {
                return Err(SpecError::Syntax { position: pos, message: "expected a term".into() });
            };
            let make: fn(usize) -> Atom = match letter.to_ascii_uppercase() {
                'C' => Atom::Cyclic,
                'Q' => Atom::Quaternion,
                'D' => Atom::Dihedral,
                'H' => Atom::Heisenberg,
                other => {
                    return Err(SpecError::Syntax {
                        position: pos,
                        message: format!("expected one of C, Q, D, H, found {other:?}"),
                    })
                }
            };
            pos += 1;
            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                return Err(SpecError::Syntax { position: pos, message: "expected a number".into() });
            }
            let digits: String = chars[start..pos].iter().collect();
            let n: usize = digits
                .parse()
                .map_err(|_| SpecError::Range { atom: format!("{letter}{digits}"), reason: "number too large" })?;
            let atom = make(n);
            atom.check()?;
            terms.push(atom);
            skip_ws(&mut pos);
            match chars.get(pos) {
                None => break,
                Some('x') | Some('X') => {
                    pos += 1;
                    skip_ws(&mut pos);
                }
                Some(other) => {
                    return Err(SpecError::Syntax {
                        position: pos,
                        message: format!("expected 'x' between terms, found {other:?}"),
                    })
                }
            }
        }
        Self::bounded(terms, max_order)
    }

    pub fn terms(&self) -> &[Atom] {
        &self.terms
    }

    pub fn order(&self) -> usize {
        self.terms.iter().map(Atom::order).product()
    }

    pub fn is_abelian(&self) -> bool {
        self.terms.iter().all(Atom::is_abelian)
    }

    /// Cyclic groups of prime-power order (including the trivial group).
    pub fn is_cyclic_p_group(&self) -> bool {
        let n = self.normal_form();
        matches!(n.terms.as_slice(), [Atom::Cyclic(m)] if *m == 1 || prime_power(*m).is_some())
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self.normal_form().terms.as_slice(), [Atom::Cyclic(_)])
    }

    pub fn is_p_group(&self) -> bool {
        self.order() == 1 || prime_power(self.order()).is_some()
    }

    /// The isomorphism-class representative: indecomposable non-abelian
    /// atoms sorted, followed by the abelian part in invariant-factor form
    /// (ascending, each factor dividing the next).
    pub fn normal_form(&self) -> GroupSpec {
        let mut nonabelian = Vec::new();
        // prime -> exponents of cyclic primary components
        let mut primary: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        let push_cyclic = |n: usize, primary: &mut BTreeMap<usize, Vec<u32>>| {
            let mut m = n;
            let mut p = 2;
            while m > 1 {
                if m.is_multiple_of(p) {
                    let mut k = 0;
                    while m.is_multiple_of(p) {
                        m /= p;
                        k += 1;
                    }
                    primary.entry(p).or_default().push(k);
                }
                p += 1;
            }
        };
        for atom in &self.terms {
            match *atom {
                Atom::Cyclic(n) => push_cyclic(n, &mut primary),
                Atom::Dihedral(4) => {
                    push_cyclic(2, &mut primary);
                    push_cyclic(2, &mut primary);
                }
                other => nonabelian.push(other),
            }
        }
        nonabelian.sort_by_key(|a| (atom_rank(a), a.order()));
        let factors = primary.values().map(Vec::len).max().unwrap_or(0);
        let mut invariant = vec![1usize; factors];
        for (&p, exps) in primary.iter_mut() {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            for (slot, &k) in exps.iter().enumerate() {
                // largest powers go into the largest invariant factors
                invariant[factors - 1 - slot] *= p.pow(k);
            }
        }
        let mut terms = nonabelian;
        terms.extend(invariant.into_iter().map(Atom::Cyclic));
        if terms.is_empty() {
            terms.push(Atom::Cyclic(1));
        }
        GroupSpec { terms }
    }

    /// Builds the group; direct products use lexicographic tuple indexing.
    pub fn realize(&self) -> FiniteGroup {
        let parts: Vec<FiniteGroup> = self.terms.iter().map(Atom::realize).collect();
        if parts.len() == 1 {
            return parts.into_iter().next().unwrap();
        }
        let mut product = parts[0].clone();
        for part in &parts[1..] {
            product = product.direct_product_bounded(part, usize::MAX).expect("spec order was bounded at construction");
        }
        let labels = (0..product.order())
            .map(|mut x| {
                let mut coords = Vec::with_capacity(parts.len());
                for part in parts.iter().rev() {
                    coords.push(part.label(x % part.order()).to_string());
                    x /= part.order();
                }
                coords.reverse();
                format!("({})", coords.join(","))
            })
            .collect();
        let order = product.order();
        FiniteGroup::from_parts(order, product.into_table(), self.to_string(), labels)
    }
}

fn atom_rank(atom: &Atom) -> u8 {
    match atom {
        Atom::Dihedral(_) => 0,
        Atom::Heisenberg(_) => 1,
        Atom::Quaternion(_) => 2,
        Atom::Cyclic(_) => 3,
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, atom) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{atom}")?;
        }
        Ok(())
    }
}

impl FromStr for GroupSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GroupSpec::parse(s)
    }
}
