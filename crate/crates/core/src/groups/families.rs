use super::FiniteGroup;

pub fn trivial() -> FiniteGroup {
    cyclic(1)
}

/// `C_n` on residues mod `n`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group needs n >= 1");
    let table = (0..n).flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32)).collect();
    let labels = (0..n).map(|i| i.to_string()).collect();
    FiniteGroup::from_parts(n, table, format!("C{n}"), labels)
}

/// Generalized quaternion group of the given order (`2^k`, `k >= 3`).
///
/// Presentation `<a, b | a^(2m) = 1, b^2 = a^m, b a b^-1 = a^-1>` with
/// `order = 4m`. Element `a^i b^j` has index `j * 2m + i`.
pub fn quaternion(order: usize) -> FiniteGroup {
    assert!(order >= 8 && order.is_power_of_two(), "quaternion order must be 2^k, k >= 3");
    let rot = order / 2;
    let half = rot / 2;
    let index = |i: usize, j: usize| j * rot + i % rot;
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (i, j) = (x % rot, x / rot);
        for y in 0..order {
            let (k, l) = (y % rot, y / rot);
            let prod = match (j, l) {
                (0, _) => index(i + k, l),
                // a^i b a^k = a^(i-k) b
                (1, 0) => index(i + rot - k, 1),
                // a^i b a^k b = a^(i-k) b^2 = a^(i-k+m)
                _ => index(i + rot - k + half, 0),
            };
            table.push(prod as u32);
        }
    }
    let labels = (0..order).map(|x| word("a", x % rot, x / rot == 1, "b")).collect();
    FiniteGroup::from_parts(order, table, format!("Q{order}"), labels)
}

/// Dihedral group of the given order (`2^k`, `k >= 2`): symmetries of a
/// regular `order/2`-gon. Element `r^i s^j` has index `j * (order/2) + i`.
pub fn dihedral(order: usize) -> FiniteGroup {
    assert!(order >= 4 && order.is_power_of_two(), "dihedral order must be 2^k, k >= 2");
    let rot = order / 2;
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (i, j) = (x % rot, x / rot);
        for y in 0..order {
            let (k, l) = (y % rot, y / rot);
            // s r^k = r^-k s
            let r = if j == 0 { i + k } else { i + rot - k };
            table.push(((j ^ l) * rot + r % rot) as u32);
        }
    }
    let labels = (0..order).map(|x| word("r", x % rot, x / rot == 1, "s")).collect();
    FiniteGroup::from_parts(order, table, format!("D{order}"), labels)
}

/// Upper unitriangular 3x3 matrices over `Z/p`. The matrix with entries
/// `a` (1,2), `b` (2,3), `c` (1,3) has index `a p^2 + b p + c`.
pub fn heisenberg(p: usize) -> FiniteGroup {
    assert!(super::is_prime(p), "heisenberg group needs a prime");
    let order = p * p * p;
    let decode = |x: usize| (x / (p * p), (x / p) % p, x % p);
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (a, b, c) = decode(x);
        for y in 0..order {
            let (a2, b2, c2) = decode(y);
            let prod = ((a + a2) % p) * p * p + ((b + b2) % p) * p + (c + c2 + a * b2) % p;
            table.push(prod as u32);
        }
    }
    let labels = (0..order)
        .map(|x| {
            let (a, b, c) = decode(x);
            format!("[{a},{b},{c}]")
        })
        .collect();
    FiniteGroup::from_parts(order, table, format!("H{p}"), labels)
}

fn word(gen: &str, power: usize, flip: bool, other: &str) -> String {
    match (power, flip) {
        (0, false) => "e".to_string(),
        (0, true) => other.to_string(),
        (1, false) => gen.to_string(),
        (1, true) => format!("{gen}{other}"),
        (k, false) => format!("{gen}^{k}"),
        (k, true) => format!("{gen}^{k}{other}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Validation;

    fn census(g: &FiniteGroup, order: usize) -> usize {
        g.element_orders().into_iter().filter(|&o| o == order).count()
    }

    #[test]
    fn constructed_tables_are_groups() {
        for g in [
            cyclic(1),
            cyclic(12),
            quaternion(8),
            quaternion(16),
            dihedral(4),
            dihedral(8),
            dihedral(16),
            heisenberg(3),
        ] {
            g.validate().unwrap_or_else(|e| panic!("{}: {e}", g.name()));
            let rows = g.rows();
            FiniteGroup::from_cayley_table_with(&rows, Validation::Full, 4096).unwrap();
        }
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q8 = quaternion(8);
        assert_eq!(census(&q8, 2), 1);
        assert_eq!(census(&q8, 4), 6);
        assert!(!q8.is_abelian());
        assert!(q8.is_nilpotent());
        let q16 = quaternion(16);
        assert_eq!(census(&q16, 2), 1);
        assert_eq!(census(&q16, 8), 4);
        assert_eq!(census(&q16, 4), 10);
    }

    #[test]
    fn dihedral_orders() {
        let d8 = dihedral(8);
        assert_eq!(d8.order_multiset(), vec![1, 2, 2, 2, 2, 2, 4, 4]);
        assert!(!d8.is_abelian());
        assert!(d8.is_nilpotent());
        assert!(dihedral(4).is_abelian());
    }

    #[test]
    fn heisenberg_has_exponent_p() {
        let h = heisenberg(3);
        assert_eq!(h.order(), 27);
        assert_eq!(census(&h, 3), 26);
        assert!(!h.is_abelian());
        for x in 1..27 {
            assert_eq!(h.cyclic_subgroup(x).len(), 3);
        }
        let h5 = heisenberg(5);
        assert_eq!(census(&h5, 5), 124);
    }

    #[test]
    fn labels() {
        assert_eq!(quaternion(8).label(0), "e");
        assert_eq!(quaternion(8).label(5), "ab");
        assert_eq!(dihedral(8).label(6), "r^2s");
        assert_eq!(heisenberg(3).label(5), "[0,1,2]");
    }
}
