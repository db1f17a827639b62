use fixedbitset::FixedBitSet;

/// Exact minimum set cover by branch and bound.
///
/// Returns the lexicographically least sorted index list among all
/// minimum-cardinality subfamilies covering `universe`, or `None` when the
/// whole family does not cover it.
pub fn min_set_cover(universe: &FixedBitSet, family: &[FixedBitSet]) -> Option<Vec<usize>> {
    let mut all = FixedBitSet::with_capacity(universe.len());
    family.iter().for_each(|s| all.union_with(s));
    if !universe.is_subset(&all) {
        return None;
    }
    if universe.is_clear() {
        return Some(Vec::new());
    }
    let best = Search { family, budget: family.len() + 1 }.min_size(universe.clone(), 0);

    // Fix members one at a time, smallest index first, keeping an optimal
    // completion feasible.
    let mut chosen = Vec::with_capacity(best);
    let mut uncovered = universe.clone();
    let mut start = 0;
    while chosen.len() < best {
        let remaining = best - chosen.len() - 1;
        let pick = (start..family.len())
            .find(|&i| {
                let mut rest = uncovered.clone();
                rest.difference_with(&family[i]);
                Search { family, budget: remaining }.feasible(&rest, i + 1)
            })
            .expect("an optimal cover exists");
        uncovered.difference_with(&family[pick]);
        chosen.push(pick);
        start = pick + 1;
    }
    Some(chosen)
}

struct Search<'a> {
    family: &'a [FixedBitSet],
    budget: usize,
}

impl Search<'_> {
    fn lower_bound(&self, uncovered: &FixedBitSet, from: usize) -> usize {
        let need = uncovered.count_ones(..);
        if need == 0 {
            return 0;
        }
        let widest = self.family[from..].iter().map(|s| s.intersection_count(uncovered)).max().unwrap_or(0);
        if widest == 0 {
            usize::MAX
        } else {
            need.div_ceil(widest)
        }
    }

    /// Smallest number of sets covering `uncovered`, searching below the
    /// current budget (which shrinks as better covers are found).
    fn min_size(&mut self, uncovered: FixedBitSet, used: usize) -> usize {
        self.branch(&uncovered, used);
        self.budget
    }

    fn branch(&mut self, uncovered: &FixedBitSet, used: usize) {
        if uncovered.is_clear() {
            self.budget = self.budget.min(used);
            return;
        }
        let lb = self.lower_bound(uncovered, 0);
        if lb == usize::MAX || used + lb >= self.budget {
            return;
        }
        for i in self.candidates(uncovered, 0) {
            let mut rest = uncovered.clone();
            rest.difference_with(&self.family[i]);
            self.branch(&rest, used + 1);
        }
    }

    /// Can `uncovered` be covered by at most `budget` sets with index `>= from`?
    fn feasible(&self, uncovered: &FixedBitSet, from: usize) -> bool {
        if uncovered.is_clear() {
            return true;
        }
        if self.budget == 0 {
            return false;
        }
        let lb = self.lower_bound(uncovered, from);
        if lb == usize::MAX || lb > self.budget {
            return false;
        }
        self.candidates(uncovered, from).into_iter().any(|i| {
            let mut rest = uncovered.clone();
            rest.difference_with(&self.family[i]);
            Search { family: self.family, budget: self.budget - 1 }.feasible(&rest, from)
        })
    }

    /// Sets (index `>= from`) containing the uncovered element with the
    /// fewest such sets; every cover must use one of them.
    fn candidates(&self, uncovered: &FixedBitSet, from: usize) -> Vec<usize> {
        let mut best: Option<Vec<usize>> = None;
        for e in uncovered.ones() {
            let holders: Vec<usize> = (from..self.family.len()).filter(|&i| self.family[i].contains(e)).collect();
            if best.as_ref().is_none_or(|b| holders.len() < b.len()) {
                let done = holders.len() <= 1;
                best = Some(holders);
                if done {
                    break;
                }
            }
        }
        best.unwrap_or_default()
    }
}
