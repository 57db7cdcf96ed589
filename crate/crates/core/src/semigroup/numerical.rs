/// Submonoid of the nonnegative integers spanned by finitely many positive
/// generators (zero is always a member).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
}

impl NumericalSemigroup {
    /// Zero entries are dropped; they generate nothing.
    pub fn new<I: IntoIterator<Item = u64>>(gens: I) -> Self {
        let mut generators: Vec<u64> = gens.into_iter().filter(|&g| g > 0).collect();
        generators.sort_unstable();
        generators.dedup();
        Self { generators }
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// `table[k]` tells whether `k` is a member, for `k = 0..=limit`.
    pub fn members_up_to(&self, limit: u64) -> Vec<bool> {
        let n = limit as usize;
        let mut table = vec![false; n + 1];
        table[0] = true;
        for k in 1..=n {
            table[k] = self
                .generators
                .iter()
                .any(|&g| (g as usize) <= k && table[k - g as usize]);
        }
        table
    }

    pub fn contains(&self, target: u64) -> bool {
        self.members_up_to(target)[target as usize]
    }

    pub fn gaps_up_to(&self, limit: u64) -> Vec<u64> {
        self.members_up_to(limit)
            .into_iter()
            .enumerate()
            .filter(|(_, m)| !m)
            .map(|(k, _)| k as u64)
            .collect()
    }
}
