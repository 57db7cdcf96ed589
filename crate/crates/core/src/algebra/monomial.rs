use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A Laurent monomial: variable name to nonzero integer exponent.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: BTreeMap<String, i64>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(name: &str) -> Self {
        Self::var_pow(name, 1)
    }

    pub fn var_pow(name: &str, exp: i64) -> Self {
        let mut exps = BTreeMap::new();
        if exp != 0 {
            exps.insert(name.to_string(), exp);
        }
        Self { exps }
    }

    pub fn from_exponents<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, i64)>,
        S: Into<String>,
    {
        let mut m = Self::one();
        for (name, e) in pairs {
            m.bump(name.into(), e);
        }
        m
    }

    fn bump(&mut self, name: String, by: i64) {
        if by == 0 {
            return;
        }
        let entry = self.exps.entry(name);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += by;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(by);
            }
        }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Exponent of `name` (zero when absent).
    pub fn exponent(&self, name: &str) -> i64 {
        self.exps.get(name).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i64)> {
        self.exps.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.exps.keys().map(String::as_str)
    }

    pub fn total_degree(&self) -> i64 {
        self.exps.values().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (k, &v) in &other.exps {
            out.bump(k.clone(), v);
        }
        out
    }

    pub fn pow(&self, k: i64) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: self.exps.iter().map(|(n, &e)| (n.clone(), e * k)).collect(),
        }
    }

    pub fn inverse(&self) -> Monomial {
        self.pow(-1)
    }

    /// `self / name^1`; used by the Leibniz expansion.
    pub fn drop_one(&self, name: &str) -> Monomial {
        let mut out = self.clone();
        out.bump(name.to_string(), -1);
        out
    }

    /// Graded lexicographic comparison, variables ranked by `order` and then
    /// alphabetically. `Less` means `self` is printed first.
    pub fn canonical_cmp(&self, other: &Monomial, order: &[String]) -> Ordering {
        other
            .total_degree()
            .cmp(&self.total_degree())
            .then_with(|| {
                for name in ranked_variables(self, other, order) {
                    let c = other.exponent(&name).cmp(&self.exponent(&name));
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            })
    }

    pub fn format_with(&self, order: &[String]) -> String {
        let names = ranked_variables(self, &Monomial::one(), order);
        let parts: Vec<String> = names
            .iter()
            .map(|n| match self.exponent(n) {
                1 => n.clone(),
                e => format!("{n}^{e}"),
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

fn ranked_variables(a: &Monomial, b: &Monomial, order: &[String]) -> Vec<String> {
    let mut names: Vec<String> = order
        .iter()
        .filter(|n| a.exps.contains_key(*n) || b.exps.contains_key(*n))
        .cloned()
        .collect();
    let mut rest: Vec<String> = a
        .exps
        .keys()
        .chain(b.exps.keys())
        .filter(|n| !order.contains(n))
        .cloned()
        .collect();
    rest.sort();
    rest.dedup();
    names.extend(rest);
    names
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_exponents_are_dropped() {
        let m = Monomial::var("u").mul(&Monomial::var_pow("u", -1));
        assert!(m.is_one());
        assert_eq!(m, Monomial::one());
        assert_eq!(Monomial::var_pow("x", 0), Monomial::one());
    }

    #[test]
    fn grlex_prefers_higher_degree_then_declared_order() {
        let order = vec!["u".to_string(), "b".to_string()];
        let u2 = Monomial::var_pow("u", 2);
        let ub = Monomial::from_exponents([("u", 1), ("b", 1)]);
        let b = Monomial::var("b");
        assert_eq!(u2.canonical_cmp(&ub, &order), Ordering::Less);
        assert_eq!(ub.canonical_cmp(&b, &order), Ordering::Less);
        assert_eq!(ub.format_with(&order), "u*b");
        assert_eq!(Monomial::from_exponents([("u", -3), ("z", 6)]).to_string(), "u^-3*z^6");
    }
}
