//! Sets of halfspaces as fixed-width bitsets.

pub use fixedbitset::FixedBitSet as HSet;

/// `{h* : h ∈ set}`.
pub fn star_set(set: &HSet) -> HSet {
    let mut out = HSet::with_capacity(set.len());
    for h in set.ones() {
        out.insert(h ^ 1);
    }
    out
}

pub fn union(a: &HSet, b: &HSet) -> HSet {
    let mut out = a.clone();
    out.union_with(b);
    out
}

pub fn intersection(a: &HSet, b: &HSet) -> HSet {
    let mut out = a.clone();
    out.intersect_with(b);
    out
}

pub fn difference(a: &HSet, b: &HSet) -> HSet {
    let mut out = a.clone();
    out.difference_with(b);
    out
}

/// Set with a single member, sized for `n` halfspaces.
pub fn singleton(n: usize, h: usize) -> HSet {
    let mut s = HSet::with_capacity(n);
    s.insert(h);
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_swaps_sides() {
        let s: HSet = {
            let mut s = HSet::with_capacity(6);
            s.insert(0);
            s.insert(3);
            s
        };
        assert_eq!(star_set(&s).ones().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(star_set(&star_set(&s)), s);
    }
}
