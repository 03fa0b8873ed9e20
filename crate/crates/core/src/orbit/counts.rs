use serde::Serialize;

use super::frontier::OrbitFrontier;

/// Closed-form ball counts for a necklace of `n` pearls after `k` steps.
/// `None` marks overflow or a formula undefined for this `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaCounts {
    /// `n(n - 2)` pearls of the first packing.
    pub first_packing: Option<u128>,
    /// `n(n² - 2n + 7)` pearls of the second packing.
    pub second_packing: Option<u128>,
    /// `n((n - 1)ᵏ - 1)/(n - 2) + 1` copies in the connected sum.
    pub connected_copies: Option<u128>,
    /// `2n(n - 3)ᵏ` pearls of the shell.
    pub shell_pearls: Option<u128>,
}

pub fn formula_counts(n: u64, k: u32) -> FormulaCounts {
    let n = n as u128;
    let first_packing = n.checked_sub(2).and_then(|m| n.checked_mul(m));
    let second_packing = n
        .checked_mul(n)
        .and_then(|n2| n2.checked_add(7))
        .and_then(|x| x.checked_sub(2 * n))
        .and_then(|x| x.checked_mul(n));
    let connected_copies = match (n.checked_sub(1), n.checked_sub(2)) {
        (Some(m1), Some(m2)) if m2 > 0 => m1
            .checked_pow(k)
            .map(|p| p - 1)
            .and_then(|x| x.checked_mul(n))
            .filter(|x| x % m2 == 0)
            .map(|x| x / m2 + 1),
        _ => None,
    };
    let shell_pearls = n
        .checked_sub(3)
        .and_then(|m| m.checked_pow(k))
        .and_then(|p| p.checked_mul(2 * n));
    FormulaCounts {
        first_packing,
        second_packing,
        connected_copies,
        shell_pearls,
    }
}

/// Enumerated counts next to the closed forms. Nothing is asserted: the
/// closed forms assume a contact pattern that is not spelled out for
/// necklaces with poles and junctions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountReport {
    pub n: u64,
    pub k: u32,
    /// Distinct balls created at depths `0..=k`.
    pub enumerated: Vec<usize>,
    pub formulas: FormulaCounts,
    pub first_packing_agrees: Option<bool>,
    pub second_packing_agrees: Option<bool>,
}

pub fn count_report(f: &OrbitFrontier, n: u64, k: u32) -> CountReport {
    let enumerated: Vec<usize> = f.counts.iter().take(k as usize + 1).copied().collect();
    let formulas = formula_counts(n, k);
    let agree = |depth: usize, v: Option<u128>| Some(*enumerated.get(depth)? as u128 == v?);
    CountReport {
        n,
        k,
        first_packing_agrees: agree(1, formulas.first_packing),
        second_packing_agrees: agree(2, formulas.second_packing),
        enumerated,
        formulas,
    }
}
