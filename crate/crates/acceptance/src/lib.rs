//! Fixtures shared by the acceptance target.

use eqm_core::{CountTable, QuotaSeq};

/// Every valid tuple for a society of `n`: distinct interior quotas in
/// `1..=n` followed by a single terminal, `0` or `n + 1`.
pub fn valid_tuples(n: u32) -> Vec<QuotaSeq> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    let mut used = vec![false; n as usize + 1];
    grow(n, &mut prefix, &mut used, &mut out);
    out
}

fn grow(n: u32, prefix: &mut Vec<u32>, used: &mut [bool], out: &mut Vec<QuotaSeq>) {
    for terminal in [0, n + 1] {
        let mut q = prefix.clone();
        q.push(terminal);
        out.push(QuotaSeq::new(n, q).unwrap());
    }
    for v in 1..=n {
        if !used[v as usize] {
            used[v as usize] = true;
            prefix.push(v);
            grow(n, prefix, used, out);
            prefix.pop();
            used[v as usize] = false;
        }
    }
}

/// Table with `a` and `b` exchanged on every profile's mirror image.
pub fn mirrored(t: &CountTable) -> CountTable {
    CountTable::from_fn(t.n(), |p| t.get(p.swapped()).unwrap().swap()).unwrap()
}

pub fn sorted_signatures<'a>(tables: impl IntoIterator<Item = &'a CountTable>) -> Vec<String> {
    let mut sigs: Vec<String> = tables.into_iter().map(|t| t.signature()).collect();
    sigs.sort();
    sigs
}
