use std::collections::BTreeMap;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{invalid, Result};
use crate::field::FieldSpec;
use crate::vector_space::Subgroup;

/// Exact cover of the nonzero points by candidate subgroups, one bit per
/// nonzero point.
pub struct ExactCover {
    masks: Vec<u64>,
    by_bit: Vec<Vec<u32>>,
    full: u64,
}

pub(crate) struct CoverSummary {
    pub count: u64,
    pub line_histogram: BTreeMap<usize, u64>,
    pub digest: String,
}

impl ExactCover {
    /// `candidates` must be sorted; solutions are reported as sorted index lists.
    pub fn new(f: &FieldSpec, candidates: &[Subgroup]) -> Self {
        let d = f.order();
        let bits = d * d - 1;
        assert!(bits <= 64, "too many points for a u64 mask");
        let mut by_bit = vec![Vec::new(); bits];
        let masks = candidates
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let mut m = 0u64;
                for &k in &g.keys()[1..] {
                    m |= 1 << (k - 1);
                    by_bit[k as usize - 1].push(i as u32);
                }
                m
            })
            .collect();
        let full = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
        ExactCover { masks, by_bit, full }
    }

    fn search(&self, covered: u64, chosen: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
        if covered == self.full {
            visit(chosen);
            return;
        }
        let bit = (!covered & self.full).trailing_zeros() as usize;
        for &c in &self.by_bit[bit] {
            let m = self.masks[c as usize];
            if m & covered == 0 {
                chosen.push(c);
                self.search(covered | m, chosen, visit);
                chosen.pop();
            }
        }
    }

    /// Searches each top-level branch on a pool of `jobs` threads; results
    /// come back in branch order.
    fn run<R, I, V>(&self, jobs: usize, init: I, visit: V) -> Result<Vec<R>>
    where
        R: Send,
        I: Fn() -> R + Sync,
        V: Fn(&mut R, &[u32]) + Sync,
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| invalid(format!("cannot start worker pool: {e}")))?;
        let roots: &[u32] = self.by_bit.first().map(|v| v.as_slice()).unwrap_or(&[]);
        Ok(pool.install(|| {
            roots
                .par_iter()
                .map(|&c| {
                    let mut acc = init();
                    let mut chosen = vec![c];
                    self.search(self.masks[c as usize], &mut chosen, &mut |s: &[u32]| {
                        let mut sorted = s.to_vec();
                        sorted.sort_unstable();
                        visit(&mut acc, &sorted)
                    });
                    acc
                })
                .collect()
        }))
    }

    pub fn collect(&self, jobs: usize) -> Result<Vec<Vec<u32>>> {
        let parts = self.run(jobs, Vec::new, |acc: &mut Vec<Vec<u32>>, s| acc.push(s.to_vec()))?;
        let mut all: Vec<Vec<u32>> = parts.into_iter().flatten().collect();
        all.sort();
        Ok(all)
    }

    pub fn count(&self, jobs: usize) -> Result<u64> {
        Ok(self.run(jobs, || 0u64, |n, _| *n += 1)?.into_iter().sum())
    }

    /// Counts, line histogram and digest; `lines[i]` is the canonical text of
    /// candidate `i`. The digest hashes each branch's listing, then the
    /// sequence of branch digests.
    pub(crate) fn summarize(&self, jobs: usize, lines: &[String], is_line: &[bool]) -> Result<CoverSummary> {
        struct Acc {
            count: u64,
            hist: BTreeMap<usize, u64>,
            hash: Sha256,
        }
        let parts = self.run(
            jobs,
            || Acc { count: 0, hist: BTreeMap::new(), hash: Sha256::new() },
            |acc, s| {
                acc.count += 1;
                *acc.hist.entry(s.iter().filter(|&&i| is_line[i as usize]).count()).or_default() += 1;
                for (j, &i) in s.iter().enumerate() {
                    if j > 0 {
                        acc.hash.update(b";");
                    }
                    acc.hash.update(lines[i as usize].as_bytes());
                }
                acc.hash.update(b"\n");
            },
        )?;
        let mut top = Sha256::new();
        let mut count = 0;
        let mut line_histogram = BTreeMap::new();
        for acc in parts {
            count += acc.count;
            for (k, v) in acc.hist {
                *line_histogram.entry(k).or_default() += v;
            }
            top.update(acc.hash.finalize());
        }
        let digest = top.finalize().iter().map(|b| format!("{b:02x}")).collect();
        Ok(CoverSummary { count, line_histogram, digest })
    }
}
