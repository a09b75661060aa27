//! Exhaustive enumeration of order-`d` subgroups, extraordinary subgroups and
//! complete sets, plus verifiers that check the structure results by brute
//! force.

mod cover;
mod verify;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::constructions::{CompleteSet, SetKind};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::vector_space::{Point, Subgroup};

pub use cover::ExactCover;
pub use verify::{
    check_sets_contain_line, max_orthogonal_count, verify_extraordinary_through, verify_line_in_every_set,
    verify_max_orthogonal, verify_prime_order_lines, verify_type_dichotomy, VerificationReport,
};

/// Largest order for which all subgroups are listed.
pub const MAX_SUBGROUP_ORDER: usize = 16;
/// Largest order for which complete sets are searched (nonzero points fit a `u64`).
pub const MAX_COVER_ORDER: usize = 8;

fn unsupported(order: usize, reason: &str) -> Error {
    Error::UnsupportedOrder { order, reason: reason.to_string() }
}

/// Every additive subgroup of order `d`, i.e. every `n`-dimensional
/// `Z_p`-subspace of `Z_p^{2n}`, in canonical order.
pub fn all_order_d_subgroups(f: &FieldSpec) -> Result<Vec<Subgroup>> {
    let d = f.order();
    if d > MAX_SUBGROUP_ORDER {
        return Err(unsupported(d, "subgroup enumeration is limited to d <= 16"));
    }
    let p = f.characteristic();
    let n = f.degree() as usize;
    let dim = 2 * n;

    let to_point = |v: &[u32]| -> Point {
        let x = v[..n].iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize);
        let y = v[n..].iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize);
        Point::new(f.element(x).unwrap(), f.element(y).unwrap())
    };

    let mut out = Vec::new();
    for pivots in combinations(dim, n) {
        // free slots: (row, col) with col right of the row pivot and not a pivot column
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| (pc + 1..dim).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let total = (p as u64).pow(free.len() as u32);
        for code in 0..total {
            let mut rows = vec![vec![0u32; dim]; n];
            for (r, &pc) in pivots.iter().enumerate() {
                rows[r][pc] = 1;
            }
            let mut c = code;
            for &(r, col) in &free {
                rows[r][col] = (c % p as u64) as u32;
                c /= p as u64;
            }
            let mut elems = Vec::with_capacity(d);
            for coef in 0..d {
                let mut v = vec![0u32; dim];
                let mut k = coef;
                for row in &rows {
                    let a = (k % p as usize) as u32;
                    k /= p as usize;
                    for (vi, &ri) in v.iter_mut().zip(row) {
                        *vi = (*vi + a * ri) % p;
                    }
                }
                elems.push(to_point(&v));
            }
            out.push(Subgroup::from_closed_set(f, elems));
        }
    }
    out.sort();
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

pub fn all_extraordinary(f: &FieldSpec) -> Result<Vec<Subgroup>> {
    Ok(all_order_d_subgroups(f)?.into_iter().filter(|g| g.is_extraordinary()).collect())
}

/// Classification of a complete set of order 4 by its number of lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SetClass {
    TypeI,
    TypeII,
    /// Not an extraordinary set of order 4.
    NotApplicable,
    /// Extraordinary of order 4 with a line count other than 1 or 5.
    Other { lines: usize },
}

pub fn classify_complete_set(cs: &CompleteSet) -> Result<SetClass> {
    cs.validate()?;
    if cs.field().order() != 4 || !cs.subgroups.iter().all(|g| g.is_extraordinary()) {
        return Ok(SetClass::NotApplicable);
    }
    Ok(match cs.line_count() {
        5 => SetClass::TypeI,
        1 => SetClass::TypeII,
        lines => SetClass::Other { lines },
    })
}

fn candidates(f: &FieldSpec, extraordinary_only: bool) -> Result<Vec<Subgroup>> {
    let d = f.order();
    if d > MAX_COVER_ORDER {
        return Err(unsupported(d, "complete-set search is limited to d <= 8"));
    }
    if extraordinary_only {
        all_extraordinary(f)
    } else {
        all_order_d_subgroups(f)
    }
}

fn kind_of(class: SetClass) -> SetKind {
    match class {
        SetClass::TypeI => SetKind::TypeI,
        SetClass::TypeII => SetKind::TypeII,
        _ => SetKind::Untyped,
    }
}

/// All complete sets, sorted by member keys.
pub fn all_complete_sets(f: &FieldSpec, extraordinary_only: bool, jobs: usize) -> Result<Vec<CompleteSet>> {
    let cands = candidates(f, extraordinary_only)?;
    let cover = ExactCover::new(f, &cands);
    let found = cover.collect(jobs)?;
    found
        .into_iter()
        .map(|idx| {
            let mut cs = CompleteSet {
                subgroups: idx.iter().map(|&i| cands[i as usize].clone()).collect(),
                kind: SetKind::Untyped,
                witness: None,
            };
            cs.kind = kind_of(classify_complete_set(&cs)?);
            Ok(cs)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    Subgroups,
    Extraordinary,
    CompleteSets,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportItem {
    pub members: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub p: u32,
    pub n: u32,
    pub d: usize,
    pub target: Target,
    pub extraordinary_only: bool,
    pub counts: BTreeMap<String, u64>,
    /// SHA-256 of the canonical listing; never includes timings.
    pub digest: String,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub items: Option<Vec<ReportItem>>,
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn keys_line(g: &Subgroup) -> String {
    g.keys().iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")
}

/// Runs one enumeration and summarizes it.
pub fn enumerate(
    f: &FieldSpec,
    target: Target,
    extraordinary_only: bool,
    list_items: bool,
    jobs: usize,
) -> Result<EnumerationReport> {
    let start = Instant::now();
    let mut counts = BTreeMap::new();
    let mut items = list_items.then(Vec::new);
    let digest;
    match target {
        Target::Subgroups | Target::Extraordinary => {
            let all = all_order_d_subgroups(f)?;
            let keep: Vec<&Subgroup> = match target {
                Target::Subgroups if !extraordinary_only => all.iter().collect(),
                _ => all.iter().filter(|g| g.is_extraordinary()).collect(),
            };
            if target == Target::Subgroups {
                counts.insert("subgroups".into(), all.len() as u64);
            }
            counts.insert("extraordinary".into(), all.iter().filter(|g| g.is_extraordinary()).count() as u64);
            counts.insert("lines".into(), all.iter().filter(|g| g.is_line()).count() as u64);
            counts.insert("listed".into(), keep.len() as u64);
            let mut h = Sha256::new();
            for g in &keep {
                h.update(keys_line(g).as_bytes());
                h.update(b"\n");
            }
            digest = hex(&h.finalize());
            if let Some(items) = items.as_mut() {
                for g in &keep {
                    let kind = if g.is_line() { "line" } else if g.is_extraordinary() { "extraordinary" } else { "other" };
                    items.push(ReportItem {
                        members: g.elements().iter().map(|&p| f.format_point(p)).collect(),
                        kind: Some(kind.into()),
                    });
                }
            }
        }
        Target::CompleteSets => {
            let cands = candidates(f, extraordinary_only)?;
            let cover = ExactCover::new(f, &cands);
            let is_line: Vec<bool> = cands.iter().map(|g| g.is_line()).collect();
            let all_extra: Vec<bool> = cands.iter().map(|g| g.is_extraordinary()).collect();
            let lines: Vec<String> = cands.iter().map(keys_line).collect();
            let summary = cover.summarize(jobs, &lines, &is_line)?;
            digest = summary.digest;
            counts.insert("candidates".into(), cands.len() as u64);
            counts.insert("complete_sets".into(), summary.count);
            for (l, c) in &summary.line_histogram {
                counts.insert(format!("with_{l}_lines"), *c);
            }
            if f.order() == 4 && extraordinary_only {
                counts.insert("TypeI".into(), *summary.line_histogram.get(&5).unwrap_or(&0));
                counts.insert("TypeII".into(), *summary.line_histogram.get(&1).unwrap_or(&0));
            }
            if let Some(items) = items.as_mut() {
                for idx in cover.collect(jobs)? {
                    let cs = CompleteSet {
                        subgroups: idx.iter().map(|&i| cands[i as usize].clone()).collect(),
                        kind: SetKind::Untyped,
                        witness: None,
                    };
                    let class = classify_complete_set(&cs)?;
                    let kind = match class {
                        SetClass::NotApplicable => {
                            let extra = idx.iter().all(|&i| all_extra[i as usize]);
                            format!("{} lines{}", cs.line_count(), if extra { ", extraordinary" } else { "" })
                        }
                        SetClass::Other { lines } => format!("{lines} lines"),
                        c => format!("{c:?}"),
                    };
                    items.push(ReportItem {
                        members: cs.subgroups.iter().map(|g| g.to_string()).collect(),
                        kind: Some(kind),
                    });
                }
            }
        }
    }
    Ok(EnumerationReport {
        p: f.characteristic(),
        n: f.degree(),
        d: f.order(),
        target,
        extraordinary_only,
        counts,
        digest,
        elapsed_ms: start.elapsed().as_millis() as u64,
        items,
    })
}
