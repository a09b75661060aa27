use std::fmt;

use serde::Serialize;

use super::{all_complete_sets, all_extraordinary, all_order_d_subgroups, classify_complete_set, SetClass};
use crate::constructions::{extraordinary_through, type_i, type_ii, CompleteSet};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::vector_space::{Point, Subgroup};

/// Outcome of an exhaustive check. Verifiers never stop at the first
/// failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub counterexamples: Vec<String>,
    pub notes: Vec<String>,
    pub out_of_scope: Vec<String>,
}

impl VerificationReport {
    fn new(name: &str) -> Self {
        VerificationReport {
            name: name.to_string(),
            passed: false,
            checked: 0,
            counterexamples: Vec::new(),
            notes: Vec::new(),
            out_of_scope: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.counterexamples.push(what());
        }
    }

    fn finish(mut self) -> Self {
        self.passed = self.counterexamples.is_empty();
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        writeln!(f, "{verdict} {} ({} checks, {} counterexamples)", self.name, self.checked, self.counterexamples.len())?;
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        for o in &self.out_of_scope {
            writeln!(f, "  out of scope: {o}")?;
        }
        for c in &self.counterexamples {
            writeln!(f, "  counterexample: {c}")?;
        }
        Ok(())
    }
}

fn require_order(f: &FieldSpec, d: usize, what: &str) -> Result<()> {
    if f.order() == d {
        Ok(())
    } else {
        Err(Error::UnsupportedOrder { order: f.order(), reason: format!("{what} is specific to d = {d}") })
    }
}

fn describe(cs: &CompleteSet) -> String {
    cs.subgroups.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" | ")
}

fn nonzero_points(f: &FieldSpec) -> impl Iterator<Item = Point> + '_ {
    f.points().filter(|p| !p.is_zero())
}

/// Ordered pairs `(v1, v2)` with `|v1 v2| = 1`.
fn unit_pairs(f: &FieldSpec) -> Vec<(Point, Point)> {
    nonzero_points(f)
        .flat_map(|a| f.points().filter(move |&b| f.det_raw(a, b) == FieldElement::ONE).map(move |b| (a, b)))
        .collect()
}

fn bases(f: &FieldSpec) -> Vec<(Point, Point)> {
    f.points()
        .flat_map(|a| f.points().filter(move |&b| !f.det_raw(a, b).is_zero()).map(move |b| (a, b)))
        .collect()
}

/// Each in-scope set (extraordinary, order 4) must contain a line; other
/// sets are reported as out of scope.
pub fn check_sets_contain_line(sets: &[CompleteSet]) -> VerificationReport {
    let mut r = VerificationReport::new("every extraordinary complete set of order 4 contains a line");
    for cs in sets {
        match classify_complete_set(cs) {
            Err(e) => r.out_of_scope.push(format!("invalid complete set ({e}): {}", describe(cs))),
            Ok(SetClass::NotApplicable) => {
                r.out_of_scope.push(format!("not an extraordinary set of order 4: {}", describe(cs)))
            }
            Ok(_) => r.check(cs.line_count() >= 1, || format!("no line in {}", describe(cs))),
        }
    }
    r.finish()
}

pub fn verify_line_in_every_set(f: &FieldSpec) -> Result<VerificationReport> {
    require_order(f, 4, "the contains-line check")?;
    let sets = all_complete_sets(f, true, 1)?;
    let mut r = check_sets_contain_line(&sets);
    r.notes.push(format!("{} extraordinary complete sets examined", sets.len()));
    Ok(r)
}

/// Both directions of the Type I / Type II dichotomy at order 4.
pub fn verify_type_dichotomy(f: &FieldSpec, jobs: usize) -> Result<VerificationReport> {
    require_order(f, 4, "the Type I / Type II dichotomy")?;
    let mut r = VerificationReport::new("extraordinary complete sets of order 4 are exactly Type I and Type II");
    let sets = all_complete_sets(f, true, jobs)?;
    let e1 = f.parse_point("1,0")?;
    let e2 = f.parse_point("0,1")?;
    let reference_i = type_i(f, e1, e2)?;
    let pairs = unit_pairs(f);
    let all_bases = bases(f);
    let in_sets = |cs: &CompleteSet| sets.iter().any(|s| s.same_family(cs));

    let (mut n1, mut n2) = (0, 0);
    for cs in &sets {
        let class = classify_complete_set(cs);
        match class {
            Ok(SetClass::TypeI) => {
                n1 += 1;
                r.check(cs.same_family(&reference_i), || format!("Type I set not built by type_i: {}", describe(cs)));
            }
            Ok(SetClass::TypeII) => {
                n2 += 1;
                let witness = pairs
                    .iter()
                    .find(|&&(a, b)| type_ii(f, a, b).map(|t| t.same_family(cs)).unwrap_or(false));
                match witness {
                    Some(&(a, b)) => {
                        r.checked += 1;
                        r.notes.push(format!(
                            "Type II set witnessed by v1={} v2={}",
                            f.format_point(a),
                            f.format_point(b)
                        ))
                    }
                    None => r.check(false, || format!("Type II set with no witness: {}", describe(cs))),
                }
            }
            other => r.check(false, || format!("set classified as {other:?}: {}", describe(cs))),
        }
    }
    r.notes.insert(0, format!("{} sets enumerated: {n1} Type I, {n2} Type II", sets.len()));

    for &(a, b) in &all_bases {
        let ok = type_i(f, a, b).is_ok_and(|cs| {
            cs.validate().is_ok() && classify_complete_set(&cs) == Ok(SetClass::TypeI) && in_sets(&cs)
        });
        r.check(ok, || format!("type_i({}, {}) is not an enumerated Type I set", f.format_point(a), f.format_point(b)));
    }
    for &(a, b) in &pairs {
        let built = type_ii(f, a, b);
        let ok = built.as_ref().is_ok_and(|cs| {
            cs.validate().is_ok() && classify_complete_set(cs) == Ok(SetClass::TypeII) && in_sets(cs)
        });
        r.check(ok, || format!("type_ii({}, {}) is not an enumerated Type II set", f.format_point(a), f.format_point(b)));
        if let Ok(cs) = built {
            // any other partner with |v1 w| = 1 gives the same family
            for w in f.det_preimage(a, FieldElement::ONE)?.points() {
                let same = type_ii(f, a, w).is_ok_and(|t| t.same_family(&cs));
                r.check(same, || {
                    format!("type_ii({}, {}) differs from partner {}", f.format_point(a), f.format_point(w), f.format_point(b))
                });
            }
        }
    }
    r.notes.push(format!("{} bases and {} unit-determinant pairs constructed", all_bases.len(), pairs.len()));
    Ok(r.finish())
}

/// The extraordinary subgroups through each nonzero `v` are exactly the three
/// built from a unit partner.
pub fn verify_extraordinary_through(f: &FieldSpec) -> Result<VerificationReport> {
    require_order(f, 4, "the three-subgroups-through-a-point result")?;
    let mut r = VerificationReport::new("each nonzero point lies in exactly the three constructed extraordinary subgroups");
    let ex = all_extraordinary(f)?;
    let m = f.primitive();
    let m2 = f.mul(m, m);
    for v in nonzero_points(f) {
        let mut containing: Vec<Subgroup> = ex.iter().filter(|g| g.contains(v)).cloned().collect();
        containing.sort();
        r.check(containing.len() == 3, || format!("{} lies in {} extraordinary subgroups", f.format_point(v), containing.len()));
        for w in f.det_preimage(v, FieldElement::ONE)?.points() {
            let mut built = extraordinary_through(f, v, w)?;
            built.sort();
            r.check(built == containing, || {
                format!("v={} w={}: constructed {:?} but found {:?}", f.format_point(v), f.format_point(w), built, containing)
            });
            let plus = |l: FieldElement| f.point_add(w, f.scale(l, v));
            let same = f.span_additive(&[v, plus(FieldElement::ONE)])? == f.span_additive(&[v, w])?
                && f.span_additive(&[v, plus(m2)])? == f.span_additive(&[v, plus(m)])?;
            r.check(same, || format!("v={} w={}: the extra choices of lambda give new subgroups", f.format_point(v), f.format_point(w)));
        }
    }
    let d = f.order();
    let incidences = ex.len() * (d - 1);
    r.check(incidences == (d * d - 1) * 3, || format!("incidence count {incidences} != {}", (d * d - 1) * 3));
    r.notes.push(format!("{} extraordinary subgroups, {incidences} point incidences", ex.len()));
    Ok(r.finish())
}

/// Largest family of order-`d` subgroups meeting pairwise in `{0}`.
pub fn max_orthogonal_count(f: &FieldSpec) -> Result<usize> {
    let d = f.order();
    if d > 7 {
        return Err(Error::UnsupportedOrder { order: d, reason: "exhaustive search is limited to d <= 7".into() });
    }
    let subs = all_order_d_subgroups(f)?;
    let masks: Vec<u64> = subs
        .iter()
        .map(|g| g.keys()[1..].iter().fold(0u64, |m, &k| m | 1 << (k - 1)))
        .collect();

    fn grow(masks: &[u64], start: usize, used: u64, size: usize, best: &mut usize, per: usize) {
        *best = (*best).max(size);
        let free = (masks.len() - start).min(64usize.saturating_sub(used.count_ones() as usize) / per);
        if size + free <= *best {
            return;
        }
        for i in start..masks.len() {
            if masks[i] & used == 0 {
                grow(masks, i + 1, used | masks[i], size + 1, best, per);
            }
        }
    }
    let mut best = 0;
    grow(&masks, 0, u64::MAX << (d * d - 1), 0, &mut best, d - 1);
    Ok(best)
}

pub fn verify_max_orthogonal(f: &FieldSpec) -> Result<VerificationReport> {
    let d = f.order();
    let mut r = VerificationReport::new(&format!("the maximum number of mutually orthogonal supersquares is d+1 (d = {d})"));
    let max = max_orthogonal_count(f)?;
    r.check(max == d + 1, || format!("max = {max}, expected {}", d + 1));
    r.check((d + 2) * (d - 1) > d * d - 1, || "d+2 subgroups would fit among the nonzero points".into());
    r.notes.push(format!("max = {max} = d+1"));
    Ok(r.finish())
}

/// Over a prime field every order-`p` subgroup is the line through any of its
/// nonzero members, hence extraordinary.
pub fn verify_prime_order_lines(p: u32) -> Result<VerificationReport> {
    let f = FieldSpec::new(p, 1)?;
    let mut r = VerificationReport::new(&format!("every order-p subgroup of F_p x F_p is an extraordinary line (p = {p})"));
    let subs = all_order_d_subgroups(&f)?;
    for g in &subs {
        r.check(g.is_extraordinary(), || format!("{g} is not extraordinary"));
        for &v in g.nonzero_elements() {
            r.check(f.span_line(v)? == *g, || format!("{g} is not the line through {}", f.format_point(v)));
        }
    }
    r.notes.push(format!("p = {p}: {} subgroups", subs.len()));
    Ok(r.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(d: usize) -> FieldSpec {
        FieldSpec::with_order(d).unwrap()
    }

    #[test]
    fn all_verifiers_pass() {
        let f = gf(4);
        for r in [
            verify_line_in_every_set(&f).unwrap(),
            verify_type_dichotomy(&f, 2).unwrap(),
            verify_extraordinary_through(&f).unwrap(),
            verify_max_orthogonal(&f).unwrap(),
        ] {
            assert!(r.passed, "{r}");
        }
        for p in [2, 3, 5] {
            assert!(verify_prime_order_lines(p).unwrap().passed);
        }
    }

    #[test]
    fn max_counts() {
        assert_eq!(max_orthogonal_count(&gf(2)).unwrap(), 3);
        assert_eq!(max_orthogonal_count(&gf(3)).unwrap(), 4);
        assert_eq!(max_orthogonal_count(&gf(4)).unwrap(), 5);
        assert!(max_orthogonal_count(&gf(8)).is_err());
    }

    #[test]
    fn wrong_order_is_an_error() {
        assert!(verify_line_in_every_set(&gf(3)).is_err());
        assert!(verify_type_dichotomy(&gf(8), 1).is_err());
    }

    #[test]
    fn non_extraordinary_sets_are_out_of_scope() {
        let f = gf(4);
        let all = all_complete_sets(&f, false, 1).unwrap();
        let lineless: Vec<CompleteSet> = all.into_iter().filter(|c| c.line_count() == 0).collect();
        assert!(!lineless.is_empty());
        let r = check_sets_contain_line(&lineless);
        assert!(r.passed);
        assert_eq!(r.checked, 0);
        assert_eq!(r.out_of_scope.len(), lineless.len());
    }
}
