//! Explicit constructions of complete sets: the basis fan over any field, the
//! worked order-4 example, the extraordinary subgroups through a point, and
//! the two families of extraordinary complete sets of order 4.

use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::squares::{supersquare, Square};
use crate::vector_space::{Point, Subgroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SetKind {
    /// All five members are lines `F_4·u`.
    TypeI,
    /// Exactly one member is a line.
    TypeII,
    Untyped,
}

impl fmt::Display for SetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SetKind::TypeI => "TypeI",
            SetKind::TypeII => "TypeII",
            SetKind::Untyped => "Untyped",
        })
    }
}

/// `d + 1` order-`d` subgroups meeting pairwise in `{0}`.
#[derive(Debug, Clone)]
pub struct CompleteSet {
    pub subgroups: Vec<Subgroup>,
    pub kind: SetKind,
    pub witness: Option<(Point, Point)>,
}

impl CompleteSet {
    pub fn field(&self) -> &FieldSpec {
        self.subgroups[0].field()
    }

    /// Sorted member keys; two sets are the same family iff these agree.
    pub fn family_key(&self) -> Vec<Vec<u32>> {
        let mut keys: Vec<Vec<u32>> = self.subgroups.iter().map(|g| g.keys().to_vec()).collect();
        keys.sort();
        keys
    }

    pub fn same_family(&self, other: &CompleteSet) -> bool {
        self.family_key() == other.family_key()
    }

    pub fn line_count(&self) -> usize {
        self.subgroups.iter().filter(|g| g.is_line()).count()
    }

    /// Checks sizes, pairwise trivial intersections and coverage.
    pub fn validate(&self) -> Result<()> {
        let f = self.field();
        let d = f.order();
        if self.subgroups.len() != d + 1 {
            return Err(invalid(format!("a complete set has {} members, got {}", d + 1, self.subgroups.len())));
        }
        let mut covered = vec![false; d * d];
        for g in &self.subgroups {
            if g.len() != d {
                return Err(invalid(format!("member {g} does not have {d} elements")));
            }
            for &k in &g.keys()[1..] {
                if std::mem::replace(&mut covered[k as usize], true) {
                    return Err(invalid(format!("point {} lies in two members", f.format_point(f.point_at_key(k)))));
                }
            }
        }
        Ok(())
    }
}

fn require_order_4(f: &FieldSpec) -> Result<()> {
    if f.order() == 4 {
        Ok(())
    } else {
        Err(invalid(format!("this construction needs GF(4), got order {}", f.order())))
    }
}

fn require_basis(f: &FieldSpec, v1: Point, v2: Point) -> Result<FieldElement> {
    let delta = f.det(v1, v2)?;
    if delta.is_zero() {
        Err(Error::NotABasis)
    } else {
        Ok(delta)
    }
}

/// `F_d(v1 + λ v2)` for every `λ` in canonical order, then `F_d v2`.
pub fn basis_fan(f: &FieldSpec, v1: Point, v2: Point) -> Result<CompleteSet> {
    require_basis(f, v1, v2)?;
    let mut subgroups: Vec<Subgroup> = f
        .canonical_elements()
        .map(|l| f.span_line(f.point_add(v1, f.scale(l, v2))))
        .collect::<Result<_>>()?;
    subgroups.push(f.span_line(v2)?);
    Ok(CompleteSet { subgroups, kind: SetKind::Untyped, witness: Some((v1, v2)) })
}

/// `Z_2v1+Z_2v2`, its multiples by `m` and `m^2`, `F_4(v1+m v2)`, `F_4(v1+m^2 v2)`.
pub fn example_set_d4(f: &FieldSpec, v1: Point, v2: Point) -> Result<CompleteSet> {
    require_order_4(f)?;
    require_basis(f, v1, v2)?;
    let m = f.primitive();
    let m2 = f.mul(m, m);
    let a1 = f.span_additive(&[v1, v2])?;
    let subgroups = vec![
        a1.scaled(FieldElement::ONE)?,
        a1.scaled(m)?,
        a1.scaled(m2)?,
        f.span_line(f.point_add(v1, f.scale(m, v2)))?,
        f.span_line(f.point_add(v1, f.scale(m2, v2)))?,
    ];
    Ok(CompleteSet { subgroups, kind: SetKind::Untyped, witness: Some((v1, v2)) })
}

/// The three order-4 extraordinary subgroups containing `v`:
/// `F_4 v`, `Z_2 v + Z_2 w`, `Z_2 v + Z_2 (w + m v)`, given `|v w| = 1`.
pub fn extraordinary_through(f: &FieldSpec, v: Point, w: Point) -> Result<Vec<Subgroup>> {
    require_order_4(f)?;
    if v.is_zero() {
        return Err(invalid("v must be nonzero"));
    }
    let delta = f.det(v, w)?;
    if delta != FieldElement::ONE {
        return Err(Error::DeterminantNotOne(f.format_element(delta)));
    }
    let mv = f.scale(f.primitive(), v);
    Ok(vec![f.span_line(v)?, f.span_additive(&[v, w])?, f.span_additive(&[v, f.point_add(w, mv)])?])
}

/// All five lines through a basis; members sorted canonically.
pub fn type_i(f: &FieldSpec, v1: Point, v2: Point) -> Result<CompleteSet> {
    require_order_4(f)?;
    require_basis(f, v1, v2)?;
    let m = f.primitive();
    let m2 = f.mul(m, m);
    let mut subgroups = vec![
        f.span_line(v1)?,
        f.span_line(v2)?,
        f.span_line(f.point_add(v1, f.scale(m, v2)))?,
        f.span_line(f.point_add(v1, f.scale(m2, v2)))?,
        f.span_line(f.point_add(v1, v2))?,
    ];
    subgroups.sort();
    Ok(CompleteSet { subgroups, kind: SetKind::TypeI, witness: Some((v1, v2)) })
}

/// `F_4 v1` followed by the four non-line members (sorted), for `|v1 v2| = 1`.
pub fn type_ii(f: &FieldSpec, v1: Point, v2: Point) -> Result<CompleteSet> {
    require_order_4(f)?;
    let delta = require_basis(f, v1, v2)?;
    if delta != FieldElement::ONE {
        return Err(Error::DeterminantNotOne(f.format_element(delta)));
    }
    let m = f.primitive();
    let m2 = f.mul(m, m);
    let s = |l: FieldElement, v: Point| f.scale(l, v);
    let plus = |a: Point, b: Point| f.point_add(a, b);
    let mut rest = vec![
        f.span_additive(&[v2, plus(v1, s(m, v2))])?,
        f.span_additive(&[s(m, v2), plus(s(m2, v1), s(m2, v2))])?,
        f.span_additive(&[s(m2, v2), plus(s(m, v1), s(m, v2))])?,
        f.span_additive(&[plus(v1, v2), plus(s(m, v1), s(m2, v2))])?,
    ];
    rest.sort();
    let mut subgroups = vec![f.span_line(v1)?];
    subgroups.extend(rest);
    Ok(CompleteSet { subgroups, kind: SetKind::TypeII, witness: Some((v1, v2)) })
}

pub fn complete_set_to_squares(cs: &CompleteSet) -> Result<Vec<Square>> {
    cs.subgroups.iter().map(supersquare).collect()
}
