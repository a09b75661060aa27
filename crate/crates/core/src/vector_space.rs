//! The plane `F_d × F_d`: points, the determinant form, order-`d` subgroups
//! and the extraordinary predicate.
//!
//! Points are ordered canonically by `(rank x, rank y)`. The canonical key of a
//! point, `rank(x) * d + rank(y)`, doubles as its cell index in a square.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{invalid, Error, Result};
use crate::field::{FieldElement, FieldSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Point {
    pub x: FieldElement,
    pub y: FieldElement,
}

impl Point {
    pub const ZERO: Point = Point { x: FieldElement::ZERO, y: FieldElement::ZERO };

    pub fn new(x: FieldElement, y: FieldElement) -> Self {
        Point { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl FieldSpec {
    pub fn contains_point(&self, v: Point) -> bool {
        self.contains(v.x) && self.contains(v.y)
    }

    fn check_point(&self, v: Point) -> Result<()> {
        if self.contains_point(v) {
            Ok(())
        } else {
            Err(invalid(format!("point {v:?} does not belong to {self:?}")))
        }
    }

    #[inline]
    pub fn point_add(&self, a: Point, b: Point) -> Point {
        Point::new(self.add(a.x, b.x), self.add(a.y, b.y))
    }

    #[inline]
    pub fn point_sub(&self, a: Point, b: Point) -> Point {
        Point::new(self.sub(a.x, b.x), self.sub(a.y, b.y))
    }

    #[inline]
    pub fn scale(&self, lambda: FieldElement, v: Point) -> Point {
        Point::new(self.mul(lambda, v.x), self.mul(lambda, v.y))
    }

    #[inline]
    pub(crate) fn det_raw(&self, a: Point, b: Point) -> FieldElement {
        self.sub(self.mul(a.x, b.y), self.mul(b.x, a.y))
    }

    /// `|v1 v2| = x1·y2 − x2·y1`.
    pub fn det(&self, v1: Point, v2: Point) -> Result<FieldElement> {
        self.check_point(v1)?;
        self.check_point(v2)?;
        Ok(self.det_raw(v1, v2))
    }

    /// Symplectic pairing `tr |v1 v2|`; zero means the pair commutes.
    #[inline]
    pub fn trace_det(&self, v1: Point, v2: Point) -> FieldElement {
        self.trace(self.det_raw(v1, v2))
    }

    pub fn is_basis(&self, v1: Point, v2: Point) -> Result<bool> {
        Ok(!self.det(v1, v2)?.is_zero())
    }

    pub fn point_key(&self, v: Point) -> u32 {
        (self.rank(v.x) * self.order() + self.rank(v.y)) as u32
    }

    pub fn point_at_key(&self, key: u32) -> Point {
        let d = self.order();
        let k = key as usize;
        Point::new(self.element_at_rank(k / d), self.element_at_rank(k % d))
    }

    pub fn cmp_points(&self, a: Point, b: Point) -> Ordering {
        self.point_key(a).cmp(&self.point_key(b))
    }

    /// Every point of the plane in canonical order.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..(self.order() * self.order()) as u32).map(move |k| self.point_at_key(k))
    }

    pub fn format_point(&self, v: Point) -> String {
        format!("({},{})", self.format_element(v.x), self.format_element(v.y))
    }

    /// Parses `x,y` (optionally parenthesized) in element syntax.
    pub fn parse_point(&self, s: &str) -> Result<Point> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = t
            .split_once(',')
            .ok_or_else(|| invalid(format!("cannot parse point '{s}' (expected x,y)")))?;
        Ok(Point::new(self.parse_element(a)?, self.parse_element(b)?))
    }

    /// The line `F_d · v`.
    pub fn span_line(&self, v: Point) -> Result<Subgroup> {
        self.check_point(v)?;
        if v.is_zero() {
            return Err(invalid("cannot span a line from the zero vector"));
        }
        let elements: Vec<Point> = self.elements().map(|l| self.scale(l, v)).collect();
        Ok(Subgroup::from_closed_set(self, elements))
    }

    /// The additive closure (`Z_p`-span) of `gens`.
    pub fn span_additive(&self, gens: &[Point]) -> Result<Subgroup> {
        if gens.is_empty() {
            return Err(invalid("span_additive needs at least one generator"));
        }
        for &g in gens {
            self.check_point(g)?;
        }
        let d = self.order();
        let mut seen = vec![false; d * d];
        let mut set = vec![Point::ZERO];
        seen[0] = true;
        for &g in gens {
            let base = set.clone();
            let mut multiple = g;
            while !multiple.is_zero() {
                for &a in &base {
                    let s = self.point_add(a, multiple);
                    let k = self.point_key(s) as usize;
                    if !seen[k] {
                        seen[k] = true;
                        set.push(s);
                    }
                }
                multiple = self.point_add(multiple, g);
            }
        }
        Ok(Subgroup::from_closed_set(self, set))
    }

    /// Solutions of `|v1 w| = x`, as `base + F_d·v1`.
    ///
    /// The companion `v2` is the first point in canonical order forming a
    /// basis with `v1`; the base is `δ⁻¹·x·v2` with `δ = |v1 v2|`.
    pub fn det_preimage(&self, v1: Point, x: FieldElement) -> Result<DetPreimage> {
        self.check_point(v1)?;
        if !self.contains(x) {
            return Err(invalid("target value outside the field"));
        }
        if v1.is_zero() {
            return Err(invalid("det_preimage needs a nonzero vector"));
        }
        let v2 = self
            .points()
            .find(|&w| !self.det_raw(v1, w).is_zero())
            .expect("a nonzero vector always extends to a basis");
        let base = self.unique_w_on_line(v1, v2, x)?;
        Ok(DetPreimage { v1, base, line: self.span_line(v1)? })
    }

    /// The unique `w ∈ F_d·v2` with `|v1 w| = x`, namely `δ⁻¹·x·v2`.
    pub fn unique_w_on_line(&self, v1: Point, v2: Point, x: FieldElement) -> Result<Point> {
        let delta = self.det(v1, v2)?;
        if delta.is_zero() {
            return Err(Error::NotABasis);
        }
        Ok(self.scale(self.mul(self.inv(delta)?, x), v2))
    }

    /// First `w` in canonical order with `|v w| = 1`.
    pub fn find_unit_partner(&self, v: Point) -> Result<Point> {
        self.check_point(v)?;
        if v.is_zero() {
            return Err(invalid("the zero vector has no unit partner"));
        }
        Ok(self
            .points()
            .find(|&w| self.det_raw(v, w) == FieldElement::ONE)
            .expect("nonzero vectors always have a unit partner"))
    }
}

/// Solution set of a determinant equation: `base + line`.
#[derive(Debug, Clone)]
pub struct DetPreimage {
    pub v1: Point,
    pub base: Point,
    pub line: Subgroup,
}

impl DetPreimage {
    pub fn points(&self) -> Vec<Point> {
        let f = self.line.field();
        let mut pts: Vec<Point> = self.line.elements().iter().map(|&l| f.point_add(self.base, l)).collect();
        pts.sort_by_key(|&p| f.point_key(p));
        pts
    }

    pub fn contains(&self, w: Point) -> bool {
        let f = self.line.field();
        self.line.contains(f.point_sub(w, self.base))
    }
}

/// A finite additive subgroup of `F_d × F_d` in canonical form.
///
/// Equality, hashing and ordering use the sorted canonical keys only.
#[derive(Clone)]
pub struct Subgroup {
    field: FieldSpec,
    keys: Vec<u32>,
    elements: Vec<Point>,
    generators: Vec<Point>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.keys == other.keys
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.keys.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.keys.cmp(&other.keys)
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self.elements.iter().map(|&p| self.field.format_point(p)).collect();
        write!(f, "{{{}}}", pts.join(", "))
    }
}

impl Subgroup {
    /// `set` must already be closed under addition and duplicate-free.
    pub(crate) fn from_closed_set(field: &FieldSpec, mut set: Vec<Point>) -> Self {
        set.sort_by_key(|&p| field.point_key(p));
        set.dedup();
        let keys: Vec<u32> = set.iter().map(|&p| field.point_key(p)).collect();
        let generators = greedy_basis(field, &set);
        Subgroup { field: field.clone(), keys, elements: set, generators }
    }

    /// Validates that `points` form an additive subgroup.
    pub fn from_elements(field: &FieldSpec, points: &[Point]) -> Result<Self> {
        for &p in points {
            field.check_point(p)?;
        }
        let d = field.order();
        let mut member = vec![false; d * d];
        for &p in points {
            let k = field.point_key(p) as usize;
            if member[k] {
                return Err(invalid(format!("duplicate element {}", field.format_point(p))));
            }
            member[k] = true;
        }
        if !member[0] {
            return Err(invalid("a subgroup must contain (0,0)"));
        }
        for &a in points {
            for &b in points {
                if !member[field.point_key(field.point_add(a, b)) as usize] {
                    return Err(invalid("set is not closed under addition"));
                }
            }
        }
        Ok(Self::from_closed_set(field, points.to_vec()))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn elements(&self) -> &[Point] {
        &self.elements
    }

    pub fn nonzero_elements(&self) -> &[Point] {
        &self.elements[1..]
    }

    /// A minimal `Z_p`-generating set, chosen greedily in canonical order.
    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    /// Sorted canonical keys (the subgroup's identity).
    pub fn keys(&self) -> &[u32] {
        &self.keys
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, v: Point) -> bool {
        self.field.contains_point(v) && self.keys.binary_search(&self.field.point_key(v)).is_ok()
    }

    /// True iff the subgroup is contained in some line `F_d · v`.
    pub fn is_in_line(&self) -> bool {
        match self.elements.get(1) {
            None => true,
            Some(&g) => {
                let f = &self.field;
                self.elements.iter().all(|&h| f.det_raw(g, h).is_zero())
            }
        }
    }

    /// True iff the subgroup equals `F_d · v` for some `v`.
    pub fn is_line(&self) -> bool {
        self.len() == self.field.order() && self.is_in_line()
    }

    /// `tr |g1 g2| = 0` for all members; checked on generator pairs since the
    /// pairing is bi-additive.
    pub fn is_extraordinary(&self) -> bool {
        let f = &self.field;
        let g = &self.generators;
        g.iter()
            .enumerate()
            .all(|(i, &a)| g[i + 1..].iter().all(|&b| f.trace_det(a, b).is_zero()))
    }

    pub fn meets_trivially(&self, other: &Subgroup) -> bool {
        let (mut i, mut j) = (1, 1);
        while i < self.keys.len() && j < other.keys.len() {
            match self.keys[i].cmp(&other.keys[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return false,
            }
        }
        true
    }

    /// `λ · G`.
    pub fn scaled(&self, lambda: FieldElement) -> Result<Subgroup> {
        if lambda.is_zero() {
            return Err(invalid("scaling by zero does not give a subgroup of the same order"));
        }
        let set = self.elements.iter().map(|&p| self.field.scale(lambda, p)).collect();
        Ok(Subgroup::from_closed_set(&self.field, set))
    }

    /// The `d` cosets of an order-`d` subgroup, ordered by minimal element.
    /// Block 0 is the subgroup itself.
    pub fn cosets(&self) -> Result<Vec<Vec<Point>>> {
        let f = &self.field;
        let d = f.order();
        if self.len() != d {
            return Err(invalid(format!("cosets need a subgroup of order {d}, got {}", self.len())));
        }
        let mut assigned = vec![false; d * d];
        let mut blocks = Vec::with_capacity(d);
        for a in f.points() {
            if assigned[f.point_key(a) as usize] {
                continue;
            }
            let mut block: Vec<Point> = self.elements.iter().map(|&g| f.point_add(a, g)).collect();
            block.sort_by_key(|&p| f.point_key(p));
            for &p in &block {
                assigned[f.point_key(p) as usize] = true;
            }
            blocks.push(block);
        }
        Ok(blocks)
    }
}

fn greedy_basis(field: &FieldSpec, set: &[Point]) -> Vec<Point> {
    let d = field.order();
    let mut span = vec![false; d * d];
    span[0] = true;
    let mut members = vec![Point::ZERO];
    let mut basis = Vec::new();
    for &v in set {
        if span[field.point_key(v) as usize] {
            continue;
        }
        basis.push(v);
        let base = members.clone();
        let mut multiple = v;
        while !multiple.is_zero() {
            for &a in &base {
                let s = field.point_add(a, multiple);
                let k = field.point_key(s) as usize;
                if !span[k] {
                    span[k] = true;
                    members.push(s);
                }
            }
            multiple = field.point_add(multiple, v);
        }
    }
    basis
}
