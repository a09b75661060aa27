//! Squares as labeled partitions of `M × M`, supersquares, orthogonality and
//! the Latin taxonomy.
//!
//! A cell is the index `x * D + y` where `x` and `y` are canonical positions
//! in `M` (canonical rank for a field, mixed-radix index for a product of
//! cyclic groups). Cell 0 is always the identity `(0,0)`.
//!
//! The first coordinate selects the row and the second the column. With
//! [`Origin::Bottom`] row 0 is drawn last, so the bottom text line holds the
//! points `(0, y)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{invalid, Error, Result};
use crate::field::{FieldSpec, MAX_ORDER};
use crate::vector_space::Subgroup;

pub type Cell = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    /// `F_d × F_d` over a field.
    FieldPair(FieldSpec),
    /// `M = Z_{n1} × ... × Z_{nk}`.
    CyclicProduct(Vec<u32>),
}

/// The commutative group `M` whose square `M × M` carries the square.
#[derive(Clone)]
pub struct GroupSpec {
    kind: GroupKind,
    order: usize,
    add: Arc<[u16]>,
    neg: Arc<[u16]>,
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for GroupSpec {}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GroupKind::FieldPair(field) => write!(f, "{field:?}"),
            GroupKind::CyclicProduct(orders) => {
                let parts: Vec<String> = orders.iter().map(|n| format!("Z_{n}")).collect();
                write!(f, "{}", parts.join(" x "))
            }
        }
    }
}

impl GroupSpec {
    pub fn field(field: &FieldSpec) -> Self {
        let d = field.order();
        let mut add = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let s = field.add(field.element_at_rank(i), field.element_at_rank(j));
                add.push(field.rank(s) as u16);
            }
        }
        let neg = (0..d).map(|i| field.rank(field.neg(field.element_at_rank(i))) as u16).collect::<Vec<_>>();
        GroupSpec { kind: GroupKind::FieldPair(field.clone()), order: d, add: add.into(), neg: neg.into() }
    }

    pub fn cyclic(orders: &[u32]) -> Result<Self> {
        if orders.is_empty() || orders.contains(&0) {
            return Err(invalid("cyclic factors must be nonempty and positive"));
        }
        let d = orders.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n as usize)).unwrap_or(usize::MAX);
        if d > MAX_ORDER {
            return Err(Error::UnsupportedOrder { order: d, reason: format!("group order must not exceed {MAX_ORDER}") });
        }
        let decode = |mut i: usize| -> Vec<u32> {
            let mut c = vec![0u32; orders.len()];
            for k in (0..orders.len()).rev() {
                c[k] = (i % orders[k] as usize) as u32;
                i /= orders[k] as usize;
            }
            c
        };
        let encode = |c: &[u32]| -> usize { c.iter().zip(orders).fold(0usize, |acc, (&x, &n)| acc * n as usize + x as usize) };
        let mut add = Vec::with_capacity(d * d);
        let mut neg = Vec::with_capacity(d);
        for i in 0..d {
            let a = decode(i);
            let na: Vec<u32> = a.iter().zip(orders).map(|(&x, &n)| (n - x) % n).collect();
            neg.push(encode(&na) as u16);
            for j in 0..d {
                let b = decode(j);
                let s: Vec<u32> = a.iter().zip(&b).zip(orders).map(|((&x, &y), &n)| (x + y) % n).collect();
                add.push(encode(&s) as u16);
            }
        }
        Ok(GroupSpec { kind: GroupKind::CyclicProduct(orders.to_vec()), order: d, add: add.into(), neg: neg.into() })
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn as_field(&self) -> Option<&FieldSpec> {
        match &self.kind {
            GroupKind::FieldPair(f) => Some(f),
            GroupKind::CyclicProduct(_) => None,
        }
    }

    /// `D = |M|`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cell_count(&self) -> usize {
        self.order * self.order
    }

    pub fn cell(&self, x: usize, y: usize) -> Cell {
        (x * self.order + y) as Cell
    }

    pub fn coords(&self, c: Cell) -> (usize, usize) {
        (c as usize / self.order, c as usize % self.order)
    }

    #[inline]
    pub fn cell_add(&self, a: Cell, b: Cell) -> Cell {
        let d = self.order;
        let (ax, ay) = (a as usize / d, a as usize % d);
        let (bx, by) = (b as usize / d, b as usize % d);
        self.cell(self.add[ax * d + bx] as usize, self.add[ay * d + by] as usize)
    }

    pub fn cell_neg(&self, a: Cell) -> Cell {
        let (x, y) = self.coords(a);
        self.cell(self.neg[x] as usize, self.neg[y] as usize)
    }

    /// Additive closure of `gens` inside `M × M`, sorted.
    pub fn generated_subgroup(&self, gens: &[Cell]) -> Vec<Cell> {
        let mut seen = vec![false; self.cell_count()];
        seen[0] = true;
        let mut set = vec![0 as Cell];
        let mut frontier = vec![0 as Cell];
        while let Some(a) = frontier.pop() {
            for &g in gens {
                let s = self.cell_add(a, g);
                if !seen[s as usize] {
                    seen[s as usize] = true;
                    set.push(s);
                    frontier.push(s);
                }
            }
        }
        set.sort_unstable();
        set
    }

    pub fn is_subgroup(&self, cells: &[Cell]) -> bool {
        let mut member = vec![false; self.cell_count()];
        for &c in cells {
            if c as usize >= member.len() {
                return false;
            }
            member[c as usize] = true;
        }
        member[0] && cells.iter().all(|&a| cells.iter().all(|&b| member[self.cell_add(a, b) as usize]))
    }

    pub fn format_cell(&self, c: Cell) -> String {
        let (x, y) = self.coords(c);
        match &self.kind {
            GroupKind::FieldPair(f) => f.format_point(f.point_at_key(c)),
            GroupKind::CyclicProduct(_) => format!("({x},{y})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Origin {
    /// Row 0 at the bottom, as in the usual figures.
    #[default]
    Bottom,
    Top,
}

/// A partition of `M × M` into `D` blocks of `D` cells; block `j` carries label `j + 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct Square {
    group: GroupSpec,
    blocks: Vec<Vec<Cell>>,
    labels: Vec<u16>,
}

impl fmt::Debug for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Square<{:?}>\n{}", self.group, self.render(Origin::Bottom))
    }
}

impl Square {
    /// Validates the partition and labels block `j` with `j + 1`.
    pub fn from_partition(group: &GroupSpec, blocks: Vec<Vec<Cell>>) -> Result<Square> {
        let d = group.order();
        if blocks.len() != d {
            return Err(Error::InvalidPartition(format!("expected {d} blocks, got {}", blocks.len())));
        }
        let mut labels = vec![0u16; group.cell_count()];
        let mut sorted = Vec::with_capacity(d);
        for (j, mut block) in blocks.into_iter().enumerate() {
            if block.len() != d {
                return Err(Error::InvalidPartition(format!("block {} has {} cells, expected {d}", j + 1, block.len())));
            }
            for &c in &block {
                let slot = labels
                    .get_mut(c as usize)
                    .ok_or_else(|| Error::InvalidPartition(format!("cell {c} out of range")))?;
                if *slot != 0 {
                    return Err(Error::InvalidPartition(format!("cell {} appears twice", group.format_cell(c))));
                }
                *slot = (j + 1) as u16;
            }
            block.sort_unstable();
            sorted.push(block);
        }
        Ok(Square { group: group.clone(), blocks: sorted, labels })
    }

    /// Builds a square from a drawn grid of labels `1..=D`.
    pub fn from_grid(group: &GroupSpec, rows: &[Vec<u16>], origin: Origin) -> Result<Square> {
        let d = group.order();
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidPartition(format!("grid must be {d}x{d}")));
        }
        let mut blocks = vec![Vec::with_capacity(d); d];
        for (i, row) in rows.iter().enumerate() {
            let x = match origin {
                Origin::Bottom => d - 1 - i,
                Origin::Top => i,
            };
            for (y, &label) in row.iter().enumerate() {
                if label == 0 || label as usize > d {
                    return Err(Error::InvalidPartition(format!("label {label} outside 1..={d}")));
                }
                blocks[label as usize - 1].push(group.cell(x, y));
            }
        }
        Square::from_partition(group, blocks)
    }

    /// The supersquare generated by `subgroup`: its cosets in order of their
    /// minimal cell, the subgroup itself labeled 1.
    pub fn supersquare_of_cells(group: &GroupSpec, subgroup: &[Cell]) -> Result<Square> {
        let d = group.order();
        if subgroup.len() != d {
            return Err(invalid(format!("generating subgroup must have {d} elements, got {}", subgroup.len())));
        }
        if !group.is_subgroup(subgroup) {
            return Err(invalid("generating set is not a subgroup"));
        }
        let mut assigned = vec![false; group.cell_count()];
        let mut blocks = Vec::with_capacity(d);
        for a in 0..group.cell_count() as Cell {
            if assigned[a as usize] {
                continue;
            }
            let block: Vec<Cell> = subgroup.iter().map(|&g| group.cell_add(a, g)).collect();
            for &c in &block {
                assigned[c as usize] = true;
            }
            blocks.push(block);
        }
        Square::from_partition(group, blocks)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn blocks(&self) -> &[Vec<Cell>] {
        &self.blocks
    }

    /// Labels indexed by cell.
    pub fn labels(&self) -> &[u16] {
        &self.labels
    }

    pub fn label(&self, x: usize, y: usize) -> u16 {
        self.labels[self.group.cell(x, y) as usize]
    }

    /// Drawn grid rows, top row first.
    pub fn grid(&self, origin: Origin) -> Vec<Vec<u16>> {
        let d = self.order();
        (0..d)
            .map(|i| {
                let x = match origin {
                    Origin::Bottom => d - 1 - i,
                    Origin::Top => i,
                };
                (0..d).map(|y| self.label(x, y)).collect()
            })
            .collect()
    }

    pub fn render(&self, origin: Origin) -> String {
        let mut out = String::new();
        for row in self.grid(origin) {
            let cells: Vec<String> = row.iter().map(|l| l.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    /// Renumbers blocks by their minimal cell.
    pub fn canonical_relabel(&self) -> Square {
        let mut blocks = self.blocks.clone();
        blocks.sort_by_key(|b| b[0]);
        Square::from_partition(&self.group, blocks).expect("relabeling keeps a valid partition")
    }

    /// Applies `perm[old_label - 1] = new_label`.
    pub fn relabel(&self, perm: &[u16]) -> Result<Square> {
        let d = self.order();
        let mut seen = vec![false; d];
        if perm.len() != d {
            return Err(invalid("permutation length must equal the order"));
        }
        for &l in perm {
            if l == 0 || l as usize > d || std::mem::replace(&mut seen[l as usize - 1], true) {
                return Err(invalid("not a permutation of 1..=D"));
            }
        }
        let mut blocks = vec![Vec::new(); d];
        for (j, b) in self.blocks.iter().enumerate() {
            blocks[perm[j] as usize - 1] = b.clone();
        }
        Square::from_partition(&self.group, blocks)
    }

    /// True iff both squares have the same blocks, regardless of numbering.
    pub fn same_partition(&self, other: &Square) -> bool {
        self.group == other.group && self.canonical_relabel().blocks == other.canonical_relabel().blocks
    }

    fn is_line_permutation(&self, cells: impl Iterator<Item = Cell>) -> bool {
        let mut seen = vec![false; self.order()];
        for c in cells {
            let l = self.labels[c as usize] as usize - 1;
            if std::mem::replace(&mut seen[l], true) {
                return false;
            }
        }
        true
    }

    pub fn is_row_latin(&self) -> bool {
        let d = self.order();
        (0..d).all(|x| self.is_line_permutation((0..d).map(|y| self.group.cell(x, y))))
    }

    pub fn is_column_latin(&self) -> bool {
        let d = self.order();
        (0..d).all(|y| self.is_line_permutation((0..d).map(|x| self.group.cell(x, y))))
    }

    /// Block holding `(0,0)`, if it is a subgroup whose cosets are all the blocks.
    pub fn generating_block(&self) -> Option<usize> {
        let j = self.labels[0] as usize - 1;
        let base = &self.blocks[j];
        if !self.group.is_subgroup(base) {
            return None;
        }
        let cosets_ok = self.blocks.iter().all(|b| {
            let a = b[0];
            let l = self.labels[a as usize];
            base.iter().all(|&g| self.labels[self.group.cell_add(a, g) as usize] == l)
        });
        cosets_ok.then_some(j)
    }

    pub fn classify(&self) -> SquareTaxonomy {
        let is_row_latin = self.is_row_latin();
        let is_column_latin = self.is_column_latin();
        let generating_block = self.generating_block();

        // Only the block through (0,0) can be a subgroup.
        let zero_block = &self.blocks[self.labels[0] as usize - 1];
        let zero_subgroup = match self.group.as_field() {
            Some(f) if self.group.is_subgroup(zero_block) => {
                let pts: Vec<_> = zero_block.iter().map(|&c| f.point_at_key(c)).collect();
                Subgroup::from_elements(f, &pts).ok()
            }
            _ => None,
        };
        let is_extraordinary = zero_subgroup.as_ref().is_some_and(|g| g.is_extraordinary());
        SquareTaxonomy {
            is_latin: is_row_latin && is_column_latin,
            is_row_latin,
            is_column_latin,
            is_supersquare: generating_block.is_some(),
            is_extraordinary,
            generating_block,
            generating_subgroup: generating_block.and(zero_subgroup),
        }
    }
}

/// The supersquare `F_d × F_d / A1`.
pub fn supersquare(a1: &Subgroup) -> Result<Square> {
    let group = GroupSpec::field(a1.field());
    Square::supersquare_of_cells(&group, a1.keys())
}

/// Two cells and the label pair they share.
pub type RepeatedPair = (Cell, Cell, (u16, u16));

/// First cell pair whose label pairs coincide, if any.
pub fn first_repeated_pair(s: &Square, t: &Square) -> Result<Option<RepeatedPair>> {
    if s.order() != t.order() {
        return Err(invalid(format!("squares of different orders ({} and {})", s.order(), t.order())));
    }
    let d = s.order();
    let mut first: Vec<Option<Cell>> = vec![None; d * d];
    for c in 0..s.group.cell_count() {
        let (a, b) = (s.labels[c], t.labels[c]);
        let slot = &mut first[(a as usize - 1) * d + (b as usize - 1)];
        match slot {
            Some(prev) => return Ok(Some((*prev, c as Cell, (a, b)))),
            None => *slot = Some(c as Cell),
        }
    }
    Ok(None)
}

/// All `D²` label pairs are distinct.
pub fn are_orthogonal(s: &Square, t: &Square) -> Result<bool> {
    Ok(first_repeated_pair(s, t)?.is_none())
}

/// Every unordered pair is orthogonal.
pub fn mutually_orthogonal(squares: &[Square]) -> Result<bool> {
    for (i, s) in squares.iter().enumerate() {
        for t in &squares[i + 1..] {
            if !are_orthogonal(s, t)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareTaxonomy {
    pub is_latin: bool,
    pub is_row_latin: bool,
    pub is_column_latin: bool,
    pub is_supersquare: bool,
    pub is_extraordinary: bool,
    /// Zero-based index of the generating block when the square is a supersquare.
    pub generating_block: Option<usize>,
    pub generating_subgroup: Option<Subgroup>,
}

impl SquareTaxonomy {
    /// `latin`, `row-latin`, `column-latin` or `general`.
    pub fn latin_kind(&self) -> &'static str {
        match (self.is_row_latin, self.is_column_latin) {
            (true, true) => "latin",
            (true, false) => "row-latin",
            (false, true) => "column-latin",
            (false, false) => "general",
        }
    }

    /// e.g. `latin, supersquare, extraordinary`.
    pub fn summary(&self) -> String {
        let mut parts = vec![self.latin_kind()];
        if self.is_supersquare {
            parts.push("supersquare");
        }
        if self.is_extraordinary {
            parts.push("extraordinary");
        }
        parts.join(", ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(rows: &[&str]) -> Vec<Vec<u16>> {
        rows.iter().map(|r| r.split_whitespace().map(|t| t.parse().unwrap()).collect()).collect()
    }

    fn gf4() -> (FieldSpec, GroupSpec) {
        let f = FieldSpec::new(2, 2).unwrap();
        let g = GroupSpec::field(&f);
        (f, g)
    }

    #[test]
    fn diagonal_supersquare_is_the_latin_figure() {
        let (f, _) = gf4();
        let s = supersquare(&f.span_line(f.parse_point("1,1").unwrap()).unwrap()).unwrap();
        assert_eq!(s.render(Origin::Bottom), "4 3 2 1\n3 4 1 2\n2 1 4 3\n1 2 3 4\n");
        let t = s.classify();
        assert_eq!(t.summary(), "latin, supersquare, extraordinary");
    }

    #[test]
    fn z2_partition() {
        let f = FieldSpec::new(2, 1).unwrap();
        let g = GroupSpec::field(&f);
        let s = Square::from_partition(&g, vec![vec![0, 3], vec![1, 2]]).unwrap();
        assert_eq!(s.grid(Origin::Top), vec![vec![1, 2], vec![2, 1]]);
        assert!(s.classify().is_latin);
    }

    #[test]
    fn partition_errors() {
        let (_, g) = gf4();
        let mut blocks: Vec<Vec<Cell>> = (0..4).map(|j| (j * 4..j * 4 + 4).collect()).collect();
        blocks[0].pop();
        blocks[1].push(3);
        assert!(matches!(Square::from_partition(&g, blocks), Err(Error::InvalidPartition(_))));
        let dup: Vec<Vec<Cell>> = vec![vec![0, 1, 2, 3]; 4];
        assert!(matches!(Square::from_partition(&g, dup), Err(Error::InvalidPartition(_))));
        assert!(Square::from_partition(&g, vec![vec![0, 1, 2, 3]]).is_err());
    }

    #[test]
    fn axis_aligned_blocks() {
        let (f, _) = gf4();
        let a = f.span_additive(&[f.parse_point("1,0").unwrap(), f.parse_point("0,1").unwrap()]).unwrap();
        let s = supersquare(&a).unwrap();
        assert_eq!(s.render(Origin::Bottom), "3 3 4 4\n3 3 4 4\n1 1 2 2\n1 1 2 2\n");
    }

    #[test]
    fn row_latin_example() {
        let (_, g) = gf4();
        let s = Square::from_grid(&g, &grid(&["3 4 2 1", "3 4 1 2", "2 1 4 3", "1 3 2 4"]), Origin::Bottom).unwrap();
        let t = s.classify();
        assert!(t.is_row_latin && !t.is_column_latin && !t.is_latin);
        assert_eq!(t.latin_kind(), "row-latin");
        assert_eq!(s.render(Origin::Bottom), "3 4 2 1\n3 4 1 2\n2 1 4 3\n1 3 2 4\n");
    }

    #[test]
    fn self_orthogonality_fails() {
        let (f, _) = gf4();
        let s = supersquare(&f.span_line(f.parse_point("1,1").unwrap()).unwrap()).unwrap();
        assert!(!are_orthogonal(&s, &s).unwrap());
        assert!(!mutually_orthogonal(&[s.clone(), s]).unwrap());
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        let (f, _) = gf4();
        let f2 = FieldSpec::new(2, 1).unwrap();
        let s = supersquare(&f.span_line(f.parse_point("1,1").unwrap()).unwrap()).unwrap();
        let t = supersquare(&f2.span_line(f2.parse_point("1,1").unwrap()).unwrap()).unwrap();
        assert!(are_orthogonal(&s, &t).is_err());
    }

    #[test]
    fn cyclic_diagonal_is_latin() {
        let g = GroupSpec::cyclic(&[6]).unwrap();
        let diag = g.generated_subgroup(&[g.cell(1, 1)]);
        assert_eq!(diag.len(), 6);
        let s = Square::supersquare_of_cells(&g, &diag).unwrap();
        let t = s.classify();
        assert!(t.is_latin && t.is_supersquare && !t.is_extraordinary);
        assert!(t.generating_subgroup.is_none());
    }

    #[test]
    fn supersquare_rejects_non_subgroups() {
        let g = GroupSpec::cyclic(&[6]).unwrap();
        let cells: Vec<Cell> = (0..6).collect();
        assert!(Square::supersquare_of_cells(&g, &cells[1..]).is_err());
        let not_closed: Vec<Cell> = vec![0, 1, 2, 3, 4, 6];
        assert!(Square::supersquare_of_cells(&g, &not_closed).is_err());
    }

    #[test]
    fn single_cell_square() {
        let g = GroupSpec::cyclic(&[1]).unwrap();
        let s = Square::from_partition(&g, vec![vec![0]]).unwrap();
        assert_eq!(s.render(Origin::Bottom), "1\n");
    }

    #[test]
    fn relabel_and_canonical_form() {
        let (f, _) = gf4();
        let s = supersquare(&f.span_line(f.parse_point("1,m").unwrap()).unwrap()).unwrap();
        let r = s.relabel(&[2, 1, 4, 3]).unwrap();
        assert_ne!(r, s);
        assert!(r.same_partition(&s));
        assert_eq!(r.canonical_relabel(), s);
        assert!(s.relabel(&[1, 1, 2, 3]).is_err());
    }
}
