//! The order-8 gyrogroup `K8` and the constraint search that produces it.
//!
//! Only partial information about `K8` is available: every element is its
//! own inverse, the products `x ⊕ y` for the pairs in [`X_PAIRS`] equal 7,
//! the value of `(x ⊕ y) ⊕ y` is known for every pair ([`PUBLISHED_XYY`]),
//! and `gyr[x,y]` is nontrivial exactly on [`Y_PAIRS`], always the same
//! automorphism. [`reconstruct`] enumerates every Cayley table meeting those
//! constraints.
//!
//! Two cells of the published `(x ⊕ y) ⊕ y` table cannot hold. At `(2, 2)` the
//! self-inverse law forces `(2 ⊕ 2) ⊕ 2 = 0 ⊕ 2 = 2`, but 1 is listed. At
//! `(7, 3)` the entry 3 would make `σ(7) = f` violate the semi cross product
//! conditions. With both cells released the search returns two tables,
//! isomorphic under the transposition `(3 4)`; [`TABLE`] is the
//! lexicographically smaller one.

use crate::gyrogroup::FiniteGyrogroup;
use crate::table::CayleyTable;

pub const ORDER: usize = 8;

/// Pairs whose product is 7.
pub const X_PAIRS: [(usize, usize); 6] = [(1, 6), (6, 1), (2, 5), (5, 2), (3, 4), (4, 3)];

/// Pairs with nontrivial `gyr[x,y]`.
pub const Y_PAIRS: [(usize, usize); 24] = [
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 1),
    (2, 3),
    (2, 4),
    (2, 6),
    (3, 1),
    (3, 2),
    (3, 5),
    (3, 6),
    (4, 1),
    (4, 2),
    (4, 5),
    (4, 6),
    (5, 1),
    (5, 3),
    (5, 4),
    (5, 6),
    (6, 2),
    (6, 3),
    (6, 4),
    (6, 5),
];

/// `(x ⊕ y) ⊕ y` as published, row `x`, column `y`.
pub const PUBLISHED_XYY: [[usize; 8]; 8] = [
    [0, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 6, 1, 1, 6, 1, 1],
    [2, 5, 1, 2, 2, 2, 5, 2],
    [3, 4, 4, 3, 3, 4, 4, 3],
    [4, 3, 3, 4, 4, 3, 3, 4],
    [5, 2, 5, 5, 5, 5, 2, 5],
    [6, 6, 1, 6, 6, 1, 6, 6],
    [7, 7, 7, 3, 7, 7, 7, 7],
];

/// Cells of [`PUBLISHED_XYY`] left unconstrained by the vendored search.
pub const FREE_CELLS: [(usize, usize); 2] = [(2, 2), (7, 3)];

/// The vendored Cayley table, `reconstruct(&FREE_CELLS)[0]`.
pub const TABLE: [[usize; 8]; 8] = [
    [0, 1, 2, 3, 4, 5, 6, 7],
    [1, 0, 3, 2, 5, 4, 7, 6],
    [2, 3, 0, 1, 6, 7, 4, 5],
    [3, 5, 6, 0, 7, 1, 2, 4],
    [4, 2, 1, 7, 0, 6, 5, 3],
    [5, 4, 7, 6, 1, 0, 3, 2],
    [6, 7, 4, 5, 2, 3, 0, 1],
    [7, 6, 5, 4, 3, 2, 1, 0],
];

/// Image table of the automorphism `gyr[1,2]`, i.e. `(1 6)(2 5)`.
pub const AUTOMORPHISM_A: [usize; 8] = [0, 6, 5, 3, 4, 2, 1, 7];

pub fn table() -> CayleyTable {
    CayleyTable::from_rows(TABLE.iter().map(|r| r.to_vec()).collect())
        .expect("vendored K8 table is a valid Cayley table")
}

pub fn is_x_pair(x: usize, y: usize) -> bool {
    X_PAIRS.contains(&(x, y))
}

pub fn is_y_pair(x: usize, y: usize) -> bool {
    Y_PAIRS.contains(&(x, y))
}

/// Every Cayley table on `0..8` meeting the constraints in the module
/// documentation, with the cells in `free` of [`PUBLISHED_XYY`] ignored.
/// Sorted lexicographically by rows.
pub fn reconstruct(free: &[(usize, usize)]) -> Vec<CayleyTable> {
    let mut search = Search::new(free);
    let mut raw = Vec::new();
    if search.seed() {
        search.run(&mut raw);
    }
    let mut out: Vec<CayleyTable> = raw
        .into_iter()
        .filter_map(|rows| CayleyTable::from_rows(rows).ok())
        .filter(gyr_profile_matches)
        .collect();
    out.sort_by_key(|a| a.rows());
    out.dedup();
    out
}

fn gyr_profile_matches(t: &CayleyTable) -> bool {
    let Ok(g) = FiniteGyrogroup::new("K8?", t.clone()) else {
        return false;
    };
    let mut seen = None;
    for x in 0..ORDER {
        for y in 0..ORDER {
            let trivial = g.gyr_is_trivial(x, y);
            if trivial == is_y_pair(x, y) {
                return false;
            }
            if !trivial {
                let Ok(p) = g.gyr(x, y) else { return false };
                match &seen {
                    None => seen = Some(p),
                    Some(q) if *q != p => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// Backtracking over cells with propagation of the `(x ⊕ y) ⊕ y` constraint:
/// assigning `x ⊕ y = v` forces `v ⊕ y = XYY[x][y]`.
struct Search {
    cells: [[Option<usize>; 8]; 8],
    row_used: [u16; 8],
    col_used: [u16; 8],
    constrained: [[bool; 8]; 8],
    trail: Vec<(usize, usize)>,
}

impl Search {
    fn new(free: &[(usize, usize)]) -> Self {
        let mut constrained = [[true; 8]; 8];
        for &(x, y) in free {
            constrained[x][y] = false;
        }
        Self {
            cells: [[None; 8]; 8],
            row_used: [0; 8],
            col_used: [0; 8],
            constrained,
            trail: Vec::new(),
        }
    }

    /// Identity row and column, zero diagonal, the X pairs.
    fn seed(&mut self) -> bool {
        let mut forced = Vec::new();
        for a in 0..ORDER {
            forced.push((0, a, a));
            if a != 0 {
                forced.push((a, 0, a));
                forced.push((a, a, 0));
            }
        }
        for &(x, y) in &X_PAIRS {
            forced.push((x, y, 7));
        }
        forced.into_iter().all(|(x, y, v)| self.assign(x, y, v))
    }

    /// Assigns and propagates; on conflict the caller undoes via the trail.
    fn assign(&mut self, x: usize, y: usize, v: usize) -> bool {
        let mut queue = vec![(x, y, v)];
        while let Some((x, y, v)) = queue.pop() {
            match self.cells[x][y] {
                Some(w) if w == v => continue,
                Some(_) => return false,
                None => {}
            }
            let bit = 1 << v;
            if self.row_used[x] & bit != 0 || self.col_used[y] & bit != 0 {
                return false;
            }
            self.cells[x][y] = Some(v);
            self.row_used[x] |= bit;
            self.col_used[y] |= bit;
            self.trail.push((x, y));
            if self.constrained[x][y] {
                queue.push((v, y, PUBLISHED_XYY[x][y]));
            }
            // earlier cells (x', y) with x' ⊕ y = x now constrain this one
            #[allow(clippy::needless_range_loop)]
            for xp in 0..ORDER {
                if self.cells[xp][y] == Some(x)
                    && self.constrained[xp][y]
                    && PUBLISHED_XYY[xp][y] != v
                {
                    return false;
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (x, y) = self.trail.pop().expect("trail above mark");
            let v = self.cells[x][y].take().expect("trail cells are assigned");
            self.row_used[x] &= !(1 << v);
            self.col_used[y] &= !(1 << v);
        }
    }

    fn run(&mut self, out: &mut Vec<Vec<Vec<usize>>>) {
        let next = (0..ORDER)
            .flat_map(|x| (0..ORDER).map(move |y| (x, y)))
            .find(|&(x, y)| self.cells[x][y].is_none());
        let Some((x, y)) = next else {
            out.push(
                self.cells
                    .iter()
                    .map(|r| r.iter().map(|c| c.expect("complete")).collect())
                    .collect(),
            );
            return;
        };
        for v in 1..ORDER {
            let mark = self.trail.len();
            if self.assign(x, y, v) {
                self.run(out);
            }
            self.undo_to(mark);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{all_isomorphisms, automorphisms};

    #[test]
    fn published_constraints_alone_have_no_solution() {
        assert!(reconstruct(&[(7, 3)]).is_empty());
        assert!(reconstruct(&[]).is_empty());
    }

    #[test]
    fn generator_reproduces_vendored_table() {
        let found = reconstruct(&FREE_CELLS);
        assert_eq!(found.len(), 2);
        assert_eq!(found[0], table());
        let a = FiniteGyrogroup::new("a", found[0].clone()).unwrap();
        let b = FiniteGyrogroup::new("b", found[1].clone()).unwrap();
        let isos = all_isomorphisms(&a, &b);
        assert!(isos.contains(&vec![0, 1, 2, 4, 3, 5, 6, 7]));
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn reconciled_cells() {
        let t = table();
        let xyy = |x: usize, y: usize| t.get(t.get(x, y), y);
        let mut diffs = Vec::new();
        for x in 0..ORDER {
            for y in 0..ORDER {
                if xyy(x, y) != PUBLISHED_XYY[x][y] {
                    diffs.push((x, y, xyy(x, y)));
                }
            }
        }
        assert_eq!(diffs, vec![(2, 2, 2), (7, 3, 7)]);
    }

    #[test]
    fn automorphism_group_is_generated_by_a() {
        let g = FiniteGyrogroup::new("K8", table()).unwrap();
        let auts = automorphisms(&g);
        assert!(auts.iter().any(|p| p.as_slice() == AUTOMORPHISM_A));
    }
}
