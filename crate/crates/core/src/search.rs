//! Backtracking search for small loops with inverse-property constraints.
//!
//! Used to produce the non-associative entries of the bundled corpus instead
//! of typing their tables by hand. The search is deterministic: inverse maps
//! are tried in a fixed order and cells are filled row-major with candidates
//! in ascending order, so the first hit for a given query never changes.

use crate::loops::FiniteLoop;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LoopQuery {
    pub order: usize,
    pub lip: bool,
    pub rip: bool,
    /// Reject loops with the right inverse property.
    pub not_rip: bool,
    pub non_associative: bool,
    /// Reject loops with some `x != ε`, `x * x = x⁻¹`.
    pub no_order3: bool,
}

/// First loop (in search order) satisfying the query.
pub fn find_loop(query: LoopQuery) -> Option<FiniteLoop> {
    let mut found = None;
    search_loops(query, |lp| {
        found = Some(lp.clone());
        false
    });
    found
}

/// Visits loops satisfying the query until the visitor returns false. The
/// same loop may be visited more than once.
pub fn search_loops(query: LoopQuery, mut visit: impl FnMut(&FiniteLoop) -> bool) {
    let n = query.order;
    if n == 0 {
        return;
    }
    for inv in involutions(n) {
        let mut s = State::new(n, inv, query.lip, query.rip);
        if !s.init() {
            continue;
        }
        if !s.fill(0, &query, &mut visit) {
            return;
        }
    }
}

/// Involutions of `0..n` fixing 0, in lexicographic order of their tables.
fn involutions(n: usize) -> Vec<Vec<usize>> {
    fn go(map: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(i) = map.iter().position(|&v| v == usize::MAX) else {
            out.push(map.clone());
            return;
        };
        map[i] = i;
        go(map, out);
        for j in i + 1..map.len() {
            if map[j] == usize::MAX {
                map[i] = j;
                map[j] = i;
                go(map, out);
                map[j] = usize::MAX;
            }
        }
        map[i] = usize::MAX;
    }
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut out = Vec::new();
    go(&mut map, &mut out);
    out.sort();
    out
}

const EMPTY: usize = usize::MAX;

struct State {
    n: usize,
    inv: Vec<usize>,
    lip: bool,
    rip: bool,
    table: Vec<usize>,
    row_used: Vec<bool>,
    col_used: Vec<bool>,
    trail: Vec<(usize, usize)>,
}

impl State {
    fn new(n: usize, inv: Vec<usize>, lip: bool, rip: bool) -> Self {
        State {
            n,
            inv,
            lip,
            rip,
            table: vec![EMPTY; n * n],
            row_used: vec![false; n * n],
            col_used: vec![false; n * n],
            trail: Vec::new(),
        }
    }

    fn init(&mut self) -> bool {
        for i in 0..self.n {
            if !self.assign(0, i, i) || !self.assign(i, 0, i) {
                return false;
            }
        }
        for x in 0..self.n {
            if !self.assign(x, self.inv[x], 0) {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (x, y) = self.trail.pop().expect("trail above mark");
            let z = self.table[x * self.n + y];
            self.table[x * self.n + y] = EMPTY;
            self.row_used[x * self.n + z] = false;
            self.col_used[y * self.n + z] = false;
        }
    }

    /// Sets `x * y = z` and everything the inverse properties imply.
    fn assign(&mut self, x: usize, y: usize, z: usize) -> bool {
        let mut queue = vec![(x, y, z)];
        while let Some((x, y, z)) = queue.pop() {
            let n = self.n;
            let cell = self.table[x * n + y];
            if cell == z {
                continue;
            }
            if cell != EMPTY || self.row_used[x * n + z] || self.col_used[y * n + z] {
                return false;
            }
            self.table[x * n + y] = z;
            self.row_used[x * n + z] = true;
            self.col_used[y * n + z] = true;
            self.trail.push((x, y));
            let inv = &self.inv;
            if self.lip {
                queue.push((inv[x], z, y));
            }
            if self.rip {
                queue.push((z, inv[y], x));
            }
            if self.lip && self.rip {
                queue.push((inv[y], inv[x], inv[z]));
            }
        }
        true
    }

    fn fill(
        &mut self,
        from: usize,
        query: &LoopQuery,
        visit: &mut impl FnMut(&FiniteLoop) -> bool,
    ) -> bool {
        let n = self.n;
        let Some(cell) = (from..n * n).find(|&i| self.table[i] == EMPTY) else {
            return match self.accept(query) {
                Some(lp) => visit(&lp),
                None => true,
            };
        };
        let (x, y) = (cell / n, cell % n);
        for z in 0..n {
            if self.row_used[x * n + z] || self.col_used[y * n + z] {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(x, y, z) && !self.fill(cell + 1, query, visit) {
                return false;
            }
            self.undo_to(mark);
        }
        true
    }

    fn accept(&self, query: &LoopQuery) -> Option<FiniteLoop> {
        let lp = FiniteLoop::from_flat(self.n, self.table.clone()).ok()?;
        let ok = (!query.lip || lp.has_lip())
            && (!query.rip || lp.has_rip())
            && (!query.not_rip || !lp.has_rip())
            && (!query.non_associative || !lp.is_associative())
            && (!query.no_order3 || matches!(lp.order3_element(), Ok(None)));
        ok.then_some(lp)
    }
}
