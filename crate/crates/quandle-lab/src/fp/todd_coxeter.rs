//! Coset enumeration over a finite presentation (HLT strategy with
//! coincidence handling). Termination is controlled by a hard bound on the
//! number of cosets ever defined, so callers always get an answer or an
//! explicit "exceeded" verdict.

use std::collections::VecDeque;

use crate::words::{Generator, Letter, Word};

use super::Presentation;

/// Completed coset table for a subgroup of finite index. Row 0 is the
/// subgroup itself; entries are total once enumeration finishes.
#[derive(Clone, Debug)]
pub struct CosetTable {
    generators: Vec<Generator>,
    // table[coset][2*g] = coset * gen, table[coset][2*g+1] = coset * gen^-1
    table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub enum Enumeration {
    Complete(CosetTable),
    /// The bound on defined cosets was hit before the table closed.
    Exceeded {
        bound: usize,
    },
}

impl Enumeration {
    pub fn complete(self) -> Option<CosetTable> {
        match self {
            Enumeration::Complete(t) => Some(t),
            Enumeration::Exceeded { .. } => None,
        }
    }
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.table.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    fn column(&self, gen: &Generator, exp: i8) -> usize {
        let g = self
            .generators
            .iter()
            .position(|h| h == gen)
            .expect("generator not in coset table alphabet");
        2 * g + usize::from(exp < 0)
    }

    /// Coset reached from `coset` by one letter.
    pub fn act(&self, coset: usize, letter: &Letter) -> usize {
        let mut c = coset;
        let col = self.column(&letter.gen, letter.exp);
        for _ in 0..letter.exp.unsigned_abs() {
            c = self.table[c][col];
        }
        c
    }

    /// Coset reached from `coset` by reading `w` left to right.
    pub fn apply(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, l| self.act(c, l))
    }

    /// A shortest-word coset representative per row, found breadth first;
    /// representatives[0] is the empty word.
    pub fn representatives(&self) -> Vec<Word> {
        let mut reps: Vec<Option<Word>> = vec![None; self.index()];
        reps[0] = Some(Word::identity());
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            let here = reps[c].clone().expect("queued coset has a representative");
            for g in &self.generators {
                for exp in [1i8, -1] {
                    let l = Letter::new(g.clone(), exp);
                    let next = self.act(c, &l);
                    if reps[next].is_none() {
                        reps[next] = Some(&here * &Word::from_letters(vec![l.clone()]));
                        queue.push_back(next);
                    }
                }
            }
        }
        reps.into_iter()
            .map(|r| r.expect("coset table is connected"))
            .collect()
    }
}

/// Enumerates cosets of `subgroup_words` in the group presented by `p`.
/// `max_cosets` bounds the live table size at any moment.
pub fn todd_coxeter(p: &Presentation, subgroup_words: &[Word], max_cosets: usize) -> Enumeration {
    let mut machine = Machine::new(p, max_cosets);
    for w in subgroup_words {
        if !machine.scan_and_fill(0, w) {
            return Enumeration::Exceeded { bound: max_cosets };
        }
        machine.process_coincidences();
    }
    // HLT main loop: scan every relator at every live coset, then fill any
    // undefined entries of that coset's row so the scan frontier advances.
    let mut coset = 0;
    while coset < machine.slots() {
        if machine.dead(coset) {
            coset += 1;
            continue;
        }
        for r in p.relators() {
            if !machine.scan_and_fill(coset, r) {
                return Enumeration::Exceeded { bound: max_cosets };
            }
            machine.process_coincidences();
            if machine.dead(coset) {
                break;
            }
        }
        if !machine.dead(coset) {
            for col in 0..machine.cols {
                if machine.entry(coset, col).is_none() {
                    if machine.define(coset, col).is_none() {
                        return Enumeration::Exceeded { bound: max_cosets };
                    }
                    machine.process_coincidences();
                    if machine.dead(coset) {
                        break;
                    }
                }
            }
        }
        coset += 1;
    }
    Enumeration::Complete(machine.into_table(p))
}

/// Live enumeration state. Slots are never reused; dead cosets forward to
/// their union-find representative.
struct Machine {
    cols: usize,
    // entries[c][col]: None = undefined
    entries: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    max_cosets: usize,
    queue: VecDeque<(usize, usize)>,
    column_of: Vec<(Generator, i8)>,
}

impl Machine {
    fn new(p: &Presentation, max_cosets: usize) -> Self {
        let mut column_of = Vec::new();
        for g in p.generators() {
            column_of.push((g.clone(), 1));
            column_of.push((g.clone(), -1));
        }
        Self {
            cols: column_of.len(),
            entries: vec![vec![None; column_of.len()]],
            parent: vec![0],
            max_cosets,
            queue: VecDeque::new(),
            column_of,
        }
    }

    fn slots(&self) -> usize {
        self.entries.len()
    }

    fn dead(&self, c: usize) -> bool {
        self.parent[c] != c
    }

    fn find(&mut self, mut c: usize) -> usize {
        while self.parent[c] != c {
            self.parent[c] = self.parent[self.parent[c]];
            c = self.parent[c];
        }
        c
    }

    fn entry(&self, c: usize, col: usize) -> Option<usize> {
        self.entries[c][col]
    }

    fn inverse_col(col: usize) -> usize {
        col ^ 1
    }

    /// Defines a fresh coset as c * column. None when the bound on cosets
    /// ever defined is hit.
    fn define(&mut self, c: usize, col: usize) -> Option<usize> {
        if self.entries.len() >= self.max_cosets {
            return None;
        }
        let fresh = self.entries.len();
        self.entries.push(vec![None; self.cols]);
        self.parent.push(fresh);
        self.entries[c][col] = Some(fresh);
        self.entries[fresh][Self::inverse_col(col)] = Some(c);
        Some(fresh)
    }

    /// Records c * col = d, queueing a coincidence on clash.
    fn deduce(&mut self, c: usize, col: usize, d: usize) {
        match self.entries[c][col] {
            None => {
                self.entries[c][col] = Some(d);
                match self.entries[d][Self::inverse_col(col)] {
                    None => self.entries[d][Self::inverse_col(col)] = Some(c),
                    Some(old) if old != c => self.queue.push_back((old, c)),
                    Some(_) => {}
                }
            }
            Some(old) if old != d => self.queue.push_back((old, d)),
            Some(_) => {}
        }
    }

    /// Scans relator `w` at coset `start`, defining cosets as needed so the
    /// scan always completes. False when the coset bound is hit.
    fn scan_and_fill(&mut self, start: usize, w: &Word) -> bool {
        let cols: Vec<usize> = w
            .letters()
            .iter()
            .flat_map(|l| {
                let col = 2 * self
                    .column_index(&l.gen)
                    + usize::from(l.exp < 0);
                std::iter::repeat(col).take(l.exp.unsigned_abs() as usize)
            })
            .collect();
        if cols.is_empty() {
            return true;
        }
        let start = self.find(start);
        loop {
            // forward as far as defined
            let mut f = start;
            let mut i = 0;
            while i < cols.len() {
                match self.entry(f, cols[i]) {
                    Some(next) => {
                        f = self.find(next);
                        i += 1;
                    }
                    None => break,
                }
            }
            if i == cols.len() {
                if f != start {
                    self.queue.push_back((f, start));
                }
                return true;
            }
            // backward as far as defined
            let mut b = start;
            let mut j = cols.len();
            while j > i {
                match self.entry(b, Self::inverse_col(cols[j - 1])) {
                    Some(prev) => {
                        b = self.find(prev);
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j == i {
                // both scans reached the same position with different cosets
                if f != b {
                    self.queue.push_back((f, b));
                }
                return true;
            }
            if j == i + 1 {
                // scans meet across one letter: record the deduction
                self.deduce(f, cols[i], b);
                return true;
            }
            // gap of length > 1: define one coset and rescan
            if self.define(f, cols[i]).is_none() {
                return false;
            }
        }
    }

    fn column_index(&self, g: &Generator) -> usize {
        self.column_of
            .iter()
            .position(|(h, e)| h == g && *e == 1)
            .expect("generator not in machine alphabet")
            / 2
    }

    /// Merges queued coincident cosets, migrating table entries.
    fn process_coincidences(&mut self) {
        while let Some((a, b)) = self.queue.pop_front() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            // keep the smaller index alive
            let (keep, drop) = if a < b { (a, b) } else { (b, a) };
            self.parent[drop] = keep;
            for col in 0..self.cols {
                if let Some(d) = self.entries[drop][col] {
                    let d = self.find(d);
                    // drop's neighbor entry pointing back is stale; re-deduce
                    self.deduce(keep, col, d);
                }
            }
        }
    }

    /// Compacts live slots into a dense table.
    fn into_table(mut self, p: &Presentation) -> CosetTable {
        let slots = self.slots();
        let mut dense = vec![usize::MAX; slots];
        let mut next = 0;
        for c in 0..slots {
            if self.find(c) == c {
                dense[c] = next;
                next += 1;
            }
        }
        let mut table = vec![vec![usize::MAX; self.cols]; next];
        for c in 0..slots {
            if self.find(c) != c {
                continue;
            }
            for col in 0..self.cols {
                let d = self.entries[c][col].expect("complete table has total rows");
                let d = self.find(d);
                table[dense[c]][col] = dense[d];
            }
        }
        CosetTable {
            generators: p.generators().to_vec(),
            table,
        }
    }
}
