//! Finite quandles as explicit operation tables: axiom checking, type,
//! orbits, conjugation quandles of finite groups, and the associated
//! group presentation with optional exponent-r power relators.
//!
//! Table orientation is fixed as op[x][y] = x * y, so the row index is
//! the element acted on and the column index is the operator. The file
//! format mirrors that: first line n, then n rows of n indices.

use serde::Serialize;
use thiserror::Error;

use crate::fp::{CosetTable, Presentation};
use crate::words::{gen, Generator, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuandleError {
    #[error("table is not square: row {row} has length {len}, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("entry op[{row}][{col}] = {val} is out of range for size {n}")]
    EntryOutOfRange { row: usize, col: usize, val: usize, n: usize },
    #[error("empty table")]
    Empty,
    #[error("{0}")]
    Axioms(AxiomReport),
    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),
    #[error("table parse error: {0}")]
    Parse(String),
}

/// First violating witness per axiom; any Some field disqualifies the table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct AxiomReport {
    /// x with x * x != x
    pub idempotence: Option<usize>,
    /// (y, x1, x2) with x1 != x2 but x1 * y = x2 * y
    pub column_not_permutation: Option<(usize, usize, usize)>,
    /// (x, y, z) with (x*y)*z != (x*z)*(y*z)
    pub self_distributivity: Option<(usize, usize, usize)>,
}

impl AxiomReport {
    pub fn is_clean(&self) -> bool {
        self.idempotence.is_none()
            && self.column_not_permutation.is_none()
            && self.self_distributivity.is_none()
    }
}

impl std::fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if let Some(x) = self.idempotence {
            parts.push(format!("idempotence fails at x = {x}"));
        }
        if let Some((y, x1, x2)) = self.column_not_permutation {
            parts.push(format!("column {y} is not a permutation: {x1}*{y} = {x2}*{y}"));
        }
        if let Some((x, y, z)) = self.self_distributivity {
            parts.push(format!("self-distributivity fails at ({x}, {y}, {z})"));
        }
        write!(f, "{}", parts.join("; "))
    }
}

/// A finite quandle, constructible only through `check_axioms`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuandleTable {
    n: usize,
    op: Vec<Vec<usize>>,
}

/// Validates a candidate table: square shape, entries in range, then the
/// three axioms. Violations come back as data, one witness per axiom.
pub fn check_axioms(op: Vec<Vec<usize>>) -> Result<QuandleTable, QuandleError> {
    let n = op.len();
    if n == 0 {
        return Err(QuandleError::Empty);
    }
    for (row, r) in op.iter().enumerate() {
        if r.len() != n {
            return Err(QuandleError::NotSquare { row, len: r.len(), n });
        }
        for (col, &val) in r.iter().enumerate() {
            if val >= n {
                return Err(QuandleError::EntryOutOfRange { row, col, val, n });
            }
        }
    }

    let mut report = AxiomReport::default();
    report.idempotence = (0..n).find(|&x| op[x][x] != x);
    'cols: for y in 0..n {
        let mut seen = vec![usize::MAX; n];
        for x in 0..n {
            let img = op[x][y];
            if seen[img] != usize::MAX {
                report.column_not_permutation = Some((y, seen[img], x));
                break 'cols;
            }
            seen[img] = x;
        }
    }
    'triples: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if op[op[x][y]][z] != op[op[x][z]][op[y][z]] {
                    report.self_distributivity = Some((x, y, z));
                    break 'triples;
                }
            }
        }
    }

    if report.is_clean() {
        Ok(QuandleTable { n, op })
    } else {
        Err(QuandleError::Axioms(report))
    }
}

impl QuandleTable {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn op(&self, x: usize, y: usize) -> usize {
        self.op[x][y]
    }

    /// The column permutation S_y, as the image vector x -> x * y.
    pub fn column(&self, y: usize) -> Vec<usize> {
        (0..self.n).map(|x| self.op[x][y]).collect()
    }

    /// x * y = x for all pairs.
    pub fn trivial(n: usize) -> Self {
        assert!(n >= 1);
        let op = (0..n).map(|x| vec![x; n]).collect();
        check_axioms(op).expect("trivial table satisfies the axioms")
    }

    /// x * y = 2y - x mod n.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let op = (0..n)
            .map(|x| (0..n).map(|y| (2 * y + n - x % n) % n).collect())
            .collect();
        check_axioms(op).expect("dihedral table satisfies the axioms")
    }
}

fn perm_order(perm: &[usize]) -> u64 {
    // lcm of cycle lengths
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut order = 1u64;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        order = num_integer::lcm(order, len);
    }
    order
}

/// The least i >= 1 with S_y^i = id for every y, computed as the lcm of
/// the column permutation orders. Finite tables always have finite type;
/// the infinite knot quandles are certified infinite in `tym` instead.
pub fn quandle_type(q: &QuandleTable) -> u64 {
    (0..q.n)
        .map(|y| perm_order(&q.column(y)))
        .fold(1, num_integer::lcm)
}

/// Orbits of the inner automorphism group generated by all S_y; each
/// orbit is sorted and orbits are ordered by their least element.
pub fn orbits(q: &QuandleTable) -> Vec<Vec<usize>> {
    let mut seen = vec![false; q.n];
    let mut out = Vec::new();
    for start in 0..q.n {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut frontier = vec![start];
        while let Some(x) = frontier.pop() {
            for y in 0..q.n {
                // S_y and its inverse both stay inside the orbit closure;
                // columns are permutations so forward images suffice on a
                // finite set
                let img = q.op[x][y];
                if !seen[img] {
                    seen[img] = true;
                    orbit.push(img);
                    frontier.push(img);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// A finite group as a multiplication table, mul[a][b] = a b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    id: usize,
}

impl FiniteGroup {
    /// Validates the table as a group: closure by shape, one two-sided
    /// identity, two-sided inverses, and full associativity.
    pub fn from_mul_table(mul: Vec<Vec<usize>>) -> Result<Self, QuandleError> {
        let n = mul.len();
        if n == 0 {
            return Err(QuandleError::NotAGroup("empty table".into()));
        }
        for (row, r) in mul.iter().enumerate() {
            if r.len() != n {
                return Err(QuandleError::NotSquare { row, len: r.len(), n });
            }
            for (col, &val) in r.iter().enumerate() {
                if val >= n {
                    return Err(QuandleError::EntryOutOfRange { row, col, val, n });
                }
            }
        }
        let id = (0..n)
            .find(|&e| (0..n).all(|a| mul[e][a] == a && mul[a][e] == a))
            .ok_or_else(|| QuandleError::NotAGroup("no two-sided identity".into()))?;
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            inv[a] = (0..n)
                .find(|&b| mul[a][b] == id && mul[b][a] == id)
                .ok_or_else(|| QuandleError::NotAGroup(format!("{a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(QuandleError::NotAGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup { mul, inv, id })
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_mul_table(mul).expect("cyclic table is a group")
    }

    /// Symmetric group on m letters, elements in lexicographic order of
    /// their one-line notation; n = m! stays desk-sized for m <= 5.
    pub fn symmetric(m: usize) -> Self {
        assert!((1..=6).contains(&m), "m! table must stay small");
        let mut perms = vec![(0..m).collect::<Vec<_>>()];
        // next_permutation loop in lexicographic order
        loop {
            let mut p = perms.last().unwrap().clone();
            let Some(i) = (0..m.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
                break;
            };
            let j = (i + 1..m).rev().find(|&j| p[j] > p[i]).unwrap();
            p.swap(i, j);
            p[i + 1..].reverse();
            perms.push(p);
        }
        let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let mul = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    // composition acts left first: (a b)(x) = b(a(x)),
                    // matching right action of permutations on points
                    .map(|b| index(&a.iter().map(|&x| b[x]).collect::<Vec<_>>()))
                    .collect()
            })
            .collect();
        Self::from_mul_table(mul).expect("permutation composition is a group")
    }

    /// Group structure of a completed coset enumeration over the trivial
    /// subgroup: cosets are the elements, multiplication acts through
    /// representative words.
    pub fn from_coset_table(t: &CosetTable) -> Self {
        let n = t.index();
        let reps = t.representatives();
        let mul = (0..n)
            .map(|a| reps.iter().map(|w| t.apply(a, w)).collect())
            .collect::<Vec<Vec<usize>>>();
        Self::from_mul_table(mul)
            .expect("a complete coset table over the trivial subgroup is a Cayley table")
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn identity(&self) -> usize {
        self.id
    }
}

/// Conjugation quandle with twist r: x * y = y^-r x y^r on the group
/// elements. The axioms are re-checked on the constructed table rather
/// than assumed.
pub fn conj_quandle(g: &FiniteGroup, r: u32) -> QuandleTable {
    let n = g.order();
    let power = |a: usize, e: u32| {
        let mut acc = g.identity();
        for _ in 0..e {
            acc = g.mul(acc, a);
        }
        acc
    };
    let op = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let yr = power(y, r);
                    g.mul(g.mul(g.inverse(yr), x), yr)
                })
                .collect()
        })
        .collect();
    check_axioms(op).expect("conjugation satisfies the quandle axioms")
}

/// Generator names q0..q{n-1} for the associated group presentations.
pub fn element_generator(i: usize) -> Generator {
    gen(&format!("q{i}"))
}

/// The r-twisted associated group < q_x | q_(x*y) = q_y^-1 q_x q_y, q_x^r >.
/// r = 0 omits the power relators, giving As(Q).
pub fn associated_group_presentation(q: &QuandleTable, r: u64) -> Presentation {
    let gens: Vec<Generator> = (0..q.n).map(element_generator).collect();
    let mut relators = Vec::new();
    for x in 0..q.n {
        for y in 0..q.n {
            let qx = Word::generator(gens[x].clone());
            let qy = Word::generator(gens[y].clone());
            let lhs = Word::generator(gens[q.op[x][y]].clone());
            relators.push(&lhs.inverse() * &qx.conjugate(&qy));
        }
    }
    if r >= 1 {
        for g in &gens {
            relators.push(Word::generator(g.clone()).pow(r as i64));
        }
    }
    Presentation::new(gens, relators).expect("generated presentation is well formed")
}

/// Parses the table file format: first line n, then n rows of n
/// whitespace-separated 0-based indices. Blank lines are ignored.
pub fn parse_table(s: &str) -> Result<Vec<Vec<usize>>, QuandleError> {
    // tokenizer keeping byte offsets so errors point into the input
    let mut rest = s;
    let mut base = 0usize;
    let mut next_token = move || -> Option<(usize, &str)> {
        let trimmed = rest.trim_start();
        base += rest.len() - trimmed.len();
        rest = trimmed;
        if rest.is_empty() {
            return None;
        }
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let tok = &rest[..end];
        let off = base;
        base += end;
        rest = &rest[end..];
        Some((off, tok))
    };
    let mut number = |what: &str| -> Result<usize, QuandleError> {
        let (off, tok) = next_token().ok_or_else(|| {
            QuandleError::Parse(format!("parse error at byte {}: missing {what}", s.len()))
        })?;
        tok.parse::<usize>().map_err(|_| {
            QuandleError::Parse(format!("parse error at byte {off}: not a number: {tok:?}"))
        })
    };
    let n = number("size")?;
    if n == 0 {
        return Err(QuandleError::Empty);
    }
    let mut op = vec![vec![0usize; n]; n];
    for row in op.iter_mut() {
        for cell in row.iter_mut() {
            *cell = number("table entry")?;
        }
    }
    if let Some((off, tok)) = next_token() {
        return Err(QuandleError::Parse(format!(
            "parse error at byte {off}: trailing data {tok:?} after {n}x{n} entries"
        )));
    }
    Ok(op)
}

impl std::fmt::Display for QuandleTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}", self.n)?;
        for x in 0..self.n {
            let row: Vec<String> = self.op[x].iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::{kernel_presentation, todd_coxeter, CyclicHom};

    // Def-2.5 style oracle: least i >= 1 with x *^i y = x for all pairs
    fn naive_type(q: &QuandleTable) -> u64 {
        let cap = quandle_type(q);
        'outer: for i in 1..=cap {
            for y in 0..q.size() {
                for x in 0..q.size() {
                    let mut v = x;
                    for _ in 0..i {
                        v = q.op(v, y);
                    }
                    if v != x {
                        continue 'outer;
                    }
                }
            }
            return i;
        }
        unreachable!("lcm of column orders is always an upper bound");
    }

    #[test]
    fn axiom_checks_accept_the_standard_families() {
        for n in 1..=6 {
            QuandleTable::trivial(n);
            QuandleTable::dihedral(n);
        }
    }

    #[test]
    fn axiom_violations_are_witnessed() {
        let e = check_axioms(vec![vec![1, 0], vec![1, 1]]).unwrap_err();
        match e {
            QuandleError::Axioms(r) => {
                assert_eq!(r.idempotence, Some(0));
            }
            other => panic!("unexpected error {other:?}"),
        }
        let e = check_axioms(vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        match e {
            QuandleError::Axioms(r) => {
                assert_eq!(r.column_not_permutation, Some((1, 0, 1)));
            }
            other => panic!("unexpected error {other:?}"),
        }
        let e = check_axioms(vec![vec![0, 0, 1], vec![2, 1, 1], vec![2, 2, 2]]).unwrap_err();
        match e {
            QuandleError::Axioms(r) => assert!(!r.is_clean()),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(matches!(
            check_axioms(vec![vec![0, 9], vec![1, 1]]),
            Err(QuandleError::EntryOutOfRange { val: 9, .. })
        ));
    }

    #[test]
    fn types_of_the_small_families() {
        assert_eq!(quandle_type(&QuandleTable::trivial(1)), 1);
        assert_eq!(quandle_type(&QuandleTable::trivial(5)), 1);
        assert_eq!(quandle_type(&QuandleTable::dihedral(1)), 1);
        // 2y - x = x mod 2, so the 2-element dihedral table is trivial
        assert_eq!(quandle_type(&QuandleTable::dihedral(2)), 1);
        for n in 3..=7 {
            assert_eq!(quandle_type(&QuandleTable::dihedral(n)), 2, "n = {n}");
        }
        let s3 = conj_quandle(&FiniteGroup::symmetric(3), 1);
        assert_eq!(quandle_type(&s3), 6);
    }

    #[test]
    fn lcm_formula_matches_the_naive_minimum() {
        let mut tables = vec![
            conj_quandle(&FiniteGroup::cyclic(3), 1),
            conj_quandle(&FiniteGroup::symmetric(3), 1),
            conj_quandle(&FiniteGroup::symmetric(3), 2),
        ];
        for n in 1..=6 {
            tables.push(QuandleTable::trivial(n));
            tables.push(QuandleTable::dihedral(n));
        }
        for q in &tables {
            assert_eq!(quandle_type(q), naive_type(q), "size {}", q.size());
        }
    }

    #[test]
    fn conjugation_quandles_of_small_groups() {
        let z3 = conj_quandle(&FiniteGroup::cyclic(3), 1);
        assert_eq!(z3, QuandleTable::trivial(3));

        let one = conj_quandle(&FiniteGroup::cyclic(1), 1);
        assert_eq!(one.size(), 1);

        let s3 = conj_quandle(&FiniteGroup::symmetric(3), 1);
        let mut sizes: Vec<usize> = orbits(&s3).iter().map(|o| o.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn orbit_decompositions() {
        assert_eq!(orbits(&QuandleTable::dihedral(3)), vec![vec![0, 1, 2]]);
        assert_eq!(
            orbits(&QuandleTable::trivial(3)),
            vec![vec![0], vec![1], vec![2]]
        );
    }

    #[test]
    fn associated_group_abelianizations() {
        let free2 = associated_group_presentation(&QuandleTable::trivial(2), 0);
        let ab = free2.abelianization();
        assert_eq!(ab.rank(), 2);
        assert!(ab.torsion().is_empty());

        let d3 = associated_group_presentation(&QuandleTable::dihedral(3), 0);
        let ab = d3.abelianization();
        assert_eq!(ab.rank(), 1);
        assert!(ab.torsion().is_empty());

        let d3_mod2 = associated_group_presentation(&QuandleTable::dihedral(3), 2);
        assert!(d3_mod2.abelianization().is_cyclic_of_order(2));
    }

    #[test]
    fn free_rank_of_as_equals_orbit_count() {
        let tables = vec![
            QuandleTable::trivial(2),
            QuandleTable::trivial(4),
            QuandleTable::dihedral(3),
            QuandleTable::dihedral(4),
            QuandleTable::dihedral(5),
            conj_quandle(&FiniteGroup::symmetric(3), 1),
        ];
        for q in &tables {
            let p = associated_group_presentation(q, 0);
            assert_eq!(
                p.abelianization().rank(),
                orbits(q).len(),
                "size {}",
                q.size()
            );
        }
    }

    #[test]
    fn mod_two_kernel_of_the_dihedral_as_group() {
        // As_2 of the 3-element dihedral quandle is finite; the index-two
        // kernel from the all-degree-one map onto Z/2 satisfies
        // |kernel| * 2 = |As_2|
        let p = associated_group_presentation(&QuandleTable::dihedral(3), 2);
        let total = todd_coxeter(&p, &[], 100_000)
            .complete()
            .expect("As_2 of a finite connected quandle enumerates");
        let hom = CyclicHom::all_degree_one(p, 2).unwrap();
        let (kp, _) = kernel_presentation(&hom).unwrap();
        let sub = todd_coxeter(&kp, &[], 100_000)
            .complete()
            .expect("kernel enumerates");
        assert_eq!(sub.index() * 2, total.index());
    }

    #[test]
    fn coset_table_groups_round_trip() {
        // S3 from its standard two-generator presentation
        let p = Presentation::parse("< a, b | a^2, b^3, (a b)^2 >").unwrap();
        let t = todd_coxeter(&p, &[], 1000).complete().unwrap();
        let g = FiniteGroup::from_coset_table(&t);
        assert_eq!(g.order(), 6);
        let q = conj_quandle(&g, 1);
        let mut sizes: Vec<usize> = orbits(&q).iter().map(|o| o.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(quandle_type(&q), 6);
    }

    #[test]
    fn table_format_round_trips() {
        let q = QuandleTable::dihedral(4);
        let text = q.to_string();
        assert!(text.starts_with("4\n"));
        let back = check_axioms(parse_table(&text).unwrap()).unwrap();
        assert_eq!(back, q);

        assert!(matches!(
            parse_table("2\n0 0\n1"),
            Err(QuandleError::Parse(_))
        ));
        assert!(matches!(
            parse_table("2\n0 0\n1 1\n9"),
            Err(QuandleError::Parse(_))
        ));
        assert!(parse_table("").is_err());
    }
}
