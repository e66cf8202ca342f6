//! Stable decompositions of `{0..=k}` and the type machinery for triples.
//!
//! A stable decomposition records which marked points come together on the
//! component of `z_0` when a curve degenerates: indices are equivalent iff
//! they attach through the same special point. Part 0 is always the
//! singleton `{0}`, and a stable curve forces at least three parts. The
//! parts are ordered by their minima, which also fixes the distinguished
//! cross-ratio coordinates.

use std::collections::BTreeSet;

use super::CurveError;
use crate::tree::Label;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TripleType {
    /// Pairwise nonequivalent.
    I,
    /// Exactly one equivalent pair.
    II,
    /// All three equivalent.
    III,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StableDecomposition {
    parts: Vec<BTreeSet<Label>>,
    k: Label,
}

impl StableDecomposition {
    /// Validate and normalize: the parts must partition `{0..=k}`, the part
    /// of 0 must be `{0}`, and there must be at least three parts. Parts
    /// are reordered by their minima.
    pub fn new(
        parts: impl IntoIterator<Item = impl IntoIterator<Item = Label>>,
        k: Label,
    ) -> Result<Self, CurveError> {
        let mut parts: Vec<BTreeSet<Label>> = parts
            .into_iter()
            .map(|p| p.into_iter().collect::<BTreeSet<Label>>())
            .filter(|p| !p.is_empty())
            .collect();
        parts.sort_by_key(|p| *p.iter().next().unwrap());
        let mut seen: BTreeSet<Label> = BTreeSet::new();
        for p in &parts {
            for &l in p {
                if l > k || !seen.insert(l) {
                    return Err(CurveError::NotAPartition);
                }
            }
        }
        if seen.len() != (k as usize) + 1 {
            return Err(CurveError::NotAPartition);
        }
        if parts[0] != BTreeSet::from([0]) {
            return Err(CurveError::ZeroPartNotSingleton);
        }
        if parts.len() < 3 {
            return Err(CurveError::TooFewParts(parts.len()));
        }
        Ok(Self { parts, k })
    }

    /// The discrete decomposition: every index its own part.
    pub fn discrete(k: Label) -> Self {
        Self::new((0..=k).map(|i| [i]), k).unwrap()
    }

    pub fn k(&self) -> Label {
        self.k
    }

    /// Number of parts `l + 1`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> impl Iterator<Item = &BTreeSet<Label>> {
        self.parts.iter()
    }

    pub fn part(&self, a: usize) -> &BTreeSet<Label> {
        &self.parts[a]
    }

    /// Minima `i_0 = 0 < i_1 < ... < i_l`.
    pub fn minima(&self) -> Vec<Label> {
        self.parts
            .iter()
            .map(|p| *p.iter().next().unwrap())
            .collect()
    }

    pub fn part_index(&self, i: Label) -> usize {
        self.parts
            .iter()
            .position(|p| p.contains(&i))
            .expect("index within 0..=k")
    }

    /// Indices `i, j >= 1` are equivalent iff they share a part.
    pub fn equivalent(&self, i: Label, j: Label) -> bool {
        if i == j {
            return true;
        }
        let a = self.part_index(i);
        a >= 1 && a == self.part_index(j)
    }

    pub fn triple_type(&self, i: Label, j: Label, m: Label) -> Result<TripleType, CurveError> {
        if i == j || j == m || i == m {
            return Err(CurveError::BadTriple);
        }
        for idx in [i, j, m] {
            if idx < 1 || idx > self.k {
                return Err(CurveError::BadTriple);
            }
        }
        let pairs = [(i, j), (i, m), (j, m)]
            .iter()
            .filter(|&&(a, b)| self.equivalent(a, b))
            .count();
        Ok(match pairs {
            0 => TripleType::I,
            1 => TripleType::II,
            3 => TripleType::III,
            _ => unreachable!("equivalence is transitive"),
        })
    }

    /// Does `self` refine `coarser`? True iff self-equivalence implies
    /// coarser-equivalence, i.e. every part of `self` sits inside a part of
    /// `coarser`. Combinatorially this says the coarser stratum lies in the
    /// closure of the finer one.
    pub fn refines(&self, coarser: &StableDecomposition) -> bool {
        if self.k != coarser.k {
            return false;
        }
        self.parts.iter().all(|p| {
            let a = coarser.part_index(*p.iter().next().unwrap());
            p.iter().all(|&l| coarser.part_index(l) == a)
        })
    }

    /// All triples `1 <= i < j < m <= k`.
    pub fn triples(k: Label) -> impl Iterator<Item = (Label, Label, Label)> {
        (1..=k).flat_map(move |i| {
            ((i + 1)..=k).flat_map(move |j| ((j + 1)..=k).map(move |m| (i, j, m)))
        })
    }
}

/// A triple that is type I for the refinement and type II for the coarser
/// decomposition, built exactly as in the refinement case: pick `i != j`
/// equivalent for the coarser but split by the finer, then any `m` outside
/// the coarser class of `i`.
pub fn witness_refinement(
    coarser: &StableDecomposition,
    finer: &StableDecomposition,
) -> Result<(Label, Label, Label), CurveError> {
    if coarser == finer || !finer.refines(coarser) {
        return Err(CurveError::WitnessHypothesis(
            "need a strict refinement of the first argument",
        ));
    }
    for a in 1..coarser.len() {
        let part = coarser.part(a);
        for &i in part {
            for &j in part.iter().filter(|&&j| j > i) {
                if !finer.equivalent(i, j) {
                    let m = (1..=coarser.k())
                        .find(|&m| m != i && m != j && !coarser.equivalent(m, i))
                        .expect("a third class exists since |I| >= 3");
                    let mut t = [i, j, m];
                    t.sort_unstable();
                    return Ok((t[0], t[1], t[2]));
                }
            }
        }
    }
    unreachable!("a strict refinement splits some part")
}

/// A triple that is type I for `coarse` and type II for `other`, where
/// `other` does not refine `coarse` and `coarse` has at least 4 parts.
/// Implements both branches of the constructive argument: choose a part
/// `J_a` of `other` meeting several parts of `coarse`; if some part of
/// `coarse` is disjoint from `J_a` take `m` there, otherwise take `m` in a
/// part not swallowed by `J_a`.
pub fn witness_nonrefinement(
    coarse: &StableDecomposition,
    other: &StableDecomposition,
) -> Result<(Label, Label, Label), CurveError> {
    if coarse.len() < 4 {
        return Err(CurveError::WitnessHypothesis("need |I| >= 4"));
    }
    if other == coarse || other.refines(coarse) {
        return Err(CurveError::WitnessHypothesis(
            "second argument must not refine the first",
        ));
    }
    let ell = coarse.len() - 1;
    // a part of `other` not contained in any part of `coarse`
    let j_a = other
        .parts()
        .skip(1)
        .find(|p| {
            let a = coarse.part_index(*p.iter().next().unwrap());
            p.iter().any(|&l| coarse.part_index(l) != a)
        })
        .expect("non-refinement provides a straddling part");
    let meets: Vec<usize> = (1..=ell)
        .filter(|&b| coarse.part(b).iter().any(|l| j_a.contains(l)))
        .collect();
    debug_assert!(meets.len() >= 2);

    let pick = |b: usize| -> Label {
        *coarse
            .part(b)
            .iter()
            .find(|l| j_a.contains(l))
            .expect("b meets J_a")
    };

    let missing = (1..=ell).find(|b| !meets.contains(b));
    let (i, j, m) = if let Some(d) = missing {
        let (b, c) = (meets[0], meets[1]);
        (pick(b), pick(c), *coarse.part(d).iter().next().unwrap())
    } else {
        // every part of `coarse` meets J_a; some part is not contained in it
        let d = (1..=ell)
            .find(|&d| coarse.part(d).iter().any(|l| !j_a.contains(l)))
            .expect("J_a cannot contain all of 1..=k");
        let rest: Vec<usize> = meets.iter().copied().filter(|&b| b != d).collect();
        let (b, c) = (rest[0], rest[1]);
        let m = *coarse
            .part(d)
            .iter()
            .find(|l| !j_a.contains(l))
            .unwrap();
        (pick(b), pick(c), m)
    };
    let mut t = [i, j, m];
    t.sort_unstable();
    Ok((t[0], t[1], t[2]))
}

/// All stable decompositions of `{0..=k}`, enumerated via restricted-growth
/// strings on `{1..=k}` with at least two blocks.
pub fn all_stable_decompositions(k: Label) -> Vec<StableDecomposition> {
    let n = k as usize;
    let mut out = Vec::new();
    let mut assignment = vec![0usize; n];
    fn rec(
        idx: usize,
        max_block: usize,
        assignment: &mut Vec<usize>,
        k: Label,
        out: &mut Vec<StableDecomposition>,
    ) {
        let n = k as usize;
        if idx == n {
            let blocks = max_block + 1;
            if blocks >= 2 {
                let mut parts: Vec<Vec<Label>> = vec![Vec::new(); blocks + 1];
                parts[0].push(0);
                for (i, &b) in assignment.iter().enumerate() {
                    parts[b + 1].push(i as Label + 1);
                }
                out.push(StableDecomposition::new(parts, k).unwrap());
            }
            return;
        }
        for b in 0..=max_block + 1 {
            assignment[idx] = b;
            rec(idx + 1, max_block.max(b), assignment, k, out);
        }
    }
    if n >= 2 {
        assignment[0] = 0;
        rec(1, 0, &mut assignment, k, &mut out);
    }
    out.sort();
    out.dedup();
    out
}
