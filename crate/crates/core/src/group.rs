//! Fundamental group of a virtual spatial graph: Wirtinger presentation,
//! Tietze simplification, abelianization and homomorphism counts into
//! finite groups.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{End, Role, VsgCode};
use crate::error::{Error, Result};

/// A word letter: generator index and exponent `±1`.
pub type Letter = (usize, i8);
pub type Word = Vec<Letter>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

pub fn free_reduce(word: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &l in word {
        match out.last() {
            Some(&(g, e)) if g == l.0 && e == -l.1 => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

fn cyclic_reduce(word: &[Letter]) -> Word {
    let mut w = free_reduce(word);
    while w.len() >= 2 && w[0].0 == w[w.len() - 1].0 && w[0].1 == -w[w.len() - 1].1 {
        w.pop();
        w.remove(0);
    }
    w
}

fn inverse(word: &[Letter]) -> Word {
    word.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Self {
        let relators = relators
            .iter()
            .map(|r| free_reduce(r))
            .filter(|r| !r.is_empty())
            .collect();
        GroupPresentation { generators, relators }
    }

    fn letter(&self, (g, e): Letter) -> String {
        if e > 0 {
            self.generators[g].clone()
        } else {
            self.generators[g].to_uppercase()
        }
    }

    pub fn word_text(&self, w: &[Letter]) -> String {
        w.iter().map(|&l| self.letter(l)).collect::<Vec<_>>().join(" ")
    }

    /// Text form: `gens: a,b` on one line, `rels: ...` with relators
    /// separated by `;` on the next. Capitals denote inverses.
    pub fn to_text(&self) -> String {
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_text(r)).collect();
        format!("gens: {}\nrels: {}\n", self.generators.join(","), rels.join("; "))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut gens: Option<Vec<String>> = None;
        let mut rel_texts: Vec<String> = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if let Some(rest) = line.strip_prefix("gens:") {
                gens = Some(
                    rest.split(',')
                        .map(|s| s.trim().to_string())
                        .filter(|s| !s.is_empty())
                        .collect(),
                );
            } else if let Some(rest) = line.strip_prefix("rels:") {
                rel_texts.extend(rest.split(';').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()));
            } else {
                return Err(Error::Parse(format!("unexpected line {line:?}")));
            }
        }
        let gens = gens.ok_or_else(|| Error::Parse("missing gens: line".into()))?;
        for g in &gens {
            if g.chars().any(|c| c.is_uppercase()) || g.chars().any(char::is_whitespace) {
                return Err(Error::Parse(format!("generator {g:?} must be lowercase")));
            }
        }
        let index: BTreeMap<&str, usize> = gens.iter().enumerate().map(|(i, g)| (g.as_str(), i)).collect();
        let mut relators = Vec::new();
        for r in rel_texts {
            let mut w = Vec::new();
            for tok in r.split_whitespace() {
                let lower = tok.to_lowercase();
                let g = *index
                    .get(lower.as_str())
                    .ok_or_else(|| Error::Parse(format!("unknown generator {tok:?}")))?;
                w.push((g, if tok == lower { 1 } else { -1 }));
            }
            relators.push(w);
        }
        Ok(GroupPresentation::new(gens, relators))
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Wirtinger presentation: one generator per arc, a conjugation relation at
/// each classical crossing and a product relation at each vertex.
pub fn wirtinger(code: &VsgCode) -> Result<GroupPresentation> {
    code.ensure_valid()?;
    let mut arcs = 0usize;
    // arc leaving the tail and arc entering the head of each edge
    let mut first = Vec::new();
    let mut last = Vec::new();
    let mut over: BTreeMap<&str, usize> = BTreeMap::new();
    let mut under_in: BTreeMap<&str, usize> = BTreeMap::new();
    let mut under_out: BTreeMap<&str, usize> = BTreeMap::new();
    for i in 0..code.edges.len() {
        let mut cur = arcs;
        arcs += 1;
        first.push(cur);
        for p in code.passages_of(i) {
            match p.role {
                Role::Over => {
                    over.insert(&p.crossing, cur);
                }
                Role::Under => {
                    under_in.insert(&p.crossing, cur);
                    cur = arcs;
                    arcs += 1;
                    under_out.insert(&p.crossing, cur);
                }
            }
        }
        last.push(cur);
    }
    let signs = code.crossing_positions();
    let mut relators = Vec::new();
    for (label, &o) in &over {
        let s = signs[*label].sign.value() as i8;
        relators.push(vec![(o, s), (under_in[label], 1), (o, -s), (under_out[label], -1)]);
    }
    for v in &code.vertices {
        let mut w = Vec::new();
        for h in code.rotation(v) {
            let e = code.edge_index(&h.edge).expect("validated");
            w.push(match h.end {
                End::Tail => (first[e], -1),
                End::Head => (last[e], 1),
            });
        }
        relators.push(w);
    }
    let generators = (1..=arcs).map(|k| format!("x{k}")).collect();
    Ok(GroupPresentation::new(generators, relators))
}

/// Eliminates generators through relators in which they occur exactly
/// once, drops trivial relators, and reduces what is left cyclically.
pub fn tietze_simplify(p: &GroupPresentation) -> GroupPresentation {
    let mut gens: Vec<Option<String>> = p.generators.iter().cloned().map(Some).collect();
    let mut rels: Vec<Word> = p.relators.iter().map(|r| cyclic_reduce(r)).filter(|r| !r.is_empty()).collect();
    loop {
        let mut best: Option<(usize, usize, usize)> = None; // (len, relator, position)
        for (ri, r) in rels.iter().enumerate() {
            let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
            for &(g, _) in r {
                *counts.entry(g).or_default() += 1;
            }
            if let Some(pos) = r.iter().position(|(g, _)| counts[g] == 1) {
                if best.is_none_or(|b| r.len() < b.0) {
                    best = Some((r.len(), ri, pos));
                }
            }
        }
        let Some((_, ri, pos)) = best else { break };
        let r = rels.remove(ri);
        let (x, e) = r[pos];
        // r = u x^e v = 1  gives  x = (v u)^{-e}
        let mut vu: Word = r[pos + 1..].to_vec();
        vu.extend_from_slice(&r[..pos]);
        let value = if e > 0 { inverse(&vu) } else { vu };
        let inv_value = inverse(&value);
        rels = rels
            .into_iter()
            .map(|w| {
                let mut out = Vec::with_capacity(w.len());
                for (g, f) in w {
                    if g == x {
                        out.extend_from_slice(if f > 0 { &value } else { &inv_value });
                    } else {
                        out.push((g, f));
                    }
                }
                cyclic_reduce(&out)
            })
            .filter(|w| !w.is_empty())
            .collect();
        gens[x] = None;
    }
    let mut renumber = vec![usize::MAX; gens.len()];
    let mut names = Vec::new();
    for (i, g) in gens.into_iter().enumerate() {
        if let Some(name) = g {
            renumber[i] = names.len();
            names.push(name);
        }
    }
    let mut relators: Vec<Word> = rels
        .into_iter()
        .map(|w| w.into_iter().map(|(g, e)| (renumber[g], e)).collect())
        .collect();
    relators.sort();
    relators.dedup();
    GroupPresentation::new(names, relators)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Abelianization {
    pub free_rank: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<u64>,
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        parts.extend(std::iter::repeat("Z".to_string()).take(self.free_rank));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Diagonal of the Smith normal form of an integer matrix.
pub fn smith_diagonal(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].abs());
            let Some((pi, pj)) = pivot else {
                return diag;
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = m[t][j] / p;
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        m[t][j] += m[i][j];
                    }
                }
                None => {
                    diag.push(p.abs());
                    break;
                }
            }
        }
    }
    diag
}

pub fn abelianization(p: &GroupPresentation) -> Abelianization {
    let n = p.generators.len();
    let matrix: Vec<Vec<i128>> = p
        .relators
        .iter()
        .map(|r| {
            let mut row = vec![0i128; n];
            for &(g, e) in r {
                row[g] += e as i128;
            }
            row
        })
        .collect();
    let diag = smith_diagonal(matrix);
    Abelianization {
        free_rank: n - diag.len(),
        torsion: diag.into_iter().filter(|&d| d > 1).map(|d| d as u64).collect(),
    }
}

/// A finite group given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroupTable {
    pub name: String,
    pub elements: Vec<String>,
    /// `table[a][b]` is the index of `a·b`.
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl FiniteGroupTable {
    pub fn from_json(text: &str) -> Result<Self> {
        let g: FiniteGroupTable = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        g.check()?;
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tables serialize")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// Verifies closure, identity, inverses and associativity.
    pub fn check(&self) -> Result<()> {
        let n = self.elements.len();
        let bad = |m: String| Err(Error::Structure(format!("group {}: {m}", self.name)));
        if n == 0 || self.table.len() != n || self.table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return bad("table is not a square over the elements".into());
        }
        if self.identity >= n || (0..n).any(|a| self.mul(self.identity, a) != a || self.mul(a, self.identity) != a) {
            return bad("identity fails".into());
        }
        if (0..n).any(|a| !(0..n).any(|b| self.mul(a, b) == self.identity)) {
            return bad("an element has no inverse".into());
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return bad(format!("not associative at ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn inverses(&self) -> Vec<usize> {
        (0..self.order())
            .map(|a| (0..self.order()).find(|&b| self.mul(a, b) == self.identity).expect("checked"))
            .collect()
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        FiniteGroupTable {
            name: format!("Z{n}"),
            elements: (0..n).map(|k| k.to_string()).collect(),
            table: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
            identity: 0,
        }
    }

    /// Permutations of `0..n` in lexicographic order, composed as functions
    /// (`a·b` applies `b` first).
    pub fn symmetric(n: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = vec![(0..n).collect()];
        let mut cur: Vec<usize> = (0..n).collect();
        // lexicographic successors
        loop {
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
            perms.push(cur.clone());
        }
        let index: BTreeMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index[&b.iter().map(|&x| a[x]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        FiniteGroupTable {
            name: format!("S{n}"),
            elements: perms
                .iter()
                .map(|p| p.iter().map(|x| (x + 1).to_string()).collect::<String>())
                .collect(),
            table,
            identity: 0,
        }
    }

    /// Built-in groups by name: `trivial`, `Z<n>`, `S<n>`.
    pub fn builtin(name: &str) -> Option<Self> {
        let lower = name.to_ascii_lowercase();
        if lower == "trivial" {
            return Some(Self::trivial());
        }
        let (kind, n) = lower.split_at(1);
        let n: usize = n.parse().ok().filter(|&n| n >= 1)?;
        match kind {
            "z" | "c" if n <= 64 => Some(Self::cyclic(n)),
            "s" if n <= 5 => Some(Self::symmetric(n)),
            _ => None,
        }
    }
}

/// Largest search space `count_homs` accepts by default.
pub const DEFAULT_HOM_BUDGET: u64 = 50_000_000;

/// Number of assignments of generators to group elements satisfying every
/// relator.
pub fn count_homs(p: &GroupPresentation, g: &FiniteGroupTable) -> Result<u64> {
    count_homs_with(p, g, DEFAULT_HOM_BUDGET)
}

pub fn count_homs_with(p: &GroupPresentation, g: &FiniteGroupTable, budget: u64) -> Result<u64> {
    let n = p.generators.len();
    let order = g.order() as u64;
    let space = (0..n).try_fold(1u64, |acc, _| acc.checked_mul(order)).unwrap_or(u64::MAX);
    if space > budget {
        return Err(Error::Budget {
            what: "hom-count assignments",
            needed: space,
            limit: budget,
        });
    }
    if n == 0 {
        let ok = p.relators.is_empty();
        return Ok(ok as u64);
    }
    // relators checked as soon as their largest generator is assigned
    let mut due: Vec<Vec<&Word>> = vec![Vec::new(); n];
    for r in &p.relators {
        let top = r.iter().map(|&(x, _)| x).max().expect("relators are nonempty");
        due[top].push(r);
    }
    let inv = g.inverses();
    let eval = |r: &Word, image: &[usize]| {
        r.iter().fold(g.identity, |acc, &(x, e)| {
            g.mul(acc, if e > 0 { image[x] } else { inv[image[x]] })
        })
    };
    fn walk(k: usize, image: &mut Vec<usize>, due: &[Vec<&Word>], order: usize, ok: &dyn Fn(&Word, &[usize]) -> bool) -> u64 {
        if k == image.len() {
            return 1;
        }
        let mut total = 0;
        for a in 0..order {
            image[k] = a;
            if due[k].iter().all(|r| ok(r, image)) {
                total += walk(k + 1, image, due, order, ok);
            }
        }
        total
    }
    let ok = |r: &Word, image: &[usize]| eval(r, image) == g.identity;
    let total = (0..g.order())
        .into_par_iter()
        .map(|a| {
            let mut image = vec![0; n];
            image[0] = a;
            if due[0].iter().all(|r| ok(r, &image)) {
                walk(1, &mut image, &due, g.order(), &ok)
            } else {
                0
            }
        })
        .sum();
    Ok(total)
}

/// Abelianization and hom counts of the simplified Wirtinger presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub generators: usize,
    pub relators: usize,
    pub abelianization: Abelianization,
    pub hom_counts: BTreeMap<String, u64>,
}

pub fn group_summary(code: &VsgCode, groups: &[FiniteGroupTable]) -> Result<GroupSummary> {
    let p = tietze_simplify(&wirtinger(code)?);
    let mut hom_counts = BTreeMap::new();
    for g in groups {
        hom_counts.insert(g.name.clone(), count_homs(&p, g)?);
    }
    Ok(GroupSummary {
        generators: p.generators.len(),
        relators: p.relators.len(),
        abelianization: abelianization(&p),
        hom_counts,
    })
}
