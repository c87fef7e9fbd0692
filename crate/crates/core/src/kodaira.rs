//! Kodaira fibres supported on a configuration of -2-curves, their grouping
//! into genus one fibrations, sections and orbits under label symmetries.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{bareiss, GramFixture, GramLattice};

/// A set of -2-curves with their intersection numbers.
#[derive(Clone, Debug)]
pub struct CurveSet {
    pub labels: Vec<String>,
    pub gram: Vec<Vec<i64>>,
}

impl CurveSet {
    pub fn new(lattice: &GramLattice) -> Result<Self> {
        let n = lattice.dim();
        let mut gram = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = lattice.gram[i][j]
                    .to_i64()
                    .ok_or_else(|| Error::Domain("intersection number out of range".into()))?;
            }
        }
        for i in 0..n {
            if gram[i][i] != -2 {
                return Err(Error::Domain(format!(
                    "{} is not a -2-curve",
                    lattice.labels[i]
                )));
            }
            if let Some(j) = (0..n).find(|&j| j != i && gram[i][j] < 0) {
                return Err(Error::Domain(format!(
                    "negative intersection between {} and {}",
                    lattice.labels[i], lattice.labels[j]
                )));
            }
        }
        Ok(Self {
            labels: lattice.labels.clone(),
            gram,
        })
    }

    pub fn from_gram(labels: Vec<String>, gram: Vec<Vec<i64>>) -> Result<Self> {
        let lat = GramLattice::new(labels, crate::lattice::from_i64(&gram))?;
        Self::new(&lat)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Domain(format!("unknown curve {label}")))
    }

    pub fn rank(&self) -> usize {
        bareiss(&crate::lattice::from_i64(&self.gram)).0
    }

    fn unit_neighbours(&self) -> Vec<Vec<usize>> {
        (0..self.len())
            .map(|i| {
                (0..self.len())
                    .filter(|&j| j != i && self.gram[i][j] == 1)
                    .collect()
            })
            .collect()
    }

    /// Intersection of `D = sum m_i C_i` with every curve.
    pub fn key(&self, comps: &[(usize, u32)]) -> Vec<i64> {
        (0..self.len())
            .map(|j| comps.iter().map(|&(i, m)| m as i64 * self.gram[i][j]).sum())
            .collect()
    }
}

/// Affine Dynkin type of a fibre. Types III and IV are reported as I2 and I3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FibreType {
    I(u32),
    D(u32),
    E6,
    E7,
    E8,
}

impl fmt::Display for FibreType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FibreType::I(n) => write!(f, "I{n}"),
            FibreType::D(n) => write!(f, "D~{n}"),
            FibreType::E6 => write!(f, "E~6"),
            FibreType::E7 => write!(f, "E~7"),
            FibreType::E8 => write!(f, "E~8"),
        }
    }
}

/// Components sorted by index, with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FibreConfig {
    pub kind: FibreType,
    pub components: Vec<(usize, u32)>,
}

impl FibreConfig {
    fn new(kind: FibreType, mut components: Vec<(usize, u32)>) -> Self {
        components.sort();
        Self { kind, components }
    }

    pub fn support(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.0).collect()
    }

    /// `D.D = 0` and `D.C = 0` for every component, recomputed from the Gram.
    pub fn is_valid(&self, s: &CurveSet) -> bool {
        let key = s.key(&self.components);
        let self_sq: i64 = self
            .components
            .iter()
            .map(|&(i, m)| m as i64 * key[i])
            .sum();
        self_sq == 0 && self.components.iter().all(|&(i, _)| key[i] == 0)
    }

    pub fn render(&self, s: &CurveSet) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|&(i, m)| {
                if m == 1 {
                    s.labels[i].clone()
                } else {
                    format!("{m}{}", s.labels[i])
                }
            })
            .collect();
        format!("{}: {}", self.kind, parts.join(" + "))
    }
}

/// Every Kodaira fibre supported on `s`, with cycles up to length `max_n`.
pub fn find_fibres(s: &CurveSet, max_n: usize) -> Vec<FibreConfig> {
    let n = s.len();
    let nb = s.unit_neighbours();
    let mut found: Vec<FibreConfig> = (0..n)
        .into_par_iter()
        .flat_map_iter(|v| {
            let mut out = vec![];
            cycles_from(s, &nb, v, max_n, &mut out);
            d_fibres_from(s, &nb, v, &mut out);
            e_fibres_from(s, &nb, v, &mut out);
            out
        })
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            if s.gram[i][j] == 2 {
                found.push(FibreConfig::new(FibreType::I(2), vec![(i, 1), (j, 1)]));
            }
        }
    }
    let set: BTreeSet<FibreConfig> = found.into_iter().collect();
    let out: Vec<FibreConfig> = set.into_iter().collect();
    debug_assert!(out.iter().all(|f| f.is_valid(s)));
    out
}

fn cycles_from(
    s: &CurveSet,
    nb: &[Vec<usize>],
    start: usize,
    max_n: usize,
    out: &mut Vec<FibreConfig>,
) {
    if max_n < 3 {
        return;
    }
    let mut path = vec![start];
    fn extend(
        s: &CurveSet,
        nb: &[Vec<usize>],
        path: &mut Vec<usize>,
        max_n: usize,
        out: &mut Vec<FibreConfig>,
    ) {
        let start = path[0];
        let last = *path.last().unwrap();
        for &w in &nb[last] {
            if w <= start || path.contains(&w) {
                continue;
            }
            if path[1..path.len() - 1].iter().any(|&u| s.gram[u][w] != 0) {
                continue;
            }
            match s.gram[start][w] {
                0 if path.len() + 1 < max_n => {
                    path.push(w);
                    extend(s, nb, path, max_n, out);
                    path.pop();
                }
                1 if path.len() >= 2 && path[1] < w => {
                    let comps = path.iter().chain([&w]).map(|&v| (v, 1)).collect();
                    out.push(FibreConfig::new(FibreType::I(path.len() as u32 + 1), comps));
                }
                _ => {}
            }
        }
    }
    // the first step must be a unit edge from the start vertex
    for &w in &nb[start] {
        if w <= start {
            continue;
        }
        path.push(w);
        extend(s, nb, &mut path, max_n, out);
        path.pop();
    }
}

/// Whether `w` may join `set` as a new vertex touching only `attach`.
fn attaches_only_to(s: &CurveSet, set: &[usize], w: usize, attach: usize) -> bool {
    !set.contains(&w)
        && set.iter().all(|&u| {
            if u == attach {
                s.gram[u][w] == 1
            } else {
                s.gram[u][w] == 0
            }
        })
}

fn independent_subsets(s: &CurveSet, cands: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = vec![];
    fn rec(
        s: &CurveSet,
        cands: &[usize],
        k: usize,
        from: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..cands.len() {
            let w = cands[i];
            if cur.iter().all(|&u| s.gram[u][w] == 0) {
                cur.push(w);
                rec(s, cands, k, i + 1, cur, out);
                cur.pop();
            }
        }
    }
    rec(s, cands, k, 0, &mut cur, &mut out);
    out
}

/// D~4 centred at `v`, and D~n (n >= 5) whose central chain starts at `v`.
fn d_fibres_from(s: &CurveSet, nb: &[Vec<usize>], v: usize, out: &mut Vec<FibreConfig>) {
    for leaves in independent_subsets(s, &nb[v], 4) {
        let comps = leaves.iter().map(|&l| (l, 1)).chain([(v, 2)]).collect();
        out.push(FibreConfig::new(FibreType::D(4), comps));
    }
    let mut path = vec![v];
    fn walk(s: &CurveSet, nb: &[Vec<usize>], path: &mut Vec<usize>, out: &mut Vec<FibreConfig>) {
        let last = *path.last().unwrap();
        if path.len() >= 2 && path[0] < last {
            close_d(s, nb, path, out);
        }
        for &w in &nb[last] {
            if attaches_only_to(s, path, w, last) {
                path.push(w);
                walk(s, nb, path, out);
                path.pop();
            }
        }
    }
    walk(s, nb, &mut path, out);
}

fn close_d(s: &CurveSet, nb: &[Vec<usize>], path: &[usize], out: &mut Vec<FibreConfig>) {
    let (a, b) = (path[0], *path.last().unwrap());
    let ends_a: Vec<usize> = nb[a]
        .iter()
        .copied()
        .filter(|&w| attaches_only_to(s, path, w, a))
        .collect();
    let ends_b: Vec<usize> = nb[b]
        .iter()
        .copied()
        .filter(|&w| attaches_only_to(s, path, w, b))
        .collect();
    let n = path.len() as u32 + 3;
    for la in independent_subsets(s, &ends_a, 2) {
        for lb in independent_subsets(s, &ends_b, 2) {
            if lb.iter().any(|x| la.contains(x))
                || la.iter().any(|&x| lb.iter().any(|&y| s.gram[x][y] != 0))
            {
                continue;
            }
            let comps = path
                .iter()
                .map(|&p| (p, 2))
                .chain(la.iter().chain(lb.iter()).map(|&l| (l, 1)))
                .collect();
            out.push(FibreConfig::new(FibreType::D(n), comps));
        }
    }
}

/// Induced arms `x1 - x2 - ... - xk` hanging off `centre`.
fn arms(s: &CurveSet, nb: &[Vec<usize>], centre: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut path = vec![centre];
    fn rec(
        s: &CurveSet,
        nb: &[Vec<usize>],
        path: &mut Vec<usize>,
        max_len: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if path.len() > 1 {
            out.push(path[1..].to_vec());
        }
        if path.len() > max_len {
            return;
        }
        let last = *path.last().unwrap();
        for &w in &nb[last] {
            if attaches_only_to(s, path, w, last) {
                path.push(w);
                rec(s, nb, path, max_len, out);
                path.pop();
            }
        }
    }
    rec(s, nb, &mut path, max_len, &mut out);
    out
}

fn arms_compatible(s: &CurveSet, x: &[usize], y: &[usize]) -> bool {
    x.iter()
        .all(|&a| y.iter().all(|&b| a != b && s.gram[a][b] == 0))
}

/// E~6, E~7, E~8 with branch vertex `v`.
fn e_fibres_from(s: &CurveSet, nb: &[Vec<usize>], v: usize, out: &mut Vec<FibreConfig>) {
    let all = arms(s, nb, v, 5);
    let by_len = |k: usize| all.iter().filter(move |a| a.len() == k).collect::<Vec<_>>();
    let shapes: [(FibreType, [usize; 3], &[u32], &[u32], &[u32], u32); 3] = [
        (FibreType::E6, [2, 2, 2], &[2, 1], &[2, 1], &[2, 1], 3),
        (FibreType::E7, [1, 3, 3], &[2], &[3, 2, 1], &[3, 2, 1], 4),
        (FibreType::E8, [1, 2, 5], &[3], &[4, 2], &[5, 4, 3, 2, 1], 6),
    ];
    for (kind, lens, m0, m1, m2, mc) in shapes {
        let (a0, a1, a2) = (by_len(lens[0]), by_len(lens[1]), by_len(lens[2]));
        for x in &a0 {
            for y in &a1 {
                if !arms_compatible(s, x, y) {
                    continue;
                }
                for z in &a2 {
                    if !arms_compatible(s, x, z) || !arms_compatible(s, y, z) {
                        continue;
                    }
                    let mut comps = vec![(v, mc)];
                    for (arm, ms) in [(x, m0), (y, m1), (z, m2)] {
                        comps.extend(arm.iter().zip(ms.iter()).map(|(&c, &m)| (c, m)));
                    }
                    out.push(FibreConfig::new(kind, comps));
                }
            }
        }
    }
}

/// Exhaustive reference: every connected support with a primitive
/// multiplicity vector (entries 1..=max_mult) orthogonal to its components.
pub fn brute_force_fibres(s: &CurveSet, max_mult: u32) -> BTreeSet<Vec<(usize, u32)>> {
    let n = s.len();
    assert!(n <= 16, "brute force is limited to small curve sets");
    let mut out = BTreeSet::new();
    for mask in 1u32..(1u32 << n) {
        let verts: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if verts.len() < 2 || !connected(s, &verts) {
            continue;
        }
        let mut m = vec![0u32; verts.len()];
        assign(s, &verts, 0, max_mult, &mut m, &mut out);
    }
    out
}

fn connected(s: &CurveSet, verts: &[usize]) -> bool {
    let mut seen = vec![false; verts.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..verts.len() {
            if !seen[j] && s.gram[verts[i]][verts[j]] != 0 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.iter().all(|&b| b)
}

fn assign(
    s: &CurveSet,
    verts: &[usize],
    k: usize,
    max_mult: u32,
    m: &mut Vec<u32>,
    out: &mut BTreeSet<Vec<(usize, u32)>>,
) {
    if k == verts.len() {
        let ok = (0..verts.len()).all(|i| {
            let d: i64 = (0..verts.len())
                .map(|j| m[j] as i64 * s.gram[verts[i]][verts[j]])
                .sum();
            d == 0
        });
        let g = m.iter().fold(0u32, |a, &b| a.gcd(&b));
        if ok && g == 1 {
            out.insert(verts.iter().copied().zip(m.iter().copied()).collect());
        }
        return;
    }
    for x in 1..=max_mult {
        m[k] = x;
        // off-diagonal terms only grow, and a vertex with all neighbours
        // assigned must balance exactly
        let bad = (0..=k).any(|i| {
            let off: i64 = (0..=k)
                .filter(|&j| j != i)
                .map(|j| m[j] as i64 * s.gram[verts[i]][verts[j]])
                .sum();
            let done = (k + 1..verts.len()).all(|j| s.gram[verts[i]][verts[j]] == 0);
            off > 2 * m[i] as i64 || (done && off != 2 * m[i] as i64)
        });
        if !bad {
            assign(s, verts, k + 1, max_mult, m, out);
        }
    }
    m[k] = 0;
}

/// Fibres sharing a numerical class.
#[derive(Clone, Debug)]
pub struct Fibration {
    pub key: Vec<i64>,
    pub fibres: Vec<usize>,
    pub sections: Vec<usize>,
}

impl Fibration {
    /// Whether some divisor meets the fibre once: the gcd of the key is 1
    /// when the curves span the Picard lattice.
    pub fn has_section(&self) -> bool {
        self.key.iter().fold(0i64, |a, &b| a.gcd(&b)) == 1
    }

    pub fn has_section_in_set(&self) -> bool {
        !self.sections.is_empty()
    }
}

/// Group fibres by the intersection vector of their class.
pub fn group_fibrations(fibres: &[FibreConfig], s: &CurveSet) -> Result<Vec<Fibration>> {
    let mut groups: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (i, f) in fibres.iter().enumerate() {
        groups.entry(s.key(&f.components)).or_default().push(i);
    }
    let mut out = Vec::with_capacity(groups.len());
    for (key, members) in groups {
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                let ki = s.key(&fibres[i].components);
                let d: i64 = fibres[j]
                    .components
                    .iter()
                    .map(|&(c, m)| m as i64 * ki[c])
                    .sum();
                if d != 0
                    || fibres[i]
                        .support()
                        .iter()
                        .any(|c| fibres[j].support().contains(c))
                {
                    return Err(Error::Check(format!(
                        "fibres {} and {} share a key but meet; the curve set does not span",
                        fibres[i].render(s),
                        fibres[j].render(s)
                    )));
                }
            }
        }
        let sections = find_sections(&key);
        out.push(Fibration {
            key,
            fibres: members,
            sections,
        });
    }
    Ok(out)
}

/// Curves meeting the fibre class once.
pub fn find_sections(key: &[i64]) -> Vec<usize> {
    (0..key.len()).filter(|&i| key[i] == 1).collect()
}

/// Closure of the generated permutation group, after checking each generator
/// preserves the Gram matrix.
pub fn permutation_group(s: &CurveSet, gens: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    let n = s.len();
    for g in gens {
        let mut seen = g.clone();
        seen.sort();
        if g.len() != n || seen != (0..n).collect::<Vec<_>>() {
            return Err(Error::Domain(
                "generator is not a permutation of the curves".into(),
            ));
        }
        if !(0..n).all(|i| (0..n).all(|j| s.gram[g[i]][g[j]] == s.gram[i][j])) {
            return Err(Error::Domain(
                "generator does not preserve the intersection matrix".into(),
            ));
        }
    }
    let id: Vec<usize> = (0..n).collect();
    let mut group: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(h) = frontier.pop() {
        for g in gens {
            let gh: Vec<usize> = (0..n).map(|i| g[h[i]]).collect();
            if group.insert(gh.clone()) {
                frontier.push(gh);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = group.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Generator permutation from label pairs; unnamed labels are fixed.
pub fn permutation_from_swaps(s: &CurveSet, swaps: &[(String, String)]) -> Result<Vec<usize>> {
    let mut p: Vec<usize> = (0..s.len()).collect();
    for (a, b) in swaps {
        let (i, j) = (s.index(a)?, s.index(b)?);
        p[i] = j;
        p[j] = i;
    }
    Ok(p)
}

/// Generators declared by a fixture: the product of its `swap` lines, then one
/// permutation per `generator` line, written as `A B; C D; ...`.
pub fn generators_from_fixture(s: &CurveSet, f: &GramFixture) -> Result<Vec<Vec<usize>>> {
    let mut gens = vec![];
    if !f.swaps.is_empty() {
        gens.push(permutation_from_swaps(s, &f.swaps)?);
    }
    for (k, v) in &f.meta {
        if k != "generator" {
            continue;
        }
        let pairs = v
            .split(';')
            .map(|t| match t.split_whitespace().collect::<Vec<_>>()[..] {
                [a, b] => Ok((a.to_string(), b.to_string())),
                _ => Err(Error::Fixture(format!("bad transposition {t:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        gens.push(permutation_from_swaps(s, &pairs)?);
    }
    Ok(gens)
}

fn act(g: &[usize], key: &[i64]) -> Vec<i64> {
    let mut out = vec![0; key.len()];
    for (j, &v) in key.iter().enumerate() {
        out[g[j]] = v;
    }
    out
}

/// Number of orbits of fibrations under the group, by minimal image of keys.
pub fn orbit_count<'a>(
    fibrations: impl IntoIterator<Item = &'a Fibration>,
    group: &[Vec<usize>],
) -> usize {
    let canon: HashSet<Vec<i64>> = fibrations
        .into_iter()
        .map(|f| {
            group
                .iter()
                .map(|g| act(g, &f.key))
                .min()
                .unwrap_or_else(|| f.key.clone())
        })
        .collect();
    canon.len()
}

/// Summary counts of a search.
#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub curves: usize,
    pub gram_rank: usize,
    pub fibres: usize,
    pub fibrations: usize,
    pub with_section_in_set: usize,
    pub orbits: usize,
    pub orbits_with_section: usize,
    pub orbits_with_section_in_set: usize,
    pub types: BTreeMap<String, usize>,
    /// I2/I3 may be III/IV: tangency and concurrence data are not consulted.
    pub tangency_checked: bool,
}

pub fn census(
    s: &CurveSet,
    fibres: &[FibreConfig],
    fibrations: &[Fibration],
    group: &[Vec<usize>],
) -> Census {
    let mut types = BTreeMap::new();
    for f in fibres {
        *types.entry(f.kind.to_string()).or_insert(0) += 1;
    }
    Census {
        curves: s.len(),
        gram_rank: s.rank(),
        fibres: fibres.len(),
        fibrations: fibrations.len(),
        with_section_in_set: fibrations.iter().filter(|f| f.has_section_in_set()).count(),
        orbits: orbit_count(fibrations, group),
        orbits_with_section: orbit_count(fibrations.iter().filter(|f| f.has_section()), group),
        orbits_with_section_in_set: orbit_count(
            fibrations.iter().filter(|f| f.has_section_in_set()),
            group,
        ),
        types,
        tangency_checked: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curves(n: usize, edges: &[(usize, usize, i64)]) -> CurveSet {
        let mut g = vec![vec![0i64; n]; n];
        for i in 0..n {
            g[i][i] = -2;
        }
        for &(a, b, m) in edges {
            g[a][b] = m;
            g[b][a] = m;
        }
        CurveSet::from_gram((0..n).map(|i| format!("c{i}")).collect(), g).unwrap()
    }

    #[test]
    fn small_configurations() {
        let tri = curves(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]);
        let f = find_fibres(&tri, 10);
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].kind, FibreType::I(3));
        let pair = curves(2, &[(0, 1, 2)]);
        let f = find_fibres(&pair, 10);
        assert_eq!((f.len(), f[0].kind), (1, FibreType::I(2)));
        let star = curves(5, &[(0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 4, 1)]);
        let f = find_fibres(&star, 10);
        assert_eq!(f.len(), 1);
        assert_eq!(
            f[0].components,
            vec![(0, 2), (1, 1), (2, 1), (3, 1), (4, 1)]
        );
    }

    #[test]
    fn shared_curve_gives_two_fibrations() {
        let s = curves(
            5,
            &[
                (0, 1, 1),
                (1, 2, 1),
                (0, 2, 1),
                (2, 3, 1),
                (3, 4, 1),
                (2, 4, 1),
            ],
        );
        let f = find_fibres(&s, 10);
        assert_eq!(f.len(), 2);
        let fib = group_fibrations(&f, &s).unwrap();
        assert_eq!(fib.len(), 2);
        let id: Vec<Vec<usize>> = vec![(0..5).collect()];
        assert_eq!(orbit_count(&fib, &id), 2);
        let g = permutation_group(&s, &[vec![3, 4, 2, 0, 1]]).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(orbit_count(&fib, &g), 1);
        assert!(permutation_group(&s, &[vec![2, 1, 0, 4, 3]]).is_err());
    }

    #[test]
    fn section_of_single_fibre() {
        let s = curves(3, &[(0, 1, 2), (1, 2, 1)]);
        let f = find_fibres(&s, 10);
        let fib = group_fibrations(&f, &s).unwrap();
        assert_eq!(fib.len(), 1);
        assert_eq!(fib[0].sections, vec![2]);
    }

    #[test]
    fn exceptional_trees() {
        // E~8: centre 0, arms [1], [2,3], [4,5,6,7,8]
        let e8 = curves(
            9,
            &[
                (0, 1, 1),
                (0, 2, 1),
                (2, 3, 1),
                (0, 4, 1),
                (4, 5, 1),
                (5, 6, 1),
                (6, 7, 1),
                (7, 8, 1),
            ],
        );
        let f = find_fibres(&e8, 10);
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].kind, FibreType::E8);
        assert_eq!(f[0].components.iter().map(|c| c.1).sum::<u32>(), 30);
        let bf = brute_force_fibres(&e8, 6);
        assert_eq!(
            bf.into_iter().collect::<Vec<_>>(),
            vec![f[0].components.clone()]
        );
        // D~6 chain of three with two leaves at each end
        let d6 = curves(
            7,
            &[
                (0, 1, 1),
                (1, 2, 1),
                (0, 3, 1),
                (0, 4, 1),
                (2, 5, 1),
                (2, 6, 1),
            ],
        );
        let f = find_fibres(&d6, 10);
        assert_eq!(
            f.iter().map(|x| x.kind).collect::<Vec<_>>(),
            vec![FibreType::D(6)]
        );
    }
}
