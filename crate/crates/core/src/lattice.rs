//! Integer lattices given by Gram matrices: Bareiss determinants, Smith
//! normal form, discriminant groups, index-2 overlattices and the
//! cohomology of an involution.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
pub type Mat = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn from_i64(rows: &[Vec<i64>]) -> Mat {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn transpose(m: &Mat) -> Mat {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Mat, v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

fn columns(m: &Mat, idx: impl Iterator<Item = usize>) -> Mat {
    let idx: Vec<usize> = idx.collect();
    m.iter()
        .map(|r| idx.iter().map(|&j| r[j].clone()).collect())
        .collect()
}

/// Determinant and rank by fraction-free Gaussian elimination.
pub fn bareiss(m: &Mat) -> (usize, BigInt) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = m.clone();
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            sign = -sign;
        }
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let v = &a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    let det = if rows == cols && rank == rows {
        sign * prev
    } else {
        BigInt::zero()
    };
    (rank, det)
}

/// `u * m * v = diag(d)` with `d[i] | d[i+1]` and `u`, `v` unimodular.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub d: Vec<BigInt>,
    pub u: Mat,
    pub v: Mat,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.d.iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith(m: &Mat) -> SmithDecomposition {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let steps = rows.min(cols);
    for t in 0..steps {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                let d = (0..steps).map(|i| a[i][i].clone()).collect();
                return SmithDecomposition { d, u, v };
            };
            a.swap(t, pi);
            u.swap(t, pi);
            for r in a.iter_mut() {
                r.swap(t, pj);
            }
            for r in v.iter_mut() {
                r.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let one = BigInt::from(-1);
                    row_axpy(&mut a, t, i, &one);
                    row_axpy(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    let d = (0..steps).map(|i| a[i][i].clone()).collect();
    SmithDecomposition { d, u, v }
}

/// row[i] -= q * row[k]
fn row_axpy(a: &mut Mat, i: usize, k: usize, q: &BigInt) {
    let src = a[k].clone();
    for (x, s) in a[i].iter_mut().zip(src.iter()) {
        if !s.is_zero() {
            *x -= q * s;
        }
    }
}

/// col[j] -= q * col[k]
fn col_axpy(a: &mut Mat, j: usize, k: usize, q: &BigInt) {
    for r in a.iter_mut() {
        if !r[k].is_zero() {
            let s = &r[k] * q;
            r[j] -= s;
        }
    }
}

/// Saturated integer basis of `{v : m v = 0}`, as columns.
pub fn kernel_basis(m: &Mat, n: usize) -> Mat {
    if m.is_empty() {
        return identity(n);
    }
    let s = smith(m);
    let r = s.rank();
    columns(&s.v, r..n)
}

/// Finitely generated abelian group `Z^free_rank + sum Z/torsion_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    #[serde(serialize_with = "crate::lattice::ser_bigints")]
    pub torsion: Vec<BigInt>,
}

pub(crate) fn ser_bigints<S: serde::Serializer>(
    v: &[BigInt],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self {
            free_rank: 0,
            torsion: vec![],
        }
    }
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
    /// Number of `Z/2` summands when the group is elementary 2-torsion.
    pub fn two_rank(&self) -> Option<usize> {
        (self.free_rank == 0 && self.torsion.iter().all(|t| *t == BigInt::from(2)))
            .then_some(self.torsion.len())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = vec![];
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut counts: BTreeMap<&BigInt, usize> = BTreeMap::new();
        for t in &self.torsion {
            *counts.entry(t).or_default() += 1;
        }
        for (t, c) in counts {
            if c == 1 {
                parts.push(format!("Z/{t}"));
            } else {
                parts.push(format!("(Z/{t})^{c}"));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Quotient `A / B` where `a` is a saturated basis (columns) and `b` generators
/// (columns) lying in the span of `a`.
pub fn quotient(a: &Mat, b: &Mat) -> Result<AbelianGroup> {
    let k = a.first().map_or(0, |r| r.len());
    if k == 0 {
        return Ok(AbelianGroup::trivial());
    }
    let s = smith(a);
    if s.d.iter().take(k).any(|d| !d.is_one()) {
        return Err(Error::Domain(
            "quotient: numerator basis is not saturated".into(),
        ));
    }
    if b.first().is_none_or(|r| r.is_empty()) {
        return Ok(AbelianGroup {
            free_rank: k,
            torsion: vec![],
        });
    }
    // left inverse of a: v * (first k rows of u)
    let left: Mat = mat_mul(&s.v, &s.u[..k].to_vec());
    let coords = mat_mul(&left, b);
    if mat_mul(a, &coords) != *b {
        return Err(Error::Domain(
            "quotient: generators do not lie in the numerator".into(),
        ));
    }
    let sb = smith(&coords);
    let r = sb.rank();
    let torsion =
        sb.d.iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect();
    Ok(AbelianGroup {
        free_rank: k - r,
        torsion,
    })
}

/// Symmetric integer matrix with one label per generator.
#[derive(Clone, Debug, PartialEq)]
pub struct GramLattice {
    pub labels: Vec<String>,
    pub gram: Mat,
}

/// Fixture metadata: where the matrix came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    PaperText,
    PaperAncillary,
    Derived,
}

impl Provenance {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "paper-text" => Ok(Self::PaperText),
            "paper-ancillary" => Ok(Self::PaperAncillary),
            "derived" => Ok(Self::Derived),
            other => Err(Error::Fixture(format!("unknown provenance {other:?}"))),
        }
    }
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::PaperText => "paper-text",
            Self::PaperAncillary => "paper-ancillary",
            Self::Derived => "derived",
        }
    }
}

/// A Gram fixture: the lattice, its metadata block and any declared label
/// transpositions generating a symmetry.
#[derive(Clone, Debug)]
pub struct GramFixture {
    pub lattice: GramLattice,
    pub provenance: Provenance,
    pub meta: Vec<(String, String)>,
    pub swaps: Vec<(String, String)>,
}

impl GramFixture {
    /// Parse the plain-text grid format:
    ///
    /// ```text
    /// # provenance: paper-text
    /// # source: free text
    /// # swap: A B
    /// labels A B
    /// -2 1
    /// 1 -2
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut meta = vec![];
        let mut swaps = vec![];
        let mut labels: Option<Vec<String>> = None;
        let mut rows: Vec<Vec<BigInt>> = vec![];
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if let Some((k, v)) = rest.split_once(':') {
                    let (k, v) = (k.trim().to_string(), v.trim().to_string());
                    if k == "swap" {
                        let parts: Vec<&str> = v.split_whitespace().collect();
                        if parts.len() != 2 {
                            return Err(Error::Fixture(format!(
                                "line {}: swap needs two labels",
                                lineno + 1
                            )));
                        }
                        swaps.push((parts[0].to_string(), parts[1].to_string()));
                    } else {
                        meta.push((k, v));
                    }
                }
                continue;
            }
            if let Some(rest) = line.strip_prefix("labels") {
                labels = Some(rest.split_whitespace().map(str::to_string).collect());
                continue;
            }
            let row: std::result::Result<Vec<BigInt>, _> = line
                .split_whitespace()
                .map(|t| t.parse::<BigInt>())
                .collect();
            rows.push(row.map_err(|e| Error::Fixture(format!("line {}: {e}", lineno + 1)))?);
        }
        let provenance = meta
            .iter()
            .find(|(k, _)| k == "provenance")
            .map(|(_, v)| Provenance::parse(v))
            .ok_or_else(|| Error::Fixture("missing provenance".into()))??;
        let labels = labels.ok_or_else(|| Error::Fixture("missing labels row".into()))?;
        let lattice = GramLattice::new(labels, rows).map_err(|e| Error::Fixture(e.to_string()))?;
        for (a, b) in &swaps {
            lattice.index(a)?;
            lattice.index(b)?;
        }
        Ok(Self {
            lattice,
            provenance,
            meta,
            swaps,
        })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# provenance: {}\n", self.provenance.as_str()));
        for (k, v) in &self.meta {
            if k != "provenance" {
                out.push_str(&format!("# {k}: {v}\n"));
            }
        }
        for (a, b) in &self.swaps {
            out.push_str(&format!("# swap: {a} {b}\n"));
        }
        out.push_str(&format!("labels {}\n", self.lattice.labels.join(" ")));
        for r in &self.lattice.gram {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// The declared symmetry as a permutation of generator indices.
    pub fn permutation(&self) -> Result<Vec<usize>> {
        let n = self.lattice.dim();
        let mut perm: Vec<usize> = (0..n).collect();
        for (a, b) in &self.swaps {
            let (i, j) = (self.lattice.index(a)?, self.lattice.index(b)?);
            perm.swap(i, j);
        }
        Ok(perm)
    }
}

impl GramLattice {
    pub fn new(labels: Vec<String>, gram: Mat) -> Result<Self> {
        let n = labels.len();
        if gram.len() != n || gram.iter().any(|r| r.len() != n) {
            return Err(Error::Domain(format!("gram must be {n}x{n}")));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Domain(format!(
                        "gram not symmetric at ({}, {})",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(Self { labels, gram })
    }

    pub fn from_i64(labels: &[&str], rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            labels.iter().map(|s| s.to_string()).collect(),
            from_i64(rows),
        )
    }

    /// Generators with the given squares and unit intersections on `edges`.
    pub fn from_graph(
        labels: &[&str],
        squares: &[i64],
        edges: &[(&str, &str, i64)],
    ) -> Result<Self> {
        let n = labels.len();
        let mut g = vec![vec![0i64; n]; n];
        for i in 0..n {
            g[i][i] = squares[i];
        }
        let idx = |s: &str| {
            labels
                .iter()
                .position(|l| *l == s)
                .ok_or_else(|| Error::Domain(format!("unknown label {s}")))
        };
        for &(a, b, m) in edges {
            let (i, j) = (idx(a)?, idx(b)?);
            g[i][j] = m;
            g[j][i] = m;
        }
        Self::from_i64(labels, &g)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Domain(format!("unknown label {label}")))
    }

    pub fn dot(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let gy = mat_vec(&self.gram, y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    /// Saturated basis of the radical, one vector per entry.
    pub fn kernel_relation(&self) -> Vec<Vec<BigInt>> {
        let k = kernel_basis(&self.gram, self.dim());
        transpose(&k)
            .into_iter()
            .filter(|v| !v.is_empty())
            .collect()
    }

    /// Unimodular `v` whose first `rank` columns map onto a basis of the
    /// lattice spanned by the generators.
    fn span_basis(&self) -> (usize, Mat) {
        let s = smith(&self.gram);
        (s.rank(), s.v)
    }

    /// Gram matrix of the generated lattice on a Z-basis.
    pub fn reduced(&self) -> GramLattice {
        let (r, v) = self.span_basis();
        let b = columns(&v, 0..r);
        let g = mat_mul(&mat_mul(&transpose(&b), &self.gram), &b);
        let labels = (0..r).map(|i| format!("b{}", i + 1)).collect();
        GramLattice { labels, gram: g }
    }

    /// Rank and determinant of the generated lattice.
    pub fn rank_det(&self) -> (usize, BigInt) {
        let (rank, det) = bareiss(&self.gram);
        if rank == self.dim() {
            return (rank, det);
        }
        let red = self.reduced();
        let (r2, d2) = bareiss(&red.gram);
        debug_assert_eq!(r2, rank);
        (rank, d2)
    }

    /// Nontrivial elementary divisors of the generated lattice.
    pub fn discriminant_group(&self) -> Result<Vec<BigInt>> {
        let red = self.reduced();
        let s = smith(&red.gram);
        if s.d.iter().any(|d| d.is_zero()) {
            return Err(Error::Domain("degenerate restriction".into()));
        }
        Ok(s.d.into_iter().filter(|d| !d.is_one()).collect())
    }

    /// Nonzero classes of `L/2L` that glue to an even index-2 overlattice.
    /// The Gram must be nondegenerate and even.
    pub fn index2_overlattice_candidates(&self) -> Result<Vec<Vec<u8>>> {
        let n = self.dim();
        let (rank, _) = bareiss(&self.gram);
        if rank != n {
            return Err(Error::Domain("index-2 test needs a Gram on a basis".into()));
        }
        if self.gram.iter().enumerate().any(|(i, r)| r[i].is_odd()) {
            return Err(Error::Domain("index-2 test needs an even lattice".into()));
        }
        let mod2: Vec<Vec<u8>> = self
            .gram
            .iter()
            .map(|r| r.iter().map(|x| if x.is_odd() { 1 } else { 0 }).collect())
            .collect();
        let basis = f2_kernel(&mod2);
        let d = basis.len();
        if d > 24 {
            return Err(Error::Domain(format!("2-rank {d} too large to enumerate")));
        }
        let eight = BigInt::from(8);
        let mut out = vec![];
        for mask in 1u64..(1u64 << d) {
            let mut x = vec![0u8; n];
            for (k, b) in basis.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    for i in 0..n {
                        x[i] ^= b[i];
                    }
                }
            }
            let xv: Vec<BigInt> = x.iter().map(|&b| BigInt::from(b)).collect();
            if self.dot(&xv, &xv).mod_floor(&eight).is_zero() {
                out.push(x);
            }
        }
        out.sort();
        Ok(out)
    }

    /// Apply the integer basis change whose columns are the new generators.
    pub fn change_basis(&self, labels: Vec<String>, b: &Mat) -> GramLattice {
        let g = mat_mul(&mat_mul(&transpose(b), &self.gram), b);
        GramLattice { labels, gram: g }
    }

    /// True when the Gram entries between different blocks all vanish.
    pub fn direct_sum_split_check(&self, partition: &[Vec<usize>]) -> Result<bool> {
        let n = self.dim();
        let mut block = vec![usize::MAX; n];
        for (k, part) in partition.iter().enumerate() {
            for &i in part {
                if i >= n || block[i] != usize::MAX {
                    return Err(Error::Domain(
                        "partition indices out of range or repeated".into(),
                    ));
                }
                block[i] = k;
            }
        }
        if block.contains(&usize::MAX) {
            return Err(Error::Domain("partition does not cover the basis".into()));
        }
        Ok((0..n).all(|i| (0..n).all(|j| block[i] == block[j] || self.gram[i][j].is_zero())))
    }

    pub fn sub_lattice(&self, idx: &[usize]) -> GramLattice {
        GramLattice {
            labels: idx.iter().map(|&i| self.labels[i].clone()).collect(),
            gram: idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.gram[i][j].clone()).collect())
                .collect(),
        }
    }

    /// Whether a permutation of generators preserves the Gram matrix.
    pub fn preserves(&self, perm: &[usize]) -> bool {
        let n = self.dim();
        perm.len() == n
            && (0..n).all(|i| (0..n).all(|j| self.gram[perm[i]][perm[j]] == self.gram[i][j]))
    }

    /// Action of a generator permutation on the reduced basis of `reduced()`.
    pub fn induced_action(&self, perm: &[usize]) -> Result<Mat> {
        if !self.preserves(perm) {
            return Err(Error::Domain(
                "permutation does not preserve the Gram matrix".into(),
            ));
        }
        let n = self.dim();
        let (r, v) = self.span_basis();
        let vinv = unimodular_inverse(&v)?;
        let mut p = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            p[perm[i]][i] = BigInt::one();
        }
        let full = mat_mul(&mat_mul(&vinv, &p), &v);
        Ok(full[..r].iter().map(|row| row[..r].to_vec()).collect())
    }
}

/// Inverse of a unimodular matrix by solving against the identity.
pub fn unimodular_inverse(m: &Mat) -> Result<Mat> {
    let n = m.len();
    let s = smith(m);
    if s.d.iter().any(|d| !d.is_one()) {
        return Err(Error::Domain("matrix is not unimodular".into()));
    }
    // u m v = I  =>  m^-1 = v u
    let inv = mat_mul(&s.v, &s.u);
    debug_assert_eq!(mat_mul(m, &inv), identity(n));
    Ok(inv)
}

/// Basis of the kernel of a matrix over F_2.
fn f2_kernel(m: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<u8>> = m.to_vec();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| a[i][c] == 1) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..rows {
            if i != r && a[i][c] == 1 {
                for j in 0..cols {
                    a[i][j] ^= a[r][j];
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u8; cols];
            v[f] = 1;
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = a[k][f];
            }
            v
        })
        .collect()
}

/// A lattice with an involution, given by its action on a basis (columns are
/// images of basis vectors).
#[derive(Clone, Debug)]
pub struct InvolutionModule {
    pub sigma: Mat,
    pub gram: Option<Mat>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cohomology {
    pub h0_rank: usize,
    pub h1: AbelianGroup,
    pub h2: AbelianGroup,
}

impl InvolutionModule {
    pub fn new(sigma: Mat, gram: Option<Mat>) -> Result<Self> {
        let n = sigma.len();
        if sigma.iter().any(|r| r.len() != n) {
            return Err(Error::Domain("action must be square".into()));
        }
        if mat_mul(&sigma, &sigma) != identity(n) {
            return Err(Error::Domain("action is not an involution".into()));
        }
        if let Some(g) = &gram {
            if mat_mul(&mat_mul(&transpose(&sigma), g), &sigma) != *g {
                return Err(Error::Domain(
                    "action does not preserve the Gram matrix".into(),
                ));
            }
        }
        Ok(Self { sigma, gram })
    }

    pub fn from_permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut s = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            s[perm[i]][i] = BigInt::one();
        }
        Self::new(s, None)
    }

    pub fn c2_cohomology(&self) -> Result<Cohomology> {
        let n = self.sigma.len();
        let id = identity(n);
        let minus: Mat = (0..n)
            .map(|i| (0..n).map(|j| &self.sigma[i][j] - &id[i][j]).collect())
            .collect();
        let plus: Mat = (0..n)
            .map(|i| (0..n).map(|j| &self.sigma[i][j] + &id[i][j]).collect())
            .collect();
        let ker_minus = kernel_basis(&minus, n);
        let ker_plus = kernel_basis(&plus, n);
        let h0_rank = ker_minus.first().map_or(0, |r| r.len());
        let h1 = quotient(&ker_plus, &minus)?;
        let h2 = quotient(&ker_minus, &plus)?;
        Ok(Cohomology { h0_rank, h1, h2 })
    }
}

/// Labels of the fibration generators: the components of reducible fibres
/// away from the zero section, the zero section, the fibre class and the two
/// sections of infinite order and order two.
pub const FIBRATION_LABELS: [&str; 20] = [
    "a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9", "th_inf", "th_plus", "th_minus", "th_m1",
    "b1", "b2", "b3", "O", "F", "P", "T",
];

/// Gram matrix of the 20 fibration generators read off their dual graph.
pub fn fibration_lattice() -> GramLattice {
    let mut squares = [-2i64; 20];
    squares[17] = 0;
    let edges = [
        ("a1", "a2", 1),
        ("a2", "a3", 1),
        ("a3", "a4", 1),
        ("a4", "a5", 1),
        ("a5", "a6", 1),
        ("a6", "a7", 1),
        ("a7", "a8", 1),
        ("a8", "a9", 1),
        ("a5", "T", 1),
        ("a3", "P", 1),
        ("th_minus", "T", 1),
        ("T", "th_inf", 1),
        ("th_inf", "P", 1),
        ("P", "b1", 1),
        ("b1", "b2", 1),
        ("b2", "b3", 1),
        ("th_plus", "T", 1),
        ("T", "F", 1),
        ("F", "O", 1),
        ("P", "th_m1", 1),
        ("P", "F", 1),
    ];
    GramLattice::from_graph(&FIBRATION_LABELS, &squares, &edges).expect("static graph")
}

/// The printed linear relation among the fibration generators.
pub fn fibration_relation() -> Vec<BigInt> {
    let mut v = vec![0i64; 20];
    v[..9].copy_from_slice(&[1, 2, 3, 4, 5, 4, 3, 2, 1]);
    v[9] = 1;
    v[10] = 1;
    v[11] = 1;
    v[16] = -2;
    v[17] = -4;
    v[19] = 2;
    v.into_iter().map(BigInt::from).collect()
}

/// Indices of the 19-generator basis: everything except the component at
/// infinity.
pub fn fibration_basis() -> Vec<usize> {
    (0..20).filter(|&i| i != 9).collect()
}

/// Project every basis vector onto the orthogonal complement of the
/// hyperbolic plane spanned by a section `o` (`o² = −2`) and a fibre class
/// `f` (`f² = 0`, `o·f = 1`): `v ↦ v − (v·f)o − (v·o + 2v·f)f`. Returns the
/// new Gram and the partition into the complement and `<o, f>`.
pub fn hyperbolic_split(
    l: &GramLattice,
    o: &str,
    f: &str,
) -> Result<(GramLattice, Vec<Vec<usize>>)> {
    let (io, iff) = (l.index(o)?, l.index(f)?);
    let g = &l.gram;
    if g[io][io] != BigInt::from(-2) || !g[iff][iff].is_zero() || !g[io][iff].is_one() {
        return Err(Error::Domain(format!(
            "{o}, {f} do not span a hyperbolic plane"
        )));
    }
    let n = l.dim();
    let mut change = identity(n);
    let mut labels = l.labels.clone();
    for c in (0..n).filter(|&c| c != io && c != iff) {
        let a = g[c][iff].clone();
        let b: BigInt = &g[c][io] + &a * 2;
        if !a.is_zero() || !b.is_zero() {
            labels[c] = format!("{}'", labels[c]);
        }
        change[io][c] = -a;
        change[iff][c] = -b;
    }
    let split = l.change_basis(labels, &change);
    let rest: Vec<usize> = (0..n).filter(|&i| i != io && i != iff).collect();
    Ok((split, vec![rest, vec![io, iff]]))
}

/// [`hyperbolic_split`] of the 19-generator basis at the zero section and
/// the fibre class.
pub fn fibration_split() -> (GramLattice, Vec<Vec<usize>>) {
    let b0 = fibration_lattice().sub_lattice(&fibration_basis());
    hyperbolic_split(&b0, "O", "F").expect("static lattice")
}

pub fn to_i64(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("small entry")).collect()
}

/// A fixture's lattice together with its declared involution. With a
/// `basis` entry the module is the span of those labels; otherwise it is the
/// lattice generated by all labels, on a reduced basis.
#[derive(Clone, Debug)]
pub struct FixtureModule {
    pub lattice: GramLattice,
    pub module: InvolutionModule,
}

impl FixtureModule {
    pub fn new(f: &GramFixture) -> Result<Self> {
        let perm = f.permutation()?;
        if !f.lattice.preserves(&perm) {
            return Err(Error::Fixture(
                "declared swaps do not preserve the Gram matrix".into(),
            ));
        }
        if let Some(b) = f.meta("basis") {
            let idx: Vec<usize> = b
                .split_whitespace()
                .map(|l| f.lattice.index(l))
                .collect::<Result<_>>()?;
            let sub = f.lattice.sub_lattice(&idx);
            let local: Vec<usize> = idx
                .iter()
                .map(|&i| {
                    idx.iter()
                        .position(|&j| j == perm[i])
                        .ok_or_else(|| Error::Fixture("swap leaves the declared basis".into()))
                })
                .collect::<Result<_>>()?;
            let module = InvolutionModule::from_permutation(&local)?;
            return Ok(Self {
                lattice: sub,
                module,
            });
        }
        let red = f.lattice.reduced();
        let action = f.lattice.induced_action(&perm)?;
        let module = InvolutionModule::new(action, Some(red.gram.clone()))?;
        Ok(Self {
            lattice: red,
            module,
        })
    }

    /// Index-2 candidates with the index of each one's image under the involution.
    pub fn index2_orbits(&self) -> Result<Vec<(Vec<u8>, usize)>> {
        let cands = self.lattice.index2_overlattice_candidates()?;
        cands
            .iter()
            .map(|c| {
                let img = act_mod2(&self.module.sigma, c);
                let j = cands.iter().position(|d| *d == img).ok_or_else(|| {
                    Error::Check("involution does not permute the candidates".into())
                })?;
                Ok((c.clone(), j))
            })
            .collect()
    }
}

/// `σ·x mod 2` for a matrix whose columns are images of basis vectors.
pub fn act_mod2(sigma: &Mat, x: &[u8]) -> Vec<u8> {
    let two = BigInt::from(2);
    sigma
        .iter()
        .map(|row| {
            let s: BigInt = row
                .iter()
                .zip(x)
                .filter(|(_, &b)| b == 1)
                .map(|(c, _)| c.clone())
                .sum();
            u8::from(!s.mod_floor(&two).is_zero())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_ranks_and_determinants() {
        let a1 = GramLattice::from_i64(&["x"], &[vec![-2]]).unwrap();
        assert_eq!(a1.rank_det(), (1, BigInt::from(-2)));
        assert_eq!(a1.discriminant_group().unwrap(), big(&[2]));
        let u = GramLattice::from_i64(&["e", "f"], &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(u.rank_det(), (2, BigInt::from(-1)));
        assert!(u.discriminant_group().unwrap().is_empty());
        assert!(u.index2_overlattice_candidates().unwrap().is_empty());
        assert!(GramLattice::from_i64(&["a", "b"], &[vec![0, 1], vec![2, 0]]).is_err());
    }

    #[test]
    fn smith_examples() {
        assert_eq!(smith(&from_i64(&[vec![2, 0], vec![0, 6]])).d, big(&[2, 6]));
        assert_eq!(smith(&from_i64(&[vec![2, 0], vec![0, 3]])).d, big(&[1, 6]));
        let m = from_i64(&[vec![4, 6, 2], vec![6, 9, 3]]);
        let s = smith(&m);
        assert_eq!(mat_mul(&mat_mul(&s.u, &m), &s.v)[0][0], s.d[0]);
        assert_eq!(s.d, big(&[1, 0]));
    }

    #[test]
    fn cohomology_of_standard_modules() {
        let triv = InvolutionModule::new(identity(4), None)
            .unwrap()
            .c2_cohomology()
            .unwrap();
        assert_eq!(triv.h0_rank, 4);
        assert!(triv.h1.is_trivial());
        assert_eq!(triv.h2.two_rank(), Some(4));
        let reg = InvolutionModule::from_permutation(&[1, 0])
            .unwrap()
            .c2_cohomology()
            .unwrap();
        assert_eq!(
            (reg.h0_rank, reg.h1.is_trivial(), reg.h2.is_trivial()),
            (1, true, true)
        );
        let sign = InvolutionModule::new(from_i64(&[vec![-1]]), None)
            .unwrap()
            .c2_cohomology()
            .unwrap();
        assert_eq!(
            (sign.h0_rank, sign.h1.two_rank(), sign.h2.is_trivial()),
            (0, Some(1), true)
        );
        assert!(InvolutionModule::new(from_i64(&[vec![2]]), None).is_err());
    }

    #[test]
    fn fibration_generators() {
        let l = fibration_lattice();
        let (rank, _) = l.rank_det();
        assert_eq!(rank, 19);
        let rad = l.kernel_relation();
        assert_eq!(rad.len(), 1);
        let rel = fibration_relation();
        assert!(mat_vec(&l.gram, &rel).iter().all(|x| x.is_zero()));
        let r = &rad[0];
        let k = &rel[0] / &r[0];
        assert!(r.iter().zip(&rel).all(|(a, b)| a * &k == *b));

        let b0 = l.sub_lattice(&fibration_basis());
        let (r0, d0) = b0.rank_det();
        assert_eq!((r0, d0.abs()), (19, BigInt::from(24)));
        assert_eq!(l.rank_det().1.abs(), BigInt::from(24));

        let (split, parts) = fibration_split();
        assert!(split.direct_sum_split_check(&parts).unwrap());
        let big_part = split.sub_lattice(&parts[0]);
        assert_eq!(big_part.rank_det(), (17, BigInt::from(-24)));
        let hyp = split.sub_lattice(&parts[1]);
        assert_eq!(hyp.rank_det(), (2, BigInt::from(-1)));
    }

    #[test]
    fn fibration_module_cohomology() {
        let b0 = fibration_lattice().sub_lattice(&fibration_basis());
        let mut perm: Vec<usize> = (0..19).collect();
        let (i, j) = (b0.index("th_plus").unwrap(), b0.index("th_minus").unwrap());
        perm.swap(i, j);
        assert!(b0.preserves(&perm));
        let m = InvolutionModule::from_permutation(&perm).unwrap();
        let h = m.c2_cohomology().unwrap();
        assert_eq!(h.h0_rank, 18);
        assert!(h.h1.is_trivial());
        assert_eq!(h.h2.two_rank(), Some(17));
    }

    #[test]
    fn partitions() {
        let d = GramLattice::from_i64(&["a", "b"], &[vec![2, 0], vec![0, 4]]).unwrap();
        assert!(d.direct_sum_split_check(&[vec![0], vec![1]]).unwrap());
        let u = GramLattice::from_i64(&["e", "f"], &[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(!u.direct_sum_split_check(&[vec![0], vec![1]]).unwrap());
        assert!(u.direct_sum_split_check(&[vec![0]]).is_err());
    }

    #[test]
    fn fixture_round_trip() {
        let text = "# provenance: derived\n# source: test\n# swap: x y\nlabels x y\n-2 1\n1 -2\n";
        let f = GramFixture::parse(text).unwrap();
        assert_eq!(f.permutation().unwrap(), vec![1, 0]);
        assert_eq!(GramFixture::parse(&f.render()).unwrap().lattice, f.lattice);
        assert!(GramFixture::parse("labels x\n-2\n").is_err());
    }

    #[test]
    fn index_two_on_d4() {
        // D4 has discriminant (Z/2)^2 with all three nonzero classes of norm 1 mod 2
        let d4 = GramLattice::from_graph(
            &["c", "x", "y", "z"],
            &[-2, -2, -2, -2],
            &[("c", "x", 1), ("c", "y", 1), ("c", "z", 1)],
        )
        .unwrap();
        assert_eq!(d4.discriminant_group().unwrap(), big(&[2, 2]));
        assert!(d4.index2_overlattice_candidates().unwrap().is_empty());
        // A1 + A1 + A1 + A1 + A1 + A1 + A1 + A1: the all-ones class has norm -16
        let n = 8;
        let mut g = vec![vec![0i64; n]; n];
        for i in 0..n {
            g[i][i] = -2;
        }
        let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        let l = GramLattice::new(labels, from_i64(&g)).unwrap();
        let c = l.index2_overlattice_candidates().unwrap();
        assert!(c.contains(&vec![1; 8]));
        assert!(c
            .iter()
            .all(|x| x.iter().filter(|&&b| b == 1).count() % 4 == 0));
    }

    #[test]
    fn builtin_fixture_module() {
        let f = GramFixture::parse(crate::fixtures::FIBRATION_GENERATORS).unwrap();
        let m = FixtureModule::new(&f).unwrap();
        assert_eq!(m.lattice.dim(), 19);
        let h = m.module.c2_cohomology().unwrap();
        assert_eq!(
            (h.h0_rank, h.h1.is_trivial(), h.h2.two_rank()),
            (18, true, Some(17))
        );
        // without a declared basis the reduced lattice carries the same action
        let mut g = f.clone();
        g.meta.retain(|(k, _)| k != "basis");
        let r = FixtureModule::new(&g).unwrap();
        assert_eq!(r.module.c2_cohomology().unwrap(), h);
    }
}
