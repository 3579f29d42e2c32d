//! The linearly ordered set with involution `(Y, σ)` of a gentle algebra,
//! `(Y, σ)`-matrices and their morphisms, the functor `G` from radical
//! differential modules, Y-strings and Y-bands with their canonical matrices,
//! and the translation `γ` from homotopy words.
//!
//! Blocks use the convention of this crate's path maps: the block of `G(M)` at
//! `(u, uα)` is the coefficient of `α` in `φ`, with rows indexed by copies of
//! `P_{s(α)}` and columns by copies of `P_{t(α)}`. Morphisms `T: B → C` have
//! blocks `T_u^v` of shape `n^C_u × n^B_v` and satisfy `C T = T B`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::diffmod::DifferentialModule;
use crate::field::Field;
use crate::linalg::{companion_of, Matrix};
use crate::pathmap::PathMap;
use crate::quiver::{GentleAlgebra, PathId, VertexId};
use crate::strings::{HomotopyBand, HomotopyString, Letter};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SigmaError {
    #[error("module is not radical")]
    NotRadical,
    #[error("order on maximal paths is not a permutation of them")]
    NotPermutation,
    #[error("expected {expected} sizes, got {got}")]
    SizeCount { expected: usize, got: usize },
    #[error("σ-paired elements `{0}` and `{1}` have different sizes")]
    SigmaSizes(String, String),
    #[error("block ({0}, {1}) has the wrong shape")]
    BlockShape(String, String),
    #[error("B² ≠ 0")]
    NotSquareZero,
    #[error("not a morphism: {0}")]
    NotMorphism(&'static str),
    #[error("edge {index}: {reason}")]
    Word { index: usize, reason: &'static str },
    #[error("band word is a proper power")]
    NotPrimitive,
    #[error("band parameter must be an invertible square matrix")]
    Parameter,
}

/// How to order the maximal paths when building `Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MaxOrder {
    /// By arrow names, first arrow first.
    #[default]
    Lexicographic,
    /// The reverse of [`MaxOrder::Lexicographic`].
    Reversed,
}

/// An element of `Y`: the prefix of length `len` of a maximal path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct YElement {
    pub maximal: PathId,
    pub len: usize,
    pub path: PathId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedSetY {
    maximal: Vec<PathId>,
    elements: Vec<YElement>,
    sigma: Vec<usize>,
    targets: Vec<VertexId>,
    names: Vec<String>,
    /// Index of the trivial prefix of each maximal path, in `maximal` order.
    start: Vec<usize>,
}

impl OrderedSetY {
    pub fn new(alg: &GentleAlgebra, order: MaxOrder) -> Self {
        let mut maximal = alg.maximal_paths_alg().to_vec();
        maximal.sort_by(|&p, &q| {
            let (a, b) = (alg.path(p), alg.path(q));
            (&a.arrows, a.source).cmp(&(&b.arrows, b.source))
        });
        if order == MaxOrder::Reversed {
            maximal.reverse();
        }
        Self::with_order(alg, maximal).expect("sorted maximal paths form a permutation")
    }

    /// `Y` for an explicit total order on the maximal paths.
    pub fn with_order(alg: &GentleAlgebra, maximal: Vec<PathId>) -> Result<Self, SigmaError> {
        let mut a = maximal.clone();
        let mut b = alg.maximal_paths_alg().to_vec();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Err(SigmaError::NotPermutation);
        }
        let mut elements = Vec::new();
        let mut start = Vec::new();
        for &m in &maximal {
            start.push(elements.len());
            for len in 0..=alg.len(m) {
                elements.push(YElement {
                    maximal: m,
                    len,
                    path: alg.subpath(m, 0, len),
                });
            }
        }
        let targets: Vec<VertexId> = elements.iter().map(|e| alg.target(e.path)).collect();
        let mut by_target: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
        for (i, &t) in targets.iter().enumerate() {
            by_target.entry(t).or_default().push(i);
        }
        let mut sigma: Vec<usize> = (0..elements.len()).collect();
        for group in by_target.values() {
            assert!(group.len() <= 2, "at most two elements of Y share a target");
            if let [u, v] = group[..] {
                sigma[u] = v;
                sigma[v] = u;
            }
        }
        let names = elements
            .iter()
            .map(|e| {
                if e.len == 0 {
                    format!("{}/{}", alg.path_name(e.path), alg.path_name(e.maximal))
                } else {
                    alg.path_name(e.path).to_string()
                }
            })
            .collect();
        Ok(OrderedSetY {
            maximal,
            elements,
            sigma,
            targets,
            names,
            start,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn maximal_order(&self) -> &[PathId] {
        &self.maximal
    }

    pub fn element(&self, u: usize) -> YElement {
        self.elements[u]
    }

    pub fn sigma(&self, u: usize) -> usize {
        self.sigma[u]
    }

    pub fn target(&self, u: usize) -> VertexId {
        self.targets[u]
    }

    pub fn name(&self, u: usize) -> &str {
        &self.names[u]
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The element `prefix of length len` of maximal path `m`.
    pub fn index(&self, m: PathId, len: usize) -> Option<usize> {
        let k = self.maximal.iter().position(|&x| x == m)?;
        let i = self.start[k] + len;
        (i < self.elements.len() && self.elements[i].maximal == m && self.elements[i].len == len)
            .then_some(i)
    }

    /// `(û, ûα)` for a nontrivial path `α` in maximal path `w̃ = û α ū`.
    pub fn edge_of(&self, alg: &GentleAlgebra, alpha: PathId) -> (usize, usize) {
        let (m, a, b) = alg
            .position_in_maximal(alpha)
            .expect("nontrivial nonzero path lies in a maximal path");
        (self.index(m, a).unwrap(), self.index(m, b).unwrap())
    }

    /// Elements with target `v`.
    pub fn with_target(&self, v: VertexId) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&u| self.targets[u] == v)
    }

    fn same_orbit(&self, u: usize, v: usize) -> bool {
        u == v || self.sigma[u] == v
    }
}

fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut off = Vec::with_capacity(sizes.len() + 1);
    let mut acc = 0;
    off.push(0);
    for &s in sizes {
        acc += s;
        off.push(acc);
    }
    off
}

fn assemble<F: Field>(
    rows: &[usize],
    cols: &[usize],
    blocks: &BTreeMap<(usize, usize), Matrix<F>>,
) -> Matrix<F> {
    let (ro, co) = (offsets(rows), offsets(cols));
    let mut m = Matrix::zeros(*ro.last().unwrap(), *co.last().unwrap());
    for (&(u, v), b) in blocks {
        m.set_block(ro[u], co[v], b);
    }
    m
}

fn split<F: Field>(
    rows: &[usize],
    cols: &[usize],
    m: &Matrix<F>,
) -> BTreeMap<(usize, usize), Matrix<F>> {
    let (ro, co) = (offsets(rows), offsets(cols));
    let mut blocks = BTreeMap::new();
    for u in 0..rows.len() {
        for v in 0..cols.len() {
            if rows[u] == 0 || cols[v] == 0 {
                continue;
            }
            let b = m.block(ro[u], co[v], rows[u], cols[v]);
            if !b.is_zero() {
                blocks.insert((u, v), b);
            }
        }
    }
    blocks
}

/// A `(Y, σ)`-matrix: square blocks layout with band sizes `n_u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaMatrix<F> {
    sizes: Vec<usize>,
    blocks: BTreeMap<(usize, usize), Matrix<F>>,
}

impl<F: Field> SigmaMatrix<F> {
    /// Validate partitions, σ-equal sizes and `B² = 0`.
    pub fn new(
        y: &OrderedSetY,
        sizes: Vec<usize>,
        blocks: BTreeMap<(usize, usize), Matrix<F>>,
    ) -> Result<Self, SigmaError> {
        let m = SigmaMatrix {
            sizes,
            blocks: blocks.into_iter().filter(|(_, b)| !b.is_zero()).collect(),
        };
        m.validate(y)?;
        Ok(m)
    }

    pub fn validate(&self, y: &OrderedSetY) -> Result<(), SigmaError> {
        if self.sizes.len() != y.len() {
            return Err(SigmaError::SizeCount {
                expected: y.len(),
                got: self.sizes.len(),
            });
        }
        for u in 0..y.len() {
            let s = y.sigma(u);
            if self.sizes[u] != self.sizes[s] {
                return Err(SigmaError::SigmaSizes(y.name(u).into(), y.name(s).into()));
            }
        }
        for (&(u, v), b) in &self.blocks {
            if u >= y.len() || v >= y.len() || b.shape() != (self.sizes[u], self.sizes[v]) {
                return Err(SigmaError::BlockShape(
                    y.names.get(u).cloned().unwrap_or_default(),
                    y.names.get(v).cloned().unwrap_or_default(),
                ));
            }
        }
        let full = self.full();
        if !(&full * &full).is_zero() {
            return Err(SigmaError::NotSquareZero);
        }
        Ok(())
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn blocks(&self) -> &BTreeMap<(usize, usize), Matrix<F>> {
        &self.blocks
    }

    pub fn block(&self, u: usize, v: usize) -> Option<&Matrix<F>> {
        self.blocks.get(&(u, v))
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The whole matrix, bands in `Y` order.
    pub fn full(&self) -> Matrix<F> {
        assemble(&self.sizes, &self.sizes, &self.blocks)
    }

    pub fn rank(&self) -> usize {
        self.full().rank()
    }

    /// Ranks of the lower-left corners `B[rows ≥ i, cols ≤ j]`. Conjugating by
    /// an invertible upper-triangular `T` preserves each of them, so they are
    /// isomorphism invariants.
    pub fn corner_ranks(&self) -> Vec<usize> {
        let full = self.full();
        let off = offsets(&self.sizes);
        let n = self.sizes.len();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let (r0, c1) = (off[i], off[j + 1]);
                let rows = full.rows() - r0;
                out.push(if rows == 0 || c1 == 0 {
                    0
                } else {
                    full.block(r0, 0, rows, c1).rank()
                });
            }
        }
        out
    }

    /// Text dump: one `band` line per element, then the nonzero blocks.
    pub fn to_dump(&self, y: &OrderedSetY) -> String {
        let mut s = String::new();
        for u in 0..y.len() {
            let _ = writeln!(
                s,
                "band {} rows={} cols={}",
                y.name(u),
                self.sizes[u],
                self.sizes[u]
            );
        }
        for (&(u, v), b) in &self.blocks {
            let _ = writeln!(s, "block {} {}", y.name(u), y.name(v));
            for r in 0..b.rows() {
                let row: Vec<String> = b.row(r).iter().map(|x| x.to_string()).collect();
                let _ = writeln!(s, "{}", row.join(" "));
            }
        }
        s
    }
}

/// A morphism `T: B → C` of `(Y, σ)`-matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaMorphism<F> {
    src: Vec<usize>,
    dst: Vec<usize>,
    blocks: BTreeMap<(usize, usize), Matrix<F>>,
}

impl<F: Field> SigmaMorphism<F> {
    pub fn from_blocks(
        src: Vec<usize>,
        dst: Vec<usize>,
        blocks: BTreeMap<(usize, usize), Matrix<F>>,
    ) -> Self {
        SigmaMorphism {
            src,
            dst,
            blocks: blocks.into_iter().filter(|(_, b)| !b.is_zero()).collect(),
        }
    }

    fn from_full(src: Vec<usize>, dst: Vec<usize>, m: &Matrix<F>) -> Self {
        let blocks = split(&dst, &src, m);
        SigmaMorphism { src, dst, blocks }
    }

    pub fn identity(sizes: &[usize]) -> Self {
        let blocks = (0..sizes.len())
            .filter(|&u| sizes[u] > 0)
            .map(|u| ((u, u), Matrix::identity(sizes[u])))
            .collect();
        SigmaMorphism {
            src: sizes.to_vec(),
            dst: sizes.to_vec(),
            blocks,
        }
    }

    pub fn blocks(&self) -> &BTreeMap<(usize, usize), Matrix<F>> {
        &self.blocks
    }

    pub fn full(&self) -> Matrix<F> {
        assemble(&self.dst, &self.src, &self.blocks)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.src, other.dst, "morphisms do not compose");
        Self::from_full(
            other.src.clone(),
            self.dst.clone(),
            &(&self.full() * &other.full()),
        )
    }

    /// Whether every nonzero block is on the diagonal.
    pub fn is_diagonal(&self) -> bool {
        self.blocks.keys().all(|&(u, v)| u == v)
    }

    /// Check every morphism condition against `B → C`.
    pub fn check(
        &self,
        y: &OrderedSetY,
        b: &SigmaMatrix<F>,
        c: &SigmaMatrix<F>,
    ) -> Result<(), SigmaError> {
        if self.src != b.sizes || self.dst != c.sizes {
            return Err(SigmaError::NotMorphism("partitions are not compatible"));
        }
        for (&(u, v), m) in &self.blocks {
            if m.shape() != (self.dst[u], self.src[v]) {
                return Err(SigmaError::NotMorphism("block shape"));
            }
            if u > v {
                return Err(SigmaError::NotMorphism("not upper triangular"));
            }
        }
        for u in 0..y.len() {
            let s = y.sigma(u);
            if self.blocks.get(&(u, u)) != self.blocks.get(&(s, s)) {
                return Err(SigmaError::NotMorphism(
                    "diagonal blocks differ on a σ-orbit",
                ));
            }
        }
        let t = self.full();
        if &c.full() * &t != &t * &b.full() {
            return Err(SigmaError::NotMorphism("does not intertwine"));
        }
        Ok(())
    }

    /// Upper triangular, so invertible iff every diagonal block is.
    pub fn is_invertible(&self) -> bool {
        self.src == self.dst
            && (0..self.src.len()).all(|u| {
                self.src[u] == 0 || self.blocks.get(&(u, u)).is_some_and(|m| m.is_invertible())
            })
    }

    /// The two-sided inverse, itself a morphism `C → B`.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_invertible() {
            return None;
        }
        let inv = self.full().inverse()?;
        Some(Self::from_full(self.dst.clone(), self.src.clone(), &inv))
    }
}

/// `G(M)` for a radical differential module.
pub fn g_object<F: Field>(
    y: &OrderedSetY,
    m: &DifferentialModule<F>,
) -> Result<SigmaMatrix<F>, SigmaError> {
    if !m.is_radical() {
        return Err(SigmaError::NotRadical);
    }
    let alg = m.algebra();
    let mults = m.multiplicities();
    let sizes = (0..y.len()).map(|u| mults[y.target(u)]).collect();
    let blocks = m
        .phi()
        .coeffs()
        .iter()
        .map(|(&alpha, a)| (y.edge_of(alg, alpha), a.clone()))
        .collect();
    SigmaMatrix::new(y, sizes, blocks)
}

/// `G(ψ)`: trivial-path coefficients on the diagonal, the coefficient of a
/// nontrivial `α` at `(û, ûα)`.
pub fn g_morphism<F: Field>(
    y: &OrderedSetY,
    alg: &GentleAlgebra,
    psi: &PathMap<F>,
) -> SigmaMorphism<F> {
    let src = (0..y.len()).map(|u| psi.src()[y.target(u)]).collect();
    let dst = (0..y.len()).map(|u| psi.dst()[y.target(u)]).collect();
    let mut blocks = BTreeMap::new();
    for (&alpha, a) in psi.coeffs() {
        if alg.is_trivial(alpha) {
            for u in y.with_target(alg.source(alpha)) {
                blocks.insert((u, u), a.clone());
            }
        } else {
            blocks.insert(y.edge_of(alg, alpha), a.clone());
        }
    }
    SigmaMorphism::from_blocks(src, dst, blocks)
}

/// An edge `(a, b)` of the quiver `Q(Y)`.
pub type Edge = (usize, usize);

fn check_word(y: &OrderedSetY, edges: &[Edge]) -> Result<(), SigmaError> {
    if edges.is_empty() {
        return Err(SigmaError::Word {
            index: 0,
            reason: "empty word",
        });
    }
    for (i, &(a, b)) in edges.iter().enumerate() {
        if a >= y.len() || b >= y.len() {
            return Err(SigmaError::Word {
                index: i + 1,
                reason: "unknown element",
            });
        }
        if a == b {
            return Err(SigmaError::Word {
                index: i + 1,
                reason: "loop edges are not supported",
            });
        }
    }
    for (i, w) in edges.windows(2).enumerate() {
        let ((_, b), (c, _)) = (w[0], w[1]);
        if !y.same_orbit(b, c) {
            return Err(SigmaError::Word {
                index: i + 1,
                reason: "edges do not compose",
            });
        }
        if b == c {
            return Err(SigmaError::Word {
                index: i + 1,
                reason: "p₂ of an edge equals p₁ of the next",
            });
        }
    }
    Ok(())
}

/// A Y-string: a word of edges with `p₂(w_i) ≠ p₁(w_{i+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YString {
    edges: Vec<Edge>,
}

impl YString {
    pub fn new(y: &OrderedSetY, edges: Vec<Edge>) -> Result<Self, SigmaError> {
        check_word(y, &edges)?;
        Ok(YString { edges })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// The inverse word.
    pub fn inverse(&self) -> Self {
        YString {
            edges: self.edges.iter().rev().map(|&(a, b)| (b, a)).collect(),
        }
    }

    pub fn canonical(&self) -> Self {
        std::cmp::min(self.clone(), self.inverse())
    }
}

/// A Y-band: a primitive closed word whose square is a Y-string.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YBand {
    edges: Vec<Edge>,
}

impl YBand {
    pub fn new(y: &OrderedSetY, edges: Vec<Edge>) -> Result<Self, SigmaError> {
        let doubled: Vec<Edge> = edges.iter().chain(edges.iter()).copied().collect();
        check_word(y, &doubled).map_err(|e| match e {
            SigmaError::Word { index, reason } if index > edges.len() || index == edges.len() => {
                SigmaError::Word {
                    index: edges.len(),
                    reason,
                }
            }
            e => e,
        })?;
        let n = edges.len();
        if (1..n).any(|d| n.is_multiple_of(d) && (0..n).all(|i| edges[i] == edges[(i + d) % n])) {
            return Err(SigmaError::NotPrimitive);
        }
        Ok(YBand { edges })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Minimum over rotations and inversion.
    pub fn canonical(&self) -> Self {
        let inv: Vec<Edge> = self.edges.iter().rev().map(|&(a, b)| (b, a)).collect();
        let n = self.edges.len();
        let rot =
            |w: &[Edge], k: usize| -> Vec<Edge> { w[k..].iter().chain(&w[..k]).copied().collect() };
        let edges = (0..n)
            .flat_map(|k| [rot(&self.edges, k), rot(&inv, k)])
            .min()
            .unwrap();
        YBand { edges }
    }
}

fn gamma_letter(y: &OrderedSetY, alg: &GentleAlgebra, l: Letter) -> Edge {
    let (hat, full) = y.edge_of(alg, l.path);
    if l.is_direct() {
        (hat, full)
    } else {
        (full, hat)
    }
}

/// `γ`: a direct letter `x` goes to `(x̂, x̂x)`, an inverse `x⁻¹` to `(x̂x, x̂)`.
pub fn gamma(y: &OrderedSetY, alg: &GentleAlgebra, s: &HomotopyString) -> YString {
    let edges = s
        .letters()
        .iter()
        .map(|&l| gamma_letter(y, alg, l))
        .collect();
    YString::new(y, edges).expect("γ of a homotopy string is a Y-string")
}

pub fn gamma_b(y: &OrderedSetY, alg: &GentleAlgebra, b: &HomotopyBand) -> YBand {
    let edges = b
        .letters()
        .iter()
        .map(|&l| gamma_letter(y, alg, l))
        .collect();
    YBand::new(y, edges).expect("γ of a homotopy band is a Y-band")
}

/// Place unit-pattern steps of a word: point `i` carries `n` copies at the
/// vertex of its orbit; `copy_base[i]` is its first copy index there.
fn place_steps<F: Field>(
    edges: &[Edge],
    points: usize,
    copy_base: &[usize],
    blocks_for_step: impl Fn(usize) -> Matrix<F>,
    sizes: &[usize],
) -> BTreeMap<(usize, usize), Matrix<F>> {
    let mut blocks: BTreeMap<(usize, usize), Matrix<F>> = BTreeMap::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        let (p, q) = (i, (i + 1) % points);
        let (lo, hi, row_pt, col_pt) = if a < b { (a, b, p, q) } else { (b, a, q, p) };
        let m = blocks
            .entry((lo, hi))
            .or_insert_with(|| Matrix::zeros(sizes[lo], sizes[hi]));
        m.add_block(copy_base[row_pt], copy_base[col_pt], &blocks_for_step(i));
    }
    blocks
}

/// `B_w` for a Y-string. The basis vectors at each orbit are ordered by
/// height (stepping down along increasing edges), then position.
pub fn b_string<F: Field>(y: &OrderedSetY, w: &YString) -> SigmaMatrix<F> {
    let edges = w.edges();
    let n = edges.len();
    let mut vert = vec![y.target(edges[0].0)];
    vert.extend(edges.iter().map(|&(_, b)| y.target(b)));
    let mut height = vec![0i64];
    for &(a, b) in edges {
        height.push(height.last().unwrap() + if a < b { -1 } else { 1 });
    }
    let mut order: Vec<usize> = (0..=n).collect();
    order.sort_by_key(|&i| (height[i], i));
    let mut count: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut copy = vec![0; n + 1];
    for i in order {
        let c = count.entry(vert[i]).or_default();
        copy[i] = *c;
        *c += 1;
    }
    let sizes: Vec<usize> = (0..y.len())
        .map(|u| count.get(&y.target(u)).copied().unwrap_or(0))
        .collect();
    let blocks = place_steps(edges, n + 1, &copy, |_| Matrix::identity(1), &sizes);
    SigmaMatrix::new(y, sizes, blocks).expect("canonical string matrices are (Y, σ)-matrices")
}

/// `B_{w,J}` for a Y-band: identity blocks on every step except the last,
/// which carries the companion matrix of the characteristic polynomial of `J`.
pub fn b_band<F: Field>(
    y: &OrderedSetY,
    w: &YBand,
    j: &Matrix<F>,
) -> Result<SigmaMatrix<F>, SigmaError> {
    if !j.is_square() || !j.is_invertible() {
        return Err(SigmaError::Parameter);
    }
    let d = j.rows();
    let comp = companion_of(j).map_err(|_| SigmaError::Parameter)?;
    let edges = w.edges();
    let r = edges.len();
    let mut count: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut base = vec![0; r];
    for (i, &(a, _)) in edges.iter().enumerate() {
        let c = count.entry(y.target(a)).or_default();
        base[i] = *c;
        *c += d;
    }
    let sizes: Vec<usize> = (0..y.len())
        .map(|u| count.get(&y.target(u)).copied().unwrap_or(0))
        .collect();
    let blocks = place_steps(
        edges,
        r,
        &base,
        |i| {
            if i + 1 == r {
                comp.clone()
            } else {
                Matrix::identity(d)
            }
        },
        &sizes,
    );
    SigmaMatrix::new(y, sizes, blocks)
}

/// A basis of the morphisms `B → C`: upper-triangular block matrices with
/// σ-tied diagonal blocks solving `C T = T B`.
pub fn hom_basis<F: Field>(
    y: &OrderedSetY,
    b: &SigmaMatrix<F>,
    c: &SigmaMatrix<F>,
) -> Vec<SigmaMorphism<F>> {
    let (src, dst) = (b.sizes(), c.sizes());
    let (so, dof) = (offsets(src), offsets(dst));
    let (bf, cf) = (b.full(), c.full());
    let (nr, nc) = (*dof.last().unwrap(), *so.last().unwrap());
    // Each unknown is a set of positions in T sharing one scalar.
    let mut unknowns: Vec<Vec<(usize, usize)>> = Vec::new();
    for u in 0..y.len() {
        for v in u..y.len() {
            if u == v && y.sigma(u) < u {
                continue;
            }
            for r in 0..dst[u] {
                for col in 0..src[v] {
                    let mut pos = vec![(dof[u] + r, so[v] + col)];
                    if u == v && y.sigma(u) != u {
                        let s = y.sigma(u);
                        pos.push((dof[s] + r, so[s] + col));
                    }
                    unknowns.push(pos);
                }
            }
        }
    }
    // Equation rows: entries of C T − T B.
    let mut sys = Matrix::zeros(nr * nc, unknowns.len());
    for (k, pos) in unknowns.iter().enumerate() {
        for &(rr, cc) in pos {
            for i in 0..nr {
                let x = cf.get(i, rr);
                if !x.is_zero() {
                    sys.add_at(i * nc + cc, k, x.clone());
                }
            }
            for jx in 0..nc {
                let x = bf.get(cc, jx);
                if !x.is_zero() {
                    sys.add_at(rr * nc + jx, k, -x.clone());
                }
            }
        }
    }
    sys.kernel_basis()
        .into_iter()
        .map(|vec| {
            let mut t = Matrix::zeros(nr, nc);
            for (k, pos) in unknowns.iter().enumerate() {
                for &(rr, cc) in pos {
                    t.set(rr, cc, vec[k].clone());
                }
            }
            SigmaMorphism::from_full(src.to_vec(), dst.to_vec(), &t)
        })
        .collect()
}

/// An isomorphism `B → C` between indecomposable `(Y, σ)`-matrices, if one
/// exists. Deterministic: with local endomorphism rings some `g_j f_i` built
/// from hom bases is invertible whenever `B ≅ C`, and then `f_i` is an
/// isomorphism.
pub fn isomorphism<F: Field>(
    y: &OrderedSetY,
    b: &SigmaMatrix<F>,
    c: &SigmaMatrix<F>,
) -> Option<SigmaMorphism<F>> {
    if b.sizes() != c.sizes() || b.corner_ranks() != c.corner_ranks() {
        return None;
    }
    let fs = hom_basis(y, b, c);
    if let Some(f) = fs.iter().find(|f| f.is_invertible()) {
        return Some(f.clone());
    }
    // Morphisms are block upper triangular, so `(g f)_uu = g_uu f_uu` and
    // invertibility of `g f` only depends on the diagonal blocks.
    let gs = hom_basis(y, c, b);
    let diag = |t: &SigmaMorphism<F>| -> Vec<Option<Matrix<F>>> {
        (0..y.len())
            .filter(|&u| t.src[u] > 0)
            .map(|u| t.blocks.get(&(u, u)).cloned())
            .collect()
    };
    let gd: Vec<_> = gs.iter().map(diag).collect();
    fs.into_iter().find(|f| {
        let fd = diag(f);
        gd.iter().any(|g| {
            g.iter().zip(&fd).all(|pair| match pair {
                (Some(gu), Some(fu)) => (gu * fu).is_invertible(),
                _ => false,
            })
        })
    })
}
