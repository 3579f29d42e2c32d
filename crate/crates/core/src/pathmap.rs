//! Morphisms between direct sums of indecomposable projectives.
//!
//! For multiplicity vectors `m` and `n`, a map `⊕ P_i^{m_i} → ⊕ P_j^{n_j}` is
//! `Σ_w λ_w ⊗ A_w` over nonzero paths `w`, where `λ_w: P_{t(w)} → P_{s(w)}`
//! is left multiplication by `w` and `A_w` is an `n_{s(w)} × m_{t(w)}` matrix.

use std::collections::BTreeMap;

use rand::Rng;

use crate::field::{Field, FiniteField};
use crate::linalg::Matrix;
use crate::quiver::{GentleAlgebra, PathId, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathMap<F> {
    src: Vec<usize>,
    dst: Vec<usize>,
    coeffs: BTreeMap<PathId, Matrix<F>>,
}

/// Index layout of the underlying vector space of `⊕ P_i^{m_i}`: basis vectors
/// are (vertex, copy, basis path of `P_vertex`), ordered lexicographically.
#[derive(Clone, Debug)]
pub struct Layout {
    offsets: Vec<usize>,
    dims: Vec<usize>,
    pos: Vec<BTreeMap<PathId, usize>>,
    total: usize,
}

impl Layout {
    pub fn new(alg: &GentleAlgebra, mults: &[usize]) -> Self {
        let mut offsets = Vec::with_capacity(mults.len());
        let mut dims = Vec::with_capacity(mults.len());
        let mut pos = Vec::with_capacity(mults.len());
        let mut total = 0;
        for (v, &m) in mults.iter().enumerate() {
            offsets.push(total);
            let basis = alg.projective_basis(v);
            dims.push(basis.len());
            pos.push(basis.iter().enumerate().map(|(i, &p)| (p, i)).collect());
            total += m * basis.len();
        }
        Layout {
            offsets,
            dims,
            pos,
            total,
        }
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn index(&self, v: VertexId, copy: usize, path: PathId) -> usize {
        self.offsets[v] + copy * self.dims[v] + self.pos[v][&path]
    }
}

impl<F: Field> PathMap<F> {
    pub fn zero(src: Vec<usize>, dst: Vec<usize>) -> Self {
        PathMap {
            src,
            dst,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn identity(alg: &GentleAlgebra, mults: &[usize]) -> Self {
        let mut m = Self::zero(mults.to_vec(), mults.to_vec());
        for (v, &d) in mults.iter().enumerate() {
            if d > 0 {
                m.coeffs.insert(alg.trivial_path(v), Matrix::identity(d));
            }
        }
        m
    }

    /// Build from coefficient matrices; zero matrices are dropped.
    /// Shapes are checked by the caller (see [`PathMap::check_shapes`]).
    pub fn from_coeffs(
        src: Vec<usize>,
        dst: Vec<usize>,
        coeffs: BTreeMap<PathId, Matrix<F>>,
    ) -> Self {
        PathMap {
            src,
            dst,
            coeffs: coeffs.into_iter().filter(|(_, m)| !m.is_zero()).collect(),
        }
    }

    /// The first path whose coefficient has the wrong shape, with the expected shape.
    pub fn check_shapes(&self, alg: &GentleAlgebra) -> Option<(PathId, (usize, usize))> {
        self.coeffs.iter().find_map(|(&w, m)| {
            let want = self.shape_of(alg, w);
            (m.shape() != want).then_some((w, want))
        })
    }

    pub fn shape_of(&self, alg: &GentleAlgebra, w: PathId) -> (usize, usize) {
        (self.dst[alg.source(w)], self.src[alg.target(w)])
    }

    pub fn src(&self) -> &[usize] {
        &self.src
    }

    pub fn dst(&self) -> &[usize] {
        &self.dst
    }

    pub fn coeffs(&self) -> &BTreeMap<PathId, Matrix<F>> {
        &self.coeffs
    }

    pub fn coeff(&self, w: PathId) -> Option<&Matrix<F>> {
        self.coeffs.get(&w)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `e_v`, as a full `dst[v] × src[v]` matrix.
    pub fn trivial_part(&self, alg: &GentleAlgebra, v: VertexId) -> Matrix<F> {
        self.coeffs
            .get(&alg.trivial_path(v))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dst[v], self.src[v]))
    }

    /// Whether every trivial-path coefficient vanishes (image in the radical).
    pub fn is_radical(&self, alg: &GentleAlgebra) -> bool {
        self.coeffs.keys().all(|&w| !alg.is_trivial(w))
    }

    /// Drop the trivial-path part.
    pub fn radical_part(&self, alg: &GentleAlgebra) -> Self {
        PathMap {
            src: self.src.clone(),
            dst: self.dst.clone(),
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&w, _)| !alg.is_trivial(w))
                .map(|(&w, m)| (w, m.clone()))
                .collect(),
        }
    }

    /// Only the trivial-path part.
    pub fn trivial_only(&self, alg: &GentleAlgebra) -> Self {
        PathMap {
            src: self.src.clone(),
            dst: self.dst.clone(),
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&w, _)| alg.is_trivial(w))
                .map(|(&w, m)| (w, m.clone()))
                .collect(),
        }
    }

    fn insert_add(coeffs: &mut BTreeMap<PathId, Matrix<F>>, w: PathId, m: Matrix<F>) {
        match coeffs.get_mut(&w) {
            Some(existing) => *existing = &*existing + &m,
            None => {
                coeffs.insert(w, m);
            }
        }
    }

    fn prune(mut self) -> Self {
        self.coeffs.retain(|_, m| !m.is_zero());
        self
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, alg: &GentleAlgebra, other: &Self) -> Self {
        assert_eq!(self.src, other.dst, "composition of incompatible maps");
        let mut coeffs = BTreeMap::new();
        for (&v, b) in &self.coeffs {
            for (&u, a) in &other.coeffs {
                if let Some(w) = alg.mul(v, u) {
                    Self::insert_add(&mut coeffs, w, b * a);
                }
            }
        }
        PathMap {
            src: other.src.clone(),
            dst: self.dst.clone(),
            coeffs,
        }
        .prune()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((&self.src, &self.dst), (&other.src, &other.dst));
        let mut coeffs = self.coeffs.clone();
        for (&w, m) in &other.coeffs {
            Self::insert_add(&mut coeffs, w, m.clone());
        }
        PathMap {
            src: self.src.clone(),
            dst: self.dst.clone(),
            coeffs,
        }
        .prune()
    }

    pub fn scale(&self, s: &F) -> Self {
        PathMap {
            src: self.src.clone(),
            dst: self.dst.clone(),
            coeffs: self.coeffs.iter().map(|(&w, m)| (w, m.scale(s))).collect(),
        }
        .prune()
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Realize as a matrix on the underlying vector spaces (columns: source).
    pub fn realize(&self, alg: &GentleAlgebra) -> Matrix<F> {
        let ls = Layout::new(alg, &self.src);
        let ld = Layout::new(alg, &self.dst);
        let mut out = Matrix::zeros(ld.total(), ls.total());
        for (&w, a) in &self.coeffs {
            let (s, t) = (alg.source(w), alg.target(w));
            for &p in alg.projective_basis(t) {
                let Some(wp) = alg.mul(w, p) else { continue };
                for r in 0..a.rows() {
                    for c in 0..a.cols() {
                        let x = a.get(r, c);
                        if !x.is_zero() {
                            out.add_at(ld.index(s, r, wp), ls.index(t, c, p), x.clone());
                        }
                    }
                }
            }
        }
        out
    }

    /// Invertible iff square multiplicities and every trivial part is invertible
    /// (the rest is nilpotent).
    pub fn is_invertible(&self, alg: &GentleAlgebra) -> bool {
        self.src == self.dst
            && (0..self.src.len())
                .all(|v| self.src[v] == 0 || self.trivial_part(alg, v).is_invertible())
    }

    /// Two-sided inverse, by inverting the trivial part and summing the
    /// (terminating) Neumann series for the unipotent remainder.
    pub fn inverse(&self, alg: &GentleAlgebra) -> Option<Self> {
        if self.src != self.dst {
            return None;
        }
        let mut h = Self::zero(self.dst.clone(), self.src.clone());
        for v in 0..self.src.len() {
            if self.src[v] == 0 {
                continue;
            }
            h.coeffs
                .insert(alg.trivial_path(v), self.trivial_part(alg, v).inverse()?);
        }
        let u = h.compose(alg, self);
        let id = Self::identity(alg, &self.src);
        let n = id.sub(&u);
        let mut term = id.clone();
        let mut sum = id;
        loop {
            term = term.compose(alg, &n);
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term);
        }
        Some(sum.compose(alg, &h))
    }

    /// Block-diagonal sum of two maps.
    pub fn direct_sum(&self, alg: &GentleAlgebra, other: &Self) -> Self {
        let src: Vec<usize> = self
            .src
            .iter()
            .zip(&other.src)
            .map(|(a, b)| a + b)
            .collect();
        let dst: Vec<usize> = self
            .dst
            .iter()
            .zip(&other.dst)
            .map(|(a, b)| a + b)
            .collect();
        let mut coeffs = BTreeMap::new();
        let mut keys: Vec<PathId> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .collect();
        keys.sort();
        keys.dedup();
        for w in keys {
            let (s, t) = (alg.source(w), alg.target(w));
            let mut m = Matrix::zeros(dst[s], src[t]);
            if let Some(a) = self.coeffs.get(&w) {
                m.set_block(0, 0, a);
            }
            if let Some(b) = other.coeffs.get(&w) {
                m.set_block(self.dst[s], self.src[t], b);
            }
            coeffs.insert(w, m);
        }
        PathMap { src, dst, coeffs }.prune()
    }
}

impl<F: FiniteField> PathMap<F> {
    /// A uniformly random path map (all admissible coefficients random).
    pub fn random<R: Rng + ?Sized>(
        alg: &GentleAlgebra,
        src: &[usize],
        dst: &[usize],
        rng: &mut R,
    ) -> Self {
        let mut coeffs = BTreeMap::new();
        for w in 0..alg.path_count() {
            let (r, c) = (dst[alg.source(w)], src[alg.target(w)]);
            if r > 0 && c > 0 {
                coeffs.insert(w, Matrix::random(r, c, rng));
            }
        }
        PathMap::from_coeffs(src.to_vec(), dst.to_vec(), coeffs)
    }

    /// A random automorphism of `⊕ P_i^{m_i}`.
    pub fn random_automorphism<R: Rng + ?Sized>(
        alg: &GentleAlgebra,
        mults: &[usize],
        rng: &mut R,
    ) -> Self {
        loop {
            let m = Self::random(alg, mults, mults, rng);
            if m.is_invertible(alg) {
                return m;
            }
        }
    }
}

/// Coordinates for solving linear systems in the space of all path maps
/// between two fixed multiplicity vectors.
#[derive(Clone, Debug)]
pub struct MapSpace {
    src: Vec<usize>,
    dst: Vec<usize>,
    blocks: Vec<(PathId, usize, usize, usize)>,
    offset_of: BTreeMap<PathId, (usize, usize)>,
    dim: usize,
}

impl MapSpace {
    pub fn new(alg: &GentleAlgebra, src: &[usize], dst: &[usize]) -> Self {
        let mut blocks = Vec::new();
        let mut offset_of = BTreeMap::new();
        let mut dim = 0;
        for w in 0..alg.path_count() {
            let (r, c) = (dst[alg.source(w)], src[alg.target(w)]);
            if r > 0 && c > 0 {
                blocks.push((w, dim, r, c));
                offset_of.insert(w, (dim, c));
                dim += r * c;
            }
        }
        MapSpace {
            src: src.to_vec(),
            dst: dst.to_vec(),
            blocks,
            offset_of,
            dim,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinate of entry `(r, c)` of the coefficient of `w`, if `w` is admissible.
    pub fn coord(&self, w: PathId, r: usize, c: usize) -> Option<usize> {
        let &(off, cols) = self.offset_of.get(&w)?;
        Some(off + r * cols + c)
    }

    pub fn to_vec<F: Field>(&self, m: &PathMap<F>) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim];
        for &(w, off, r, c) in &self.blocks {
            if let Some(a) = m.coeffs.get(&w) {
                for i in 0..r {
                    for j in 0..c {
                        v[off + i * c + j] = a.get(i, j).clone();
                    }
                }
            }
        }
        v
    }

    pub fn from_vec<F: Field>(&self, v: &[F]) -> PathMap<F> {
        let mut coeffs = BTreeMap::new();
        for &(w, off, r, c) in &self.blocks {
            coeffs.insert(w, Matrix::from_vec(r, c, v[off..off + r * c].to_vec()));
        }
        PathMap::from_coeffs(self.src.clone(), self.dst.clone(), coeffs)
    }

    /// Unit map with a single 1 at coordinate `k`.
    pub fn unit<F: Field>(&self, k: usize) -> PathMap<F> {
        let mut v = vec![F::zero(); self.dim];
        v[k] = F::one();
        self.from_vec(&v)
    }
}

/// Linear combination `Σ c_i m_i` of maps with a common shape.
pub fn combine<F: Field>(
    basis: &[PathMap<F>],
    coeffs: &[F],
    src: &[usize],
    dst: &[usize],
) -> PathMap<F> {
    basis
        .iter()
        .zip(coeffs)
        .fold(PathMap::zero(src.to_vec(), dst.to_vec()), |acc, (m, c)| {
            acc.add(&m.scale(c))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::F5;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const A0: &str = "vertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow a' 1 2\narrow b 2 3\narrow b' 2 3\nrel a b\nrel a' b'\n";

    #[test]
    fn realization_is_a_functor() {
        let alg = GentleAlgebra::parse(A0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let m1 = [1, 2, 0];
            let m2 = [0, 1, 2];
            let m3 = [2, 1, 1];
            let f = PathMap::<F5>::random(&alg, &m1, &m2, &mut rng);
            let g = PathMap::<F5>::random(&alg, &m2, &m3, &mut rng);
            let gf = g.compose(&alg, &f);
            assert_eq!(gf.realize(&alg), &g.realize(&alg) * &f.realize(&alg));
        }
    }

    #[test]
    fn left_multiplication_by_an_arrow() {
        // λ_a: P_2 → P_1 sends e_2, b, b' to a, ab = 0, ab'; rank 2.
        let alg = GentleAlgebra::parse(A0).unwrap();
        let a = alg.parse_path("a").unwrap();
        let mut coeffs = BTreeMap::new();
        coeffs.insert(a, Matrix::<F5>::identity(1));
        let f = PathMap::from_coeffs(vec![0, 1, 0], vec![1, 0, 0], coeffs);
        let m = f.realize(&alg);
        assert_eq!(m.shape(), (5, 3));
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn inverse_of_random_automorphism() {
        let alg = GentleAlgebra::parse(A0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mults = [2, 1, 2];
        for _ in 0..20 {
            let g = PathMap::<F5>::random_automorphism(&alg, &mults, &mut rng);
            let h = g.inverse(&alg).unwrap();
            assert_eq!(g.compose(&alg, &h), PathMap::identity(&alg, &mults));
            assert_eq!(h.compose(&alg, &g), PathMap::identity(&alg, &mults));
        }
    }

    #[test]
    fn map_space_round_trip() {
        let alg = GentleAlgebra::parse(A0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let space = MapSpace::new(&alg, &[1, 1, 1], &[2, 0, 1]);
        let f = PathMap::<F5>::random(&alg, &[1, 1, 1], &[2, 0, 1], &mut rng);
        assert_eq!(space.from_vec(&space.to_vec(&f)), f);
    }
}
