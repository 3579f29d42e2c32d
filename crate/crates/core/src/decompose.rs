//! Endomorphism algebras, Fitting splitting, indecomposability certificates,
//! splitting off contractible summands, decomposition and isomorphism tests.
//!
//! Everything here works over a finite field: splitting is randomized
//! (seeded by the caller) and every positive answer carries an exact witness.

use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::diffmod::DifferentialModule;
use crate::field::{Field, FiniteField};
use crate::linalg::Matrix;
use crate::pathmap::{combine, MapSpace, PathMap};
use crate::quiver::GentleAlgebra;

/// The trial budget ran out before either a splitting or a certificate of
/// indecomposability was found.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("inconclusive: no splitting and no indecomposability certificate within the trial budget")]
pub struct Inconclusive;

#[derive(Clone, Copy, Debug)]
pub struct Options {
    /// Random Fitting trials before giving up.
    pub trials: usize,
    /// Exhaustive idempotent search over the top of `End` when it has at most
    /// this many elements.
    pub exhaustive_limit: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            trials: 64,
            exhaustive_limit: 1_000_000,
        }
    }
}

/// A direct summand `X` of `M` with `π ∘ ι = id_X`.
#[derive(Clone, Debug)]
pub struct Summand<F> {
    pub module: DifferentialModule<F>,
    pub iota: PathMap<F>,
    pub pi: PathMap<F>,
}

/// `End(M)` with coordinates relative to a fixed basis.
struct EndAlgebra<F> {
    alg: Arc<GentleAlgebra>,
    mults: Vec<usize>,
    basis: Vec<PathMap<F>>,
    space: MapSpace,
    rows: Vec<usize>,
    inv: Matrix<F>,
}

impl<F: FiniteField> EndAlgebra<F> {
    fn new(m: &DifferentialModule<F>) -> Self {
        let alg = m.algebra().clone();
        let basis = m.hom(m);
        let space = MapSpace::new(&alg, m.multiplicities(), m.multiplicities());
        let cols: Vec<Vec<F>> = basis.iter().map(|b| space.to_vec(b)).collect();
        let mat = Matrix::from_columns(space.dim(), &cols);
        // Independent coordinate rows: pivots of the transpose.
        let rows = mat.transpose().rref_in_place();
        let n = basis.len();
        let mut sub = Matrix::zeros(n, n);
        for (i, &r) in rows.iter().enumerate() {
            for j in 0..n {
                sub.set(i, j, *mat.get(r, j));
            }
        }
        let inv = sub.inverse().expect("hom basis is independent");
        EndAlgebra {
            alg,
            mults: m.multiplicities().to_vec(),
            basis,
            space,
            rows,
            inv,
        }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn coords(&self, x: &PathMap<F>) -> Vec<F> {
        let v = self.space.to_vec(x);
        let picked: Vec<F> = self.rows.iter().map(|&r| v[r]).collect();
        self.inv.mul_vec(&picked)
    }

    fn element(&self, coords: &[F]) -> PathMap<F> {
        combine(&self.basis, coords, &self.mults, &self.mults)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> PathMap<F> {
        let c: Vec<F> = (0..self.dim()).map(|_| F::random(rng)).collect();
        self.element(&c)
    }

    fn identity(&self) -> PathMap<F> {
        PathMap::identity(&self.alg, &self.mults)
    }

    /// Matrix of left multiplication by `q` in basis coordinates.
    fn left_mult(&self, q: &PathMap<F>) -> Matrix<F> {
        let cols: Vec<Vec<F>> = self
            .basis
            .iter()
            .map(|b| self.coords(&q.compose(&self.alg, b)))
            .collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    /// Fitting decomposition of `End = q^N End ⊕ ker(q^N ·)` into right
    /// ideals; writing `1 = e + f` along it yields an idempotent `e`.
    /// Returns `None` when the decomposition is trivial.
    fn fitting_idempotent(&self, q: &PathMap<F>) -> Option<PathMap<F>> {
        let n = self.dim();
        let l = self.left_mult(q).pow(n as u64);
        let image = l.column_space();
        if image.is_empty() || image.len() == n {
            return None;
        }
        let kernel = l.kernel_basis();
        let mut cols = image.clone();
        cols.extend(kernel);
        let split = Matrix::from_columns(n, &cols);
        let one = self.coords(&self.identity());
        let x = split.solve(&one).ok()??;
        let mut e = vec![F::zero(); n];
        for (k, col) in image.iter().enumerate() {
            for (ei, ci) in e.iter_mut().zip(col) {
                *ei = *ei + x[k] * *ci;
            }
        }
        Some(self.element(&e))
    }

    /// Basis of the top `End / {maps with zero trivial part}`, as
    /// block-diagonal matrices, together with lifts to `End`.
    fn top(&self) -> (Vec<Matrix<F>>, Vec<PathMap<F>>) {
        let size: usize = self.mults.iter().sum();
        let project = |b: &PathMap<F>| {
            let mut m = Matrix::zeros(size, size);
            let mut off = 0;
            for (v, &d) in self.mults.iter().enumerate() {
                if d > 0 {
                    m.set_block(off, off, &b.trivial_part(&self.alg, v));
                }
                off += d;
            }
            m
        };
        let mut mats: Vec<Matrix<F>> = Vec::new();
        let mut lifts = Vec::new();
        let mut span: Vec<Vec<F>> = Vec::new();
        for b in &self.basis {
            let m = project(b);
            span.push(m.data().to_vec());
            if Matrix::from_columns(size * size, &span).rank() == span.len() {
                mats.push(m);
                lifts.push(b.clone());
            } else {
                span.pop();
            }
        }
        (mats, lifts)
    }
}

enum Analysis<F> {
    Local,
    Split(PathMap<F>),
}

fn span_rank<F: Field>(vs: &[Matrix<F>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let n = vs[0].data().len();
    let cols: Vec<Vec<F>> = vs.iter().map(|m| m.data().to_vec()).collect();
    Matrix::from_columns(n, &cols).rank()
}

fn independent<F: Field>(vs: Vec<Matrix<F>>) -> Vec<Matrix<F>> {
    let mut out: Vec<Matrix<F>> = Vec::new();
    for v in vs {
        out.push(v);
        if span_rank(&out) < out.len() {
            out.pop();
        }
    }
    out
}

/// Certificate that the top algebra is `k · 1 ⊕ N` with `N` a nilpotent
/// subalgebra, hence local. `None` when the certificate does not apply.
fn local_certificate<F: FiniteField>(top: &[Matrix<F>]) -> Option<()> {
    let size = top.first()?.rows();
    let mut nil = Vec::new();
    for x in top {
        let c = F::elements()
            .into_iter()
            .find(|c| (x - &Matrix::scalar(size, *c)).pow(size as u64).is_zero())?;
        nil.push(x - &Matrix::scalar(size, c));
    }
    let nil = independent(nil);
    let base = span_rank(&nil);
    // closed under multiplication
    for a in &nil {
        for b in &nil {
            let mut with = nil.clone();
            with.push(a * b);
            if span_rank(&with) > base {
                return None;
            }
        }
    }
    // N^k = 0 for some k
    let mut power = nil.clone();
    for _ in 0..=size {
        if power.iter().all(Matrix::is_zero) {
            return Some(());
        }
        let mut next = Vec::new();
        for a in &nil {
            for b in &power {
                next.push(a * b);
            }
        }
        power = independent(next.into_iter().filter(|m| !m.is_zero()).collect());
    }
    None
}

/// Search every element of the top algebra for a nontrivial idempotent.
fn exhaustive_idempotent<F: FiniteField>(top: &[Matrix<F>]) -> Option<Vec<F>> {
    let n = top.len();
    let size = top[0].rows();
    let elems = F::elements();
    let q = elems.len();
    let identity = Matrix::identity(size);
    let mut idx = vec![0usize; n];
    loop {
        let mut x = Matrix::zeros(size, size);
        for (k, &i) in idx.iter().enumerate() {
            if i != 0 {
                x = &x + &top[k].scale(&elems[i]);
            }
        }
        if !x.is_zero() && x != identity && &x * &x == x {
            return Some(idx.iter().map(|&i| elems[i]).collect());
        }
        let mut k = 0;
        loop {
            if k == n {
                return None;
            }
            idx[k] += 1;
            if idx[k] < q {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn analyze<F: FiniteField, R: Rng + ?Sized>(
    m: &DifferentialModule<F>,
    rng: &mut R,
    opts: &Options,
) -> Result<Analysis<F>, Inconclusive> {
    let end = EndAlgebra::new(m);
    let (top, lifts) = end.top();
    if local_certificate(&top).is_some() {
        return Ok(Analysis::Local);
    }
    let identity = end.identity();
    for _ in 0..opts.trials {
        let theta = end.random(rng);
        for c in F::elements() {
            let q = theta.sub(&identity.scale(&c));
            if let Some(e) = end.fitting_idempotent(&q) {
                return Ok(Analysis::Split(e));
            }
        }
    }
    let space = (F::ORDER as f64).powi(top.len() as i32);
    if space <= opts.exhaustive_limit as f64 {
        return Ok(match exhaustive_idempotent(&top) {
            None => Analysis::Local,
            Some(coords) => {
                let theta = combine(&lifts, &coords, m.multiplicities(), m.multiplicities());
                let e = end
                    .fitting_idempotent(&theta)
                    .expect("a lift of a nontrivial idempotent splits");
                Analysis::Split(e)
            }
        });
    }
    Err(Inconclusive)
}

/// A matrix `T` with `T S = I`, for `S` of full column rank.
fn left_inverse<F: Field>(s: &Matrix<F>) -> Matrix<F> {
    let rows = s.transpose().rref_in_place();
    let r = s.cols();
    let mut sub = Matrix::zeros(r, r);
    for (i, &row) in rows.iter().enumerate() {
        for j in 0..r {
            sub.set(i, j, s.get(row, j).clone());
        }
    }
    let inv = sub.inverse().expect("full column rank");
    let mut t = Matrix::zeros(r, s.rows());
    for (i, &row) in rows.iter().enumerate() {
        for k in 0..r {
            t.set(k, row, inv.get(k, i).clone());
        }
    }
    t
}

/// Realize the image of an idempotent endomorphism as a differential module.
pub fn split_idempotent<F: Field>(m: &DifferentialModule<F>, e: &PathMap<F>) -> Summand<F> {
    let alg = m.algebra();
    let mults = m.multiplicities();
    let mut r = vec![0; mults.len()];
    let mut s_coeffs = std::collections::BTreeMap::new();
    let mut t_coeffs = std::collections::BTreeMap::new();
    for (v, &d) in mults.iter().enumerate() {
        if d == 0 {
            continue;
        }
        let ev = e.trivial_part(alg, v);
        let cols = ev.column_space();
        r[v] = cols.len();
        if cols.is_empty() {
            continue;
        }
        let s = Matrix::from_columns(d, &cols);
        t_coeffs.insert(alg.trivial_path(v), left_inverse(&s));
        s_coeffs.insert(alg.trivial_path(v), s);
    }
    let s = PathMap::from_coeffs(r.clone(), mults.to_vec(), s_coeffs);
    let t = PathMap::from_coeffs(mults.to_vec(), r.clone(), t_coeffs);
    let u = t.compose(alg, e).compose(alg, &s);
    let uinv = u.inverse(alg).expect("t e s is unipotent");
    let pi = uinv.compose(alg, &t).compose(alg, e);
    let iota = e.compose(alg, &s);
    let phi = pi.compose(alg, m.phi()).compose(alg, &iota);
    let module =
        DifferentialModule::from_map(alg.clone(), phi).expect("summand of a differential module");
    Summand { module, iota, pi }
}

/// Decompose into indecomposable summands, with split embeddings/projections.
pub fn decompose_with_maps<F: FiniteField, R: Rng + ?Sized>(
    m: &DifferentialModule<F>,
    rng: &mut R,
    opts: &Options,
) -> Result<Vec<Summand<F>>, Inconclusive> {
    let alg = m.algebra();
    if m.is_zero() {
        return Ok(Vec::new());
    }
    let id = PathMap::identity(alg, m.multiplicities());
    let mut work = vec![Summand {
        module: m.clone(),
        iota: id.clone(),
        pi: id,
    }];
    let mut done = Vec::new();
    while let Some(cur) = work.pop() {
        match analyze(&cur.module, rng, opts)? {
            Analysis::Local => done.push(cur),
            Analysis::Split(e) => {
                let one = PathMap::identity(alg, cur.module.multiplicities());
                for idem in [e.clone(), one.sub(&e)] {
                    let part = split_idempotent(&cur.module, &idem);
                    work.push(Summand {
                        iota: cur.iota.compose(alg, &part.iota),
                        pi: part.pi.compose(alg, &cur.pi),
                        module: part.module,
                    });
                }
            }
        }
    }
    done.reverse();
    Ok(done)
}

pub fn decompose<F: FiniteField, R: Rng + ?Sized>(
    m: &DifferentialModule<F>,
    rng: &mut R,
    opts: &Options,
) -> Result<Vec<DifferentialModule<F>>, Inconclusive> {
    Ok(decompose_with_maps(m, rng, opts)?
        .into_iter()
        .map(|s| s.module)
        .collect())
}

/// `Ok(true)` iff `End(M)` is local (certified), `Ok(false)` with a proper
/// splitting found, `Err(Inconclusive)` otherwise. The zero module is not
/// indecomposable.
pub fn is_indecomposable<F: FiniteField, R: Rng + ?Sized>(
    m: &DifferentialModule<F>,
    rng: &mut R,
    opts: &Options,
) -> Result<bool, Inconclusive> {
    if m.is_zero() {
        return Ok(false);
    }
    Ok(matches!(analyze(m, rng, opts)?, Analysis::Local))
}

/// Peel off contractible summands `P_i ⊗ A⋉ = (P_i², [[0,0],[1,0]])` until the
/// remainder is radical. Returns the remainder and the number of contractible
/// summands per vertex.
#[allow(clippy::needless_range_loop)]
pub fn split_projectives<F: Field>(
    m: &DifferentialModule<F>,
) -> (DifferentialModule<F>, Vec<usize>) {
    let alg = m.algebra().clone();
    let nv = alg.vertex_count();
    let mut counts = vec![0; nv];
    let mut cur = m.clone();
    'outer: while !cur.is_radical() {
        for v in 0..nv {
            let t = cur.phi().trivial_part(&alg, v);
            for c in 0..t.cols() {
                if (0..t.rows()).all(|r| t.get(r, c).is_zero()) {
                    continue;
                }
                if let Some(rest) = peel(&cur, v, c) {
                    cur = rest;
                    counts[v] += 1;
                    continue 'outer;
                }
            }
        }
        unreachable!("a non-radical differential module has a contractible summand");
    }
    (cur, counts)
}

fn peel<F: Field>(m: &DifferentialModule<F>, v: usize, c: usize) -> Option<DifferentialModule<F>> {
    let alg = m.algebra().clone();
    let mults = m.multiplicities();
    let mut xm = vec![0; alg.vertex_count()];
    xm[v] = 2;
    let mut x_coeffs = std::collections::BTreeMap::new();
    x_coeffs.insert(alg.trivial_path(v), Matrix::unit(2, 2, 1, 0));
    let x = DifferentialModule::from_map(
        alg.clone(),
        PathMap::from_coeffs(xm.clone(), xm.clone(), x_coeffs),
    )
    .ok()?;
    // ι sends the first generator to the c-th generator of P_v, the second to its image under φ.
    let mut i_coeffs = std::collections::BTreeMap::new();
    for (&w, a) in m.phi().coeffs() {
        if alg.target(w) != v {
            continue;
        }
        let mut col = Matrix::zeros(a.rows(), 2);
        for r in 0..a.rows() {
            col.set(r, 1, a.get(r, c).clone());
        }
        i_coeffs.insert(w, col);
    }
    let e = alg.trivial_path(v);
    let entry = i_coeffs
        .entry(e)
        .or_insert_with(|| Matrix::zeros(mults[v], 2));
    entry.set(c, 0, F::one());
    let iota = PathMap::from_coeffs(xm.clone(), mults.to_vec(), i_coeffs);
    debug_assert!(x.is_morphism_to(m, &iota));
    // π ∈ Hom(M, X) with π ι = id_X
    let homs = m.hom(&x);
    let space = MapSpace::new(&alg, &xm, &xm);
    let cols: Vec<Vec<F>> = homs
        .iter()
        .map(|h| space.to_vec(&h.compose(&alg, &iota)))
        .collect();
    let target = space.to_vec(&PathMap::identity(&alg, &xm));
    let coef = Matrix::from_columns(space.dim(), &cols)
        .solve(&target)
        .ok()??;
    let pi = combine(&homs, &coef, mults, &xm);
    let e = iota.compose(&alg, &pi);
    let rest = PathMap::identity(&alg, mults).sub(&e);
    Some(split_idempotent(m, &rest).module)
}

/// Cheap necessary conditions for isomorphism.
fn same_invariants<F: Field>(m: &DifferentialModule<F>, n: &DifferentialModule<F>) -> bool {
    m.multiplicities() == n.multiplicities() && m.rank() == n.rank()
}

/// For indecomposable `M`, `N`: an isomorphism if one exists. Deterministic,
/// since `End(M)` is local: `M ≅ N` iff some `g_j ∘ f_i` is invertible, and
/// then `f_i` itself is an isomorphism.
pub fn isomorphism_of_indecomposables<F: Field>(
    m: &DifferentialModule<F>,
    n: &DifferentialModule<F>,
) -> Option<PathMap<F>> {
    if !same_invariants(m, n) {
        return None;
    }
    let alg = m.algebra();
    let fs = m.hom(n);
    if fs.is_empty() {
        return None;
    }
    let gs = n.hom(m);
    for f in &fs {
        if gs.iter().any(|g| g.compose(alg, f).is_invertible(alg)) {
            debug_assert!(f.is_invertible(alg));
            return Some(f.clone());
        }
    }
    None
}

/// An explicit isomorphism `M → N`, or `None` if they are not isomorphic.
pub fn find_isomorphism<F: FiniteField, R: Rng + ?Sized>(
    m: &DifferentialModule<F>,
    n: &DifferentialModule<F>,
    rng: &mut R,
    opts: &Options,
) -> Result<Option<PathMap<F>>, Inconclusive> {
    if !same_invariants(m, n) {
        return Ok(None);
    }
    let alg = m.algebra();
    if m.is_zero() {
        return Ok(Some(PathMap::identity(alg, m.multiplicities())));
    }
    let homs = m.hom(n);
    if homs.is_empty() {
        return Ok(None);
    }
    for _ in 0..opts.trials {
        let c: Vec<F> = (0..homs.len()).map(|_| F::random(rng)).collect();
        let f = combine(&homs, &c, m.multiplicities(), n.multiplicities());
        if f.is_invertible(alg) {
            return Ok(Some(f));
        }
    }
    // Match indecomposable summands and assemble Σ ι_j f_ij π_i.
    let xs = decompose_with_maps(m, rng, opts)?;
    let ys = decompose_with_maps(n, rng, opts)?;
    if xs.len() != ys.len() {
        return Ok(None);
    }
    let mut used = vec![false; ys.len()];
    let mut total = PathMap::zero(m.multiplicities().to_vec(), n.multiplicities().to_vec());
    for x in &xs {
        let hit = ys.iter().enumerate().find_map(|(j, y)| {
            if used[j] {
                return None;
            }
            isomorphism_of_indecomposables(&x.module, &y.module).map(|f| (j, f))
        });
        let Some((j, f)) = hit else { return Ok(None) };
        used[j] = true;
        total = total.add(&ys[j].iota.compose(alg, &f).compose(alg, &x.pi));
    }
    debug_assert!(total.is_invertible(alg));
    Ok(Some(total))
}

pub fn is_isomorphic<F: FiniteField, R: Rng + ?Sized>(
    m: &DifferentialModule<F>,
    n: &DifferentialModule<F>,
    rng: &mut R,
    opts: &Options,
) -> Result<bool, Inconclusive> {
    Ok(find_isomorphism(m, n, rng, opts)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::F5;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeMap;

    const A0: &str = "vertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow a' 1 2\narrow b 2 3\narrow b' 2 3\nrel a b\nrel a' b'\n";
    const CYCLE3: &str =
        "vertex 1\nvertex 2\nvertex 3\narrow d 1 2\narrow a 2 3\narrow b 3 1\nrel d a\n";

    fn band_p2(alg: &Arc<GentleAlgebra>, lambda: i64) -> DifferentialModule<F5> {
        let w = alg.parse_path("abd").unwrap();
        DifferentialModule::make(
            alg.clone(),
            vec![0, 1, 0],
            BTreeMap::from([(w, Matrix::from_i64_rows(&[&[lambda]]))]),
        )
        .unwrap()
    }

    fn arrow_module(alg: &Arc<GentleAlgebra>, name: &str) -> DifferentialModule<F5> {
        let w = alg.parse_path(name).unwrap();
        let mut mults = vec![0; 3];
        mults[alg.source(w)] += 1;
        mults[alg.target(w)] += 1;
        DifferentialModule::make(
            alg.clone(),
            mults,
            BTreeMap::from([(w, Matrix::identity(1))]),
        )
        .unwrap()
    }

    #[test]
    fn band_module_is_indecomposable() {
        let cyc = Arc::new(GentleAlgebra::parse(CYCLE3).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(
            is_indecomposable(&band_p2(&cyc, 2), &mut rng, &Options::default()),
            Ok(true)
        );
    }

    #[test]
    fn split_projectives_examples() {
        let cyc = Arc::new(GentleAlgebra::parse(CYCLE3).unwrap());
        let c = DifferentialModule::<F5>::contractible(cyc.clone(), 0);
        let (rad, counts) = split_projectives(&c);
        assert!(rad.is_zero());
        assert_eq!(counts, [1, 0, 0]);
        let b = band_p2(&cyc, 3);
        assert_eq!(split_projectives(&b), (b.clone(), vec![0, 0, 0]));
        let (rad, counts) = split_projectives(&c.direct_sum(&b));
        assert_eq!(rad, b);
        assert_eq!(counts, [1, 0, 0]);
    }

    #[test]
    fn split_projectives_after_scrambling() {
        let alg = Arc::new(GentleAlgebra::parse(A0).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let m = arrow_module(&alg, "a")
            .direct_sum(&DifferentialModule::contractible(alg.clone(), 1))
            .direct_sum(&DifferentialModule::contractible(alg.clone(), 0));
        let g = PathMap::random_automorphism(&alg, m.multiplicities(), &mut rng);
        let scrambled = m.conjugate(&g);
        let (rad, counts) = split_projectives(&scrambled);
        assert!(rad.is_radical());
        assert_eq!(counts, [1, 1, 0]);
        assert_eq!(rad.total_dim() + 2 * (5 + 3), scrambled.total_dim());
        let opts = Options::default();
        assert_eq!(
            is_isomorphic(&rad, &arrow_module(&alg, "a"), &mut rng, &opts),
            Ok(true)
        );
    }

    #[test]
    fn decompose_recovers_summands() {
        let alg = Arc::new(GentleAlgebra::parse(A0).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let opts = Options::default();
        let parts = [
            arrow_module(&alg, "a"),
            arrow_module(&alg, "b'"),
            arrow_module(&alg, "a"),
        ];
        let m = DifferentialModule::direct_sum_all(alg.clone(), &parts);
        let g = PathMap::random_automorphism(&alg, m.multiplicities(), &mut rng);
        let scrambled = m.conjugate(&g);
        let pieces = decompose(&scrambled, &mut rng, &opts).unwrap();
        assert_eq!(pieces.len(), 3);
        let mut used = [false; 3];
        for p in &pieces {
            let j = (0..3)
                .find(|&j| !used[j] && isomorphism_of_indecomposables(p, &parts[j]).is_some())
                .expect("summand matches an original");
            used[j] = true;
        }
        let back = DifferentialModule::direct_sum_all(alg.clone(), &pieces);
        assert_eq!(is_isomorphic(&back, &scrambled, &mut rng, &opts), Ok(true));
    }

    #[test]
    fn shuffled_sums_are_isomorphic() {
        let alg = Arc::new(GentleAlgebra::parse(A0).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let opts = Options::default();
        let x = arrow_module(&alg, "a");
        let y = arrow_module(&alg, "b");
        let m = x.direct_sum(&y).direct_sum(&x);
        let n = y.direct_sum(&x).direct_sum(&x);
        let f = find_isomorphism(&m, &n, &mut rng, &opts).unwrap().unwrap();
        assert!(m.is_morphism_to(&n, &f) && f.is_invertible(&alg));
        assert_eq!(is_isomorphic(&x, &y, &mut rng, &opts), Ok(false));
        assert_eq!(is_indecomposable(&m, &mut rng, &opts), Ok(false));
    }

    #[test]
    fn band_parameters_distinguish_modules() {
        let cyc = Arc::new(GentleAlgebra::parse(CYCLE3).unwrap());
        let m2 = band_p2(&cyc, 2);
        assert!(isomorphism_of_indecomposables(&m2, &band_p2(&cyc, 3)).is_none());
        assert!(isomorphism_of_indecomposables(&m2, &m2).is_some());
    }
}
