//! Bounded complexes of projectives and the folding functor to differential
//! modules: forget the grading, sum the terms, keep the differential.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::diffmod::DifferentialModule;
use crate::field::Field;
use crate::linalg::Matrix;
use crate::pathmap::PathMap;
use crate::quiver::GentleAlgebra;
use crate::strings::{step, HomotopyBand, HomotopyString};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("differential out of degree {0} has the wrong shape")]
    Shape(i64),
    #[error("d ∘ d ≠ 0 at degree {0}")]
    NotComplex(i64),
    #[error("grading does not match the word")]
    Grading,
    #[error("band has nonzero winding number")]
    NotGradable,
}

/// `P^•`: multiplicities per degree and differentials `d^n: P^n → P^{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjComplex<F> {
    alg: Arc<GentleAlgebra>,
    terms: BTreeMap<i64, Vec<usize>>,
    diffs: BTreeMap<i64, PathMap<F>>,
}

impl<F: Field> ProjComplex<F> {
    pub fn new(
        alg: Arc<GentleAlgebra>,
        terms: BTreeMap<i64, Vec<usize>>,
        diffs: BTreeMap<i64, PathMap<F>>,
    ) -> Result<Self, ComplexError> {
        let zero = vec![0; alg.vertex_count()];
        for (&n, d) in &diffs {
            let src = terms.get(&n).unwrap_or(&zero);
            let dst = terms.get(&(n + 1)).unwrap_or(&zero);
            if d.src() != src.as_slice()
                || d.dst() != dst.as_slice()
                || d.check_shapes(&alg).is_some()
            {
                return Err(ComplexError::Shape(n));
            }
        }
        for (&n, d) in &diffs {
            if let Some(next) = diffs.get(&(n + 1)) {
                if !next.compose(&alg, d).is_zero() {
                    return Err(ComplexError::NotComplex(n));
                }
            }
        }
        Ok(ProjComplex { alg, terms, diffs })
    }

    pub fn terms(&self) -> &BTreeMap<i64, Vec<usize>> {
        &self.terms
    }

    pub fn differential(&self, n: i64) -> Option<&PathMap<F>> {
        self.diffs.get(&n)
    }

    /// `P[k]`: `P[k]^n = P^{n+k}` with differential `(−1)^k d`.
    pub fn shift(&self, k: i64) -> Self {
        let sign = if k.rem_euclid(2) == 1 {
            F::one().neg()
        } else {
            F::one()
        };
        ProjComplex {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&n, t)| (n - k, t.clone()))
                .collect(),
            diffs: self
                .diffs
                .iter()
                .map(|(&n, d)| (n - k, d.scale(&sign)))
                .collect(),
        }
    }

    /// Total dimension over the field of all terms.
    pub fn total_dim(&self) -> usize {
        self.terms
            .values()
            .map(|m| {
                m.iter()
                    .enumerate()
                    .map(|(v, &k)| k * self.alg.projective_dim(v))
                    .sum::<usize>()
            })
            .sum()
    }

    /// The folded differential module `(⊕_n P^n, Σ_n d^n)`; copies of each
    /// vertex are ordered by degree.
    pub fn fold(&self) -> DifferentialModule<F> {
        let alg = &self.alg;
        let nv = alg.vertex_count();
        let mut mults = vec![0; nv];
        let mut offsets: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (&n, t) in &self.terms {
            offsets.insert(n, mults.clone());
            for v in 0..nv {
                mults[v] += t[v];
            }
        }
        let mut coeffs: BTreeMap<usize, Matrix<F>> = BTreeMap::new();
        for (&n, d) in &self.diffs {
            let (Some(src_off), Some(dst_off)) = (offsets.get(&n), offsets.get(&(n + 1))) else {
                continue;
            };
            for (&w, a) in d.coeffs() {
                let m = coeffs
                    .entry(w)
                    .or_insert_with(|| Matrix::zeros(mults[alg.source(w)], mults[alg.target(w)]));
                m.add_block(dst_off[alg.source(w)], src_off[alg.target(w)], a);
            }
        }
        DifferentialModule::make(alg.clone(), mults, coeffs)
            .expect("folding a complex gives a differential module")
    }
}

/// Build the complex of a graded word: points `0..k` at vertices `verts` and
/// degrees `mu`, each carrying `n` copies; `blocks[i]` sits on letter `i`
/// between points `i` and `i+1 (mod k)`.
fn graded_word<F: Field>(
    alg: &Arc<GentleAlgebra>,
    letters: &[crate::strings::Letter],
    verts: &[usize],
    mu: &[i64],
    n: usize,
    blocks: &[&Matrix<F>],
) -> ProjComplex<F> {
    let nv = alg.vertex_count();
    let k = verts.len();
    let mut terms: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    let mut offset = vec![0; k];
    for i in 0..k {
        let t = terms.entry(mu[i]).or_insert_with(|| vec![0; nv]);
        offset[i] = t[verts[i]];
        t[verts[i]] += n;
    }
    let mut coeffs: BTreeMap<i64, BTreeMap<usize, Matrix<F>>> = BTreeMap::new();
    for (i, l) in letters.iter().enumerate() {
        let (a, b) = (i, (i + 1) % k);
        // The differential runs from the lower-degree end to the higher one.
        let (from, to) = if l.is_direct() { (b, a) } else { (a, b) };
        let p = l.path;
        let m = coeffs
            .entry(mu[from])
            .or_default()
            .entry(p)
            .or_insert_with(|| {
                Matrix::zeros(
                    terms[&mu[to]][alg.source(p)],
                    terms[&mu[from]][alg.target(p)],
                )
            });
        m.add_block(offset[to], offset[from], blocks[i]);
    }
    let zero = vec![0; nv];
    let diffs = coeffs
        .into_iter()
        .map(|(deg, c)| {
            let src = terms.get(&deg).cloned().unwrap_or_else(|| zero.clone());
            let dst = terms
                .get(&(deg + 1))
                .cloned()
                .unwrap_or_else(|| zero.clone());
            (deg, PathMap::from_coeffs(src, dst, c))
        })
        .collect();
    ProjComplex::new(alg.clone(), terms, diffs).expect("graded words give complexes")
}

/// `P_{(σ, μ)}`: the string complex for a graded homotopy string.
pub fn string_complex<F: Field>(
    alg: &Arc<GentleAlgebra>,
    s: &HomotopyString,
    mu: &[i64],
) -> Result<ProjComplex<F>, ComplexError> {
    if !s.is_grading(mu) {
        return Err(ComplexError::Grading);
    }
    let (s, mu) = if s.is_canonical() {
        (s.clone(), mu.to_vec())
    } else {
        (s.inverse(), mu.iter().rev().copied().collect())
    };
    let one = Matrix::identity(1);
    let blocks = vec![&one; s.len()];
    Ok(graded_word(
        alg,
        s.letters(),
        &s.vertices(alg),
        &mu,
        1,
        &blocks,
    ))
}

/// `P_{(b, μ), J}`: the band complex for a band of winding number 0.
pub fn band_complex<F: Field>(
    alg: &Arc<GentleAlgebra>,
    b: &HomotopyBand,
    anchor: i64,
    j: &Matrix<F>,
) -> Result<ProjComplex<F>, ComplexError> {
    let mu = b.grading(anchor).ok_or(ComplexError::NotGradable)?;
    let id = Matrix::identity(j.rows());
    let mut blocks = vec![&id; b.len()];
    *blocks.last_mut().unwrap() = j;
    debug_assert!(b.letters().iter().enumerate().all(|(i, &l)| {
        let next = mu[(i + 1) % mu.len()];
        i + 1 == mu.len() || next - mu[i] == step(l)
    }));
    Ok(graded_word(
        alg,
        b.letters(),
        &b.vertices(alg),
        &mu,
        j.rows(),
        &blocks,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{is_isomorphic, Options};
    use crate::field::F5;
    use crate::linalg::jordan_block;
    use crate::objects::{band_object, string_object};
    use crate::par::Exec;
    use crate::strings::{enumerate_bands, enumerate_strings};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const A0: &str = "vertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow a' 1 2\narrow b 2 3\narrow b' 2 3\nrel a b\nrel a' b'\n";
    const CYCLE3: &str =
        "vertex 1\nvertex 2\nvertex 3\narrow d 1 2\narrow a 2 3\narrow b 3 1\nrel d a\n";
    const LINE: &str =
        "vertex 1\nvertex 2\nvertex 3\nvertex 4\narrow x 1 2\narrow y 2 3\narrow z 3 4\nrel x y\n";

    fn alg(text: &str) -> Arc<GentleAlgebra> {
        Arc::new(GentleAlgebra::parse(text).unwrap())
    }

    #[test]
    fn folding_a_string_complex_gives_the_string_object() {
        for text in [A0, CYCLE3, LINE] {
            let a = alg(text);
            for s in enumerate_strings(&a, 5, Exec::Sequential) {
                for anchor in [-2, 0, 3] {
                    let c = string_complex::<F5>(&a, &s, &s.grading(anchor)).unwrap();
                    let m = c.fold();
                    assert_eq!(m, string_object(&a, &s));
                    assert_eq!(m.total_dim(), c.total_dim());
                    let ci = string_complex::<F5>(&a, &s.inverse(), &s.inverse().grading(anchor))
                        .unwrap();
                    assert_eq!(ci.fold(), m);
                }
            }
        }
    }

    #[test]
    fn shifting_folds_to_suspension() {
        let a = alg(A0);
        for s in enumerate_strings(&a, 4, Exec::Sequential) {
            let c = string_complex::<F5>(&a, &s, &s.grading(0)).unwrap();
            assert_eq!(c.shift(1).fold(), c.fold().suspend());
            assert_eq!(c.shift(2).fold(), c.fold());
            assert_eq!(c.shift(-3).fold(), c.fold().suspend());
        }
    }

    #[test]
    fn folding_a_band_complex_gives_the_band_object() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for text in [A0, CYCLE3, LINE] {
            let a = alg(text);
            for b in enumerate_bands(&a, 6, Exec::Sequential) {
                let j = jordan_block(F5::new(2), 2).unwrap();
                match band_complex(&a, &b, 0, &j) {
                    Ok(c) => {
                        let m = c.fold();
                        assert_eq!(m.total_dim(), c.total_dim());
                        let o = band_object(&a, &b, &j).unwrap();
                        assert!(is_isomorphic(&m, &o, &mut rng, &Options::default()).unwrap());
                    }
                    Err(e) => {
                        assert_eq!(e, ComplexError::NotGradable);
                        assert_ne!(b.winding(), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_gradings_and_non_complexes() {
        let a = alg(A0);
        let s = HomotopyString::parse(&a, "a,b").unwrap();
        assert_eq!(
            string_complex::<F5>(&a, &s, &[0, 1, 2]).unwrap_err(),
            ComplexError::Grading
        );
        // a'b is a nonzero path, so b followed by a' does not square to zero.
        let mut terms = BTreeMap::new();
        terms.insert(0, vec![0, 0, 1]);
        terms.insert(1, vec![0, 1, 0]);
        terms.insert(2, vec![1, 0, 0]);
        let pb = a.parse_path("b").unwrap();
        let pa = a.parse_path("a'").unwrap();
        let mut d0 = BTreeMap::new();
        d0.insert(pb, Matrix::<F5>::identity(1));
        let mut d1 = BTreeMap::new();
        d1.insert(pa, Matrix::<F5>::identity(1));
        let mut diffs = BTreeMap::new();
        diffs.insert(0, PathMap::from_coeffs(vec![0, 0, 1], vec![0, 1, 0], d0));
        diffs.insert(1, PathMap::from_coeffs(vec![0, 1, 0], vec![1, 0, 0], d1));
        assert_eq!(
            ProjComplex::new(a.clone(), terms, diffs).unwrap_err(),
            ComplexError::NotComplex(0)
        );
    }
}
