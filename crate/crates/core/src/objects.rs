//! Differential modules attached to homotopy strings and bands.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::diffmod::{DifferentialModule, ModuleError};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::quiver::GentleAlgebra;
use crate::strings::{HomotopyBand, HomotopyString, Letter};

/// Add `block` to the coefficient of `letter`, with its rows at copies
/// `rows..` of the letter's source projective and columns at `cols..`.
fn place<F: Field>(
    alg: &GentleAlgebra,
    mults: &[usize],
    coeffs: &mut BTreeMap<usize, Matrix<F>>,
    letter: Letter,
    rows: usize,
    cols: usize,
    block: &Matrix<F>,
) {
    let p = letter.path;
    let m = coeffs
        .entry(p)
        .or_insert_with(|| Matrix::zeros(mults[alg.source(p)], mults[alg.target(p)]));
    m.add_block(rows, cols, block);
}

/// Copies of each vertex ordered by `(μ, position)` with `μ` anchored at 0 on
/// the first point of the canonical orientation. Returns multiplicities and
/// the copy index of each point.
fn string_layout(alg: &GentleAlgebra, s: &HomotopyString) -> (Vec<usize>, Vec<usize>) {
    let verts = s.vertices(alg);
    let mu = s.grading(0);
    let mut order: Vec<usize> = (0..verts.len()).collect();
    order.sort_by_key(|&i| (mu[i], i));
    let mut mults = vec![0; alg.vertex_count()];
    let mut copy = vec![0; verts.len()];
    for i in order {
        copy[i] = mults[verts[i]];
        mults[verts[i]] += 1;
    }
    (mults, copy)
}

/// `P_σ`: one copy of `P_{v_i}` per point of the string, and for each letter
/// the left multiplication by its path between consecutive points.
pub fn string_object<F: Field>(
    alg: &Arc<GentleAlgebra>,
    s: &HomotopyString,
) -> DifferentialModule<F> {
    let s = s.canonical();
    let (mults, copy) = string_layout(alg, &s);
    let one = Matrix::identity(1);
    let mut coeffs = BTreeMap::new();
    for (i, &l) in s.letters().iter().enumerate() {
        let (r, c) = if l.is_direct() {
            (copy[i], copy[i + 1])
        } else {
            (copy[i + 1], copy[i])
        };
        place(alg, &mults, &mut coeffs, l, r, c, &one);
    }
    DifferentialModule::make(alg.clone(), mults, coeffs)
        .expect("string objects are differential modules")
}

/// `P_{b,J}`: `n` copies of `P_{v_i}` per point of the band, identity blocks on
/// every letter except the last, which carries `J`.
pub fn band_object<F: Field>(
    alg: &Arc<GentleAlgebra>,
    b: &HomotopyBand,
    j: &Matrix<F>,
) -> Result<DifferentialModule<F>, ModuleError> {
    assert!(j.is_square(), "band parameter must be square");
    if !j.is_invertible() {
        return Err(ModuleError::ZeroScalar);
    }
    let n = j.rows();
    let verts = b.vertices(alg);
    let r = verts.len();
    let mut mults = vec![0; alg.vertex_count()];
    let mut offset = vec![0; r];
    for (i, &v) in verts.iter().enumerate() {
        offset[i] = mults[v];
        mults[v] += n;
    }
    let id = Matrix::identity(n);
    let mut coeffs = BTreeMap::new();
    for (i, &l) in b.letters().iter().enumerate() {
        let (from, to) = (i, (i + 1) % r);
        let block = if i + 1 == r { j } else { &id };
        let (ro, co) = if l.is_direct() {
            (offset[from], offset[to])
        } else {
            (offset[to], offset[from])
        };
        place(alg, &mults, &mut coeffs, l, ro, co, block);
    }
    DifferentialModule::make(alg.clone(), mults, coeffs)
}

/// The parameter `J'` with `t_λ(P_{b,J}) ≅ P_{b,J'}`: `λ^{±w} J`, the sign being
/// `+` when the wrap letter is direct.
pub fn twist_target<F: Field>(b: &HomotopyBand, j: &Matrix<F>, lambda: &F) -> Matrix<F> {
    let e = if b.wrap_is_direct() {
        b.winding()
    } else {
        -b.winding()
    };
    j.scale(&lambda.powi(e).expect("twist scalar must be nonzero"))
}

/// `e` with `P_{rot(b), J^e} ≅ P_{b,J}`: `+1` when the first and last letters
/// point the same way, `−1` otherwise.
pub fn rotation_exponent(b: &HomotopyBand) -> i64 {
    let ls = b.letters();
    if ls[0].is_direct() == ls[ls.len() - 1].is_direct() {
        1
    } else {
        -1
    }
}

/// `J^e` for `e = ±1`.
pub fn parameter_power<F: Field>(j: &Matrix<F>, e: i64) -> Matrix<F> {
    if e >= 0 {
        j.pow(e as u64)
    } else {
        j.inverse()
            .expect("band parameter must be invertible")
            .pow((-e) as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{is_indecomposable, is_isomorphic, Options};
    use crate::field::{Field, F5};
    use crate::linalg::jordan_block;
    use crate::par::Exec;
    use crate::strings::{enumerate_bands, enumerate_strings};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const A0: &str = "vertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow a' 1 2\narrow b 2 3\narrow b' 2 3\nrel a b\nrel a' b'\n";
    const CYCLE3: &str =
        "vertex 1\nvertex 2\nvertex 3\narrow d 1 2\narrow a 2 3\narrow b 3 1\nrel d a\n";

    fn alg(text: &str) -> Arc<GentleAlgebra> {
        Arc::new(GentleAlgebra::parse(text).unwrap())
    }

    fn f5(x: i64) -> F5 {
        F5::from_i64(x)
    }

    #[test]
    fn single_arrow_string_is_a_cone() {
        let a = alg(A0);
        let s = HomotopyString::parse(&a, "a").unwrap();
        let m: DifferentialModule<F5> = string_object(&a, &s);
        assert_eq!(m.multiplicities(), &[1, 1, 0]);
        let pa = a.parse_path("a").unwrap();
        assert_eq!(m.coeff(pa).unwrap(), &Matrix::identity(1));
        assert_eq!(m.phi().coeffs().len(), 1);
    }

    #[test]
    fn six_letter_band_has_doubled_projectives() {
        let a = alg(A0);
        let b = HomotopyBand::parse(&a, "a,b,ab'^-1,a',b',a'b^-1").unwrap();
        let m = band_object(&a, &b, &Matrix::scalar(1, f5(2))).unwrap();
        assert_eq!(m.multiplicities(), &[2, 2, 2]);
        assert_eq!(m.total_dim(), 2 * (5 + 3 + 1));
    }

    #[test]
    fn loop_band_is_a_scaled_maximal_path() {
        let a = alg(CYCLE3);
        let b = HomotopyBand::parse(&a, "abd").unwrap();
        let m = band_object(&a, &b, &Matrix::scalar(1, f5(3))).unwrap();
        assert_eq!(m.multiplicities(), &[0, 1, 0]);
        let abd = a.parse_path("abd").unwrap();
        assert_eq!(m.coeff(abd).unwrap(), &Matrix::scalar(1, f5(3)));
    }

    #[test]
    fn string_objects_are_indecomposable_and_reversal_invariant() {
        let a = alg(A0);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for s in enumerate_strings(&a, 3, Exec::Sequential) {
            let m: DifferentialModule<F5> = string_object(&a, &s);
            assert_eq!(m, string_object(&a, &s.inverse()));
            assert!(is_indecomposable(&m, &mut rng, &Options::default()).unwrap());
        }
    }

    #[test]
    fn rotation_changes_parameter_by_the_predicted_power() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for text in [A0, CYCLE3] {
            let a = alg(text);
            for b in enumerate_bands(&a, 6, Exec::Sequential) {
                for j in [Matrix::scalar(1, f5(2)), jordan_block(f5(3), 2).unwrap()] {
                    let m = band_object(&a, &b, &j).unwrap();
                    let e = rotation_exponent(&b);
                    let r = band_object(&a, &b.rotate(), &parameter_power(&j, e)).unwrap();
                    assert!(is_isomorphic(&m, &r, &mut rng, &Options::default()).unwrap());
                }
            }
        }
    }

    #[test]
    fn twisting_a_band_rescales_its_parameter() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for text in [A0, CYCLE3] {
            let a = alg(text);
            for b in enumerate_bands(&a, 6, Exec::Sequential) {
                let j = jordan_block(f5(4), 2).unwrap();
                let lambda = f5(2);
                let m = band_object(&a, &b, &j).unwrap().twist(&lambda).unwrap();
                let t = band_object(&a, &b, &twist_target(&b, &j, &lambda)).unwrap();
                assert!(is_isomorphic(&m, &t, &mut rng, &Options::default()).unwrap());
            }
        }
    }
}
