//! Differential modules `(P, φ)`: `P` projective over the base algebra and
//! `φ ∈ End(P)` with `φ² = 0`. These model maximal Cohen–Macaulay modules over
//! the trivial extension, with `ε` acting as `φ`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::field::Field;
use crate::linalg::Matrix;
use crate::pathmap::{MapSpace, PathMap};
use crate::quiver::{GentleAlgebra, PathId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("expected {expected} multiplicities, got {got}")]
    Multiplicities { expected: usize, got: usize },
    #[error("coefficient of `{path}` is {got:?}, expected {expected:?}")]
    Shape {
        path: String,
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("φ² ≠ 0 (nonzero component at `{0}`)")]
    NotSquareZero(String),
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("module is not radical")]
    NotRadical,
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("dump line {line}: {message}")]
    Dump { line: usize, message: String },
}

#[derive(Clone, Debug)]
pub struct DifferentialModule<F> {
    alg: Arc<GentleAlgebra>,
    phi: PathMap<F>,
}

impl<F: Field> PartialEq for DifferentialModule<F> {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.alg, &other.alg) || *self.alg == *other.alg) && self.phi == other.phi
    }
}

impl<F: Field> Eq for DifferentialModule<F> {}

impl<F: Field> DifferentialModule<F> {
    /// Validate shapes and `φ² = 0`.
    pub fn make(
        alg: Arc<GentleAlgebra>,
        mults: Vec<usize>,
        coeffs: BTreeMap<PathId, Matrix<F>>,
    ) -> Result<Self, ModuleError> {
        if mults.len() != alg.vertex_count() {
            return Err(ModuleError::Multiplicities {
                expected: alg.vertex_count(),
                got: mults.len(),
            });
        }
        for (&w, m) in &coeffs {
            let expected = (mults[alg.source(w)], mults[alg.target(w)]);
            if m.shape() != expected {
                return Err(ModuleError::Shape {
                    path: alg.path_name(w).to_string(),
                    expected,
                    got: m.shape(),
                });
            }
        }
        let phi = PathMap::from_coeffs(mults.clone(), mults, coeffs);
        Self::from_map(alg, phi)
    }

    /// Validate an endomorphism given as a path map.
    pub fn from_map(alg: Arc<GentleAlgebra>, phi: PathMap<F>) -> Result<Self, ModuleError> {
        assert_eq!(phi.src(), phi.dst(), "differential must be an endomorphism");
        let sq = phi.compose(&alg, &phi);
        if let Some((&w, _)) = sq.coeffs().iter().next() {
            return Err(ModuleError::NotSquareZero(alg.path_name(w).to_string()));
        }
        Ok(DifferentialModule { alg, phi })
    }

    /// The zero module.
    pub fn zero(alg: Arc<GentleAlgebra>) -> Self {
        let n = alg.vertex_count();
        DifferentialModule {
            phi: PathMap::zero(vec![0; n], vec![0; n]),
            alg,
        }
    }

    /// `(P_v^{⊕m}, 0)`: a projective with zero differential.
    pub fn projective(alg: Arc<GentleAlgebra>, v: usize, m: usize) -> Self {
        let mut mults = vec![0; alg.vertex_count()];
        mults[v] = m;
        DifferentialModule {
            phi: PathMap::zero(mults.clone(), mults),
            alg,
        }
    }

    /// The contractible object `(P_v ⊕ P_v, [[0, 1], [0, 0]])`.
    pub fn contractible(alg: Arc<GentleAlgebra>, v: usize) -> Self {
        let mut mults = vec![0; alg.vertex_count()];
        mults[v] = 2;
        let mut coeffs = BTreeMap::new();
        coeffs.insert(alg.trivial_path(v), Matrix::unit(2, 2, 0, 1));
        DifferentialModule {
            phi: PathMap::from_coeffs(mults.clone(), mults, coeffs),
            alg,
        }
    }

    pub fn algebra(&self) -> &Arc<GentleAlgebra> {
        &self.alg
    }

    pub fn multiplicities(&self) -> &[usize] {
        self.phi.src()
    }

    pub fn phi(&self) -> &PathMap<F> {
        &self.phi
    }

    pub fn coeff(&self, w: PathId) -> Option<&Matrix<F>> {
        self.phi.coeff(w)
    }

    /// `Σ_i d_i · dim P_i`.
    pub fn total_dim(&self) -> usize {
        self.multiplicities()
            .iter()
            .enumerate()
            .map(|(v, &d)| d * self.alg.projective_dim(v))
            .sum()
    }

    /// Dimension vector of the underlying representation.
    pub fn dim_vector(&self) -> Vec<usize> {
        let mut dv = vec![0; self.alg.vertex_count()];
        for (v, &d) in self.multiplicities().iter().enumerate() {
            for (x, y) in dv.iter_mut().zip(self.alg.projective_dim_vector(v)) {
                *x += d * y;
            }
        }
        dv
    }

    pub fn is_zero(&self) -> bool {
        self.multiplicities().iter().all(|&d| d == 0)
    }

    /// True iff every trivial-path coefficient is zero.
    pub fn is_radical(&self) -> bool {
        self.phi.is_radical(&self.alg)
    }

    /// Rank of `φ` on the underlying vector space.
    pub fn rank(&self) -> usize {
        self.phi.realize(&self.alg).rank()
    }

    /// `Ω(P, φ) = (P, −φ)`.
    pub fn suspend(&self) -> Self {
        DifferentialModule {
            alg: self.alg.clone(),
            phi: self.phi.neg(),
        }
    }

    /// `t_λ(P, φ) = (P, λφ)`.
    pub fn twist(&self, lambda: &F) -> Result<Self, ModuleError> {
        if lambda.is_zero() {
            return Err(ModuleError::ZeroScalar);
        }
        Ok(DifferentialModule {
            alg: self.alg.clone(),
            phi: self.phi.scale(lambda),
        })
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        DifferentialModule {
            alg: self.alg.clone(),
            phi: self.phi.direct_sum(&self.alg, &other.phi),
        }
    }

    pub fn direct_sum_all(alg: Arc<GentleAlgebra>, parts: &[Self]) -> Self {
        parts
            .iter()
            .fold(Self::zero(alg), |acc, m| acc.direct_sum(m))
    }

    /// Transport the differential along an automorphism `g`: `(P, g φ g⁻¹)`.
    pub fn conjugate(&self, g: &PathMap<F>) -> Self {
        let ginv = g
            .inverse(&self.alg)
            .expect("conjugating map must be invertible");
        DifferentialModule {
            alg: self.alg.clone(),
            phi: g.compose(&self.alg, &self.phi).compose(&self.alg, &ginv),
        }
    }

    /// Whether `ψ: self → other` satisfies `ψ φ = φ' ψ`.
    pub fn is_morphism_to(&self, other: &Self, psi: &PathMap<F>) -> bool {
        psi.src() == self.multiplicities()
            && psi.dst() == other.multiplicities()
            && psi.compose(&self.alg, &self.phi) == other.phi.compose(&self.alg, psi)
    }

    /// Basis of `Hom(self, other)`: path maps intertwining the differentials.
    pub fn hom(&self, other: &Self) -> Vec<PathMap<F>> {
        let space = MapSpace::new(&self.alg, self.multiplicities(), other.multiplicities());
        let system = self.commutator_matrix(other, &space, false);
        system
            .kernel_basis()
            .into_iter()
            .map(|v| space.from_vec(&v))
            .collect()
    }

    /// Columns are `φ' h ∓ h φ` for the unit maps `h` of `space`
    /// (`−` for the intertwining condition, `+` for null-homotopies).
    fn commutator_matrix(&self, other: &Self, space: &MapSpace, homotopy: bool) -> Matrix<F> {
        let n = space.dim();
        let cols: Vec<Vec<F>> = (0..n)
            .map(|k| {
                let h: PathMap<F> = space.unit(k);
                let left = other.phi.compose(&self.alg, &h);
                let right = h.compose(&self.alg, &self.phi);
                let v = if homotopy {
                    left.add(&right)
                } else {
                    left.sub(&right)
                };
                space.to_vec(&v)
            })
            .collect();
        Matrix::from_columns(n, &cols)
    }

    /// Stable morphisms: `Hom(self, other)` modulo null-homotopic maps
    /// `φ' h + h φ`. Returns representatives of a quotient basis.
    pub fn stable_hom(&self, other: &Self) -> Vec<PathMap<F>> {
        let space = MapSpace::new(&self.alg, self.multiplicities(), other.multiplicities());
        let homs = self.hom(other);
        let null = self.commutator_matrix(other, &space, true);
        let mut span: Vec<Vec<F>> = null.column_space();
        let mut rank = span.len();
        let mut out = Vec::new();
        for h in homs {
            let v = space.to_vec(&h);
            span.push(v);
            let r = Matrix::from_columns(space.dim(), &span).rank();
            if r > rank {
                rank = r;
                out.push(h);
            } else {
                span.pop();
            }
        }
        out
    }

    /// Textual dump: `dim <vertex>=<m>` lines, then `coef <path> <r>x<c>`
    /// blocks followed by one line per row.
    pub fn to_dump(&self) -> String {
        let mut out = String::new();
        for (v, &d) in self.multiplicities().iter().enumerate() {
            let _ = writeln!(out, "dim {}={}", self.alg.vertex_name(v), d);
        }
        for (&w, m) in self.phi.coeffs() {
            let _ = writeln!(
                out,
                "coef {} {}x{}",
                self.alg.path_name(w),
                m.rows(),
                m.cols()
            );
            for r in 0..m.rows() {
                let row: Vec<String> = m.row(r).iter().map(|x| x.to_string()).collect();
                let _ = writeln!(out, "{}", row.join(" "));
            }
        }
        out
    }

    pub fn from_dump(alg: Arc<GentleAlgebra>, text: &str) -> Result<Self, ModuleError> {
        let mut mults = vec![0; alg.vertex_count()];
        let mut coeffs = BTreeMap::new();
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let err = |line: usize, message: String| ModuleError::Dump { line, message };
        while let Some((line, l)) = lines.next() {
            if let Some(rest) = l.strip_prefix("dim ") {
                let (v, m) = rest
                    .split_once('=')
                    .ok_or_else(|| err(line, "expected `dim <vertex>=<m>`".into()))?;
                let v = alg
                    .quiver()
                    .vertex_id(v.trim())
                    .ok_or_else(|| err(line, format!("unknown vertex `{v}`")))?;
                mults[v] = m
                    .trim()
                    .parse()
                    .map_err(|_| err(line, format!("bad multiplicity `{m}`")))?;
            } else if let Some(rest) = l.strip_prefix("coef ") {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() != 2 {
                    return Err(err(line, "expected `coef <path> <r>x<c>`".into()));
                }
                let w = alg
                    .parse_path(toks[0])
                    .map_err(|e| err(line, e.to_string()))?;
                let (r, c) = toks[1]
                    .split_once('x')
                    .and_then(|(r, c)| Some((r.parse::<usize>().ok()?, c.parse::<usize>().ok()?)))
                    .ok_or_else(|| err(line, format!("bad shape `{}`", toks[1])))?;
                let mut rows = Vec::with_capacity(r);
                for _ in 0..r {
                    let (rl, row) = lines
                        .next()
                        .ok_or_else(|| err(line, "missing matrix rows".into()))?;
                    let vals: Option<Vec<F>> = row.split_whitespace().map(F::parse).collect();
                    let vals = vals.ok_or_else(|| err(rl, format!("bad scalar in `{row}`")))?;
                    if vals.len() != c {
                        return Err(err(rl, format!("expected {c} entries")));
                    }
                    rows.push(vals);
                }
                let m = if r == 0 {
                    Matrix::zeros(0, c)
                } else {
                    Matrix::from_rows(rows)
                };
                coeffs.insert(w, m);
            } else {
                return Err(err(line, format!("unexpected `{l}`")));
            }
        }
        Self::make(alg, mults, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{F2, F5};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const A0: &str = "vertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow a' 1 2\narrow b 2 3\narrow b' 2 3\nrel a b\nrel a' b'\n";
    const CYCLE3: &str =
        "vertex 1\nvertex 2\nvertex 3\narrow d 1 2\narrow a 2 3\narrow b 3 1\nrel d a\n";

    fn one(x: i64) -> Matrix<F5> {
        Matrix::from_i64_rows(&[&[x]])
    }

    fn band_p2(alg: &Arc<GentleAlgebra>, lambda: i64) -> DifferentialModule<F5> {
        let w = alg.parse_path("abd").unwrap();
        DifferentialModule::make(
            alg.clone(),
            vec![0, 1, 0],
            BTreeMap::from([(w, one(lambda))]),
        )
        .unwrap()
    }

    #[test]
    fn make_accepts_and_rejects() {
        let alg = Arc::new(GentleAlgebra::parse(A0).unwrap());
        let a = alg.parse_path("a").unwrap();
        assert!(DifferentialModule::make(
            alg.clone(),
            vec![1, 1, 0],
            BTreeMap::from([(a, one(1))])
        )
        .is_ok());
        let e1 = alg.trivial_path(0);
        let m = Matrix::<F5>::from_i64_rows(&[&[1]]);
        assert!(matches!(
            DifferentialModule::make(alg.clone(), vec![1, 1, 0], BTreeMap::from([(e1, m)])),
            Err(ModuleError::NotSquareZero(_))
        ));
        assert!(matches!(
            DifferentialModule::make(
                alg.clone(),
                vec![1, 1, 0],
                BTreeMap::from([(a, Matrix::<F5>::zeros(2, 1))])
            ),
            Err(ModuleError::Shape { .. })
        ));
        let cyc = Arc::new(GentleAlgebra::parse(CYCLE3).unwrap());
        let m = band_p2(&cyc, 3);
        assert!(m.is_radical());
        assert_eq!(m.dim_vector(), [1, 2, 1]);
    }

    #[test]
    fn radical_and_contractible() {
        let alg = Arc::new(GentleAlgebra::parse(A0).unwrap());
        assert!(!DifferentialModule::<F5>::contractible(alg.clone(), 0).is_radical());
        assert!(DifferentialModule::<F5>::zero(alg).is_radical());
    }

    #[test]
    fn endomorphisms_of_the_band_module() {
        // φ = λ·abd on P_2; the only paths 2 → 2 are e_2 and abd, both commute with φ.
        let cyc = Arc::new(GentleAlgebra::parse(CYCLE3).unwrap());
        let m = band_p2(&cyc, 2);
        let end = m.hom(&m);
        assert_eq!(end.len(), 2);
        let id = PathMap::identity(&cyc, m.multiplicities());
        let space = MapSpace::new(&cyc, m.multiplicities(), m.multiplicities());
        let rows: Vec<Vec<F5>> = end.iter().map(|h| space.to_vec(h)).collect();
        let mut span = rows.clone();
        let r = Matrix::from_columns(space.dim(), &span).rank();
        span.push(space.to_vec(&id));
        assert_eq!(Matrix::from_columns(space.dim(), &span).rank(), r);
        for h in &end {
            assert!(m.is_morphism_to(&m, h));
        }
    }

    #[test]
    fn contractibles_vanish_stably() {
        let alg = Arc::new(GentleAlgebra::parse(A0).unwrap());
        let c = DifferentialModule::<F5>::contractible(alg.clone(), 1);
        let a = alg.parse_path("a").unwrap();
        let m = DifferentialModule::make(alg.clone(), vec![1, 1, 0], BTreeMap::from([(a, one(1))]))
            .unwrap();
        assert!(!c.hom(&m).is_empty() || !m.hom(&c).is_empty());
        assert!(c.stable_hom(&m).is_empty());
        assert!(m.stable_hom(&c).is_empty());
        assert!(c.stable_hom(&c).is_empty());
        assert!(!m.stable_hom(&m).is_empty());
    }

    #[test]
    fn suspension_and_twist() {
        let cyc = Arc::new(GentleAlgebra::parse(CYCLE3).unwrap());
        let m = band_p2(&cyc, 2);
        assert_eq!(m.suspend(), band_p2(&cyc, -2));
        assert_eq!(m.suspend().suspend(), m);
        let l = F5::new(3);
        assert_eq!(m.twist(&l).unwrap(), band_p2(&cyc, 6));
        assert_eq!(m.twist(&l).unwrap().twist(&l.inv().unwrap()).unwrap(), m);
        assert_eq!(m.twist(&F5::one()).unwrap(), m);
        assert_eq!(m.twist(&F5::zero()), Err(ModuleError::ZeroScalar));
        assert_eq!(
            m.suspend().twist(&l).unwrap(),
            m.twist(&l).unwrap().suspend()
        );
    }

    #[test]
    fn suspension_is_trivial_in_characteristic_two() {
        let cyc = Arc::new(GentleAlgebra::parse(CYCLE3).unwrap());
        let w = cyc.parse_path("abd").unwrap();
        let m = DifferentialModule::<F2>::make(
            cyc.clone(),
            vec![0, 1, 0],
            BTreeMap::from([(w, Matrix::identity(1))]),
        )
        .unwrap();
        assert_eq!(m.suspend(), m);
    }

    #[test]
    fn conjugation_preserves_square_zero() {
        let alg = Arc::new(GentleAlgebra::parse(A0).unwrap());
        let a = alg.parse_path("a").unwrap();
        let m = DifferentialModule::make(alg.clone(), vec![1, 1, 0], BTreeMap::from([(a, one(1))]))
            .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = PathMap::random_automorphism(&alg, m.multiplicities(), &mut rng);
        let n = m.conjugate(&g);
        assert!(DifferentialModule::from_map(alg.clone(), n.phi().clone()).is_ok());
        assert!(m.is_morphism_to(&n, &g));
    }

    #[test]
    fn dump_round_trip() {
        let cyc = Arc::new(GentleAlgebra::parse(CYCLE3).unwrap());
        let m = band_p2(&cyc, 2);
        let text = m.to_dump();
        assert_eq!(text, "dim 1=0\ndim 2=1\ndim 3=0\ncoef abd 1x1\n2\n");
        assert_eq!(
            DifferentialModule::<F5>::from_dump(cyc.clone(), &text).unwrap(),
            m
        );
        assert!(DifferentialModule::<F5>::from_dump(cyc, "dim 9=1\n").is_err());
    }
}
