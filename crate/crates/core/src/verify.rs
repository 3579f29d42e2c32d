//! The acceptance checks, shared by the `acceptance` test target and the
//! command-line `selftest`. Every check is exact: equalities are structural,
//! rates must be 100%, and isomorphisms come with verified witnesses.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decompose::{
    decompose, find_isomorphism, is_indecomposable, isomorphism_of_indecomposables, Options,
};
use crate::diffmod::DifferentialModule;
use crate::field::{Field, F5};
use crate::folding::{band_complex, string_complex};
use crate::linalg::{jordan_block, Matrix};
use crate::objects::{band_object, string_object, twist_target};
use crate::par::Exec;
use crate::pathmap::PathMap;
use crate::quiver::GentleAlgebra;
use crate::sigma::{
    b_band, b_string, g_morphism, g_object, gamma, gamma_b, isomorphism, MaxOrder, OrderedSetY,
    SigmaMatrix,
};
use crate::strings::{enumerate_bands, enumerate_strings, HomotopyBand, HomotopyString};
use crate::surface::Surface;

/// The running example: two parallel pairs of arrows, two relations.
pub const A0: &str = include_str!("../../../algebras/a0.alg");
/// A 3-cycle with one relation.
pub const CYCLE3: &str = include_str!("../../../algebras/cycle3.alg");

/// Longest strings and bands in the sweep corpus.
pub const STRING_LETTERS: usize = 8;
pub const BAND_LETTERS: usize = 6;
/// Random direct sums in the decomposition check.
pub const DECOMPOSITION_TRIALS: usize = 50;
/// Largest `|winding|` in the twist check.
pub const TWIST_WINDING: i64 = 2;

#[derive(Clone, Debug)]
pub struct Config {
    pub exec: Exec,
    pub seed: u64,
    pub options: Options,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            exec: Exec::default(),
            seed: 0x5eed,
            options: Options::default(),
        }
    }
}

/// Outcome of one acceptance criterion.
#[derive(Clone, Debug)]
pub struct Check {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    pub budget_seconds: f64,
}

impl Check {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {:>2}: {} — {} ({:.2} s, budget {:.0} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.seconds,
            self.budget_seconds
        )
    }
}

/// Band parameters: Jordan blocks of sizes 1 and 2 for every `λ ∈ F₅^×`.
pub fn parameters() -> Vec<Matrix<F5>> {
    (1..5)
        .flat_map(|l| [1, 2].map(|n| jordan_block(F5::from_i64(l), n).unwrap()))
        .collect()
}

/// An algebra with its canonical strings and bands.
pub struct Corpus {
    pub alg: Arc<GentleAlgebra>,
    pub strings: Vec<HomotopyString>,
    pub bands: Vec<HomotopyBand>,
}

impl Corpus {
    pub fn new(text: &str, exec: Exec) -> Self {
        let alg = Arc::new(GentleAlgebra::parse(text).expect("corpus algebra is gentle"));
        let strings = enumerate_strings(&alg, STRING_LETTERS, exec);
        let bands = enumerate_bands(&alg, BAND_LETTERS, exec);
        Corpus {
            alg,
            strings,
            bands,
        }
    }

    pub fn standard(exec: Exec) -> Vec<Corpus> {
        vec![Corpus::new(A0, exec), Corpus::new(CYCLE3, exec)]
    }

    /// Every (band, parameter) pair.
    pub fn band_params(&self) -> Vec<(HomotopyBand, Matrix<F5>)> {
        self.bands
            .iter()
            .flat_map(|b| parameters().into_iter().map(move |j| (b.clone(), j)))
            .collect()
    }
}

fn timed(
    id: usize,
    title: &'static str,
    budget_seconds: f64,
    f: impl FnOnce() -> Result<String, String>,
) -> Check {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Check {
        id,
        title,
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
        budget_seconds,
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn first_failure<T: Sync>(
    exec: Exec,
    items: &[T],
    f: impl Fn(&T) -> Result<(), String> + Sync + Send,
) -> Result<(), String> {
    exec.map(items, f)
        .into_iter()
        .collect::<Result<Vec<()>, String>>()
        .map(|_| ())
}

/// Criterion 1: the running example end to end.
pub fn running_example() -> Check {
    timed(
        1,
        "running example: gentle, maximal paths, one-holed torus",
        1.0,
        || {
            let alg = GentleAlgebra::parse(A0).map_err(|e| e.to_string())?;
            let mut max: Vec<&str> = alg
                .maximal_paths_alg()
                .iter()
                .map(|&p| alg.path_name(p))
                .collect();
            max.sort_unstable();
            ensure(max == ["a'b", "ab'"], || format!("maximal paths {max:?}"))?;
            ensure(alg.dimension() == 9, || {
                format!("dimension {}", alg.dimension())
            })?;
            let inv = Surface::build(&alg).invariants();
            ensure(
                (inv.genus, inv.boundary_components, inv.marked_points) == (1, 1, 2),
                || format!("surface {inv:?}"),
            )?;
            Ok("maximal paths {a'b, ab'}; genus 1, 1 boundary component, 2 marked points".into())
        },
    )
}

/// Criterion 2: the one-letter band on the 3-cycle.
pub fn loop_band() -> Check {
    timed(
        2,
        "one-letter band abd: (P2, λ·abd), not gradable",
        1.0,
        || {
            let alg = Arc::new(GentleAlgebra::parse(CYCLE3).map_err(|e| e.to_string())?);
            let b = HomotopyBand::parse(&alg, "abd").map_err(|e| e.to_string())?;
            let abd = alg.parse_path("abd").map_err(|e| e.to_string())?;
            let v2 = alg.quiver().vertex_id("2").ok_or("no vertex 2")?;
            for l in 1..5 {
                let lambda = F5::from_i64(l);
                let m =
                    band_object(&alg, &b, &Matrix::scalar(1, lambda)).map_err(|e| e.to_string())?;
                let mut mults = vec![0; 3];
                mults[v2] = 1;
                let expected = DifferentialModule::make(
                    alg.clone(),
                    mults,
                    BTreeMap::from([(abd, Matrix::scalar(1, lambda))]),
                )
                .map_err(|e| e.to_string())?;
                ensure(m == expected, || {
                    format!("band object for λ = {l} is {}", m.to_dump())
                })?;
            }
            let dv = alg.projective_dim_vector(v2);
            ensure(dv == [1, 2, 1], || format!("dim P2 = {dv:?}"))?;
            ensure(b.winding() != 0 && b.grading(0).is_none(), || {
                "band is gradable".into()
            })?;
            Ok(format!(
                "(P2, λ·abd) for λ ∈ F5^×, dim P2 = (1, 2, 1), winding {}",
                b.winding()
            ))
        },
    )
}

/// Criterion 3: the six-letter band of the running example.
pub fn six_letter_band() -> Check {
    timed(
        3,
        "six-letter band: (P1⊕P2⊕P3)^2n, six coefficient maps, not gradable",
        1.0,
        || {
            let alg = Arc::new(GentleAlgebra::parse(A0).map_err(|e| e.to_string())?);
            let b =
                HomotopyBand::parse(&alg, "a,b,ab'^-1,a',b',a'b^-1").map_err(|e| e.to_string())?;
            let mut names: Vec<&str> = vec!["a", "a'", "a'b", "ab'", "b", "b'"];
            names.sort_unstable();
            for j in parameters() {
                let n = j.rows();
                let m = band_object(&alg, &b, &j).map_err(|e| e.to_string())?;
                ensure(m.multiplicities() == [2 * n, 2 * n, 2 * n], || {
                    format!("multiplicities {:?}", m.multiplicities())
                })?;
                let mut got: Vec<&str> =
                    m.phi().coeffs().keys().map(|&p| alg.path_name(p)).collect();
                got.sort_unstable();
                ensure(got == names, || format!("coefficient maps {got:?}"))?;
            }
            ensure(b.grading(0).is_none(), || "band is gradable".into())?;
            Ok(format!("winding {}, no grading", b.winding()))
        },
    )
}

fn string_objects(c: &Corpus, exec: Exec) -> Vec<DifferentialModule<F5>> {
    exec.map(&c.strings, |s| string_object(&c.alg, s))
}

/// Criterion 4: every corpus object is a radical indecomposable differential
/// module and distinct strings give non-isomorphic objects.
pub fn sweep(corpora: &[Corpus], cfg: &Config) -> Check {
    timed(
        4,
        "square-zero, radical, indecomposable, strings pairwise non-isomorphic",
        120.0,
        || {
            let mut objects = 0;
            let mut pairs = 0usize;
            for c in corpora {
                let strings = string_objects(c, cfg.exec);
                let bands: Vec<DifferentialModule<F5>> =
                    cfg.exec.map(&c.band_params(), |(b, j)| {
                        band_object(&c.alg, b, j).expect("corpus band objects are valid")
                    });
                let all: Vec<(usize, &DifferentialModule<F5>)> =
                    strings.iter().chain(&bands).enumerate().collect();
                objects += all.len();
                first_failure(cfg.exec, &all, |&(i, m)| {
                    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ i as u64);
                    ensure(m.phi().compose(&c.alg, m.phi()).is_zero(), || {
                        format!("object {i}: φ² ≠ 0")
                    })?;
                    ensure(m.is_radical(), || format!("object {i}: not radical"))?;
                    match is_indecomposable(m, &mut rng, &cfg.options) {
                        Ok(true) => Ok(()),
                        Ok(false) => Err(format!("object {i}: decomposable")),
                        Err(_) => Err(format!("object {i}: inconclusive")),
                    }
                })?;
                let mut groups: BTreeMap<(Vec<usize>, usize), Vec<usize>> = BTreeMap::new();
                for (i, m) in strings.iter().enumerate() {
                    groups
                        .entry((m.multiplicities().to_vec(), m.rank()))
                        .or_default()
                        .push(i);
                }
                let candidate_pairs: Vec<(usize, usize)> = groups
                    .values()
                    .flat_map(|g| {
                        g.iter()
                            .enumerate()
                            .flat_map(move |(k, &i)| g[k + 1..].iter().map(move |&j| (i, j)))
                    })
                    .collect();
                pairs += candidate_pairs.len();
                first_failure(cfg.exec, &candidate_pairs, |&(i, j)| {
                    ensure(
                        isomorphism_of_indecomposables(&strings[i], &strings[j]).is_none(),
                        || {
                            format!(
                                "strings {} and {} are isomorphic",
                                c.strings[i].display(&c.alg),
                                c.strings[j].display(&c.alg)
                            )
                        },
                    )
                })?;
            }
            Ok(format!("{objects} objects certified indecomposable; {pairs} same-invariant string pairs non-isomorphic"))
        },
    )
}

/// Pool of indecomposables for random direct sums.
fn summand_pool(corpora: &[Corpus]) -> Vec<(usize, DifferentialModule<F5>)> {
    let mut pool = Vec::new();
    for (ci, c) in corpora.iter().enumerate() {
        for s in c.strings.iter().filter(|s| s.len() <= 5) {
            pool.push((ci, string_object(&c.alg, s)));
        }
        for (b, j) in c.band_params().into_iter().filter(|(b, _)| b.len() <= 4) {
            pool.push((ci, band_object(&c.alg, &b, &j).unwrap()));
        }
    }
    pool
}

/// Criterion 5: scrambled random direct sums decompose into their summands.
pub fn decomposition(corpora: &[Corpus], cfg: &Config) -> Check {
    timed(
        5,
        "random direct sums decompose into the original summands",
        60.0,
        || {
            let pool = summand_pool(corpora);
            let trials: Vec<u64> = (0..DECOMPOSITION_TRIALS as u64).collect();
            first_failure(cfg.exec, &trials, |&t| {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(t));
                let ci = rng.gen_range(0..corpora.len());
                let choices: Vec<&DifferentialModule<F5>> = pool
                    .iter()
                    .filter(|(c, _)| *c == ci)
                    .map(|(_, m)| m)
                    .collect();
                let k = rng.gen_range(2..=4);
                let parts: Vec<DifferentialModule<F5>> = (0..k)
                    .map(|_| (*choices.choose(&mut rng).unwrap()).clone())
                    .collect();
                let alg = corpora[ci].alg.clone();
                let sum = DifferentialModule::direct_sum_all(alg.clone(), &parts);
                let g = PathMap::random_automorphism(&alg, sum.multiplicities(), &mut rng);
                let scrambled = sum.conjugate(&g);
                let found = decompose(&scrambled, &mut rng, &cfg.options)
                    .map_err(|e| format!("trial {t}: {e}"))?;
                ensure(found.len() == parts.len(), || {
                    format!(
                        "trial {t}: {} summands, expected {}",
                        found.len(),
                        parts.len()
                    )
                })?;
                let mut used = vec![false; parts.len()];
                for x in &found {
                    let j = (0..parts.len())
                        .find(|&j| {
                            !used[j] && isomorphism_of_indecomposables(x, &parts[j]).is_some()
                        })
                        .ok_or_else(|| format!("trial {t}: a summand matches no original"))?;
                    used[j] = true;
                }
                Ok(())
            })?;
            Ok(format!("{DECOMPOSITION_TRIALS} of {DECOMPOSITION_TRIALS} trials recovered the summand multiset"))
        },
    )
}

/// `diag(λ^{μ_i})` on the points of a string: an explicit `M → t_λ(M)`.
fn string_twist_iso(
    alg: &GentleAlgebra,
    s: &HomotopyString,
    m: &DifferentialModule<F5>,
    lambda: F5,
) -> PathMap<F5> {
    let s = s.canonical();
    let verts = s.vertices(alg);
    let mu = s.grading(0);
    let mut order: Vec<usize> = (0..verts.len()).collect();
    order.sort_by_key(|&i| (mu[i], i));
    let mults = m.multiplicities();
    let mut diag: Vec<Matrix<F5>> = mults.iter().map(|&k| Matrix::zeros(k, k)).collect();
    let mut next = vec![0; mults.len()];
    for i in order {
        let v = verts[i];
        diag[v].set(next[v], next[v], lambda.powi(mu[i]).unwrap());
        next[v] += 1;
    }
    let coeffs = diag
        .into_iter()
        .enumerate()
        .filter(|(v, _)| mults[*v] > 0)
        .map(|(v, d)| (alg.trivial_path(v), d))
        .collect();
    PathMap::from_coeffs(mults.to_vec(), mults.to_vec(), coeffs)
}

/// Criterion 6: twisting scales band parameters by `λ^{±w}` and fixes strings.
pub fn twists(corpora: &[Corpus], cfg: &Config) -> Check {
    timed(
        6,
        "t_λ(band J) ≅ band λ^{εw}J, t_λ(string) ≅ string",
        60.0,
        || {
            let mut bands = 0;
            let mut strings = 0;
            for c in corpora {
                let cases: Vec<(HomotopyBand, Matrix<F5>, F5)> = c
                    .band_params()
                    .into_iter()
                    .filter(|(b, _)| b.winding().abs() <= TWIST_WINDING)
                    .flat_map(|(b, j)| (1..5).map(move |l| (b.clone(), j.clone(), F5::from_i64(l))))
                    .collect();
                bands += cases.len();
                first_failure(cfg.exec, &cases, |(b, j, lambda)| {
                    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                    let m = band_object(&c.alg, b, j).unwrap().twist(lambda).unwrap();
                    let t = band_object(&c.alg, b, &twist_target(b, j, lambda)).unwrap();
                    let f = find_isomorphism(&m, &t, &mut rng, &cfg.options)
                        .map_err(|e| e.to_string())?
                        .ok_or_else(|| {
                            format!("{} λ={lambda}: no isomorphism", b.display(&c.alg))
                        })?;
                    ensure(m.is_morphism_to(&t, &f) && f.is_invertible(&c.alg), || {
                        "witness fails".into()
                    })
                })?;
                let objs = string_objects(c, cfg.exec);
                let idx: Vec<usize> = (0..c.strings.len()).collect();
                strings += idx.len() * 4;
                first_failure(cfg.exec, &idx, |&i| {
                    for l in 1..5 {
                        let lambda = F5::from_i64(l);
                        let m = &objs[i];
                        let t = m.twist(&lambda).unwrap();
                        let f = string_twist_iso(&c.alg, &c.strings[i], m, lambda);
                        ensure(m.is_morphism_to(&t, &f) && f.is_invertible(&c.alg), || {
                            format!("{} λ={l}: witness fails", c.strings[i].display(&c.alg))
                        })?;
                    }
                    Ok(())
                })?;
            }
            Ok(format!(
                "{bands} band twists and {strings} string twists with verified isomorphisms"
            ))
        },
    )
}

/// Criterion 7: gradable bands are exactly those of winding 0; string
/// gradings differ by constants.
pub fn gradings(corpora: &[Corpus]) -> Check {
    timed(
        7,
        "gradable ⇔ winding 0; string gradings differ by a constant",
        5.0,
        || {
            let mut n = 0;
            for c in corpora {
                for b in &c.bands {
                    ensure(b.grading(0).is_some() == (b.winding() == 0), || {
                        b.display(&c.alg)
                    })?;
                    n += 1;
                }
                for s in &c.strings {
                    let (g0, g1) = (s.grading(0), s.grading(7));
                    ensure(s.is_grading(&g0) && s.is_grading(&g1), || s.display(&c.alg))?;
                    ensure(g0.iter().zip(&g1).all(|(x, y)| y - x == 7), || {
                        s.display(&c.alg)
                    })?;
                    n += 1;
                }
            }
            Ok(format!("{n} words checked"))
        },
    )
}

/// Criterion 8: folding string complexes gives string objects; dimensions
/// add up; suspension is an involution.
pub fn folding(corpora: &[Corpus], cfg: &Config) -> Check {
    timed(
        8,
        "fold(string complex) = string object; dims add; Ω² = id",
        30.0,
        || {
            let mut n = 0;
            for c in corpora {
                let objs = string_objects(c, cfg.exec);
                let idx: Vec<usize> = (0..c.strings.len()).collect();
                first_failure(cfg.exec, &idx, |&i| {
                    let s = &c.strings[i];
                    for anchor in [0, -3] {
                        let cx = string_complex::<F5>(&c.alg, s, &s.grading(anchor))
                            .map_err(|e| e.to_string())?;
                        let folded = cx.fold();
                        ensure(folded == objs[i], || {
                            format!("{}: fold differs", s.display(&c.alg))
                        })?;
                        ensure(folded.total_dim() == cx.total_dim(), || {
                            format!("{}: dimensions", s.display(&c.alg))
                        })?;
                    }
                    ensure(objs[i].suspend().suspend() == objs[i], || "Ω² ≠ id".into())
                })?;
                n += c.strings.len();
                for (b, j) in c.band_params() {
                    if let Ok(cx) = band_complex(&c.alg, &b, 0, &j) {
                        ensure(cx.fold().total_dim() == cx.total_dim(), || {
                            b.display(&c.alg)
                        })?;
                        let m = band_object(&c.alg, &b, &j).unwrap();
                        ensure(m.suspend().suspend() == m, || "Ω² ≠ id".into())?;
                        n += 1;
                    }
                }
            }
            Ok(format!("{n} complexes folded"))
        },
    )
}

/// Per-object verdicts of the functor checks, for comparing orders.
fn functor_verdicts(c: &Corpus, order: MaxOrder, exec: Exec) -> Result<Vec<bool>, String> {
    let y = OrderedSetY::new(&c.alg, order);
    let objs = string_objects(c, exec);
    let idx: Vec<usize> = (0..c.strings.len()).collect();
    let mut verdicts = exec
        .map(&idx, |&i| -> Result<bool, String> {
            let g = g_object(&y, &objs[i]).map_err(|e| e.to_string())?;
            g.validate(&y).map_err(|e| e.to_string())?;
            ensure(!g.is_zero(), || "G of a non-projective is zero".into())?;
            let b = b_string(&y, &gamma(&y, &c.alg, &c.strings[i]));
            ensure(g == b, || {
                format!("{}: G ≠ B_γ", c.strings[i].display(&c.alg))
            })?;
            if c.strings[i].len() <= 3 {
                for psi in objs[i].hom(&objs[i]) {
                    g_morphism(&y, &c.alg, &psi)
                        .check(&y, &g, &g)
                        .map_err(|e| e.to_string())?;
                }
            }
            Ok(true)
        })
        .into_iter()
        .collect::<Result<Vec<bool>, String>>()?;
    let bands = c.band_params();
    let band_verdicts = exec
        .map(&bands, |(b, j)| -> Result<bool, String> {
            let m = band_object(&c.alg, b, j).unwrap();
            let g = g_object(&y, &m).map_err(|e| e.to_string())?;
            let bb = b_band(&y, &gamma_b(&y, &c.alg, b), j).map_err(|e| e.to_string())?;
            let t = isomorphism(&y, &g, &bb)
                .ok_or_else(|| format!("{}: G ≇ B_γ,J", b.display(&c.alg)))?;
            t.check(&y, &g, &bb).map_err(|e| e.to_string())?;
            let inv = t.inverse().ok_or("witness is not invertible")?;
            inv.check(&y, &bb, &g).map_err(|e| e.to_string())?;
            Ok(true)
        })
        .into_iter()
        .collect::<Result<Vec<bool>, String>>()?;
    verdicts.extend(band_verdicts);
    for v in 0..c.alg.vertex_count() {
        let p = DifferentialModule::<F5>::projective(c.alg.clone(), v, 2);
        verdicts.push(g_object(&y, &p).map_err(|e| e.to_string())?.is_zero());
    }
    Ok(verdicts)
}

/// Criterion 9: the functor `G` under two orders on the maximal paths.
pub fn functor(corpora: &[Corpus], cfg: &Config) -> Check {
    timed(
        9,
        "G(M) is a (Y,σ)-matrix, matches B_γ; identical under two orders",
        60.0,
        || {
            let mut n = 0;
            for c in corpora {
                let a = functor_verdicts(c, MaxOrder::Lexicographic, cfg.exec)?;
                let b = functor_verdicts(c, MaxOrder::Reversed, cfg.exec)?;
                ensure(a == b, || "verdicts differ between orders".into())?;
                ensure(a.iter().all(|&x| x), || "a verdict failed".into())?;
                n += a.len();
            }
            Ok(format!("{n} verdicts, identical under both orders"))
        },
    )
}

/// Criterion 10: each corpus object's `G`-image is isomorphic to exactly one
/// canonical matrix.
pub fn uniqueness(corpora: &[Corpus], cfg: &Config) -> Check {
    timed(
        10,
        "each G-image matches exactly one canonical B",
        120.0,
        || {
            let mut n = 0;
            for c in corpora {
                let y = OrderedSetY::new(&c.alg, MaxOrder::Lexicographic);
                let objs = string_objects(c, cfg.exec);
                let bands = c.band_params();
                let mut images: Vec<SigmaMatrix<F5>> =
                    cfg.exec.map(&objs, |m| g_object(&y, m).unwrap());
                images.extend(cfg.exec.map(&bands, |(b, j)| {
                    g_object(&y, &band_object(&c.alg, b, j).unwrap()).unwrap()
                }));
                let mut candidates: Vec<SigmaMatrix<F5>> = cfg
                    .exec
                    .map(&c.strings, |s| b_string(&y, &gamma(&y, &c.alg, s)));
                candidates.extend(cfg.exec.map(&bands, |(b, j)| {
                    b_band(&y, &gamma_b(&y, &c.alg, b), j).unwrap()
                }));
                let keys = cfg
                    .exec
                    .map(&candidates, |b| (b.sizes().to_vec(), b.corner_ranks()));
                let mut groups: BTreeMap<(Vec<usize>, Vec<usize>), Vec<usize>> = BTreeMap::new();
                for (k, key) in keys.into_iter().enumerate() {
                    groups.entry(key).or_default().push(k);
                }
                let idx: Vec<usize> = (0..images.len()).collect();
                first_failure(cfg.exec, &idx, |&i| {
                    let g = &images[i];
                    let key = (g.sizes().to_vec(), g.corner_ranks());
                    let hits = groups.get(&key).map_or(0, |ks| {
                        ks.iter()
                            .filter(|&&k| {
                                *g == candidates[k] || isomorphism(&y, g, &candidates[k]).is_some()
                            })
                            .count()
                    });
                    ensure(hits == 1, || {
                        format!("object {i} matches {hits} canonical matrices")
                    })
                })?;
                n += images.len();
            }
            Ok(format!("{n} objects, each matching exactly one class"))
        },
    )
}

/// Run all ten checks, reporting each as it finishes; results are ordered
/// by criterion.
pub fn run_each(cfg: &Config, mut report: impl FnMut(&Check)) -> Vec<Check> {
    let mut out = Vec::new();
    let mut push = |c: Check| {
        report(&c);
        out.push(c);
    };
    push(running_example());
    push(loop_band());
    push(six_letter_band());
    let corpora = Corpus::standard(cfg.exec);
    push(gradings(&corpora));
    push(folding(&corpora, cfg));
    push(functor(&corpora, cfg));
    push(twists(&corpora, cfg));
    push(decomposition(&corpora, cfg));
    push(sweep(&corpora, cfg));
    push(uniqueness(&corpora, cfg));
    out.sort_by_key(|c| c.id);
    out
}

pub fn run_all(cfg: &Config) -> Vec<Check> {
    run_each(cfg, |_| {})
}
