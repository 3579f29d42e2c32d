use std::sync::Arc;

use gentle_core::diffmod::DifferentialModule;
use gentle_core::field::{Field, F5, Q};
use gentle_core::linalg::{jordan_block, Matrix};
use gentle_core::objects::{band_object, string_object};
use gentle_core::par::Exec;
use gentle_core::quiver::GentleAlgebra;
use gentle_core::strings::{enumerate_bands, enumerate_strings, HomotopyBand, HomotopyString};
use gentle_core::verify::A0;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn a0() -> Arc<GentleAlgebra> {
    Arc::new(GentleAlgebra::parse(A0).unwrap())
}

fn random_f5(rows: usize, cols: usize, seed: u64) -> Matrix<F5> {
    Matrix::random(rows, cols, &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #[test]
    fn rank_nullity(rows in 1usize..7, cols in 1usize..7, seed in any::<u64>()) {
        let m = random_f5(rows, cols, seed);
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), cols);
        for v in kernel {
            prop_assert!(m.mul_vec(&v).iter().all(Field::is_zero));
        }
    }

    #[test]
    fn inverse_is_two_sided(n in 1usize..7, seed in any::<u64>()) {
        let m = random_f5(n, n, seed);
        match m.inverse() {
            Some(inv) => {
                prop_assert!((&m * &inv).is_identity());
                prop_assert!((&inv * &m).is_identity());
            }
            None => prop_assert!(m.rank() < n),
        }
    }

    #[test]
    fn rational_inverse_is_exact(entries in prop::collection::vec(-9i64..10, 9)) {
        let m = Matrix::from_rows(
            entries.chunks(3).map(|r| r.iter().map(|&x| Q::from_i64(x)).collect()).collect(),
        );
        if let Some(inv) = m.inverse() {
            prop_assert!((&m * &inv).is_identity());
        }
    }

    #[test]
    fn string_literals_round_trip(k in 0usize..400) {
        let alg = a0();
        let all = enumerate_strings(&alg, 5, Exec::Sequential);
        let s = &all[k % all.len()];
        prop_assert_eq!(&HomotopyString::parse(&alg, &s.display(&alg)).unwrap(), s);
        prop_assert_eq!(&s.inverse().canonical(), s);
    }

    #[test]
    fn module_dumps_round_trip(k in 0usize..400, lambda in 1i64..5, n in 1usize..3) {
        let alg = a0();
        let strings = enumerate_strings(&alg, 5, Exec::Sequential);
        let m: DifferentialModule<F5> = string_object(&alg, &strings[k % strings.len()]);
        prop_assert_eq!(&DifferentialModule::from_dump(alg.clone(), &m.to_dump()).unwrap(), &m);

        let bands = enumerate_bands(&alg, 6, Exec::Sequential);
        let j = jordan_block(F5::from_i64(lambda), n).unwrap();
        let b = band_object(&alg, &bands[k % bands.len()], &j).unwrap();
        prop_assert_eq!(&DifferentialModule::from_dump(alg.clone(), &b.to_dump()).unwrap(), &b);
    }
}

#[test]
fn band_rotations_share_one_canonical_form() {
    let alg = a0();
    for b in enumerate_bands(&alg, 6, Exec::Sequential) {
        assert!(b.is_canonical());
        for r in b.orbit() {
            assert_eq!(r.canonical(), b);
            assert_eq!(r.winding().abs(), b.winding().abs());
        }
        let parsed = HomotopyBand::parse(&alg, &b.display(&alg)).unwrap();
        assert_eq!(parsed, b);
    }
}

#[test]
fn sequential_and_parallel_enumeration_agree() {
    let alg = a0();
    assert_eq!(
        enumerate_strings(&alg, 6, Exec::Sequential),
        enumerate_strings(&alg, 6, Exec::Parallel)
    );
    assert_eq!(
        enumerate_bands(&alg, 6, Exec::Sequential),
        enumerate_bands(&alg, 6, Exec::Parallel)
    );
}
