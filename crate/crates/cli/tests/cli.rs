use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn algebra(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../algebras")
        .join(name)
}

fn gentle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gentle"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const SIX: &str = "a,b,ab'^-1,a',b',a'b^-1";

#[test]
fn validate_reports_dimension() {
    let o = gentle(&["validate", algebra("a0.alg").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "gentle, finite global dimension, dim 9");
}

#[test]
fn info_reports_the_torus_with_one_boundary_component() {
    let o = gentle(&["info", algebra("a0.alg").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("surface: genus 1, boundary 1, marked points 2"));
}

#[test]
fn loop_band_dump_is_a_scaled_maximal_path() {
    let alg = algebra("cycle3.alg");
    let o = gentle(&[
        "object",
        "--band",
        "abd",
        "--jordan",
        "2,1",
        alg.to_str().unwrap(),
        "--dump",
        "-",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "dim 1=0\ndim 2=1\ndim 3=0\ncoef abd 1x1\n2\n");
}

#[test]
fn non_gentle_algebra_is_a_validation_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.alg");
    fs::write(
        &path,
        "vertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow b 2 3\narrow c 2 3\narrow d 2 3\n",
    )
    .unwrap();
    let o = gentle(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn invalid_words_and_arguments_map_to_their_exit_codes() {
    let alg = algebra("a0.alg");
    let alg = alg.to_str().unwrap();
    assert_eq!(
        gentle(&["object", alg, "--string", "a,a"]).status.code(),
        Some(1)
    );
    assert_eq!(gentle(&["object", alg]).status.code(), Some(2));
    assert_eq!(
        gentle(&["object", alg, "--band", SIX]).status.code(),
        Some(2)
    );
    assert_eq!(
        gentle(&["--prime", "4", "validate", alg]).status.code(),
        Some(2)
    );
    assert_eq!(
        gentle(&["validate", "/nonexistent.alg"]).status.code(),
        Some(2)
    );
}

#[test]
fn enumeration_counts_match_and_jobs_do_not_change_output() {
    let alg = algebra("cycle3.alg");
    let alg = alg.to_str().unwrap();
    let bands = gentle(&["enumerate", alg, "--bands", "--max-letters", "6"]);
    assert_eq!(stdout(&bands), "abd\n");
    let seq = gentle(&[
        "--jobs",
        "1",
        "enumerate",
        alg,
        "--strings",
        "--max-letters",
        "8",
    ]);
    let par = gentle(&[
        "--jobs",
        "2",
        "enumerate",
        alg,
        "--strings",
        "--max-letters",
        "8",
    ]);
    assert_eq!(stdout(&seq).lines().count(), 69);
    assert_eq!(stdout(&seq), stdout(&par));
}

#[test]
fn dump_round_trips_through_decompose_and_matrixify() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("m.dump");
    let alg = algebra("a0.alg");
    let alg = alg.to_str().unwrap();
    let o = gentle(&[
        "object",
        alg,
        "--band",
        SIX,
        "--jordan",
        "3,2",
        "--dump",
        dump.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let d = gentle(&["decompose", alg, "--input", dump.to_str().unwrap()]);
    assert_eq!(d.status.code(), Some(0));
    assert!(stdout(&d).contains("summands: 1\n"));
    let g = gentle(&["matrixify", alg, "--input", dump.to_str().unwrap()]);
    assert_eq!(g.status.code(), Some(0));
    assert!(stdout(&g).starts_with("band @1/ab' rows=4 cols=4\n"));
}

#[test]
fn twist_identifies_the_rescaled_band() {
    let alg = algebra("a0.alg");
    let o = gentle(&[
        "twist",
        alg.to_str().unwrap(),
        "--band",
        SIX,
        "--jordan",
        "3,1",
        "--lambda",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    // winding 2, so J' = 2² · 3 = 12 = 2 in F₅
    assert_eq!(stdout(&o).trim(), "twist: band parameter [2]");
}

#[test]
fn render_writes_identical_svg_twice() {
    let dir = tempfile::tempdir().unwrap();
    let alg = algebra("a0.alg");
    let mut svgs = Vec::new();
    for name in ["a.svg", "b.svg"] {
        let out = dir.path().join(name);
        let o = gentle(&[
            "render",
            alg.to_str().unwrap(),
            "--svg-out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        svgs.push(fs::read_to_string(out).unwrap());
    }
    assert_eq!(svgs[0], svgs[1]);
    assert!(svgs[0].starts_with("<svg"));
}

#[test]
fn other_primes_are_accepted() {
    let alg = algebra("cycle3.alg");
    let o = gentle(&[
        "--prime",
        "7",
        "object",
        "--band",
        "abd",
        "--jordan",
        "6,1",
        alg.to_str().unwrap(),
        "--dump",
        "-",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("coef abd 1x1\n6\n"));
}
