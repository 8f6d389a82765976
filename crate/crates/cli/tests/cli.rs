use std::path::{Path, PathBuf};
use std::process::Command;

use minhom::{ComplexDocument, ResultDocument};
use minhom_core::annotate::annotate_edges;
use minhom_core::{fixtures, ChainVector, SimplicialComplex};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn minhom(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_minhom"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn result(args: &[&str]) -> ResultDocument {
    let (code, stdout, stderr) = minhom(args);
    assert_eq!(code, 0, "{stderr}");
    serde_json::from_str(&stdout).unwrap()
}

fn write_complex(dir: &tempfile::TempDir, name: &str, k: &SimplicialComplex) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string(&ComplexDocument::from_complex(k)).unwrap()).unwrap();
    path.display().to_string()
}

#[test]
fn exact_on_torus() {
    let doc = result(&["exact", "--measure", "sum", "--input", data("torus.json").to_str().unwrap()]);
    assert_eq!(doc.g, 2);
    assert_eq!(doc.sizes, vec![3.0, 3.0]);
}

#[test]
fn rank_on_octahedron() {
    let doc = result(&["rank", "--input", data("octahedron.json").to_str().unwrap()]);
    assert_eq!(doc.g, 0);
}

#[test]
fn rank_of_hollow_tetrahedron_in_dimension_two() {
    let path = data("tetrahedron_boundary.json");
    let doc = result(&["rank", "--dim", "2", "--input", path.to_str().unwrap()]);
    assert_eq!(doc.g, 1);
    let hd = result(&["hd", "--dim", "2", "--input", path.to_str().unwrap()]);
    assert_eq!(hd.sizes, vec![1.0]);
    assert_eq!(hd.basis[0].simplices.len(), 4);
}

#[test]
fn constant_function_collapses_radius() {
    let dir = tempfile::tempdir().unwrap();
    let k = fixtures::csaszar_torus().with_vertex_function(vec![vec![1.5]; 7]);
    let input = write_complex(&dir, "flat.json", &k);
    let doc = result(&["exact", "--measure", "radius", "--distance", "function", "--input", &input]);
    assert_eq!(doc.g, 2);
    assert_eq!(doc.sizes, vec![0.0, 0.0]);
}

#[test]
fn output_is_deterministic_apart_from_timing() {
    let dir = tempfile::tempdir().unwrap();
    let k = fixtures::perforated_grid(9, 5, 3);
    let grid = write_complex(&dir, "grid.json", &k);
    let small = write_complex(&dir, "small.json", &fixtures::random_complex(4, fixtures::RandomSpec::default()));
    for (command, input) in [("exact", &grid), ("approx", &grid), ("hd", &grid), ("oracle", &small)] {
        let mut docs: Vec<ResultDocument> = (0..2)
            .map(|i| {
                let out = dir.path().join(format!("{command}{i}.json"));
                let (code, _, err) = minhom(&[
                    command,
                    "--seed",
                    "11",
                    "--c0",
                    "0.5",
                    "--input",
                    input,
                    "--output",
                    out.to_str().unwrap(),
                ]);
                assert_eq!(code, 0, "{err}");
                serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap()
            })
            .collect();
        for d in &mut docs {
            d.timing.elapsed_ms = 0.0;
        }
        assert_eq!(docs[0].to_json(), docs[1].to_json(), "{command}");
    }
}

#[test]
fn emitted_cycles_revalidate() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..10 {
        let k = fixtures::random_complex(seed, fixtures::RandomSpec::default());
        let input = write_complex(&dir, "k.json", &k);
        let ann = annotate_edges(&k);
        for command in ["exact", "approx", "oracle", "hd"] {
            let doc = result(&[command, "--input", &input]);
            assert_eq!(doc.basis.len(), doc.g);
            for c in &doc.basis {
                let edges = c.simplices.iter().map(|e| k.edge_between(e[0], e[1]).unwrap());
                let z = ChainVector::from_simplices(&k, 1, edges);
                let a = ann.cycle_annotation(&k, &z).unwrap();
                assert!(!a.is_zero(), "{command} seed {seed}");
                assert_eq!(c.annotation.len(), doc.g);
            }
        }
    }
}

#[test]
fn approx_reports_certificate() {
    let path = data("torus.json");
    let doc = result(&["approx", "--input", path.to_str().unwrap()]);
    let cert = doc.certificate.unwrap();
    assert_eq!(cert.seed, 0);
    assert_eq!(cert.roots.len(), 7);
    assert_eq!(cert.size_sequence, doc.sizes);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let torus = data("torus.json");
    let torus = torus.to_str().unwrap();

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{\"vertices\": 3, \"edges\": [[0, 1]], \"extra\": 1}").unwrap();
    assert_eq!(minhom(&["exact", "--input", garbage.to_str().unwrap()]).0, 2);
    assert_eq!(minhom(&["exact", "--measure", "volume", "--input", torus]).0, 2);
    assert_eq!(minhom(&["exact"]).0, 2);
    assert_eq!(minhom(&["approx", "--measure", "radius", "--input", torus]).0, 2);

    let negative = SimplicialComplex::from_parts(3, [(0, 1, 1.0), (1, 2, -2.0), (0, 2, 1.0)], []);
    let input = write_complex(&dir, "negative.json", &negative);
    assert_eq!(minhom(&["exact", "--input", &input]).0, 3);
    let (code, stdout, _) = minhom(&["validate", "--input", &input]);
    assert_eq!(code, 3);
    let report: ResultDocument = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report.violations.len(), 1);

    let split = SimplicialComplex::from_parts(4, [(0, 1, 1.0), (2, 3, 1.0)], []);
    let input = write_complex(&dir, "split.json", &split);
    assert_eq!(minhom(&["validate", "--input", &input]).0, 3);
    assert_eq!(minhom(&["exact", "--distance", "function", "--input", torus]).0, 3);

    assert_eq!(minhom(&["oracle", "--max-oracle-edges", "10", "--input", torus]).0, 4);
    assert_eq!(minhom(&["validate", "--input", torus]).0, 0);
}
