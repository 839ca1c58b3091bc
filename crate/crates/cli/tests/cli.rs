//! End-to-end tests of the command line, driven through `run` with captured
//! streams.

use factree::{prufer_encode, LabeledTree};
use std::io::Read;

const F0: &str = "(2 3)(4 5)(3 6)(3 5)(1 6)(6 8)(8 9)(6 7)";

fn run_cli(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut input: &[u8] = stdin.as_bytes();
    let mut out: Vec<u8> = Vec::new();
    let mut err: Vec<u8> = Vec::new();
    let argv = std::iter::once("factree".to_string()).chain(args.iter().map(|s| s.to_string()));
    let status = factree_cli::run(argv, &mut input, &mut out, &mut err);
    (
        status,
        String::from_utf8(out).expect("utf-8 output"),
        String::from_utf8(err).expect("utf-8 diagnostics"),
    )
}

#[test]
fn map_prints_tree_and_shared_distribution() {
    let (status, out, err) = run_cli(&["map"], F0);
    assert_eq!(status, 0, "stderr: {err}");
    assert_eq!(
        out,
        "n=9\n1 6\n1 7\n1 8\n2 6\n3 5\n4 5\n4 6\n7 9\n# delta = epsilon = 4,2,1,1\n"
    );
}

#[test]
fn map_then_invert_reproduces_the_input_byte_for_byte() {
    let (status, mapped, _) = run_cli(&["map"], F0);
    assert_eq!(status, 0);
    let (status, inverted, _) = run_cli(&["invert"], &mapped);
    assert_eq!(status, 0);
    assert_eq!(inverted, format!("{F0}\n"));
}

#[test]
fn invert_ignores_comments_and_blank_lines() {
    let tree = "# a labelled tree\nn=3\n\n1 2\n# middle comment\n2 3\n";
    let (status, out, _) = run_cli(&["invert"], tree);
    assert_eq!(status, 0);
    assert_eq!(out, "(1 3)(1 2)\n");
}

#[test]
fn verify_passes_a_factorization_with_all_joins() {
    let (status, out, _) = run_cli(&["verify"], F0);
    assert_eq!(status, 0);
    assert_eq!(
        out,
        "spanning_tree: true\nnoncrossing: true\nvertex_order: true\nregion_order: true\n\
         joins: 8\ncuts: 0\n"
    );
}

#[test]
fn verify_reports_crossings_with_witness_and_status_one() {
    let (status, out, _) = run_cli(&["verify"], "(1 3)(2 4)(1 2)");
    assert_eq!(status, 1);
    assert!(out.contains("noncrossing: false"));
    assert!(out.contains("witness: chords 2 and 3 cross"));
    assert!(out.contains("vertex_order: not evaluated"));
}

#[test]
fn verify_rejects_wrong_chord_count() {
    let (status, _, err) = run_cli(&["verify"], "n=3 (1 2)");
    assert_eq!(status, 1);
    assert_eq!(err, "error: expected 2 chords for n=3, got 1\n");
}

#[test]
fn enumerate_lists_factorizations_in_order() {
    let (status, out, _) = run_cli(&["enumerate", "--n", "3"], "");
    assert_eq!(status, 0);
    assert_eq!(out, "(1 2)(2 3)\n(1 3)(1 2)\n(2 3)(1 3)\n");
}

#[test]
fn enumerate_can_filter_by_consecutive_pairs() {
    let (status, out, _) = run_cli(&["enumerate", "--n", "4", "--filter-consecutive", "3"], "");
    assert_eq!(status, 0);
    assert_eq!(out.lines().count(), 4);
    let (_, all, _) = run_cli(&["enumerate", "--n", "4"], "");
    assert_eq!(all.lines().count(), 16);
}

#[test]
fn enumerate_past_the_limit_fails_cleanly() {
    let (status, out, err) = run_cli(&["enumerate", "--n", "9"], "");
    assert_eq!(status, 1);
    assert!(out.is_empty());
    assert_eq!(err, "error: enumeration of n=9 exceeds the configured limit 7\n");
}

#[test]
fn table_text_matches_known_rows() {
    let (status, out, _) = run_cli(&["table", "--max", "6"], "");
    assert_eq!(status, 0);
    assert_eq!(
        out,
        "2: 1 | 1\n3: 3 | 3\n4: 12 4 | 16\n5: 60 60 5 | 125\n6: 360 720 210 6 | 1296\n"
    );
}

#[test]
fn table_csv_has_fixed_columns() {
    let (status, out, _) = run_cli(&["table", "--max", "4", "--csv"], "");
    assert_eq!(status, 0);
    assert_eq!(out, "n,k=2,k=3,k=4,total\n2,1,0,0,1\n3,3,0,0,3\n4,12,4,0,16\n");
}

#[test]
fn refine_prints_matching_tallies() {
    let (status, out, _) = run_cli(&["refine", "--n", "4"], "");
    assert_eq!(status, 0);
    assert_eq!(out, "2,1: 12 12\n3,0: 4 4\n");
}

#[test]
fn hurwitz_formula_with_exhaustive_check() {
    let (status, out, _) = run_cli(&["hurwitz", "--alpha", "2,1", "--brute-force"], "");
    assert_eq!(status, 0);
    assert_eq!(out, "formula: 8\nbrute-force: 8\n");
    let (status, out, _) = run_cli(&["hurwitz", "--alpha", "5"], "");
    assert_eq!(status, 0);
    assert_eq!(out, "formula: 125\n");
}

#[test]
fn hurwitz_respects_the_evaluation_budget() {
    let (status, _, err) = run_cli(
        &["hurwitz", "--alpha", "4", "--brute-force", "--max-evals", "10"],
        "",
    );
    assert_eq!(status, 1);
    assert_eq!(err, "error: exhaustive search exceeded the budget of 10 evaluations\n");
}

#[test]
fn code_prints_the_tree_sequence() {
    let (status, out, _) = run_cli(&["code"], "(1 2)");
    assert_eq!(status, 0);
    assert_eq!(out, "\n");

    let t1 = LabeledTree::from_edges(
        11,
        vec![
            (4, 7),
            (3, 7),
            (2, 3),
            (3, 9),
            (1, 3),
            (1, 5),
            (5, 6),
            (5, 10),
            (1, 8),
            (8, 11),
        ],
    )
    .unwrap();
    let factors = "(5 6)(1 6)(2 3)(6 9)(6 7)(1 3)(9 11)(3 4)(7 8)(9 10)";
    let (status, out, _) = run_cli(&["code"], factors);
    assert_eq!(status, 0);
    let expected: Vec<String> = prufer_encode(&t1)
        .unwrap()
        .iter()
        .map(|e| e.to_string())
        .collect();
    assert_eq!(out, format!("{}\n", expected.join(" ")));
}

#[test]
fn render_dot_draws_the_tree_of_a_factorization() {
    let (status, out, _) = run_cli(&["render", "--format", "dot"], "(1 2)(2 3)");
    assert_eq!(status, 0);
    assert_eq!(out, "graph tree {\n  1 -- 2;\n  1 -- 3;\n}\n");
}

#[test]
fn render_dot_accepts_a_tree_directly() {
    let (status, out, _) = run_cli(&["render", "--format", "dot", "--tree"], "n=3\n1 2\n2 3\n");
    assert_eq!(status, 0);
    assert_eq!(out, "graph tree {\n  1 -- 2;\n  2 -- 3;\n}\n");
}

#[test]
fn render_svg_draws_the_chord_diagram() {
    let (status, out, _) = run_cli(&["render", "--format", "svg"], "(1 2)(2 3)");
    assert_eq!(status, 0);
    assert!(out.starts_with("<svg"));
    assert!(out.trim_end().ends_with("</svg>"));
}

#[test]
fn render_svg_of_a_tree_is_a_usage_error() {
    let (status, _, err) = run_cli(&["render", "--format", "svg", "--tree"], "n=2\n1 2\n");
    assert_eq!(status, 2);
    assert!(err.starts_with("error: trees render as dot only"));
}

#[test]
fn io_flags_read_and_write_files() {
    let dir = std::env::temp_dir().join(format!("factree-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("factors.txt");
    let output = dir.join("tree.txt");
    std::fs::write(&input, format!("{F0}\n")).unwrap();

    let (status, out, _) = run_cli(
        &[
            "map",
            "--input",
            input.to_str().unwrap(),
            "--output",
            output.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(status, 0);
    assert!(out.is_empty());
    let mut written = String::new();
    std::fs::File::open(&output)
        .unwrap()
        .read_to_string(&mut written)
        .unwrap();
    assert!(written.starts_with("n=9\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn missing_input_file_is_a_runtime_error() {
    let (status, _, err) = run_cli(&["map", "--input", "/nonexistent/factors.txt"], "");
    assert_eq!(status, 1);
    assert!(err.starts_with("error: cannot read /nonexistent/factors.txt"));
}

#[test]
fn malformed_input_fails_with_reason() {
    let (status, _, err) = run_cli(&["map"], "garbage");
    assert_eq!(status, 1);
    assert!(err.starts_with("error: "));

    let (status, _, err) = run_cli(&["map"], "(1 2)(1 2)");
    assert_eq!(status, 1);
    assert!(err.starts_with("error: "));
}

#[test]
fn usage_errors_exit_with_two() {
    let (status, _, err) = run_cli(&["bogus"], "");
    assert_eq!(status, 2);
    assert!(err.contains("unrecognized subcommand"));

    let (status, _, _) = run_cli(&["enumerate"], "");
    assert_eq!(status, 2);
}

#[test]
fn help_exits_zero() {
    let (status, out, _) = run_cli(&["--help"], "");
    assert_eq!(status, 0);
    assert!(out.contains("Usage:"));
}

#[test]
fn single_point_round_trip() {
    let (status, out, _) = run_cli(&["map"], "n=1");
    assert_eq!(status, 0);
    assert_eq!(out, "n=1\n# delta = epsilon = \n");
    let (status, out, _) = run_cli(&["invert"], "n=1\n");
    assert_eq!(status, 0);
    assert_eq!(out, "n=1\n");
}
