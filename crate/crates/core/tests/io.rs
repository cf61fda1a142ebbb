use eaoaqec::catalog::{self, catalog};
use eaoaqec::code_io::{format_code, parse_code, parse_errors, read_code, read_errors, write_code, IoError};

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn six_qubit_table_file() {
    let code = read_code(data("six_qubit.code")).unwrap();
    assert!(code.validate().is_valid());
    assert_eq!(code.parameters().to_string(), "[[6,1;1,2,3]]");
    let cat = catalog("six_qubit_example").unwrap();
    assert!(code.s_group().same_span(cat.s_group()));
    assert_eq!(code.gauge_pairs(), cat.gauge_pairs());
    assert_eq!(code.logical_pairs(), cat.logical_pairs());
}

#[test]
fn color_code_table_file() {
    let code = read_code(data("color_code.code")).unwrap();
    assert!(code.validate().is_valid());
    assert_eq!(code.parameters().to_string(), "[[15,1;6,0,1]]");
    assert_eq!(code, catalog("subsystem_color_code").unwrap());
}

#[test]
fn write_then_read_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    for code in catalog::all() {
        let path = dir.path().join(format!("{}.code", code.name().unwrap()));
        write_code(&code, &path).unwrap();
        let back = read_code(&path).unwrap();
        assert_eq!(back, code);
        assert_eq!(std::fs::read_to_string(&path).unwrap(), format_code(&back));
    }
}

#[test]
fn separator_is_optional() {
    let with = "[META]\nn = 1\n[S]\nS1 Z | Z\nS2 X | X\n";
    let without = "[META]\nn = 1\n[S]\nS1 Z Z\nS2 X X\n";
    assert_eq!(parse_code(with).unwrap(), parse_code(without).unwrap());
}

#[test]
fn malformed_inputs_report_positions() {
    let cases = [
        ("[H]\nh1 Z Z\nh2 Z\n", 3),
        ("[Q]\n", 1),
        ("h1 Z\n", 1),
        ("[META]\nn = x\n", 2),
        ("[META]\nn = 2\n[S]\nS1 Z Z | Z | Z\n", 4),
        ("[META]\nn = 2\ne = 1\n[H]\nh1 Z Z\n", 3),
    ];
    for (text, line) in cases {
        match parse_code(text) {
            Err(IoError::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
}

#[test]
fn error_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.err");
    std::fs::write(&path, "# single errors\nE1 X I I\nE2 i I XZ I\n").unwrap();
    let ops = read_errors(&path).unwrap();
    assert_eq!(ops.len(), 2);
    assert_eq!(ops[1].to_string(), "IYI");
    assert!(matches!(parse_errors("E1 X I\nE2 X\n"), Err(IoError::Parse { line: 2, .. })));
    assert!(matches!(read_errors(dir.path().join("missing")), Err(IoError::File { .. })));
}
