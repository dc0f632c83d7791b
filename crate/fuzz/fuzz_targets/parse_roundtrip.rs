#![no_main]

use libfuzzer_sys::fuzz_target;

// Anything the parser accepts must survive serialize -> parse unchanged.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(matrix) = coxrig::parse::parse_coxeter_file(text) else {
        return;
    };
    let rendered = coxrig::parse::serialize(&matrix);
    let reparsed =
        coxrig::parse::parse_coxeter_file(&rendered).expect("serializer output must parse");
    assert_eq!(matrix, reparsed, "round-trip changed the matrix");
});
