#![no_main]

use libfuzzer_sys::fuzz_target;

// The parser must reject malformed input with an error, never a panic.
fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = coxrig::parse::parse_coxeter_file(text);
    }
});
