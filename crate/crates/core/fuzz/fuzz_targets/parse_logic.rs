#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(doc) = qlogic::parser::parse_document(text) {
            let _ = doc.to_logic();
        }
        if let Err(e) = qlogic::parse_logic(text) {
            assert!(e.position.line >= 1 && e.position.column >= 1);
            assert!(e.position.line <= text.split('\n').count());
        }
    }
});
