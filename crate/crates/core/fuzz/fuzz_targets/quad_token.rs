#![no_main]

use libfuzzer_sys::fuzz_target;
use qlogic::Quad;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        match text.parse::<Quad>() {
            Ok(q) => {
                let canonical = q.to_string();
                let again: Quad = canonical.parse().expect("canonical token parses");
                assert_eq!(again, q);
                assert_eq!(again.to_string(), canonical);
            }
            Err(e) => assert!(e.offset() <= text.len()),
        }
    }
});
