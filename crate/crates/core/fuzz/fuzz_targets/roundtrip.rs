#![no_main]

use libfuzzer_sys::fuzz_target;
use qlogic::{parse_logic, serialize_logic};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(logic) = parse_logic(text) else { return };
    let once = serialize_logic(&logic);
    let back = parse_logic(&once).expect("serialized logic parses");
    assert_eq!(serialize_logic(&back), once);
    assert_eq!(back.contexts(), logic.contexts());
});
