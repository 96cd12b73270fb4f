#![no_main]

use libfuzzer_sys::fuzz_target;
use modeq_cli::formats::{parse_phi, write_phi};

// Whatever parses must survive a write and reparse unchanged.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(parsed) = parse_phi(text) {
        let again = parse_phi(&write_phi(&parsed)).expect("written file parses");
        assert_eq!(again, parsed);
    }
});
