#![no_main]

use libfuzzer_sys::fuzz_target;
use modeq_cli::formats::parse_rational_list;
use modeq_core::exactalg::rational::DisplayRational;
use modeq_core::exactalg::parse_rational;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(q) = parse_rational(text) {
        let printed = DisplayRational(&q).to_string();
        assert_eq!(parse_rational(&printed).unwrap(), q);
    }
    let _ = parse_rational_list(text);
});
