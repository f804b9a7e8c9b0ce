#![no_main]

use libfuzzer_sys::fuzz_target;
use outdiv::domain::io::{format_domain, parse_domain};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(file) = parse_domain(text) {
        let family = if file.family.is_empty() || file.family.contains(char::is_whitespace) {
            "x".to_string()
        } else {
            file.family.clone()
        };
        let again = parse_domain(&format_domain(file.m, &family, &file.members)).expect("formatted file parses");
        assert_eq!(again.members, file.members);
        assert_eq!(again.m, file.m);
    }
});
