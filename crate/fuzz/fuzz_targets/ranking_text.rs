#![no_main]

use libfuzzer_sys::fuzz_target;
use outdiv::Ranking;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(r) = text.parse::<Ranking>() {
        let again: Ranking = r.to_string().parse().expect("display output parses");
        assert_eq!(again, r);
        assert_eq!(outdiv::swap_distance(&r, &r.reverse()).unwrap(), r.len() * r.len().saturating_sub(1) / 2);
    }
});
