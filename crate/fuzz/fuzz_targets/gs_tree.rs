#![no_main]

use libfuzzer_sys::fuzz_target;
use outdiv::domain::GsTree;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(tree) = text.parse::<GsTree>() {
        let again: GsTree = tree.to_string().parse().expect("display output parses");
        assert_eq!(again, tree);
    }
});
