#![no_main]

use germsplit::poly::parse_poly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(p) = parse_poly(text, &["z1", "z2", "z3"]) {
            let again = parse_poly(&p.to_string(), &["z1", "z2", "z3"]).expect("rendered polynomial parses");
            assert_eq!(again, p);
        }
    }
});
