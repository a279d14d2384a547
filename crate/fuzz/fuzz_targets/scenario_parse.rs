#![no_main]

use gridgather::scenario;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = scenario::parse(text) {
        let again = scenario::parse(&scenario::render(&c)).expect("rendered scenarios parse");
        assert_eq!(again, c);
    }
});
