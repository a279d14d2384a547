#![no_main]

use gridgather::trace::Trace;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(t) = Trace::parse(text) {
        let rendered = t.render();
        let again = Trace::parse(&rendered).expect("rendered traces parse");
        assert_eq!(again.render(), rendered);
    }
});
