#![no_main]

use libfuzzer_sys::fuzz_target;

use freeway::bits::BitString;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(bits) = text.parse::<BitString>() {
            assert_eq!(bits.to_string(), text);
            assert_eq!(bits.len(), text.len());
        }
    }
});
