//! Bundled fixture files.

use crate::flowcat::{homotopy_fixture, BimoduleCounts, HomotopyFixture};

/// Seed of the bundled synthetic homotopy fixture.
pub const DEMO_SEED: u64 = 7;

const FILES: &[(&str, &str)] = &[
    ("s1", include_str!("../fixtures/s1.json")),
    ("s2", include_str!("../fixtures/s2.json")),
    ("t2", include_str!("../fixtures/t2.json")),
    ("rp2", include_str!("../fixtures/rp2.json")),
    ("rp3", include_str!("../fixtures/rp3.json")),
    ("cp2", include_str!("../fixtures/cp2.json")),
    ("rp3_cells", include_str!("../fixtures/rp3_cells.json")),
    ("rp3_broken", include_str!("../fixtures/rp3_broken.json")),
    ("pearl_demo", include_str!("../fixtures/pearl_demo.json")),
    ("hmtp_demo", include_str!("../fixtures/hmtp_demo.json")),
    ("rp3_homology", include_str!("../fixtures/rp3_homology.json")),
    ("odd_torsion_homology", include_str!("../fixtures/odd_torsion_homology.json")),
    ("s2_homology", include_str!("../fixtures/s2_homology.json")),
    ("chain5_poset", include_str!("../fixtures/chain5_poset.json")),
    ("diamond_poset", include_str!("../fixtures/diamond_poset.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(n, _)| *n)
}

pub fn fixture(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// The contents `hmtp_demo` and `pearl_demo` are generated from.
pub fn demo_documents() -> (String, String) {
    let h: HomotopyFixture = homotopy_fixture(DEMO_SEED);
    let pearl: BimoduleCounts = h.pearl.between(&h.morse, &h.morse);
    (h.to_json() + "\n", pearl.to_json() + "\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn synthetic_fixtures_are_current() {
        let (hmtp, pearl) = demo_documents();
        if std::env::var_os("FLOER_WRITE_FIXTURES").is_some() {
            let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
            std::fs::write(format!("{dir}/hmtp_demo.json"), &hmtp).unwrap();
            std::fs::write(format!("{dir}/pearl_demo.json"), &pearl).unwrap();
            return;
        }
        assert_eq!(fixture("hmtp_demo"), Some(hmtp.as_str()));
        assert_eq!(fixture("pearl_demo"), Some(pearl.as_str()));
    }
}
