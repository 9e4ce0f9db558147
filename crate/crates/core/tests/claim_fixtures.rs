mod common;

use std::collections::BTreeSet;

use leafspan::leafmin::ClaimTag;

#[test]
fn every_fixture_fires_its_entry() {
    let failures: Vec<String> = common::fixtures()
        .iter()
        .filter_map(|f| {
            common::check_fixture(f)
                .err()
                .map(|e| format!("{}: {e}", f.tag))
        })
        .collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn every_entry_has_a_fixture() {
    let covered: BTreeSet<ClaimTag> = common::fixtures().iter().map(|f| f.tag).collect();
    let missing: Vec<&ClaimTag> = ClaimTag::ALL
        .iter()
        .filter(|t| **t != ClaimTag::Grow && !covered.contains(t))
        .collect();
    assert!(missing.is_empty(), "no fixture for {missing:?}");
}
