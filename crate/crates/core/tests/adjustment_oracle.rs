mod common;

use common::*;

#[test]
fn backdoor_matches_surgery() {
    assert_check(backdoor_soundness(200));
}

#[test]
fn frontdoor_matches_surgery() {
    assert_check(frontdoor_soundness(50));
}

#[test]
fn do_calculus_rules_two_and_three() {
    assert_check(do_rules(500));
}
