use oc_mirror::correspondence::{check, disk_potential_bessel_small, disk_potential_localized, ExcMode};
use oc_mirror::series::TruncationWindow;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn identity_holds_on_random_windows(q in 0u32..9, t in 0u32..4, mu in 0u32..5, min_v in -9i32..1) {
        let w = TruncationWindow::new(q, t, mu, min_v, 1);
        let r = check(&w, ExcMode::Standard).unwrap();
        prop_assert!(r.pass, "{}", r.diff);
    }

    #[test]
    fn corruption_is_caught_whenever_visible(q in 0u32..9, mu in 0u32..5) {
        let w = TruncationWindow::new(q, 2, mu, -1, 1);
        let r = check(&w, ExcMode::Corrupted).unwrap();
        prop_assert!(!r.pass);
    }
}

#[test]
fn larger_window_still_exact() {
    let r = check(&TruncationWindow::new(14, 5, 6, -12, 1), ExcMode::Standard).unwrap();
    assert!(r.pass, "{}", r.diff);
}

#[test]
fn localized_potential_on_a_wider_window() {
    assert_eq!(disk_potential_localized(3, 2).unwrap(), disk_potential_bessel_small(3, 2));
}
