//! Known closed forms, used by [`crate::verify`] to check computed values.

/// `Wg^O(μ, d)` for every `|μ| ≤ 6`, as `(μ, expression in d)`.
pub const ORTHOGONAL_WG: &[(&str, &str)] = &[
    ("1", "1/d"),
    ("2", "-1/(d(d+2)(d-1))"),
    ("1,1", "(d+1)/(d(d+2)(d-1))"),
    ("3", "2/(d(d+2)(d+4)(d-1)(d-2))"),
    ("2,1", "-1/(d(d+4)(d-1)(d-2))"),
    ("1,1,1", "(d^2+3d-2)/(d(d+2)(d+4)(d-1)(d-2))"),
    ("4", "-(5d+6)/(d(d+1)(d+2)(d+4)(d+6)(d-1)(d-2)(d-3))"),
    ("3,1", "2/((d+1)(d+2)(d+6)(d-1)(d-2)(d-3))"),
    ("2,2", "(d^2+5d+18)/(d(d+1)(d+2)(d+4)(d+6)(d-1)(d-2)(d-3))"),
    ("2,1,1", "(-d^3-6d^2-3d+6)/(d(d+1)(d+2)(d+4)(d+6)(d-1)(d-2)(d-3))"),
    ("1,1,1,1", "(d+3)(d^2+6d+1)/(d(d+1)(d+2)(d+4)(d+6)(d-1)(d-3))"),
    ("5", "2(7d+12)/(d(d+1)(d+2)(d+4)(d+6)(d+8)(d-1)(d-2)(d-3)(d-4))"),
    ("4,1", "(-5d+4)/(d(d+1)(d+2)(d+4)(d+8)(d-1)(d-2)(d-3)(d-4))"),
    ("3,2", "-2(d^2+7d+36)/(d(d+1)(d+2)(d+4)(d+6)(d+8)(d-1)(d-2)(d-3)(d-4))"),
    ("3,1,1", "2(d^3+8d^2+d-36)/(d(d+1)(d+2)(d+4)(d+6)(d+8)(d-1)(d-2)(d-3)(d-4))"),
    ("2,2,1", "(d^2+3d+4)/(d(d+1)(d+2)(d+4)(d+8)(d-1)(d-2)(d-3)(d-4))"),
    ("2,1,1,1", "(-d^4-10d^3-7d^2+86d+24)/(d(d+1)(d+2)(d+4)(d+6)(d+8)(d-1)(d-2)(d-3)(d-4))"),
    ("1,1,1,1,1", "(d^5+11d^4+5d^3-175d^2-122d+408)/(d(d+1)(d+2)(d+4)(d+6)(d+8)(d-1)(d-2)(d-3)(d-4))"),
    ("6", "-2(21d^2+118d+172)/(d(d+1)(d+2)(d+3)(d+4)(d+6)(d+8)(d+10)(d-1)(d-2)(d-3)(d-4)(d-5))"),
    ("5,1", "2(7d^3+12d^2-35d-10)/(d^2(d+1)(d+2)(d+3)(d+4)(d+6)(d+10)(d-1)(d-2)(d-3)(d-4)(d-5))"),
    ("4,2", "(5d^4+61d^3+406d^2+840d+640)/(d^2(d+1)(d+2)(d+3)(d+4)(d+6)(d+8)(d+10)(d-1)(d-2)(d-3)(d-4)(d-5))"),
    ("4,1,1", "(-5d^5-66d^4-131d^3+642d^2+1272d-640)/(d^2(d+1)(d+2)(d+3)(d+4)(d+6)(d+8)(d+10)(d-1)(d-2)(d-3)(d-4)(d-5))"),
    ("3,3", "4(d^4+13d^3+117d^2+300d-240)/(d^2(d+1)(d+2)(d+3)(d+4)(d+6)(d+8)(d+10)(d-1)(d-2)(d-3)(d-4)(d-5))"),
    ("3,2,1", "2(-d^4-7d^3-24d^2+12d+60)/(d^2(d+1)(d+2)(d+3)(d+4)(d+6)(d+10)(d-1)(d-2)(d-3)(d-4)(d-5))"),
    ("3,1,1,1", "2(d^6+16d^5+49d^4-200d^3-810d^2-96d+960)/(d^2(d+1)(d+2)(d+3)(d+4)(d+6)(d+8)(d+10)(d-1)(d-2)(d-3)(d-4)(d-5))"),
    ("2,2,2", "-(d^5+16d^4+101d^3+394d^2+2408d+3840)/(d^2(d+1)(d+2)(d+3)(d+4)(d+6)(d+8)(d+10)(d-1)(d-2)(d-3)(d-4)(d-5))"),
    ("2,2,1,1", "(d^6+17d^5+77d^4+7d^3-446d^2-472d-1280)/(d^2(d+1)(d+2)(d+3)(d+4)(d+6)(d+8)(d+10)(d-1)(d-2)(d-3)(d-4)(d-5))"),
    ("2,1,1,1,1", "(-d^5-22d^4-154d^3-316d^2+339d+1146)/(d(d+1)(d+2)(d+3)(d+4)(d+6)(d+8)(d+10)(d-1)(d-2)(d-3)(d-5))"),
    ("1,1,1,1,1,1", "(d^8+19d^7+68d^6-490d^5-2687d^4+1807d^3+17754d^2+6120d-15360)/(d^2(d+1)(d+2)(d+3)(d+4)(d+6)(d+8)(d+10)(d-1)(d-2)(d-3)(d-4)(d-5))"),
];

/// `P_n(d)` for `n = 1..=10`.
pub const FULL_CYCLE_POLYS: &[(usize, &str)] = &[
    (1, "1"),
    (2, "1"),
    (3, "2"),
    (4, "5d+6"),
    (5, "14d+24"),
    (6, "42d^2+236d+344"),
    (7, "132d^2+920d+1824"),
    (8, "429d^3+5924d^2+29116d+51600"),
    (9, "1430d^3+23124d^2+138352d+305280"),
    (10, "4862d^4+126816d^3+1326016d^2+6598896d+13071744"),
];
