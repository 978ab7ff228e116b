use waveset_core::construct::{construct_diag_rot, DiagRotVariant};
use waveset_core::geometry::{monte_carlo_area, raster_area};
use waveset_core::Region;

#[test]
fn raster_matches_diag_rot_area() {
    let w = construct_diag_rot(8, DiagRotVariant::Literal).unwrap().result;
    let window = Region::square(-2.0, 3.0).unwrap();
    let bound = w.perimeter() * window.diameter() / 2048.0;
    let ra = raster_area(&w, &window, 2048);
    assert!((ra - w.area()).abs() <= bound, "{ra} vs {}", w.area());
}

#[test]
fn monte_carlo_unit_square() {
    let sq = Region::square(0.0, 1.0).unwrap();
    let window = Region::square(0.0, 2.0).unwrap();
    let (est, se) = monte_carlo_area(&sq, &window, 1_000_000, 11);
    // Bernoulli p = 1/4 over an area-4 window: 4·sqrt(p(1−p)/n).
    let sigma = 4.0 * (0.25f64 * 0.75 / 1e6).sqrt();
    assert!((se - sigma).abs() < 1e-5, "{se} vs {sigma}");
    assert!((est - 1.0).abs() <= 3.0 * se);
    assert_eq!(monte_carlo_area(&sq, &window, 1_000_000, 11), (est, se));
}

#[test]
fn monte_carlo_first_level() {
    let w = construct_diag_rot(1, DiagRotVariant::Literal).unwrap().result;
    let window = Region::rect(0.0, 0.0, 2.0, 1.0).unwrap();
    let (est, se) = monte_carlo_area(&w, &window, 1_000_000, 5);
    assert!((est - 8.0 / 9.0).abs() <= 3.0 * se);
}

#[test]
fn monte_carlo_empty_region() {
    let window = Region::square(0.0, 1.0).unwrap();
    assert_eq!(monte_carlo_area(&Region::empty(), &window, 10_000, 1), (0.0, 0.0));
}

#[test]
fn monte_carlo_three_sigma_over_seeds() {
    let r = Region::rect(0.1, 0.2, 0.7, 0.9).unwrap();
    let window = Region::square(0.0, 1.0).unwrap();
    let misses = (0..100)
        .filter(|&s| {
            let (est, se) = monte_carlo_area(&r, &window, 20_000, s);
            (est - r.area()).abs() > 3.0 * se
        })
        .count();
    assert!(misses <= 1, "{misses} of 100 seeds outside 3 sigma");
}
