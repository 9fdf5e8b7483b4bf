//! The star `K_{1,N}` attains both the Davies bound and the degree bound at
//! the second eigenvalue.

use nodal_geometry::bounds::{davies_check, domains_degree_check};
use nodal_geometry::graph::{generate_family, Family};
use nodal_geometry::nodal::{strong_domains, DEFAULT_TOL_ZERO};
use nodal_geometry::spectral::{eigendecompose, laplacian_of, DEFAULT_TOL_EIG};

fn main() {
    println!(
        "{:>3} {:>28} {:>3} {:>7} {:>7}",
        "N", "spectrum", "t", "davies", "degree"
    );
    for leaves in 3..=10 {
        let g = generate_family(&Family::Star { leaves }).unwrap();
        let spectrum = eigendecompose(&laplacian_of(&g), DEFAULT_TOL_EIG).unwrap();
        let groups: Vec<String> = spectrum
            .distinct()
            .iter()
            .map(|(value, mult)| format!("{:.0}x{mult}", value.abs()))
            .collect();

        // Every leaf positive except one carrying the balancing weight.
        let mut u = vec![1.0; leaves + 1];
        u[0] = 0.0;
        u[leaves] = -(leaves as f64 - 1.0);
        let t = strong_domains(&g, &u, DEFAULT_TOL_ZERO).unwrap().t();
        let r = spectrum.group_of(2).unwrap().len;
        let davies = davies_check(t, 2, r);
        let degree = domains_degree_check(t, 2, g.max_degree());
        println!(
            "{leaves:>3} {:>28} {t:>3} {:>7} {:>7}",
            groups.join(" "),
            format!("{}/{}", davies.observed, davies.bound.unwrap()),
            format!("{}/{}", degree.observed, degree.bound.unwrap()),
        );
    }
}
