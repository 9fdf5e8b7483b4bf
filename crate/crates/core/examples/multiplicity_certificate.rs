//! From a multiple eigenvalue to a vanishing combination, its node
//! component `W` and inner boundary `Z`.

use nodal_geometry::bounds::{boundary_growth_check, multiplicity_certificate};
use nodal_geometry::graph::{generate_family, vg_check, Family, VgOptions};
use nodal_geometry::spectral::{eigendecompose, laplacian_of, DEFAULT_TOL_EIG};

fn main() {
    for family in [
        Family::Octahedron,
        Family::Cycle { n: 8 },
        Family::ToroidalGrid { rows: 4, cols: 4 },
        Family::Complete { n: 6 },
    ] {
        let g = generate_family(&family).unwrap();
        let vg = vg_check(&g, &VgOptions::default()).unwrap().status;
        let spectrum = eigendecompose(&laplacian_of(&g), DEFAULT_TOL_EIG).unwrap();
        println!("{family} (volume growth {vg:?})");
        for group in spectrum.groups.iter().filter(|gr| gr.len >= 2) {
            let basis = &spectrum.eigenvectors[group.indices()];
            let cert = multiplicity_certificate(&g, basis, group.head(), 1e-9, 42).unwrap();
            let z = boundary_growth_check(&cert, Some(vg));
            println!(
                "  n={:<2} r={} R={:?} W'={:?} nonzero on R: {} (need {}, {:?})  W={:?} Z={:?}  |Z| >= {:.3}: {:?}",
                cert.n,
                cert.r,
                cert.r_set,
                cert.w_prime,
                cert.nonzero_on_r,
                cert.r.div_ceil(2),
                cert.vanishing_report().status,
                cert.w_component,
                cert.z,
                z.bound.unwrap(),
                z.status
            );
        }
    }
}
