//! Quadratic volume growth: exhaustive for small graphs, sampled above the
//! exhaustive cutoff.

use nodal_geometry::graph::{generate_family, vg_check, Family, VgOptions};

fn main() {
    let opts = VgOptions::default();
    for family in [
        Family::Star { leaves: 5 },
        Family::Path { n: 9 },
        Family::Grid { rows: 4, cols: 4 },
        Family::ToroidalGrid { rows: 4, cols: 4 },
        Family::Complete { n: 8 },
        Family::Grid { rows: 5, cols: 6 },
    ] {
        let g = generate_family(&family).unwrap();
        let report = vg_check(&g, &opts).unwrap();
        let witness = report
            .witness
            .as_ref()
            .map(|w| format!(" witness {w:?} with boundary {:?}", g.outer_boundary(w)))
            .unwrap_or_default();
        println!(
            "{family}: {:?} after {} subsets{witness}",
            report.status, report.subsets_checked
        );
    }
}
