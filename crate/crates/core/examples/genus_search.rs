//! Orientable genus from rotation systems: face tracing of a given
//! embedding and exhaustive search for the minimum.

use nodal_geometry::graph::{
    generate_family, minimal_genus, rotation_count, trace_faces, Family, GenusSearch,
};

fn main() {
    for family in [
        Family::Complete { n: 4 },
        Family::Wheel { rim: 6 },
        Family::ToroidalGrid { rows: 3, cols: 4 },
    ] {
        let g = generate_family(&family).unwrap();
        let rot = family.embedding(&g).unwrap();
        let s = trace_faces(&g, &rot).unwrap();
        println!(
            "{family}: natural embedding V={} E={} F={} genus {}",
            s.vertices, s.edges, s.faces, s.genus
        );
    }

    let budget = 5_000_000;
    for family in [
        Family::Path { n: 6 },
        Family::Cycle { n: 7 },
        Family::Complete { n: 5 },
        Family::CompleteBipartite { a: 3, b: 3 },
        Family::Prism,
    ] {
        let g = generate_family(&family).unwrap();
        let started = std::time::Instant::now();
        match minimal_genus(&g, budget).unwrap() {
            GenusSearch::Found {
                genus,
                enumerated,
                rotation,
            } => {
                println!(
                    "{family}: genus {genus} after {enumerated} of {} rotation systems ({:.1?})",
                    rotation_count(&g),
                    started.elapsed()
                );
                print!("{}", rotation.to_text());
            }
            GenusSearch::Exceeded {
                best_so_far,
                lower_bound,
                ..
            } => {
                println!("{family}: budget exhausted, genus in [{lower_bound}, {best_so_far}]");
            }
        }
    }
}
