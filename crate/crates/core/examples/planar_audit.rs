//! Full audit of 3-connected planar graphs with their planar rotation
//! systems, contrasting the genus bounds as written with the clamped ones.

use nodal_geometry::bounds::{full_audit, AuditOptions, Check, GenusInfo, GenusSource};
use nodal_geometry::graph::{generate_family, trace_faces, vg_check, Family, VgOptions};
use nodal_geometry::spectral::laplacian_of;

fn main() {
    let mut suite = vec![Family::Complete { n: 4 }, Family::Prism, Family::Octahedron];
    suite.extend((5..=8).map(|rim| Family::Wheel { rim }));
    for family in suite {
        let g = generate_family(&family).unwrap();
        let genus = trace_faces(&g, &family.embedding(&g).unwrap())
            .unwrap()
            .genus;
        let options = AuditOptions {
            genus: GenusInfo::known(genus, GenusSource::RotationSystem),
            vg: Some(vg_check(&g, &VgOptions::default()).unwrap().status),
            random_combinations: 2,
            graph_id: Some(family.to_string()),
            ..AuditOptions::default()
        };
        let audit = full_audit(&laplacian_of(&g), &options).unwrap();
        let count = |check: Check| {
            let rs: Vec<_> = audit.reports.iter().filter(|r| r.check == check).collect();
            let violated = rs.iter().filter(|r| r.violated()).count();
            format!("{violated}/{}", rs.len())
        };
        println!(
            "{family:<10} genus {genus}  violated: t<=6(n-1)+14(2g-2) {}, clamped {}, y-bound {}, clamped {}, gating {}",
            count(Check::DomainsGenus),
            count(Check::DomainsGenusClamped),
            count(Check::CodimensionGenus),
            count(Check::CodimensionGenusClamped),
            audit.gating_violations()
        );
    }
}
