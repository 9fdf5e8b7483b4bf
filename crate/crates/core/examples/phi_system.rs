//! Regions, islands and the φ vectors for a nodal eigenfunction of the
//! star `K_{1,3}`.

use nodal_geometry::bounds::{GenusInfo, GraphFacts};
use nodal_geometry::graph::{generate_family, Family};
use nodal_geometry::nodal::{
    build_islands, codimension_check, phi_rank_check, phi_system, small_island_adjacency,
    strong_domains, DEFAULT_TOL_ZERO,
};
use nodal_geometry::spectral::laplacian_of;

fn main() {
    let g = generate_family(&Family::Star { leaves: 3 }).unwrap();
    let op = laplacian_of(&g);
    let u = [0.0, 1.0, 1.0, -2.0];

    let np = strong_domains(&g, &u, DEFAULT_TOL_ZERO).unwrap();
    for (i, d) in np.domains.iter().enumerate() {
        println!("domain {i}: {:?} {:?}", d.sign, d.vertices);
    }
    let is = build_islands(&np, &g);
    println!("regions {:?}", is.regions);
    for (i, island) in is.islands.iter().enumerate() {
        println!(
            "island {i}: domains {:?} small={}",
            island.domains,
            island.is_small()
        );
    }
    println!("V0 = {:?}", is.v0);

    let ps = phi_system(&is, &np, &op);
    for (v, phi) in ps.v0.iter().zip(&ps.phi) {
        println!("phi_{v} = {phi:?}");
    }
    println!("dim W = {}, dim W0 = {}, y = {}", ps.dim_w, ps.dim_w0, ps.y);
    for psi in &ps.complement_basis {
        println!("complement vector {psi:.4?}");
    }

    let claim = small_island_adjacency(&is, &np, &op, 1e-8).unwrap();
    println!(
        "nodes of V0 touching fewer than 3 islands: {:?}",
        claim.offenders
    );

    let facts = GraphFacts::of(&g, GenusInfo::unknown(), None);
    for r in phi_rank_check(&ps, &facts, 2)
        .into_iter()
        .chain(codimension_check(&ps, &np, &facts, 2))
    {
        println!(
            "{:<26} observed {} bound {:?} {:?}",
            r.check.name(),
            r.observed,
            r.bound,
            r.status
        );
    }
}
