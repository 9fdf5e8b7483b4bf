//! The quadratic-form identity for combinations of domain-restricted
//! functions, on random graphs, matrices and coefficients.

use nodal_geometry::bounds::duval_reiner_identity;
use nodal_geometry::graph::{generate_family, Family};
use nodal_geometry::linalg::SymMatrix;
use nodal_geometry::nodal::{strong_domains, DEFAULT_TOL_ZERO};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for trial in 0..10 {
        let n = rng.random_range(3..=15);
        let g = generate_family(&Family::RandomConnected {
            n,
            p: 0.4,
            seed: trial,
        })
        .unwrap();
        let mut a = SymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                a.set_sym(i, j, rng.random_range(-1.0..1.0));
            }
        }
        let u: Vec<f64> = (0..n)
            .map(|_| {
                if rng.random_bool(0.2) {
                    0.0
                } else {
                    rng.random_range(-1.0..1.0)
                }
            })
            .collect();
        let Ok(np) = strong_domains(&g, &u, DEFAULT_TOL_ZERO) else {
            continue;
        };
        let c: Vec<f64> = (0..np.t()).map(|_| rng.random_range(-2.0..2.0)).collect();
        let check = duval_reiner_identity(&a, &np, &c).unwrap();
        worst = worst.max(check.discrepancy);
        println!(
            "n={n:>2} t={:>2}  lhs {:>12.6}  rhs {:>12.6}  rel {:.1e}",
            np.t(),
            check.lhs,
            check.rhs,
            check.discrepancy
        );
    }
    println!("worst relative discrepancy {worst:.1e}");
}
