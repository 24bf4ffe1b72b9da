//! Computes the heaviest shape of the standard verification grid by all
//! three routes and reports sizes and timings.

use std::time::Instant;

use flagg::determinant::grothendieck_determinant;
use flagg::perm::grothendieck_divdiff;
use flagg::tableaux::{enumerate_tableaux, grothendieck_tableau, FlaggedPartition};

fn main() {
    let shape = FlaggedPartition::new(vec![3, 3, 3], vec![4, 4, 4]).unwrap();

    let t0 = Instant::now();
    let count = enumerate_tableaux(&shape).count();
    let by_tableaux = grothendieck_tableau(&shape).unwrap();
    let t_tab = t0.elapsed();

    let t1 = Instant::now();
    let by_determinant = grothendieck_determinant(&shape).unwrap();
    let t_det = t1.elapsed();

    let t2 = Instant::now();
    let by_word = grothendieck_divdiff(&shape).unwrap();
    let t_word = t2.elapsed();

    println!("shape {shape}");
    println!(
        "tableau route:            {count} tableaux, {} terms, {:.2?}",
        by_tableaux.num_terms(),
        t_tab
    );
    println!(
        "determinant route:        {} terms, {:.2?}",
        by_determinant.num_terms(),
        t_det
    );
    println!(
        "divided-difference route: {} terms, {:.2?}",
        by_word.num_terms(),
        t_word
    );
    let ok = by_tableaux == by_determinant && by_tableaux == by_word;
    println!("all three agree: {}", if ok { "yes" } else { "NO" });
}
