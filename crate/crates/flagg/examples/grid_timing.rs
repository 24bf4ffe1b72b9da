//! Times the three pipelines over the standard verification grid
//! (at most 3 rows, parts at most 3, flags at most 4).

use std::time::Instant;

use flagg::determinant::{grothendieck_determinant, grothendieck_determinant_margin};
use flagg::perm::grothendieck_divdiff;
use flagg::tableaux::{grothendieck_tableau, FlaggedPartition};

fn grid() -> Vec<FlaggedPartition> {
    let mut shapes = vec![FlaggedPartition::empty()];
    let mut lambdas: Vec<Vec<u32>> = Vec::new();
    for r in 1..=3usize {
        let mut stack = vec![Vec::<u32>::new()];
        while let Some(cur) = stack.pop() {
            if cur.len() == r {
                lambdas.push(cur);
                continue;
            }
            let hi = cur.last().copied().unwrap_or(3);
            for part in 1..=hi {
                let mut next = cur.clone();
                next.push(part);
                stack.push(next);
            }
        }
    }
    for lam in &lambdas {
        let r = lam.len();
        let mut stack = vec![Vec::<u32>::new()];
        while let Some(cur) = stack.pop() {
            if cur.len() == r {
                shapes.push(FlaggedPartition::new(lam.clone(), cur).unwrap());
                continue;
            }
            let lo = cur.last().copied().unwrap_or(1);
            for f in lo..=4 {
                let mut next = cur.clone();
                next.push(f);
                stack.push(next);
            }
        }
    }
    shapes
}

fn main() {
    let shapes = grid();
    println!("{} shapes", shapes.len());

    let t = Instant::now();
    let tab: Vec<_> = shapes
        .iter()
        .map(|s| grothendieck_tableau(s).unwrap())
        .collect();
    println!("tableaux:    {:.1?}", t.elapsed());

    let t = Instant::now();
    for (s, g) in shapes.iter().zip(&tab) {
        assert_eq!(&grothendieck_determinant(s).unwrap(), g, "{s}");
    }
    println!("determinant: {:.1?}", t.elapsed());

    let t = Instant::now();
    for (s, g) in shapes.iter().zip(&tab) {
        assert_eq!(&grothendieck_determinant_margin(s, 3).unwrap(), g, "{s}");
    }
    println!("det margin3: {:.1?}", t.elapsed());

    let t = Instant::now();
    for (s, g) in shapes.iter().zip(&tab) {
        assert_eq!(&grothendieck_divdiff(s).unwrap(), g, "{s}");
    }
    println!("divdiff:     {:.1?}", t.elapsed());
}
