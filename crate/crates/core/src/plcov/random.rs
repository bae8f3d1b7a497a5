use rand::Rng;

use super::{PLCovering, Pt, Segment};
use crate::rat::Rat;

/// A random covering made of `sheets` continuous piecewise-linear graphs over
/// a common grid of `cells` pieces. Sheet values are drawn from a small set so
/// that sheets often meet, touch and coincide; coinciding pieces are merged.
pub fn random_covering<R: Rng + ?Sized>(rng: &mut R, sheets: usize, cells: usize) -> PLCovering {
    assert!(sheets >= 1 && cells >= 1);
    let mut grid = vec![Rat::from(rng.gen_range(-3i64..=0))];
    for _ in 0..cells {
        let step = Rat::new(rng.gen_range(1i64..=3), rng.gen_range(1i64..=2));
        let next = grid.last().unwrap() + &step;
        grid.push(next);
    }
    let heights: Vec<Vec<Rat>> = (0..sheets)
        .map(|_| {
            (0..=cells)
                .map(|_| Rat::new(rng.gen_range(-4i64..=4), 2))
                .collect()
        })
        .collect();
    let mut segments: Vec<Segment> = Vec::new();
    for i in 0..cells {
        for h in &heights {
            let s = Segment::through(
                &Pt::new(grid[i].clone(), h[i].clone()),
                &Pt::new(grid[i + 1].clone(), h[i + 1].clone()),
            );
            if !segments.contains(&s) {
                segments.push(s);
            }
        }
    }
    let a = grid[0].clone();
    let b = grid[cells].clone();
    PLCovering::new(a, b, segments).expect("sheets on a common grid never overlap collinearly")
}
