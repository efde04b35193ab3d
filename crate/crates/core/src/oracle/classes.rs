//! Conjugacy classes by orbit search under a small generating set.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::group::FiniteGroup;

#[derive(Clone, Debug, Serialize)]
pub struct ClassData {
    /// Element index of each class representative (least encoding).
    pub reps: Vec<u32>,
    pub sizes: Vec<u64>,
    /// Class of every element.
    pub class_of: Vec<u32>,
    /// Class of the inverses of each class.
    pub inverse_class: Vec<u32>,
    pub generators: Vec<u32>,
}

impl ClassData {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Members of every class, in element order.
    pub fn members(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.len()];
        for (e, &c) in self.class_of.iter().enumerate() {
            out[c as usize].push(e as u32);
        }
        out
    }
}

fn closure(g: &FiniteGroup, gens: &[u32]) -> Vec<bool> {
    let mut seen = vec![false; g.order()];
    let mut stack = vec![g.identity()];
    seen[g.identity() as usize] = true;
    while let Some(x) = stack.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if !seen[y as usize] {
                seen[y as usize] = true;
                stack.push(y);
            }
        }
    }
    seen
}

/// A generating set found by adding random elements outside the subgroup
/// generated so far. Seeded, so the result is reproducible.
pub fn generating_set(g: &FiniteGroup) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut gens = Vec::new();
    let mut inside = closure(g, &gens);
    let mut count = 1;
    while count < g.order() {
        let outside: Vec<u32> = (0..g.order() as u32)
            .filter(|&i| !inside[i as usize])
            .collect();
        gens.push(outside[rng.gen_range(0..outside.len())]);
        inside = closure(g, &gens);
        count = inside.iter().filter(|&&b| b).count();
    }
    gens
}

pub fn conjugacy_classes(g: &FiniteGroup) -> ClassData {
    let gens = generating_set(g);
    let unset = u32::MAX;
    let mut class_of = vec![unset; g.order()];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    for start in 0..g.order() as u32 {
        if class_of[start as usize] != unset {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(start);
        class_of[start as usize] = c;
        let mut stack = vec![start];
        let mut size = 1u64;
        while let Some(x) = stack.pop() {
            for &s in &gens {
                let y = g.conjugate(x, s);
                if class_of[y as usize] == unset {
                    class_of[y as usize] = c;
                    size += 1;
                    stack.push(y);
                }
            }
        }
        sizes.push(size);
    }
    let inverse_class = reps
        .iter()
        .map(|&r| class_of[g.inverse(r) as usize])
        .collect();
    ClassData {
        reps,
        sizes,
        class_of,
        inverse_class,
        generators: gens,
    }
}
