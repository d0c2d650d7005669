//! Named analysis corpus: bounded generators paired with ideal models,
//! shared by the integration suites and the CLI `verify` subcommand.
//!
//! Every item carries a designated index family that its ideal calls small;
//! perturbing the window there must leave all constructions essentially
//! unchanged, which is what the stability checks exercise.

use crate::core::CoreParams;
use crate::error::Result;
use crate::ideal::{parse_ideal, FiniteIdealModel};
use crate::sequence::{generate, parse_generator, Scale, SequenceWindow};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// An index family known to be small under the item's ideal model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmallFamily {
    /// `[1, N/8]` — misses the tail window.
    Prefix,
    /// Perfect squares — vanishing density.
    Squares,
    /// The first two rows and columns — inside the Pringsheim border.
    Lines,
    /// The diagonal — vanishing double density.
    Diagonal,
    /// Column one — transposes into a single row.
    FirstColumn,
}

#[derive(Clone, Debug)]
pub struct CorpusItem {
    pub name: &'static str,
    pub generator: &'static str,
    pub ideal: &'static str,
    pub scale: usize,
    pub dim: usize,
    /// Direction count override for the support construction (0 = default).
    pub directions: usize,
    pub small_family: SmallFamily,
}

/// The full corpus: dimensions 1..=3, all five built-in ideal models.
pub fn all_items() -> Vec<CorpusItem> {
    use SmallFamily::*;
    let item = |name, generator, ideal, scale, dim, directions, small_family| CorpusItem {
        name,
        generator,
        ideal,
        scale,
        dim,
        directions,
        small_family,
    };
    vec![
        item("alt_fin", "alt", "fin", 10_000, 1, 0, Prefix),
        item("alt_z", "alt", "density(0.05)", 10_000, 1, 0, Squares),
        item("alt_decay_fin", "alt_decay", "fin", 10_000, 1, 0, Prefix),
        item("spike_fin", "sparse_spike", "fin", 10_000, 1, 0, Prefix),
        item("spike_z", "sparse_spike", "density(0.05)", 10_000, 1, 0, Squares),
        item(
            "noisy_alt_z",
            "spike_noisy(alt,0.4,11)",
            "density(0.05)",
            10_000,
            1,
            0,
            Squares,
        ),
        item(
            "tri_fin",
            "cycle((0,0);(1,0);(0,1))",
            "fin",
            6_000,
            2,
            0,
            Prefix,
        ),
        item(
            "tri_z",
            "cycle((0,0);(1,0);(0,1))",
            "density(0.05)",
            6_000,
            2,
            0,
            Squares,
        ),
        item(
            "quad_noise_z",
            "spike_noisy(cycle((0,0);(1,0);(1,1);(0,1)),0.3,7)",
            "density(0.05)",
            6_000,
            2,
            0,
            Squares,
        ),
        item(
            "tet_fin",
            "cycle((0,0,0);(1,0,0);(0,1,0);(0,0,1))",
            "fin",
            6_000,
            3,
            512,
            Prefix,
        ),
        item(
            "tet_z",
            "cycle((0,0,0);(1,0,0);(0,1,0);(0,0,1))",
            "density(0.05)",
            6_000,
            3,
            512,
            Squares,
        ),
        item(
            "dbl_alt_p",
            "double_alt",
            "pringsheim(0.1)",
            256,
            1,
            0,
            Lines,
        ),
        item(
            "dbl_alt_zp",
            "double_alt",
            "double-density(0.05)",
            256,
            1,
            0,
            Diagonal,
        ),
        item(
            "dbl_rows_e",
            "double_row_alt",
            "transpose(product(fin,fin))",
            256,
            1,
            0,
            FirstColumn,
        ),
        item(
            "dbl_decay_p",
            "double_decay",
            "pringsheim(0.1)",
            256,
            1,
            0,
            Lines,
        ),
    ]
}

pub fn find(name: &str) -> Option<CorpusItem> {
    all_items().into_iter().find(|i| i.name == name)
}

impl CorpusItem {
    pub fn window(&self) -> Result<SequenceWindow<f64>> {
        generate(&parse_generator(self.generator)?, self.scale)
    }

    pub fn model(&self) -> Result<FiniteIdealModel> {
        parse_ideal(self.ideal)
    }

    pub fn core_params(&self) -> CoreParams<f64> {
        CoreParams {
            directions: self.directions,
            ..CoreParams::default()
        }
    }

    /// Storage positions of the item's designated small index family.
    pub fn small_positions(&self, window: &SequenceWindow<f64>) -> Vec<usize> {
        let is_square = |n: usize| {
            let r = (n as f64).sqrt().round() as usize;
            r * r == n
        };
        match window.scale() {
            Scale::Single { n } => match self.small_family {
                SmallFamily::Prefix => (1..=n / 8)
                    .filter_map(|i| window.position_of_single(i))
                    .collect(),
                SmallFamily::Squares => (1..=n)
                    .filter(|&i| is_square(i))
                    .filter_map(|i| window.position_of_single(i))
                    .collect(),
                _ => unreachable!("double family on a single window"),
            },
            Scale::Double { m } => {
                let mut pairs: Vec<(usize, usize)> = Vec::new();
                match self.small_family {
                    SmallFamily::Lines => {
                        for a in 1..=m {
                            for j in 1..=2.min(m) {
                                pairs.push((a, j));
                                pairs.push((j, a));
                            }
                        }
                    }
                    SmallFamily::Diagonal => pairs.extend((1..=m).map(|a| (a, a))),
                    SmallFamily::FirstColumn => pairs.extend((1..=m).map(|a| (a, 1))),
                    _ => unreachable!("single family on a double window"),
                }
                pairs.sort_unstable();
                pairs.dedup();
                pairs
                    .into_iter()
                    .filter_map(|(a, b)| window.position_of_pair(a, b))
                    .collect()
            }
        }
    }

    /// The window with bounded seeded noise added on the small family.
    pub fn perturbed_window(
        &self,
        amplitude: f64,
        seed: u64,
    ) -> Result<SequenceWindow<f64>> {
        let window = self.window()?;
        let positions = self.small_positions(&window);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shifts: Vec<(usize, Vec<f64>)> = positions
            .into_iter()
            .map(|pos| {
                let delta: Vec<f64> = (0..window.dim())
                    .map(|_| amplitude * rng.gen_range(-1.0f64..=1.0))
                    .collect();
                (pos, delta)
            })
            .collect();
        window.perturbed(&shifts, &format!("perturbed({amplitude},{seed})"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::IndexSet;

    #[test]
    fn corpus_is_well_formed() {
        let items = all_items();
        assert!(items.len() >= 12);
        assert!(items.iter().any(|i| i.dim == 1));
        assert!(items.iter().any(|i| i.dim == 2));
        assert!(items.iter().any(|i| i.dim == 3));
        for ideal in [
            "fin",
            "density(0.05)",
            "pringsheim(0.1)",
            "double-density(0.05)",
            "transpose(product(fin,fin))",
        ] {
            assert!(items.iter().any(|i| i.ideal == ideal), "missing {ideal}");
        }
        for item in &items {
            let w = item.window().unwrap();
            assert_eq!(w.dim(), item.dim, "{}", item.name);
            let model = item.model().unwrap();
            assert_eq!(model.arity(), w.scale().arity(), "{}", item.name);
        }
    }

    #[test]
    fn small_families_really_are_small() {
        for item in all_items() {
            let w = item.window().unwrap();
            let model = item.model().unwrap();
            let positions = item.small_positions(&w);
            assert!(!positions.is_empty(), "{}", item.name);
            let set = match w.scale() {
                Scale::Single { .. } => {
                    IndexSet::from_singles(positions.iter().map(|&p| p + 1).collect())
                }
                Scale::Double { m } => IndexSet::from_pairs(
                    positions
                        .iter()
                        .map(|&p| (p / m + 1, p % m + 1))
                        .collect(),
                ),
            };
            assert!(
                model.is_small(&set, w.scale().bound()).unwrap(),
                "{}: designated family not small",
                item.name
            );
        }
    }

    #[test]
    fn perturbation_touches_only_the_family() {
        let item = find("alt_z").unwrap();
        let base = item.window().unwrap();
        let pert = item.perturbed_window(0.5, 3).unwrap();
        let positions: std::collections::BTreeSet<usize> =
            item.small_positions(&base).into_iter().collect();
        let mut changed = 0usize;
        for pos in 0..base.len() {
            let same = base.point(pos) == pert.point(pos);
            if !same {
                assert!(positions.contains(&pos), "position {pos} off-family changed");
                changed += 1;
            }
        }
        assert!(changed > 50, "perturbation too weak: {changed}");
    }
}
