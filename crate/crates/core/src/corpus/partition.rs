use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::SplitExample;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionSizes {
    pub tune: usize,
    pub validation: usize,
    pub test: usize,
}

impl PartitionSizes {
    pub fn reserved(&self) -> usize {
        self.tune + self.validation + self.test
    }
}

impl Default for PartitionSizes {
    fn default() -> Self {
        PartitionSizes {
            tune: 5000,
            validation: 5000,
            test: 5000,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Partitions {
    pub train: Vec<SplitExample>,
    pub tune: Vec<SplitExample>,
    pub validation: Vec<SplitExample>,
    pub test: Vec<SplitExample>,
}

impl Partitions {
    /// `(name, examples)` in file order.
    pub fn named(&self) -> [(&'static str, &[SplitExample]); 4] {
        [
            ("train", &self.train),
            ("tune", &self.tune),
            ("validation", &self.validation),
            ("test", &self.test),
        ]
    }
}

/// Seeded shuffle, then the first examples fill tune, validation and test and
/// the rest is train. All examples sharing a complex sentence move together,
/// so no complex sentence appears in two partitions.
pub fn partition(
    examples: Vec<SplitExample>,
    sizes: PartitionSizes,
    seed: u64,
) -> Result<Partitions> {
    let needed = sizes.reserved();
    if examples.len() < needed {
        return Err(Error::Sizing(format!(
            "reserving {} tune + {} validation + {} test examples needs {needed}, \
             but the corpus has {} (short by {})",
            sizes.tune,
            sizes.validation,
            sizes.test,
            examples.len(),
            needed - examples.len()
        )));
    }

    let mut group_of: HashMap<&[String], usize> = HashMap::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, ex) in examples.iter().enumerate() {
        let g = *group_of.entry(ex.complex.tokens()).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(i);
    }
    drop(group_of);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    groups.shuffle(&mut rng);

    // 0 = tune, 1 = validation, 2 = test, 3 = train
    let mut room = [sizes.tune, sizes.validation, sizes.test];
    let mut assignment = vec![3usize; examples.len()];
    let mut order = Vec::with_capacity(examples.len());
    for group in &groups {
        let block = room.iter().position(|&r| r >= group.len()).unwrap_or(3);
        if block < 3 {
            room[block] -= group.len();
        }
        for &i in group {
            assignment[i] = block;
            order.push(i);
        }
    }
    if room.iter().any(|&r| r > 0) {
        return Err(Error::Sizing(format!(
            "could not fill reserved partitions exactly without splitting a complex sentence \
             across partitions (unfilled: tune {}, validation {}, test {})",
            room[0], room[1], room[2]
        )));
    }

    let mut slots: Vec<Option<SplitExample>> = examples.into_iter().map(Some).collect();
    let mut out = Partitions::default();
    for i in order {
        let ex = slots[i].take().expect("each example is placed once");
        match assignment[i] {
            0 => out.tune.push(ex),
            1 => out.validation.push(ex),
            2 => out.test.push(ex),
            _ => out.train.push(ex),
        }
    }
    Ok(out)
}
