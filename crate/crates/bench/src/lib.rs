//! Workloads shared by the benchmarks.

use fmsched::gen::{random_instance, GenLimits};
use fmsched::{fixtures, parse_instance, PlaceTimedNet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The two-job, four-machine reference instance with `lot` parts per job.
pub fn example_lot(lot: u32) -> PlaceTimedNet {
    let inst = parse_instance(fixtures::EXAMPLE1)
        .and_then(|i| i.with_lots(lot))
        .expect("fixture is valid");
    PlaceTimedNet::build(&inst)
}

pub fn table3() -> PlaceTimedNet {
    PlaceTimedNet::build(&parse_instance(fixtures::TABLE3).expect("fixture is valid"))
}

/// `count` small random nets from a fixed seed.
pub fn random_nets(count: usize, seed: u64) -> Vec<PlaceTimedNet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let limits = GenLimits::default();
    (0..count)
        .map(|_| PlaceTimedNet::build(&random_instance(&mut rng, &limits)))
        .collect()
}
