use mrdp_core::{solve_linear_constraints, solve_quotas_costs, ConstraintSystem, CostSpec, Partition};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_partition(rng: &mut ChaCha8Rng, max_n: usize, max_k: usize) -> Partition {
    let k = rng.random_range(1..=max_k);
    let mut sizes = vec![1usize; k];
    let mut total = k;
    while total < max_n && rng.random_bool(0.7) {
        sizes[rng.random_range(0..k)] += 1;
        total += 1;
    }
    let mut blocks = Vec::with_capacity(k);
    let mut next = 0;
    for size in sizes {
        blocks.push((next..next + size).collect::<Vec<_>>());
        next += size;
    }
    let quotas = (0..k).map(|_| rng.random_range(0.5..3.0)).collect();
    Partition::new(blocks, quotas).unwrap()
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for trial in 0..20 {
        let partition = random_partition(&mut rng, 8, 2);
        let rates: Vec<f64> = (0..partition.n())
            .map(|_| rng.random_range(0.5..3.0))
            .collect();
        let costs: Vec<f64> = partition
            .blocks()
            .iter()
            .zip(partition.quotas())
            .map(|(block, &m)| {
                let lo = block.iter().map(|&j| rates[j]).fold(f64::INFINITY, f64::min);
                let hi = block.iter().map(|&j| rates[j]).fold(f64::NEG_INFINITY, f64::max);
                if block.len() == 1 || hi - lo < 1e-9 { m * lo } else {
                    let theta = rng.random_range(0.25..0.75);
                    m * (lo + theta * (hi - lo))
                }
            })
            .collect();
        let costs = CostSpec::new(rates.clone(), costs).unwrap();
        let closed = solve_quotas_costs(&partition, &costs).unwrap();
        if trial == 11 {
            println!("trial 11: blocks {:?}", partition.blocks());
            println!("quotas {:?}", partition.quotas());
            println!("rates {:?}", costs.rates());
            println!("costs {:?}", costs.costs());
            println!("closed f {:?}", closed.f);
            println!("closed case {:?}", closed.case);
        }
        match solve_linear_constraints(&ConstraintSystem::from_partition_with_costs(&partition, &costs)) {
            Ok(_) => {},
            Err(e) => println!("trial {trial} FAIL: {e}"),
        }
    }
}
