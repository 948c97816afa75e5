use criterion::{black_box, criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};
use qprl_core::gridworld::{objective_step, perceive, subjective_step};
use qprl_core::harness::Agent;
use qprl_core::rl::{Planner, RewardTable, Successor, TransitionTable};
use qprl_core::{AgentVariant, BuiltinEnv, Cell, Direction, ExperimentConfig, Motor, Pose, RewardSpec};
use qprl_bench::{rng, trained};

fn steps(c: &mut Criterion) {
    let map = BuiltinEnv::Labyrinth.map();
    let spec = RewardSpec::default();
    let pose = Pose::new(Cell::new(4, 4), Direction::North);
    c.bench_function("perceive", |b| b.iter(|| perceive(&map, black_box(pose))));
    c.bench_function("subjective_step", |b| {
        b.iter(|| subjective_step(&map, black_box(pose), Motor::Forward, &spec).unwrap())
    });
    c.bench_function("objective_step", |b| {
        b.iter(|| objective_step(&map, black_box(Cell::new(4, 4)), Direction::East, &spec).unwrap())
    });
}

fn planner(c: &mut Criterion) {
    let mut group = c.benchmark_group("plan");
    for n in [12usize, 48, 105] {
        // A ring of `n` states with two actions: advance or stay.
        let mut t = TransitionTable::new();
        let mut r = RewardTable::new();
        for s in 0..n {
            let next = if s + 1 == n { Successor::Terminal } else { Successor::State(s + 1) };
            t.observe(&s, 0u8, next, 0.5);
            r.observe(&s, 0u8, if s + 1 == n { 10.0 } else { -1.0 }, 0.5);
            t.observe(&s, 1u8, Successor::State(s), 0.5);
            r.observe(&s, 1u8, -1.0, 0.5);
        }
        let planner = Planner::new(0.5, 5.0);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| planner.plan(&t, &r, &[0u8, 1u8]).unwrap())
        });
    }
    group.finish();
}

fn episodes(c: &mut Criterion) {
    let spec = RewardSpec::default();
    let mut group = c.benchmark_group("episode");
    group.sample_size(20);
    for variant in AgentVariant::ALL {
        let map = BuiltinEnv::SmallCorridor.map();
        let agent = trained(variant, &map, 10, 3000);
        group.bench_function(BenchmarkId::new("small_corridor", variant), |b| {
            b.iter_batched(
                || (agent.clone(), rng(3)),
                |(mut a, mut g): (Agent, _)| a.run_episode(&map, 10, &mut g, 3000, &spec, None).unwrap(),
                BatchSize::SmallInput,
            )
        });
    }
    group.finish();
}

fn experiment(c: &mut Criterion) {
    let mut group = c.benchmark_group("experiment");
    group.sample_size(10);
    let config = ExperimentConfig {
        episodes: 20,
        runs: 20,
        ..ExperimentConfig::new("small_corridor", AgentVariant::SubjectiveSarsa)
    };
    group.bench_function("small_corridor_sarsa_20x20", |b| {
        b.iter(|| qprl_core::run_experiment(&config).unwrap())
    });
    group.finish();
}

criterion_group!(benches, steps, planner, episodes, experiment);
criterion_main!(benches);
