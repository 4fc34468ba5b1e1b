// Running part of the benchmark suite and printing both report formats.

use termbridge::bench::{self, BenchConfig};

fn main() -> termbridge::Result<()> {
    let config = BenchConfig {
        iterations: 10,
        warmup: 2,
        ..BenchConfig::default()
    };
    let names: Vec<String> = ["boresea", "cut_100_times", "index_clause", "bench_query"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let results = bench::run_suite(&names, &config)?;
    print!("{}", bench::format_table(&results));
    print!("{}", bench::format_csv(&results));

    let spec = bench::find("boresea").expect("known benchmark");
    let stats = bench::probe(&spec)?;
    let per_op = results[0].avg;
    println!(
        "boresea: {} inferences per run, about {:.0} inferences per second",
        stats.inferences,
        stats.inferences as f64 / (per_op / 1e3)
    );

    let without = bench::run_benchmark(
        &bench::find("index_clause").expect("known benchmark"),
        &BenchConfig { indexing: false, ..config },
    )?;
    println!("index_clause without indexing: {:.4} ms/op", without.avg);
    Ok(())
}
