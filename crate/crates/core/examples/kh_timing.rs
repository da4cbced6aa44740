//! Times `kh` on a braid closure: `cargo run --release --example kh_timing -- "1 2 1 2" 3`
use std::time::Instant;

use khoval_core::{braid_to_pd, build_complex, homology_dims, normalize};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let word: Vec<i32> = args[1].split_whitespace().map(|s| s.parse().unwrap()).collect();
    let strands: u32 = args[2].parse().unwrap();
    let d = braid_to_pd(&word, strands).unwrap();
    let start = Instant::now();
    let c = build_complex(&d, 64).unwrap();
    println!("n = {}, generators = {}", d.crossing_count(), c.total_dim());
    let h = homology_dims(&c);
    let kh = normalize(&h, d.n_plus(), d.n_minus()).unwrap();
    let peak = std::fs::read_to_string("/proc/self/status")
        .ok()
        .and_then(|s| s.lines().find(|l| l.starts_with("VmHWM")).map(str::to_string))
        .unwrap_or_default();
    println!("elapsed {:.2?}, {peak}", start.elapsed());
    for (i, j, dim) in kh.entries() {
        println!("{i} {j} {dim}");
    }
}
