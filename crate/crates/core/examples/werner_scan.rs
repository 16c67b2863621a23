//! Scans the Werner family p·|ψ⁻⟩⟨ψ⁻| + (1−p)/4·I and prints where each
//! criterion starts firing: the PPT margin crosses zero at p = 1/3, the CHSH
//! maximum passes the classical bound 2 at p = 1/√2 ≈ 0.707, and the
//! dense-coding advantage turns positive near p ≈ 0.748.
//!
//! Run with: cargo run -p entsep --example werner_scan

use entsep::bell::maximize_chsh;
use entsep::densecoding::classify;
use entsep::states::werner;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn main() -> entsep::Result<()> {
    let mut rng = ChaCha12Rng::seed_from_u64(1);
    println!(
        "{:>5}  {:>10}  {:>9}  {:>9}  {:>10}  class",
        "p", "pt margin", "chsh max", "capacity", "advantage"
    );
    for i in 0..=20 {
        let p = i as f64 / 20.0;
        let rho = werner(p)?;
        let report = classify(&rho);
        let (chsh, _) = maximize_chsh(&rho, 16, &mut rng)?;
        println!(
            "{:>5.2}  {:>10.6}  {:>9.6}  {:>9.6}  {:>10.6}  {}",
            p, report.ppt.margin, chsh, report.capacity, report.dc_advantage, report.class_label
        );
    }
    Ok(())
}
