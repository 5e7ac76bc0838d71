//! A small ensemble sweep of the cop-win rate across radii, written as CSV
//! to stdout.

use geocop::ensembles::{sweep, write_sweep_csv, EnsembleSpec, Measurement, RadiusSpec};

fn main() {
    let radii = vec![0.1, 0.2, 0.4, 0.8, 1.2];
    let spec = EnsembleSpec::new(vec![100], RadiusSpec::Fixed(radii), 40, 2024, Measurement::CopwinRate);
    spec.validate().unwrap();
    let rows = sweep(&spec);
    write_sweep_csv(std::io::stdout().lock(), &spec, &rows).unwrap();
}
