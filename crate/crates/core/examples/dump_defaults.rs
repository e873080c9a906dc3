//! Print the serialized defaults for a dimension (default 3) and their checksum.
fn main() {
    let dim = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(3);
    let c = jjdirac_core::SimulationConfig::defaults(dim);
    print!("{}", c.serialize());
    eprintln!("{}", c.checksum());
}
