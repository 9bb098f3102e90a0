//! Command-line entry point.

pub fn main() -> i32 {
    eprintln!("not yet implemented");
    2
}
