//! The ten-element frame on the standard sphere and its exact rank.

use sp2_brackets::frames::standard_sphere_frame;
use sp2_brackets::Rational;

fn main() {
    let frame = standard_sphere_frame::<Rational>();
    for e in &frame.entries {
        println!("{:<10} {}", e.label, e.m.matrix());
    }
    let r = frame.rank(0.0);
    println!("rank {} of {}, certificate {}", r.rank, r.rows, r.certificate.unwrap_or_default());
    println!("rank without brackets {}", sp2_brackets::real_rank(&frame.without_brackets(), 0.0).rank);
}
