//! Quaternion and sp(2) arithmetic on the exact rational backend.

use sp2_brackets::bundle::cayley_sp2;
use sp2_brackets::{ad, Quaternion, Rational, Scalar, Sp2Alg};

type Q = Quaternion<Rational>;

fn main() -> sp2_brackets::Result<()> {
    let p = Q::from_ints(1, 2, -1, 3);
    let q = Q::from_ints(0, 1, 4, -2);
    println!("p = {p}\nq = {q}");
    println!("pq = {}\nqp = {}", &p * &q, &q * &p);
    println!("|pq|^2 = {} = |p|^2 |q|^2 = {}", (&p * &q).norm_sq(), p.norm_sq() * q.norm_sq());
    println!("p^-1 = {}", p.inverse()?);

    let half = Rational::from_ratio(1, 2);
    let u = Sp2Alg::from_blocks(Q::i(), Q::from_ints(1, 0, 1, 0), Q::k().scale(&half));
    let w = Sp2Alg::from_blocks(Q::j(), Q::from_ints(0, 2, 0, 1), Q::zero());
    println!("[u, w] = {}", u.bracket(&w).matrix());
    println!("<u, w> = {}", u.inner(&w));

    // a rational point of Sp(2) from the Cayley transform
    let g = cayley_sp2(&u, 0.0)?;
    println!("g = {}", g.matrix());
    println!("g g* = {}", g.matrix() * &g.matrix().adjoint());
    println!("<Ad_g u, Ad_g w> = {}", ad(&g, &u).inner(&ad(&g, &w)));
    Ok(())
}
