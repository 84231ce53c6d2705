//! Sparse integer polynomials: text form, gcd, factor search, quadratic
//! splitting.
//!
//! cargo run --example polynomials

use c2core::polyring::{find_factorization, gcd, split_quadratic, var, x, Polynomial};

fn main() -> c2core::Result<()> {
    let f: Polynomial = "1*a1*a2 + 2*a1*a3 + 1*a2^2 + 2*a2*a3".parse()?;
    println!("f = {f}");
    if let Some((a, b)) = find_factorization(&f) {
        println!("f = ({a}) * ({b})");
    }

    let common = &x(1) + &x(4);
    let g = &common * &(&x(2) - &x(3));
    let h = &common * &(&x(2) + &x(5));
    println!("gcd({g}, {h}) = {}", gcd(&g, &h));

    // (2 a1 + a2)(a1 + 3 a2), split as a quadratic in a1
    let q = &(&x(1).scale(2) + &x(2)) * &(&x(1) + &x(2).scale(3));
    match split_quadratic(&q, var(1))? {
        Some((l1, l2)) => println!("{q} = ({l1}) * ({l2})"),
        None => println!("{q} does not split"),
    }
    let sq = &x(1).pow(2) + &x(2).pow(2);
    println!("{sq} splits over Z: {}", split_quadratic(&sq, var(1))?.is_some());
    Ok(())
}
