#![allow(dead_code)]

use rand::Rng;

/// Exponent vectors of all monomials in `n` variables of total degree at most `d`.
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for k in 0..=d {
        for mut rest in monomials(n - 1, d - k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

/// Text of a random dense system: `n` variables, the given degrees, every
/// coefficient uniform in `[-bound, bound]` and the top-degree part nonzero.
pub fn random_dense_system<G: Rng>(n: usize, degrees: &[u32], bound: i64, rng: &mut G) -> String {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let mut text = format!("vars {};\n", names.join(", "));
    for &d in degrees {
        let mut terms = Vec::new();
        let mut top_nonzero = false;
        while !top_nonzero {
            terms.clear();
            for e in monomials(n, d) {
                let c: i64 = rng.gen_range(-bound..=bound);
                if c == 0 {
                    continue;
                }
                if e.iter().sum::<u32>() == d {
                    top_nonzero = true;
                }
                let mut factors = vec![format!("({c})")];
                for (name, &k) in names.iter().zip(&e) {
                    match k {
                        0 => {}
                        1 => factors.push(name.clone()),
                        _ => factors.push(format!("{name}^{k}")),
                    }
                }
                terms.push(factors.join("*"));
            }
        }
        text.push_str(&terms.join(" + "));
        text.push_str(";\n");
    }
    text
}
