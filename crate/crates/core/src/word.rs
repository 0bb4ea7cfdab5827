//! Words over power-commutator generators.

/// One letter of a word: a generator index and an integer exponent.
pub type Lit = (usize, i64);

/// A word is a left-to-right product of generator powers.
///
/// Words are purely syntactic; exponents may be negative or exceed the
/// relative order, and letters need not be in index order. Collection turns
/// any word into the unique normal form it represents.
pub type Word = Vec<Lit>;

/// The formal inverse: letters reversed, exponents negated.
pub fn invert(word: &[Lit]) -> Word {
    word.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

/// Concatenation of two words (the product read left to right).
pub fn concat(a: &[Lit], b: &[Lit]) -> Word {
    let mut out = Vec::with_capacity(a.len() + b.len());
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    out
}

/// Render a word with generator names, `*` for products and `^` for powers.
/// The empty word renders as `1`.
pub fn render(word: &[Lit], names: &[String]) -> String {
    let mut parts = Vec::new();
    for &(g, e) in word {
        if e == 0 {
            continue;
        }
        if e == 1 {
            parts.push(names[g].clone());
        } else {
            parts.push(format!("{}^{}", names[g], e));
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}
