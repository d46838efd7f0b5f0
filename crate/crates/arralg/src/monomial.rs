//! Monomials as exponent vectors, and the monomial orders used by the
//! Groebner engine.
//!
//! The ambient storage order for every polynomial is degree reverse
//! lexicographic; [`Ord`] on [`Monomial`] implements exactly that order so
//! sorted containers agree with the ambient convention. Other orders are
//! passed explicitly where an operation needs them (lex, and the block
//! elimination order that makes variable elimination a leading-term filter).

use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u16>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn from_exps(exps: Vec<u16>) -> Monomial {
        Monomial { exps }
    }

    pub fn variable(nvars: usize, i: usize) -> Monomial {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, when the division is exact.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial {
                exps: other
                    .exps
                    .iter()
                    .zip(&self.exps)
                    .map(|(b, a)| b - a)
                    .collect(),
            })
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn is_coprime_to(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// Drops the first `k` exponents (used after elimination).
    pub fn truncate_front(&self, k: usize) -> Monomial {
        Monomial { exps: self.exps[k..].to_vec() }
    }

    /// Pads with zero exponents so the monomial lives in a ring with
    /// `extra_front` new leading variables and `extra_back` trailing ones.
    pub fn pad(&self, extra_front: usize, extra_back: usize) -> Monomial {
        let mut exps = vec![0u16; extra_front];
        exps.extend_from_slice(&self.exps);
        exps.extend(std::iter::repeat(0).take(extra_back));
        Monomial { exps }
    }
}

fn degrevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {
            for (x, y) in a.iter().zip(b).rev() {
                if x != y {
                    // Smaller exponent in the last differing position wins.
                    return y.cmp(x);
                }
            }
            Ordering::Equal
        }
        o => o,
    }
}

fn lex(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if x != y {
            return x.cmp(y);
        }
    }
    Ordering::Equal
}

/// Ambient order: degrevlex.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        degrevlex(&self.exps, &other.exps)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A monomial order. `Block(k)` is the elimination order whose leading block
/// is the first `k` variables: both blocks are compared by degrevlex, block
/// one first, so any monomial involving an eliminated variable dominates
/// every monomial free of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
    Block(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => degrevlex(&a.exps, &b.exps),
            MonomialOrder::Lex => lex(&a.exps, &b.exps),
            MonomialOrder::Block(k) => {
                let k = (*k).min(a.exps.len());
                degrevlex(&a.exps[..k], &b.exps[..k])
                    .then_with(|| degrevlex(&a.exps[k..], &b.exps[k..]))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::DegRevLex => "degrevlex".to_string(),
            MonomialOrder::Lex => "lex".to_string(),
            MonomialOrder::Block(k) => format!("block({k})"),
        }
    }
}

/// All monomials of the given total degree, in descending degrevlex order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    fn rec(out: &mut Vec<Monomial>, cur: &mut Vec<u16>, pos: usize, rem: u32) {
        if pos + 1 == cur.len() {
            cur[pos] = rem as u16;
            out.push(Monomial::from_exps(cur.clone()));
            return;
        }
        for e in (0..=rem).rev() {
            cur[pos] = e as u16;
            rec(out, cur, pos + 1, rem - e);
        }
        cur[pos] = 0;
    }
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial::from_exps(vec![]));
        }
        return out;
    }
    rec(&mut out, &mut cur, 0, degree);
    out.sort_by(|a, b| b.cmp(a));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exps(e.to_vec())
    }

    #[test]
    fn degrevlex_textbook_comparisons() {
        // x^2 > xy > y^2 > xz > yz > z^2 in degrevlex on (x, y, z).
        let seq = [
            m(&[2, 0, 0]),
            m(&[1, 1, 0]),
            m(&[0, 2, 0]),
            m(&[1, 0, 1]),
            m(&[0, 1, 1]),
            m(&[0, 0, 2]),
        ];
        for w in seq.windows(2) {
            assert_eq!(w[0].cmp(&w[1]), Ordering::Greater);
        }
        // Degree dominates.
        assert!(m(&[0, 0, 3]) > m(&[2, 0, 0]));
        // The classical degrevlex vs deglex separator: x y^2 z vs x^2 z^2.
        assert!(MonomialOrder::DegRevLex.cmp(&m(&[1, 2, 1]), &m(&[2, 0, 2])) == Ordering::Greater);
    }

    #[test]
    fn lex_comparisons() {
        let ord = MonomialOrder::Lex;
        assert_eq!(ord.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[1, 2, 0]), &m(&[1, 1, 9])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_leading_variables() {
        let ord = MonomialOrder::Block(1);
        // Any power of the first variable beats anything without it.
        assert_eq!(ord.cmp(&m(&[1, 0, 0]), &m(&[0, 9, 9])), Ordering::Greater);
        // Without it, falls back to degrevlex on the tail.
        assert_eq!(ord.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 1])), Ordering::Greater);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[1, 1, 0]);
        assert!(b.divides(&a));
        assert!(!a.divides(&b));
        assert_eq!(b.divide_into(&a), Some(m(&[0, 1, 0])));
        assert_eq!(a.lcm(&m(&[0, 1, 3])), m(&[1, 2, 3]));
        assert!(m(&[2, 0, 0]).is_coprime_to(&m(&[0, 1, 1])));
    }

    #[test]
    fn degree_enumeration_counts() {
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
        assert_eq!(monomials_of_degree(2, 7).len(), 8);
        let ms = monomials_of_degree(3, 2);
        for w in ms.windows(2) {
            assert!(w[0] > w[1]);
        }
    }
}
