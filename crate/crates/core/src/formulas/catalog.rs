//! Clause lists for every predicate. Indices in clause names refer to the
//! image being tested, `n0` first.

use super::{Clause, PredicateId};

type Disjuncts = Vec<Vec<Clause>>;

fn xor(n: &[u64], idx: impl IntoIterator<Item = usize>) -> u64 {
    idx.into_iter().fold(0, |a, i| a ^ n[i])
}

fn all_equal(n: &[u64], idx: impl IntoIterator<Item = usize>) -> bool {
    let mut it = idx.into_iter().map(|i| n[i]);
    match it.next() {
        Some(first) => it.all(|v| v == first),
        None => true,
    }
}

fn min(n: &[u64]) -> u64 {
    n.iter().copied().min().unwrap_or(0)
}

fn max(n: &[u64]) -> u64 {
    n.iter().copied().max().unwrap_or(0)
}

/// Bit pattern of digit `b` across all piles, pile 0 in the lowest bit.
fn digit_mask(n: &[u64], b: u32) -> u32 {
    n.iter()
        .enumerate()
        .fold(0, |acc, (i, &v)| acc | (((v >> b) & 1) as u32) << i)
}

/// Whether a 4-subset of six piles is a rotation or reflection of
/// {0,1,3,4} or {0,1,2,4}, i.e. its two missing piles are not adjacent.
fn is_six_circuit(d: u32) -> bool {
    let missing = !d & 0b111111;
    (0..6).all(|i| {
        let pair = (1 << i) | (1 << ((i + 1) % 6));
        missing & pair != pair
    })
}

fn eq(a: usize, b: usize) -> Clause {
    Clause::new(format!("n{a}=n{b}"), move |n| n[a] == n[b])
}

fn zero(a: usize) -> Clause {
    Clause::new(format!("n{a}=0"), move |n| n[a] == 0)
}

fn is_min(a: usize) -> Clause {
    Clause::new(format!("n{a}=min"), move |n| n[a] == min(n))
}

fn pair_sum(a: usize, b: usize, c: usize, d: usize) -> Clause {
    Clause::new(format!("n{a}+n{b}=n{c}+n{d}"), move |n| n[a] + n[b] == n[c] + n[d])
}

fn xor_zero(idx: &'static [usize]) -> Clause {
    let name = idx.iter().map(|i| format!("n{i}")).collect::<Vec<_>>().join("^");
    Clause::new(format!("{name}=0"), move |n| xor(n, idx.iter().copied()) == 0)
}

fn lt(a: usize, b: usize) -> Clause {
    Clause::new(format!("n{a}<n{b}"), move |n| n[a] < n[b])
}

fn le(a: usize, b: usize) -> Clause {
    Clause::new(format!("n{a}<=n{b}"), move |n| n[a] <= n[b])
}

fn evens_xor_zero() -> Clause {
    Clause::new("xor of even piles=0", |n| xor(n, (0..n.len()).step_by(2)) == 0)
}

fn odds_xor_zero() -> Clause {
    Clause::new("xor of odd piles=0", |n| xor(n, (1..n.len()).step_by(2)) == 0)
}

fn evens_equal() -> Clause {
    Clause::new("even piles equal", |n| all_equal(n, (0..n.len()).step_by(2)))
}

fn odds_equal() -> Clause {
    Clause::new("odd piles equal", |n| all_equal(n, (1..n.len()).step_by(2)))
}

/// `(cyclic, disjuncts)` for a validated id.
pub(super) fn definition(id: PredicateId) -> (bool, Disjuncts) {
    use PredicateId::*;
    match id {
        NimXor => (
            false,
            vec![vec![Clause::new("xor of all piles=0", |n| xor(n, 0..n.len()) == 0)]],
        ),
        Moore(k) => (
            false,
            vec![vec![Clause::new(format!("every digit has a multiple of {} ones", k + 1), move |n| {
                (0..64).all(|b| (digit_mask(n, b).count_ones() as usize).is_multiple_of(k + 1))
            })]],
        ),
        Cn42 => (false, vec![vec![eq(0, 2), eq(1, 3)]]),
        Cn52 => (
            true,
            vec![vec![
                Clause::new("n0=max", |n| n[0] == max(n)),
                pair_sum(0, 1, 2, 3),
                eq(1, 4),
            ]],
        ),
        Cn53 => (
            true,
            vec![vec![
                zero(0),
                Clause::new("n1=n2+n3", |n| n[1] == n[2] + n[3]),
                Clause::new("n2+n3=n4", |n| n[2] + n[3] == n[4]),
            ]],
        ),
        Cn63 => (true, vec![vec![pair_sum(0, 1, 3, 4), pair_sum(1, 2, 4, 5)]]),
        Cn64 => (
            true,
            vec![vec![
                is_min(0),
                pair_sum(0, 1, 3, 4),
                pair_sum(1, 2, 4, 5),
                xor_zero(&[0, 2, 4]),
            ]],
        ),
        Cn74 => (
            true,
            vec![
                vec![
                    zero(0),
                    zero(1),
                    Clause::new("n3+n4+n5=n2", |n| n[3] + n[4] + n[5] == n[2]),
                    eq(2, 6),
                    Clause::new("n6>0", |n| n[6] > 0),
                ],
                vec![Clause::new("all piles equal", |n| all_equal(n, 0..n.len()))],
                vec![
                    eq(0, 1),
                    eq(2, 6),
                    eq(3, 5),
                    pair_sum(0, 2, 3, 4),
                    Clause::new("n0>0", |n| n[0] > 0),
                    lt(0, 4),
                    is_min(0),
                ],
                vec![
                    eq(0, 5),
                    pair_sum(1, 2, 3, 4),
                    pair_sum(3, 4, 6, 0),
                    is_min(0),
                    lt(0, 1),
                    lt(0, 4),
                    Clause::new("n0<max(n2,n3)", |n| n[0] < n[2].max(n[3])),
                ],
            ],
        ),
        Cn86 => (
            true,
            vec![vec![
                zero(0),
                Clause::new("n1=n2+n3", |n| n[1] == n[2] + n[3]),
                pair_sum(2, 3, 5, 6),
                Clause::new("n5+n6=n7", |n| n[5] + n[6] == n[7]),
                Clause::new("n4=min(n1,n2+n6)", |n| n[4] == n[1].min(n[2] + n[6])),
            ]],
        ),
        Ecn6122 => (
            false,
            vec![vec![
                Clause::new("n0^n3=n1^n4", |n| n[0] ^ n[3] == n[1] ^ n[4]),
                Clause::new("n1^n4=n2^n5", |n| n[1] ^ n[4] == n[2] ^ n[5]),
            ]],
        ),
        Ecn6123 => (false, vec![vec![eq(0, 3), eq(1, 4), eq(2, 5)]]),
        Ecn6124 => (
            false,
            vec![vec![
                Clause::new("every digit has zero or four ones", |n| {
                    (0..64).all(|b| matches!(digit_mask(n, b).count_ones(), 0 | 4))
                }),
                Clause::new("four-one digits sit on an image of {0,1,3,4} or {0,1,2,4}", |n| {
                    (0..64).all(|b| {
                        let d = digit_mask(n, b);
                        d.count_ones() != 4 || is_six_circuit(d)
                    })
                }),
            ]],
        ),
        Ecn6132 => (false, vec![vec![xor_zero(&[0, 2, 4]), xor_zero(&[1, 3, 5])]]),
        Ecn6233 => (
            true,
            vec![vec![
                Clause::new("n0+n2+n4=n1+n3+n5", |n| n[0] + n[2] + n[4] == n[1] + n[3] + n[5]),
                xor_zero(&[0, 1, 2]),
                le(0, 3),
                le(1, 4),
                le(2, 5),
            ]],
        ),
        Ecn7124 => (
            true,
            vec![vec![eq(0, 1), eq(1, 4), eq(2, 6), pair_sum(3, 5, 0, 2), is_min(0)]],
        ),
        Ecn7125 => (
            true,
            vec![vec![
                zero(0),
                eq(1, 2),
                Clause::new("n2=n3+n4", |n| n[2] == n[3] + n[4]),
                Clause::new("n3+n4=n5", |n| n[3] + n[4] == n[5]),
                eq(5, 6),
            ]],
        ),
        Ecn8132 => (false, vec![vec![evens_xor_zero(), odds_xor_zero()]]),
        Ecn8134 => (false, vec![vec![eq(0, 4), eq(1, 5), eq(2, 6), eq(3, 7)]]),
        Ecn8136 => (false, vec![vec![evens_equal(), odds_equal()]]),
        Ecn81236 => (
            true,
            vec![
                vec![
                    evens_equal(),
                    Clause::new("n0=n1+n3+n5+n7", |n| n[0] == n[1] + n[3] + n[5] + n[7]),
                    Clause::new("odd piles not all equal", |n| !all_equal(n, [1, 3, 5, 7])),
                ],
                vec![Clause::new("all piles zero", |n| n.iter().all(|&v| v == 0))],
            ],
        ),
        GenOddPrime(m) => {
            let mut clauses = vec![zero(0)];
            if m > 2 {
                clauses.push(Clause::new(format!("n1..n{} equal", m - 1), move |n| all_equal(n, 1..m)));
            }
            clauses.push(Clause::new(format!("n{}=n{m}+n{}", m - 1, m + 1), move |n| {
                n[m - 1] == n[m] + n[m + 1]
            }));
            clauses.push(Clause::new(format!("n{m}+n{}=n{}", m + 1, m + 2), move |n| {
                n[m] + n[m + 1] == n[m + 2]
            }));
            if m > 2 {
                clauses.push(Clause::new(format!("n{}..n{} equal", m + 2, 2 * m), move |n| {
                    all_equal(n, m + 2..=2 * m)
                }));
            }
            (true, vec![clauses])
        }
        GenEvenK2(_) => (false, vec![vec![evens_xor_zero(), odds_xor_zero()]]),
        GenPow2(_) => (false, vec![vec![evens_equal(), odds_equal()]]),
    }
}
