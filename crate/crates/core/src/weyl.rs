//! Weyl group action on the root lattice: positive roots, reduced words for
//! the longest element and the induced star involution of the vertex set.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::cartan::CartanData;

/// Element of the root lattice in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootVec(pub Vec<i64>);

impl RootVec {
    /// The simple root `alpha_i`.
    pub fn simple(n: usize, i: usize) -> RootVec {
        let mut v = vec![0; n];
        v[i] = 1;
        RootVec(v)
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&x| x >= 0) && self.0.iter().any(|&x| x > 0)
    }
}

/// A word in the generators, `(i_1, ..., i_l)` standing for
/// `s_{i_1} s_{i_2} ... s_{i_l}`; the rightmost letter acts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }
}

/// Simple reflection `s_i` applied exactly: `s_i(alpha_j) = alpha_j - c_{ij} alpha_i`.
pub fn reflect(cd: &CartanData, i: usize, v: &RootVec) -> RootVec {
    assert!(i < cd.rank(), "index out of range");
    let mut out = v.0.clone();
    let pairing: i64 = (0..cd.rank()).map(|j| cd.cartan(i, j) * v.0[j]).sum();
    out[i] -= pairing;
    RootVec(out)
}

/// Apply a word to a root vector; the rightmost letter acts first.
pub fn apply_word(cd: &CartanData, word: &Word, v: &RootVec) -> RootVec {
    let mut out = v.clone();
    for &i in word.0.iter().rev() {
        out = reflect(cd, i, &out);
    }
    out
}

/// All positive roots, obtained by saturating the simple roots under the
/// simple reflections and keeping the positives. Sorted for determinism.
pub fn positive_roots(cd: &CartanData) -> Vec<RootVec> {
    let n = cd.rank();
    let mut seen: BTreeSet<RootVec> = BTreeSet::new();
    let mut queue: VecDeque<RootVec> = VecDeque::new();
    for i in 0..n {
        let a = RootVec::simple(n, i);
        seen.insert(a.clone());
        queue.push_back(a);
    }
    while let Some(root) = queue.pop_front() {
        for i in 0..n {
            let image = reflect(cd, i, &root);
            if seen.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    let positives: Vec<RootVec> = seen.into_iter().filter(|r| r.is_positive()).collect();
    debug_assert_eq!(
        positives.len() as i64,
        cd.rank() as i64 * cd.coxeter() / 2,
        "positive root count must equal nh/2"
    );
    positives
}

/// Number of positive roots, `n h / 2`.
pub fn num_positive_roots(cd: &CartanData) -> usize {
    (cd.rank() as i64 * cd.coxeter() / 2) as usize
}

/// Greedy descent from a strictly dominant weight, recording reflections.
/// `first` forces the initial letter when the corresponding coordinate allows
/// it (it always does for the initial all-ones weight).
fn greedy_descent(cd: &CartanData, first: Option<usize>) -> Vec<usize> {
    let n = cd.rank();
    // Weight in fundamental-weight coordinates; s_i acts by
    // lambda_j -> lambda_j - lambda_i c_{ji}.
    let mut lambda: Vec<i64> = vec![1; n];
    let mut letters = Vec::with_capacity(num_positive_roots(cd));
    let mut forced = first;
    loop {
        let pick = match forced.take() {
            Some(i) if lambda[i] > 0 => Some(i),
            _ => (0..n).find(|&i| lambda[i] > 0),
        };
        let Some(i) = pick else { break };
        let li = lambda[i];
        for (j, x) in lambda.iter_mut().enumerate() {
            *x -= li * cd.cartan(j, i);
        }
        letters.push(i);
    }
    letters
}

/// Checks that a word of the right length acts as the longest element,
/// i.e. sends every simple root to the negative of a simple root, and
/// returns the induced vertex permutation.
fn w0_permutation(cd: &CartanData, word: &Word) -> Option<Vec<usize>> {
    let n = cd.rank();
    if word.len() != num_positive_roots(cd) {
        return None;
    }
    let mut perm = vec![0usize; n];
    for i in 0..n {
        let image = apply_word(cd, word, &RootVec::simple(n, i));
        let mut target = None;
        for (j, &x) in image.0.iter().enumerate() {
            match x {
                0 => {}
                -1 if target.is_none() => target = Some(j),
                _ => return None,
            }
        }
        perm[i] = target?;
    }
    Some(perm)
}

/// A reduced word for the longest element, computed by greedy descent with
/// smallest-index tie-breaking (deterministic output).
pub fn longest_word(cd: &CartanData) -> Word {
    let word = Word(greedy_descent(cd, None));
    assert!(
        w0_permutation(cd, &word).is_some(),
        "greedy descent must produce a reduced word for the longest element"
    );
    word
}

/// The star involution `i -> i*` defined by `w0(alpha_i) = -alpha_{i*}`.
pub fn star(cd: &CartanData) -> Vec<usize> {
    let word = longest_word(cd);
    let perm = w0_permutation(cd, &word)
        .expect("longest element must send simple roots to negated simple roots");
    for (i, &s) in perm.iter().enumerate() {
        assert_eq!(perm[s], i, "star must be an involution");
    }
    perm
}

/// Coxeter order of `s_i s_j` for distinct vertices: 2, 3, 4 or 6.
fn coxeter_order(cd: &CartanData, i: usize, j: usize) -> usize {
    match cd.cartan(i, j) * cd.cartan(j, i) {
        0 => 2,
        1 => 3,
        2 => 4,
        3 => 6,
        other => unreachable!("impossible Cartan product {other}"),
    }
}

/// All words reachable from `word` by one braid move.
fn braid_move_neighbors(cd: &CartanData, word: &Word) -> Vec<Word> {
    let letters = &word.0;
    let mut out = Vec::new();
    for start in 0..letters.len().saturating_sub(1) {
        let (a, b) = (letters[start], letters[start + 1]);
        if a == b {
            continue;
        }
        let m = coxeter_order(cd, a, b);
        if start + m > letters.len() {
            continue;
        }
        // alternating pattern a b a b ... of length m
        if (0..m).all(|k| letters[start + k] == if k % 2 == 0 { a } else { b }) {
            let mut next = letters.clone();
            for (k, slot) in next[start..start + m].iter_mut().enumerate() {
                *slot = if k % 2 == 0 { b } else { a };
            }
            out.push(Word(next));
        }
    }
    out
}

/// Breadth-first search over braid moves from `start` until `accept` holds.
fn braid_move_search(
    cd: &CartanData,
    start: &Word,
    mut accept: impl FnMut(&Word) -> bool,
) -> Option<Word> {
    if accept(start) {
        return Some(start.clone());
    }
    let mut seen: HashSet<Word> = HashSet::new();
    let mut queue: VecDeque<Word> = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start.clone());
    while let Some(word) = queue.pop_front() {
        for next in braid_move_neighbors(cd, &word) {
            if seen.contains(&next) {
                continue;
            }
            if accept(&next) {
                return Some(next);
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    None
}

/// A reduced word for the longest element whose last letter is `j`.
///
/// Small ranks search the braid-move graph exhaustively; larger ranks reverse
/// a greedy-descent word that starts with `j` (the reverse of a reduced word
/// for an involution is again one).
pub fn longest_word_ending_at(cd: &CartanData, j: usize) -> Word {
    assert!(j < cd.rank(), "index out of range");
    let word = if cd.rank() <= 4 {
        braid_move_search(cd, &longest_word(cd), |w| *w.0.last().unwrap() == j)
            .expect("every vertex is a descent of the longest element")
    } else {
        let mut letters = greedy_descent(cd, Some(j));
        letters.reverse();
        Word(letters)
    };
    assert_eq!(*word.0.last().unwrap(), j);
    assert!(
        w0_permutation(cd, &word).is_some(),
        "word must still represent the longest element"
    );
    word
}

/// Two reduced words for the longest element, distinct whenever more than one
/// exists (rank one admits a single word).
pub fn two_reduced_words(cd: &CartanData) -> (Word, Word) {
    let first = longest_word(cd);
    if let Some(second) = braid_move_neighbors(cd, &first).into_iter().next() {
        debug_assert!(w0_permutation(cd, &second).is_some());
        return (first, second);
    }
    // No move applies only in rank one.
    assert_eq!(cd.rank(), 1, "rank >= 2 always admits a braid move");
    (first.clone(), first)
}

/// Enumerates every reduced word of the longest element by saturating the
/// braid-move graph. Exponential in general; intended for small ranks.
pub fn all_reduced_words(cd: &CartanData) -> Vec<Word> {
    let start = longest_word(cd);
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue: VecDeque<Word> = VecDeque::new();
    seen.insert(start.0.clone());
    queue.push_back(start);
    while let Some(word) = queue.pop_front() {
        for next in braid_move_neighbors(cd, &word) {
            if seen.insert(next.0.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen.into_iter().map(Word).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::FiniteType;

    fn cd(s: &str) -> CartanData {
        CartanData::build(s.parse().unwrap())
    }

    #[test]
    fn reflect_examples() {
        let c2 = cd("C2");
        let a1 = RootVec::simple(2, 0);
        assert_eq!(reflect(&c2, 0, &a1), RootVec(vec![-1, 0]));
        // s_1(alpha_2) = alpha_2 + 2 alpha_1 since c_{12} = -2
        assert_eq!(reflect(&c2, 0, &RootVec::simple(2, 1)), RootVec(vec![2, 1]));
    }

    #[test]
    fn reflect_is_involution() {
        let f4 = cd("F4");
        let v = RootVec(vec![1, -2, 3, 5]);
        for i in 0..4 {
            assert_eq!(reflect(&f4, i, &reflect(&f4, i, &v)), v);
        }
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(positive_roots(&cd("A2")).len(), 3);
        assert_eq!(positive_roots(&cd("C2")).len(), 4);
        assert_eq!(positive_roots(&cd("G2")).len(), 6);
        assert_eq!(positive_roots(&cd("E8")).len(), 120);
    }

    #[test]
    fn a2_positive_roots_explicit() {
        let roots = positive_roots(&cd("A2"));
        assert_eq!(
            roots,
            vec![
                RootVec(vec![0, 1]),
                RootVec(vec![1, 0]),
                RootVec(vec![1, 1])
            ]
        );
    }

    #[test]
    fn longest_word_lengths() {
        assert_eq!(longest_word(&cd("A1")).0, vec![0]);
        assert_eq!(longest_word(&cd("A2")).0, vec![0, 1, 0]);
        assert_eq!(longest_word(&cd("G2")).len(), 6);
        assert_eq!(longest_word(&cd("E7")).len(), 63);
    }

    #[test]
    fn longest_word_sends_positives_negative() {
        for name in ["A3", "B3", "C3", "D4", "F4", "G2", "E6"] {
            let cd = cd(name);
            let word = longest_word(&cd);
            for root in positive_roots(&cd) {
                let image = apply_word(&cd, &word, &root);
                assert!(
                    image.0.iter().all(|&x| x <= 0),
                    "{name}: {root:?} -> {image:?}"
                );
            }
        }
    }

    #[test]
    fn star_values() {
        assert_eq!(star(&cd("A2")), vec![1, 0]);
        assert_eq!(star(&cd("C3")), vec![0, 1, 2]);
        // D5 swaps the fork tips (0-based 3 and 4)
        assert_eq!(star(&cd("D5")), vec![0, 1, 2, 4, 3]);
        assert_eq!(star(&cd("D4")), vec![0, 1, 2, 3]);
        assert_eq!(star(&cd("E6")), vec![5, 1, 4, 3, 2, 0]);
    }

    #[test]
    fn star_is_cartan_automorphism() {
        for t in FiniteType::all_up_to_rank(8) {
            let cd = CartanData::build(t);
            let s = star(&cd);
            for i in 0..cd.rank() {
                for j in 0..cd.rank() {
                    assert_eq!(cd.cartan(s[i], s[j]), cd.cartan(i, j), "{t}");
                }
            }
        }
    }

    #[test]
    fn reflections_preserve_symmetrized_form() {
        // Gram matrix d_i c_{ij}; check exactly on pseudo-random vectors.
        let mut state = 0x9e37u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as i64 % 7) - 3
        };
        for name in ["A4", "B4", "C4", "D5", "F4", "G2"] {
            let cd = cd(name);
            let n = cd.rank();
            let form = |x: &RootVec, y: &RootVec| -> i64 {
                let mut acc = 0;
                for i in 0..n {
                    for j in 0..n {
                        acc += x.0[i] * cd.sym_cartan(i, j) * y.0[j];
                    }
                }
                acc
            };
            for _ in 0..50 {
                let x = RootVec((0..n).map(|_| next()).collect());
                let y = RootVec((0..n).map(|_| next()).collect());
                for i in 0..n {
                    assert_eq!(
                        form(&reflect(&cd, i, &x), &reflect(&cd, i, &y)),
                        form(&x, &y),
                        "{name}"
                    );
                }
            }
        }
    }

    #[test]
    fn ending_at_examples() {
        assert_eq!(longest_word_ending_at(&cd("A1"), 0).0, vec![0]);
        let a2 = cd("A2");
        let w = longest_word_ending_at(&a2, 1);
        assert_eq!(w.0, vec![1, 0, 1]);
        // C2: a length-4 word ending in vertex 1 (0-based 0); check it is one
        // of the reduced words found by exhaustive braid-move enumeration.
        let c2 = cd("C2");
        let w = longest_word_ending_at(&c2, 0);
        assert_eq!(w.len(), 4);
        assert_eq!(*w.0.last().unwrap(), 0);
        assert!(all_reduced_words(&c2).contains(&w));
    }

    #[test]
    fn ending_at_all_vertices_large_rank() {
        for name in ["A8", "D6", "E6", "B5"] {
            let cd = cd(name);
            for j in 0..cd.rank() {
                let w = longest_word_ending_at(&cd, j);
                assert_eq!(*w.0.last().unwrap(), j, "{name}");
                assert_eq!(w.len(), num_positive_roots(&cd), "{name}");
            }
        }
    }

    #[test]
    fn two_words_are_distinct_beyond_rank_one() {
        for t in FiniteType::all_up_to_rank(6) {
            let cd = CartanData::build(t);
            let (a, b) = two_reduced_words(&cd);
            if cd.rank() > 1 {
                assert_ne!(a, b, "{t}");
            } else {
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn c2_reduced_word_enumeration() {
        // Exhaustive enumeration oracle: any reduced word for the longest
        // element of B2/C2 must alternate, so there are exactly the two
        // words 1212 and 2121.
        let words = all_reduced_words(&cd("C2"));
        assert_eq!(
            words,
            vec![Word(vec![0, 1, 0, 1]), Word(vec![1, 0, 1, 0])]
        );
    }

    #[test]
    fn coxeter_number_cross_check() {
        // h = 2 |positive roots| / n, with h from the static table.
        for t in FiniteType::all_up_to_rank(8) {
            let cd = CartanData::build(t);
            let count = positive_roots(&cd).len() as i64;
            assert_eq!(2 * count, cd.coxeter() * cd.rank() as i64, "{t}");
        }
    }
}
