//! Braid-group action on the deformed root lattice.
//!
//! The generator attached to vertex `i` acts on the simple-root basis by
//! `T_i^{±1} alpha_j = alpha_j - q^{∓d_i} t^{±1} C_{ij}(q,t) alpha_i`, and the
//! full twist by the longest element acts as the scalar `-q^{-r h^v} t^h`
//! composed with the star relabeling. Prefix pairings along a reduced word
//! recover projective filtration multiplicities, graded dimensions and a
//! word-combinatorial expansion of the inverse deformed Cartan matrix.

use crate::deform::DeformedCartan;
use crate::poly::{BiLaurent, Coeff, Exp};
use crate::report::CheckReport;
use crate::weyl::{self, Word};

/// Orientation of a braid letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// Exponents of the scalar `q^{∓d_i} t^{±1}` in front of `C_{ij}`.
    fn twist(self, di: i64) -> (Exp, Exp) {
        match self {
            Sign::Plus => (-di, 1),
            Sign::Minus => (di, -1),
        }
    }
}

/// Element of the deformed root lattice written in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    pub coords: Vec<BiLaurent>,
}

impl WeightVector {
    pub fn zero(n: usize) -> Self {
        WeightVector {
            coords: vec![BiLaurent::zero(); n],
        }
    }

    /// The simple root `alpha_i` as a lattice vector.
    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.coords[i] = BiLaurent::one();
        v
    }
}

/// Pairing against the dual basis element of `alpha_i`: extracts the i-th
/// coordinate.
pub fn pair_fund(w: &WeightVector, i: usize) -> BiLaurent {
    w.coords[i].clone()
}

/// Scalar multipliers `q^{∓d_i} t^{±1} C_{ij}(q,t)` of the row acted on by
/// the letter `(i, sign)`; entry `j` is zero when `C_{ij}` is.
fn letter_row(dc: &DeformedCartan, i: usize, sign: Sign) -> Vec<BiLaurent> {
    let cd = dc.cartan_data();
    let (qe, te) = sign.twist(cd.sym(i));
    (0..cd.rank())
        .map(|j| dc.entry(i, j).mul_monomial(qe, te, &Coeff::from(1)))
        .collect()
}

/// Applies one braid generator (or its inverse) to a lattice vector.
pub fn apply_t(dc: &DeformedCartan, i: usize, sign: Sign, w: &WeightVector) -> WeightVector {
    let row = letter_row(dc, i, sign);
    let mut out = w.clone();
    let mut acc = BiLaurent::zero();
    for (j, m) in row.iter().enumerate() {
        if !m.is_zero() && !w.coords[j].is_zero() {
            acc.add_mul_assign(m, &w.coords[j]);
        }
    }
    out.coords[i] -= &acc;
    out
}

/// Applies a word of braid generators; the rightmost letter acts first.
pub fn apply_word(dc: &DeformedCartan, word: &Word, sign: Sign, w: &WeightVector) -> WeightVector {
    let mut out = w.clone();
    for &i in word.letters().iter().rev() {
        out = apply_t(dc, i, sign, &out);
    }
    out
}

/// Deformed symmetric pairing with Gram matrix `[d_i] C_{ij}(q,t)`.
pub fn pairing(dc: &DeformedCartan, a: &WeightVector, b: &WeightVector) -> BiLaurent {
    let n = dc.rank();
    let mut acc = BiLaurent::zero();
    for i in 0..n {
        if a.coords[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if b.coords[j].is_zero() {
                continue;
            }
            let g = dc.gram(i, j);
            if g.is_zero() {
                continue;
            }
            acc.add_mul_assign(&(&a.coords[i] * &g), &b.coords[j]);
        }
    }
    acc
}

/// Checks that the word acts as the longest element should: every
/// `alpha_j` maps to `-q^{-r h^v} t^h alpha_{j*}`, exactly.
pub fn verify_tw0(dc: &DeformedCartan, word: &Word) -> CheckReport {
    let cd = dc.cartan_data();
    let n = cd.rank();
    let star = weyl::star(cd);
    let mut report = CheckReport::new();
    report.check(word.len() == weyl::num_positive_roots(cd), || {
        format!("word length {} is not l(w0)", word.len())
    });
    for j in 0..n {
        let image = apply_word(dc, word, Sign::Plus, &WeightVector::simple(n, j));
        let mut expected = WeightVector::zero(n);
        expected.coords[star[j]] = BiLaurent::monomial(-cd.rhv(), cd.coxeter(), -Coeff::from(1));
        report.check(image == expected, || {
            format!(
                "full twist fails on alpha_{}: got ({})",
                j + 1,
                image
                    .coords
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        });
    }
    report
}

/// Prefix pairings along a reduced word: entry `k` holds the word's k-th
/// letter `i_k` together with the coordinates of
/// `T_{i_1}^{s} ... T_{i_{k-1}}^{s} alpha_{i_k}`.
///
/// Computed incrementally, one letter per step: the running state is the
/// column family of the operator product in the simple-root basis, and
/// appending a letter updates only the columns its Cartan row touches.
pub fn prefix_columns(dc: &DeformedCartan, word: &Word, sign: Sign) -> Vec<(usize, WeightVector)> {
    let n = dc.rank();
    let mut cols: Vec<WeightVector> = (0..n).map(|j| WeightVector::simple(n, j)).collect();
    let mut out = Vec::with_capacity(word.len());
    for &i in word.letters() {
        out.push((i, cols[i].clone()));
        // right-multiply the running product by T_i^{s}
        let row = letter_row(dc, i, sign);
        let pivot = cols[i].clone();
        for (j, m) in row.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            for x in 0..n {
                if !pivot.coords[x].is_zero() {
                    let mut updated = std::mem::take(&mut cols[j].coords[x]);
                    updated.sub_mul_assign(m, &pivot.coords[x]);
                    cols[j].coords[x] = updated;
                }
            }
        }
    }
    out
}

/// Multiplicities of the filtration of the i-th projective along the word:
/// the list of `(i_k, (dual alpha_i, T-prefix alpha_{i_k}))` pairings.
pub fn projective_filtration(
    dc: &DeformedCartan,
    word: &Word,
    i: usize,
) -> Vec<(usize, BiLaurent)> {
    prefix_columns(dc, word, Sign::Plus)
        .into_iter()
        .map(|(letter, col)| (letter, col.coords[i].clone()))
        .collect()
}

/// Bigraded dimension of `e_i Ibar_j` computed from the word: the prefix
/// pairings in positive letters accumulate `dim_{q^{-1},t^{-1}}`, so the
/// result is returned through the bar involution.
pub fn ibar_dim_braid(dc: &DeformedCartan, word: &Word, i: usize, j: usize) -> BiLaurent {
    ibar_dim_matrix(dc, word)[i][j].clone()
}

/// Full matrix of `dim_{q,t} e_i Ibar_j` from a single orbit pass.
pub fn ibar_dim_matrix(dc: &DeformedCartan, word: &Word) -> Vec<Vec<BiLaurent>> {
    let n = dc.rank();
    let mut acc = vec![vec![BiLaurent::zero(); n]; n];
    for (letter, col) in prefix_columns(dc, word, Sign::Plus) {
        for (i, c) in col.coords.iter().enumerate() {
            acc[i][letter] += c;
        }
    }
    acc.into_iter()
        .map(|row| row.into_iter().map(|p| p.bar()).collect())
        .collect()
}

/// Entry of the inverse deformed Cartan matrix from the word combinatorics,
/// truncated to q-order `order`.
pub fn ctilde_braid(
    dc: &DeformedCartan,
    word: &Word,
    i: usize,
    j: usize,
    order: Exp,
) -> BiLaurent {
    ctilde_braid_matrix(dc, word, order)[i][j].clone()
}

/// All entries of the inverse matrix from the word combinatorics.
///
/// One period of inverse-letter prefix pairings is computed directly; the
/// infinite continuation (the word extended by `i_{k+l} = i_k*`) is closed
/// with the full-twist scalar: period `p` contributes the base sums at the
/// star-relabeled column, scaled by `(-q^{r h^v} t^{-h})^p`.
pub fn ctilde_braid_matrix(dc: &DeformedCartan, word: &Word, order: Exp) -> Vec<Vec<BiLaurent>> {
    let cd = dc.cartan_data();
    let n = cd.rank();
    let star = weyl::star(cd);
    let mut base = vec![vec![BiLaurent::zero(); n]; n];
    for (letter, col) in prefix_columns(dc, word, Sign::Minus) {
        for (i, c) in col.coords.iter().enumerate() {
            base[i][letter] += c;
        }
    }
    let rhv = cd.rhv();
    let h = cd.coxeter();
    let periods = (order / rhv + 1).max(0);
    let mut out = vec![vec![BiLaurent::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = BiLaurent::zero();
            let mut col = j;
            for p in 0..=periods {
                let sign = if p % 2 == 0 {
                    Coeff::from(1)
                } else {
                    Coeff::from(-1)
                };
                acc += &base[i][col].mul_monomial(p * rhv, -p * h, &sign);
                col = star[col];
            }
            out[i][j] = acc.mul_monomial(cd.sym(j), -1, &Coeff::from(1)).truncate_q(order);
        }
    }
    out
}

/// Verifies the defining braid relations by acting on every simple root.
pub fn check_braid_relations(dc: &DeformedCartan) -> CheckReport {
    let cd = dc.cartan_data();
    let n = cd.rank();
    let mut report = CheckReport::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let m = match cd.cartan(i, j) * cd.cartan(j, i) {
                0 => 2,
                1 => 3,
                2 => 4,
                3 => 6,
                other => unreachable!("impossible Cartan product {other}"),
            };
            let alternating = |a: usize, b: usize| -> Word {
                Word((0..m).map(|k| if k % 2 == 0 { a } else { b }).collect())
            };
            let lhs = alternating(i, j);
            let rhs = alternating(j, i);
            for k in 0..n {
                let v = WeightVector::simple(n, k);
                report.check(
                    apply_word(dc, &lhs, Sign::Plus, &v) == apply_word(dc, &rhs, Sign::Plus, &v),
                    || format!("braid relation ({},{}) of order {m} fails on alpha_{}", i + 1, j + 1, k + 1),
                );
            }
        }
    }
    report
}

/// Fundamental-coordinate action of `T_i`: with `lambda` written in the
/// deformed fundamental weights, the update is
/// `mu_m = lambda_m - lambda_i q^{-d_i} t C_{mi}` and `mu_i = -q^{-2d_i} t^2 lambda_i`.
/// Exposed for orbit tests of the coefficient cone `Z[q^{-1}, t]`.
pub fn apply_t_fund_coords(dc: &DeformedCartan, i: usize, fund: &[BiLaurent]) -> Vec<BiLaurent> {
    let cd = dc.cartan_data();
    let mut out = fund.to_vec();
    let li = fund[i].clone();
    for (m, slot) in out.iter_mut().enumerate() {
        let factor = dc.entry(m, i).mul_monomial(-cd.sym(i), 1, &Coeff::from(1));
        slot.sub_mul_assign(&factor, &li);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{CartanData, FiniteType};
    use crate::deform::{build_cqt, default_order, invert};

    fn dc(s: &str) -> DeformedCartan {
        build_cqt(&CartanData::build(s.parse().unwrap()))
    }

    fn p(s: &str) -> BiLaurent {
        s.parse().unwrap()
    }

    #[test]
    fn t_on_own_simple_root() {
        for name in ["A2", "C2", "G2"] {
            let dc = dc(name);
            let cd = dc.cartan_data().clone();
            for i in 0..cd.rank() {
                let image = apply_t(&dc, i, Sign::Plus, &WeightVector::simple(cd.rank(), i));
                let mut expected = WeightVector::zero(cd.rank());
                expected.coords[i] = BiLaurent::monomial(-2 * cd.sym(i), 2, -Coeff::from(1));
                assert_eq!(image, expected, "{name} i={i}");
            }
        }
    }

    #[test]
    fn c2_t1_on_alpha2() {
        let dc = dc("C2");
        let image = apply_t(&dc, 0, Sign::Plus, &WeightVector::simple(2, 1));
        assert_eq!(image.coords[0], p("t + q^-2*t"));
        assert_eq!(image.coords[1], BiLaurent::one());
        // dual-basis pairing reads off the second coordinate
        assert_eq!(pair_fund(&image, 1), BiLaurent::one());
        assert_eq!(pair_fund(&WeightVector::simple(2, 0), 0), BiLaurent::one());
        assert_eq!(pair_fund(&WeightVector::simple(2, 1), 0), BiLaurent::zero());
    }

    #[test]
    fn inverse_letter_inverts() {
        let dc = dc("F4");
        let n = dc.rank();
        // pseudo-random lattice vectors
        let mut state = 1u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            (state >> 60) as i64 - 8
        };
        for _ in 0..20 {
            let v = WeightVector {
                coords: (0..n)
                    .map(|_| {
                        BiLaurent::monomial(next() % 3, next() % 3, Coeff::from(next()))
                            + BiLaurent::monomial(next() % 2, next() % 2, Coeff::from(next()))
                    })
                    .collect(),
            };
            for i in 0..n {
                let back = apply_t(&dc, i, Sign::Minus, &apply_t(&dc, i, Sign::Plus, &v));
                assert_eq!(back, v);
            }
        }
    }

    #[test]
    fn tw0_small_types() {
        for name in ["A1", "A2", "C2", "G2", "B3"] {
            let dcm = dc(name);
            let word = weyl::longest_word(dcm.cartan_data());
            let report = verify_tw0(&dcm, &word);
            assert!(report.is_ok(), "{name}: {:?}", report.failures);
        }
    }

    #[test]
    fn tw0_scalar_values() {
        // rank one: T_1 alpha_1 = -q^{-2} t^2 with r h^v = 2, h = 2
        let a1 = dc("A1");
        let report = verify_tw0(&a1, &Word(vec![0]));
        assert!(report.is_ok());
        // C2 scalar -q^{-6} t^4, G2 scalar -q^{-12} t^6: covered by the
        // expected monomial inside verify_tw0; spot-check degrees here.
        assert_eq!(dc("C2").cartan_data().rhv(), 6);
        assert_eq!(dc("C2").cartan_data().coxeter(), 4);
        assert_eq!(dc("G2").cartan_data().rhv(), 12);
        assert_eq!(dc("G2").cartan_data().coxeter(), 6);
    }

    #[test]
    fn braid_relations_up_to_rank_five() {
        for t in FiniteType::all_up_to_rank(5) {
            let dcm = build_cqt(&CartanData::build(t));
            let report = check_braid_relations(&dcm);
            assert!(report.is_ok(), "{t}: {:?}", report.failures);
        }
    }

    #[test]
    fn pairing_is_t_self_adjoint() {
        let mut state = 7u64;
        let mut next = move || {
            state = state.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
            (state >> 59) as i64 - 10
        };
        for name in ["A3", "B3", "C3", "G2"] {
            let dcm = dc(name);
            let n = dcm.rank();
            for _ in 0..10 {
                let mk = |next: &mut dyn FnMut() -> i64| WeightVector {
                    coords: (0..n)
                        .map(|_| BiLaurent::monomial(next() % 3, next() % 3, Coeff::from(next())))
                        .collect(),
                };
                let a = mk(&mut next);
                let b = mk(&mut next);
                for i in 0..n {
                    let lhs = pairing(&dcm, &apply_t(&dcm, i, Sign::Plus, &a), &b);
                    let rhs = pairing(&dcm, &a, &apply_t(&dcm, i, Sign::Plus, &b));
                    assert_eq!(lhs, rhs, "{name} i={i}");
                }
            }
        }
    }

    #[test]
    fn quadrant_cone_is_preserved() {
        // Orbits of fundamental-cone vectors keep coefficients in Z[q^-1, t].
        let in_cone = |coords: &[BiLaurent]| coords.iter().all(|c| c.all_terms(|u, v| u <= 0 && v >= 0));
        for name in ["A2", "C2", "B3", "G2", "F4"] {
            let dcm = dc(name);
            let n = dcm.rank();
            let word = weyl::longest_word(dcm.cartan_data());
            for j in 0..n {
                let mut fund = vec![BiLaurent::zero(); n];
                fund[j] = BiLaurent::one();
                assert!(in_cone(&fund));
                for &i in word.letters().iter().rev() {
                    fund = apply_t_fund_coords(&dcm, i, &fund);
                    assert!(in_cone(&fund), "{name} leaves the cone");
                }
            }
        }
    }

    #[test]
    fn a1_ibar_dimension() {
        let a1 = dc("A1");
        let word = Word(vec![0]);
        assert_eq!(ibar_dim_braid(&a1, &word, 0, 0), BiLaurent::one());
    }

    #[test]
    fn c2_ibar_q_specialization() {
        let c2 = dc("C2");
        let word = weyl::longest_word(c2.cartan_data());
        let dim = ibar_dim_braid(&c2, &word, 0, 0);
        assert_eq!(dim.spec_t1(), p("1 + q^4"));
    }

    #[test]
    fn ibar_word_independence() {
        for name in ["A3", "C3", "G2", "D4"] {
            let dcm = dc(name);
            let (w1, w2) = weyl::two_reduced_words(dcm.cartan_data());
            assert_eq!(
                ibar_dim_matrix(&dcm, &w1),
                ibar_dim_matrix(&dcm, &w2),
                "{name}"
            );
        }
    }

    #[test]
    fn bar_swaps_letter_orientation() {
        // Prefix pairings in positive letters are the bar of the pairings in
        // inverse letters, position by position.
        for name in ["A2", "C2", "G2"] {
            let dcm = dc(name);
            let word = weyl::longest_word(dcm.cartan_data());
            let pos = prefix_columns(&dcm, &word, Sign::Plus);
            let neg = prefix_columns(&dcm, &word, Sign::Minus);
            for ((la, ca), (lb, cb)) in pos.iter().zip(neg.iter()) {
                assert_eq!(la, lb);
                for i in 0..dcm.rank() {
                    assert_eq!(ca.coords[i].bar(), cb.coords[i], "{name}");
                }
            }
        }
    }

    #[test]
    fn a1_ctilde_series() {
        let a1 = dc("A1");
        let series = ctilde_braid(&a1, &Word(vec![0]), 0, 0, 7);
        assert_eq!(series, p("q*t^-1 - q^3*t^-3 + q^5*t^-5 - q^7*t^-7"));
    }

    #[test]
    fn ctilde_leading_term() {
        for name in ["A2", "C2", "B3", "G2"] {
            let dcm = dc(name);
            let cd = dcm.cartan_data().clone();
            let word = weyl::longest_word(&cd);
            let mat = ctilde_braid_matrix(&dcm, &word, default_order(&cd));
            for i in 0..cd.rank() {
                for j in 0..cd.rank() {
                    let min_q = mat[i][j].min_q();
                    if i == j {
                        assert_eq!(min_q, Some(cd.sym(i)), "{name}");
                        assert_eq!(mat[i][j].coeff(cd.sym(i), -1), Coeff::from(1));
                    } else if let Some(m) = min_q {
                        assert!(m > cd.sym(i), "{name}");
                    }
                }
            }
        }
    }

    #[test]
    fn pipelines_agree_on_small_types() {
        for name in ["A1", "A2", "C2", "B3", "G2"] {
            let dcm = dc(name);
            let cd = dcm.cartan_data().clone();
            let order = default_order(&cd);
            let tab = invert(&dcm, order);
            let word = weyl::longest_word(&cd);
            let mat = ctilde_braid_matrix(&dcm, &word, order);
            for i in 0..cd.rank() {
                for j in 0..cd.rank() {
                    assert_eq!(
                        mat[i][j],
                        tab.entry_series(i, j),
                        "{name} entry ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn projective_filtration_rank_one() {
        let a1 = dc("A1");
        let filt = projective_filtration(&a1, &Word(vec![0]), 0);
        assert_eq!(filt, vec![(0, BiLaurent::one())]);
    }

    #[test]
    fn filtration_grouping_matches_ibar() {
        // Summing bars of multiplicities grouped by letter value recovers the
        // graded dimension matrix.
        for name in ["C2", "A3", "G2"] {
            let dcm = dc(name);
            let cd = dcm.cartan_data().clone();
            let word = weyl::longest_word(&cd);
            let mat = ibar_dim_matrix(&dcm, &word);
            for i in 0..cd.rank() {
                let mut grouped = vec![BiLaurent::zero(); cd.rank()];
                for (letter, mult) in projective_filtration(&dcm, &word, i) {
                    grouped[letter] += &mult.bar();
                }
                for j in 0..cd.rank() {
                    assert_eq!(grouped[j], mat[i][j], "{name}");
                }
            }
        }
    }

    #[test]
    fn filtration_multiplicities_nonnegative() {
        for name in ["A4", "B3", "C3", "D4", "F4", "G2"] {
            let dcm = dc(name);
            let word = weyl::longest_word(dcm.cartan_data());
            for i in 0..dcm.rank() {
                for (letter, mult) in projective_filtration(&dcm, &word, i) {
                    assert!(mult.is_nonneg(), "{name} i={i} letter={letter}: {mult}");
                }
            }
        }
    }

    #[test]
    fn ibar_cone_bounds() {
        // q^{d_j} t^{-1} dim e_i Ibar_j lies in
        // q^{d_i} t^{-1} Z[q, t^{-1}]  intersect  q^{rh^v - d_i} t^{1-h} Z[q^{-1}, t].
        for name in ["A2", "C2", "B3", "G2", "F4"] {
            let dcm = dc(name);
            let cd = dcm.cartan_data().clone();
            let word = weyl::longest_word(&cd);
            let mat = ibar_dim_matrix(&dcm, &word);
            for i in 0..cd.rank() {
                for j in 0..cd.rank() {
                    let shifted = mat[i][j].mul_monomial(cd.sym(j), -1, &Coeff::from(1));
                    assert!(
                        shifted.all_terms(|u, v| u >= cd.sym(i) && v <= -1),
                        "{name} lower cone"
                    );
                    assert!(
                        shifted.all_terms(|u, v| {
                            u <= cd.rhv() - cd.sym(i) && v >= 1 - cd.coxeter()
                        }),
                        "{name} upper cone"
                    );
                }
            }
        }
    }
}
