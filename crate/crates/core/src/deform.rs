//! The (q,t)-deformed Cartan matrix `C(q,t)` and its inverse expanded as a
//! truncated formal series.
//!
//! Writing `C(q,t) = (id - A) q^{-D} t` with `A` supported in
//! `q t^{-1} Z[q, t^{-1}]`, the inverse is `q^D t^{-1} (id + sum_k A^k)`.
//! The geometric series is evaluated exactly to a chosen q-order by the
//! slice recurrence `S_u = sum_w A_w S_{u-w}` over q-degrees, which keeps
//! every intermediate coefficient equal to a final expansion coefficient.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::cartan::CartanData;
use crate::poly::{BiLaurent, Coeff, Exp};
use crate::report::CheckReport;
use crate::weyl;

/// The matrix `C(q,t)`: diagonal `q^{d_i} t^{-1} + q^{-d_i} t`, off-diagonal
/// the q-integer `[c_{ij}]`.
#[derive(Debug, Clone)]
pub struct DeformedCartan {
    cd: CartanData,
    entries: Vec<Vec<BiLaurent>>,
}

/// Builds `C(q,t)` from the Cartan datum.
pub fn build_cqt(cd: &CartanData) -> DeformedCartan {
    let n = cd.rank();
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BiLaurent::qt(cd.sym(i), -1) + BiLaurent::qt(-cd.sym(i), 1)
                    } else {
                        BiLaurent::qint(cd.cartan(i, j))
                    }
                })
                .collect()
        })
        .collect();
    DeformedCartan {
        cd: cd.clone(),
        entries,
    }
}

impl DeformedCartan {
    pub fn cartan_data(&self) -> &CartanData {
        &self.cd
    }

    pub fn rank(&self) -> usize {
        self.cd.rank()
    }

    pub fn entry(&self, i: usize, j: usize) -> &BiLaurent {
        &self.entries[i][j]
    }

    /// Gram matrix entry `[d_i] C_{ij}(q,t)` of the deformed pairing.
    pub fn gram(&self, i: usize, j: usize) -> BiLaurent {
        &BiLaurent::qint(self.cd.sym(i)) * &self.entries[i][j]
    }
}

/// Truncated expansion coefficients of the inverse matrix: for each pair
/// `(i, j)` the integers `c~_{ij}(u, v)` with `0 <= u <= order`, stored
/// densely in `u` and sparsely in `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CTildeTable {
    cd: CartanData,
    order: Exp,
    /// `data[i][j][u]` maps `v` to the coefficient of `q^u t^v`.
    data: Vec<Vec<Vec<BTreeMap<Exp, Coeff>>>>,
}

/// Default truncation order `2 r h^v + 2`: one full quasi-period beyond the
/// positivity window.
pub fn default_order(cd: &CartanData) -> Exp {
    2 * cd.rhv() + 2
}

/// Expands the inverse of `C(q,t)` as a series, exactly up to q-order `order`.
pub fn invert(dc: &DeformedCartan, order: Exp) -> CTildeTable {
    assert!(order >= 0, "truncation order must be nonnegative");
    let cd = dc.cartan_data();
    let n = cd.rank();

    // A = id - C(q,t) q^D t^{-1}, sliced by q-degree. Every slice entry is a
    // Laurent polynomial in t alone (stored with q-exponent zero).
    let mut max_w: Exp = 0;
    let mut a_full = vec![vec![BiLaurent::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut a = dc.entry(i, j).mul_monomial(cd.sym(j), -1, &-Coeff::from(1));
            if i == j {
                a += &BiLaurent::one();
            }
            debug_assert!(
                a.all_terms(|u, v| u >= 1 && v <= -1),
                "A must lie in q t^-1 Z[q, t^-1]"
            );
            if let Some(m) = a.max_q() {
                max_w = max_w.max(m);
            }
            a_full[i][j] = a;
        }
    }
    let slice = |w: Exp| -> Vec<Vec<BiLaurent>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut s = BiLaurent::zero();
                        for (&(u, v), c) in a_full[i][j].iter() {
                            if u == w {
                                s += &BiLaurent::monomial(0, v, c.clone());
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect()
    };
    let a_slices: Vec<Vec<Vec<BiLaurent>>> = (1..=max_w).map(slice).collect();

    // S_u = sum_{w} A_w S_{u-w}; S_0 = id. Each S_u is again t-only.
    let top = (order - 1).max(0) as usize; // row i consumes S_{u - d_i}, d_i >= 1
    let mut s_slices: Vec<Vec<Vec<BiLaurent>>> = Vec::with_capacity(top + 1);
    let mut s0 = vec![vec![BiLaurent::zero(); n]; n];
    for (i, row) in s0.iter_mut().enumerate() {
        row[i] = BiLaurent::one();
    }
    s_slices.push(s0);
    for u in 1..=top {
        let mut su = vec![vec![BiLaurent::zero(); n]; n];
        for w in 1..=max_w.min(u as Exp) {
            let aw = &a_slices[(w - 1) as usize];
            let sprev = &s_slices[u - w as usize];
            for i in 0..n {
                for (k, awik) in aw[i].iter().enumerate() {
                    if awik.is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        if !sprev[k][j].is_zero() {
                            su[i][j].add_mul_assign(awik, &sprev[k][j]);
                        }
                    }
                }
            }
        }
        s_slices.push(su);
    }

    // c~_{ij}(u, v) is the coefficient of t^{v+1} in S_{u - d_i}[i][j].
    let mut data = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut per_u: Vec<BTreeMap<Exp, Coeff>> = vec![BTreeMap::new(); order as usize + 1];
            for u in 0..=order {
                let s_index = u - cd.sym(i);
                if s_index < 0 || s_index as usize >= s_slices.len() {
                    continue;
                }
                let slot = &mut per_u[u as usize];
                for (&(_, v), c) in s_slices[s_index as usize][i][j].iter() {
                    slot.insert(v - 1, c.clone());
                }
            }
            data[i][j] = per_u;
        }
    }
    CTildeTable {
        cd: cd.clone(),
        order,
        data,
    }
}

impl CTildeTable {
    pub fn cartan_data(&self) -> &CartanData {
        &self.cd
    }

    pub fn order(&self) -> Exp {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.cd.rank()
    }

    /// Bigraded coefficient `c~_{ij}(u, v)`; `u` must lie in `0..=order`.
    pub fn coeff(&self, i: usize, j: usize, u: Exp, v: Exp) -> Coeff {
        assert!(
            (0..=self.order).contains(&u),
            "q-exponent {u} outside table order {}",
            self.order
        );
        self.data[i][j][u as usize]
            .get(&v)
            .cloned()
            .unwrap_or_else(Coeff::zero)
    }

    /// Graded coefficient `c~_{ij}(u) = sum_v c~_{ij}(u, v)`.
    pub fn coeff_q(&self, i: usize, j: usize, u: Exp) -> Coeff {
        assert!(
            (0..=self.order).contains(&u),
            "q-exponent {u} outside table order {}",
            self.order
        );
        self.data[i][j][u as usize].values().sum()
    }

    /// All stored t-exponents for a fixed `(i, j, u)`.
    pub fn t_support(&self, i: usize, j: usize, u: Exp) -> Vec<Exp> {
        self.data[i][j][u as usize].keys().copied().collect()
    }

    /// The truncated series entry as a polynomial value.
    pub fn entry_series(&self, i: usize, j: usize) -> BiLaurent {
        let mut out = BiLaurent::zero();
        for (u, slot) in self.data[i][j].iter().enumerate() {
            for (&v, c) in slot {
                out += &BiLaurent::monomial(u as Exp, v, c.clone());
            }
        }
        out
    }

    /// t-specialized entry truncated to the positivity window:
    /// `sum_{u=0}^{r h^v} c~_{ij}(u) q^u`. Requires `order >= r h^v`.
    pub fn q_window_sum(&self, i: usize, j: usize) -> BiLaurent {
        let rhv = self.cd.rhv();
        assert!(self.order >= rhv, "order must cover the window");
        let mut out = BiLaurent::zero();
        for u in 0..=rhv {
            out += &BiLaurent::monomial(u, 0, self.coeff_q(i, j, u));
        }
        out
    }

    /// Leading-term shape of the expansion: entries vanish for `u <= d_i`
    /// or `v >= -1` except for the single delta term at `(d_i, -1)`.
    pub fn check_leading_shape(&self) -> CheckReport {
        let mut report = CheckReport::new();
        let n = self.rank();
        for i in 0..n {
            for j in 0..n {
                for u in 0..=self.order {
                    for (&v, c) in &self.data[i][j][u as usize] {
                        if u == self.cd.sym(i) && v == -1 {
                            let expected = Coeff::from(i64::from(i == j));
                            report.check(*c == expected, || {
                                format!("leading delta fails at i={i} j={j}: {c}")
                            });
                        } else if u <= self.cd.sym(i) || v >= -1 {
                            report.check(c.is_zero(), || {
                                format!("vanishing region violated at i={i} j={j} u={u} v={v}: {c}")
                            });
                        }
                    }
                }
                // The delta term itself must be present.
                report.check(
                    self.coeff(i, j, self.cd.sym(i), -1) == Coeff::from(i64::from(i == j)),
                    || format!("c~({},{}) misses the delta term", i, j),
                );
            }
        }
        report
    }

    /// Verifies the seven coefficient properties exactly: bigraded
    /// quasi-periodicity, positivity and palindromicity on the window, their
    /// q-specialized versions, and the vanishing window near multiples of
    /// `r h^v`. Requires `order >= 2 r h^v`.
    pub fn check_properties(&self) -> CheckReport {
        let rhv = self.cd.rhv();
        let h = self.cd.coxeter();
        assert!(
            self.order >= 2 * rhv,
            "order {} too small: properties need at least {}",
            self.order,
            2 * rhv
        );
        let star = weyl::star(&self.cd);
        let mut report = CheckReport::new();
        let n = self.rank();
        for i in 0..n {
            for j in 0..n {
                let js = star[j];
                // (1) bigraded quasi-periodicity: c(u, v) = -c*(u + rhv, v - h)
                for u in 0..=(self.order - rhv) {
                    let mut vs: Vec<Exp> = self.data[i][j][u as usize]
                        .keys()
                        .copied()
                        .filter(|&v| v <= 0)
                        .collect();
                    vs.extend(
                        self.data[i][js][(u + rhv) as usize]
                            .keys()
                            .map(|&v| v + h)
                            .filter(|&v| v <= 0),
                    );
                    vs.sort_unstable();
                    vs.dedup();
                    for v in vs {
                        report.check(
                            self.coeff(i, j, u, v) == -self.coeff(i, js, u + rhv, v - h),
                            || format!("bigraded period fails at i={i} j={j} u={u} v={v}"),
                        );
                    }
                }
                for u in 0..=rhv {
                    // (2) bigraded positivity on the window
                    for (&v, c) in &self.data[i][j][u as usize] {
                        if (-h..=0).contains(&v) {
                            report.check(c >= &Coeff::zero(), || {
                                format!("bigraded positivity fails at i={i} j={j} u={u} v={v}")
                            });
                        }
                    }
                    // (3) bigraded palindrome across the window
                    for v in -h..=0 {
                        report.check(
                            self.coeff(i, j, rhv - u, -h - v) == self.coeff(i, js, u, v),
                            || format!("bigraded palindrome fails at i={i} j={j} u={u} v={v}"),
                        );
                    }
                    // (5) q-version positivity
                    report.check(self.coeff_q(i, j, u) >= Coeff::zero(), || {
                        format!("q positivity fails at i={i} j={j} u={u}")
                    });
                    // (6) q-version palindrome
                    report.check(self.coeff_q(i, j, rhv - u) == self.coeff_q(i, js, u), || {
                        format!("q palindrome fails at i={i} j={j} u={u}")
                    });
                }
                // (4) q-version quasi-periodicity
                for u in 0..=(self.order - rhv) {
                    report.check(self.coeff_q(i, j, u + rhv) == -self.coeff_q(i, js, u), || {
                        format!("q period fails at i={i} j={j} u={u}")
                    });
                }
                // (7) vanishing window near multiples of r h^v. Iterating the
                // quasi-periodicity k times compares against the k-fold star
                // of j, so the delta alternates between j and j* with k.
                for u in 0..=self.order {
                    let near = (0..=(self.order / rhv + 1)).any(|k| {
                        let jk = if k % 2 == 0 { j } else { js };
                        (u - k * rhv).abs() <= self.cd.sym(i) - i64::from(i == jk)
                    });
                    if near {
                        report.check(self.coeff_q(i, j, u).is_zero(), || {
                            format!("vanishing window fails at i={i} j={j} u={u}")
                        });
                    }
                }
            }
        }
        report
    }
}
