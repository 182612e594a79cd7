//! Sparse exact arithmetic for bivariate Laurent polynomials in `q` and `t`.
//!
//! Coefficients are arbitrary-size integers and values are kept in canonical
//! sparse form: no zero coefficient is ever stored, so structural equality is
//! semantic equality. Univariate Laurent polynomials in `q` are the special
//! case of t-degree zero.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Integer coefficient type used throughout the crate.
pub type Coeff = BigInt;

/// Exponent type for both variables. Paper-scale exponents stay far below
/// the overflow range; additions are checked in debug builds.
pub type Exp = i64;

#[inline]
fn exp_add(a: Exp, b: Exp) -> Exp {
    debug_assert!(a.checked_add(b).is_some(), "exponent overflow");
    a + b
}

/// An element of Z[q^{±1}, t^{±1}] stored as a map from exponent pairs
/// `(u, v)` (meaning `q^u t^v`) to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiLaurent {
    terms: BTreeMap<(Exp, Exp), Coeff>,
}

impl BiLaurent {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::monomial(0, 0, Coeff::one())
    }

    /// A single term `c * q^u * t^v`. Zero coefficients give the zero value.
    pub fn monomial(u: Exp, v: Exp, c: Coeff) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((u, v), c);
        }
        Self { terms }
    }

    /// Constant polynomial from an integer.
    pub fn constant(c: i64) -> Self {
        Self::monomial(0, 0, Coeff::from(c))
    }

    /// `q^u` as a value.
    pub fn qpow(u: Exp) -> Self {
        Self::monomial(u, 0, Coeff::one())
    }

    /// `q^u t^v` as a value.
    pub fn qt(u: Exp, v: Exp) -> Self {
        Self::monomial(u, v, Coeff::one())
    }

    /// The q-integer `[k] = (q^k - q^{-k}) / (q - q^{-1})`, i.e.
    /// `q^{k-1} + q^{k-3} + ... + q^{1-k}` for positive `k`, zero for `k = 0`
    /// and `-[−k]` for negative `k`.
    pub fn qint(k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        let sign = if k > 0 { Coeff::one() } else { -Coeff::one() };
        let k = k.abs();
        let mut terms = BTreeMap::new();
        let mut e = 1 - k;
        while e < k {
            terms.insert((e, 0), sign.clone());
            e += 2;
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `q^u t^v` (zero when absent).
    pub fn coeff(&self, u: Exp, v: Exp) -> Coeff {
        self.terms.get(&(u, v)).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Iterate terms in ascending `(u, v)` order.
    pub fn iter(&self) -> impl Iterator<Item = (&(Exp, Exp), &Coeff)> {
        self.terms.iter()
    }

    /// Smallest q-exponent with a nonzero term.
    pub fn min_q(&self) -> Option<Exp> {
        self.terms.keys().map(|&(u, _)| u).min()
    }

    /// Largest q-exponent with a nonzero term.
    pub fn max_q(&self) -> Option<Exp> {
        self.terms.keys().map(|&(u, _)| u).max()
    }

    /// True when every term satisfies the predicate on its exponent pair.
    pub fn all_terms(&self, mut pred: impl FnMut(Exp, Exp) -> bool) -> bool {
        self.terms.keys().all(|&(u, v)| pred(u, v))
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonneg(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    fn insert_add(&mut self, key: (Exp, Exp), c: &Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    /// In-place `self += m * x`, accumulating term products directly.
    pub fn add_mul_assign(&mut self, m: &BiLaurent, x: &BiLaurent) {
        for (&(ua, va), ca) in &m.terms {
            for (&(ub, vb), cb) in &x.terms {
                self.insert_add((exp_add(ua, ub), exp_add(va, vb)), &(ca * cb));
            }
        }
    }

    /// In-place `self -= m * x`.
    pub fn sub_mul_assign(&mut self, m: &BiLaurent, x: &BiLaurent) {
        for (&(ua, va), ca) in &m.terms {
            for (&(ub, vb), cb) in &x.terms {
                self.insert_add((exp_add(ua, ub), exp_add(va, vb)), &(-(ca * cb)));
            }
        }
    }

    /// Multiply by the monomial `c * q^u t^v`.
    pub fn mul_monomial(&self, u: Exp, v: Exp, c: &Coeff) -> BiLaurent {
        if c.is_zero() {
            return BiLaurent::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(&(a, b), x)| ((exp_add(a, u), exp_add(b, v)), x * c))
            .collect();
        BiLaurent { terms }
    }

    /// Product truncated to q-exponents `<= max_u` (term pairs beyond the
    /// bound are skipped, not computed then dropped).
    pub fn mul_trunc_q(&self, other: &BiLaurent, max_u: Exp) -> BiLaurent {
        let mut out = BiLaurent::zero();
        for (&(ua, va), ca) in &self.terms {
            for (&(ub, vb), cb) in &other.terms {
                let u = exp_add(ua, ub);
                if u > max_u {
                    continue;
                }
                out.insert_add((u, exp_add(va, vb)), &(ca * cb));
            }
        }
        out
    }

    /// Drop all terms with q-exponent above `max_u`.
    pub fn truncate_q(&self, max_u: Exp) -> BiLaurent {
        let terms = self
            .terms
            .iter()
            .filter(|(&(u, _), _)| u <= max_u)
            .map(|(&k, c)| (k, c.clone()))
            .collect();
        BiLaurent { terms }
    }

    /// The involution `(q, t) -> (q^{-1}, t^{-1})`.
    pub fn bar(&self) -> BiLaurent {
        let terms = self
            .terms
            .iter()
            .map(|(&(u, v), c)| ((-u, -v), c.clone()))
            .collect();
        BiLaurent { terms }
    }

    /// Specialization `t = 1`: sums coefficients over the t-exponent for each
    /// q-exponent. The result has t-degree zero only.
    pub fn spec_t1(&self) -> BiLaurent {
        let mut out = BiLaurent::zero();
        for (&(u, _), c) in &self.terms {
            out.insert_add((u, 0), c);
        }
        out
    }
}

impl fmt::Debug for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Neg for &BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        let terms = self.terms.iter().map(|(&k, c)| (k, -c)).collect();
        BiLaurent { terms }
    }
}

impl Neg for BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        -&self
    }
}

impl Add for &BiLaurent {
    type Output = BiLaurent;
    fn add(self, rhs: &BiLaurent) -> BiLaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&BiLaurent> for BiLaurent {
    fn add_assign(&mut self, rhs: &BiLaurent) {
        for (&k, c) in &rhs.terms {
            self.insert_add(k, c);
        }
    }
}

impl Sub for &BiLaurent {
    type Output = BiLaurent;
    fn sub(self, rhs: &BiLaurent) -> BiLaurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&BiLaurent> for BiLaurent {
    fn sub_assign(&mut self, rhs: &BiLaurent) {
        for (&k, c) in &rhs.terms {
            self.insert_add(k, &-c.clone());
        }
    }
}

impl Mul for &BiLaurent {
    type Output = BiLaurent;
    fn mul(self, rhs: &BiLaurent) -> BiLaurent {
        let mut out = BiLaurent::zero();
        out.add_mul_assign(self, rhs);
        out
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for BiLaurent {
            type Output = BiLaurent;
            fn $method(self, rhs: BiLaurent) -> BiLaurent {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&BiLaurent> for BiLaurent {
            type Output = BiLaurent;
            fn $method(self, rhs: &BiLaurent) -> BiLaurent {
                (&self).$method(rhs)
            }
        }
        impl $trait<BiLaurent> for &BiLaurent {
            type Output = BiLaurent;
            fn $method(self, rhs: BiLaurent) -> BiLaurent {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

fn write_term(f: &mut fmt::Formatter<'_>, u: Exp, v: Exp, c: &Coeff) -> fmt::Result {
    let mut parts: Vec<String> = Vec::new();
    let abs = c.abs();
    if !abs.is_one() || (u == 0 && v == 0) {
        parts.push(abs.to_string());
    }
    for (sym, e) in [("q", u), ("t", v)] {
        if e == 1 {
            parts.push(sym.to_string());
        } else if e != 0 {
            parts.push(format!("{sym}^{e}"));
        }
    }
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for BiLaurent {
    /// Terms sorted by `(u, v)` ascending, rendered as `c*q^u*t^v` with
    /// `+`/`-` separators. Unit coefficients and zero exponents are omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (&(u, v), c)) in self.terms.iter().enumerate() {
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write_term(f, u, v, c)?;
        }
        Ok(())
    }
}

/// Error from parsing the textual polynomial grammar.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid polynomial syntax: {0}")]
pub struct ParsePolyError(String);

fn parse_term(term: &str) -> Result<(Exp, Exp, Coeff), ParsePolyError> {
    let mut coeff = Coeff::one();
    let mut u: Exp = 0;
    let mut v: Exp = 0;
    let mut saw_factor = false;
    for factor in term.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(ParsePolyError(format!("empty factor in `{term}`")));
        }
        if let Some(rest) = factor.strip_prefix('q') {
            let e = parse_exponent(rest, term)?;
            u = exp_add(u, e);
        } else if let Some(rest) = factor.strip_prefix('t') {
            let e = parse_exponent(rest, term)?;
            v = exp_add(v, e);
        } else {
            let c: Coeff = factor
                .parse()
                .map_err(|_| ParsePolyError(format!("bad coefficient `{factor}`")))?;
            coeff *= c;
        }
        saw_factor = true;
    }
    if !saw_factor {
        return Err(ParsePolyError("empty term".into()));
    }
    Ok((u, v, coeff))
}

fn parse_exponent(rest: &str, term: &str) -> Result<Exp, ParsePolyError> {
    if rest.is_empty() {
        Ok(1)
    } else if let Some(e) = rest.strip_prefix('^') {
        e.parse()
            .map_err(|_| ParsePolyError(format!("bad exponent in `{term}`")))
    } else {
        Err(ParsePolyError(format!("bad factor in `{term}`")))
    }
}

impl FromStr for BiLaurent {
    type Err = ParsePolyError;

    /// Parses the same grammar `Display` emits.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParsePolyError("empty input".into()));
        }
        if s == "0" {
            return Ok(BiLaurent::zero());
        }
        let mut out = BiLaurent::zero();
        let mut term = String::new();
        let mut sign = Coeff::one();
        let mut pending_sign = Coeff::one();
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        let mut prev_meaningful = ' ';
        while i < chars.len() {
            let ch = chars[i];
            if (ch == '+' || ch == '-') && prev_meaningful != '^' && prev_meaningful != '*' {
                if term.trim().is_empty() {
                    // Leading sign of the very first term.
                    if ch == '-' {
                        sign = -sign;
                    }
                } else {
                    let (u, v, c) = parse_term(term.trim())?;
                    out.insert_add((u, v), &(c * &sign));
                    term.clear();
                    sign = pending_sign.clone();
                    if ch == '-' {
                        sign = -sign;
                    }
                }
                pending_sign = Coeff::one();
            } else {
                term.push(ch);
                if !ch.is_whitespace() {
                    prev_meaningful = ch;
                }
            }
            i += 1;
        }
        if term.trim().is_empty() {
            return Err(ParsePolyError("trailing separator".into()));
        }
        let (u, v, c) = parse_term(term.trim())?;
        out.insert_add((u, v), &(c * &sign));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> BiLaurent {
        s.parse().unwrap()
    }

    /// Independent oracle for the q-integer: long division of
    /// (q^k - q^{-k}) by (q - q^{-1}) over Z[q^{±1}].
    fn qint_by_long_division(k: i64) -> BiLaurent {
        assert!(k >= 0);
        // Work with q-only polynomials as (exponent -> coeff) maps.
        let mut rem = BiLaurent::qpow(k) - BiLaurent::qpow(-k);
        let mut quot = BiLaurent::zero();
        while let Some(top) = rem.max_q() {
            let lead = rem.coeff(top, 0);
            if lead.is_zero() {
                break;
            }
            // divisor leading term is q^1
            let m = BiLaurent::monomial(top - 1, 0, lead);
            quot += &m;
            rem -= &(&m * &(BiLaurent::qpow(1) - BiLaurent::qpow(-1)));
        }
        assert!(rem.is_zero(), "division must be exact");
        quot
    }

    #[test]
    fn add_cancellation() {
        assert_eq!(p("q + t") + p("-q"), p("t"));
    }

    #[test]
    fn add_identity() {
        let x = p("3*q^2*t^-1 - 5");
        assert_eq!(&BiLaurent::zero() + &x, x);
    }

    #[test]
    fn add_rank_one_diagonal_entry() {
        // q^{d}t^{-1} + q^{-d}t with d = 1
        assert_eq!(p("q*t^-1") + p("q^-1*t"), p("q*t^-1 + q^-1*t"));
    }

    #[test]
    fn mul_difference_of_squares() {
        assert_eq!(
            &(p("q") - p("q^-1")) * &(p("q") + p("q^-1")),
            p("q^2 - q^-2")
        );
    }

    #[test]
    fn mul_identity() {
        let x = p("q^3*t^-2 - 2*q + 7*t");
        assert_eq!(&x * &BiLaurent::one(), x);
    }

    #[test]
    fn mul_c2_numerator() {
        assert_eq!(
            &p("q^3*t^-2") * &p("q^2*t^-1 + q^-2*t"),
            p("q^5*t^-3 + q*t^-1")
        );
    }

    #[test]
    fn qint_small_values() {
        assert_eq!(BiLaurent::qint(0), BiLaurent::zero());
        assert_eq!(BiLaurent::qint(1), BiLaurent::one());
        assert_eq!(BiLaurent::qint(2), p("q + q^-1"));
        assert_eq!(BiLaurent::qint(-2), p("-q - q^-1"));
    }

    #[test]
    fn qint_matches_long_division_oracle() {
        // k = 3 expands to q^2 + 1 + q^-2; check a range against the oracle.
        assert_eq!(qint_by_long_division(3), p("q^2 + 1 + q^-2"));
        for k in 0..=12 {
            assert_eq!(BiLaurent::qint(k), qint_by_long_division(k), "k={k}");
        }
    }

    #[test]
    fn qint_three_term_recurrence() {
        // [2][k] = [k+1] + [k-1]
        let two = BiLaurent::qint(2);
        for k in 1..=20 {
            assert_eq!(
                &two * &BiLaurent::qint(k),
                BiLaurent::qint(k + 1) + BiLaurent::qint(k - 1),
                "k={k}"
            );
        }
    }

    #[test]
    fn bar_examples() {
        assert_eq!(p("q^2*t^-1").bar(), p("q^-2*t"));
        assert_eq!(p("q + q^-1").bar(), p("q + q^-1"));
        let x = p("5*q^3*t^-2 - q^-1 + t^4");
        assert_eq!(x.bar().bar(), x);
    }

    #[test]
    fn spec_t1_examples() {
        assert_eq!(p("q*t^-1 + q^-1*t").spec_t1(), p("q + q^-1"));
        assert_eq!(p("q^5*t^-3 + q*t^-1").spec_t1(), p("q^5 + q"));
        assert_eq!(BiLaurent::zero().spec_t1(), BiLaurent::zero());
        // cancellation across t-degrees
        assert_eq!(p("q*t^-1 - q*t").spec_t1(), BiLaurent::zero());
    }

    #[test]
    fn display_and_parse_fixtures() {
        for s in [
            "0",
            "1",
            "-1",
            "q^-1*t + q*t^-1",
            "5*t^-2 - 2*q^3",
            "q^-4*t^2 - q",
            "3",
        ] {
            assert_eq!(p(s).to_string(), s, "round trip of `{s}`");
        }
    }

    fn arb_poly() -> impl Strategy<Value = BiLaurent> {
        proptest::collection::vec(((-6i64..=6, -6i64..=6), -4i64..=4), 0..6).prop_map(|terms| {
            let mut out = BiLaurent::zero();
            for ((u, v), c) in terms {
                out += &BiLaurent::monomial(u, v, Coeff::from(c));
            }
            out
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            // commutativity and associativity
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            // distributivity
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            // additive inverse keeps canonical form
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn bar_is_ring_involution(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!((&a + &b).bar(), a.bar() + b.bar());
            prop_assert_eq!(a.bar().bar(), a);
        }

        #[test]
        fn spec_t1_is_ring_homomorphism(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!((&a * &b).spec_t1(), &a.spec_t1() * &b.spec_t1());
            prop_assert_eq!((&a + &b).spec_t1(), a.spec_t1() + b.spec_t1());
        }

        #[test]
        fn display_parse_round_trip(a in arb_poly()) {
            let rendered = a.to_string();
            let reparsed: BiLaurent = rendered.parse().unwrap();
            prop_assert_eq!(reparsed, a);
        }
    }
}
