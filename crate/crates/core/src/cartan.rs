//! Finite-type Cartan matrices and their basic numerical data: minimal
//! symmetrizers, lacing numbers and (dual) Coxeter numbers.
//!
//! Vertex labeling follows Kac's convention. Indices are 0-based in code;
//! the CLI and all rendered output use the 1-based labels:
//!
//! ```text
//! A_n, B_n, C_n, F_4, G_2:   1 - 2 - ... - n          (i ~ j iff |i-j| = 1)
//! D_n:                       1 - 2 - ... - (n-2) < (n-1, n)
//! E_6,7,8:                   1 - 3 - 4 - 5 - 6 [- 7 [- 8]]  with 2 - 4
//! ```

use std::fmt;
use std::str::FromStr;

use crate::Error;

/// Dynkin family letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A finite Dynkin type: family letter plus rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteType {
    family: Family,
    rank: usize,
}

impl FiniteType {
    /// Builds a type descriptor, rejecting inadmissible ranks
    /// (A n>=1, B n>=2, C n>=2, D n>=4, E n in {6,7,8}, F n=4, G n=2).
    pub fn new(family: Family, rank: usize) -> Result<Self, Error> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::InvalidType(format!(
                "{}{rank} is not an admissible finite type",
                family.letter()
            )))
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// All admissible types with rank at most `max_rank`.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<FiniteType> {
        let mut out = Vec::new();
        for family in [
            Family::A,
            Family::B,
            Family::C,
            Family::D,
            Family::E,
            Family::F,
            Family::G,
        ] {
            for rank in 1..=max_rank {
                if let Ok(t) = FiniteType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for FiniteType {
    type Err = Error;

    /// Parses compact type names like `C2`, `g2`, `E8`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars
            .next()
            .ok_or_else(|| Error::InvalidType("empty type".into()))?;
        let family = match letter.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            other => return Err(Error::InvalidType(format!("unknown family `{other}`"))),
        };
        let rest = chars.as_str();
        let rank: usize = rest
            .parse()
            .map_err(|_| Error::InvalidType(format!("bad rank in `{s}`")))?;
        FiniteType::new(family, rank)
    }
}

/// Cartan matrix with symmetrizer and the type constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    t: FiniteType,
    n: usize,
    /// Cartan matrix entries `c[i][j]`.
    c: Vec<Vec<i64>>,
    /// Minimal left symmetrizer diagonal.
    d: Vec<i64>,
    /// Lacing number.
    r: i64,
    /// Coxeter number.
    h: i64,
    /// Dual Coxeter number.
    hv: i64,
    /// Symmetrized matrix `b[i][j] = d_i c_{ij}`.
    b: Vec<Vec<i64>>,
}

/// Adjacency of the Dynkin diagram under the Kac labeling, as 0-based pairs.
fn edges(t: FiniteType) -> Vec<(usize, usize)> {
    let n = t.rank();
    match t.family() {
        Family::A | Family::B | Family::C | Family::F | Family::G => {
            (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect()
        }
        Family::D => {
            let mut e: Vec<(usize, usize)> = (0..n - 3).map(|i| (i, i + 1)).collect();
            e.push((n - 3, n - 2));
            e.push((n - 3, n - 1));
            e
        }
        Family::E => {
            // chain 1-3-4-5-6[-7[-8]] plus 2-4, in 0-based labels
            let mut e = vec![(0, 2), (1, 3)];
            for i in 2..n - 1 {
                e.push((i, i + 1));
            }
            e
        }
    }
}

fn symmetrizer(t: FiniteType) -> Vec<i64> {
    let n = t.rank();
    match t.family() {
        Family::A | Family::D | Family::E => vec![1; n],
        Family::B => {
            let mut d = vec![2; n];
            d[n - 1] = 1;
            d
        }
        Family::C => {
            let mut d = vec![1; n];
            d[n - 1] = 2;
            d
        }
        Family::F => vec![2, 2, 1, 1],
        Family::G => vec![3, 1],
    }
}

fn coxeter_numbers(t: FiniteType) -> (i64, i64) {
    let n = t.rank() as i64;
    match t.family() {
        Family::A => (n + 1, n + 1),
        Family::B => (2 * n, 2 * n - 1),
        Family::C => (2 * n, n + 1),
        Family::D => (2 * n - 2, 2 * n - 2),
        Family::E => match t.rank() {
            6 => (12, 12),
            7 => (18, 18),
            _ => (30, 30),
        },
        Family::F => (12, 9),
        Family::G => (6, 4),
    }
}

impl CartanData {
    /// Builds the Cartan matrix `c_{ij} = -ceil(d_j / d_i)` on edges, with
    /// the symmetrizer and Coxeter numbers from the classification tables.
    pub fn build(t: FiniteType) -> CartanData {
        let n = t.rank();
        let d = symmetrizer(t);
        let r = match t.family() {
            Family::A | Family::D | Family::E => 1,
            Family::B | Family::C | Family::F => 2,
            Family::G => 3,
        };
        let (h, hv) = coxeter_numbers(t);
        let mut c = vec![vec![0i64; n]; n];
        for i in 0..n {
            c[i][i] = 2;
        }
        for (i, j) in edges(t) {
            c[i][j] = -((d[j] + d[i] - 1) / d[i]); // -ceil(d_j / d_i)
            c[j][i] = -((d[i] + d[j] - 1) / d[j]);
        }
        let b: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| d[i] * c[i][j]).collect())
            .collect();
        let cd = CartanData {
            t,
            n,
            c,
            d,
            r,
            h,
            hv,
            b,
        };
        cd.audit();
        cd
    }

    /// Construction audit for the structural invariants.
    fn audit(&self) {
        let gcd = self.d.iter().fold(0i64, |g, &x| num_integer_gcd(g, x));
        assert_eq!(gcd, 1, "symmetrizer must be minimal");
        for i in 0..self.n {
            assert_eq!(self.c[i][i], 2);
            assert!(self.d[i] == 1 || self.d[i] == self.r);
            assert_eq!(self.r % self.d[i], 0, "r/d_i must be a positive integer");
            for j in 0..self.n {
                if i != j {
                    assert!((-3..=0).contains(&self.c[i][j]));
                    assert_eq!(self.c[i][j] == 0, self.c[j][i] == 0);
                }
                assert_eq!(self.b[i][j], self.d[j] * self.c[j][i], "symmetrizability");
                if i != j && self.c[i][j] < 0 {
                    assert_eq!(self.b[i][j], -self.d[i].max(self.d[j]));
                }
            }
        }
    }

    pub fn finite_type(&self) -> FiniteType {
        self.t
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.c[i][j]
    }

    pub fn sym(&self, i: usize) -> i64 {
        self.d[i]
    }

    pub fn lacing(&self) -> i64 {
        self.r
    }

    pub fn coxeter(&self) -> i64 {
        self.h
    }

    pub fn dual_coxeter(&self) -> i64 {
        self.hv
    }

    /// `r * h^\vee`, the quasi-period of the inverse expansion in `q`.
    pub fn rhv(&self) -> i64 {
        self.r * self.hv
    }

    pub fn sym_cartan(&self, i: usize, j: usize) -> i64 {
        self.b[i][j]
    }

    /// All `j != i` adjacent to `i` in the Dynkin diagram, ascending.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        assert!(i < self.n, "index out of range");
        (0..self.n).filter(|&j| j != i && self.c[i][j] < 0).collect()
    }
}

fn num_integer_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_integer_gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cd(s: &str) -> CartanData {
        CartanData::build(s.parse().unwrap())
    }

    #[test]
    fn c2_matrix_and_symmetrizer() {
        let cd = cd("C2");
        assert_eq!(cd.c, vec![vec![2, -2], vec![-1, 2]]);
        assert_eq!(cd.d, vec![1, 2]);
    }

    #[test]
    fn g2_table_constants() {
        let cd = cd("G2");
        assert_eq!(cd.d, vec![3, 1]);
        assert_eq!((cd.r, cd.h, cd.hv), (3, 6, 4));
        assert_eq!(cd.c, vec![vec![2, -1], vec![-3, 2]]);
    }

    #[test]
    fn b3_table_constants() {
        let cd = cd("B3");
        assert_eq!(cd.d, vec![2, 2, 1]);
        assert_eq!((cd.r, cd.h, cd.hv), (2, 6, 5));
        assert_eq!(cd.c[1], vec![-1, 2, -1]);
        assert_eq!(cd.c[2], vec![0, -2, 2]);
    }

    #[test]
    fn f4_matrix() {
        let cd = cd("F4");
        assert_eq!(cd.d, vec![2, 2, 1, 1]);
        assert_eq!(cd.c[1], vec![-1, 2, -1, 0]);
        assert_eq!(cd.c[2], vec![0, -2, 2, -1]);
        assert_eq!((cd.h, cd.hv), (12, 9));
    }

    #[test]
    fn neighbors_examples() {
        assert_eq!(cd("A3").neighbors(1), vec![0, 2]);
        assert_eq!(cd("G2").neighbors(0), vec![1]);
        // D4 fork: the central node (0-based 1) touches everything else
        assert_eq!(cd("D4").neighbors(1), vec![0, 2, 3]);
        assert_eq!(cd("D4").neighbors(3), vec![1]);
    }

    #[test]
    fn e_series_adjacency() {
        let cd = cd("E6");
        assert_eq!(cd.neighbors(3), vec![1, 2, 4]); // node 4 in 1-based labels
        assert_eq!(cd.neighbors(1), vec![3]);
        assert_eq!(cd.neighbors(0), vec![2]);
    }

    #[test]
    fn inadmissible_ranks_rejected() {
        assert!("D3".parse::<FiniteType>().is_err());
        assert!("E9".parse::<FiniteType>().is_err());
        assert!("F5".parse::<FiniteType>().is_err());
        assert!("X9".parse::<FiniteType>().is_err());
        assert!("A0".parse::<FiniteType>().is_err());
        assert!("B1".parse::<FiniteType>().is_err());
    }

    #[test]
    fn audit_passes_up_to_rank_eight() {
        for t in FiniteType::all_up_to_rank(8) {
            let _ = CartanData::build(t); // audits internally
        }
    }

    #[test]
    fn display_parse_round_trip() {
        for t in FiniteType::all_up_to_rank(8) {
            assert_eq!(t.to_string().parse::<FiniteType>().unwrap(), t);
        }
    }
}
