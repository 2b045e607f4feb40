//! Bracket-polynomial equations of two Hadamard products: the quadric
//! `L * M` of two lines in `P^3` and the cubic `P * P` of a plane in `P^5`.
//!
//! A [`BracketExpr`] is a polynomial whose variables are brackets (Plücker
//! coordinates of one or more spaces) and the ambient coordinates `x_i`.
//! Plugging in numbers or symbolic minors both go through
//! [`SparsePoly::substitute`].

use std::collections::BTreeMap;
use std::sync::OnceLock;

use itertools::Itertools;
use rand::RngCore;

use crate::arith::{int, Rational, SparsePoly};
use crate::error::{Error, Result};
use crate::products::{forms_vanish, VarietySampler};
use crate::projective::{LinSpace, PlueckerVector};

/// A bracket variable: the family it belongs to and its sorted indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bracket {
    pub family: usize,
    pub indices: Vec<usize>,
}

/// Polynomial in bracket variables followed by `x_0, ..., x_{nx-1}`.
#[derive(Clone, Debug)]
pub struct BracketExpr {
    brackets: Vec<Bracket>,
    /// Opening and closing delimiter per family, e.g. `('[', ']')`.
    delimiters: Vec<(char, char)>,
    nx: usize,
    poly: SparsePoly,
}

impl BracketExpr {
    fn new(brackets: Vec<Bracket>, delimiters: Vec<(char, char)>, nx: usize) -> Self {
        let nvars = brackets.len() + nx;
        BracketExpr {
            brackets,
            delimiters,
            nx,
            poly: SparsePoly::zero(nvars),
        }
    }

    pub fn poly(&self) -> &SparsePoly {
        &self.poly
    }

    pub fn brackets(&self) -> &[Bracket] {
        &self.brackets
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    fn bracket_var(&self, b: &Bracket) -> usize {
        self.brackets
            .iter()
            .position(|x| x == b)
            .expect("bracket belongs to the ring")
    }

    /// Parses a product such as `[12][13]{23}` into an exponent vector.
    fn parse_product(&self, s: &str) -> Vec<u32> {
        let mut exps = vec![0u32; self.brackets.len() + self.nx];
        let mut chars = s.chars().filter(|c| !c.is_whitespace()).peekable();
        while let Some(open) = chars.next() {
            let family = self
                .delimiters
                .iter()
                .position(|&(o, _)| o == open)
                .unwrap_or_else(|| panic!("unknown bracket delimiter {open:?} in {s:?}"));
            let close = self.delimiters[family].1;
            let mut indices = Vec::new();
            for c in chars.by_ref() {
                if c == close {
                    break;
                }
                indices.push(c.to_digit(10).expect("single-digit index") as usize);
            }
            indices.sort_unstable();
            exps[self.bracket_var(&Bracket { family, indices })] += 1;
        }
        exps
    }

    /// Adds `sign * product * x^x_exps` for each listed bracket product.
    fn add_terms(&mut self, x_exps: &[u32], sign: i64, products: &[&str]) {
        for p in products {
            let mut e = self.parse_product(p);
            for (k, &xe) in x_exps.iter().enumerate() {
                e[self.brackets.len() + k] = xe;
            }
            let term = SparsePoly::monomial(self.poly.nvars(), e, int(sign));
            self.poly = &self.poly + &term;
        }
    }

    /// Substitutes bracket values (one Plücker vector per family) and
    /// returns the resulting form in `x`.
    pub fn evaluate(&self, families: &[&PlueckerVector]) -> Result<SparsePoly> {
        if families.len() != self.delimiters.len() {
            return Err(Error::DimensionMismatch {
                expected: self.delimiters.len(),
                found: families.len(),
            });
        }
        let mut images = Vec::with_capacity(self.poly.nvars());
        for b in &self.brackets {
            let value = families[b.family].get(&b.indices)?;
            images.push(SparsePoly::constant(self.nx, value));
        }
        for i in 0..self.nx {
            images.push(SparsePoly::var(self.nx, i));
        }
        self.poly.substitute(&images)
    }

    /// Substitutes arbitrary polynomials for every variable.
    pub fn substitute(&self, images: &[SparsePoly]) -> Result<SparsePoly> {
        self.poly.substitute(images)
    }

    fn bracket_text(&self, b: &Bracket) -> String {
        let (o, c) = self.delimiters[b.family];
        format!("{o}{}{c}", b.indices.iter().join(""))
    }

    /// Coefficient of each `x`-monomial as a sum of bracket products, in the
    /// notation used to enter the formulas. Monomials are listed in
    /// decreasing lexicographic order.
    pub fn notation(&self) -> Vec<(String, String)> {
        let nb = self.brackets.len();
        let mut by_mono: BTreeMap<Vec<u32>, Vec<(Vec<u32>, Rational)>> = BTreeMap::new();
        for (e, c) in self.poly.terms() {
            by_mono
                .entry(e[nb..].to_vec())
                .or_default()
                .push((e[..nb].to_vec(), c.clone()));
        }
        by_mono
            .into_iter()
            .rev()
            .map(|(xe, terms)| {
                let mono = xe
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
                    .join("*");
                let mut text = String::new();
                for (k, (be, c)) in terms.iter().rev().enumerate() {
                    let neg = c < &Rational::from_integer(0.into());
                    let sign = match (k, neg) {
                        (0, false) => "",
                        (0, true) => "-",
                        (_, false) => " + ",
                        (_, true) => " - ",
                    };
                    let abs = if neg { -c.clone() } else { c.clone() };
                    let scalar = if abs == int(1) { String::new() } else { format!("{abs}*") };
                    let product: String = be
                        .iter()
                        .enumerate()
                        .flat_map(|(v, &k)| {
                            std::iter::repeat_n(self.bracket_text(&self.brackets[v]), k as usize)
                        })
                        .collect();
                    text.push_str(&format!("{sign}{scalar}{product}"));
                }
                (mono, text)
            })
            .collect()
    }
}

fn line_brackets(family: usize) -> impl Iterator<Item = Bracket> {
    (0..4).combinations(2).map(move |indices| Bracket { family, indices })
}

/// The quadric of `L * M` with `[ij]` the brackets of `L` and `{ij}` those
/// of `M`.
pub fn quadric_expr() -> &'static BracketExpr {
    static EXPR: OnceLock<BracketExpr> = OnceLock::new();
    EXPR.get_or_init(|| {
        let brackets = line_brackets(0).chain(line_brackets(1)).collect();
        let mut q = BracketExpr::new(brackets, vec![('[', ']'), ('{', '}')], 4);
        q.add_terms(&[2, 0, 0, 0], 1, &["[12][13][23]{12}{13}{23}"]);
        q.add_terms(&[0, 2, 0, 0], 1, &["[02][03][23]{02}{03}{23}"]);
        q.add_terms(&[0, 0, 2, 0], 1, &["[01][03][13]{01}{03}{13}"]);
        q.add_terms(&[0, 0, 0, 2], 1, &["[01][02][12]{01}{02}{12}"]);
        q.add_terms(&[1, 1, 0, 0], -1, &["[23]{23}[02][13]{03}{12}", "[23]{23}[03][12]{02}{13}"]);
        q.add_terms(&[1, 0, 1, 0], 1, &["[13]{13}[01][23]{03}{12}", "[13]{13}[03][12]{01}{23}"]);
        q.add_terms(&[1, 0, 0, 1], -1, &["[12]{12}[01][23]{02}{13}", "[12]{12}[02][13]{01}{23}"]);
        q.add_terms(&[0, 1, 1, 0], -1, &["[03]{03}[01][23]{02}{13}", "[03]{03}[02][13]{01}{23}"]);
        q.add_terms(&[0, 1, 0, 1], 1, &["[02]{02}[01][23]{03}{12}", "[02]{02}[03][12]{01}{23}"]);
        q.add_terms(&[0, 0, 1, 1], -1, &["[01]{01}[02][13]{03}{12}", "[01]{01}[03][12]{02}{13}"]);
        q
    })
}

fn check_shape(pl: &PlueckerVector, n: usize, m: usize, what: &str) -> Result<()> {
    if pl.ambient() != n || pl.dim() != m {
        return Err(Error::Invalid(format!(
            "{what} must be a {m}-dimensional space in P^{n}, got dim {} in P^{}",
            pl.dim(),
            pl.ambient()
        )));
    }
    Ok(())
}

/// Quadric through `L * M` for two lines of `P^3`, from their Plücker vectors.
pub fn quadric_two_lines(pl_l: &PlueckerVector, pl_m: &PlueckerVector) -> Result<SparsePoly> {
    check_shape(pl_l, 3, 1, "L")?;
    check_shape(pl_m, 3, 1, "M")?;
    quadric_expr().evaluate(&[pl_l, pl_m])
}

/// Orbit representatives for the cubic: the coefficients of `x_0^3`,
/// `x_0^2 x_1` and `x_0 x_1 x_2`, before the factor `-(-1)^{a+b+c}`.
const CUBIC_AAA: &[&str] = &["[123][124][125][134][135][145][234][235][245][345]"];
const CUBIC_AAB: &[&str] = &[
    "[023][045][124][125][134][135][234][235][245][345]",
    "[024][035][123][125][134][145][234][235][245][345]",
    "[025][034][123][124][135][145][234][235][245][345]",
];
/// The `x_0 x_1 x_2` representative is the sum over the whole stabilizer
/// orbit, which has six terms.
const CUBIC_ABC: &[&str] = &[
    "[013][024][134][234][125][035][235][045][145][345]",
    "[013][124][034][234][025][135][235][045][145][345]",
    "[023][014][134][234][125][035][135][045][245][345]",
    "[023][124][034][134][015][135][235][045][245][345]",
    "[123][014][034][234][025][035][135][145][245][345]",
    "[015][024][034][035][123][134][145][235][245][345]",
];

/// How brackets transform when indices are relabeled by a permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelabelSign {
    /// Relabel and sort each bracket without a sign change.
    Unsigned,
    /// Relabel and sort each bracket, negating for odd sorting permutations.
    Antisymmetric,
}

fn relabel_product(product: &str, pi: &[usize], sign: RelabelSign) -> (i64, String) {
    let mut total = 1;
    let mut out = String::new();
    for b in product.split(']').filter(|s| !s.is_empty()) {
        let idx: Vec<usize> = b
            .trim_start_matches('[')
            .chars()
            .map(|c| pi[c.to_digit(10).expect("digit") as usize])
            .collect();
        let (sorted, odd) =
            crate::projective::sort_with_sign(&idx).expect("a permutation keeps indices distinct");
        if odd && sign == RelabelSign::Antisymmetric {
            total = -total;
        }
        out.push_str(&format!("[{}]", sorted.iter().join("")));
    }
    (total, out)
}

/// Representative and admissible relabelings for the monomial
/// `x_a x_b x_c` (`a <= b <= c`): permutations sending the representative's
/// index pattern to `(a, b, c)`.
fn orbit_data(mono: [usize; 3]) -> (&'static [&'static str], Vec<Vec<usize>>) {
    let [a, b, c] = mono;
    let perms = (0..6).permutations(6);
    if a == b && b == c {
        (CUBIC_AAA, perms.filter(|p| p[0] == a).collect())
    } else if a == b || b == c {
        let (double, single) = if a == b { (a, c) } else { (b, a) };
        (
            CUBIC_AAB,
            perms.filter(|p| p[0] == double && p[1] == single).collect(),
        )
    } else {
        (
            CUBIC_ABC,
            perms
                .filter(|p| {
                    let mut head = p[..3].to_vec();
                    head.sort_unstable();
                    head == [a, b, c]
                })
                .collect(),
        )
    }
}

/// Builds the cubic with the given relabeling rule. Fails if the resulting
/// coefficient of some monomial depends on which admissible permutation was
/// used.
pub fn cubic_expr_with(sign: RelabelSign) -> Result<BracketExpr> {
    let brackets = (0..6)
        .combinations(3)
        .map(|indices| Bracket { family: 0, indices })
        .collect();
    let mut expr = BracketExpr::new(brackets, vec![('[', ']')], 6);
    for mono in (0..6).combinations_with_replacement(3) {
        let mono = [mono[0], mono[1], mono[2]];
        let (rep, perms) = orbit_data(mono);
        let mut exps = vec![0u32; 6];
        for &i in &mono {
            exps[i] += 1;
        }
        let outer: i64 = if (mono[0] + mono[1] + mono[2]) % 2 == 0 { -1 } else { 1 };

        let coefficient = |pi: &[usize]| -> SparsePoly {
            let mut scratch = BracketExpr::new(expr.brackets.clone(), expr.delimiters.clone(), 6);
            for product in rep {
                let (s, relabeled) = relabel_product(product, pi, sign);
                scratch.add_terms(&exps, outer * s, &[relabeled.as_str()]);
            }
            scratch.poly
        };
        let first = coefficient(&perms[0]);
        if let Some(pi) = perms[1..].iter().find(|pi| coefficient(pi) != first) {
            return Err(Error::Invalid(format!(
                "cubic coefficient of x{}x{}x{} depends on the relabeling {pi:?}",
                mono[0], mono[1], mono[2]
            )));
        }
        expr.poly = &expr.poly + &first;
    }
    Ok(expr)
}

/// The cubic through `P * P` for a plane `P` of `P^5`, built once from the
/// three orbit representatives by unsigned relabeling.
pub fn cubic_expr() -> &'static BracketExpr {
    static EXPR: OnceLock<BracketExpr> = OnceLock::new();
    EXPR.get_or_init(|| {
        cubic_expr_with(RelabelSign::Unsigned).expect("orbit coefficients are well defined")
    })
}

/// The cubic form in `x_0..x_5` at a concrete plane.
pub fn cubic_plane_square(pl: &PlueckerVector) -> Result<SparsePoly> {
    check_shape(pl, 5, 2, "P")?;
    cubic_expr().evaluate(&[pl])
}

/// True iff `form` vanishes at `trials` sampled points.
pub fn verify_identity(
    form: &SparsePoly,
    sampler: &dyn VarietySampler,
    trials: usize,
    rng: &mut dyn RngCore,
) -> Result<bool> {
    if form.is_zero() {
        return Ok(true);
    }
    forms_vanish(std::slice::from_ref(form), sampler, trials, rng)
}

/// Substitutes the parametrization `x_i = prod_k (sum_j t_{kj} g_{kj i})`
/// of the product of the given spaces into `form` and expands. The form
/// vanishes on the product iff the result is the zero polynomial.
pub fn expand_on_product(form: &SparsePoly, factors: &[&LinSpace]) -> Result<SparsePoly> {
    let n1 = form.nvars();
    let nparams: usize = factors.iter().map(|f| f.generators().rows()).sum();
    let mut images = vec![SparsePoly::one(nparams); n1];
    let mut offset = 0;
    for f in factors {
        let g = f.generators();
        if g.cols() != n1 {
            return Err(Error::DimensionMismatch {
                expected: n1,
                found: g.cols(),
            });
        }
        for (i, image) in images.iter_mut().enumerate() {
            let mut lin = SparsePoly::zero(nparams);
            for j in 0..g.rows() {
                let term = SparsePoly::var(nparams, offset + j).scale(g.get(j, i));
                lin = &lin + &term;
            }
            *image = &*image * &lin;
        }
        offset += g.rows();
    }
    form.substitute(&images)
}

/// Full symbolic check of the quadric: with `[ij] = a_{0i}a_{1j} - a_{0j}a_{1i}`,
/// `{ij} = b_{0i}b_{1j} - b_{0j}b_{1i}` and
/// `x_i = (l_0 a_{0i} + l_1 a_{1i})(m_0 b_{0i} + m_1 b_{1i})`, returns the
/// expansion in the 20 variables `a, b, l, m` (zero iff the identity holds).
pub fn quadric_symbolic_expansion() -> Result<SparsePoly> {
    const NV: usize = 20;
    let a = |row: usize, i: usize| SparsePoly::var(NV, row * 4 + i);
    let b = |row: usize, i: usize| SparsePoly::var(NV, 8 + row * 4 + i);
    let lam = |k: usize| SparsePoly::var(NV, 16 + k);
    let mu = |k: usize| SparsePoly::var(NV, 18 + k);
    let expr = quadric_expr();
    let mut images = Vec::with_capacity(expr.poly.nvars());
    for br in expr.brackets() {
        let (i, j) = (br.indices[0], br.indices[1]);
        let v = if br.family == 0 { a } else { b };
        images.push(&(&v(0, i) * &v(1, j)) - &(&v(0, j) * &v(1, i)));
    }
    for i in 0..4 {
        let p = &(&lam(0) * &a(0, i)) + &(&lam(1) * &a(1, i));
        let q = &(&mu(0) * &b(0, i)) + &(&mu(1) * &b(1, i));
        images.push(&p * &q);
    }
    expr.substitute(&images)
}

/// Variable names for [`quadric_symbolic_expansion`].
pub fn quadric_symbolic_names() -> Vec<String> {
    let mut names = Vec::new();
    for prefix in ["a", "b"] {
        for row in 0..2 {
            for i in 0..4 {
                names.push(format!("{prefix}{row}{i}"));
            }
        }
    }
    names.extend(["l0", "l1", "m0", "m1"].map(String::from));
    names
}
