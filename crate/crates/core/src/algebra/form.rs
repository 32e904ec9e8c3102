//! Bihomogeneous forms on `P1 x P1`.
//!
//! A form of bidegree `(a, b)` is stored densely: entry `(i, j)` is the
//! coefficient of `x^(a-i) y^i z^(b-j) w^j`, flattened row-major with `i`
//! major, i.e. at index `i * (b + 1) + j`. Serialization depends on this
//! order, so it must not change.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::field::Field;
use crate::error::{Error, Result};

/// A pair `(a, b)`: degree in `x, y` and degree in `z, w`. Line-bundle
/// labels `O(a, b)` may be negative; concrete forms may not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(i32, i32)", into = "(i32, i32)")]
pub struct Bidegree {
    pub a: i32,
    pub b: i32,
}

impl Bidegree {
    pub const fn new(a: i32, b: i32) -> Self {
        Bidegree { a, b }
    }

    /// Number of monomials `(a + 1)(b + 1)`, zero for negative labels.
    pub fn monomial_count(&self) -> usize {
        if self.a < 0 || self.b < 0 {
            0
        } else {
            (self.a as usize + 1) * (self.b as usize + 1)
        }
    }
}

impl From<(i32, i32)> for Bidegree {
    fn from((a, b): (i32, i32)) -> Self {
        Bidegree { a, b }
    }
}

impl From<Bidegree> for (i32, i32) {
    fn from(d: Bidegree) -> Self {
        (d.a, d.b)
    }
}

impl std::ops::Add for Bidegree {
    type Output = Bidegree;
    fn add(self, o: Bidegree) -> Bidegree {
        Bidegree::new(self.a + o.a, self.b + o.b)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiForm<F: Field> {
    field: F,
    deg: Bidegree,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> BiForm<F> {
    pub fn new(field: F, deg: Bidegree, coeffs: Vec<F::Elem>) -> Result<Self> {
        if deg.a < 0 || deg.b < 0 {
            return Err(Error::NegativeBidegree(deg));
        }
        let expected = deg.monomial_count();
        if coeffs.len() != expected {
            return Err(Error::CoefficientCount {
                deg,
                expected,
                found: coeffs.len(),
            });
        }
        Ok(BiForm { field, deg, coeffs })
    }

    pub fn zero(field: F, deg: Bidegree) -> Result<Self> {
        let coeffs = vec![field.zero(); deg.monomial_count()];
        Self::new(field, deg, coeffs)
    }

    /// `c * x^(a-i) y^i z^(b-j) w^j`.
    pub fn monomial(field: F, deg: Bidegree, i: usize, j: usize, c: F::Elem) -> Result<Self> {
        let mut f = Self::zero(field, deg)?;
        if i > deg.a as usize || j > deg.b as usize {
            return Err(Error::Parse(format!("monomial ({i}, {j}) outside bidegree {deg}")));
        }
        let k = f.index(i, j);
        f.coeffs[k] = c;
        Ok(f)
    }

    /// Builds a form from integer coefficients in the documented layout.
    pub fn from_ints(field: F, deg: Bidegree, coeffs: &[i64]) -> Result<Self> {
        let coeffs = coeffs.iter().map(|&c| field.from_i64(c)).collect();
        Self::new(field, deg, coeffs)
    }

    #[inline]
    pub fn field(&self) -> &F {
        &self.field
    }

    #[inline]
    pub fn deg(&self) -> Bidegree {
        self.deg
    }

    #[inline]
    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    #[inline]
    fn index(&self, i: usize, j: usize) -> usize {
        i * (self.deg.b as usize + 1) + j
    }

    /// Coefficient of `x^(a-i) y^i z^(b-j) w^j`.
    pub fn coeff(&self, i: usize, j: usize) -> &F::Elem {
        &self.coeffs[self.index(i, j)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                format!("{:?}", self.field),
                format!("{:?}", other.field),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.deg != other.deg {
            return Err(Error::BidegreeMismatch(self.deg, other.deg));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Ok(BiForm {
            field: self.field.clone(),
            deg: self.deg,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| self.field.neg(c))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.map(|x| self.field.mul(c, x))
    }

    fn map(&self, f: impl Fn(&F::Elem) -> F::Elem) -> Self {
        BiForm {
            field: self.field.clone(),
            deg: self.deg,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Product of forms; bidegrees add. Panics if the fields differ.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field, "multiplying forms over different fields");
        let deg = self.deg + other.deg;
        let field = &self.field;
        let mut out = vec![field.zero(); deg.monomial_count()];
        let (sb, ob, db) = (self.deg.b as usize + 1, other.deg.b as usize + 1, deg.b as usize + 1);
        for (k1, c1) in self.coeffs.iter().enumerate() {
            if field.is_zero(c1) {
                continue;
            }
            let (i1, j1) = (k1 / sb, k1 % sb);
            for (k2, c2) in other.coeffs.iter().enumerate() {
                if field.is_zero(c2) {
                    continue;
                }
                let (i2, j2) = (k2 / ob, k2 % ob);
                let k = (i1 + i2) * db + (j1 + j2);
                out[k] = field.add(&out[k], &field.mul(c1, c2));
            }
        }
        BiForm {
            field: field.clone(),
            deg,
            coeffs: out,
        }
    }

    /// Parses a sum of terms such as `x*z^2 - 2*y*z*w` (`⊗` is accepted in
    /// place of `*`). The bidegree is inferred; use
    /// [`BiForm::parse_with_degree`] for the zero form.
    pub fn parse(field: F, s: &str) -> Result<Self> {
        let terms = parse_terms(&field, s)?;
        let Some((_, deg)) = terms.first().map(|t| (t.0.clone(), t.1)) else {
            return Err(Error::Parse(format!("cannot infer a bidegree from {s:?}")));
        };
        Self::assemble(field, deg, terms)
    }

    pub fn parse_with_degree(field: F, deg: Bidegree, s: &str) -> Result<Self> {
        let terms = parse_terms(&field, s)?;
        Self::assemble(field, deg, terms)
    }

    fn assemble(field: F, deg: Bidegree, terms: Vec<(F::Elem, Bidegree, usize, usize)>) -> Result<Self> {
        let mut f = Self::zero(field, deg)?;
        for (c, d, i, j) in terms {
            if d != deg {
                return Err(Error::BidegreeMismatch(deg, d));
            }
            let k = f.index(i, j);
            f.coeffs[k] = f.field.add(&f.coeffs[k], &c);
        }
        Ok(f)
    }

    /// `{"a":..,"b":..,"p":..,"coeffs":[..]}` with `p = 0` for the rationals.
    pub fn to_json(&self) -> Value {
        json!({
            "a": self.deg.a,
            "b": self.deg.b,
            "p": self.field.characteristic(),
            "coeffs": self.coeffs.iter().map(|c| self.field.encode(c)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(field: F, v: &Value) -> Result<Self> {
        let raw: RawForm = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.p != field.characteristic() {
            return Err(Error::FieldMismatch(
                format!("characteristic {}", raw.p),
                format!("{field:?}"),
            ));
        }
        let coeffs = raw.coeffs.iter().map(|c| field.decode(c)).collect::<Result<Vec<_>>>()?;
        Self::new(field, Bidegree::new(raw.a, raw.b), coeffs)
    }
}

#[derive(Deserialize)]
struct RawForm {
    a: i32,
    b: i32,
    p: u32,
    coeffs: Vec<Value>,
}

type Term<E> = (E, Bidegree, usize, usize);

fn parse_terms<F: Field>(field: &F, s: &str) -> Result<Vec<Term<F::Elem>>> {
    let s: String = s.replace('⊗', "*").chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() || s == "0" {
        return Ok(Vec::new());
    }
    // Split on top-level signs, keeping the sign with its term.
    let mut pieces = Vec::new();
    let mut cur = String::new();
    for (k, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && k > 0 && !cur.ends_with('^') {
            pieces.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    pieces.push(cur);

    let mut terms = Vec::new();
    for piece in pieces {
        let (negative, body) = match piece.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, piece.strip_prefix('+').unwrap_or(&piece)),
        };
        let mut coeff = field.one();
        let mut exps = [0usize; 4];
        for factor in body.split('*') {
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (
                    b,
                    e.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
                ),
                None => (factor, 1),
            };
            match base {
                "x" => exps[0] += exp,
                "y" => exps[1] += exp,
                "z" => exps[2] += exp,
                "w" => exps[3] += exp,
                "" => return Err(Error::Parse(format!("empty factor in {piece:?}"))),
                num => {
                    let c = field.parse(num)?;
                    for _ in 0..exp {
                        coeff = field.mul(&coeff, &c);
                    }
                }
            }
        }
        if negative {
            coeff = field.neg(&coeff);
        }
        let deg = Bidegree::new((exps[0] + exps[1]) as i32, (exps[2] + exps[3]) as i32);
        terms.push((coeff, deg, exps[1], exps[3]));
    }
    Ok(terms)
}

fn write_power(out: &mut Vec<String>, var: &str, e: usize) {
    match e {
        0 => {}
        1 => out.push(var.to_string()),
        _ => out.push(format!("{var}^{e}")),
    }
}

impl<F: Field> fmt::Display for BiForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = (self.deg.a as usize, self.deg.b as usize);
        let mut first = true;
        for i in 0..=a {
            for j in 0..=b {
                let c = self.coeff(i, j);
                if self.field.is_zero(c) {
                    continue;
                }
                let mut factors = Vec::new();
                write_power(&mut factors, "x", a - i);
                write_power(&mut factors, "y", i);
                write_power(&mut factors, "z", b - j);
                write_power(&mut factors, "w", j);
                let mut text = self.field.format(c);
                let negative = text.starts_with('-');
                if negative {
                    text.remove(0);
                }
                if !factors.is_empty() && text == "1" {
                    text.clear();
                }
                if !text.is_empty() && !factors.is_empty() {
                    text.push('*');
                }
                text.push_str(&factors.join("*"));
                match (first, negative) {
                    (true, true) => write!(f, "-{text}")?,
                    (true, false) => write!(f, "{text}")?,
                    (false, true) => write!(f, " - {text}")?,
                    (false, false) => write!(f, " + {text}")?,
                }
                first = false;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Rescales a coefficient pair so its first nonzero entry is one.
/// Returns the pair and the scalar that was divided out.
fn normalize_pair<F: Field>(field: &F, c: [F::Elem; 2]) -> ([F::Elem; 2], F::Elem) {
    let lead = c.iter().find(|e| !field.is_zero(e)).cloned();
    match lead.and_then(|l| field.inv(&l).map(|inv| (l, inv))) {
        Some((l, inv)) => ([field.mul(&c[0], &inv), field.mul(&c[1], &inv)], l),
        None => (c, field.one()),
    }
}

macro_rules! linear_form {
    ($name:ident, $v0:ident, $v1:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, Debug, PartialEq, Eq, Hash)]
        pub struct $name<F: Field> {
            pub $v0: F::Elem,
            pub $v1: F::Elem,
        }

        impl<F: Field> $name<F> {
            pub fn new($v0: F::Elem, $v1: F::Elem) -> Self {
                $name { $v0, $v1 }
            }

            pub fn from_ints(field: &F, $v0: i64, $v1: i64) -> Self {
                $name::new(field.from_i64($v0), field.from_i64($v1))
            }

            pub fn is_zero(&self, field: &F) -> bool {
                field.is_zero(&self.$v0) && field.is_zero(&self.$v1)
            }

            /// Leading-coefficient-one representative and the scalar removed.
            pub fn normalized(&self, field: &F) -> (Self, F::Elem) {
                let ([c0, c1], s) = normalize_pair(field, [self.$v0.clone(), self.$v1.clone()]);
                ($name::new(c0, c1), s)
            }

            pub fn coeffs(&self) -> [F::Elem; 2] {
                [self.$v0.clone(), self.$v1.clone()]
            }

            pub fn display(&self, field: &F) -> String {
                let f = BiForm::new(field.clone(), Self::DEG, self.coeffs().to_vec())
                    .expect("linear forms have two coefficients");
                f.to_string()
            }
        }
    };
}

linear_form!(
    LinearV1,
    x,
    y,
    "An element `x_coeff * x + y_coeff * y` of the first factor's dual."
);
linear_form!(
    LinearV2,
    z,
    w,
    "An element `z_coeff * z + w_coeff * w` of the second factor's dual."
);

impl<F: Field> LinearV1<F> {
    const DEG: Bidegree = Bidegree::new(1, 0);

    pub fn to_form(&self, field: &F) -> BiForm<F> {
        BiForm::new(field.clone(), Self::DEG, self.coeffs().to_vec()).expect("bidegree (1, 0)")
    }
}

impl<F: Field> LinearV2<F> {
    const DEG: Bidegree = Bidegree::new(0, 1);

    pub fn to_form(&self, field: &F) -> BiForm<F> {
        BiForm::new(field.clone(), Self::DEG, self.coeffs().to_vec()).expect("bidegree (0, 1)")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PrimeField, RationalField};

    fn q(s: &str) -> BiForm<RationalField> {
        BiForm::parse(RationalField, s).unwrap()
    }

    #[test]
    fn layout_is_x_major_then_z() {
        let f = q("x*z + y*w");
        let ints: Vec<_> = f.coeffs().iter().map(|c| c.to_string()).collect();
        assert_eq!(ints, ["1", "0", "0", "1"]);
        let g = q("y*z*w");
        assert_eq!(g.deg(), Bidegree::new(1, 2));
        assert_eq!(*g.coeff(1, 1), RationalField.one());
    }

    #[test]
    fn add_identity_and_char_two() {
        let f = q("x*z + 3*y*w");
        let zero = BiForm::zero(RationalField, f.deg()).unwrap();
        assert_eq!(f.add(&zero).unwrap(), f);

        let f2 = PrimeField::new(2).unwrap();
        let xz = BiForm::parse(f2, "x*z").unwrap();
        assert!(xz.add(&xz).unwrap().is_zero());
    }

    #[test]
    fn add_rejects_mismatched_bidegrees() {
        let err = q("x*z").add(&q("x*z^2")).unwrap_err();
        assert!(matches!(err, Error::BidegreeMismatch(..)));
    }

    #[test]
    fn scale_and_neg() {
        let f = q("x*z - 2*y*w");
        let two = RationalField.from_i64(2);
        assert_eq!(f.scale(&two), q("2*x*z - 4*y*w"));
        assert!(f.add(&f.neg()).unwrap().is_zero());
    }

    #[test]
    fn products_by_hand() {
        assert_eq!(q("x*z").mul(&q("y*w")), q("x*y*z*w"));
        assert_eq!(q("x*z").mul(&q("x*w + y*z")), q("x^2*z*w + x*y*z^2"));
        // alpha_1 = z * u with u = z
        let alpha1 = q("z").mul(&q("z"));
        assert_eq!(q("x").mul(&alpha1).mul(&q("y*w")), q("x*y*z^2*w"));
    }

    #[test]
    fn display_round_trips() {
        for s in ["x*z + y*w", "-x^2*z*w + 3*x*y*z^2", "1/2*y*w^2"] {
            let f = q(s);
            assert_eq!(q(&f.to_string()), f, "{s}");
        }
        assert_eq!(
            BiForm::zero(RationalField, Bidegree::new(1, 1)).unwrap().to_string(),
            "0"
        );
    }

    #[test]
    fn json_shape() {
        let f3 = PrimeField::new(3).unwrap();
        let f = BiForm::parse(f3, "x*z + 2*y*w").unwrap();
        let v = f.to_json();
        assert_eq!(v, json!({"a":1,"b":1,"p":3,"coeffs":[1,0,0,2]}));
        assert_eq!(BiForm::from_json(f3, &v).unwrap(), f);
        assert!(BiForm::from_json(PrimeField::new(5).unwrap(), &v).is_err());
        let bad = json!({"a":1,"b":1,"p":3,"coeffs":[1,0,0]});
        assert!(matches!(
            BiForm::from_json(f3, &bad),
            Err(Error::CoefficientCount {
                expected: 4,
                found: 3,
                ..
            })
        ));
    }

    #[test]
    fn negative_bidegree_is_rejected() {
        assert!(matches!(
            BiForm::zero(RationalField, Bidegree::new(-1, 0)),
            Err(Error::NegativeBidegree(_))
        ));
    }

    #[test]
    fn parse_rejects_inhomogeneous() {
        assert!(BiForm::parse(RationalField, "x*z + y").is_err());
    }
}
