//! Permutations on `{0, .., n-1}` acting on the right.
//!
//! Products are read left to right: `α^(pq) = (α^p)^q`. Text I/O uses the
//! usual 1-based disjoint cycle notation, e.g. `(1,2,3)(4,5)`.

use std::fmt;

use crate::error::{Error, Result};

/// A point of the permutation domain (0-based).
pub type Point = usize;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image sequence, checking bijectivity.
    pub fn from_images<I>(images: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let images: Vec<u32> = images.into_iter().map(|i| i as u32).collect();
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            let img = img as usize;
            if img >= n {
                return Err(Error::PointOutOfRange {
                    point: img,
                    degree: n,
                });
            }
            if std::mem::replace(&mut seen[img], true) {
                return Err(Error::NotBijective(format!("image {img} repeated")));
            }
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_raw(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.iter().map(|&i| i as usize)).is_ok());
        Permutation { images }
    }

    /// Builds the permutation `α ↦ f(α)`; `f` must be a bijection.
    pub fn from_fn(degree: usize, f: impl Fn(Point) -> Point) -> Result<Self> {
        Self::from_images((0..degree).map(f))
    }

    /// A single cycle through the given (0-based) points.
    pub fn cycle(degree: usize, points: &[Point]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        for (i, &p) in points.iter().enumerate() {
            if p >= degree {
                return Err(Error::PointOutOfRange { point: p, degree });
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::RepeatedPoint(p + 1));
            }
            images[p] = points[(i + 1) % points.len()] as u32;
        }
        Ok(Permutation { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `α^self`.
    #[inline]
    pub fn image(&self, point: Point) -> Point {
        self.images[point] as usize
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &j)| i == j as usize)
    }

    #[inline]
    pub fn fixes(&self, point: Point) -> bool {
        self.images[point] as usize == point
    }

    /// Product `self · other`: apply `self` first, then `other`.
    ///
    /// Panics on degree mismatch; see [`compose`] for the checked form.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        assert_eq!(self.degree(), g.degree(), "degree mismatch");
        // α^(g⁻¹ u g) = ((α^g⁻¹)^u)^g, i.e. (β^g ↦ β^(u g)).
        let mut images = vec![0u32; self.degree()];
        for (b, &ub) in self.images.iter().enumerate() {
            images[g.images[b] as usize] = g.images[ub as usize];
        }
        Permutation { images }
    }

    /// `[self, other] = self · other · self⁻¹ · other⁻¹`.
    pub fn commutator_with(&self, other: &Permutation) -> Permutation {
        self.then(other)
            .then(&self.inverse())
            .then(&other.inverse())
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.then(&sq);
            }
        }
        acc
    }

    /// Disjoint cycles of length ≥ 2, each starting at its least point,
    /// sorted by least point.
    pub fn cycles(&self) -> Vec<Vec<Point>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.fixes(start) {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.image(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.image(p);
            }
            out.push(cycle);
        }
        out
    }

    /// Order of the permutation: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    pub fn support(&self) -> PointSet {
        let mut s = PointSet::empty(self.degree());
        for (i, &j) in self.images.iter().enumerate() {
            if i != j as usize {
                s.insert(i);
            }
        }
        s
    }

    pub fn fixed_points(&self) -> PointSet {
        self.support().complement()
    }

    /// `|supp(self)|`.
    pub fn support_size(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i != j as usize)
            .count()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_cycles(self))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", format_cycles(self), self.degree())
    }
}

fn check_degrees(p: &Permutation, q: &Permutation) -> Result<()> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch {
            left: p.degree(),
            right: q.degree(),
        });
    }
    Ok(())
}

/// Checked product: apply `p`, then `q`.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    check_degrees(p, q)?;
    Ok(p.then(q))
}

pub fn inverse(p: &Permutation) -> Permutation {
    p.inverse()
}

/// Checked conjugate `g⁻¹ u g`.
pub fn conjugate(u: &Permutation, g: &Permutation) -> Result<Permutation> {
    check_degrees(u, g)?;
    Ok(u.conjugate_by(g))
}

/// Checked commutator `u v u⁻¹ v⁻¹`.
pub fn commutator(u: &Permutation, v: &Permutation) -> Result<Permutation> {
    check_degrees(u, v)?;
    Ok(u.commutator_with(v))
}

/// `(supp(p), fix(p))`.
pub fn support_fix(p: &Permutation) -> (PointSet, PointSet) {
    let supp = p.support();
    let fix = supp.complement();
    (supp, fix)
}

pub fn element_order(p: &Permutation) -> u64 {
    p.order()
}

/// Reduces a non-identity permutation to one of prime order `q`, where `q`
/// is the smallest prime divisor of its order: returns `p^(|p|/q)`.
pub fn prime_order_witness(p: &Permutation) -> Result<Permutation> {
    if p.is_identity() {
        return Err(Error::IdentityNotAllowed);
    }
    let order = p.order();
    let q = smallest_prime_factor(order);
    Ok(p.pow((order / q) as i64))
}

pub(crate) fn smallest_prime_factor(n: u64) -> u64 {
    debug_assert!(n >= 2);
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}

/// Parses 1-based disjoint cycle notation such as `(1,2,3)(4,5)` or `()`.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
    if degree == 0 {
        return Err(Error::ZeroDegree);
    }
    let bytes = text.as_bytes();
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let mut used = vec![false; degree];
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let malformed = |offset: usize, reason: &str| Error::Malformed {
        offset,
        reason: reason.to_string(),
    };

    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(malformed(pos, "empty input, use () for the identity"));
    }
    while pos < bytes.len() {
        if bytes[pos] != b'(' {
            return Err(malformed(pos, "expected '('"));
        }
        pos += 1;
        skip_ws(&mut pos);
        let mut cycle: Vec<usize> = Vec::new();
        if pos < bytes.len() && bytes[pos] == b')' {
            pos += 1;
        } else {
            loop {
                skip_ws(&mut pos);
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(malformed(pos, "expected a point"));
                }
                let value: usize = text[start..pos]
                    .parse()
                    .map_err(|_| malformed(start, "point does not fit"))?;
                if value < 1 || value > degree {
                    return Err(Error::PointOutOfRange {
                        point: value,
                        degree,
                    });
                }
                if std::mem::replace(&mut used[value - 1], true) {
                    return Err(Error::RepeatedPoint(value));
                }
                cycle.push(value - 1);
                skip_ws(&mut pos);
                match bytes.get(pos) {
                    Some(b',') => pos += 1,
                    Some(b')') => {
                        pos += 1;
                        break;
                    }
                    Some(_) => return Err(malformed(pos, "expected ',' or ')'")),
                    None => return Err(malformed(pos, "unterminated cycle")),
                }
            }
        }
        for (i, &p) in cycle.iter().enumerate() {
            images[p] = cycle[(i + 1) % cycle.len()] as u32;
        }
        skip_ws(&mut pos);
    }
    Ok(Permutation { images })
}

/// Canonical 1-based cycle notation; the identity prints as `()`.
pub fn format_cycles(p: &Permutation) -> String {
    let cycles = p.cycles();
    if cycles.is_empty() {
        return "()".to_string();
    }
    let mut out = String::new();
    for c in cycles {
        out.push('(');
        for (i, pt) in c.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&(pt + 1).to_string());
        }
        out.push(')');
    }
    out
}

/// A subset of `{0, .., n-1}` stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    degree: usize,
    words: Vec<u64>,
}

impl PointSet {
    pub fn empty(degree: usize) -> Self {
        PointSet {
            degree,
            words: vec![0; degree.div_ceil(64)],
        }
    }

    pub fn full(degree: usize) -> Self {
        Self::empty(degree).complement()
    }

    pub fn from_points(degree: usize, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let mut s = Self::empty(degree);
        for p in points {
            if p >= degree {
                return Err(Error::PointOutOfRange { point: p, degree });
            }
            s.insert(p);
        }
        Ok(s)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn insert(&mut self, p: Point) {
        self.words[p / 64] |= 1 << (p % 64);
    }

    #[inline]
    pub fn remove(&mut self, p: Point) {
        self.words[p / 64] &= !(1 << (p % 64));
    }

    #[inline]
    pub fn contains(&self, p: Point) -> bool {
        p < self.degree && self.words[p / 64] >> (p % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.degree).filter(move |&p| self.contains(p))
    }

    pub fn first(&self) -> Option<Point> {
        self.iter().next()
    }

    pub fn complement(&self) -> Self {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        let tail = self.degree % 64;
        if tail != 0 {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        PointSet {
            degree: self.degree,
            words,
        }
    }

    fn zip_with(&self, other: &PointSet, f: impl Fn(u64, u64) -> u64) -> PointSet {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        PointSet {
            degree: self.degree,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn intersection_len(&self, other: &PointSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.intersection_len(other) == 0
    }

    /// `{α^g : α ∈ self}`.
    pub fn image(&self, g: &Permutation) -> PointSet {
        let mut s = PointSet::empty(self.degree);
        for p in self.iter() {
            s.insert(g.image(p));
        }
        s
    }

    /// `{α : α^g ∈ self}`, i.e. the image under `g⁻¹`.
    pub fn preimage(&self, g: &Permutation) -> PointSet {
        let mut s = PointSet::empty(self.degree);
        for p in 0..self.degree {
            if self.contains(g.image(p)) {
                s.insert(p);
            }
        }
        s
    }

    pub fn to_vec(&self) -> Vec<Point> {
        self.iter().collect()
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // 1-based, to match cycle notation
        f.debug_set().entries(self.iter().map(|p| p + 1)).finish()
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        parse_cycles(s, n).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(p("()", 4), Permutation::identity(4));
        assert_eq!(p("(1,2,3)", 5).images(), &[1, 2, 0, 3, 4]);
        assert_eq!(p(" (1, 2)( 3 ,4) ", 4).images(), &[1, 0, 3, 2]);
        assert_eq!(p("(3)", 4), Permutation::identity(4));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_cycles("(1,2)(1,3)", 3), Err(Error::RepeatedPoint(1)));
        assert!(matches!(
            parse_cycles("(1,5)", 4),
            Err(Error::PointOutOfRange { point: 5, .. })
        ));
        assert!(matches!(
            parse_cycles("(0,1)", 4),
            Err(Error::PointOutOfRange { point: 0, .. })
        ));
        for bad in ["", "(1,2", "1,2)", "(1,,2)", "(1 2)", "(a)", "(1,2)x"] {
            assert!(
                matches!(parse_cycles(bad, 4), Err(Error::Malformed { .. })),
                "{bad:?}"
            );
        }
        assert_eq!(parse_cycles("()", 0), Err(Error::ZeroDegree));
    }

    #[test]
    fn format_examples() {
        assert_eq!(format_cycles(&Permutation::identity(4)), "()");
        let q = Permutation::from_images([1, 2, 0, 3, 4]).unwrap();
        assert_eq!(format_cycles(&q), "(1,2,3)");
        assert_eq!(format_cycles(&p("(5,4)(3,1,2)", 5)), "(1,2,3)(4,5)");
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = p("(1,2,3)", 5);
        let b = p("(3,4,5)", 5);
        // 2 -> 3 under a, 3 -> 4 under b
        assert_eq!(compose(&a, &b).unwrap().image(1), 3);
        assert_eq!(compose(&a, &Permutation::identity(5)).unwrap(), a);
        assert!(matches!(
            compose(&a, &Permutation::identity(4)),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn inverse_and_conjugate() {
        assert_eq!(inverse(&p("(1,2,3)", 3)), p("(1,3,2)", 3));
        assert_eq!(inverse(&Permutation::identity(3)), Permutation::identity(3));
        let u = p("(1,2)", 3);
        assert_eq!(conjugate(&u, &p("(1,3)", 3)).unwrap(), p("(2,3)", 3));
        assert_eq!(conjugate(&u, &Permutation::identity(3)).unwrap(), u);
        // conjugate_by agrees with the literal product g⁻¹ u g
        let g = p("(1,2,3)", 3);
        assert_eq!(u.conjugate_by(&g), g.inverse().then(&u).then(&g));
    }

    #[test]
    fn commutator_example_by_image_chase() {
        let u = p("(1,2,3)", 5);
        let v = p("(3,4,5)", 5);
        let c = commutator(&u, &v).unwrap();
        let (ui, vi) = (u.inverse(), v.inverse());
        for a in 0..5 {
            let chased = vi.image(ui.image(v.image(u.image(a))));
            assert_eq!(c.image(a), chased);
        }
        assert_eq!(c, p("(2,3,5)", 5));
        assert!(commutator(&u, &u).unwrap().is_identity());
        assert!(commutator(&p("(1,2)", 5), &p("(3,4,5)", 5))
            .unwrap()
            .is_identity());
    }

    #[test]
    fn support_and_fix() {
        let (s, f) = support_fix(&Permutation::identity(4));
        assert!(s.is_empty());
        assert_eq!(f.to_vec(), vec![0, 1, 2, 3]);
        let (s, f) = support_fix(&p("(1,2,3)", 5));
        assert_eq!(s.to_vec(), vec![0, 1, 2]);
        assert_eq!(f.to_vec(), vec![3, 4]);
    }

    #[test]
    fn orders_and_prime_witness() {
        let x = p("(1,2)(3,4,5)", 5);
        assert_eq!(element_order(&x), 6);
        assert_eq!(x.pow(6), Permutation::identity(5));
        assert_eq!(x.pow(-1), x.inverse());
        // smallest prime divisor 2 -> x^3 = (1,2)
        assert_eq!(prime_order_witness(&x).unwrap(), p("(1,2)", 5));
        assert_eq!(
            prime_order_witness(&Permutation::identity(3)),
            Err(Error::IdentityNotAllowed)
        );
        assert_eq!(smallest_prime_factor(49), 7);
        assert_eq!(smallest_prime_factor(13), 13);
    }

    #[test]
    fn point_set_ops() {
        let a = PointSet::from_points(70, [0, 5, 65]).unwrap();
        let b = PointSet::from_points(70, [5, 69]).unwrap();
        assert_eq!(a.union(&b).to_vec(), vec![0, 5, 65, 69]);
        assert_eq!(a.intersection(&b).to_vec(), vec![5]);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 65]);
        assert_eq!(a.complement().len(), 67);
        assert!(!a.complement().contains(65));
        assert!(PointSet::from_points(3, [3]).is_err());
        let g = p("(1,2,3)", 3);
        let s = PointSet::from_points(3, [0]).unwrap();
        assert_eq!(s.image(&g).to_vec(), vec![1]);
        assert_eq!(s.preimage(&g).to_vec(), vec![2]);
    }
}
