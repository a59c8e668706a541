//! Group-gyro factor systems `(K, H, σ, f, F)` and the extensions they
//! determine.

use std::fmt::Debug;

use rayon::prelude::*;
use serde::Serialize;

use crate::axioms::{Check, CheckReport};
use crate::error::{GyroError, Result};
use crate::extension::{big_f_formula, Extension, Section};
use crate::gyrogroup::FiniteGyrogroup;
use crate::perm::Perm;
use crate::product::PairIndex;
use crate::semi_cross::{validate_sigma, SigmaMap};
use crate::table::{tokenize, CayleyTable};

/// The data a factor-system validation reads. `H` may be infinite, in which
/// case `h_elements` is a finite window.
pub trait FactorData: Sync {
    type H: Copy + Eq + Debug + Send + Sync;
    type K: Copy + Eq + Debug + Send + Sync;

    fn name(&self) -> String;
    fn h_elements(&self) -> Vec<Self::H>;
    fn k_elements(&self) -> Vec<Self::K>;
    fn h_identity(&self) -> Self::H;
    fn h_op(&self, a: Self::H, b: Self::H) -> Self::H;
    fn h_inv(&self, a: Self::H) -> Self::H;
    fn k_identity(&self) -> Self::K;
    fn k_op(&self, x: Self::K, y: Self::K) -> Self::K;
    fn k_inv(&self, x: Self::K) -> Self::K;
    fn sigma(&self, x: Self::K, h: Self::H) -> Self::H;
    fn f(&self, x: Self::K, y: Self::K) -> Self::H;
    fn big_f(&self, x: Self::K, y: Self::K, l: Self::H, z: Self::K) -> Self::H;

    fn k_gyr(&self, x: Self::K, y: Self::K, z: Self::K) -> Self::K {
        self.k_op(self.k_inv(self.k_op(x, y)), self.k_op(x, self.k_op(y, z)))
    }
}

pub const COND_SIGMA_IDENTITY: &str = "(1) σ_e = I";
pub const COND_F_NORMALIZED: &str = "(2) f(x,e) = e = f(e,y)";
pub const COND_COMPATIBILITY: &str =
    "(3) f(x,y) σ_xy(F(l,z)) f(xy, gyr[x,y]z) = σ_x(σ_y(l) f(y,z)) f(x,yz)";
pub const COND_F_TRIVIAL: &str = "(4) F_(x,e)(l,z) = l = F_(e,y)(l,z)";
pub const COND_F_COMPOSITION: &str = "(5) composition law for F";
pub const COND_F_LEFT_LOOP: &str = "(6) F_(xy,y) = F_(x,y)";

/// Checks the six conditions in order. Witness elements are rendered with
/// `Debug` so that `H` and `K` may have different element types.
pub fn validate<D: FactorData>(d: &D) -> CheckReport<String> {
    let hs = d.h_elements();
    let ks = d.k_elements();
    let (he, ke) = (d.h_identity(), d.k_identity());
    let show = |v: &dyn Debug| format!("{v:?}");

    let mut c1 = Check::new(COND_SIGMA_IDENTITY);
    for &l in &hs {
        c1.checked += 1;
        if d.sigma(ke, l) != l {
            c1.fail(
                vec![show(&l)],
                format!("σ_e moves it to {:?}", d.sigma(ke, l)),
            );
            break;
        }
    }

    let mut c2 = Check::new(COND_F_NORMALIZED);
    for &x in &ks {
        c2.checked += 1;
        if d.f(x, ke) != he {
            c2.fail(vec![show(&x), show(&ke)], format!("f = {:?}", d.f(x, ke)));
        }
        if d.f(ke, x) != he {
            c2.fail(vec![show(&ke), show(&x)], format!("f = {:?}", d.f(ke, x)));
        }
    }

    let c3 = per_x(d, &ks, COND_COMPATIBILITY, |x, check| {
        for &y in &ks {
            let xy = d.k_op(x, y);
            for &z in &ks {
                let yz = d.k_op(y, z);
                let gz = d.k_gyr(x, y, z);
                for &l in &hs {
                    check.checked += 1;
                    let lhs = d.h_op(
                        d.h_op(d.f(x, y), d.sigma(xy, d.big_f(x, y, l, z))),
                        d.f(xy, gz),
                    );
                    let rhs = d.h_op(d.sigma(x, d.h_op(d.sigma(y, l), d.f(y, z))), d.f(x, yz));
                    if lhs != rhs {
                        check.fail(
                            vec![show(&x), show(&y), show(&l), show(&z)],
                            format!("{lhs:?} ≠ {rhs:?}"),
                        );
                        return;
                    }
                }
            }
        }
    });

    let c4 = per_x(d, &ks, COND_F_TRIVIAL, |x, check| {
        for &l in &hs {
            for &z in &ks {
                check.checked += 1;
                let (a, b) = (d.big_f(x, ke, l, z), d.big_f(ke, x, l, z));
                if a != l || b != l {
                    check.fail(
                        vec![show(&x), show(&l), show(&z)],
                        format!("F_(x,e) gives {a:?}, F_(e,x) gives {b:?}"),
                    );
                    return;
                }
            }
        }
    });

    let c5 = per_x(d, &ks, COND_F_COMPOSITION, |x, check| {
        for &y in &ks {
            for &z1 in &ks {
                let g1 = d.k_gyr(x, y, z1);
                for &z2 in &ks {
                    let g2 = d.k_gyr(x, y, z2);
                    let z12 = d.k_op(z1, z2);
                    let f12 = d.f(z1, z2);
                    let fg = d.f(g1, g2);
                    for &l1 in &hs {
                        let f_l1 = d.big_f(x, y, l1, z1);
                        for &l2 in &hs {
                            check.checked += 1;
                            let arg = d.h_op(d.h_op(l1, d.sigma(z1, l2)), f12);
                            let lhs = d.big_f(x, y, arg, z12);
                            let rhs = d.h_op(d.h_op(f_l1, d.sigma(g1, d.big_f(x, y, l2, z2))), fg);
                            if lhs != rhs {
                                check.fail(
                                    vec![
                                        show(&x),
                                        show(&y),
                                        show(&l1),
                                        show(&z1),
                                        show(&l2),
                                        show(&z2),
                                    ],
                                    format!("{lhs:?} ≠ {rhs:?}"),
                                );
                                return;
                            }
                        }
                    }
                }
            }
        }
    });

    let c6 = per_x(d, &ks, COND_F_LEFT_LOOP, |x, check| {
        for &y in &ks {
            let xy = d.k_op(x, y);
            for &l in &hs {
                for &z in &ks {
                    check.checked += 1;
                    if d.big_f(xy, y, l, z) != d.big_f(x, y, l, z) {
                        check.fail(
                            vec![show(&x), show(&y), show(&l), show(&z)],
                            "maps differ".into(),
                        );
                        return;
                    }
                }
            }
        }
    });

    CheckReport {
        structure: d.name(),
        checks: vec![c1, c2, c3, c4, c5, c6],
    }
}

/// Runs a check body per `x` in parallel and merges the results in order.
fn per_x<D: FactorData>(
    _d: &D,
    ks: &[D::K],
    name: &'static str,
    body: impl Fn(D::K, &mut Check<String>) + Sync,
) -> Check<String> {
    let parts: Vec<Check<String>> = ks
        .par_iter()
        .map(|&x| {
            let mut c = Check::new(name);
            body(x, &mut c);
            c
        })
        .collect();
    let mut check = Check::new(name);
    for p in parts {
        check.absorb(p);
    }
    check
}

/// A finite factor system. `F` is dense, indexed by `(x, y, l, z)`.
#[derive(Clone, Debug)]
pub struct FactorSystem {
    h: FiniteGyrogroup,
    k: FiniteGyrogroup,
    sigma: Vec<Perm>,
    f: Vec<usize>,
    big_f: Vec<usize>,
}

impl PartialEq for FactorSystem {
    fn eq(&self, other: &Self) -> bool {
        self.h.table() == other.h.table()
            && self.k.table() == other.k.table()
            && self.sigma == other.sigma
            && self.f == other.f
            && self.big_f == other.big_f
    }
}

impl Eq for FactorSystem {}

#[derive(Serialize)]
struct FactorSystemView<'a> {
    h: &'a str,
    k: &'a str,
    sigma: &'a [Perm],
    f: Vec<&'a [usize]>,
    big_f: Vec<Vec<&'a [usize]>>,
}

impl Serialize for FactorSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (nh, nk) = (self.h.order(), self.k.order());
        FactorSystemView {
            h: self.h.name(),
            k: self.k.name(),
            sigma: &self.sigma,
            f: self.f.chunks(nk).collect(),
            big_f: self
                .big_f
                .chunks(nh * nk)
                .map(|block| block.chunks(nk).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl FactorSystem {
    /// Checks shapes, ranges and that every `σ_x` is an automorphism; the
    /// six conditions are checked by [`FactorSystem::validate`].
    pub fn new(
        h: FiniteGyrogroup,
        k: FiniteGyrogroup,
        sigma: Vec<Perm>,
        f: Vec<usize>,
        big_f: Vec<usize>,
    ) -> Result<Self> {
        let (nh, nk) = (h.order(), k.order());
        let mismatch = |what: &str, got: usize, want: usize| {
            GyroError::DomainMismatch(format!("{what} has {got} entries, expected {want}"))
        };
        if sigma.len() != nk {
            return Err(mismatch("σ", sigma.len(), nk));
        }
        if f.len() != nk * nk {
            return Err(mismatch("f", f.len(), nk * nk));
        }
        if big_f.len() != nk * nk * nh * nk {
            return Err(mismatch("F", big_f.len(), nk * nk * nh * nk));
        }
        for (x, p) in sigma.iter().enumerate() {
            if p.len() != nh {
                return Err(mismatch(&format!("σ_{x}"), p.len(), nh));
            }
            if !h.is_automorphism(p) {
                return Err(GyroError::NotAutomorphism(format!(
                    "σ_{x} is not an automorphism of H"
                )));
            }
        }
        if let Some(&v) = f.iter().chain(&big_f).find(|&&v| v >= nh) {
            return Err(GyroError::OutOfRange { index: v, size: nh });
        }
        Ok(Self {
            h,
            k,
            sigma,
            f,
            big_f,
        })
    }

    pub fn h(&self) -> &FiniteGyrogroup {
        &self.h
    }

    pub fn k(&self) -> &FiniteGyrogroup {
        &self.k
    }

    pub fn sigma(&self, x: usize) -> &Perm {
        &self.sigma[x]
    }

    pub fn sigmas(&self) -> &[Perm] {
        &self.sigma
    }

    #[inline]
    pub fn f_at(&self, x: usize, y: usize) -> usize {
        self.f[x * self.k.order() + y]
    }

    #[inline]
    pub fn big_f_at(&self, x: usize, y: usize, l: usize, z: usize) -> usize {
        let (nh, nk) = (self.h.order(), self.k.order());
        self.big_f[((x * nk + y) * nh + l) * nk + z]
    }

    /// Replaces `f(x, y)`.
    pub fn with_f(mut self, x: usize, y: usize, value: usize) -> Result<Self> {
        let nk = self.k.order();
        if x >= nk || y >= nk {
            return Err(GyroError::OutOfRange {
                index: x.max(y),
                size: nk,
            });
        }
        if value >= self.h.order() {
            return Err(GyroError::OutOfRange {
                index: value,
                size: self.h.order(),
            });
        }
        self.f[x * nk + y] = value;
        Ok(self)
    }

    pub fn validate(&self) -> CheckReport<String> {
        validate(self)
    }

    /// File format: `H <ref>` and `K <ref>` lines, then `SIGMA` with `|K|`
    /// rows of `|H|` integers, `f` with `|K|` rows of `|K|` integers and `F`
    /// with `|K|²` blocks (in `(x, y)` order) of `|H|` rows of `|K|` integers.
    /// `resolve` turns a reference into a structure.
    pub fn parse(text: &str, resolve: impl Fn(&str) -> Result<FiniteGyrogroup>) -> Result<Self> {
        let mut h = None;
        let mut k = None;
        let mut sections: [String; 3] = Default::default();
        let mut current: Option<usize> = None;
        for line in text.lines() {
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let mut words = body.split_whitespace();
            match (words.next(), words.next()) {
                (Some("H"), Some(r)) => h = Some(resolve(r)?),
                (Some("K"), Some(r)) => k = Some(resolve(r)?),
                (Some("SIGMA"), None) => current = Some(0),
                (Some("f"), None) => current = Some(1),
                (Some("F"), None) => current = Some(2),
                _ => match current {
                    Some(i) => {
                        sections[i].push_str(body);
                        sections[i].push('\n');
                    }
                    None => return Err(GyroError::Parse(format!("unexpected line `{body}`"))),
                },
            }
        }
        let h = h.ok_or_else(|| GyroError::Parse("missing `H` line".into()))?;
        let k = k.ok_or_else(|| GyroError::Parse("missing `K` line".into()))?;
        let sigma = SigmaMap::parse(&h, &k, &sections[0])?.values().to_vec();
        let f = tokenize(&sections[1])?;
        let big_f = tokenize(&sections[2])?;
        Self::new(h, k, sigma, f, big_f)
    }

    pub fn to_text(&self, h_ref: &str, k_ref: &str) -> String {
        let (nh, nk) = (self.h.order(), self.k.order());
        let line = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        let mut out = format!("H {h_ref}\nK {k_ref}\nSIGMA\n");
        for p in &self.sigma {
            out += &line(p.as_slice());
            out.push('\n');
        }
        out += "f\n";
        for row in self.f.chunks(nk) {
            out += &line(row);
            out.push('\n');
        }
        out += "F\n";
        for (i, block) in self.big_f.chunks(nh * nk).enumerate() {
            out += &format!("# x = {}, y = {}\n", i / nk, i % nk);
            for row in block.chunks(nk) {
                out += &line(row);
                out.push('\n');
            }
        }
        out
    }
}

impl FactorData for FactorSystem {
    type H = usize;
    type K = usize;

    fn name(&self) -> String {
        format!("({}, {}, σ, f, F)", self.k.name(), self.h.name())
    }

    fn h_elements(&self) -> Vec<usize> {
        self.h.elements().collect()
    }

    fn k_elements(&self) -> Vec<usize> {
        self.k.elements().collect()
    }

    fn h_identity(&self) -> usize {
        0
    }

    fn h_op(&self, a: usize, b: usize) -> usize {
        self.h.op(a, b)
    }

    fn h_inv(&self, a: usize) -> usize {
        self.h.inv(a)
    }

    fn k_identity(&self) -> usize {
        0
    }

    fn k_op(&self, x: usize, y: usize) -> usize {
        self.k.op(x, y)
    }

    fn k_inv(&self, x: usize) -> usize {
        self.k.inv(x)
    }

    fn k_gyr(&self, x: usize, y: usize, z: usize) -> usize {
        self.k.gyr_apply(x, y, z)
    }

    fn sigma(&self, x: usize, h: usize) -> usize {
        self.sigma[x].apply(h)
    }

    fn f(&self, x: usize, y: usize) -> usize {
        self.f_at(x, y)
    }

    fn big_f(&self, x: usize, y: usize, l: usize, z: usize) -> usize {
        self.big_f_at(x, y, l, z)
    }
}

/// `σ ≡ I`, `f ≡ e`, `F(l, z) = l`.
pub fn trivial_factor_system(h: FiniteGyrogroup, k: FiniteGyrogroup) -> FactorSystem {
    let (nh, nk) = (h.order(), k.order());
    let big_f = (0..nk * nk)
        .flat_map(|_| (0..nh).flat_map(move |l| std::iter::repeat_n(l, nk)))
        .collect();
    FactorSystem::new(h, k, vec![Perm::identity(nh); nk], vec![0; nk * nk], big_f)
        .expect("trivial factor system is well formed")
}

/// The split factor system of a semi cross product: `f ≡ e`,
/// `F_{(x,y)}(l, z) = σ_{(xy)⁻¹}σ_xσ_y(l)`.
pub fn from_sigma(
    h: FiniteGyrogroup,
    k: FiniteGyrogroup,
    sigma: &SigmaMap,
) -> Result<FactorSystem> {
    let report = validate_sigma(&h, &k, sigma);
    if let Some(failure) = report.conditions.first_failure() {
        return Err(GyroError::Precondition(format!("invalid σ: {failure}")));
    }
    let (nh, nk) = (h.order(), k.order());
    let mut big_f = Vec::with_capacity(nk * nk * nh * nk);
    for x in 0..nk {
        for y in 0..nk {
            let w = k.inv(k.op(x, y));
            for l in 0..nh {
                let v = sigma.apply(w, sigma.apply(x, sigma.apply(y, l)));
                big_f.extend(std::iter::repeat_n(v, nk));
            }
        }
    }
    FactorSystem::new(h, k, sigma.values().to_vec(), vec![0; nk * nk], big_f)
}

/// Output of [`build_extension`].
#[derive(Clone, Debug)]
pub struct BuiltExtension {
    pub gyrogroup: FiniteGyrogroup,
    pub extension: Extension,
    pub section: Section,
    /// Comparison of the gyrator of the table with the `F` formula.
    pub gyr_check: Check<usize>,
}

/// The gyrogroup on `H × K` with `(a,x)(b,y) = (a σ_x(b) f(x,y), xy)`, its
/// extension `h ↦ (h, e)`, `(h, x) ↦ x` and the section `x ↦ (e, x)`.
pub fn build_extension(fs: &FactorSystem) -> Result<BuiltExtension> {
    let report = fs.validate();
    if let Some(failure) = report.first_failure() {
        return Err(GyroError::Precondition(format!(
            "invalid factor system: {failure}"
        )));
    }
    let (h, k) = (fs.h(), fs.k());
    let p = PairIndex::new(h.order(), k.order());
    let table = CayleyTable::from_fn(p.size(), |a, b| {
        let ((ha, x), (hb, y)) = (p.decode(a), p.decode(b));
        p.encode(
            h.op(h.op(ha, fs.sigma(x).apply(hb)), fs.f_at(x, y)),
            k.op(x, y),
        )
    })
    .map_err(|e| GyroError::Inconsistent(format!("valid factor system gave a bad table: {e}")))?;
    let g = FiniteGyrogroup::new(format!("{} x_F {}", h.name(), k.name()), table).map_err(|e| {
        GyroError::Inconsistent(format!("valid factor system gave a non-gyrogroup: {e}"))
    })?;

    let gyr_check = gyr_matches_factor_system(&g, fs);
    if !gyr_check.passed {
        return Err(GyroError::Inconsistent(format!(
            "gyr of the built table disagrees with F: {:?}",
            gyr_check.witness
        )));
    }

    let inclusion = h.elements().map(|a| p.encode(a, 0)).collect();
    let projection = g.elements().map(|a| p.decode(a).1).collect();
    let extension = Extension::new(h.clone(), g.clone(), k.clone(), inclusion, projection)?;
    let section = Section::new(&extension, k.elements().collect())?;
    Ok(BuiltExtension {
        gyrogroup: g,
        extension,
        section,
        gyr_check,
    })
}

/// `gyr[(a,x),(b,y)](c,z) = (F_{(x,y)}(c,z), gyr[x,y]z)` over all arguments.
pub fn gyr_matches_factor_system(g: &FiniteGyrogroup, fs: &FactorSystem) -> Check<usize> {
    let p = PairIndex::new(fs.h().order(), fs.k().order());
    let mut check = Check::new("gyr from table = gyr from F");
    for a in g.elements() {
        for b in g.elements() {
            let (x, y) = (p.decode(a).1, p.decode(b).1);
            for c in g.elements() {
                check.checked += 1;
                let (l, z) = p.decode(c);
                let want = p.encode(fs.big_f_at(x, y, l, z), fs.k().gyr_apply(x, y, z));
                let got = g.gyr_apply(a, b, c);
                if got != want {
                    check.fail(vec![a, b, c], format!("table {got}, formula {want}"));
                    return check;
                }
            }
        }
    }
    check
}

/// `F` recomputed from `σ` and `f` by the closed formula.
pub fn big_f_from_sigma_f(fs: &FactorSystem) -> Vec<usize> {
    let (h, k) = (fs.h(), fs.k());
    let (nh, nk) = (h.order(), k.order());
    let mut out = Vec::with_capacity(nk * nk * nh * nk);
    for x in 0..nk {
        for y in 0..nk {
            for l in 0..nh {
                for z in 0..nk {
                    out.push(big_f_formula(
                        h,
                        k,
                        |w, a| fs.sigma(w).apply(a),
                        |a, b| fs.f_at(a, b),
                        x,
                        y,
                        l,
                        z,
                    ));
                }
            }
        }
    }
    out
}
