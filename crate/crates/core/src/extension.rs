//! Extensions `{e} → H → G → K → {e}` with sections, and extraction of the
//! data `(σᵗ, fᵗ, Fᵗ)` from a group-gyro extension.

use serde::Serialize;

use crate::axioms::{is_group, Check, CheckReport, Window};
use crate::error::{GyroError, Result};
use crate::factor::FactorSystem;
use crate::gyrogroup::FiniteGyrogroup;
use crate::perm::Perm;
use crate::structure::{is_normal, Subset};

/// A short exact sequence of finite gyrogroups with `H` a group.
#[derive(Clone, Debug)]
pub struct Extension {
    h: FiniteGyrogroup,
    g: FiniteGyrogroup,
    k: FiniteGyrogroup,
    inclusion: Vec<usize>,
    projection: Vec<usize>,
    kernel_index: Vec<Option<usize>>,
}

impl Extension {
    /// Validates and builds the sequence `H --i--> G --β--> K`.
    pub fn new(
        h: FiniteGyrogroup,
        g: FiniteGyrogroup,
        k: FiniteGyrogroup,
        inclusion: Vec<usize>,
        projection: Vec<usize>,
    ) -> Result<Self> {
        let (nh, ng, nk) = (h.order(), g.order(), k.order());
        if inclusion.len() != nh {
            return Err(GyroError::DomainMismatch(format!(
                "inclusion has {} values, H has {nh} elements",
                inclusion.len()
            )));
        }
        if projection.len() != ng {
            return Err(GyroError::DomainMismatch(format!(
                "projection has {} values, G has {ng} elements",
                projection.len()
            )));
        }
        for &v in &inclusion {
            if v >= ng {
                return Err(GyroError::OutOfRange { index: v, size: ng });
            }
        }
        for &v in &projection {
            if v >= nk {
                return Err(GyroError::OutOfRange { index: v, size: nk });
            }
        }
        if !is_group(&h, &Window::full(nh)).is_group {
            return Err(GyroError::Precondition(format!(
                "{} is not a group",
                h.name()
            )));
        }
        if let Some((a, b)) = hom_failure(&h, &g, &inclusion) {
            return Err(GyroError::Precondition(format!(
                "inclusion is not a homomorphism at ({a}, {b})"
            )));
        }
        if let Some((a, b)) = hom_failure(&g, &k, &projection) {
            return Err(GyroError::Precondition(format!(
                "projection is not a homomorphism at ({a}, {b})"
            )));
        }
        let mut kernel_index = vec![None; ng];
        for (i, &v) in inclusion.iter().enumerate() {
            if kernel_index[v].replace(i).is_some() {
                return Err(GyroError::Precondition("inclusion is not injective".into()));
            }
        }
        let mut hit = vec![false; nk];
        for &x in &projection {
            hit[x] = true;
        }
        if let Some(x) = hit.iter().position(|&b| !b) {
            return Err(GyroError::Precondition(format!(
                "projection is not surjective (misses {x})"
            )));
        }
        for a in 0..ng {
            if (projection[a] == 0) != kernel_index[a].is_some() {
                return Err(GyroError::Precondition(format!(
                    "image of inclusion differs from kernel of projection at {a}"
                )));
            }
        }
        let image = Subset::new(&g, inclusion.iter().copied())?;
        if !is_normal(&g, &image)?.passed() {
            return Err(GyroError::Precondition(
                "image of inclusion is not a normal subgroup".into(),
            ));
        }
        Ok(Self {
            h,
            g,
            k,
            inclusion,
            projection,
            kernel_index,
        })
    }

    /// Builds the extension with `H = ker β`, its elements numbered in
    /// increasing order.
    pub fn from_projection(
        g: FiniteGyrogroup,
        k: FiniteGyrogroup,
        projection: Vec<usize>,
    ) -> Result<Self> {
        if projection.len() != g.order() {
            return Err(GyroError::DomainMismatch(format!(
                "projection has {} values, G has {} elements",
                projection.len(),
                g.order()
            )));
        }
        let kernel: Vec<usize> = g.elements().filter(|&a| projection[a] == 0).collect();
        let subset = Subset::new(&g, kernel.iter().copied())?;
        let h = crate::structure::induced(&g, &subset, &format!("ker({})", g.name()))?;
        Self::new(h, g, k, kernel, projection)
    }

    pub fn h(&self) -> &FiniteGyrogroup {
        &self.h
    }

    pub fn g(&self) -> &FiniteGyrogroup {
        &self.g
    }

    pub fn k(&self) -> &FiniteGyrogroup {
        &self.k
    }

    pub fn inclusion(&self) -> &[usize] {
        &self.inclusion
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    #[inline]
    pub fn include(&self, h: usize) -> usize {
        self.inclusion[h]
    }

    #[inline]
    pub fn project(&self, g: usize) -> usize {
        self.projection[g]
    }

    /// The `h` with `i(h) = g`, if `g` lies in the kernel.
    #[inline]
    pub fn kernel_preimage(&self, g: usize) -> Option<usize> {
        self.kernel_index[g]
    }

    /// Elements of `G` over `x`.
    pub fn fiber(&self, x: usize) -> Vec<usize> {
        self.g
            .elements()
            .filter(|&a| self.projection[a] == x)
            .collect()
    }
}

fn hom_failure(
    from: &FiniteGyrogroup,
    to: &FiniteGyrogroup,
    map: &[usize],
) -> Option<(usize, usize)> {
    from.elements()
        .flat_map(|a| from.elements().map(move |b| (a, b)))
        .find(|&(a, b)| map[from.op(a, b)] != to.op(map[a], map[b]))
}

/// A right inverse `t` of the projection with `t(e) = e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Section(Vec<usize>);

impl Section {
    pub fn new(e: &Extension, values: Vec<usize>) -> Result<Self> {
        if values.len() != e.k().order() {
            return Err(GyroError::DomainMismatch(format!(
                "section has {} values, K has {} elements",
                values.len(),
                e.k().order()
            )));
        }
        for (x, &v) in values.iter().enumerate() {
            if v >= e.g().order() {
                return Err(GyroError::OutOfRange {
                    index: v,
                    size: e.g().order(),
                });
            }
            if e.project(v) != x {
                return Err(GyroError::Precondition(format!(
                    "β(t({x})) = {} ≠ {x}",
                    e.project(v)
                )));
            }
        }
        if values[0] != 0 {
            return Err(GyroError::Precondition("t(e) must be e".into()));
        }
        Ok(Self(values))
    }

    #[inline]
    pub fn at(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }
}

/// Checks `gyr[i(h), g] = I` (and `gyr[g, i(h)] = I`) for all `h`, `g`.
pub fn is_group_gyro_extension(e: &Extension) -> Check<usize> {
    let g = e.g();
    let mut check = Check::new("gyr[h,g] = I");
    for &ih in e.inclusion() {
        for a in g.elements() {
            check.checked += 1;
            for (p, q) in [(ih, a), (a, ih)] {
                if let Some(c) = g.elements().find(|&c| g.gyr_apply(p, q, c) != c) {
                    check.fail(vec![p, q, c], format!("gyr[{p},{q}] moves {c}"));
                    return check;
                }
            }
        }
    }
    check
}

const SECTION_GUARD: u128 = 1_000_000;

/// Every section of a finite extension: `|H|^(|K|-1)` of them.
pub fn enumerate_sections(e: &Extension) -> Result<Vec<Section>> {
    let nk = e.k().order();
    let fibers: Vec<Vec<usize>> = (0..nk).map(|x| e.fiber(x)).collect();
    let count: u128 = fibers[1..].iter().map(|f| f.len() as u128).product();
    if count > SECTION_GUARD {
        return Err(GyroError::SearchGuard {
            candidates: count,
            guard: SECTION_GUARD,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut digits = vec![0usize; nk];
    loop {
        let values: Vec<usize> = (0..nk)
            .map(|x| if x == 0 { 0 } else { fibers[x][digits[x]] })
            .collect();
        out.push(Section(values));
        // odometer over x = 1..nk
        let mut x = 1;
        while x < nk {
            digits[x] += 1;
            if digits[x] < fibers[x].len() {
                break;
            }
            digits[x] = 0;
            x += 1;
        }
        if x >= nk {
            break;
        }
    }
    Ok(out)
}

/// Coordinates of `G` relative to a section.
#[derive(Clone, Debug)]
pub struct Chart {
    n_k: usize,
    coords: Vec<(usize, usize)>,
    elements: Vec<usize>,
}

impl Chart {
    /// Maps `(h, x)` to `gyr[t(x), i(h)](i(h) ⊕ t(x))`, which is
    /// `i(h) ⊕ t(x)` for group-gyro extensions, and checks it is a bijection
    /// `H × K → G` compatible with the projection.
    pub fn new(e: &Extension, t: &Section) -> Result<Self> {
        let (nh, nk, ng) = (e.h().order(), e.k().order(), e.g().order());
        if nh * nk != ng {
            return Err(GyroError::Inconsistent(format!(
                "|H|·|K| = {} but |G| = {ng}",
                nh * nk
            )));
        }
        let g = e.g();
        let mut coords = vec![None; ng];
        let mut elements = vec![0; ng];
        for h in 0..nh {
            for x in 0..nk {
                let ih = e.include(h);
                let tx = t.at(x);
                let value = g.gyr_apply(tx, ih, g.op(ih, tx));
                if e.project(value) != x {
                    return Err(GyroError::Inconsistent(format!(
                        "representation of ({h}, {x}) projects to {}",
                        e.project(value)
                    )));
                }
                if let Some(prev) = coords[value].replace((h, x)) {
                    return Err(GyroError::Inconsistent(format!(
                        "representation collision: {prev:?} and ({h}, {x}) both give {value}"
                    )));
                }
                elements[h * nk + x] = value;
            }
        }
        Ok(Self {
            n_k: nk,
            coords: coords.into_iter().map(Option::unwrap).collect(),
            elements,
        })
    }

    #[inline]
    pub fn coords(&self, g: usize) -> (usize, usize) {
        self.coords[g]
    }

    #[inline]
    pub fn element(&self, h: usize, x: usize) -> usize {
        self.elements[h * self.n_k + x]
    }
}

/// The unique `(h, x)` representing `g` relative to `t`.
pub fn represent(e: &Extension, t: &Section, g: usize) -> Result<(usize, usize)> {
    if g >= e.g().order() {
        return Err(GyroError::OutOfRange {
            index: g,
            size: e.g().order(),
        });
    }
    Ok(Chart::new(e, t)?.coords(g))
}

/// How [`extract_big_f`] computes `Fᵗ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FMode {
    /// Closed formula and direct read-off from `G`, required to agree.
    #[default]
    CrossChecked,
    /// Read-off only.
    ReadOff,
}

/// Cached extraction of `(σᵗ, fᵗ, Fᵗ)` for one extension and section.
pub struct Extractor<'a> {
    e: &'a Extension,
    chart: Chart,
    sigma: Vec<Perm>,
    f: Vec<usize>,
}

impl<'a> Extractor<'a> {
    pub fn new(e: &'a Extension, t: &'a Section) -> Result<Self> {
        let gg = is_group_gyro_extension(e);
        if !gg.passed {
            return Err(GyroError::Precondition(format!(
                "not a group-gyro extension: {:?}",
                gg.witness
            )));
        }
        let chart = Chart::new(e, t)?;
        let (nk, nh) = (e.k().order(), e.h().order());
        let g = e.g();
        let mut sigma = Vec::with_capacity(nk);
        for x in 0..nk {
            let tx = t.at(x);
            let tx_inv = g.inv(tx);
            let mut image = Vec::with_capacity(nh);
            for h in 0..nh {
                let v = g.op(g.op(tx, e.include(h)), tx_inv);
                image.push(e.kernel_preimage(v).ok_or_else(|| {
                    GyroError::Inconsistent(format!("(t({x}) ⊕ {h}) ⊕ t({x})⁻¹ leaves H"))
                })?);
            }
            let perm = Perm::new(image).map_err(|_| {
                GyroError::NotAutomorphism(format!("σ_{x} is not a bijection of H"))
            })?;
            if !e.h().is_automorphism(&perm) {
                return Err(GyroError::NotAutomorphism(format!(
                    "σ_{x} does not preserve the group operation of H"
                )));
            }
            sigma.push(perm);
        }
        let mut f = vec![0; nk * nk];
        for x in 0..nk {
            for y in 0..nk {
                let (h, z) = chart.coords(g.op(t.at(x), t.at(y)));
                if z != e.k().op(x, y) {
                    return Err(GyroError::Inconsistent(format!(
                        "t({x}) ⊕ t({y}) does not lie over {x} ⊕ {y}"
                    )));
                }
                f[x * nk + y] = h;
            }
        }
        Ok(Self { e, chart, sigma, f })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn sigma(&self, x: usize) -> &Perm {
        &self.sigma[x]
    }

    pub fn f(&self, x: usize, y: usize) -> usize {
        self.f[x * self.e.k().order() + y]
    }

    /// `Fᵗ_{(x,y)}` read off `gyr[h t(x), k t(y)](l t(z))`, checked to be
    /// independent of `h` and `k`. Entry `l * |K| + z`.
    pub fn big_f_read_off(&self, x: usize, y: usize) -> Result<Vec<usize>> {
        let (e, g, k) = (self.e, self.e.g(), self.e.k());
        let (nh, nk) = (e.h().order(), k.order());
        let mut out = vec![0; nh * nk];
        for l in 0..nh {
            for z in 0..nk {
                let arg = self.chart.element(l, z);
                let mut value = None;
                for h in 0..nh {
                    for kk in 0..nh {
                        let a = self.chart.element(h, x);
                        let b = self.chart.element(kk, y);
                        let (fv, zz) = self.chart.coords(g.gyr_apply(a, b, arg));
                        if zz != k.gyr_apply(x, y, z) {
                            return Err(GyroError::Inconsistent(format!(
                                "K-part of gyr[({h},{x}),({kk},{y})]({l},{z}) is {zz}, \
                                 expected gyr[{x},{y}]({z})"
                            )));
                        }
                        match value {
                            None => value = Some(fv),
                            Some(v) if v != fv => {
                                return Err(GyroError::Inconsistent(format!(
                                    "F_({x},{y})({l},{z}) depends on h, k"
                                )))
                            }
                            Some(_) => {}
                        }
                    }
                }
                out[l * nk + z] = value.expect("H is non-empty");
            }
        }
        Ok(out)
    }

    /// `Fᵗ_{(x,y)}` from `σᵗ` and `fᵗ` by the closed formula.
    pub fn big_f_formula(&self, x: usize, y: usize) -> Vec<usize> {
        let (h, k) = (self.e.h(), self.e.k());
        let nk = k.order();
        let mut out = vec![0; h.order() * nk];
        for l in 0..h.order() {
            for z in 0..nk {
                out[l * nk + z] = big_f_formula(
                    h,
                    k,
                    |w, a| self.sigma[w].apply(a),
                    |a, b| self.f(a, b),
                    x,
                    y,
                    l,
                    z,
                );
            }
        }
        out
    }
}

/// `F_{(x,y)}(l,z) = f(w,xy)⁻¹ σ_w(f(x,y)⁻¹ σ_x(σ_y(l) f(y,z)) f(x,yz)) f(w, x(yz))`
/// with `w = (xy)⁻¹`, products in `H` and `K` bracketed as written.
#[allow(clippy::too_many_arguments)]
pub fn big_f_formula(
    h: &FiniteGyrogroup,
    k: &FiniteGyrogroup,
    sigma: impl Fn(usize, usize) -> usize,
    f: impl Fn(usize, usize) -> usize,
    x: usize,
    y: usize,
    l: usize,
    z: usize,
) -> usize {
    let xy = k.op(x, y);
    let w = k.inv(xy);
    let yz = k.op(y, z);
    let x_yz = k.op(x, yz);
    let inner = h.op(sigma(y, l), f(y, z));
    let middle = h.op(h.op(h.inv(f(x, y)), sigma(x, inner)), f(x, yz));
    h.op(h.op(h.inv(f(w, xy)), sigma(w, middle)), f(w, x_yz))
}

pub fn extract_sigma(e: &Extension, t: &Section, x: usize) -> Result<Perm> {
    check_k(e, x)?;
    Ok(Extractor::new(e, t)?.sigma(x).clone())
}

pub fn extract_f(e: &Extension, t: &Section, x: usize, y: usize) -> Result<usize> {
    check_k(e, x)?;
    check_k(e, y)?;
    Ok(Extractor::new(e, t)?.f(x, y))
}

/// `Fᵗ_{(x,y)}` as a table with entry `l * |K| + z`.
pub fn extract_big_f(
    e: &Extension,
    t: &Section,
    x: usize,
    y: usize,
    mode: FMode,
) -> Result<Vec<usize>> {
    check_k(e, x)?;
    check_k(e, y)?;
    let ex = Extractor::new(e, t)?;
    big_f_checked(&ex, x, y, mode)
}

fn big_f_checked(ex: &Extractor<'_>, x: usize, y: usize, mode: FMode) -> Result<Vec<usize>> {
    let read = ex.big_f_read_off(x, y)?;
    if mode == FMode::CrossChecked {
        let formula = ex.big_f_formula(x, y);
        if let Some(i) = (0..read.len()).find(|&i| read[i] != formula[i]) {
            let nk = ex.e.k().order();
            return Err(GyroError::Inconsistent(format!(
                "F_({x},{y})({},{}) is {} by formula but {} read off G",
                i / nk,
                i % nk,
                formula[i],
                read[i]
            )));
        }
    }
    Ok(read)
}

fn check_k(e: &Extension, x: usize) -> Result<()> {
    if x >= e.k().order() {
        return Err(GyroError::OutOfRange {
            index: x,
            size: e.k().order(),
        });
    }
    Ok(())
}

/// The factor system `(K, H, σᵗ, fᵗ, Fᵗ)` of a group-gyro extension.
pub fn extract_factor_system(e: &Extension, t: &Section) -> Result<FactorSystem> {
    extract_factor_system_with(e, t, FMode::CrossChecked)
}

pub fn extract_factor_system_with(e: &Extension, t: &Section, mode: FMode) -> Result<FactorSystem> {
    let ex = Extractor::new(e, t)?;
    let (nh, nk) = (e.h().order(), e.k().order());
    let mut big_f = Vec::with_capacity(nk * nk * nh * nk);
    for x in 0..nk {
        for y in 0..nk {
            big_f.extend(big_f_checked(&ex, x, y, mode)?);
        }
    }
    FactorSystem::new(
        e.h().clone(),
        e.k().clone(),
        ex.sigma.clone(),
        ex.f.clone(),
        big_f,
    )
}

pub const COORDINATE_PRODUCT: &str = "(h t(x))(k t(y)) = (h σ_x(k) f(x,y)) t(xy)";
pub const SECTION_INVERSE: &str = "t(x)^-1 = f(x^-1,x)^-1 t(x^-1)";
pub const F_COMPATIBILITY: &str =
    "σ_x(σ_y(l) f(y,z)) f(x,yz) = f(x,y) σ_xy(F(l,z)) f(xy, gyr[x,y]z)";
pub const COORDINATE_UNIQUENESS: &str = "h t(x) = h' t(x) implies h = h'";
pub const SIGMA_INVERSE: &str = "σ_x^-1(h) = f(x^-1,x)^-1 σ_x^-1(h) f(x^-1,x)";
pub const F_INVERSE_PAIR: &str = "σ_x(f(x^-1,x)^-1) f(x,x^-1) = e";
pub const GYR_CONJUGATE: &str = "gyr[t(x)h, t(x)^-1] = I";
pub const F_TRIVIAL_ARGS: &str = "F_(x,e)(l,z) = l = F_(e,y)(l,z)";
pub const F_MULTIPLICATIVE: &str = "F_(x,y) multiplicative";
pub const F_LEFT_LOOP: &str = "F_(xy,y) = F_(x,y)";
pub const GYR_DECOMPOSITION: &str = "gyr[h t(x), k t(y)](l t(z)) = F(l,z) t(gyr[x,y]z)";

/// Exhaustively checks the identities a group-gyro extension with a section
/// satisfies, in terms of the extracted `σᵗ`, `fᵗ` and the read-off `Fᵗ`.
pub fn verify_extension_identities(e: &Extension, t: &Section) -> Result<CheckReport<usize>> {
    let ex = Extractor::new(e, t)?;
    let (g, h, k) = (e.g(), e.h(), e.k());
    let (nh, nk) = (h.order(), k.order());
    let s = |x: usize, a: usize| ex.sigma(x).apply(a);
    let f = |x: usize, y: usize| ex.f(x, y);
    let el = |a: usize, x: usize| ex.chart().element(a, x);

    let mut big_f = Vec::with_capacity(nk * nk);
    let mut decomposition = Check::new(GYR_DECOMPOSITION);
    for x in 0..nk {
        for y in 0..nk {
            let read = ex.big_f_read_off(x, y)?;
            let formula = ex.big_f_formula(x, y);
            decomposition.checked += 1;
            if let Some(i) = (0..read.len()).find(|&i| read[i] != formula[i]) {
                decomposition.fail(
                    vec![x, y, i / nk, i % nk],
                    format!("formula gives {}, G gives {}", formula[i], read[i]),
                );
            }
            big_f.push(read);
        }
    }
    let bf = |x: usize, y: usize, l: usize, z: usize| big_f[x * nk + y][l * nk + z];

    let mut product = Check::new(COORDINATE_PRODUCT);
    for a in 0..nh {
        for x in 0..nk {
            for b in 0..nh {
                for y in 0..nk {
                    product.checked += 1;
                    let lhs = g.op(el(a, x), el(b, y));
                    let coeff = h.op(h.op(a, s(x, b)), f(x, y));
                    let rhs = el(coeff, k.op(x, y));
                    if lhs != rhs {
                        product.fail(vec![a, x, b, y], format!("{lhs} ≠ {rhs}"));
                    }
                }
            }
        }
    }

    let mut section_inverse = Check::new(SECTION_INVERSE);
    for x in 0..nk {
        section_inverse.checked += 1;
        let xi = k.inv(x);
        let rhs = g.op(e.include(h.inv(f(xi, x))), t.at(xi));
        if g.inv(t.at(x)) != rhs {
            section_inverse.fail(vec![x], format!("t(x)⁻¹ = {}, rhs = {rhs}", g.inv(t.at(x))));
        }
    }

    let mut compat = Check::new(F_COMPATIBILITY);
    for x in 0..nk {
        for y in 0..nk {
            let xy = k.op(x, y);
            for z in 0..nk {
                let yz = k.op(y, z);
                let gz = k.gyr_apply(x, y, z);
                for l in 0..nh {
                    compat.checked += 1;
                    let lhs = h.op(s(x, h.op(s(y, l), f(y, z))), f(x, yz));
                    let rhs = h.op(h.op(f(x, y), s(xy, bf(x, y, l, z))), f(xy, gz));
                    if lhs != rhs {
                        compat.fail(vec![x, y, z, l], format!("{lhs} ≠ {rhs}"));
                    }
                }
            }
        }
    }

    let mut uniqueness = Check::new(COORDINATE_UNIQUENESS);
    for x in 0..nk {
        let mut seen = vec![false; g.order()];
        for a in 0..nh {
            uniqueness.checked += 1;
            let v = g.op(e.include(a), t.at(x));
            if std::mem::replace(&mut seen[v], true) {
                uniqueness.fail(vec![a, x], format!("{v} has two H-coordinates"));
            }
        }
    }

    let mut sigma_inverse = Check::new(SIGMA_INVERSE);
    let mut inverse_pair = Check::new(F_INVERSE_PAIR);
    for x in 0..nk {
        let xi = k.inv(x);
        let fxi = f(xi, x);
        let inv_sigma = ex.sigma(x).inverse();
        for a in 0..nh {
            sigma_inverse.checked += 1;
            let rhs = h.op(h.op(h.inv(fxi), s(xi, a)), fxi);
            if inv_sigma.apply(a) != rhs {
                sigma_inverse.fail(vec![x, a], format!("{} ≠ {rhs}", inv_sigma.apply(a)));
            }
        }
        inverse_pair.checked += 1;
        let v = h.op(s(x, h.inv(fxi)), f(x, xi));
        if v != 0 {
            inverse_pair.fail(vec![x], format!("value {v}"));
        }
    }

    let mut conjugate = Check::new(GYR_CONJUGATE);
    for x in 0..nk {
        let tx = t.at(x);
        for a in 0..nh {
            conjugate.checked += 1;
            let p = g.op(tx, e.include(a));
            if let Some(c) = g.elements().find(|&c| g.gyr_apply(p, g.inv(tx), c) != c) {
                conjugate.fail(vec![x, a, c], "gyroautomorphism moves c".into());
            }
        }
    }

    let mut trivial_args = Check::new(F_TRIVIAL_ARGS);
    for x in 0..nk {
        for l in 0..nh {
            for z in 0..nk {
                trivial_args.checked += 1;
                if bf(x, 0, l, z) != l || bf(0, x, l, z) != l {
                    trivial_args.fail(vec![x, l, z], "F moves l".into());
                }
            }
        }
    }

    let mut multiplicative = Check::new(F_MULTIPLICATIVE);
    for x in 0..nk {
        for y in 0..nk {
            for z1 in 0..nk {
                let gz1 = k.gyr_apply(x, y, z1);
                for z2 in 0..nk {
                    let gz2 = k.gyr_apply(x, y, z2);
                    let z12 = k.op(z1, z2);
                    for l1 in 0..nh {
                        for l2 in 0..nh {
                            multiplicative.checked += 1;
                            let arg = h.op(h.op(l1, s(z1, l2)), f(z1, z2));
                            let lhs = bf(x, y, arg, z12);
                            let rhs = h.op(
                                h.op(bf(x, y, l1, z1), s(gz1, bf(x, y, l2, z2))),
                                f(gz1, gz2),
                            );
                            if lhs != rhs {
                                multiplicative
                                    .fail(vec![x, y, l1, z1, l2, z2], format!("{lhs} ≠ {rhs}"));
                            }
                        }
                    }
                }
            }
        }
    }

    let mut left_loop = Check::new(F_LEFT_LOOP);
    for x in 0..nk {
        for y in 0..nk {
            left_loop.checked += 1;
            if big_f[k.op(x, y) * nk + y] != big_f[x * nk + y] {
                left_loop.fail(vec![x, y], "maps differ".into());
            }
        }
    }

    Ok(CheckReport {
        structure: g.name().to_string(),
        checks: vec![
            decomposition,
            product,
            section_inverse,
            compat,
            uniqueness,
            sigma_inverse,
            inverse_pair,
            conjugate,
            trivial_args,
            multiplicative,
            left_loop,
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::factor::{build_extension, trivial_factor_system};
    use crate::semi_cross::semi_cross_extension;

    fn g24b_extension() -> (Extension, Section) {
        let (e, t) = semi_cross_extension(
            &builtin::cyclic(3),
            &builtin::k8(),
            &builtin::sigma_k8_at_seven(&builtin::cyclic(3)),
        )
        .unwrap();
        (e, t)
    }

    #[test]
    fn group_gyro_examples() {
        let built =
            build_extension(&trivial_factor_system(builtin::cyclic(3), builtin::k8())).unwrap();
        assert!(is_group_gyro_extension(&built.extension).passed);
        let (e, _) = g24b_extension();
        assert!(is_group_gyro_extension(&e).passed);
    }

    #[test]
    fn section_counts() {
        let (e, t) = g24b_extension();
        let all = enumerate_sections(&e).unwrap();
        assert_eq!(all.len(), 2187);
        assert!(all.contains(&t));

        // |H| = 1
        let k8 = builtin::k8();
        let e1 = Extension::from_projection(k8.clone(), k8.clone(), (0..8).collect()).unwrap();
        assert_eq!(enumerate_sections(&e1).unwrap().len(), 1);
    }

    #[test]
    fn section_validation() {
        let (e, _) = g24b_extension();
        assert!(Section::new(&e, vec![0, 1, 2, 3, 4, 5, 6, 8]).is_err());
        assert!(Section::new(&e, vec![8, 1, 2, 3, 4, 5, 6, 7]).is_err());
        assert!(Section::new(&e, vec![0; 3]).is_err());
    }

    #[test]
    fn represent_examples() {
        let (e, t) = g24b_extension();
        assert_eq!(represent(&e, &t, 0).unwrap(), (0, 0));
        for x in 0..8 {
            assert_eq!(represent(&e, &t, t.at(x)).unwrap(), (0, x));
        }
        for g in 0..24 {
            assert_eq!(represent(&e, &t, g).unwrap(), (g / 8, g % 8));
        }
        assert!(represent(&e, &t, 24).is_err());
    }

    #[test]
    fn sigma_and_f_examples() {
        let (e, t) = g24b_extension();
        let f = builtin::negation(&builtin::cyclic(3));
        assert!(extract_sigma(&e, &t, 0).unwrap().is_identity());
        assert_eq!(extract_sigma(&e, &t, 7).unwrap(), f);
        assert!(extract_sigma(&e, &t, 3).unwrap().is_identity());
        for x in 0..8 {
            for y in 0..8 {
                assert_eq!(extract_f(&e, &t, x, y).unwrap(), 0);
            }
        }
        // t(1) = (1̄, 1), else canonical
        let mut v: Vec<usize> = (0..8).collect();
        v[1] = 8 + 1;
        let s = Section::new(&e, v).unwrap();
        let nonzero = (0..8)
            .flat_map(|x| (0..8).map(move |y| (x, y)))
            .any(|(x, y)| extract_f(&e, &s, x, y).unwrap() != 0);
        assert!(nonzero);
        for x in 0..8 {
            assert_eq!(extract_f(&e, &s, x, 0).unwrap(), 0);
            assert_eq!(extract_f(&e, &s, 0, x).unwrap(), 0);
        }
    }

    #[test]
    fn big_f_examples() {
        let (e, t) = g24b_extension();
        let f = builtin::negation(&builtin::cyclic(3));
        for x in 0..8 {
            let fx = extract_big_f(&e, &t, x, 0, FMode::CrossChecked).unwrap();
            assert!((0..24).all(|i| fx[i] == i / 8));
        }
        let f16 = extract_big_f(&e, &t, 1, 6, FMode::CrossChecked).unwrap();
        for l in 0..3 {
            for z in 0..8 {
                assert_eq!(f16[l * 8 + z], f.apply(l));
            }
        }
        let f12 = extract_big_f(&e, &t, 1, 2, FMode::CrossChecked).unwrap();
        assert!((0..24).all(|i| f12[i] == i / 8));
        assert!(!e.k().gyr(1, 2).unwrap().is_identity());
    }

    #[test]
    fn formula_agrees_with_read_off_for_every_section() {
        // every section of Z3 → G24b → K8, including non-homomorphic ones
        let (e, _) = g24b_extension();
        for s in enumerate_sections(&e).unwrap().iter().step_by(97) {
            extract_factor_system(&e, s).unwrap();
        }
    }

    #[test]
    fn identities_hold() {
        let (e, t) = g24b_extension();
        let r = verify_extension_identities(&e, &t).unwrap();
        assert!(r.passed(), "{:?}", r.first_failure());
        let mut v: Vec<usize> = (0..8).collect();
        v[3] = 16 + 3;
        v[5] = 8 + 5;
        let s = Section::new(&e, v).unwrap();
        let r = verify_extension_identities(&e, &s).unwrap();
        assert!(r.passed(), "{:?}", r.first_failure());
    }
}
