//! Machine check of the extension construction.
//!
//! With `K = {I + πX}` and `ψ_A(I + πX) = ψ(Tr(AX))`, the stabilizer
//! `T(ψ_A)` must be `K · Z` for `Z` the centralizer of the lift `𝔰(A)`;
//! the character `χ̃ = Π_a χ_a ∘ det` (one factor per eigenvalue block,
//! `χ_a(𝔰(u)(1 + πx)) = ψ(a x)`) must agree with `ψ_A` on `K ∩ Z`; and the
//! glued function `θ(kz) = ψ_A(k) χ̃(z)` must be a homomorphism on `T`.
//! Character values are `p`-th roots of unity, stored as exponents mod `p`.
//!
//! Non-split `A` is conjugated to Jordan form `J = P⁻¹AP` over the residue
//! field of an unramified extension `Õ`, the character is built there for
//! `J` with `ψ̃(x) = ψ(Tr(c x))`, `Tr_{F_{q^d}/F_q}(c) = 1`, and the checks
//! run on the rational points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Budget, OracleError};
use crate::canonical::{green_symbol, matrix_from_code, GreenSymbol};
use crate::matrices::Matrix;
use super::group::field_kernel;
use crate::rings::{Elem, FieldPoly, Ring, RingKind};

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub a: String,
    pub jordan_form: String,
    pub target: String,
    /// `|T(ψ_A)| / |K|`, counted by brute force over `GL_n(F_q)`.
    pub stabilizer_residues: u64,
    pub centralizer_order: u64,
    pub kernel_intersection: u64,
    pub pairs_checked: u64,
    /// The unramified extension used for non-split `A`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub splitting_ring: Option<String>,
    pub checks: Vec<ExtensionCheck>,
}

impl ExtensionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// The report, or `CheckFailed` naming the first failed check.
    pub fn ensure(self) -> Result<Self, OracleError> {
        match self.checks.iter().find(|c| !c.passed) {
            None => Ok(self),
            Some(c) => Err(OracleError::CheckFailed {
                check: c.name.to_string(),
                witness: c.witness.clone().unwrap_or_default(),
            }),
        }
    }
}

struct Setup {
    field: Ring,
    ring: Ring,
    n: usize,
    j: Matrix,
    lift_j: Matrix,
    /// `(start, len, eigenvalue)` per primary block.
    blocks: Vec<(usize, usize, Elem)>,
    /// `c` in `ψ̃(x) = ψ(Tr(c x))`; `1` unless working over an extension.
    scale: Elem,
}

/// `Tr_{F_q/F_p}(c · Tr(AX))`.
fn pairing(f: &Ring, a: &Matrix, x: &Matrix, c: Elem) -> u32 {
    let n = a.rows();
    let mut t = 0;
    for i in 0..n {
        for k in 0..n {
            t = f.add(t, f.mul(a.get(i, k), x.get(k, i)));
        }
    }
    f.trace(f.mul(c, t))
}

fn kernel_elem(ring: &Ring, x: &Matrix) -> Matrix {
    Matrix::identity(ring, x.rows()).add(&x.map_into(ring, |e| ring.pi_times(e)))
}

fn kernel_coords(ring: &Ring, field: &Ring, k: &Matrix) -> Option<Matrix> {
    let n = k.rows();
    let d = k.sub(&Matrix::identity(ring, n));
    let mut data = Vec::with_capacity(n * n);
    for &e in d.data() {
        data.push(ring.div_pi(e).ok()?);
    }
    Some(Matrix::from_vec(field, n, n, data))
}

/// Generators of `K`: `e·E_ik` for `e` running over an `F_p`-basis of `F_q`.
fn kernel_gens(field: &Ring, n: usize) -> Vec<Matrix> {
    let p = field.characteristic_prime();
    let mut gens = Vec::new();
    for i in 0..n {
        for k in 0..n {
            for t in 0..field.degree() {
                let mut x = Matrix::zero(field, n, n);
                x.set(i, k, p.pow(t));
                gens.push(x);
            }
        }
    }
    gens
}

/// All pairs of `T` when it is small, 2000 seeded random pairs otherwise.
fn t_pairs(t_order: u64, mut elem: impl FnMut(&mut ChaCha8Rng, Option<u64>) -> Matrix) -> Vec<(Matrix, Matrix)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xe7);
    let mut pairs = Vec::new();
    if t_order <= 300 {
        let all: Vec<Matrix> = (0..t_order).map(|i| elem(&mut rng, Some(i))).collect();
        for g in &all {
            for h in &all {
                pairs.push((g.clone(), h.clone()));
            }
        }
    } else {
        for _ in 0..2000 {
            let g = elem(&mut rng, None);
            let h = elem(&mut rng, None);
            pairs.push((g, h));
        }
    }
    pairs
}

impl Setup {
    fn p(&self) -> u32 {
        self.field.characteristic_prime()
    }

    /// `ψ(Tr(JX))` for a residue matrix `X`.
    fn psi(&self, x: &Matrix) -> u32 {
        pairing(&self.field, &self.j, x, self.scale)
    }

    /// `I + π X̂`.
    fn kernel_elem(&self, x: &Matrix) -> Matrix {
        kernel_elem(&self.ring, x)
    }

    /// `X` with `k = I + πX̂`, if `k ∈ K`.
    fn kernel_coords(&self, k: &Matrix) -> Option<Matrix> {
        kernel_coords(&self.ring, &self.field, k)
    }

    /// `χ_a(u)` for a unit `u`.
    fn chi(&self, a: Elem, u: Elem) -> Option<u32> {
        let r = &self.ring;
        let t = r.teichmuller(r.reduce_mod_pi(u));
        let v = r.mul(u, r.inv(t).ok()?);
        let x = r.div_pi(r.sub(v, 1)).ok()?;
        let f = &self.field;
        Some(f.trace(f.mul(self.scale, f.mul(a, x))))
    }

    /// `χ̃(z)`; `None` unless `z` is block diagonal with unit blocks.
    fn chi_tilde(&self, z: &Matrix) -> Option<u32> {
        let p = self.p();
        let mut acc = 0;
        for &(s, len, a) in &self.blocks {
            for i in 0..self.n {
                for k in 0..self.n {
                    let inside_i = (s..s + len).contains(&i);
                    let inside_k = (s..s + len).contains(&k);
                    if inside_i != inside_k && z.get(i, k) != 0 {
                        return None;
                    }
                }
            }
            let data: Vec<Elem> = (0..len)
                .flat_map(|i| (0..len).map(move |k| (i, k)))
                .map(|(i, k)| z.get(s + i, s + k))
                .collect();
            let det = Matrix::from_vec(&self.ring, len, len, data).det();
            acc = (acc + self.chi(a, det)?) % p;
        }
        Some(acc)
    }

    /// `θ(g) = ψ_A(g 𝔰(ḡ)⁻¹) + χ̃(𝔰(ḡ)·k0)`-style evaluation with a chosen
    /// centralizer factor `z` covering `ḡ`.
    fn theta_with(&self, g: &Matrix, z: &Matrix) -> Result<u32, String> {
        let zinv = z.inv().map_err(|e| e.to_string())?;
        let k = g.mul(&zinv);
        let x = self
            .kernel_coords(&k)
            .ok_or_else(|| format!("{g} · ({z})⁻¹ is not in K"))?;
        let chi = self
            .chi_tilde(z)
            .ok_or_else(|| format!("{z} is not block diagonal"))?;
        Ok((self.psi(&x) + chi) % self.p())
    }

    fn theta(&self, g: &Matrix) -> Result<u32, String> {
        let z = Matrix::teichmuller_lift(&g.reduce_mod_pi(), &self.ring);
        self.theta_with(g, &z)
    }
}

impl Setup {
    /// Jordan form of a split symbol over `field`, with lifts in `ring`.
    fn new(symbol: &GreenSymbol, field: &Ring, ring: &Ring, scale: Elem) -> Result<Setup, OracleError> {
        let j = symbol.canonical_matrix(field)?;
        let mut blocks = Vec::new();
        let mut start = 0;
        for (f, nu) in &symbol.parts {
            let len = nu.size() as usize;
            blocks.push((start, len, field.neg(f.coeff(0))));
            start += len;
        }
        Ok(Setup {
            lift_j: Matrix::teichmuller_lift(&j, ring),
            field: field.clone(),
            ring: ring.clone(),
            n: j.rows(),
            j,
            blocks,
            scale,
        })
    }
}

fn space_size(field: &Ring, n: usize, budget: &Budget) -> Result<u64, OracleError> {
    let space = (field.q() as u64).pow((n * n) as u32);
    if space > budget.max_elements {
        return Err(OracleError::BudgetExceeded {
            needed: space as u128,
            budget: budget.max_elements,
        });
    }
    Ok(space)
}

fn check(name: &'static str, witness: Option<String>) -> ExtensionCheck {
    ExtensionCheck {
        name,
        passed: witness.is_none(),
        witness,
    }
}

/// Runs the three checks for `A` over `target`, a ring of length 2 whose
/// residue field is the field of `A`. `A` is replaced by its Jordan form
/// (the checks are conjugation invariant).
pub fn verify_extension(
    a: &Matrix,
    target: &Ring,
    budget: &Budget,
) -> Result<ExtensionReport, OracleError> {
    let field = a.ring().clone();
    if !field.is_field() {
        return Err(OracleError::Unsupported("A must be over a field".into()));
    }
    if target.length() != 2 || target.residue_field() != field {
        return Err(OracleError::Unsupported(format!(
            "{target} is not a length-two ring with residue field {field}"
        )));
    }
    let n = a.rows();
    let symbol: GreenSymbol = green_symbol(a);
    let space = space_size(&field, n, budget)?;
    if symbol.parts.keys().any(|f| f.degree() != Some(1)) {
        return verify_non_split(a, &symbol, target, space, None);
    }
    let s = Setup::new(&symbol, &field, target, 1)?;
    let p = s.p();
    let gens = kernel_gens(&field, n);

    // (i) stabilizer of ψ_A against the centralizer and its commuting lifts
    let mut stab = Vec::new();
    let mut cent = Vec::new();
    let mut lift_witness = None;
    for code in 0..space {
        let gbar = matrix_from_code(&field, n, code);
        if gbar.det() == 0 {
            continue;
        }
        let g = Matrix::teichmuller_lift(&gbar, target);
        let ginv = g.inv()?;
        let fixes = gens.iter().all(|x| {
            let k2 = g.mul(&s.kernel_elem(x)).mul(&ginv);
            s.kernel_coords(&k2).is_some_and(|x2| s.psi(&x2) == s.psi(x))
        });
        if fixes {
            stab.push(code);
        }
        if gbar.commutes_with(&s.j) {
            cent.push(code);
            if lift_witness.is_none() && !g.commutes_with(&s.lift_j) {
                lift_witness = Some(format!("lift of {gbar} does not commute with 𝔰(A)"));
            }
        }
    }
    let stab_witness = if stab == cent {
        lift_witness
    } else {
        let diff = stab
            .iter()
            .find(|c| !cent.contains(c))
            .or_else(|| cent.iter().find(|c| !stab.contains(c)))
            .copied()
            .unwrap();
        Some(format!(
            "{} is in exactly one of T(ψ_A) and K·Z",
            matrix_from_code(&field, n, diff)
        ))
    };
    let mut checks = vec![check("stabilizer equals K·Z", stab_witness)];

    // (ii) agreement on K ∩ Z
    let mut inter = Vec::new();
    let mut inter_witness = None;
    for code in 0..space {
        let x = matrix_from_code(&field, n, code);
        let k = s.kernel_elem(&x);
        let in_z = k.commutes_with(&s.lift_j);
        if in_z != x.commutes_with(&s.j) {
            inter_witness.get_or_insert(format!("membership of I+π({x}) in Z"));
            continue;
        }
        if !in_z {
            continue;
        }
        match s.chi_tilde(&k) {
            Some(v) if v == s.psi(&x) => {}
            other => {
                inter_witness.get_or_insert(format!(
                    "X = {x}: χ̃ = {other:?}, ψ_A = {}",
                    s.psi(&x)
                ));
            }
        }
        inter.push(k);
    }
    checks.push(check("χ̃ agrees with ψ_A on K∩Z", inter_witness));

    // (iii) the glued character is a well-defined homomorphism restricting
    // to ψ_A on K
    let t_elem = |x_code: u64, c_code: u64| {
        let x = matrix_from_code(&field, n, x_code);
        let c = matrix_from_code(&field, n, c_code);
        s.kernel_elem(&x).mul(&Matrix::teichmuller_lift(&c, target))
    };
    let mut hom_witness = None;
    for x in &gens {
        match s.theta(&s.kernel_elem(x)) {
            Ok(v) if v == s.psi(x) => {}
            other => {
                hom_witness.get_or_insert(format!("θ(I+π({x})) = {other:?}"));
            }
        }
    }
    let pairs = t_pairs(space * cent.len() as u64, |rng, i| {
        let (x, c) = match i {
            Some(i) => (i / cent.len() as u64, cent[(i % cent.len() as u64) as usize]),
            None => (rng.gen_range(0..space), cent[rng.gen_range(0..cent.len())]),
        };
        t_elem(x, c)
    });
    let mut rng = ChaCha8Rng::seed_from_u64(0x3c);
    for (g, h) in &pairs {
        let values = (s.theta(g), s.theta(h), s.theta(&g.mul(h)));
        match values {
            (Ok(a), Ok(b), Ok(c)) if (a + b) % p == c => {}
            other => {
                hom_witness.get_or_insert(format!("θ({g}), θ({h}), θ(gh) = {other:?}"));
            }
        }
        // the value must not depend on the factorisation g = k·z
        let k0 = &inter[rng.gen_range(0..inter.len())];
        let z = Matrix::teichmuller_lift(&g.reduce_mod_pi(), target).mul(k0);
        if s.theta_with(g, &z) != s.theta(g) {
            hom_witness.get_or_insert(format!("θ({g}) depends on the factorisation"));
        }
    }
    checks.push(check("glued character is a homomorphism", hom_witness));

    Ok(ExtensionReport {
        a: a.to_string(),
        jordan_form: s.j.to_string(),
        target: target.to_string(),
        stabilizer_residues: stab.len() as u64,
        centralizer_order: cent.len() as u64,
        kernel_intersection: inter.len() as u64,
        pairs_checked: pairs.len() as u64,
        splitting_ring: None,
        checks,
    })
}

/// The degree-`d` unramified extension of a length-two ring `O`, with the
/// residue field embedding `ι` tabulated by code.
struct Extension {
    field: Ring,
    ring: Ring,
    iota: Vec<Elem>,
}

impl Extension {
    fn new(base: &Ring, d: u32) -> Result<Extension, OracleError> {
        let ring = match base.kind() {
            RingKind::Galois { p, m } => Ring::galois(p, m * d),
            RingKind::Truncated { p, m, len } => Ring::truncated(p, m * d, len),
            RingKind::Field { .. } => unreachable!("length two"),
        }
        .map_err(|e| OracleError::Unsupported(format!("degree {d} extension of {base}: {e}")))?;
        let field = ring.residue_field();
        let small = base.residue_field();
        let (p, m) = (small.characteristic_prime(), small.degree());
        // a root of the modulus of F_q generates its image
        let modulus = small.modulus();
        let root = field
            .elements()
            .find(|&x| {
                let v = modulus
                    .iter()
                    .enumerate()
                    .fold(field.pow(x, m as u64), |acc, (k, &c)| field.add(acc, field.mul(c, field.pow(x, k as u64))));
                v == 0
            })
            .expect("finite fields have roots in extensions of the right degree");
        let iota = small
            .elements()
            .map(|code| {
                let (mut c, mut acc, mut power) = (code, 0, 1);
                for _ in 0..m {
                    acc = field.add(acc, field.mul(c % p, power));
                    power = field.mul(power, root);
                    c /= p;
                }
                acc
            })
            .collect();
        Ok(Extension { field, ring, iota })
    }

    /// `O → Õ` in Teichmüller coordinates `a = s(a₀) + π·â₁`.
    fn embed(&self, base: &Ring, a: Elem) -> Elem {
        let a0 = base.reduce_mod_pi(a);
        let a1 = base.div_pi(base.sub(a, base.teichmuller(a0))).expect("in πO");
        let r = &self.ring;
        r.add(r.teichmuller(self.iota[a0 as usize]), r.pi_times(self.iota[a1 as usize]))
    }

    /// Some `c` with `Tr_{F_{q^d}/F_q}(c) = 1`.
    fn trace_one(&self, q: u32, d: u32) -> Elem {
        let f = &self.field;
        f.elements()
            .find(|&c| {
                let (mut acc, mut x) = (0, c);
                for _ in 0..d {
                    acc = f.add(acc, x);
                    x = f.pow(x, q as u64);
                }
                acc == 1
            })
            .expect("the relative trace is onto")
    }
}

/// An invertible `P` with `AP = PJ`.
fn intertwiner(a: &Matrix, j: &Matrix) -> Option<Matrix> {
    let f = a.ring();
    let n = a.rows();
    let mut rows = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            let mut row = vec![0; n * n];
            for k in 0..n {
                row[k * n + c] = f.add(row[k * n + c], a.get(r, k));
                row[r * n + k] = f.sub(row[r * n + k], j.get(k, c));
            }
            rows.push(row);
        }
    }
    let basis = field_kernel(f, rows, n * n);
    let mut rng = ChaCha8Rng::seed_from_u64(0x51);
    (0..1000).find_map(|_| {
        let mut data = vec![0; n * n];
        for v in &basis {
            let c = rng.gen_range(0..f.size());
            for (x, &y) in data.iter_mut().zip(v) {
                *x = f.add(*x, f.mul(c, y));
            }
        }
        let m = Matrix::from_vec(f, n, n, data);
        m.is_invertible().then_some(m)
    })
}

fn lcm(a: u32, b: u32) -> u32 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// The checks on rational points for `A` whose characteristic polynomial
/// does not split over `F_q`: (i) `T(ψ_A)/K` is the centralizer of `A`,
/// (ii) `θ̃_A` restricts to `ψ_A` on `K`, (iii) `θ̃_A` is a homomorphism on
/// `T(ψ_A)`.
fn verify_non_split(
    a: &Matrix,
    symbol: &GreenSymbol,
    target: &Ring,
    space: u64,
    scale: Option<Elem>,
) -> Result<ExtensionReport, OracleError> {
    let field = a.ring().clone();
    let n = a.rows();
    let p = field.characteristic_prime();
    let d = symbol.parts.keys().fold(1, |acc, f| lcm(acc, f.degree().unwrap() as u32));
    let ext = Extension::new(target, d)?;
    let a_ext = a.map_into(&ext.field, |x| ext.iota[x as usize]);
    let ext_symbol = green_symbol(&a_ext);
    let scale = scale.unwrap_or_else(|| ext.trace_one(field.q(), d));
    let s = Setup::new(&ext_symbol, &ext.field, &ext.ring, scale)?;
    let pm = intertwiner(&a_ext, &s.j).expect("A is conjugate to its Jordan form");
    let lift_p = Matrix::teichmuller_lift(&pm, &ext.ring);
    let lift_p_inv = lift_p.inv()?;
    let theta = |g: &Matrix| {
        let g = g.map_into(&ext.ring, |x| ext.embed(target, x));
        s.theta(&lift_p_inv.mul(&g).mul(&lift_p))
    };
    let psi_a = |x: &Matrix| pairing(&field, a, x, 1);
    let gens = kernel_gens(&field, n);

    // (i)
    let mut stab = Vec::new();
    let mut cent = Vec::new();
    for code in 0..space {
        let gbar = matrix_from_code(&field, n, code);
        if gbar.det() == 0 {
            continue;
        }
        let g = Matrix::teichmuller_lift(&gbar, target);
        let ginv = g.inv()?;
        let fixes = gens.iter().all(|x| {
            let k2 = g.mul(&kernel_elem(target, x)).mul(&ginv);
            kernel_coords(target, &field, &k2).is_some_and(|x2| psi_a(&x2) == psi_a(x))
        });
        if fixes {
            stab.push(code);
        }
        if gbar.commutes_with(a) {
            cent.push(code);
        }
    }
    let stab_witness = (stab != cent).then(|| {
        let diff = stab
            .iter()
            .find(|c| !cent.contains(c))
            .or_else(|| cent.iter().find(|c| !stab.contains(c)))
            .unwrap();
        format!(
            "{} is in exactly one of T(ψ_A) and K·Z",
            matrix_from_code(&field, n, *diff)
        )
    });
    let mut checks = vec![check("stabilizer equals K·Z", stab_witness)];

    // (ii)
    let mut restrict_witness = None;
    let mut inter = 0;
    for code in 0..space {
        let x = matrix_from_code(&field, n, code);
        if x.commutes_with(a) {
            inter += 1;
        }
        match theta(&kernel_elem(target, &x)) {
            Ok(v) if v == psi_a(&x) => {}
            other => {
                restrict_witness.get_or_insert(format!("X = {x}: θ̃ = {other:?}, ψ_A = {}", psi_a(&x)));
            }
        }
    }
    checks.push(check("θ̃ restricts to ψ_A on K", restrict_witness));

    // (iii)
    let t_elem = |x: u64, c: u64| {
        let x = matrix_from_code(&field, n, x);
        let c = matrix_from_code(&field, n, c);
        kernel_elem(target, &x).mul(&Matrix::teichmuller_lift(&c, target))
    };
    let pairs = t_pairs(space * cent.len() as u64, |rng, i| {
        let (x, c) = match i {
            Some(i) => (i / cent.len() as u64, cent[(i % cent.len() as u64) as usize]),
            None => (rng.gen_range(0..space), cent[rng.gen_range(0..cent.len())]),
        };
        t_elem(x, c)
    });
    let mut hom_witness = None;
    for (g, h) in &pairs {
        match (theta(g), theta(h), theta(&g.mul(h))) {
            (Ok(x), Ok(y), Ok(z)) if (x + y) % p == z => {}
            other => {
                hom_witness.get_or_insert(format!("θ̃({g}), θ̃({h}), θ̃(gh) = {other:?}"));
            }
        }
    }
    checks.push(check("θ̃ is a homomorphism on T(ψ_A)", hom_witness));

    Ok(ExtensionReport {
        a: a.to_string(),
        jordan_form: s.j.to_string(),
        target: target.to_string(),
        stabilizer_residues: stab.len() as u64,
        centralizer_order: cent.len() as u64,
        kernel_intersection: inter,
        pairs_checked: pairs.len() as u64,
        splitting_ring: Some(ext.ring.to_string()),
        checks,
    })
}

/// A representative of every type of `M_n(F_q)` that has enough primary
/// polynomials available over `F_q`, in the canonical form of its symbol.
pub fn type_representatives(
    n: u32,
    field: &Ring,
) -> Vec<(crate::canonical::TypeSymbol, Matrix)> {
    let irr = crate::canonical::Irreducibles::new(field, n as usize);
    let mut out = Vec::new();
    'types: for ty in crate::typegen::all_types(n) {
        let mut parts = std::collections::BTreeMap::new();
        for slot in ty.slots() {
            let free: Vec<FieldPoly> = irr
                .all()
                .iter()
                .filter(|f| f.degree() == Some(slot.d as usize) && !parts.contains_key(*f))
                .take(slot.r as usize)
                .cloned()
                .collect();
            if free.len() < slot.r as usize {
                continue 'types;
            }
            for f in free {
                parts.insert(f, slot.nu.clone());
            }
        }
        let symbol = GreenSymbol { parts };
        let m = symbol
            .canonical_matrix(field)
            .expect("symbols of the right size have canonical forms");
        out.push((ty, m));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> Ring {
        s.parse().unwrap()
    }

    #[test]
    fn jordan_block_over_f2() {
        let f2 = ring("F2");
        let a = Matrix::from_vec(&f2, 2, 2, vec![1, 1, 0, 1]);
        let rep = verify_extension(&a, &ring("F2[t]/t^2"), &Budget::default()).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn zero_and_diagonal() {
        let f2 = ring("F2");
        let zero = Matrix::from_vec(&f2, 1, 1, vec![0]);
        let rep = verify_extension(&zero, &ring("Z/4"), &Budget::default()).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.stabilizer_residues, 1);
        let f3 = ring("F3");
        let d = Matrix::from_vec(&f3, 2, 2, vec![1, 0, 0, 2]);
        let rep = verify_extension(&d, &ring("Z/9"), &Budget::default()).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.centralizer_order, 4);
    }

    #[test]
    fn companion_of_irreducible_quadratic() {
        let f2 = ring("F2");
        let c = Matrix::from_vec(&f2, 2, 2, vec![0, 1, 1, 1]);
        for t in ["Z/4", "F2[t]/t^2"] {
            let rep = verify_extension(&c, &ring(t), &Budget::default()).unwrap();
            assert!(rep.passed(), "{t}: {rep:?}");
            assert_eq!(rep.centralizer_order, 3);
            assert_eq!(rep.stabilizer_residues, 3);
            assert!(rep.splitting_ring.is_some());
        }
    }

    #[test]
    fn plain_trace_of_psi_is_not_an_extension() {
        // ψ∘Tr restricted to F_2 is 2ψ, the trivial character
        let f2 = ring("F2");
        let c = Matrix::from_vec(&f2, 2, 2, vec![0, 1, 1, 1]);
        let symbol = green_symbol(&c);
        let rep = verify_non_split(&c, &symbol, &ring("Z/4"), 16, Some(1)).unwrap();
        assert!(!rep.checks[1].passed);
    }

    #[test]
    fn embedding_is_a_ring_map() {
        for (base, d) in [("Z/9", 2), ("F2[t]/t^2", 3), ("GR(4,2)", 2)] {
            let base: Ring = base.parse().unwrap();
            let ext = Extension::new(&base, d).unwrap();
            for x in base.elements() {
                for y in base.elements() {
                    let e = |v| ext.embed(&base, v);
                    assert_eq!(e(base.add(x, y)), ext.ring.add(e(x), e(y)));
                    assert_eq!(e(base.mul(x, y)), ext.ring.mul(e(x), e(y)));
                }
            }
        }
    }

    #[test]
    fn all_types_small() {
        for (f, targets) in [("F2", ["Z/4", "F2[t]/t^2"]), ("F3", ["Z/9", "F3[t]/t^2"])] {
            let field = ring(f);
            for n in 1..=2 {
                for (ty, a) in type_representatives(n, &field) {
                    for t in targets {
                        let rep = verify_extension(&a, &ring(t), &Budget::default()).unwrap();
                        assert!(rep.passed(), "{ty} over {t}: {:?}", rep.checks);
                    }
                }
            }
        }
    }
}
