"""Simple supercuspidal parameters and their character values.

A parameter is a triple (zeta, chi, c): a Teichmuller unit, a character of
k^x, and a unit scalar, attached to one inner form M_m(D) with n = m r.
The inducing character theta lives on the group generated by the block
uniformizer, the Teichmuller scalars, and the 1-units of the standard
order.  Character values at the two test families (elliptic g_u and
unipotent-ish 1 + phi_{zeta lambda}) are computed both in closed form
(restricted Gauss and Kloosterman sums) and by independent finite sums
over coset representatives; their agreement, and the sign-twisted
agreement across the transfer to the split form, are the checks this
package exists to run.

Exact mode keeps every value in a cyclotomic ring; float mode (a complex
unit c of no declared order) compares at 1e-9.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass

from . import csa, expsum, ff
from . import locfield as lf
from ._util import solve_congruence
from .chars import AddChar, MultChar, inflate_add
from .cyc import CycElem
from .errors import DecompositionError, DomainError, ValidationError

COMPLEX_TOL = 1e-9

_COSET_CACHE: dict = {}


@dataclass(frozen=True)
class CUnit:
    """The scalar c: a declared root of unity (exact mode) or a complex
    unit (float mode)."""

    order: int | None = None
    power: int = 0
    approx: complex | None = None

    def __post_init__(self):
        if self.order is not None:
            if self.order < 1:
                raise ValidationError("the declared order must be positive")
            if self.approx is not None:
                raise ValidationError("declare either an order or an approx")
        else:
            if self.approx is None:
                raise ValidationError("c needs an order or a complex value")
            if abs(abs(self.approx) - 1.0) > COMPLEX_TOL:
                raise ValidationError("complex c must lie on the unit circle")

    @property
    def is_exact(self) -> bool:
        return self.order is not None

    def complex_value(self) -> complex:
        if self.is_exact:
            return cmath.exp(2j * cmath.pi * self.power / self.order)
        return self.approx

    def to_json(self) -> dict:
        if self.is_exact:
            return {"order": self.order, "power": self.power % self.order}
        return {"re": self.approx.real, "im": self.approx.imag}


@dataclass(frozen=True)
class TameChar:
    """A tamely ramified character of K^x: a character of the Teichmuller
    units together with a unit value at the uniformizer."""

    unit_part: MultChar
    varpi_value: CUnit

    def to_json(self) -> dict:
        return {"unit_j": self.unit_part.j,
                "varpi": self.varpi_value.to_json()}


@dataclass(frozen=True)
class CharTableRow:
    """One comparison row: a test element, two independently computed
    values, and their exact (or 1e-9, in float mode) agreement."""

    kind: str
    params: dict
    closed_form: object
    direct_sum: object
    match: bool

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "params": self.params,
            "closed_form": _value_json(self.closed_form),
            "direct_sum": _value_json(self.direct_sum),
            "match": self.match,
        }


def _value_json(v):
    if isinstance(v, CycElem):
        return v.to_json()
    v = complex(v)
    return {"re": v.real, "im": v.imag}


def values_match(a, b) -> bool:
    """Exact equality for ring elements, 1e-9 relative for complex."""
    if isinstance(a, CycElem) and isinstance(b, CycElem):
        return a == b
    if isinstance(a, CycElem) or isinstance(b, CycElem):
        raise ValidationError("cannot compare values across modes")
    a, b = complex(a), complex(b)
    scale = max(1.0, abs(a), abs(b))
    return abs(a - b) <= COMPLEX_TOL * scale


class SscParam:
    """The classifying datum (zeta, chi, c) on a fixed inner form."""

    __slots__ = ("zeta", "chi", "c", "psi", "alg", "k", "n")

    def __init__(self, zeta: ff.FFElem, chi: MultChar, c: CUnit,
                 psi: AddChar, alg: csa.MatrixAlgebra):
        k = alg.D.k
        if zeta.field is not k or zeta.packed == 0:
            raise ValidationError("zeta must be a unit of the residue field")
        if chi.field is not k or psi.field is not k:
            raise ValidationError("chi and psi must live on the residue field")
        if chi.ring is not psi.ring:
            raise ValidationError("chi and psi must share a value ring")
        if not isinstance(c, CUnit):
            raise ValidationError("c must be a CUnit")
        if c.is_exact and chi.ring.M % c.order:
            raise ValidationError(
                "the value ring does not contain a root of unity of c's order")
        self.zeta = zeta
        self.chi = chi
        self.c = c
        self.psi = psi
        self.alg = alg
        self.k = k
        self.n = alg.n

    @property
    def exact(self) -> bool:
        return self.c.is_exact

    @property
    def conductor(self) -> int:
        return self.n + 1

    def phi(self) -> csa.MatA:
        return csa.make_phi_zeta(self.alg.m, self.alg.D, self.zeta)

    def _finish(self, root, c_exp: int, sign_odd: int):
        """root * ((-1)^sign_odd) * c^c_exp in the parameter's value mode."""
        if self.exact:
            out = root * self.ring_unit(self.c, c_exp)
            return -out if sign_odd % 2 else out
        out = complex(root.complex_value() if isinstance(root, CycElem)
                      else root)
        out *= self.c.complex_value() ** c_exp
        return -out if sign_odd % 2 else out

    def ring_unit(self, cu: CUnit, e: int) -> CycElem:
        if not cu.is_exact:
            raise ValidationError("exact mode needs declared finite orders")
        return self.chi.ring.zeta(cu.order, (cu.power * e) % cu.order)

    def as_mode(self, x: CycElem):
        return x if self.exact else x.complex_value()

    def to_json(self) -> dict:
        return {
            "q": self.k.size,
            "side": {"m": self.alg.m, "r": self.alg.D.r, "s": self.alg.D.s},
            "zeta_dlog": ff.dlog(self.zeta),
            "chi_j": self.chi.j,
            "c": self.c.to_json(),
            "psi_twist_dlog": ff.dlog(self.psi.twist),
            "conductor": self.conductor,
        }


def make_param(p: int, f: int, m: int, r: int, s: int | None,
               zeta_dlog: int = 0, chi_j: int = 1,
               c: CUnit | None = None, psi_twist_dlog: int = 0,
               extra_orders: tuple = ()) -> SscParam:
    """Convenience constructor building a consistent value ring."""
    from . import cyc

    k = ff.make_field(p, f)
    D = csa.div_algebra(k, r, s)
    alg = csa.matrix_algebra(D, m)
    if c is None:
        c = CUnit(order=1, power=0)
    orders = [p, k.order] + ([c.order] if c.is_exact else [])
    orders.extend(extra_orders)
    ring = cyc.ring_for(*orders)
    chi = MultChar(k, chi_j, ring)
    psi = AddChar(k, k.from_dlog(psi_twist_dlog), ring)
    return SscParam(k.from_dlog(zeta_dlog), chi, c, psi, alg)


# ---------------------------------------------------------------------------
# the character theta on L^x U^1


def decompose(alg: csa.MatrixAlgebra, zeta: ff.FFElem, g: csa.MatA):
    """Write g = phi^v * x * u with x a Teichmuller scalar from k and
    u in U^1 of the standard order; returns (v, residue of x, u).

    The valuation v is read off the order's radical filtration and the
    factorization is then verified piece by piece, so failure at any step
    means g lies outside the group where theta is defined.
    """
    if g.parent is not alg:
        raise ValidationError("element from a different algebra")
    v = g.radical_valuation()
    if v is None:
        raise DecompositionError("the element is not invertible")
    phi = csa.make_phi_zeta(alg.m, alg.D, zeta)
    if v >= 0:
        h = (csa.phi_inverse(phi, zeta) ** v) * g
    else:
        h = (phi ** (-v)) * g
    if not h.in_order():
        raise DecompositionError(
            "phi^{-v} g does not land in the standard order")
    k = alg.D.k
    lead = h.entries[0][0].coeffs[0].residue()
    try:
        xbar = ff.pullback(lead, k)
    except ValidationError as exc:
        raise DecompositionError(
            "the unit part is not a k-rational scalar") from exc
    if xbar.packed == 0:
        raise DecompositionError("the unit part is not invertible")
    u = h.scale_base_series(lf.teichmuller(k.one() / xbar))
    du = u - alg.identity()
    if not du.in_radical_power(1):
        raise DecompositionError(
            "the remainder is not a 1-unit of the order")
    return v, xbar, u


def theta_eval(eta: SscParam, g: csa.MatA):
    """theta(phi^v x u) = ((-1)^{m-1} c)^v chi(x) psi_K(Trd(phi^{-1}(u-1)))."""
    v, xbar, u = decompose(eta.alg, eta.zeta, g)
    phi = eta.phi()
    phi_inv = csa.phi_inverse(phi, eta.zeta)
    t = csa.rtrace(phi_inv * (u - eta.alg.identity()))
    root = eta.chi.eval(xbar) * lf.psi_K(eta.psi, t)
    return eta._finish(root, v, (eta.alg.m - 1) * v)


def random_group_element(eta: SscParam, rng, prec: int) -> csa.MatA:
    """A random element of the domain of theta, at finite precision."""
    MA = eta.alg
    phi = eta.phi()
    v = rng.randrange(3)
    xbar = eta.k.from_dlog(rng.randrange(eta.k.order))
    y = (phi * MA.random_in_order(rng, prec)).truncate(prec)
    g = (phi ** v) * MA.scalar_series(lf.teichmuller(xbar))
    return g * (MA.identity() + y)


# ---------------------------------------------------------------------------
# character values at g_u = phi(1 + phi u)


def char_at_gu_closed(eta: SscParam, u: csa.MatA):
    """(-1)^{m-1} c G_n(chi, psi, residue(Trd u))."""
    if u.parent is not eta.alg:
        raise ValidationError("u from a different algebra")
    if not u.in_order():
        raise ValidationError("u must lie in the standard order")
    tbar = csa.rtrace(u).residue()
    gsum = expsum.restricted_gauss(eta.n, eta.chi, eta.psi, tbar)
    return eta._finish(gsum, 1, eta.alg.m - 1)


def gu_cosets(alg: csa.MatrixAlgebra):
    """Coset representatives for the g_u trace sum.

    For each lambda in mu_{n_q}(k) there is a scalar d in mu_{q^r-1}(K_r)
    with d^{q^s - 1} = lambda^m, and x = d diag(1, lambda, ...,
    lambda^{m-1}) conjugates phi to lambda phi for every zeta; lambda
    outside mu_{n_q} admits no such d (checked here once per algebra).
    """
    D = alg.D
    k = D.k
    key = (k.p, k.f, k.l, D.r, D.s, alg.m)
    if key in _COSET_CACHE:
        return _COSET_CACHE[key]
    kr = D.kr
    n_q = math.gcd(alg.n, k.order)
    reps = []
    for lam in ff.enumerate_mu(k, k.order):
        power = ff.embed(lam, kr) ** alg.m
        if D.r == 1:
            solvable = power == kr.one()
            t_d = 0
        else:
            sol = solve_congruence(
                k.size ** D.s - 1, ff.dlog(power), kr.order)
            solvable = sol is not None
            t_d = sol[0] if sol else 0
        if solvable != ((ff.dlog(lam) * n_q) % k.order == 0):
            raise AssertionError("solvable scalars do not cut out mu_{n_q}")
        if not solvable:
            continue
        d = kr.from_dlog(t_d)
        lam_r = ff.embed(lam, kr)
        diag = [d * lam_r ** i for i in range(alg.m)]
        x = _teich_diag(alg, diag)
        x_inv = _teich_diag(alg, [kr.one() / e for e in diag])
        reps.append((lam, x, x_inv))
    if len(reps) != n_q:
        raise AssertionError("coset count is not n_q")
    _COSET_CACHE[key] = reps
    return reps


def _teich_diag(alg: csa.MatrixAlgebra, entries) -> csa.MatA:
    z = alg.D.zero()
    rows = [[z] * alg.m for _ in range(alg.m)]
    for i, e in enumerate(entries):
        rows[i][i] = alg.D.teich(e)
    return alg.elem(rows)


def char_at_gu_direct(eta: SscParam, u: csa.MatA):
    """The coset sum over mu_{n_q}: theta on conjugates of g_u."""
    if u.parent is not eta.alg:
        raise ValidationError("u from a different algebra")
    if not u.in_order():
        raise ValidationError("u must lie in the standard order")
    g = csa.make_g_u(eta.alg.m, eta.alg.D, eta.zeta, u)
    total = None
    for _lam, x, x_inv in gu_cosets(eta.alg):
        val = theta_eval(eta, x_inv * g * x)
        total = val if total is None else total + val
    return total


# ---------------------------------------------------------------------------
# character values at 1 + phi_{zeta lambda}


def char_at_unipotent_closed(eta: SscParam, lam: ff.FFElem,
                             budget: int | None = None):
    """(-1)^{n-m} K_{n,lambda}(psi)."""
    if lam.field is not eta.k or lam.packed == 0:
        raise ValidationError("lambda must be a unit of the residue field")
    kl = expsum.kloosterman(eta.k, eta.n, lam, eta.psi, budget)
    return eta._finish(kl, 0, eta.n - eta.alg.m)


def char_at_unipotent_direct(eta: SscParam, lam: ff.FFElem,
                             budget: int | None = None):
    """Sum of psi(Tr(z_1 + ... + z_m)) over m-tuples of k_r units whose
    product has norm lambda; equality with the closed form is the
    character identity, since this route never evaluates a Kloosterman
    sum over k."""
    if lam.field is not eta.k or lam.packed == 0:
        raise ValidationError("lambda must be a unit of the residue field")
    D = eta.alg.D
    kr, k, m = D.kr, eta.k, eta.alg.m
    if m == 1:
        total = expsum.norm_fiber_sum(kr, lam, eta.psi, budget)
        return eta._finish(total, 0, 0)
    t0, fiber = expsum._norm_fiber_congruence(kr, k, lam)
    Q = kr.order
    expsum._check_budget(Q ** (m - 1) * fiber, budget)
    lifted = inflate_add(eta.psi, kr)
    tau = lifted.dlog_exponent_table()
    exp_, log_, add = kr.exp, kr.log, kr.add_packed
    counts = [0] * k.p
    for head in itertools.product(range(Q), repeat=m - 1):
        base = 0
        hsum = 0
        for t in head:
            base = add(base, exp_[t])
            hsum += t
        for j in range(fiber):
            x = add(base, exp_[(t0 + j * k.order - hsum) % Q])
            counts[tau[log_[x]] if x else 0] += 1
    total = eta.psi.ring.weighted_root_sum(k.p, counts)
    return eta._finish(total, 0, 0)


def _phi_scaled(alg: csa.MatrixAlgebra, zeta: ff.FFElem,
                c0: ff.FFElem) -> csa.MatA:
    """The block uniformizer for zeta * Nr(c0), realized as the corner
    element c0 * phi_D."""
    D = alg.D
    corner = D.teich(c0) * csa.make_phi_D(D, zeta)
    if alg.m == 1:
        return alg.elem([[corner]])
    z, o = D.zero(), D.one()
    rows = [[z] * alg.m for _ in range(alg.m)]
    for i in range(alg.m - 1):
        rows[i][i + 1] = o
    rows[alg.m - 1][0] = corner
    return alg.elem(rows)


def char_at_unipotent_deep(eta: SscParam, lam: ff.FFElem,
                           all_c0: bool = False,
                           budget: int | None = None):
    """The same trace as the tuple sum, but evaluated on honest matrix
    conjugates: diagonal Teichmuller representatives act on
    1 + phi_{zeta lambda} and theta is evaluated each time.

    all_c0 recomputes with every scalar of norm lambda and insists on one
    answer.
    """
    if lam.field is not eta.k or lam.packed == 0:
        raise ValidationError("lambda must be a unit of the residue field")
    D = eta.alg.D
    kr, k, m = D.kr, eta.k, eta.alg.m
    Q = kr.order
    q1 = k.order
    t0, fiber = expsum._norm_fiber_congruence(kr, k, lam)
    head = Q // q1
    expsum._check_budget(head * Q ** (m - 1) * (fiber if all_c0 else 1),
                         budget)
    choices = range(fiber) if all_c0 else range(1)
    expected = eta.alg.scalar_series(lf.teichmuller(lam * eta.zeta).shift(1))
    results = []
    for j in choices:
        c0 = kr.from_dlog((t0 + j * q1) % Q)
        phi_lam = _phi_scaled(eta.alg, eta.zeta, c0)
        if phi_lam ** eta.n != expected:
            raise AssertionError(
                "the scaled uniformizer does not have the right power")
        target = eta.alg.identity() + phi_lam
        total = None
        for t1 in range(head):
            for rest in itertools.product(range(Q), repeat=m - 1):
                diag = [kr.from_dlog(t1)]
                diag.extend(kr.from_dlog(t) for t in rest)
                a = _teich_diag(eta.alg, diag)
                a_inv = _teich_diag(eta.alg, [kr.one() / e for e in diag])
                val = theta_eval(eta, a_inv * target * a)
                total = val if total is None else total + val
        results.append(total)
    first = results[0]
    for other in results[1:]:
        if not values_match(first, other):
            raise AssertionError(
                "the deep sum depends on the choice of the norm preimage")
    return first


# ---------------------------------------------------------------------------
# the transfer, the relation, and the local constants


@dataclass(frozen=True)
class TransferResult:
    param: SscParam
    sign: int
    conductor: int

    def to_json(self) -> dict:
        return {"param": self.param.to_json(), "sign": self.sign,
                "conductor": self.conductor}


def jl_transfer(eta: SscParam) -> TransferResult:
    """The same triple on the split form M_n(K), with the character
    relation sign (-1)^{n-m}."""
    split = csa.matrix_algebra(csa.div_algebra(eta.k, 1, None), eta.n)
    out = SscParam(eta.zeta, eta.chi, eta.c, eta.psi, split)
    sign = -1 if (eta.n - eta.alg.m) % 2 else 1
    return TransferResult(out, sign, eta.conductor)


def char_table(eta: SscParam, us=(), lambdas=(), deep: bool = False,
               budget: int | None = None) -> list[CharTableRow]:
    """Closed-form versus direct-sum rows for the two test families."""
    rows = []
    for u in us:
        closed = char_at_gu_closed(eta, u)
        direct = char_at_gu_direct(eta, u)
        tbar = csa.rtrace(u).residue()
        rows.append(CharTableRow(
            kind="g_u",
            params={"trd_residue": tbar.packed},
            closed_form=closed, direct_sum=direct,
            match=values_match(closed, direct)))
    for lam in lambdas:
        closed = char_at_unipotent_closed(eta, lam, budget)
        direct = char_at_unipotent_direct(eta, lam, budget)
        rows.append(CharTableRow(
            kind="one_plus_phi",
            params={"lambda_dlog": ff.dlog(lam)},
            closed_form=closed, direct_sum=direct,
            match=values_match(closed, direct)))
        if deep:
            dval = char_at_unipotent_deep(eta, lam, budget=budget)
            rows.append(CharTableRow(
                kind="one_plus_phi",
                params={"lambda_dlog": ff.dlog(lam), "route": "deep"},
                closed_form=closed, direct_sum=dval,
                match=values_match(closed, dval)))
    return rows


def character_relation_check(eta: SscParam, us=(), lambdas=(),
                             budget: int | None = None) -> list[CharTableRow]:
    """The transfer relation at matched elements, both sides by direct
    sums: the closed_form column holds the (-1)^{n-m}-scaled value on the
    eta side, the direct_sum column the split-side value."""
    transfer = jl_transfer(eta)
    eta2 = transfer.param
    sign = transfer.sign
    rows = []
    for lam in lambdas:
        d_val = char_at_unipotent_direct(eta, lam, budget)
        s_val = char_at_unipotent_direct(eta2, lam, budget)
        scaled = -d_val if sign < 0 else d_val
        rows.append(CharTableRow(
            kind="one_plus_phi",
            params={"lambda_dlog": ff.dlog(lam), "route": "relation"},
            closed_form=scaled, direct_sum=s_val,
            match=values_match(scaled, s_val)))
    for u in us:
        g = csa.make_g_u(eta.alg.m, eta.alg.D, eta.zeta, u)
        fpoly = csa.red_charpoly(g)
        trd_res = csa.rtrace(u).residue()
        u_alpha, _g_alpha = csa.matching_element(fpoly, eta.zeta, trd_res)
        d_val = char_at_gu_direct(eta, u)
        s_val = char_at_gu_direct(eta2, u_alpha)
        scaled = -d_val if sign < 0 else d_val
        rows.append(CharTableRow(
            kind="g_u",
            params={"trd_residue": trd_res.packed, "route": "relation"},
            closed_form=scaled, direct_sum=s_val,
            match=values_match(scaled, s_val)))
    return rows


def epsilon(eta: SscParam):
    """(-1)^{n-1} c."""
    root = eta.chi.ring.one()
    return eta._finish(root, 1, eta.n - 1)


def _tame_at_unit_varpi(eta: SscParam, xi: TameChar, ybar: ff.FFElem):
    """xi(y varpi) = xi.unit(y) * xi(varpi), in the parameter's mode."""
    if xi.unit_part.field is not eta.k or xi.unit_part.ring is not eta.chi.ring:
        raise ValidationError("the twist must live on the same residue data")
    if eta.exact and not xi.varpi_value.is_exact:
        raise ValidationError(
            "exact mode needs a declared order for xi(varpi)")
    root = xi.unit_part.eval(ybar)
    if eta.exact:
        return root * eta.ring_unit(xi.varpi_value, 1)
    return root.complex_value() * xi.varpi_value.complex_value()


def epsilon_twisted(eta: SscParam, xi: TameChar):
    """xi((-1)^{n-1} zeta varpi) * epsilon(eta)."""
    sign = eta.k.from_int(-1 if (eta.n - 1) % 2 else 1)
    tame = _tame_at_unit_varpi(eta, xi, sign * eta.zeta)
    return tame * epsilon(eta)


def normalized_tau(eta: SscParam, xi: TameChar):
    """(theta tensor xi_A) dual at phi^{-1}, times psi_A(phi^{-1}); the
    norm-one normalization makes (-1)^{n-m} times this equal the twisted
    epsilon factor, which is asserted."""
    if eta.n == 1:
        raise DomainError(
            "the reduced trace of phi^{-1} has a pole when n = 1")
    phi = eta.phi()
    theta_phi = eta._finish(eta.chi.ring.one(), 1, eta.alg.m - 1)
    nrd = csa.rnorm(phi)
    ybar = nrd.coeff(1)
    tame = _tame_at_unit_varpi(eta, xi, ybar)
    psi_factor = eta.as_mode(
        lf.psi_K(eta.psi, csa.rtrace(csa.phi_inverse(phi, eta.zeta))))
    tau = theta_phi * tame * psi_factor
    scaled = -tau if (eta.n - eta.alg.m) % 2 else tau
    if not values_match(scaled, epsilon_twisted(eta, xi)):
        raise AssertionError(
            "normalized tau disagrees with the twisted epsilon factor")
    return tau


class CentralChar:
    """The central character: chi on Teichmuller units, trivial on the
    1-units for n >= 2, and an explicit value at the uniformizer."""

    __slots__ = ("eta",)

    def __init__(self, eta: SscParam):
        self.eta = eta

    def varpi_value(self):
        eta = self.eta
        zinv = eta.k.one() / eta.zeta
        root = eta.chi.eval(zinv)
        return eta._finish(root, eta.n, (eta.alg.m - 1) * eta.n)

    def at(self, x: lf.LaurentTrunc):
        eta = self.eta
        if x.field is not eta.k:
            raise ValidationError("central elements are series over k")
        v = x.valuation()
        if v is None:
            raise DomainError("central character of zero")
        if eta.n == 1:
            # conductor 2 on GL_1: theta itself sees the 1-unit part
            return theta_eval(eta, eta.alg.scalar_series(x))
        xbar = x.coeff(v)
        zpow = eta.k.from_dlog((-v * ff.dlog(eta.zeta)) % eta.k.order)
        root = eta.chi.eval(xbar) * eta.chi.eval(zpow)
        return eta._finish(root, eta.n * v, (eta.alg.m - 1) * eta.n * v)


def central_char(eta: SscParam) -> CentralChar:
    return CentralChar(eta)


def endoclass_label(eta: SscParam) -> dict:
    """The parameter-level endo-class data: everything the restriction of
    theta to the 1-units remembers.  Ignores chi and c by design."""
    return {
        "kind": "endoclass_label",
        "q": eta.k.size,
        "n": eta.n,
        "zeta_dlog": ff.dlog(eta.zeta),
        "psi_twist_dlog": ff.dlog(eta.psi.twist),
    }
