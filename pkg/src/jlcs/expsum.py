"""Exponential sums over finite fields: restricted Gauss sums, generalized
Kloosterman sums, norm-fiber sums, and exact verifiers for the identities
relating them.

Every sum is computed in integer counting coordinates: the inner loops only
ever increment a counts-per-exponent vector, and the cyclotomic value is
materialized once at the end.  That keeps the hot paths free of ring
arithmetic and makes chunked (threaded) evaluation exactly associative, so
results are independent of the partition.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import ff
from ._util import json_line, run_chunks, split_ranges, worker_count
from .chars import AddChar, MultChar, inflate_add
from .cyc import CycElem
from .errors import BudgetExceeded, ValidationError

DEFAULT_BUDGET = 10 ** 7


@dataclass
class SumReport:
    """Outcome of one identity check; equal is lhs == rhs exactly."""

    kind: str
    parameters: dict
    lhs: CycElem
    rhs: CycElem
    equal: bool
    witness: ff.FFElem | None = None
    elapsed: float = dc_field(default=0.0, compare=False)

    @classmethod
    def make(cls, kind, parameters, lhs, rhs, witness=None, elapsed=0.0):
        return cls(kind=kind, parameters=parameters, lhs=lhs, rhs=rhs,
                   equal=(lhs - rhs).is_zero(), witness=witness,
                   elapsed=elapsed)

    def to_json(self) -> dict:
        # elapsed is deliberately left out: reports must be byte-stable
        out = {
            "kind": self.kind,
            "parameters": self.parameters,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "equal": self.equal,
        }
        if self.witness is not None:
            out["witness_dlog"] = (None if self.witness.is_zero()
                                   else ff.dlog(self.witness))
        return out

    def json_line(self) -> str:
        return json_line(self.to_json())


def _check_budget(work: int, budget: int | None):
    budget = DEFAULT_BUDGET if budget is None else budget
    if work > budget:
        raise BudgetExceeded(
            f"enumeration of {work} tuples exceeds the budget {budget}")


# ---------------------------------------------------------------------------
# Gauss sums


def restricted_gauss(n: int, chi: MultChar, psi: AddChar,
                     a: ff.FFElem) -> CycElem:
    """Sum of chi(x) psi(a*x) over the n_q-th roots of unity, n_q = (n, q-1).

    For n a multiple of q-1 and a = 1 this is the classical Gauss sum.
    """
    if n < 1:
        raise ValidationError("n must be positive")
    k = chi.field
    if psi.field is not k or a.field is not k:
        raise ValidationError("character and argument fields must agree")
    n_q = math.gcd(n, k.order)
    ring = chi.ring
    step = k.order // n_q
    total = ring.zero()
    ta = None if a.is_zero() else ff.dlog(a)
    for i in range(n_q):
        t = i * step
        me = (chi.j * t) % k.order
        ae = 0 if ta is None else psi.exponent_dlog((ta + t) % k.order)
        total = total + ring.zeta(k.order, me) * ring.zeta(k.p, ae)
    return total


def gauss_sum(chi: MultChar, psi: AddChar) -> CycElem:
    k = chi.field
    return restricted_gauss(k.order, chi, psi, k.one())


# ---------------------------------------------------------------------------
# Kloosterman sums


def _kloosterman_counts(fld, tau, ta, l, t1_range) -> list[int]:
    """Exponent counts for tuples in (fld^x)^l with product dlog ta and first
    coordinate restricted to t1_range."""
    order, exp, log, add, p = fld.order, fld.exp, fld.log, fld.add_packed, fld.p
    counts = [0] * p
    if l == 2:
        for t1 in t1_range:
            s = add(exp[t1], exp[(ta - t1) % order])
            counts[0 if s == 0 else tau[log[s]]] += 1
        return counts
    for t1 in t1_range:
        b1 = exp[t1]
        for mid in itertools.product(range(order), repeat=l - 3):
            base, sm = b1, t1
            for t in mid:
                base = add(base, exp[t])
                sm += t
            rem = ta - sm
            for t in range(order):
                s = add(base, add(exp[t], exp[(rem - t) % order]))
                counts[0 if s == 0 else tau[log[s]]] += 1
    return counts


def kloosterman(fld: ff.FieldDesc, l: int, a: ff.FFElem, psi: AddChar,
                budget: int | None = None) -> CycElem:
    """Sum of psi(z_1 + ... + z_l) over unit tuples with product a."""
    if l < 1:
        raise ValidationError("l must be positive")
    if a.field is not fld or psi.field is not fld:
        raise ValidationError("argument and character must live on the field")
    if a.is_zero():
        raise ValidationError("Kloosterman sums need a nonzero argument")
    ring = psi.ring
    if l == 1:
        return psi.eval(a)
    _check_budget(fld.order ** (l - 1), budget)
    tau = psi.dlog_exponent_table()
    ta = ff.dlog(a)
    chunks = split_ranges(fld.order, worker_count())
    parts = run_chunks(
        lambda rng: _kloosterman_counts(fld, tau, ta, l, rng), chunks)
    counts = [sum(col) for col in zip(*parts)]
    return ring.weighted_root_sum(fld.p, counts)


def kloosterman_table(fld: ff.FieldDesc, l: int, psi: AddChar,
                      budget: int | None = None) -> list[CycElem]:
    """All K_{l,a} at once, indexed by dlog a.

    Computed by repeated convolution over (product dlog, exponent) pairs,
    which costs l*(q-1)^2 instead of (q-1)^l; the result is count-identical
    to direct enumeration.
    """
    if l < 1:
        raise ValidationError("l must be positive")
    if psi.field is not fld:
        raise ValidationError("character must live on the field")
    L, p = fld.order, fld.p
    _check_budget(max(l - 1, 1) * L * L, budget)
    tau = psi.dlog_exponent_table()
    ring = psi.ring
    C = np.zeros((L, p), dtype=np.int64)
    for t in range(L):
        C[t, tau[t]] = 1
    for _ in range(l - 1):
        new = np.zeros_like(C)
        for tp in range(L):
            new += np.roll(np.roll(C, tp, axis=0), tau[tp], axis=1)
        C = new
    return [ring.weighted_root_sum(p, C[t].tolist()) for t in range(L)]


# ---------------------------------------------------------------------------
# norm-fiber sums


def _norm_fiber_congruence(ext: ff.FieldDesc, over: ff.FieldDesc,
                           lam: ff.FFElem) -> tuple[int, int]:
    """Solve Nr(g**t) = lam as t = t0 + j*(q-1); returns (t0, fiber size)."""
    if lam.is_zero():
        raise ValidationError("norm fibers over zero are not used")
    qm1 = over.order
    fiber = ext.order // qm1
    s0 = ff.dlog(ff.rel_norm(ext.gen(), over))
    # the norm of a generator generates the base units, so s0 is invertible
    t0 = (pow(s0, -1, qm1) * ff.dlog(lam)) % qm1 if qm1 > 1 else 0
    return t0, fiber


def norm_fiber_sum(ext: ff.FieldDesc, lam: ff.FFElem, psi: AddChar,
                   budget: int | None = None) -> CycElem:
    """Sum of psi(Tr(y)) over y in ext with relative norm lam."""
    k = psi.field
    if lam.field is not k:
        raise ValidationError("the norm value must live in the base field")
    if not ext.has_subfield(k):
        raise ValidationError("extension must declare the base field")
    if ext is k:
        return psi.eval(lam)
    t0, fiber = _norm_fiber_congruence(ext, k, lam)
    _check_budget(fiber, budget)
    lifted = inflate_add(psi, ext)
    tau = lifted.dlog_exponent_table()
    qm1 = k.order
    counts = [0] * k.p
    for j in range(fiber):
        counts[tau[t0 + j * qm1]] += 1
    return psi.ring.weighted_root_sum(k.p, counts)


# ---------------------------------------------------------------------------
# identity checks


def _full_tuple_counts(fld, tau, n, t1_range):
    """2D counts over (product dlog, exponent) for all unit n-tuples."""
    order, exp, log, add, p = fld.order, fld.exp, fld.log, fld.add_packed, fld.p
    C = [[0] * p for _ in range(order)]
    if n == 1:
        for t in t1_range:
            C[t][tau[t]] += 1
        return C
    for t1 in t1_range:
        b1 = exp[t1]
        for mid in itertools.product(range(order), repeat=n - 2):
            base, sm = b1, t1
            for t in mid:
                base = add(base, exp[t])
                sm += t
            for t in range(order):
                s = add(base, exp[t])
                C[(sm + t) % order][0 if s == 0 else tau[log[s]]] += 1
    return C


def check_identity_716(n: int, chi: MultChar, psi: AddChar,
                       budget: int | None = None) -> SumReport:
    """Verify that the chi-weighted sum of K_{n,a} over a equals G(chi,psi)^n."""
    t_start = time.perf_counter()
    k = chi.field
    if psi.field is not k:
        raise ValidationError("characters must live on the same field")
    if n < 1:
        raise ValidationError("n must be positive")
    _check_budget(k.order ** n, budget)
    ring = chi.ring
    tau = psi.dlog_exponent_table()
    chunks = split_ranges(k.order, worker_count())
    parts = run_chunks(lambda rng: _full_tuple_counts(k, tau, n, rng), chunks)
    lhs = ring.zero()
    for T in range(k.order):
        row = [0] * k.p
        for part in parts:
            for e in range(k.p):
                row[e] += part[T][e]
        inner = ring.weighted_root_sum(k.p, row)
        lhs = lhs + ring.zeta(k.order, (chi.j * T) % k.order) * inner
    rhs = gauss_sum(chi, psi) ** n
    report = SumReport.make(
        kind="d716",
        parameters={"q": k.size, "n": n, "chi_exponent": chi.j,
                    "psi_twist_dlog": ff.dlog(psi.twist)},
        lhs=lhs, rhs=rhs, elapsed=time.perf_counter() - t_start)
    return report


def _route1_counts(kr, tau, T0, qm1, m, t1_range):
    """Counts for unit m-tuples over kr whose product has relative norm fixed
    by the congruence dlog(product) = T0 mod (q-1)."""
    L, exp, log, add, p = kr.order, kr.exp, kr.log, kr.add_packed, kr.p
    reps = L // qm1
    counts = [0] * p
    if m == 1:
        for j in t1_range:
            counts[tau[T0 + j * qm1]] += 1
        return counts
    if m == 2:
        for t1 in t1_range:
            b = exp[t1]
            c = (T0 - t1) % qm1
            for j in range(reps):
                s = add(b, exp[c + j * qm1])
                counts[0 if s == 0 else tau[log[s]]] += 1
        return counts
    for t1 in t1_range:
        b1 = exp[t1]
        for mid in itertools.product(range(L), repeat=m - 2):
            base, sm = b1, t1
            for t in mid:
                base = add(base, exp[t])
                sm += t
            c = (T0 - sm) % qm1
            for j in range(reps):
                s = add(base, exp[c + j * qm1])
                counts[0 if s == 0 else tau[log[s]]] += 1
    return counts


def check_identity_725(m: int, r: int, lam: ff.FFElem, psi: AddChar,
                       budget: int | None = None) -> SumReport:
    """Verify the three-way equality relating Kloosterman sums over k_r on a
    norm fiber, a norm-fiber sum over k_n, and a single K_{n,lam}, n = m*r."""
    t_start = time.perf_counter()
    k = psi.field
    if lam.field is not k:
        raise ValidationError("lambda must live in the base field")
    if lam.is_zero():
        raise ValidationError("lambda must be nonzero")
    if m < 1 or r < 1:
        raise ValidationError("m and r must be positive")
    n = m * r
    ring = psi.ring
    kr = ff.make_extension(k, r)
    kn = ff.make_extension(k, n)
    qm1 = k.order
    work = (kr.order ** max(m - 1, 0)) * (kr.order // qm1)
    work += kn.order // qm1
    work += k.order ** (n - 1)
    _check_budget(work, budget)

    # route 1: Kloosterman sums over k_r, summed along the norm fiber
    psi_r = inflate_add(psi, kr)
    tau_r = psi_r.dlog_exponent_table()
    if kr is k:
        T0 = ff.dlog(lam)
    else:
        T0, _ = _norm_fiber_congruence(kr, k, lam)
    if m == 1:
        chunks = split_ranges(kr.order // qm1, worker_count())
    else:
        chunks = split_ranges(kr.order, worker_count())
    parts = run_chunks(
        lambda rng: _route1_counts(kr, tau_r, T0, qm1, m, rng), chunks)
    counts = [sum(col) for col in zip(*parts)]
    route1 = ring.weighted_root_sum(k.p, counts)

    # route 2: sign times the norm-fiber sum over k_n
    sign2 = -1 if (m - 1) % 2 else 1
    route2 = norm_fiber_sum(kn, lam, psi, budget) * sign2

    # route 3: sign times a single Kloosterman sum over the base field
    sign3 = -1 if (n - m) % 2 else 1
    route3 = kloosterman(k, n, lam, psi, budget) * sign3

    pairs = [(route1, route2), (route2, route3), (route1, route3)]
    bad = next(((x, y) for x, y in pairs if not (x - y).is_zero()), None)
    lhs, rhs = bad if bad is not None else (route1, route3)
    return SumReport(
        kind="d725",
        parameters={"q": k.size, "m": m, "r": r,
                    "lambda_dlog": ff.dlog(lam),
                    "psi_twist_dlog": ff.dlog(psi.twist)},
        lhs=lhs, rhs=rhs, equal=bad is None,
        elapsed=time.perf_counter() - t_start)


# ---------------------------------------------------------------------------
# witnesses


def gn_nonzero_witness(n: int, chi: MultChar, psi: AddChar) -> ff.FFElem | None:
    """Least argument a (zero first, then by dlog) with G_n(chi,psi,a) != 0.

    Existence is part of the verified mathematics; None signals a failure to
    the caller rather than raising, so reports can record it.
    """
    k = chi.field
    if not restricted_gauss(n, chi, psi, k.zero()).is_zero():
        return k.zero()
    for t in range(k.order):
        a = k.from_dlog(t)
        if not restricted_gauss(n, chi, psi, a).is_zero():
            return a
    return None


def fourier_inversion_check(n: int, chi: MultChar, psi: AddChar) -> SumReport:
    """Check, for every x in k, that the psi-transform of a |-> G_n(a)
    recovers q times the indicator-weighted character on the n_q-torsion."""
    t_start = time.perf_counter()
    k = chi.field
    ring = chi.ring
    n_q = math.gcd(n, k.order)
    gvals = {code: restricted_gauss(n, chi, psi, k.elem(code))
             for code in range(k.size)}
    mu_codes = {x.packed for x in ff.enumerate_mu(k, n_q)}
    witness = None
    lhs = rhs = ring.zero()
    equal = True
    for x in k.elements():
        total = ring.zero()
        for code, g in gvals.items():
            if g.is_zero():
                continue
            a = k.elem(code)
            total = total + g * ring.zeta(k.p, psi.exponent(-(a * x)))
        if x.packed in mu_codes:
            expect = ring.from_int(k.size) * chi.eval(x)
        else:
            expect = ring.zero()
        if not (total - expect).is_zero():
            equal = False
            witness = x
            lhs, rhs = total, expect
            break
    return SumReport(
        kind="fourier_inversion",
        parameters={"q": k.size, "n": n, "chi_exponent": chi.j,
                    "psi_twist_dlog": ff.dlog(psi.twist)},
        lhs=lhs, rhs=rhs, equal=equal, witness=witness,
        elapsed=time.perf_counter() - t_start)


def separation_witness(n: int, psi: AddChar, aprime: ff.FFElem,
                       budget: int | None = None) -> ff.FFElem | None:
    """Least a (by dlog) with K_{n,a} != K_{n,a*aprime}; None if none exists."""
    k = psi.field
    if aprime.field is not k:
        raise ValidationError("the ratio must live on the field")
    if aprime.is_zero() or aprime == k.one():
        raise ValidationError("the ratio must differ from zero and one")
    table = kloosterman_table(k, n, psi, budget)
    shift = ff.dlog(aprime)
    L = k.order
    for t in range(L):
        if not (table[t] - table[(t + shift) % L]).is_zero():
            return k.from_dlog(t)
    return None
