"""The acceptance suite: eleven exact checks run against one instance.

Each check either passes, fails with a witness, or is skipped with a reason.
A report lists every check exactly once, in order.
"""

from __future__ import annotations

import itertools
import os
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb

import numpy as np

from . import frames, norton, qseries
from .forms import Family, FormedSpace, basis_isotropic, make_space
from .lattice import PolarLattice, a_counts, bcn_count, enumerate_lattice
from .qseries import gauss_binom
from .rational import QArray
from .scheme import bfs_distances, build_graph, intersection_numbers, valency_check
from .spectral import (
    decompose,
    eigenvalue_check,
    filtration_check,
    laplacian,
    laplacian_identities_check,
    mu_values,
)
from .subspace import Subspace, projective_points, rref

DEFAULT_BUDGET = 1000
BUDGET_ENV = "DUALPOLAR_BUDGET"

LATTICE_EXHAUSTIVE = 5000
LATTICE_SAMPLES = 10_000
BCN_BASES = 20
PI1_RANDOM = 100
BRUTE_FORCE_COMBOS = 60_000
SEED = 20240101

DEFAULT_MATRIX = [
    ("C", 2, 2),
    ("C", 3, 2),
    ("B", 2, 3),
    ("D", 3, 2),
    ("2D", 2, 2),
    ("2A_even", 2, 2),
    ("2A_odd", 2, 2),
]

CHECKS = [
    ("counts", "level sizes against the closed form and a brute-force isotropy filter"),
    ("lattice_laws", "atomicity, rank modularity, joins of atoms, cover property"),
    ("counting", "a_j constancy and recursion, the four-parameter subspace count"),
    ("distance_regular", "intersection numbers and valencies"),
    ("spectrum", "Lagrange idempotents and the mu recursion"),
    ("eigen_table", "4phi3 eigenvalues act on every eigenspace"),
    ("filtration", "upward sums, Lambda_j dimensions, Laplacian identities"),
    ("tight_frames", "frame identity, U^j expansion, lambda_1 closed form"),
    ("pi1_frame", "pi_1 via the atom frame equals E_1"),
    ("norton", "product identities and cases, commutativity, bilinearity"),
    ("qseries", "q-Pascal, Newton's identity, 4phi3 termination"),
]


class BudgetExceeded(ValueError):
    pass


def budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class InstanceSpec:
    family: str
    d: int
    r: int

    @cached_property
    def fam(self) -> Family:
        return Family(self.family, self.r)

    @property
    def q(self) -> int:
        return self.fam.q

    @property
    def e(self) -> Fraction:
        return self.fam.e

    @property
    def n(self) -> int:
        return self.fam.dimension(self.d)

    @property
    def vertices(self) -> int:
        return int(qseries.a_count(0, self.d, self.fam.two_e, self.q))

    @property
    def name(self) -> str:
        return self.fam.name(self.d)

    def check_budget(self, limit: int | None = None) -> None:
        limit = budget() if limit is None else limit
        if self.vertices > limit:
            raise BudgetExceeded(f"{self.name} has {self.vertices} vertices, budget is {limit}")

    def params(self) -> dict:
        return {
            "family": self.family,
            "d": self.d,
            "r": self.r,
            "q": self.q,
            "e": str(self.e),
            "n": self.n,
            "vertices": self.vertices,
        }


class Instance:
    """Everything derived from one spec, built lazily and kept."""

    def __init__(self, spec: InstanceSpec, lattice: PolarLattice | None = None):
        self.spec = spec
        if lattice is not None:
            self.__dict__["lattice"] = lattice

    @cached_property
    def space(self) -> FormedSpace:
        return make_space(self.spec.family, self.spec.d, self.spec.r)

    @cached_property
    def lattice(self) -> PolarLattice:
        return enumerate_lattice(self.space)

    @cached_property
    def graph(self):
        return build_graph(self.lattice)

    @cached_property
    def decomp(self):
        return decompose(self.graph)

    @cached_property
    def table(self):
        s = self.lattice.space
        return qseries.eigen_table(s.d, s.two_e, s.q)

    @cached_property
    def lambdas(self) -> list[Fraction]:
        lat = self.lattice
        return [frames.frame_constant(j, self.decomp, self.table, lat) for j in range(lat.d + 1)]


@dataclass
class CheckResult:
    index: int
    name: str
    status: str  # pass | fail | skipped
    detail: dict = field(default_factory=dict)
    reason: str | None = None
    seconds: float = 0.0

    def line(self) -> str:
        tail = f" ({self.reason})" if self.reason else ""
        return f"[{self.status.upper():7}] {self.index:2d} {self.name}{tail}"

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "name": self.name,
            "status": self.status,
            "detail": jsonable(self.detail),
            "reason": self.reason,
            "seconds": round(self.seconds, 3),
        }


@dataclass
class VerificationReport:
    params: dict
    checks: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def to_json(self, timings: bool = True) -> dict:
        checks = [c.to_json() for c in self.checks]
        if not timings:
            for c in checks:
                c.pop("seconds")
        return {"params": self.params, "ok": self.ok, "checks": checks}


def jsonable(x):
    """Exact values as strings; containers recursively."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, Subspace):
        return repr(x)
    return x


# -- oracles ---------------------------------------------------------------------

def brute_force_counts(space: FormedSpace, limit: int = BRUTE_FORCE_COMBOS) -> list[int] | None:
    """|Omega_l| by spanning every l-set of points and testing isotropy.

    Returns None when some level would need more than ``limit`` combinations.
    """
    F = space.field
    pts = list(projective_points(F, space.n))
    if any(comb(len(pts), l) > limit for l in range(1, space.d + 1)):
        return None
    out = [1]
    for l in range(1, space.d + 1):
        seen = set()
        for combo in itertools.combinations(pts, l):
            b = rref(F, combo)
            if len(b) == l and b not in seen and basis_isotropic(space, b):
                seen.add(b)
        out.append(len(seen))
    return out


def lattice_laws(lat: PolarLattice, exhaustive: int = LATTICE_EXHAUSTIVE,
                 samples: int = LATTICE_SAMPLES, seed: int = SEED) -> dict:
    elems = list(lat.elements())
    d = lat.d
    counts = {"atomic": 0, "modular": 0, "top_joins": 0, "atom_joins": 0, "cover": 0}
    for u in elems:
        if u.is_top or u.rank == 0:
            continue
        atoms = [Subspace((b,), 1) for b in rref(lat.field, u.basis)]
        acc = lat.bottom
        for t in atoms:
            if lat.locate(t)[0] != 1:
                raise AssertionError(f"basis row of {u} is not an atom")
            acc = lat.join(acc, t)
        if acc != u:
            raise AssertionError(f"{u} is not the join of its basis atoms")
        counts["atomic"] += 1
    if len(elems) <= exhaustive:
        pairs = itertools.combinations_with_replacement(elems, 2)
        mode = "exhaustive"
    else:
        pairs = lat.sample_pairs(samples, seed)
        mode = "sampled"
    npairs = 0
    for u, w in pairs:
        npairs += 1
        j, m = lat.join(u, w), lat.meet(u, w)
        if lat.meet(w, u) != m or lat.join(w, u) != j:
            raise AssertionError(f"meet or join not commutative at ({u}, {w})")
        if not (lat.leq(m, u) and lat.leq(m, w) and lat.leq(u, j) and lat.leq(w, j)):
            raise AssertionError(f"bounds fail at ({u}, {w})")
        if not j.is_top:
            if u.rank + w.rank != j.rank + m.rank:
                raise AssertionError(f"rank modularity fails at ({u}, {w})")
            counts["modular"] += 1
        else:
            counts["top_joins"] += 1
        if u.rank == 1 and w.rank == 1 and u != w and not j.is_top:
            if j.rank != 2:
                raise AssertionError(f"join of atoms {u}, {w} has rank {j.rank}")
            counts["atom_joins"] += 1
        if u.rank < d and w.rank < d and not u.is_top and not w.is_top:
            up = lat.covers(j, u) and lat.covers(j, w)
            down = lat.covers(u, m) and lat.covers(w, m)
            if up and not down:
                raise AssertionError(f"join covers both but meet is not covered at ({u}, {w})")
            if down and not j.is_top and not up:
                raise AssertionError(f"both cover the meet but the join does not cover at ({u}, {w})")
            counts["cover"] += 1
    return {"mode": mode, "elements": len(elems), "pairs": npairs, **counts}


def bcn_sample(lat: PolarLattice, bases: int = BCN_BASES, seed: int = SEED) -> dict:
    """Every (k, l, m) with k + l + m <= d over a spread of base spaces."""
    rng = random.Random(seed)
    d = lat.d
    per_level = -(-bases // (d + 1))
    Ws = []
    for level in lat.omega[: d + 1]:
        Ws += rng.sample(level, min(per_level, len(level)))
    checked = 0
    for W in Ws:
        for k in range(d + 1):
            for l in range(d + 1 - k):
                for m in range(d + 1 - k - l):
                    got = bcn_count(lat, W, k, l, m)
                    if not got.ok:
                        raise AssertionError(f"W = {W}, (k,l,m) = ({k},{l},{m}): {got.observed} != {got.formula}")
                    checked += 1
    return {"bases": len(Ws), "triples_checked": checked}


def qseries_layer(instances=DEFAULT_MATRIX) -> dict:
    n_pascal = 0
    for q in (2, 3, 4):
        for n in range(1, 13):
            for k in range(0, n + 1):
                g = gauss_binom(n, k, q)
                a = gauss_binom(n - 1, k - 1, q) + q ** k * gauss_binom(n - 1, k, q)
                b = q ** (n - k) * gauss_binom(n - 1, k - 1, q) + gauss_binom(n - 1, k, q)
                if not g == a == b:
                    raise AssertionError(f"q-Pascal fails at n={n}, k={k}, q={q}")
                n_pascal += 1
    n_newton = 0
    for q, two_e in [(2, 2), (2, 0), (2, 4), (3, 2), (4, 1), (4, 3), (9, 1), (9, 3)]:
        for n in range(0, 9):
            if not qseries.newton_identity_check(n, qseries.QPower(1, two_e), q):
                raise AssertionError(f"Newton's identity fails at n={n}, q={q}, t=q^({two_e}/2)")
            n_newton += 1
    n_terms = 0
    for tag, d, r in instances:
        fam = Family(tag, r)
        for dd in range(2, d + 2):
            for i in range(dd + 1):
                for j in range(dd + 1):
                    qseries.u_series(i, j, dd, fam.two_e, fam.q)  # asserts the vanishing term
                    n_terms += 1
    return {"pascal": n_pascal, "newton": n_newton, "terminating_series": n_terms}


# -- the checks ------------------------------------------------------------------

def _ac_counts(inst: Instance) -> dict:
    lat, s = inst.lattice, inst.lattice.space
    sizes = [len(level) for level in lat.omega[: lat.d + 1]]
    formula = [qseries.bcn_formula(s.d, s.two_e, s.q, 0, 0, l, 0) for l in range(s.d + 1)]
    if sizes != formula:
        raise AssertionError(f"level sizes {sizes} != closed form {formula}")
    if sizes[-1] != lat.a[0]:
        raise AssertionError(f"|X| = {sizes[-1]} but a_0 = {lat.a[0]}")
    brute = brute_force_counts(s)
    if brute is not None and brute != sizes:
        raise AssertionError(f"brute-force isotropy filter gives {brute}, enumeration {sizes}")
    return {"levels": sizes, "brute_force": brute is not None}


def _ac_lattice(inst: Instance) -> dict:
    return lattice_laws(inst.lattice)


def _ac_counting(inst: Instance) -> dict:
    return {"a": a_counts(inst.lattice), **bcn_sample(inst.lattice)}


def _ac_drg(inst: Instance) -> dict:
    g = inst.graph
    if not np.array_equal(bfs_distances(g), g.dist):
        raise AssertionError("meet-rank distance differs from graph distance")
    nums = intersection_numbers(g)
    s = inst.lattice.space
    bad = valency_check(nums, s.d, s.two_e, s.q)
    if bad:
        raise AssertionError(f"valencies disagree: {bad}")
    return {"k": nums.k}


def _ac_spectrum(inst: Instance) -> dict:
    s = inst.lattice.space
    mus = mu_values(s.d, s.two_e, s.q)
    dec = inst.decomp
    if dec.mu != mus:
        raise AssertionError(f"decomposition eigenvalues {dec.mu} != {mus}")
    return {"mu": dec.mu, "mult": dec.mult}


def _ac_eigen_table(inst: Instance) -> dict:
    bad = eigenvalue_check(inst.graph, inst.decomp, inst.table)
    if bad:
        raise AssertionError("; ".join(bad[:3]))
    return {"theta": inst.table.theta}


def _ac_filtration(inst: Instance) -> dict:
    lat = inst.lattice
    out = filtration_check(lat, inst.decomp)
    out.update(laplacian_identities_check(lat, laplacian(inst.graph)))
    return out


def _ac_frames(inst: Instance) -> dict:
    lat, dec = inst.lattice, inst.decomp
    out = []
    for j, lam in enumerate(inst.lambdas):
        frames.u_matrix(lat, j, inst.graph)
        out.append(frames.verify_tight_frame(j, lat, dec, lam))
    s = lat.space
    if s.d >= 3:
        # a_3 q^(d-1)(1 + q^(e-1))(1 + q^(d-3+e)) is lambda_1 again
        alt = norton._denominator(lat) * lat.a[3]
        if alt != inst.lambdas[1]:
            raise AssertionError(f"denominator consistency: {alt} != {inst.lambdas[1]}")
    return {"lambda": inst.lambdas, "frames": out}


def _ac_pi1(inst: Instance, count: int = PI1_RANDOM, seed: int = SEED) -> dict:
    lat, E1 = inst.lattice, inst.decomp.E[1]
    lam1 = inst.lambdas[1]
    if frames.pi1_operator(lat, lam1) != E1:
        raise AssertionError("pi_1 via the frame differs from E_1 on the standard basis")
    rng = random.Random(seed)
    n = len(lat.X)
    H = QArray.from_fractions(
        [[Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(count)] for _ in range(n)]
    )
    if frames.pi1_via_frame(lat, lam1, H) != E1 @ H:
        raise AssertionError("pi_1 via the frame differs from E_1 on a random vector")
    return {"basis": n, "random": count}


def _ac_norton(inst: Instance) -> dict:
    rep = norton.verify_norton(inst.lattice, inst.decomp, seed=SEED)
    if not norton.commutativity_bilinearity(inst.decomp, inst.lattice, seed=SEED):
        raise AssertionError("star is not commutative or not bilinear")
    rep["commutative_bilinear"] = True
    return rep


def _ac_qseries(inst: Instance) -> dict:
    return qseries_layer()


_RUNNERS = [_ac_counts, _ac_lattice, _ac_counting, _ac_drg, _ac_spectrum, _ac_eigen_table,
            _ac_filtration, _ac_frames, _ac_pi1, _ac_norton, _ac_qseries]


def run_check(index: int, inst: Instance) -> CheckResult:
    name = CHECKS[index - 1][0]
    t0 = time.perf_counter()
    try:
        detail = _RUNNERS[index - 1](inst)
    except (AssertionError, ArithmeticError, ValueError) as exc:
        return CheckResult(index, name, "fail", {"witness": str(exc), "error": type(exc).__name__},
                           seconds=time.perf_counter() - t0)
    reason = detail.get("two_space_skipped") if isinstance(detail, dict) else None
    return CheckResult(index, name, "pass", detail, reason=reason, seconds=time.perf_counter() - t0)


def verify_instance(inst: Instance, only: list[int] | None = None) -> VerificationReport:
    wanted = set(only) if only else None
    checks = []
    for i, (name, _) in enumerate(CHECKS, start=1):
        if wanted is not None and i not in wanted:
            checks.append(CheckResult(i, name, "skipped", reason="not selected"))
        else:
            checks.append(run_check(i, inst))
    return VerificationReport(inst.spec.params(), checks)
