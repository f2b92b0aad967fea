"""SLOCC convertibility of |psi>_ABC into a Schmidt-rank-d state |phi>_AB.

The conversion is feasible iff the support of rho_AB contains a matrix of
rank >= d. :func:`decide_slocc` answers that with one-sided error: a YES
always carries a witness whose rank was computed exactly, and only a NO
produced by random sampling has a nonzero error bound, (2d/M)^t.
"""
from __future__ import annotations

import random
import secrets
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import oracle
from .errors import InvalidInstanceError, ParameterError
from .linalg import ZERO, GaussianRational, Mat, lincomb, rank_exact
from .states import PureTensor3, SubspaceBasis, charlie_slices, support_dim

DEFAULT_TRIALS = 20
SET_SIZE_FACTOR = 64
# witness searches that are guaranteed to succeed give up after this many draws
MAX_WITNESS_TRIALS = 256

METHODS = ("dimension", "slice-shortcut", "flanders", "oracle", "sampling")


@dataclass(frozen=True)
class DecisionParams:
    """Sample set {1..set_size}, trial count and seed.

    ``set_size=None`` means 64*d and ``seed=None`` draws a fresh seed; call
    :meth:`resolve` to fix both for a target rank.
    """

    set_size: Optional[int] = None
    trials: int = DEFAULT_TRIALS
    seed: Optional[int] = None

    def resolve(self, d: int) -> "DecisionParams":
        p = self
        if p.set_size is None:
            p = replace(p, set_size=SET_SIZE_FACTOR * d)
        if p.seed is None:
            p = replace(p, seed=secrets.randbits(64))
        if not isinstance(p.trials, int) or p.trials < 1:
            raise ParameterError(f"trials must be >= 1, got {p.trials!r}")
        if not isinstance(p.set_size, int) or p.set_size < 1:
            raise ParameterError(f"set size must be >= 1, got {p.set_size!r}")
        if not isinstance(p.seed, int) or not 0 <= p.seed < 2 ** 64:
            raise ParameterError(f"seed must be a 64-bit unsigned integer, got {p.seed!r}")
        return p


@dataclass(frozen=True)
class SamplePoint:
    u: tuple

    def __iter__(self):
        return iter(self.u)

    def __len__(self):
        return len(self.u)


@dataclass(frozen=True)
class Witness:
    """Certified coefficient vector and the measurement that realizes it."""

    u: tuple
    pi_u: Mat
    rank: int
    measurement: tuple
    outcome_probability: Fraction

    def to_json(self) -> dict:
        return {
            "u": [x.to_json() for x in self.u],
            "pi_u": self.pi_u.to_json(),
            "rank": self.rank,
            "measurement": [x.to_json() for x in self.measurement],
            "outcome_probability": str(self.outcome_probability),
        }


@dataclass(frozen=True)
class DecisionReport:
    answer: str
    target_rank: int
    method: str
    set_size: int
    trials: int
    seed: int
    error_bound: Fraction
    witness: Optional[Witness] = None

    @property
    def feasible(self) -> bool:
        return self.answer == "yes"

    def to_json(self) -> dict:
        return {
            "answer": self.answer,
            "target_rank": self.target_rank,
            "method": self.method,
            "set_size": self.set_size,
            "trials": self.trials,
            "seed": self.seed,
            "error_bound": str(self.error_bound),
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def flanders_check(basis: SubspaceBasis, d: int) -> bool:
    """Sufficient condition for feasibility: dim span >= d * max(d_A, d_B).

    False is inconclusive, not a proof of infeasibility.
    """
    if not 1 <= d <= min(basis.shape):
        raise InvalidInstanceError(f"target rank {d} outside [1, {min(basis.shape)}]")
    return support_dim(basis) >= d * max(basis.shape)


def sample_point(params: DecisionParams, trial: int, n: int) -> SamplePoint:
    """Draw u_k = a_k + i*b_k with a_1, b_1, ..., a_n, b_n uniform on {1..M}.

    Deterministic in (seed, trial, n, M).
    """
    if n < 1:
        raise ParameterError("sample dimension must be >= 1")
    if params.seed is None or params.set_size is None:
        raise ParameterError("sample_point needs resolved params")
    m = params.set_size
    if m < 1:
        raise ParameterError(f"set size must be >= 1, got {m}")
    rng = random.Random((params.seed << 64) | trial)
    parts = [rng.randint(1, m) for _ in range(2 * n)]
    return SamplePoint(tuple(GaussianRational(parts[2 * k], parts[2 * k + 1]) for k in range(n)))


def assemble(basis: SubspaceBasis, u: Sequence) -> Mat:
    """Pi(u) = u_1 T_1 + ... + u_n T_n."""
    u = tuple(u)
    if len(u) != basis.n:
        raise InvalidInstanceError(f"{len(u)} coefficients for a basis of {basis.n} matrices")
    return lincomb(u, basis.mats)


def make_witness(psi: PureTensor3, basis: SubspaceBasis, u: Sequence) -> Witness:
    """Charlie's measurement vector for u and the probability of its outcome.

    Projecting H_C onto |P> with P_k = conj(u_k) leaves AB in a state
    proportional to Pi(u); that outcome occurs with probability
    ||Pi(u)||^2 / (||u||^2 ||psi||^2).
    """
    u = tuple(GaussianRational.coerce(x) for x in u)
    for k, src in zip(range(basis.n), basis.sources):
        if not 0 <= src < psi.dims[2] or psi.slice(src) != basis.mats[k]:
            raise InvalidInstanceError(f"basis element {k} is not Charlie slice {src} of psi")
    pi_u = assemble(basis, u)
    if pi_u.is_zero():
        raise InvalidInstanceError("zero combination: no post-measurement state")
    measurement = [ZERO] * psi.dims[2]
    for x, src in zip(u, basis.sources):
        measurement[src] = x.conj()
    u_norm2 = sum((x.abs2() for x in u), Fraction(0))
    prob = pi_u.norm2() / (u_norm2 * psi.norm2())
    return Witness(u, pi_u, rank_exact(pi_u), tuple(measurement), prob)


def _as_instance(instance):
    if isinstance(instance, PureTensor3):
        return instance, charlie_slices(instance)
    if isinstance(instance, SubspaceBasis):
        basis = SubspaceBasis(instance.shape, instance.mats, tuple(range(instance.n)))
        return PureTensor3.from_slices(basis.mats), basis
    raise TypeError(f"expected PureTensor3 or SubspaceBasis, got {type(instance).__name__}")


def _check_rank(d):
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise InvalidInstanceError(f"target rank must be a positive integer, got {d!r}")


def _search(basis: SubspaceBasis, d: int, params: DecisionParams, trials: int):
    """Lowest trial index whose sampled Pi(u) has rank >= d, with that u."""
    for trial in range(trials):
        u = sample_point(params, trial, basis.n)
        if rank_exact(assemble(basis, u.u)) >= d:
            return u
    return None


def _certified_witness(psi, basis, d, params):
    # only called when a rank-d element is known to exist
    m = params.set_size if params.set_size > 2 * d else 4 * d
    u = _search(basis, d, replace(params, set_size=m), MAX_WITNESS_TRIALS)
    if u is None:
        raise RuntimeError("witness search failed on an instance certified feasible")
    return make_witness(psi, basis, u.u)


def _report(answer, d, method, params, error=Fraction(0), witness=None):
    return DecisionReport(answer, d, method, params.set_size, params.trials, params.seed,
                          Fraction(error), witness)


def oracle_report(instance: Union[PureTensor3, SubspaceBasis], d: int,
                  params: Optional[DecisionParams] = None) -> DecisionReport:
    """Certified verdict from :func:`oracle.minors_all_zero` (small instances only)."""
    _check_rank(d)
    psi, basis = _as_instance(instance)
    params = (params or DecisionParams()).resolve(d)
    if d > min(basis.shape) or oracle.minors_all_zero(basis, d):
        return _report("no", d, "oracle", params)
    return _report("yes", d, "oracle", params, witness=_certified_witness(psi, basis, d, params))


def decide_slocc(instance: Union[PureTensor3, SubspaceBasis], d: int,
                 params: Optional[DecisionParams] = None, exact: bool = False) -> DecisionReport:
    """Decide whether the state (or support basis) reaches Schmidt rank >= d.

    Stages, first conclusive one wins: dimension bound, single-slice rank,
    the Flanders dimension bound, the exact oracle (``exact=True``), and
    finally t rounds of Schwartz-Zippel sampling.
    """
    _check_rank(d)
    psi, basis = _as_instance(instance)
    params = (params or DecisionParams()).resolve(d)
    if not exact and params.set_size <= 2 * d:
        raise ParameterError(f"set size {params.set_size} must exceed 2d = {2 * d}")

    if d > min(basis.shape):
        return _report("no", d, "dimension", params)

    for k, t in enumerate(basis.mats):
        if rank_exact(t) >= d:
            u = [0] * basis.n
            u[k] = 1
            return _report("yes", d, "slice-shortcut", params,
                           witness=make_witness(psi, basis, u))
    dim = support_dim(basis)
    if dim == 1:
        # every element is a multiple of one slice, all of which were just checked
        return _report("no", d, "slice-shortcut", params)

    if dim >= d * max(basis.shape):
        return _report("yes", d, "flanders", params,
                       witness=_certified_witness(psi, basis, d, params))

    if exact:
        return oracle_report(basis if isinstance(instance, SubspaceBasis) else psi, d, params)

    u = _search(basis, d, params, params.trials)
    if u is not None:
        return _report("yes", d, "sampling", params, witness=make_witness(psi, basis, u.u))
    return _report("no", d, "sampling", params, error=Fraction(2 * d, params.set_size) ** params.trials)
