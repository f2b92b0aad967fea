"""Tripartite and bipartite pure states, and the Alice-Bob support subspace.

Matrices follow the H_A -> H_B convention: a state on A x B is a d_B x d_A
matrix whose (j, i) entry is the amplitude of |i>_A |j>_B.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DimensionError, InvalidInstanceError
from .linalg import GaussianRational, Mat, rank_exact, rational_from_text, stack_vec


@dataclass(frozen=True)
class PureTensor3:
    """Unnormalized amplitude tensor of |psi>_ABC, stored sparsely."""

    dims: tuple
    amplitudes: dict = field(hash=False)

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) != 3 or any(d < 1 for d in dims):
            raise InvalidInstanceError(f"dims must be three positive integers, got {self.dims!r}")
        amps = {}
        for key, value in self.amplitudes.items():
            i, j, k = (int(x) for x in key)
            if not (0 <= i < dims[0] and 0 <= j < dims[1] and 0 <= k < dims[2]):
                raise InvalidInstanceError(f"index {(i, j, k)} outside dims {dims}")
            value = GaussianRational.coerce(value)
            if value:
                amps[(i, j, k)] = value
        if not amps:
            raise InvalidInstanceError("tensor has no nonzero amplitude")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)

    def amplitude(self, i: int, j: int, k: int) -> GaussianRational:
        return self.amplitudes.get((i, j, k), GaussianRational(0))

    def scale(self, c) -> "PureTensor3":
        c = GaussianRational.coerce(c)
        if not c:
            raise InvalidInstanceError("scaling by zero")
        return PureTensor3(self.dims, {key: c * v for key, v in self.amplitudes.items()})

    def norm2(self) -> Fraction:
        return sum((v.abs2() for v in self.amplitudes.values()), Fraction(0))

    def slice(self, k: int) -> Mat:
        d_a, d_b, _ = self.dims
        return Mat.from_rows([[self.amplitude(i, j, k) for i in range(d_a)] for j in range(d_b)])

    def to_json(self) -> dict:
        entries = []
        for (i, j, k) in sorted(self.amplitudes):
            v = self.amplitudes[(i, j, k)]
            entries.append({"i": i, "j": j, "k": k, "re": str(v.re), "im": str(v.im)})
        return {"dims": list(self.dims), "entries": entries}

    @classmethod
    def from_json(cls, obj) -> "PureTensor3":
        try:
            if not isinstance(obj, dict) or set(obj) - {"dims", "entries"}:
                raise InvalidInstanceError("state must be an object with keys 'dims' and 'entries'")
            dims = obj["dims"]
            if not isinstance(dims, list) or not all(isinstance(d, int) and not isinstance(d, bool) for d in dims):
                raise InvalidInstanceError(f"bad dims {dims!r}")
            amps = {}
            for e in obj["entries"]:
                key = (e["i"], e["j"], e["k"])
                if not all(isinstance(x, int) and not isinstance(x, bool) for x in key):
                    raise InvalidInstanceError(f"bad index in entry {e!r}")
                if key in amps:
                    raise InvalidInstanceError(f"duplicate entry {key}")
                amps[key] = GaussianRational(rational_from_text(e.get("re", "0")),
                                             rational_from_text(e.get("im", "0")))
            return cls(tuple(dims), amps)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidInstanceError):
                raise
            raise InvalidInstanceError(f"malformed state: {exc}") from exc

    @classmethod
    def from_slices(cls, mats: Sequence[Mat]) -> "PureTensor3":
        """Tensor whose k-th Charlie slice is ``mats[k]``."""
        if not mats:
            raise InvalidInstanceError("no slices")
        d_b, d_a = mats[0].shape
        amps = {}
        for k, m in enumerate(mats):
            if m.shape != (d_b, d_a):
                raise DimensionError(f"slice {k} has shape {m.shape}, expected {(d_b, d_a)}")
            for j in range(d_b):
                for i in range(d_a):
                    if m[j, i]:
                        amps[(i, j, k)] = m[j, i]
        return cls((d_a, d_b, len(mats)), amps)


@dataclass(frozen=True)
class BipartiteState:
    matrix: Mat

    def __post_init__(self):
        if self.matrix.is_zero():
            raise InvalidInstanceError("bipartite state is the zero matrix")

    @property
    def dims(self):
        return (self.matrix.cols, self.matrix.rows)

    @classmethod
    def from_tensor(cls, psi: PureTensor3) -> "BipartiteState":
        if psi.dims[2] != 1:
            raise InvalidInstanceError(f"bipartite state needs d_C = 1, got {psi.dims[2]}")
        return cls(psi.slice(0))

    def to_tensor(self) -> PureTensor3:
        return PureTensor3.from_slices([self.matrix])


@dataclass(frozen=True)
class SubspaceBasis:
    """Ordered spanning list of d_B x d_A matrices.

    ``sources[k]`` is the Charlie index the k-th matrix came from, so that a
    coefficient vector over the basis can be mapped back onto H_C.
    """

    shape: tuple
    mats: tuple
    sources: tuple = None

    def __post_init__(self):
        mats = tuple(self.mats)
        if not mats:
            raise InvalidInstanceError("empty basis")
        shape = tuple(self.shape)
        for m in mats:
            if m.shape != shape:
                raise DimensionError(f"basis element has shape {m.shape}, expected {shape}")
        if all(m.is_zero() for m in mats):
            raise InvalidInstanceError("all basis matrices are zero")
        sources = tuple(range(len(mats))) if self.sources is None else tuple(self.sources)
        if len(sources) != len(mats):
            raise DimensionError("sources and mats differ in length")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "mats", mats)
        object.__setattr__(self, "sources", sources)

    @classmethod
    def of(cls, mats) -> "SubspaceBasis":
        mats = [m if isinstance(m, Mat) else Mat.from_rows(m) for m in mats]
        if not mats:
            raise InvalidInstanceError("empty basis")
        return cls(mats[0].shape, tuple(mats))

    @property
    def n(self) -> int:
        return len(self.mats)

    @property
    def d_a(self) -> int:
        return self.shape[1]

    @property
    def d_b(self) -> int:
        return self.shape[0]


def charlie_slices(psi: PureTensor3) -> SubspaceBasis:
    """Nonzero Charlie-index slices T_k, with (T_k)[j][i] = psi(i, j, k).

    Their span is exactly the support of the reduced state on AB.
    """
    d_a, d_b, d_c = psi.dims
    mats, sources = [], []
    for k in range(d_c):
        m = psi.slice(k)
        if not m.is_zero():
            mats.append(m)
            sources.append(k)
    return SubspaceBasis((d_b, d_a), tuple(mats), tuple(sources))


def schmidt_rank(phi: BipartiteState) -> int:
    return rank_exact(phi.matrix)


def support_dim(basis: SubspaceBasis) -> int:
    return rank_exact(stack_vec(basis.mats))


def load_state(path) -> PureTensor3:
    """Read a state file. JSON errors propagate as ``json.JSONDecodeError``."""
    with open(path, encoding="utf-8") as fh:
        return PureTensor3.from_json(json.load(fh))


def dump_state(psi: PureTensor3, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(psi.to_json(), fh, indent=2)
        fh.write("\n")
