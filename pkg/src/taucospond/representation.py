"""Representation and Morphism value types plus direct sums and duality."""

from __future__ import annotations

from typing import TYPE_CHECKING, Sequence

import numpy as np

from .errors import AlgebraError, DimensionMismatch
from .linalg import is_invertible, is_zero, rank

if TYPE_CHECKING:
    from .algebra import Algebra


def _freeze(m: np.ndarray) -> np.ndarray:
    m = np.ascontiguousarray(m)
    m.setflags(write=False)
    return m


class Representation:
    """A finite dimensional right module as one matrix per arrow.

    Equality and hashing compare the actual matrices (not isomorphism
    classes), which makes representations usable as cache keys.
    """

    __slots__ = ("alg", "dims", "mats", "_key", "_hash")

    def __init__(self, alg: "Algebra", dims: Sequence[int], mats: Sequence[np.ndarray], check: bool = True):
        self.alg = alg
        self.dims = tuple(int(d) for d in dims)
        f = alg.field
        q = alg.quiver
        if len(self.dims) != q.n or any(d < 0 for d in self.dims):
            raise DimensionMismatch("dimension vector does not match the quiver")
        if len(mats) != len(q.arrows):
            raise DimensionMismatch("need one matrix per arrow")
        frozen = []
        for a, m in zip(q.arrows, mats):
            m = f.asarray(m) if not (isinstance(m, np.ndarray) and m.dtype == f.dtype) else m
            if m.shape != (self.dims[a.target], self.dims[a.source]):
                raise DimensionMismatch(
                    f"arrow {a.label}: matrix shape {m.shape} should be {(self.dims[a.target], self.dims[a.source])}"
                )
            frozen.append(_freeze(m))
        self.mats = tuple(frozen)
        self._key = None
        self._hash = None
        if check:
            for rel in alg.relations:
                if not is_zero(self.relation_matrix(rel)):
                    raise AlgebraError(f"representation violates relation {alg.relation_text(rel)}")

    @property
    def field(self):
        return self.alg.field

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def path_matrix(self, src: int, arrows: Sequence[int]) -> np.ndarray:
        f = self.field
        m = f.eye(self.dims[src])
        for a in arrows:
            m = f.matmul(self.mats[a], m)
        return m

    def relation_matrix(self, rel) -> np.ndarray:
        f = self.field
        s, t = self.alg.relation_ends(rel)
        out = f.zeros(self.dims[t], self.dims[s])
        for arrows, c in rel:
            out = f.reduce(out + self.path_matrix(s, arrows) * c)
        return out

    def key(self):
        if self._key is None:
            self._key = (self.dims, tuple(m.tobytes() if m.dtype != object else tuple(m.flat) for m in self.mats))
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, Representation) and other.alg is self.alg and other.key() == self.key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((id(self.alg), self.key()))
        return self._hash

    def sort_key(self):
        """Deterministic ordering: total dim, dim vector, matrix entries."""
        return (self.total_dim, self.dims, tuple(tuple(int(x) for x in m.flat) for m in self.mats))

    def support(self) -> frozenset[int]:
        return frozenset(v for v, d in enumerate(self.dims) if d)

    def to_json(self) -> dict:
        q = self.alg.quiver
        return {
            "dims": list(self.dims),
            "arrows": {a.label: [[int(x) for x in row] for row in m.tolist()] for a, m in zip(q.arrows, self.mats)},
        }

    def __repr__(self) -> str:
        return f"Representation(dims={self.dims})"

    @classmethod
    def zero(cls, alg: "Algebra") -> "Representation":
        f = alg.field
        return cls(alg, (0,) * alg.n, [f.zeros(0, 0) for _ in alg.quiver.arrows], check=False)

    @classmethod
    def simple(cls, alg: "Algebra", v: int) -> "Representation":
        f = alg.field
        dims = tuple(1 if w == v else 0 for w in range(alg.n))
        return cls(alg, dims, [f.zeros(dims[a.target], dims[a.source]) for a in alg.quiver.arrows], check=False)

    @classmethod
    def from_json(cls, alg: "Algebra", data: dict) -> "Representation":
        f = alg.field
        dims = data["dims"]
        mats = []
        for a in alg.quiver.arrows:
            rows = data["arrows"][a.label]
            mats.append(f.asarray(rows, dims[a.target], dims[a.source]))
        return cls(alg, dims, mats)


class Morphism:
    """An intertwiner: one matrix per vertex, ``target_a f_i = f_j source_a``."""

    __slots__ = ("source", "target", "maps")

    def __init__(self, source: Representation, target: Representation, maps: Sequence[np.ndarray], check: bool = False):
        if source.alg is not target.alg:
            raise AlgebraError("morphism between modules over different algebras")
        self.source = source
        self.target = target
        self.maps = tuple(_freeze(m) for m in maps)
        for v, m in enumerate(self.maps):
            if m.shape != (target.dims[v], source.dims[v]):
                raise DimensionMismatch(f"vertex {v}: map shape {m.shape} mismatch")
        if check and not self.is_intertwiner():
            raise AlgebraError("maps do not commute with the arrows")

    @property
    def field(self):
        return self.source.field

    def is_intertwiner(self) -> bool:
        f = self.field
        for k, a in enumerate(self.source.alg.quiver.arrows):
            lhs = f.matmul(self.target.mats[k], self.maps[a.source])
            rhs = f.matmul(self.maps[a.target], self.source.mats[k])
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def compose(self, other: "Morphism") -> "Morphism":
        """``self ∘ other``."""
        if other.target.dims != self.source.dims:
            raise DimensionMismatch("composition of incompatible morphisms")
        f = self.field
        return Morphism(other.source, self.target, [f.matmul(a, b) for a, b in zip(self.maps, other.maps)])

    def __matmul__(self, other: "Morphism") -> "Morphism":
        return self.compose(other)

    def is_zero(self) -> bool:
        return all(is_zero(m) for m in self.maps)

    def rank(self) -> int:
        return sum(rank(m, self.field) for m in self.maps)

    def is_mono(self) -> bool:
        return all(rank(m, self.field) == m.shape[1] for m in self.maps)

    def is_epi(self) -> bool:
        return all(rank(m, self.field) == m.shape[0] for m in self.maps)

    def is_iso(self) -> bool:
        return all(is_invertible(m, self.field) for m in self.maps)

    def vector(self) -> np.ndarray:
        parts = [m.reshape(-1) for m in self.maps]
        if not parts:
            return self.field.zeros(1, 0)[0]
        return np.concatenate(parts)

    def __repr__(self) -> str:
        return f"Morphism({self.source.dims} -> {self.target.dims}, rank {self.rank()})"

    @classmethod
    def identity(cls, x: Representation) -> "Morphism":
        return cls(x, x, [x.field.eye(d) for d in x.dims])

    @classmethod
    def zero(cls, x: Representation, y: Representation) -> "Morphism":
        return cls(x, y, [x.field.zeros(dy, dx) for dx, dy in zip(x.dims, y.dims)])

    @classmethod
    def from_vector(cls, x: Representation, y: Representation, vec: np.ndarray) -> "Morphism":
        maps = []
        pos = 0
        for dx, dy in zip(x.dims, y.dims):
            n = dx * dy
            maps.append(np.asarray(vec[pos : pos + n]).reshape(dy, dx))
            pos += n
        return cls(x, y, maps)


def direct_sum(mods: Sequence[Representation], alg: "Algebra | None" = None) -> Representation:
    if not mods:
        if alg is None:
            raise ValueError("empty direct sum needs the algebra")
        return Representation.zero(alg)
    alg = mods[0].alg
    f = alg.field
    dims = tuple(sum(m.dims[v] for m in mods) for v in range(alg.n))
    mats = []
    for k, a in enumerate(alg.quiver.arrows):
        big = f.zeros(dims[a.target], dims[a.source])
        r = c = 0
        for m in mods:
            blk = m.mats[k]
            big[r : r + blk.shape[0], c : c + blk.shape[1]] = blk
            r += blk.shape[0]
            c += blk.shape[1]
        mats.append(big)
    return Representation(alg, dims, mats, check=False)


def sum_injections(mods: Sequence[Representation], total: Representation) -> list[Morphism]:
    f = total.field
    out = []
    offsets = [0] * total.alg.n
    for m in mods:
        maps = []
        for v in range(total.alg.n):
            e = f.zeros(total.dims[v], m.dims[v])
            for i in range(m.dims[v]):
                e[offsets[v] + i, i] = f.scalar(1)
            maps.append(e)
        out.append(Morphism(m, total, maps))
        offsets = [o + m.dims[v] for v, o in enumerate(offsets)]
    return out


def sum_projections(mods: Sequence[Representation], total: Representation) -> list[Morphism]:
    return [
        Morphism(total, inj.source, [m.T.copy() for m in inj.maps]) for inj in sum_injections(mods, total)
    ]


def power(x: Representation, n: int) -> Representation:
    return direct_sum([x] * n, x.alg)


def dual(x: Representation) -> Representation:
    """Vector-space dual, a representation of the opposite algebra."""
    op = x.alg.opposite()
    return Representation(op, x.dims, [m.T.copy() for m in x.mats], check=False)


def dual_morphism(f: Morphism) -> Morphism:
    return Morphism(dual(f.target), dual(f.source), [m.T.copy() for m in f.maps])
