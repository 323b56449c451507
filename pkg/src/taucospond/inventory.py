"""Complete lists of indecomposables up to isomorphism.

Two backends: translate orbits of projectives for Dynkin quivers without
relations, and exhaustive search over arrow matrices for everything else.
Completeness is a tracked bit.  A brute-force inventory is only marked
complete when the caller asserts it or when the algebra is hereditary of
Dynkin type and the bound reaches the highest root.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .algebra import Algebra, injective_rep
from .artranslate import tau_minus
from .config import current_budget
from .errors import AlgebraError, IncompleteInventoryError, PreconditionError
from .linalg import Field, is_zero, rank, solve
from .modules import decompose, ext1, hom_dim, is_indecomposable, is_isomorphic, proj
from .representation import Representation, direct_sum

__all__ = [
    "DynkinType",
    "dynkin_type",
    "IndecInventory",
    "enumerate_hereditary",
    "enumerate_bruteforce",
    "build_inventory",
]


@dataclass(frozen=True)
class DynkinType:
    letter: str
    rank: int

    def __str__(self) -> str:
        return f"{self.letter}{self.rank}"

    @property
    def positive_roots(self) -> int:
        n = self.rank
        if self.letter == "A":
            return n * (n + 1) // 2
        if self.letter == "D":
            return n * (n - 1)
        return {6: 36, 7: 63, 8: 120}[n]

    @property
    def highest_root_height(self) -> int:
        """Total dimension of the largest indecomposable."""
        n = self.rank
        if self.letter == "A":
            return n
        if self.letter == "D":
            return 2 * n - 3
        return {6: 11, 7: 17, 8: 29}[n]


def _components(n: int, edges: Sequence[tuple[int, int]]) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    adj = {v: set() for v in range(n)}
    for s, t in edges:
        adj[s].add(t)
        adj[t].add(s)
    for v in range(n):
        if v in seen:
            continue
        stack, comp = [v], []
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def _classify_tree(comp: list[int], adj: dict[int, set[int]]) -> DynkinType | None:
    n = len(comp)
    branch = [v for v in comp if len(adj[v]) > 2]
    if not branch:
        return DynkinType("A", n)
    if len(branch) > 1 or len(adj[branch[0]]) != 3:
        return None
    c = branch[0]
    arms = []
    for start in sorted(adj[c]):
        length, prev, cur = 1, c, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] != 1:
        return None
    if arms[1] == 1:
        return DynkinType("D", n)
    if arms[1] == 2 and arms[2] in (2, 3, 4):
        return DynkinType("E", n)
    return None


def dynkin_type(alg: Algebra) -> list[DynkinType] | None:
    """Dynkin types of the connected components, or ``None`` if some is not Dynkin."""
    q = alg.quiver
    edges = []
    pairs = set()
    for a in q.arrows:
        if a.source == a.target:
            return None
        key = frozenset((a.source, a.target))
        if key in pairs:
            return None
        pairs.add(key)
        edges.append((a.source, a.target))
    adj = {v: set() for v in range(q.n)}
    for s, t in edges:
        adj[s].add(t)
        adj[t].add(s)
    out = []
    for comp in _components(q.n, edges):
        comp_edges = sum(len(adj[v]) for v in comp) // 2
        if comp_edges != len(comp) - 1:
            return None
        t = _classify_tree(comp, adj)
        if t is None:
            return None
        out.append(t)
    return out


def _item_name(alg: Algebra, x: Representation) -> str:
    vs = alg.quiver.vertices
    for v in range(alg.n):
        if x.dims == tuple(1 if w == v else 0 for w in range(alg.n)):
            return f"S{vs[v]}"
    for v in range(alg.n):
        p = proj(alg, v)
        if p.dims == x.dims and is_isomorphic(p, x, indecomposable=True):
            return f"P{vs[v]}"
    for v in range(alg.n):
        i = injective_rep(alg, v)
        if i.dims == x.dims and is_isomorphic(i, x, indecomposable=True):
            return f"I{vs[v]}"
    return "M[" + ",".join(str(d) for d in x.dims) + "]"


class IndecInventory:
    """Pairwise non-isomorphic indecomposables, in deterministic order.

    Items are addressed by integer id (their position) or by display name.
    Hom and Ext dimensions between items are memoized.
    """

    def __init__(self, alg: Algebra, items: Iterable[Representation], method: str, complete: bool, dim_bound: int | None = None):
        self.alg = alg
        ordered = sorted(items, key=Representation.sort_key)
        self.items: tuple[Representation, ...] = tuple(ordered)
        self.method = method
        self.complete = bool(complete)
        self.dim_bound = dim_bound
        names = [_item_name(alg, x) for x in self.items]
        counts = Counter(names)
        seen: Counter = Counter()
        final = []
        for nm in names:
            if counts[nm] > 1:
                seen[nm] += 1
                nm = f"{nm}#{seen[nm]}"
            final.append(nm)
        self.names: tuple[str, ...] = tuple(final)
        self._by_name = {nm: i for i, nm in enumerate(self.names)}
        self._hom: dict[tuple[int, int], int] = {}
        self._ext: dict[tuple[int, int], int] = {}
        self._gram = None

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(range(len(self.items)))

    def __getitem__(self, i: int) -> Representation:
        return self.items[i]

    def __repr__(self) -> str:
        return f"IndecInventory({self.alg.name!r}, {len(self)} items, {self.method}, complete={self.complete})"

    def require_complete(self, override: bool = False) -> None:
        if not self.complete and not override:
            raise IncompleteInventoryError(
                f"inventory for {self.alg.name} ({self.method}) is not certified complete; pass an explicit override"
            )

    def id_of(self, name: str) -> int:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"no inventory item named {name!r}; known: {', '.join(self.names)}") from None

    def name(self, i: int) -> str:
        return self.names[i]

    def label(self, ids: Iterable[int]) -> str:
        ids = sorted(ids)
        return "+".join(self.names[i] for i in ids) if ids else "0"

    # -- identification ---------------------------------------------------
    def identify(self, x: Representation) -> int | None:
        """Id of the item isomorphic to the indecomposable ``x``."""
        for i, y in enumerate(self.items):
            if y.dims == x.dims and is_isomorphic(y, x, indecomposable=True):
                return i
        return None

    def hom(self, i: int, j: int) -> int:
        key = (i, j)
        if key not in self._hom:
            self._hom[key] = hom_dim(self.items[i], self.items[j])
        return self._hom[key]

    def ext(self, i: int, j: int) -> int:
        """``dim Ext^1(item i, item j)``."""
        key = (i, j)
        if key not in self._ext:
            self._ext[key] = ext1(self.items[i], self.items[j]).dim
        return self._ext[key]

    def _gram_matrix(self) -> np.ndarray:
        if self._gram is None:
            n = len(self.items)
            q = Field.rational()
            self._gram = q.asarray([[self.hom(i, j) for j in range(n)] for i in range(n)], n, n)
        return self._gram

    def multiplicities(self, x: Representation) -> Counter:
        """Multiplicity of each item as a direct summand of ``x``.

        For a complete inventory the vector ``dim Hom(item, x)`` determines
        ``x``, so the multiplicities solve a linear system against the Hom
        table; the answer is accepted only if it is a non-negative integer
        vector with matching dimension, otherwise we fall back to an explicit
        decomposition.
        """
        if x.alg is not self.alg:
            raise AlgebraError("module lives over a different algebra")
        if x.is_zero():
            return Counter()
        if self.complete and self.items:
            q = Field.rational()
            b = q.asarray([[hom_dim(y, x)] for y in self.items], len(self.items), 1)
            sol = solve(self._gram_matrix(), b, q)
            if sol is not None:
                m = [sol[i, 0] for i in range(len(self.items))]
                if all(c.denominator == 1 and c >= 0 for c in m):
                    dims = [sum(int(c) * y.dims[v] for c, y in zip(m, self.items)) for v in range(self.alg.n)]
                    if tuple(dims) == x.dims:
                        return Counter({i: int(c) for i, c in enumerate(m) if c})
        return self.multiplicities_by_decomposition(x)

    def multiplicities_by_decomposition(self, x: Representation) -> Counter:
        out: Counter = Counter()
        for piece, mult in decompose(x):
            i = self.identify(piece)
            if i is None:
                raise IncompleteInventoryError(
                    f"summand with dimension vector {piece.dims} is missing from the inventory"
                )
            out[i] += mult
        return out

    def summand_ids(self, x: Representation) -> frozenset[int]:
        return frozenset(self.multiplicities(x))

    def module(self, ids: Iterable[int] | Counter) -> Representation:
        """Direct sum of items (with multiplicity if given a Counter)."""
        if isinstance(ids, Counter):
            parts = [self.items[i] for i in sorted(ids) for _ in range(ids[i])]
        else:
            parts = [self.items[i] for i in sorted(ids)]
        return direct_sum(parts, self.alg)

    def bricks(self) -> list[int]:
        from .modules import is_brick

        return [i for i, x in enumerate(self.items) if is_brick(x)]

    def summary(self) -> dict:
        return {
            "method": self.method,
            "complete": self.complete,
            "dim_bound": self.dim_bound,
            "items": [
                {"id": i, "name": self.names[i], "module": x.to_json()} for i, x in enumerate(self.items)
            ],
        }


def enumerate_hereditary(alg: Algebra) -> IndecInventory:
    """Translate orbits of the indecomposable projectives (Dynkin, no relations)."""
    if not alg.is_hereditary:
        raise PreconditionError("translate-orbit enumeration needs an algebra without relations")
    types = dynkin_type(alg)
    if types is None:
        raise PreconditionError("underlying graph is not a disjoint union of Dynkin diagrams")
    expected = sum(t.positive_roots for t in types)
    items: list[Representation] = []
    for v in range(alg.n):
        x = proj(alg, v)
        steps = 0
        while not x.is_zero():
            items.append(x)
            steps += 1
            if steps > expected:
                raise AlgebraError("translate orbit did not reach an injective")
            x = tau_minus(x)
    if len(items) != expected:
        raise AlgebraError(f"found {len(items)} indecomposables, expected {expected} positive roots")
    return IndecInventory(alg, items, "hereditary_orbit", complete=True)


def _rank_profile(x: Representation) -> tuple:
    f = x.field
    return (x.dims, tuple(rank(m, f) for m in x.mats))


def _dim_vectors(n: int, bound: int) -> Iterable[tuple[int, ...]]:
    for total in range(1, bound + 1):
        for combo in itertools.product(range(total + 1), repeat=n):
            if sum(combo) == total:
                yield combo


def enumerate_bruteforce(alg: Algebra, dim_bound: int, assert_complete: bool = False) -> IndecInventory:
    """Every arrow-matrix tuple up to total dimension ``dim_bound``.

    Tuples violating a relation are dropped, the rest are tested for
    indecomposability and bucketed by dimension vector and arrow ranks before
    isomorphism testing.
    """
    f = alg.field
    p = f.require_prime("brute-force enumeration")
    budget = current_budget()
    arrows = alg.quiver.arrows
    vectors = list(_dim_vectors(alg.n, dim_bound))
    total_states = sum(p ** sum(d[a.source] * d[a.target] for a in arrows) for d in vectors)
    budget.check_states(total_states, "brute-force enumeration")
    buckets: dict[tuple, list[Representation]] = {}
    found: list[Representation] = []
    for dims in vectors:
        shapes = [(dims[a.target], dims[a.source]) for a in arrows]
        sizes = [r * c for r, c in shapes]
        for entries in itertools.product(range(p), repeat=sum(sizes)):
            mats, pos = [], 0
            for (r, c), s in zip(shapes, sizes):
                mats.append(np.array(entries[pos : pos + s], dtype=np.int64).reshape(r, c))
                pos += s
            x = Representation(alg, dims, mats, check=False)
            if any(not is_zero(x.relation_matrix(rel)) for rel in alg.relations):
                continue
            key = _rank_profile(x)
            bucket = buckets.setdefault(key, [])
            if any(is_isomorphic(y, x, indecomposable=True) for y in bucket):
                continue
            if not is_indecomposable(x):
                continue
            bucket.append(x)
            found.append(x)
    complete = assert_complete
    if not complete and alg.is_hereditary:
        types = dynkin_type(alg)
        if types is not None and dim_bound >= max(t.highest_root_height for t in types):
            complete = True
    return IndecInventory(alg, found, "brute_force", complete=complete, dim_bound=dim_bound)


def build_inventory(alg: Algebra, dim_bound: int | None = None, assert_complete: bool = False) -> IndecInventory:
    """Pick a backend: translate orbits when possible, brute force otherwise."""
    if alg.is_hereditary and dynkin_type(alg) is not None and dim_bound is None:
        return enumerate_hereditary(alg)
    if dim_bound is None:
        raise PreconditionError(
            "no certified backend for this algebra; give --dim-bound N (and --assert-complete once N reaches every indecomposable)"
        )
    return enumerate_bruteforce(alg, dim_bound, assert_complete=assert_complete)
