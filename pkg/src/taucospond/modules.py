"""The module category engine.

Hom spaces are solved from the intertwiner equations; everything that has
to decide a property of a whole endomorphism ring (brick, indecomposable,
isomorphic) does so by exhaustive enumeration over ``F_p``, guarded by the
active :class:`~taucospond.config.Budget`.  Fast paths (basis elements,
Fitting splittings, seeded random probes) only ever short-circuit to an
answer the exhaustive search would also give.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .algebra import Algebra, projective_rep
from .config import current_budget
from .errors import AlgebraError, BudgetExceeded, PreconditionError
from .linalg import (
    column_space,
    complement_basis,
    count_subspaces,
    is_zero,
    iter_subspaces,
    kernel_basis,
    left_kernel_basis,
    rank,
    solve,
)
from .representation import Morphism, Representation, direct_sum, sum_injections

__all__ = [
    "HomBasis",
    "hom_basis",
    "hom_dim",
    "end_elements",
    "hom_elements",
    "is_indecomposable",
    "is_brick",
    "decompose",
    "is_isomorphic",
    "kernel_rep",
    "cokernel_rep",
    "image_rep",
    "submodules",
    "ExtSpace",
    "ExtClass",
    "ext1",
    "ext1_basis",
    "middle_term",
    "cogen_test",
    "radical_hom",
    "projective_cover",
    "proj",
]


@lru_cache(maxsize=None)
def proj(alg: Algebra, v: int) -> Representation:
    """Cached indecomposable projective at vertex ``v``."""
    return projective_rep(alg, v)


def _same_alg(x: Representation, y: Representation) -> None:
    if x.alg is not y.alg:
        raise AlgebraError("modules live over different algebras")


# -- Hom ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HomBasis:
    source: Representation
    target: Representation
    vectors: np.ndarray  # one flattened morphism per row

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    @property
    def basis(self) -> list[Morphism]:
        return [Morphism.from_vector(self.source, self.target, v) for v in self.vectors]

    def element(self, coeffs: Sequence[int]) -> Morphism:
        f = self.source.field
        c = np.asarray(coeffs, dtype=self.vectors.dtype).reshape(1, -1)
        if self.dim == 0:
            return Morphism.zero(self.source, self.target)
        return Morphism.from_vector(self.source, self.target, f.matmul(c, self.vectors)[0])

    def coordinates(self, f: Morphism) -> np.ndarray | None:
        fld = self.source.field
        sol = solve(self.vectors.T.copy(), f.vector().reshape(-1, 1), fld)
        return None if sol is None else sol[:, 0]


def _offsets(x: Representation, y: Representation) -> list[int]:
    out, pos = [], 0
    for dx, dy in zip(x.dims, y.dims):
        out.append(pos)
        pos += dx * dy
    out.append(pos)
    return out


@lru_cache(maxsize=200_000)
def hom_basis(x: Representation, y: Representation) -> HomBasis:
    """Basis of ``Hom(x, y)`` from the linear system ``y_a f_i = f_j x_a``."""
    _same_alg(x, y)
    f = x.field
    off = _offsets(x, y)
    n = off[-1]
    blocks = []
    for k, a in enumerate(x.alg.quiver.arrows):
        u, w = a.source, a.target
        rows = y.dims[w] * x.dims[u]
        if rows == 0:
            continue
        eq = f.zeros(rows, n)
        if y.dims[u] * x.dims[u]:
            eq[:, off[u] : off[u + 1]] = np.kron(y.mats[k], f.eye(x.dims[u]))
        if y.dims[w] * x.dims[w]:
            eq[:, off[w] : off[w + 1]] = f.reduce(eq[:, off[w] : off[w + 1]] - np.kron(f.eye(y.dims[w]), x.mats[k].T))
        blocks.append(eq)
    if n == 0:
        return HomBasis(x, y, f.zeros(0, 0))
    system = np.concatenate(blocks, axis=0) if blocks else f.zeros(0, n)
    k = kernel_basis(system, f)
    vecs = k.T.copy()
    vecs.setflags(write=False)
    return HomBasis(x, y, vecs)


def hom_dim(x: Representation, y: Representation) -> int:
    return hom_basis(x, y).dim


def hom_elements(hb: HomBasis, what: str = "hom enumeration") -> Iterator[Morphism]:
    """All ``p^d`` elements of a hom space (zero first)."""
    f = hb.source.field
    p = f.require_prime(what)
    current_budget().check_states(p**hb.dim, what)
    for coeffs in itertools.product(range(p), repeat=hb.dim):
        yield hb.element(coeffs)


def end_elements(x: Representation) -> Iterator[Morphism]:
    return hom_elements(hom_basis(x, x), "endomorphism enumeration")


def _probe_elements(hb: HomBasis, trials: int = 24) -> Iterator[Morphism]:
    """Basis elements, then seeded random combinations."""
    yield from hb.basis
    f = hb.source.field
    if hb.dim < 2 or not f.is_prime:
        return
    rng = random.Random(hb.dim * 7919 + sum(hb.source.dims))
    for _ in range(trials):
        yield hb.element([rng.randrange(f.p) for _ in range(hb.dim)])


def _fitting_power(e: Morphism) -> Morphism:
    n = max(e.source.dims) if e.source.dims else 0
    g = e
    k = 1
    while k < n:
        g = g @ g
        k *= 2
    return g


def _splitting(e: Morphism) -> Morphism | None:
    """``e^N`` when it is neither zero nor invertible, else ``None``."""
    g = _fitting_power(e)
    if g.is_zero() or g.is_iso():
        return None
    return g


def _is_idempotent(e: Morphism) -> bool:
    return all(np.array_equal(m, mm) for m, mm in zip(e.maps, (e @ e).maps))


def is_indecomposable(x: Representation) -> bool:
    """``End(x)`` has no idempotent besides 0 and 1."""
    if x.is_zero():
        raise PreconditionError("the zero module is neither decomposable nor indecomposable")
    hb = hom_basis(x, x)
    if hb.dim == 1:
        return True
    for e in _probe_elements(hb):
        if _splitting(e) is not None:
            return False
    ident = Morphism.identity(x)
    for e in end_elements(x):
        if e.is_zero() or _is_idempotent(e) is False:
            continue
        if not all(np.array_equal(a, b) for a, b in zip(e.maps, ident.maps)):
            return False
    return True


def is_brick(x: Representation) -> bool:
    """Every nonzero endomorphism is invertible."""
    if x.is_zero():
        raise PreconditionError("the zero module is not a brick")
    hb = hom_basis(x, x)
    if hb.dim == 1:
        return True
    for e in _probe_elements(hb):
        if not e.is_zero() and not e.is_iso():
            return False
    for e in end_elements(x):
        if not e.is_zero() and not e.is_iso():
            return False
    return True


# -- kernels, cokernels, submodules ---------------------------------------


def subrep(x: Representation, bases: Sequence[np.ndarray]) -> tuple[Representation, Morphism]:
    """Submodule spanned per vertex by the columns of ``bases`` and its inclusion."""
    f = x.field
    mats = []
    for k, a in enumerate(x.alg.quiver.arrows):
        bu, bw = bases[a.source], bases[a.target]
        img = f.matmul(x.mats[k], bu)
        if bw.shape[1] == 0:
            if not is_zero(img):
                raise AlgebraError("subspaces are not stable under the arrows")
            mats.append(f.zeros(0, bu.shape[1]))
            continue
        sol = solve(bw, img, f)
        if sol is None:
            raise AlgebraError("subspaces are not stable under the arrows")
        mats.append(sol)
    sub = Representation(x.alg, [b.shape[1] for b in bases], mats, check=False)
    return sub, Morphism(sub, x, list(bases))


def kernel_rep(f: Morphism) -> tuple[Representation, Morphism]:
    fld = f.field
    return subrep(f.source, [kernel_basis(m, fld) for m in f.maps])


def image_rep(f: Morphism) -> tuple[Representation, Morphism]:
    fld = f.field
    return subrep(f.target, [column_space(m, fld) for m in f.maps])


def _cokernel(f: Morphism) -> tuple[Representation, Morphism, list[np.ndarray]]:
    fld = f.field
    y = f.target
    quots = []
    secs = []
    for v, m in enumerate(f.maps):
        if m.shape[1] == 0:
            q = fld.eye(y.dims[v])
        else:
            q = left_kernel_basis(m, fld)
        quots.append(q)
        secs.append(solve(q, fld.eye(q.shape[0]), fld) if q.shape[0] else fld.zeros(y.dims[v], 0))
    mats = []
    for k, a in enumerate(y.alg.quiver.arrows):
        mats.append(fld.matmul(fld.matmul(quots[a.target], y.mats[k]), secs[a.source]))
    c = Representation(y.alg, [q.shape[0] for q in quots], mats, check=False)
    return c, Morphism(y, c, quots), secs


def cokernel_rep(f: Morphism) -> tuple[Representation, Morphism]:
    c, q, _ = _cokernel(f)
    return c, q


def induced_from_cokernel(q: Morphism, sections: Sequence[np.ndarray], g: Morphism) -> Morphism:
    """The map ``coker -> Z`` induced by ``g`` (which must kill the image)."""
    fld = g.field
    return Morphism(q.target, g.target, [fld.matmul(gm, s) for gm, s in zip(g.maps, sections)])


def submodules(x: Representation) -> list[tuple[Representation, Morphism]]:
    """Every subrepresentation, as (module, inclusion), zero first and ``x`` last."""
    f = x.field
    p = f.require_prime("submodule enumeration")
    budget = current_budget()
    if x.total_dim > budget.submodule_dim_bound:
        raise BudgetExceeded(f"submodule enumeration: total dimension {x.total_dim} > {budget.submodule_dim_bound}")
    count = 1
    for d in x.dims:
        count *= count_subspaces(d, p)
    budget.check_states(count, "submodule enumeration")
    spaces = [list(iter_subspaces(d, f)) for d in x.dims]
    arrows = x.alg.quiver.arrows
    order = list(range(x.alg.n))
    out: list[list[np.ndarray]] = []

    def stable(choice: dict[int, np.ndarray], v: int) -> bool:
        for k, a in enumerate(arrows):
            if v not in (a.source, a.target) or a.source not in choice or a.target not in choice:
                continue
            bu, bw = choice[a.source], choice[a.target]
            img = f.matmul(x.mats[k], bu)
            if bw.shape[1] == 0:
                if not is_zero(img):
                    return False
            elif rank(np.concatenate([bw, img], axis=1), f) != bw.shape[1]:
                return False
        return True

    def rec(i: int, choice: dict[int, np.ndarray]) -> None:
        if i == len(order):
            out.append([choice[v] for v in range(x.alg.n)])
            return
        v = order[i]
        for s in spaces[v]:
            choice[v] = s
            if stable(choice, v):
                rec(i + 1, choice)
            del choice[v]

    rec(0, {})
    out.sort(key=lambda bs: (sum(b.shape[1] for b in bs), tuple(b.shape[1] for b in bs)))
    return [subrep(x, bs) for bs in out]


def quotient_rep(x: Representation, inclusion: Morphism) -> Representation:
    return cokernel_rep(inclusion)[0]


# -- decomposition and isomorphism ----------------------------------------


def _split(x: Representation) -> list[Representation]:
    if x.is_zero():
        return []
    hb = hom_basis(x, x)
    g = None
    if hb.dim > 1:
        for e in _probe_elements(hb):
            g = _splitting(e)
            if g is not None:
                break
        if g is None:
            for e in end_elements(x):
                g = _splitting(e)
                if g is not None:
                    break
    if g is None:
        return [x]
    fld = x.field
    ker, _ = subrep(x, [kernel_basis(m, fld) for m in g.maps])
    img, _ = subrep(x, [column_space(m, fld) for m in g.maps])
    return _split(img) + _split(ker)


def decompose(x: Representation) -> list[tuple[Representation, int]]:
    """Indecomposable summands with multiplicities, canonically sorted."""
    pieces = _split(x)
    groups: list[list[Representation]] = []
    for piece in pieces:
        for g in groups:
            if is_isomorphic(g[0], piece, indecomposable=True):
                g.append(piece)
                break
        else:
            groups.append([piece])
    out = [(min(g, key=Representation.sort_key), len(g)) for g in groups]
    out.sort(key=lambda t: t[0].sort_key())
    return out


def is_isomorphic(x: Representation, y: Representation, indecomposable: bool = False) -> bool:
    """Whether an invertible intertwiner ``x -> y`` exists.

    With ``indecomposable=True`` the caller vouches that both modules are
    indecomposable; then some hom-basis element is an isomorphism whenever
    one exists (non-isomorphisms form a proper subspace), so no exhaustive
    search is needed.
    """
    _same_alg(x, y)
    if x.dims != y.dims:
        return False
    if x.is_zero():
        return True
    if x == y:
        return True
    hb = hom_basis(x, y)
    d = hb.dim
    if d == 0 or d != hom_dim(x, x) or d != hom_dim(y, y) or d != hom_dim(y, x):
        return False
    for e in _probe_elements(hb):
        if e.is_iso():
            return True
    if indecomposable:
        return False
    for e in hom_elements(hb, "isomorphism search"):
        if e.is_iso():
            return True
    return False


# -- projective covers and Ext^1 ------------------------------------------


def map_from_projective(x: Representation, v: int, element: np.ndarray) -> Morphism:
    """The morphism ``P_v -> x`` sending ``e_v`` to ``element`` (a vector in ``x_v``)."""
    alg = x.alg
    fld = x.field
    pv = proj(alg, v)
    maps = []
    el = np.asarray(element).reshape(-1, 1)
    for w in range(alg.n):
        basis = alg.basis[(v, w)]
        m = fld.zeros(x.dims[w], len(basis))
        for c, (_, arrows) in enumerate(basis):
            m[:, c] = fld.matmul(x.path_matrix(v, arrows), el)[:, 0]
        maps.append(m)
    return Morphism(pv, x, maps)


def radical_space(x: Representation, v: int) -> np.ndarray:
    """Columns spanning ``(rad x)_v``: the sum of images of arrows into ``v``."""
    fld = x.field
    imgs = [x.mats[k] for k, a in enumerate(x.alg.quiver.arrows) if a.target == v and x.mats[k].shape[1]]
    if not imgs:
        return fld.zeros(x.dims[v], 0)
    return column_space(np.concatenate(imgs, axis=1), fld)


@dataclass(frozen=True, eq=False)
class ProjectiveCover:
    module: Representation
    vertices: tuple[int, ...]  # one indecomposable projective per top basis vector
    elements: tuple[np.ndarray, ...]  # images of the generators e_v
    projective: Representation
    map: Morphism  # projective -> module, surjective


def _sum_map_from(parts: Sequence[Morphism], total: Representation) -> Morphism:
    fld = total.field
    maps = []
    target = parts[0].target
    for v in range(total.alg.n):
        blocks = [p.maps[v] for p in parts]
        maps.append(np.concatenate(blocks, axis=1) if blocks else fld.zeros(target.dims[v], 0))
    return Morphism(total, target, maps)


@lru_cache(maxsize=50_000)
def projective_cover(x: Representation) -> ProjectiveCover:
    fld = x.field
    alg = x.alg
    verts: list[int] = []
    elems: list[np.ndarray] = []
    for v in range(alg.n):
        comp = complement_basis(radical_space(x, v), fld)
        for c in range(comp.shape[1]):
            verts.append(v)
            elems.append(comp[:, c].copy())
    projs = [proj(alg, v) for v in verts]
    total = direct_sum(projs, alg)
    if not verts:
        return ProjectiveCover(x, (), (), total, Morphism.zero(total, x))
    parts = [map_from_projective(x, v, e) for v, e in zip(verts, elems)]
    pi = _sum_map_from(parts, total)
    assert pi.is_epi(), "projective cover must be surjective"
    return ProjectiveCover(x, tuple(verts), tuple(elems), total, pi)


@dataclass(frozen=True, eq=False)
class ExtSpace:
    """``Ext^1(end, start)`` as ``Hom(Ω end, start)`` modulo restrictions.

    A class describes ``0 -> start -> E -> end -> 0``.
    """

    end: Representation
    start: Representation
    cover: ProjectiveCover
    syzygy: Representation
    inclusion: Morphism  # syzygy -> cover.projective
    representatives: np.ndarray  # rows: homs syzygy -> start spanning a complement

    @property
    def dim(self) -> int:
        return self.representatives.shape[0]

    def representing_hom(self, coeffs: Sequence[int]) -> Morphism:
        fld = self.end.field
        if self.dim == 0:
            return Morphism.zero(self.syzygy, self.start)
        c = np.asarray(coeffs, dtype=self.representatives.dtype).reshape(1, -1)
        return Morphism.from_vector(self.syzygy, self.start, fld.matmul(c, self.representatives)[0])

    def middle_term(self, coeffs: Sequence[int]) -> tuple[Representation, Morphism, Morphism]:
        """Pushout of the syzygy sequence along the representing hom."""
        fld = self.end.field
        h = self.representing_hom(coeffs)
        p0 = self.cover.projective
        s = direct_sum([self.start, p0], self.end.alg)
        maps = [
            np.concatenate([hm, fld.reduce(-im)], axis=0)
            for hm, im in zip(h.maps, self.inclusion.maps)
        ]
        phi = Morphism(self.syzygy, s, maps)
        e, q, secs = _cokernel(phi)
        inj_start, inj_p0 = sum_injections([self.start, p0], s)
        mono = q @ inj_start
        zero_then_pi = Morphism(
            s, self.end, [np.concatenate([fld.zeros(self.end.dims[v], self.start.dims[v]), self.cover.map.maps[v]], axis=1) for v in range(s.alg.n)]
        )
        epi = induced_from_cokernel(q, secs, zero_then_pi)
        return e, mono, epi

    def classes(self, nonzero: bool = False) -> Iterator["ExtClass"]:
        p = self.end.field.require_prime("Ext class enumeration")
        current_budget().check_states(p**self.dim, "Ext class enumeration")
        for coeffs in itertools.product(range(p), repeat=self.dim):
            if nonzero and not any(coeffs):
                continue
            yield ExtClass(self, coeffs)


@dataclass(frozen=True, eq=False)
class ExtClass:
    space: ExtSpace
    coeffs: tuple[int, ...]

    @property
    def a(self) -> Representation:
        return self.space.end

    @property
    def b(self) -> Representation:
        return self.space.start

    def is_split(self) -> bool:
        return not any(self.coeffs)


@lru_cache(maxsize=100_000)
def ext1(x: Representation, y: Representation) -> ExtSpace:
    """``Ext^1(x, y)``: extensions ``0 -> y -> E -> x -> 0``."""
    _same_alg(x, y)
    fld = x.field
    cov = projective_cover(x)
    omega, inc = kernel_rep(cov.map)
    hb = hom_basis(omega, y)
    restr = [(g @ inc).vector() for g in hom_basis(cov.projective, y).basis]
    n = hb.vectors.shape[1]
    span = np.array(restr, dtype=hb.vectors.dtype).reshape(len(restr), n) if restr else fld.zeros(0, n)
    base_rank = rank(span, fld) if span.shape[0] else 0
    chosen = []
    current = span
    r = base_rank
    for v in hb.vectors:
        trial = np.concatenate([current, v.reshape(1, -1)], axis=0)
        rt = rank(trial, fld)
        if rt > r:
            chosen.append(v)
            current, r = trial, rt
    reps = np.array(chosen, dtype=hb.vectors.dtype).reshape(len(chosen), n) if chosen else fld.zeros(0, n)
    return ExtSpace(x, y, cov, omega, inc, reps)


def ext1_basis(x: Representation, y: Representation) -> list[ExtClass]:
    sp = ext1(x, y)
    return [ExtClass(sp, tuple(1 if i == j else 0 for j in range(sp.dim))) for i in range(sp.dim)]


def middle_term(e: ExtClass) -> tuple[Representation, Morphism, Morphism]:
    return e.space.middle_term(e.coeffs)


# -- cogeneration and radical maps ----------------------------------------


def cogen_test(x: Representation, m: Representation) -> bool:
    """``x`` embeds into a finite power of ``m``."""
    _same_alg(x, m)
    if x.is_zero():
        return True
    fld = x.field
    basis = hom_basis(x, m).basis
    if not basis:
        return False
    for v in range(x.alg.n):
        if x.dims[v] == 0:
            continue
        stacked = np.concatenate([h.maps[v] for h in basis], axis=0)
        if rank(stacked, fld) < x.dims[v]:
            return False
    return True


def radical_hom(x: Representation, y: Representation) -> HomBasis:
    """Radical morphisms ``x -> y`` for indecomposable ``x`` and ``y``."""
    if x.is_zero() or y.is_zero() or not is_indecomposable(x) or not is_indecomposable(y):
        raise PreconditionError("radical_hom needs indecomposable arguments")
    hb = hom_basis(x, y)
    if hb.dim == 0 or not is_isomorphic(x, y, indecomposable=True):
        return hb
    fld = x.field
    non_inv = [e.vector() for e in hom_elements(hb, "radical classification") if not e.is_iso()]
    mat = np.array(non_inv, dtype=hb.vectors.dtype).reshape(len(non_inv), -1)
    sub = column_space(mat.T.copy(), fld).T.copy()
    if len(non_inv) != fld.p ** sub.shape[0]:
        raise AlgebraError("non-invertible maps do not form a subspace: endomorphism ring is not local")
    sub.setflags(write=False)
    return HomBasis(x, y, sub)


def simple_module(alg: Algebra, v: int) -> Representation:
    return Representation.simple(alg, v)
