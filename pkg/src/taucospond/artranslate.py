"""Auslander-Reiten translates through minimal presentations and transpose.

Left modules are never represented separately: ``D`` turns a right module
into a representation of the opposite algebra, and the transpose of a
presentation over one algebra is a module over the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .linalg import rank
from .modules import (
    _sum_map_from,
    cokernel_rep,
    hom_dim,
    kernel_rep,
    map_from_projective,
    proj,
    projective_cover,
    radical_space,
)
from .representation import Morphism, Representation, direct_sum, dual

__all__ = ["ProjPresentation", "min_proj_presentation", "transpose", "tau", "tau_minus", "is_tau_minus_rigid"]


@dataclass(frozen=True, eq=False)
class ProjPresentation:
    """``p1 --d--> p0 --> module --> 0``, minimal."""

    module: Representation
    p1_vertices: tuple[int, ...]
    p0_vertices: tuple[int, ...]
    p1: Representation
    p0: Representation
    d: Morphism
    cokernel_map: Morphism  # p0 -> module


def _in_radical(f: Morphism) -> bool:
    fld = f.field
    y = f.target
    for v, m in enumerate(f.maps):
        if m.shape[1] == 0:
            continue
        r = radical_space(y, v)
        if rank(np.concatenate([r, m], axis=1), fld) != r.shape[1]:
            return False
    return True


@lru_cache(maxsize=50_000)
def min_proj_presentation(x: Representation) -> ProjPresentation:
    c0 = projective_cover(x)
    omega, inc = kernel_rep(c0.map)
    c1 = projective_cover(omega)
    d = inc @ c1.map
    assert _in_radical(d), "presentation is not minimal"
    return ProjPresentation(x, c1.vertices, c0.vertices, c1.projective, c0.projective, d, c0.map)


def _generator_index(alg, v: int) -> int:
    return alg.basis[(v, v)].index((v, ()))


def transpose(x: Representation) -> Representation:
    """``Tr x`` over the opposite algebra, from the minimal presentation.

    ``Hom(-, Λ)`` turns ``P_v`` into the opposite projective at ``v`` and a
    component ``P_v -> P_w`` given by a combination of paths ``w ~> v``
    into the map sending the generator at ``w`` to the reversed paths.
    """
    alg = x.alg
    op = alg.opposite()
    fld = alg.field
    pres = min_proj_presentation(x)
    vs, ws = pres.p1_vertices, pres.p0_vertices
    target = direct_sum([proj(op, v) for v in vs], op)
    source = direct_sum([proj(op, w) for w in ws], op)
    if not ws:
        return Representation.zero(op)
    if not vs:
        return Representation.zero(op)

    # offsets of summands of p1 and p0 at each vertex
    def offsets(verts, base_alg):
        out = []
        acc = [0] * base_alg.n
        for v in verts:
            out.append(tuple(acc))
            for u in range(base_alg.n):
                acc[u] += len(base_alg.basis[(v, u)])
        return out

    off1 = offsets(vs, alg)
    off0 = offsets(ws, alg)
    op_off1 = offsets(vs, op)
    # components[l][k] = element of (P^op_{v_k})_{w_l}
    elems = [fld.zeros(1, target.dims[w])[0] for w in ws]
    for k, v in enumerate(vs):
        col = off1[k][v] + _generator_index(alg, v)
        image = pres.d.maps[v][:, col]
        for l, w in enumerate(ws):
            basis = alg.basis[(w, v)]
            coords = image[off0[l][v] : off0[l][v] + len(basis)]
            op_basis_len = len(op.basis[(v, w)])
            acc = fld.zeros(1, op_basis_len)[0]
            for c, (_, arrows) in zip(coords, basis):
                if c == 0:
                    continue
                _, vec = op.reduce((v, tuple(reversed(arrows))))
                acc = fld.reduce(acc + vec * c)
            start = op_off1[k][w]
            elems[l][start : start + op_basis_len] = acc
    parts = [map_from_projective(target, w, elems[l]) for l, w in enumerate(ws)]
    dt = _sum_map_from(parts, source)
    return cokernel_rep(dt)[0]


def tau_minus(x: Representation) -> Representation:
    """``τ⁻x = Tr D x``."""
    if x.is_zero():
        return x
    return _tau_minus(x)


@lru_cache(maxsize=50_000)
def _tau_minus(x: Representation) -> Representation:
    return transpose(dual(x))


def tau(x: Representation) -> Representation:
    """``τx = D Tr x``."""
    if x.is_zero():
        return x
    return _tau(x)


@lru_cache(maxsize=50_000)
def _tau(x: Representation) -> Representation:
    return dual(transpose(x))


def is_tau_minus_rigid(m: Representation) -> bool:
    return hom_dim(tau_minus(m), m) == 0
