"""Semibricks attached to support τ⁻-tilting modules and the closure
operators that relate them to torsion free classes and wide subcategories.

Every operator works on sets of inventory ids.  Statements quantified over
all morphisms into finite direct sums are reduced to finitely many targets:
a morphism ``x -> Y^m`` with ``m > dim Hom(x, Y)`` becomes, after an
automorphism of the target, one with a zero component, which only adds a
split summand ``Y`` to the cokernel.  The dual reduction bounds sources for
kernels.  Within those bounds every hom is enumerated over ``F_p``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import AssertionFailure, IncompleteInventoryError, PreconditionError
from .inventory import IndecInventory
from .modules import (
    cokernel_rep,
    ext1,
    hom_basis,
    hom_elements,
    image_rep,
    is_brick,
    kernel_rep,
    radical_hom,
    submodules,
)
from .representation import Morphism, Representation, direct_sum
from .tautilt import (
    SupportTauTiltingModule,
    TorsionFreeClassFin,
    cogen_class,
    extension_closed,
    functorially_finite_witness,
    torsion_class_of,
)

__all__ = [
    "Semibrick",
    "TfAlmostTorsionCertificate",
    "phi_map",
    "s_of",
    "semibrick_of",
    "is_tf_almost_torsion",
    "tf_almost_torsion_check",
    "beta",
    "is_wide",
    "simples_of_wide",
    "filt_torsionfree_closure",
    "is_widely_generated",
    "enumerate_semibricks",
    "is_right_finite",
    "left_almost_split_violation",
]


@dataclass(frozen=True)
class Semibrick:
    bricks: frozenset[int]
    inv: IndecInventory = field(compare=False, repr=False, hash=False)

    def label(self) -> str:
        return "{" + ",".join(self.inv.names[i] for i in sorted(self.bricks)) + "}"

    def sort_key(self):
        return (len(self.bricks), tuple(sorted(self.bricks)))


def _power_sum(inv: IndecInventory, mults: Iterable[tuple[int, int]]) -> Representation:
    return direct_sum([inv.items[i] for i, m in mults for _ in range(m)], inv.alg)


# -- the construction attached to a cogenerator -----------------------------


def phi_map(x: int, m: SupportTauTiltingModule) -> Morphism:
    """``x -> ⊕_Y Y^{dim rad(x, Y)}`` with the radical basis as components.

    The sum is over summands ``Y`` of ``m``.  Its kernel is the intersection
    of the kernels of all radical maps out of ``x``, because a spanning set
    of each radical space suffices.
    """
    inv = m.inv
    if x not in m.summands:
        raise PreconditionError(f"{inv.names[x]} is not a summand of {m.label()}")
    src = inv.items[x]
    comps: list[Morphism] = []
    targets: list[Representation] = []
    for y in sorted(m.summands):
        for g in radical_hom(src, inv.items[y]).basis:
            comps.append(g)
            targets.append(inv.items[y])
    total = direct_sum(targets, inv.alg)
    fld = inv.alg.field
    maps = []
    for v in range(inv.alg.n):
        blocks = [g.maps[v] for g in comps]
        maps.append(np.concatenate(blocks, axis=0) if blocks else fld.zeros(0, src.dims[v]))
    return Morphism(src, total, maps)


def s_of(x: int, m: SupportTauTiltingModule) -> Representation:
    return kernel_rep(phi_map(x, m))[0]


def semibrick_of(m: SupportTauTiltingModule) -> Semibrick:
    """Nonzero kernels of the ``phi`` maps, identified in the inventory.

    Each kernel is checked to be a brick and the result to be hom-orthogonal.
    """
    inv = m.inv
    ids = []
    for x in sorted(m.summands):
        s = s_of(x, m)
        if s.is_zero():
            continue
        if not is_brick(s):
            raise AssertionFailure(f"kernel attached to {inv.names[x]} in {m.label()} is not a brick")
        i = inv.identify(s)
        if i is None:
            raise IncompleteInventoryError(f"brick with dimension vector {s.dims} is missing from the inventory")
        ids.append(i)
    out = frozenset(ids)
    if len(out) != len(ids):
        raise AssertionFailure(f"repeated brick in the semibrick of {m.label()}")
    for i in out:
        for j in out:
            if i != j and inv.hom(i, j):
                raise AssertionFailure(f"Hom({inv.names[i]}, {inv.names[j]}) != 0 inside the semibrick of {m.label()}")
    return Semibrick(out, inv)


# -- torsion free, almost torsion -------------------------------------------


@dataclass(frozen=True)
class TfAlmostTorsionCertificate:
    module: int
    in_class: bool
    quotients_checked: int  # proper nonzero quotients, all with summands in T
    extension_targets: tuple[tuple[int, int], ...]  # (torsion id, multiplicity = dim Ext^1)
    extension_classes_checked: int
    failure: str | None = None

    @property
    def holds(self) -> bool:
        return self.failure is None


def tf_almost_torsion_check(s: int, f: TorsionFreeClassFin) -> TfAlmostTorsionCertificate:
    """Run all three checks and record what was examined."""
    inv = f.inv
    x = inv.items[s]
    if s not in f.members:
        return TfAlmostTorsionCertificate(s, False, 0, (), 0, f"{inv.names[s]} is not in {f.label()}")
    t = torsion_class_of(f, inv)
    nq = 0
    for sub, inc in submodules(x):
        if sub.is_zero() or sub.dims == x.dims:
            continue
        q, _ = cokernel_rep(inc)
        nq += 1
        bad = inv.summand_ids(q) - t
        if bad:
            return TfAlmostTorsionCertificate(
                s, True, nq, (), 0,
                f"quotient of {inv.names[s]} by a submodule of dims {sub.dims} has non-torsion summand {inv.names[min(bad)]}",
            )
    targets = tuple((i, inv.ext(i, s)) for i in sorted(t) if inv.ext(i, s))
    nc = 0
    if targets:
        end = _power_sum(inv, targets)
        space = ext1(end, x)
        for cls in space.classes(nonzero=True):
            nc += 1
            e, _, _ = space.middle_term(cls.coeffs)
            bad = inv.summand_ids(e) - t
            if bad:
                return TfAlmostTorsionCertificate(
                    s, True, nq, targets, nc,
                    f"non-split extension of {inv.label(dict(targets))} by {inv.names[s]} (class {cls.coeffs}) "
                    f"has non-torsion summand {inv.names[min(bad)]}",
                )
    return TfAlmostTorsionCertificate(s, True, nq, targets, nc)


def is_tf_almost_torsion(s: int, f: TorsionFreeClassFin) -> TfAlmostTorsionCertificate | None:
    cert = tf_almost_torsion_check(s, f)
    return cert if cert.holds else None


# -- wide subcategories -----------------------------------------------------


def _cokernels_stay(x: int, members: frozenset[int], inv: IndecInventory) -> bool:
    targets = [(y, inv.hom(x, y)) for y in sorted(members)]
    targets = [(y, d) for y, d in targets if d]
    if not targets:
        return True
    tgt = _power_sum(inv, targets)
    for h in hom_elements(hom_basis(inv.items[x], tgt), "cokernel closure"):
        c, _ = cokernel_rep(h)
        if not c.is_zero() and not inv.summand_ids(c) <= members:
            return False
    return True


def _kernels_stay(y: int, members: frozenset[int], inv: IndecInventory) -> bool:
    sources = [(x, inv.hom(x, y)) for x in sorted(members)]
    sources = [(x, d) for x, d in sources if d]
    if not sources:
        return True
    src = _power_sum(inv, sources)
    for h in hom_elements(hom_basis(src, inv.items[y]), "kernel closure"):
        k, _ = kernel_rep(h)
        if not k.is_zero() and not inv.summand_ids(k) <= members:
            return False
    return True


def beta(f: TorsionFreeClassFin | Iterable[int], inv: IndecInventory | None = None) -> frozenset[int]:
    """Members all of whose cokernels into the class stay in the class."""
    if isinstance(f, TorsionFreeClassFin):
        members, inv = f.members, f.inv
    else:
        members = frozenset(f)
    assert inv is not None
    return frozenset(x for x in sorted(members) if _cokernels_stay(x, members, inv))


def is_wide(members: Iterable[int], inv: IndecInventory) -> bool:
    """Additive hull closed under kernels, cokernels and extensions.

    Cokernels of maps out of a sum are iterated cokernels of maps out of its
    summands, and dually kernels of maps into a sum are iterated kernels of
    maps into its summands, so indecomposable sources (resp. targets) are
    enough.
    """
    members = frozenset(members)
    if not members:
        return True
    if not all(_cokernels_stay(x, members, inv) for x in sorted(members)):
        return False
    if not all(_kernels_stay(y, members, inv) for y in sorted(members)):
        return False
    return extension_closed(members, inv)


def simples_of_wide(members: Iterable[int], inv: IndecInventory, check: bool = True) -> frozenset[int]:
    """Members without a proper nonzero subobject inside the wide class.

    Such a subobject exists iff some member maps to ``x`` with image neither
    zero nor all of ``x`` (images of maps in a wide class stay in it).
    """
    members = frozenset(members)
    if check and not is_wide(members, inv):
        raise PreconditionError("simples_of_wide needs a wide class")
    out = []
    for x in sorted(members):
        tx = inv.items[x].total_dim
        simple = True
        for w in sorted(members):
            if not inv.hom(w, x):
                continue
            for h in hom_elements(hom_basis(inv.items[w], inv.items[x]), "simple object search"):
                r = h.rank()
                if 0 < r < tx:
                    simple = False
                    break
            if not simple:
                break
        if simple:
            out.append(x)
    return frozenset(out)


# -- generated torsion free classes ----------------------------------------


@dataclass
class ClosureLog:
    steps: list[tuple[int, str, tuple[int, ...]]] = field(default_factory=list)  # (added, rule, from)


def filt_torsionfree_closure(
    s: Semibrick | Iterable[int], inv: IndecInventory | None = None, log: ClosureLog | None = None
) -> TorsionFreeClassFin:
    """Least class containing ``s`` closed under submodules and extensions."""
    if isinstance(s, Semibrick):
        start, inv = s.bricks, s.inv
    else:
        start = frozenset(s)
    assert inv is not None
    current = set(start)
    sub_done: set[int] = set()
    ext_done: set[tuple] = set()
    changed = True
    while changed:
        changed = False
        for i in sorted(current):
            if i in sub_done:
                continue
            sub_done.add(i)
            for sub, _ in submodules(inv.items[i]):
                if sub.is_zero():
                    continue
                for j in sorted(inv.summand_ids(sub)):
                    if j not in current:
                        current.add(j)
                        changed = True
                        if log is not None:
                            log.steps.append((j, "submodule", (i,)))
        if changed:
            continue
        for a in sorted(current):
            ends = tuple((b, inv.ext(b, a)) for b in sorted(current) if inv.ext(b, a))
            if not ends or (a, ends) in ext_done:
                continue
            ext_done.add((a, ends))
            end = _power_sum(inv, ends)
            space = ext1(end, inv.items[a])
            for cls in space.classes(nonzero=True):
                e, _, _ = space.middle_term(cls.coeffs)
                for j in sorted(inv.summand_ids(e)):
                    if j not in current:
                        current.add(j)
                        changed = True
                        if log is not None:
                            log.steps.append((j, "extension", (a,) + tuple(b for b, _ in ends)))
            if changed:
                break
    return TorsionFreeClassFin(frozenset(current), inv)


def is_widely_generated(f: TorsionFreeClassFin) -> bool:
    return filt_torsionfree_closure(beta(f), f.inv).members == f.members


def enumerate_semibricks(inv: IndecInventory, override: bool = False) -> list[Semibrick]:
    """Every set of pairwise hom-orthogonal bricks, the empty set included."""
    inv.require_complete(override)
    bricks = inv.bricks()
    orth = {(i, j): inv.hom(i, j) == 0 and inv.hom(j, i) == 0 for i in bricks for j in bricks if i != j}
    out: list[Semibrick] = []

    def rec(chosen: list[int], start: int) -> None:
        out.append(Semibrick(frozenset(chosen), inv))
        for k in range(start, len(bricks)):
            b = bricks[k]
            if all(orth[(b, c)] for c in chosen):
                chosen.append(b)
                rec(chosen, k + 1)
                chosen.pop()

    rec([], 0)
    return sorted(out, key=Semibrick.sort_key)


def is_right_finite(s: Semibrick) -> bool:
    """The generated torsion free class is functorially finite."""
    return functorially_finite_witness(filt_torsionfree_closure(s), s.inv) is not None


def left_almost_split_violation(x: int, m: SupportTauTiltingModule) -> tuple[int, Morphism] | None:
    """Check that non-isomorphisms from ``x`` into the class factor through ``x -> x/S_x``.

    ``S_x`` is the kernel of ``phi_map``.  A map ``g`` out of ``x`` factors
    (uniquely, the quotient map being epi) iff it kills ``S_x``.  For an
    indecomposable target a map from an indecomposable is a split mono only
    when it is an isomorphism.  Returns the first offending map, if any.
    """
    inv = m.inv
    s, inc = kernel_rep(phi_map(x, m))
    if s.is_zero():
        return None
    src = inv.items[x]
    for y in sorted(cogen_class(m, inv).members):
        for g in hom_elements(hom_basis(src, inv.items[y]), "factorization check"):
            if g.is_iso():
                continue
            if not (g @ inc).is_zero():
                return y, g
    return None


def image_summands(h: Morphism, inv: IndecInventory) -> frozenset[int]:
    return inv.summand_ids(image_rep(h)[0])
