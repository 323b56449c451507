"""Support τ⁻-tilting modules and the torsion free classes they cogenerate.

All classes are sets of inventory ids.  Closure under finite direct sums is
implicit: a class stands for the additive closure of its members.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .artranslate import tau_minus
from .config import current_budget
from .errors import AssertionFailure
from .inventory import IndecInventory
from .modules import cogen_test, ext1, hom_dim, submodules
from .representation import Representation, direct_sum

__all__ = [
    "SupportTauTiltingModule",
    "TorsionFreeClassFin",
    "restrict_module",
    "enumerate_support_tau_tilting",
    "cogen_class",
    "torsion_class_of",
    "is_torsion_free_class",
    "extension_closed",
    "functorially_finite_witness",
    "is_support_tau_tilting",
    "torsion_filtration",
]


def restrict_module(x: Representation, sub, kept: tuple[int, ...]) -> Representation:
    """View a module supported on ``kept`` as a module over the support quotient."""
    keep = set(kept)
    if any(d for v, d in enumerate(x.dims) if v not in keep):
        raise ValueError("module is not supported on the given vertices")
    mats = [x.mats[k] for k, a in enumerate(x.alg.quiver.arrows) if a.source in keep and a.target in keep]
    return Representation(sub, [x.dims[v] for v in kept], mats, check=False)


@dataclass(frozen=True)
class SupportTauTiltingModule:
    summands: frozenset[int]
    support: frozenset[int]
    inv: IndecInventory = field(compare=False, repr=False, hash=False)

    @cached_property
    def module(self) -> Representation:
        return self.inv.module(self.summands)

    def label(self) -> str:
        return self.inv.label(self.summands)

    def sort_key(self):
        return (len(self.summands), tuple(sorted(self.summands)))


@dataclass(frozen=True)
class TorsionFreeClassFin:
    members: frozenset[int]
    inv: IndecInventory = field(compare=False, repr=False, hash=False)

    def label(self) -> str:
        return "{" + ",".join(self.inv.names[i] for i in sorted(self.members)) + "}"


def _support(inv: IndecInventory, ids: Iterable[int]) -> frozenset[int]:
    out: set[int] = set()
    for i in ids:
        out |= inv.items[i].support()
    return frozenset(out)


class _SupportData:
    """Candidates and translate-orthogonality over one support quotient."""

    def __init__(self, inv: IndecInventory, support: frozenset[int]):
        self.sub, self.kept = inv.alg.restrict(support)
        self.ids = [i for i, x in enumerate(inv.items) if x.support() <= support]
        self.local = {i: restrict_module(inv.items[i], self.sub, self.kept) for i in self.ids}
        self.tm = {i: tau_minus(m) for i, m in self.local.items()}
        self._orth: dict[tuple[int, int], bool] = {}

    def orth(self, i: int, j: int) -> bool:
        """``Hom(τ⁻ x_i, x_j) = 0`` over the quotient."""
        key = (i, j)
        if key not in self._orth:
            self._orth[key] = hom_dim(self.tm[i], self.local[j]) == 0
        return self._orth[key]

    def compatible(self, i: int, j: int) -> bool:
        return self.orth(i, j) and self.orth(j, i)


def is_support_tau_tilting(ids: Iterable[int], inv: IndecInventory) -> bool:
    """``|M| = |support|`` and ``M`` is τ⁻-rigid over its support quotient."""
    ids = frozenset(ids)
    if not ids:
        return True
    supp = _support(inv, ids)
    if len(ids) != len(supp):
        return False
    data = _SupportData(inv, supp)
    return all(data.orth(i, j) for i in ids for j in ids)


def enumerate_support_tau_tilting(inv: IndecInventory, override: bool = False) -> list[SupportTauTiltingModule]:
    inv.require_complete(override)
    n = inv.alg.n
    budget = current_budget()
    found: dict[frozenset[int], SupportTauTiltingModule] = {}
    zero = SupportTauTiltingModule(frozenset(), frozenset(), inv)
    found[frozenset()] = zero
    for size in range(1, n + 1):
        for supp_t in itertools.combinations(range(n), size):
            supp = frozenset(supp_t)
            data = _SupportData(inv, supp)
            cands = [i for i in data.ids if data.orth(i, i)]
            states = 0

            def extend(chosen: list[int], start: int) -> None:
                nonlocal states
                states += 1
                budget.check_states(states, "support τ⁻-tilting search")
                if len(chosen) == size:
                    ids = frozenset(chosen)
                    if _support(inv, ids) != supp:
                        return
                    m = SupportTauTiltingModule(ids, supp, inv)
                    key = cogen_class(m, inv).members
                    if key not in found:
                        found[key] = m
                    return
                for k in range(start, len(cands)):
                    c = cands[k]
                    if all(data.compatible(c, o) for o in chosen):
                        chosen.append(c)
                        extend(chosen, k + 1)
                        chosen.pop()

            extend([], 0)
    return sorted(found.values(), key=SupportTauTiltingModule.sort_key)


_COGEN_CACHE: dict[tuple[int, frozenset[int]], frozenset[int]] = {}


def cogen_class(m: SupportTauTiltingModule, inv: IndecInventory) -> TorsionFreeClassFin:
    key = (id(inv), m.summands)
    if key not in _COGEN_CACHE:
        if not m.summands:
            _COGEN_CACHE[key] = frozenset()
        else:
            mod = inv.module(m.summands)
            _COGEN_CACHE[key] = frozenset(i for i, x in enumerate(inv.items) if cogen_test(x, mod))
    return TorsionFreeClassFin(_COGEN_CACHE[key], inv)


def torsion_class_of(f: TorsionFreeClassFin | Iterable[int], inv: IndecInventory) -> frozenset[int]:
    members = f.members if isinstance(f, TorsionFreeClassFin) else frozenset(f)
    return frozenset(i for i in inv if all(inv.hom(i, j) == 0 for j in members))


def _sub_closed(members: frozenset[int], inv: IndecInventory) -> bool:
    for i in sorted(members):
        for sub, _ in submodules(inv.items[i]):
            if sub.is_zero():
                continue
            if not inv.summand_ids(sub) <= members:
                return False
    return True


def extension_closed(members: frozenset[int], inv: IndecInventory, find_witness: bool = False):
    """Closure of the additive hull under extensions.

    It suffices to take an indecomposable start term ``A`` and end terms
    ``⊕ B^{d_B}`` with ``d_B = dim Ext^1(B, A)``: larger multiplicities are
    absorbed by an automorphism of the end term, and decomposable start
    terms reduce to these by induction on the number of summands.
    """
    for a in sorted(members):
        ends = [(b, inv.ext(b, a)) for b in sorted(members)]
        ends = [(b, d) for b, d in ends if d]
        if not ends:
            continue
        end = direct_sum([inv.items[b] for b, d in ends for _ in range(d)], inv.alg)
        space = ext1(end, inv.items[a])
        for cls in space.classes(nonzero=True):
            e, _, _ = space.middle_term(cls.coeffs)
            if not inv.summand_ids(e) <= members:
                return (False, (a, tuple(ends), cls.coeffs)) if find_witness else False
    return (True, None) if find_witness else True


def is_torsion_free_class(members: Iterable[int], inv: IndecInventory) -> bool:
    """Closed under submodules of finite sums and under extensions.

    Submodules of a sum are extensions of submodules of fewer summands, so
    with extension closure it is enough to check submodules of members.
    """
    members = frozenset(members)
    if not members:
        return True
    return _sub_closed(members, inv) and extension_closed(members, inv)


def ext_injectives(f: TorsionFreeClassFin, inv: IndecInventory) -> frozenset[int]:
    return frozenset(x for x in f.members if all(inv.ext(y, x) == 0 for y in f.members))


def functorially_finite_witness(f: TorsionFreeClassFin, inv: IndecInventory) -> SupportTauTiltingModule | None:
    """The Ext-injectives of ``f`` when they cogenerate it, as a validated module."""
    if not f.members:
        return SupportTauTiltingModule(frozenset(), frozenset(), inv)
    ei = ext_injectives(f, inv)
    if not ei:
        return None
    mod = inv.module(ei)
    if not all(cogen_test(inv.items[x], mod) for x in f.members):
        return None
    m = SupportTauTiltingModule(ei, _support(inv, ei), inv)
    if not is_support_tau_tilting(ei, inv):
        raise AssertionFailure(f"Ext-injectives {m.label()} of {f.label()} are not support τ⁻-tilting")
    if cogen_class(m, inv).members != f.members:
        raise AssertionFailure(f"Ext-injectives {m.label()} do not cogenerate exactly {f.label()}")
    return m


def torsion_filtration(i: int, t: frozenset[int], f: frozenset[int], inv: IndecInventory) -> tuple[Representation, Representation] | None:
    """A submodule of item ``i`` in add ``t`` whose quotient lies in add ``f``."""
    from .modules import cokernel_rep

    x = inv.items[i]
    for sub, inc in submodules(x):
        if not sub.is_zero() and not inv.summand_ids(sub) <= t:
            continue
        q, _ = cokernel_rep(inc)
        if q.is_zero() or inv.summand_ids(q) <= f:
            return sub, q
    return None
