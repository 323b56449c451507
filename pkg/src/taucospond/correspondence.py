"""End-to-end verification of the support τ⁻-tilting / semibrick bijection.

:func:`verify_correspondence` builds the inventory, enumerates both sides,
computes the maps in both directions and runs a suite of named consistency
checks.  Each check records ``pass``, ``fail`` (with a witness) or
``skipped`` (a budget refusal).  Reports serialize deterministically; wall
clock timings are kept on the object but never written to JSON, so two runs
with the same inputs give byte-identical documents.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable

from .algebra import Algebra
from .artranslate import tau, tau_minus
from .errors import AssertionFailure, BudgetExceeded, IncompleteInventoryError, TaucospondError
from .inventory import IndecInventory, build_inventory
from .modules import is_indecomposable, is_isomorphic
from .semibrick import (
    Semibrick,
    beta,
    enumerate_semibricks,
    filt_torsionfree_closure,
    is_tf_almost_torsion,
    is_wide,
    is_widely_generated,
    left_almost_split_violation,
    semibrick_of,
    simples_of_wide,
)
from .tautilt import (
    SupportTauTiltingModule,
    cogen_class,
    enumerate_support_tau_tilting,
    functorially_finite_witness,
    is_torsion_free_class,
    torsion_class_of,
    torsion_filtration,
)

__all__ = [
    "SCHEMA",
    "VerifyConfig",
    "CheckResult",
    "CorrespondenceReport",
    "alpha3",
    "alpha3_inverse",
    "verify_correspondence",
    "emit_report",
    "report_from_json",
]

SCHEMA = "taucospond/1"


def alpha3(m: SupportTauTiltingModule) -> Semibrick:
    return semibrick_of(m)


def alpha3_inverse(s: Semibrick) -> SupportTauTiltingModule:
    """The Ext-injective cogenerator of the class generated by ``s``."""
    f = filt_torsionfree_closure(s)
    w = functorially_finite_witness(f, s.inv)
    if w is None:
        raise AssertionFailure(f"semibrick {s.label()} is not right finite: {f.label()} has no cogenerating Ext-injectives")
    back = alpha3(w)
    if back.bricks != s.bricks:
        raise AssertionFailure(f"round trip sends {s.label()} to {w.label()} and back to {back.label()}")
    return w


@dataclass(frozen=True)
class VerifyConfig:
    full: bool = False
    run_checks: bool = True
    dim_bound: int | None = None
    assert_complete: bool = False


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # pass | fail | skipped
    detail: str | None = None

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class CorrespondenceReport:
    algebra_name: str
    algebra_digest: str
    algebra_text: str
    field: int | None
    inventory: dict
    counts: dict
    table: list[dict]
    checks: list[CheckResult]
    bijective: bool | None
    config: dict
    timings: dict = field(default_factory=dict, compare=False)

    @property
    def failed(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == "fail"]

    @property
    def skipped(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == "skipped"]

    def exit_code(self) -> int:
        if self.failed or self.bijective is False:
            return 1
        if self.skipped:
            return 2
        return 0

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "algebra": {"name": self.algebra_name, "digest": self.algebra_digest, "text": self.algebra_text},
            "field": self.field,
            "inventory": self.inventory,
            "counts": self.counts,
            "bijection": self.table,
            "bijective": self.bijective,
            "checks": [c.to_json() for c in self.checks],
            "config": self.config,
        }

    def summary(self) -> str:
        c = self.counts
        lines = [
            f"algebra {self.algebra_name} over F_{self.field} (digest {self.algebra_digest})",
            f"  indecomposables {c['indecomposables']}, bricks {c['bricks']}, semibricks {c['semibricks']}, "
            f"support tau^- tilting {c['support_tau_tilting']}, torsion free classes {c['torsion_free_classes']}",
        ]
        if self.bijective is not None:
            lines.append(f"  bijective: {'yes' if self.bijective else 'NO'}")
        for row in self.table:
            mod = "+".join(row["module"]) or "0"
            lines.append(f"    {mod:<20} -> {{{','.join(row['semibrick'])}}}")
        for ch in self.checks:
            extra = f"  ({ch.detail})" if ch.detail else ""
            lines.append(f"  [{ch.status:>7}] {ch.name}{extra}")
        if self.timings:
            lines.append("  timings: " + ", ".join(f"{k} {v:.2f}s" for k, v in self.timings.items()))
        return "\n".join(lines)


class _Checks:
    def __init__(self):
        self.results: list[CheckResult] = []

    def run(self, name: str, fn: Callable[[], str | None]) -> bool:
        """``fn`` returns ``None`` on success or a witness string."""
        try:
            witness = fn()
        except BudgetExceeded as exc:
            self.results.append(CheckResult(name, "skipped", str(exc)))
            return False
        except (AssertionFailure, IncompleteInventoryError) as exc:
            self.results.append(CheckResult(name, "fail", str(exc)))
            return False
        if witness is None:
            self.results.append(CheckResult(name, "pass"))
            return True
        self.results.append(CheckResult(name, "fail", witness))
        return False


def _names(inv: IndecInventory, ids) -> list[str]:
    return [inv.names[i] for i in sorted(ids)]


def _first(items, pred, describe) -> str | None:
    for it in items:
        if not pred(it):
            return describe(it)
    return None


def verify_correspondence(alg: Algebra, config: VerifyConfig = VerifyConfig()) -> CorrespondenceReport:
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    inv = build_inventory(alg, config.dim_bound, assert_complete=config.assert_complete)
    inv.require_complete()
    timings["inventory"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    stmts = enumerate_support_tau_tilting(inv)
    sbricks = enumerate_semibricks(inv)
    bricks = inv.bricks()
    classes = {m.summands: cogen_class(m, inv) for m in stmts}
    timings["enumeration"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    images: dict[frozenset[int], Semibrick] = {}
    table_error = None
    try:
        for m in stmts:
            images[m.summands] = alpha3(m)
    except TaucospondError as exc:
        table_error = str(exc)
    table = []
    for m in stmts:
        s = images.get(m.summands)
        table.append(
            {
                "module": _names(inv, m.summands),
                "semibrick": _names(inv, s.bricks) if s is not None else None,
                "torsion_free_class": _names(inv, classes[m.summands].members),
            }
        )
    timings["semibrick map"] = time.perf_counter() - t0

    counts = {
        "indecomposables": len(inv),
        "bricks": len(bricks),
        "semibricks": len(sbricks),
        "support_tau_tilting": len(stmts),
        "torsion_free_classes": len(set(f.members for f in classes.values())),
    }

    ck = _Checks()
    bijective = None
    if config.run_checks:
        t0 = time.perf_counter()
        _core_checks(ck, inv, stmts, sbricks, classes, images, table_error)
        if config.full:
            _full_checks(ck, inv, stmts, classes, images)
        timings["checks"] = time.perf_counter() - t0
        names = {"semibrick_map_defined", "semibrick_map_injective", "inverse_round_trip", "image_is_all_semibricks"}
        relevant = [c for c in ck.results if c.name in names]
        bijective = all(c.status == "pass" for c in relevant) if relevant else None

    return CorrespondenceReport(
        algebra_name=alg.name,
        algebra_digest=alg.digest,
        algebra_text=alg.canonical_text(),
        field=alg.field.p,
        inventory={
            "method": inv.method,
            "complete": inv.complete,
            "dim_bound": inv.dim_bound,
            "items": [{"name": inv.names[i], "dims": list(inv.items[i].dims)} for i in inv],
            "bricks": _names(inv, bricks),
        },
        counts=counts,
        table=table,
        checks=ck.results,
        bijective=bijective,
        config={"full": config.full, "checks": config.run_checks, "dim_bound": config.dim_bound,
                "assert_complete": config.assert_complete},
        timings=timings,
    )


def _core_checks(ck: _Checks, inv, stmts, sbricks, classes, images, table_error) -> None:
    lab = inv.label

    ck.run("semibrick_map_defined", lambda: table_error)
    ok_images = table_error is None

    def injective():
        seen: dict[frozenset[int], frozenset[int]] = {}
        for m in stmts:
            b = images[m.summands].bricks
            if b in seen:
                return f"{lab(seen[b])} and {lab(m.summands)} share the semibrick {inv.label(b)}"
            seen[b] = m.summands
        return None

    def image_all():
        got = {images[m.summands].bricks for m in stmts}
        want = {s.bricks for s in sbricks}
        if got == want:
            return None
        missing = sorted(want - got, key=lambda b: (len(b), sorted(b)))
        extra = sorted(got - want, key=lambda b: (len(b), sorted(b)))
        return f"missing {[lab(b) for b in missing]}, unexpected {[lab(b) for b in extra]}"

    def round_trip():
        for s in sbricks:
            w = alpha3_inverse(s)
            if w.summands not in classes:
                return f"{s.label()} maps to {w.label()}, which is not among the enumerated modules"
        for m in stmts:
            back = alpha3_inverse(images[m.summands])
            if cogen_class(back, inv).members != classes[m.summands].members:
                return f"{lab(m.summands)} comes back as {back.label()}"
        return None

    if ok_images:
        ck.run("semibrick_map_injective", injective)
        ck.run("image_is_all_semibricks", image_all)
        ck.run("inverse_round_trip", round_trip)
    ck.run(
        "counts_agree",
        lambda: None if len(stmts) == len(sbricks) else f"{len(stmts)} modules vs {len(sbricks)} semibricks",
    )
    ck.run(
        "cogen_classes_distinct",
        lambda: None if len({f.members for f in classes.values()}) == len(stmts) else "two modules share a class",
    )
    ck.run(
        "cogen_classes_are_torsion_free",
        lambda: _first(stmts, lambda m: is_torsion_free_class(classes[m.summands].members, inv),
                       lambda m: f"cogen({lab(m.summands)}) = {classes[m.summands].label()}"),
    )

    def witness_round_trip():
        for m in stmts:
            f = classes[m.summands]
            w = functorially_finite_witness(f, inv)
            if w is None:
                return f"{f.label()} has no Ext-injective cogenerator"
            if w.summands != m.summands:
                return f"Ext-injectives of {f.label()} are {w.label()}, not {lab(m.summands)}"
        return None

    ck.run("ext_injective_witness_round_trip", witness_round_trip)
    if not ok_images:
        return

    def tf_equality():
        for m in stmts:
            f = classes[m.summands]
            certified = frozenset(i for i in inv if is_tf_almost_torsion(i, f) is not None)
            if certified != images[m.summands].bricks:
                return f"for {lab(m.summands)}: certified {lab(certified)} vs semibrick {images[m.summands].label()}"
        return None

    ck.run("semibrick_equals_tf_almost_torsion", tf_equality)
    ck.run(
        "beta_is_wide",
        lambda: _first(stmts, lambda m: is_wide(beta(classes[m.summands]), inv),
                       lambda m: f"beta({classes[m.summands].label()}) is not wide"),
    )
    ck.run(
        "widely_generated",
        lambda: _first(stmts, lambda m: is_widely_generated(classes[m.summands]),
                       lambda m: f"{classes[m.summands].label()} is not generated by its beta"),
    )
    ck.run(
        "simples_of_beta_equal_semibrick",
        lambda: _first(
            stmts,
            lambda m: simples_of_wide(beta(classes[m.summands]), inv, check=False) == images[m.summands].bricks,
            lambda m: f"simples of beta({classes[m.summands].label()}) differ from {images[m.summands].label()}",
        ),
    )
    ck.run(
        "class_generated_by_semibrick",
        lambda: _first(
            stmts,
            lambda m: filt_torsionfree_closure(images[m.summands]).members == classes[m.summands].members,
            lambda m: f"closure of {images[m.summands].label()} != {classes[m.summands].label()}",
        ),
    )

    def tf_set_of_generated():
        for s in sbricks:
            f = filt_torsionfree_closure(s)
            certified = frozenset(i for i in inv if is_tf_almost_torsion(i, f) is not None)
            if certified != s.bricks:
                return f"{s.label()}: generated class {f.label()} has tf almost torsion set {lab(certified)}"
        return None

    ck.run("semibrick_is_tf_almost_torsion_set_of_its_closure", tf_set_of_generated)

    def wide_recovered():
        for s in sbricks:
            w = beta(filt_torsionfree_closure(s))
            got = simples_of_wide(w, inv, check=False)
            if got != s.bricks:
                return f"{s.label()}: simples of beta of its closure are {lab(got)}"
        return None

    ck.run("semibrick_is_simples_of_beta_of_closure", wide_recovered)


def _full_checks(ck: _Checks, inv, stmts, classes, images) -> None:
    lab = inv.label

    def inventory_sound():
        for i in inv:
            if not is_indecomposable(inv.items[i]):
                return f"{inv.names[i]} decomposes"
            for j in inv:
                if i < j and is_isomorphic(inv.items[i], inv.items[j], indecomposable=True):
                    return f"{inv.names[i]} is isomorphic to {inv.names[j]}"
        return None

    def translates():
        injective = set()
        projective = set()
        for i in inv:
            x = inv.items[i]
            tm = tau_minus(x)
            if tm.is_zero():
                injective.add(i)
            elif not is_isomorphic(tau(tm), x, indecomposable=True):
                return f"tau(tau^-({inv.names[i]})) is not {inv.names[i]}"
            t = tau(x)
            if t.is_zero():
                projective.add(i)
            elif not is_isomorphic(tau_minus(t), x, indecomposable=True):
                return f"tau^-(tau({inv.names[i]})) is not {inv.names[i]}"
        if len(injective) != inv.alg.n or len(projective) != inv.alg.n:
            return f"{len(projective)} projective and {len(injective)} injective items for {inv.alg.n} vertices"
        return None

    def factorization():
        for m in stmts:
            for x in sorted(m.summands):
                bad = left_almost_split_violation(x, m)
                if bad is not None:
                    y, g = bad
                    return f"in {lab(m.summands)}: a map {inv.names[x]} -> {inv.names[y]} does not kill the kernel"
        return None

    def torsion_pairs():
        for m in stmts:
            f = classes[m.summands].members
            t = torsion_class_of(f, inv)
            for i in t:
                for j in f:
                    if inv.hom(i, j):
                        return f"Hom({inv.names[i]}, {inv.names[j]}) != 0 across the pair for {lab(m.summands)}"
            for i in inv:
                if i in t or i in f:
                    continue
                if torsion_filtration(i, t, f, inv) is None:
                    return f"{inv.names[i]} has no torsion submodule with torsion free quotient for {lab(m.summands)}"
        return None

    ck.run("inventory_sound", inventory_sound)
    ck.run("translates_quasi_inverse", translates)
    ck.run("quotient_map_left_almost_split", factorization)
    ck.run("torsion_pairs_filter", torsion_pairs)


def emit_report(r: CorrespondenceReport, format: str = "json") -> str:
    if format == "json":
        return json.dumps(r.to_json(), sort_keys=True, indent=2) + "\n"
    if format == "tsv":
        lines = ["module\tsemibrick\ttorsion_free_class"]
        for row in r.table:
            sb = row["semibrick"]
            lines.append(
                "\t".join(
                    [
                        "+".join(row["module"]) or "0",
                        ("{" + ",".join(sb) + "}") if sb is not None else "?",
                        "{" + ",".join(row["torsion_free_class"]) + "}",
                    ]
                )
            )
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {format!r}")


def report_from_json(text: str) -> CorrespondenceReport:
    data = json.loads(text)
    if data.get("schema") != SCHEMA:
        raise ValueError(f"unsupported report schema {data.get('schema')!r}")
    return CorrespondenceReport(
        algebra_name=data["algebra"]["name"],
        algebra_digest=data["algebra"]["digest"],
        algebra_text=data["algebra"]["text"],
        field=data["field"],
        inventory=data["inventory"],
        counts=data["counts"],
        table=data["bijection"],
        checks=[CheckResult(c["name"], c["status"], c["detail"]) for c in data["checks"]],
        bijective=data["bijective"],
        config=data["config"],
    )
