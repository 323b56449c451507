"""Bound quiver algebras ``kQ/I``: parsing, path basis, projectives and injectives.

Orientation convention, fixed for the whole package: modules are covariant
quiver representations, an arrow ``a: i -> j`` acts by a matrix from the
vertex-``i`` space to the vertex-``j`` space.  Paths are stored as tuples of
arrow indices in traversal order; the document syntax ``b*a`` means
"``a`` then ``b``" and is stored as ``(a, b)``.

The projective ``P_i = e_i Λ`` has the paths starting at ``i`` as basis, the
injective ``I_i`` is dual to the paths ending at ``i``.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .config import current_budget
from .errors import AlgebraError, InfiniteDimensionalError, SpecSyntaxError
from .linalg import F3, Field, rref

PathKey = tuple[int, tuple[int, ...]]  # (source vertex, arrows in traversal order)


@dataclass(frozen=True)
class Arrow:
    label: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("vertex labels must be unique")
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise AlgebraError("arrow labels must be unique")
        n = len(self.vertices)
        for a in self.arrows:
            if not (0 <= a.source < n and 0 <= a.target < n):
                raise AlgebraError(f"arrow {a.label} references a missing vertex")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex_index(self, label: str) -> int:
        try:
            return self.vertices.index(label)
        except ValueError:
            raise AlgebraError(f"unknown vertex {label!r}") from None

    def arrow_index(self, label: str) -> int:
        for k, a in enumerate(self.arrows):
            if a.label == label:
                return k
        raise AlgebraError(f"unknown arrow {label!r}")

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(a.label, a.target, a.source) for a in self.arrows))


# A relation is a tuple of (arrows-in-traversal-order, coefficient) terms.
Relation = tuple[tuple[tuple[int, ...], object], ...]


class Algebra:
    """A validated, finite dimensional bound quiver algebra over a field.

    Construction computes the path basis eagerly; the object is immutable
    afterwards.
    """

    def __init__(
        self,
        quiver: Quiver,
        relations: Sequence[Mapping[tuple[int, ...], object]] = (),
        field: Field = F3,
        name: str = "algebra",
        length_bound: int | None = None,
    ):
        self.quiver = quiver
        self.field = field
        self.name = name
        self.length_bound = length_bound if length_bound is not None else current_budget().path_length_bound
        self.relations: tuple[Relation, ...] = tuple(self._normalize_relations(relations))
        self._opposite: Algebra | None = None
        self._restricted: dict[frozenset[int], tuple[Algebra, tuple[int, ...]]] = {}
        self._compute_basis()

    # -- validation --------------------------------------------------------
    def _path_ends(self, arrows: tuple[int, ...]) -> tuple[int, int]:
        q = self.quiver
        for a, b in zip(arrows, arrows[1:]):
            if q.arrows[a].target != q.arrows[b].source:
                raise AlgebraError(
                    f"path {self.path_label((q.arrows[arrows[0]].source, arrows))} is not composable"
                )
        return q.arrows[arrows[0]].source, q.arrows[arrows[-1]].target

    def _normalize_relations(self, relations):
        f = self.field
        for rel in relations:
            terms: dict[tuple[int, ...], object] = {}
            ends = None
            for arrows, coeff in rel.items():
                arrows = tuple(arrows)
                if len(arrows) < 2:
                    raise AlgebraError("relation terms must be paths of length >= 2 (admissibility)")
                e = self._path_ends(arrows)
                if ends is None:
                    ends = e
                elif e != ends:
                    raise AlgebraError("relation is not a combination of parallel paths")
                c = f.scalar(coeff)
                terms[arrows] = f.scalar(terms.get(arrows, 0) + c) if arrows in terms else c
            cleaned = tuple(sorted(((a, c) for a, c in terms.items() if c != 0), key=lambda t: self._order_key(t[0])))
            if cleaned:
                yield cleaned

    def _order_key(self, arrows: tuple[int, ...]):
        return (len(arrows), tuple(self.quiver.arrows[a].label for a in arrows))

    # -- path enumeration ----------------------------------------------------
    def _paths_of_length(self, n: int) -> list[PathKey]:
        q = self.quiver
        if n == 0:
            return [(v, ()) for v in range(q.n)]
        prev = self._paths_cache[n - 1]
        out = []
        for src, arrows in prev:
            end = src if not arrows else q.arrows[arrows[-1]].target
            for k, a in enumerate(q.arrows):
                if a.source == end:
                    out.append((src, arrows + (k,)))
        return out

    def _end(self, path: PathKey) -> int:
        src, arrows = path
        return src if not arrows else self.quiver.arrows[arrows[-1]].target

    def _compute_basis(self) -> None:
        f = self.field
        q = self.quiver
        budget = current_budget()
        L = self.length_bound
        self._paths_cache: list[list[PathKey]] = [self._paths_of_length(0)]
        total_paths = q.n

        def ensure(m: int) -> None:
            nonlocal total_paths
            while len(self._paths_cache) <= m:
                nxt = self._paths_of_length(len(self._paths_cache))
                total_paths += len(nxt)
                budget.check_states(total_paths, "path enumeration")
                self._paths_cache.append(nxt)

        spread = 0
        for rel in self.relations:
            lens = [len(a) for a, _ in rel]
            spread = max(spread, max(lens) - min(lens))

        nilpotency = None
        for n in range(1, L + 1):
            ensure(n)
            if not self._paths_cache[n]:
                nilpotency = n
                break
            m = n + spread
            if m > L:
                break
            ensure(m)
            if self._all_in_ideal(self._paths_cache[n], m):
                nilpotency = n
                break
        if nilpotency is None:
            raise InfiniteDimensionalError(
                f"could not certify that paths of some length <= {L} lie in the ideal: "
                "the quotient is infinite dimensional or the ideal is not admissible"
            )
        self.nilpotency = nilpotency
        N = nilpotency

        short = [p for lvl in self._paths_cache[:N] for p in lvl]
        by_pair: dict[tuple[int, int], list[PathKey]] = {}
        for p in short:
            by_pair.setdefault((p[0], self._end(p)), []).append(p)

        products = self._products(max_len=None, truncate=N)
        self.basis: dict[tuple[int, int], tuple[PathKey, ...]] = {}
        self._reduction: dict[PathKey, tuple[int, np.ndarray]] = {}
        for pair in sorted(by_pair):
            paths = sorted(by_pair[pair], key=lambda p: self._order_key(p[1]), reverse=True)
            col = {p: k for k, p in enumerate(paths)}
            rows = products.get(pair, [])
            mat = f.zeros(len(rows), len(paths))
            for r, vec in enumerate(rows):
                for p, c in vec.items():
                    mat[r, col[p]] = f.scalar(mat[r, col[p]] + c)
            reduced, pivots, rk = rref(mat, f) if rows else (mat, [], 0)
            pivot_set = set(pivots)
            basis_paths = sorted((p for k, p in enumerate(paths) if k not in pivot_set), key=lambda p: self._order_key(p[1]))
            self.basis[pair] = tuple(basis_paths)
            bidx = {p: k for k, p in enumerate(basis_paths)}
            for k, p in enumerate(paths):
                vec = f.zeros(1, len(basis_paths))[0]
                if k in pivot_set:
                    row = reduced[pivots.index(k)]
                    for j, bp in enumerate(paths):
                        if j != k and row[j] != 0:
                            vec[bidx[bp]] = f.neg(row[j])
                else:
                    vec[bidx[p]] = f.scalar(1)
                self._reduction[p] = (pair[1], vec)
        for i in range(q.n):
            for j in range(q.n):
                self.basis.setdefault((i, j), ())

    def _products(self, max_len: int | None, truncate: int | None):
        """Vectors ``p * r * q`` grouped by (source, target).

        ``max_len`` keeps only products whose longest term fits; ``truncate``
        drops terms of length >= truncate (and products that vanish).
        """
        q = self.quiver
        limit = max_len if max_len is not None else truncate
        paths_by_start: dict[int, list[PathKey]] = {}
        paths_by_end: dict[int, list[PathKey]] = {}
        for lvl in self._paths_cache[: limit + 1]:
            for p in lvl:
                paths_by_start.setdefault(p[0], []).append(p)
                paths_by_end.setdefault(self._end(p), []).append(p)
        out: dict[tuple[int, int], list[dict[PathKey, object]]] = {}
        f = self.field
        for rel in self.relations:
            first = rel[0][0]
            s = q.arrows[first[0]].source
            t = q.arrows[first[-1]].target
            lmin = min(len(a) for a, _ in rel)
            lmax = max(len(a) for a, _ in rel)
            for pre in paths_by_end.get(s, []):
                for post in paths_by_start.get(t, []):
                    extra = len(pre[1]) + len(post[1])
                    if max_len is not None and extra + lmax > max_len:
                        continue
                    if truncate is not None and extra + lmin >= truncate:
                        continue
                    vec: dict[PathKey, object] = {}
                    for arrows, c in rel:
                        full = pre[1] + arrows + post[1]
                        if truncate is not None and len(full) >= truncate:
                            continue
                        key = (pre[0], full)
                        vec[key] = f.scalar(vec.get(key, 0) + c)
                    vec = {k: c for k, c in vec.items() if c != 0}
                    if vec:
                        out.setdefault((pre[0], self._end(post)), []).append(vec)
        return out

    def _all_in_ideal(self, paths: list[PathKey], max_len: int) -> bool:
        f = self.field
        products = self._products(max_len=max_len, truncate=None)
        by_pair: dict[tuple[int, int], list[PathKey]] = {}
        for p in paths:
            by_pair.setdefault((p[0], self._end(p)), []).append(p)
        for pair, targets in by_pair.items():
            rows = products.get(pair, [])
            if not rows:
                return False
            cols = sorted({k for v in rows for k in v} | set(targets), key=lambda p: self._order_key(p[1]))
            idx = {p: k for k, p in enumerate(cols)}
            mat = f.zeros(len(rows), len(cols))
            for r, vec in enumerate(rows):
                for p, c in vec.items():
                    mat[r, idx[p]] = c
            reduced, pivots, _ = rref(mat, f)
            for p in targets:
                c = idx[p]
                if c not in pivots:
                    return False
                row = reduced[pivots.index(c)]
                if np.count_nonzero(row) != 1:
                    return False
        return True

    # -- public surface --------------------------------------------------
    @property
    def n(self) -> int:
        return self.quiver.n

    @property
    def dim(self) -> int:
        return sum(len(b) for b in self.basis.values())

    def path_label(self, path: PathKey) -> str:
        src, arrows = path
        if not arrows:
            return f"e{self.quiver.vertices[src]}"
        return "*".join(self.quiver.arrows[a].label for a in reversed(arrows))

    def reduce(self, path: PathKey) -> tuple[int, np.ndarray]:
        """Normal form of a path: its target vertex and coordinates in the basis."""
        src, arrows = path
        if arrows:
            self._path_ends(arrows)
        tgt = self._end(path)
        if len(arrows) >= self.nilpotency:
            return tgt, self.field.zeros(1, len(self.basis[(src, tgt)]))[0]
        return self._reduction[path][0], self._reduction[path][1].copy()

    def reduce_element(self, terms: Mapping[PathKey, object], src: int, tgt: int) -> np.ndarray:
        f = self.field
        out = f.zeros(1, len(self.basis[(src, tgt)]))[0]
        for path, c in terms.items():
            t, vec = self.reduce(path)
            if path[0] != src or t != tgt:
                raise AlgebraError("element is not homogeneous for the requested vertex pair")
            out = f.reduce(out + vec * f.scalar(c))
        return out

    def relation_ends(self, rel: Relation) -> tuple[int, int]:
        return self._path_ends(rel[0][0])

    @property
    def is_hereditary(self) -> bool:
        return not self.relations

    def opposite(self) -> "Algebra":
        if self._opposite is None:
            rels = [{tuple(reversed(a)): c for a, c in rel} for rel in self.relations]
            op = Algebra(self.quiver.opposite(), rels, self.field, self.name + "^op", self.length_bound)
            op._opposite = self
            self._opposite = op
        return self._opposite

    def with_field(self, field: Field) -> "Algebra":
        rels = [{a: _lift_coeff(c) for a, c in rel} for rel in self.relations]
        return Algebra(self.quiver, rels, field, self.name, self.length_bound)

    def canonical_text(self) -> str:
        q = self.quiver
        lines = [f"name {self.name}", f"field {self.field.p if self.field.is_prime else 'rational'}"]
        lines.append("vertices " + " ".join(q.vertices))
        if q.arrows:
            lines.append("arrows " + " ".join(f"{a.label}:{q.vertices[a.source]}->{q.vertices[a.target]}" for a in q.arrows))
        if self.relations:
            lines.append("relations " + " ".join(self.relation_text(r) for r in self.relations))
        return "\n".join(lines) + "\n"

    def relation_text(self, rel: Relation) -> str:
        parts = []
        for k, (arrows, c) in enumerate(rel):
            word = "*".join(self.quiver.arrows[a].label for a in reversed(arrows))
            sign = "+"
            c_txt = str(c)
            if self.field.is_prime and self.field.p is not None and c == self.field.p - 1 and self.field.p > 2:
                sign, c_txt = "-", "1"
            elif not self.field.is_prime and c < 0:
                sign, c_txt = "-", str(-c)
            term = word if c_txt == "1" else f"{c_txt}*{word}"
            parts.append(("" if sign == "+" else "-") + term if k == 0 else sign + term)
        return "".join(parts)

    @cached_property
    def digest(self) -> str:
        return hashlib.sha256(self.canonical_text().encode()).hexdigest()[:16]

    def __repr__(self) -> str:
        return f"Algebra({self.name!r}, {self.n} vertices, dim {self.dim}, {self.field!r})"

    # -- support quotients -------------------------------------------------
    def restrict(self, support: Iterable[int]) -> tuple["Algebra", tuple[int, ...]]:
        """Quotient by the idempotents off ``support``.

        Returns the quotient algebra and the ordered list of kept vertices
        (new index -> old index).
        """
        keep = frozenset(support)
        if not keep:
            raise AlgebraError("support must be nonempty")
        if keep in self._restricted:
            return self._restricted[keep]
        q = self.quiver
        kept = tuple(sorted(keep))
        vmap = {old: new for new, old in enumerate(kept)}
        arrow_keep = [k for k, a in enumerate(q.arrows) if a.source in keep and a.target in keep]
        amap = {old: new for new, old in enumerate(arrow_keep)}
        quiver = Quiver(
            tuple(q.vertices[v] for v in kept),
            tuple(Arrow(q.arrows[k].label, vmap[q.arrows[k].source], vmap[q.arrows[k].target]) for k in arrow_keep),
        )
        rels = []
        for rel in self.relations:
            terms = {tuple(amap[a] for a in arrows): _lift_coeff(c) for arrows, c in rel if all(a in amap for a in arrows)}
            if terms:
                rels.append(terms)
        sub = Algebra(quiver, rels, self.field, f"{self.name}|{''.join(quiver.vertices)}", self.length_bound)
        self._restricted[keep] = (sub, kept)
        return sub, kept


def _lift_coeff(c):
    return c if isinstance(c, Fraction) else int(c)


# -- document format -------------------------------------------------------

_KEYS = ("name", "field", "vertices", "arrows", "relations")
_LABEL = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")
_VLABEL = re.compile(r"^[A-Za-z0-9_']+$")
_ARROW = re.compile(r"^([^:]+):([^-]+)->(.+)$")
_COEFF = re.compile(r"^\d+(/\d+)?$")


def _tokens(text: str):
    """Yield statements as lists of (token, line, column)."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        start = 0
        for chunk in line.split(";"):
            toks = [(m.group(0), lineno, start + m.start() + 1) for m in re.finditer(r"\S+", chunk)]
            start += len(chunk) + 1
            if toks:
                yield toks


def parse_algebra(
    text: str,
    field: Field | None = None,
    name: str | None = None,
    length_bound: int | None = None,
) -> Algebra:
    """Parse an algebra document.

    Statements are separated by newlines or ``;``; ``#`` starts a comment::

        name A2
        field 3
        vertices 1 2
        arrows a:1->2
        relations          # e.g. b*a  or  b*a-2*d*c

    ``field`` in the document is overridden by the ``field`` argument.
    """
    seen: dict[str, tuple[int, int]] = {}
    doc_name = None
    doc_field: Field | None = None
    vertices: list[str] | None = None
    arrow_toks: list[tuple[str, int, int]] = []
    rel_toks: list[tuple[str, int, int]] = []
    for stmt in _tokens(text):
        key, line, col = stmt[0]
        if key not in _KEYS:
            raise SpecSyntaxError(f"unknown key {key!r}", line, col)
        args = stmt[1:]
        if key in ("name", "field", "vertices") and key in seen:
            raise SpecSyntaxError(f"duplicate {key!r} statement", line, col)
        seen[key] = (line, col)
        if key == "name":
            if len(args) != 1:
                raise SpecSyntaxError("name takes exactly one token", line, col)
            doc_name = args[0][0]
        elif key == "field":
            if len(args) != 1:
                raise SpecSyntaxError("field takes exactly one token", line, col)
            tok, tl, tc = args[0]
            if tok == "rational":
                doc_field = Field.rational()
            else:
                try:
                    doc_field = Field(int(tok))
                except ValueError as exc:
                    raise SpecSyntaxError(f"bad field {tok!r}: {exc}", tl, tc) from None
        elif key == "vertices":
            vertices = []
            for tok, tl, tc in args:
                if not _VLABEL.match(tok):
                    raise SpecSyntaxError(f"bad vertex label {tok!r}", tl, tc)
                if tok in vertices:
                    raise SpecSyntaxError(f"duplicate vertex {tok!r}", tl, tc)
                vertices.append(tok)
        elif key == "arrows":
            arrow_toks.extend(args)
        else:
            rel_toks.extend(args)
    if vertices is None:
        raise SpecSyntaxError("missing 'vertices' statement", 1, 1)
    if field is None:
        field = doc_field if doc_field is not None else F3
    arrows = []
    labels: set[str] = set()
    for tok, line, col in arrow_toks:
        m = _ARROW.match(tok)
        if not m:
            raise SpecSyntaxError(f"bad arrow {tok!r}, expected name:src->tgt", line, col)
        label, src, tgt = m.groups()
        if not _LABEL.match(label):
            raise SpecSyntaxError(f"bad arrow label {label!r} (must start with a letter)", line, col)
        if label in labels:
            raise SpecSyntaxError(f"duplicate arrow {label!r}", line, col)
        for v in (src, tgt):
            if v not in vertices:
                raise SpecSyntaxError(f"unknown vertex {v!r}", line, col)
        labels.add(label)
        arrows.append(Arrow(label, vertices.index(src), vertices.index(tgt)))
    quiver = Quiver(tuple(vertices), tuple(arrows))
    relations = []
    for tok, line, col in rel_toks:
        relations.append(_parse_relation(tok, quiver, line, col))
    try:
        return Algebra(quiver, relations, field, name or doc_name or "algebra", length_bound)
    except InfiniteDimensionalError:
        raise
    except AlgebraError as exc:
        raise AlgebraError(f"relations: {exc}") from None


def _parse_relation(tok: str, quiver: Quiver, line: int, col: int) -> dict[tuple[int, ...], object]:
    terms: dict[tuple[int, ...], object] = {}
    pos = 0
    if not tok or tok[-1] in "+-":
        raise SpecSyntaxError(f"bad relation {tok!r}", line, col)
    for m in re.finditer(r"([+-]?)([^+-]+)", tok):
        if m.start() != pos:
            raise SpecSyntaxError(f"bad relation {tok!r}", line, col + pos)
        pos = m.end()
        sign, body = m.groups()
        factors = body.split("*")
        coeff: object = 1
        if factors and _COEFF.match(factors[0]):
            coeff = Fraction(factors[0])
            factors = factors[1:]
        if not factors or any(not x for x in factors):
            raise SpecSyntaxError(f"bad term {body!r} in relation", line, col + m.start())
        try:
            arrows = tuple(quiver.arrow_index(x) for x in reversed(factors))
        except AlgebraError as exc:
            raise SpecSyntaxError(str(exc), line, col + m.start()) from None
        if sign == "-":
            coeff = -coeff
        terms[arrows] = terms.get(arrows, 0) + coeff
    if pos != len(tok):
        raise SpecSyntaxError(f"bad relation {tok!r}", line, col + pos)
    return terms


def path_basis(alg: Algebra) -> dict[tuple[int, int], tuple[PathKey, ...]]:
    """Basis of ``e_i Λ e_j``-style blocks: residue representatives of paths ``i -> j``."""
    return dict(alg.basis)


def _path_action(alg: Algebra, src: int, element_paths: tuple[PathKey, ...], arrow: int) -> np.ndarray:
    a = alg.quiver.arrows[arrow]
    tgt_basis = alg.basis[(src, a.target)]
    mat = alg.field.zeros(len(tgt_basis), len(element_paths))
    for c, (s, arrows) in enumerate(element_paths):
        _, vec = alg.reduce((s, arrows + (arrow,)))
        mat[:, c] = vec
    return mat


def projective_rep(alg: Algebra, i: int):
    """``P_i``: basis at ``j`` is the residue paths ``i -> j``."""
    from .representation import Representation

    dims = tuple(len(alg.basis[(i, j)]) for j in range(alg.n))
    mats = []
    for k, a in enumerate(alg.quiver.arrows):
        mats.append(_path_action(alg, i, alg.basis[(i, a.source)], k))
    return Representation(alg, dims, mats)


def injective_rep(alg: Algebra, i: int):
    """``I_i = D(Λ e_i)``: the dual of the paths ending at ``i``."""
    from .representation import Representation

    f = alg.field
    dims = tuple(len(alg.basis[(j, i)]) for j in range(alg.n))
    mats = []
    for k, a in enumerate(alg.quiver.arrows):
        src_basis = alg.basis[(a.source, i)]
        tgt_basis = alg.basis[(a.target, i)]
        mat = f.zeros(len(tgt_basis), len(src_basis))
        for r, (_, arrows) in enumerate(tgt_basis):
            _, vec = alg.reduce((a.source, (k,) + arrows))
            mat[r, :] = vec
        mats.append(mat)
    return Representation(alg, dims, mats)


def restrict_algebra(alg: Algebra, support: Iterable[int]) -> Algebra:
    return alg.restrict(support)[0]
