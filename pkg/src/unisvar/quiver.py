"""Quivers, paths, and formal linear combinations of paths.

A path stores its arrows in traversal order: the word (a, b) is the path
that first runs along a and then along b, written "b*a" in text because the
product convention is "b after a".  Right subpaths are traversal prefixes.
"""

from dataclasses import dataclass

from .errors import UnisvarError


class QuiverError(UnisvarError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class PathWord:
    """A path of the quiver: a base vertex plus a composable arrow word.

    ``arrows`` is a tuple of arrow names in traversal order; it is empty
    exactly for the trivial path at ``source``.
    """

    source: str
    target: str
    arrows: tuple

    @property
    def length(self):
        return len(self.arrows)

    def order_key(self):
        # Length-then-lex path order; the source breaks ties between
        # trivial paths at different vertices.
        return (len(self.arrows), self.arrows, self.source)

    def right_subpath_of(self, other):
        """True iff self is a right subpath (traversal prefix) of other."""
        return (
            self.source == other.source
            and self.arrows == other.arrows[: len(self.arrows)]
        )

    def text(self):
        if not self.arrows:
            return f"e({self.source})"
        return "*".join(reversed(self.arrows))

    def __repr__(self):
        return f"<path {self.text()}>"


class Quiver:
    """A finite directed graph with named vertices and arrows."""

    def __init__(self, vertices, arrows):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex name")
        self.arrows = tuple(
            a if isinstance(a, Arrow) else Arrow(*a) for a in arrows
        )
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate arrow name")
        vertex_set = set(self.vertices)
        for a in self.arrows:
            if a.source not in vertex_set:
                raise QuiverError(f"unknown vertex {a.source}")
            if a.target not in vertex_set:
                raise QuiverError(f"unknown vertex {a.target}")
        self._arrow_by_name = {a.name: a for a in self.arrows}
        self._arrows_from = {v: [] for v in self.vertices}
        for a in self.arrows:
            self._arrows_from[a.source].append(a)

    def arrow(self, name):
        try:
            return self._arrow_by_name[name]
        except KeyError:
            raise QuiverError(f"unknown arrow {name}") from None

    def has_vertex(self, v):
        return v in self._arrows_from

    def arrows_from(self, v):
        return tuple(self._arrows_from[v])

    def arrows_between(self, u, v):
        return tuple(a for a in self._arrows_from[u] if a.target == v)

    def trivial_path(self, v):
        if not self.has_vertex(v):
            raise QuiverError(f"unknown vertex {v}")
        return PathWord(v, v, ())

    def path(self, arrow_names):
        """Build a path from arrow names in traversal order."""
        arrow_names = tuple(arrow_names)
        if not arrow_names:
            raise QuiverError("a path of length 0 needs a base vertex")
        first = self.arrow(arrow_names[0])
        prev = first
        for name in arrow_names[1:]:
            nxt = self.arrow(name)
            if nxt.source != prev.target:
                raise QuiverError(
                    f"arrows {prev.name} and {nxt.name} do not compose"
                )
            prev = nxt
        return PathWord(first.source, prev.target, arrow_names)

    def path_from_text(self, text):
        """Parse 'b*a' (b after a) or 'e(v)' into a PathWord."""
        text = text.strip()
        if text.startswith("e(") and text.endswith(")"):
            return self.trivial_path(text[2:-1])
        parts = [p.strip() for p in text.split("*")]
        if any(not p for p in parts):
            raise QuiverError(f"malformed path {text!r}")
        return self.path(tuple(reversed(parts)))

    def extend(self, path, arrow):
        """The path 'arrow after path'; None when not composable."""
        if isinstance(arrow, str):
            arrow = self.arrow(arrow)
        if arrow.source != path.target:
            return None
        return PathWord(path.source, arrow.target, path.arrows + (arrow.name,))

    def compose(self, p, q):
        """The path 'p after q'; None when not composable."""
        if p.source != q.target:
            return None
        return PathWord(q.source, p.target, q.arrows + p.arrows)

    def right_subpath(self, p, i):
        """The right subpath of length i (the first i arrows traversed)."""
        if i == 0:
            return self.trivial_path(p.source)
        return self.path(p.arrows[:i])


class AlgebraElement:
    """A finite K-linear combination of paths, with no zero coefficients."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        self.terms = {}
        if terms:
            for path, coeff in terms.items():
                if not field.is_zero(coeff):
                    self.terms[path] = coeff

    @classmethod
    def from_path(cls, field, path, coeff=None):
        return cls(field, {path: field.one if coeff is None else coeff})

    def is_zero(self):
        return not self.terms

    def paths(self):
        return self.terms.keys()

    def coefficient(self, path):
        return self.terms.get(path, self.field.zero)

    def __add__(self, other):
        f = self.field
        out = dict(self.terms)
        for path, coeff in other.terms.items():
            c = f.add(out.get(path, f.zero), coeff)
            if f.is_zero(c):
                out.pop(path, None)
            else:
                out[path] = c
        return AlgebraElement(f, out)

    def __sub__(self, other):
        return self + other.scale(self.field.neg(self.field.one))

    def scale(self, coeff):
        f = self.field
        if f.is_zero(coeff):
            return AlgebraElement(f)
        return AlgebraElement(
            f, {path: f.mul(coeff, c) for path, c in self.terms.items()}
        )

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_uniform(self):
        """True iff all paths share one source and one target vertex."""
        sources = {p.source for p in self.terms}
        targets = {p.target for p in self.terms}
        return len(sources) <= 1 and len(targets) <= 1

    def leading_path(self):
        if not self.terms:
            raise QuiverError("the zero element has no leading path")
        return max(self.terms, key=PathWord.order_key)

    def text(self):
        if not self.terms:
            return "0"
        f = self.field
        parts = []
        for path in sorted(self.terms, key=PathWord.order_key):
            coeff = f.format(self.terms[path])
            parts.append(path.text() if coeff == "1" else f"{coeff}*{path.text()}")
        return " + ".join(parts)

    def __repr__(self):
        return f"<element {self.text()}>"
