"""Masts, detours, routes, and the affine coordinate variety of a
composition-factor sequence.

For a sequence of simples with vertices (e(0), ..., e(l)), a mast is a path
of length l through those vertices that survives in the quotient algebra.
Its detour table indexes the affine coordinates; the defining equations of
the coordinate variety come from evaluating the relations on the symbolic
normalized matrices of the mast.
"""

from dataclasses import dataclass

from .errors import UnisvarError
from .linalg import Echelon, solve_in_rowspace
from .poly import DetourVar, MultiPoly, PolynomialSystem
from .quiver import AlgebraElement, PathWord


class UniserialError(UnisvarError):
    pass


@dataclass(frozen=True)
class SimpleSequence:
    """The ordered vertices (e(0), ..., e(l)) of a composition series."""

    vertices: tuple

    def __post_init__(self):
        if len(self.vertices) == 0:
            raise UniserialError("a composition series has at least one entry")
        object.__setattr__(self, "vertices", tuple(self.vertices))

    @property
    def length(self):
        return len(self.vertices) - 1

    @property
    def dimension(self):
        return len(self.vertices)

    def text(self):
        return ",".join(self.vertices)


@dataclass(frozen=True)
class Detour:
    """An arrow leaving the mast at position m and re-entering at ``indices``."""

    arrow: str
    position: int
    indices: tuple

    def variables(self):
        return tuple(DetourVar(i, self.arrow, self.position) for i in self.indices)


def _vertex_sequence(quiver, path):
    seq = [path.source]
    for name in path.arrows:
        seq.append(quiver.arrow(name).target)
    return tuple(seq)


def _embeds(seq, frame):
    """Greedy order-preserving subsequence test."""
    pos = 0
    for v in seq:
        while pos < len(frame) and frame[pos] != v:
            pos += 1
        if pos == len(frame):
            return False
        pos += 1
    return True


class Mast:
    """A path through the sequence, with its subpath frame and detour table."""

    def __init__(self, sys, path, series):
        quiver = sys.quiver
        if _vertex_sequence(quiver, path) != series.vertices:
            raise UniserialError(
                f"path {path.text()} does not pass through {series.text()}"
            )
        if sys.path_in_ideal(path):
            raise UniserialError(f"path {path.text()} lies in the ideal")
        self.sys = sys
        self.path = path
        self.series = series
        self.length = path.length
        self.source = path.source
        self.subpaths = tuple(
            quiver.right_subpath(path, i) for i in range(self.length + 1)
        )
        self.subpath_vectors = tuple(
            sys.vector_of(sys.normal_form_path(p), self.source)
            for p in self.subpaths
        )
        frame = Echelon(sys.field)
        for vec in self.subpath_vectors:
            if not frame.add(vec):
                raise UniserialError(
                    f"right subpaths of {path.text()} are linearly dependent"
                )
        self.codimension = sys.dims[self.source] - (self.length + 1)
        self.detours = self._detour_table()
        self._route_flags = {
            q: _embeds(_vertex_sequence(quiver, q), series.vertices)
            for q in sys.left_module_basis(self.source)
        }
        self._special_basis = None
        self._equations = None

    def _detour_table(self):
        quiver = self.sys.quiver
        table = []
        for m in range(self.length + 1):
            u = self.subpaths[m]
            for arrow in sorted(quiver.arrows_from(u.target), key=lambda a: a.name):
                product = quiver.extend(u, arrow)
                if self.sys.path_in_ideal(product):
                    continue
                if m < self.length and product == self.subpaths[m + 1]:
                    continue
                indices = tuple(
                    s
                    for s in range(m + 1, self.length + 1)
                    if self.subpaths[s].target == arrow.target
                )
                if indices:
                    table.append(Detour(arrow.name, m, indices))
        return tuple(table)

    def variables(self):
        out = []
        for detour in self.detours:
            out.extend(detour.variables())
        return tuple(out)

    def route_basis_paths(self):
        return tuple(q for q, flag in self._route_flags.items() if flag)

    def non_route_basis_paths(self):
        return tuple(q for q, flag in self._route_flags.items() if not flag)

    def text(self):
        return self.path.text()

    def __repr__(self):
        return f"<mast {self.text()} through {self.series.text()}>"


def masts(sys, series):
    """All masts of the sequence, in lexicographic arrow order."""
    quiver = sys.quiver
    for v in series.vertices:
        if not quiver.has_vertex(v):
            raise UniserialError(f"unknown vertex {v}")
    level = [quiver.trivial_path(series.vertices[0])]
    for i in range(1, len(series.vertices)):
        step = sorted(
            quiver.arrows_between(series.vertices[i - 1], series.vertices[i]),
            key=lambda a: a.name,
        )
        level = [quiver.extend(p, a) for p in level for a in step]
        if not level:
            return []
    level.sort(key=PathWord.order_key)
    return [
        Mast(sys, path, series)
        for path in level
        if not sys.path_in_ideal(path)
    ]


def detours(sys, mast):
    return list(mast.detours)


def classify_route(mast, q):
    """True iff q's vertex sequence embeds into the mast's sequence."""
    if q.source != mast.source:
        raise UniserialError(
            f"path {q.text()} does not start at {mast.source}"
        )
    return _embeds(_vertex_sequence(mast.sys.quiver, q), mast.series.vertices)


@dataclass(frozen=True)
class SpecialBasisVector:
    label: PathWord
    vector: tuple
    stage: int
    detour: Detour = None


class SpecialBasis:
    """A complement basis of the subpath frame in the three proof stages.

    Stage 1 vectors are detour products alpha.u with the total length of the
    u_i maximal; stage 2 vectors are non-route basis paths; stage 3 vectors
    are route basis paths.  Together with p_0, ..., p_l they form a basis of
    Lambda.e.
    """

    def __init__(self, mast):
        sys = mast.sys
        quiver = sys.quiver
        e = mast.source
        echelon = Echelon(sys.field)
        for vec in mast.subpath_vectors:
            echelon.add(vec)
        entries = []

        candidates = []
        for detour in mast.detours:
            product = quiver.extend(
                mast.subpaths[detour.position], quiver.arrow(detour.arrow)
            )
            vec = sys.vector_of(sys.normal_form_path(product), e)
            candidates.append((detour, product, vec))
        # Longest u first maximizes the total subpath length greedily;
        # the (length, lex) key on the product breaks ties.
        candidates.sort(key=lambda c: (-c[0].position, c[1].order_key()))
        for detour, product, vec in candidates:
            if echelon.add(vec):
                entries.append(
                    SpecialBasisVector(product, tuple(vec), 1, detour)
                )
        self.m1 = len(entries)

        for q in sorted(mast.non_route_basis_paths(), key=PathWord.order_key):
            vec = sys.vector_of(sys.normal_form_path(q), e)
            if echelon.add(vec):
                entries.append(SpecialBasisVector(q, tuple(vec), 2))
        self.m2 = len(entries)

        for q in sorted(mast.route_basis_paths(), key=PathWord.order_key):
            vec = sys.vector_of(sys.normal_form_path(q), e)
            if echelon.add(vec):
                entries.append(SpecialBasisVector(q, tuple(vec), 3))

        if echelon.dimension != sys.dims[e]:
            raise UniserialError(
                "could not supplement the subpath frame to a basis"
            )
        self.mast = mast
        self.entries = tuple(entries)
        self.size = len(entries)

    def ordered_basis(self):
        """The basis (b_1, ..., b_m, p_0, ..., p_l) as coordinate vectors."""
        return [list(entry.vector) for entry in self.entries] + [
            list(vec) for vec in self.mast.subpath_vectors
        ]

    def labels(self):
        return [entry.label.text() for entry in self.entries] + [
            p.text() for p in self.mast.subpaths
        ]


def special_basis(sys, mast):
    if mast._special_basis is None:
        mast._special_basis = SpecialBasis(mast)
    return mast._special_basis


def reduce_route_symbolic(sys, mast, route):
    """Coefficient polynomials of a route over the subpath frame.

    Returns (q_0, ..., q_l) with route = sum q_r(k) . p_r modulo the
    submodule attached to any point k of the variety.  Follows the
    induction on the longest right subpath: split the route past its
    longest subpath, expand the detour product over the length-maximal
    stage-1 basis, and recurse on the re-entry products.
    """
    field = sys.field
    l = mast.length
    if route.source != mast.source:
        raise UniserialError(
            f"path {route.text()} does not start at {mast.source}"
        )
    if sys.path_in_ideal(route):
        return [MultiPoly.zero(field) for _ in range(l + 1)]
    if not classify_route(mast, route):
        raise UniserialError(f"path {route.text()} is not a route")

    basis = special_basis(sys, mast)
    stage1 = [entry for entry in basis.entries if entry.stage == 1]
    frame_rows = [list(vec) for vec in mast.subpath_vectors] + [
        list(entry.vector) for entry in stage1
    ]
    detour_lookup = {(d.arrow, d.position): d for d in mast.detours}
    memo = {}

    def zero_vector():
        return [MultiPoly.zero(field) for _ in range(l + 1)]

    def add_scaled(acc, vec, poly):
        for r in range(l + 1):
            if not vec[r].is_zero():
                acc[r] = acc[r] + poly * vec[r]

    def descend(word):
        """Reduce the product 'word' (a path from e); zero off routes/ideal."""
        nf = sys.normal_form_path(word)
        if nf.is_zero():
            return zero_vector()
        if not classify_route(mast, word):
            return zero_vector()
        return reduce(word)

    def reduce(word):
        if word in memo:
            return memo[word]
        if word.right_subpath_of(mast.path):
            out = zero_vector()
            out[word.length] = MultiPoly.constant(field, field.one)
            memo[word] = out
            return out
        # Longest right subpath of the mast inside the word.
        d = 0
        while (
            d < min(word.length, l)
            and word.arrows[d] == mast.path.arrows[d]
        ):
            d += 1
        beta = word.arrows[d]
        tail_arrows = word.arrows[d + 1 :]
        detour = detour_lookup.get((beta, d))
        if detour is None:
            raise UniserialError(
                f"route {word.text()} leaves the mast along a non-detour"
            )
        product = sys.quiver.extend(
            mast.subpaths[d], sys.quiver.arrow(beta)
        )
        target_vec = sys.vector_of(sys.normal_form_path(product), mast.source)
        coeffs = solve_in_rowspace(field, frame_rows, target_vec)
        if coeffs is None:
            raise UniserialError(
                "detour product lies outside the stage-1 span"
            )
        scalars = coeffs[: l + 1]
        weights = coeffs[l + 1 :]
        for r, h in enumerate(scalars):
            if not field.is_zero(h) and r <= d:
                raise UniserialError(
                    "length-maximality failed; the variety is empty"
                )
        for s, k in enumerate(weights):
            if not field.is_zero(k) and stage1[s].detour.position < d:
                raise UniserialError(
                    "length-maximality failed; the variety is empty"
                )
        out = zero_vector()
        for r, h in enumerate(scalars):
            if field.is_zero(h):
                continue
            follow = PathWord(
                mast.source,
                word.target,
                mast.path.arrows[:r] + tail_arrows,
            )
            add_scaled(out, descend(follow), MultiPoly.constant(field, h))
        for s, k in enumerate(weights):
            if field.is_zero(k):
                continue
            entry_detour = stage1[s].detour
            for z in entry_detour.indices:
                follow = PathWord(
                    mast.source,
                    word.target,
                    mast.path.arrows[:z] + tail_arrows,
                )
                var = MultiPoly.variable(
                    field,
                    DetourVar(z, entry_detour.arrow, entry_detour.position),
                )
                add_scaled(out, descend(follow), var.scale(k))
        memo[word] = out
        return out

    return reduce(route)


def symbolic_mast_matrices(sys, mast):
    """One (l+1) x (l+1) matrix of polynomials per arrow.

    Column m carries the action on the m-th frame vector: a 1 in row m+1
    for the mast arrow, the variable k[i;alpha;m] in row i for a detour,
    zero everywhere else.
    """
    field = sys.field
    size = mast.length + 1
    matrices = {}
    for arrow in sys.quiver.arrows:
        matrices[arrow.name] = [
            [MultiPoly.zero(field) for _ in range(size)] for _ in range(size)
        ]
    for m, name in enumerate(mast.path.arrows):
        matrices[name][m + 1][m] = MultiPoly.constant(field, field.one)
    for detour in mast.detours:
        for i in detour.indices:
            matrices[detour.arrow][i][detour.position] = MultiPoly.variable(
                field, DetourVar(i, detour.arrow, detour.position)
            )
    return matrices


def _poly_matmul(a, b, zero):
    n = len(a)
    out = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for k in range(n):
            aik = a[i][k]
            if aik.is_zero():
                continue
            for j in range(n):
                if not b[k][j].is_zero():
                    out[i][j] = out[i][j] + aik * b[k][j]
    return out


def _evaluate_word(matrices, word, size, field):
    result = None
    for name in word.arrows:
        step = matrices[name]
        result = step if result is None else _poly_matmul(
            step, result, MultiPoly.zero(field)
        )
    if result is None:
        result = [
            [
                MultiPoly.constant(field, field.one)
                if i == j
                else MultiPoly.zero(field)
                for j in range(size)
            ]
            for i in range(size)
        ]
    return result


def variety_equations(sys, mast):
    """Defining polynomial system of the coordinate variety of the mast.

    Every relation generator and every length-N path is evaluated on the
    symbolic mast matrices; each nonvanishing matrix entry contributes one
    equation.  Products of more than l strictly lower triangular matrices
    vanish identically, so length-N constraints only matter when N <= l.
    """
    if mast._equations is not None:
        return mast._equations
    field = sys.field
    size = mast.length + 1
    matrices = symbolic_mast_matrices(sys, mast)
    constraints = list(sys.relations)
    if sys.nilbound <= mast.length:
        for path in sys.paths_of_length(sys.nilbound):
            constraints.append(AlgebraElement.from_path(field, path))
    polynomials = []
    seen = set()
    for element in constraints:
        total = [
            [MultiPoly.zero(field) for _ in range(size)] for _ in range(size)
        ]
        for word, coeff in sorted(
            element.terms.items(), key=lambda t: t[0].order_key()
        ):
            value = _evaluate_word(matrices, word, size, field)
            for i in range(size):
                for j in range(size):
                    if not value[i][j].is_zero():
                        total[i][j] = total[i][j] + value[i][j].scale(coeff)
        for i in range(size):
            for j in range(size):
                poly = total[i][j]
                if poly.is_zero() or poly in seen:
                    continue
                seen.add(poly)
                polynomials.append(poly)
    mast._equations = PolynomialSystem(mast.variables(), polynomials)
    return mast._equations


def evaluate_point(system, point):
    """True iff every polynomial of the system vanishes at the point."""
    declared = set(system.variables)
    for var in point:
        if var not in declared:
            raise UniserialError(f"unknown variable {var.name}")
    return all(
        poly.field.is_zero(poly.evaluate(point)) for poly in system.polynomials
    )
