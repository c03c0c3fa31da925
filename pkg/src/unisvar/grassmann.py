"""Submodules of Lambda.e, chart subspaces, and Pluecker coordinates.

Subspaces are kept in reduced row echelon form over the fixed path basis of
Lambda.e, which makes equality and cross-chart deduplication canonical.
The chart map sends a point of the coordinate variety to the submodule
generated by its detour relations and the non-route basis paths; Pluecker
coordinates are taken relative to a special-basis ordering whose first
wedge subset is the complement block.
"""

from itertools import combinations

from .errors import UnisvarError
from .linalg import Echelon, det, rref, solve_in_rowspace
from .modvar import MatrixRep
from .poly import DetourVar
from .quiver import AlgebraElement
from .uniserial import evaluate_point, masts, variety_equations


class GrassmannError(UnisvarError):
    pass


class Subspace:
    """A subspace of Lambda.e in canonical reduced row echelon form."""

    def __init__(self, sys, vertex, rows):
        self.sys = sys
        self.vertex = vertex
        self.ambient_dimension = sys.dims[vertex]
        reduced, pivots = rref(sys.field, rows)
        self.rows = tuple(tuple(r) for r in reduced)
        self.pivots = tuple(pivots)

    @classmethod
    def from_elements(cls, sys, vertex, elements):
        rows = [
            sys.vector_of(sys.normal_form(elem), vertex) for elem in elements
        ]
        return cls(sys, vertex, rows)

    @property
    def dimension(self):
        return len(self.rows)

    def elements(self):
        return [self.sys.element_from_vector(row, self.vertex) for row in self.rows]

    def contains_vector(self, vector):
        field = self.sys.field
        v = list(vector)
        for row, c in zip(self.rows, self.pivots):
            if not field.is_zero(v[c]):
                f = v[c]
                v = [field.sub(x, field.mul(f, y)) for x, y in zip(v, row)]
        return all(field.is_zero(x) for x in v)

    def key(self):
        """A hashable canonical key; equal iff the subspaces are equal."""
        fmt = self.sys.field.format
        return tuple(tuple(fmt(x) for x in row) for row in self.rows)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.vertex == other.vertex
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.vertex, self.key()))

    def __repr__(self):
        return f"<subspace dim {self.dimension} of Lambda.e({self.vertex})>"


def submodule_closure(sys, vertex, generators):
    """Smallest subspace containing the generators and stable under the
    left action of every arrow and vertex idempotent."""
    echelon = Echelon(sys.field)
    frontier = []
    for gen in generators:
        elem = sys.normal_form(gen)
        if elem.is_zero():
            continue
        if echelon.add(sys.vector_of(elem, vertex)):
            frontier.append(elem)
    while frontier:
        nxt = []
        for elem in frontier:
            products = [
                sys.left_multiply_arrow(arrow, elem)
                for arrow in sys.quiver.arrows
            ]
            products.extend(
                sys.left_multiply_idempotent(v, elem)
                for v in sys.quiver.vertices
            )
            for product in products:
                if product.is_zero():
                    continue
                if echelon.add(sys.vector_of(product, vertex)):
                    nxt.append(product)
        frontier = nxt
    return Subspace(sys, vertex, echelon.rows)


def is_submodule(sys, vertex, space):
    """True iff the subspace is stable under every arrow and idempotent."""
    for elem in space.elements():
        for arrow in sys.quiver.arrows:
            product = sys.left_multiply_arrow(arrow, elem)
            if not product.is_zero() and not space.contains_vector(
                sys.vector_of(product, vertex)
            ):
                return False
        for v in sys.quiver.vertices:
            projected = sys.left_multiply_idempotent(v, elem)
            if not projected.is_zero() and not space.contains_vector(
                sys.vector_of(projected, vertex)
            ):
                return False
    return True


def submodule_from_point(sys, mast, point, check=True):
    """The chart image of a variety point: the submodule generated by the
    detour relations alpha.u - sum k_i(alpha,u) p_i and all non-route basis
    paths.  Verifies that the result complements the subpath frame."""
    field = sys.field
    if check:
        system = variety_equations(sys, mast)
        if not evaluate_point(system, point):
            raise GrassmannError("point does not satisfy the variety equations")
    generators = []
    for detour in mast.detours:
        product = sys.quiver.extend(
            mast.subpaths[detour.position], sys.quiver.arrow(detour.arrow)
        )
        elem = sys.normal_form_path(product)
        for i in detour.indices:
            coeff = point.get(DetourVar(i, detour.arrow, detour.position))
            if coeff is None or field.is_zero(coeff):
                continue
            elem = elem - sys.normal_form_path(mast.subpaths[i]).scale(coeff)
        generators.append(elem)
    for q in mast.non_route_basis_paths():
        generators.append(AlgebraElement.from_path(field, q))
    space = submodule_closure(sys, mast.source, generators)
    if space.dimension != mast.codimension:
        raise GrassmannError(
            f"chart image has dimension {space.dimension}, "
            f"expected {mast.codimension}"
        )
    echelon = Echelon(field)
    for vec in mast.subpath_vectors:
        echelon.add(vec)
    for row in space.rows:
        if not echelon.add(row):
            raise GrassmannError(
                "chart image does not complement the subpath frame"
            )
    return space


class PlueckerVector:
    """Homogeneous coordinates of an m-dimensional subspace.

    Coordinates are indexed by m-element position subsets of the ordered
    basis (b_1, ..., b_m, p_0, ..., p_l), subsets in lexicographic order,
    normalized so the first nonzero coordinate is 1.  The chart predicate
    is nonvanishing of the coordinate on the complement block {0,...,m-1}.
    """

    def __init__(self, field, size, rank, coordinates):
        self.field = field
        self.size = size
        self.rank = rank
        self.coordinates = coordinates

    @property
    def on_chart(self):
        lead = tuple(range(self.rank))
        return lead in self.coordinates

    def coordinate(self, subset):
        return self.coordinates.get(tuple(subset), self.field.zero)

    def __repr__(self):
        return f"<pluecker {len(self.coordinates)} nonzero coords>"


def pluecker_coords(space, basis):
    """Pluecker coordinates of the subspace relative to the special basis."""
    sys = basis.mast.sys
    field = sys.field
    m = basis.size
    if space.dimension != m:
        raise GrassmannError(
            f"subspace has dimension {space.dimension}, expected {m}"
        )
    frame = basis.ordered_basis()
    coords_rows = []
    for row in space.rows:
        coeffs = solve_in_rowspace(field, frame, list(row))
        if coeffs is None:
            raise GrassmannError("subspace does not lie in the ambient space")
        coords_rows.append(coeffs)
    size = len(frame)
    coordinates = {}
    scale = None
    for subset in combinations(range(size), m):
        minor = [[coords_rows[i][c] for c in subset] for i in range(m)]
        value = det(field, minor)
        if field.is_zero(value):
            continue
        if scale is None:
            scale = field.inv(value)
        coordinates[subset] = field.mul(scale, value)
    if scale is None:
        raise GrassmannError("all Pluecker coordinates vanish")
    return PlueckerVector(field, size, m, coordinates)


def recover_point(pluecker, basis):
    """Read the detour coordinates back off the Pluecker coordinates.

    The stage-1 coordinates appear, up to sign, on the subsets that swap
    one complement vector for a subpath; the remaining detour coordinates
    follow linearly by expanding their products over the stage-1 frame.
    """
    mast = basis.mast
    sys = mast.sys
    field = sys.field
    m = basis.size
    if not pluecker.on_chart:
        raise GrassmannError(
            "subspace is not on the chart of this mast"
        )
    point = {}
    stage1 = [entry for entry in basis.entries if entry.stage == 1]
    for slot, entry in enumerate(basis.entries):
        if entry.stage != 1:
            break
        detour = entry.detour
        sign = field.one if (m - slot) % 2 == 0 else field.neg(field.one)
        for j in detour.indices:
            subset = tuple(r for r in range(m) if r != slot) + (m + j,)
            value = pluecker.coordinate(tuple(sorted(subset)))
            coeff = field.mul(sign, value)
            if not field.is_zero(coeff):
                point[DetourVar(j, detour.arrow, detour.position)] = coeff
    covered = {(e.detour.arrow, e.detour.position) for e in stage1}
    frame_rows = [list(vec) for vec in mast.subpath_vectors] + [
        list(entry.vector) for entry in stage1
    ]
    for detour in mast.detours:
        if (detour.arrow, detour.position) in covered:
            continue
        product = sys.quiver.extend(
            mast.subpaths[detour.position], sys.quiver.arrow(detour.arrow)
        )
        target = sys.vector_of(sys.normal_form_path(product), mast.source)
        coeffs = solve_in_rowspace(field, frame_rows, target)
        if coeffs is None:
            raise GrassmannError("detour product outside the stage-1 span")
        l = mast.length
        for i in detour.indices:
            value = coeffs[i]
            for s, entry in enumerate(stage1):
                weight = coeffs[l + 1 + s]
                if field.is_zero(weight):
                    continue
                if i in entry.detour.indices:
                    var = DetourVar(i, entry.detour.arrow, entry.detour.position)
                    value = field.add(
                        value, field.mul(weight, point.get(var, field.zero))
                    )
            if not field.is_zero(value):
                point[DetourVar(i, detour.arrow, detour.position)] = value
    return point


class QuotientRejection:
    """Why Lambda.e/C fails to be uniserial with the requested series."""

    def __init__(self, layer, dimension, support):
        self.layer = layer
        self.dimension = dimension
        self.support = support

    def describe(self):
        return {
            "layer": self.layer,
            "dimension": self.dimension,
            "support": self.support,
        }

    def __repr__(self):
        return (
            f"<rejection: radical layer {self.layer} has dimension "
            f"{self.dimension}, support {self.support}>"
        )


class UniserialQuotient:
    """Successful quotient: the matrix module plus the masts surviving in it."""

    def __init__(self, module, mast_paths):
        self.module = module
        self.mast_paths = mast_paths


def uniserial_quotient(sys, vertex, space, series):
    """The quotient Lambda.e/C as matrices on a radical-adapted basis.

    Returns a UniserialQuotient when each radical layer of the quotient is
    one dimensional and supported at the series vertex, and a
    QuotientRejection naming the first failing layer otherwise.
    """
    field = sys.field
    if not is_submodule(sys, vertex, space):
        raise GrassmannError("the subspace is not a submodule")
    l = series.length
    if sys.dims[vertex] - space.dimension != l + 1:
        raise GrassmannError(
            f"codimension {sys.dims[vertex] - space.dimension}, "
            f"expected {l + 1}"
        )
    radical = sys.radical_filtration(vertex)
    filtration = []
    for i in range(l + 2):
        rad_rows = radical[i][0] if i < len(radical) else []
        filtration.append(
            Subspace(sys, vertex, [list(r) for r in rad_rows] + [list(r) for r in space.rows])
        )
    for i in range(l + 1):
        layer_dim = filtration[i].dimension - filtration[i + 1].dimension
        support = _layer_support(sys, vertex, filtration[i], filtration[i + 1])
        if layer_dim != 1 or support != {series.vertices[i]: 1}:
            return QuotientRejection(i, layer_dim, support)
    if filtration[l + 1].dimension != space.dimension:
        extra = filtration[l + 1].dimension - space.dimension
        support = _layer_support(sys, vertex, filtration[l + 1], space)
        return QuotientRejection(l + 1, extra, support)

    reps = []
    for i in range(l + 1):
        below = Echelon(field)
        for row in filtration[i + 1].rows:
            below.add(list(row))
        chosen = None
        for row in filtration[i].rows:
            projected = sys.left_multiply_idempotent(
                series.vertices[i], sys.element_from_vector(list(row), vertex)
            )
            if projected.is_zero():
                continue
            vec = sys.vector_of(projected, vertex)
            if not below.contains(vec):
                chosen = projected
                break
        if chosen is None:
            raise GrassmannError("failed to pick a radical-adapted basis")
        reps.append(chosen)

    solver_rows = [sys.vector_of(rep, vertex) for rep in reps] + [
        list(row) for row in space.rows
    ]
    matrices = {}
    for arrow in sys.quiver.arrows:
        matrix = [[field.zero] * (l + 1) for _ in range(l + 1)]
        for j, rep in enumerate(reps):
            product = sys.left_multiply_arrow(arrow, rep)
            if product.is_zero():
                continue
            coeffs = solve_in_rowspace(
                field, solver_rows, sys.vector_of(product, vertex)
            )
            if coeffs is None:
                raise GrassmannError("quotient action escaped the basis")
            for i in range(l + 1):
                matrix[i][j] = coeffs[i]
        matrices[arrow.name] = matrix
    module = MatrixRep(field, series.vertices, matrices)

    surviving = []
    for mast in masts(sys, series):
        vec = sys.vector_of(sys.normal_form_path(mast.path), vertex)
        if not space.contains_vector(vec):
            surviving.append(mast.path)
    return UniserialQuotient(module, tuple(surviving))


def _layer_support(sys, vertex, upper, lower):
    support = {}
    for v in sys.quiver.vertices:
        echelon = Echelon(sys.field)
        for row in lower.rows:
            echelon.add(list(row))
        gained = 0
        for row in upper.rows:
            projected = sys.left_multiply_idempotent(
                v, sys.element_from_vector(list(row), vertex)
            )
            if projected.is_zero():
                continue
            if echelon.add(sys.vector_of(projected, vertex)):
                gained += 1
        if gained:
            support[v] = gained
    return support


def quotient_is_uniserial(sys, vertex, space, series):
    """True iff Lambda.e/C is uniserial with the requested series."""
    try:
        result = uniserial_quotient(sys, vertex, space, series)
    except GrassmannError:
        return False
    return isinstance(result, UniserialQuotient)
