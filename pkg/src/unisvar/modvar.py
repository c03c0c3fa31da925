"""Matrix representations, Hom spaces, and degeneration-impossibility
certificates.

A point of the module variety is one square matrix per arrow together with
a vertex tag per coordinate.  The normalized slice attached to a mast has
strictly lower triangular matrices whose mast columns step down the basis
chain; its free entries are exactly the detour coordinates, so projecting
them out inverts the construction of the module from a variety point.
"""

import itertools
import random
from collections import Counter

from .errors import BudgetExceededError, UnisvarError
from .linalg import Echelon, det, matmul, nullspace, rank, rref, zeros
from .poly import DetourVar
from .quiver import AlgebraElement
from .uniserial import masts

ISO_SCAN_LIMIT = 10**6


class ModvarError(UnisvarError):
    pass


class MatrixRep:
    """One d x d matrix per arrow over vertex-tagged coordinates."""

    def __init__(self, field, vertices, matrices):
        self.field = field
        self.vertices = tuple(vertices)
        self.matrices = {
            name: [list(row) for row in matrix]
            for name, matrix in matrices.items()
        }

    @property
    def dimension(self):
        return len(self.vertices)

    def dimension_vector(self):
        return Counter(self.vertices)

    def matrix(self, arrow_name):
        return self.matrices[arrow_name]

    def idempotent_matrix(self, vertex):
        d = self.dimension
        out = zeros(self.field, d, d)
        for i, tag in enumerate(self.vertices):
            if tag == vertex:
                out[i][i] = self.field.one
        return out

    def respects_quiver(self, quiver):
        """True iff every matrix entry sits in its vertex block."""
        for arrow in quiver.arrows:
            matrix = self.matrices.get(arrow.name)
            if matrix is None:
                return False
            for i, row in enumerate(matrix):
                for j, value in enumerate(row):
                    if self.field.is_zero(value):
                        continue
                    if (
                        self.vertices[j] != arrow.source
                        or self.vertices[i] != arrow.target
                    ):
                        return False
        return True

    def __eq__(self, other):
        return (
            isinstance(other, MatrixRep)
            and self.vertices == other.vertices
            and self.matrices == other.matrices
        )

    def __repr__(self):
        return f"<rep dim {self.dimension} at {','.join(self.vertices)}>"


def simple_module(sys, vertex):
    field = sys.field
    matrices = {a.name: [[field.zero]] for a in sys.quiver.arrows}
    return MatrixRep(field, (vertex,), matrices)


def evaluate_element(sys, rep, element):
    """The matrix of an algebra element acting on the representation."""
    field = sys.field
    d = rep.dimension
    total = zeros(field, d, d)
    for path, coeff in element.terms.items():
        if path.length == 0:
            value = rep.idempotent_matrix(path.source)
        else:
            value = None
            for name in path.arrows:
                step = rep.matrices[name]
                value = step if value is None else matmul(field, step, value)
        for i in range(d):
            for j in range(d):
                if not field.is_zero(value[i][j]):
                    total[i][j] = field.add(
                        total[i][j], field.mul(coeff, value[i][j])
                    )
    return total


def satisfies_relations(sys, rep):
    """True iff every relation generator and every length-N path acts as zero."""
    field = sys.field
    for relation in sys.relations:
        matrix = evaluate_element(sys, rep, relation)
        if any(not field.is_zero(x) for row in matrix for x in row):
            return False
    for path in sys.paths_of_length(sys.nilbound):
        matrix = evaluate_element(
            sys, rep, AlgebraElement.from_path(field, path)
        )
        if any(not field.is_zero(x) for row in matrix for x in row):
            return False
    return True


def module_from_point(sys, mast, point):
    """The normalized matrix module of a variety point.

    Entry (m+1, m) of the mast arrow matrix is 1; entry (i, m) of a detour
    arrow matrix is the coordinate k[i;alpha;m]; everything else vanishes.
    """
    field = sys.field
    size = mast.length + 1
    matrices = {
        arrow.name: zeros(field, size, size) for arrow in sys.quiver.arrows
    }
    for m, name in enumerate(mast.path.arrows):
        matrices[name][m + 1][m] = field.one
    for detour in mast.detours:
        for i in detour.indices:
            value = point.get(DetourVar(i, detour.arrow, detour.position))
            if value is not None and not field.is_zero(value):
                matrices[detour.arrow][i][detour.position] = value
    return MatrixRep(field, mast.series.vertices, matrices)


def in_standard_slice(rep, mast):
    """Exact shape test for the normalized slice of the mast."""
    field = rep.field
    size = mast.length + 1
    if rep.dimension != size or rep.vertices != mast.series.vertices:
        return False
    allowed = {}
    for m, name in enumerate(mast.path.arrows):
        allowed.setdefault(name, {})[(m + 1, m)] = "one"
    for detour in mast.detours:
        for i in detour.indices:
            allowed.setdefault(detour.arrow, {})[(i, detour.position)] = "free"
    for arrow in mast.sys.quiver.arrows:
        matrix = rep.matrices.get(arrow.name)
        if matrix is None:
            return False
        slots = allowed.get(arrow.name, {})
        for i in range(size):
            for j in range(size):
                kind = slots.get((i, j))
                value = matrix[i][j]
                if kind == "one":
                    if value != field.one:
                        return False
                elif kind is None and not field.is_zero(value):
                    return False
    return True


def point_from_module(rep, mast):
    """Project a slice module back onto its detour coordinates."""
    if not in_standard_slice(rep, mast):
        raise ModvarError("module is not in the normalized slice of the mast")
    field = rep.field
    point = {}
    for detour in mast.detours:
        matrix = rep.matrices[detour.arrow]
        for i in detour.indices:
            value = matrix[i][detour.position]
            if not field.is_zero(value):
                point[DetourVar(i, detour.arrow, detour.position)] = value
    return point


def radical_filtration_of_rep(rep):
    """rref bases of J^i applied to the representation space, down to zero."""
    field = rep.field
    d = rep.dimension
    spaces = [rref(field, [[field.one if j == i else field.zero for j in range(d)] for i in range(d)])]
    while spaces[-1][0]:
        rows, _ = spaces[-1]
        image = []
        for row in rows:
            for matrix in rep.matrices.values():
                vec = [
                    sum_entry(field, matrix, i, row) for i in range(d)
                ]
                if any(not field.is_zero(x) for x in vec):
                    image.append(vec)
        spaces.append(rref(field, image) if image else ([], []))
        if len(spaces) > d + 2:
            raise ModvarError("radical filtration does not terminate")
    return spaces


def sum_entry(field, matrix, i, row):
    total = field.zero
    for j, x in enumerate(row):
        if not field.is_zero(x):
            total = field.add(total, field.mul(matrix[i][j], x))
    return total


def _layer_supports(rep, spaces):
    """Vertex support of each radical layer, as a list of Counters."""
    field = rep.field
    out = []
    for i in range(len(spaces) - 1):
        upper, _ = spaces[i]
        lower, _ = spaces[i + 1]
        support = Counter()
        echelon = Echelon(field)
        for row in lower:
            echelon.add(list(row))
        for v in dict.fromkeys(rep.vertices):
            gained = 0
            for row in upper:
                projected = [
                    x if rep.vertices[j] == v else field.zero
                    for j, x in enumerate(row)
                ]
                if all(field.is_zero(x) for x in projected):
                    continue
                if echelon.add(projected):
                    gained += 1
            if gained:
                support[v] = gained
        out.append(support)
    return out


def rep_radical_series(rep):
    """The vertex sequence of the radical layers when each is simple, else None."""
    spaces = radical_filtration_of_rep(rep)
    supports = _layer_supports(rep, spaces)
    series = []
    for support in supports:
        if sum(support.values()) != 1:
            return None
        series.append(next(iter(support)))
    if len(series) != rep.dimension:
        return None
    return tuple(series)


def is_uniserial_rep(rep):
    return rep_radical_series(rep) is not None


def is_uniserial_with_series(sys, rep, series):
    """Membership in the uniserial locus of the sequence: some mast acts
    nontrivially and the radical layers are simple of the right types."""
    field = sys.field
    if rep.dimension != series.dimension:
        return False
    if rep_radical_series(rep) != series.vertices:
        return False
    for mast in masts(sys, series):
        value = None
        for name in mast.path.arrows:
            step = rep.matrices[name]
            value = step if value is None else matmul(field, step, value)
        if value is not None and any(
            not field.is_zero(x) for row in value for x in row
        ):
            return True
    return False


class HomSpace:
    """The intertwiner space Hom(x, y) with a canonical echelon basis."""

    def __init__(self, field, shape, basis):
        self.field = field
        self.shape = shape
        self.basis = basis

    @property
    def dimension(self):
        return len(self.basis)

    def combination(self, coefficients):
        field = self.field
        rows, cols = self.shape
        out = zeros(field, rows, cols)
        for coeff, matrix in zip(coefficients, self.basis):
            if field.is_zero(coeff):
                continue
            for i in range(rows):
                for j in range(cols):
                    if not field.is_zero(matrix[i][j]):
                        out[i][j] = field.add(
                            out[i][j], field.mul(coeff, matrix[i][j])
                        )
        return out

    def __repr__(self):
        return f"<hom space dim {self.dimension}>"


def hom_space(x, y):
    """Solve T . alpha(x) = alpha(y) . T over all arrows, T block-constrained
    by the vertex tags."""
    field = x.field
    dx, dy = x.dimension, y.dimension
    nvars = dx * dy

    def var(i, j):
        return i * dx + j

    equations = []
    for i in range(dy):
        for j in range(dx):
            if y.vertices[i] != x.vertices[j]:
                row = [field.zero] * nvars
                row[var(i, j)] = field.one
                equations.append(row)
    arrow_names = sorted(set(x.matrices) | set(y.matrices))
    for name in arrow_names:
        ax = x.matrices[name]
        ay = y.matrices[name]
        for i in range(dy):
            for j in range(dx):
                row = [field.zero] * nvars
                for k in range(dx):
                    if not field.is_zero(ax[k][j]):
                        row[var(i, k)] = field.add(
                            row[var(i, k)], ax[k][j]
                        )
                for k in range(dy):
                    if not field.is_zero(ay[i][k]):
                        row[var(k, j)] = field.sub(
                            row[var(k, j)], ay[i][k]
                        )
                if any(not field.is_zero(c) for c in row):
                    equations.append(row)
    if not equations:
        equations = [[field.zero] * nvars]
    solutions = nullspace(field, equations, nvars)
    basis = []
    for solution in solutions:
        matrix = [
            [solution[var(i, j)] for j in range(dx)] for i in range(dy)
        ]
        basis.append(matrix)
    return HomSpace(field, (dy, dx), tuple(basis))


def is_isomorphic(x, y, seed=0):
    """Decide module isomorphism by finding an invertible intertwiner.

    Small coefficient spaces are scanned exhaustively; otherwise the
    determinant of a generic combination is tested, with a deterministic
    interpolation grid as the exact fallback.
    """
    field = x.field
    if x.dimension != y.dimension:
        return False
    if x.dimension_vector() != y.dimension_vector():
        return False
    space = hom_space(x, y)
    n = space.dimension
    d = x.dimension
    if n == 0:
        return d == 0
    q = field.modulus
    if q is not None and q**n <= ISO_SCAN_LIMIT:
        for coeffs in itertools.product(range(q), repeat=n):
            if all(c == 0 for c in coeffs):
                continue
            if rank(field, space.combination(coeffs)) == d:
                return True
        return False
    if q is None:
        rng = random.Random(seed)
        for _ in range(32):
            coeffs = [field.from_int(rng.randint(-9, 9)) for _ in range(n)]
            if not field.is_zero(det(field, space.combination(coeffs))):
                return True
    # Exact fallback: the determinant has degree <= d in each coefficient,
    # so vanishing on a (d+1)-point grid per variable means it is zero.
    if (d + 1) ** n > ISO_SCAN_LIMIT:
        raise BudgetExceededError((d + 1) ** n, ISO_SCAN_LIMIT)
    if q is not None and q < d + 1:
        raise ModvarError(
            "field too small for interpolation and Hom space too large to scan"
        )
    for grid in itertools.product(range(d + 1), repeat=n):
        coeffs = [field.from_int(g) for g in grid]
        if not field.is_zero(det(field, space.combination(coeffs))):
            return True
    return False


def socle_and_quotient(sys, rep):
    """The largest semisimple submodule and the induced quotient module.

    The socle is the joint kernel of all arrow matrices; the quotient acts
    on the non-pivot coordinates of its echelon basis.
    """
    field = rep.field
    d = rep.dimension
    stacked = []
    for arrow in sys.quiver.arrows:
        stacked.extend(rep.matrices[arrow.name])
    if not stacked:
        stacked = [[field.zero] * d]
    socle_rows = nullspace(field, stacked, d)
    socle_reduced, socle_pivots = rref(field, socle_rows)
    simples = []
    for row, pivot in zip(socle_reduced, socle_pivots):
        simples.append(rep.vertices[pivot])
    pivot_set = set(socle_pivots)
    complement = [j for j in range(d) if j not in pivot_set]
    tags = tuple(rep.vertices[j] for j in complement)

    def reduce_mod_socle(vector):
        v = list(vector)
        for row, c in zip(socle_reduced, socle_pivots):
            if not field.is_zero(v[c]):
                f = v[c]
                v = [field.sub(a, field.mul(f, b)) for a, b in zip(v, row)]
        return v

    matrices = {}
    for arrow in sys.quiver.arrows:
        source_matrix = rep.matrices[arrow.name]
        out = zeros(field, len(complement), len(complement))
        for col, j in enumerate(complement):
            image = [source_matrix[i][j] for i in range(d)]
            reduced = reduce_mod_socle(image)
            for rowpos, i in enumerate(complement):
                out[rowpos][col] = reduced[i]
        matrices[arrow.name] = out
    return simples, MatrixRep(field, tags, matrices)


class CertificateLeaf:
    """A witness module violating one of the two Hom inequalities."""

    def __init__(self, witness, inequality, dim_left, dim_right, identity=None):
        self.witness = witness
        self.inequality = inequality
        self.dim_left = dim_left
        self.dim_right = dim_right
        self.identity = identity

    is_leaf = True


class CertificateNode:
    """Socles agree; the impossibility delegates to the socle quotients."""

    justification = "quotient_degeneration"

    def __init__(self, socle_vertex, left_quotient, right_quotient, child):
        self.socle_vertex = socle_vertex
        self.left_quotient = left_quotient
        self.right_quotient = right_quotient
        self.child = child

    is_leaf = False


class DegenerationCertificate:
    """Certifies that the left module does not degenerate to the right one."""

    def __init__(self, sys, left, right, root):
        self.sys = sys
        self.left = left
        self.right = right
        self.root = root

    def verify(self):
        """Recompute every numeric claim in the tree."""
        return _verify_node(self.sys, self.left, self.right, self.root)


def _verify_node(sys, left, right, node):
    if node.is_leaf:
        if node.inequality == "hom_into":
            dim_left = hom_space(node.witness, left).dimension
            dim_right = hom_space(node.witness, right).dimension
        elif node.inequality == "hom_from":
            dim_left = hom_space(left, node.witness).dimension
            dim_right = hom_space(right, node.witness).dimension
        else:
            return False
        if (dim_left, dim_right) != (node.dim_left, node.dim_right):
            return False
        if not dim_left > dim_right:
            return False
        if node.identity is not None:
            _, quotient = socle_and_quotient(sys, left)
            if hom_space(quotient, left).dimension != node.identity:
                return False
            if node.identity != node.dim_right:
                return False
        return True
    socle_left, quotient_left = socle_and_quotient(sys, left)
    socle_right, quotient_right = socle_and_quotient(sys, right)
    if socle_left != [node.socle_vertex] or socle_right != [node.socle_vertex]:
        return False
    if quotient_left != node.left_quotient:
        return False
    if quotient_right != node.right_quotient:
        return False
    return _verify_node(sys, quotient_left, quotient_right, node.child)


def no_degeneration_certificate(sys, left, right, seed=0):
    """Build the certificate tree showing the left uniserial module cannot
    degenerate to the right one.

    Differing socles witness a violation at the socle; agreeing socles with
    non-isomorphic quotients recurse; isomorphic quotients force a strict
    endomorphism count drop, checked through the Hom identity with the
    quotient.
    """
    if left.dimension != right.dimension:
        raise ModvarError("modules have different dimension")
    if not is_uniserial_rep(left) or not is_uniserial_rep(right):
        raise ModvarError("certificate inputs must be uniserial")
    if is_isomorphic(left, right, seed=seed):
        raise ModvarError("inputs are isomorphic")
    root = _certificate_node(sys, left, right, seed)
    return DegenerationCertificate(sys, left, right, root)


def _certificate_node(sys, left, right, seed):
    socle_left, quotient_left = socle_and_quotient(sys, left)
    socle_right, quotient_right = socle_and_quotient(sys, right)
    if socle_left != socle_right:
        witness = simple_module(sys, socle_left[0])
        dim_left = hom_space(witness, left).dimension
        dim_right = hom_space(witness, right).dimension
        if not dim_left > dim_right:
            raise ModvarError("socle witness fails the strict inequality")
        return CertificateLeaf(witness, "hom_into", dim_left, dim_right)
    if not is_isomorphic(quotient_left, quotient_right, seed=seed):
        child = _certificate_node(sys, quotient_left, quotient_right, seed)
        return CertificateNode(
            socle_left[0], quotient_left, quotient_right, child
        )
    dim_end = hom_space(left, left).dimension
    dim_cross = hom_space(right, left).dimension
    dim_quotient = hom_space(quotient_left, left).dimension
    if dim_quotient != dim_cross:
        raise ModvarError("the quotient Hom identity fails to verify")
    if not dim_end > dim_cross:
        raise ModvarError("endomorphism witness fails the strict inequality")
    return CertificateLeaf(
        left, "hom_from", dim_end, dim_cross, identity=dim_quotient
    )
