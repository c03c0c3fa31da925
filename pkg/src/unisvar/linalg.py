"""Exact dense linear algebra over a coefficient field.

Matrices are lists of lists of field values.  Everything is plain Gaussian
elimination; sizes in this package are desk scale, exactness is the point.
"""


def zeros(field, rows, cols):
    return [[field.zero] * cols for _ in range(rows)]


def identity(field, n):
    m = zeros(field, n, n)
    for i in range(n):
        m[i][i] = field.one
    return m


def matmul(field, a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = zeros(field, rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            c = ai[k]
            if field.is_zero(c):
                continue
            bk = b[k]
            for j in range(cols):
                if not field.is_zero(bk[j]):
                    oi[j] = field.add(oi[j], field.mul(c, bk[j]))
    return out


def mat_sub(field, a, b):
    return [
        [field.sub(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)
    ]


def is_zero_matrix(field, a):
    return all(field.is_zero(x) for row in a for x in row)


def rref(field, matrix):
    """Reduced row echelon form.  Returns (rows, pivot_columns).

    Zero rows are dropped, so the result is the canonical form of the row
    space: two matrices have equal row space iff their rrefs are identical.
    """
    rows = [list(r) for r in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if not field.is_zero(rows[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not field.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [
                    field.sub(x, field.mul(f, y))
                    for x, y in zip(rows[i], rows[r])
                ]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(field, matrix):
    return len(rref(field, matrix)[0])


def reduce_against(field, rows, pivots, vector):
    """Reduce a vector modulo an rref row space; the remainder is zero iff
    the vector lies in the span."""
    v = list(vector)
    for row, c in zip(rows, pivots):
        if not field.is_zero(v[c]):
            f = v[c]
            v = [field.sub(x, field.mul(f, y)) for x, y in zip(v, row)]
    return v


def in_span(field, rows, pivots, vector):
    return all(field.is_zero(x) for x in reduce_against(field, rows, pivots, vector))


def nullspace(field, matrix, ncols=None):
    """Canonical basis of the right nullspace {v : matrix @ v = 0}.

    The basis is returned as rref rows (each row one solution vector), so it
    is a canonical form of the solution space.
    """
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    rows, pivots = rref(field, matrix)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for row, pc in zip(rows, pivots):
            v[pc] = field.neg(row[fc])
        basis.append(v)
    return rref(field, basis)[0] if basis else []


def solve_in_rowspace(field, rows, vector):
    """Coefficients c with vector = sum c_i * rows[i], or None.

    ``rows`` need not be in echelon form; the representation is the one
    found by elimination (unique when the rows are independent).
    """
    if not rows:
        return [] if all(field.is_zero(x) for x in vector) else None
    ncols = len(rows[0])
    # Augment with the identity to track coefficients.
    work = [
        list(r) + [field.one if j == i else field.zero for j in range(len(rows))]
        for i, r in enumerate(rows)
    ]
    echelon, pivots = rref(field, work)
    v = list(vector) + [field.zero] * len(rows)
    for row, c in zip(echelon, pivots):
        if c >= ncols:
            break
        if not field.is_zero(v[c]):
            f = v[c]
            v = [field.sub(x, field.mul(f, y)) for x, y in zip(v, row)]
    if any(not field.is_zero(x) for x in v[:ncols]):
        return None
    return [field.neg(x) for x in v[ncols:]]


class Echelon:
    """Incremental row echelon accumulator for rank and membership tests.

    Each stored row is reduced against all earlier rows and scaled to a
    leading 1, so ``reduce`` zeroes every pivot column of a vector in span.
    """

    def __init__(self, field):
        self.field = field
        self.rows = []
        self.pivots = []

    @property
    def dimension(self):
        return len(self.rows)

    def reduce(self, vector):
        field = self.field
        v = list(vector)
        for row, c in zip(self.rows, self.pivots):
            if not field.is_zero(v[c]):
                f = v[c]
                v = [field.sub(x, field.mul(f, y)) for x, y in zip(v, row)]
        return v

    def contains(self, vector):
        return all(self.field.is_zero(x) for x in self.reduce(vector))

    def add(self, vector):
        """Insert a vector; True iff it enlarged the span."""
        field = self.field
        v = self.reduce(vector)
        pivot = next(
            (c for c, x in enumerate(v) if not field.is_zero(x)), None
        )
        if pivot is None:
            return False
        inv = field.inv(v[pivot])
        v = [field.mul(inv, x) for x in v]
        at = next(
            (i for i, c in enumerate(self.pivots) if c > pivot), len(self.pivots)
        )
        self.rows.insert(at, v)
        self.pivots.insert(at, pivot)
        return True


def det(field, matrix):
    n = len(matrix)
    if n == 0:
        return field.one
    m = [list(r) for r in matrix]
    result = field.one
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if not field.is_zero(m[i][c]):
                pivot = i
                break
        if pivot is None:
            return field.zero
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            result = field.neg(result)
        result = field.mul(result, m[c][c])
        inv = field.inv(m[c][c])
        for i in range(c + 1, n):
            if not field.is_zero(m[i][c]):
                f = field.mul(inv, m[i][c])
                m[i] = [
                    field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[c])
                ]
    return result
