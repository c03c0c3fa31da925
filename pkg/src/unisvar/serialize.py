"""JSON-ready payloads for every result type.

Scalars serialize as reduced fractions "a/b" over Q and least residues
over GF(q); the field is stated once in the header of each document.
Construction order is deterministic, so serialized output is byte-stable
for fixed inputs.
"""

from .errors import UnisvarError
from .fields import field_from_description
from .modvar import MatrixRep, satisfies_relations
from .poly import parse_var_name


class SerializationError(UnisvarError):
    pass


def scalar(field, value):
    return field.format(value)


def point_payload(field, variables, point):
    """Full assignment in variable order; absent coordinates print as zero."""
    return {
        var.name: scalar(field, point.get(var, field.zero)) for var in variables
    }


def parse_point(field, variables, text):
    """Parse 'k[1;b;0]=2,k[2;c;1]=1/3' against the declared variables."""
    declared = {var.name: var for var in variables}
    point = {}
    text = text.strip()
    if not text:
        return point
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise SerializationError(f"malformed assignment {chunk!r}")
        name, _, value_text = chunk.partition("=")
        var = parse_var_name(name)
        if var.name not in declared:
            raise SerializationError(f"unknown variable {var.name}")
        value = field.parse(value_text.strip())
        if not field.is_zero(value):
            point[declared[var.name]] = value
    return point


def masts_payload(sys, series, mast_list):
    return {
        "field": sys.field.describe(),
        "series": list(series.vertices),
        "masts": [mast.text() for mast in mast_list],
    }


def detours_payload(sys, mast):
    return {
        "field": sys.field.describe(),
        "mast": mast.text(),
        "detours": [
            {
                "arrow": detour.arrow,
                "position": detour.position,
                "indices": list(detour.indices),
                "variables": [var.name for var in detour.variables()],
            }
            for detour in mast.detours
        ],
    }


def polynomial_payload(field, variables, poly):
    index = {var: slot for slot, var in enumerate(variables)}
    monomials = []
    for mono, coeff in poly.sorted_monomials():
        exponents = [0] * len(variables)
        for var, exp in mono:
            exponents[index[var]] = exp
        monomials.append(
            {"coefficient": scalar(field, coeff), "exponents": exponents}
        )
    return monomials


def equations_payload(sys, mast, system):
    return {
        "field": sys.field.describe(),
        "mast": mast.text(),
        "variables": [var.name for var in system.variables],
        "polynomials": [
            polynomial_payload(sys.field, system.variables, poly)
            for poly in system.polynomials
        ],
    }


def points_payload(sys, mast, variables, points):
    return {
        "field": sys.field.describe(),
        "mast": mast.text(),
        "variables": [var.name for var in variables],
        "points": [
            point_payload(sys.field, variables, point) for point in points
        ],
    }


def module_payload(rep):
    arrow_names = sorted(rep.matrices)
    return {
        "field": rep.field.describe(),
        "dimension": rep.dimension,
        "vertices": list(rep.vertices),
        "matrices": {
            name: [
                [scalar(rep.field, value) for value in row]
                for row in rep.matrices[name]
            ]
            for name in arrow_names
        },
    }


def module_from_payload(sys, data):
    """Rebuild and validate a serialized module against the algebra."""
    try:
        field = field_from_description(data["field"])
        vertices = tuple(data["vertices"])
        raw = data["matrices"]
        dimension = int(data["dimension"])
    except (KeyError, TypeError) as exc:
        raise SerializationError(f"malformed module document: {exc}") from None
    if field != sys.field:
        raise SerializationError("module field does not match the quiver file")
    if len(vertices) != dimension:
        raise SerializationError("vertex tags do not match the dimension")
    for v in vertices:
        if not sys.quiver.has_vertex(v):
            raise SerializationError(f"unknown vertex {v}")
    matrices = {}
    for arrow in sys.quiver.arrows:
        rows = raw.get(arrow.name)
        if rows is None:
            raise SerializationError(f"missing matrix for arrow {arrow.name}")
        if len(rows) != dimension or any(len(r) != dimension for r in rows):
            raise SerializationError(f"matrix for {arrow.name} has wrong shape")
        matrices[arrow.name] = [
            [field.parse(str(value)) for value in row] for row in rows
        ]
    rep = MatrixRep(field, vertices, matrices)
    if not rep.respects_quiver(sys.quiver):
        raise SerializationError("matrix entries violate the vertex blocks")
    if not satisfies_relations(sys, rep):
        raise SerializationError("module does not satisfy the relations")
    return rep


def subspace_payload(sys, space, mast=None, point=None, variables=None):
    basis = sys.left_module_basis(space.vertex)
    payload = {"field": sys.field.describe()}
    if mast is not None:
        payload["mast"] = mast.text()
    if point is not None and variables is not None:
        payload["point"] = point_payload(sys.field, variables, point)
    payload.update(
        {
            "vertex": space.vertex,
            "ambient_basis": [p.text() for p in basis],
            "dimension": space.dimension,
            "rows": [
                [scalar(sys.field, value) for value in row] for row in space.rows
            ],
        }
    )
    return payload


def pluecker_payload(sys, mast, basis, vector, point, variables, recovered):
    return {
        "field": sys.field.describe(),
        "mast": mast.text(),
        "point": point_payload(sys.field, variables, point),
        "ordered_basis": basis.labels(),
        "coordinates": [
            {
                "subset": list(subset),
                "value": scalar(sys.field, vector.coordinates[subset]),
            }
            for subset in sorted(vector.coordinates)
        ],
        "on_chart": vector.on_chart,
        "recovered_point": point_payload(sys.field, variables, recovered),
    }


def fibres_payload(sys, mast, variables, partition):
    return {
        "field": sys.field.describe(),
        "mast": mast.text(),
        "fibres": [
            {
                "points": [
                    point_payload(sys.field, variables, point)
                    for point in fibre.points
                ],
                "module": module_payload(fibre.representative),
            }
            for fibre in partition.fibres
        ],
    }


def chart_count_payload(sys, series, result):
    return {
        "field": sys.field.describe(),
        "series": list(series.vertices),
        "total": result.total,
        "charts": [
            {"mast": text, "size": size} for text, size in result.charts
        ],
        "overlaps": [
            {"masts": [left, right], "size": size}
            for left, right, size in result.overlaps
        ],
    }


def certificate_payload(sys, certificate):
    return {
        "field": sys.field.describe(),
        "result": "no_degeneration",
        "left": module_payload(certificate.left),
        "right": module_payload(certificate.right),
        "certificate": _certificate_node_payload(certificate.root),
    }


def _certificate_node_payload(node):
    if node.is_leaf:
        payload = {
            "kind": "leaf",
            "inequality": node.inequality,
            "witness": module_payload(node.witness),
            "dim_hom_left": node.dim_left,
            "dim_hom_right": node.dim_right,
        }
        if node.identity is not None:
            payload["dim_hom_quotient_left"] = node.identity
        return payload
    return {
        "kind": "node",
        "socle_vertex": node.socle_vertex,
        "justification": node.justification,
        "left_quotient": module_payload(node.left_quotient),
        "right_quotient": module_payload(node.right_quotient),
        "child": _certificate_node_payload(node.child),
    }
