"""Operation layer shared by the command line and the HTTP service.

Every operation takes primitive inputs (document text, series text, mast
text, point text) and returns a JSON-ready payload; the two front ends
only differ in transport.
"""

from . import serialize
from .enumeration import (
    DEFAULT_BUDGET,
    count_uniserial_subspaces,
    enumerate_points,
    fibres,
)
from .errors import UnisvarError
from .grassmann import pluecker_coords, recover_point, submodule_from_point
from .modvar import module_from_point, no_degeneration_certificate
from .quiverfile import load_system
from .uniserial import (
    SimpleSequence,
    evaluate_point,
    masts,
    special_basis,
    variety_equations,
)


class OperationError(UnisvarError):
    pass


class Workspace:
    """A parsed quiver document with its reduction system."""

    def __init__(self, quiver_text):
        self.document, self.sys = load_system(quiver_text)

    def series(self, series_text):
        names = [part.strip() for part in series_text.split(",") if part.strip()]
        if not names:
            raise OperationError("empty composition series")
        for name in names:
            if not self.sys.quiver.has_vertex(name):
                raise OperationError(f"unknown vertex {name}")
        return SimpleSequence(tuple(names))

    def mast(self, series, mast_text):
        available = masts(self.sys, series)
        wanted = mast_text.strip()
        for mast in available:
            if mast.text() == wanted:
                return mast
        names = ", ".join(m.text() for m in available) or "none"
        raise OperationError(
            f"{wanted} is not a mast of this series (available: {names})"
        )

    def point(self, mast, point_text):
        point = serialize.parse_point(
            self.sys.field, mast.variables(), point_text or ""
        )
        return point


def op_masts(workspace, series_text):
    series = workspace.series(series_text)
    found = masts(workspace.sys, series)
    return serialize.masts_payload(workspace.sys, series, found)


def op_detours(workspace, series_text, mast_text):
    series = workspace.series(series_text)
    mast = workspace.mast(series, mast_text)
    return serialize.detours_payload(workspace.sys, mast)


def op_equations(workspace, series_text, mast_text):
    series = workspace.series(series_text)
    mast = workspace.mast(series, mast_text)
    system = variety_equations(workspace.sys, mast)
    return serialize.equations_payload(workspace.sys, mast, system)


def op_enumerate(workspace, series_text, mast_text, budget=DEFAULT_BUDGET, jobs=1):
    series = workspace.series(series_text)
    mast = workspace.mast(series, mast_text)
    points = enumerate_points(workspace.sys, mast, budget=budget, jobs=jobs)
    return serialize.points_payload(
        workspace.sys, mast, mast.variables(), points
    )


def op_fibres(
    workspace, series_text, mast_text, budget=DEFAULT_BUDGET, jobs=1, seed=0
):
    series = workspace.series(series_text)
    mast = workspace.mast(series, mast_text)
    partition = fibres(
        workspace.sys, mast, budget=budget, jobs=jobs, seed=seed
    )
    return serialize.fibres_payload(
        workspace.sys, mast, mast.variables(), partition
    )


def _checked_point(workspace, mast, point_text):
    point = workspace.point(mast, point_text)
    system = variety_equations(workspace.sys, mast)
    if not evaluate_point(system, point):
        raise OperationError("point does not satisfy the variety equations")
    return point


def op_module(workspace, series_text, mast_text, point_text):
    series = workspace.series(series_text)
    mast = workspace.mast(series, mast_text)
    point = _checked_point(workspace, mast, point_text)
    module = module_from_point(workspace.sys, mast, point)
    return serialize.module_payload(module)


def op_psi(workspace, series_text, mast_text, point_text):
    series = workspace.series(series_text)
    mast = workspace.mast(series, mast_text)
    point = _checked_point(workspace, mast, point_text)
    space = submodule_from_point(workspace.sys, mast, point, check=False)
    return serialize.subspace_payload(
        workspace.sys, space, mast=mast, point=point, variables=mast.variables()
    )


def op_pluecker(workspace, series_text, mast_text, point_text):
    series = workspace.series(series_text)
    mast = workspace.mast(series, mast_text)
    point = _checked_point(workspace, mast, point_text)
    space = submodule_from_point(workspace.sys, mast, point, check=False)
    basis = special_basis(workspace.sys, mast)
    vector = pluecker_coords(space, basis)
    recovered = recover_point(vector, basis)
    return serialize.pluecker_payload(
        workspace.sys, mast, basis, vector, point, mast.variables(), recovered
    )


def op_guni_count(workspace, series_text, budget=DEFAULT_BUDGET, jobs=1):
    series = workspace.series(series_text)
    result = count_uniserial_subspaces(
        workspace.sys, series, budget=budget, jobs=jobs
    )
    return serialize.chart_count_payload(workspace.sys, series, result)


def op_degen(workspace, left_data, right_data, seed=0):
    left = serialize.module_from_payload(workspace.sys, left_data)
    right = serialize.module_from_payload(workspace.sys, right_data)
    certificate = no_degeneration_certificate(
        workspace.sys, left, right, seed=seed
    )
    if not certificate.verify():
        raise OperationError("certificate failed to re-verify")
    return serialize.certificate_payload(workspace.sys, certificate)
