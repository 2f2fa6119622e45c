"""Braid closures as zero sets of holomorphic polynomials on S^3, and the
Bateman electromagnetic fields whose null lines contain them."""

import json

from ._core import (
    BraidWord,
    Polynomial,
    QplinkError,
    bateman_field,
    closure_permutation,
    components,
    contact_paper_formula,
    figure_eight_polynomial,
    gauss_linking,
    h_trace,
    inverse_projection,
    legendrian_residual,
    parse_braid,
    projection,
    torus_pair_h,
)
from . import _core

__all__ = [
    "BraidWord",
    "Polynomial",
    "QplinkError",
    "bateman_field",
    "bound",
    "closure_permutation",
    "components",
    "construct",
    "contact_check",
    "contact_paper_formula",
    "em_verify",
    "field_line",
    "figure_eight_polynomial",
    "gauss_linking",
    "h_trace",
    "inverse_projection",
    "legendrian_residual",
    "null_lines",
    "parse_braid",
    "projection",
    "report",
    "stability",
    "torus_pair_h",
    "verify_link",
    "word_invariants",
]


def _config(options):
    return json.dumps(options) if options else ""


def word_invariants(braid):
    return json.loads(_core._word_invariants(braid))


def bound(braid):
    return json.loads(_core._degree_bounds(braid))


def construct(braid="", lambda_=None, **options):
    """Build f~ for a braid word; returns (Polynomial, report dict).

    Without lambda_ the scale is auto-tuned. Extra keyword options follow
    the pipeline configuration keys (strands, parametrization, t_count, ...).
    """
    cfg = dict(options, braid=braid)
    if lambda_ is not None:
        cfg["lambda"] = lambda_
    poly, rep = _core._construct(_config(cfg))
    return poly, json.loads(rep)


def verify_link(poly, tune=False, **options):
    return json.loads(_core._verify_link(poly, _config(options), tune))


def em_verify(h, points=200, seed=1, **options):
    return json.loads(_core._em_verify(h, _config(dict(options, em_points=points, seed=seed))))


def null_lines(h, t=0.0, box=3.0, res=64, **options):
    """Null lines at time t; returns (summary dict, list of point lists)."""
    rep, curves = _core._null_lines(h, t, _config(dict(options, null_box=box, null_resolution=res)))
    return json.loads(rep), curves


def stability(h, times=(-1.0, -0.5, 0.0, 0.5, 1.0), box=14.0, res=96, **options):
    cfg = dict(options, times=list(times), null_box=box, null_resolution=res)
    return json.loads(_core._stability(h, _config(cfg)))


def field_line(h, start, which="E", t=0.0, length=100.0, max_step=2.5e-4):
    """Integrates a field line; returns (summary dict, points, field times)."""
    rep, pts, tau = _core._field_line(h, which, tuple(start), t, length, max_step)
    return json.loads(rep), pts, tau


def contact_check(points=500, seed=1, time=None, **options):
    cfg = dict(options, contact_points=points, seed=seed)
    return json.loads(_core._contact_check(_config(cfg), time))


def report(poly, **options):
    return json.loads(_core._report(poly, _config(options)))
