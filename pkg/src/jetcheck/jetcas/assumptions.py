"""Division-safety bookkeeping.

Jets in a space's declared nonvanishing set (P, U, u, lam, X_z0, x_z0)
may be divided by silently.  Division by anything else is allowed but
recorded into the active assumption scope so verification reports can
list it.  Scopes use a ContextVar, so parallel verification tasks
cannot see each other's records.
"""

from contextlib import contextmanager
from contextvars import ContextVar

_scope: ContextVar = ContextVar("jetcheck_assumptions", default=None)


@contextmanager
def assumption_scope():
    """Collect division assumptions; yields a list that fills in place."""
    collected = []
    token = _scope.set(collected)
    try:
        yield collected
    finally:
        _scope.reset(token)


def record(note):
    collected = _scope.get()
    if collected is not None and note not in collected:
        collected.append(note)


def record_division(space, divisor_poly):
    collected = _scope.get()
    if collected is None:
        return
    if not divisor_poly:
        return
    if len(divisor_poly) == 1:
        ((mono, _),) = divisor_poly.items()
        if all(space.is_invertible_jet(g) for g, _ in mono):
            return
    names = []
    for m in divisor_poly:
        for g, _ in m:
            names.append(space.jet_name(g))
    note = f"division by nonunit polynomial in {{{', '.join(sorted(set(names)) or ['1'])}}}"
    if note not in collected:
        collected.append(note)
