"""Certified fibration predicates: left / covering-left / Kan fibrations and
hypercovers, via exact enumeration of relative horn and matching objects.

A relative horn element for f : Z -> Y at (n, i) is a pair
(horn tuple in Z, n-simplex of Y restricting to its image); the induced map
lambda^n_i(f) sends an n-simplex z to (horn of z, f z).  The relative
matching object M_n(f) uses full boundary tuples instead, with M_0 a point.
Surjectivity of these maps over the requested range is what the certificates
record; a failed certificate carries the least unfilled configuration.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .core import (SimplicialError, compatible_boundary_tuples,
                   compatible_horn_tuples)

LEFT = "left"
COVERING_LEFT = "covering_left"
KAN = "kan"
HYPERCOVER = "hypercover"

KINDS = (LEFT, COVERING_LEFT, KAN, HYPERCOVER)


@dataclass
class Certificate:
    """Machine-checkable verdict for a predicate, with dimension bound."""
    predicate: str
    bound: int
    verdict: bool
    witness: object = None
    witnesses: list = field(default_factory=list)

    def __bool__(self):
        return self.verdict

    def require(self, what=""):
        if not self.verdict:
            raise SimplicialError(
                f"required certificate failed: {self.predicate} <= {self.bound}"
                + (f" ({what})" if what else "") + f", witness {self.witness}")
        return self

    def to_json(self):
        return {"predicate": self.predicate, "bound": self.bound,
                "verdict": "pass" if self.verdict else "fail",
                "witness": self.witness}


def relative_horn(f, n, i):
    """The set Lambda^n_i(f) as a sorted list of (horn tuple in Z, y)."""
    if not (1 <= n <= f.max_dim and 0 <= i <= n):
        raise SimplicialError("relative horn out of range")
    Z, Y = f.dom, f.cod
    horns = compatible_horn_tuples(Z, n, i)
    # index Y_n by the f-image horn
    y_by_horn = {}
    for y in range(Y.sizes[n]):
        y_by_horn.setdefault(Y.horn_tuple(n, y, i), []).append(y)
    out = []
    fm = f.levels[n - 1]
    for h in horns:
        image = tuple(fm[z] for z in h)
        for y in y_by_horn.get(image, []):
            out.append((h, y))
    out.sort()
    return out


def lambda_map(f, n, i):
    """Table z -> index into relative_horn(f, n, i) in canonical order."""
    elems = relative_horn(f, n, i)
    index = {e: k for k, e in enumerate(elems)}
    Z = f.dom
    return elems, [index[(Z.horn_tuple(n, z, i), f.levels[n][z])]
                   for z in range(Z.sizes[n])]


def relative_matching(f, n):
    """The relative matching object M_n(f) as a sorted list of
    (boundary tuple in Z, y); M_0(f) is Y_0 with empty boundary data."""
    Z, Y = f.dom, f.cod
    if n == 0:
        return [((), y) for y in range(Y.sizes[0])]
    if n > f.max_dim:
        raise SimplicialError("relative matching out of range")
    bts = compatible_boundary_tuples(Z, n - 1)
    y_by_bt = {}
    for y in range(Y.sizes[n]):
        y_by_bt.setdefault(Y.boundary_tuple(n, y), []).append(y)
    out = []
    fm = f.levels[n - 1]
    for bt in bts:
        image = tuple(fm[z] for z in bt)
        for y in y_by_bt.get(image, []):
            out.append((bt, y))
    out.sort()
    return out


def mu_map(f, n):
    elems = relative_matching(f, n)
    index = {e: k for k, e in enumerate(elems)}
    Z = f.dom
    if n == 0:
        return elems, [index[((), f.levels[0][z])] for z in range(Z.sizes[0])]
    return elems, [index[(Z.boundary_tuple(n, z), f.levels[n][z])]
                   for z in range(Z.sizes[n])]


def _horn_surjectivity(f, n, i, collect_all=False):
    """Least unfilled (horn, base) at (n, i), or None; list if collect_all."""
    Z = f.dom
    realized = set()
    for z in range(Z.sizes[n]):
        realized.add((Z.horn_tuple(n, z, i), f.levels[n][z]))
    missing = [e for e in relative_horn(f, n, i) if e not in realized]
    if collect_all:
        return missing
    return missing[0] if missing else None


def _matching_surjectivity(f, n, collect_all=False):
    Z = f.dom
    realized = set()
    for z in range(Z.sizes[n]):
        bt = Z.boundary_tuple(n, z) if n >= 1 else ()
        realized.add((bt, f.levels[n][z]))
    missing = [e for e in relative_matching(f, n) if e not in realized]
    if collect_all:
        return missing
    return missing[0] if missing else None


def check_fibration(kind, f, D, exhaustive=False):
    """Certificate that f is a left / covering-left / Kan fibration or a
    hypercover up to dimension D.  Fail witnesses are the least unfilled
    configuration in canonical order."""
    if kind not in KINDS:
        raise SimplicialError(f"unknown fibration kind {kind!r}")
    if D > f.max_dim:
        raise SimplicialError("insufficient cap for requested bound")
    witnesses = []

    def fail(w):
        witness_validates(kind, f, w)
        return Certificate(kind, D, False, witness=w, witnesses=witnesses)

    if kind == HYPERCOVER:
        for n in range(D + 1):
            missing = _matching_surjectivity(f, n, collect_all=exhaustive)
            if exhaustive:
                witnesses.extend({"n": n, "boundary": list(e[0]), "base": e[1]}
                                 for e in missing)
                missing = missing[0] if missing else None
            if missing is not None:
                return fail({"n": n, "boundary": list(missing[0]),
                             "base": missing[1]})
        return Certificate(kind, D, True, witnesses=witnesses)

    if kind in (COVERING_LEFT,):
        if not set(f.levels[0]) == set(range(f.cod.sizes[0])):
            y = min(set(range(f.cod.sizes[0])) - set(f.levels[0]))
            return fail({"n": 0, "vertex": y})
    for n in range(1, D + 1):
        top = n + 1 if kind == KAN else n
        for i in range(top):
            missing = _horn_surjectivity(f, n, i, collect_all=exhaustive)
            if exhaustive:
                witnesses.extend({"n": n, "i": i, "horn": list(e[0]), "base": e[1]}
                                 for e in missing)
                missing = missing[0] if missing else None
            if missing is not None:
                return fail({"n": n, "i": i, "horn": list(missing[0]),
                             "base": missing[1]})
    return Certificate(kind, D, True, witnesses=witnesses)


def witness_validates(kind, f, w):
    """Re-check that a fail witness really is an unfilled configuration."""
    Z = f.dom
    if "vertex" in w:
        if w["vertex"] in set(f.levels[0]):
            raise SimplicialError("witness vertex is actually hit")
        return True
    n = w["n"]
    if "horn" in w:
        h, y = tuple(w["horn"]), w["base"]
        i = w["i"]
        if (h, y) not in set(relative_horn(f, n, i)):
            raise SimplicialError("witness is not a valid horn datum")
        for z in range(Z.sizes[n]):
            if Z.horn_tuple(n, z, i) == h and f.levels[n][z] == y:
                raise SimplicialError("witness horn is actually filled")
        return True
    bt, y = tuple(w["boundary"]), w["base"]
    if (bt, y) not in set(relative_matching(f, n)):
        raise SimplicialError("witness is not a valid matching datum")
    for z in range(Z.sizes[n]):
        realized = Z.boundary_tuple(n, z) if n >= 1 else ()
        if realized == bt and f.levels[n][z] == y:
            raise SimplicialError("witness boundary is actually filled")
    return True


def derived_levelwise_cover(f, D, cert=None):
    """Lemma-derived check: a covering left fibration is a levelwise cover.
    Must pass; a failure indicates an implementation bug."""
    if cert is None:
        cert = check_fibration(COVERING_LEFT, f, D)
    cert.require("derived_levelwise_cover precondition")
    for n in range(D + 1):
        hit = set(f.levels[n])
        if hit != set(range(f.cod.sizes[n])):
            raise SimplicialError(
                f"theorem violation: covering left fibration not surjective at level {n}")
    return Certificate("levelwise_cover", D, True)


class FillerTable:
    """Canonical-order horn/boundary fillers for a map, cached per (n, i).

    Keys are (horn or boundary tuple in Z, base simplex of Y); the chosen
    filler is the least n-simplex of Z realizing the pair.  A lookup miss is
    exactly a surjectivity failure of the corresponding lambda/mu map."""

    def __init__(self, f):
        self.f = f
        self._horn = {}
        self._matching = {}

    def horn_filler(self, n, i, horn, base):
        key = (n, i)
        if key not in self._horn:
            Z = self.f.dom
            table = {}
            for z in range(Z.sizes[n]):
                k = (Z.horn_tuple(n, z, i), self.f.levels[n][z])
                if k not in table:
                    table[k] = z
            self._horn[key] = table
        try:
            return self._horn[key][(tuple(horn), base)]
        except KeyError:
            raise SimplicialError(
                f"no filler for horn {horn} over base {base} at ({n},{i})")

    def boundary_filler(self, n, boundary, base):
        if n not in self._matching:
            Z = self.f.dom
            table = {}
            for z in range(Z.sizes[n]):
                k = (Z.boundary_tuple(n, z) if n >= 1 else (), self.f.levels[n][z])
                if k not in table:
                    table[k] = z
            self._matching[n] = table
        try:
            return self._matching[n][(tuple(boundary), base)]
        except KeyError:
            raise SimplicialError(
                f"no filler for boundary {boundary} over base {base} at n={n}")


def boundary_lift(f, n, boundary, base, cert=None, filler_table=None):
    """Deterministic filler for a square over the boundary inclusion of the
    n-simplex, given a hypercover certificate for f."""
    if cert is None:
        cert = check_fibration(HYPERCOVER, f, n)
    cert.require("boundary_lift needs a hypercover certificate")
    if cert.predicate != HYPERCOVER or cert.bound < n:
        raise SimplicialError("certificate missing or bound too low")
    table = filler_table or FillerTable(f)
    return table.boundary_filler(n, boundary, base)


def fibration_hierarchy(f, D):
    """Certificates for (hypercover, kan, covering_left, left) in one sweep."""
    return {kind: check_fibration(kind, f, D) for kind in
            (HYPERCOVER, KAN, COVERING_LEFT, LEFT)}
