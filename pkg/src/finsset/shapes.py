"""Shapes: finite subcomplexes of a standard simplex, given by nondegenerate
generators (strictly increasing vertex tuples closed under faces), with
constructors for the simplex, its boundary, horns and unions of
codimension-1 faces, plus exact enumeration of simplicial maps into a
simplicial set."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import SimplicialError, SimplicialSet, CoskeletalAbove


@dataclass(frozen=True)
class Shape:
    """Subcomplex of Delta^ambient generated by the given vertex tuples."""
    ambient: int
    gens: tuple  # sorted tuple of strictly increasing vertex tuples

    def __post_init__(self):
        for g in self.gens:
            if not all(0 <= v <= self.ambient for v in g):
                raise SimplicialError("generator vertex out of range")
            if any(a >= b for a, b in zip(g, g[1:])):
                raise SimplicialError("generator not strictly increasing")
        closed = set(self.gens)
        for g in self.gens:
            for i in range(len(g)):
                if len(g) > 1 and g[:i] + g[i + 1:] not in closed:
                    raise SimplicialError("generators not closed under faces")

    @property
    def dim(self):
        return max((len(g) - 1 for g in self.gens), default=-1)

    def generators_by_dim(self, d):
        return [g for g in self.gens if len(g) == d + 1]

    def canonical_generators(self):
        """Generators in the canonical order: lexicographic on vertex tuples."""
        return list(self.gens)

    def contains(self, g):
        return g in set(self.gens)

    def __le__(self, other):
        return set(self.gens) <= set(other.gens)


def _close_under_faces(tops):
    out = set()
    work = list(tops)
    while work:
        g = work.pop()
        if g in out:
            continue
        out.add(g)
        if len(g) > 1:
            for i in range(len(g)):
                work.append(g[:i] + g[i + 1:])
    return tuple(sorted(out))


def simplex_shape(n):
    return Shape(n, _close_under_faces([tuple(range(n + 1))]))


def boundary_shape(n):
    if n == 0:
        return Shape(0, ())
    full = tuple(range(n + 1))
    tops = [full[:i] + full[i + 1:] for i in range(n + 1)]
    return Shape(n, _close_under_faces(tops))


def horn_shape(n, i):
    if not (0 <= i <= n) or n < 1:
        raise SimplicialError("horn index out of range")
    full = tuple(range(n + 1))
    tops = [full[:j] + full[j + 1:] for j in range(n + 1) if j != i]
    return Shape(n, _close_under_faces(tops))


def face_union_shape(n, indices):
    """Union of the codimension-1 faces d_j Delta^n for j in indices."""
    indices = sorted(set(indices))
    if not indices or any(not (0 <= j <= n) for j in indices):
        raise SimplicialError("face index out of range")
    full = tuple(range(n + 1))
    tops = [full[:j] + full[j + 1:] for j in indices]
    return Shape(n, _close_under_faces(tops))


def build_shape(kind, n, extra=None):
    """Named shape constructor used by the CLI and tests."""
    if kind == "simplex":
        return simplex_shape(n)
    if kind == "boundary":
        return boundary_shape(n)
    if kind == "horn":
        return horn_shape(n, extra)
    if kind == "face_union":
        return face_union_shape(n, extra)
    raise SimplicialError(f"unknown shape kind {kind!r}")


def shape_to_sset(shape, cap=None):
    """Realize a shape as a SimplicialSet.  Level m consists of the monotone
    maps [m] -> [ambient] whose image tuple is a generator; ids in
    lexicographic order."""
    if cap is None:
        cap = max(shape.dim, 0)
    gens = set(shape.gens)
    levels = []
    for m in range(cap + 1):
        lv = []
        for seq in itertools.combinations_with_replacement(range(shape.ambient + 1),
                                                           m + 1):
            image = tuple(sorted(set(seq)))
            if image in gens:
                lv.append(seq)
        levels.append(lv)
    index = [{s: k for k, s in enumerate(lv)} for lv in levels]
    sizes = [len(lv) for lv in levels]
    faces = [[]]
    for m in range(1, cap + 1):
        faces.append([[index[m - 1][s[:i] + s[i + 1:]] for s in levels[m]]
                      for i in range(m + 1)])
    degens = []
    for m in range(cap):
        degens.append([[index[m + 1][s[:i + 1] + s[i:]] for s in levels[m]]
                       for i in range(m + 1)])
    return SimplicialSet(sizes, faces, degens, labels=levels, validate=False)


def standard_simplex(n, cap=None):
    return shape_to_sset(simplex_shape(n), cap=cap if cap is not None else n)


class ShapeMap:
    """A simplicial map from a shape into a simplicial set, recorded by the
    images of the nondegenerate generators."""

    def __init__(self, shape, target, assignment):
        self.shape = shape
        self.target = target
        self.assignment = dict(assignment)

    def __getitem__(self, gen):
        return self.assignment[gen]

    def __eq__(self, other):
        return (self.shape == other.shape and self.target == other.target
                and self.assignment == other.assignment)

    def key(self):
        return tuple(self.assignment[g] for g in self.shape.canonical_generators())

    def validate(self):
        X = self.target
        for g in self.shape.gens:
            m = len(g) - 1
            x = self.assignment[g]
            if not (0 <= x < X.sizes[m]):
                raise SimplicialError("generator image out of range")
            for i in range(len(g)):
                if m >= 1:
                    if X.faces[m][i][x] != self.assignment[g[:i] + g[i + 1:]]:
                        raise SimplicialError("shape map breaks a face relation")

    def restrict(self, subshape):
        return ShapeMap(subshape, self.target,
                        {g: self.assignment[g] for g in subshape.gens})


def hom_from_shape(shape, X):
    """Exact enumeration of the simplicial maps shape -> X, in canonical
    (lexicographic-by-generator) order."""
    d = shape.dim
    if d > X.max_dim:
        if isinstance(X.policy, CoskeletalAbove):
            X = X.extended(d)
        else:
            raise SimplicialError("shape dimension exceeds a truncated cap")
    gens = sorted(shape.gens, key=lambda g: (len(g), g))
    out = []
    assignment = {}

    def extend(k):
        if k == len(gens):
            out.append(ShapeMap(shape, X, assignment))
            return
        g = gens[k]
        m = len(g) - 1
        if m == 0:
            cands = range(X.sizes[0])
        else:
            bt = tuple(assignment[g[:i] + g[i + 1:]] for i in range(m + 1))
            cands = X.boundary_index(m).get(bt, [])
        for x in cands:
            assignment[g] = x
            extend(k + 1)
        assignment.pop(g, None)

    extend(0)
    out.sort(key=lambda f: f.key())
    return out


def simplex_map_from_simplex(X, m, x):
    """The shape map Delta^m -> X classifying the m-simplex x."""
    shape = simplex_shape(m)
    assignment = {}
    for g in shape.gens:
        k = len(g) - 1
        cur = x
        # apply outer faces first (descending indices keep lower ones stable)
        missing = [v for v in range(m + 1) if v not in g]
        for v in sorted(missing, reverse=True):
            lvl = m - (len([u for u in missing if u > v]))
            cur = X.faces[lvl][v][cur]
        assignment[g] = cur
    return ShapeMap(shape, X, assignment)
