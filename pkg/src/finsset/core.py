"""Finite simplicial sets stored as levelwise face/degeneracy tables.

Simplices at each level m are the integers 0..size-1 (canonical ids, in
construction order).  Degenerate simplices are stored explicitly.  Every
object carries a dimension cap ``max_dim`` and a policy: ``Truncated``
(nothing exists above the cap) or ``CoskeletalAbove(d)`` (levels above the
cap can be recomputed on demand by boundary-tuple enumeration).

All values are immutable after construction; every operation is a pure
function of its inputs, and ids are assigned deterministically.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass


class SimplicialError(ValueError):
    """Raised when tables violate the simplicial identities or a cap is exceeded."""


TRUNCATED = "truncated"


@dataclass(frozen=True)
class CoskeletalAbove:
    d: int

    def __repr__(self):
        return f"CoskeletalAbove({self.d})"


class SimplicialSet:
    """A dimension-capped simplicial set.

    sizes[m]            number of m-simplices, 0 <= m <= max_dim
    faces[m][i]         table level m -> level m-1 for d_i, 1 <= m, 0 <= i <= m
    degens[m][i]        table level m -> level m+1 for s_i, m < max_dim, 0 <= i <= m
    policy              TRUNCATED or CoskeletalAbove(d)
    labels[m][x]        optional construction payload per simplex (not serialized)
    """

    def __init__(self, sizes, faces, degens, policy=TRUNCATED, labels=None,
                 validate=True):
        self.sizes = [int(s) for s in sizes]
        self.faces = faces
        self.degens = degens
        self.policy = policy
        self.labels = labels
        self._cache = {}
        if validate:
            self.validate()

    # -- basic views -------------------------------------------------------

    @property
    def max_dim(self):
        return len(self.sizes) - 1

    def size(self, m):
        return self.sizes[m]

    def face(self, m, i, x):
        return self.faces[m][i][x]

    def degen(self, m, i, x):
        return self.degens[m][i][x]

    def boundary_tuple(self, m, x):
        """The tuple (d_0 x, ..., d_m x) for an m-simplex, m >= 1."""
        return tuple(self.faces[m][i][x] for i in range(m + 1))

    def horn_tuple(self, m, x, skip):
        return tuple(self.faces[m][i][x] for i in range(m + 1) if i != skip)

    def __eq__(self, other):
        if not isinstance(other, SimplicialSet):
            return NotImplemented
        return (self.sizes == other.sizes and self.faces == other.faces
                and self.degens == other.degens and self.policy == other.policy)

    def __repr__(self):
        return f"SimplicialSet(sizes={self.sizes}, policy={self.policy!r})"

    # -- validation --------------------------------------------------------

    def validate(self):
        D = self.max_dim
        if len(self.faces) != D + 1 or len(self.degens) != max(D, 0):
            raise SimplicialError("table shape mismatch with max_dim")
        for m in range(1, D + 1):
            if len(self.faces[m]) != m + 1:
                raise SimplicialError(f"level {m}: expected {m + 1} face maps")
            for i in range(m + 1):
                t = self.faces[m][i]
                if len(t) != self.sizes[m] or any(
                        not (0 <= v < self.sizes[m - 1]) for v in t):
                    raise SimplicialError(f"face table d_{i} at level {m} not total")
        for m in range(D):
            if len(self.degens[m]) != m + 1:
                raise SimplicialError(f"level {m}: expected {m + 1} degeneracy maps")
            for i in range(m + 1):
                t = self.degens[m][i]
                if len(t) != self.sizes[m] or any(
                        not (0 <= v < self.sizes[m + 1]) for v in t):
                    raise SimplicialError(f"degeneracy s_{i} at level {m} not total")
        self._check_identities()
        if isinstance(self.policy, CoskeletalAbove):
            self._check_coskeletal()

    def _check_identities(self):
        D = self.max_dim
        # d_i d_j = d_{j-1} d_i  (i < j)
        for m in range(2, D + 1):
            for j in range(m + 1):
                for i in range(j):
                    for x in range(self.sizes[m]):
                        if self.faces[m - 1][i][self.faces[m][j][x]] != \
                           self.faces[m - 1][j - 1][self.faces[m][i][x]]:
                            raise SimplicialError(
                                f"d_{i} d_{j} != d_{j-1} d_{i} at level {m}, simplex {x}")
        # s_i s_j = s_{j+1} s_i  (i <= j)
        for m in range(D - 1):
            for j in range(m + 1):
                for i in range(j + 1):
                    for x in range(self.sizes[m]):
                        if self.degens[m + 1][j + 1][self.degens[m][i][x]] != \
                           self.degens[m + 1][i][self.degens[m][j][x]]:
                            raise SimplicialError(
                                f"s_{i} s_{j} != s_{j+1} s_{i} at level {m}, simplex {x}")
        # d_i s_j relations
        for m in range(D):
            for j in range(m + 1):
                for i in range(m + 2):
                    for x in range(self.sizes[m]):
                        y = self.faces[m + 1][i][self.degens[m][j][x]]
                        if i == j or i == j + 1:
                            expect = x
                        elif i < j:
                            expect = self.degens[m - 1][j - 1][self.faces[m][i][x]]
                        else:
                            expect = self.degens[m - 1][j][self.faces[m][i - 1][x]]
                        if y != expect:
                            raise SimplicialError(
                                f"d_{i} s_{j} identity fails at level {m}, simplex {x}")

    def _check_coskeletal(self):
        d = self.policy.d
        if not (0 <= d <= self.max_dim):
            raise SimplicialError("coskeletal bound out of range")
        for m in range(d + 1, self.max_dim + 1):
            tuples = compatible_boundary_tuples(self, m - 1)
            seen = {}
            for x in range(self.sizes[m]):
                bt = self.boundary_tuple(m, x)
                if bt in seen:
                    raise SimplicialError(
                        f"coskeletal level {m}: boundary tuple realized twice")
                seen[bt] = x
            if len(seen) != len(tuples):
                raise SimplicialError(
                    f"coskeletal level {m}: {len(seen)} simplices vs "
                    f"{len(tuples)} compatible boundary tuples")

    # -- cached indices ----------------------------------------------------

    def boundary_index(self, m):
        """dict boundary-tuple -> id at level m (m >= 1).  Multi-valued as list."""
        key = ("bidx", m)
        if key not in self._cache:
            idx = {}
            for x in range(self.sizes[m]):
                idx.setdefault(self.boundary_tuple(m, x), []).append(x)
            self._cache[key] = idx
        return self._cache[key]

    def face_preimages(self, m, i):
        """dict value -> sorted ids x at level m with d_i x = value."""
        key = ("fidx", m, i)
        if key not in self._cache:
            idx = {}
            for x in range(self.sizes[m]):
                idx.setdefault(self.faces[m][i][x], []).append(x)
            self._cache[key] = idx
        return self._cache[key]

    def degenerate_ids(self, m):
        """Set of degenerate m-simplices (images of some s_i)."""
        key = ("deg", m)
        if key not in self._cache:
            out = set()
            if m >= 1:
                for i in range(m):
                    out.update(self.degens[m - 1][i])
            self._cache[key] = out
        return self._cache[key]

    # -- Eilenberg-Zilber decomposition -------------------------------------

    def ez_decompose(self, m, x):
        """Unique (word, (m0, y)) with x = s_{i_k} ... s_{i_1} y, y nondegenerate,
        i_1 < ... < i_k, word = (i_k, ..., i_1) in application order from y."""
        word = []
        level = m
        cur = x
        while level >= 1 and cur in self.degenerate_ids(level):
            # peel the largest applicable degeneracy index to normalize the word
            found = None
            for i in range(level - 1, -1, -1):
                y = self.faces[level][i][cur]
                if self.degens[level - 1][i][y] == cur:
                    found = (i, y)
                    break
            if found is None:
                raise SimplicialError("degenerate simplex without a section")
            word.append(found[0])
            cur = found[1]
            level -= 1
        word.reverse()  # now ascending: s_{word[-1]} applied last
        return tuple(reversed(word)), (level, cur)

    def apply_degeneracy_word(self, level, x, word):
        """Apply s_{i_1}, then s_{i_2}, ... for word = (i_k, ..., i_1)."""
        cur = x
        m = level
        for i in reversed(word):
            cur = self.degens[m][i][cur]
            m += 1
        return cur

    # -- cap management ------------------------------------------------------

    def truncated(self, new_cap):
        if new_cap > self.max_dim:
            raise SimplicialError("truncation above cap")
        sizes = self.sizes[:new_cap + 1]
        faces = [list(f) for f in self.faces[:new_cap + 1]]
        degens = [list(s) for s in self.degens[:new_cap]]
        labels = self.labels[:new_cap + 1] if self.labels is not None else None
        return SimplicialSet(sizes, faces, degens, policy=self.policy,
                             labels=labels, validate=False)

    def extended(self, new_cap):
        """Coskeletal extension up to new_cap; requires CoskeletalAbove policy."""
        if new_cap <= self.max_dim:
            return self
        if not isinstance(self.policy, CoskeletalAbove):
            raise SimplicialError("cannot extend a truncated simplicial set")
        sizes = list(self.sizes)
        faces = [list(map(list, f)) for f in self.faces]
        degens = [list(map(list, s)) for s in self.degens]
        labels = [list(l) for l in self.labels] if self.labels is not None else None
        for m in range(self.max_dim + 1, new_cap + 1):
            cur = SimplicialSet(sizes, faces, degens, policy=TRUNCATED, validate=False)
            tuples = compatible_boundary_tuples(cur, m - 1)
            index = {t: k for k, t in enumerate(tuples)}
            sizes.append(len(tuples))
            faces.append([[t[i] for t in tuples] for i in range(m + 1)])
            # degeneracies from level m-1 into the new level
            new_degens = []
            for i in range(m):
                col = []
                for x in range(sizes[m - 1]):
                    bt = []
                    for j in range(m + 1):
                        if j == i or j == i + 1:
                            bt.append(x)
                        elif j < i:
                            bt.append(degens[m - 2][i - 1][faces[m - 1][j][x]])
                        else:
                            bt.append(degens[m - 2][i][faces[m - 1][j - 1][x]])
                    col.append(index[tuple(bt)])
                new_degens.append(col)
            degens.append(new_degens)
            if labels is not None:
                labels.append(list(tuples))
        return SimplicialSet(sizes, faces, degens, policy=self.policy,
                             labels=labels, validate=False)


def compatible_boundary_tuples(X, m):
    """All tuples (t_0, ..., t_{m+1}) of m-simplices with d_i t_j = d_{j-1} t_i
    for i < j, i.e. the maps from the boundary of an (m+1)-simplex.
    For m = 0 every pair of vertices qualifies."""
    slots = m + 2
    if m == 0:
        verts = range(X.sizes[0])
        return [t for t in itertools.product(verts, repeat=2)]
    out = []
    partial = [None] * slots

    def extend(j):
        if j == slots:
            out.append(tuple(partial))
            return
        candidates = None
        for i in range(j):
            want = X.faces[m][j - 1][partial[i]]
            pre = X.face_preimages(m, i).get(want, [])
            if candidates is None:
                candidates = pre
            else:
                s = set(candidates)
                candidates = [c for c in pre if c in s]
            if not candidates:
                return
        if candidates is None:
            candidates = range(X.sizes[m])
        for c in candidates:
            partial[j] = c
            extend(j + 1)
        partial[j] = None

    extend(0)
    out.sort()
    return out


def compatible_horn_tuples(X, n, skip):
    """All tuples (t_j)_{j != skip} of (n-1)-simplices satisfying the horn
    compatibilities, i.e. the maps from the horn Lambda^n_skip."""
    if n == 1:
        return [(v,) for v in range(X.sizes[0])]
    m = n - 1
    slots = [j for j in range(n + 1) if j != skip]
    out = []
    assigned = {}

    def extend(pos):
        if pos == len(slots):
            out.append(tuple(assigned[j] for j in slots))
            return
        j = slots[pos]
        candidates = None
        for i in slots[:pos]:
            # i < j always since slots ascend
            want = X.faces[m][j - 1][assigned[i]]
            pre = X.face_preimages(m, i).get(want, [])
            if candidates is None:
                candidates = pre
            else:
                s = set(candidates)
                candidates = [c for c in pre if c in s]
            if not candidates:
                return
        if candidates is None:
            candidates = range(X.sizes[m])
        for c in candidates:
            assigned[j] = c
            extend(pos + 1)
        assigned.pop(j, None)

    extend(0)
    out.sort()
    return out


# -- maps --------------------------------------------------------------------


class SimplicialMap:
    """A simplicial map, stored as per-level tables up to min of the caps."""

    def __init__(self, dom, cod, levels, validate=True):
        self.dom = dom
        self.cod = cod
        self.levels = [list(t) for t in levels]
        if validate:
            self.validate()

    @property
    def max_dim(self):
        return len(self.levels) - 1

    def __call__(self, m, x):
        return self.levels[m][x]

    def __eq__(self, other):
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return self.levels == other.levels and self.dom == other.dom \
            and self.cod == other.cod

    def validate(self):
        D = self.max_dim
        if D > min(self.dom.max_dim, self.cod.max_dim):
            raise SimplicialError("map defined above a cap")
        for m in range(D + 1):
            t = self.levels[m]
            if len(t) != self.dom.sizes[m] or any(
                    not (0 <= v < self.cod.sizes[m]) for v in t):
                raise SimplicialError(f"map table at level {m} not total")
        for m in range(1, D + 1):
            for i in range(m + 1):
                for x in range(self.dom.sizes[m]):
                    if self.cod.faces[m][i][self.levels[m][x]] != \
                       self.levels[m - 1][self.dom.faces[m][i][x]]:
                        raise SimplicialError(f"map does not commute with d_{i} at level {m}")
        for m in range(D):
            for i in range(m + 1):
                for x in range(self.dom.sizes[m]):
                    if self.cod.degens[m][i][self.levels[m][x]] != \
                       self.levels[m + 1][self.dom.degens[m][i][x]]:
                        raise SimplicialError(f"map does not commute with s_{i} at level {m}")

    def is_levelwise_surjective(self):
        return all(len(set(t)) == self.cod.sizes[m]
                   for m, t in enumerate(self.levels))

    def is_levelwise_bijective(self):
        return all(len(set(t)) == len(t) == self.cod.sizes[m]
                   for m, t in enumerate(self.levels))

    def compose(self, other):
        """self after other: other : A -> B, self : B -> C gives A -> C."""
        D = min(self.max_dim, other.max_dim)
        levels = [[self.levels[m][other.levels[m][x]]
                   for x in range(other.dom.sizes[m])] for m in range(D + 1)]
        return SimplicialMap(other.dom, self.cod, levels, validate=False)

    def inverse(self):
        if not self.is_levelwise_bijective():
            raise SimplicialError("not bijective")
        levels = []
        for m, t in enumerate(self.levels):
            inv = [0] * len(t)
            for x, y in enumerate(t):
                inv[y] = x
            levels.append(inv)
        return SimplicialMap(self.cod, self.dom, levels, validate=False)


def identity_map(X):
    return SimplicialMap(X, X, [list(range(s)) for s in X.sizes], validate=False)


def point(cap):
    """The terminal simplicial set up to the cap (one simplex per level)."""
    sizes = [1] * (cap + 1)
    faces = [[]] + [[[0] for _ in range(m + 1)] for m in range(1, cap + 1)]
    degens = [[[0] for _ in range(m + 1)] for m in range(cap)]
    return SimplicialSet(sizes, faces, degens, policy=CoskeletalAbove(0),
                         validate=False)


def terminal_map(X):
    P = point(X.max_dim)
    return SimplicialMap(X, P, [[0] * s for s in X.sizes], validate=False)


# -- limits --------------------------------------------------------------------


def _paired_sset(X, Y, pairs_per_level):
    """Internal: build a simplicial set whose m-simplices are the given
    (x, y) pairs with componentwise structure maps, plus both projections."""
    D = len(pairs_per_level) - 1
    index = [{p: k for k, p in enumerate(lv)} for lv in pairs_per_level]
    sizes = [len(lv) for lv in pairs_per_level]
    faces = [[]]
    for m in range(1, D + 1):
        faces.append([[index[m - 1][(X.faces[m][i][p[0]], Y.faces[m][i][p[1]])]
                       for p in pairs_per_level[m]] for i in range(m + 1)])
    degens = []
    for m in range(D):
        degens.append([[index[m + 1][(X.degens[m][i][p[0]], Y.degens[m][i][p[1]])]
                        for p in pairs_per_level[m]] for i in range(m + 1)])
    P = SimplicialSet(sizes, faces, degens, labels=pairs_per_level, validate=False)
    pr1 = SimplicialMap(P, X, [[p[0] for p in lv] for lv in pairs_per_level],
                        validate=False)
    pr2 = SimplicialMap(P, Y, [[p[1] for p in lv] for lv in pairs_per_level],
                        validate=False)
    return P, pr1, pr2


def product(X, Y):
    """Levelwise product with componentwise structure maps."""
    if X.max_dim != Y.max_dim:
        raise SimplicialError("cap mismatch; truncate explicitly first")
    pairs = [sorted(itertools.product(range(X.sizes[m]), range(Y.sizes[m])))
             for m in range(X.max_dim + 1)]
    return _paired_sset(X, Y, pairs)


def pullback(f, g):
    """Fiber product of f : X -> Z and g : Y -> Z with projections."""
    if f.cod is not g.cod and f.cod != g.cod:
        raise SimplicialError("pullback targets differ")
    X, Y = f.dom, g.dom
    D = min(f.max_dim, g.max_dim)
    pairs = [sorted((x, y)
                    for x in range(X.sizes[m]) for y in range(Y.sizes[m])
                    if f.levels[m][x] == g.levels[m][y])
             for m in range(D + 1)]
    XD = X if X.max_dim == D else X.truncated(D)
    YD = Y if Y.max_dim == D else Y.truncated(D)
    return _paired_sset(XD, YD, pairs)


def quotient(X, pairs):
    """Quotient by the smallest simplicial equivalence relation containing
    ``pairs`` (a list of (level, a, b)).  Returns (Q, projection)."""
    parent = [list(range(s)) for s in X.sizes]

    def find(m, x):
        while parent[m][x] != x:
            parent[m][x] = parent[m][parent[m][x]]
            x = parent[m][x]
        return x

    def union(m, a, b):
        ra, rb = find(m, a), find(m, b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        parent[m][rb] = ra
        return True

    work = [(m, a, b) for (m, a, b) in pairs]
    while work:
        m, a, b = work.pop()
        if not union(m, a, b):
            continue
        if m >= 1:
            for i in range(m + 1):
                work.append((m - 1, X.faces[m][i][a], X.faces[m][i][b]))
        if m < X.max_dim:
            for i in range(m + 1):
                work.append((m + 1, X.degens[m][i][a], X.degens[m][i][b]))

    reps = [sorted({find(m, x) for x in range(X.sizes[m])})
            for m in range(X.max_dim + 1)]
    new_id = [{r: k for k, r in enumerate(lv)} for lv in reps]
    proj_levels = [[new_id[m][find(m, x)] for x in range(X.sizes[m])]
                   for m in range(X.max_dim + 1)]
    sizes = [len(lv) for lv in reps]
    faces = [[]]
    for m in range(1, X.max_dim + 1):
        faces.append([[proj_levels[m - 1][X.faces[m][i][r]] for r in reps[m]]
                      for i in range(m + 1)])
    degens = []
    for m in range(X.max_dim):
        degens.append([[proj_levels[m + 1][X.degens[m][i][r]] for r in reps[m]]
                       for i in range(m + 1)])
    labels = [[tuple(sorted(x for x in range(X.sizes[m]) if find(m, x) == r))
               for r in reps[m]] for m in range(X.max_dim + 1)]
    Q = SimplicialSet(sizes, faces, degens, labels=labels, validate=False)
    proj = SimplicialMap(X, Q, proj_levels, validate=False)
    # closure guarantees well-definedness; validate to be safe
    Q.validate()
    proj.validate()
    return Q, proj


def from_labels(level_labels, face_fn, degen_fn, policy=TRUNCATED, validate=True):
    """Build a SimplicialSet from hashable labels per level and callables
    face_fn(m, i, label) / degen_fn(m, i, label) returning labels."""
    levels = [sorted(lv) for lv in level_labels]
    index = [{lab: k for k, lab in enumerate(lv)} for lv in levels]
    D = len(levels) - 1
    sizes = [len(lv) for lv in levels]
    faces = [[]]
    for m in range(1, D + 1):
        faces.append([[index[m - 1][face_fn(m, i, lab)] for lab in levels[m]]
                      for i in range(m + 1)])
    degens = []
    for m in range(D):
        degens.append([[index[m + 1][degen_fn(m, i, lab)] for lab in levels[m]]
                       for i in range(m + 1)])
    return SimplicialSet(sizes, faces, degens, policy=policy, labels=levels,
                         validate=validate)


def find_isomorphism(X, Y):
    """Search for a simplicial isomorphism X -> Y; returns the map or None.

    Backtracking level by level, constrained by faces into lower levels.
    Intended for desk-scale comparisons (model independence, E-M models)."""
    if X.sizes != Y.sizes:
        return None
    D = X.max_dim
    assign = [[None] * X.sizes[m] for m in range(D + 1)]

    def candidates(m, x, used):
        if m == 0:
            return [y for y in range(Y.sizes[0]) if y not in used]
        bt = tuple(assign[m - 1][v] for v in X.boundary_tuple(m, x))
        return [y for y in Y.boundary_index(m).get(bt, []) if y not in used]

    def solve(m, x, used):
        if m > D:
            try:
                SimplicialMap(X, Y, assign)
                return True
            except SimplicialError:
                return False
        if x == X.sizes[m]:
            return solve(m + 1, 0, set())
        forced = None
        if m >= 1 and x in X.degenerate_ids(m):
            word, (m0, y0) = X.ez_decompose(m, x)
            forced = Y.apply_degeneracy_word(m0, assign[m0][y0], word)
        cands = [forced] if forced is not None else candidates(m, x, used)
        for y in cands:
            if y in used:
                continue
            assign[m][x] = y
            if solve(m, x + 1, used | {y}):
                return True
            assign[m][x] = None
        return False

    if not solve(0, 0, set()):
        return None
    return SimplicialMap(X, Y, assign)
