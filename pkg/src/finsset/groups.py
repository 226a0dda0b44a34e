"""Finite groups as multiplication tables, simplicial groups, the Moore
complex and its homotopy, and the Dold-Kan model of an Eilenberg-MacLane
simplicial abelian group."""
from __future__ import annotations

import itertools

from .core import (SimplicialError, SimplicialSet, from_labels, point)


class FiniteGroup:
    """Elements 0..order-1 with a multiplication table; 0 need not be the unit."""

    def __init__(self, mul, name=""):
        self.mul = [list(r) for r in mul]
        self.order = len(mul)
        self.name = name
        self.unit = self._find_unit()
        self.inv = [self._find_inv(g) for g in range(self.order)]

    def _find_unit(self):
        for e in range(self.order):
            if all(self.mul[e][g] == g and self.mul[g][e] == g
                   for g in range(self.order)):
                return e
        raise SimplicialError("no unit element")

    def _find_inv(self, g):
        for h in range(self.order):
            if self.mul[g][h] == self.unit and self.mul[h][g] == self.unit:
                return h
        raise SimplicialError("missing inverse")

    def validate(self):
        n = self.order
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]]:
                        raise SimplicialError("multiplication not associative")
        return True

    def is_abelian(self):
        return all(self.mul[a][b] == self.mul[b][a]
                   for a in range(self.order) for b in range(self.order))

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.mul == other.mul

    def __repr__(self):
        return f"FiniteGroup({self.name or self.order})"


def cyclic_group(m):
    return FiniteGroup([[(a + b) % m for b in range(m)] for a in range(m)],
                       name=f"Z/{m}")


def trivial_group():
    return cyclic_group(1)


def symmetric_group_3():
    perms = sorted(itertools.permutations(range(3)))
    index = {p: k for k, p in enumerate(perms)}
    mul = [[index[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]
    return FiniteGroup(mul, name="S3")


def automorphism_group(A):
    """Automorphisms of a finite group as permutations, with composition."""
    n = A.order
    autos = []
    for perm in itertools.permutations(range(n)):
        if perm[A.unit] != A.unit:
            continue
        if all(perm[A.mul[a][b]] == A.mul[perm[a]][perm[b]]
               for a in range(n) for b in range(n)):
            autos.append(perm)
    autos.sort()
    index = {p: k for k, p in enumerate(autos)}
    mul = [[index[tuple(p[q[i]] for i in range(n))] for q in autos] for p in autos]
    return FiniteGroup(mul, name=f"Aut({A.name})"), autos


def element_orders(K):
    out = []
    for g in range(K.order):
        k, cur = 1, g
        while cur != K.unit:
            cur = K.mul[cur][g]
            k += 1
        out.append(k)
    return out


def find_group_isomorphism(G, H):
    """Backtracking search for an isomorphism of multiplication tables;
    returns the assignment list or None.  Intended for small groups."""
    if G.order != H.order:
        return None
    n = G.order
    og, oh = element_orders(G), element_orders(H)
    if sorted(og) != sorted(oh):
        return None
    assign = [None] * n
    assign[G.unit] = H.unit
    used = {H.unit}

    def consistent(g, h):
        for a in range(n):
            if assign[a] is None:
                continue
            c = assign[G.mul[a][g]]
            if c is not None and c != H.mul[assign[a]][h]:
                return False
            c = assign[G.mul[g][a]]
            if c is not None and c != H.mul[h][assign[a]]:
                return False
        return True

    def solve(g):
        while g < n and assign[g] is not None:
            g += 1
        if g == n:
            return all(assign[G.mul[a][b]] == H.mul[assign[a]][assign[b]]
                       for a in range(n) for b in range(n))
        for h in range(n):
            if h in used or oh[h] != og[g]:
                continue
            if not consistent(g, h):
                continue
            assign[g] = h
            used.add(h)
            if solve(g + 1):
                return True
            assign[g] = None
            used.discard(h)
        return False

    if solve(0):
        return list(assign)
    return None


class SimplicialGroup:
    """A simplicial group: underlying simplicial set with levelwise group
    tables; faces and degeneracies are group homomorphisms."""

    def __init__(self, sset, mul, unit, inv, validate=True):
        self.sset = sset
        self.mul = mul      # mul[m][a][b]
        self.unit = unit    # unit[m]
        self.inv = inv      # inv[m][a]
        if validate:
            self.validate()

    @property
    def max_dim(self):
        return self.sset.max_dim

    def level_group(self, m):
        return FiniteGroup(self.mul[m])

    def validate(self):
        X = self.sset
        X.validate()
        for m in range(X.max_dim + 1):
            G = FiniteGroup(self.mul[m])
            G.validate()
            if G.unit != self.unit[m]:
                raise SimplicialError(f"unit table wrong at level {m}")
            if [G.inv[a] for a in range(G.order)] != list(self.inv[m]):
                raise SimplicialError(f"inverse table wrong at level {m}")
        for m in range(1, X.max_dim + 1):
            for i in range(m + 1):
                t = X.faces[m][i]
                for a in range(X.sizes[m]):
                    for b in range(X.sizes[m]):
                        if t[self.mul[m][a][b]] != self.mul[m - 1][t[a]][t[b]]:
                            raise SimplicialError(f"d_{i} not a homomorphism at level {m}")
        for m in range(X.max_dim):
            for i in range(m + 1):
                t = X.degens[m][i]
                for a in range(X.sizes[m]):
                    for b in range(X.sizes[m]):
                        if t[self.mul[m][a][b]] != self.mul[m + 1][t[a]][t[b]]:
                            raise SimplicialError(f"s_{i} not a homomorphism at level {m}")

    def is_abelian(self):
        return all(FiniteGroup(self.mul[m]).is_abelian()
                   for m in range(self.max_dim + 1))


def constant_simplicial_group(G, cap):
    """The constant simplicial group on a finite group."""
    P = point(cap)
    sizes = [G.order] * (cap + 1)
    ident = list(range(G.order))
    faces = [[]] + [[list(ident) for _ in range(m + 1)] for m in range(1, cap + 1)]
    degens = [[list(ident) for _ in range(m + 1)] for m in range(cap)]
    sset = SimplicialSet(sizes, faces, degens, policy=P.policy, validate=False)
    return SimplicialGroup(sset, [G.mul] * (cap + 1), [G.unit] * (cap + 1),
                           [list(G.inv)] * (cap + 1), validate=False)


def moore_complex(G):
    """Moore subgroups N_m = intersection of ker d_i for i >= 1, with d_0 as
    the differential; returns (members per level, differential tables)."""
    X = G.sset
    members = []
    for m in range(X.max_dim + 1):
        e = G.unit[m - 1] if m >= 1 else None
        lv = [g for g in range(X.sizes[m])
              if m == 0 or all(X.faces[m][i][g] == e for i in range(1, m + 1))]
        members.append(lv)
    diffs = [None]
    for m in range(1, X.max_dim + 1):
        diffs.append({g: X.faces[m][0][g] for g in members[m]})
    return members, diffs


def moore_pi(G, n):
    """Homology of the Moore complex at level n as an explicit finite group.
    Requires cap >= n + 1."""
    if G.max_dim < n + 1:
        raise SimplicialError("cap too low for moore_pi")
    members, diffs = moore_complex(G)
    e_low = G.unit[n - 1] if n >= 1 else None
    cycles = [g for g in members[n]
              if n == 0 or diffs[n][g] == e_low]
    if n == 0:
        cycles = list(members[0])
    boundaries = sorted({diffs[n + 1][g] for g in members[n + 1]})
    for b in boundaries:
        if b not in set(cycles):
            raise SimplicialError("Moore differential image not in cycles")
    # cosets of the boundary subgroup inside the cycle subgroup
    bset = set(boundaries)
    mul = G.mul[n]
    inv = G.inv[n]
    seen = {}
    reps = []
    for z in sorted(cycles):
        if z in seen:
            continue
        coset = sorted(mul[z][b] for b in bset) if bset else [z]
        if not bset:
            coset = [z]
        for c in coset:
            seen[c] = len(reps)
        reps.append(min(coset))
    table = [[seen[mul[a][b]] for b in reps] for a in reps]
    return FiniteGroup(table, name=f"pi({n})"), reps


def monotone_surjections(m, n):
    """All monotone surjections [m] -> [n], as value tuples, sorted."""
    if n > m:
        return []
    out = []
    for jumps in itertools.combinations(range(m), n):
        seq = []
        v = 0
        for k in range(m + 1):
            seq.append(v)
            if k in jumps:
                v += 1
        out.append(tuple(seq))
    out.sort()
    return out


def _compose_monotone(eta, theta):
    return tuple(eta[t] for t in theta)


def em_space_dk(A, n, cap):
    """Dold-Kan model of K(A, n): level m is A^(monotone surjections [m]->[n]),
    with structure maps transporting components along epi factorizations."""
    if n < 1:
        raise SimplicialError("degree must be at least 1")
    if not A.is_abelian():
        raise SimplicialError("coefficients must be abelian")
    surjs = [monotone_surjections(m, n) for m in range(cap + 1)]
    levels = [sorted(itertools.product(range(A.order), repeat=len(surjs[m])))
              for m in range(cap + 1)]

    def transport(m_src, theta, elem):
        """Image of elem in level len(theta)-1 along theta : [m'] -> [m_src]."""
        m_dst = len(theta) - 1
        src_index = {s: k for k, s in enumerate(surjs[m_src])}
        out = [A.unit] * len(surjs[m_dst])
        dst_index = {s: k for k, s in enumerate(surjs[m_dst])}
        for k, eta in enumerate(surjs[m_src]):
            comp = _compose_monotone(eta, theta)
            if len(set(comp)) == n + 1:  # surjective
                j = dst_index[comp]
                out[j] = A.mul[out[j]][elem[k]]
        return tuple(out)

    def face_fn(m, i, elem):
        theta = tuple(range(i)) + tuple(range(i + 1, m + 1))
        return transport(m, theta, elem)

    def degen_fn(m, i, elem):
        theta = tuple(range(i + 1)) + tuple(range(i, m + 1))
        return transport(m, theta, elem)

    sset = from_labels(levels, face_fn, degen_fn, validate=False)
    index = [{lab: k for k, lab in enumerate(lv)} for lv in levels]
    mul = []
    unit = []
    inv = []
    for m in range(cap + 1):
        lv = levels[m]
        mul.append([[index[m][tuple(A.mul[a[k]][b[k]] for k in range(len(a)))]
                     for b in lv] for a in lv])
        unit.append(index[m][tuple([A.unit] * len(surjs[m]))])
        inv.append([index[m][tuple(A.inv[a[k]] for k in range(len(a)))] for a in lv])
    return SimplicialGroup(sset, mul, unit, inv, validate=False)


def simplicial_group_map(G, H, level_tables):
    """Check tables define a homomorphism of simplicial groups; return them."""
    for m, t in enumerate(level_tables):
        for a in range(G.sset.sizes[m]):
            for b in range(G.sset.sizes[m]):
                if t[G.mul[m][a][b]] != H.mul[m][t[a]][t[b]]:
                    raise SimplicialError(f"not a homomorphism at level {m}")
    from .core import SimplicialMap
    return SimplicialMap(G.sset, H.sset, level_tables)


def induced_em_map(A, n, cap, phi, model="dk"):
    """Functoriality of the Dold-Kan model in the coefficients: phi is a
    permutation table A -> A (a homomorphism)."""
    G = em_space_dk(A, n, cap)
    labels = G.sset.labels
    index = [{lab: k for k, lab in enumerate(lv)} for lv in labels]
    tables = [[index[m][tuple(phi[c] for c in lab)] for lab in labels[m]]
              for m in range(cap + 1)]
    return simplicial_group_map(G, G, tables)
