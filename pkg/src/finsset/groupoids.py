"""Simplicial groupoids (groupoid objects in simplicial sets with levelwise
surjective source and target) and X-groups (group objects over a base with a
levelwise surjective projection and identity section).

Conventions: the target map is d^h_0 and the source map is d^h_1; a
composable pair (g, h) has target(g) = source(h) and composes to
``comp(g, h)`` running g first.  For the pair groupoid of a cover f the
morphisms are pairs (a, b) in the same fiber with source a and target b.
"""
from __future__ import annotations

import itertools

from .core import (SimplicialError, SimplicialMap, SimplicialSet, point,
                   terminal_map)
from .fibrations import COVERING_LEFT, check_fibration


class SimplicialGroupoid:
    """objects, morphisms : SimplicialSet; target[m], source[m] : tables
    morphisms -> objects; unit[m] : objects -> morphisms;
    comp[m] : dict (g, h) -> gh on composable pairs; inv[m]."""

    def __init__(self, objects, morphisms, target, source, unit, comp, inv,
                 validate=True):
        self.objects = objects
        self.morphisms = morphisms
        self.target = target
        self.source = source
        self.unit = unit
        self.comp = comp
        self.inv = inv
        if validate:
            self.validate()

    @property
    def max_dim(self):
        return min(self.objects.max_dim, self.morphisms.max_dim)

    def target_map(self):
        return SimplicialMap(self.morphisms, self.objects, self.target)

    def source_map(self):
        return SimplicialMap(self.morphisms, self.objects, self.source)

    def unit_map(self):
        return SimplicialMap(self.objects, self.morphisms, self.unit)

    def validate(self):
        O, M = self.objects, self.morphisms
        O.validate()
        M.validate()
        t = self.target_map()
        s = self.source_map()
        u = self.unit_map()
        for m in range(self.max_dim + 1):
            if set(self.target[m]) != set(range(O.sizes[m])):
                raise SimplicialError(f"target not surjective at level {m}")
            if set(self.source[m]) != set(range(O.sizes[m])):
                raise SimplicialError(f"source not surjective at level {m}")
        for m in range(self.max_dim + 1):
            comp = self.comp[m]
            for g in range(M.sizes[m]):
                for h in range(M.sizes[m]):
                    defined = self.target[m][g] == self.source[m][h]
                    if defined != ((g, h) in comp):
                        raise SimplicialError(
                            f"composition domain wrong at level {m}")
            for (g, h), k in comp.items():
                if self.source[m][k] != self.source[m][g] or \
                   self.target[m][k] != self.target[m][h]:
                    raise SimplicialError(f"composite endpoints wrong at level {m}")
            for x in range(O.sizes[m]):
                e = self.unit[m][x]
                if self.source[m][e] != x or self.target[m][e] != x:
                    raise SimplicialError(f"unit endpoints wrong at level {m}")
            for g in range(M.sizes[m]):
                eg = self.unit[m][self.source[m][g]]
                ge = self.unit[m][self.target[m][g]]
                if comp[(eg, g)] != g or comp[(g, ge)] != g:
                    raise SimplicialError(f"unit law fails at level {m}")
                gi = self.inv[m][g]
                if self.source[m][gi] != self.target[m][g] or \
                   self.target[m][gi] != self.source[m][g]:
                    raise SimplicialError(f"inverse endpoints wrong at level {m}")
                if comp[(g, gi)] != self.unit[m][self.source[m][g]] or \
                   comp[(gi, g)] != self.unit[m][self.target[m][g]]:
                    raise SimplicialError(f"inverse law fails at level {m}")
            by_source = {}
            for l in range(M.sizes[m]):
                by_source.setdefault(self.source[m][l], []).append(l)
            for (g, h), k in comp.items():
                for l in by_source.get(self.target[m][h], []):
                    if comp[(comp[(g, h)], l)] != comp[(g, comp[(h, l)])]:
                        raise SimplicialError(f"associativity fails at level {m}")
        # structure maps are simplicial
        for m in range(1, self.max_dim + 1):
            for i in range(m + 1):
                dM = M.faces[m][i]
                dO = O.faces[m][i]
                for g in range(M.sizes[m]):
                    if self.target[m - 1][dM[g]] != dO[self.target[m][g]] or \
                       self.source[m - 1][dM[g]] != dO[self.source[m][g]]:
                        raise SimplicialError("source/target not simplicial")
                    if dM[self.inv[m][g]] != self.inv[m - 1][dM[g]]:
                        raise SimplicialError("inverse not simplicial")
                for (g, h), k in self.comp[m].items():
                    if self.comp[m - 1][(dM[g], dM[h])] != dM[k]:
                        raise SimplicialError("composition not simplicial")
                for x in range(O.sizes[m]):
                    if dM[self.unit[m][x]] != self.unit[m - 1][dO[x]]:
                        raise SimplicialError("unit not simplicial")
        for m in range(self.max_dim):
            for i in range(m + 1):
                sM = M.degens[m][i]
                sO = O.degens[m][i]
                for g in range(M.sizes[m]):
                    if self.target[m + 1][sM[g]] != sO[self.target[m][g]] or \
                       self.source[m + 1][sM[g]] != sO[self.source[m][g]]:
                        raise SimplicialError("source/target not simplicial (s)")
                    if sM[self.inv[m][g]] != self.inv[m + 1][sM[g]]:
                        raise SimplicialError("inverse not simplicial (s)")
                for (g, h), k in self.comp[m].items():
                    if self.comp[m + 1][(sM[g], sM[h])] != sM[k]:
                        raise SimplicialError("composition not simplicial (s)")
                for x in range(O.sizes[m]):
                    if sM[self.unit[m][x]] != self.unit[m + 1][sO[x]]:
                        raise SimplicialError("unit not simplicial (s)")


def unit_groupoid(Z):
    """Objects and morphisms both Z; only identities."""
    ident = [list(range(s)) for s in Z.sizes]
    comp = [{(g, g): g for g in range(Z.sizes[m])} for m in range(Z.max_dim + 1)]
    return SimplicialGroupoid(Z, Z, ident, [list(t) for t in ident],
                              [list(t) for t in ident], comp,
                              [list(t) for t in ident], validate=False)


def one_object_groupoid(G):
    """A simplicial group as a groupoid over the point."""
    P = point(G.max_dim)
    Z = G.sset
    zeros = [[0] * Z.sizes[m] for m in range(Z.max_dim + 1)]
    comp = [{(a, b): G.mul[m][a][b]
             for a in range(Z.sizes[m]) for b in range(Z.sizes[m])}
            for m in range(Z.max_dim + 1)]
    return SimplicialGroupoid(P, Z, zeros, [list(t) for t in zeros],
                              [[G.unit[m]] for m in range(Z.max_dim + 1)],
                              comp, [list(t) for t in G.inv], validate=False)


def pair_groupoid(f, cert=None):
    """The groupoid Z x_Y Z over Z for a certified covering left fibration f.
    Morphisms are same-fiber pairs (a, b), source a, target b."""
    if cert is None:
        cert = check_fibration(COVERING_LEFT, f, f.max_dim)
    cert.require("pair_groupoid needs a covering left fibration")
    from .core import pullback
    M, pr1, pr2 = pullback(f, f)
    D = M.max_dim
    index = [{lab: k for k, lab in enumerate(M.labels[m])} for m in range(D + 1)]
    source = [list(pr1.levels[m]) for m in range(D + 1)]
    target = [list(pr2.levels[m]) for m in range(D + 1)]
    unit = [[index[m][(z, z)] for z in range(f.dom.sizes[m])] for m in range(D + 1)]
    comp = []
    inv = []
    for m in range(D + 1):
        cm = {}
        for g, (a, b) in enumerate(M.labels[m]):
            for h, (b2, c) in enumerate(M.labels[m]):
                if b == b2:
                    cm[(g, h)] = index[m][(a, c)]
        comp.append(cm)
        inv.append([index[m][(b, a)] for (a, b) in M.labels[m]])
    return SimplicialGroupoid(f.dom, M, target, source, unit, comp, inv)


class XGroup:
    """A group object over a base: projection proj : G -> X levelwise
    surjective, identity section, fiberwise multiplication and inverse."""

    def __init__(self, proj, section, mul, inv, validate=True):
        self.proj = proj        # SimplicialMap G -> X
        self.section = section  # SimplicialMap X -> G
        self.mul = mul          # mul[m] : dict (g, h) -> gh for proj g = proj h
        self.inv = inv          # inv[m] table
        if validate:
            self.validate()

    @property
    def total(self):
        return self.proj.dom

    @property
    def base(self):
        return self.proj.cod

    @property
    def max_dim(self):
        return self.proj.max_dim

    def validate(self):
        G, X = self.total, self.base
        self.proj.validate()
        self.section.validate()
        if not self.proj.is_levelwise_surjective():
            raise SimplicialError("X-group projection must be a levelwise cover")
        for m in range(self.max_dim + 1):
            for x in range(X.sizes[m]):
                if self.proj.levels[m][self.section.levels[m][x]] != x:
                    raise SimplicialError(f"section not split at level {m}")
            p = self.proj.levels[m]
            mul = self.mul[m]
            for g in range(G.sizes[m]):
                for h in range(G.sizes[m]):
                    if (p[g] == p[h]) != ((g, h) in mul):
                        raise SimplicialError(f"multiplication domain wrong at level {m}")
            for (g, h), k in mul.items():
                if p[k] != p[g]:
                    raise SimplicialError(f"multiplication leaves the fiber at level {m}")
            for g in range(G.sizes[m]):
                e = self.section.levels[m][p[g]]
                if mul[(e, g)] != g or mul[(g, e)] != g:
                    raise SimplicialError(f"fiberwise unit law fails at level {m}")
                gi = self.inv[m][g]
                if p[gi] != p[g] or mul[(g, gi)] != e or mul[(gi, g)] != e:
                    raise SimplicialError(f"fiberwise inverse law fails at level {m}")
            by_fiber = {}
            for l in range(G.sizes[m]):
                by_fiber.setdefault(p[l], []).append(l)
            for (g, h), k in mul.items():
                for l in by_fiber.get(p[g], []):
                    if mul[(mul[(g, h)], l)] != mul[(g, mul[(h, l)])]:
                        raise SimplicialError(f"fiberwise associativity fails at level {m}")
        for m in range(1, self.max_dim + 1):
            for i in range(m + 1):
                dG = G.faces[m][i]
                for (g, h), k in self.mul[m].items():
                    if self.mul[m - 1][(dG[g], dG[h])] != dG[k]:
                        raise SimplicialError("multiplication not simplicial")
                for g in range(G.sizes[m]):
                    if dG[self.inv[m][g]] != self.inv[m - 1][dG[g]]:
                        raise SimplicialError("inverse not simplicial")
        for m in range(self.max_dim):
            for i in range(m + 1):
                sG = G.degens[m][i]
                for (g, h), k in self.mul[m].items():
                    if self.mul[m + 1][(sG[g], sG[h])] != sG[k]:
                        raise SimplicialError("multiplication not simplicial (s)")
                for g in range(G.sizes[m]):
                    if sG[self.inv[m][g]] != self.inv[m + 1][sG[g]]:
                        raise SimplicialError("inverse not simplicial (s)")

    def to_groupoid(self):
        """View the X-group as a simplicial groupoid with objects the base."""
        p = [list(t) for t in self.proj.levels]
        return SimplicialGroupoid(self.base, self.total, p,
                                  [list(t) for t in p],
                                  [list(t) for t in self.section.levels],
                                  self.mul, self.inv, validate=False)

    def division(self, m, g, h):
        """The unique k in the fiber with k * h = g."""
        return self.mul[m][(g, self.inv[m][h])]


def xgroup_from_group(G):
    """A simplicial group as an X-group over the point."""
    P = point(G.max_dim)
    proj = terminal_map(G.sset)
    section = SimplicialMap(P, G.sset, [[G.unit[m]] for m in range(G.max_dim + 1)],
                            validate=False)
    mul = [{(a, b): G.mul[m][a][b]
            for a in range(G.sset.sizes[m]) for b in range(G.sset.sizes[m])}
           for m in range(G.max_dim + 1)]
    return XGroup(proj, section, mul, [list(t) for t in G.inv], validate=False)


class GroupoidMorphism:
    """A pair of simplicial maps commuting with all groupoid structure."""

    def __init__(self, dom, cod, on_objects, on_morphisms, validate=True):
        self.dom = dom
        self.cod = cod
        self.on_objects = on_objects
        self.on_morphisms = on_morphisms
        if validate:
            self.validate()

    def validate(self):
        f0, f1 = self.on_objects, self.on_morphisms
        f0.validate()
        f1.validate()
        D = min(self.dom.max_dim, self.cod.max_dim, f0.max_dim, f1.max_dim)
        for m in range(D + 1):
            for g in range(self.dom.morphisms.sizes[m]):
                if self.cod.target[m][f1.levels[m][g]] != \
                   f0.levels[m][self.dom.target[m][g]]:
                    raise SimplicialError("morphism breaks target")
                if self.cod.source[m][f1.levels[m][g]] != \
                   f0.levels[m][self.dom.source[m][g]]:
                    raise SimplicialError("morphism breaks source")
                if f1.levels[m][self.dom.inv[m][g]] != \
                   self.cod.inv[m][f1.levels[m][g]]:
                    raise SimplicialError("morphism breaks inverse")
            for x in range(self.dom.objects.sizes[m]):
                if f1.levels[m][self.dom.unit[m][x]] != \
                   self.cod.unit[m][f0.levels[m][x]]:
                    raise SimplicialError("morphism breaks unit")
            for (g, h), k in self.dom.comp[m].items():
                if self.cod.comp[m][(f1.levels[m][g], f1.levels[m][h])] != \
                   f1.levels[m][k]:
                    raise SimplicialError("morphism breaks composition")
