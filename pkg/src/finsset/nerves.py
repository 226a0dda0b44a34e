"""Nerve and universal bundle of a simplicial groupoid, in two forms: the
functorial composites Tot(N(-)) and Tot(Dec_1(N(-))), and the explicit
chain-coordinate presentations whose face and degeneracy formulas are

  wbar level n:  chains (a, g_{n-1}, ..., g_0), a an object at level n,
                 g_k a morphism at level k, source g_{n-1} = d^v_0 a,
                 source g_k = target(d^v_0 g_{k+1});
  w    level n:  chains (g_n, ..., g_0) of morphisms with the same chaining.

The coordinate bijection sending a chain to its staircase of composable
strings realizes the agreement between the two forms; it is constructed and
certified on demand."""
from __future__ import annotations

from .core import (SimplicialError, SimplicialMap, SimplicialSet, from_labels)
from .bisimplicial import dec1, levelwise_nerve, tot, tot_map
from .groups import SimplicialGroup


def wbar(groupoid, cap):
    """Nerve via Tot of the levelwise nerve."""
    if groupoid.max_dim < cap:
        raise SimplicialError("groupoid cap too low for wbar")
    N = levelwise_nerve(groupoid, cap)
    return tot(N, cap=cap)


def w_with_projection(groupoid, cap):
    """Universal bundle via Tot of the decalage, with projection to wbar."""
    if groupoid.max_dim < cap:
        raise SimplicialError("groupoid cap too low for w")
    N = levelwise_nerve(groupoid, cap + 1)
    D, nat = dec1(N)
    total = tot(D, cap=cap)
    base = tot(nat.cod, cap=cap)
    proj = tot_map(nat, dom_tot=total, cod_tot=base, cap=cap)
    return total, base, proj


def w(groupoid, cap):
    return w_with_projection(groupoid, cap)[0]


# -- explicit chain coordinates -------------------------------------------------


def _wbar_chains(G, cap):
    """Chains (a, g_{n-1}, ..., g_0) per level, sorted."""
    O, M = G.objects, G.morphisms
    by_source = []
    for n in range(cap + 1):
        d = {}
        for g in range(M.sizes[n]):
            d.setdefault(G.source[n][g], []).append(g)
        by_source.append(d)
    levels = []
    for n in range(cap + 1):
        chains = []

        def extend(chain, k, anchor):
            # anchor: required source of the next morphism, at level k
            if k < 0:
                chains.append(tuple(chain))
                return
            for g in by_source[k].get(anchor, []):
                chain.append(g)
                if k >= 1:
                    gv = M.faces[k][0][g]
                    nxt = G.target[k - 1][gv]
                else:
                    nxt = None
                extend(chain, k - 1, nxt)
                chain.pop()

        for a in range(O.sizes[n]):
            if n == 0:
                chains.append((a,))
                continue
            extend([a], n - 1, O.faces[n][0][a])
        chains.sort()
        levels.append(chains)
    return levels


def wbar_explicit(groupoid, cap):
    """Nerve with the lemma's face and degeneracy formulas, verbatim."""
    G = groupoid
    O, M = G.objects, G.morphisms
    levels = _wbar_chains(G, cap)

    def face(n, i, c):
        a, gs = c[0], c[1:]  # gs[j] = g_{n-1-j}, descending levels
        if i == 0:
            g = gs[0]
            return (G.target[n - 1][g],) + gs[1:]
        if i == n:
            out = [O.faces[n][n][a]]
            for j in range(n - 1):  # g_{n-1} ... g_1
                lev = n - 1 - j
                out.append(M.faces[lev][lev][gs[j]])
            return tuple(out)
        out = [O.faces[n][i][a]]
        for j in range(i - 1):  # g_{n-1} ... g_{n-i+1} get d^v_{i-1} ... d^v_1
            lev = n - 1 - j
            out.append(M.faces[lev][i - 1 - j][gs[j]])
        g_top = gs[i - 1]       # g_{n-i}
        lev = n - i
        comp = G.comp[lev - 1][(M.faces[lev][0][g_top], gs[i])]
        out.append(comp)
        out.extend(gs[i + 1:])
        return tuple(out)

    def degen(n, i, c):
        a, gs = c[0], c[1:]
        if i == 0:
            return (O.degens[n][0][a], G.unit[n][a]) + gs
        out = [O.degens[n][i][a]]
        for j in range(i - 1):  # s^v_{i-1} ... s^v_1 on g_{n-1} ... g_{n-i+1}
            lev = n - 1 - j
            out.append(M.degens[lev][i - 1 - j][gs[j]])
        g = gs[i - 1]           # g_{n-i}
        lev = n - i
        out.append(M.degens[lev][0][g])
        out.append(G.unit[lev][G.target[lev][g]])
        out.extend(gs[i:])
        return tuple(out)

    return from_labels(levels, face, degen, validate=True)


def _w_chains(G, cap):
    O, M = G.objects, G.morphisms
    by_source = []
    for n in range(cap + 1):
        d = {}
        for g in range(M.sizes[n]):
            d.setdefault(G.source[n][g], []).append(g)
        by_source.append(d)
    levels = []
    for n in range(cap + 1):
        chains = []

        def extend(chain, k, anchor):
            if k < 0:
                chains.append(tuple(chain))
                return
            cands = range(M.sizes[k]) if anchor is None else \
                by_source[k].get(anchor, [])
            for g in cands:
                chain.append(g)
                if k >= 1:
                    gv = M.faces[k][0][g]
                    nxt = G.target[k - 1][gv]
                else:
                    nxt = None
                extend(chain, k - 1, nxt)
                chain.pop()

        extend([], n, None)
        chains.sort()
        levels.append(chains)
    return levels


def w_explicit_with_projection(groupoid, cap):
    """Universal bundle in chain coordinates, with the explicit projection
    (g_n, ..., g_0) -> (target g_n, g_{n-1}, ..., g_0)."""
    G = groupoid
    M = G.morphisms

    levels = _w_chains(G, cap)

    def face(n, i, c):
        # gs[j] = g_{n-j}
        gs = c
        if i == n:
            out = []
            for j in range(n):  # g_n ... g_1 get d^v_n ... d^v_1
                lev = n - j
                out.append(M.faces[lev][lev][gs[j]])
            return tuple(out)
        out = []
        for j in range(i):      # g_n ... g_{n-i+1} get d^v_i ... d^v_1
            lev = n - j
            out.append(M.faces[lev][i - j][gs[j]])
        g_top = gs[i]           # g_{n-i}
        lev = n - i
        comp = G.comp[lev - 1][(M.faces[lev][0][g_top], gs[i + 1])]
        out.append(comp)
        out.extend(gs[i + 2:])
        return tuple(out)

    def degen(n, i, c):
        gs = c
        out = []
        for j in range(i):
            lev = n - j
            out.append(M.degens[lev][i - j][gs[j]])
        g = gs[i]               # g_{n-i}
        lev = n - i
        out.append(M.degens[lev][0][g])
        out.append(G.unit[lev][G.target[lev][g]])
        out.extend(gs[i + 1:])
        return tuple(out)

    total = from_labels(levels, face, degen, validate=True)
    base = wbar_explicit(groupoid, cap)
    base_index = [{c: k for k, c in enumerate(base.labels[n])}
                  for n in range(cap + 1)]
    proj_levels = []
    for n in range(cap + 1):
        tab = []
        for c in levels[n]:
            image = (G.target[n][c[0]],) + tuple(c[1:])
            tab.append(base_index[n][image])
        proj_levels.append(tab)
    proj = SimplicialMap(total, base, proj_levels)
    return total, base, proj


def w_explicit(groupoid, cap):
    return w_explicit_with_projection(groupoid, cap)[0]


# -- agreement between the two forms --------------------------------------------


def wbar_agreement_iso(groupoid, cap, explicit=None, functorial=None):
    """The coordinate bijection wbar_explicit -> wbar sending a chain to its
    staircase (b_0, ..., b_n), b_k the k-string of iterated d^v_0 images.
    Certified to be a simplicial bijection."""
    G = groupoid
    M = G.morphisms
    E = explicit if explicit is not None else wbar_explicit(G, cap)
    F = functorial if functorial is not None else wbar(G, cap)
    N = levelwise_nerve(G, cap)
    nerve_index = [[{t: k for k, t in enumerate(N.labels[m][n])}
                    for n in range(G.max_dim + 1)] for m in range(cap + 1)]
    F_index = [{t: k for k, t in enumerate(F.labels[n])} for n in range(cap + 1)]
    levels = []
    for n in range(cap + 1):
        tab = []
        for c in E.labels[n]:
            a, gs = c[0], list(c[1:])
            staircase = [nerve_index[0][n][(a,)]]
            for k in range(1, n + 1):
                string = []
                for pos in range(k):
                    # entry pos of b_k is d^v_0^(k-1-pos) g_{n-1-pos}
                    g = gs[pos]
                    lev = n - 1 - pos
                    for _ in range(k - 1 - pos):
                        g = M.faces[lev][0][g]
                        lev -= 1
                    string.append(g)
                staircase.append(nerve_index[k][n - k][tuple(string)])
            tab.append(F_index[n][tuple(staircase)])
        levels.append(tab)
    iso = SimplicialMap(E, F, levels)
    if not iso.is_levelwise_bijective():
        raise SimplicialError("wbar agreement map is not a bijection")
    return iso


def w_agreement_iso(groupoid, cap, explicit=None, functorial=None):
    """Same staircase bijection for the universal bundle."""
    G = groupoid
    M = G.morphisms
    E = explicit if explicit is not None else w_explicit(G, cap)
    F = functorial if functorial is not None else w(G, cap)
    N = levelwise_nerve(G, cap + 1)
    D, _ = dec1(N)
    F_index = [{t: k for k, t in enumerate(F.labels[n])} for n in range(cap + 1)]
    D_index = [[{t: k for k, t in enumerate(D.labels[m][n])}
                for n in range(G.max_dim + 1)] for m in range(cap + 1)]
    levels = []
    for n in range(cap + 1):
        tab = []
        for c in E.labels[n]:
            gs = list(c)  # gs[j] = g_{n-j}
            staircase = []
            for k in range(n + 1):
                string = []
                for pos in range(k + 1):
                    g = gs[pos]
                    lev = n - pos
                    for _ in range(k - pos):
                        g = M.faces[lev][0][g]
                        lev -= 1
                    string.append(g)
                staircase.append(D_index[k][n - k][tuple(string)])
            tab.append(F_index[n][tuple(staircase)])
        levels.append(tab)
    iso = SimplicialMap(E, F, levels)
    if not iso.is_levelwise_bijective():
        raise SimplicialError("w agreement map is not a bijection")
    return iso


def wbar_functorial_map(morphism, cap):
    """wbar applied to a groupoid morphism (functorial form)."""
    N_dom = levelwise_nerve(morphism.dom, cap)
    N_cod = levelwise_nerve(morphism.cod, cap)
    f0, f1 = morphism.on_objects, morphism.on_morphisms
    cod_index = [[{t: k for k, t in enumerate(N_cod.labels[m][n])}
                  for n in range(len(N_cod.labels[m]))]
                 for m in range(cap + 1)]
    levels = []
    for m in range(cap + 1):
        row = []
        for n in range(len(N_dom.labels[m])):
            tab = []
            for t in N_dom.labels[m][n]:
                if m == 0:
                    image = (f0.levels[n][t[0]],)
                else:
                    image = tuple(f1.levels[n][g] for g in t)
                tab.append(cod_index[m][n][image])
            row.append(tab)
        levels.append(row)
    from .bisimplicial import BiSimplicialMap
    bmap = BiSimplicialMap(N_dom, N_cod, levels)
    return tot_map(bmap, cap=cap)


def wbar_explicit_map(morphism, cap, dom_explicit=None, cod_explicit=None):
    """wbar applied to a groupoid morphism, in chain coordinates."""
    E_dom = dom_explicit if dom_explicit is not None else \
        wbar_explicit(morphism.dom, cap)
    E_cod = cod_explicit if cod_explicit is not None else \
        wbar_explicit(morphism.cod, cap)
    f0, f1 = morphism.on_objects, morphism.on_morphisms
    cod_index = [{c: k for k, c in enumerate(E_cod.labels[n])}
                 for n in range(cap + 1)]
    levels = []
    for n in range(cap + 1):
        tab = []
        for c in E_dom.labels[n]:
            image = (f0.levels[n][c[0]],) + tuple(
                f1.levels[n - 1 - j][g] for j, g in enumerate(c[1:]))
            tab.append(cod_index[n][image])
        levels.append(tab)
    return SimplicialMap(E_dom, E_cod, levels)


def nerve_augmentation(f, cap, nerve_sset=None, cert=None):
    """The natural augmentation wbar(Z/Y) -> Y through f on the leading
    coordinate, for a covering left fibration f."""
    from .fibrations import COVERING_LEFT, check_fibration
    from .groupoids import pair_groupoid
    if cert is None:
        cert = check_fibration(COVERING_LEFT, f, cap)
    cert.require("nerve_augmentation needs a covering left fibration")
    gpd = pair_groupoid(f, cert=cert)
    W = nerve_sset if nerve_sset is not None else wbar_explicit(gpd, cap)
    levels = []
    for n in range(cap + 1):
        tab = []
        for c in W.labels[n]:
            tab.append(f.levels[n][c[0]])
        levels.append(tab)
    return SimplicialMap(W, f.cod if f.cod.max_dim == cap else f.cod.truncated(cap),
                         levels)


def wbar_group(H, cap):
    """wbar of an abelian simplicial group, as a simplicial abelian group
    (componentwise multiplication on chains)."""
    from .groupoids import one_object_groupoid
    if not H.is_abelian():
        raise SimplicialError("componentwise group structure needs abelian input")
    gpd = one_object_groupoid(H)
    W = wbar_explicit(gpd, cap)
    index = [{c: k for k, c in enumerate(W.labels[n])} for n in range(cap + 1)]
    mul, unit, inv = [], [], []
    for n in range(cap + 1):
        lv = W.labels[n]
        tab = []
        for c1 in lv:
            rowt = []
            for c2 in lv:
                prod = (0,) + tuple(H.mul[n - 1 - j][c1[1 + j]][c2[1 + j]]
                                    for j in range(n))
                rowt.append(index[n][prod])
            tab.append(rowt)
        mul.append(tab)
        unit.append(index[n][(0,) + tuple(H.unit[n - 1 - j] for j in range(n))])
        inv.append([index[n][(0,) + tuple(H.inv[n - 1 - j][c[1 + j]]
                                          for j in range(n))] for c in lv])
    return SimplicialGroup(W, mul, unit, inv, validate=False)


def em_space_wbar(A, n, cap):
    """K(A, n) as the n-fold wbar of the constant simplicial abelian group."""
    from .groups import constant_simplicial_group
    G = constant_simplicial_group(A, cap)
    for _ in range(n):
        G = wbar_group(G, cap)
    return G
