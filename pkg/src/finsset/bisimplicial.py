"""Bisimplicial sets (horizontal x vertical tables), the levelwise nerve of a
simplicial groupoid, the initial decalage in the nerve direction, the
horizontal 0-coskeleton, and the Artin-Mazur codiagonal Tot.

Tot(B)_n consists of staircase tuples (b_0, ..., b_n) with b_k in bidegree
(k, n-k) and d^v_0 b_k = d^h_{k+1} b_{k+1}; faces and degeneracies act by

    d_i(b)_k = d^v_{i-k} b_k   (k < i)        s_i(b)_k = s^v_{i-k} b_k   (k <= i)
    d_i(b)_k = d^h_i b_{k+1}   (k >= i)       s_i(b)_k = s^h_i b_{k-1}   (k > i)
"""
from __future__ import annotations

import itertools

from .core import SimplicialError, SimplicialSet, SimplicialMap


class BiSimplicialSet:
    """sizes[m][n]; dh[m][n][i] : (m,n) -> (m-1,n); dv[m][n][j] : (m,n) -> (m,n-1);
    sh[m][n][i] : (m,n) -> (m+1,n); sv[m][n][j] : (m,n) -> (m,n+1).
    Entries dh[0], dv[.][0], sh[hcap], sv[.][vcap] are empty lists."""

    def __init__(self, sizes, dh, sh, dv, sv, labels=None, validate=True):
        self.sizes = sizes
        self.dh = dh
        self.sh = sh
        self.dv = dv
        self.sv = sv
        self.labels = labels
        if validate:
            self.validate()

    @property
    def hcap(self):
        return len(self.sizes) - 1

    @property
    def vcap(self):
        return len(self.sizes[0]) - 1

    def size(self, m, n):
        return self.sizes[m][n]

    def row(self, m):
        """The horizontal level m as a vertical simplicial set."""
        sizes = [self.sizes[m][n] for n in range(self.vcap + 1)]
        faces = [[]] + [self.dv[m][n] for n in range(1, self.vcap + 1)]
        degens = [self.sv[m][n] for n in range(self.vcap)]
        return SimplicialSet(sizes, faces, degens, validate=False)

    def column(self, n):
        """The vertical level n as a horizontal simplicial set."""
        sizes = [self.sizes[m][n] for m in range(self.hcap + 1)]
        faces = [[]] + [self.dh[m][n] for m in range(1, self.hcap + 1)]
        degens = [self.sh[m][n] for m in range(self.hcap)]
        return SimplicialSet(sizes, faces, degens, validate=False)

    def validate(self):
        for m in range(self.hcap + 1):
            self.row(m).validate()
        for n in range(self.vcap + 1):
            self.column(n).validate()
        for m in range(1, self.hcap + 1):
            for n in range(1, self.vcap + 1):
                for i in range(m + 1):
                    for j in range(n + 1):
                        for x in range(self.sizes[m][n]):
                            a = self.dv[m - 1][n][j][self.dh[m][n][i][x]]
                            b = self.dh[m][n - 1][i][self.dv[m][n][j][x]]
                            if a != b:
                                raise SimplicialError("dh and dv do not commute")
        for m in range(self.hcap):
            for n in range(self.vcap):
                for i in range(m + 1):
                    for j in range(n + 1):
                        for x in range(self.sizes[m][n]):
                            a = self.sv[m + 1][n][j][self.sh[m][n][i][x]]
                            b = self.sh[m][n + 1][i][self.sv[m][n][j][x]]
                            if a != b:
                                raise SimplicialError("sh and sv do not commute")
        for m in range(1, self.hcap + 1):
            for n in range(self.vcap):
                for i in range(m + 1):
                    for j in range(n + 1):
                        for x in range(self.sizes[m][n]):
                            a = self.sv[m - 1][n][j][self.dh[m][n][i][x]]
                            b = self.dh[m][n + 1][i][self.sv[m][n][j][x]]
                            if a != b:
                                raise SimplicialError("dh and sv do not commute")
        for m in range(self.hcap):
            for n in range(1, self.vcap + 1):
                for i in range(m + 1):
                    for j in range(n + 1):
                        for x in range(self.sizes[m][n]):
                            a = self.dv[m + 1][n][j][self.sh[m][n][i][x]]
                            b = self.sh[m][n - 1][i][self.dv[m][n][j][x]]
                            if a != b:
                                raise SimplicialError("sh and dv do not commute")


class BiSimplicialMap:
    def __init__(self, dom, cod, levels, validate=True):
        self.dom = dom
        self.cod = cod
        self.levels = levels  # levels[m][n] table
        if validate:
            self.validate()

    def __call__(self, m, n, x):
        return self.levels[m][n][x]

    def validate(self):
        H = len(self.levels) - 1
        for m in range(H + 1):
            for n in range(len(self.levels[m])):
                t = self.levels[m][n]
                if len(t) != self.dom.sizes[m][n]:
                    raise SimplicialError("bisimplicial map table not total")
                for x in range(len(t)):
                    y = t[x]
                    if m >= 1:
                        for i in range(m + 1):
                            if self.cod.dh[m][n][i][y] != \
                               self.levels[m - 1][n][self.dom.dh[m][n][i][x]]:
                                raise SimplicialError("bisimplicial map breaks dh")
                    if n >= 1:
                        for j in range(n + 1):
                            if self.cod.dv[m][n][j][y] != \
                               self.levels[m][n - 1][self.dom.dv[m][n][j][x]]:
                                raise SimplicialError("bisimplicial map breaks dv")
                    if m < H:
                        for i in range(m + 1):
                            if self.cod.sh[m][n][i][y] != \
                               self.levels[m + 1][n][self.dom.sh[m][n][i][x]]:
                                raise SimplicialError("bisimplicial map breaks sh")
                    if n < len(self.levels[m]) - 1:
                        for j in range(n + 1):
                            if self.cod.sv[m][n][j][y] != \
                               self.levels[m][n + 1][self.dom.sv[m][n][j][x]]:
                                raise SimplicialError("bisimplicial map breaks sv")


def _tables_from_labels(level_elems, hface, hdegen, vface, vdegen):
    """Build a BiSimplicialSet from labelled bidegrees and label-level maps."""
    hcap = len(level_elems) - 1
    vcap = len(level_elems[0]) - 1
    index = [[{t: k for k, t in enumerate(level_elems[m][n])}
              for n in range(vcap + 1)] for m in range(hcap + 1)]
    sizes = [[len(level_elems[m][n]) for n in range(vcap + 1)]
             for m in range(hcap + 1)]
    dh, sh, dv, sv = [], [], [], []
    for m in range(hcap + 1):
        dh_row, sh_row, dv_row, sv_row = [], [], [], []
        for n in range(vcap + 1):
            dh_row.append([[index[m - 1][n][hface(m, n, i, t)]
                            for t in level_elems[m][n]] for i in range(m + 1)]
                          if m >= 1 else [])
            sh_row.append([[index[m + 1][n][hdegen(m, n, i, t)]
                            for t in level_elems[m][n]] for i in range(m + 1)]
                          if m < hcap else [])
            dv_row.append([[index[m][n - 1][vface(m, n, j, t)]
                            for t in level_elems[m][n]] for j in range(n + 1)]
                          if n >= 1 else [])
            sv_row.append([[index[m][n + 1][vdegen(m, n, j, t)]
                            for t in level_elems[m][n]] for j in range(n + 1)]
                          if n < vcap else [])
        dh.append(dh_row)
        sh.append(sh_row)
        dv.append(dv_row)
        sv.append(sv_row)
    return BiSimplicialSet(sizes, dh, sh, dv, sv, labels=level_elems)


def levelwise_nerve(groupoid, hcap):
    """Nerve in the horizontal direction: horizontal degree m consists of the
    composable m-strings of morphisms (degree 0: the objects), with vertical
    structure inherited levelwise."""
    G = groupoid
    vcap = G.max_dim
    O, M = G.objects, G.morphisms
    by_source = []
    for n in range(vcap + 1):
        d = {}
        for g in range(M.sizes[n]):
            d.setdefault(G.source[n][g], []).append(g)
        by_source.append(d)
    level_elems = []
    for m in range(hcap + 1):
        row = []
        for n in range(vcap + 1):
            if m == 0:
                row.append([(x,) for x in range(O.sizes[n])])
            else:
                out = []
                for t in level_elems[m - 1][n]:
                    if m == 1:
                        cands = by_source[n].get(t[0], [])
                    else:
                        cands = by_source[n].get(G.target[n][t[-1]], [])
                    for g in cands:
                        out.append((t + (g,)) if m > 1 else (g,))
                out.sort()
                row.append(out)
        level_elems.append(row)

    def hface(m, n, i, t):
        if m == 1:
            g = t[0]
            return (G.target[n][g],) if i == 0 else (G.source[n][g],)
        if i == 0:
            return t[1:]
        if i == m:
            return t[:-1]
        return t[:i - 1] + (G.comp[n][(t[i - 1], t[i])],) + t[i + 1:]

    def hdegen(m, n, i, t):
        if m == 0:
            return (G.unit[n][t[0]],)
        if i == 0:
            return (G.unit[n][G.source[n][t[0]]],) + t
        return t[:i] + (G.unit[n][G.target[n][t[i - 1]]],) + t[i:]

    def vface(m, n, j, t):
        if m == 0:
            return (O.faces[n][j][t[0]],)
        return tuple(M.faces[n][j][g] for g in t)

    def vdegen(m, n, j, t):
        if m == 0:
            return (O.degens[n][j][t[0]],)
        return tuple(M.degens[n][j][g] for g in t)

    return _tables_from_labels(level_elems, hface, hdegen, vface, vdegen)


def dec1(B):
    """Initial decalage in the horizontal (nerve) direction, reindexing along
    [m] -> [0] + [m]: level (m, n) becomes (m+1, n), the old d^h_0 / s^h_0
    are dropped, and the natural map back to B is the old d^h_0."""
    if B.hcap < 1:
        raise SimplicialError("horizontal cap exhausted by decalage")
    hcap = B.hcap - 1
    vcap = B.vcap
    sizes = [[B.sizes[m + 1][n] for n in range(vcap + 1)] for m in range(hcap + 1)]
    dh = [[[B.dh[m + 1][n][i + 1] for i in range(m + 1)] if m >= 1 else []
           for n in range(vcap + 1)] for m in range(hcap + 1)]
    sh = [[[B.sh[m + 1][n][i + 1] for i in range(m + 1)] if m < hcap else []
           for n in range(vcap + 1)] for m in range(hcap + 1)]
    dv = [[B.dv[m + 1][n] for n in range(vcap + 1)] for m in range(hcap + 1)]
    sv = [[B.sv[m + 1][n] for n in range(vcap + 1)] for m in range(hcap + 1)]
    labels = None
    if B.labels is not None:
        labels = [[B.labels[m + 1][n] for n in range(vcap + 1)]
                  for m in range(hcap + 1)]
    D = BiSimplicialSet(sizes, dh, sh, dv, sv, labels=labels)
    nat = BiSimplicialMap(D, _truncate_h(B, hcap),
                          [[B.dh[m + 1][n][0] for n in range(vcap + 1)]
                           for m in range(hcap + 1)])
    return D, nat


def _truncate_h(B, hcap):
    sizes = [B.sizes[m] for m in range(hcap + 1)]
    dh = [B.dh[m] for m in range(hcap + 1)]
    sh = [[[B.sh[m][n][i] for i in range(m + 1)] if m < hcap else []
           for n in range(B.vcap + 1)] for m in range(hcap + 1)]
    dv = [B.dv[m] for m in range(hcap + 1)]
    sv = [B.sv[m] for m in range(hcap + 1)]
    labels = [B.labels[m] for m in range(hcap + 1)] if B.labels is not None else None
    return BiSimplicialSet(sizes, dh, sh, dv, sv, labels=labels, validate=False)


def horizontal_cosk0(B):
    """Apply the 0-coskeleton to every horizontal simplicial level: bidegree
    (m, n) becomes the (m+1)-fold power of bidegree (0, n)."""
    vcap = B.vcap
    hcap = B.hcap
    level_elems = [[sorted(itertools.product(range(B.sizes[0][n]), repeat=m + 1))
                    for n in range(vcap + 1)] for m in range(hcap + 1)]

    def hface(m, n, i, t):
        return t[:i] + t[i + 1:]

    def hdegen(m, n, i, t):
        return t[:i + 1] + t[i:]

    def vface(m, n, j, t):
        return tuple(B.dv[0][n][j][x] for x in t)

    def vdegen(m, n, j, t):
        return tuple(B.sv[0][n][j][x] for x in t)

    return _tables_from_labels(level_elems, hface, hdegen, vface, vdegen)


def bisimplicial_pullback(f, g):
    """Levelwise fiber product of bisimplicial maps with common codomain."""
    A, B = f.dom, g.dom
    hcap = min(A.hcap, B.hcap)
    vcap = min(A.vcap, B.vcap)
    level_elems = [[sorted((x, y)
                           for x in range(A.sizes[m][n])
                           for y in range(B.sizes[m][n])
                           if f.levels[m][n][x] == g.levels[m][n][y])
                    for n in range(vcap + 1)] for m in range(hcap + 1)]

    def hface(m, n, i, t):
        return (A.dh[m][n][i][t[0]], B.dh[m][n][i][t[1]])

    def hdegen(m, n, i, t):
        return (A.sh[m][n][i][t[0]], B.sh[m][n][i][t[1]])

    def vface(m, n, j, t):
        return (A.dv[m][n][j][t[0]], B.dv[m][n][j][t[1]])

    def vdegen(m, n, j, t):
        return (A.sv[m][n][j][t[0]], B.sv[m][n][j][t[1]])

    return _tables_from_labels(level_elems, hface, hdegen, vface, vdegen)


def horizontally_constant(K, hcap):
    """The bisimplicial set constant in the horizontal direction at K."""
    vcap = K.max_dim
    level_elems = [[[(x,) for x in range(K.sizes[n])]
                    for n in range(vcap + 1)] for m in range(hcap + 1)]
    return _tables_from_labels(
        level_elems,
        lambda m, n, i, t: t,
        lambda m, n, i, t: t,
        lambda m, n, j, t: (K.faces[n][j][t[0]],),
        lambda m, n, j, t: (K.degens[n][j][t[0]],))


def constant_to_cosk0_map(K, hcap):
    """The diagonal K -> Cosk_0 K as a bisimplicial map (horizontal direction)."""
    B = horizontally_constant(K, hcap)
    C = horizontal_cosk0(B)
    index = [[{t: k for k, t in enumerate(C.labels[m][n])}
              for n in range(K.max_dim + 1)] for m in range(hcap + 1)]
    levels = [[[index[m][n][(x,) * (m + 1)] for x in range(K.sizes[n])]
               for n in range(K.max_dim + 1)] for m in range(hcap + 1)]
    return BiSimplicialMap(B, C, levels)


def tot(B, cap=None):
    """Artin-Mazur codiagonal; level n enumerated over staircase tuples in
    sorted order.  Requires hcap >= cap and vcap >= cap."""
    if cap is None:
        cap = min(B.hcap, B.vcap)
    if cap > min(B.hcap, B.vcap):
        raise SimplicialError("cap exhausted for Tot")
    last_face_index = {}

    def preimages(m, n):
        # preimages of d^h_m at bidegree (m, n)
        key = (m, n)
        if key not in last_face_index:
            d = {}
            for x in range(B.sizes[m][n]):
                d.setdefault(B.dh[m][n][m][x], []).append(x)
            last_face_index[key] = d
        return last_face_index[key]

    levels = []
    for n in range(cap + 1):
        tuples = []
        partial = [None] * (n + 1)

        def extend(k):
            if k == n + 1:
                tuples.append(tuple(partial))
                return
            if k == 0:
                cands = range(B.sizes[0][n])
            else:
                want = B.dv[k - 1][n - k + 1][0][partial[k - 1]]
                cands = preimages(k, n - k).get(want, [])
            for x in cands:
                partial[k] = x
                extend(k + 1)
            partial[k] = None

        extend(0)
        tuples.sort()
        levels.append(tuples)
    index = [{t: k for k, t in enumerate(lv)} for lv in levels]
    sizes = [len(lv) for lv in levels]

    def face(n, i, t):
        out = []
        for k in range(n):
            if k < i:
                out.append(B.dv[k][n - k][i - k][t[k]])
            else:
                out.append(B.dh[k + 1][n - k - 1][i][t[k + 1]])
        return tuple(out)

    def degen(n, i, t):
        out = []
        for k in range(n + 2):
            if k <= i:
                out.append(B.sv[k][n - k][i - k][t[k]])
            else:
                out.append(B.sh[k - 1][n - k + 1][i][t[k - 1]])
        return tuple(out)

    faces = [[]]
    for n in range(1, cap + 1):
        faces.append([[index[n - 1][face(n, i, t)] for t in levels[n]]
                      for i in range(n + 1)])
    degens = []
    for n in range(cap):
        degens.append([[index[n + 1][degen(n, i, t)] for t in levels[n]]
                       for i in range(n + 1)])
    return SimplicialSet(sizes, faces, degens, labels=levels)


def tot_map(bmap, dom_tot=None, cod_tot=None, cap=None):
    """Functoriality of Tot on bisimplicial maps."""
    if dom_tot is None:
        dom_tot = tot(bmap.dom, cap=cap)
    if cod_tot is None:
        cod_tot = tot(bmap.cod, cap=cap)
    cod_index = [{t: k for k, t in enumerate(lv)} for lv in cod_tot.labels]
    levels = []
    for n in range(len(dom_tot.labels)):
        tab = []
        for t in dom_tot.labels[n]:
            image = tuple(bmap.levels[k][n - k][t[k]] for k in range(n + 1))
            tab.append(cod_index[n][image])
        levels.append(tab)
    return SimplicialMap(dom_tot, cod_tot, levels)
