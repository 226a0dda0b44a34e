"""Left m-expansions: filtrations of shape inclusions by horn attachments,
the face-union expansion recursion, and the step-by-step lifting engine.

An expansion step (n, i, simplex) attaches the ambient n-simplex named by its
vertex tuple along the horn Lambda^n_i mapped into the current stage; the
pushout adds the new simplex together with its i-th face."""
from __future__ import annotations

from dataclasses import dataclass

from .core import SimplicialError
from .fibrations import (COVERING_LEFT, LEFT, FillerTable, check_fibration)
from .shapes import Shape, ShapeMap, simplex_shape


@dataclass(frozen=True)
class Step:
    n: int
    i: int
    simplex: tuple  # vertex tuple in the ambient simplex

    def to_json(self):
        return [self.n, self.i, list(self.simplex)]


class Expansion:
    """A left m-expansion source -> target inside a common ambient simplex."""

    def __init__(self, source, target, steps, m_bound=0, validate=True):
        self.source = source
        self.target = target
        self.steps = [s if isinstance(s, Step) else Step(*s) for s in steps]
        self.m_bound = m_bound
        if validate:
            self.validate()

    def validate(self):
        if self.source.ambient != self.target.ambient:
            raise SimplicialError("expansion endpoints in different ambients")
        stage = set(self.source.gens)
        if not set(self.source.gens) <= set(self.target.gens):
            raise SimplicialError("source not contained in target")
        for st in self.steps:
            if st.n < self.m_bound:
                raise SimplicialError("step below the m-bound")
            if not (0 <= st.i < st.n):
                raise SimplicialError("step horn index must satisfy 0 <= i < n")
            g = st.simplex
            if len(g) != st.n + 1:
                raise SimplicialError("step simplex has wrong dimension")
            if g in stage:
                raise SimplicialError("step attaches an existing simplex")
            new_face = g[:st.i] + g[st.i + 1:]
            for j in range(st.n + 1):
                face = g[:j] + g[j + 1:]
                if j != st.i and face not in stage:
                    raise SimplicialError(
                        f"face {face} of step simplex missing from stage")
            if new_face in stage:
                raise SimplicialError("missing face of the horn already present")
            stage.add(g)
            stage.add(new_face)
        if stage != set(self.target.gens):
            raise SimplicialError("expansion does not reach the target")

    def stages(self):
        """The filtration as a list of shapes, from source to target."""
        out = [self.source]
        gens = set(self.source.gens)
        for st in self.steps:
            gens.add(st.simplex)
            if st.n >= 1:
                gens.add(st.simplex[:st.i] + st.simplex[st.i + 1:])
            out.append(Shape(self.source.ambient, tuple(sorted(gens))))
        return out

    def to_json(self):
        return {"steps": [s.to_json() for s in self.steps],
                "m_bound": self.m_bound}


def concat_expansions(e1, e2):
    """Concatenate expansions S -> T and T -> U; the bound is the min."""
    if set(e1.target.gens) != set(e2.source.gens) or \
            e1.target.ambient != e2.source.ambient:
        raise SimplicialError("expansion endpoints do not match")
    return Expansion(e1.source, e2.target, e1.steps + e2.steps,
                     m_bound=min(e1.m_bound, e2.m_bound))


def _relabel(step, vertex_map):
    return Step(step.n, step.i, tuple(vertex_map[v] for v in step.simplex))


def _face_union_steps(n, present):
    """Steps expanding the union of the faces d_j Delta^n (j in present,
    n in present, at least one face missing) to the whole of Delta^n,
    following the decreasing-index recursion with the final horn step."""
    present = sorted(set(present))
    full = tuple(range(n + 1))
    missing = sorted((j for j in range(n + 1) if j not in present), reverse=True)
    steps = []
    current = list(present)
    for k, i_l in enumerate(missing):
        if k == len(missing) - 1:
            # the stage is now the horn Lambda^n_{i_l}; one final step
            steps.append(Step(n, i_l, full))
            break
        # expand (current faces) cap d_{i_l} inside the face d_{i_l},
        # then transport the steps through the face inclusion
        sub_present = []
        for j in current:
            sub_present.append(j if j < i_l else j - 1)
        face_vertices = [v for v in range(n + 1) if v != i_l]
        for st in _face_union_steps(n - 1, sub_present):
            steps.append(_relabel(st, face_vertices))
        current.append(i_l)
    return steps


def face_union_expansion(n, indices):
    """Expansion from the union of the faces d_j Delta^n, j in indices, to
    Delta^n.  Requires n in indices and at least one missing face."""
    indices = sorted(set(indices))
    if not indices:
        raise SimplicialError("face set must be nonempty")
    if len(indices) > n:
        raise SimplicialError("face set must omit at least one face")
    if n not in indices:
        raise SimplicialError("the last face d_n must belong to the union")
    if any(not (0 <= j <= n) for j in indices):
        raise SimplicialError("face index out of range")
    from .shapes import face_union_shape
    source = face_union_shape(n, indices)
    target = simplex_shape(n)
    steps = _face_union_steps(n, indices)
    return Expansion(source, target, steps, m_bound=0)


def lift_along_expansion(expansion, f, top, bottom, filler_table=None,
                         left_cert=None, covering_cert=None):
    """Lift a commuting square (top : S -> Z, bottom : T -> Y) along the
    expansion S -> T against a left fibration f : Z -> Y, one horn at a time
    through the canonical filler table.  Empty S additionally requires a
    covering certificate, matching the edge case of the lifting lemma."""
    max_n = max((st.n for st in expansion.steps), default=0)
    if left_cert is None:
        left_cert = check_fibration(LEFT, f, max(max_n, 1))
    left_cert.require("lift_along_expansion needs a left fibration")
    if not expansion.source.gens:
        if covering_cert is None:
            covering_cert = check_fibration(COVERING_LEFT, f, max(max_n, 1))
        covering_cert.require("empty source requires a covering left fibration")
    if top.shape.gens != expansion.source.gens or \
            top.shape.ambient != expansion.source.ambient:
        raise SimplicialError("top map not defined on the expansion source")
    if bottom.shape.gens != expansion.target.gens:
        raise SimplicialError("bottom map not defined on the expansion target")
    for g in expansion.source.gens:
        m = len(g) - 1
        if f.levels[m][top[g]] != bottom[g]:
            raise SimplicialError("square does not commute on the source")
    table = filler_table or FillerTable(f)
    assignment = dict(top.assignment)
    for st in expansion.steps:
        g = st.simplex
        n = st.n
        horn = tuple(assignment[g[:j] + g[j + 1:]]
                     for j in range(n + 1) if j != st.i)
        filler = table.horn_filler(n, st.i, horn, bottom[g])
        assignment[g] = filler
        if n >= 1:
            assignment[g[:st.i] + g[st.i + 1:]] = f.dom.faces[n][st.i][filler]
    result = ShapeMap(expansion.target, f.dom, assignment)
    result.validate()
    for g in expansion.target.gens:
        m = len(g) - 1
        if f.levels[m][result[g]] != bottom[g]:
            raise SimplicialError("lift does not cover the bottom map")
    return result
