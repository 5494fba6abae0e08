"""Proper connected sequences of strata and their morphisms.

A cell complex stores only its nonempty strata; the infinite tail of empty
strata is implicit.  Connectedness means each stratum's boundary is literally
the body of the previous one; properness means no cell of stage n >= 1
attaches entirely inside stage n - 1.  Because glued simplices reuse cell
ids, every filtration stage is a literal subcomplex of the body and
"factors through stage n" is a plain containment check.
"""

from __future__ import annotations

from .delta import (
    ArrowSquare,
    DeltaError,
    Filtration,
    SimplicialMap,
    compose,
    identity_map,
    inclusion_map,
    mec,
)
from .strata import (
    Cell,
    Stratum,
    StrataMorphism,
    body,
    pushforward_stratum,
    strata_colimit,
    _strata_colimit_onto,
)


class CellComplexError(DeltaError):
    pass


class CellComplex:
    """A finite proper connected sequence of strata over a base complex."""

    __slots__ = ("boundary", "strata", "_stages", "_filtration", "_cell_stage")

    def __init__(self, boundary, strata, validate=True):
        self.boundary = boundary
        self.strata = tuple(strata)
        stages = [boundary]
        for st in self.strata:
            stages.append(body(st)[0])
        self._stages = tuple(stages)
        self._filtration = Filtration(stages, validate=False)
        self._cell_stage = {}
        for n, st in enumerate(self.strata):
            for c in st.cells:
                if c.id in self._cell_stage:
                    raise CellComplexError(f"duplicate cell id {c.id!r}")
                self._cell_stage[c.id] = n
        if validate:
            self._validate()

    def _validate(self):
        for n, st in enumerate(self.strata):
            if not st.cells:
                raise CellComplexError(
                    f"stratum {n} is empty; empty strata are implicit")
            if st.boundary != self._stages[n]:
                raise CellComplexError(
                    f"stratum {n} is not connected to the previous body")
            if n >= 1:
                prev = self._stages[n - 1].id_set
                for c in st.cells:
                    if set(c.attach.assign.values()) <= prev:
                        raise CellComplexError(
                            f"cell {c.id!r} at stage {n} attaches inside "
                            f"stage {n - 1}: sequence is improper")

    # -- queries -----------------------------------------------------------

    @property
    def height(self):
        return len(self.strata)

    @property
    def body(self):
        return self._stages[-1]

    @property
    def filtration(self):
        return self._filtration

    def stage(self, n):
        return self._stages[n]

    def stage_of_cell(self, cid):
        return self._cell_stage[cid]

    def cell(self, cid):
        return self.strata[self._cell_stage[cid]].cell(cid)

    def all_cells(self):
        for n, st in enumerate(self.strata):
            for c in st.cells:
                yield n, c

    @property
    def cell_ids(self):
        return frozenset(self._cell_stage)

    def __eq__(self, other):
        return isinstance(other, CellComplex) and \
            self.boundary == other.boundary and self.strata == other.strata

    def __repr__(self):
        sizes = ",".join(str(len(st.cells)) for st in self.strata)
        return f"CellComplex(height={self.height}, cells=[{sizes}])"


def trivial_complex(x):
    return CellComplex(x, (), validate=False)


def height(c):
    return c.height


def u_of_complex(c):
    """The underlying map: the identifier inclusion of the base in the body."""
    return inclusion_map(c.boundary, c.body)


def generator_complex(k):
    """The canonical height-one single-cell complex over the k-th generator."""
    from .delta import boundary_complex, identity_map as idm
    bd = boundary_complex(k)
    cell = Cell(f"cell{k}", k, idm(bd), validate=False)
    return CellComplex(bd, (Stratum(bd, [cell], validate=False),),
                       validate=False)


# -- normal form ----------------------------------------------------------


def assemble(boundary, cells):
    """Build the proper complex with the given cells over the base.

    ``cells`` attach into the union of the base and all glued simplices
    (cell ids).  Each cell is placed at the least stage containing its
    attach image; placement iterates to a fixpoint.  Fails if some cell's
    attach references ids that never appear.
    """
    remaining = sorted(cells, key=lambda c: c.id)
    strata = []
    current = boundary
    while remaining:
        placeable = [
            c for c in remaining
            if set(c.attach.assign.values()) <= current.id_set]
        if not placeable:
            missing = sorted(
                set().union(*(set(c.attach.assign.values())
                              for c in remaining)) - current.id_set)
            raise CellComplexError(
                f"cells {[c.id for c in remaining]} can never be placed; "
                f"unreachable simplices include {missing[:5]}")
        st = Stratum(current,
                     [Cell(c.id, c.dim,
                           SimplicialMap(c.attach.dom, current,
                                         c.attach.assign, validate=False),
                           validate=False)
                      for c in placeable],
                     validate=False)
        strata.append(st)
        current = body(st)[0]
        placed = {c.id for c in placeable}
        remaining = [c for c in remaining if c.id not in placed]
    return CellComplex(boundary, strata, validate=False)


def normalize(boundary, strata_seq):
    """Reorder a connected (possibly improper) stratum sequence into a
    proper complex with the same cells, ids and underlying map."""
    cells = []
    for st in strata_seq:
        cells.extend(st.cells)
    return assemble(boundary, cells)


def compose_complexes(a, b):
    """The composite complex: b glued on top of a.

    ``b``'s boundary must be ``a``'s body.  Implemented by concatenating the
    stratum lists and renormalizing; cells of b sink to the least stage their
    attaching maps allow.
    """
    if b.boundary != a.body:
        raise CellComplexError(
            "boundary of the second complex must equal the body of the first")
    return normalize(a.boundary, a.strata + b.strata)


def mec_partition_composite(a, b):
    """The composite built by direct stagewise insertion of b's cells at
    their minimal enclosing stage of a's filtration, extended as stages
    grow.  Equivalent to ``compose_complexes``; kept as an oracle."""
    if b.boundary != a.body:
        raise CellComplexError("complexes are not composable")
    pending = [c for _, c in b.all_cells()]
    strata = []
    current = a.boundary
    n = 0
    while n < a.height or pending:
        cells = [Cell(c.id, c.dim,
                      SimplicialMap(c.attach.dom, current, c.attach.assign,
                                    validate=False), validate=False)
                 for c in a.strata[n].cells] if n < a.height else []
        here = [c for c in pending
                if set(c.attach.assign.values()) <= current.id_set]
        here_ids = {c.id for c in here}
        pending = [c for c in pending if c.id not in here_ids]
        cells.extend(
            Cell(c.id, c.dim,
                 SimplicialMap(c.attach.dom, current, c.attach.assign,
                               validate=False), validate=False)
            for c in here)
        if not cells:
            if pending and n < a.height:
                n += 1
                continue
            if pending:
                raise CellComplexError("unplaceable cells in composite")
            break
        st = Stratum(current, cells, validate=False)
        strata.append(st)
        current = body(st)[0]
        n += 1
    return CellComplex(a.boundary, strata, validate=False)


# -- morphisms ------------------------------------------------------------


class CellComplexMorphism:
    """A base map plus a global, stage-preserving cell assignment.

    The stagewise boundary maps are derived: the stage-(n+1) map extends the
    stage-n map by sending each glued simplex to the glued simplex of the
    assigned cell, which is exactly the coherence condition.
    """

    __slots__ = ("dom", "cod", "f0", "p", "_stage_assigns")

    def __init__(self, dom, cod, f0, p, validate=True):
        self.dom = dom
        self.cod = cod
        self.f0 = f0
        self.p = dict(p)
        self._stage_assigns = None
        if validate:
            self._validate()

    def _validate(self):
        if self.f0.dom != self.dom.boundary or \
                self.f0.cod != self.cod.boundary:
            raise CellComplexError("base map endpoints do not match")
        if set(self.p) != set(self.dom._cell_stage):
            raise CellComplexError("cell assignment is not total")
        assign = dict(self.f0.assign)
        for n, st in enumerate(self.dom.strata):
            for c in st.cells:
                tid = self.p[c.id]
                if tid not in self.cod._cell_stage:
                    raise CellComplexError(f"unknown target cell {tid!r}")
                if self.cod._cell_stage[tid] != n:
                    raise CellComplexError(
                        f"cell {c.id!r} at stage {n} maps across stages")
                t = self.cod.cell(tid)
                if t.dim != c.dim:
                    raise CellComplexError(
                        f"cell {c.id!r} changes dimension")
                for s, v in c.attach.assign.items():
                    if assign[v] != t.attach.assign[s]:
                        raise CellComplexError(
                            f"attach of cell {c.id!r} is not preserved")
            for c in st.cells:
                assign[c.id] = self.p[c.id]

    @property
    def body_map(self):
        assign = dict(self.f0.assign)
        assign.update(self.p)
        return SimplicialMap(self.dom.body, self.cod.body, assign,
                             validate=False)

    def stage_map(self, n):
        """The induced map on filtration stage n (clamped to the height)."""
        assign = dict(self.f0.assign)
        for m in range(min(n, self.dom.height)):
            for c in self.dom.strata[m].cells:
                assign[c.id] = self.p[c.id]
        return SimplicialMap(self.dom.stage(min(n, self.dom.height)),
                             self.cod.stage(min(n, self.cod.height)),
                             assign, validate=False)

    def stage_strata_morphism(self, n):
        fn = SimplicialMap(self.dom.stage(n), self.cod.stage(n),
                           self.stage_map(n).assign, validate=False)
        return StrataMorphism(self.dom.strata[n], self.cod.strata[n], fn,
                              {c.id: self.p[c.id]
                               for c in self.dom.strata[n].cells},
                              validate=False)

    def __eq__(self, other):
        return isinstance(other, CellComplexMorphism) and \
            (self.dom, self.cod, self.f0, self.p) == \
            (other.dom, other.cod, other.f0, other.p)

    def __repr__(self):
        return f"CellComplexMorphism({self.dom!r} -> {self.cod!r})"


def identity_morphism(c):
    return CellComplexMorphism(c, c, identity_map(c.boundary),
                               {cid: cid for cid in c._cell_stage},
                               validate=False)


def compose_morphisms(m2, m1):
    if m1.cod != m2.dom:
        raise CellComplexError("morphisms do not compose")
    return CellComplexMorphism(m1.dom, m2.cod, compose(m2.f0, m1.f0),
                               {cid: m2.p[t] for cid, t in m1.p.items()},
                               validate=False)


def u_of_morphism(m):
    """The underlying square of a cell complex morphism."""
    return ArrowSquare(top=m.f0, bottom=m.body_map,
                       left=u_of_complex(m.dom), right=u_of_complex(m.cod))


def is_isomorphism(m):
    """True iff the base map and the cell assignment are bijections."""
    if not m.f0.is_bijective():
        return False
    return sorted(m.p.values()) == sorted(m.cod._cell_stage)


def horizontal_compose(psi, phi):
    """Glue morphisms of stacked complexes: (b * a) -> (b' * a').

    ``phi: a -> a'`` and ``psi: b -> b'`` with b stacked on a and b' on a';
    psi's base map must be phi's body map.
    """
    if psi.f0 != phi.body_map:
        raise CellComplexError(
            "base map of the upper morphism must be the body map of "
            "the lower one")
    ba = compose_complexes(phi.dom, psi.dom)
    ba2 = compose_complexes(phi.cod, psi.cod)
    p = dict(phi.p)
    p.update(psi.p)
    return CellComplexMorphism(ba, ba2, phi.f0, p)


# -- pushforward ----------------------------------------------------------


def pushforward_complex(c, g):
    """Transport a complex along a map out of its base.

    Returns (pushforward complex, canonical morphism into it).  Stage
    boundary maps extend g by the identity on glued simplices; each stage
    square of the morphism is a pushout square.  Properness is re-checked
    and restored by normalization if it ever failed.
    """
    if g.dom != c.boundary:
        raise CellComplexError("pushforward map must start at the base")
    strata = []
    gn_assign = dict(g.assign)
    current = g.cod
    for st in c.strata:
        gn = SimplicialMap(st.boundary, current, gn_assign, validate=False)
        st2 = pushforward_stratum(st, gn)
        strata.append(st2)
        current = body(st2)[0]
        gn_assign = dict(gn_assign)
        for cell in st.cells:
            gn_assign[cell.id] = cell.id
    try:
        out = CellComplex(g.cod, strata)
    except CellComplexError:
        out = normalize(g.cod, strata)
    morph = CellComplexMorphism(c, out, g,
                                {cid: cid for cid in c._cell_stage})
    return out, morph


# -- (co)limits -----------------------------------------------------------


def _pad_morphism_stage(m, n):
    """Stage-n strata morphism of m, with empty strata past either height."""
    ds = m.dom.strata[n] if n < m.dom.height else \
        Stratum(m.dom.body, (), validate=False)
    cs = m.cod.strata[n] if n < m.cod.height else \
        Stratum(m.cod.body, (), validate=False)
    fn = SimplicialMap(ds.boundary, cs.boundary, m.stage_map(n).assign,
                       validate=False)
    return StrataMorphism(ds, cs, fn,
                          {c.id: m.p[c.id] for c in ds.cells},
                          validate=False)


def cellcx_colimit(objs, arrows):
    """Componentwise colimit of a finite diagram of cell complexes.

    ``arrows`` is a list of (src_index, dst_index, CellComplexMorphism).
    Stage 0 is a strata colimit; thereafter the colimit boundary is forced
    to be the body of the previous colimit stratum, which keeps the result
    connected on the nose.  Returns (complex, cocone morphisms).
    """
    from .delta import colimit as delta_colimit
    hmax = max([o.height for o in objs], default=0)
    # stage 0 over the colimit of the bases
    base, base_legs = delta_colimit(
        [o.boundary for o in objs], [(a, b, m.f0) for a, b, m in arrows])
    legs = base_legs
    bound = base
    strata = []
    cell_assign = [dict() for _ in objs]
    for n in range(hmax):
        sts = [o.strata[n] if n < o.height
               else Stratum(o.body, (), validate=False) for o in objs]
        sarrows = [(a, b, _pad_morphism_stage(m, n)) for a, b, m in arrows]
        st, cocone = _strata_colimit_onto(sts, sarrows, bound, legs)
        if st.cells:
            if len(strata) < n:
                raise CellComplexError(
                    "empty colimit stratum precedes a nonempty one")
            strata.append(st)
        for i, sm in enumerate(cocone):
            cell_assign[i].update(sm.p)
        # next boundary: body of the colimit stratum; next legs: body maps
        nxt = body(st)[0]
        new_legs = []
        for i, o in enumerate(objs):
            assign = dict(legs[i].assign)
            for c in sts[i].cells:
                assign[c.id] = cocone[i].p[c.id]
            stage = o.stage(min(n + 1, o.height))
            new_legs.append(SimplicialMap(stage, nxt, assign, validate=False))
        legs = new_legs
        bound = nxt
    out = CellComplex(base, strata)
    cocone_out = [CellComplexMorphism(o, out, base_legs[i], cell_assign[i])
                  for i, o in enumerate(objs)]
    return out, cocone_out


def cellcx_coproduct(parts):
    return cellcx_colimit(parts, [])


def cellcx_equaliser(m1, m2):
    """Componentwise equaliser of a parallel pair of morphisms.

    Returns (subcomplex, inclusion morphism).  The base is the agreement
    subcomplex of the base maps and the cells are those on which the two
    assignments agree; stages are inherited, so the result is proper.
    """
    from .delta import equaliser
    if m1.dom != m2.dom or m1.cod != m2.cod:
        raise CellComplexError("equaliser needs a parallel pair")
    e0, incl0 = equaliser(m1.f0, m2.f0)
    strata = []
    current = e0
    for n, st in enumerate(m1.dom.strata):
        kept = [c for c in st.cells if m1.p[c.id] == m2.p[c.id]]
        if not kept:
            break
        st2 = Stratum(current,
                      [Cell(c.id, c.dim,
                            SimplicialMap(c.attach.dom, current,
                                          c.attach.assign, validate=False),
                            validate=False) for c in kept],
                      validate=False)
        strata.append(st2)
        current = body(st2)[0]
    # later strata must also have no agreeing cells
    for st in m1.dom.strata[len(strata):]:
        for c in st.cells:
            if m1.p[c.id] == m2.p[c.id]:
                raise CellComplexError(
                    "agreeing cell above an empty equaliser stage")
    sub = CellComplex(e0, strata)
    return sub, CellComplexMorphism(
        sub, m1.dom, SimplicialMap(e0, m1.dom.boundary, incl0.assign,
                                   validate=False),
        {cid: cid for cid in sub._cell_stage})
