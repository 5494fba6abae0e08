"""The free factorization, its adjunction, and the monad/comonad law suite.

``free_complex`` factors any map f: A -> B as a proper cell complex on A
followed by a map from its body to B.  Stage n glues one cell for every pair
of a k-simplex of B and a boundary lift into the stage-n space whose image
is not contained in stage n - 1; iteration stops at the first empty stage.

Cells are identified by a canonical key (stage, shape dimension, target
simplex, hashed boundary lift) prefixed with a short digest of the factored
map, which makes transposition along the adjunction a dictionary lookup.
"""

from __future__ import annotations

import hashlib
import json

from .delta import (
    ArrowSquare,
    DeltaError,
    SimplicialMap,
    boundary_complex,
    boundary_restriction,
    compose,
    enumerate_homs,
    identity_map,
    mediate_pushout,
    pushout,
)
from .strata import Cell, Stratum, body
from .cellcx import (
    CellComplex,
    CellComplexMorphism,
    assemble,
    compose_complexes,
    u_of_complex,
)


class CapExceededError(RuntimeError):
    """The factorization did not stabilize within the safety cap."""

    def __init__(self, stage_counts):
        self.stage_counts = list(stage_counts)
        super().__init__(
            "safety cap exceeded; per-stage cell counts: "
            + ", ".join(map(str, stage_counts)))


def _map_digest(f):
    raw = repr(f.key()).encode()
    return hashlib.sha1(raw).hexdigest()[:10]


def encode_lift(u):
    """Canonical 12-hex-digit encoding of a boundary lift's assignment."""
    raw = json.dumps(sorted(u.assign.items())).encode()
    return hashlib.sha1(raw).hexdigest()[:12]


class KCellKey:
    """Canonical identity of a free-complex cell."""

    __slots__ = ("stage", "dim", "target", "boundary_lift")

    def __init__(self, stage, dim, target, boundary_lift):
        self.stage = stage
        self.dim = dim
        self.target = target
        self.boundary_lift = boundary_lift

    def cell_id(self, digest):
        return f"{digest}.{self.stage}.{self.dim}.{self.target}." \
               f"{self.boundary_lift}"

    def __repr__(self):
        return (f"KCellKey(stage={self.stage}, dim={self.dim}, "
                f"target={self.target!r})")


class FactorResult:
    """A free factorization: input map, complex, and the counit map."""

    __slots__ = ("input", "kf", "ef", "stage_maps", "digest")

    def __init__(self, input_map, kf, ef, stage_maps, digest):
        self.input = input_map
        self.kf = kf
        self.ef = ef
        self.stage_maps = tuple(stage_maps)
        self.digest = digest

    @property
    def stage_counts(self):
        return [len(st.cells) for st in self.kf.strata]

    def cell_for_key(self, key):
        cid = key.cell_id(self.digest)
        if cid not in self.kf.cell_ids:
            raise AssertionError(
                f"no free cell for {key!r}; internal invariant violated")
        return cid

    def __repr__(self):
        return f"FactorResult(height={self.kf.height}, " \
               f"counts={self.stage_counts})"


def k1_step(f, prev_ids=None, stage=0, digest=None):
    """One gluing step: a stratum of all generating squares into f.

    One cell per pair of a k-simplex b of the codomain and a boundary lift
    u into the domain with ``f o u`` equal to the boundary of b.  Lifts whose
    image lies inside ``prev_ids`` are omitted (properness filtering).
    Returns (stratum, extended codomain map from the stratum's body).
    """
    if digest is None:
        digest = _map_digest(f)
    a, b = f.dom, f.cod
    cells = []
    e_assign = dict(f.assign)
    for k in range(b.max_dim + 1):
        bd = boundary_complex(k)
        for t in b.ids(k):
            tgt = boundary_restriction(b, t)
            for u in enumerate_homs(bd, a, post=(f, tgt)):
                if prev_ids is not None and \
                        set(u.assign.values()) <= prev_ids:
                    continue
                key = KCellKey(stage, k, t, encode_lift(u))
                cid = key.cell_id(digest)
                cells.append(Cell(cid, k, u, validate=False))
                e_assign[cid] = t
    st = Stratum(a, cells, validate=False)
    bodyx = body(st)[0]
    return st, SimplicialMap(bodyx, b, e_assign, validate=False)


def free_complex(f, safety_cap=32):
    """Iterate the gluing step with properness filtering until it stabilizes.

    Returns a FactorResult whose complex is proper and connected by
    construction and whose counit map satisfies ``ef o u == f``.  Raises
    CapExceededError with per-stage diagnostics if the cap is reached.
    """
    if safety_cap < 1:
        raise ValueError("safety_cap must be >= 1")
    digest = _map_digest(f)
    strata = []
    stage_maps = []
    prev_ids = None
    current_ids = f.dom.id_set
    g = f
    n = 0
    while True:
        st, e1 = k1_step(g, prev_ids, n, digest)
        if not st.cells:
            break
        if n >= safety_cap:
            raise CapExceededError(
                [len(s.cells) for s in strata] + [len(st.cells)])
        strata.append(st)
        stage_maps.append(e1)
        prev_ids = current_ids
        current_ids = e1.dom.id_set
        g = e1
        n += 1
    kf = CellComplex(f.dom, strata, validate=False)
    ef = stage_maps[-1] if stage_maps else f
    return FactorResult(f, kf, ef, stage_maps, digest)


class Factorizer:
    """Memoized free factorization, shared across a law-checking session."""

    def __init__(self, safety_cap=32):
        self.safety_cap = safety_cap
        self._cache = {}

    def k(self, f):
        key = f.key()
        fr = self._cache.get(key)
        if fr is None:
            fr = free_complex(f, self.safety_cap)
            self._cache[key] = fr
        return fr


# -- the adjunction -------------------------------------------------------


def transpose(c, g0, h, fr, check=True):
    """The adjunct morphism c -> Kf of a square (g0, h): U(c) -> f.

    Each cell of c at stage n with shape k, attaching map b, and glued
    simplex y is sent to the free cell keyed by (n, k, h(y), g_n o b); the
    key is asserted to exist.  The counit equation ``ef o body == h`` is
    verified when ``check`` is set.
    """
    f = fr.input
    if check:
        if g0.dom != c.boundary or g0.cod != f.dom:
            raise DeltaError("transpose: base map endpoints do not match")
        if h.dom != c.body or h.cod != f.cod:
            raise DeltaError("transpose: body map endpoints do not match")
        if compose(f, g0) != compose(h, u_of_complex(c)):
            raise DeltaError("transpose: square does not commute")
    assign = dict(g0.assign)
    p = {}
    for n, st in enumerate(c.strata):
        for cell in st.cells:
            u_assign = {s: assign[v] for s, v in cell.attach.assign.items()}
            u = SimplicialMap(boundary_complex(cell.dim),
                              fr.kf.stage(min(n, fr.kf.height)),
                              u_assign, validate=False)
            key = KCellKey(n, cell.dim, h.assign[cell.id], encode_lift(u))
            cid = fr.cell_for_key(key)
            p[cell.id] = cid
            assign[cell.id] = cid
    m = CellComplexMorphism(c, fr.kf, g0, p, validate=False)
    if check and compose(fr.ef, m.body_map) != h:
        raise AssertionError("transpose does not factor the given square")
    return m


def k_of_square(sq, fr_dom, fr_cod, check=True):
    """Functorial action of the factorization on an arrow-category square.

    ``sq`` is (a, b): f -> g encoded as ArrowSquare(top=a, bottom=b,
    left=f, right=g); the result is the morphism Kf -> Kg.
    """
    return transpose(fr_dom.kf, sq.top, compose(sq.bottom, fr_dom.ef),
                     fr_cod, check=check)


def unit(c, factorizer=None):
    """The adjunction unit: the comparison of c with K(U(c))."""
    fz = factorizer or Factorizer()
    fr = fz.k(u_of_complex(c))
    return transpose(c, identity_map(c.boundary), identity_map(c.body), fr)


def coalgebra_structure(c, factorizer=None):
    """The body component of the unit: body(c) -> body(K(U(c)))."""
    return unit(c, factorizer).body_map


def decode(f, alpha, fr):
    """Rebuild a cell complex from a coalgebra structure map.

    ``f`` must be the identifier inclusion underlying some complex and
    ``alpha: cod(f) -> body(Kf)`` its structure map.  Every simplex outside
    the base must land on a glued free cell; it becomes a cell with that
    shape, attached along its own faces, placed at its minimal stage.
    """
    x, y = f.dom, f.cod
    if any(f.assign[s] != s for s in x._dim_of):
        raise DeltaError("decode expects an identifier inclusion")
    free_cells = fr.kf.cell_ids
    cells = []
    for k, s in y.all_ids():
        if s in x:
            continue
        if alpha.assign[s] not in free_cells:
            raise DeltaError(
                f"simplex {s!r} does not map to a glued free cell; "
                f"not a coalgebra structure")
        cells.append(Cell(s, k, boundary_restriction(y, s), validate=False))
    return assemble(x, cells)


# -- monad and comonad ----------------------------------------------------


def monad_unit(f, factorizer=None):
    """The unit square f -> Ef of the codomain-preserving monad."""
    fz = factorizer or Factorizer()
    fr = fz.k(f)
    return ArrowSquare(top=u_of_complex(fr.kf),
                       bottom=identity_map(f.cod),
                       left=f, right=fr.ef)


def monad_mult(f, factorizer=None):
    """The multiplication component: body(K(Ef)) -> body(Kf).

    Computed as the body part of the adjunct of (1, EEf) on the composite
    of Kf with K(Ef).
    """
    fz = factorizer or Factorizer()
    fr = fz.k(f)
    fr2 = fz.k(fr.ef)
    comp = compose_complexes(fr.kf, fr2.kf)
    phi = transpose(comp, identity_map(f.dom), fr2.ef, fr)
    return phi.body_map


def comonad_comult(f, factorizer=None):
    """The comultiplication component: body(Kf) -> body(K(U(Kf)))."""
    fz = factorizer or Factorizer()
    fr = fz.k(f)
    return coalgebra_structure(fr.kf, fz)


def check_awfs_laws(f, squares=(), safety_cap=32, factorizer=None):
    """Check the factorization-system laws for f by exact map equality.

    ``squares`` is an iterable of ArrowSquare values (a, b): f -> g used for
    the naturality checks.  Returns a report dict with one boolean per law
    and witness descriptions for failures.  Raises CapExceededError (with
    the partial report attached) if a required factorization does not
    stabilize.
    """
    fz = factorizer or Factorizer(safety_cap)
    report = {}
    witnesses = {}

    def record(name, lhs, rhs):
        ok = lhs == rhs
        report[name] = ok
        if not ok:
            witnesses[name] = {"lhs": sorted(lhs.assign.items()),
                               "rhs": sorted(rhs.assign.items())}
        return ok

    try:
        fr = fz.k(f)
        lf = u_of_complex(fr.kf)
        record("factorization", compose(fr.ef, lf), f)

        fr2 = fz.k(fr.ef)
        mu = monad_mult(f, fz)
        id_mf = identity_map(fr.kf.body)
        record("monad_unit_free", compose(mu, u_of_complex(fr2.kf)), id_mf)
        keta = k_of_square(monad_unit(f, fz), fr, fr2)
        record("monad_unit_functorial", compose(mu, keta.body_map), id_mf)

        fr3 = fz.k(fr2.ef)
        mu_ef = monad_mult(fr.ef, fz)
        kmu = k_of_square(
            ArrowSquare(top=mu, bottom=identity_map(f.cod),
                        left=fr2.ef, right=fr.ef),
            fr3, fr2)
        record("monad_assoc", compose(mu, mu_ef),
               compose(mu, kmu.body_map))

        fru = fz.k(lf)
        delta = comonad_comult(f, fz)
        record("comonad_counit_free", compose(fru.ef, delta), id_mf)
        keps = k_of_square(
            ArrowSquare(top=identity_map(f.dom), bottom=fr.ef,
                        left=lf, right=f),
            fru, fr)
        record("comonad_counit_functorial",
               compose(keps.body_map, delta), id_mf)

        fruu = fz.k(u_of_complex(fru.kf))
        delta_lf = coalgebra_structure(fru.kf, fz)
        kdelta = k_of_square(
            ArrowSquare(top=identity_map(f.dom), bottom=delta,
                        left=lf, right=u_of_complex(fru.kf)),
            fru, fruu)
        record("comonad_coassoc", compose(delta_lf, delta),
               compose(kdelta.body_map, delta))

        freu = fz.k(fru.ef)
        fr_uef = fz.k(u_of_complex(fr2.kf))
        mu_ukf = monad_mult(lf, fz)
        delta_ef = comonad_comult(fr.ef, fz)
        kdm = k_of_square(
            ArrowSquare(top=delta, bottom=mu,
                        left=u_of_complex(fr2.kf), right=fru.ef),
            fr_uef, freu)
        lhs = compose(fru.ef, compose(delta, mu))
        rhs = compose(fru.ef,
                      compose(mu_ukf, compose(kdm.body_map, delta_ef)))
        record("distributivity", lhs, rhs)

        nat_ok = True
        for i, sq in enumerate(squares):
            g = sq.right
            frg = fz.k(g)
            kab = k_of_square(sq, fr, frg)
            eta_ok = (compose(kab.body_map, lf)
                      == compose(u_of_complex(frg.kf), sq.top))
            mu_g = monad_mult(g, fz)
            frg2 = fz.k(frg.ef)
            kab2 = k_of_square(
                ArrowSquare(top=kab.body_map, bottom=sq.bottom,
                            left=fr.ef, right=frg.ef),
                fr2, frg2)
            mu_ok = (compose(kab.body_map, mu)
                     == compose(mu_g, kab2.body_map))
            if not (eta_ok and mu_ok):
                nat_ok = False
                witnesses[f"naturality_{i}"] = {
                    "eta": eta_ok, "mu": mu_ok}
        report["naturality"] = nat_ok
    except CapExceededError as err:
        err.partial_report = report
        raise
    return {"laws": report, "witnesses": witnesses,
            "all_pass": all(report.values())}


# -- left-map structures --------------------------------------------------


def composite_left_map(f, alpha, g, beta, factorizer=None):
    """The structure map on g o f induced by structure maps on f and g."""
    fz = factorizer or Factorizer()
    gf = compose(g, f)
    fr_f = fz.k(f)
    fr_g = fz.k(g)
    fr_gf = fz.k(gf)
    m1 = k_of_square(
        ArrowSquare(top=identity_map(f.dom), bottom=g, left=f, right=gf),
        fr_f, fr_gf)
    pre = compose(m1.body_map, alpha)
    fr_egf = fz.k(fr_gf.ef)
    m2 = k_of_square(
        ArrowSquare(top=pre, bottom=identity_map(g.cod),
                    left=g, right=fr_gf.ef),
        fr_g, fr_egf)
    mu_gf = monad_mult(gf, fz)
    return compose(mu_gf, compose(m2.body_map, beta))


def pushforward_left_map(f, alpha, g, factorizer=None):
    """The structure map on the pushout of f along g.

    Returns (pushed map, structure map).  On the codomain leg the structure
    is the free inclusion of the pushed map; on the other leg it is the
    functorial image of alpha.
    """
    fz = factorizer or Factorizer()
    _, leg_b, leg_c = pushout(f, g)
    pushed = leg_c
    fr_f = fz.k(f)
    fr_p = fz.k(pushed)
    m = k_of_square(
        ArrowSquare(top=g, bottom=leg_b, left=f, right=pushed),
        fr_f, fr_p)
    structure = mediate_pushout(
        leg_b, leg_c, compose(m.body_map, alpha), u_of_complex(fr_p.kf))
    return pushed, structure
