"""Finite truncated semisimplicial complexes ("delta complexes") and their maps.

Simplices are identified by strings that are unique across all dimensions of a
complex.  A k-simplex for k >= 1 carries an ordered tuple of k+1 identifiers
of (k-1)-simplices; entry i is its i-th face.  There are no degeneracies, so
every hom-set between finite complexes is finite and enumerable.

All values are immutable after construction and all operations are pure.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Optional, Sequence


class DeltaError(ValueError):
    """Malformed complex, map or square."""


class DeltaComplex:
    """A finite graded family of simplices with face maps.

    ``simplices`` maps a dimension to the tuple of simplex ids of that
    dimension; ``faces`` maps each simplex id of dimension >= 1 to the ordered
    tuple of its face ids.  The empty complex has ``max_dim == -1``.
    """

    __slots__ = ("simplices", "faces", "_dim_of", "_key", "_hash", "_by_faces")

    def __init__(self, simplices=None, faces=None, validate=True):
        simp = {}
        for k, ids in (simplices or {}).items():
            ids = tuple(sorted(ids))
            if ids:
                simp[int(k)] = ids
        self.simplices = simp
        self.faces = {str(s): tuple(f) for s, f in (faces or {}).items()}
        dim_of = {}
        for k, ids in simp.items():
            for s in ids:
                if s in dim_of:
                    raise DeltaError(f"duplicate simplex id {s!r}")
                dim_of[s] = k
        self._dim_of = dim_of
        self._key = None
        self._hash = None
        self._by_faces = None
        if validate:
            self._validate()

    def _validate(self):
        for k, ids in self.simplices.items():
            if k < 0:
                raise DeltaError("negative dimension")
            for s in ids:
                if k == 0:
                    if s in self.faces:
                        raise DeltaError(f"vertex {s!r} must not have faces")
                    continue
                fs = self.faces.get(s)
                if fs is None or len(fs) != k + 1:
                    raise DeltaError(f"simplex {s!r} needs {k + 1} faces")
                for f in fs:
                    if self._dim_of.get(f) != k - 1:
                        raise DeltaError(
                            f"face {f!r} of {s!r} is not a ({k - 1})-simplex")
        for s in self.faces:
            if self._dim_of.get(s, 0) < 1:
                raise DeltaError(f"face list for unknown simplex {s!r}")
        # simplicial identities: d_i d_j = d_(j-1) d_i for i < j
        for k, ids in self.simplices.items():
            if k < 2:
                continue
            for s in ids:
                for j in range(1, k + 1):
                    for i in range(j):
                        if self.face(self.face(s, j), i) != \
                                self.face(self.face(s, i), j - 1):
                            raise DeltaError(
                                f"simplicial identity fails at {s!r} "
                                f"(i={i}, j={j})")

    # -- basic queries ----------------------------------------------------

    @property
    def max_dim(self):
        return max(self.simplices) if self.simplices else -1

    def ids(self, k):
        return self.simplices.get(k, ())

    def dim(self, s):
        return self._dim_of[s]

    def face(self, s, i):
        return self.faces[s][i]

    def faces_of(self, s):
        return self.faces.get(s, ())

    def all_ids(self):
        for k in sorted(self.simplices):
            for s in self.simplices[k]:
                yield k, s

    @property
    def id_set(self):
        return frozenset(self._dim_of)

    @property
    def n_simplices(self):
        return len(self._dim_of)

    def __contains__(self, s):
        return s in self._dim_of

    def key(self):
        if self._key is None:
            self._key = (
                tuple(sorted(self.simplices.items())),
                tuple(sorted(self.faces.items())),
            )
        return self._key

    def __eq__(self, other):
        return isinstance(other, DeltaComplex) and self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        sizes = ",".join(f"{k}:{len(v)}" for k, v in sorted(self.simplices.items()))
        return f"DeltaComplex({{{sizes}}})"

    def by_faces(self, k, face_tuple):
        """All k-simplices whose face tuple is exactly ``face_tuple``."""
        if self._by_faces is None:
            idx = {}
            for s, fs in self.faces.items():
                idx.setdefault((self._dim_of[s], fs), []).append(s)
            self._by_faces = {key: tuple(sorted(v)) for key, v in idx.items()}
        return self._by_faces.get((k, face_tuple), ())

    def subcomplex(self, keep):
        """The subcomplex on the given ids (must be face-closed)."""
        keep = set(keep)
        simp = {k: [s for s in ids if s in keep]
                for k, ids in self.simplices.items()}
        faces = {s: fs for s, fs in self.faces.items() if s in keep}
        for s, fs in faces.items():
            for f in fs:
                if f not in keep:
                    raise DeltaError(f"{keep!r} is not face-closed at {s!r}")
        return DeltaComplex(simp, faces, validate=False)

    def is_subcomplex_of(self, other):
        for s, k in self._dim_of.items():
            if other._dim_of.get(s) != k:
                return False
            if k >= 1 and other.faces[s] != self.faces[s]:
                return False
        return True


EMPTY = DeltaComplex()


class SimplicialMap:
    """A dimension-preserving, face-commuting assignment between complexes."""

    __slots__ = ("dom", "cod", "assign", "_key", "_hash")

    def __init__(self, dom, cod, assign, validate=True):
        self.dom = dom
        self.cod = cod
        self.assign = dict(assign)
        self._key = None
        self._hash = None
        if validate:
            self._validate()

    def _validate(self):
        if set(self.assign) != set(self.dom._dim_of):
            raise DeltaError("assignment is not total on the domain")
        for s, t in self.assign.items():
            k = self.dom.dim(s)
            if self.cod._dim_of.get(t) != k:
                raise DeltaError(f"{s!r} ({k}-simplex) maps to bad id {t!r}")
            if k >= 1:
                want = tuple(self.assign[f] for f in self.dom.faces[s])
                if self.cod.faces[t] != want:
                    raise DeltaError(f"face commutation fails at {s!r}")

    def __call__(self, s):
        return self.assign[s]

    def key(self):
        if self._key is None:
            self._key = (self.dom.key(), self.cod.key(),
                         tuple(sorted(self.assign.items())))
        return self._key

    def __eq__(self, other):
        return isinstance(other, SimplicialMap) and self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        return f"SimplicialMap({self.dom!r} -> {self.cod!r})"

    @property
    def image_ids(self):
        return frozenset(self.assign.values())

    def is_injective(self):
        return len(set(self.assign.values())) == len(self.assign)

    def is_bijective(self):
        return self.is_injective() and \
            len(self.assign) == self.cod.n_simplices

    def inverse(self):
        if not self.is_bijective():
            raise DeltaError("map is not bijective")
        return SimplicialMap(self.cod, self.dom,
                             {t: s for s, t in self.assign.items()},
                             validate=False)


def identity_map(x):
    return SimplicialMap(x, x, {s: s for s in x._dim_of}, validate=False)


def inclusion_map(sub, ambient):
    """The identifier-preserving inclusion of a literal subcomplex."""
    if not sub.is_subcomplex_of(ambient):
        raise DeltaError("not a literal subcomplex")
    return SimplicialMap(sub, ambient, {s: s for s in sub._dim_of},
                         validate=False)


def compose(f, g):
    """The composite f after g."""
    if g.cod != f.dom:
        raise DeltaError("composition endpoint mismatch")
    return SimplicialMap(g.dom, f.cod,
                         {s: f.assign[t] for s, t in g.assign.items()},
                         validate=False)


class ArrowSquare:
    """A commuting square: ``right o top == bottom o left``.

    ``top: A -> B``, ``left: A -> C``, ``right: B -> D``, ``bottom: C -> D``.
    """

    __slots__ = ("top", "bottom", "left", "right")

    def __init__(self, top, bottom, left, right, validate=True):
        self.top = top
        self.bottom = bottom
        self.left = left
        self.right = right
        if validate:
            if left.dom != top.dom or right.dom != top.cod \
                    or bottom.dom != left.cod or right.cod != bottom.cod:
                raise DeltaError("square endpoints do not match")
            if compose(right, top) != compose(bottom, left):
                raise DeltaError("square does not commute")

    def __eq__(self, other):
        return isinstance(other, ArrowSquare) and \
            (self.top, self.bottom, self.left, self.right) == \
            (other.top, other.bottom, other.left, other.right)

    def __repr__(self):
        return f"ArrowSquare(top={self.top!r}, bottom={self.bottom!r})"


# -- representable complexes ---------------------------------------------


def standard_simplex(k):
    """The complex whose m-simplices are the (m+1)-subsets of {0..k}."""
    if k < 0:
        raise DeltaError("k must be >= 0")
    if k > 9:
        raise DeltaError("vertex-list ids support k <= 9 only")
    simp = {}
    faces = {}
    for m in range(k + 1):
        ids = []
        for verts in itertools.combinations(range(k + 1), m + 1):
            sid = "".join(str(v) for v in verts)
            ids.append(sid)
            if m >= 1:
                faces[sid] = tuple(sid[:i] + sid[i + 1:] for i in range(m + 1))
        simp[m] = ids
    return DeltaComplex(simp, faces, validate=False)


def top_simplex_id(k):
    return "".join(str(v) for v in range(k + 1))


def boundary_complex(k):
    """The standard k-simplex with its unique top simplex removed."""
    full = standard_simplex(k)
    if k == 0:
        return EMPTY
    return full.subcomplex(full.id_set - {top_simplex_id(k)})


def characteristic_map(x, b):
    """The map from the standard k-simplex sending the top simplex to b."""
    k = x.dim(b)
    delta = standard_simplex(k)
    assign = {top_simplex_id(k): b}
    for m in range(k - 1, -1, -1):
        for sid in delta.ids(m + 1):
            for i, f in enumerate(delta.faces_of(sid)):
                if f not in assign:
                    assign[f] = x.face(assign[sid], i)
    return SimplicialMap(delta, x, assign, validate=False)


def boundary_restriction(x, b):
    """The restriction of ``characteristic_map(x, b)`` to the boundary."""
    k = x.dim(b)
    chi = characteristic_map(x, b)
    bd = boundary_complex(k)
    return SimplicialMap(bd, x, {s: chi.assign[s] for s in bd._dim_of},
                         validate=False)


# -- hom enumeration -----------------------------------------------------


def enumerate_homs(dom, cod, post=None, pre=None, limit=None):
    """All simplicial maps ``dom -> cod``, in deterministic order.

    ``post=(p, t)`` keeps only maps h with ``p o h == t`` (p: cod -> Z,
    t: dom -> Z).  ``pre=(e, u)`` keeps only maps h with ``h o e == u``
    (e: W -> dom, u: W -> cod).  Enumeration backtracks over simplices in
    increasing dimension with face-consistency pruning; output order is
    lexicographic in the assignments.
    """
    pinned = {}
    if pre is not None:
        emap, given = pre
        if emap.cod != dom or given.cod != cod or emap.dom != given.dom:
            raise DeltaError("pre-constraint endpoints do not match")
        for w, s in emap.assign.items():
            t = given.assign[w]
            if pinned.setdefault(s, t) != t:
                return []
    pmap = target = None
    fibers = None
    if post is not None:
        pmap, target = post
        if target.dom != dom or pmap.dom != cod or target.cod != pmap.cod:
            raise DeltaError("post-constraint endpoints do not match")
        fibers = {}
        for s, z in pmap.assign.items():
            fibers.setdefault((pmap.dom.dim(s), z), []).append(s)
        fibers = {key: tuple(sorted(v)) for key, v in fibers.items()}

    order = [s for _, s in dom.all_ids()]
    results = []
    assign = {}

    def candidates(s):
        k = dom.dim(s)
        if k == 0:
            if pmap is not None:
                base = fibers.get((0, target.assign[s]), ())
            else:
                base = cod.ids(0)
        else:
            fkey = tuple(assign[f] for f in dom.faces[s])
            base = cod.by_faces(k, fkey)
            if pmap is not None:
                want = target.assign[s]
                base = [c for c in base if pmap.assign[c] == want]
        if s in pinned:
            p = pinned[s]
            return (p,) if p in base else ()
        return base

    def rec(i):
        if limit is not None and len(results) >= limit:
            return
        if i == len(order):
            results.append(SimplicialMap(dom, cod, assign, validate=False))
            return
        s = order[i]
        for c in candidates(s):
            assign[s] = c
            rec(i + 1)
            if limit is not None and len(results) >= limit:
                break
        assign.pop(s, None)

    rec(0)
    return results


# -- colimits -------------------------------------------------------------


class _DSU:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        while p != self.parent[p]:
            self.parent[p] = self.parent[self.parent[p]]
            p = self.parent[p]
        if p != x:
            self.parent[x] = p
        return p

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


def _quotient_complex(members_by_class, name_of, dims, faces_src):
    """Assemble a quotient complex from class data.

    ``members_by_class``: class id -> members; ``name_of``: member -> class
    name; ``dims``: member -> dimension; ``faces_src``: member -> tuple of
    member faces (or None for vertices).
    """
    simp = {}
    faces = {}
    for members in members_by_class:
        name = name_of[members[0]]
        k = dims[members[0]]
        for m in members:
            if dims[m] != k:
                raise DeltaError("colimit merges simplices of unequal dims")
        simp.setdefault(k, []).append(name)
        if k >= 1:
            induced = None
            for m in members:
                cur = tuple(name_of[f] for f in faces_src[m])
                if induced is None:
                    induced = cur
                elif induced != cur:
                    raise DeltaError("inconsistent induced faces in quotient")
            faces[name] = induced
    return DeltaComplex(simp, faces, validate=False)


def coproduct(parts):
    """Disjoint union, ids tagged by part index; returns (complex, legs)."""
    simp = {}
    faces = {}
    legs = []
    for i, x in enumerate(parts):
        for k, ids in x.simplices.items():
            simp.setdefault(k, []).extend(f"{i}.{s}" for s in ids)
        for s, fs in x.faces.items():
            faces[f"{i}.{s}"] = tuple(f"{i}.{f}" for f in fs)
    total = DeltaComplex(simp, faces, validate=False)
    for i, x in enumerate(parts):
        legs.append(SimplicialMap(
            x, total, {s: f"{i}.{s}" for s in x._dim_of}, validate=False))
    return total, legs


def colimit(objs, arrows):
    """Colimit of a finite diagram of complexes, computed degreewise.

    ``arrows`` is a list of (src_index, dst_index, SimplicialMap) triples.
    Returns (colimit complex, cocone legs).  Ids are ``"<i>.<id>"`` tags with
    the lexicographically least member naming each merged class.
    """
    dsu = _DSU()
    dims = {}
    faces_src = {}
    for i, x in enumerate(objs):
        for s, k in x._dim_of.items():
            node = (i, s)
            dsu.find(node)
            dims[node] = k
            if k >= 1:
                faces_src[node] = tuple((i, f) for f in x.faces[s])
    for a, b, m in arrows:
        if m.dom != objs[a] or m.cod != objs[b]:
            raise DeltaError("diagram arrow endpoints do not match")
        for s, t in m.assign.items():
            dsu.union((a, s), (b, t))
    groups = {}
    for node in dims:
        groups.setdefault(dsu.find(node), []).append(node)
    members_by_class = [sorted(g) for g in groups.values()]
    name_of = {}
    for members in members_by_class:
        name = min(f"{i}.{s}" for i, s in members)
        for m in members:
            name_of[m] = name
    total = _quotient_complex(members_by_class, name_of, dims, faces_src)
    legs = [SimplicialMap(x, total,
                          {s: name_of[(i, s)] for s in x._dim_of},
                          validate=False)
            for i, x in enumerate(objs)]
    return total, legs


def pushout(f, g):
    """Degreewise pushout of ``f: A -> X`` along ``g: A -> Y``.

    Returns (P, leg X -> P, leg Y -> P).  Classes containing Y-simplices are
    named by their least original Y id, so Y's identifiers survive verbatim
    whenever f is degreewise injective; X-only classes keep the X id,
    disambiguated with trailing apostrophes on collision.
    """
    if f.dom != g.dom:
        raise DeltaError("pushout legs must share a domain")
    x, y = f.cod, g.cod
    dsu = _DSU()
    for s in x._dim_of:
        dsu.find(("x", s))
    for s in y._dim_of:
        dsu.find(("y", s))
    for a in f.dom._dim_of:
        dsu.union(("x", f.assign[a]), ("y", g.assign[a]))
    groups = {}
    for side, s in list(dsu.parent):
        groups.setdefault(dsu.find((side, s)), []).append((side, s))
    members_by_class = [sorted(g) for g in groups.values()]
    with_y = [m for m in members_by_class if any(side == "y" for side, _ in m)]
    x_only = [m for m in members_by_class if m not in with_y]
    name_of = {}
    used = set()
    for members in sorted(with_y,
                          key=lambda m: min(s for side, s in m if side == "y")):
        name = min(s for side, s in members if side == "y")
        used.add(name)
        for m in members:
            name_of[m] = name
    for members in sorted(x_only, key=lambda m: m[0][1]):
        name = members[0][1]
        while name in used:
            name += "'"
        used.add(name)
        for m in members:
            name_of[m] = name
    dims = {}
    faces_src = {}
    for side, space in (("x", x), ("y", y)):
        for s, k in space._dim_of.items():
            dims[(side, s)] = k
            if k >= 1:
                faces_src[(side, s)] = tuple((side, f) for f in space.faces[s])
    total = _quotient_complex(members_by_class, name_of, dims, faces_src)
    px = SimplicialMap(x, total, {s: name_of[("x", s)] for s in x._dim_of},
                       validate=False)
    py = SimplicialMap(y, total, {s: name_of[("y", s)] for s in y._dim_of},
                       validate=False)
    return total, px, py


def mediate_pushout(px, py, u, v):
    """The unique map out of a pushout agreeing with u on X and v on Y."""
    if u.dom != px.dom or v.dom != py.dom or u.cod != v.cod:
        raise DeltaError("cocone endpoints do not match")
    assign = {}
    for s, t in px.assign.items():
        assign[t] = u.assign[s]
    for s, t in py.assign.items():
        if assign.setdefault(t, v.assign[s]) != v.assign[s]:
            raise DeltaError("cocone does not commute over the pushout")
    return SimplicialMap(px.cod, u.cod, assign)


def coequaliser(f, g):
    """Degreewise coequaliser of a parallel pair ``f, g: X -> Y``."""
    if f.dom != g.dom or f.cod != g.cod:
        raise DeltaError("coequaliser needs a parallel pair")
    y = f.cod
    dsu = _DSU()
    for s in y._dim_of:
        dsu.find(s)
    for s in f.dom._dim_of:
        dsu.union(f.assign[s], g.assign[s])
    groups = {}
    for s in y._dim_of:
        groups.setdefault(dsu.find(s), []).append(s)
    members_by_class = [sorted(g) for g in groups.values()]
    name_of = {}
    for members in members_by_class:
        name = min(members)
        for m in members:
            name_of[m] = name
    dims = dict(y._dim_of)
    total = _quotient_complex(members_by_class, name_of, dims, y.faces)
    q = SimplicialMap(y, total, name_of, validate=False)
    return total, q


def mediate_coequaliser(q, u):
    """The unique map out of a coequaliser with ``m o q == u``."""
    assign = {}
    for s, t in q.assign.items():
        if assign.setdefault(t, u.assign[s]) != u.assign[s]:
            raise DeltaError("map does not coequalise the pair")
    return SimplicialMap(q.cod, u.cod, assign)


def equaliser(f, g):
    """The subcomplex of X where the parallel pair f, g agree."""
    if f.dom != g.dom or f.cod != g.cod:
        raise DeltaError("equaliser needs a parallel pair")
    keep = {s for s in f.dom._dim_of if f.assign[s] == g.assign[s]}
    e = f.dom.subcomplex(keep)
    return e, inclusion_map(e, f.dom)


def is_pullback(sq):
    """True iff the square's corner is the degreewise pullback of its cospan."""
    b, c = sq.top.cod, sq.left.cod
    fibers = {}
    for s, t in sq.bottom.assign.items():
        fibers.setdefault(t, []).append(s)
    pairs = set()
    for s in b._dim_of:
        for t in fibers.get(sq.right.assign[s], ()):
            pairs.add((s, t))
    med = {}
    for a in sq.top.dom._dim_of:
        image = (sq.top.assign[a], sq.left.assign[a])
        if image in med.values():
            return False  # mediating map not injective
        med[a] = image
    return set(med.values()) == pairs


# -- filtrations ----------------------------------------------------------


class Filtration:
    """An increasing sequence of literal subcomplexes."""

    __slots__ = ("stages", "_id_sets")

    def __init__(self, stages, validate=True):
        self.stages = tuple(stages)
        if not self.stages:
            raise DeltaError("a filtration needs at least one stage")
        if validate:
            for lo, hi in zip(self.stages, self.stages[1:]):
                if not lo.is_subcomplex_of(hi):
                    raise DeltaError("filtration stages must be nested")
        self._id_sets = [st.id_set for st in self.stages]

    @property
    def top(self):
        return self.stages[-1]

    def __len__(self):
        return len(self.stages)

    def __getitem__(self, n):
        return self.stages[n]


def mec(u, filt):
    """Minimal enclosing stage: least n with image(u) inside stage n."""
    if u.cod != filt.top:
        raise DeltaError("map must land in the top stage of the filtration")
    img = set(u.assign.values())
    for n, ids in enumerate(filt._id_sets):
        if img <= ids:
            return n
    raise AssertionError("image not contained in the top stage")
