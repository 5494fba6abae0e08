"""JSON serialization for every value the command-line interface handles.

All emitters produce deterministic structures (sorted keys, sorted id
lists); ``dumps`` fixes the byte-level format.  Loaders validate through
the ordinary constructors and raise DeltaError subclasses on bad input.
"""

from __future__ import annotations

import json

from .delta import DeltaComplex, DeltaError, SimplicialMap, boundary_complex
from .strata import Cell, Stratum
from .cellcx import CellComplex
from .lifting import FillerTable, square_key
from .soa import FactorResult, _map_digest


def dumps(obj):
    """The canonical byte format: sorted keys, two-space indent."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _expect(cond, msg):
    if not cond:
        raise DeltaError(msg)


# -- delta complexes and maps ----------------------------------------------


def complex_to_json(x):
    simplices = {}
    for k in range(x.max_dim + 1):
        ids = sorted(x.ids(k))
        if k == 0:
            simplices["0"] = ids
        else:
            simplices[str(k)] = [
                {"id": s, "faces": list(x.faces_of(s))} for s in ids]
    return {"simplices": simplices}


def complex_from_json(obj):
    _expect(isinstance(obj, dict) and "simplices" in obj,
            "complex JSON must be an object with a 'simplices' field")
    simplices = {}
    faces = {}
    for key, entries in obj["simplices"].items():
        k = int(key)
        _expect(k >= 0, "negative dimension")
        ids = []
        for e in entries:
            if k == 0:
                _expect(isinstance(e, str), "0-simplices must be strings")
                ids.append(e)
            else:
                _expect(isinstance(e, dict) and "id" in e and "faces" in e,
                        f"{k}-simplices must be objects with id and faces")
                ids.append(e["id"])
                faces[e["id"]] = tuple(e["faces"])
        simplices[k] = ids
    return DeltaComplex(simplices, faces)


def map_to_json(f):
    assign = {}
    for s, t in f.assign.items():
        assign.setdefault(str(f.dom.dim(s)), {})[s] = t
    return {"dom": complex_to_json(f.dom), "cod": complex_to_json(f.cod),
            "assign": assign}


def map_from_json(obj):
    _expect(isinstance(obj, dict) and
            {"dom", "cod", "assign"} <= set(obj),
            "map JSON must carry dom, cod, and assign")
    dom = complex_from_json(obj["dom"])
    cod = complex_from_json(obj["cod"])
    assign = {}
    for graded in obj["assign"].values():
        assign.update(graded)
    return SimplicialMap(dom, cod, assign)


# -- strata and cell complexes ---------------------------------------------


def _cell_to_json(c):
    return {"id": c.id, "dim": c.dim, "attach": dict(c.attach.assign)}


def _cell_from_json(obj, boundary):
    _expect(isinstance(obj, dict) and {"id", "dim", "attach"} <= set(obj),
            "cell JSON must carry id, dim, and attach")
    attach = SimplicialMap(boundary_complex(obj["dim"]), boundary,
                           dict(obj["attach"]))
    return Cell(obj["id"], obj["dim"], attach)


def stratum_to_json(st):
    return {"boundary": complex_to_json(st.boundary),
            "cells": [_cell_to_json(c) for c in st.cells]}


def stratum_from_json(obj):
    _expect(isinstance(obj, dict) and {"boundary", "cells"} <= set(obj),
            "stratum JSON must carry boundary and cells")
    boundary = complex_from_json(obj["boundary"])
    return Stratum(boundary,
                   [_cell_from_json(c, boundary) for c in obj["cells"]])


def cellcx_to_json(c):
    return {"base": complex_to_json(c.boundary),
            "strata": [{"cells": [_cell_to_json(x) for x in st.cells]}
                       for st in c.strata]}


def cellcx_cells_from_json(obj):
    """Lax loader: the base complex and a flat cell list (stage ignored).

    Suitable for renormalization, where only the base and the cells matter.
    Attach maps are validated against the accumulated identifier pool, not
    a particular stage.
    """
    _expect(isinstance(obj, dict) and {"base", "strata"} <= set(obj),
            "complex JSON must carry base and strata")
    base = complex_from_json(obj["base"])
    raw = []
    for st in obj["strata"]:
        _expect(isinstance(st, dict) and "cells" in st,
                "each stratum entry must carry cells")
        raw.extend(st["cells"])
    pool = dict(base._dim_of)
    for c in raw:
        _expect(isinstance(c, dict) and {"id", "dim", "attach"} <= set(c),
                "cell JSON must carry id, dim, and attach")
        _expect(c["id"] not in pool, f"duplicate identifier {c['id']!r}")
        pool[c["id"]] = c["dim"]
    cells = []
    for c in raw:
        bd = boundary_complex(c["dim"])
        attach = dict(c["attach"])
        _expect(set(attach) == bd.id_set,
                f"cell {c['id']!r}: attach keys must be the canonical "
                f"boundary names")
        for s, t in attach.items():
            _expect(t in pool and pool[t] == bd.dim(s),
                    f"cell {c['id']!r}: attach target {t!r} missing or of "
                    f"wrong dimension")
        cells.append(Cell(c["id"], c["dim"],
                          SimplicialMap(bd, base, attach, validate=False),
                          validate=False))
    return base, cells


def cellcx_from_json(obj):
    """Strict loader: rebuilds the complex stage by stage and revalidates."""
    _expect(isinstance(obj, dict) and {"base", "strata"} <= set(obj),
            "complex JSON must carry base and strata")
    base = complex_from_json(obj["base"])
    from .strata import body
    strata = []
    current = base
    for entry in obj["strata"]:
        _expect(isinstance(entry, dict) and "cells" in entry,
                "each stratum entry must carry cells")
        st = Stratum(current,
                     [_cell_from_json(c, current) for c in entry["cells"]])
        strata.append(st)
        current = body(st)[0]
    return CellComplex(base, strata)


# -- factorization results --------------------------------------------------


def factor_result_to_json(fr):
    return {"input": map_to_json(fr.input),
            "complex": cellcx_to_json(fr.kf),
            "ef": map_to_json(fr.ef),
            "stage_counts": fr.stage_counts}


def factor_result_from_json(obj):
    _expect(isinstance(obj, dict) and
            {"input", "complex", "ef", "stage_counts"} <= set(obj),
            "factorization JSON must carry input, complex, ef, stage_counts")
    f = map_from_json(obj["input"])
    kf = cellcx_from_json(obj["complex"])
    ef = map_from_json(obj["ef"])
    _expect(obj["stage_counts"] == [len(st.cells) for st in kf.strata],
            "stage_counts do not match the complex")
    return FactorResult(f, kf, ef, (), _map_digest(f))


# -- filler tables -----------------------------------------------------------


def filler_table_to_json(ft):
    if ft.chooser is not None:
        raise DeltaError("chooser-backed filler tables are not serializable")
    entries = []
    for (dim, target, items) in sorted(ft.entries):
        entries.append({"dim": dim, "boundary": dict(items),
                        "target": target,
                        "filler": ft.entries[(dim, target, items)]})
    return {"p": map_to_json(ft.p), "entries": entries,
            "fallback": ft.fallback}


def filler_table_from_json(obj):
    _expect(isinstance(obj, dict) and {"p", "entries", "fallback"} <=
            set(obj), "filler table JSON must carry p, entries, fallback")
    p = map_from_json(obj["p"])
    entries = {}
    for e in obj["entries"]:
        _expect(isinstance(e, dict) and
                {"dim", "boundary", "target", "filler"} <= set(e),
                "entry must carry dim, boundary, target, filler")
        entries[square_key(e["dim"], e["target"], e["boundary"])] = \
            e["filler"]
    return FillerTable(p, entries, obj["fallback"])
