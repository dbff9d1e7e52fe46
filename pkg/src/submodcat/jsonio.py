"""JSON encoding of the toolkit's objects.

Ring elements follow the ring's own convention: plain integers for
Z/p^n, coefficient arrays lowest degree first for F_q[T]/T^n.  Field
entries are integers below q throughout.  Decoders validate shapes and
entry ranges and raise ValueError naming the offending field, so the
command line can map them to input errors.
"""

from . import fields
from .chain_ring import ring_from_descriptor
from .delta_quiver import DeltaMorphism, DeltaRep, rep_from_json
from .errors import NotInInterval
from .functors import FramedObject, phi_object
from .lambda_modules import (ModMorphism, PartitionModule,
                             submodule_from_rows)
from .subpair_category import SubPair, PairMorphism, pair_iso_witness

__all__ = [
    "ring_to_json", "ring_from_json", "pair_to_json", "pair_from_json",
    "framed_to_json", "framed_from_json", "rep_to_json", "rep_from_json",
    "pair_morphism_to_json", "pair_morphism_from_json",
    "delta_morphism_to_json", "delta_morphism_from_json",
    "field_rows_from_json",
]


def ring_to_json(ring):
    return ring.descriptor()


def ring_from_json(obj):
    try:
        return ring_from_descriptor(obj)
    except (KeyError, TypeError) as e:
        raise ValueError(f"bad ring descriptor: {e}")


def _ring_rows_to_json(ring, rows):
    return [[ring.element_to_json(e) for e in r] for r in rows]


def _ring_rows_from_json(ring, obj, width, field_name):
    if not isinstance(obj, list):
        raise ValueError(f"{field_name} must be an array of rows")
    rows = []
    for i, r in enumerate(obj):
        if not isinstance(r, list) or len(r) != width:
            raise ValueError(
                f"{field_name}[{i}] must be an array of length {width}")
        try:
            rows.append(tuple(ring.element_from_json(e) for e in r))
        except ValueError as e:
            raise ValueError(f"{field_name}[{i}]: {e}")
    return rows


def field_rows_from_json(field, obj, width, field_name):
    """Rows over the residue field with entries in [0, q)."""
    if not isinstance(obj, list):
        raise ValueError(f"{field_name} must be an array of rows")
    rows = []
    for i, r in enumerate(obj):
        if not isinstance(r, list) or len(r) != width:
            raise ValueError(
                f"{field_name}[{i}] must be an array of length {width}")
        for e in r:
            if not isinstance(e, int) or not 0 <= e < field.q:
                raise ValueError(
                    f"{field_name}[{i}] has entry {e!r} outside F{field.q}")
        rows.append(tuple(r))
    return rows


def pair_to_json(pair):
    return {
        "M0": list(pair.M0.parts),
        "M1": _ring_rows_to_json(pair.ring, pair.M1.rows),
    }


def pair_from_json(ring, obj):
    if not isinstance(obj, dict):
        raise ValueError("pair must be an object with M0 and M1")
    if "M0" not in obj:
        raise ValueError("pair is missing M0")
    if "M1" not in obj:
        raise ValueError("pair is missing M1")
    parts = obj["M0"]
    if not isinstance(parts, list) or \
            any(not isinstance(a, int) for a in parts):
        raise ValueError("M0 must be an array of integers")
    try:
        m0 = PartitionModule(ring, tuple(parts))
    except ValueError as e:
        raise ValueError(f"M0: {e}")
    rows = _ring_rows_from_json(ring, obj["M1"], m0.ngens, "M1")
    return SubPair(m0, submodule_from_rows(m0, rows))


def framed_to_json(M):
    out = pair_to_json(M.pair)
    out["m"] = M.m
    out["V"] = [list(r) for r in M.v_rows]
    out["U"] = [list(r) for r in M.u_rows]
    return out


def framed_from_json(ring, obj, seed=0, budget=4000):
    """Decode a framed object, reconstructing the frame embedding.

    The stored data has no embedding; the canonical realization of the
    triple supplies one.  When the stored pair is literally the
    realization, it is reused as is, otherwise an isomorphism is
    searched for and composed in.
    """
    pair = pair_from_json(ring, obj)
    for key in ("m", "V", "U"):
        if key not in obj:
            raise ValueError(f"framed pair is missing {key}")
    if not isinstance(obj["m"], int) or obj["m"] < 0:
        raise ValueError("m must be a nonnegative integer")
    m = obj["m"]
    F = ring.field
    v = field_rows_from_json(F, obj["V"], m, "V")
    u = field_rows_from_json(F, obj["U"], 2 * m, "U")
    v = fields.row_space(F, v)
    u = fields.row_space(F, u)
    cand = phi_object(ring, m, v, u)
    if cand.pair.M0.parts == pair.M0.parts and \
            cand.pair.M1.rows == pair.M1.rows:
        return FramedObject(pair, m, v, u, cand.embed)
    iso = pair_iso_witness(pair, cand.pair, seed=seed, budget=budget)
    if not iso.found:
        raise NotInInterval(
            "frame", "stored pair is not isomorphic to the realization "
            "of its triple" + ("" if iso.conclusive
                               else " (search inconclusive)"))
    return FramedObject(pair, m, v, u, cand.embed.compose(iso.witness.f0))


def rep_to_json(rep):
    return rep.to_json()


def pair_morphism_to_json(f):
    return {"rows": _ring_rows_to_json(f.source.ring, f.f0.rows)}


def pair_morphism_from_json(source, target, obj):
    if not isinstance(obj, dict) or "rows" not in obj:
        raise ValueError("morphism must be an object with rows")
    ring = source.ring
    rows = _ring_rows_from_json(ring, obj["rows"], target.M0.ngens, "rows")
    if len(rows) != source.M0.ngens:
        raise ValueError(
            f"rows must have {source.M0.ngens} entries, one per generator")
    f0 = ModMorphism(source.M0, target.M0, image_rows=rows)
    return PairMorphism(source, target, f0)


def delta_morphism_to_json(g):
    return {"g1": [list(r) for r in g.g1],
            "g2": [list(r) for r in g.g2],
            "g3": [list(r) for r in g.g3]}


def delta_morphism_from_json(source, target, obj):
    if not isinstance(obj, dict):
        raise ValueError("morphism must be an object with g1, g2, g3")
    F = source.field
    mats = []
    for key, snd, tnd in (("g1", source.dims[0], target.dims[0]),
                          ("g2", source.dims[1], target.dims[1]),
                          ("g3", source.dims[2], target.dims[2])):
        if key not in obj:
            raise ValueError(f"morphism is missing {key}")
        rows = field_rows_from_json(F, obj[key], snd, key)
        if len(rows) != tnd:
            raise ValueError(f"{key} must have {tnd} rows")
        mats.append(tuple(rows))
    return DeltaMorphism(source, target, *mats)
