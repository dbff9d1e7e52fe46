"""Command line front end.

Every subcommand reads JSON (inline, from a file, or from stdin),
writes one JSON document to standard output, and exits 0 on success,
1 when a verification or mathematical property fails, 2 on malformed
input.  Output is deterministic for fixed inputs: keys are sorted and
the only randomness, the isomorphism search, is seeded.
"""

import argparse
import json
import sys

from . import jsonio
from .delta_quiver import delta_hom
from .errors import (ConstraintViolated, DecompositionFailed, NoSolution,
                     NotInInterval, NotKAlgebra, PreconditionViolated,
                     SummandObstruction)
from .functors import (TwoMatrixModule, end_quotient_data, f_morphism,
                       f_object, g_embed, g_framed, g_triple, phi_morphism,
                       phi_object)
from .subpair_category import hom_pairs, hom_through_I
from .verify import run_oracle, run_verify

INTERVAL_COMMANDS = {"f-apply", "phi-apply", "g-embed", "end-quotient"}


class InputError(ValueError):
    pass


def _load_json(raw, what):
    if raw is None:
        raise InputError(f"{what}: no input given (use --in)")
    try:
        if raw == "-":
            return json.load(sys.stdin)
        if raw.lstrip().startswith(("{", "[")):
            return json.loads(raw)
        with open(raw) as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"{what}: cannot read {raw!r}: {e}")
    except json.JSONDecodeError as e:
        raise InputError(f"{what}: malformed JSON: {e}")


def _ring_of(args, command):
    if args.ring is None:
        raise InputError("--ring is required for this subcommand")
    ring = jsonio.ring_from_json(_load_json(args.ring, "--ring"))
    if command in INTERVAL_COMMANDS and ring.n < 7:
        raise InputError(
            f"{command} needs a ring of length >= 7, got n = {ring.n}")
    return ring


def _emit(args, obj):
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)


def _framed_in(ring, obj, args):
    return jsonio.framed_from_json(ring, obj, seed=args.seed,
                                   budget=args.budget)


def _subgroup_json(H):
    return {
        "orders": list(H.orders),
        "size": H.order(),
        "generators": [jsonio.pair_morphism_to_json(g)["rows"]
                       for g in H.gens],
    }


def _algebra_json(alg):
    return alg.to_json()


def cmd_build(args):
    ring = _ring_of(args, "build")
    obj = _load_json(getattr(args, "input"), "--in")
    if isinstance(obj, dict) and "m" in obj:
        M = _framed_in(ring, obj, args)
        out = jsonio.framed_to_json(M)
        pair = M.pair
    else:
        pair = jsonio.pair_from_json(ring, obj)
        out = jsonio.pair_to_json(pair)
    _emit(args, {
        "object": out,
        "M0_partition": list(pair.M0.parts),
        "M1_partition": list(pair.M1.as_module().module.parts),
        "M0_size": pair.M0.size(),
        "M1_size": pair.M1.size(),
    })
    return 0


def cmd_layers(args):
    ring = _ring_of(args, "layers")
    pair = jsonio.pair_from_json(ring, _load_json(args.input, "--in"))
    lay = pair.layers()
    out = {}
    for i in range(1, 7):
        li = lay.L(i)
        out[f"L{i}"] = {
            "rows": [[ring.element_to_json(e) for e in r] for r in li.rows],
            "partition": list(li.as_module().module.parts),
        }
    _emit(args, {"layers": out})
    return 0


def cmd_f_apply(args):
    ring = _ring_of(args, "f-apply")
    obj = _load_json(args.input, "--in")
    if isinstance(obj, dict) and "morphism" in obj:
        for key in ("source", "target"):
            if key not in obj:
                raise InputError(f"morphism mode needs {key}")
        S = _framed_in(ring, obj["source"], args)
        T = _framed_in(ring, obj["target"], args)
        f = jsonio.pair_morphism_from_json(S.pair, T.pair, obj["morphism"])
        g = f_morphism(f, S, T)
        _emit(args, {"source_rep": f_object(S).to_json(),
                     "target_rep": f_object(T).to_json(),
                     "morphism": jsonio.delta_morphism_to_json(g)})
        return 0
    M = _framed_in(ring, obj, args)
    _emit(args, {"rep": f_object(M).to_json()})
    return 0


def _triple_in(ring, obj, what):
    if not isinstance(obj, dict):
        raise InputError(f"{what} must be an object with m, V, U")
    for key in ("m", "V", "U"):
        if key not in obj:
            raise InputError(f"{what} is missing {key}")
    m = obj["m"]
    if not isinstance(m, int) or m < 0:
        raise InputError(f"{what}.m must be a nonnegative integer")
    F = ring.field
    v = jsonio.field_rows_from_json(F, obj["V"], m, f"{what}.V")
    u = jsonio.field_rows_from_json(F, obj["U"], 2 * m, f"{what}.U")
    return m, v, u


def cmd_phi_apply(args):
    ring = _ring_of(args, "phi-apply")
    obj = _load_json(args.input, "--in")
    if isinstance(obj, dict) and "g" in obj:
        for key in ("source", "target"):
            if key not in obj:
                raise InputError(f"morphism mode needs {key}")
        ms, vs, us = _triple_in(ring, obj["source"], "source")
        mt, vt, ut = _triple_in(ring, obj["target"], "target")
        S = phi_object(ring, ms, vs, us)
        T = phi_object(ring, mt, vt, ut)
        g = jsonio.field_rows_from_json(ring.field, obj["g"], ms, "g")
        if len(g) != mt:
            raise InputError(f"g must have {mt} rows")
        f = phi_morphism(S, T, g)
        _emit(args, {"source": jsonio.framed_to_json(S),
                     "target": jsonio.framed_to_json(T),
                     "morphism": jsonio.pair_morphism_to_json(f)})
        return 0
    m, v, u = _triple_in(ring, obj, "triple")
    M = phi_object(ring, m, v, u)
    _emit(args, jsonio.framed_to_json(M))
    return 0


def cmd_g_embed(args):
    ring = _ring_of(args, "g-embed")
    obj = _load_json(args.input, "--in")
    if not isinstance(obj, dict) or "X" not in obj or "Y" not in obj:
        raise InputError("g-embed input needs X and Y")
    F = ring.field
    xrows = obj["X"]
    if not isinstance(xrows, list):
        raise InputError("X must be an array of rows")
    d = len(xrows)
    X = jsonio.field_rows_from_json(F, obj["X"], d, "X")
    Y = jsonio.field_rows_from_json(F, obj["Y"], d, "Y")
    if len(Y) != d:
        raise InputError(f"Y must be {d} x {d} like X")
    V = TwoMatrixModule(F, d, X, Y)
    M = g_framed(ring, V)
    m, v_rows, u_rows = g_triple(V)
    data = end_quotient_data(M)
    _emit(args, {
        "rep": g_embed(V).to_json(),
        "triple": {"m": m, "V": [list(r) for r in v_rows],
                   "U": [list(r) for r in u_rows]},
        "pair": jsonio.framed_to_json(M),
        "end_quotient": {
            "end": _subgroup_json(data.end),
            "ideal": _subgroup_json(data.ideal),
            "algebra": _algebra_json(data.algebra),
        },
    })
    return 0


def cmd_hom(args):
    ring = _ring_of(args, "hom")
    obj = _load_json(args.input, "--in")
    if not isinstance(obj, dict) or "source" not in obj \
            or "target" not in obj:
        raise InputError("hom input needs source and target pairs")
    A = jsonio.pair_from_json(ring, obj["source"])
    B = jsonio.pair_from_json(ring, obj["target"])
    H = hom_pairs(A, B)
    out = {"hom": _subgroup_json(H)}
    if ring.n >= 7:
        out["through_ideal"] = _subgroup_json(hom_through_I(A, B))
    _emit(args, out)
    return 0


def cmd_end_quotient(args):
    ring = _ring_of(args, "end-quotient")
    M = _framed_in(ring, _load_json(args.input, "--in"), args)
    data = end_quotient_data(M)
    _emit(args, {
        "end": _subgroup_json(data.end),
        "ideal": _subgroup_json(data.ideal),
        "algebra": _algebra_json(data.algebra),
    })
    return 0


def _report(args, results):
    ok = all(r.passed for r in results)
    _emit(args, {"pass": ok, "results": [r.to_json() for r in results]})
    return 0 if ok else 1


def cmd_verify(args):
    return _report(args, run_verify(seed=args.seed, budget=args.budget))


def cmd_oracle(args):
    return _report(args, run_oracle(seed=args.seed, budget=args.budget))


_COMMANDS = {
    "build": cmd_build,
    "layers": cmd_layers,
    "f-apply": cmd_f_apply,
    "phi-apply": cmd_phi_apply,
    "g-embed": cmd_g_embed,
    "hom": cmd_hom,
    "end-quotient": cmd_end_quotient,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
}


def build_parser():
    top = argparse.ArgumentParser(
        prog="submodcat",
        description="Exact computations with submodule pairs over finite "
                    "chain rings.")
    sub = top.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--ring", help="ring descriptor JSON or path")
        p.add_argument("--in", dest="input",
                       help="input JSON: path, inline, or - for stdin")
        p.add_argument("--out", help="also write the output JSON here")
        p.add_argument("--budget", type=int, default=4096,
                       help="enumeration and search budget")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for randomized isomorphism search")
    return top


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    except (NotInInterval, DecompositionFailed, NotKAlgebra,
            ConstraintViolated, PreconditionViolated, SummandObstruction,
            NoSolution) as e:
        print(f"verification failure: {e}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, TypeError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
