"""Command-line front end.

Every subcommand prints one JSON document on stdout. Exit status is 0 on
success, 1 when a mathematical verification fails and 2 for bad input.
Arguments documented as JSON accept either inline JSON or a path to a file
holding it.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import __version__
from .certificate import certificate_to_dict, principality_certificate
from .errors import CertificateError, InputError, K3PolError, VerificationError
from .lattice import (
    divisibility,
    is_primitive,
    k3_lattice,
    k3n_lattice,
    pairing,
    signature,
    standard_lattice,
)
from .mukai import (
    beauville_mukai_vector,
    canonical_invariant,
    enumerate_invariant_set,
    h_lambda,
    moduli_dimension,
    mukai_pairing,
    mukai_vector_of_sheaf,
)
from .periods import (
    PeriodPoint,
    in_period_perp,
    is_period_point,
    isotropic_positive_pairing_check,
    one_one_lattice,
    same_positive_component,
)
from .serialize import (
    decode_int,
    decode_lattice,
    decode_matrix,
    decode_rational_list,
    decode_vector,
    encode,
    encode_lattice,
)
from .zlinalg import (
    hermite_normal_form,
    integer_kernel,
    orthogonal_complement,
    polarization_type,
    saturation,
    smith_normal_form,
    symplectic_normal_form,
)

EXIT_OK, EXIT_VERIFY, EXIT_INPUT = 0, 1, 2

LATTICE_NAMES = {"U": "U", "e8neg": "E8neg", "k3": "K3", "k3n": "K3n", "mukai": "Mukai", "rank1": "rank_one"}


class UsageError(InputError):
    pass


def load_json(arg: str):
    """Parse ``arg`` as inline JSON, falling back to reading it as a file path."""
    text = arg.strip()
    if text[:1] in "[{\"" or text[:1].isdigit() or text[:1] == "-":
        try:
            return json.loads(text)
        except json.JSONDecodeError:
            if not os.path.exists(arg):
                raise InputError(f"invalid JSON: {arg[:60]!r}") from None
    try:
        with open(arg, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {arg}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {arg}: {exc}") from None
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {arg}: {exc}") from None


def load_lattice(arg: str):
    doc = load_json(arg)
    if isinstance(doc, dict) and "name" in doc and "gram" not in doc:
        name = LATTICE_NAMES.get(str(doc["name"]), str(doc["name"]))
        param = doc.get("n", doc.get("k"))
        return standard_lattice(name, None if param is None else decode_int(param))
    return decode_lattice(doc)


def _lattice_report(lat) -> dict:
    out = encode_lattice(lat)
    out.update({
        "signature": list(signature(lat)),
        "determinant": lat.determinant(),
        "even": lat.is_even(),
        "unimodular": lat.is_unimodular(),
    })
    return out


# -- subcommand handlers ----------------------------------------------------

def cmd_lattice(args):
    name = LATTICE_NAMES[args.name]
    if name == "rank_one":
        if args.k is None:
            raise UsageError("--name rank1 needs --k")
        lat = standard_lattice(name, args.k)
    elif name == "K3n":
        if args.n is None:
            raise UsageError("--name k3n needs --n")
        lat = standard_lattice(name, args.n)
    else:
        lat = standard_lattice(name)
    return _lattice_report(lat)


def cmd_info(args):
    return _lattice_report(load_lattice(args.lattice))


def cmd_snf(args):
    s, u, v = smith_normal_form(decode_matrix(load_json(args.matrix)))
    diag = [s[i][i] for i in range(min(len(s), len(s[0])))]
    return {"S": s, "U": u, "V": v, "diagonal": diag}


def cmd_hnf(args):
    h, u = hermite_normal_form(decode_matrix(load_json(args.matrix)))
    return {"H": h, "U": u}


def cmd_kernel(args):
    return {"kernel": integer_kernel(decode_matrix(load_json(args.matrix)))}


def cmd_poltype(args):
    m = decode_matrix(load_json(args.matrix))
    ptype = polarization_type(m)
    _, t = symplectic_normal_form(m)
    return {"type": list(ptype.chain), "transform": t, "principal": ptype.is_principal}


def _vectors(lat, arg):
    doc = load_json(arg)
    if not isinstance(doc, list) or not doc:
        raise InputError("expected a nonempty JSON array of vectors")
    return [decode_vector(lat, x) for x in doc]


def cmd_complement(args):
    lat = load_lattice(args.lattice)
    return {"basis": orthogonal_complement(lat, _vectors(lat, args.vectors))}


def cmd_saturate(args):
    lat = load_lattice(args.lattice)
    return {"basis": saturation(lat, _vectors(lat, args.vectors))}


def cmd_div(args):
    lat = load_lattice(args.lattice)
    x = decode_vector(lat, load_json(args.vector))
    return {
        "divisibility": divisibility(x),
        "primitive": is_primitive(x),
        "self_pairing": pairing(x, x),
        "isotropic": pairing(x, x) == 0,
    }


def _lambda(n, arg):
    return decode_vector(k3n_lattice(n), load_json(arg))


def cmd_invariant(args):
    h = h_lambda(args.n, _lambda(args.n, args.lambda_))
    return {
        "n": args.n,
        "d": h.d,
        "b": h.b,
        "b_star": h.invariant.b_star,
        "gram_H": h.gram,
        "witness_basis": list(h.witness_basis),
        "iota_lambda": h.image,
        "v": h.v,
    }


def cmd_enumerate(args):
    n = args.n
    if n < 2:
        raise UsageError("--n must be at least 2")
    ds = [args.d] if args.d is not None else [d for d in range(1, n) if (n - 1) % (d * d) == 0]
    return {"classes": [[c.n, c.d, c.b_star] for d in ds for c in enumerate_invariant_set(n, d)]}


def cmd_canonical(args):
    c = canonical_invariant(args.n, args.d, args.b)
    return {"n": c.n, "d": c.d, "b_star": c.b_star}


def cmd_bm(args):
    wit = beauville_mukai_vector(args.n, args.d, args.b)
    checks = {name: {"value": val, "status": "pass" if ok else "fail"}
              for name, (val, ok) in wit.checks.items()}
    return {
        "n": wit.n,
        "d": wit.d,
        "b": wit.b,
        "k": wit.k,
        "s": wit.s,
        "beta": wit.beta,
        "v": {"r": wit.v.r, "c": wit.v.c, "s": wit.v.s},
        "alpha": {"r": 0, "c": wit.alpha.c, "s": 1},
        "(v,v)": wit.checks["(v,v)"][0],
        "moduli_dimension": wit.checks["moduli_dimension"][0],
        "div_alpha": wit.checks["div_alpha"][0],
        "div_check": "pass" if wit.checks["div_alpha"][1] else "fail",
        "checks": checks,
    }


def cmd_mukai(args):
    k3 = k3_lattice()
    c1 = decode_vector(k3, load_json(args.c1)) if args.c1 else k3.zero()
    v = mukai_vector_of_sheaf(args.rank, c1, args.c2)
    vv = mukai_pairing(v, v)
    out = {"v": {"r": v.r, "c": v.c, "s": v.s}, "(v,v)": vv}
    out["moduli_dimension"] = moduli_dimension(v) if vv >= -2 else None
    return out


def cmd_certificate(args):
    lam = _lambda(args.n, args.lambda_)
    try:
        cert = principality_certificate(args.n, lam, b_override=args.b)
    except CertificateError as exc:
        exc.payload = certificate_to_dict(exc.certificate)
        raise
    return certificate_to_dict(cert)


def cmd_period(args):
    lat = load_lattice(args.lattice)
    p = PeriodPoint(lat, decode_rational_list(load_json(args.x)), decode_rational_list(load_json(args.y)))
    valid = is_period_point(p)
    out = {"is_period_point": valid}
    if valid:
        out["one_one_basis"] = one_one_lattice(p)
        out["one_one_rank"] = len(out["one_one_basis"])
        if args.lambda_ is not None:
            out["in_period_perp"] = in_period_perp(p, decode_vector(lat, load_json(args.lambda_)))
    elif args.lambda_ is not None:
        raise InputError("cannot test lambda against an invalid period")
    return out


def cmd_cone(args):
    lat = load_lattice(args.lattice)
    x = decode_rational_list(load_json(args.x))
    out = {}
    if args.y is not None:
        out["same_component"] = same_positive_component(lat, x, decode_rational_list(load_json(args.y)))
    if args.lambda_ is not None:
        out["sign"] = isotropic_positive_pairing_check(lat, x, decode_vector(lat, load_json(args.lambda_)))
    if not out:
        raise UsageError("cone needs --y and/or --lambda")
    return out


def cmd_selftest(args):
    from .selftest import run_selftest

    report = run_selftest(seed=args.seed, trials=args.trials)
    if not report["ok"]:
        err = VerificationError("selftest found a failing property")
        err.payload = report
        raise err
    return report


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write JSON here instead of stdout")

    p = argparse.ArgumentParser(prog="k3pol", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("lattice", cmd_lattice, "emit a standard lattice")
    sp.add_argument("--name", required=True, choices=sorted(LATTICE_NAMES))
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)

    sp = add("info", cmd_info, "signature, determinant and parity of a lattice")
    sp.add_argument("--lattice", required=True)

    for name, fn, help_ in (("snf", cmd_snf, "Smith normal form"),
                            ("hnf", cmd_hnf, "Hermite normal form"),
                            ("kernel", cmd_kernel, "integer kernel"),
                            ("poltype", cmd_poltype, "polarization type of an alternating form")):
        sp = add(name, fn, help_)
        sp.add_argument("--matrix", required=True)

    for name, fn, help_ in (("complement", cmd_complement, "orthogonal complement"),
                            ("saturate", cmd_saturate, "saturation of a sublattice")):
        sp = add(name, fn, help_)
        sp.add_argument("--lattice", required=True)
        sp.add_argument("--vectors", required=True)

    sp = add("div", cmd_div, "divisibility of a vector")
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--vector", required=True)

    sp = add("invariant", cmd_invariant, "monodromy invariant h(lambda)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--lambda", dest="lambda_", required=True)

    sp = add("enumerate", cmd_enumerate, "list the classes of I_(n,d)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int)

    sp = add("canonical", cmd_canonical, "canonical form of an invariant (n, d, b)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)

    sp = add("bm", cmd_bm, "Beauville-Mukai witness with verification report")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)

    sp = add("mukai", cmd_mukai, "Mukai vector of a sheaf")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--c1")
    sp.add_argument("--c2", type=int, default=0)

    sp = add("certificate", cmd_certificate, "principality certificate")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--lambda", dest="lambda_", required=True)
    sp.add_argument("--b", type=int, help="override b for the witness (testing the failure path)")

    sp = add("period", cmd_period, "period-domain membership and (1,1)-lattice")
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)
    sp.add_argument("--lambda", dest="lambda_")

    sp = add("cone", cmd_cone, "positive-cone component and isotropic pairing sign")
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--x", required=True)
    sp.add_argument("--y")
    sp.add_argument("--lambda", dest="lambda_")

    sp = add("selftest", cmd_selftest, "randomized property checks")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=50)
    return p


def _emit(doc, output: Optional[str]):
    text = json.dumps(encode(doc))
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) if exc.code in (0, None) else EXIT_INPUT
    output = getattr(args, "output", None)
    try:
        doc = args.func(args)
    except VerificationError as exc:
        print(f"k3pol: verification failed: {exc}", file=sys.stderr)
        payload = getattr(exc, "payload", None)
        if payload is not None:
            _emit(payload, output)
        return EXIT_VERIFY
    except (K3PolError, ValueError, TypeError, KeyError, OverflowError, RecursionError) as exc:
        print(f"k3pol: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        _emit(doc, output)
    except OSError as exc:
        print(f"k3pol: cannot write output: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
