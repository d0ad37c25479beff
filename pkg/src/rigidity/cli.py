"""Command-line interface.

Three subcommands expose the package's headline computations as
machine-readable reports:

``intersection``
    Samples the rotation profile of an origami's multicurve over a uniform
    angle grid, writes the profile as CSV and a JSON summary to stdout.
    The profile of any nonzero multicurve varies with the angle, and the
    summary flags whether the sampled spread refutes a constant value at
    one half.

``horocycle``
    Runs the unit-horocycle crossing experiment on the geodesic between
    two orthogonal boundary points and reports the crossing distance
    (log 2) and its exponential decay (1/2).  Exits with code 2 when the
    computed distance misses log 2 by more than the tolerance.

``smoothness``
    Analyzes the distance function along a polynomial matrix path (or a
    characteristic polynomial directly with ``--charpoly``): branching index
    by Newton polygon, an independent monodromy check, and residuals of the
    reparametrized and naive polynomial fits.  Exits with code 3 when the
    two branch indices disagree.

Exit codes: 0 success, 1 input or domain error, 2 tolerance violation,
3 oracle disagreement.  Identical configurations produce byte-identical
output (floats are rounded to 15 significant digits, keys are sorted).
"""

import argparse
import json
import math
import sys

from . import chplane, flatsurf, symdom
from .exactpoly import BivariatePolynomial, GaussianRational, RationalPoly

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_TOLERANCE = 2
EXIT_DISAGREEMENT = 3

# every domain error in the package subclasses ValueError; the rest covers
# unreadable files and structurally malformed JSON
_DOMAIN_ERRORS = (ValueError, OSError, TypeError, KeyError)


def _round15(x):
    return float(f"{float(x):.15g}")


def _emit_json(payload, out_path=None):
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    sys.stdout.write(text)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _parse_direction(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"direction must look like 'p,q', got {text!r}")
    return int(parts[0]), int(parts[1])


def cmd_intersection(args):
    if args.samples < 1:
        raise ValueError("need at least one sample")
    if args.tolerance <= 0:
        raise ValueError("tolerance must be positive")
    origami = flatsurf.load_origami(args.origami)
    direction = _parse_direction(args.direction)
    multicurve = flatsurf.FlatMulticurve.from_cylinders(
        flatsurf.cylinder_decomposition(origami, direction)
    )
    samples = args.samples
    thetas = [2 * math.pi * j / samples for j in range(samples)]
    values = [flatsurf.intersection_profile(multicurve, th) for th in thetas]

    lines = ["theta,value"]
    lines += [f"{th:.15g},{val:.15g}" for th, val in zip(thetas, values)]
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")

    vmax, vmin = max(values), min(values)
    witness = thetas[max(range(samples), key=lambda j: abs(values[j] - values[0]))]
    summary = {
        "max": _round15(vmax),
        "min": _round15(vmin),
        "witness_theta": _round15(witness),
        "constant_half_refuted": bool(vmax - vmin > args.tolerance),
    }
    if args.length_bound is not None:
        census = flatsurf.saddle_connections(origami, args.length_bound)
        summary["saddle_connection_count"] = len(census)
    _emit_json(summary)
    return EXIT_OK


def cmd_horocycle(args):
    result = chplane.step2_verify(theta_twist=args.theta_twist)
    payload = {k: (_round15(v) if isinstance(v, float) else [_round15(x) for x in v])
               for k, v in result.to_json_dict().items()}
    _emit_json(payload, args.out)
    if abs(result.dist - math.log(2)) > args.tolerance:
        print(
            f"distance {result.dist!r} misses log(2) by more than {args.tolerance}",
            file=sys.stderr,
        )
        return EXIT_TOLERANCE
    return EXIT_OK


def _load_charpoly(path):
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return BivariatePolynomial([
        RationalPoly([GaussianRational(str(re), str(im)) for re, im in row])
        for row in data
    ])


def _monodromy_radius(P, epsilon):
    """Deterministic tracking radius clear of every nonzero branch point."""
    radius = min(0.01, epsilon / 4.0)
    bad = symdom._nonzero_discriminant_roots(P)
    if len(bad):
        radius = min(radius, 0.5 * min(abs(b) for b in bad))
    return radius


def cmd_smoothness(args):
    if args.charpoly:
        P = _load_charpoly(args.path)
        report = symdom.smoothness_report_from_charpoly(P, args.epsilon)
    else:
        with open(args.path, encoding="utf-8") as fh:
            path = symdom.PolynomialMatrixPath.from_json(json.load(fh))
        P = symdom.charpoly_path(path)
        report = symdom.smoothness_report(path, args.epsilon)
    polygon_k = symdom.newton_puiseux_index(P).K
    monodromy_k = symdom.monodromy_branch_index(P, _monodromy_radius(P, args.epsilon))
    agreement = polygon_k == monodromy_k
    payload = {
        "K": report.K,
        "newton_puiseux_K": polygon_k,
        "monodromy_K": monodromy_k,
        "agreement": agreement,
        "fit_residual": _round15(report.fit_residual),
        "naive_residual": _round15(report.naive_residual),
        "epsilon": _round15(report.epsilon),
    }
    _emit_json(payload, args.out)
    if not agreement:
        print(
            f"branch index mismatch: polygon {polygon_k}, monodromy {monodromy_k}",
            file=sys.stderr,
        )
        return EXIT_DISAGREEMENT
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rigidity",
        description="flat-surface profiles, horocycle distances, and "
                    "matrix-ball smoothness reports",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_int = sub.add_parser("intersection", help="rotation profile of a multicurve")
    p_int.add_argument("--origami", required=True, help="origami JSON file")
    p_int.add_argument("--samples", type=int, default=360, help="angle grid size")
    p_int.add_argument("--tolerance", type=float, default=1e-9)
    p_int.add_argument("--direction", default="1,0",
                       help="cylinder direction for the multicurve, as 'p,q'")
    p_int.add_argument("--length-bound", type=float, default=None,
                       help="also report the saddle connection count up to this length")
    p_int.add_argument("--out", default="profile.csv", help="CSV output path")
    p_int.set_defaults(func=cmd_intersection)

    p_hor = sub.add_parser("horocycle", help="unit-horocycle crossing distance")
    p_hor.add_argument("--tolerance", type=float, default=1e-9)
    p_hor.add_argument("--theta-twist", type=float, default=0.0,
                       help="twist angle applied to the first boundary point")
    p_hor.add_argument("--out", default=None, help="optional JSON output path")
    p_hor.set_defaults(func=cmd_horocycle)

    p_smo = sub.add_parser("smoothness", help="branch index and fit residuals")
    p_smo.add_argument("--path", required=True,
                       help="polynomial matrix path JSON file")
    p_smo.add_argument("--charpoly", action="store_true",
                       help="interpret the file as a bivariate polynomial instead")
    p_smo.add_argument("--epsilon", type=float, default=0.1)
    p_smo.add_argument("--tolerance", type=float, default=1e-8)
    p_smo.add_argument("--out", default=None, help="optional JSON output path")
    p_smo.set_defaults(func=cmd_smoothness)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
