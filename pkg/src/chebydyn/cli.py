"""Command-line frontend: renders, classification, bifurcation scan,
special-case verification and the HTTP service."""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from pathlib import Path

from .analysis import cat_membership, verification_report_json, verify_special_cases
from .fixed_points import critical_points, stability_report
from .imaging import default_palette, encode_image
from .orbits import IterationConfig, find_cycles
from .plane import (
    DEFAULT_DYNAMICAL_VIEW,
    DEFAULT_PARAMETER_VIEW,
    PlaneSpec,
    bifurcation_scan,
    render_dynamical_plane,
    render_parameter_plane,
)

_COMPLEX_RE = re.compile(
    r"^\s*([+-]?\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)?\s*"
    r"(?:([+-]\s*\d*(?:\.\d*)?(?:[eE][+-]?\d+)?)\s*[ij])?\s*$"
)


def parse_complex(text: str) -> complex:
    """Accepts '3', '3+0i', '2.5-0.3i', '1+0.3j', '-0.5i'."""
    t = text.strip().replace(" ", "")
    if t.endswith(("i", "j")) and not any(c in t[1:] for c in "+-"):
        # pure imaginary like '0.3i' or '-2j'
        body = t[:-1]
        if body in ("", "+", "-"):
            body += "1"
        return complex(0.0, float(body))
    m = _COMPLEX_RE.match(t)
    if not m or (m.group(1) is None and m.group(2) is None):
        raise argparse.ArgumentTypeError(f"cannot parse complex number {text!r}")
    re_part = float(m.group(1)) if m.group(1) else 0.0
    im_text = m.group(2)
    if im_text is None:
        im_part = 0.0
    else:
        im_text = im_text.replace(" ", "")
        if im_text in ("+", "-"):
            im_text += "1"
        im_part = float(im_text)
    return complex(re_part, im_part)


def _iteration_config(args) -> IterationConfig:
    transient = min(200, max(1, args.max_iter // 2))
    return IterationConfig(max_iter=args.max_iter, eps_converge=args.eps,
                           transient=transient)


def _add_viewport(parser, view):
    parser.add_argument("--re0", type=float, default=view[0])
    parser.add_argument("--re1", type=float, default=view[1])
    parser.add_argument("--im0", type=float, default=view[2])
    parser.add_argument("--im1", type=float, default=view[3])
    parser.add_argument("--width", type=int, default=600)
    parser.add_argument("--height", type=int, default=480)
    parser.add_argument("--max-iter", type=int, default=300, dest="max_iter")
    parser.add_argument("--eps", type=float, default=1e-8)
    parser.add_argument("--out", type=Path, required=True,
                        help="output image (.ppm or .png); a JSON stats sidecar is written next to it")


def _write_grid(grid, out: Path) -> None:
    fmt = "png" if out.suffix.lower() == ".png" else "ppm"
    out.write_bytes(encode_image(grid, default_palette(grid), fmt=fmt))
    sidecar = out.with_suffix(out.suffix + ".json")
    doc = grid.to_json_dict()
    sidecar.write_text(json.dumps({"spec": doc["spec"], "legend": doc["legend"],
                                   "stats": doc["stats"]}, indent=2))
    print(f"wrote {out} and {sidecar}")


def cmd_param_plane(args) -> int:
    spec = PlaneSpec.from_viewport(args.re0, args.re1, args.im0, args.im1,
                                   args.width, args.height, kind="parameter",
                                   iteration=_iteration_config(args))
    _write_grid(render_parameter_plane(spec), args.out)
    return 0


def cmd_dyn_plane(args) -> int:
    spec = PlaneSpec.from_viewport(args.re0, args.re1, args.im0, args.im1,
                                   args.width, args.height, kind="dynamical",
                                   alpha=args.alpha,
                                   iteration=_iteration_config(args))
    _write_grid(render_dynamical_plane(spec), args.out)
    return 0


def classify_payload(alpha: complex, cfg: IterationConfig | None = None) -> dict:
    cfg = cfg or IterationConfig()
    fps = stability_report(alpha)
    cs = critical_points(alpha)
    verdict = cat_membership(alpha, cfg)
    cycles = find_cycles(alpha, cfg)
    def point_json(p):
        return {"infinity": True} if p.infinite else {"re": p.value.real, "im": p.value.imag}
    return {
        "alpha": {"re": complex(alpha).real, "im": complex(alpha).imag},
        "fixed_points": [
            {
                "label": f.label,
                "location": point_json(f.location),
                "multiplier": {"re": f.multiplier.real, "im": f.multiplier.imag},
                "modulus": abs(f.multiplier),
                "multiplicity": f.multiplicity,
                "stability": f.stability.value,
            }
            for f in fps
        ],
        "critical_points": {
            "degenerate": cs.degenerate,
            "points": [point_json(p) for p in cs.points],
        },
        "cat_verdict": verdict.to_json_dict(),
        "cycles": [c.to_json_dict() for c in cycles],
    }


def cmd_classify(args) -> int:
    print(json.dumps(classify_payload(args.alpha), indent=2))
    return 0


def cmd_bifurcation(args) -> int:
    data = bifurcation_scan(args.min, args.max, args.step)
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        header = ["alpha"]
        for k in ("one", "s1", "s2"):
            header += [f"{k}_re", f"{k}_im", f"{k}_modulus"]
        header += ["c1_re", "c1_im", "c2_re", "c2_im"]
        writer.writerow(header)
        for i, a in enumerate(data.alphas):
            row = [f"{a:.10g}"]
            for k in ("one", "s1", "s2"):
                z = data.locations[k][i]
                row += [f"{z.real:.12g}", f"{z.imag:.12g}", f"{data.moduli[k][i]:.12g}"]
            for k in ("c1", "c2"):
                z = data.critical[k][i]
                row += [f"{z.real:.12g}", f"{z.imag:.12g}"]
            writer.writerow(row)
    windows = {k: data.attracting_windows(k) for k in ("one", "s1", "s2")}
    print(json.dumps({"csv": str(args.out), "attracting_windows": windows}, indent=2))
    return 0


def cmd_verify(args) -> int:
    rows = verify_special_cases()
    report = verification_report_json(rows)
    if args.json:
        Path(args.json).write_text(json.dumps(report, indent=2))
    failures = [r for r in rows if not r.passed]
    for r in rows:
        mark = "ok " if r.passed else "FAIL"
        print(f"[{mark}] {r.case}  (residual {r.residual:.3e})")
    print(f"{len(rows) - len(failures)}/{len(rows)} rows passed")
    return 1 if failures else 0


def cmd_serve(args) -> int:
    from .server import serve_http

    serve_http(port=args.port, host=args.host, ui_dir=args.ui_dir)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chebydyn",
        description="Dynamics of the Chebyshev-Halley family on quadratics: "
                    "parameter/dynamical plane renders, stability reports, "
                    "bifurcation scans and closed-form verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("param-plane", help="render the parameter plane (the cat set)")
    _add_viewport(p, DEFAULT_PARAMETER_VIEW)
    p.set_defaults(func=cmd_param_plane)

    p = sub.add_parser("dyn-plane", help="render a dynamical plane for one alpha")
    p.add_argument("--alpha", type=parse_complex, required=True,
                   help="family parameter, e.g. 3+0i")
    _add_viewport(p, DEFAULT_DYNAMICAL_VIEW)
    p.set_defaults(func=cmd_dyn_plane)

    p = sub.add_parser("classify", help="stability report, critical points and cat verdict as JSON")
    p.add_argument("--alpha", type=parse_complex, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("bifurcation", help="real-axis bifurcation scan to CSV")
    p.add_argument("--min", type=float, default=1.0)
    p.add_argument("--max", type=float, default=4.0)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_bifurcation)

    p = sub.add_parser("verify", help="run the closed-form special-case table")
    p.add_argument("--json", type=Path, default=None, help="also write the report as JSON")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("serve", help="start the HTTP API")
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--ui-dir", type=Path, default=None,
                   help="also serve this directory of static UI files at /")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
