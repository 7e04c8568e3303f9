"""Command-line front end.

Subcommands:
  compute   build the signed differential algebra of a front file
  check     verify d(d(g)) = 0 for front files, optionally calibrating
            the quadrant parity convention
  aug       list augmentations over chosen coefficient rings
  lch       linearized homology and the Poincare summary set
  compare   decide whether augmentation homology tells two fronts apart
  morse     torsion homology of the two-component surgery family
  bound     double point bounds from homology dimensions

Exit codes: 0 success, 1 invalid input or failed validation, 2 internal
invariant violation.  Errors go to stderr as one-line JSON objects.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from .algebra import DgaPresentation, build_dga, check_d_squared
from .diagram import resolve
from .disks import enumerate_disks
from .front import parse_front
from .grading import GradingData, chord_gradings, shade
from .homology import (
    build_Lp_complex,
    double_point_bound,
    find_augmentations,
    improve_bound,
    k_spin,
    lch,
    poincare_set,
)

FIELD_CHOICES = ("0", "2", "3", "5", "7")


@dataclass
class RunConfig:
    """Everything a subcommand needs, resolved from flags and config file."""

    inputs: list = field(default_factory=list)
    rule: str = "A"
    spin: str = "lie"
    coeff: str = "laurent"
    fields: list = field(default_factory=lambda: [2])
    fmt: str = "text"
    dump_disks: bool = False
    svg: str | None = None
    disks_for: str | None = None
    verbose: bool = False
    quadrant_flip: bool = False  # validated default; True breaks d^2 = 0
    config_path: str | None = None
    threads: int = 1


def _load_config_bit(path: str | None) -> bool:
    if path and os.path.exists(path):
        with open(path, encoding="utf-8") as f:
            return bool(json.load(f).get("quadrant_flip", False))
    return False


def _store_config_bit(path: str, flip: bool) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump({"quadrant_flip": flip}, f)
        f.write("\n")


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("LCH_THREADS", "1")))
    except ValueError:
        return 1


def _note(cfg: RunConfig, msg: str) -> None:
    if cfg.verbose:
        print(f"note: {msg}", file=sys.stderr)


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def _emit(obj, cfg: RunConfig, text_fn) -> None:
    if cfg.fmt == "json":
        print(json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(text_fn(obj) if callable(text_fn) else text_fn)


def _read_front(path: str):
    with open(path, encoding="utf-8") as f:
        return parse_front(f.read())


def _pipeline(path: str, cfg: RunConfig):
    front = _read_front(path)
    diag = resolve(front)
    grading = chord_gradings(diag)
    shadings = {
        r: shade(diag, grading, r, flip=cfg.quadrant_flip) for r in "AB"
    }
    if cfg.coeff == "mod2" and cfg.spin == "bounding":
        _warn("mod2 coefficients ignore the spin structure; using t -> t")
    dga = build_dga(
        diag, grading, shadings, rule=cfg.rule, spin=cfg.spin, coeff=cfg.coeff
    )
    return diag, grading, shadings, dga


def _field_arg(values) -> list:
    out = []
    for v in values:
        out.append(None if v == "0" else int(v))
    return out


def _ring_name(p) -> str:
    return "Z" if p is None else f"Z_{p}"


# ---------------------------------------------------------------------------
# compute


def cmd_compute(cfg: RunConfig) -> int:
    for path in cfg.inputs:
        diag, grading, shadings, dga = _pipeline(path, cfg)
        disks = None
        if cfg.dump_disks:
            disks = {
                name: [d.to_dict() for d in enumerate_disks(diag, shadings, name)]
                for name in dga.generators
            }
        if cfg.svg:
            _write_svg(cfg, path, diag, grading, shadings)
        if cfg.fmt == "json":
            obj = {"dga": dga.to_dict(), "grading": grading.to_dict()}
            if disks is not None:
                obj["disks"] = disks
            print(json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False))
        else:
            print(_compute_text(path, grading, dga, disks))
    return 0


def _compute_text(path, grading: GradingData, dga: DgaPresentation, disks):
    lines = [
        f"front: {dga.front}",
        f"file: {path}",
        f"rule {dga.sign_rule}  spin {dga.spin}  coeff {dga.coeff}",
        f"rotation {dga.rotation}  t-degree {dga.t_degree}",
        "generators:",
    ]
    for g in dga.generators:
        lines.append(
            f"  {g}  degree {dga.degrees[g]}  action {dga.actions[g]}"
        )
    lines.append("differential:")
    for g in dga.generators:
        lines.append(f"  ∂{g} = {dga.diff[g]}")
    if disks is not None:
        lines.append("disks:")
        for g in sorted(disks):
            lines.append(f"  {g}: {len(disks[g])}")
            for d in disks[g]:
                word = "*".join(d["word"]) or "1"
                lines.append(
                    f"    word {word}  t^{d['t_exp']}  area {d['area']}  "
                    f"s_A {d['s_A']}  s_B {d['s_B']}"
                )
    return "\n".join(lines)


def _write_svg(cfg, path, diag, grading, shadings):
    from .svg import render_svg

    disks = None
    if cfg.disks_for:
        disks = list(enumerate_disks(diag, shadings, cfg.disks_for))
    doc = render_svg(
        diag, grading, shadings[cfg.rule], disks=disks,
    )
    with open(cfg.svg, "w", encoding="utf-8") as f:
        f.write(doc)
    _note(cfg, f"wrote {cfg.svg}")


# ---------------------------------------------------------------------------
# check


def cmd_check(cfg: RunConfig, calibrate: bool = False) -> int:
    if calibrate:
        return _calibrate(cfg)
    all_ok = True
    reports = []
    for path in cfg.inputs:
        per_rule = {}
        for rule in "AB":
            sub = _with(cfg, rule=rule, coeff="laurent")
            _, _, _, dga = _pipeline(path, sub)
            per_rule[rule] = check_d_squared(dga)
            all_ok = all_ok and per_rule[rule]["ok"]
        reports.append({"file": path, "rules": per_rule})

    def text(_):
        lines = []
        for rep in reports:
            for rule in "AB":
                r = rep["rules"][rule]
                verdict = "ok" if r["ok"] else "FAILED"
                bad = "" if r["ok"] else f"  residues at {sorted(r['residues'])}"
                lines.append(f"{rep['file']}  rule {rule}  d^2=0 {verdict}{bad}")
        return "\n".join(lines)

    _emit({"ok": all_ok, "reports": reports}, cfg, text)
    return 0 if all_ok else 1


def _calibrate(cfg: RunConfig) -> int:
    """Pick the quadrant parity bit that makes d^2 = 0 on the inputs and
    persist it when a config path is given."""
    outcomes = {}
    for flip in (False, True):
        ok = True
        for path in cfg.inputs:
            sub = _with(cfg, quadrant_flip=flip, coeff="laurent")
            for rule in "AB":
                _, _, _, dga = _pipeline(path, _with(sub, rule=rule))
                ok = ok and check_d_squared(dga)["ok"]
        outcomes[flip] = ok
    if outcomes[False]:
        chosen = False
    elif outcomes[True]:
        chosen = True
    else:
        _emit(
            {"calibrated": False, "outcomes": {str(k): v for k, v in outcomes.items()}},
            cfg,
            "calibration failed: neither parity convention clears d^2 = 0",
        )
        return 1
    if cfg.config_path:
        _store_config_bit(cfg.config_path, chosen)
    _emit(
        {"calibrated": True, "quadrant_flip": chosen},
        cfg,
        f"calibrated: quadrant_flip = {str(chosen).lower()}"
        + (f" (stored in {cfg.config_path})" if cfg.config_path else ""),
    )
    return 0


# ---------------------------------------------------------------------------
# aug / lch / compare


def cmd_aug(cfg: RunConfig) -> int:
    for path in cfg.inputs:
        _, _, _, dga = _pipeline(path, cfg)
        per_field = []
        for p in cfg.fields:
            augs = find_augmentations(dga, field=p, threads=cfg.threads)
            per_field.append((p, augs))

        def text(_):
            lines = [f"front: {dga.front}"]
            for p, augs in per_field:
                lines.append(f"{_ring_name(p)}: {len(augs)} augmentation(s)")
                for a in augs:
                    vals = ", ".join(
                        f"{g}={v}" for g, v in sorted(a.values.items()) if v
                    )
                    lines.append(f"  t={a.t_value}  {vals or '(all zero)'}")
            return "\n".join(lines)

        obj = {
            "front": dga.front,
            "augmentations": {
                _ring_name(p): [a.to_dict() for a in augs]
                for p, augs in per_field
            },
        }
        _emit(obj, cfg, text)
    return 0


def _poincare_json(summaries) -> list:
    out = []
    for s in summaries:
        if s.groups:
            degs = s.degrees()
            lo, hi = min(degs), max(degs)
            coeffs = [s.rank(d) for d in range(lo, hi + 1)]
        else:
            lo, coeffs = 0, []
        out.append({"offset": lo, "coeffs": coeffs, "groups": s.to_dict()})
    return out


def cmd_lch(cfg: RunConfig) -> int:
    for path in cfg.inputs:
        _, _, _, dga = _pipeline(path, cfg)
        per_field = []
        for p in cfg.fields:
            augs = find_augmentations(dga, field=p, threads=cfg.threads)
            rows = [(a, lch(dga, a)) for a in augs]
            pset = sorted((s for _, s in rows), key=lambda s: s.groups)
            per_field.append((p, rows, pset))

        def text(_):
            lines = [f"front: {dga.front}"]
            for p, rows, pset in per_field:
                lines.append(f"{_ring_name(p)}: {len(rows)} augmentation(s)")
                for a, s in rows:
                    lines.append(f"  t={a.t_value}: {s}")
                lines.append(
                    f"  poincare set: {[str(s) for s in pset]!r}".replace("'", "")
                )
            return "\n".join(lines)

        obj = {
            "front": dga.front,
            "lch": {
                _ring_name(p): {
                    "augmentations": [
                        {"aug": a.to_dict(), "homology": s.to_dict()}
                        for a, s in rows
                    ],
                    "poincare_set": _poincare_json(pset),
                }
                for p, rows, pset in per_field
            },
        }
        _emit(obj, cfg, text)
    return 0


def cmd_compare(cfg: RunConfig) -> int:
    path_a, path_b = cfg.inputs
    built = []
    for path in (path_a, path_b):
        _, grading, _, dga = _pipeline(path, cfg)
        built.append((path, grading, dga))
    (pa, ga, da), (pb, gb, db) = built

    classical = {
        "rotation": (abs(ga.rotation), abs(gb.rotation)),
        "chords": (len(da.generators), len(db.generators)),
    }
    verdict = None
    detail = ""
    if any(x != y for x, y in classical.values()):
        verdict = "inconclusive"
        detail = "classical invariants differ; homology not compared"
        sets = {}
    else:
        sets = {}
        for p in cfg.fields:
            sa = poincare_set(da, field=p, threads=cfg.threads)
            sb = poincare_set(db, field=p, threads=cfg.threads)
            sets[_ring_name(p)] = (
                [s.to_dict() for s in sa],
                [s.to_dict() for s in sb],
            )
            if [s.groups for s in sa] != [s.groups for s in sb]:
                verdict = "distinguished"
                detail = f"poincare sets differ over {_ring_name(p)}"
                break
        if verdict is None:
            verdict = "not-distinguished"
            detail = "equal poincare sets over " + ", ".join(
                _ring_name(p) for p in cfg.fields
            )

    def text(_):
        return "\n".join(
            [
                f"A: {pa}",
                f"B: {pb}",
                f"rotation |r|: {classical['rotation'][0]} vs "
                f"{classical['rotation'][1]}",
                f"chords: {classical['chords'][0]} vs {classical['chords'][1]}",
                f"verdict: {verdict} ({detail})",
            ]
        )

    obj = {
        "files": [pa, pb],
        "classical": {k: list(v) for k, v in classical.items()},
        "poincare": {k: {"A": a, "B": b} for k, (a, b) in sets.items()},
        "verdict": verdict,
        "detail": detail,
    }
    _emit(obj, cfg, text)
    return 0


# ---------------------------------------------------------------------------
# morse / bound


def cmd_morse(cfg: RunConfig, n: int, p: int) -> int:
    cx = build_Lp_complex(n, p)
    summary = cx.homology()
    torsion = [d for deg in summary.degrees() for d in summary.torsion(deg)]
    torsion_str = " ⊕ ".join(f"Z_{d}" for d in torsion) or "none"
    tdegs = [deg for deg in summary.degrees() if summary.torsion(deg)]

    def text(_):
        lines = [f"surgery family complex: n={n}, p={p}", str(summary)]
        lines.append(
            f"torsion: {torsion_str}"
            + (f" at degrees {tdegs}" if tdegs else "")
        )
        return "\n".join(lines)

    obj = {
        "n": n,
        "p": p,
        "homology": summary.to_dict(),
        "torsion": torsion,
        "torsion_degrees": tdegs,
    }
    _emit(obj, cfg, text)
    return 0


def cmd_bound(cfg: RunConfig, dims, improve_k, spin_k, chords) -> int:
    parsed: dict[int, int] = {}
    for tok in dims:
        if ":" in tok:
            d, r = tok.split(":", 1)
            parsed[int(d)] = parsed.get(int(d), 0) + int(r)
        else:
            parsed[len(parsed)] = int(tok)
    lines = []
    obj: dict = {"dims": {str(k): v for k, v in sorted(parsed.items())}}
    b = double_point_bound(parsed)
    obj["bound"] = b
    lines.append(f"double point bound: {b}")
    if spin_k is not None:
        if chords is None:
            raise ValueError("--chords is required with --spin-k")
        r2, dims2 = k_spin(chords, parsed, spin_k)
        obj["spin"] = {
            "chords": r2,
            "dims": {str(k): v for k, v in sorted(dims2.items())},
            "bound": double_point_bound(dims2),
        }
        lines.append(
            f"after spinning by S^{spin_k}: {r2} chords, "
            f"total dim {sum(dims2.values())}, bound "
            f"{double_point_bound(dims2)}"
        )
    if improve_k is not None:
        ib = improve_bound(improve_k, parsed)
        obj["improved"] = {"K": improve_k, "bound": ib}
        lines.append(f"improved bound given excess K={improve_k}: {ib}")
    _emit(obj, cfg, "\n".join(lines))
    return 0


# ---------------------------------------------------------------------------
# plumbing


def _with(cfg: RunConfig, **kw) -> RunConfig:
    out = RunConfig(**{**cfg.__dict__, **kw})
    return out


def _add_common(p: argparse.ArgumentParser, inputs: str | None = "+"):
    if inputs:
        p.add_argument("inputs", nargs=inputs, metavar="FRONT_FILE",
                       help="plat front word file")
    p.add_argument("--rule", choices=("A", "B"), default="A",
                   help="sign rule (default A)")
    p.add_argument("--spin", choices=("lie", "bounding"), default="lie",
                   help="spin structure (default lie)")
    p.add_argument("--coeff", choices=("laurent", "t1", "tm1", "mod2"),
                   default="laurent",
                   help="coefficient mode (default laurent)")
    p.add_argument("--json", dest="fmt", action="store_const", const="json",
                   default="text", help="JSON output instead of text")
    p.add_argument("--config", default=None, metavar="PATH",
                   help="JSON config holding the quadrant parity bit")
    p.add_argument("--flip-shading", action="store_true",
                   help="flip the quadrant parity convention "
                        "(diagnostic; expected to break d^2 = 0)")
    p.add_argument("--verbose", action="store_true",
                   help="progress notes on stderr")


def _add_fields(p: argparse.ArgumentParser):
    p.add_argument("--field", action="append", choices=FIELD_CHOICES,
                   default=None, metavar="P",
                   help="coefficient ring for augmentations: a prime "
                        "(2,3,5,7) or 0 for integral; repeatable")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="legch",
        description="Chord algebras of Legendrian knots from plat fronts.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="build and print the algebra")
    _add_common(p)
    p.add_argument("--dump-disks", action="store_true",
                   help="list every rigid disk behind the differential")
    p.add_argument("--svg", metavar="PATH", help="write an SVG picture")
    p.add_argument("--disks-for", metavar="CHORD",
                   help="overlay disks of this chord in the SVG")

    p = sub.add_parser("check", help="verify d^2 = 0")
    _add_common(p)
    p.add_argument("--calibrate", action="store_true",
                   help="choose and store the parity bit that clears d^2=0")

    p = sub.add_parser("aug", help="list augmentations")
    _add_common(p)
    _add_fields(p)

    p = sub.add_parser("lch", help="linearized homology per augmentation")
    _add_common(p)
    _add_fields(p)

    p = sub.add_parser("compare", help="tell two fronts apart")
    _add_common(p, inputs=None)
    p.add_argument("inputs", nargs=2, metavar="FRONT_FILE")
    _add_fields(p)

    p = sub.add_parser("morse", help="surgery family torsion homology")
    _add_common(p, inputs=None)
    p.add_argument("--n", type=int, required=True, help="ambient dimension")
    p.add_argument("--p", type=int, required=True, help="twisting integer")

    p = sub.add_parser("bound", help="double point bounds")
    _add_common(p, inputs=None)
    p.add_argument("dims", nargs="+", metavar="RANK|DEG:RANK",
                   help="homology ranks, positional or degree-tagged")
    p.add_argument("--improve", type=int, default=None, metavar="K",
                   help="excess constant for the improved bound")
    p.add_argument("--spin-k", type=int, default=None, metavar="k",
                   help="spin by S^k before bounding")
    p.add_argument("--chords", type=int, default=None, metavar="R",
                   help="chord count fed to --spin-k")

    return ap


def _config_from(args) -> RunConfig:
    cfg = RunConfig(
        inputs=list(getattr(args, "inputs", []) or []),
        rule=args.rule,
        spin=args.spin,
        coeff=args.coeff,
        fmt=args.fmt,
        verbose=args.verbose,
        config_path=args.config,
        threads=_threads(),
    )
    cfg.quadrant_flip = _load_config_bit(args.config) or args.flip_shading
    cfg.dump_disks = getattr(args, "dump_disks", False)
    cfg.svg = getattr(args, "svg", None)
    cfg.disks_for = getattr(args, "disks_for", None)
    if getattr(args, "field", None) is not None:
        cfg.fields = _field_arg(args.field)
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = _config_from(args)
    try:
        if args.command == "compute":
            return cmd_compute(cfg)
        if args.command == "check":
            return cmd_check(cfg, calibrate=args.calibrate)
        if args.command == "aug":
            return cmd_aug(cfg)
        if args.command == "lch":
            return cmd_lch(cfg)
        if args.command == "compare":
            return cmd_compare(cfg)
        if args.command == "morse":
            return cmd_morse(cfg, args.n, args.p)
        if args.command == "bound":
            return cmd_bound(cfg, args.dims, args.improve, args.spin_k,
                             args.chords)
        raise AssertionError(f"unhandled command {args.command}")
    except (ValueError, OSError) as e:
        print(
            json.dumps({"error": type(e).__name__, "message": str(e)}),
            file=sys.stderr,
        )
        return 1
    except Exception as e:  # internal invariant violations
        print(
            json.dumps({"error": type(e).__name__, "message": str(e)}),
            file=sys.stderr,
        )
        return 2


if __name__ == "__main__":
    sys.exit(main(argv=sys.argv[1:]))
