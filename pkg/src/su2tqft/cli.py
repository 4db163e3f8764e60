"""Command-line front end.

    su2tqft repvar --group su2 --genus 2
    su2tqft repvar --group so3 --genus 1..4 --format json
    su2tqft charstack --genus 2 --cohomology ordinary
    su2tqft expand --object F --power 3
    su2tqft verify --suite all --seed 7 --json

Exit codes: 0 success, 1 a verification check failed, 2 usage error or a
request outside the supported range.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import conv_algebra as ca
from . import stacks, surfaces, verify
from .laurent import LaurentPoly, PeriodicSeries

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- argument types ---------------------------------------------------------

def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {n}")
    return n


def genus_range(text: str) -> list[int]:
    """``N`` or ``A..B`` (inclusive)."""
    if ".." in text:
        lo, _, hi = text.partition("..")
        a, b = _nonneg(lo), _nonneg(hi)
        if a > b:
            raise argparse.ArgumentTypeError(f"empty range {text!r}")
        return list(range(a, b + 1))
    return [_nonneg(text)]


# -- records ----------------------------------------------------------------

def poly_payload(p: LaurentPoly) -> dict:
    return {"type": "polynomial", "text": str(p), "terms": p.to_json()}


def series_payload(res: stacks.StackCohomology) -> dict:
    s = res.series
    return {
        "type": "series",
        "text": res.describe(),
        "series": s.to_json(),
        "finite": res.finite.to_json(),
        "prefactor": res.prefactor.to_json(),
    }


def object_payload(obj: ca.SheafObject) -> dict:
    return {"type": "object", "text": str(obj), "terms": obj.to_json()}


def record(*, group, family, genus=None, demigenus=None, twisted=False, variant, payload,
           components=None) -> dict:
    rec = {
        "group": group,
        "family": family,
        "genus": genus,
        "demigenus": demigenus,
        "twisted": twisted,
        "variant": variant,
        "payload": payload,
    }
    if components is not None:
        rec["components"] = components
    return rec


def _label(rec: dict) -> str:
    if rec["demigenus"] is not None:
        return f"r={rec['demigenus']}"
    if rec["genus"] is not None:
        return f"g={rec['genus']}"
    return ""


# -- rendering --------------------------------------------------------------

def render_text(records: list[dict]) -> str:
    prefix = len(records) > 1
    lines = []
    for rec in records:
        head = f"{_label(rec)}: " if prefix else ""
        if rec.get("components"):
            for comp in rec["components"]:
                lines.append(f"{head}{comp['label']}: {comp['payload']['text']}")
        else:
            lines.append(head + rec["payload"]["text"])
    return "\n".join(lines) + "\n"


def _csv_block(w, title: str, payload: dict) -> None:
    w.writerow([f"# {title}"])
    w.writerow(["degree", "coefficient"])
    if payload["type"] == "series":
        s = payload["series"]
        rows = s["transient"]
    else:
        rows = payload["terms"]
    for d, c in rows:
        w.writerow([d, c])
    if payload["type"] == "series":
        w.writerow([f"# periodic {title}"])
        w.writerow(["tail_start", "direction", "pattern_0", "pattern_1", "pattern_2", "pattern_3"])
        w.writerow([s["tail_start"], s["direction"], *s["pattern"]])


def render_csv(records: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for rec in records:
        bits = [rec["group"], rec["family"], _label(rec), rec["variant"]]
        if rec["twisted"]:
            bits.append("twisted")
        title = " ".join(b for b in bits if b)
        if rec.get("components"):
            for comp in rec["components"]:
                _csv_block(w, f"{title} {comp['label']}", comp["payload"])
        else:
            _csv_block(w, title, rec["payload"])
    return buf.getvalue()


def render(records: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(records, indent=2) + "\n"
    if fmt == "csv":
        return render_csv(records)
    return render_text(records)


# -- commands ---------------------------------------------------------------

def cmd_repvar(args) -> list[dict]:
    group = args.group.upper()
    if args.demigenus is not None:
        if args.twisted:
            raise UsageError("--twisted applies to orientable surfaces only")
        if group != "SU2":
            raise UsageError("non-orientable surfaces are supported for --group su2 only")
        family, values = "nonorientable", args.demigenus
    else:
        family, values = "orientable", args.genus
        if args.twisted and group != "SU2":
            raise UsageError(f"--twisted is not available with --group {args.group}")
    out = []
    for n in values:
        try:
            comps = surfaces.poincare(surfaces.SurfaceSpec(family, n, group, args.twisted))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        key = {"demigenus": n} if family == "nonorientable" else {"genus": n}
        if len(comps) == 1:
            out.append(record(group=args.group, family=family, twisted=args.twisted,
                              variant="poincare", payload=poly_payload(comps[0][1]), **key))
        else:
            total = sum((p for _, p in comps), LaurentPoly())
            out.append(record(
                group=args.group, family=family, twisted=False, variant="poincare",
                payload=poly_payload(total),
                components=[{"label": lab, "payload": poly_payload(p)} for lab, p in comps],
                **key,
            ))
    return out


def cmd_charstack(args) -> list[dict]:
    if args.twisted:
        print("note: for the twisted stack compact and ordinary cohomology coincide", file=sys.stderr)
    out = []
    for g in args.genus:
        try:
            res = stacks.charstack(g, twisted=args.twisted, variant=args.cohomology)
        except stacks.UnsupportedGenus as exc:
            raise UsageError(str(exc)) from None
        out.append(record(group="su2", family="orientable", genus=g, twisted=args.twisted,
                          variant=args.cohomology, payload=series_payload(res)))
    return out


def cmd_expand(args) -> list[dict]:
    base = ca.commutator_object() if args.object == "F" else ca.squaring_object()
    obj = ca.power(base, args.power)
    return [record(group="su2", family=None, genus=args.power, variant=f"object-{args.object}",
                   payload=object_payload(obj))]


def cmd_verify(args) -> tuple[str, int]:
    reports = verify.run_suite(args.suite, seed=args.seed)
    if args.json:
        text = json.dumps([r.to_json() for r in reports], indent=2) + "\n"
    else:
        text = verify.format_table(reports) + "\n"
    return text, EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="su2tqft",
                                description="Cohomology of SU(2) representation varieties and character stacks.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=True):
        if formats:
            sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
        sp.add_argument("--out", metavar="FILE", help="write output here instead of stdout")

    rv = sub.add_parser("repvar", help="Poincaré polynomial of a representation variety")
    rv.add_argument("--group", choices=("su2", "so3", "u2"), default="su2")
    which = rv.add_mutually_exclusive_group(required=True)
    which.add_argument("--genus", type=genus_range, metavar="N|A..B")
    which.add_argument("--demigenus", type=genus_range, metavar="R|A..B")
    rv.add_argument("--twisted", action="store_true", help="fix the product of commutators to -1")
    common(rv)

    cs = sub.add_parser("charstack", help="cohomology of the SU(2) character stack (g <= 3)")
    cs.add_argument("--genus", type=genus_range, required=True, metavar="N|A..B")
    cs.add_argument("--twisted", action="store_true")
    cs.add_argument("--cohomology", choices=stacks.VARIANTS, default="compact")
    common(cs)

    ex = sub.add_parser("expand", help="atom decomposition of F^n or S^n")
    ex.add_argument("--object", choices=("F", "S"), required=True)
    ex.add_argument("--power", type=_nonneg, required=True)
    common(ex)

    vf = sub.add_parser("verify", help="run the consistency suite")
    vf.add_argument("--suite", choices=verify.SELECTIONS, default="all")
    vf.add_argument("--seed", type=int, default=verify.DEFAULT_SEED,
                    help=f"seed for sampled property checks (default {verify.DEFAULT_SEED})")
    vf.add_argument("--json", action="store_true")
    common(vf, formats=False)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    code = EXIT_OK
    try:
        if args.command == "verify":
            text, code = cmd_verify(args)
        else:
            handler = {"repvar": cmd_repvar, "charstack": cmd_charstack, "expand": cmd_expand}
            text = render(handler[args.command](args), args.format)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
