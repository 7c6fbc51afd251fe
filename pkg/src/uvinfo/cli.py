"""Command-line front end: spec parsing, report emission, and the built-in
worked examples.

Everything on the wire is exact: ratios are "p/q" strings (decimals are
rejected), JSON reports render Fractions the same way, and reports are
byte-stable across runs and thread counts (workers only parallelize
independent rows; collection order is submission order).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Optional

from .uvcore import (
    CardinalityPower,
    DiameterPlusOne,
    IntervalUnion,
    LebesguePlusOffset,
    UncertainPair,
    UvinfoError,
    format_ratio,
    ratio,
)
from . import infocalc
from . import chancap
from . import memoryless
from . import apps


class ParseError(UvinfoError):
    """The input text does not parse (bad JSON, bad ratio, bad spec)."""


class ValidationError(UvinfoError):
    """The input parses but violates a structural invariant."""


# ---------------------------------------------------------------------------
# input parsing


def _parse_ratio(text) -> Fraction:
    try:
        return ratio(text)
    except UvinfoError as exc:
        raise ParseError(str(exc)) from None


def _parse_int(value, name: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"--{name} must be an integer, got {value!r}") \
            from None


def _normalize_symbols(raw: list) -> list:
    """Map JSON symbols to ints when every one of them is integral (so
    witnesses print as {1, 7, 13}), otherwise to strings."""
    def integral(v):
        return isinstance(v, int) or (
            isinstance(v, str) and (v.lstrip("-").isdigit() and v.lstrip("-")))
    if raw and all(integral(v) for v in raw):
        return [int(v) for v in raw]
    return [str(v) for v in raw]


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"invalid JSON (line {exc.lineno}, column {exc.colno}): "
            f"{exc.msg}") from None


def parse_channel_spec(text: str) -> chancap.Channel:
    """Parse {"map": {input: [outputs...]}, "outputs": [...]} into a Channel.

    Input, image, and alphabet symbols are normalized to ints when all of
    them are integral.  The optional "outputs" field fixes the output
    alphabet; without it the alphabet is the union of the images.
    """
    obj = _load_json(text)
    if not isinstance(obj, dict) or not isinstance(obj.get("map"), dict):
        raise ParseError("a channel spec is an object with a 'map' field")
    raw_map = obj["map"]
    if not raw_map:
        raise ValidationError("the channel map is empty")
    stray = set(obj) - {"map", "outputs"}
    if stray:
        raise ParseError(f"unknown channel field {sorted(stray)[0]!r}")
    xs = _normalize_symbols(list(raw_map.keys()))
    y_raw = []
    for x, image in zip(xs, raw_map.values()):
        if not isinstance(image, list):
            raise ParseError(f"image of input {x!r} must be a list")
        if not image:
            raise ValidationError(f"empty image for input {x!r}")
        y_raw.extend(image)
    outputs = obj.get("outputs")
    if outputs is not None:
        if not isinstance(outputs, list) or not outputs:
            raise ParseError("'outputs' must be a nonempty list")
        y_raw.extend(outputs)
    ys = _normalize_symbols(y_raw)
    it = iter(ys)
    mapping = {}
    images_normed = []
    for x, image in zip(xs, raw_map.values()):
        normed = frozenset(next(it) for _ in image)
        mapping[x] = normed
        images_normed.append((x, normed))
    alphabet = None
    if outputs is not None:
        alphabet = tuple(it)
        for x, image in images_normed:
            for s in sorted(image, key=repr):
                if s not in alphabet:
                    raise ValidationError(
                        f"output symbol {s!r} of input {x!r} "
                        "is not in the alphabet")
    try:
        return chancap.Channel.of(mapping, y_alphabet=alphabet)
    except UvinfoError as exc:
        raise ValidationError(str(exc)) from None


def parse_pair_spec(text: str):
    """Parse a joint-range spec; returns (pair, default m_x, default m_y).

    Finite: {"kind": "finite", "joint": [[x, y], ...]}.
    Hybrid: {"kind": "hybrid", "cells": {label: [[lo, hi], ...]}}.
    Both accept optional "m_x"/"m_y" uncertainty-spec strings as defaults.
    """
    obj = _load_json(text)
    if not isinstance(obj, dict):
        raise ParseError("a pair spec is a JSON object")
    kind = obj.get("kind")
    m_x = parse_m_spec(obj["m_x"]) if "m_x" in obj else None
    m_y = parse_m_spec(obj["m_y"]) if "m_y" in obj else None
    if kind == "finite":
        joint = obj.get("joint")
        if not isinstance(joint, list) or not joint:
            raise ParseError("a finite pair needs a nonempty 'joint' list")
        if any(not isinstance(p, list) or len(p) != 2 for p in joint):
            raise ParseError("'joint' entries are [x, y] pairs")
        xs = _normalize_symbols([p[0] for p in joint])
        ys = _normalize_symbols([p[1] for p in joint])
        return UncertainPair.finite(zip(xs, ys)), m_x, m_y
    if kind == "hybrid":
        cells = obj.get("cells")
        if not isinstance(cells, dict) or not cells:
            raise ParseError("a hybrid pair needs a nonempty 'cells' object")
        built = {}
        for label, pieces in cells.items():
            if not isinstance(pieces, list) or not pieces:
                raise ValidationError(f"empty cell for label {label!r}")
            try:
                built[label] = IntervalUnion.of(
                    (_parse_ratio(lo), _parse_ratio(hi)) for lo, hi in pieces)
            except (TypeError, ValueError):
                raise ParseError(
                    f"cell pieces of {label!r} are [lo, hi] pairs") from None
        try:
            return UncertainPair.hybrid(built), m_x, m_y
        except UvinfoError as exc:
            raise ValidationError(str(exc)) from None
    raise ParseError(f"unknown pair kind {kind!r} (finite or hybrid)")


def parse_m_spec(text: str):
    """Uncertainty functions in compact form: card:<base>[:<exp>],
    leb+<offset>, diam:<normalizer>."""
    t = str(text).strip()
    try:
        if t.startswith("card:"):
            parts = t.split(":")
            if len(parts) not in (2, 3):
                raise ParseError(f"bad cardinality spec {text!r}")
            base = int(parts[1])
            exp = int(parts[2]) if len(parts) == 3 else 1
            return CardinalityPower(base, exp)
        if t.startswith("leb+"):
            return LebesguePlusOffset(_parse_ratio(t[4:]))
        if t.startswith("diam:"):
            return DiameterPlusOne(_parse_ratio(t[5:]))
    except ValueError:
        raise ParseError(f"non-integer field in {text!r}") from None
    except UvinfoError as exc:
        raise ParseError(f"bad uncertainty spec {text!r}: {exc}") from None
    raise ParseError(
        f"unknown uncertainty spec {text!r}; "
        "use card:<base>[:<exp>], leb+<offset>, or diam:<normalizer>")


def parse_matrix_spec(text: str) -> apps.EquivocationMatrix:
    """Parse {"labels": [...], "entries": [[l1, l2, "p/q"], ...],
    "v_min": "p/q"} into an EquivocationMatrix."""
    obj = _load_json(text)
    if not isinstance(obj, dict) or not isinstance(obj.get("labels"), list):
        raise ParseError("a matrix spec is an object with a 'labels' list")
    entries = obj.get("entries", [])
    if not isinstance(entries, list):
        raise ParseError("'entries' must be a list of [l1, l2, value] rows")
    mapping = {}
    for row in entries:
        if not isinstance(row, list) or len(row) != 3:
            raise ParseError(f"bad matrix entry {row!r}")
        mapping[(row[0], row[1])] = _parse_ratio(row[2])
    try:
        return apps.EquivocationMatrix.of(
            obj["labels"], mapping, v_min=_parse_ratio(obj.get("v_min", 1)))
    except UvinfoError as exc:
        raise ValidationError(str(exc)) from None


def _read_input(path: str) -> str:
    """Read a file, falling back to the bundled data directory so the
    shipped fixtures work by bare name (fig5.json, walkers.json)."""
    if os.path.exists(path):
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    name = os.path.basename(path)
    try:
        bundle = resources.files("uvinfo").joinpath("data", name)
        if bundle.is_file():
            return bundle.read_text(encoding="utf-8")
    except (FileNotFoundError, ModuleNotFoundError):
        pass
    raise ParseError(f"no such input file: {path}")


def _threads() -> int:
    raw = os.environ.get("UVINFO_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ParseError(f"UVINFO_THREADS must be an integer, got {raw!r}") \
            from None


# ---------------------------------------------------------------------------
# report plumbing


def _plain(obj):
    """Reduce a report value to JSON-able form with exact ratio strings."""
    if isinstance(obj, Fraction):
        return format_ratio(obj)
    if isinstance(obj, IntervalUnion):
        return [[format_ratio(lo), format_ratio(hi)]
                for lo, hi in obj.pieces]
    if isinstance(obj, apps.BitString):
        return str(obj)
    if isinstance(obj, frozenset):
        return sorted((_plain(v) for v in obj), key=str)
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    return obj


def _nested(value) -> bool:
    return isinstance(value, dict) or (
        isinstance(value, list) and any(isinstance(v, dict) for v in value))


def _text_lines(obj, indent: int = 0) -> list:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key, value in obj.items():
            if _nested(value):
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_inline(value)}")
    elif isinstance(obj, list):
        for item in obj:
            if not isinstance(item, dict):
                lines.append(f"{pad}- {_inline(item)}")
                continue
            flat = "  ".join(f"{k}={_inline(v)}" for k, v in item.items()
                             if not _nested(v))
            lines.append(f"{pad}- {flat}" if flat else f"{pad}-")
            for k, v in item.items():
                if _nested(v):
                    lines.append(f"{pad}  {k}:")
                    lines.extend(_text_lines(v, indent + 2))
    else:
        lines.append(f"{pad}{_inline(obj)}")
    return lines


def _inline(value) -> str:
    if isinstance(value, list):
        return "[" + ", ".join(_inline(v) for v in value) + "]"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return "-"
    return str(value)


def _emit(payload: dict, fmt: str) -> None:
    payload = _plain(payload)
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print("\n".join(_text_lines(payload)))


def _family_payload(family) -> Optional[dict]:
    if family is None:
        return None
    return {"regime": family.regime,
            "delta": family.delta,
            "count": family.count,
            "sets": [s for s in family.sets]}


def _certificate_payload(cert) -> dict:
    return {
        "theorem": cert.theorem,
        "notion": cert.notion,
        "codebook": list(cert.codebook),
        "level": cert.level,
        "conditions": [{"name": c.name, "holds": c.holds, "detail": c.detail}
                       for c in cert.conditions],
        "certifies": cert.certifies,
        "capacity_bits": cert.render_bits() if cert.certifies else None,
        "delta_hat": cert.delta_hat,
    }


def _capacity_payload(res) -> dict:
    return {
        "delta": res.delta,
        "count": res.count,
        "bits": res.render_bits(),
        "witness": list(res.witness),
        "per_size": [{"size": k, "feasible": ok}
                     for k, ok in res.per_size_feasibility],
        "thresholds": [{"size": k, "threshold": t}
                       for k, t in res.thresholds],
    }


_MI_STATUS = {"associated": "Associated", "disassociated": "Disassociated",
              "no_family": "Neither"}


# ---------------------------------------------------------------------------
# command handlers (each returns (payload, exit_code))


@dataclass(frozen=True)
class CommandSpec:
    command: str
    inputs: tuple   # ((role, path), ...)
    params: dict
    fmt: str = "text"


def _input(spec: CommandSpec, role: str) -> str:
    for r, path in spec.inputs:
        if r == role:
            return _read_input(path)
    raise ParseError(f"missing required input --{role}")


def _cmd_analyze(spec: CommandSpec):
    pair, def_mx, def_my = parse_pair_spec(_input(spec, "pair"))
    m_x = parse_m_spec(spec.params["m_x"]) if spec.params.get("m_x") else def_mx
    m_y = parse_m_spec(spec.params["m_y"]) if spec.params.get("m_y") else def_my
    if m_x is None or m_y is None:
        raise ParseError("uncertainty specs required (flags or pair fields)")
    assoc = infocalc.association_sets(pair, m_x, m_y)
    payload = {
        "command": "analyze",
        "x_marginal": pair.marginal_range("X"),
        "y_marginal": pair.marginal_range("Y"),
        "a_xy": sorted(assoc.a_xy),
        "a_yx": sorted(assoc.a_yx),
    }
    d1, d2 = spec.params.get("delta1"), spec.params.get("delta2")
    if (d1 is None) != (d2 is None):
        raise ParseError("give both --delta1 and --delta2 or neither")
    if d1 is not None:
        delta1, delta2 = _parse_ratio(d1), _parse_ratio(d2)
        status = infocalc.classify_levels(assoc, delta1, delta2)
        payload["levels"] = {"delta1": delta1, "delta2": delta2,
                             "variant": status.variant,
                             "witness": list(status.witness)}
        if spec.params.get("taxicab"):
            fam = infocalc.taxicab_family(pair, m_x, m_y, delta1, delta2)
            payload["taxicab"] = {
                "exists": fam.exists,
                "count": len(fam.sets),
                "reason": fam.reason,
                "sets": list(fam.sets),
            }
    elif spec.params.get("taxicab"):
        raise ParseError("--taxicab needs --delta1 and --delta2")
    return payload, 0


def _cmd_mi(spec: CommandSpec):
    pair, def_mx, def_my = parse_pair_spec(_input(spec, "pair"))
    m_x = parse_m_spec(spec.params["m_x"]) if spec.params.get("m_x") else def_mx
    m_y = parse_m_spec(spec.params["m_y"]) if spec.params.get("m_y") else def_my
    if m_x is None or m_y is None:
        raise ParseError("uncertainty specs required (flags or pair fields)")
    delta = _parse_ratio(spec.params["delta1"])
    direction = spec.params.get("direction") or "XgivenY"
    result = infocalc.mutual_information(pair, m_x, m_y, delta, direction)
    payload = {
        "command": "mi",
        "direction": direction,
        "delta": delta,
        "status": _MI_STATUS[result.status],
        "count": result.count,
        "bits": result.render(),
        "family": _family_payload(result.family),
    }
    return payload, 0


def _cmd_capacity(spec: CommandSpec):
    ch = parse_channel_spec(_input(spec, "channel"))
    m = parse_m_spec(spec.params["m"])
    res = chancap.capacity(ch, m, _parse_ratio(spec.params["delta"]))
    return {"command": "capacity", **_capacity_payload(res)}, 0


def _cmd_rates(spec: CommandSpec):
    ch = parse_channel_spec(_input(spec, "channel"))
    m = parse_m_spec(spec.params["m"])
    if spec.params.get("sequence"):
        seq = _parse_sequence(spec.params["sequence"])
        n_max = _parse_int(spec.params.get("n_max") or 1, "n-max")
        report = memoryless.capacity_profile(ch, m, seq, n_max)
        payload = {
            "command": "rates",
            "rows": [{"horizon": r.horizon, "delta_n": r.delta_n,
                      "count": r.rate.count, "bits": r.rate.render(),
                      "label": r.label} for r in report.rows],
            "inf": {"bits": report.inf_rate.render(),
                    "label": report.inf_label},
            "sup": {"bits": report.sup_rate.render(),
                    "label": report.sup_label},
            "certificates": [_certificate_payload(c)
                             for c in report.certificates],
            "notes": list(report.notes),
        }
        return payload, 0
    if spec.params.get("delta") is None:
        raise ParseError("rates needs --sequence (profile) or --delta")
    n = _parse_int(spec.params.get("horizon") or 1, "horizon")
    rate = memoryless.rate_at_horizon(
        ch, m, _parse_ratio(spec.params["delta"]), n)
    payload = {"command": "rates", "horizon": n,
               "delta_n": _parse_ratio(spec.params["delta"]),
               "count": rate.count, "bits": rate.render(),
               "label": f"horizon-{n} bound"}
    return payload, 0


def _parse_sequence(text: str) -> memoryless.ConfidenceSequence:
    """Accept inline JSON or a path to a JSON file."""
    if os.path.exists(text):
        with open(text, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        return memoryless.parse_sequence_spec(_load_json(text))
    except UvinfoError as exc:
        raise ParseError(str(exc)) from None


def _cmd_single_letter(spec: CommandSpec):
    ch = parse_channel_spec(_input(spec, "channel"))
    m = parse_m_spec(spec.params["m"])
    variant = spec.params["variant"]
    kwargs = {}
    if spec.params.get("codebook"):
        raw = [s.strip() for s in spec.params["codebook"].split(",")]
        kwargs["codebook"] = tuple(_normalize_symbols(raw))
    for name, key in (("delta1", "delta1"), ("delta_bar", "delta_bar"),
                      ("delta_star", "delta_star")):
        if spec.params.get(key) is not None:
            kwargs[name] = _parse_ratio(spec.params[key])
    if spec.params.get("sequence"):
        kwargs["sequence"] = _parse_sequence(spec.params["sequence"])
    cert = memoryless.single_letter_check(ch, m, variant, **kwargs)
    return {"command": "single-letter", **_certificate_payload(cert)}, 0


def _verify_grid(ch, m) -> list:
    """Default delta grid: zero plus every size-scaled pairwise equivocation
    below the noise floor (the breakpoints where feasibility can change)."""
    import itertools as it
    v_min = ch.min_image_uncertainty(m)
    values = {m.of(ch.image(a) & ch.image(b))
              for a, b in it.combinations(ch.x_symbols, 2)}
    grid = {Fraction(0)}
    for e in values:
        if e <= 0:
            continue
        for k in range(1, len(ch.x_symbols) + 1):
            if k * e < v_min:
                grid.add(k * e)
    return sorted(grid)


def _cmd_verify(spec: CommandSpec):
    ch = parse_channel_spec(_input(spec, "channel"))
    m = parse_m_spec(spec.params["m"])
    if spec.params.get("deltas"):
        deltas = [_parse_ratio(t) for t in spec.params["deltas"].split(",")]
    else:
        deltas = _verify_grid(ch, m)
    failures = 0

    coding = chancap.verify_coding_theorem(ch, m, deltas)
    coding_rows = []
    for row in coding.rows:
        coding_rows.append({
            "delta": row.delta, "capacity": row.capacity_count,
            "information_sup": row.sup_count,
            "unrestricted_sup": row.unrestricted_count, "match": row.match})
        failures += 0 if row.match else 1

    def tensor_row(delta):
        cb = chancap.capacity(ch, m, delta).witness
        pair = chancap.induced_pair(ch, cb)
        rep = memoryless.tensorization_check([pair, pair], m, delta)
        return {"delta": delta, "codebook": list(cb), "status": rep.status,
                "reason": rep.reason,
                "holds": rep.holds if rep.status == "ok" else None,
                "equality": rep.equality if rep.status == "ok" else None}

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        tensor_rows = list(pool.map(tensor_row, deltas))
    for row in tensor_rows:
        if row["status"] == "ok" and not row["holds"]:
            failures += 1

    pair = chancap.induced_pair(ch, ch.x_symbols)
    m_side = CardinalityPower(len(pair.marginal_range("X")))
    assoc = infocalc.association_sets(pair, m_side, m)
    if assoc.a_xy and assoc.a_yx:
        d1 = min(assoc.a_xy) / 2
        d2 = min(assoc.a_yx) / 2
        lhs = infocalc.mutual_information(pair, m_side, m, d2, "YgivenX")
        rhs = infocalc.mutual_information(pair, m_side, m, d1, "XgivenY")
        tax = infocalc.taxicab_family(pair, m_side, m, d1, d2)
        match = (lhs.count == rhs.count
                 and (not tax.exists or len(tax.sets) == lhs.count))
        symmetry = {"delta1": d1, "delta2": d2, "i_y_given_x": lhs.count,
                    "i_x_given_y": rhs.count,
                    "taxicab": len(tax.sets) if tax.exists else None,
                    "match": match}
        failures += 0 if match else 1
    else:
        symmetry = {"skipped": "a side has no association values"}

    payload = {"command": "verify",
               "coding_theorem": coding_rows,
               "tensorization": tensor_rows,
               "symmetry": symmetry,
               "failures": failures}
    return payload, (1 if failures else 0)


def _cmd_hamming(spec: CommandSpec):
    if spec.params.get("words"):
        words = [w.strip() for w in spec.params["words"].split(",")]
    else:
        words = _input(spec, "codebook").split()
    cb = [apps.BitString.of(w) for w in words]
    tau = _parse_ratio(spec.params["tau"])
    delta = _parse_ratio(spec.params.get("delta") or "0")
    try:
        report = apps.hamming_distance_bound(cb, tau, delta)
    except apps.NotDistinguishable as exc:
        return {"command": "hamming", "distinguishable": False,
                "message": str(exc)}, 1
    payload = {
        "command": "hamming",
        "distinguishable": True,
        "radius": report.radius,
        "threshold": report.threshold,
        "min_distance": report.min_distance,
        "correctable": report.correctable,
        "pairs": [{"x1": row.pair[0], "x2": row.pair[1],
                   "distance": row.distance, "bound": row.bound,
                   "correctable": row.correctable}
                  for row in report.rows],
    }
    return payload, 0


def _cmd_classify(spec: CommandSpec):
    delta = _parse_ratio(spec.params["delta"])
    if spec.params.get("matrix_path"):
        em = parse_matrix_spec(_input(spec, "matrix"))
        res = apps.matrix_capacity(em, delta)
        return {"command": "classify", "source": "matrix",
                "labels": list(em.labels), "v_min": em.v_min,
                **_capacity_payload(res)}, 0
    text = _input(spec, "confusion")
    try:
        ch = apps.confusion_ingest(text)
    except apps.MalformedRow as exc:
        raise ParseError(str(exc)) from None
    m = apps.label_uncertainty(ch)
    res = chancap.capacity(ch, m, delta)
    return {"command": "classify", "source": "confusion",
            "labels": list(ch.x_symbols),
            "images": {str(x): ch.image(x) for x in ch.x_symbols},
            **_capacity_payload(res)}, 0


# ---------------------------------------------------------------------------
# built-in worked examples


def _walkers_case() -> tuple:
    pair, m_x, m_y = parse_pair_spec(_read_input("walkers.json"))
    assoc = infocalc.association_sets(pair, m_x, m_y)
    checks = [
        ("association X-side", sorted(assoc.a_xy),
         [Fraction(1, 5), Fraction(3, 5)]),
        ("association Y-side", sorted(assoc.a_yx),
         [Fraction(3, 8), Fraction(1, 2)]),
        ("levels (1/6, 1/4)",
         infocalc.classify_levels(assoc, Fraction(1, 6), Fraction(1, 4)).variant,
         "disassociated"),
        ("levels (3/5, 1/2)",
         infocalc.classify_levels(assoc, Fraction(3, 5), Fraction(1, 2)).variant,
         "associated"),
        ("levels (1/4, 1/4)",
         infocalc.classify_levels(assoc, Fraction(1, 4), Fraction(1, 4)).variant,
         "neither"),
        ("information at 1/4 (X side)",
         infocalc.mutual_information(pair, m_x, m_y, Fraction(1, 4),
                                     "XgivenY").status,
         "no_family"),
        ("taxicab at (1/6, 1/4)",
         (lambda f: (f.exists, len(f.sets)))(
             infocalc.taxicab_family(pair, m_x, m_y,
                                     Fraction(1, 6), Fraction(1, 4))),
         (True, 1)),
    ]
    return "walkers afternoon", checks


def _fig5():
    ch = parse_channel_spec(_read_input("fig5.json"))
    return ch, CardinalityPower(19), CardinalityPower(19, 3)


def _capacity_case() -> tuple:
    ch, m1, _ = _fig5()
    checks = []
    for delta, count, witness in ((Fraction(0), 2, (1, 13)),
                                  (Fraction(2, 9), 2, (1, 7)),
                                  (Fraction(4, 9), 3, (1, 7, 13))):
        res = chancap.capacity(ch, m1, delta)
        checks.append((f"capacity at {format_ratio(delta)}",
                       (res.count, res.witness), (count, witness)))
    return "19-symbol channel capacities", checks


def _sup_sequence_case() -> tuple:
    ch, m1, _ = _fig5()
    seq = memoryless.ConfidenceSequence.geometric(
        Fraction(7, 342), first=Fraction(2, 9))
    cert = memoryless.single_letter_check(
        ch, m1, "T12", codebook=(1, 7, 13), delta1=Fraction(2, 9),
        sequence=seq)
    checks = [
        ("certificate level", cert.level, Fraction(1, 6)),
        ("all conditions hold", cert.certifies, True),
        ("certified bits", cert.render_bits() if cert.certifies else None,
         "1"),
    ]
    return "sup-capacity certificate (geometric tail)", checks


def _zero_error_case() -> tuple:
    ch, m1, _ = _fig5()
    cert = memoryless.single_letter_check(ch, m1, "Cor2", codebook=(1, 7, 13))
    checks = [
        ("all conditions hold", cert.certifies, True),
        ("certified bits", cert.render_bits() if cert.certifies else None,
         "1"),
        ("zero-error count", chancap.capacity(ch, m1, Fraction(0)).count, 2),
    ]
    return "zero-error certificate", checks


def _inf_sequence_case() -> tuple:
    ch, _, m3 = _fig5()
    growth = 3 * Fraction(7, 19) ** 3
    seq = memoryless.ConfidenceSequence.geometric(
        growth, scale=Fraction(1, 27) / growth)
    cert = memoryless.single_letter_check(
        ch, m3, "T13", codebook=(1, 7, 13), delta1=Fraction(1, 27),
        sequence=seq)
    checks = [
        ("delta_hat", cert.delta_hat, Fraction(7, 19) ** 3),
        ("all conditions hold", cert.certifies, True),
        ("certified bits", cert.render_bits() if cert.certifies else None,
         "log2(3)"),
    ]
    return "inf-capacity certificate (cubed uncertainty)", checks


def _vanishing_case() -> tuple:
    ch, _, m3 = _fig5()
    cert = memoryless.single_letter_check(ch, m3, "T14")
    checks = [
        ("codebook", cert.codebook, (1, 7, 13)),
        ("all conditions hold", cert.certifies, True),
        ("certified bits", cert.render_bits() if cert.certifies else None,
         "log2(3)"),
    ]
    return "vanishing-sequence certificate", checks


_EXAMPLE_CASES = (_walkers_case, _capacity_case, _sup_sequence_case,
                  _zero_error_case, _inf_sequence_case, _vanishing_case)


def _cmd_examples(spec: CommandSpec):
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        results = list(pool.map(lambda fn: fn(), _EXAMPLE_CASES))
    cases = []
    failures = 0
    for name, checks in results:
        rows = []
        for label, got, want in checks:
            ok = got == want
            failures += 0 if ok else 1
            rows.append({"check": label, "ok": ok,
                         "got": got, "want": want})
        cases.append({"case": name,
                      "ok": all(r["ok"] for r in rows),
                      "checks": rows})
    payload = {"command": "examples", "cases": cases, "failures": failures}
    return payload, (1 if failures else 0)


# ---------------------------------------------------------------------------
# argument parsing and dispatch


_HANDLERS = {
    "analyze": _cmd_analyze,
    "mi": _cmd_mi,
    "capacity": _cmd_capacity,
    "rates": _cmd_rates,
    "single-letter": _cmd_single_letter,
    "verify": _cmd_verify,
    "hamming": _cmd_hamming,
    "classify": _cmd_classify,
    "examples": _cmd_examples,
}


def run_command(spec: CommandSpec) -> int:
    """Execute one parsed command: prints the report, returns the exit code
    (0 success, 1 verification mismatch, 2 input error)."""
    handler = _HANDLERS.get(spec.command)
    if handler is None:
        print(f"error: unknown command {spec.command!r}", file=sys.stderr)
        return 2
    try:
        payload, code = handler(spec)
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UvinfoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(payload, spec.fmt)
    return code


class _Sub:
    """Subparser factory that re-registers the global flags on every
    command, so ``uvinfo capacity ... --format json`` works as well as
    ``uvinfo --format json capacity ...`` (SUPPRESS keeps an untouched
    subcommand flag from clobbering the global value)."""

    def __init__(self, sub):
        self._sub = sub

    def add_parser(self, *args, **kwargs):
        p = self._sub.add_parser(*args, **kwargs)
        p.add_argument("--format", choices=("json", "text"),
                       default=argparse.SUPPRESS)
        return p


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uvinfo",
        description="exact non-stochastic information calculations")
    parser.add_argument("--format", choices=("json", "text"), default="text")
    sub = _Sub(parser.add_subparsers(dest="command", required=True))

    p = sub.add_parser("analyze", help="association structure of a pair")
    p.add_argument("--pair", required=True)
    p.add_argument("--m-x"), p.add_argument("--m-y")
    p.add_argument("--delta1"), p.add_argument("--delta2")
    p.add_argument("--taxicab", action="store_true")

    p = sub.add_parser("mi", help="delta-mutual information of a pair")
    p.add_argument("--pair", required=True)
    p.add_argument("--m-x"), p.add_argument("--m-y")
    p.add_argument("--delta1", required=True)
    p.add_argument("--direction", choices=("XgivenY", "YgivenX"))

    p = sub.add_parser("capacity", help="(N, delta)-capacity of a channel")
    p.add_argument("--channel", required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--delta", required=True)

    p = sub.add_parser("rates", help="block rates / capacity profile")
    p.add_argument("--channel", required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--delta"), p.add_argument("--horizon")
    p.add_argument("--sequence"), p.add_argument("--n-max")

    p = sub.add_parser("single-letter", help="capacity certificates")
    p.add_argument("--channel", required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--variant", required=True,
                   choices=("T12", "Cor2", "T13", "T14"))
    p.add_argument("--codebook"), p.add_argument("--delta1")
    p.add_argument("--delta-bar"), p.add_argument("--delta-star")
    p.add_argument("--sequence")

    p = sub.add_parser("verify", help="coding-theorem / tensorization / "
                                      "symmetry suites")
    p.add_argument("--channel", required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--deltas")

    p = sub.add_parser("hamming", help="bit-flip distance bounds")
    p.add_argument("--codebook"), p.add_argument("--words")
    p.add_argument("--tau", required=True)
    p.add_argument("--delta")

    p = sub.add_parser("classify", help="label capacities from confusion "
                                        "data or a matrix")
    p.add_argument("--confusion"), p.add_argument("--matrix")
    p.add_argument("--delta", required=True)

    sub.add_parser("examples", help="replay the built-in worked examples")
    return parser


def _spec_from_args(args: argparse.Namespace) -> CommandSpec:
    inputs = []
    for role in ("pair", "channel", "codebook", "confusion", "matrix"):
        path = getattr(args, role, None)
        if path:
            inputs.append((role, path))
    params = {}
    for key in ("m", "m_x", "m_y", "delta", "delta1", "delta2", "deltas",
                "horizon", "n_max", "sequence", "variant", "codebook",
                "delta_bar", "delta_star", "direction", "taxicab", "words",
                "tau"):
        value = getattr(args, key, None)
        if value not in (None, False):
            params[key] = value
    if getattr(args, "matrix", None):
        params["matrix_path"] = args.matrix
    return CommandSpec(args.command, tuple(inputs), params, args.format)


def main(argv=None) -> None:
    args = _build_parser().parse_args(argv)
    sys.exit(run_command(_spec_from_args(args)))


if __name__ == "__main__":  # pragma: no cover
    main()
