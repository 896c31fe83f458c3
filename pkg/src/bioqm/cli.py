"""Command line front end for the exact finite-field quantum reports.

Each subcommand rebuilds one report through the library and renders it as
markdown (table layouts), JSON (sorted keys, fractions as numerator and
denominator pairs) or CSV.  Identical invocations produce identical bytes.
Exit codes: 0 success, 2 bad usage or parameters, 1 internal failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import acceptance
from .gf import FieldConfig, verify_phi_uniqueness
from .biortho import named_states, spin_axes, spin_observable, table_report
from .entangle import census, chsh, chsh_bound, chsh_scan, representative_states
from .groups import (
    burnside_count,
    conjugacy_classes,
    conjugate_observable,
    entangled_labels,
    enumerate_group,
    orbits,
    verify_isomorphism,
)
from .inference import (
    correspondence_check,
    hv_feasibility,
    infer_probabilities,
    pair_measurement_system,
    single_measurement_system,
    state_correlator_constraints,
    state_marginal_constraints,
    table4_report,
)

CENSUS_ORDER = (
    "states",
    "product",
    "product_physical",
    "product_self_orthogonal",
    "entangled",
    "entangled_physical",
    "entangled_self_orthogonal",
)


# -- serialization helpers ------------------------------------------------------------


def _field_info(config: FieldConfig) -> dict:
    return {"p": config.p, "degree": config.degree, "order": config.order}


def _jsonify(value):
    if isinstance(value, Fraction):
        return {"num": value.numerator, "den": value.denominator}
    if isinstance(value, dict):
        return {str(k): _jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    return value


def _md_table(header: list[str], rows: list[list[str]]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    for row in rows:
        lines.append("| " + " | ".join(row) + " |")
    return "\n".join(lines) + "\n"


def _csv_text(rows: list[list]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    for row in rows:
        writer.writerow([str(x) for x in row])
    return buffer.getvalue()


# -- report builders ------------------------------------------------------------------


def build_tables(config: FieldConfig) -> dict:
    report = table_report(config)
    rows = []
    for row in report.rows:
        cells = [
            {"axis": axis, "expectation": m.expectation, "variance": m.variance}
            for axis, m in zip(report.axes, row.cells)
        ]
        rows.append({"state": row.label, "cells": cells})
    return {
        "kind": "tables",
        "field": _field_info(config),
        "axes": list(report.axes),
        "rows": rows,
    }


def build_census(config: FieldConfig) -> dict:
    return {
        "kind": "census",
        "field": _field_info(config),
        "counts": census(config).counts(),
    }


def _pair_state(config: FieldConfig, label: str):
    reps = representative_states(config)
    if label not in reps:
        raise ValueError(
            f"unknown two-particle state {label!r}; choose from {', '.join(sorted(reps))}"
        )
    return reps[label]


def _parse_axes(config: FieldConfig, text: str, count: int) -> tuple[int, ...]:
    if len(text) != count or not text.isdigit():
        raise ValueError(f"expected {count} axis digits, got {text!r}")
    axes = tuple(int(c) for c in text)
    valid = spin_axes(config)
    for axis in axes:
        if axis not in valid:
            raise ValueError(f"axis {axis} is not available over GF({config.order})")
    return axes


def build_chsh_value(config: FieldConfig, label: str, axes_text: str) -> dict:
    state = _pair_state(config, label)
    A, a, B, b = _parse_axes(config, axes_text, 4)
    record = chsh(state, A, a, B, b, label=label)
    return {
        "kind": "chsh_value",
        "field": _field_info(config),
        "state": label,
        "axes": list(record.axes),
        "value": record.value,
        "correlators": dict(sorted(record.correlators.items())),
    }


def build_chsh_scan(config: FieldConfig, label: str | None) -> dict:
    reps = representative_states(config)
    labels = [label] if label else sorted(reps)
    rows = []
    for name in labels:
        state = _pair_state(config, name)
        histogram = chsh_scan(state, label=name)
        rows.append(
            {"state": name, "histogram": {str(k): v for k, v in sorted(histogram.items())}}
        )
    return {"kind": "chsh_scan", "field": _field_info(config), "rows": rows}


def build_chsh_bound(config: FieldConfig) -> dict:
    result = chsh_bound(config)
    return {
        "kind": "chsh_bound",
        "field": _field_info(config),
        "bound": result.bound,
        "states_scanned": result.states_scanned,
        "quadruples_per_state": result.quadruples_per_state,
    }


def build_groups(config: FieldConfig, classes_only: bool, iso_only: bool) -> dict:
    group = enumerate_group(config)
    everything = not classes_only and not iso_only
    payload: dict = {"kind": "groups", "field": _field_info(config), "order": group.order}
    if everything:
        elements = []
        for label in sorted(group.by_label):
            g = group.by_label[label]
            action = []
            for axis in spin_axes(config):
                conj = conjugate_observable(g, spin_observable(config, axis))
                action.append({"axis": axis, "image": conj.axis, "sign": conj.sign})
            elements.append(
                {
                    "label": g.label,
                    "sign": g.sign,
                    "order": group.element_order(g),
                    "matrix": [[str(x) for x in row] for row in g.matrix],
                    "axis_action": action,
                }
            )
        payload["elements"] = elements
    if everything or classes_only:
        payload["classes"] = [
            sorted(e.label for e in cls) for cls in conjugacy_classes(group)
        ]
    if everything or iso_only:
        report = verify_isomorphism(group)
        payload["isomorphism"] = {
            "name": report.name,
            "verified": report.verified,
            "order": report.order,
            "class_sizes": list(report.class_sizes),
            "abelian": report.abelian,
            "element_order_profile": [list(pair) for pair in report.element_order_profile],
        }
    return payload


def _named_pair_states(config: FieldConfig) -> dict:
    names = {}
    for label, state in representative_states(config).items():
        names[state.state.rep] = label
    if config.order == 3:
        for label, state in entangled_labels(config).items():
            names[state.state.rep] = label
    return names


def build_orbits(config: FieldConfig, mode: str, min_size: int) -> dict:
    found = orbits(config, mode)
    names = _named_pair_states(config)
    rows = []
    for orbit in sorted(found, key=lambda o: (o.size, str(o.representative.state.rep))):
        named = sorted(
            {names[m.state.rep] for m in orbit.members if m.state.rep in names}
        )
        rows.append(
            {
                "representative": str(orbit.representative.state.rep),
                "size": orbit.size,
                "stabilizer_order": orbit.stabilizer_order,
                "named_members": named,
            }
        )
    acting = found[0].acting_order if found else 0
    listed = [row for row in rows if row["size"] >= min_size]
    return {
        "kind": "orbits",
        "field": _field_info(config),
        "mode": mode,
        "acting_order": acting,
        "total_orbits": len(rows),
        "burnside": burnside_count(config, mode),
        "orbits": listed,
    }


def build_infer(config: FieldConfig, label: str, observable: str, marginals: bool) -> dict:
    reps = representative_states(config)
    singles = named_states(config)
    if label in reps:
        i, j = _parse_axes(config, observable, 2)
        system = pair_measurement_system(reps[label], i, j, include_marginals=marginals)
        axes = [i, j]
    elif label in singles:
        if marginals:
            raise ValueError("--marginals applies only to two-particle states")
        (axis,) = _parse_axes(config, observable, 1)
        system = single_measurement_system(config, label, axis)
        axes = [axis]
    else:
        options = ", ".join(sorted(reps) + sorted(singles))
        raise ValueError(f"unknown state {label!r}; choose from {options}")
    result = infer_probabilities(system)
    payload = {
        "kind": "infer",
        "field": _field_info(config),
        "state": label,
        "axes": axes,
        "marginals": marginals,
        "status": result.status,
        "rank": result.rank,
        "outcomes": list(result.outcomes),
        "identities": [
            {"text": ident.text, "coeffs": list(ident.coeffs), "rhs": ident.rhs}
            for ident in result.identities
        ],
        "forced_zero": list(result.forced_zero),
        "solution": list(result.solution) if result.solution is not None else None,
        "witness": list(result.witness) if result.witness is not None else None,
        "ranges": [[lo, hi] for lo, hi in result.ranges] if result.ranges is not None else None,
        "certificate": None,
    }
    if result.certificate is not None:
        payload["certificate"] = {
            "multipliers": list(result.certificate),
            "rows": list(result.certificate_rows),
        }
    return payload


def build_mimic(config: FieldConfig, label: str, axes_text: str, marginals: bool) -> dict:
    state = _pair_state(config, label)
    axes = _parse_axes(config, axes_text, len(axes_text))
    if len(axes) < 2 or len(set(axes)) != len(axes):
        raise ValueError("mimic needs at least two distinct axes")
    constraints = state_correlator_constraints(state, axes)
    extra = state_marginal_constraints(state, axes) if marginals else ()
    report = hv_feasibility(constraints, axes, extra)
    result = report.result
    payload = {
        "kind": "mimic",
        "field": _field_info(config),
        "state": label,
        "axes": list(axes),
        "marginals": marginals,
        "status": result.status,
        "feasible": report.feasible,
        "outcomes": list(report.outcomes),
        "constraints": [
            {"label": c.label, "rhs": c.rhs} for c in report.system.constraints
        ],
        "witness": None,
        "certificate": None,
    }
    if result.witness is not None:
        payload["witness"] = {
            outcome: mass
            for outcome, mass in zip(report.outcomes, result.witness)
            if mass != 0
        }
    if result.certificate is not None:
        payload["certificate"] = {
            "multipliers": list(result.certificate),
            "rows": list(result.certificate_rows),
        }
    return payload


def build_table4() -> dict:
    rows = [
        {
            "state": row.label,
            "probabilities": list(row.probabilities),
            "expectation": row.expectation,
        }
        for row in table4_report()
    ]
    return {"kind": "canonical_table4", "outcomes": ["++", "+-", "-+", "--"], "rows": rows}


def build_correspondence(config: FieldConfig) -> dict:
    report = correspondence_check(config)
    entries = [
        {
            "state": e.label,
            "axes": list(e.axes),
            "galois": e.galois_bracket,
            "sign": e.galois_sign,
            "canonical": e.canonical,
            "matched": e.matched,
        }
        for e in report.entries
    ]
    return {
        "kind": "correspondence",
        "field": _field_info(config),
        "ok": report.ok,
        "entries": entries,
    }


def build_verify_phi(p: int) -> dict:
    report = verify_phi_uniqueness(p)
    return {
        "kind": "verify_phi",
        "p": report.p,
        "method": report.method,
        "candidates_checked": report.candidates_checked,
        "qualifying_count": report.qualifying_count,
        "unique": report.unique,
        "kernel": list(report.kernel),
        "matches_phi_map": report.matches_phi_map,
        "generator_independent": report.generator_independent,
    }


# -- markdown rendering ---------------------------------------------------------------


def _md_tables(payload: dict) -> str:
    header = ["state"]
    for axis in payload["axes"]:
        header += [f"σ{axis}", f"Δσ{axis}"]
    rows = []
    for row in payload["rows"]:
        cells = [row["state"]]
        for cell in row["cells"]:
            cells += [str(cell["expectation"]), str(cell["variance"])]
        rows.append(cells)
    return _md_table(header, rows)


def _md_census(payload: dict) -> str:
    rows = [[key, str(payload["counts"][key])] for key in CENSUS_ORDER]
    return _md_table(["quantity", "count"], rows)


def _md_chsh_value(payload: dict) -> str:
    axes = "".join(str(a) for a in payload["axes"])
    lines = [f"C_{axes}({payload['state']}) = {payload['value']}", ""]
    lines.append(
        _md_table(
            ["pair", "E"],
            [[pair, str(value)] for pair, value in payload["correlators"].items()],
        ).rstrip("\n")
    )
    return "\n".join(lines) + "\n"


def _md_chsh_scan(payload: dict) -> str:
    header = ["state", "0", "1", "2", "3", "4"]
    rows = [
        [row["state"]] + [str(row["histogram"][k]) for k in header[1:]]
        for row in payload["rows"]
    ]
    return _md_table(header, rows)


def _md_chsh_bound(payload: dict) -> str:
    return f"{payload['bound']}\n"


def _md_groups(payload: dict) -> str:
    parts = []
    iso = payload.get("isomorphism")
    if iso:
        flag = "verified" if iso["verified"] else "unverified"
        parts.append(f"order {payload['order']} ({iso['name']}, {flag})")
    else:
        parts.append(f"order {payload['order']}")
    classes = payload.get("classes")
    if classes:
        sizes = ", ".join(str(len(c)) for c in classes)
        parts.append(f"class sizes: {sizes}")
        for cls in classes:
            parts.append("  class: " + " ".join(cls))
    elements = payload.get("elements")
    if elements:
        axes = [entry["axis"] for entry in elements[0]["axis_action"]]
        header = ["label", "sign", "order", "matrix"] + [f"σ{a}" for a in axes]
        rows = []
        for element in elements:
            m = element["matrix"]
            matrix_text = f"[[{m[0][0]}, {m[0][1]}], [{m[1][0]}, {m[1][1]}]]"
            action = [
                ("+" if entry["sign"] > 0 else "-") + f"σ{entry['image']}"
                for entry in element["axis_action"]
            ]
            rows.append(
                [element["label"], "+" if element["sign"] > 0 else "-",
                 str(element["order"]), matrix_text] + action
            )
        parts.append("")
        parts.append(_md_table(header, rows).rstrip("\n"))
    return "\n".join(parts) + "\n"


def _md_orbits(payload: dict) -> str:
    lines = [
        f"{payload['mode']} action over GF({payload['field']['order']}): "
        f"{payload['total_orbits']} orbits, acting order {payload['acting_order']}, "
        f"Burnside count {payload['burnside']}",
        "",
    ]
    header = ["representative", "size", "stabilizer", "named members"]
    rows = [
        [
            row["representative"],
            str(row["size"]),
            str(row["stabilizer_order"]),
            " ".join(row["named_members"]) or "-",
        ]
        for row in payload["orbits"]
    ]
    lines.append(_md_table(header, rows).rstrip("\n") if rows else "(no orbits listed)")
    return "\n".join(lines) + "\n"


def _md_infer(payload: dict) -> str:
    axes = "".join(str(a) for a in payload["axes"])
    lines = [
        f"state {payload['state']}, observable axes {axes}, over GF({payload['field']['order']})",
        f"status: {payload['status']} (rank {payload['rank']})",
    ]
    if payload["identities"]:
        lines.append("identities:")
        lines += [f"  {ident['text']}" for ident in payload["identities"]]
    if payload["forced_zero"]:
        lines.append("forced zero: " + ", ".join(payload["forced_zero"]))
    if payload["status"] == "unique":
        lines.append("solution:")
        for outcome, value in zip(payload["outcomes"], payload["solution"]):
            lines.append(f"  P({outcome}) = {value}")
    elif payload["status"] == "indeterminate":
        lines.append("ranges:")
        for outcome, (lo, hi) in zip(payload["outcomes"], payload["ranges"]):
            lines.append(f"  P({outcome}) in [{lo}, {hi}]")
    elif payload["certificate"] is not None:
        lines.append("infeasibility certificate:")
        for mult, row in zip(
            payload["certificate"]["multipliers"], payload["certificate"]["rows"]
        ):
            lines.append(f"  {mult} x {row}")
    return "\n".join(lines) + "\n"


def _md_mimic(payload: dict) -> str:
    axes = ", ".join(str(a) for a in payload["axes"])
    lines = [
        f"deterministic hidden-variable model for {payload['state']} "
        f"over GF({payload['field']['order']}), axes {axes}",
        f"status: {payload['status']}",
    ]
    if payload["witness"]:
        lines.append("witness assignment probabilities:")
        for outcome in sorted(payload["witness"]):
            lines.append(f"  P({outcome}) = {payload['witness'][outcome]}")
    if payload["certificate"] is not None:
        lines.append("infeasibility certificate:")
        for mult, row in zip(
            payload["certificate"]["multipliers"], payload["certificate"]["rows"]
        ):
            lines.append(f"  {mult} x {row}")
    return "\n".join(lines) + "\n"


def _md_table4(payload: dict) -> str:
    header = ["state"] + payload["outcomes"] + ["E.V."]
    rows = [
        [row["state"]]
        + [str(p) for p in row["probabilities"]]
        + [str(row["expectation"])]
        for row in payload["rows"]
    ]
    return _md_table(header, rows)


def _md_correspondence(payload: dict) -> str:
    lines = [f"all entries consistent: {str(payload['ok']).lower()}", ""]
    header = ["state", "axes", "bracket", "sign", "canonical", "matched"]
    rows = [
        [
            e["state"],
            "".join(str(a) for a in e["axes"]),
            e["galois"],
            str(e["sign"]),
            str(e["canonical"]),
            str(e["matched"]).lower(),
        ]
        for e in payload["entries"]
    ]
    lines.append(_md_table(header, rows).rstrip("\n"))
    return "\n".join(lines) + "\n"


def _md_verify_phi(payload: dict) -> str:
    kernel = ", ".join(str(k) for k in payload["kernel"])
    return (
        f"unique: {str(payload['unique']).lower()}\n"
        f"p: {payload['p']}\n"
        f"method: {payload['method']}\n"
        f"candidates checked: {payload['candidates_checked']}\n"
        f"qualifying maps: {payload['qualifying_count']}\n"
        f"kernel: {kernel}\n"
        f"matches reference map: {str(payload['matches_phi_map']).lower()}\n"
        f"generator independent: {str(payload['generator_independent']).lower()}\n"
    )


_MARKDOWN = {
    "tables": _md_tables,
    "census": _md_census,
    "chsh_value": _md_chsh_value,
    "chsh_scan": _md_chsh_scan,
    "chsh_bound": _md_chsh_bound,
    "groups": _md_groups,
    "orbits": _md_orbits,
    "infer": _md_infer,
    "mimic": _md_mimic,
    "canonical_table4": _md_table4,
    "correspondence": _md_correspondence,
    "verify_phi": _md_verify_phi,
}


# -- CSV rendering ----------------------------------------------------------------


def _csv_rows(payload: dict) -> list[list]:
    kind = payload["kind"]
    if kind == "tables":
        rows = [["state", "axis", "expectation", "variance"]]
        for row in payload["rows"]:
            for cell in row["cells"]:
                rows.append([row["state"], cell["axis"], cell["expectation"], cell["variance"]])
        return rows
    if kind == "census":
        return [["quantity", "count"]] + [[k, payload["counts"][k]] for k in CENSUS_ORDER]
    if kind == "chsh_value":
        rows = [["key", "value"],
                ["state", payload["state"]],
                ["axes", "".join(str(a) for a in payload["axes"])],
                ["value", payload["value"]]]
        rows += [[f"E({pair})", value] for pair, value in payload["correlators"].items()]
        return rows
    if kind == "chsh_scan":
        rows = [["state", "0", "1", "2", "3", "4"]]
        for row in payload["rows"]:
            rows.append([row["state"]] + [row["histogram"][str(k)] for k in range(5)])
        return rows
    if kind == "chsh_bound":
        return [["key", "value"],
                ["bound", payload["bound"]],
                ["states_scanned", payload["states_scanned"]],
                ["quadruples_per_state", payload["quadruples_per_state"]]]
    if kind == "groups":
        if "elements" in payload:
            rows = [["label", "sign", "order", "m00", "m01", "m10", "m11"]]
            for element in payload["elements"]:
                m = element["matrix"]
                rows.append([element["label"], element["sign"], element["order"],
                             m[0][0], m[0][1], m[1][0], m[1][1]])
            return rows
        if "classes" in payload:
            rows = [["class", "label"]]
            for index, cls in enumerate(payload["classes"]):
                rows += [[index, label] for label in cls]
            return rows
        iso = payload["isomorphism"]
        return [["key", "value"],
                ["order", iso["order"]],
                ["name", iso["name"]],
                ["verified", iso["verified"]],
                ["abelian", iso["abelian"]],
                ["class_sizes", " ".join(str(s) for s in iso["class_sizes"])]]
    if kind == "orbits":
        rows = [["representative", "size", "stabilizer_order", "named_members"]]
        for row in payload["orbits"]:
            rows.append([row["representative"], row["size"], row["stabilizer_order"],
                         " ".join(row["named_members"])])
        return rows
    if kind == "infer" or kind == "mimic":
        rows = [["key", "value"],
                ["state", payload["state"]],
                ["status", payload["status"]]]
        if kind == "infer":
            rows.append(["rank", payload["rank"]])
            rows += [["identity", ident["text"]] for ident in payload["identities"]]
            if payload["forced_zero"]:
                rows.append(["forced_zero", " ".join(payload["forced_zero"])])
            if payload["ranges"] is not None:
                for outcome, (lo, hi) in zip(payload["outcomes"], payload["ranges"]):
                    rows.append([f"range P({outcome})", f"[{lo}, {hi}]"])
        else:
            if payload["witness"]:
                for outcome in sorted(payload["witness"]):
                    rows.append([f"P({outcome})", payload["witness"][outcome]])
        if payload.get("certificate"):
            for mult, row in zip(payload["certificate"]["multipliers"],
                                 payload["certificate"]["rows"]):
                rows.append(["certificate", f"{mult} x {row}"])
        return rows
    if kind == "canonical_table4":
        rows = [["state"] + payload["outcomes"] + ["expectation"]]
        for row in payload["rows"]:
            rows.append([row["state"]] + [str(p) for p in row["probabilities"]]
                        + [str(row["expectation"])])
        return rows
    if kind == "correspondence":
        rows = [["state", "axes", "bracket", "sign", "canonical", "matched"]]
        for e in payload["entries"]:
            rows.append([e["state"], "".join(str(a) for a in e["axes"]), e["galois"],
                         e["sign"], str(e["canonical"]), e["matched"]])
        return rows
    if kind == "verify_phi":
        return [["key", "value"],
                ["p", payload["p"]],
                ["unique", payload["unique"]],
                ["method", payload["method"]],
                ["candidates_checked", payload["candidates_checked"]],
                ["qualifying_count", payload["qualifying_count"]],
                ["kernel", " ".join(str(k) for k in payload["kernel"])],
                ["matches_phi_map", payload["matches_phi_map"]],
                ["generator_independent", payload["generator_independent"]]]
    raise AssertionError(f"no CSV layout for {kind}")


# -- argument parsing and dispatch ------------------------------------------------


def _shared_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--p", type=int, default=default,
                        help="field characteristic, a prime with p %% 4 == 3 (default 3)")
    parser.add_argument("--degree", type=int, choices=(1, 2), default=default,
                        help="1 for GF(p), 2 for GF(p^2) (default 2)")
    parser.add_argument("--format", choices=("markdown", "json", "csv"), default=default,
                        help="output format (default markdown)")
    parser.add_argument("--output", default=default,
                        help="write the report to this path instead of standard output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bioqm",
        description="Exact reports for spin models over GF(p) and GF(p^2).",
    )
    _shared_options(parser, suppress=False)
    parser.add_argument("--seed-check", action="store_true",
                        help="run every reproduction criterion and print pass/fail lines")
    sub = parser.add_subparsers(dest="command")

    def command(name, help_text):
        p = sub.add_parser(name, help=help_text)
        _shared_options(p, suppress=True)
        return p

    command("tables", "expectation and variance of every spin observable per state")
    command("census", "two-particle state counts: product/entangled, physical/self-orthogonal")

    chsh_p = command("chsh", "CHSH correlator combinations")
    chsh_p.add_argument("--state", default=None, help="named two-particle state (S, T or U)")
    chsh_p.add_argument("--axes", default="1331", help="four axis digits A a B b (default 1331)")
    chsh_p.add_argument("--scan", action="store_true",
                        help="histogram of |CHSH| over all axis quadruples")
    chsh_p.add_argument("--bound", action="store_true",
                        help="maximum |CHSH| over every physical two-particle state")

    groups_p = command("groups", "symmetry group elements, classes and identification")
    groups_p.add_argument("--classes", action="store_true", help="only conjugacy classes")
    groups_p.add_argument("--iso", action="store_true", help="only the identification summary")

    orbits_p = command("orbits", "orbit decomposition of entangled physical states")
    orbits_p.add_argument("--mode", choices=("global", "local"), default="local",
                          help="same transform on both sides, or independent sides")
    orbits_p.add_argument("--min-size", type=int, default=0,
                          help="list only orbits at least this large")

    infer_p = command("infer", "what measured expectations say about outcome probabilities")
    infer_p.add_argument("--state", required=True, help="a..f or S/T/U")
    infer_p.add_argument("--observable", default="33",
                         help="axis digits: one for single states, two for pairs (default 33)")
    infer_p.add_argument("--marginals", action="store_true",
                         help="also constrain by the two single-side expectations")

    mimic_p = command("mimic", "deterministic hidden-variable feasibility for a state")
    mimic_p.add_argument("--state", required=True, help="named two-particle state (S, T or U)")
    mimic_p.add_argument("--axes", default="13", help="axis digits to constrain (default 13)")
    mimic_p.add_argument("--marginals", action="store_true",
                         help="also constrain single-side expectations")

    canonical_p = command("canonical", "reference results from ordinary quantum mechanics")
    which = canonical_p.add_mutually_exclusive_group()
    which.add_argument("--table4", action="store_true",
                       help="outcome probabilities for the named pair states (default)")
    which.add_argument("--correspondence", action="store_true",
                       help="match field brackets against canonical correlators")

    command("verify-phi", "uniqueness check for the product-preserving sign map")
    return parser


def _emit(payload: dict, fmt: str, output: str | None) -> None:
    if fmt == "json":
        text = json.dumps(_jsonify(payload), sort_keys=True, indent=2) + "\n"
    elif fmt == "csv":
        text = _csv_text(_csv_rows(payload))
    else:
        text = _MARKDOWN[payload["kind"]](payload)
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _dispatch(ns: argparse.Namespace) -> int:
    p = ns.p if getattr(ns, "p", None) is not None else 3
    degree = getattr(ns, "degree", None) if getattr(ns, "degree", None) is not None else 2
    fmt = getattr(ns, "format", None) or "markdown"
    output = getattr(ns, "output", None)

    if ns.seed_check:
        results = acceptance.run_all()
        lines = [result.line() for result in results]
        passed = sum(1 for result in results if result.passed)
        lines.append(f"{passed}/{len(results)} criteria passed")
        text = "\n".join(lines) + "\n"
        if output:
            with open(output, "w", encoding="utf-8") as handle:
                handle.write(text)
        else:
            sys.stdout.write(text)
        return 0 if passed == len(results) else 1

    command = ns.command
    if command is None:
        raise ValueError("no subcommand given; see --help")

    if command == "verify-phi":
        _emit(build_verify_phi(p), fmt, output)
        return 0
    if command == "canonical":
        if ns.correspondence:
            payload = build_correspondence(FieldConfig(p, degree))
        else:
            payload = build_table4()
        _emit(payload, fmt, output)
        return 0

    config = FieldConfig(p, degree)
    if command == "tables":
        payload = build_tables(config)
    elif command == "census":
        payload = build_census(config)
    elif command == "chsh":
        if ns.bound:
            payload = build_chsh_bound(config)
        elif ns.scan:
            payload = build_chsh_scan(config, ns.state)
        elif ns.state:
            payload = build_chsh_value(config, ns.state, ns.axes)
        else:
            raise ValueError("chsh needs --state, --scan or --bound")
    elif command == "groups":
        payload = build_groups(config, ns.classes, ns.iso)
    elif command == "orbits":
        payload = build_orbits(config, ns.mode, ns.min_size)
    elif command == "infer":
        payload = build_infer(config, ns.state, ns.observable, ns.marginals)
    elif command == "mimic":
        payload = build_mimic(config, ns.state, ns.axes, ns.marginals)
    else:
        raise AssertionError(f"unhandled command {command}")
    _emit(payload, fmt, output)
    return 0


def run(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 2
    try:
        return _dispatch(ns)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AssertionError, RuntimeError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
