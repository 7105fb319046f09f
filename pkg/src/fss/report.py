"""Machine-readable decomposition reports and their comparison."""

from __future__ import annotations

import json
from typing import Any

from .decomposition import ANNIHILATING, Decomposition, verify_decomposition
from .io import InputDocument, canonical_json

REPORT_FORMAT = "fss-report/1"


def _vec(F, v) -> list[str]:
    return [F.format(a) for a in v]


def level_record(level, flags: dict[str, bool]) -> dict[str, Any]:
    F = level.algebra.field
    tr = level.transversal
    section = []
    for e in level.section.entries:
        section.append(
            {
                "s": level.algebra.gen_names[e.s_index],
                "t": e.t_index,
                "strategy": e.strategy,
                "tau_coords": _vec(F, e.coords),
                "sigma": None if e.strategy == ANNIHILATING else _vec(F, level.algebra.coordinates(e.sigma)),
            }
        )
    raw_kinds: dict[str, int] = {}
    for u in level.generators.raw:
        raw_kinds[u.kind] = raw_kinds.get(u.kind, 0) + 1
    return {
        "index": level.index,
        "seed": level.seed,
        "dim_algebra": level.algebra.dim,
        "generators": list(level.algebra.gen_names),
        "radical_power_dims": list(level.radical.power_dims),
        "cyclic_dim": level.cyclic_dim,
        "simple_basis": [_vec(F, b) for b in level.simple.subspace.basis],
        "x": _vec(F, tr.x),
        "transversal": tr.strategies,
        "section": section,
        "section_strategies": level.section.strategy_counts(),
        "u_raw": len(level.generators.raw),
        "u_raw_kinds": raw_kinds,
        "u_pruned": len(level.U),
        "u_dim": level.next_algebra.dim,
        "lift_degrees": list(level.frame.nilpotency),
        "verification": flags,
    }


def build_report(
    doc: InputDocument,
    d: Decomposition,
    *,
    verify: str = "full",
    timings: dict[str, float] | None = None,
) -> dict[str, Any]:
    """A JSON-ready report; byte-stable for fixed input and configuration unless timings are added."""
    check = verify_decomposition(d, full=(verify == "full"))
    levels = [level_record(lv, flags) for lv, flags in zip(d.levels, check["levels"])]
    report: dict[str, Any] = {
        "format": REPORT_FORMAT,
        "input_sha256": doc.digest(),
        "field": doc.field.to_json(),
        "config": dict(d.config, verify=verify),
        "seed": d.config.get("seed", 0),
        "dim_module": d.algebra.m,
        "levels": levels,
        "terminal": {
            "reason": d.reason,
            "generators": len(d.terminal.gen_names),
            "dim": d.terminal_dim,
        },
        "cyclic_dims": d.cyclic_dims,
        "terminal_dim": d.terminal_dim,
        "bound": d.bound,
        "oracle_dim": check["oracle_dim"],
        "checks": {
            "chain_links": check["chain_links"],
            "bound_sound": check["bound_sound"],
            "all_passed": check["all_passed"],
        },
    }
    if timings is not None:
        report["timings"] = {k: round(v, 6) for k, v in timings.items()}
    return report


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def diff_reports(recorded: dict, fresh: dict, path: str = "") -> list[str]:
    """Paths where two reports disagree (timings are ignored)."""
    out: list[str] = []
    if isinstance(recorded, dict) and isinstance(fresh, dict):
        for k in sorted(set(recorded) | set(fresh)):
            if k == "timings" and not path:
                continue
            sub = f"{path}.{k}" if path else k
            if k not in recorded or k not in fresh:
                out.append(sub)
            else:
                out.extend(diff_reports(recorded[k], fresh[k], sub))
    elif isinstance(recorded, list) and isinstance(fresh, list):
        if len(recorded) != len(fresh):
            out.append(path)
        else:
            for i, (a, b) in enumerate(zip(recorded, fresh)):
                out.extend(diff_reports(a, b, f"{path}[{i}]"))
    elif canonical_json(recorded) != canonical_json(fresh):
        out.append(path)
    return out


def _fmt(v) -> str:
    return "-" if v is None else str(v)


def summary_lines(report: dict) -> list[str]:
    """Tab-delimited human summary: one header row, one row per level, then totals."""
    rows = ["level\tdim_A\tdim_M\tu_raw\tu_pruned\tdim_KU\tinverted\tcompletion\tannihilating\tchecks"]
    for lv in report["levels"]:
        st = lv["section_strategies"]
        ok = "pass" if all(lv["verification"].values()) else "FAIL"
        rows.append(
            "\t".join(
                str(v)
                for v in (
                    lv["index"] + 1,
                    lv["dim_algebra"],
                    lv["cyclic_dim"],
                    lv["u_raw"],
                    lv["u_pruned"],
                    lv["u_dim"],
                    st["inverted-transversal"],
                    st["idempotent-completion"],
                    st["annihilating"],
                    ok,
                )
            )
        )
    rows.append(f"terminal\t{report['terminal']['reason']}\tdim={_fmt(report['terminal_dim'])}")
    rows.append(f"bound\t{_fmt(report['bound'])}\toracle_dim={_fmt(report['oracle_dim'])}")
    return rows
