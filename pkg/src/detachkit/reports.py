"""Versioned JSON reports and their text summaries."""

from __future__ import annotations

import json
from pathlib import Path

from .errors import DetachkitError

SCHEMA = "detachkit-report"
SCHEMA_VERSION = 1


def _plain(obj):
    """Convert to JSON-native types so a dump/load round trip is the identity."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(x) for x in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(_plain(x) for x in obj)
    if hasattr(obj, "to_dict"):
        return _plain(obj.to_dict())
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    if hasattr(obj, "item"):  # numpy scalars
        return obj.item()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def make_report(command: str, inputs: dict, result, timings: dict | None = None) -> dict:
    return {
        "schema": SCHEMA,
        "version": SCHEMA_VERSION,
        "command": command,
        "inputs": _plain(inputs),
        "result": _plain(result),
        "timings": _plain(timings or {}),
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def loads(text: str) -> dict:
    d = json.loads(text)
    if d.get("schema") != SCHEMA:
        raise DetachkitError("not a detachkit report")
    if d.get("version") != SCHEMA_VERSION:
        raise DetachkitError(f"unsupported report version {d.get('version')}")
    return d


def save(report: dict, path) -> None:
    Path(path).write_text(dumps(report), encoding="ascii", newline="\n")


def load(path) -> dict:
    return loads(Path(path).read_text(encoding="ascii"))


def summary(report: dict) -> str:
    """A short human-readable rendering."""
    cmd = report["command"]
    res = report["result"]
    lines = [f"{cmd}:"]
    if cmd in ("analyze", "verify-theorem"):
        outs = res if isinstance(res, list) else [{"outcome": res}]
        for o in outs:
            oc = o["outcome"]
            head = f"  {o.get('M', '')} / {o.get('N', '')}: " if "M" in o else "  "
            kind = f" ({oc['kind']})" if oc.get("kind") else ""
            lines.append(f"{head}{oc['case']}{kind}")
    elif cmd == "detect":
        for c in res:
            extra = f" + {c['aug']} ({c['aug_side']})" if "aug" in c else ""
            lines.append(f"  {c['kind']}: {' '.join(c['elements'])}{extra}")
        if not res:
            lines.append("  none")
    elif cmd in ("pairs", "exchange"):
        items = res if isinstance(res, list) else [res]
        for p in items:
            if p is None:
                continue
            lines.append(f"  {p.get('kind', '')} {' '.join(p.get('pair', []))}".rstrip())
        if not any(items):
            lines.append("  none")
    elif cmd == "chain-scan":
        lines.append(f"  scanned {res['scanned']}, without plain pairs {len(res['no_plain_pair'])}")
        for r in res["no_plain_pair"]:
            fams = ", ".join(f["family"] for f in r["families"]) or "unclassified"
            lines.append(f"  {r['id']} (n={r['n']}): {fams}")
    elif cmd == "graph-verify":
        lines.append(f"  case {res['case']}; graph-native {res['conjecture_case']}")
    else:
        lines.append("  " + json.dumps(res, sort_keys=True)[:200])
    return "\n".join(lines) + "\n"


__all__ = ["SCHEMA_VERSION", "dumps", "load", "loads", "make_report", "save", "summary"]
