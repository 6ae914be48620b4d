"""Structured verification reports with canonical serialization.

JSON is the canonical format: keys sorted, floats printed with 17
significant digits, no whitespace variation.  Two runs with the same
configuration therefore emit byte-identical documents.  Wall-clock time is
deliberately kept out of the serialized body (it would break byte equality);
the CLI prints it to stderr instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# check kinds: how `value` relates to `threshold`
#   max  - passes when value <= threshold
#   min  - passes when value >= threshold
#   eq   - passes when value == threshold exactly (integer checks)
#   info - reported only, always passes
KINDS = ("max", "min", "eq", "info")


@dataclass(frozen=True)
class Check:
    name: str
    kind: str
    value: float | int
    threshold: float | int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown check kind {self.kind!r}")
        v = self.value
        if isinstance(v, (np.floating, np.integer)):
            object.__setattr__(self, "value", v.item())

    @property
    def passed(self) -> bool:
        if self.kind == "info":
            return True
        if self.kind == "max":
            return self.value <= self.threshold
        if self.kind == "min":
            return self.value >= self.threshold
        return self.value == self.threshold


@dataclass
class VerificationReport:
    suite: str
    n: int | None
    samples: int
    seed: int
    tolerances: dict
    checks: list[Check] = field(default_factory=list)
    walltime: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def payload(self) -> dict:
        return {
            "suite": self.suite,
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "tolerances": dict(self.tolerances),
            "checks": [
                {
                    "name": c.name,
                    "kind": c.kind,
                    "value": c.value,
                    "threshold": c.threshold,
                    "pass": c.passed,
                }
                for c in self.checks
            ],
            "pass": self.passed,
        }


def _fmt_scalar(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        x = float(v)
        if not np.isfinite(x):
            raise ValueError("non-finite value in report")
        return f"{x:.17g}"
    if isinstance(v, str):
        out = v.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{out}"'
    raise TypeError(f"unsupported report value {type(v)!r}")


def canonical_json(obj) -> str:
    """Deterministic JSON: sorted keys, fixed float format, no whitespace."""
    if isinstance(obj, dict):
        items = sorted(obj.items())
        inner = ",".join(f"{_fmt_scalar(k)}:{canonical_json(v)}" for k, v in items)
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(canonical_json(v) for v in obj) + "]"
    return _fmt_scalar(obj)


def render_json(report: VerificationReport) -> str:
    return canonical_json(report.payload())


def render_text(report: VerificationReport) -> str:
    p = report.payload()
    lines = [
        f"suite: {p['suite']}",
        f"n: {'all' if p['n'] is None else p['n']}",
        f"samples: {p['samples']}",
        f"seed: {p['seed']}",
        "tolerances: "
        + " ".join(f"{k}={_fmt_scalar(v)}" for k, v in sorted(p["tolerances"].items())),
    ]
    for c in p["checks"]:
        thr = "-" if c["threshold"] is None else _fmt_scalar(c["threshold"])
        lines.append(
            f"check {c['name']}: kind={c['kind']} value={_fmt_scalar(c['value'])} "
            f"threshold={thr} pass={'true' if c['pass'] else 'false'}"
        )
    lines.append(f"overall: {'PASS' if p['pass'] else 'FAIL'}")
    return "\n".join(lines) + "\n"
