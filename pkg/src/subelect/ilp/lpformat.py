"""CPLEX LP text export and a reader for the subset this package writes."""

from __future__ import annotations

import re

from .model import IlpModel

__all__ = ["export_lp", "parse_lp"]

LINE_WIDTH = 240
_META = re.compile(r"\\\s*subelect\s+(.*)$")
_LABEL = re.compile(r"^\s*([A-Za-z_][\w.\[\]]*)\s*:(.*)$")
_TERM = re.compile(r"([+-]?)\s*(\d*)\s*([A-Za-z_][\w.\[\]]*)")


def _expr(terms) -> str:
    parts = []
    for k, (var, coef) in enumerate(terms):
        sign = "-" if coef < 0 else "+"
        mag = abs(coef)
        body = var if mag == 1 else f"{mag} {var}"
        if k == 0:
            parts.append(body if sign == "+" else f"- {body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def _wrap(head: str, body: str) -> list[str]:
    """Split long expressions onto continuation lines at term boundaries."""
    line = f"{head}{body}"
    if len(line) <= LINE_WIDTH:
        return [line]
    out, cur = [], head
    for tok in re.split(r" (?=[+-] )", body):
        if len(cur) + len(tok) + 1 > LINE_WIDTH and cur.strip():
            out.append(cur.rstrip())
            cur = "   "
        cur += tok + " "
    out.append(cur.rstrip())
    return out


def export_lp(model: IlpModel) -> str:
    lines = ["Maximize" if model.sense == "max" else "Minimize"]
    meta = [f"kind={model.kind or '-'}"]
    if model.m_prime is not None:
        meta.append(f"m_prime={model.m_prime}")
    if model.n_prime is not None:
        meta.append(f"n_prime={model.n_prime}")
    lines.append("\\ subelect " + " ".join(meta))
    if model.objective:
        lines.extend(_wrap(" obj: ", _expr(model.objective)))
    else:
        lines.append(f" obj: 0 {model.variables[0]}" if model.variables else " obj:")
    lines.append("Subject To")
    for con in model.constraints:
        body = _expr(con.terms) if con.terms else f"0 {model.variables[0]}"
        lines.extend(_wrap(f" {con.name}: ", f"{body} {con.sense} {con.rhs}"))
    lines.append("Binary")
    for var in model.variables:
        lines.append(f" {var}")
    lines.append("End")
    return "\n".join(lines) + "\n"


def _parse_terms(text: str) -> tuple[tuple[str, int], ...]:
    terms = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mo = _TERM.match(text, pos)
        if not mo:
            raise ValueError(f"cannot parse LP expression near {text[pos:pos + 30]!r}")
        sign, mag, var = mo.groups()
        coef = int(mag) if mag else 1
        if sign == "-":
            coef = -coef
        if coef != 0:
            terms.append((var, coef))
        pos = mo.end()
        while pos < len(text) and text[pos] == " ":
            pos += 1
    return tuple(terms)


def _statements(lines):
    """Join continuation lines onto the labelled line they extend."""
    stmts = []
    for line in lines:
        if _LABEL.match(line) or not stmts:
            stmts.append(line.strip())
        else:
            stmts[-1] += " " + line.strip()
    return stmts


def parse_lp(text: str) -> IlpModel:
    """Read an LP file written by :func:`export_lp`."""
    sections = {"objective": [], "constraints": [], "binary": []}
    current = None
    meta = {}
    sense = "min"
    for raw in text.splitlines():
        stripped = raw.strip()
        if not stripped:
            continue
        mo = _META.match(stripped)
        if mo:
            for tok in mo.group(1).split():
                key, _, val = tok.partition("=")
                meta[key] = val
            continue
        if stripped.startswith("\\"):
            continue
        low = stripped.lower()
        if low in ("minimize", "minimise", "min"):
            current, sense = "objective", "min"
        elif low in ("maximize", "maximise", "max"):
            current, sense = "objective", "max"
        elif low in ("subject to", "st", "s.t."):
            current = "constraints"
        elif low in ("binary", "binaries", "bin"):
            current = "binary"
        elif low == "end":
            break
        elif current is None:
            raise ValueError(f"content before objective section: {stripped!r}")
        else:
            sections[current].append(raw)

    model = IlpModel(kind="" if meta.get("kind", "-") == "-" else meta["kind"])
    if "m_prime" in meta:
        model.m_prime = int(meta["m_prime"])
    if "n_prime" in meta:
        model.n_prime = int(meta["n_prime"])
    for line in sections["binary"]:
        for var in line.split():
            model.add_var(var)
    for stmt in _statements(sections["constraints"]):
        mo = _LABEL.match(stmt)
        if not mo:
            raise ValueError(f"unlabelled constraint {stmt!r}")
        name, body = mo.group(1), mo.group(2)
        cm = re.match(r"(.*?)(<=|>=|=<|=>|=|<|>)\s*(-?\d+)\s*$", body)
        if not cm:
            raise ValueError(f"cannot parse constraint {stmt!r}")
        lhs, op, rhs = cm.groups()
        op = {"=<": "<=", "<": "<=", "=>": ">=", ">": ">="}.get(op, op)
        model.add_constraint(name, _parse_terms(lhs), op, int(rhs))
    obj = _statements(sections["objective"])
    terms = ()
    if obj:
        mo = _LABEL.match(obj[0])
        terms = _parse_terms(mo.group(2) if mo else obj[0])
    model.set_objective(sense, terms)
    return model
