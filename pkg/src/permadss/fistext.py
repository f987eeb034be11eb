"""Read and write fuzzy systems as a line-oriented text format.

Rule bases ship as data files so analysts can re-calibrate them without
touching code.  The grammar, one statement per line, ``#`` comments:

    system <name>
    option <key> <value>          # and_op, or_op, implication,
                                  # aggregation, defuzz, resolution
    input <name> range <lo> <hi>
    output <name> range <lo> <hi>
    label <name> tri <a> <b> <c>
    label <name> trap <a> <b> <c> <d>
    rule if <var> is <label> (and|or <var> is <label>)* \
        then <var> is <label> [weight <w>]

Labels attach to the most recent ``input``/``output`` block.  Numbers
accept scientific notation.  ``serialize_fis`` emits a canonical form
(fixed section order, shortest round-trip float formatting, one rule per
line) such that parse -> serialize is byte-idempotent and
``parse_fis(serialize_fis(f)) == f``.
"""
from __future__ import annotations

import math
import re

from .engine import FisDefinition, FuzzyRule
from .errors import FisParseError, FuzzyError
from .membership import LinguisticVariable, MembershipFunction

__all__ = ["parse_fis", "serialize_fis"]

_KEYWORDS = {
    "system", "option", "input", "output", "label", "rule",
    "if", "is", "and", "or", "then", "weight", "range", "tri", "trap",
}
_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_\-]*$")
_OPTION_VALUES = {
    "and_op": "min",
    "or_op": "max",
    "implication": "min",
    "aggregation": "max",
    "defuzz": "centroid",
}


class _Tok:
    __slots__ = ("text", "line", "col")

    def __init__(self, text: str, line: int, col: int):
        self.text = text
        self.line = line
        self.col = col


def _tokenize(text: str) -> list[list[_Tok]]:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = [_Tok(m.group(0), lineno, m.start() + 1) for m in re.finditer(r"\S+", body)]
        if toks:
            lines.append(toks)
    return lines


def _err(message: str, tok: _Tok) -> FisParseError:
    return FisParseError(message, tok.line, tok.col)


def _name(tok: _Tok, what: str) -> str:
    if tok.text in _KEYWORDS:
        raise _err(f"{what} may not be the keyword {tok.text!r}", tok)
    if not _NAME_RE.match(tok.text):
        raise _err(f"invalid {what} {tok.text!r}", tok)
    return tok.text


def _number(tok: _Tok) -> float:
    try:
        value = float(tok.text)
    except ValueError:
        raise _err(f"invalid number {tok.text!r}", tok) from None
    if not math.isfinite(value):
        raise _err(f"invalid number {tok.text!r}", tok)
    return value


def _expect(toks: list[_Tok], i: int, what: str) -> _Tok:
    if i >= len(toks):
        last = toks[-1]
        raise FisParseError(f"expected {what} after {last.text!r}", last.line, last.col + len(last.text))
    return toks[i]


def _expect_keyword(toks: list[_Tok], i: int, word: str) -> _Tok:
    tok = _expect(toks, i, f"{word!r}")
    if tok.text != word:
        raise _err(f"expected {word!r}, got {tok.text!r}", tok)
    return tok


def _no_more(toks: list[_Tok], i: int):
    if i < len(toks):
        raise _err(f"unexpected trailing token {toks[i].text!r}", toks[i])


class _VarBlock:
    def __init__(self, kind: str, name: str, lo: float, hi: float, tok: _Tok):
        self.kind = kind
        self.name = name
        self.lo = lo
        self.hi = hi
        self.tok = tok
        self.labels: list[tuple[str, MembershipFunction]] = []

    def build(self) -> LinguisticVariable:
        try:
            return LinguisticVariable(self.name, (self.lo, self.hi), tuple(self.labels))
        except FuzzyError as exc:
            raise _err(str(exc), self.tok) from None


def parse_fis(text: str) -> FisDefinition:
    """Parse FIS text into a validated :class:`FisDefinition`.

    Raises :class:`FisParseError` with line/column for every syntax or
    semantic problem; never raises anything else, whatever the input.
    """
    lines = _tokenize(text)
    n_lines = text.count("\n") + 1

    system_name = None
    options: dict[str, object] = {}
    option_toks: dict[str, _Tok] = {}
    blocks: list[_VarBlock] = []
    current: _VarBlock | None = None
    raw_rules: list[tuple[list[_Tok], _Tok]] = []

    for toks in lines:
        head = toks[0]
        if head.text == "system":
            if system_name is not None:
                raise _err("duplicate system header", head)
            system_name = _name(_expect(toks, 1, "system name"), "system name")
            _no_more(toks, 2)
        elif head.text == "option":
            key_tok = _expect(toks, 1, "option key")
            key = key_tok.text
            if key not in _OPTION_VALUES and key != "resolution":
                raise _err(f"unknown option {key!r}", key_tok)
            if key in options:
                raise _err(f"duplicate option {key!r}", key_tok)
            val_tok = _expect(toks, 2, "option value")
            _no_more(toks, 3)
            if key == "resolution":
                if not re.fullmatch(r"\d+", val_tok.text):
                    raise _err(f"resolution must be a positive integer, got {val_tok.text!r}", val_tok)
                value: object = int(val_tok.text)
                if value < 11:
                    raise _err(f"resolution must be at least 11, got {value}", val_tok)
            else:
                if val_tok.text != _OPTION_VALUES[key]:
                    raise _err(
                        f"unsupported {key} {val_tok.text!r}; only {_OPTION_VALUES[key]!r} is supported",
                        val_tok,
                    )
                value = val_tok.text
            options[key] = value
            option_toks[key] = val_tok
        elif head.text in ("input", "output"):
            name = _name(_expect(toks, 1, "variable name"), "variable name")
            _expect_keyword(toks, 2, "range")
            lo = _number(_expect(toks, 3, "range low"))
            hi = _number(_expect(toks, 4, "range high"))
            _no_more(toks, 5)
            if any(b.name == name for b in blocks):
                raise _err(f"duplicate variable {name!r}", toks[1])
            if not lo < hi:
                raise _err(f"empty range [{lo!r}, {hi!r}] for variable {name!r}", toks[3])
            current = _VarBlock(head.text, name, lo, hi, head)
            blocks.append(current)
        elif head.text == "label":
            if current is None:
                raise _err("label outside of a variable block", head)
            lname_tok = _expect(toks, 1, "label name")
            lname = _name(lname_tok, "label name")
            if any(n == lname for n, _ in current.labels):
                raise _err(f"duplicate label {lname!r} in variable {current.name!r}", lname_tok)
            kind_tok = _expect(toks, 2, "'tri' or 'trap'")
            if kind_tok.text not in ("tri", "trap"):
                raise _err(f"expected 'tri' or 'trap', got {kind_tok.text!r}", kind_tok)
            count = 3 if kind_tok.text == "tri" else 4
            points = tuple(_number(_expect(toks, 3 + j, "breakpoint")) for j in range(count))
            _no_more(toks, 3 + count)
            try:
                mf = MembershipFunction(kind_tok.text, points)
            except FuzzyError as exc:
                raise _err(str(exc), toks[3]) from None
            if points[0] < current.lo or points[-1] > current.hi:
                raise _err(
                    f"label {lname!r} support outside universe "
                    f"[{current.lo!r}, {current.hi!r}] of variable {current.name!r}",
                    toks[3],
                )
            current.labels.append((lname, mf))
        elif head.text == "rule":
            raw_rules.append((toks, head))
        else:
            raise _err(f"unknown statement {head.text!r}", head)

    eof = _Tok("", n_lines + 1, 1)
    if system_name is None:
        raise _err("missing system header", eof)
    inputs = [b for b in blocks if b.kind == "input"]
    outputs = [b for b in blocks if b.kind == "output"]
    if not inputs:
        raise _err("no input variables defined", eof)
    if not outputs:
        raise _err("no output variable defined", eof)
    if len(outputs) > 1:
        raise _err("duplicate output variable", outputs[1].tok)
    if not raw_rules:
        raise _err("no rules defined", eof)

    variables = {b.name: b.build() for b in blocks}
    output_var = variables[outputs[0].name]

    rules = []
    for toks, head in raw_rules:
        _expect_keyword(toks, 1, "if")
        i = 2
        clauses: list[tuple[str, str]] = []
        connective = None
        while True:
            var_tok = _expect(toks, i, "variable name")
            var = _name(var_tok, "variable name")
            if var not in variables:
                raise _err(f"unknown variable {var!r}", var_tok)
            if variables[var].name == output_var.name:
                raise _err(f"output variable {var!r} used in an antecedent", var_tok)
            _expect_keyword(toks, i + 1, "is")
            label_tok = _expect(toks, i + 2, "label name")
            label = _name(label_tok, "label name")
            if label not in variables[var].label_names:
                raise _err(f"unknown label {label!r} for variable {var!r}", label_tok)
            if any(v == var for v, _ in clauses):
                raise _err(f"variable {var!r} appears in more than one clause", var_tok)
            clauses.append((var, label))
            i += 3
            nxt = _expect(toks, i, "'and', 'or' or 'then'")
            if nxt.text in ("and", "or"):
                if connective is None:
                    connective = nxt.text
                elif connective != nxt.text:
                    raise _err("mixed connectives in one rule", nxt)
                i += 1
                continue
            if nxt.text == "then":
                break
            raise _err(f"expected 'and', 'or' or 'then', got {nxt.text!r}", nxt)
        cvar_tok = _expect(toks, i + 1, "output variable")
        cvar = _name(cvar_tok, "variable name")
        if cvar not in variables:
            raise _err(f"unknown variable {cvar!r}", cvar_tok)
        if cvar != output_var.name:
            raise _err(f"consequent variable {cvar!r} is not the output", cvar_tok)
        _expect_keyword(toks, i + 2, "is")
        clabel_tok = _expect(toks, i + 3, "label name")
        clabel = _name(clabel_tok, "label name")
        if clabel not in output_var.label_names:
            raise _err(f"unknown label {clabel!r} for variable {cvar!r}", clabel_tok)
        i += 4
        weight = 1.0
        if i < len(toks) and toks[i].text == "weight":
            wtok = _expect(toks, i + 1, "weight value")
            weight = _number(wtok)
            if not 0.0 < weight <= 1.0:
                raise _err(f"weight must be in (0, 1], got {weight!r}", wtok)
            i += 2
        _no_more(toks, i)
        rules.append(FuzzyRule(tuple(clauses), (cvar, clabel), connective or "and", weight))

    try:
        return FisDefinition(
            name=system_name,
            inputs=tuple(variables[b.name] for b in inputs),
            output=output_var,
            rules=tuple(rules),
            resolution=int(options.get("resolution", 1001)),
        )
    except FuzzyError as exc:  # already-validated parts should not re-fail
        raise FisParseError(str(exc), 1, 1) from None


def _fmt(x: float) -> str:
    return repr(float(x))


def serialize_fis(fis: FisDefinition) -> str:
    """Canonical text for a system; byte-stable and exactly re-parseable."""
    out = [f"system {fis.name}"]
    out.append(f"option and_op {fis.and_op}")
    out.append(f"option or_op {fis.or_op}")
    out.append(f"option implication {fis.implication}")
    out.append(f"option aggregation {fis.aggregation}")
    out.append(f"option defuzz {fis.defuzz}")
    out.append(f"option resolution {fis.resolution}")
    for var, kind in [(v, "input") for v in fis.inputs] + [(fis.output, "output")]:
        lo, hi = var.universe
        out.append(f"{kind} {var.name} range {_fmt(lo)} {_fmt(hi)}")
        for label, mf in var.labels:
            pts = " ".join(_fmt(p) for p in mf.params)
            out.append(f"label {label} {mf.kind} {pts}")
    for rule in fis.rules:
        clauses = f" {rule.connective} ".join(f"{v} is {l}" for v, l in rule.antecedent)
        line = f"rule if {clauses} then {rule.consequent[0]} is {rule.consequent[1]}"
        if rule.weight != 1.0:
            line += f" weight {_fmt(rule.weight)}"
        out.append(line)
    return "\n".join(out) + "\n"
