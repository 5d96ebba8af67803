"""Line-oriented text format for SLP instances.

Example::

    slp v1
    alphabet 2
    rules 4
    rule 0 := t:0
    rule 1 := t:1
    rule 2 := n:0 n:1
    rule 3 := n:2 run:0^3
    text 3
    pattern 2

``#`` starts a comment. Rule ids are dense and 0-based. Structural
checks are left to :func:`app.pkg.slp.core.validate`.
"""

from __future__ import annotations

from pathlib import Path

from app.pkg.models.v1.exceptions import SlpSyntaxError
from app.pkg.slp.core import Item, Ref, Run, Slp, SymbolTable

__all__ = ["parse_slp", "parse_slp_file", "serialize_slp", "serialize_slp_file"]

HEADER = "slp v1"


def _int(token: str, line: int, what: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise SlpSyntaxError(f"{what} must be an integer, got {token!r}", line) from None
    if value < 0:
        raise SlpSyntaxError(f"{what} must not be negative, got {value}", line)
    return value


def _item(token: str, line: int) -> Item:
    kind, sep, rest = token.partition(":")
    if not sep:
        raise SlpSyntaxError(f"malformed item {token!r}", line)
    if kind == "t":
        return _int(rest, line, "letter")
    if kind == "n":
        return Ref(_int(rest, line, "nonterminal"))
    if kind == "run":
        letter, caret, exponent = rest.partition("^")
        if not caret:
            raise SlpSyntaxError(f"malformed run {token!r}", line)
        return Run(_int(letter, line, "letter"), _int(exponent, line, "exponent"))
    raise SlpSyntaxError(f"unknown item kind {kind!r}", line)


def parse_slp(source: str) -> Slp:
    """Parse the ``slp v1`` format."""
    header_seen = False
    alphabet: int | None = None
    count: int | None = None
    bodies: dict[int, list[Item]] = {}
    axioms: dict[str, int] = {}
    last_line = 0

    for number, raw in enumerate(source.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        last_line = number
        if not header_seen:
            if tokens != HEADER.split():
                raise SlpSyntaxError(f"expected {HEADER!r} header", number)
            header_seen = True
            continue

        keyword = tokens[0]
        if keyword in ("alphabet", "rules", "text", "pattern"):
            if len(tokens) != 2:
                raise SlpSyntaxError(f"{keyword} takes one integer", number)
            value = _int(tokens[1], number, keyword)
            if keyword == "alphabet":
                if alphabet is not None:
                    raise SlpSyntaxError("duplicate alphabet line", number)
                alphabet = value
            elif keyword == "rules":
                if count is not None:
                    raise SlpSyntaxError("duplicate rules line", number)
                count = value
            else:
                if keyword in axioms:
                    raise SlpSyntaxError(f"duplicate {keyword} line", number)
                axioms[keyword] = value
        elif keyword == "rule":
            if len(tokens) < 3 or tokens[2] != ":=":
                raise SlpSyntaxError("expected 'rule <id> := <items>'", number)
            rule = _int(tokens[1], number, "rule id")
            if rule in bodies:
                raise SlpSyntaxError(f"duplicate rule {rule}", number)
            if count is not None and rule >= count:
                raise SlpSyntaxError(f"rule {rule} out of range 0..{count - 1}", number)
            bodies[rule] = [_item(token, number) for token in tokens[3:]]
        else:
            raise SlpSyntaxError(f"unknown directive {keyword!r}", number)

    if not header_seen:
        raise SlpSyntaxError(f"missing {HEADER!r} header", last_line or None)
    for keyword, value in (("alphabet", alphabet), ("rules", count)):
        if value is None:
            raise SlpSyntaxError(f"missing {keyword} line", last_line)
    for keyword in ("text", "pattern"):
        if keyword not in axioms:
            raise SlpSyntaxError(f"missing {keyword} line", last_line)
    missing = [rule for rule in range(count) if rule not in bodies]
    if missing:
        raise SlpSyntaxError(f"rules not defined: {missing[:5]}", last_line)

    return Slp(
        [bodies[rule] for rule in range(count)],
        axioms["text"],
        axioms["pattern"],
        SymbolTable.uniform(alphabet),
    )


def parse_slp_file(path: str | Path) -> Slp:
    return parse_slp(Path(path).read_text(encoding="utf-8"))


def _render(item: Item) -> str:
    if isinstance(item, Ref):
        return f"n:{item.nt}"
    if isinstance(item, Run):
        return f"run:{item.letter}^{item.exponent}"
    return f"t:{item}"


def serialize_slp(slp: Slp, with_weights: bool = False) -> str:
    """Canonical text form; weights other than 1 go into comments."""
    lines = [HEADER, f"alphabet {len(slp.symbols)}", f"rules {len(slp.rules)}"]
    for rule, body in enumerate(slp.rules):
        items = " ".join(_render(item) for item in body)
        lines.append(f"rule {rule} :=" + (f" {items}" if items else ""))
    lines.append(f"text {slp.text_axiom}")
    lines.append(f"pattern {slp.pattern_axiom}")
    if with_weights:
        lines.extend(
            f"# weight {letter} {weight}"
            for letter, weight in enumerate(slp.symbols.weights)
            if weight != 1
        )
    return "\n".join(lines) + "\n"


def serialize_slp_file(slp: Slp, path: str | Path, with_weights: bool = False) -> None:
    Path(path).write_text(serialize_slp(slp, with_weights), encoding="utf-8")
