"""Instance file format.

::

    # comment
    ssp <kind-id> v1
    <kind-specific body lines>
    variant <variant-name>        (optional)
    <variant lines>

A file whose first meaningful line is a DIMACS ``p cnf`` header is read as a
SAT instance.  Tokens are whitespace separated and ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass

from ssplift.core import ParseError, ProblemKind, SspInstance, spec_for

VARIANT_NAMES = (
    "interdiction",
    "comb-interdiction",
    "regret",
    "restricted-regret",
    "two-stage",
    "comb-two-stage",
)


@dataclass(frozen=True)
class InstanceDocument:
    instance: SspInstance
    variant: str | None
    variant_lines: tuple[tuple[int, tuple[str, ...]], ...]


def tokenize(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = line.split()
        if tokens:
            out.append((lineno, tokens))
    return out


def parse_document(text: str) -> InstanceDocument:
    lines = tokenize(text)
    if not lines:
        raise ParseError("empty instance file", 1, 1)
    lineno, head = lines[0]
    if head[:2] == ["p", "cnf"]:
        kind = ProblemKind.SATISFIABILITY
        body = [(n, t) for n, t in lines if t[0] != "c"]
    else:
        if len(head) != 3 or head[0] != "ssp" or head[2] != "v1":
            raise ParseError("malformed header, expected 'ssp <kind-id> v1'", lineno, 1)
        kind = ProblemKind.from_id(head[1])
        body = lines[1:]
    variant = None
    variant_lines: tuple = ()
    for pos, (n, tokens) in enumerate(body):
        if tokens[0] == "variant":
            if len(tokens) != 2 or tokens[1] not in VARIANT_NAMES:
                raise ParseError(f"unknown variant section {' '.join(tokens[1:])!r}", n, 1)
            variant = tokens[1]
            variant_lines = tuple((m, tuple(t)) for m, t in body[pos + 1:])
            body = body[:pos]
            break
    payload = spec_for(kind).parse_body(body)
    return InstanceDocument(SspInstance(kind, payload), variant, variant_lines)


def parse_instance(text: str) -> SspInstance:
    doc = parse_document(text)
    if doc.variant is not None:
        raise ParseError("file carries a variant section; read it with parse_variant")
    return doc.instance


def serialize_instance(x: SspInstance) -> str:
    lines = [f"ssp {x.kind.value} v1", *x.spec.serialize_body(x.payload)]
    return "\n".join(lines) + "\n"
