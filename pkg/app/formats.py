"""
Plain-text file formats and renderings.

TableFile:
    elements: a b c d
    b b b c          # row = left factor
    ...

Automaton file:
    states: a b
    alphabet: 0 1
    a 0 b 0          # state symbol next output

'#' starts a comment, blank lines are ignored.
"""

from typing import Iterator, List, Tuple, Union

import graphviz

from app.errors import ParseError
from app.mealy import MealyAutomaton
from app.semigroup import FiniteSemigroup, green, validate


def _content_lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line.split()


def _header(lines, keyword: str) -> Tuple[int, List[str]]:
    try:
        number, tokens = next(lines)
    except StopIteration:
        raise ParseError(None, f"missing '{keyword}' header") from None
    if tokens[0] == keyword:
        values = tokens[1:]
    elif tokens[0].startswith(keyword):
        values = [tokens[0][len(keyword):]] + tokens[1:]
    else:
        raise ParseError(number, f"expected '{keyword}' header, found {tokens[0]!r}")
    if not values:
        raise ParseError(number, f"'{keyword}' lists nothing")
    return number, values


def detect_kind(text: str) -> str:
    """'table' or 'automaton', from the first header keyword"""
    for number, tokens in _content_lines(text):
        if tokens[0].startswith("elements:"):
            return "table"
        if tokens[0].startswith("states:"):
            return "automaton"
        raise ParseError(number, "expected an 'elements:' or 'states:' header")
    raise ParseError(None, "file is empty")


def parse_table(text: str) -> FiniteSemigroup:
    lines = _content_lines(text)
    _, names = _header(lines, "elements:")
    position = {name: i for i, name in enumerate(names)}
    rows = []
    last = None
    for number, tokens in lines:
        last = number
        if len(rows) == len(names):
            raise ParseError(number, f"more than {len(names)} rows")
        if len(tokens) != len(names):
            raise ParseError(number, f"row has {len(tokens)} entries, expected {len(names)}")
        row = []
        for token in tokens:
            if token not in position:
                raise ParseError(number, f"{token!r} is not listed in the header")
            row.append(position[token])
        rows.append(row)
    if len(rows) != len(names):
        raise ParseError(last, f"expected {len(names)} rows, found {len(rows)}")
    return validate(names, rows)


def write_table(S: FiniteSemigroup) -> str:
    lines = ["elements: " + " ".join(S.names)]
    for row in S.table:
        lines.append(" ".join(S.names[v] for v in row))
    return "\n".join(lines) + "\n"


def parse_automaton(text: str) -> MealyAutomaton:
    lines = _content_lines(text)
    _, states = _header(lines, "states:")
    _, alphabet = _header(lines, "alphabet:")
    delta = {}
    for number, tokens in lines:
        if len(tokens) != 4:
            raise ParseError(number, "expected 'state symbol next output'")
        q, b, r, y = tokens
        for token, known in ((q, states), (b, alphabet), (r, states), (y, alphabet)):
            if token not in known:
                raise ParseError(number, f"unknown name {token!r}")
        if (q, b) in delta:
            raise ParseError(number, f"({q}, {b}) is defined twice")
        delta[(q, b)] = (r, y)
    for q in states:
        for b in alphabet:
            if (q, b) not in delta:
                raise ParseError(None, f"no transition for ({q}, {b})")
    return MealyAutomaton.from_delta(states, alphabet, delta)


def write_automaton(A: MealyAutomaton) -> str:
    lines = ["states: " + " ".join(A.states), "alphabet: " + " ".join(A.alphabet)]
    for q, name in enumerate(A.states):
        for b, symbol in enumerate(A.alphabet):
            lines.append(f"{name} {symbol} {A.states[A.transitions[q][b]]} {A.alphabet[A.outputs[q][b]]}")
    return "\n".join(lines) + "\n"


def parse_any(text: str) -> Union[FiniteSemigroup, MealyAutomaton]:
    if detect_kind(text) == "table":
        return parse_table(text)
    return parse_automaton(text)


def export_dot(A: MealyAutomaton) -> str:
    """DOT digraph, one edge per (source, target) labelled 'in|out' with parallel labels comma-joined"""
    digraph = graphviz.Digraph(name="automaton", node_attr={"shape": "circle"})
    for q, name in enumerate(A.states):
        digraph.node(f"q{q}", label=name)
    edges = {}
    for q in range(len(A.states)):
        for b, symbol in enumerate(A.alphabet):
            target = A.transitions[q][b]
            edges.setdefault((q, target), []).append(f"{symbol}|{A.alphabet[A.outputs[q][b]]}")
    for (q, target), labels in edges.items():
        digraph.edge(f"q{q}", f"q{target}", label=",".join(labels))
    return digraph.source


def _grid(rows: List[List[str]]) -> List[str]:
    width = max(len(cell) for row in rows for cell in row)
    border = "+" + "+".join("-" * (width + 2) for _ in rows[0]) + "+"
    out = [border]
    for row in rows:
        out.append("| " + " | ".join(cell.ljust(width) for cell in row) + " |")
        out.append(border)
    return out


def render_eggbox(S: FiniteSemigroup) -> str:
    """D-classes top-down; each one a grid with R-classes as rows and L-classes as columns.

    Cells list the H-class; '*' marks a group H-class (one holding an idempotent).
    """
    structure = green(S)
    blocks = []
    for number, d in enumerate(structure.d_classes_topological(), start=1):
        r_classes = structure.r_classes_in(d)
        l_classes = structure.l_classes_in(d)
        rows = []
        for r in r_classes:
            cells = []
            for l in l_classes:
                h = sorted(set(r) & set(l))
                cell = ",".join(S.names[x] for x in h)
                if any(S.table[x][x] == x for x in h):
                    cell = "*" + cell
                cells.append(cell)
            rows.append(cells)
        header = f"D{number}: {len(r_classes)}x{len(l_classes)}"
        blocks.append("\n".join([header] + _grid(rows)))
    return "\n\n".join(blocks) + "\n"
