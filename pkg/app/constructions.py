"""
Builders for the semigroup families and concrete examples the toolkit studies.

Every builder returns a validated FiniteSemigroup (or, for the two-state
relation automaton, a MealyAutomaton).
"""

from collections import deque
from dataclasses import dataclass
from itertools import groupby
from typing import Callable, Dict, List, Sequence, Tuple

from app.errors import BadParam
from app.mealy import MealyAutomaton
from app.semigroup import FiniteSemigroup, validate, zero

Transformation = Tuple[int, ...]


def _numbered(n: int) -> List[str]:
    return [f"x{i}" for i in range(1, n + 1)]


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise BadParam(message)


def left_zero(n: int) -> FiniteSemigroup:
    _require(n >= 1, "left_zero needs n >= 1")
    return validate(_numbered(n), [[i] * n for i in range(n)])


def right_zero(n: int) -> FiniteSemigroup:
    _require(n >= 1, "right_zero needs n >= 1")
    return validate(_numbered(n), [list(range(n)) for _ in range(n)])


def rectangular_band(p: int, q: int) -> FiniteSemigroup:
    """I x J with (i,j)(k,l) = (i,l); (i,j) has index (i-1)*q + (j-1)"""
    _require(p >= 1 and q >= 1, "rectangular_band needs p, q >= 1")
    names = [f"({i},{j})" for i in range(1, p + 1) for j in range(1, q + 1)]
    table = [[(x // q) * q + (y % q) for y in range(p * q)] for x in range(p * q)]
    return validate(names, table)


def chain_semilattice(n: int) -> FiniteSemigroup:
    """x_i x_j = x_max(i,j); x1 is the identity"""
    _require(n >= 1, "chain_semilattice needs n >= 1")
    return validate(_numbered(n), [[max(i, j) for j in range(n)] for i in range(n)])


def cyclic_group(n: int) -> FiniteSemigroup:
    _require(n >= 1, "cyclic_group needs n >= 1")
    names = ["e"] + ["g" if i == 1 else f"g{i}" for i in range(1, n)]
    return validate(names, [[(i + j) % n for j in range(n)] for i in range(n)])


def nilpotent_monogenic(k: int) -> FiniteSemigroup:
    """x, x2, ..., x{k} with x^i x^j = x^min(i+j, k)"""
    _require(k >= 2, "nilpotent_monogenic needs k >= 2")
    names = ["x"] + [f"x{i}" for i in range(2, k + 1)]
    return validate(names, [[min(i + j + 2, k) - 1 for j in range(k)] for i in range(k)])


FAMILIES: Dict[str, Tuple[Callable[..., FiniteSemigroup], int]] = {
    "left_zero": (left_zero, 1),
    "right_zero": (right_zero, 1),
    "rectangular_band": (rectangular_band, 2),
    "chain_semilattice": (chain_semilattice, 1),
    "cyclic_group": (cyclic_group, 1),
    "nilpotent_monogenic": (nilpotent_monogenic, 1),
}


def basic_family(kind: str, *params: int) -> FiniteSemigroup:
    if kind not in FAMILIES:
        raise BadParam(f"unknown family {kind!r}; choose from {', '.join(FAMILIES)}")
    builder, arity = FAMILIES[kind]
    if len(params) != arity:
        raise BadParam(f"{kind} takes {arity} parameter(s), got {len(params)}")
    return builder(*params)


EXAMPLE_TABLES = {
    # S^2 = {b, c, d} is a left-zero band
    "square_left_zero": ["b b b c", "b b b b", "c c c c", "d d d d"],
    # S^2 = {a, b, c} is a right-zero band
    "square_right_zero": ["a b c a", "a b c a", "a b c b", "a b c a"],
}


def example_table(which: str) -> FiniteSemigroup:
    if which not in EXAMPLE_TABLES:
        raise BadParam(f"unknown example {which!r}; choose from {', '.join(EXAMPLE_TABLES)}")
    names = ["a", "b", "c", "d"]
    position = {name: i for i, name in enumerate(names)}
    return validate(names, [[position[t] for t in row.split()] for row in EXAMPLE_TABLES[which]])


def zero_union(A: FiniteSemigroup, B: FiniteSemigroup, merge_zeros: bool = False) -> FiniteSemigroup:
    """A ⊔ B ⊔ {0}: products inside A and inside B kept, everything else is 0.

    With `merge_zeros`, an absorbing zero of A or B is identified with the new 0.
    Elements of A are suffixed ".1", those of B ".2".
    """
    parts = []
    for suffix, part in ((".1", A), (".2", B)):
        dropped = zero(part) if merge_zeros else None
        kept = [x for x in range(part.size) if x != dropped]
        parts.append((suffix, part, kept))

    names, slot = [], {}
    for which, (suffix, part, kept) in enumerate(parts):
        for x in kept:
            slot[(which, x)] = len(names)
            names.append(f"{part.names[x]}{suffix}")
    z = len(names)
    names.append("0")

    table = [[z] * len(names) for _ in names]
    for which, (_, part, kept) in enumerate(parts):
        for x in kept:
            for y in kept:
                table[slot[(which, x)]][slot[(which, y)]] = slot.get((which, part.table[x][y]), z)
    return validate(names, table)


def tails_construction(parts: Sequence[FiniteSemigroup], tail_counts: Sequence[int]) -> FiniteSemigroup:
    """Each part S_i gets n_i tail elements a with a·s = a for s in S_i; all other cross products are 0"""
    _require(len(parts) == len(tail_counts), "one tail count per part")
    _require(all(n >= 1 for n in tail_counts), "tail counts must be >= 1")

    names: List[str] = []
    offsets = []
    for i, part in enumerate(parts, start=1):
        offsets.append(len(names))
        names.extend(f"{name}.{i}" for name in part.names)
    tails = []
    for i, count in enumerate(tail_counts, start=1):
        for j in range(1, count + 1):
            tails.append((i - 1, len(names)))
            names.append(f"a{i}_{j}")
    z = len(names)
    names.append("0")

    table = [[z] * len(names) for _ in names]
    for part, offset in zip(parts, offsets):
        for x in range(part.size):
            for y in range(part.size):
                table[offset + x][offset + y] = offset + part.table[x][y]
    for owner, a in tails:
        for s in range(parts[owner].size):
            table[a][offsets[owner] + s] = a
    return validate(names, table)


def adjoin_identity(S: FiniteSemigroup) -> FiniteSemigroup:
    name = "1"
    while name in S.names:
        name += "'"
    n = S.size
    table = [list(row) + [x] for x, row in enumerate(S.table)]
    table.append(list(range(n + 1)))
    return validate(list(S.names) + [name], table)


def relation_automaton() -> MealyAutomaton:
    """Two states a, b over {0, 1}; the states satisfy ab = b² and generate an infinite semigroup"""
    return MealyAutomaton.from_delta(
        ["a", "b"],
        ["0", "1"],
        {
            ("a", "0"): ("b", "0"),
            ("a", "1"): ("a", "1"),
            ("b", "0"): ("b", "0"),
            ("b", "1"): ("a", "0"),
        },
    )


# ---------------------------------------------------------------------------
# a self-dual, self-automaton semigroup that is not a band
# ---------------------------------------------------------------------------

A_MAP: Transformation = (2, 3, 3, 4, 5)
B_MAP: Transformation = (4, 5, 4, 4, 5)
POINTS = range(1, 6)


def then(f: Transformation, g: Transformation) -> Transformation:
    """Right action: x·(fg) = (x·f)·g"""
    return tuple(g[f[x - 1] - 1] for x in POINTS)


def after(f: Transformation, g: Transformation) -> Transformation:
    """Left action: (fg)(x) = f(g(x))"""
    return tuple(f[g[x - 1] - 1] for x in POINTS)


def _run_length(letters: Sequence[str]) -> str:
    return "".join(
        letter if count == 1 else f"{letter}{count}"
        for letter, count in ((k, len(list(g))) for k, g in groupby(letters))
    )


def _generated(generators, multiply):
    """Elements of <generators> in shortlex order of their words, plus the words"""
    elements, words, index = [], [], {}
    queue = deque()
    for letter, g in generators:
        if g not in index:
            index[g] = len(elements)
            elements.append(g)
            words.append((letter,))
            queue.append(index[g])
    while queue:
        x = queue.popleft()
        for letter, g in generators:
            y = multiply(elements[x], g)
            if y not in index:
                index[y] = len(elements)
                elements.append(y)
                words.append(words[x] + (letter,))
                queue.append(index[y])
    table = [[index[multiply(f, g)] for g in elements] for f in elements]
    return elements, words, table


@dataclass(frozen=True)
class SelfDualBundle:
    t: FiniteSemigroup
    t_prime: FiniteSemigroup
    t_hat: FiniteSemigroup
    rect: FiniteSemigroup
    s: FiniteSemigroup
    t_hat_in_s: Tuple[int, ...]
    rect_in_s: Tuple[int, ...]


def self_dual_nonband() -> SelfDualBundle:
    """The 36-element semigroup S = T̂ ∪ R.

    T = <a, b> acts on the right of {1..5}, T' = <a', b'> (the same maps) on the
    left. T̂ is generated by (a', a) and (b', b) inside T' x T, R is the 5 x 5
    rectangular band, and the mixed products are (u,v)(i,j) = (u(i), j) and
    (i,j)(u,v) = (i, j·v).
    """
    t_maps, t_words, t_table = _generated([("a", A_MAP), ("b", B_MAP)], then)
    t_names = [_run_length(w) for w in t_words]
    t = validate(t_names, t_table)

    p_maps, p_words, p_table = _generated([("a'", A_MAP), ("b'", B_MAP)], after)
    p_names = [_run_length(w) for w in p_words]
    t_prime = validate(p_names, p_table)

    def pair_product(x, y):
        return after(x[0], y[0]), then(x[1], y[1])

    hat_pairs, _, hat_table = _generated(
        [("a", (A_MAP, A_MAP)), ("b", (B_MAP, B_MAP))], pair_product
    )
    hat_names = [f"({p_names[p_maps.index(u)]},{t_names[t_maps.index(v)]})" for u, v in hat_pairs]
    t_hat = validate(hat_names, hat_table)

    rect = rectangular_band(5, 5)

    h = len(hat_pairs)
    cells = [(i, j) for i in POINTS for j in POINTS]
    cell_at = {cell: h + k for k, cell in enumerate(cells)}
    table = [[0] * (h + len(cells)) for _ in range(h + len(cells))]
    for x in range(h):
        for y in range(h):
            table[x][y] = hat_table[x][y]
    for x, (u, v) in enumerate(hat_pairs):
        for i, j in cells:
            table[x][cell_at[(i, j)]] = cell_at[(u[i - 1], j)]
            table[cell_at[(i, j)]][x] = cell_at[(i, v[j - 1])]
    for i, j in cells:
        for k, l in cells:
            table[cell_at[(i, j)]][cell_at[(k, l)]] = cell_at[(i, l)]
    s = validate(hat_names + list(rect.names), table)

    return SelfDualBundle(
        t=t,
        t_prime=t_prime,
        t_hat=t_hat,
        rect=rect,
        s=s,
        t_hat_in_s=tuple(range(h)),
        rect_in_s=tuple(range(h, h + len(cells))),
    )
