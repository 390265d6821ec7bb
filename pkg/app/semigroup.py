"""
Finite semigroups given by a full Cayley table.

Element identity is the 0-based row index; names only matter at the I/O
boundary. Row index is the LEFT factor: table[i][j] is (element i)(element j).
All values are immutable once built and every function here is pure.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from app.errors import (
    BadIndex,
    BadName,
    BadParam,
    DuplicateName,
    InternalDisagreement,
    NotAssociative,
    ShapeMismatch,
    SizeMismatch,
    UnknownSymbol,
)
from app.schemas import IsoWitness, PeriodWitness, Verdict

logger = logging.getLogger(__name__)

Partition = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class FiniteSemigroup:
    names: Tuple[str, ...]
    table: Tuple[Tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def product(self, indices: Iterable[int]) -> int:
        """Left-to-right product of a non-empty sequence of elements"""
        it = iter(indices)
        acc = next(it)
        for x in it:
            acc = self.table[acc][x]
        return acc

    def index(self, name: str) -> int:
        try:
            return self._positions[name]
        except KeyError:
            raise UnknownSymbol(name) from None

    @cached_property
    def _positions(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.table, dtype=np.int64).reshape(self.size, self.size)
        arr.setflags(write=False)
        return arr


def _check_names(names: Sequence[str]) -> Tuple[str, ...]:
    seen = set()
    for name in names:
        if not name or "#" in name or any(ch.isspace() for ch in name):
            raise BadName(name)
        if name in seen:
            raise DuplicateName(name)
        seen.add(name)
    return tuple(names)


def validate(names: Sequence[str], table: Sequence[Sequence[int]]) -> FiniteSemigroup:
    """Build a FiniteSemigroup, checking totality, names and associativity"""
    names = _check_names(list(names))
    n = len(names)
    if n == 0:
        raise ShapeMismatch("a semigroup needs at least one element")
    if len(table) != n:
        raise ShapeMismatch(f"table has {len(table)} rows for {n} names")
    rows = []
    for i, row in enumerate(table):
        if len(row) != n:
            raise ShapeMismatch(f"row {i} has {len(row)} entries, expected {n}")
        for j, value in enumerate(row):
            if not 0 <= int(value) < n:
                raise BadIndex(i, j, int(value), n)
        rows.append(tuple(int(v) for v in row))

    arr = np.array(rows, dtype=np.int64)
    # one left factor at a time keeps memory at O(n^2)
    for i in range(n):
        lhs = arr[arr[i]]      # (x_i x_j) x_k
        rhs = arr[i][arr]      # x_i (x_j x_k)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            j, k = (int(v) for v in bad[0])
            raise NotAssociative(i, j, k, f" ({names[i]},{names[j]},{names[k]})")
    return FiniteSemigroup(names=names, table=tuple(rows))


def restrict(S: FiniteSemigroup, subset: Iterable[int]) -> FiniteSemigroup:
    """Subsemigroup on `subset` (kept in the given order); the subset must be closed"""
    new_to_old = list(subset)
    old_to_new = {x: i for i, x in enumerate(new_to_old)}
    try:
        table = [[old_to_new[S.table[a][b]] for b in new_to_old] for a in new_to_old]
    except KeyError as exc:
        raise BadParam(f"subset is not closed under multiplication (product {exc.args[0]})") from None
    return FiniteSemigroup(names=tuple(S.names[x] for x in new_to_old), table=tuple(map(tuple, table)))


# ---------------------------------------------------------------------------
# element-wise predicates
# ---------------------------------------------------------------------------

def idempotents(S: FiniteSemigroup) -> List[int]:
    return [x for x in range(S.size) if S.table[x][x] == x]


def is_band(S: FiniteSemigroup) -> Verdict:
    for x in range(S.size):
        if S.table[x][x] != x:
            return Verdict(holds=False, witness=x)
    return Verdict(holds=True)


def index_period(S: FiniteSemigroup, s: int) -> Tuple[int, int]:
    """(m, r) with s^(m+r) = s^m, both minimal"""
    seen = {s: 1}
    power, exponent = s, 1
    while True:
        power = S.table[power][s]
        exponent += 1
        if power in seen:
            m = seen[power]
            return m, exponent - m
        seen[power] = exponent


def is_aperiodic(S: FiniteSemigroup) -> Verdict:
    for s in range(S.size):
        m, r = index_period(S, s)
        if r > 1:
            return Verdict(holds=False, witness=PeriodWitness(element=S.names[s], index=m, period=r))
    return Verdict(holds=True)


def identity_element(S: FiniteSemigroup) -> Optional[int]:
    for e in range(S.size):
        if all(S.table[e][x] == x == S.table[x][e] for x in range(S.size)):
            return e
    return None


def is_monoid(S: FiniteSemigroup) -> bool:
    return identity_element(S) is not None


def has_relative_identities(S: FiniteSemigroup) -> bool:
    """For every s there are e, f with se = fs = s"""
    arr = S.array
    for s in range(S.size):
        if not (arr[s, :] == s).any() or not (arr[:, s] == s).any():
            return False
    return True


def zero(S: FiniteSemigroup) -> Optional[int]:
    for z in range(S.size):
        if all(S.table[z][x] == z == S.table[x][z] for x in range(S.size)):
            return z
    return None


def regular_elements(S: FiniteSemigroup) -> FrozenSet[int]:
    arr = S.array
    return frozenset(a for a in range(S.size) if (arr[arr[a, :], a] == a).any())


def is_regular(S: FiniteSemigroup) -> bool:
    return len(regular_elements(S)) == S.size


def square(S: FiniteSemigroup) -> Tuple[FiniteSemigroup, Tuple[int, ...]]:
    """S^2 = {xy} as a semigroup, with its embedding into S"""
    members = tuple(sorted({v for row in S.table for v in row}))
    return restrict(S, members), members


def nilpotency_class(S: FiniteSemigroup) -> Optional[int]:
    """Least k with S^k = {0}, or None when there is no zero or the powers stall above it"""
    z = zero(S)
    if z is None:
        return None
    current = frozenset(range(S.size))
    k = 1
    while current != {z}:
        following = frozenset(S.table[a][b] for a in current for b in range(S.size))
        if following == current:
            return None
        current, k = following, k + 1
    return k


# ---------------------------------------------------------------------------
# Green's relations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GreenStructure:
    r_classes: Partition
    l_classes: Partition
    h_classes: Partition
    d_classes: Partition
    # (upper, lower) pairs of D-class indices, strict and transitively closed
    d_order: FrozenSet[Tuple[int, int]]
    regular: FrozenSet[int]

    @staticmethod
    def class_of(partition: Partition, x: int) -> int:
        for i, block in enumerate(partition):
            if x in block:
                return i
        raise BadParam(f"{x} is not in the partition")

    def r_classes_in(self, d: int) -> Partition:
        members = set(self.d_classes[d])
        return tuple(block for block in self.r_classes if block[0] in members)

    def l_classes_in(self, d: int) -> Partition:
        members = set(self.d_classes[d])
        return tuple(block for block in self.l_classes if block[0] in members)

    def maximal_d_classes(self) -> List[int]:
        lowers = {lower for _, lower in self.d_order}
        return [d for d in range(len(self.d_classes)) if d not in lowers]

    def d_classes_topological(self) -> List[int]:
        """Maximal classes first; ties go to the class holding the smallest element"""
        dag = nx.DiGraph()
        dag.add_nodes_from(range(len(self.d_classes)))
        dag.add_edges_from(self.d_order)
        return list(nx.lexicographical_topological_sort(dag, key=lambda d: self.d_classes[d][0]))

    def square_d_classes(self) -> bool:
        return all(
            len(self.r_classes_in(d)) == len(self.l_classes_in(d)) for d in range(len(self.d_classes))
        )

    def maximal_d_singletons(self) -> bool:
        return all(len(self.d_classes[d]) == 1 for d in self.maximal_d_classes())


def _partition(blocks: Iterable[Iterable[int]]) -> Partition:
    return tuple(sorted(tuple(sorted(block)) for block in blocks))


def _cayley_graph(S: FiniteSemigroup, side: str) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(S.size))
    for a in range(S.size):
        for x in range(S.size):
            if side in ("right", "both"):
                graph.add_edge(a, S.table[a][x])
            if side in ("left", "both"):
                graph.add_edge(a, S.table[x][a])
    return graph


def compose_relations(first: Partition, second: Partition, size: int) -> Partition:
    """The relation first∘second (a ~ b iff a first c second b for some c), as blocks per element"""
    lookup_second = {x: block for block in second for x in block}
    lookup_first = {x: block for block in first for x in block}
    related = {a: frozenset(b for c in lookup_first[a] for b in lookup_second[c]) for a in range(size)}
    return _partition(set(related.values()))


def green(S: FiniteSemigroup) -> GreenStructure:
    """R, L, H, D and the D-order through reachability in the Cayley graphs.

    Principal ideals are taken with the element adjoined (aS u {a}), so no
    identity needs to be added.
    """
    n = S.size
    r_classes = _partition(nx.strongly_connected_components(_cayley_graph(S, "right")))
    l_classes = _partition(nx.strongly_connected_components(_cayley_graph(S, "left")))

    r_of = {x: set(block) for block in r_classes for x in block}
    l_of = {x: set(block) for block in l_classes for x in block}
    h_classes = _partition({frozenset(r_of[a] & l_of[a]) for a in range(n)})
    d_classes = compose_relations(r_classes, l_classes, n)

    two_sided = _cayley_graph(S, "both")
    condensed = nx.condensation(two_sided)
    j_classes = _partition(condensed.nodes[c]["members"] for c in condensed.nodes)
    if j_classes != d_classes:
        raise InternalDisagreement(f"D-classes {d_classes} differ from J-classes {j_classes}")

    closure = nx.transitive_closure_dag(condensed)
    node_of = condensed.graph["mapping"]
    d_order = frozenset(
        (i, j)
        for i, upper in enumerate(d_classes)
        for j, lower in enumerate(d_classes)
        if i != j and closure.has_edge(node_of[upper[0]], node_of[lower[0]])
    )
    return GreenStructure(
        r_classes=r_classes,
        l_classes=l_classes,
        h_classes=h_classes,
        d_classes=d_classes,
        d_order=d_order,
        regular=regular_elements(S),
    )


# ---------------------------------------------------------------------------
# left-regular representation, duality, products
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LeftRegularRepresentation:
    image: FiniteSemigroup
    faithful: bool
    kernel_pairs: Tuple[Tuple[int, int], ...]
    # element index -> index of its transformation in `image`
    representation: Tuple[int, ...]


def lrr(S: FiniteSemigroup) -> LeftRegularRepresentation:
    """a -> lambda_a (x -> ax); the image is closed under composition"""
    rows: Dict[Tuple[int, ...], int] = {}
    representatives: List[int] = []
    representation = []
    for a in range(S.size):
        row = S.table[a]
        if row not in rows:
            rows[row] = len(representatives)
            representatives.append(a)
        representation.append(rows[row])

    table = []
    for a in representatives:
        outer = S.table[a]
        line = []
        for b in representatives:
            composed = tuple(outer[y] for y in S.table[b])   # lambda_a after lambda_b
            if composed not in rows:
                raise InternalDisagreement(f"lambda_{a} o lambda_{b} left the image")
            line.append(rows[composed])
        table.append(tuple(line))

    kernel = tuple(
        (a, b)
        for a in range(S.size)
        for b in range(a + 1, S.size)
        if representation[a] == representation[b]
    )
    image = FiniteSemigroup(names=tuple(S.names[a] for a in representatives), table=tuple(table))
    return LeftRegularRepresentation(
        image=image,
        faithful=not kernel,
        kernel_pairs=kernel,
        representation=tuple(representation),
    )


def opposite(S: FiniteSemigroup) -> FiniteSemigroup:
    return FiniteSemigroup(names=S.names, table=tuple(zip(*S.table)))


def direct_product(S: FiniteSemigroup, T: FiniteSemigroup) -> FiniteSemigroup:
    """Pairs (s,t) in lexicographic order; (s,t) has index s*|T| + t"""
    m = T.size
    names = tuple(f"({s},{t})" for s in S.names for t in T.names)
    table = tuple(
        tuple(S.table[s1][s2] * m + T.table[t1][t2] for s2 in range(S.size) for t2 in range(m))
        for s1 in range(S.size)
        for t1 in range(m)
    )
    return validate(names, table)


# ---------------------------------------------------------------------------
# isomorphism search
# ---------------------------------------------------------------------------

def element_invariants(S: FiniteSemigroup) -> List[Tuple[int, ...]]:
    """Isomorphism-invariant fingerprint of every element"""
    structure = green(S)
    block_size = {}
    for partition in (structure.r_classes, structure.l_classes, structure.h_classes, structure.d_classes):
        for block in partition:
            for x in block:
                block_size.setdefault(x, []).append(len(block))
    fingerprints = []
    for a in range(S.size):
        m, r = index_period(S, a)
        left_ideal = {S.table[x][a] for x in range(S.size)} | {a}
        right_ideal = set(S.table[a]) | {a}
        fingerprints.append((
            int(S.table[a][a] == a),
            m,
            r,
            len(left_ideal),
            len(right_ideal),
            *block_size[a],
            int(a in structure.regular),
        ))
    return fingerprints


def verify_witness(S: FiniteSemigroup, T: FiniteSemigroup, witness: IsoWitness) -> bool:
    m = witness.mapping
    if sorted(m) != list(range(T.size)) or S.size != T.size:
        return False
    for x in range(S.size):
        for y in range(S.size):
            if witness.kind == "isomorphism":
                expected = T.table[m[x]][m[y]]
            else:
                expected = T.table[m[y]][m[x]]
            if m[S.table[x][y]] != expected:
                return False
    return True


def find_isomorphism(S: FiniteSemigroup, T: FiniteSemigroup, strict: bool = False) -> Optional[IsoWitness]:
    """Backtracking search for a multiplication-preserving bijection S -> T.

    Elements of S are assigned in ascending index order and candidates in T are
    tried in ascending order, so the first witness found is reproducible.
    Every assignment is propagated through the products it determines.
    """
    if S.size != T.size:
        if strict:
            raise SizeMismatch(f"|S| = {S.size} but |T| = {T.size}")
        return None
    inv_s, inv_t = element_invariants(S), element_invariants(T)
    if Counter(inv_s) != Counter(inv_t):
        logger.debug("invariant multisets differ; no isomorphism")
        return None

    n = S.size
    candidates = [[y for y in range(n) if inv_t[y] == inv_s[x]] for x in range(n)]
    forward = [-1] * n
    used = [False] * n
    assigned: List[int] = []
    stats = {"nodes": 0}

    def undo(mark: int) -> None:
        while len(assigned) > mark:
            a = assigned.pop()
            used[forward[a]] = False
            forward[a] = -1

    def assign(x: int, y: int) -> bool:
        pending = [(x, y)]
        while pending:
            a, b = pending.pop()
            if forward[a] != -1:
                if forward[a] != b:
                    return False
                continue
            if used[b] or inv_s[a] != inv_t[b]:
                return False
            forward[a] = b
            used[b] = True
            assigned.append(a)
            for c in assigned:
                d = forward[c]
                pending.append((S.table[a][c], T.table[b][d]))
                pending.append((S.table[c][a], T.table[d][b]))
        return True

    def backtrack(start: int) -> bool:
        x = start
        while x < n and forward[x] != -1:
            x += 1
        if x == n:
            return True
        for y in candidates[x]:
            if used[y]:
                continue
            stats["nodes"] += 1
            mark = len(assigned)
            if assign(x, y) and backtrack(x + 1):
                return True
            undo(mark)
        return False

    found = backtrack(0)
    logger.debug("isomorphism search on %d elements visited %d nodes", n, stats["nodes"])
    if not found:
        return None
    witness = IsoWitness(mapping=tuple(forward), kind="isomorphism")
    if not verify_witness(S, T, witness):
        raise InternalDisagreement("isomorphism search returned a map that does not preserve products")
    return witness


def self_duality(S: FiniteSemigroup) -> Optional[IsoWitness]:
    """An anti-automorphism of S, if any (an isomorphism onto the opposite)"""
    witness = find_isomorphism(S, opposite(S))
    if witness is None:
        return None
    return IsoWitness(mapping=witness.mapping, kind="anti-isomorphism")


def is_self_dual(S: FiniteSemigroup) -> bool:
    return self_duality(S) is not None
