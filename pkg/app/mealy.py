"""
Synchronous Mealy automata and the semigroup their states generate.

Composite states list their stages in APPLICATION order: stage 0 reads the
input first. The product-order word q_n ... q_2 q_1 (q_1 acts first) is the
composite state [q_1, q_2, ..., q_n]; `CompositeState.from_product` does the
reversal.
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, Hashable, List, Mapping, Sequence, Tuple, Union

import numpy as np

from app.errors import BadParam, InternalDisagreement, UnknownSymbol
from app.schemas import Exhausted, Verdict
from app.semigroup import FiniteSemigroup, validate

logger = logging.getLogger(__name__)

WORD_SEPARATOR = "·"


@dataclass(frozen=True)
class MealyAutomaton:
    states: Tuple[str, ...]
    alphabet: Tuple[str, ...]
    # transitions[q][b] is the next state, outputs[q][b] the emitted symbol (both indices)
    transitions: Tuple[Tuple[int, ...], ...]
    outputs: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if not self.states or not self.alphabet:
            raise BadParam("an automaton needs at least one state and one symbol")
        if len(set(self.states)) != len(self.states) or len(set(self.alphabet)) != len(self.alphabet):
            raise BadParam("state and symbol names must be distinct")
        q, k = len(self.states), len(self.alphabet)
        if len(self.transitions) != q or len(self.outputs) != q:
            raise BadParam("delta must have one row per state")
        for row_t, row_o in zip(self.transitions, self.outputs):
            if len(row_t) != k or len(row_o) != k:
                raise BadParam("delta must be defined for every (state, symbol) pair")
            if any(not 0 <= t < q for t in row_t) or any(not 0 <= o < k for o in row_o):
                raise BadParam("delta refers to an unknown state or symbol")

    @classmethod
    def from_delta(
        cls,
        states: Sequence[str],
        alphabet: Sequence[str],
        delta: Mapping[Tuple[str, str], Tuple[str, str]],
    ) -> "MealyAutomaton":
        """Build from {(state, symbol): (next state, output symbol)} keyed by names"""
        state_at = {name: i for i, name in enumerate(states)}
        symbol_at = {name: i for i, name in enumerate(alphabet)}
        transitions, outputs = [], []
        for q in states:
            row_t, row_o = [], []
            for b in alphabet:
                if (q, b) not in delta:
                    raise BadParam(f"delta is missing ({q}, {b})")
                nxt, out = delta[(q, b)]
                if nxt not in state_at:
                    raise UnknownSymbol(nxt)
                if out not in symbol_at:
                    raise UnknownSymbol(out)
                row_t.append(state_at[nxt])
                row_o.append(symbol_at[out])
            transitions.append(tuple(row_t))
            outputs.append(tuple(row_o))
        return cls(tuple(states), tuple(alphabet), tuple(transitions), tuple(outputs))

    @cached_property
    def _state_at(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.states)}

    @cached_property
    def _symbol_at(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.alphabet)}

    def state_index(self, name: str) -> int:
        try:
            return self._state_at[name]
        except KeyError:
            raise UnknownSymbol(name) from None

    def symbol_index(self, name: str) -> int:
        try:
            return self._symbol_at[name]
        except KeyError:
            raise UnknownSymbol(name) from None


@dataclass(frozen=True)
class CompositeState:
    stages: Tuple[int, ...]

    def __post_init__(self):
        if not self.stages:
            raise BadParam("a composite state needs at least one stage")

    @classmethod
    def of(cls, A: MealyAutomaton, names: Sequence[str]) -> "CompositeState":
        """Stages given by name, in application order"""
        return cls(tuple(A.state_index(n) for n in names))

    @classmethod
    def from_product(cls, A: MealyAutomaton, names: Sequence[str]) -> "CompositeState":
        """Stages from a product-order word (rightmost letter acts first)"""
        return cls(tuple(A.state_index(n) for n in reversed(list(names))))

    def product_word(self, A: MealyAutomaton) -> str:
        return WORD_SEPARATOR.join(A.states[q] for q in reversed(self.stages))


def _step(A: MealyAutomaton, stages: Tuple[int, ...], b: int) -> Tuple[int, Tuple[int, ...]]:
    successor = []
    for q in stages:
        successor.append(A.transitions[q][b])
        b = A.outputs[q][b]
    return b, tuple(successor)


def _check_stages(A: MealyAutomaton, w: CompositeState) -> None:
    for q in w.stages:
        if not 0 <= q < len(A.states):
            raise UnknownSymbol(q)


def step(A: MealyAutomaton, w: CompositeState, b: str) -> Tuple[str, CompositeState]:
    """Thread one symbol through the stages; the output of stage i feeds stage i+1"""
    _check_stages(A, w)
    out, successor = _step(A, w.stages, A.symbol_index(b))
    return A.alphabet[out], CompositeState(successor)


def act(A: MealyAutomaton, w: CompositeState, seq: Sequence[str]) -> List[str]:
    _check_stages(A, w)
    symbols = [A.symbol_index(b) for b in seq]
    stages = w.stages
    result = []
    for b in symbols:
        out, stages = _step(A, stages, b)
        result.append(A.alphabet[out])
    return result


def words_equal(A: MealyAutomaton, u: CompositeState, v: CompositeState) -> Verdict:
    """Decide u = v by breadth-first closure over reachable pairs of composite states.

    On a difference the witness is the shortest distinguishing input, ties
    broken by alphabet order, as a list of symbol names.
    """
    _check_stages(A, u)
    _check_stages(A, v)
    start = (u.stages, v.stages)
    parent: Dict[Tuple, Tuple] = {start: None}
    queue = deque([start])
    k = len(A.alphabet)

    def path_to(pair) -> List[int]:
        symbols = []
        while parent[pair] is not None:
            pair, b = parent[pair]
            symbols.append(b)
        return symbols[::-1]

    while queue:
        pair = queue.popleft()
        left, right = pair
        for b in range(k):
            out_l, next_l = _step(A, left, b)
            out_r, next_r = _step(A, right, b)
            if out_l != out_r:
                witness = path_to(pair) + [b]
                return Verdict(holds=False, witness=[A.alphabet[x] for x in witness])
            following = (next_l, next_r)
            if following not in parent:
                parent[following] = (pair, b)
                queue.append(following)
    logger.debug("words_equal closed %d pairs", len(parent))
    return Verdict(holds=True)


# ---------------------------------------------------------------------------
# canonical pointed machines
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ActionKey:
    """Minimal pointed machine, states numbered in breadth-first order from 0"""
    transitions: Tuple[Tuple[int, ...], ...]
    outputs: Tuple[Tuple[int, ...], ...]

    @property
    def state_count(self) -> int:
        return len(self.transitions)

    @cached_property
    def arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.array(self.transitions, dtype=np.int64), np.array(self.outputs, dtype=np.int64)

    def act(self, symbols: Sequence[int]) -> List[int]:
        state, result = 0, []
        for b in symbols:
            result.append(self.outputs[state][b])
            state = self.transitions[state][b]
        return result


def _refine(trans: np.ndarray, outs: np.ndarray) -> np.ndarray:
    """Moore refinement: start from output rows, split by successor blocks until stable"""
    _, block = np.unique(outs, axis=0, return_inverse=True)
    block = block.reshape(-1)
    while True:
        signature = np.column_stack([block, block[trans]])
        _, refined = np.unique(signature, axis=0, return_inverse=True)
        refined = refined.reshape(-1)
        if refined.max() == block.max():
            return refined
        block = refined


def _canonical(trans: np.ndarray, outs: np.ndarray, start: int) -> ActionKey:
    """Restrict to states reachable from `start`, minimise, renumber breadth-first"""
    n = trans.shape[0]
    reached = np.zeros(n, dtype=bool)
    reached[start] = True
    frontier = np.array([start])
    while frontier.size:
        nxt = np.unique(trans[frontier])
        nxt = nxt[~reached[nxt]]
        reached[nxt] = True
        frontier = nxt

    kept = np.flatnonzero(reached)
    remap = np.full(n, -1, dtype=np.int64)
    remap[kept] = np.arange(kept.size)
    sub_trans = remap[trans[kept]]
    sub_outs = outs[kept]
    block = _refine(sub_trans, sub_outs)

    blocks = int(block.max()) + 1
    block_trans = np.empty((blocks, trans.shape[1]), dtype=np.int64)
    block_outs = np.empty((blocks, trans.shape[1]), dtype=np.int64)
    block_trans[block] = block[sub_trans]
    block_outs[block] = sub_outs

    order = {int(block[remap[start]]): 0}
    queue = deque(order)
    while queue:
        x = queue.popleft()
        for y in block_trans[x].tolist():
            if y not in order:
                order[y] = len(order)
                queue.append(y)
    ranked = sorted(order, key=order.get)
    return ActionKey(
        transitions=tuple(tuple(order[y] for y in block_trans[x].tolist()) for x in ranked),
        outputs=tuple(tuple(block_outs[x].tolist()) for x in ranked),
    )


def _explore(initial: Hashable, successors: Callable[[Hashable], Tuple[List, List]]) -> ActionKey:
    index = {initial: 0}
    pending = deque([initial])
    trans, outs = [], []
    while pending:
        state = pending.popleft()
        row_t, row_o = [], []
        for nxt, out in zip(*successors(state)):
            if nxt not in index:
                index[nxt] = len(index)
                pending.append(nxt)
            row_t.append(index[nxt])
            row_o.append(out)
        trans.append(row_t)
        outs.append(row_o)
    return _canonical(np.array(trans, dtype=np.int64), np.array(outs, dtype=np.int64), 0)


def minimize_pointed(A: MealyAutomaton, w: CompositeState) -> ActionKey:
    """Canonical key of the map induced by w: equal keys iff equal actions"""
    _check_stages(A, w)
    k = len(A.alphabet)

    def successors(stages):
        nexts, outs = [], []
        for b in range(k):
            out, nxt = _step(A, stages, b)
            nexts.append(nxt)
            outs.append(out)
        return nexts, outs

    return _explore(w.stages, successors)


def compose_keys(first: ActionKey, then: ActionKey) -> ActionKey:
    """Key of the map 'apply `first`, feed its output to `then`'"""
    t1, o1 = first.arrays
    t2, o2 = then.arrays
    r = t2.shape[0]
    # pair (p, q) of the product machine is numbered p * r + q
    trans = t1[:, None, :] * r + t2[:, o1].transpose(1, 0, 2)
    outs = o2[:, o1].transpose(1, 0, 2)
    k = t1.shape[1]
    return _canonical(trans.reshape(-1, k), outs.reshape(-1, k), 0)


# ---------------------------------------------------------------------------
# enumeration of the generated semigroup
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AutomatonSemigroup(FiniteSemigroup):
    """Sigma(A) together with how the automaton's states sit inside it"""
    # generators[q] is the element induced by state q
    generators: Tuple[int, ...] = ()
    # words[x] is the shortlex-least product-order word of state indices for x
    words: Tuple[Tuple[int, ...], ...] = ()

    def as_semigroup(self) -> FiniteSemigroup:
        return FiniteSemigroup(names=self.names, table=self.table)


def enumerate_semigroup(
    A: MealyAutomaton, max_elements: int, max_length: int
) -> Union[AutomatonSemigroup, Exhausted]:
    """Breadth-first closure of the states under right multiplication by a state.

    Elements are found in shortlex order of their product-order words, so the
    first word reaching an element is its least representative. The right
    product x·q (q acts first) is the key of q composed with the key of x.
    """
    if max_elements < 1 or max_length < 1:
        raise BadParam("budgets must be at least 1")

    generator_keys = [minimize_pointed(A, CompositeState((q,))) for q in range(len(A.states))]
    keys: Dict[ActionKey, int] = {}
    element_keys: List[ActionKey] = []
    words: List[Tuple[int, ...]] = []
    generators = []
    for q, key in enumerate(generator_keys):
        if key not in keys:
            if len(words) >= max_elements:
                return Exhausted(
                    elements_found=len(words), frontier_size=len(words),
                    max_elements=max_elements, max_length=max_length, reason="max_elements",
                )
            keys[key] = len(words)
            element_keys.append(key)
            words.append((q,))
        generators.append(keys[key])

    right: List[List[int]] = []
    queue = deque(range(len(words)))
    while queue:
        x = queue.popleft()
        row = []
        for q, gen_key in enumerate(generator_keys):
            product = compose_keys(gen_key, element_keys[x])
            y = keys.get(product)
            if y is None:
                reason = None
                if len(words[x]) + 1 > max_length:
                    reason = "max_length"
                elif len(words) >= max_elements:
                    reason = "max_elements"
                if reason is not None:
                    census = Exhausted(
                        elements_found=len(words), frontier_size=len(queue) + 1,
                        max_elements=max_elements, max_length=max_length, reason=reason,
                    )
                    logger.warning("enumeration stopped: %s", census)
                    return census
                y = len(words)
                keys[product] = y
                element_keys.append(product)
                words.append(words[x] + (q,))
                queue.append(y)
            row.append(y)
        right.append(row)
        if len(right) % 1000 == 0:
            logger.info("enumeration: %d elements expanded, %d known", len(right), len(words))

    n = len(words)
    table = []
    for x in range(n):
        line = []
        for y in range(n):
            z = x
            for q in words[y]:
                z = right[z][q]
            line.append(z)
        table.append(line)

    names = [WORD_SEPARATOR.join(A.states[q] for q in word) for word in words]
    checked = validate(names, table)
    for x in range(n):
        if right[x] != [checked.table[x][generators[p]] for p in range(len(A.states))]:
            raise InternalDisagreement("right multiplication graph disagrees with the table")
    logger.debug("enumeration finished with %d elements", n)
    return AutomatonSemigroup(
        names=checked.names,
        table=checked.table,
        generators=tuple(generators),
        words=tuple(words),
    )
