"""
Cayley automata of finite semigroups and the self-automaton classification.

C(S) has one state per element and reads elements: delta(s, t) = (st, st).
Products of states follow the algebraic convention: s̄·t̄ applies t̄ first,
which is the composite state with stages (t, s).
"""

import logging
from itertools import product
from typing import List, Optional, Sequence, Tuple, Union

from app.config import settings
from app.errors import BadParam, BudgetExceeded, InternalDisagreement
from app.mealy import (
    WORD_SEPARATOR,
    AutomatonSemigroup,
    CompositeState,
    MealyAutomaton,
    act,
    compose_keys,
    enumerate_semigroup,
    minimize_pointed,
    words_equal,
)
from app.schemas import (
    Budgets,
    ClassificationReport,
    Exhausted,
    FreenessResult,
    HomomorphismFailure,
    IsoWitness,
    KnownInfinite,
    Verdict,
)
from app.semigroup import (
    FiniteSemigroup,
    find_isomorphism,
    green,
    has_relative_identities,
    is_aperiodic,
    is_band,
    is_monoid,
    is_regular,
    lrr,
    opposite,
    self_duality,
    square,
)
from app.constructions import nilpotent_monogenic, right_zero, zero_union

logger = logging.getLogger(__name__)

SigmaResult = Union[AutomatonSemigroup, KnownInfinite, Exhausted]


def cayley_automaton(S: FiniteSemigroup) -> MealyAutomaton:
    return MealyAutomaton(
        states=S.names,
        alphabet=S.names,
        transitions=S.table,
        outputs=S.table,
    )


def state_action(S: FiniteSemigroup, s: str, seq: Sequence[str]) -> List[str]:
    """s̄ · α1...αn = (sα1)(sα1α2)...(sα1...αn), straight from the table"""
    acc = S.index(s)
    result = []
    for symbol in seq:
        acc = S.table[acc][S.index(symbol)]
        result.append(S.names[acc])
    return result


def right_action(S: FiniteSemigroup, seq: Sequence[str], word: Sequence[str]) -> List[str]:
    """α·s̄·t̄ = (α·s̄)·t̄: the letters of `word` act in the order listed"""
    if not word:
        raise BadParam("a word needs at least one letter")
    result = list(seq)
    for s in word:
        result = state_action(S, s, result)
    return result


def canonical_injective(S: FiniteSemigroup) -> Verdict:
    """Is s -> s̄ injective? Witness: the identified pairs (index pairs).

    Decided by faithfulness of the left-regular representation and again by
    comparing every pair of singleton states; the two must agree.
    """
    representation = lrr(S)
    A = cayley_automaton(S)
    collapsed = tuple(
        (s, t)
        for s in range(S.size)
        for t in range(s + 1, S.size)
        if words_equal(A, CompositeState((s,)), CompositeState((t,))).holds
    )
    if collapsed != representation.kernel_pairs:
        raise InternalDisagreement(
            f"left-regular kernel {representation.kernel_pairs} but equal states {collapsed}"
        )
    return Verdict(holds=representation.faithful, witness=list(collapsed))


def canonical_homomorphism(S: FiniteSemigroup) -> Verdict:
    """Is s̄·t̄ = (st)‾ for every ordered pair? Witness: the first failing pair in (s, t) order"""
    A = cayley_automaton(S)
    for s, t in product(range(S.size), repeat=2):
        verdict = words_equal(A, CompositeState((t, s)), CompositeState((S.table[s][t],)))
        if not verdict.holds:
            return Verdict(
                holds=False,
                witness=HomomorphismFailure(s=S.names[s], t=S.names[t], sequence=verdict.witness),
            )
    return Verdict(holds=True)


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise InternalDisagreement(message)


def is_self_automaton(S: FiniteSemigroup) -> ClassificationReport:
    """Structural flags plus the canonical-map criteria (no enumeration)"""
    band = is_band(S)
    aperiodic = is_aperiodic(S)
    monoid = is_monoid(S)
    relative = has_relative_identities(S)
    regular = is_regular(S)
    representation = lrr(S)
    s2_band = is_band(square(S)[0]).holds
    injective = canonical_injective(S)
    homomorphism = canonical_homomorphism(S)
    self_automaton = injective.holds and homomorphism.holds
    structure = green(S)

    _check(not band or homomorphism.holds, "band but s -> s̄ is not a homomorphism")
    _check(not s2_band or homomorphism.holds, "S² is a band but s -> s̄ is not a homomorphism")
    _check(not (monoid and self_automaton) or band.holds, "self-automaton monoid that is not a band")
    _check(
        not (relative and self_automaton) or (band.holds and representation.faithful),
        "self-automaton with relative identities but not a faithful band",
    )
    _check(
        not (regular and self_automaton) or (band.holds and representation.faithful),
        "regular self-automaton semigroup that is not a faithful band",
    )

    return ClassificationReport(
        size=S.size,
        band=band.holds,
        aperiodic=aperiodic.holds,
        monoid=monoid,
        relative_identities=relative,
        regular=regular,
        lrr_faithful=representation.faithful,
        s_squared_band=s2_band,
        canonical_injective=injective.holds,
        canonical_homomorphism=homomorphism.holds,
        self_automaton=self_automaton,
        square_d_classes=structure.square_d_classes(),
        maximal_d_singletons=structure.maximal_d_singletons(),
        band_witness=None if band.holds else S.names[band.witness],
        kernel_pairs=[(S.names[a], S.names[b]) for a, b in representation.kernel_pairs],
        homomorphism_counterexample=homomorphism.witness,
        period_witness=aperiodic.witness,
    )


def _budgets(budgets: Optional[Budgets]) -> Budgets:
    return budgets if budgets is not None else Budgets.from_settings()


def sigma(S: FiniteSemigroup, budgets: Optional[Budgets] = None, force: bool = False) -> SigmaResult:
    """Σ(C(S)): finite exactly when S is aperiodic.

    Non-aperiodic input is answered with KnownInfinite unless `force` asks
    for a budgeted exploration anyway.
    """
    budgets = _budgets(budgets)
    aperiodic = is_aperiodic(S)
    if not aperiodic.holds and not force:
        return KnownInfinite(witness=aperiodic.witness)

    result = enumerate_semigroup(cayley_automaton(S), budgets.max_elements, budgets.max_length)
    if isinstance(result, Exhausted):
        return result
    _check(aperiodic.holds, "enumeration finished for a semigroup that is not aperiodic")

    if canonical_homomorphism(S).holds:
        image = lrr(S).image
        _check(result.size == image.size, f"|Σ| = {result.size} but the left-regular image has {image.size}")
        _check(
            find_isomorphism(result.as_semigroup(), image) is not None,
            "Σ(C(S)) is not isomorphic to the left-regular image",
        )
    return result


def _element_action(A: MealyAutomaton, sem: AutomatonSemigroup, x: int, seq: Sequence[str]) -> List[str]:
    return act(A, CompositeState(tuple(reversed(sem.words[x]))), seq)


def _pi_cross_check(S: FiniteSemigroup, sem: AutomatonSemigroup, dual: AutomatonSemigroup) -> None:
    A = cayley_automaton(S)
    words = [w for length in (1, 2, 3) for w in product(range(S.size), repeat=length)]
    sequences = [seq for length in (1, 2, 3, 4) for seq in product(S.names, repeat=length)]
    for word in words:
        element = dual.product(dual.generators[s] for s in word)
        letters = [S.names[s] for s in word]
        for seq in sequences:
            expected = right_action(S, seq, letters)
            if _element_action(A, sem, element, seq) != expected:
                raise InternalDisagreement(
                    f"Π element {dual.names[element]} disagrees with the right action of {letters} on {list(seq)}"
                )


def dual_semigroup(result: AutomatonSemigroup, state_names: Sequence[str]) -> AutomatonSemigroup:
    """The opposite of an enumerated Σ, renamed by Π words (reversed Σ words)."""
    reversed_words = tuple(tuple(reversed(w)) for w in result.words)
    return AutomatonSemigroup(
        names=tuple(WORD_SEPARATOR.join(state_names[q] for q in w) for w in reversed_words),
        table=opposite(result).table,
        generators=result.generators,
        words=reversed_words,
    )


def pi(S: FiniteSemigroup, budgets: Optional[Budgets] = None, force: bool = False) -> SigmaResult:
    """Π(C(S)), the semigroup of the right action: the opposite of Σ(C(S)).

    Elements are named by Π words, whose first letter acts first.
    """
    result = sigma(S, budgets, force)
    if not isinstance(result, AutomatonSemigroup):
        return result
    dual = dual_semigroup(result, S.names)
    if S.size <= settings.CROSSCHECK_MAX_SIZE:
        _pi_cross_check(S, result, dual)
    return dual


def sigma_isomorphic(S: FiniteSemigroup, budgets: Optional[Budgets] = None) -> Optional[IsoWitness]:
    """Any isomorphism S -> Σ(C(S)), canonical or not"""
    result = sigma(S, budgets)
    if isinstance(result, KnownInfinite):
        return None
    if isinstance(result, Exhausted):
        raise BudgetExceeded(result)
    return find_isomorphism(S, result.as_semigroup())


def is_c_self_automaton(S: FiniteSemigroup, budgets: Optional[Budgets] = None) -> Optional[bool]:
    """S ≅ Π(C(S))? None only when the budgets ran out"""
    result = pi(S, budgets)
    if isinstance(result, KnownInfinite):
        return False
    if isinstance(result, Exhausted):
        return None
    answer = find_isomorphism(S, result.as_semigroup()) is not None

    self_automaton = canonical_injective(S).holds and canonical_homomorphism(S).holds
    if self_automaton:
        _check(
            answer == (self_duality(S) is not None),
            "self-automaton semigroup: C-self-automaton must coincide with self-duality",
        )
    return answer


def freeness_check(S: FiniteSemigroup, max_len: int) -> FreenessResult:
    """Are all composite states of length <= max_len pairwise distinct?

    Words are visited in shortlex order of their product-order spelling; a
    collision reports the earlier word first.
    """
    if max_len < 1:
        raise BadParam("max_len must be at least 1")
    A = cayley_automaton(S)
    generator_keys = [minimize_pointed(A, CompositeState((q,))) for q in range(S.size)]
    seen = {}
    level = []
    checked = 0

    def name(word: Tuple[int, ...]) -> str:
        return WORD_SEPARATOR.join(S.names[q] for q in word)

    for q, key in enumerate(generator_keys):
        checked += 1
        if key in seen:
            return FreenessResult(ok=False, words_checked=checked, max_len=max_len,
                                  collision=(name(seen[key]), name((q,))))
        seen[key] = (q,)
        level.append(((q,), key))

    for _ in range(max_len - 1):
        following = []
        for word, key in level:
            for q, gen_key in enumerate(generator_keys):
                longer = compose_keys(gen_key, key)
                extended = word + (q,)
                checked += 1
                if longer in seen:
                    return FreenessResult(ok=False, words_checked=checked, max_len=max_len,
                                          collision=(name(seen[longer]), name(extended)))
                seen[longer] = extended
                following.append((extended, longer))
        level = following
    return FreenessResult(ok=True, words_checked=checked, max_len=max_len)


def search_zero_unions(max_k: int, max_m: int, budgets: Optional[Budgets] = None) -> List[dict]:
    """Zero-unions N_k ⊔ R_m ⊔ {0} with |Σ(C(S))| = |S| but S ≇ Σ(C(S))"""
    found = []
    for k in range(2, max_k + 1):
        for m in range(1, max_m + 1):
            for merge in (False, True):
                S = zero_union(nilpotent_monogenic(k), right_zero(m), merge_zeros=merge)
                result = sigma(S, budgets)
                if not isinstance(result, AutomatonSemigroup):
                    continue
                logger.debug("zero_union(N%d, R%d, merge=%s): |S|=%d |Σ|=%d", k, m, merge, S.size, result.size)
                if result.size == S.size and find_isomorphism(S, result.as_semigroup()) is None:
                    found.append({"k": k, "m": m, "merge_zeros": merge, "size": S.size})
    return found


class CayleyClassifier:
    """
    Full classification of a finite semigroup

    Tier 1: Structural flags from the table (band, aperiodic, Green's relations)
    Tier 2: Canonical map s -> s̄ (injective, homomorphism) => self-automaton
    Tier 3: Self-duality via anti-isomorphism search
    Tier 4: Σ(C(S)) enumeration within budgets => sigma_size, C-self-automaton
    """

    def __init__(self, budgets: Optional[Budgets] = None):
        self.budgets = budgets

    def with_budgets(self, max_elements: Optional[int] = None, max_length: Optional[int] = None) -> "CayleyClassifier":
        return CayleyClassifier(Budgets.from_settings(max_elements=max_elements, max_length=max_length))

    def classify(self, S: FiniteSemigroup) -> ClassificationReport:
        # Tier 1 + 2
        report = is_self_automaton(S)

        # Tier 3
        anti = self_duality(S)
        report.self_dual = anti is not None
        if anti is not None:
            report.anti_isomorphism = {S.names[x]: S.names[y] for x, y in enumerate(anti.mapping)}

        # Tier 4
        result = sigma(S, self.budgets)
        if isinstance(result, KnownInfinite):
            report.sigma_status = "infinite"
            report.c_self_automaton = False
        elif isinstance(result, Exhausted):
            report.sigma_status = "exhausted"
            logger.warning("Σ(C(S)) exhausted the budgets; C-self-automaton unknown")
        else:
            report.sigma_status = "finite"
            report.sigma_size = result.size
            dual = opposite(result.as_semigroup())
            report.c_self_automaton = find_isomorphism(S, dual) is not None
            if report.self_automaton:
                _check(
                    report.c_self_automaton == report.self_dual,
                    "self-automaton semigroup: C-self-automaton must coincide with self-duality",
                )
        return report

    def sigma(self, S: FiniteSemigroup, force: bool = False) -> SigmaResult:
        return sigma(S, self.budgets, force)

    def pi(self, S: FiniteSemigroup, force: bool = False) -> SigmaResult:
        return pi(S, self.budgets, force)


classifier = CayleyClassifier()
