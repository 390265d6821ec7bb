import sys
import os
from itertools import product

# Add project root to path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from app.cayley import (
    CayleyClassifier,
    canonical_homomorphism,
    canonical_injective,
    cayley_automaton,
    dual_semigroup,
    freeness_check,
    is_c_self_automaton,
    is_self_automaton,
    pi,
    right_action,
    sigma,
    sigma_isomorphic,
    state_action,
)
from app.constructions import (
    adjoin_identity,
    chain_semilattice,
    cyclic_group,
    example_table,
    left_zero,
    nilpotent_monogenic,
    rectangular_band,
    right_zero,
    tails_construction,
    zero_union,
)
from app.mealy import AutomatonSemigroup, CompositeState, act, enumerate_semigroup, step
from app.schemas import Budgets, Exhausted, KnownInfinite
from app.semigroup import find_isomorphism, validate


def test_cayley_automaton():
    S = example_table("square_left_zero")
    A = cayley_automaton(S)
    a = CompositeState.of(A, ["a"])
    assert step(A, a, "b") == ("b", CompositeState.of(A, ["b"]))

    trivial = cayley_automaton(validate(["e"], [[0]]))
    assert trivial.transitions == ((0,),) and trivial.outputs == ((0,),)

    L = cayley_automaton(left_zero(2))
    x1 = CompositeState.of(L, ["x1"])
    assert step(L, x1, "x2") == ("x1", x1)
    print("[SUCCESS] Cayley automaton transitions")


def test_state_action_matches_act():
    S = example_table("square_left_zero")
    assert state_action(S, "a", ["b", "c", "d"]) == ["b", "b", "b"]
    assert state_action(S, "a", []) == []
    assert state_action(left_zero(3), "x2", ["x1", "x3", "x3", "x1"]) == ["x2"] * 4

    for T in (S, example_table("square_right_zero"), cyclic_group(3), chain_semilattice(3)):
        A = cayley_automaton(T)
        for s in T.names:
            for length in range(4):
                for seq in product(T.names, repeat=length):
                    assert state_action(T, s, seq) == act(A, CompositeState.of(A, [s]), seq)
    print("[SUCCESS] Closed form agrees with the automaton")


def test_canonical_injective():
    assert canonical_injective(example_table("square_left_zero")).holds

    verdict = canonical_injective(right_zero(2))
    assert not verdict.holds
    assert verdict.witness == [(0, 1)]

    verdict = canonical_injective(example_table("square_right_zero"))
    assert not verdict.holds
    assert verdict.witness == [(0, 1), (0, 3), (1, 3)]
    print("[SUCCESS] Injectivity of s -> s̄")


def test_canonical_homomorphism():
    assert canonical_homomorphism(rectangular_band(2, 2)).holds
    assert canonical_homomorphism(example_table("square_left_zero")).holds
    assert canonical_homomorphism(example_table("square_right_zero")).holds

    verdict = canonical_homomorphism(cyclic_group(2))
    assert not verdict.holds
    failure = verdict.witness
    assert (failure.s, failure.t) == ("e", "e")
    A = cayley_automaton(cyclic_group(2))
    two_stage = act(A, CompositeState.of(A, ["e", "e"]), failure.sequence)
    one_stage = act(A, CompositeState.of(A, ["e"]), failure.sequence)
    assert two_stage != one_stage
    print("[SUCCESS] Homomorphism criterion")


def test_is_self_automaton():
    for n in range(1, 6):
        assert is_self_automaton(left_zero(n)).self_automaton

    report = is_self_automaton(example_table("square_left_zero"))
    assert report.self_automaton
    assert not report.band
    assert report.s_squared_band

    report = is_self_automaton(right_zero(2))
    assert not report.self_automaton
    assert not report.canonical_injective
    assert report.kernel_pairs == [("x1", "x2")]

    report = is_self_automaton(cyclic_group(2))
    assert not report.aperiodic
    assert report.period_witness.element == "g"
    assert report.homomorphism_counterexample is not None

    assert is_self_automaton(tails_construction([left_zero(2)], [1])).self_automaton
    print("[SUCCESS] Self-automaton classification")


def test_sigma():
    print("Testing Σ(C(S))...")
    result = sigma(example_table("square_right_zero"))
    assert isinstance(result, AutomatonSemigroup)
    assert find_isomorphism(result.as_semigroup(), right_zero(2)) is not None

    trivial = sigma(right_zero(2))
    assert trivial.size == 1

    infinite = sigma(cyclic_group(2))
    assert isinstance(infinite, KnownInfinite)
    assert infinite.witness.period == 2

    forced = sigma(cyclic_group(2), Budgets(max_elements=50, max_length=4), force=True)
    assert isinstance(forced, Exhausted)

    L2 = sigma(left_zero(2))
    assert find_isomorphism(L2.as_semigroup(), left_zero(2)) is not None
    print("[SUCCESS] Σ(C(S)) enumeration")


def test_pi():
    for T in (chain_semilattice(2), chain_semilattice(3)):
        assert pi(T).table == sigma(T).table

    dual = pi(left_zero(2))
    assert find_isomorphism(dual.as_semigroup(), right_zero(2)) is not None

    dual = pi(example_table("square_right_zero"))
    assert find_isomorphism(dual.as_semigroup(), left_zero(2)) is not None

    S = zero_union(nilpotent_monogenic(5), right_zero(1))
    A = cayley_automaton(S)
    result = enumerate_semigroup(A, 100, 10)
    dual = dual_semigroup(result, A.states)
    assert dual.words == tuple(tuple(reversed(w)) for w in result.words)
    assert dual.names == pi(S).names
    assert any(len(w) > 1 for w in dual.words)

    assert isinstance(pi(cyclic_group(3)), KnownInfinite)
    print("[SUCCESS] Π(C(S)) is the opposite of Σ(C(S))")


def test_right_action():
    S = example_table("square_left_zero")
    seq = ["a", "b", "d"]
    assert right_action(S, seq, ["a"]) == state_action(S, "a", seq)
    assert right_action(S, seq, ["a", "c"]) == state_action(S, "c", state_action(S, "a", seq))
    print("[SUCCESS] Right action")


def test_c_self_automaton():
    assert is_c_self_automaton(left_zero(2)) is False
    assert is_c_self_automaton(chain_semilattice(2)) is True
    assert is_c_self_automaton(adjoin_identity(rectangular_band(2, 2))) is True
    assert is_c_self_automaton(cyclic_group(2)) is False
    assert is_c_self_automaton(cyclic_group(1)) is True
    print("[SUCCESS] C-self-automaton")


def test_freeness_check():
    result = freeness_check(cyclic_group(2), 6)
    assert result.ok
    assert result.words_checked == 126

    result = freeness_check(cyclic_group(3), 5)
    assert result.ok
    assert result.words_checked == 363

    result = freeness_check(left_zero(2), 2)
    assert not result.ok
    assert result.collision == ("x1", "x1·x1")
    print("[SUCCESS] Freeness check")


def test_sigma_isomorphic():
    assert sigma_isomorphic(left_zero(3)) is not None
    assert sigma_isomorphic(right_zero(2)) is None
    assert sigma_isomorphic(cyclic_group(2)) is None
    print("[SUCCESS] Any isomorphism onto Σ")


def test_classifier_report():
    engine = CayleyClassifier()
    report = engine.classify(example_table("square_left_zero"))
    assert report.self_automaton
    assert report.sigma_status == "finite"
    assert report.sigma_size == 4

    report = engine.classify(cyclic_group(2))
    assert report.sigma_status == "infinite"
    assert report.c_self_automaton is False
    assert report.self_dual is True
    assert report.anti_isomorphism == {"e": "e", "g": "g"}

    tight = engine.with_budgets(max_elements=1, max_length=1)
    report = tight.classify(left_zero(2))
    assert report.sigma_status == "exhausted"
    assert report.c_self_automaton is None
    assert report.self_automaton
    print("[SUCCESS] Full classification report")


if __name__ == "__main__":
    test_cayley_automaton()
    test_state_action_matches_act()
    test_canonical_injective()
    test_canonical_homomorphism()
    test_is_self_automaton()
    test_sigma()
    test_pi()
    test_right_action()
    test_c_self_automaton()
    test_freeness_check()
    test_sigma_isomorphic()
    test_classifier_report()
