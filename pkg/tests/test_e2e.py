import io
import json
import sys
import os
import tempfile
from contextlib import redirect_stderr, redirect_stdout

# Add project root to path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from main import run
from app.cayley import cayley_automaton
from app.constructions import nilpotent_monogenic, relation_automaton, right_zero, zero_union
from app.formats import write_automaton, write_table
from app.mealy import CompositeState, words_equal

DATA = os.path.join(os.path.dirname(__file__), "..", "data")
RELATION = os.path.join(DATA, "automata", "relation_automaton.mealy")
SQUARE_LEFT_ZERO = os.path.join(DATA, "examples", "square_left_zero.tbl")
SQUARE_RIGHT_ZERO = os.path.join(DATA, "examples", "square_right_zero.tbl")
CYCLIC = os.path.join(DATA, "examples", "cyclic_group_2.tbl")


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run(list(argv))
    return code, out.getvalue(), err.getvalue()


def test_validate_and_usage():
    print("Testing CLI validate...")
    code, out, _ = invoke("validate", SQUARE_LEFT_ZERO)
    assert code == 0
    assert "4 elements" in out

    code, out, _ = invoke("validate", RELATION)
    assert code == 0
    assert "2 states" in out

    with tempfile.TemporaryDirectory() as tmp:
        bad = os.path.join(tmp, "bad.tbl")
        with open(bad, "w", encoding="utf-8") as f:
            f.write("elements: a b\na z\nb b\n")
        code, out, err = invoke("validate", bad)
        assert code == 2
        assert out == ""
        assert "line 2" in err

    code, _, _ = invoke("frobnicate")
    assert code == 2
    code, _, _ = invoke("validate", os.path.join(DATA, "missing.tbl"))
    assert code == 2
    print("[SUCCESS] validate exit codes")


def test_act_and_equal():
    code, out, _ = invoke("act", RELATION, "--word", "a", "--seq", "0,0,1,1")
    assert code == 0
    assert out.strip() == "0,0,0,1"

    code, out, _ = invoke("equal", RELATION, "--word1", "a,b", "--word2", "b,b")
    assert code == 0
    assert out.strip() == "EQUAL"

    code, out, _ = invoke("equal", RELATION, "--word1", "a", "--word2", "b")
    assert code == 1
    assert out.strip() == "DISTINCT 1"

    A = relation_automaton()
    for w1, w2 in (("a,b", "b,b"), ("a", "b"), ("b,a", "a,b"), ("a,a", "a")):
        code, _, _ = invoke("equal", RELATION, "--word1", w1, "--word2", w2)
        expected = words_equal(
            A,
            CompositeState.from_product(A, w1.split(",")),
            CompositeState.from_product(A, w2.split(",")),
        ).holds
        assert (code == 0) == expected

    code, out, _ = invoke("act", SQUARE_LEFT_ZERO, "--word", "a", "--seq", "b,c,d")
    assert out.strip() == "b,b,b"

    code, _, err = invoke("act", RELATION, "--word", "a", "--seq", "0,2")
    assert code == 2
    assert "'2'" in err
    print("[SUCCESS] act and equal")


def test_analyze_and_eggbox():
    code, out, _ = invoke("analyze", SQUARE_LEFT_ZERO, "--json")
    assert code == 0
    facts = json.loads(out)
    assert facts["size"] == 4
    assert facts["band"] is False
    assert facts["s_squared_band"] is True

    code, out, _ = invoke("eggbox", SQUARE_LEFT_ZERO)
    assert code == 0
    assert out.startswith("D1: ")
    print("[SUCCESS] analyze and eggbox")


def test_sigma_and_pi():
    with tempfile.TemporaryDirectory() as tmp:
        target = os.path.join(tmp, "sigma.tbl")
        code, _, err = invoke("sigma", SQUARE_RIGHT_ZERO, "--out", target)
        assert code == 0
        assert "2 elements" in err
        with open(target, encoding="utf-8") as f:
            assert f.read().startswith("elements: ")

    code, out, _ = invoke("sigma", CYCLIC)
    assert code == 1
    assert out.startswith("infinite: g")

    code, _, err = invoke("sigma", CYCLIC, "--force", "--max-length", "3")
    assert code == 3
    assert "exhausted" in err

    code, _, _ = invoke("sigma", RELATION, "--max-length", "4")
    assert code == 3

    code, out, _ = invoke("pi", SQUARE_LEFT_ZERO)
    assert code == 0
    assert out.startswith("elements: a b c d\n")
    print("[SUCCESS] sigma and pi exit codes")


def test_classify_and_free():
    code, out, _ = invoke("classify", SQUARE_LEFT_ZERO, "--json")
    assert code == 0
    report = json.loads(out)
    assert report["self_automaton"] is True
    assert report["sigma_size"] == 4

    code, out, _ = invoke("classify", SQUARE_RIGHT_ZERO)
    assert code == 1
    assert "self_automaton: false" in out

    code, _, _ = invoke("classify", SQUARE_LEFT_ZERO, "--max-elements", "1")
    assert code == 3

    code, out, _ = invoke("free", CYCLIC, "--max-len", "6")
    assert code == 0
    assert "126 words" in out

    code, out, _ = invoke("free", os.path.join(DATA, "examples", "left_zero_3.tbl"), "--max-len", "2")
    assert code == 1
    assert out.strip() == "collision: x1 = x1·x1"
    print("[SUCCESS] classify and free")


def test_gen_automaton_and_census():
    with tempfile.TemporaryDirectory() as tmp:
        code, _, _ = invoke("gen", "left_zero", "2", "--out", os.path.join(tmp, "a.tbl"))
        assert code == 0
        code, _, _ = invoke("gen", "square_right_zero", "--out", os.path.join(tmp, "b.tbl"))
        assert code == 0
        code, out, _ = invoke("gen", "relation_automaton")
        assert code == 0 and out.startswith("states: a b\n")
        code, _, _ = invoke("gen", "rectangular_band", "2")
        assert code == 2

        dot = os.path.join(tmp, "a.dot")
        code, _, _ = invoke("automaton", os.path.join(tmp, "a.tbl"), "--dot", dot)
        assert code == 0
        with open(dot, encoding="utf-8") as f:
            assert f.read().startswith("digraph automaton {")

        csv_path = os.path.join(tmp, "census.csv")
        code, _, _ = invoke("census", tmp, "--out", csv_path)
        # a.dot is not a table file
        assert code == 2
        with open(csv_path, encoding="utf-8") as f:
            lines = f.read().splitlines()
        assert lines[0] == "file,n,band,aperiodic,monoid,lrr_faithful,s2_band,self_dual,self_automaton,c_self_automaton,sigma_size"
        assert lines[1].startswith("a.tbl,2,true,true,false,true,true,false,true,false,2")
        assert lines[2].startswith("b.tbl,4,false,true,false,false,true,")
    print("[SUCCESS] gen, automaton and census")


def test_words_over_parenthesized_names():
    with tempfile.TemporaryDirectory() as tmp:
        rb = os.path.join(tmp, "rb.tbl")
        code, _, _ = invoke("gen", "rectangular_band", "2", "2", "--out", rb)
        assert code == 0

        code, out, _ = invoke("act", rb, "--word", "(1,1)", "--seq", "(2,2)")
        assert code == 0
        assert out.strip() == "(1,2)"

        code, out, _ = invoke("act", rb, "--word", "(2,1), (1,2)", "--seq", "(1,1),(2,2)")
        assert code == 0
        assert out.strip() == "(2,1),(2,2)"

        # λ_(i,j) depends on i only
        code, out, _ = invoke("equal", rb, "--word1", "(1,1)", "--word2", "(1,2)")
        assert code == 0 and out.strip() == "EQUAL"
        code, out, _ = invoke("equal", rb, "--word1", "(1,1),(2,2)", "--word2", "(1,2)")
        assert code == 0 and out.strip() == "EQUAL"
        code, out, _ = invoke("equal", rb, "--word1", "(1,1)", "--word2", "(2,1)")
        assert code == 1 and out.startswith("DISTINCT")

        code, _, err = invoke("act", rb, "--word", "(1,3)", "--seq", "(1,1)")
        assert code == 2 and "(1,3)" in err
    print("[SUCCESS] words over parenthesized names")


def test_pi_names_agree_for_table_and_automaton_files():
    S = zero_union(nilpotent_monogenic(5), right_zero(1))
    with tempfile.TemporaryDirectory() as tmp:
        table_path = os.path.join(tmp, "z.tbl")
        machine_path = os.path.join(tmp, "z.mealy")
        with open(table_path, "w", encoding="utf-8") as f:
            f.write(write_table(S))
        with open(machine_path, "w", encoding="utf-8") as f:
            f.write(write_automaton(cayley_automaton(S)))

        code, from_table, _ = invoke("pi", table_path)
        assert code == 0
        code, from_machine, _ = invoke("pi", machine_path)
        assert code == 0
        assert from_machine == from_table
        assert "·" in from_machine
    print("[SUCCESS] Π names agree for table and automaton files")


if __name__ == "__main__":
    test_validate_and_usage()
    test_act_and_equal()
    test_analyze_and_eggbox()
    test_sigma_and_pi()
    test_classify_and_free()
    test_gen_automaton_and_census()
    test_words_over_parenthesized_names()
    test_pi_names_agree_for_table_and_automaton_files()
