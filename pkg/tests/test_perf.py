import io
import sys
import os
import tempfile
import time
from contextlib import redirect_stdout

# Add project root to path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from main import run
from app.cayley import classifier, freeness_check
from app.constructions import cyclic_group, self_dual_nonband
from app.formats import write_table


def test_self_dual_nonband_classification():
    print("Classifying the 36-element self-dual non-band...")
    S = self_dual_nonband().s

    start = time.time()
    report = classifier.classify(S)
    end = time.time()

    print(f"Execution took: {end - start:.2f}s")
    print(f"Self-automaton: {report.self_automaton}, C-self-automaton: {report.c_self_automaton}")

    assert report.size == 36
    assert report.self_automaton
    assert not report.band
    assert report.s_squared_band
    assert report.lrr_faithful
    assert report.self_dual is True
    assert report.c_self_automaton is True
    assert report.sigma_size == 36
    assert end - start < 300
    print("Test passed!")


def test_freeness_runtime():
    start = time.time()
    assert freeness_check(cyclic_group(2), 6).ok
    assert freeness_check(cyclic_group(3), 5).ok
    elapsed = time.time() - start
    print(f"Freeness checks took: {elapsed:.2f}s")
    assert elapsed < 10


def test_cli_classify_generated_table():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "self_dual_nonband.tbl")
        with open(path, "w", encoding="utf-8") as f:
            f.write(write_table(self_dual_nonband().s))
        out = io.StringIO()
        with redirect_stdout(out):
            code = run(["classify", path])
    assert code == 0
    assert "self_automaton: true" in out.getvalue()
    assert "c_self_automaton: true" in out.getvalue()
    print("[SUCCESS] CLI classification of the generated table")


if __name__ == "__main__":
    test_self_dual_nonband_classification()
    test_freeness_runtime()
    test_cli_classify_generated_table()
