import io
import subprocess
import sys

from fsmkit.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_run(fixture_path):
    assert run("run", fixture_path("correct.fsm"), "-w", "a") == (0, "accept\n")
    assert run("run", fixture_path("buggy.fsm"), "-w", "a") == (1, "reject\n")
    assert run("run", fixture_path("buggy.fsm"), "-w", "a b b a") == (0, "accept\n")
    assert run("run", fixture_path("a-star-bab-star.regexp"), "-w", "a b a") == (0, "accept\n")


def test_empty(fixture_path):
    assert run("empty", fixture_path("s-to-aS.cfg")) == (0, "empty\n")
    assert run("empty", fixture_path("s-to-eps.cfg")) == (1, "non-empty\n")
    assert run("empty", fixture_path("s-to-aS-or-a.cfg")) == (1, "non-empty\n")


def test_ctm_run(fixture_path):
    code, out = run("ctm-run", fixture_path("addorsub.ctm"), "--tape", "add1 _ I I I I _", "--head", "6")
    assert (code, out) == (0, "(h 7 (add1 _ I I I I I _))\n")
    code, out = run("ctm-run", fixture_path("addorsub.ctm"), "--tape", "sub1 _ I I I I I I I _", "--head", "9")
    assert out == "(h 8 (sub1 _ I I I I I I _ _))\n"
    code, out = run("ctm-run", fixture_path("addorsub-draft.ctm"), "--tape", "add1 _ I I I I _", "--head", "6")
    assert out == "(h 2 (add1 I I I I I _))\n"


def test_step_limit_exit_code(fixture_path):
    code, _ = run("--step-limit", "2", "ctm-run", fixture_path("addorsub.ctm"),
                  "--tape", "add1 _ I I I I _", "--head", "6")
    assert code == 3
    code, _ = run("ctm-run", fixture_path("addorsub.ctm"), "--tape", "add1 _ I I I I _", "--head", "6",
                  "--step-limit", "2")
    assert code == 3


def test_trace(fixture_path):
    assert run("trace", fixture_path("correct.fsm"), "-w", "a") == (0, "(q0 (a))\n(q1 ())\n")
    assert run("trace", fixture_path("correct.fsm"), "-w", "b") == (1, "reject\n")
    code, out = run("trace", fixture_path("anbn.pda"), "-w", "a b")
    assert code == 0 and out.splitlines()[-1] == "(f () ())"


def test_test_and_equiv(fixture_path):
    code, out = run("test", fixture_path("buggy.fsm"), "--count", "3")
    assert code == 0
    assert out.splitlines()[0] == "(b a a a a b a b a b a a b a a b b b a) reject"
    code, out = run("equiv", fixture_path("buggy.fsm"), fixture_path("correct.fsm"), "--seed", "0")
    assert code == 1 and "(a) counterexample" in out.splitlines()
    code, out = run("equiv", fixture_path("a-star-bab-star.fsm"), fixture_path("a-star-bab-star.regexp"))
    assert (code, out) == (0, "equivalent-on-sample\n")
    code, out = run("test", fixture_path("anbn.cfg"), "--count", "2", "--max-len", "4")
    assert code == 0 and len(out.splitlines()) == 2


def test_derive(fixture_path):
    assert run("derive", fixture_path("anbn.cfg"), "-w", "a a b b") == (0, "S => a S b => a a S b b => a a b b\n")
    assert run("derive", fixture_path("anbn.cfg"), "-w", "a a b") == (
        1, "(a a b) is not in the language of the grammar\n")


def test_convert(fixture_path, tmp_path):
    code, out = run("convert", fixture_path("a-star-bab-star.fsm"), "--to", "reverse")
    assert code == 0 and out.startswith("(ndfa")
    rev = tmp_path / "rev.fsm"
    rev.write_text(out)
    assert run("run", str(rev), "-w", "b a b a a")[0] == 0
    for target in ("dfa", "ndfa", "regexp", "grammar"):
        code, out = run("convert", fixture_path("a-star-bab-star.regexp"), "--to", target)
        assert code == 0
        path = tmp_path / f"x.{target}"
        path.write_text(out)
        if target != "grammar":
            assert run("equiv", str(path), fixture_path("a-star-bab-star.fsm"))[0] == 0
    code, out = run("convert", fixture_path("anbn.cfg"), "--to", "pda")
    assert code == 0 and out.startswith("(pda")


def test_usage_errors(fixture_path, tmp_path):
    assert run("run", str(tmp_path / "missing.fsm"))[0] == 2
    assert run("run", fixture_path("correct.fsm"), "-w", "c")[0] == 2
    assert run("derive", fixture_path("correct.fsm"), "-w", "a")[0] == 2
    assert run("convert", fixture_path("anbn.cfg"), "--to", "dfa")[0] == 2
    assert run("nonsense")[0] == 2
    bad = tmp_path / "bad.fsm"
    bad.write_text("(dfa (states q0) (sigma a)\n (start q1) (finals) (rules (q0 a q0)))")
    assert run("run", str(bad), "-w", "a")[0] == 2


def test_console_script(fixture_path):
    proc = subprocess.run([sys.executable, "-m", "fsmkit.cli", "run", fixture_path("correct.fsm"), "-w", "a"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "accept\n"
