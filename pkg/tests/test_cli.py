from __future__ import annotations

import hashlib
import json
import shutil


from cbddl import cli
from cbddl.sim import write_actions

from conftest import CORPUS, SUITE, corpus_files
from scenes import CC_ACTIONS, CC_SCRIPT

BAD = """(define (problem bad) (:domain d)
  (:objects (a_1 apple))
  (:goal (Levitate a_1)))
"""


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_corpus_ok(capsys):
    code, out, _ = run(capsys, "validate", *corpus_files())
    assert code == 0 and out == ""


def test_validate_reports_one_error_line(tmp_path, capsys):
    bad = tmp_path / "bad.cbddl"
    bad.write_text(BAD)
    code, out, _ = run(capsys, "validate", bad)
    assert code == 1
    assert out.splitlines() == [f"{bad}:3:10: error: unknown predicate Levitate"]


def test_validate_mixed_batch(tmp_path, capsys):
    bad = tmp_path / "bad.cbddl"
    bad.write_text(BAD)
    broken = tmp_path / "broken.cbddl"
    broken.write_text("(define (problem x) (:domain d) (:goal (Fall a))")
    code, out, _ = run(capsys, "validate", *corpus_files()[:3], bad, broken)
    assert code == 1
    lines = out.splitlines()
    assert len(lines) == 2
    assert lines[0].startswith(f"{bad}:") and lines[1].startswith(f"{broken}:")


def test_episode_seed_derivation():
    h = int.from_bytes(hashlib.sha256(b"task_a:3").digest()[:8], "big")
    assert cli.episode_seed(5, "task_a", 3) == (5 ^ h) & (2**63 - 1)
    assert cli.episode_seed(5, "task_a", 3) != cli.episode_seed(5, "task_a", 4)


def test_evaluate_matches_golden(tmp_path, capsys):
    code, _, _ = run(capsys, "evaluate", SUITE / "manifest.json", SUITE / "actions", "--out", tmp_path)
    assert code == 0
    assert (tmp_path / "suite.csv").read_bytes() == (SUITE / "golden" / "suite.csv").read_bytes()
    rep = json.loads((tmp_path / "static_obstacles_1.json").read_text())
    assert rep["sr"] == 1.0 and len(rep["reports"]) == 10


def _cc_suite(tmp_path):
    (tmp_path / "cc_script.cbddl").write_text(CC_SCRIPT)
    (tmp_path / "actions").mkdir()
    (tmp_path / "actions" / "cc_script.jsonl").write_text(write_actions(CC_ACTIONS[:9]))
    (tmp_path / "manifest.json").write_text(json.dumps({"tasks": [{"path": "cc_script.cbddl", "level": "L2"}]}))


def test_evaluate_scripted_violation(tmp_path, capsys):
    _cc_suite(tmp_path)
    code, _, _ = run(capsys, "evaluate", tmp_path / "manifest.json", tmp_path / "actions", "--out", tmp_path / "r")
    assert code == 0
    assert (tmp_path / "r" / "suite.csv").read_text().splitlines()[1] == "cc_script,L2,10,0.0,13.0"


def test_evaluate_missing_actions_continues(tmp_path, capsys):
    acts = tmp_path / "acts"
    shutil.copytree(SUITE / "actions", acts)
    (acts / "static_obstacles_1.jsonl").unlink()
    manifest = tmp_path / "m.json"
    manifest.write_text((SUITE / "manifest.json").read_text().replace("../corpus/", str(CORPUS) + "/"))
    code, _, err = run(capsys, "evaluate", manifest, acts, "--out", tmp_path / "r")
    assert code == 1 and "missing action file" in err
    rows = (tmp_path / "r" / "suite.csv").read_text().splitlines()
    assert [r.split(",")[0] for r in rows[1:]] == ["dynamic_obstacles_1"]
    assert "error" in json.loads((tmp_path / "r" / "static_obstacles_1.json").read_text())


def test_evaluate_bad_level(tmp_path, capsys):
    _cc_suite(tmp_path)
    (tmp_path / "manifest.json").write_text(json.dumps({"tasks": [{"path": "cc_script.cbddl", "level": "L7"}]}))
    code, _, err = run(capsys, "evaluate", tmp_path / "manifest.json", tmp_path / "actions", "--out", tmp_path)
    assert code == 1 and "level" in err


def test_report_rebuilds_suite_csv(tmp_path, capsys):
    run(capsys, "evaluate", SUITE / "manifest.json", SUITE / "actions", "--out", tmp_path)
    code, out, _ = run(
        capsys, "report", tmp_path / "static_obstacles_1.json", tmp_path / "dynamic_obstacles_1.json"
    )
    assert code == 0 and out == (SUITE / "golden" / "suite.csv").read_text()


def test_replay_writes_trajectory(tmp_path, capsys):
    task = CORPUS / "static_obstacles_1.cbddl"
    code, _, _ = run(capsys, "replay", task, SUITE / "actions" / "static_obstacles_1.jsonl", "--out", tmp_path)
    assert code == 0
    lines = (tmp_path / "static_obstacles_1.trajectory.jsonl").read_text().splitlines()
    n_actions = len((SUITE / "actions" / "static_obstacles_1.jsonl").read_text().splitlines())
    assert len(lines) == n_actions + 1 and json.loads(lines[-1])["terminal"]


def test_perturb_w0_is_identity(capsys):
    code, out, _ = run(capsys, "perturb", CORPUS / "static_obstacles_1.cbddl", "--w", 0)
    assert code == 0 and out == "pick up the apple and put it on the plate\n"


def test_perturb_w1_is_stable_and_differs(capsys):
    a = run(capsys, "perturb", CORPUS / "static_obstacles_1.cbddl", "--w", 1, "--seed", 4)[1]
    b = run(capsys, "perturb", CORPUS / "static_obstacles_1.cbddl", "--w", 1, "--seed", 4)[1]
    assert a == b and a != "pick up the apple and put it on the plate\n"


def test_perturb_not_enough_slots(capsys):
    code, _, err = run(capsys, "perturb", CORPUS / "unseen_objects_1.cbddl", "--w", 4)
    assert code == 1 and "slots" in err


def test_perturb_v2_profile_and_image(tmp_path, capsys):
    from cbddl.perturb.image import ImageBuffer, read_ppm, write_ppm

    src = tmp_path / "in.ppm"
    write_ppm(src, ImageBuffer.filled(8, 6, (90, 120, 200)))
    code, out, _ = run(
        capsys, "perturb", CORPUS / "static_obstacles_1.cbddl", "--v", 2, "--seed", 1, "--image", src, "--out", tmp_path
    )
    assert code == 0
    prof = json.loads((tmp_path / "profile.json").read_text())
    assert prof["level"] == 2 and prof["noise"] is None and prof["camera_offset"] == [0.0, 0.0, 0.0]
    assert prof["brightness"] != 0.0 and set(prof["colors"]) == {"apple_1", "plate_1", "table_1", "vase_1"}
    assert read_ppm(tmp_path / "image.ppm").pixels.shape == (6, 8, 3)


def test_diversity_outputs(tmp_path, capsys):
    a = CORPUS / "long_horizon_1.cbddl"
    b = CORPUS / "unseen_objects_2.cbddl"
    code, _, _ = run(capsys, "diversity", a, a, b, "--out", tmp_path / "x", "--seed", 2)
    assert code == 0
    rows = (tmp_path / "x" / "matrix.csv").read_text().splitlines()
    assert rows[0] == "task,long_horizon_1,long_horizon_1,unseen_objects_2"
    assert rows[1].split(",")[2] == "0.0"
    run(capsys, "diversity", a, a, b, "--out", tmp_path / "y", "--seed", 2)
    for f in ("matrix.csv", "layout.csv"):
        assert (tmp_path / "x" / f).read_bytes() == (tmp_path / "y" / f).read_bytes()


def test_diversity_needs_two_tasks(capsys):
    assert run(capsys, "diversity", CORPUS / "long_horizon_1.cbddl")[0] == 1


def test_parse_failure_is_exit_1(tmp_path, capsys):
    p = tmp_path / "x.cbddl"
    p.write_text("(define")
    assert run(capsys, "diversity", p, p, "--out", tmp_path)[0] == 1


def test_usage_error_is_exit_1(capsys):
    assert run(capsys, "perturb")[0] == 1
    assert run(capsys, "evaluate", "m.json", "a", "--episodes", 0)[0] == 1


def test_internal_error_is_exit_2(monkeypatch, capsys):
    def boom(path):
        raise RuntimeError("kaboom")

    monkeypatch.setattr(cli, "parse_file", boom)
    code, _, err = run(capsys, "validate", CORPUS / "long_horizon_1.cbddl")
    assert code == 2 and "kaboom" in err
