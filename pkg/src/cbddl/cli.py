"""``cbddl`` command line: validate, replay, evaluate, perturb, diversity, report."""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import pathlib
import sys
from concurrent.futures import ProcessPoolExecutor

from . import safety
from .errors import CbddlError, LexError, ParseError
from .parser import parse_file
from .sim import MAX_STEPS, SimConfig, read_actions, replay
from .validate import has_errors, validate

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2
LEVELS = ("L0", "L1", "L2")
DEFAULT_EPISODES = 10
SUITE_COLUMNS = ("task", "level", "episodes", "sr", "mean_cc")


class InputError(Exception):
    """Bad user input that is not a CBDDL diagnostic."""


def episode_seed(seed: int, task: str, episode: int) -> int:
    """``seed`` XOR the first 8 bytes of sha256("task:episode"), kept in 63 bits."""
    h = int.from_bytes(hashlib.sha256(f"{task}:{episode}".encode()).digest()[:8], "big")
    return (int(seed) ^ h) & (2**63 - 1)


def _task_name(path) -> str:
    return pathlib.Path(path).stem


def _write(path: pathlib.Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _fmt(x: float) -> str:
    return repr(float(x))


# ---------------------------------------------------------------------------
# validate


def cmd_validate(args) -> int:
    bad = False
    for path in args.paths:
        try:
            spec = parse_file(path)
        except (LexError, ParseError) as e:
            loc = f"{e.span}" if getattr(e, "span", None) else "1:1"
            print(f"{path}:{loc}: error: {e.message}")
            bad = True
            continue
        diags = validate(spec)
        for d in diags:
            print(d.render(path))
        bad |= has_errors(diags)
    return EXIT_INPUT if bad else EXIT_OK


# ---------------------------------------------------------------------------
# replay


def _config(args) -> SimConfig:
    return SimConfig(max_steps=args.max_steps)


def _load_actions(path):
    with open(path, encoding="utf-8") as fh:
        return read_actions(fh)


def cmd_replay(args) -> int:
    spec = parse_file(args.task)
    traj = replay(spec, _load_actions(args.actions), args.seed, _config(args))
    text = traj.to_jsonl()
    if args.out:
        _write(pathlib.Path(args.out) / f"{_task_name(args.task)}.trajectory.jsonl", text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# evaluate


def load_manifest(path, default_episodes: int, default_seed: int) -> list:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    base = pathlib.Path(path).parent
    tasks = []
    for entry in data.get("tasks", []):
        p = pathlib.Path(entry["path"])
        p = p if p.is_absolute() else base / p
        if not p.exists():
            raise InputError(f"manifest task not found: {p}")
        level = entry.get("level", "L0")
        if level not in LEVELS:
            raise InputError(f"{p}: level must be one of {', '.join(LEVELS)}, got {level!r}")
        episodes = int(entry.get("episodes", default_episodes))
        if episodes < 1:
            raise InputError(f"{p}: episodes must be >= 1")
        tasks.append({"path": p, "level": level, "episodes": episodes, "seed": int(entry.get("seed", default_seed))})
    if not tasks:
        raise InputError(f"{path}: manifest lists no tasks")
    return tasks


def _run_episode(job) -> dict:
    path, actions_path, seed, max_steps = job
    spec = parse_file(path)
    actions = _load_actions(actions_path)
    traj = replay(spec, actions, seed, SimConfig(max_steps=max_steps))
    return safety.evaluate_episode(spec, traj).to_json()


def cmd_evaluate(args) -> int:
    tasks = load_manifest(args.manifest, args.episodes, args.seed)
    out = pathlib.Path(args.out)
    jobs, owners = [], []
    entries = []
    for t in tasks:
        name = _task_name(t["path"])
        actions = pathlib.Path(args.actions_dir) / f"{name}.jsonl"
        entry = {"task": name, "level": t["level"], "episodes": t["episodes"], "seed": t["seed"]}
        entries.append(entry)
        if not actions.exists():
            entry["error"] = f"missing action file {actions}"
            continue
        for e in range(t["episodes"]):
            jobs.append((str(t["path"]), str(actions), episode_seed(t["seed"], name, e), args.max_steps))
            owners.append(entry)

    if args.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as ex:
            results = list(ex.map(_run_episode, jobs))
    else:
        results = [_run_episode(j) for j in jobs]

    for entry, res in zip(owners, results):
        entry.setdefault("reports", []).append(res)

    rows = []
    failed = False
    for entry in entries:
        if "error" in entry:
            failed = True
            print(f"{entry['task']}: error: {entry['error']}", file=sys.stderr)
        else:
            reps = entry["reports"]
            entry["sr"] = sum(r["success"] for r in reps) / len(reps)
            entry["mean_cc"] = sum(r["cc"] for r in reps) / len(reps)
            rows.append(entry)
        _write(out / f"{entry['task']}.json", json.dumps(entry, indent=2) + "\n")
    _write(out / "suite.csv", suite_csv(rows))
    return EXIT_INPUT if failed else EXIT_OK


def suite_csv(entries) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SUITE_COLUMNS)
    for e in entries:
        w.writerow([e["task"], e["level"], len(e["reports"]), _fmt(e["sr"]), _fmt(e["mean_cc"])])
    return buf.getvalue()


def cmd_report(args) -> int:
    """Rebuild the suite CSV from per-task report JSON files."""
    entries = []
    for path in args.reports:
        with open(path, encoding="utf-8") as fh:
            e = json.load(fh)
        if "error" in e:
            print(f"{path}: skipped ({e['error']})", file=sys.stderr)
            continue
        if not e.get("reports"):
            raise InputError(f"{path}: no episode reports")
        reps = [
            safety.EvalReport(r["success"], r["cc"], [], r["length"]) for r in e["reports"]
        ]
        s = safety.aggregate(reps)
        entries.append({"task": e["task"], "level": e["level"], "reports": reps, "sr": s.sr, "mean_cc": s.mean_cc})
    text = suite_csv(entries)
    if args.out:
        _write(pathlib.Path(args.out) / "suite.csv", text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# perturb


def cmd_perturb(args) -> int:
    from .perturb import image as im
    from .perturb.language import InstructionTemplate, load_lexicon, substitute
    from .perturb.visual import sample_profile

    spec = parse_file(args.task)
    w = args.w if args.w is not None else (0 if args.v is None else None)
    out = pathlib.Path(args.out) if args.out else None
    if w is not None:
        if not spec.language:
            raise InputError(f"{args.task}: task has no (:language ...) instruction")
        lex = load_lexicon()
        t = InstructionTemplate.from_instruction(spec.language, lex)
        text = substitute(t, lex, w, args.seed) + "\n"
        sys.stdout.write(text)
        if out:
            _write(out / "instruction.txt", text)
    if args.v is not None:
        names = sorted(o.name for o in spec.objects if not o.is_region and not o.is_gripper)
        prof = sample_profile(args.v, args.seed, names or ("*",))
        sys.stdout.write(prof.dumps())
        if out:
            _write(out / "profile.json", prof.dumps())
        if args.image:
            img = im.apply_profile(im.read_ppm(args.image), prof, args.seed)
            if not out:
                raise InputError("--image requires --out")
            out.mkdir(parents=True, exist_ok=True)
            im.write_ppm(out / "image.ppm", img)
    return EXIT_OK


# ---------------------------------------------------------------------------
# diversity


def cmd_diversity(args) -> int:
    from .diversity import CostModel, fr_layout, layout_to_csv, matrix_to_csv, pairwise_matrix, task_to_tree

    if len(args.paths) < 2:
        raise InputError("diversity needs at least two task files")
    cm = CostModel.load(args.cost_model) if args.cost_model else CostModel()
    names = [_task_name(p) for p in args.paths]
    trees = [task_to_tree(parse_file(p)) for p in args.paths]
    m = pairwise_matrix(trees, cm, workers=args.workers)
    pos = fr_layout(m, args.seed, args.iterations)
    out = pathlib.Path(args.out)
    _write(out / "matrix.csv", matrix_to_csv(names, m))
    _write(out / "layout.csv", layout_to_csv(names, pos))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cbddl", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)

    v = sub.add_parser("validate", help="parse and check task files")
    v.add_argument("paths", nargs="+")
    v.set_defaults(func=cmd_validate)

    r = sub.add_parser("replay", parents=[common], help="roll out an action file into a trajectory")
    r.add_argument("task")
    r.add_argument("actions")
    r.add_argument("--max-steps", type=int, default=MAX_STEPS)
    r.add_argument("--out")
    r.set_defaults(func=cmd_replay)

    e = sub.add_parser("evaluate", parents=[common], help="score a manifest of tasks")
    e.add_argument("manifest")
    e.add_argument("actions_dir")
    e.add_argument("--episodes", type=int, default=DEFAULT_EPISODES)
    e.add_argument("--max-steps", type=int, default=MAX_STEPS)
    e.add_argument("--workers", type=int, default=1)
    e.add_argument("--out", default="reports")
    e.set_defaults(func=cmd_evaluate)

    pt = sub.add_parser("perturb", parents=[common], help="sample W/V perturbations for a task")
    pt.add_argument("task")
    pt.add_argument("--w", type=int, choices=range(5))
    pt.add_argument("--v", type=int, choices=range(5))
    pt.add_argument("--image", help="binary PPM to perturb with the sampled profile")
    pt.add_argument("--out")
    pt.set_defaults(func=cmd_perturb)

    d = sub.add_parser("diversity", parents=[common], help="tree-edit distance matrix and 2D layout")
    d.add_argument("paths", nargs="+")
    d.add_argument("--cost-model")
    d.add_argument("--iterations", type=int, default=500)
    d.add_argument("--workers", type=int, default=1)
    d.add_argument("--out", default=".")
    d.set_defaults(func=cmd_diversity)

    rp = sub.add_parser("report", help="suite CSV from per-task report JSON files")
    rp.add_argument("reports", nargs="+")
    rp.add_argument("--out")
    rp.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:  # argparse usage errors are input errors, not internal ones
        return EXIT_OK if e.code in (0, None) else EXIT_INPUT
    if getattr(args, "episodes", 1) < 1:
        print("cbddl: error: --episodes must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (CbddlError, InputError, OSError, ValueError, KeyError) as e:
        print(f"cbddl: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as e:  # noqa: BLE001
        print(f"cbddl: internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
