"""Command-line front end.

Exit status: 0 success, 1 usage error, 2 input error, 3 selection error.
"""

import argparse
import json
import os
import shutil
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

from . import analysis, codegen, hardware, kb, recommend
from .cparse import parse_source
from .errors import MigrationError, MissingFile, SelectionError, UnknownLibrary
from .terms import tokenize

REPO_ENV = "SKETCHPORT_REPO"
SELECTIONS_FILE = "selections.json"
TASKS_TEXT = "tasks.txt"
TASKS_JSON = "tasks.json"

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_SELECTION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


@dataclass(frozen=True)
class MigrationConfig:
    source_paths: tuple
    sketch_path: Path
    repo_path: Path
    output_dir: Path
    target_id: str = codegen.DEFAULT_TARGET
    selection_mode: str = "auto"  # auto | file | interactive
    selections_path: Path = None
    top_k: int = recommend.DEFAULT_TOP_K
    history_weight: float = recommend.DEFAULT_HISTORY_WEIGHT


def _read(path, what):
    try:
        return Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise MissingFile(f"{what} not found: {path}") from None
    except (OSError, UnicodeDecodeError) as exc:
        raise MissingFile(f"cannot read {what} {path}: {exc}") from None


def _load_common(sketch_path, repo_path):
    repo = kb.load_repository(repo_path)
    model = hardware.parse_fritzing(_read(sketch_path, "sketch"), repo)
    return repo, model


def component_names(model):
    """Distinct canonical names of the sketch's input/output parts, in sketch order."""
    names = []
    for c in model.io_components:
        if c.canonical_name not in names:
            names.append(c.canonical_name)
    return names


def rank_components(names, repo, top_k, history_weight):
    index = recommend.build_index(repo.headers)
    return [recommend.rank(name, index, repo.history, top_k, history_weight) for name in names]


# -- selection --------------------------------------------------------------------

def load_selections(path, repo):
    try:
        data = json.loads(_read(path, "selections file"))
    except json.JSONDecodeError as exc:
        raise SelectionError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from None
    if not isinstance(data, dict):
        raise SelectionError(f"{path}: expected an object mapping component to library")
    known = set(repo.library_names)
    for comp, lib in data.items():
        if lib is not None and lib not in known:
            raise UnknownLibrary(f"{path}: library {lib!r} for {comp!r} is not in the header corpus")
    return data


def auto_select(ranked_lists):
    return {r.component: (r.entries[0].library if r.entries else None) for r in ranked_lists}


def interactive_select(ranked_lists, libraries, stdin=None, stdout=None):
    """Ask for one library per component: a row number, a library name, or
    ``-`` for none. End of input aborts with a selection error."""
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    known = set(libraries)

    def ask(prompt):
        stdout.write(prompt)
        stdout.flush()
        line = stdin.readline()
        if not line:
            raise SelectionError("selection aborted: end of input")
        return line.strip()

    choices = {}
    for ranked in ranked_lists:
        stdout.write(recommend.format_table(ranked) + "\n")
        while True:
            answer = ask(f"library for {ranked.component} [1-{len(ranked)}, name, or - for none]: ")
            if answer in ("-", "none"):
                choices[ranked.component] = None
                break
            if answer.isdigit() and 1 <= int(answer) <= len(ranked):
                choices[ranked.component] = ranked.entries[int(answer) - 1].library
                break
            if answer in known:
                choices[ranked.component] = answer
                break
            stdout.write(f"  unknown choice {answer!r}\n")
    for comp, lib in choices.items():
        stdout.write(f"  {comp} -> {lib or '(none)'}\n")
    if ask("confirm [y/n]: ").lower() not in ("y", "yes"):
        raise SelectionError("selection not confirmed")
    return choices


# -- migrate ----------------------------------------------------------------------

@dataclass(frozen=True)
class MigrationResult:
    files: dict  # output filename -> text
    tasks: codegen.TaskList
    selections: dict
    history: kb.HistoryStore


def migrate(config, repo, model, selections):
    """Pure pipeline from parsed inputs to output texts; writes nothing."""
    texts = [(Path(p), _read(p, "source file")) for p in config.source_paths]
    stems = [p.stem for p, _ in texts]
    if len(set(stems)) != len(stems):
        raise UsageError("source files must have distinct names")
    units = [parse_source(t) for _, t in texts]
    defined = [{f.name for f in u.functions} for u in units]
    main_idx = next((i for i, u in enumerate(units) if u.function("main")), 0)
    mappings = hardware.analyse_hardware_platform(model)

    files, items, stubbed = {}, [], set()
    for i, (unit, stem) in enumerate(zip(units, stems)):
        external = frozenset().union(*(d for j, d in enumerate(defined) if j != i))
        result = analysis.analyse(unit, repo, external)
        plan = codegen.build_plan(result, mappings, selections, repo, config.target_id,
                                  output_name=stem, scaffold=(i == main_idx), skip_stubs=stubbed)
        stubbed.update(s.name for s in plan.stubs)
        files[codegen.output_filename(plan)] = codegen.emit_target(plan)
        items.extend(codegen.emit_task_list(plan).items)

    history = repo.history
    for comp, lib in selections.items():
        if lib is not None:
            history = kb.record_selection(history, comp, lib)
    return MigrationResult(files, codegen.TaskList(tuple(items)), dict(selections), history)


def write_outputs(result, out_dir):
    """Stage everything in a sibling temp directory, then move into place."""
    out_dir = Path(out_dir)
    parent = out_dir.parent
    parent.mkdir(parents=True, exist_ok=True)
    staging = Path(tempfile.mkdtemp(prefix=".sketchport-", dir=parent))
    os.chmod(staging, 0o755)
    try:
        payload = dict(result.files)
        payload[TASKS_TEXT] = result.tasks.text()
        payload[TASKS_JSON] = result.tasks.json()
        payload[SELECTIONS_FILE] = json.dumps(result.selections, indent=2, sort_keys=True) + "\n"
        for name, text in payload.items():
            (staging / name).write_text(text, encoding="utf-8")
        if not out_dir.exists():
            os.rename(staging, out_dir)
            return
        for name in payload:
            os.replace(staging / name, out_dir / name)
    finally:
        shutil.rmtree(staging, ignore_errors=True)


def run_migrate(config, stdin=None, stdout=None):
    repo, model = _load_common(config.sketch_path, config.repo_path)
    for p in config.source_paths:
        if not Path(p).is_file():
            raise MissingFile(f"source file not found: {p}")
    names = component_names(model)
    if config.selection_mode == "file":
        selections = load_selections(config.selections_path, repo)
    else:
        ranked = rank_components(names, repo, config.top_k, config.history_weight)
        if config.selection_mode == "interactive":
            selections = interactive_select(ranked, repo.library_names, stdin, stdout)
        else:
            selections = auto_select(ranked)
    result = migrate(config, repo, model, selections)
    write_outputs(result, config.output_dir)
    kb.save_history(result.history, Path(config.repo_path) / kb.HISTORY_FILE)
    return result


def run_rank(sketch_path, repo_path, component=None, top_k=recommend.DEFAULT_TOP_K,
             history_weight=recommend.DEFAULT_HISTORY_WEIGHT, stdout=None):
    stdout = stdout or sys.stdout
    repo, model = _load_common(sketch_path, repo_path)
    names = component_names(model)
    if component is not None:
        wanted = component.lower()
        titles = {c.title.lower(): c.canonical_name for c in model.io_components}
        match = [nm for nm in names if nm.lower() == wanted] or (
            [titles[wanted]] if wanted in titles else [])
        if not match:
            # fall back to term containment: "servo" selects "Basic Servo"
            terms = set(tokenize(component))
            match = [nm for nm in names if terms and terms <= set(tokenize(nm))]
        if not match:
            raise SelectionError(f"no component {component!r} in the sketch; choose from: "
                                 + ", ".join(names))
        names = match
    for ranked in rank_components(names, repo, top_k, history_weight):
        stdout.write(recommend.format_table(ranked) + "\n")


# -- argument handling ------------------------------------------------------------

def build_parser():
    parser = _Parser(prog="sketchport", description="Migrate embedded robot sketches between boards.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--sketch", required=True, help="Fritzing .fz sketch of the target hardware")
        p.add_argument("--repo", default=os.environ.get(REPO_ENV),
                       help=f"repository directory (default: ${REPO_ENV})")
        p.add_argument("--top-k", type=int, default=recommend.DEFAULT_TOP_K)
        p.add_argument("--history-weight", type=float, default=recommend.DEFAULT_HISTORY_WEIGHT)

    m = sub.add_parser("migrate", help="generate target-platform sources")
    m.add_argument("--source", nargs="+", required=True, help="source platform C files")
    common(m)
    m.add_argument("--target", default=codegen.DEFAULT_TARGET, choices=sorted(codegen.TARGETS))
    m.add_argument("--out", required=True, help="output directory")
    mode = m.add_mutually_exclusive_group()
    mode.add_argument("--select", metavar="FILE", help="JSON file mapping component to library")
    mode.add_argument("--interactive", action="store_true", help="choose libraries at the prompt")
    mode.add_argument("--auto", action="store_true", help="take the top-ranked library (default)")

    r = sub.add_parser("rank", help="print ranked libraries per component")
    common(r)
    r.add_argument("--component", help="only this component (canonical name or sketch title)")
    return parser


def _config(args):
    if args.repo is None:
        raise UsageError(f"--repo is required when ${REPO_ENV} is unset")
    if args.top_k < 1:
        raise UsageError("--top-k must be at least 1")
    if args.history_weight < 0:
        raise UsageError("--history-weight must be non-negative")


def main(argv=None, stdin=None, stdout=None):
    args = build_parser().parse_args(argv)
    try:
        _config(args)
        if args.command == "rank":
            run_rank(args.sketch, args.repo, args.component, args.top_k, args.history_weight, stdout)
            return EXIT_OK
        mode = "file" if args.select else "interactive" if args.interactive else "auto"
        config = MigrationConfig(
            source_paths=tuple(args.source),
            sketch_path=Path(args.sketch),
            repo_path=Path(args.repo),
            output_dir=Path(args.out),
            target_id=args.target,
            selection_mode=mode,
            selections_path=Path(args.select) if args.select else None,
            top_k=args.top_k,
            history_weight=args.history_weight,
        )
        result = run_migrate(config, stdin, stdout)
    except UsageError as exc:
        print(f"sketchport: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KeyboardInterrupt:
        print("sketchport: interrupted", file=sys.stderr)
        return EXIT_SELECTION
    except MigrationError as exc:
        print(f"sketchport: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_status
    out = stdout or sys.stdout
    for name in result.files:
        out.write(f"wrote {Path(args.out) / name}\n")
    out.write(f"{len(result.tasks)} task(s) in {Path(args.out) / TASKS_TEXT}\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
