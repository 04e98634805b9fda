"""Target-platform repository: component registry, source-platform function
signatures, the library header corpus and historical library selections.

On-disk layout of a repository directory::

    components.jsonl        one ComponentRecord per line
    source_functions.jsonl  one SourceFunctionRecord per line
    history.json            {component: {library: count}}
    headers/*.h             target-platform library headers

Blank lines and lines starting with ``#`` are ignored in the ``.jsonl`` files.
"""

import enum
import json
import os
import tempfile
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType

from .errors import DuplicateMatchKey, MalformedRecord, MissingFile, PersistenceFailure
from .terms import tokenize

COMPONENTS_FILE = "components.jsonl"
SOURCE_FUNCTIONS_FILE = "source_functions.jsonl"
HISTORY_FILE = "history.json"
HEADERS_DIR = "headers"


class ComponentType(enum.Enum):
    BOARD = "board"
    INPUT = "input"
    OUTPUT = "output"
    PASSIVE = "passive"
    UNKNOWN = "unknown"

    @property
    def is_io(self):
        return self in (ComponentType.INPUT, ComponentType.OUTPUT)


@dataclass(frozen=True)
class ComponentRecord:
    match_keys: tuple
    canonical_name: str
    ctype: ComponentType
    pin_roles: tuple = ()

    def to_json(self):
        rec = {"match": list(self.match_keys), "name": self.canonical_name,
               "type": self.ctype.value}
        if self.pin_roles:
            rec["pins"] = [[role, count] for role, count in self.pin_roles]
        return rec


@dataclass(frozen=True)
class SourceFunctionRecord:
    name: str
    signature: str
    origin_header: str

    def to_json(self):
        return {"name": self.name, "signature": self.signature, "header": self.origin_header}


@dataclass(frozen=True)
class HeaderDocument:
    library_name: str
    filename: str
    raw_text: str
    token_multiset: Counter = field(compare=False, hash=False, repr=False)

    @classmethod
    def from_text(cls, filename, raw_text):
        return cls(Path(filename).stem, filename, raw_text, Counter(tokenize(raw_text)))


@dataclass(frozen=True)
class HistoryStore:
    """Selection counters. Treated as a value: updates return a new store."""

    counts: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))

    @classmethod
    def from_dict(cls, data):
        return cls(MappingProxyType({c: MappingProxyType(dict(libs)) for c, libs in data.items()}))

    def to_dict(self):
        return {c: dict(libs) for c, libs in self.counts.items()}

    def count(self, component, library):
        return self.counts.get(component, {}).get(library, 0)

    def __eq__(self, other):
        return isinstance(other, HistoryStore) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(json.dumps(self.to_dict(), sort_keys=True))


def record_selection(history, component, library):
    """Return a copy of ``history`` with one more selection of ``library``."""
    data = history.to_dict()
    libs = data.setdefault(component, {})
    libs[library] = libs.get(library, 0) + 1
    return HistoryStore.from_dict(data)


def dump_history(history):
    return json.dumps(history.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def save_history(history, path):
    """Atomically replace ``path`` with the serialized store."""
    path = Path(path)
    try:
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(dump_history(history))
        os.replace(tmp, path)
    except OSError as exc:
        raise PersistenceFailure(f"cannot write history to {path}: {exc}") from exc


def load_history(path):
    path = Path(path)
    if not path.is_file():
        raise MissingFile(f"missing repository file: {path}")
    text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        raise MalformedRecord(path, exc.lineno, exc.msg) from exc
    if not isinstance(data, dict):
        raise MalformedRecord(path, 1, "history must be an object")
    for component, libs in data.items():
        if not isinstance(libs, dict):
            raise MalformedRecord(path, 1, f"history entry for {component!r} must be an object")
        for lib, n in libs.items():
            if isinstance(n, bool) or not isinstance(n, int) or n < 0:
                raise MalformedRecord(path, 1, f"bad count {n!r} for {component}/{lib}")
    return HistoryStore.from_dict(data)


@dataclass(eq=False)
class PlatformRepository:
    components: tuple
    source_functions: MappingProxyType
    headers: tuple
    history: HistoryStore
    path: Path = None

    def __post_init__(self):
        index = {}
        for rec in self.components:
            for key in rec.match_keys:
                if key in index:
                    raise DuplicateMatchKey(key)
                index[key] = rec
        self._by_key = index

    @property
    def source_headers(self):
        return frozenset(rec.origin_header for rec in self.source_functions.values())

    @property
    def library_names(self):
        return [h.library_name for h in self.headers]

    def header_for(self, library_name):
        for h in self.headers:
            if h.library_name == library_name:
                return h
        return None

    def record_for(self, key):
        """Registry record resolving ``key`` (see :func:`lookup_component_type`)."""
        rec = self._by_key.get(key)
        if rec is not None:
            return rec
        lowered = key.lower()
        best = None
        for rec in self.components:
            name = rec.canonical_name.lower()
            if name and name in lowered and (best is None or len(name) > len(best.canonical_name)):
                best = rec
        return best

    def same_content(self, other):
        return (self.components == other.components
                and dict(self.source_functions) == dict(other.source_functions)
                and self.headers == other.headers
                and self.history == other.history)


def lookup_component_type(repo, key):
    rec = repo.record_for(key)
    return rec.ctype if rec is not None else ComponentType.UNKNOWN


def lookup_source_signature(repo, fn_name):
    return repo.source_functions.get(fn_name)


def _jsonl_records(path):
    if not path.is_file():
        raise MissingFile(f"missing repository file: {path}")
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedRecord(path, lineno, exc.msg) from exc
            if not isinstance(rec, dict):
                raise MalformedRecord(path, lineno, "record must be an object")
            yield lineno, rec


def _parse_component(path, lineno, rec):
    match = rec.get("match")
    if isinstance(match, str):
        match = [match]
    if not match or not all(isinstance(m, str) and m for m in match):
        raise MalformedRecord(path, lineno, "'match' must be a non-empty string or list of strings")
    name = rec.get("name")
    if not isinstance(name, str) or not name:
        raise MalformedRecord(path, lineno, "'name' must be a non-empty string")
    try:
        ctype = ComponentType(str(rec.get("type", "")).lower())
    except ValueError:
        ctype = None
    if ctype is None or ctype is ComponentType.UNKNOWN:
        raise MalformedRecord(path, lineno, f"bad component type {rec.get('type')!r}")
    pins = []
    for item in rec.get("pins", []):
        if (not isinstance(item, (list, tuple)) or len(item) != 2
                or not isinstance(item[0], str) or not isinstance(item[1], int)):
            raise MalformedRecord(path, lineno, "'pins' entries must be [role, count]")
        pins.append((item[0], item[1]))
    return ComponentRecord(tuple(match), name, ctype, tuple(pins))


def load_components(path):
    records, seen = [], {}
    boards = 0
    for lineno, rec in _jsonl_records(path):
        comp = _parse_component(path, lineno, rec)
        for key in comp.match_keys:
            if key in seen:
                raise DuplicateMatchKey(key, path, lineno)
            seen[key] = lineno
        if comp.ctype is ComponentType.BOARD:
            boards += 1
            if boards > 1:
                raise MalformedRecord(path, lineno, "only one board record is allowed per repository")
        records.append(comp)
    return tuple(records)


def load_source_functions(path):
    out = {}
    for lineno, rec in _jsonl_records(path):
        try:
            fn = SourceFunctionRecord(rec["name"], rec["signature"], rec["header"])
        except KeyError as exc:
            raise MalformedRecord(path, lineno, f"missing key {exc.args[0]!r}") from None
        if not all(isinstance(v, str) and v for v in (fn.name, fn.signature, fn.origin_header)):
            raise MalformedRecord(path, lineno, "name/signature/header must be non-empty strings")
        if fn.name in out:
            raise MalformedRecord(path, lineno, f"duplicate source function {fn.name!r}")
        out[fn.name] = fn
    return MappingProxyType(out)


def load_headers(directory):
    if not directory.is_dir():
        raise MissingFile(f"missing headers directory: {directory}")
    docs = []
    for p in sorted(directory.glob("*.h")):
        docs.append(HeaderDocument.from_text(p.name, p.read_text(encoding="utf-8", errors="replace")))
    return tuple(docs)


def load_repository(path):
    path = Path(path)
    if not path.is_dir():
        raise MissingFile(f"repository directory not found: {path}")
    return PlatformRepository(
        components=load_components(path / COMPONENTS_FILE),
        source_functions=load_source_functions(path / SOURCE_FUNCTIONS_FILE),
        headers=load_headers(path / HEADERS_DIR),
        history=load_history(path / HISTORY_FILE),
        path=path,
    )


def save_repository(repo, path):
    path = Path(path)
    (path / HEADERS_DIR).mkdir(parents=True, exist_ok=True)
    with open(path / COMPONENTS_FILE, "w", encoding="utf-8") as fh:
        for rec in repo.components:
            fh.write(json.dumps(rec.to_json(), ensure_ascii=False) + "\n")
    with open(path / SOURCE_FUNCTIONS_FILE, "w", encoding="utf-8") as fh:
        for rec in repo.source_functions.values():
            fh.write(json.dumps(rec.to_json(), ensure_ascii=False) + "\n")
    for doc in repo.headers:
        (path / HEADERS_DIR / doc.filename).write_text(doc.raw_text, encoding="utf-8")
    save_history(repo.history, path / HISTORY_FILE)
