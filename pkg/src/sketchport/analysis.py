"""Classify the constructs of a source sketch as platform-agnostic or
platform-dependent, and split ``main`` into one-shot and repeating parts."""

import enum
import threading
import warnings
from dataclasses import dataclass, field, replace

from .cparse import nodes as n
from .errors import NoMainFunction


class MultipleInfiniteLoops(UserWarning):
    """``main`` has more than one top-level infinite loop; the first one wins."""


# C standard library functions that must never be stubbed.
STDLIB_FUNCTIONS = frozenset("""
    printf fprintf sprintf snprintf vprintf vfprintf vsprintf vsnprintf scanf fscanf sscanf
    putchar getchar puts gets fputs fgets fputc fgetc putc getc ungetc fopen fclose fflush
    fread fwrite fseek ftell rewind feof ferror clearerr perror remove rename tmpfile tmpnam
    setbuf setvbuf
    strcpy strncpy strcat strncat strcmp strncmp strlen strchr strrchr strstr strtok strspn
    strcspn strpbrk strerror strcoll strxfrm strdup memcpy memmove memset memcmp memchr
    malloc calloc realloc free abs labs llabs div ldiv atoi atol atoll atof strtol strtoul
    strtoll strtoull strtod strtof rand srand qsort bsearch exit abort atexit getenv system
    sin cos tan asin acos atan atan2 sinh cosh tanh exp log log10 log2 pow sqrt cbrt ceil
    floor round trunc fabs fmod fmin fmax hypot frexp ldexp modf
    isalnum isalpha isdigit isxdigit islower isupper isspace ispunct isprint iscntrl
    isgraph tolower toupper
    time clock difftime mktime localtime gmtime strftime
    assert
""".split())


class Tag(enum.Enum):
    AGNOSTIC = "agnostic"
    PLATFORM_DEPENDENT = "platform-dependent"
    PLATFORM_INCLUDE = "platform-include"


@dataclass(frozen=True)
class Classification:
    tag: Tag
    reason: str


@dataclass(frozen=True)
class PlatformCall:
    name: str
    signature: str  # None when the registry has no entry
    count: int
    arity: int  # largest argument count seen at a call site
    first_span: n.Span = field(compare=False, default=None)

    @property
    def inferred(self):
        return self.signature is None


@dataclass(frozen=True)
class MainDecomposition:
    pre_loop: tuple
    loop_body: tuple
    unreachable: tuple = ()  # post-loop statements, also appended to pre_loop
    diagnostics: tuple = ()


@dataclass(frozen=True)
class AnalysisResult:
    retained_includes: tuple
    dropped_includes: tuple
    retained_globals: tuple
    retained_functions: tuple
    platform_calls: tuple
    main_decomposition: MainDecomposition
    source_line_count: int
    classifications: tuple = ()  # (label, Classification) pairs

    @property
    def platform_call_names(self):
        return [c.name for c in self.platform_calls]


def classify_includes(tu, repo):
    """Partition the include directives: headers owned by the source platform
    are dropped, everything else is kept."""
    platform = repo.source_headers
    retained, dropped = [], []
    for inc in tu.includes:
        (dropped if inc.header in platform else retained).append(inc)
    return retained, dropped


def local_function_names(tu):
    names = {f.name for f in tu.functions}
    names.update(name for d in tu.globals if isinstance(d, n.Directive) for name in d.names)
    return names


def collect_platform_calls(tu, repo, external=frozenset()):
    """Calls that need an adapter stub on the target, in first-call order.

    A callee is platform-dependent when it is not defined in ``tu`` (or in
    ``external``, the other files of the same program) and it is either a
    registered source-platform function or not a known C library function.
    """
    local = local_function_names(tu) | set(external)
    found = {}
    for name, sites in tu.call_sites.items():
        if name in local:
            continue
        record = repo.source_functions.get(name)
        if record is None and name in STDLIB_FUNCTIONS:
            continue
        found[name] = PlatformCall(
            name=name,
            signature=record.signature if record else None,
            count=len(sites),
            arity=max(len(s.args) for s in sites),
            first_span=sites[0].span,
        )
    return tuple(sorted(found.values(), key=lambda c: (c.first_span.line, c.first_span.col)))


def _is_infinite_loop(stmt):
    if isinstance(stmt, n.While):
        return stmt.is_infinite
    if isinstance(stmt, n.For):
        return stmt.init is None and stmt.cond is None and stmt.step is None
    return False


def _drop_return_values(stmt):
    """``return x;`` -> ``return;`` so main's statements fit a void function."""
    if isinstance(stmt, n.Return):
        return replace(stmt, value=None) if stmt.value is not None else stmt
    if isinstance(stmt, n.Block):
        return replace(stmt, stmts=tuple(_drop_return_values(s) for s in stmt.stmts))
    if isinstance(stmt, n.If):
        orelse = _drop_return_values(stmt.orelse) if stmt.orelse is not None else None
        return replace(stmt, then=_drop_return_values(stmt.then), orelse=orelse)
    if isinstance(stmt, (n.While, n.For)):
        return replace(stmt, body=_drop_return_values(stmt.body))
    return stmt


def decompose_main(tu):
    main = tu.function("main")
    if main is None:
        raise NoMainFunction("no 'main' function to split into setup/loop")
    stmts = [_drop_return_values(s) for s in main.body.stmts]
    loops = [i for i, s in enumerate(stmts) if _is_infinite_loop(s)]
    diagnostics = []
    if not loops:
        return MainDecomposition(tuple(stmts), ())
    first = loops[0]
    if len(loops) > 1:
        msg = f"main has {len(loops)} infinite loops; using the one at line {stmts[first].span.line}"
        warnings.warn(msg, MultipleInfiniteLoops, stacklevel=2)
        diagnostics.append(msg)
    loop = stmts[first]
    body = loop.body.stmts if isinstance(loop.body, n.Block) else (loop.body,)
    after = tuple(stmts[first + 1:])
    if after:
        diagnostics.append(f"{len(after)} statement(s) after the infinite loop moved to setup")
    return MainDecomposition(tuple(stmts[:first]) + after, tuple(body), after, tuple(diagnostics))


_memo = {}
_memo_lock = threading.Lock()


def memo_size():
    return len(_memo)


def analyse(tu, repo, external=frozenset()):
    """Full classification of ``tu``; memoized per (unit, source text, repository)."""
    key = (tu, tu.source, repo, frozenset(external))
    cached = _memo.get(key)
    if cached is not None:
        return cached
    result = _analyse(tu, repo, frozenset(external))
    with _memo_lock:
        return _memo.setdefault(key, result)


def _analyse(tu, repo, external):
    retained, dropped = classify_includes(tu, repo)
    calls = collect_platform_calls(tu, repo, external)
    labels = []
    for inc in retained:
        labels.append((f"include:{inc.header}", Classification(Tag.AGNOSTIC, "not a source-platform header")))
    for inc in dropped:
        labels.append((f"include:{inc.header}",
                       Classification(Tag.PLATFORM_INCLUDE, "header owned by the source platform")))
    for g in tu.globals:
        for name in g.names:
            labels.append((f"global:{name}", Classification(Tag.AGNOSTIC, "global declaration")))
    for f in tu.functions:
        labels.append((f"function:{f.name}", Classification(Tag.AGNOSTIC, "defined locally")))
    for c in calls:
        reason = "source-platform registry" if c.signature else "unresolved external call"
        labels.append((f"call:{c.name}", Classification(Tag.PLATFORM_DEPENDENT, reason)))
    try:
        decomposition = decompose_main(tu)
    except NoMainFunction:
        decomposition = None
    return AnalysisResult(
        retained_includes=tuple(retained),
        dropped_includes=tuple(dropped),
        retained_globals=tuple(tu.globals),
        retained_functions=tuple(f for f in tu.functions if f.name != "main"),
        platform_calls=calls,
        main_decomposition=decomposition,
        source_line_count=tu.line_count,
        classifications=tuple(labels),
    )
