"""Assemble and emit the target-platform source file.

Platform-agnostic code is carried over, pin constants come from the hardware
mappings, ``main`` becomes the setup/loop scaffold and every platform call gets
an empty adapter stub. Anything needing an engineer's attention is collected
into a task list.
"""

import json
import re
from dataclasses import dataclass, field, replace

from .cparse import nodes as n
from .cparse import printer
from .errors import MissingSelection, UnknownLibrary
from .terms import tokenize

TODO_MARKER = "//TODO: complete method"
INFERRED_TYPE = "long"


class TaskKind:
    STUB_BODY = "StubBody"
    UNREACHABLE_CODE = "UnreachableCode"
    INFERRED_SIGNATURE = "InferredSignature"
    PORT_RECONCILIATION = "PortReconciliation"


@dataclass(frozen=True)
class TargetTemplate:
    id: str
    board_include: str
    extension: str
    setup_name: str = "setup"
    loop_name: str = "loop"


TARGETS = {
    "arduino-uno": TargetTemplate("arduino-uno", "Arduino.h", ".ino"),
    "arduino": TargetTemplate("arduino", "Arduino.h", ".ino"),
}
DEFAULT_TARGET = "arduino-uno"


@dataclass(frozen=True)
class Stub:
    name: str
    signature: str
    inferred: bool = False
    arity: int = 0

    def lines(self):
        return [self.signature + " {", printer.INDENT + TODO_MARKER, "}"]


@dataclass(frozen=True)
class PortConstant:
    name: str
    pin: str
    comment: str  # endpoint qualified name
    flags: tuple = ()

    @property
    def value(self):
        return self.pin if _PIN_VALUE.match(self.pin) else "-1"

    def line(self):
        return f"const int {self.name} = {self.value}; //{self.comment}"


@dataclass(frozen=True)
class TaskItem:
    file: str
    line: int
    kind: str
    message: str

    def to_json(self):
        return {"file": self.file, "line": self.line, "kind": self.kind, "message": self.message}

    def __str__(self):
        return f"{self.file}:{self.line}: {self.kind}: {self.message}"


@dataclass(frozen=True)
class TaskList:
    items: tuple

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def of_kind(self, kind):
        return [i for i in self.items if i.kind == kind]

    def text(self):
        return "".join(str(i) + "\n" for i in self.items)

    def json(self):
        return json.dumps([i.to_json() for i in self.items], indent=2) + "\n"


@dataclass(frozen=True)
class Metrics:
    source_lines: int
    generated_lines: int
    stub_count: int


@dataclass(frozen=True)
class MigrationPlan:
    output_name: str
    target: TargetTemplate
    agnostic_includes: tuple
    selected_library_includes: tuple
    board_include: str  # None when the source already includes it
    port_constants: tuple
    retained_globals: tuple
    retained_functions: tuple
    setup_statements: tuple
    loop_statements: tuple
    stubs: tuple
    unreachable: tuple = ()
    reconciliations: tuple = ()  # (global name, message)
    source_line_count: int = 0
    scaffold: bool = True

    @property
    def added_include_count(self):
        return len(self.selected_library_includes) + (self.board_include is not None)

    @property
    def metrics(self):
        return Metrics(self.source_line_count, emit_target(self).count("\n"), len(self.stubs))

    def size_bound(self):
        """Upper bound on generated lines: three per source line plus the
        added includes, the pin constants and the setup/loop scaffold."""
        return 3 * self.source_line_count + self.added_include_count + len(self.port_constants) + 4


# -- port constants ---------------------------------------------------------------

_PIN_VALUE = re.compile(r"^(?:[0-9]+|A[0-9]+)$")
_NON_IDENT = re.compile(r"[^A-Za-z0-9_]")


def port_constant_name(key):
    return "PIN_" + _NON_IDENT.sub("", key).upper()


def derive_port_constants(mappings, reserved=()):
    """One ``const int`` per mapping entry, in mapping order. Names that
    collide after sanitization get an ordinal suffix and are flagged."""
    taken = set(reserved)
    out = []
    for key, pin in mappings.pairs():
        base = name = port_constant_name(key)
        flags = []
        k = 2
        while name in taken:
            name = f"{base}_{k}"
            k += 1
        if name != base:
            flags.append(f"renamed from {base} to avoid a name collision")
        if not _PIN_VALUE.match(pin):
            flags.append(f"board connector {pin!r} is not a pin number")
        taken.add(name)
        out.append(PortConstant(name, pin, key, tuple(flags)))
    return tuple(out)


# -- plan -------------------------------------------------------------------------

def _names_in(stmts):
    return {node.id for s in stmts for node in n.walk(s) if isinstance(node, n.Name)}


def _contains_call(expr):
    return expr is not None and any(isinstance(x, n.Call) for x in n.walk(expr))


def _hoist(pre_loop, loop):
    """Locals declared before the loop but used inside it must outlive
    ``setup``: move them to file scope. Initializers that call functions stay
    behind in ``setup`` as assignments."""
    used = _names_in(loop)
    hoisted, setup = [], []
    for s in pre_loop:
        if not (isinstance(s, n.Declaration) and used & set(s.names)):
            setup.append(s)
            continue
        plain = []
        for d in s.declarators:
            if _contains_call(d.init) and not d.dims:
                plain.append(replace(d, init=None))
                setup.append(n.ExprStmt(n.Assign("=", n.Name(d.name), d.init)))
            else:
                plain.append(d)
        hoisted.append(replace(s, declarators=tuple(plain)))
    return tuple(hoisted), tuple(setup)


def _inferred_signature(name, arity):
    params = ", ".join(f"{INFERRED_TYPE} a{i}" for i in range(1, arity + 1))
    return f"{INFERRED_TYPE} {name}({params})"


def _reconciliations(globals_, mappings):
    """Source constants whose name shares a term with a mapped component."""
    by_component = {}
    for e in mappings:
        comp = e.endpoint.parent
        by_component.setdefault(comp.canonical_name, []).append(e)
    out = []
    for g in globals_:
        for name in g.names:
            words = set(tokenize(name))
            for canonical, entries in by_component.items():
                comp_words = set(tokenize(canonical))
                for e in entries:
                    comp_words.update(tokenize(e.endpoint.parent.title))
                comp_words = {w for w in comp_words if not w.isdigit()}
                if words & comp_words:
                    pins = ", ".join(f"{port_constant_name(e.key)}={e.pin}" for e in entries)
                    out.append((name, f"source constant '{name}' looks related to {canonical}; "
                                      f"check it against the wired pins ({pins})"))
                    break
    return tuple(out)


def build_plan(analysis, mappings, selections, repo, target=DEFAULT_TARGET, output_name="main",
               scaffold=True, skip_stubs=()):
    """``selections`` maps component canonical name to a library name, or to
    None when no library is wanted. ``skip_stubs`` names platform calls stubbed
    in another file of the same program."""
    if isinstance(target, str):
        target = TARGETS[target]
    needed = []
    for e in mappings:
        name = e.endpoint.parent.canonical_name
        if name not in needed:
            needed.append(name)
    missing = [c for c in needed if c not in selections]
    if missing:
        raise MissingSelection(missing)

    present = {inc.header for inc in analysis.retained_includes}
    board_include = None if target.board_include in present else target.board_include
    present.add(target.board_include)
    lib_includes = []
    for comp in needed:
        lib = selections[comp]
        if lib is None:
            continue
        doc = repo.header_for(lib)
        if doc is None:
            raise UnknownLibrary(f"library {lib!r} selected for {comp} is not in the header corpus")
        if doc.filename not in present:
            present.add(doc.filename)
            lib_includes.append(doc.filename)

    decomposition = analysis.main_decomposition
    if decomposition is not None:
        hoisted, setup = _hoist(decomposition.pre_loop, decomposition.loop_body)
        loop, unreachable = decomposition.loop_body, decomposition.unreachable
    else:
        hoisted, setup, loop, unreachable = (), (), (), ()

    globals_ = tuple(analysis.retained_globals)
    reserved = {name for g in globals_ for name in g.names}
    reserved |= {f.name for f in analysis.retained_functions}
    ports = derive_port_constants(mappings, reserved) if scaffold else ()

    stubs = []
    for call in analysis.platform_calls:
        if call.name in skip_stubs:
            continue
        if call.signature is not None:
            stubs.append(Stub(call.name, call.signature, False, call.arity))
        else:
            stubs.append(Stub(call.name, _inferred_signature(call.name, call.arity), True, call.arity))

    return MigrationPlan(
        output_name=output_name,
        target=target,
        agnostic_includes=tuple(analysis.retained_includes),
        selected_library_includes=tuple(lib_includes),
        board_include=board_include,
        port_constants=ports,
        retained_globals=globals_ + hoisted,
        retained_functions=tuple(analysis.retained_functions),
        setup_statements=setup,
        loop_statements=tuple(loop),
        stubs=tuple(stubs),
        unreachable=tuple(unreachable),
        reconciliations=_reconciliations(analysis.retained_globals, mappings) if scaffold else (),
        source_line_count=analysis.source_line_count,
        scaffold=scaffold,
    )


# -- emission ---------------------------------------------------------------------

@dataclass
class _Rendered:
    lines: list = field(default_factory=list)
    anchors: list = field(default_factory=list)  # (line number, kind, message)

    def add(self, lines, kind=None, message=None):
        if kind is not None:
            self.anchors.append((len(self.lines) + 1, kind, message))
        self.lines.extend(lines)


def _render(plan):
    out = _Rendered()
    for inc in plan.agnostic_includes:
        out.add(printer.item_lines(inc))
    if plan.board_include is not None:
        out.add([f'#include "{plan.board_include}"'])
    for header in plan.selected_library_includes:
        out.add([f"#include <{header}>"])
    for port in plan.port_constants:
        for flag in port.flags:
            out.anchors.append((len(out.lines) + 1, TaskKind.PORT_RECONCILIATION,
                                f"{port.name}: {flag}"))
        out.add([port.line()])
    notes = dict(plan.reconciliations)
    for g in plan.retained_globals:
        lines = printer.item_lines(g)
        at = len(out.lines) + len(g.leading) + 1
        for name in g.names:
            if name in notes:
                out.anchors.append((at, TaskKind.PORT_RECONCILIATION, notes[name]))
        out.add(lines)
    for f in plan.retained_functions:
        out.add(printer.item_lines(f))
    if plan.scaffold:
        t = plan.target
        out.add([f"void {t.setup_name}() {{"])
        first_unreachable = len(plan.setup_statements) - len(plan.unreachable)
        for i, s in enumerate(plan.setup_statements):
            if i >= first_unreachable:
                at = len(out.lines) + len(s.leading) + 1
                out.anchors.append((at, TaskKind.UNREACHABLE_CODE,
                                    "statement followed the infinite loop in main; moved to setup"))
            out.add(printer.stmt_lines(s, 1))
        out.add(["}", f"void {t.loop_name}() {{"])
        for s in plan.loop_statements:
            out.add(printer.stmt_lines(s, 1))
        out.add(["}"])
    for stub in plan.stubs:
        line = len(out.lines) + 1
        out.add(stub.lines(), TaskKind.STUB_BODY, f"complete adapter for {stub.name}")
        if stub.inferred:
            out.anchors.append((line, TaskKind.INFERRED_SIGNATURE,
                                f"{stub.name}: no registered signature, parameter and return "
                                f"types default to {INFERRED_TYPE}"))
    return out


def emit_target(plan):
    return "\n".join(_render(plan).lines) + "\n"


def output_filename(plan):
    return plan.output_name + plan.target.extension


def emit_task_list(plan):
    fname = output_filename(plan)
    anchors = sorted(_render(plan).anchors, key=lambda a: a[0])
    return TaskList(tuple(TaskItem(fname, line, kind, msg) for line, kind, msg in anchors))
