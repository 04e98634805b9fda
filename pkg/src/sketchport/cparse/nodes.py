"""AST node types. All nodes are frozen; ``span`` never takes part in equality,
so two trees are structurally equal when they differ only in layout."""

from dataclasses import dataclass, field, fields, is_dataclass


@dataclass(frozen=True)
class Span:
    line: int
    col: int
    end_line: int
    end_col: int

    def contains(self, other):
        return ((self.line, self.col) <= (other.line, other.col)
                and (other.end_line, other.end_col) <= (self.end_line, self.end_col))


def int_value(text):
    """Value of a C integer literal (decimal, hex, binary or octal)."""
    digits = text.rstrip("uUlL")
    if len(digits) > 1 and digits[0] == "0" and digits[1] not in "xXbB":
        return int(digits, 8)
    return int(digits, 0)


def _span():
    return field(default=None, compare=False, repr=False)


# -- expressions --------------------------------------------------------------

@dataclass(frozen=True)
class Name:
    id: str
    span: Span = _span()


@dataclass(frozen=True)
class Literal:
    kind: str  # int float char string bool
    text: str
    span: Span = _span()


@dataclass(frozen=True)
class Paren:
    expr: object
    span: Span = _span()


@dataclass(frozen=True)
class Unary:
    op: str
    operand: object
    span: Span = _span()


@dataclass(frozen=True)
class Postfix:
    op: str
    operand: object
    span: Span = _span()


@dataclass(frozen=True)
class Binary:
    op: str
    left: object
    right: object
    span: Span = _span()


@dataclass(frozen=True)
class Assign:
    op: str
    target: object
    value: object
    span: Span = _span()


@dataclass(frozen=True)
class Ternary:
    cond: object
    then: object
    orelse: object
    span: Span = _span()


@dataclass(frozen=True)
class Call:
    func: object
    args: tuple
    span: Span = _span()

    @property
    def name(self):
        return self.func.id if isinstance(self.func, Name) else None


@dataclass(frozen=True)
class Index:
    base: object
    index: object
    span: Span = _span()


@dataclass(frozen=True)
class Member:
    base: object
    op: str  # "." or "->"
    name: str
    span: Span = _span()


@dataclass(frozen=True)
class Cast:
    type_text: str
    operand: object
    span: Span = _span()


@dataclass(frozen=True)
class SizeOf:
    type_text: str = None
    expr: object = None
    span: Span = _span()


@dataclass(frozen=True)
class InitList:
    items: tuple
    span: Span = _span()


# -- declarations -------------------------------------------------------------

@dataclass(frozen=True)
class Declarator:
    name: str
    pointer: int = 0
    dims: tuple = ()  # expression or None per [] pair
    init: object = None
    span: Span = _span()


@dataclass(frozen=True)
class Param:
    specifiers: tuple  # ("...",) for varargs, ("void",) alone for (void)
    pointer: int = 0
    name: str = None
    dims: tuple = ()


@dataclass(frozen=True)
class Declaration:
    specifiers: tuple
    declarators: tuple
    leading: tuple = ()
    trailing: tuple = ()
    span: Span = _span()

    @property
    def names(self):
        return [d.name for d in self.declarators]


@dataclass(frozen=True)
class FunctionDecl:
    specifiers: tuple
    pointer: int
    name: str
    params: tuple
    leading: tuple = ()
    trailing: tuple = ()
    span: Span = _span()

    @property
    def names(self):
        return [self.name]


@dataclass(frozen=True)
class Include:
    header: str
    system: bool
    leading: tuple = ()
    trailing: tuple = ()
    span: Span = _span()


@dataclass(frozen=True)
class Directive:
    text: str
    leading: tuple = ()
    trailing: tuple = ()
    span: Span = _span()

    @property
    def names(self):
        parts = self.text.lstrip("#").split()
        return [parts[1].split("(")[0]] if len(parts) > 1 and parts[0] == "define" else []


# -- statements ---------------------------------------------------------------

@dataclass(frozen=True)
class Block:
    stmts: tuple
    opening: tuple = ()  # comments on the line of "{"
    closing: tuple = ()  # comments just before "}"
    leading: tuple = ()
    trailing: tuple = ()
    span: Span = _span()


@dataclass(frozen=True)
class ExprStmt:
    expr: object  # None for the empty statement
    leading: tuple = ()
    trailing: tuple = ()
    span: Span = _span()


@dataclass(frozen=True)
class If:
    cond: object
    then: object
    orelse: object = None
    leading: tuple = ()
    trailing: tuple = ()
    span: Span = _span()


@dataclass(frozen=True)
class While:
    cond: object
    body: object
    leading: tuple = ()
    trailing: tuple = ()
    span: Span = _span()

    @property
    def is_infinite(self):
        c = self.cond
        while isinstance(c, Paren):
            c = c.expr
        if not isinstance(c, Literal):
            return False
        if c.kind == "bool":
            return c.text == "true"
        if c.kind == "int":
            return int_value(c.text) != 0
        return False


@dataclass(frozen=True)
class For:
    init: object  # Declaration, expression or None
    cond: object
    step: object
    body: object
    leading: tuple = ()
    trailing: tuple = ()
    span: Span = _span()


@dataclass(frozen=True)
class Return:
    value: object = None
    leading: tuple = ()
    trailing: tuple = ()
    span: Span = _span()


@dataclass(frozen=True)
class Break:
    leading: tuple = ()
    trailing: tuple = ()
    span: Span = _span()


@dataclass(frozen=True)
class Continue:
    leading: tuple = ()
    trailing: tuple = ()
    span: Span = _span()


@dataclass(frozen=True)
class FunctionDef:
    specifiers: tuple
    pointer: int
    name: str
    params: tuple
    body: Block
    leading: tuple = ()
    trailing: tuple = ()
    span: Span = _span()

    @property
    def signature(self):
        from .printer import signature_text
        return signature_text(self)


@dataclass(frozen=True)
class CallSite:
    function: str
    args: tuple
    span: Span


@dataclass(frozen=True)
class TranslationUnit:
    items: tuple
    trailing_comments: tuple = ()
    source: str = field(default="", compare=False, repr=False)

    @property
    def includes(self):
        return [x for x in self.items if isinstance(x, Include)]

    @property
    def globals(self):
        return [x for x in self.items if isinstance(x, (Declaration, FunctionDecl, Directive))]

    @property
    def functions(self):
        return [x for x in self.items if isinstance(x, FunctionDef)]

    def function(self, name):
        return next((f for f in self.functions if f.name == name), None)

    @property
    def call_sites(self):
        """Map callee name -> [CallSite] for direct calls inside function bodies."""
        index = {}
        for fn in self.functions:
            for node in walk(fn.body):
                if isinstance(node, Call) and node.name is not None:
                    index.setdefault(node.name, []).append(CallSite(fn.name, node.args, node.span))
        return index

    @property
    def line_count(self):
        return self.source.count("\n")


def walk(node):
    """Yield ``node`` and every AST node below it, in source order."""
    stack = [node]
    while stack:
        cur = stack.pop()
        if isinstance(cur, (tuple, list)):
            stack.extend(reversed(cur))
            continue
        if not is_dataclass(cur):
            continue
        yield cur
        children = [getattr(cur, f.name) for f in fields(cur)
                    if f.name not in ("span", "leading", "trailing", "opening", "closing")]
        stack.extend(reversed(children))
