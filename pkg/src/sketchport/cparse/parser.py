"""Recursive-descent parser for the supported C subset.

Supported: ``#include`` (other directives are kept verbatim), global variable
and constant declarations, function prototypes and definitions, and inside
functions: blocks, local declarations, ``if``/``else``, ``while``, ``for``,
``return``, ``break``, ``continue`` and expression statements. Expressions
cover the usual C operators, calls, indexing, member access, keyword-type
casts and ``sizeof``.

Anything else (``struct``, ``switch``, ``do``, templates, ...) raises
:class:`UnsupportedConstruct` rather than being skipped.
"""

import re

from ..errors import SourceSyntaxError, UnsupportedConstruct
from . import nodes as n
from .lexer import tokenize

TYPE_KEYWORDS = frozenset(
    "const volatile static extern register inline restrict signed unsigned short long int "
    "char float double void bool _Bool auto".split()
)

UNSUPPORTED_KEYWORDS = {
    "struct": "struct", "union": "union", "enum": "enum", "typedef": "typedef",
    "switch": "switch statement", "case": "switch statement", "default": "switch statement",
    "goto": "goto", "do": "do-while loop", "class": "C++ class", "template": "C++ template",
    "typename": "C++ template", "namespace": "C++ namespace", "using": "C++ using-declaration",
    "new": "C++ new-expression", "delete": "C++ delete-expression", "operator": "C++ operator overload",
    "try": "C++ exception handling", "catch": "C++ exception handling", "throw": "C++ exception handling",
    "public": "C++ access specifier", "private": "C++ access specifier",
    "protected": "C++ access specifier", "virtual": "C++ virtual function", "this": "C++ this",
}

ASSIGN_OPS = frozenset("= += -= *= /= %= &= |= ^= <<= >>=".split())

BINARY_LEVELS = [
    ("||",),
    ("&&",),
    ("|",),
    ("^",),
    ("&",),
    ("==", "!="),
    ("<", ">", "<=", ">="),
    ("<<", ">>"),
    ("+", "-"),
    ("*", "/", "%"),
]

_INCLUDE = re.compile(r'#\s*include\s*(?:<([^>]+)>|"([^"]+)")\s*$')


QUALIFIERS = frozenset("const volatile static extern register inline restrict".split())


def _has_base(specs):
    return any(s not in QUALIFIERS for s in specs)


def _literal_kind(tok):
    if tok.kind == "CHAR":
        return "char"
    if tok.kind == "STRING":
        return "string"
    v = tok.value.lower()
    if v.startswith(("0x", "0b")):
        return "int"
    return "float" if ("." in v or "e" in v or v.endswith("f")) else "int"


class Parser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.pos = 0
        self._claimed = set()  # ids of comment lists already attached to a node

    # -- token helpers --------------------------------------------------------

    @property
    def tok(self):
        return self.toks[self.pos]

    def peek(self, k=1):
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def next(self):
        t = self.toks[self.pos]
        if t.kind != "EOF":
            self.pos += 1
        return t

    def error(self, message, tok=None):
        tok = tok or self.tok
        return SourceSyntaxError(message, tok.line, tok.col, tok.value or "<end of input>")

    def unsupported(self, construct, tok=None):
        tok = tok or self.tok
        return UnsupportedConstruct(construct, tok.line, tok.col)

    def expect(self, value):
        if not self.tok.is_(value):
            raise self.error(f"expected {value!r}")
        return self.next()

    def accept(self, value):
        if self.tok.is_(value):
            return self.next()
        return None

    def check_supported(self, tok=None):
        tok = tok or self.tok
        if tok.kind == "KEYWORD" and tok.value in UNSUPPORTED_KEYWORDS:
            raise self.unsupported(UNSUPPORTED_KEYWORDS[tok.value], tok)
        if tok.is_("::"):
            raise self.unsupported("C++ scope resolution", tok)

    def span_from(self, start):
        first, last = self.toks[start], self.toks[self.pos - 1]
        return n.Span(first.line, first.col, last.end_line, last.end_col)

    # -- comment trivia -------------------------------------------------------

    def _take(self, lst):
        if id(lst) in self._claimed:
            return []
        self._claimed.add(id(lst))
        return list(lst)

    def trivia(self, start, skip_first_before=False):
        """Claim comments of tokens[start:pos] not taken by nested nodes.

        Returns (leading, trailing): the first token's ``before`` comments plus
        any stray inner comments become leading; the last token's ``after``
        comments become trailing.
        """
        end = self.pos - 1
        leading = [] if skip_first_before else self._take(self.toks[start].before)
        trailing = self._take(self.toks[end].after)
        for i in range(start, end + 1):
            t = self.toks[i]
            if i != start or skip_first_before:
                leading += self._take(t.before)
            if i != end:
                leading += self._take(t.after)
        return tuple(leading), tuple(trailing)

    # -- top level ------------------------------------------------------------

    def parse_unit(self):
        items = []
        while self.tok.kind != "EOF":
            items.append(self.parse_external())
        trailing = tuple(self._take(self.tok.before))
        return n.TranslationUnit(tuple(items), trailing, source=self.text)

    def parse_external(self):
        start = self.pos
        tok = self.tok
        if tok.kind == "DIRECTIVE":
            self.next()
            leading, trailing = self.trivia(start)
            span = self.span_from(start)
            if re.match(r"#\s*include\b", tok.value):
                m = _INCLUDE.match(tok.value)
                if not m:
                    raise self.error("malformed #include", tok)
                system = m.group(1) is not None
                return n.Include(m.group(1) or m.group(2), system, leading, trailing, span)
            return n.Directive(tok.value, leading, trailing, span)
        self.check_supported()
        specs = self.parse_specifiers()
        pointer, name_tok = self.parse_declarator_head()
        if self.tok.is_("("):
            params = self.parse_params()
            if self.tok.is_("{"):
                body = self.parse_block(standalone=False)
                leading, trailing = self.trivia(start)
                return n.FunctionDef(specs, pointer, name_tok.value, params, body,
                                     leading, trailing, self.span_from(start))
            self.expect(";")
            leading, trailing = self.trivia(start)
            return n.FunctionDecl(specs, pointer, name_tok.value, params,
                                  leading, trailing, self.span_from(start))
        return self.finish_declaration(start, specs, pointer, name_tok, global_scope=True)

    def parse_specifiers(self):
        specs = []
        has_base = False
        while True:
            t = self.tok
            self.check_supported(t)
            if t.kind == "KEYWORD" and t.value in TYPE_KEYWORDS:
                if t.value not in QUALIFIERS:
                    has_base = True
                specs.append(self.next().value)
            elif t.kind == "IDENT" and not has_base and (
                    self.peek().kind == "IDENT" or self.peek().is_("*", "&")):
                if self.peek().is_("<"):
                    raise self.unsupported("C++ template")
                specs.append(self.next().value)
                has_base = True
            elif t.kind == "IDENT" and not has_base and self.peek().is_("<"):
                raise self.unsupported("C++ template", t)
            else:
                break
        if not specs:
            raise self.error("expected a declaration")
        return tuple(specs)

    def parse_declarator_head(self):
        pointer = 0
        while self.tok.is_("*"):
            self.next()
            pointer += 1
        if self.tok.is_("&"):
            raise self.unsupported("C++ reference declarator")
        if self.tok.kind != "IDENT":
            self.check_supported()
            raise self.error("expected an identifier")
        name_tok = self.next()
        if self.tok.is_("::"):
            raise self.unsupported("C++ scope resolution")
        return pointer, name_tok

    def parse_dims(self):
        dims = []
        while self.accept("["):
            dims.append(None if self.tok.is_("]") else self.parse_expr())
            self.expect("]")
        return tuple(dims)

    def parse_params(self):
        self.expect("(")
        params = []
        if self.accept(")"):
            return ()
        if self.tok.is_("void") and self.peek().is_(")"):
            self.next()
            self.next()
            return (n.Param(("void",)),)
        while True:
            if self.accept("..."):
                params.append(n.Param(("...",)))
            else:
                specs = []
                while True:
                    t = self.tok
                    self.check_supported(t)
                    if t.kind == "KEYWORD" and t.value in TYPE_KEYWORDS:
                        specs.append(self.next().value)
                    elif t.kind == "IDENT" and not _has_base(specs) and self._ident_is_type():
                        specs.append(self.next().value)
                    else:
                        break
                if not specs:
                    raise self.error("expected a parameter type")
                pointer = 0
                while self.accept("*"):
                    pointer += 1
                if self.tok.is_("&"):
                    raise self.unsupported("C++ reference parameter")
                name = self.next().value if self.tok.kind == "IDENT" else None
                params.append(n.Param(tuple(specs), pointer, name, self.parse_dims()))
            if self.accept(")"):
                return tuple(params)
            self.expect(",")

    def _ident_is_type(self):
        # "uint8_t pin", "byte *buf", "Servo s", or an unnamed "byte" parameter
        nxt = self.peek()
        return nxt.kind == "IDENT" or nxt.is_("*", ",", ")")

    def finish_declaration(self, start, specs, pointer, name_tok, global_scope=False, claim=True):
        declarators = []
        while True:
            d_start = self.pos - 1
            dims = self.parse_dims()
            init = None
            if self.accept("="):
                init = self.parse_initializer()
                if global_scope:
                    for node in n.walk(init):
                        if isinstance(node, n.Call):
                            raise self.unsupported("function call in a global initializer",
                                                   self.toks[d_start])
            declarators.append(n.Declarator(name_tok.value, pointer, dims, init,
                                            self.span_from(d_start)))
            if not self.accept(","):
                break
            pointer, name_tok = self.parse_declarator_head()
            if self.tok.is_("("):
                raise self.unsupported("mixed function and variable declarators")
        self.expect(";")
        # a for-loop init leaves its comments to the enclosing statement
        leading, trailing = self.trivia(start) if claim else ((), ())
        return n.Declaration(specs, tuple(declarators), leading, trailing, self.span_from(start))

    def parse_initializer(self):
        if self.tok.is_("{"):
            start = self.pos
            self.next()
            items = []
            while not self.tok.is_("}"):
                items.append(self.parse_initializer())
                if not self.accept(","):
                    break
            self.expect("}")
            return n.InitList(tuple(items), self.span_from(start))
        return self.parse_assignment()

    # -- statements -----------------------------------------------------------

    def parse_block(self, standalone=True):
        start = self.pos
        open_tok = self.expect("{")
        opening = tuple(self._take(open_tok.after))
        stmts = []
        while not self.tok.is_("}"):
            if self.tok.kind == "EOF":
                raise self.error("expected '}' before end of input")
            stmts.append(self.parse_statement())
        close_tok = self.next()
        closing = tuple(self._take(close_tok.before))
        leading = tuple(self._take(open_tok.before)) if standalone else ()
        trailing = tuple(self._take(close_tok.after))
        return n.Block(tuple(stmts), opening, closing, leading, trailing, self.span_from(start))

    def _is_declaration_start(self):
        t = self.tok
        if t.kind == "KEYWORD" and t.value in TYPE_KEYWORDS:
            return True
        if t.kind != "IDENT":
            return False
        nxt = self.peek()
        if nxt.kind == "IDENT":
            return True
        if nxt.is_("<") and self.peek(2).kind == "KEYWORD" and self.peek(2).value in TYPE_KEYWORDS:
            raise self.unsupported("C++ template", t)
        if nxt.is_("*") and self.peek(2).kind == "IDENT":
            return self.peek(3).is_("=", ";", ",", "[")
        return False

    def parse_statement(self):
        start = self.pos
        t = self.tok
        self.check_supported(t)
        if t.kind == "DIRECTIVE":
            raise self.unsupported("preprocessor directive inside a function", t)
        if t.is_("{"):
            return self.parse_block(standalone=True)
        if t.is_("if"):
            self.next()
            cond = self.parse_condition()
            then = self.parse_body()
            orelse = None
            if self.accept("else"):
                orelse = self.parse_body()
            leading, trailing = self.trivia(start)
            return n.If(cond, then, orelse, leading, trailing, self.span_from(start))
        if t.is_("while"):
            self.next()
            cond = self.parse_condition()
            body = self.parse_body()
            leading, trailing = self.trivia(start)
            return n.While(cond, body, leading, trailing, self.span_from(start))
        if t.is_("for"):
            self.next()
            self.expect("(")
            if self.tok.is_(";"):
                self.next()
                init = None
            elif self._is_declaration_start():
                d_start = self.pos
                specs = self.parse_specifiers()
                pointer, name_tok = self.parse_declarator_head()
                init = self.finish_declaration(d_start, specs, pointer, name_tok, claim=False)
            else:
                init = self.parse_expr()
                self.expect(";")
            cond = None if self.tok.is_(";") else self.parse_expr()
            self.expect(";")
            step = None if self.tok.is_(")") else self.parse_expr()
            self.expect(")")
            body = self.parse_body()
            leading, trailing = self.trivia(start)
            return n.For(init, cond, step, body, leading, trailing, self.span_from(start))
        if t.is_("return"):
            self.next()
            value = None if self.tok.is_(";") else self.parse_expr()
            self.expect(";")
            leading, trailing = self.trivia(start)
            return n.Return(value, leading, trailing, self.span_from(start))
        if t.is_("break", "continue"):
            self.next()
            self.expect(";")
            leading, trailing = self.trivia(start)
            cls = n.Break if t.value == "break" else n.Continue
            return cls(leading, trailing, self.span_from(start))
        if t.is_("else"):
            raise self.error("'else' without a previous 'if'")
        if self._is_declaration_start():
            specs = self.parse_specifiers()
            pointer, name_tok = self.parse_declarator_head()
            if self.tok.is_("("):
                raise self.unsupported("nested function declaration")
            return self.finish_declaration(start, specs, pointer, name_tok)
        if t.is_(";"):
            self.next()
            leading, trailing = self.trivia(start)
            return n.ExprStmt(None, leading, trailing, self.span_from(start))
        expr = self.parse_expr()
        if not self.tok.is_(";"):
            if isinstance(expr, n.Name) and self.tok.kind in ("IDENT", "NUMBER", "STRING", "CHAR"):
                raise self.error("unknown statement or missing operator", t)
            raise self.error("expected ';'")
        self.next()
        leading, trailing = self.trivia(start)
        return n.ExprStmt(expr, leading, trailing, self.span_from(start))

    def parse_condition(self):
        self.expect("(")
        cond = self.parse_expr()
        self.expect(")")
        return cond

    def parse_body(self):
        if self.tok.is_("{"):
            return self.parse_block(standalone=False)
        return self.parse_statement()

    # -- expressions ----------------------------------------------------------

    def parse_expr(self):
        return self.parse_assignment()

    def parse_assignment(self):
        start = self.pos
        left = self.parse_ternary()
        if self.tok.kind == "PUNCT" and self.tok.value in ASSIGN_OPS:
            op = self.next().value
            value = self.parse_assignment()
            return n.Assign(op, left, value, self.span_from(start))
        return left

    def parse_ternary(self):
        start = self.pos
        cond = self.parse_binary(0)
        if self.accept("?"):
            then = self.parse_expr()
            self.expect(":")
            orelse = self.parse_assignment()
            return n.Ternary(cond, then, orelse, self.span_from(start))
        return cond

    def parse_binary(self, level):
        if level == len(BINARY_LEVELS):
            return self.parse_unary()
        start = self.pos
        left = self.parse_binary(level + 1)
        ops = BINARY_LEVELS[level]
        while self.tok.kind == "PUNCT" and self.tok.value in ops:
            op = self.next().value
            right = self.parse_binary(level + 1)
            left = n.Binary(op, left, right, self.span_from(start))
        return left

    def _type_name(self):
        parts = []
        while self.tok.kind == "KEYWORD" and self.tok.value in TYPE_KEYWORDS:
            parts.append(self.next().value)
        stars = 0
        while self.accept("*"):
            stars += 1
        if stars:
            parts.append("*" * stars)
        return " ".join(parts)

    def parse_unary(self):
        start = self.pos
        t = self.tok
        self.check_supported(t)
        if t.kind == "PUNCT" and t.value in ("++", "--", "+", "-", "!", "~", "*", "&"):
            self.next()
            return n.Unary(t.value, self.parse_unary(), self.span_from(start))
        if t.is_("sizeof"):
            self.next()
            if self.tok.is_("(") and self.peek().kind == "KEYWORD" and self.peek().value in TYPE_KEYWORDS:
                self.next()
                type_text = self._type_name()
                self.expect(")")
                return n.SizeOf(type_text, None, self.span_from(start))
            return n.SizeOf(None, self.parse_unary(), self.span_from(start))
        if t.is_("(") and self.peek().kind == "KEYWORD" and self.peek().value in TYPE_KEYWORDS:
            self.next()
            type_text = self._type_name()
            self.expect(")")
            return n.Cast(type_text, self.parse_unary(), self.span_from(start))
        return self.parse_postfix()

    def parse_postfix(self):
        start = self.pos
        expr = self.parse_primary()
        while True:
            if self.accept("("):
                args = []
                if not self.tok.is_(")"):
                    while True:
                        args.append(self.parse_assignment())
                        if not self.accept(","):
                            break
                self.expect(")")
                expr = n.Call(expr, tuple(args), self.span_from(start))
            elif self.accept("["):
                index = self.parse_expr()
                self.expect("]")
                expr = n.Index(expr, index, self.span_from(start))
            elif self.tok.is_(".", "->"):
                op = self.next().value
                if self.tok.kind != "IDENT":
                    raise self.error("expected a member name")
                expr = n.Member(expr, op, self.next().value, self.span_from(start))
            elif self.tok.is_("++", "--"):
                expr = n.Postfix(self.next().value, expr, self.span_from(start))
            elif self.tok.is_("::"):
                raise self.unsupported("C++ scope resolution")
            else:
                return expr

    def parse_primary(self):
        start = self.pos
        t = self.tok
        if t.kind == "IDENT":
            self.next()
            return n.Name(t.value, self.span_from(start))
        if t.kind in ("NUMBER", "CHAR"):
            self.next()
            return n.Literal(_literal_kind(t), t.value, self.span_from(start))
        if t.kind == "STRING":
            parts = []
            while self.tok.kind == "STRING":
                parts.append(self.next().value)
            return n.Literal("string", " ".join(parts), self.span_from(start))
        if t.is_("true", "false"):
            self.next()
            return n.Literal("bool", t.value, self.span_from(start))
        if t.is_("("):
            self.next()
            inner = self.parse_expr()
            self.expect(")")
            return n.Paren(inner, self.span_from(start))
        self.check_supported(t)
        if t.kind == "EOF":
            raise self.error("unexpected end of input")
        raise self.error("expected an expression")


def parse_source(text):
    """Parse ``text`` into a :class:`~sketchport.cparse.nodes.TranslationUnit`."""
    return Parser(text).parse_unit()
