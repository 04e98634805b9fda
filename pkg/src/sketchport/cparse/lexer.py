"""Tokenizer for the supported C subset.

Comments are not tokens. A comment that starts on the line where the previous
token ends is attached to that token's ``after`` list; any other comment goes
to the ``before`` list of the next token (or of the EOF token).
"""

import re
from dataclasses import dataclass, field

from ..errors import SourceSyntaxError

KEYWORDS = frozenset("""
    auto break case char const continue default do double else enum extern float for goto
    if inline int long register restrict return short signed sizeof static struct switch
    typedef union unsigned void volatile while _Bool bool true false
    class template namespace new delete public private protected virtual operator this
    typename using try catch throw
""".split())

PUNCTUATORS = sorted("""
    <<= >>= ... -> ++ -- << >> <= >= == != && || += -= *= /= %= &= |= ^= ::
    + - * / % < > = ! & | ^ ~ ? : ; , . ( ) [ ] { }
""".split(), key=len, reverse=True)

_NUMBER = re.compile(
    r"(?:0[xX][0-9a-fA-F]+|0[bB][01]+|(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)[uUlLfF]*"
)
_IDENT = re.compile(r"[A-Za-z_]\w*")
_CHAR = re.compile(r"'(?:\\.|[^\\'\n])+'")
_STRING = re.compile(r'"(?:\\.|[^\\"\n])*"')


@dataclass
class Token:
    kind: str  # IDENT KEYWORD NUMBER CHAR STRING PUNCT DIRECTIVE EOF
    value: str
    line: int
    col: int
    end_line: int
    end_col: int
    before: list = field(default_factory=list)
    after: list = field(default_factory=list)

    def is_(self, *values):
        return self.kind in ("PUNCT", "KEYWORD") and self.value in values


def _split_directive_comment(text):
    """Split '#include "a.h" // x' into the directive and its trailing comment."""
    quote = None
    for i, ch in enumerate(text):
        if quote:
            if ch == quote:
                quote = None
        elif ch == '"':
            quote = '"'
        elif text.startswith("//", i) or text.startswith("/*", i):
            return text[:i].rstrip(), text[i:].strip()
    return text.rstrip(), None


def tokenize(src):
    tokens = []
    pending = []  # comments waiting for the next token
    i, line, col = 0, 1, 1
    n = len(src)
    at_line_start = True

    def advance(text):
        nonlocal i, line, col
        i += len(text)
        nl = text.count("\n")
        if nl:
            line += nl
            col = len(text) - text.rfind("\n")
        else:
            col += len(text)

    def add_comment(text, start_line):
        if tokens and tokens[-1].end_line == start_line and not pending:
            tokens[-1].after.append(text)
        else:
            pending.append(text)

    while i < n:
        ch = src[i]
        if ch == "\n":
            advance(ch)
            at_line_start = True
            continue
        if ch in " \t\r\f\v":
            advance(ch)
            continue
        if src.startswith("//", i):
            end = src.find("\n", i)
            end = n if end < 0 else end
            text = src[i:end].rstrip()
            add_comment(text, line)
            advance(src[i:end])
            continue
        if src.startswith("/*", i):
            end = src.find("*/", i + 2)
            if end < 0:
                raise SourceSyntaxError("unterminated comment", line, col)
            text = src[i:end + 2]
            add_comment(text, line)
            advance(text)
            continue
        start_line, start_col = line, col
        if ch == "#" and at_line_start:
            j = i
            while True:
                end = src.find("\n", j)
                end = n if end < 0 else end
                if end > i and src[end - 1] == "\\" and end < n:
                    j = end + 1
                    continue
                break
            raw = src[i:end]
            advance(raw)
            directive, comment = _split_directive_comment(raw)
            tok = Token("DIRECTIVE", directive, start_line, start_col, line, col, before=pending)
            pending = []
            tokens.append(tok)
            if comment:
                tok.after.append(comment)
            continue
        at_line_start = False
        for kind, rx in (("NUMBER", _NUMBER), ("IDENT", _IDENT), ("CHAR", _CHAR), ("STRING", _STRING)):
            m = rx.match(src, i)
            if m:
                text = m.group()
                if kind == "IDENT" and text in KEYWORDS:
                    kind = "KEYWORD"
                break
        else:
            text = next((p for p in PUNCTUATORS if src.startswith(p, i)), None)
            if text is None:
                raise SourceSyntaxError("unexpected character", line, col, ch)
            kind = "PUNCT"
        advance(text)
        tokens.append(Token(kind, text, start_line, start_col, line, col, before=pending))
        pending = []
    tokens.append(Token("EOF", "", line, col, line, col, before=pending))
    return tokens
