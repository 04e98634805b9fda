"""Canonical pretty-printer for the AST.

Layout is normalized (4-space indent, K&R braces) but every comment is
re-emitted next to the node that owns it, and explicit parentheses are kept,
so ``parse(print(parse(s)))`` equals ``parse(s)``.
"""

from . import nodes as n

INDENT = "    "


# -- expressions ----------------------------------------------------------------

def expr_text(e):
    if isinstance(e, n.Name):
        return e.id
    if isinstance(e, n.Literal):
        return e.text
    if isinstance(e, n.Paren):
        return f"({expr_text(e.expr)})"
    if isinstance(e, n.Unary):
        inner = expr_text(e.operand)
        # keep "- -x" and "+ +x" from fusing into "--x"/"++x"
        sep = " " if e.op in ("+", "-", "&") and inner.startswith(e.op) else ""
        return f"{e.op}{sep}{inner}"
    if isinstance(e, n.Postfix):
        return f"{expr_text(e.operand)}{e.op}"
    if isinstance(e, n.Binary):
        return f"{expr_text(e.left)} {e.op} {expr_text(e.right)}"
    if isinstance(e, n.Assign):
        return f"{expr_text(e.target)} {e.op} {expr_text(e.value)}"
    if isinstance(e, n.Ternary):
        return f"{expr_text(e.cond)} ? {expr_text(e.then)} : {expr_text(e.orelse)}"
    if isinstance(e, n.Call):
        return f"{expr_text(e.func)}({', '.join(expr_text(a) for a in e.args)})"
    if isinstance(e, n.Index):
        return f"{expr_text(e.base)}[{expr_text(e.index)}]"
    if isinstance(e, n.Member):
        return f"{expr_text(e.base)}{e.op}{e.name}"
    if isinstance(e, n.Cast):
        return f"({e.type_text}){expr_text(e.operand)}"
    if isinstance(e, n.SizeOf):
        if e.type_text is not None:
            return f"sizeof({e.type_text})"
        return f"sizeof {expr_text(e.expr)}"
    if isinstance(e, n.InitList):
        return "{" + ", ".join(expr_text(i) for i in e.items) + "}"
    raise TypeError(f"not an expression: {e!r}")


# -- declarations ---------------------------------------------------------------

def _dims(dims):
    return "".join(f"[{'' if d is None else expr_text(d)}]" for d in dims)


def declarator_text(d):
    text = "*" * d.pointer + d.name + _dims(d.dims)
    if d.init is not None:
        text += " = " + expr_text(d.init)
    return text


def declaration_text(decl):
    return " ".join(decl.specifiers) + " " + ", ".join(declarator_text(d) for d in decl.declarators) + ";"


def param_text(p):
    text = " ".join(p.specifiers)
    if p.pointer:
        text += " " + "*" * p.pointer
    if p.name:
        text += ("" if p.pointer else " ") + p.name
    return text + _dims(p.dims)


def signature_text(fn):
    """``long GetQTIState(int comPort)`` for a definition or prototype."""
    params = ", ".join(param_text(p) for p in fn.params)
    head = " ".join(fn.specifiers)
    return f"{head} {'*' * fn.pointer}{fn.name}({params})"


# -- statements -----------------------------------------------------------------

def _with_trailing(line, trailing):
    return line + "".join(" " + c for c in trailing)


def _leading_lines(node, pad):
    return [pad + c for c in node.leading]


def block_lines(block, depth, head=""):
    """Render ``head {`` ... ``}``; the closing line carries trailing comments."""
    pad = INDENT * depth
    first = (head + " {" if head else pad + "{")
    out = [_with_trailing(first, block.opening)]
    for s in block.stmts:
        out += stmt_lines(s, depth + 1)
    out += [INDENT * (depth + 1) + c for c in block.closing]
    out.append(_with_trailing(pad + "}", block.trailing))
    return out


def _body_lines(body, depth, head):
    """Lines for ``head`` followed by a statement body (block or single stmt)."""
    if isinstance(body, n.Block):
        return block_lines(body, depth, head)
    return [head] + stmt_lines(body, depth + 1)


def stmt_lines(s, depth):
    pad = INDENT * depth
    out = _leading_lines(s, pad)
    if isinstance(s, n.Block):
        return out + block_lines(s, depth)
    if isinstance(s, n.ExprStmt):
        text = ";" if s.expr is None else expr_text(s.expr) + ";"
        return out + [_with_trailing(pad + text, s.trailing)]
    if isinstance(s, n.Declaration):
        return out + [_with_trailing(pad + declaration_text(s), s.trailing)]
    if isinstance(s, n.Return):
        text = "return;" if s.value is None else f"return {expr_text(s.value)};"
        return out + [_with_trailing(pad + text, s.trailing)]
    if isinstance(s, (n.Break, n.Continue)):
        text = "break;" if isinstance(s, n.Break) else "continue;"
        return out + [_with_trailing(pad + text, s.trailing)]
    if isinstance(s, n.While):
        lines = _body_lines(s.body, depth, f"{pad}while ({expr_text(s.cond)})")
        lines[-1] = _with_trailing(lines[-1], s.trailing)
        return out + lines
    if isinstance(s, n.For):
        if s.init is None:
            init = ";"
        elif isinstance(s.init, n.Declaration):
            init = declaration_text(s.init)
        else:
            init = expr_text(s.init) + ";"
        cond = "" if s.cond is None else " " + expr_text(s.cond)
        step = "" if s.step is None else " " + expr_text(s.step)
        lines = _body_lines(s.body, depth, f"{pad}for ({init}{cond};{step})")
        lines[-1] = _with_trailing(lines[-1], s.trailing)
        return out + lines
    if isinstance(s, n.If):
        lines = _if_lines(s, depth, f"{pad}if ({expr_text(s.cond)})")
        lines[-1] = _with_trailing(lines[-1], s.trailing)
        return out + lines
    raise TypeError(f"not a statement: {s!r}")


def _if_lines(s, depth, head):
    pad = INDENT * depth
    lines = _body_lines(s.then, depth, head)
    if s.orelse is None:
        return lines
    # "} else" may share a line only when nothing trails the closing brace
    joinable = isinstance(s.then, n.Block) and not s.then.trailing
    if isinstance(s.orelse, n.If) and not s.orelse.leading and not s.orelse.trailing:
        else_head = f"else if ({expr_text(s.orelse.cond)})"
        if joinable:
            lines[-1] += " " + else_head
            sub = _if_lines(s.orelse, depth, lines.pop())
        else:
            sub = _if_lines(s.orelse, depth, pad + else_head)
        return lines + sub
    if joinable:
        head_line = lines.pop() + " else"
    else:
        head_line = pad + "else"
    return lines + _body_lines(s.orelse, depth, head_line)


# -- top level ------------------------------------------------------------------

def item_lines(item, depth=0):
    pad = INDENT * depth
    out = _leading_lines(item, pad)
    if isinstance(item, n.Include):
        text = f"#include <{item.header}>" if item.system else f'#include "{item.header}"'
        return out + [_with_trailing(pad + text, item.trailing)]
    if isinstance(item, n.Directive):
        return out + [_with_trailing(pad + item.text, item.trailing)]
    if isinstance(item, n.Declaration):
        return out + [_with_trailing(pad + declaration_text(item), item.trailing)]
    if isinstance(item, n.FunctionDecl):
        return out + [_with_trailing(pad + signature_text(item) + ";", item.trailing)]
    if isinstance(item, n.FunctionDef):
        lines = block_lines(item.body, depth, pad + signature_text(item))
        lines[-1] = _with_trailing(lines[-1], item.trailing)
        return out + lines
    return stmt_lines(item, depth)


def print_unit(tu):
    lines = []
    for item in tu.items:
        lines += item_lines(item)
    lines += list(tu.trailing_comments)
    return "\n".join(lines) + "\n" if lines else ""
