import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import SOURCES
from sketchport.cparse import nodes as n
from sketchport.cparse import parse_source, print_unit, signature_text, walk
from sketchport.errors import SourceSyntaxError, UnsupportedConstruct

LISTING = (SOURCES / "listing1.c").read_text()
FIXTURE_SOURCES = sorted(SOURCES.glob("*.c"))


def test_listing_structure():
    tu = parse_source(LISTING)
    assert [i.header for i in tu.includes] == ["simpletools.h", "abdrive.h"]
    assert [name for g in tu.globals for name in g.names] == [
        "leftQTI", "rightQTI", "LED", "QTI_T", "waitTime"]
    assert [f.name for f in tu.functions] == ["GetQTIState", "main"]
    assert signature_text(tu.function("GetQTIState")) == "long GetQTIState(int comPort)"


def test_empty_input():
    tu = parse_source("")
    assert tu.items == () and tu.includes == [] and tu.functions == []
    assert print_unit(tu) == ""


def test_misspelled_keyword_is_located():
    with pytest.raises(SourceSyntaxError) as err:
        parse_source("int main(){retur 0;}")
    assert (err.value.line, err.value.column) == (1, 12)
    assert "retur" in str(err.value)


@pytest.mark.parametrize("src, construct", [
    ("template <typename T> T id(T x) { return x; }", "template"),
    ("struct point { int x; };", "struct"),
    ("int main() { switch (x) { case 1: break; } }", "switch"),
    ("int main() { do { x++; } while (x); }", "do"),
    ("typedef int pin_t;", "typedef"),
    ("int main() { std::cout << 1; }", "scope resolution"),
])
def test_out_of_subset_constructs_are_named(src, construct):
    with pytest.raises(UnsupportedConstruct) as err:
        parse_source(src)
    assert construct in str(err.value)


@pytest.mark.parametrize("src", [
    "int main() { x = ; }",
    "int main() { if x) {} }",
    "int main() {",
    "int x = 1",
    "int main() { return 0 }",
    "int x = f(1);",
    "int main() { @ }",
])
def test_malformed_inputs(src):
    with pytest.raises(SourceSyntaxError):
        parse_source(src)


def test_comments_survive_printing():
    tu = parse_source(LISTING)
    out = print_unit(tu)
    for c in ("//Left QTI port", "//continue straight", "//switch off LED", "//wait 1s"):
        assert c in out


def test_call_sites_in_order_with_spans():
    tu = parse_source(LISTING)
    sites = tu.call_sites
    assert list(sites) == ["set_output", "set_direction", "waitcnt", "get_state", "GetQTIState",
                           "drive_speed", "high", "pause", "low"]
    assert len(sites["drive_speed"]) == 4
    assert sites["set_output"][0].span.line == 9


def test_every_call_site_lies_in_one_function():
    for path in FIXTURE_SOURCES:
        tu = parse_source(path.read_text())
        for sites in tu.call_sites.values():
            for site in sites:
                owners = [f for f in tu.functions if f.span.contains(site.span)]
                assert len(owners) == 1


@pytest.mark.parametrize("path", FIXTURE_SOURCES, ids=lambda p: p.name)
def test_fixture_round_trip(path):
    tu = parse_source(path.read_text())
    printed = print_unit(tu)
    again = parse_source(printed)
    assert again == tu
    assert print_unit(again) == printed


def test_precedence_and_parens_kept():
    tu = parse_source("int f() { return (a + b) * c - -d; }")
    ret = tu.function("f").body.stmts[0]
    assert isinstance(ret.value, n.Binary) and ret.value.op == "-"
    assert "(a + b) * c - -d" in print_unit(tu)


def test_literals():
    tu = parse_source("int f() { g(0b1, 0x1F, 'a', \"s\" \"t\", 1.5f, true, 10UL); }")
    call = tu.function("f").body.stmts[0].expr
    assert [a.kind for a in call.args] == ["int", "int", "char", "string", "float", "bool", "int"]


def test_while_true_is_infinite():
    tu = parse_source("int main() { while (true) {} while ((1)) {} while (0) {} while (x) {} }")
    loops = tu.function("main").body.stmts
    assert [s.is_infinite for s in loops] == [True, True, False, False]


def test_define_names_are_globals():
    tu = parse_source("#define LIMIT 10\n#define SQ(x) ((x)*(x))\nint main() { return SQ(LIMIT); }\n")
    assert [name for g in tu.globals for name in g.names] == ["LIMIT", "SQ"]


def test_walk_reaches_nested_calls():
    tu = parse_source("int f() { if (a) { while (b) { g(h(1)); } } }")
    names = [x.name for x in walk(tu) if isinstance(x, n.Call)]
    assert names == ["g", "h"]


# -- generated programs -----------------------------------------------------------

idents = st.sampled_from(["a", "b", "pin", "state", "sLeft", "QTI_T"])
callees = st.sampled_from(["high", "low", "pause", "helper", "printf"])
literals = st.one_of(st.integers(0, 5000).map(str), st.sampled_from(["0b1", "0x1F", "'c'", '"txt"']))


def expressions():
    leaf = st.one_of(idents, literals)

    def extend(inner):
        return st.one_of(
            st.tuples(inner, st.sampled_from(["+", "-", "*", "<", "&&", "||", "==", ">>", "&"]), inner)
              .map(lambda t: f"{t[0]} {t[1]} {t[2]}"),
            inner.map(lambda e: f"({e})"),
            inner.map(lambda e: f"!{e}"),
            st.tuples(callees, st.lists(inner, max_size=3)).map(lambda t: f"{t[0]}({', '.join(t[1])})"),
            st.tuples(inner, inner, inner).map(lambda t: f"{t[0]} ? {t[1]} : {t[2]}"),
        )
    return st.recursive(leaf, extend, max_leaves=6)


comments = st.sampled_from(["", " // note", " /* c */"])


def statements():
    simple = st.one_of(
        st.tuples(expressions(), comments).map(lambda t: f"{t[0]};{t[1]}"),
        st.tuples(idents, expressions(), comments).map(lambda t: f"{t[0]} = {t[1]};{t[2]}"),
        st.tuples(idents, expressions()).map(lambda t: f"long {t[0]}x = {t[1]};"),
        st.just("break;"),
        st.just("return;"),
    )

    def extend(inner):
        block = st.lists(inner, max_size=3).map(lambda ss: "{\n" + "\n".join(ss) + "\n}")
        return st.one_of(
            st.tuples(expressions(), block).map(lambda t: f"if ({t[0]}) {t[1]}"),
            st.tuples(expressions(), block, block).map(lambda t: f"if ({t[0]}) {t[1]} else {t[2]}"),
            st.tuples(expressions(), inner).map(lambda t: f"if ({t[0]})\n{t[1]}"),
            st.tuples(expressions(), block).map(lambda t: f"while ({t[0]}) {t[1]}"),
            st.tuples(idents, block).map(lambda t: f"for ({t[0]} = 0; {t[0]} < 3; {t[0]}++) {t[1]}"),
        )
    return st.recursive(simple, extend, max_leaves=8)


programs = st.tuples(
    st.lists(st.sampled_from(['#include "simpletools.h"', "#include <stdio.h>", "#define N 4"]), max_size=3),
    st.lists(st.tuples(idents, literals).map(lambda t: f"int g_{t[0]} = {t[1]};"), max_size=3, unique=True),
    st.lists(statements(), max_size=6),
).map(lambda t: "\n".join(t[0] + t[1] + ["int main() {"] + t[2] + ["}"]) + "\n")


@settings(max_examples=150, deadline=None)
@given(programs)
def test_generated_programs_round_trip(src):
    tu = parse_source(src)
    again = parse_source(print_unit(tu))
    assert again == tu
    assert print_unit(again) == print_unit(tu)


@settings(max_examples=100, deadline=None)
@given(programs)
def test_generated_call_sites_match_text(src):
    tu = parse_source(src)
    calls = [x for x in walk(tu) if isinstance(x, n.Call)]
    assert sum(len(v) for v in tu.call_sites.values()) == len(calls)
    for name, sites in tu.call_sites.items():
        assert all(tu.function(s.function).span.contains(s.span) for s in sites)
        lines = [s.span.line for s in sites]
        assert lines == sorted(lines)
