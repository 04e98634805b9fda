"""Shared builders for tests: Fritzing XML, random wiring, header corpora."""

import random
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path

FIXTURES = Path(__file__).parent / "fixtures"
REPO_DIR = FIXTURES / "repo"
SOURCES = FIXTURES / "sources"
SKETCHES = FIXTURES / "sketches"

BOARD_MODULE = "arduino_Uno_Rev3(fix)"
PASSIVE_MODULE = "ResistorModuleID"
IO_MODULES = ("ServoModuleID", "5mmColorLEDModuleID", "ParallaxQTIModuleID")


@dataclass
class Part:
    index: str
    module: str
    title: str
    connectors: list  # [(connectorId, name)]


@dataclass
class Sketch:
    parts: list = field(default_factory=list)
    links: list = field(default_factory=list)  # ((index, cid), (index, cid))
    wired: set = field(default_factory=set)  # link positions rendered through wires

    def xml(self):
        """Render as a Fritzing module; links in ``wired`` go through a
        two-segment wire chain, the others are direct connects."""
        root = ET.Element("module")
        insts = ET.SubElement(root, "instances")
        conn_elems = {}
        parts = list(self.parts)
        direct = []
        wire_no = 0
        for i, (a, b) in enumerate(self.links):
            if i not in self.wired:
                direct.append((a, b))
                continue
            w1, w2 = f"w{wire_no}", f"w{wire_no + 1}"
            wire_no += 2
            parts.append(Part(w1, "WireModuleID", "Wire", [("connector0", None), ("connector1", None)]))
            parts.append(Part(w2, "WireModuleID", "Wire", [("connector0", None), ("connector1", None)]))
            direct += [(a, (w1, "connector0")), ((w1, "connector1"), (w2, "connector0")),
                       ((w2, "connector1"), b)]
        for p in parts:
            inst = ET.SubElement(insts, "instance", moduleIdRef=p.module, modelIndex=p.index)
            ET.SubElement(inst, "title").text = p.title
            conns = ET.SubElement(ET.SubElement(ET.SubElement(inst, "views"), "breadboardView"),
                                  "connectors")
            for cid, name in p.connectors:
                attrs = {"connectorId": cid}
                if name is not None:
                    attrs["name"] = name
                conn_elems[(p.index, cid)] = ET.SubElement(conns, "connector", attrs)
        for a, b in direct:
            elem = conn_elems[a]
            connects = elem.find("connects")
            if connects is None:
                connects = ET.SubElement(elem, "connects")
            ET.SubElement(connects, "connect", connectorId=b[1], modelIndex=b[0])
        return ET.tostring(root, encoding="unicode")


def random_sketch(rng, max_board=5, max_passive=4, max_io=4, max_links=14):
    board_n = rng.randint(1, max_board)
    parts = [Part("b", BOARD_MODULE, "Board", [(f"connector{i}", f"P{i}") for i in range(board_n)])]
    for k in range(rng.randint(0, max_passive)):
        parts.append(Part(f"r{k}", PASSIVE_MODULE, f"R{k}",
                          [(f"pin{j}", f"pin{j}") for j in range(rng.randint(2, 3))]))
    for k in range(rng.randint(0, max_io)):
        parts.append(Part(f"d{k}", rng.choice(IO_MODULES), f"Dev{k}",
                          [(f"c{j}", f"c{j}") for j in range(rng.randint(1, 3))]))
    nodes = [(p.index, cid) for p in parts for cid, _ in p.connectors]
    links, seen = [], set()
    for _ in range(rng.randint(0, max_links)):
        a, b = rng.sample(nodes, 2) if len(nodes) > 1 else (nodes[0], nodes[0])
        if a == b or frozenset((a, b)) in seen:
            continue
        seen.add(frozenset((a, b)))
        links.append((a, b))
    wired = {i for i in range(len(links)) if rng.random() < 0.4}
    return Sketch(parts, links, wired)


def closure_mappings(sketch):
    """Brute-force oracle: Warshall transitive closure over the step relation
    (any non-I/O connector steps to its link peers; passive connectors also
    step to their siblings), then pair every board connector with the
    reachable I/O connectors."""
    kind = {}
    for p in sketch.parts:
        k = "board" if p.module == BOARD_MODULE else "passive" if p.module == PASSIVE_MODULE else "io"
        for cid, _ in p.connectors:
            kind[(p.index, cid)] = k
    nodes = sorted(kind)
    pos = {v: i for i, v in enumerate(nodes)}
    n = len(nodes)
    reach = [[False] * n for _ in range(n)]
    for a, b in sketch.links:
        for u, v in ((a, b), (b, a)):
            if kind[u] != "io":
                reach[pos[u]][pos[v]] = True
    for p in sketch.parts:
        if p.module == PASSIVE_MODULE:
            for c1, _ in p.connectors:
                for c2, _ in p.connectors:
                    if c1 != c2:
                        reach[pos[(p.index, c1)]][pos[(p.index, c2)]] = True
    for k in range(n):
        for i in range(n):
            if reach[i][k]:
                for j in range(n):
                    if reach[k][j]:
                        reach[i][j] = True
    out = set()
    for u in nodes:
        if kind[u] == "board":
            for v in nodes:
                if kind[v] == "io" and reach[pos[u]][pos[v]]:
                    out.add((u, v))
    return out


def random_corpus(rng, docs=None, vocab=None, max_tokens=200):
    """``[(filename, text, generating words)]``; the word list lets an oracle
    count terms without going through the tokenizer."""
    vocab = vocab or ["servo", "sensor", "qti", "pin", "motor", "led", "temp", "humid", "read", "write",
                      "attach", "begin", "wire", "spi", "dht"]
    docs = docs or rng.randint(1, 10)
    out = []
    for i in range(docs):
        words = []
        for _ in range(rng.randint(0, max_tokens)):
            w = rng.choice(vocab)
            style = rng.random()
            words.append(w.upper() if style < 0.2 else w.capitalize() if style < 0.4 else w)
        sep = rng.choice([" ", "_", "(", ";\n"])
        out.append((f"Lib{i}.h", sep.join(words), [w.lower() for w in words]))
    return out


def seeded(seed):
    return random.Random(seed)
