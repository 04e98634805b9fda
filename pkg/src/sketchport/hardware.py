"""Hardware model extraction from Fritzing sketches and board pin mapping.

Only the breadboard view of a plain ``.fz`` document is read::

    <module>
      <instances>
        <instance moduleIdRef="..." modelIndex="...">
          <title>LED1</title>
          <views><breadboardView><connectors>
            <connector connectorId="connector0" name="anode">
              <connects><connect connectorId="connector1" modelIndex="42"/></connects>
            </connector>
          </connectors></breadboardView></views>
        </instance>
      </instances>
    </module>

Wire instances (``moduleIdRef`` starting with ``WireModule``) are collapsed
into direct connector-to-connector edges. The optional ``name`` attribute on a
connector is its label (board pin number); it defaults to ``connectorId``.
"""

import re
import xml.etree.ElementTree as ET
from collections import deque
from dataclasses import dataclass

from .errors import MultipleBoards, NoBoard, UnknownComponentType, XmlSyntaxError
from .kb import ComponentType

WIRE_PREFIX = "WireModule"
# Fritzing annotation items with no electrical meaning.
IGNORED_PREFIXES = ("NoteModuleID", "RulerModuleID", "Logo", "SchematicLogo", "SchematicFrame")

_KEY_STRIP = re.compile(r"[^A-Za-z0-9_-]")


def sanitize_key(text):
    """Keep alphanumerics, ``_`` and ``-``: 'Red633nm-LED1' stays intact."""
    return _KEY_STRIP.sub("", text)


class Connector:
    __slots__ = ("id", "name", "parent", "connected_to")

    def __init__(self, id, name, parent):
        self.id = id
        self.name = name
        self.parent = parent
        self.connected_to = ()

    @property
    def qualified_name(self):
        return sanitize_key(self.parent.title) + sanitize_key(self.name)

    def __repr__(self):
        return f"<Connector {self.parent.title}.{self.name}>"


class Component:
    __slots__ = ("id", "title", "module_id", "ctype", "canonical_name", "connectors")

    def __init__(self, id, title, module_id, ctype, canonical_name):
        self.id = id
        self.title = title
        self.module_id = module_id
        self.ctype = ctype
        self.canonical_name = canonical_name
        self.connectors = ()

    def __repr__(self):
        return f"<Component {self.title} {self.ctype.value}>"


@dataclass(frozen=True)
class HardwareModel:
    components: tuple
    board: Component
    node_count: int
    edge_count: int

    @property
    def board_connector_count(self):
        return len(self.board.connectors)

    @property
    def io_components(self):
        return [c for c in self.components if c.ctype.is_io]

    def component(self, title):
        return next((c for c in self.components if c.title == title), None)


@dataclass(frozen=True)
class MappingEntry:
    board_connector: Connector
    endpoint: Connector

    @property
    def key(self):
        return self.endpoint.qualified_name

    @property
    def pin(self):
        return self.board_connector.name


@dataclass(frozen=True)
class MappingsSet:
    entries: tuple
    visit_count: int = 0
    pop_count: int = 0

    def pairs(self):
        """``[(endpoint key, board pin label), ...]`` in traversal order."""
        return [(e.key, e.pin) for e in self.entries]

    @property
    def pin_map(self):
        return dict(self.pairs())

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def _resolve(repo, module_id, title):
    for key in (module_id, title):
        if key:
            rec = repo.record_for(key)
            if rec is not None:
                return rec
    return None


def parse_fritzing(xml, repo):
    """Build the :class:`HardwareModel` of a Fritzing sketch."""
    try:
        root = ET.fromstring(xml)
    except ET.ParseError as exc:
        raise XmlSyntaxError(f"invalid sketch XML: {exc}") from exc
    if root.tag != "module":
        raise XmlSyntaxError(f"expected root element <module>, found <{root.tag}>")

    components, by_index, unresolved = [], {}, []
    wires = {}
    raw_links = []  # ((modelIndex, connectorId), (modelIndex, connectorId))
    for inst in root.iterfind("instances/instance"):
        module_id = inst.get("moduleIdRef", "")
        index = inst.get("modelIndex")
        if module_id.startswith(IGNORED_PREFIXES):
            continue
        if index is None:
            raise XmlSyntaxError(f"instance {module_id!r} has no modelIndex")
        if index in by_index or index in wires:
            raise XmlSyntaxError(f"duplicate modelIndex {index}")
        title = (inst.findtext("title") or "").strip()
        conn_elems = inst.findall("views/breadboardView/connectors/connector")
        for ce in conn_elems:
            cid = ce.get("connectorId")
            if cid is None:
                raise XmlSyntaxError(f"connector without connectorId in instance {index}")
            for link in ce.iterfind("connects/connect"):
                target = (link.get("modelIndex"), link.get("connectorId"))
                if None in target:
                    raise XmlSyntaxError(f"incomplete connect record in instance {index}")
                raw_links.append(((index, cid), target))
        if module_id.startswith(WIRE_PREFIX):
            wires[index] = [ce.get("connectorId") for ce in conn_elems]
            continue
        rec = _resolve(repo, module_id, title)
        if rec is None or rec.ctype is ComponentType.UNKNOWN:
            unresolved.append((index, module_id, title))
            continue
        comp = Component(index, title or module_id, module_id, rec.ctype, rec.canonical_name)
        conns, seen = [], set()
        for ce in conn_elems:
            cid = ce.get("connectorId")
            if cid in seen:
                raise XmlSyntaxError(f"duplicate connector {cid!r} in instance {index}")
            seen.add(cid)
            conns.append(Connector(cid, ce.get("name") or cid, comp))
        comp.connectors = conns
        components.append(comp)
        by_index[index] = comp
    if unresolved:
        raise UnknownComponentType(unresolved)

    boards = [c for c in components if c.ctype is ComponentType.BOARD]
    if not boards:
        raise NoBoard("sketch contains no board component")
    if len(boards) > 1:
        raise MultipleBoards("sketch contains several boards: " + ", ".join(b.title for b in boards))

    # node lookup; connectors referenced only from the other side get created on demand
    lookup = {(c.id, k.id): k for c in components for k in c.connectors}

    def node(ref):
        idx, cid = ref
        if idx in wires:
            return ("wire", idx, cid)
        comp = by_index.get(idx)
        if comp is None:
            raise XmlSyntaxError(f"connect record refers to unknown instance {idx}")
        if ref not in lookup:
            k = Connector(cid, cid, comp)
            comp.connectors.append(k)
            lookup[ref] = k
        return lookup[ref]

    adj = {}

    def link(a, b):
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)

    for a, b in raw_links:
        link(node(a), node(b))
    for idx, ends in wires.items():
        for a, b in zip(ends, ends[1:]):
            link(("wire", idx, a), ("wire", idx, b))

    # collapse wire chains: connector -> connectors reachable through wire nodes only
    peers = {}
    for start in (k for c in components for k in c.connectors):
        found, seen = [], {start}
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            for nxt in adj.get(cur, ()):
                if nxt in seen:
                    continue
                seen.add(nxt)
                if isinstance(nxt, tuple):
                    queue.append(nxt)
                else:
                    found.append(nxt)
        peers[start] = found

    edges = set()
    for c in components:
        c.connectors = tuple(c.connectors)
        for k in c.connectors:
            k.connected_to = tuple(peers[k])
            for p in k.connected_to:
                edges.add(frozenset((id(k), id(p))))
    return HardwareModel(
        components=tuple(components),
        board=boards[0],
        node_count=sum(len(c.connectors) for c in components),
        edge_count=len(edges),
    )


def analyse_hardware_platform(model):
    """Map every board connector to the input/output connectors it reaches.

    One depth-first search per board connector, in declared order. Passive
    parts are traversed through all of their connectors; board connectors
    only through their wires; input/output connectors end a path.
    """
    entries, visits, pops = [], 0, 0
    for c in model.board.connectors:
        stack, visited = [c], set()
        while stack:
            d = stack.pop()
            pops += 1
            if d in visited:
                continue
            visited.add(d)
            visits += 1
            parent = d.parent
            if parent.ctype.is_io:
                entries.append(MappingEntry(c, d))
                continue
            frontier = list(d.connected_to)
            if parent.ctype is not ComponentType.BOARD:
                frontier += parent.connectors
            stack.extend(reversed(frontier))
    return MappingsSet(tuple(entries), visits, pops)


def visit_count(model):
    """Connectors visited (first-time dequeues) over all board seeds."""
    return analyse_hardware_platform(model).visit_count
