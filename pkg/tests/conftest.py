"""Shared fixtures: the hand-built two-version project and random generators.

The two-version fixture is the end-to-end workhorse: version 1 has two
windows and eleven widgets; version 2 removes one button, adds another,
changes the body of one save-path callee, and drops one call edge. Every
expected value asserted against it was derived by replaying the matching,
slicing, and diffing rules by hand.
"""

from __future__ import annotations

import json
import random
from pathlib import Path

import pytest

from evotrack.classify import CategorizedCallGraph
from evotrack.model import CallGraph, Category, MethodRecord
from evotrack.textdiff import method_fingerprint

# Application method signatures used by the fixture.
H_SAVE = "com.app.Handlers#saveAction(java.awt.event.ActionEvent):void"
H_LOAD = "com.app.Handlers#loadAction(java.awt.event.ActionEvent):void"
H_ABOUT = "com.app.Handlers#aboutAction(java.awt.event.ActionEvent):void"
PERSIST = "com.app.SaveService#persist(java.lang.String):void"
DB_WRITE = "com.app.Db#write(java.lang.String):boolean"
ENCODE = "com.app.Fmt#encode(java.lang.String):java.lang.String"
FETCH = "com.app.LoadService#fetch():java.lang.String"
PARSE = "com.app.Parser#parse(java.lang.String):com.app.Doc"
DOC_INIT = "com.app.Doc#init():void"
ABOUT_SHOW = "com.app.AboutDialog#show():void"
LOGGER_INFO = "java.util.logging.Logger#info(java.lang.String):void"
PLATFORM_HANDLER = "javax.swing.plaf.basic.BasicTextUI#installUI(javax.swing.JComponent):void"

FMT_JAVA_V1 = """\
package com.app;

public class Fmt {
    public String encode(String raw) {
        String trimmed = raw.trim();
        return "[" + trimmed + "]";
    }
}
"""

FMT_JAVA_V2 = FMT_JAVA_V1.replace('return "[" + trimmed + "]";', 'return "<" + trimmed + ">";')

SAVESERVICE_JAVA = """\
package com.app;

public class SaveService {
    public void persist(String name) {
        String encoded = new Fmt().encode(name);
        store(encoded);
    }
}
"""

ENCODE_SPAN = {"path": "com/app/Fmt.java", "start_line": 4, "end_line": 7}
PERSIST_SPAN = {"path": "com/app/SaveService.java", "start_line": 4, "end_line": 7}


def _span_lines(text: str, span: dict) -> list[str]:
    return text.splitlines()[span["start_line"] - 1 : span["end_line"]]


def widget(wid, cls, props=None, handlers=(), children=(), screenshot=None):
    payload = {
        "id": wid,
        "class": cls,
        "properties": props or {},
        "handlers": list(handlers),
        "children": list(children),
    }
    if screenshot is not None:
        payload["screenshot"] = screenshot
    return payload


def gui_model_payload(version: int) -> dict:
    main_children = [
        widget("btn_save", "javax.swing.JButton", {"text": "Save"}, [H_SAVE]),
        widget("btn_load", "javax.swing.JButton", {"text": "Load"}, [H_LOAD]),
        widget("btn_delete", "javax.swing.JButton", {"text": "Delete"}),
        widget("fld_name", "javax.swing.JTextField", {"name": "nameField"}, [PLATFORM_HANDLER]),
        widget("lbl_title", "javax.swing.JLabel", {"text": "Document Editor"}),
        widget("lbl_status", "javax.swing.JLabel", {"text": "Ready"}),
    ]
    if version == 2:
        main_children = [c for c in main_children if c["id"] != "btn_delete"]
        main_children.insert(
            2, widget("btn_export", "javax.swing.JButton", {"text": "Export"})
        )
    about_children = [
        widget("btn_about_ok", "javax.swing.JButton", {"text": "OK"}, [H_ABOUT]),
        widget("lbl_version", "javax.swing.JLabel", {"text": "Version 1.0"}),
        widget("lbl_author", "javax.swing.JLabel", {"text": "The App Team"}),
    ]
    return {
        "windows": [
            {
                "title": "Main",
                "class": "javax.swing.JFrame",
                "root": widget(
                    "p_main", "javax.swing.JPanel", {"name": "mainPanel"},
                    children=main_children,
                ),
            },
            {
                "title": "About",
                "class": "javax.swing.JDialog",
                "root": widget(
                    "p_about", "javax.swing.JPanel", {"name": "aboutPanel"},
                    children=about_children,
                ),
            },
        ]
    }


def call_graph_payload(version: int) -> dict:
    fmt_java = FMT_JAVA_V1 if version == 1 else FMT_JAVA_V2
    methods = [
        {"sig": H_SAVE, "fingerprint": "00000000000000a1"},
        {"sig": PERSIST, "fingerprint": method_fingerprint(_span_lines(SAVESERVICE_JAVA, PERSIST_SPAN)), "source": PERSIST_SPAN},
        {"sig": DB_WRITE, "fingerprint": "00000000000000a3"},
        {"sig": ENCODE, "fingerprint": method_fingerprint(_span_lines(fmt_java, ENCODE_SPAN)), "source": ENCODE_SPAN},
        {"sig": H_LOAD, "fingerprint": "00000000000000a5"},
        {"sig": FETCH, "fingerprint": "00000000000000a6"},
        {"sig": PARSE, "fingerprint": "00000000000000a7"},
        {"sig": DOC_INIT, "fingerprint": "00000000000000a8"},
        {"sig": H_ABOUT, "fingerprint": "00000000000000a9"},
        {"sig": ABOUT_SHOW, "fingerprint": "00000000000000aa"},
        {"sig": LOGGER_INFO, "fingerprint": "00000000000000ab"},
    ]
    edges = [
        [H_SAVE, PERSIST],
        [PERSIST, DB_WRITE],
        [PERSIST, ENCODE],
        [PERSIST, LOGGER_INFO],
        [H_LOAD, FETCH],
        [FETCH, PARSE],
        [PARSE, DOC_INIT],
        [H_ABOUT, ABOUT_SHOW],
    ]
    if version == 2:
        edges = [e for e in edges if e != [PERSIST, DB_WRITE]]
    return {"methods": methods, "edges": edges}


RULES_PAYLOAD = {
    "rules": [{"prefix": "com.app.", "category": "application"}],
    "default": "library",
}


def write_version(root: Path, version: int) -> Path:
    """Write one complete project version under ``root``; returns the manifest path."""
    root.mkdir(parents=True, exist_ok=True)
    (root / "gui.json").write_text(json.dumps(gui_model_payload(version), indent=2))
    (root / "callgraph.json").write_text(json.dumps(call_graph_payload(version), indent=2))
    (root / "rules.json").write_text(json.dumps(RULES_PAYLOAD, indent=2))
    src = root / "src" / "com" / "app"
    src.mkdir(parents=True, exist_ok=True)
    (src / "Fmt.java").write_text(FMT_JAVA_V1 if version == 1 else FMT_JAVA_V2)
    (src / "SaveService.java").write_text(SAVESERVICE_JAVA)
    manifest = root / "project.json"
    manifest.write_text(
        json.dumps(
            {
                "version_label": f"v{version}",
                "gui_model": "gui.json",
                "call_graph": "callgraph.json",
                "rules": "rules.json",
                "source_root": "src",
            },
            indent=2,
        )
    )
    return manifest


@pytest.fixture
def two_version_projects(tmp_path: Path) -> tuple[Path, Path]:
    return write_version(tmp_path / "v1", 1), write_version(tmp_path / "v2", 2)


@pytest.fixture
def v1_project(tmp_path: Path) -> Path:
    return write_version(tmp_path / "v1", 1)


# ---------------------------------------------------------------------------
# random generators (plain `random`, seeded by the caller)

def random_categorized_graph(
    rng: random.Random, max_nodes: int = 200, max_edges: int = 800
) -> tuple[CategorizedCallGraph, str]:
    """Random digraph with random categories; node 0 is always an
    application method, returned as the handler root."""
    n = rng.randint(1, max_nodes)
    sigs = [f"app.C{i}#m{i}():void" for i in range(n)]
    categories = {}
    for i, sig in enumerate(sigs):
        if i == 0:
            categories[sig] = Category.APPLICATION
        else:
            categories[sig] = rng.choice(
                [Category.APPLICATION, Category.LIBRARY, Category.FRAMEWORK]
            )
    edge_count = rng.randint(0, max_edges)
    edges = set()
    for _ in range(edge_count):
        edges.add((rng.choice(sigs), rng.choice(sigs)))
    graph = CallGraph(
        methods=tuple(MethodRecord(sig=s, fingerprint="0" * 16) for s in sigs),
        edges=frozenset(edges),
    )
    return CategorizedCallGraph(graph=graph, category_of=categories), sigs[0]


def random_slice_pair(rng: random.Random, max_nodes: int = 40, max_edges: int = 120):
    """Two slices of the same root over mutated graph versions, plus
    fingerprint maps. Suitable for diff-algebra and condensation laws."""
    base, root = random_categorized_graph(rng, max_nodes=max_nodes, max_edges=max_edges)
    sigs = [rec.sig for rec in base.graph.methods]
    old_fp = {s: f"{rng.randrange(16**16):016x}" for s in sigs}
    new_fp = dict(old_fp)
    for s in sigs:
        if rng.random() < 0.2:
            new_fp[s] = f"{rng.randrange(16**16):016x}"

    edges = set(base.graph.edges)
    mutated = set(edges)
    for edge in list(mutated):
        if rng.random() < 0.2:
            mutated.discard(edge)
    for _ in range(rng.randint(0, 10)):
        mutated.add((rng.choice(sigs), rng.choice(sigs)))

    from evotrack.slicer import slice_handler

    old_graph = base
    new_graph = CategorizedCallGraph(
        graph=CallGraph(methods=base.graph.methods, edges=frozenset(mutated)),
        category_of=base.category_of,
    )
    return (
        slice_handler(old_graph, root),
        slice_handler(new_graph, root),
        old_fp,
        new_fp,
    )


def random_gui_payload(rng: random.Random, n_windows: int = 2, max_children: int = 4):
    """Random GUI model payload with unique ids and occasionally colliding keys."""
    counter = [0]

    def make_widget(depth: int) -> dict:
        counter[0] += 1
        wid = f"w{counter[0]}"
        cls = rng.choice(["javax.swing.JButton", "javax.swing.JLabel", "javax.swing.JPanel"])
        props = {}
        if rng.random() < 0.9:
            props["text"] = rng.choice(["Save", "Load", "Quit", "Help", "Edit", wid])
        if rng.random() < 0.3:
            props["name"] = f"name{rng.randint(0, 5)}"
        if rng.random() < 0.4:
            props["bounds"] = f"{rng.randint(0, 100)},{rng.randint(0, 100)}"
        handlers = []
        if rng.random() < 0.3:
            handlers.append(f"com.app.H#h{rng.randint(0, 9)}():void")
        children = []
        if depth < 3:
            for _ in range(rng.randint(0, max_children)):
                children.append(make_widget(depth + 1))
        return widget(wid, cls, props, handlers, children)

    windows = []
    for i in range(n_windows):
        windows.append(
            {
                "title": f"Window {i}",
                "class": "javax.swing.JFrame",
                "root": make_widget(0),
            }
        )
    return {"windows": windows}


def mutate_gui_payload(rng: random.Random, payload: dict) -> dict:
    """Structural mutation: drop some leaves, add some widgets, tweak texts."""
    payload = json.loads(json.dumps(payload))
    counter = [10_000]

    def visit(node: dict) -> dict | None:
        node["children"] = [
            c for c in (visit(child) for child in node["children"]) if c is not None
        ]
        if not node["children"] and rng.random() < 0.15:
            return None
        if rng.random() < 0.1:
            counter[0] += 1
            node["children"].append(
                widget(f"m{counter[0]}", "javax.swing.JButton", {"text": f"New{counter[0]}"})
            )
        if rng.random() < 0.1 and "text" in node["properties"]:
            node["properties"]["text"] = node["properties"]["text"] + "!"
        return node

    for window in payload["windows"]:
        visit(window["root"])
    return payload
