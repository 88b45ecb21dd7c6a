"""Method categorization: application, library, or framework code."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .model import CallGraph, Category, ClassificationRules, MethodSig

# Tested only after the user's own rules, so instrumented platform builds
# can still be re-categorized.
BUILTIN_FRAMEWORK_PREFIXES = ("java.", "javax.", "sun.", "com.sun.", "jdk.")


def categorize(sig: MethodSig, rules: ClassificationRules) -> Category:
    """Category of one method: first matching rule prefix wins.

    Prefixes match against the ``package.Class`` part of the signature.
    When no user rule matches, the built-in platform prefixes map to
    framework; everything else gets the rules' default category.
    """
    owner = sig.split("#", 1)[0]
    for prefix, category in rules.rules:
        if owner.startswith(prefix):
            return category
    for prefix in BUILTIN_FRAMEWORK_PREFIXES:
        if owner.startswith(prefix):
            return Category.FRAMEWORK
    return rules.default_category


@dataclass(frozen=True)
class CategorizedCallGraph:
    """A call graph plus a total method-to-category mapping."""

    graph: CallGraph
    category_of: Mapping[MethodSig, Category]

    def __post_init__(self) -> None:
        missing = [rec.sig for rec in self.graph.methods if rec.sig not in self.category_of]
        if missing:
            raise ValueError(f"category mapping not total, missing: {missing[:3]}")


def annotate_graph(graph: CallGraph, rules: ClassificationRules) -> CategorizedCallGraph:
    """Categorize every method of the graph. Deterministic for fixed inputs."""
    return CategorizedCallGraph(
        graph=graph,
        category_of={rec.sig: categorize(rec.sig, rules) for rec in graph.methods},
    )
