"""Declarative model files: parsing, documents, queries, rendering."""

from .documents import (
    ModelDocument,
    NodeStat,
    QueryResult,
    ResultTable,
    build_document,
    load_model,
    loads,
)
from .parser import parse_model

__all__ = [
    "ModelDocument",
    "NodeStat",
    "QueryResult",
    "ResultTable",
    "build_document",
    "load_model",
    "loads",
    "parse_model",
]
