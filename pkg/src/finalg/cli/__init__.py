"""Workspace language, command runner and reports."""

from .dsl import DSLError, Document, parse, print_doc
from .main import main
from .report import Report, run_doc
from .serialize import algebra_from_json, algebra_to_json, jsonable

__all__ = ["DSLError", "Document", "parse", "print_doc", "main", "Report", "run_doc",
           "algebra_from_json", "algebra_to_json", "jsonable"]
