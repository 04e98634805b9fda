"""Front end for the supported C subset: lexer, AST, parser and printer."""

from .nodes import TranslationUnit, walk
from .parser import parse_source
from .printer import print_unit, signature_text

__all__ = ["TranslationUnit", "parse_source", "print_unit", "signature_text", "walk"]
