"""Independent checker for termination and nontermination proofs of term rewrite systems."""

from .certifier import CertResult, certify, certify_texts
from .formats import ProblemDoc, parse_problem, parse_proof, read_problem, read_proof, serialize
from .xmltree import ParseError, parse_xml

__all__ = [
    "CertResult",
    "ParseError",
    "ProblemDoc",
    "certify",
    "certify_texts",
    "parse_problem",
    "parse_proof",
    "parse_xml",
    "read_problem",
    "read_proof",
    "serialize",
]
