"""Weakly irreducible subalgebras of so(1,k+1)_{Rp} and their codimension-one ideals."""

from src.classifier.bridge import LorentzianClassification, classify_holonomy_pair
from src.classifier.catalog import CorpusEntry, block_sum, corpus, embed, is_bracket_closed_exact, so, su2, u2
from src.classifier.decomposition import Decomposition, IrreducibleBlock, irreducible_decomposition
from src.classifier.ideal_cases import IdealCaseLabel, classify_codim1_ideal, codim1_ideal_representatives
from src.classifier.triples import SoTriple, algebra_from_triples, triple_bracket, triples_of
from src.classifier.types import HolonomyTypeDescriptor, make_type, make_type_triples, recognize_type

__all__ = [
    "CorpusEntry",
    "Decomposition",
    "HolonomyTypeDescriptor",
    "IdealCaseLabel",
    "IrreducibleBlock",
    "LorentzianClassification",
    "SoTriple",
    "algebra_from_triples",
    "block_sum",
    "classify_codim1_ideal",
    "classify_holonomy_pair",
    "codim1_ideal_representatives",
    "corpus",
    "embed",
    "irreducible_decomposition",
    "is_bracket_closed_exact",
    "make_type",
    "make_type_triples",
    "recognize_type",
    "so",
    "su2",
    "triple_bracket",
    "triples_of",
    "u2",
]
