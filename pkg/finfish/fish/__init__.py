from .surface import ComplexBuilder, FishComplex, SideKind
from .terms import FishTerm, parse_term
from .grammar import build, decompose, enumerate_terms, joint_distribution
