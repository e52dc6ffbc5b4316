from .largesub import LargeSub, lemma_largesub
from .maxdegree import lemma_maxdegree, structure_events
from .report import PipelineReport
from .structure import (BallDecomposition, HStar, PathStructure, assemble_from_structure,
                        ball_decomposition, branchable_set, build_structure, sparsify_structure,
                        structure_violations, witness_is_star)
from .theorem import Case1Sample, theorem_main
from .unbalanced import lemma_unbalanced

__all__ = [
    "BallDecomposition", "Case1Sample", "HStar", "LargeSub", "PathStructure", "PipelineReport",
    "assemble_from_structure", "ball_decomposition", "branchable_set", "build_structure",
    "lemma_largesub", "lemma_maxdegree", "lemma_unbalanced", "sparsify_structure",
    "structure_events", "structure_violations", "theorem_main", "witness_is_star",
]
