"""Run the dispatcher on planted case-1, case-2 and dense-escape instances
and print the pipeline report for each."""

import sys

from indsub.certify import verify_induced_subdivision
from indsub.generators import gen_planted
from indsub.pipeline import PipelineReport, theorem_main
from indsub.probabilistic import RandomSource
from indsub.profile import ConstantsProfile

RELAXED = ConstantsProfile.relaxed()
# the dense escape needs hubs above the A-vertex degree and a tight peel claim
ESCAPE = RELAXED.with_overrides(case1_b_degree=31, girth_theorem=5, case2_peel=3, case2_claim=1)


def main(seed: int = 7) -> None:
    for kind, prof in (("case1", RELAXED), ("case2", RELAXED), ("adense", ESCAPE)):
        inst = gen_planted(kind, None, RandomSource(seed), prof)
        rep = PipelineReport()
        cert = theorem_main(inst.graph, 3, prof, RandomSource(seed), report=rep)
        ok = verify_induced_subdivision(inst.graph, cert).valid_induced
        print(f"== {kind}: n={inst.graph.n} m={inst.graph.m} branch={cert.branch} induced={ok}")
        print(rep.to_text())


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 7)
