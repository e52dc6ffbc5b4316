"""Success rate of the unbalanced-bipartite lemma over planted instances."""

import sys

from indsub.certify import verify_induced_subdivision
from indsub.errors import TrialsExhausted
from indsub.generators import gen_planted
from indsub.pipeline import lemma_unbalanced
from indsub.probabilistic import RandomSource
from indsub.profile import ConstantsProfile


def main(runs: int = 20) -> None:
    prof = ConstantsProfile.relaxed()
    wins = 0
    for seed in range(runs):
        inst = gen_planted("unbalanced", {"ratio": 20}, RandomSource(seed))
        try:
            cert = lemma_unbalanced(inst.graph, inst.roles["a"], inst.roles["b"], 3, prof,
                                    RandomSource(seed))
        except TrialsExhausted as exc:
            print(f"seed {seed}: {exc}")
            continue
        ok = verify_induced_subdivision(inst.graph, cert).valid_induced
        wins += ok
        print(f"seed {seed}: n={inst.graph.n} branch={cert.branch} induced={ok}")
    print(f"{wins}/{runs} verified")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 20)
