"""Record the data behind the unresolved questions, without judging it.

* free-model associativity: lowest failing degree for each bound;
* the Sp(2) series: residual degrees for both root configurations;
* the first and third Chern class comparisons for the quaternion group:
  their Chow images reduced modulo the six relations, and their lowest
  terms in the universal models.
"""

import argparse
import json
import os

from lazard.chern import sp2_series
from lazard.fgl import build_model, check_axioms
from lazard.presentations import GradedPresentation, bq_auxiliary, chow_specialize, present, reduce_modulo


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-D", type=int, default=6)
    ap.add_argument("-o", default="results/open_questions.json")
    args = ap.parse_args()

    out = {"bound": args.D}
    out["free_associativity_failure_degree"] = {
        str(D): check_axioms(build_model("free", D)).failures["associativity"] for D in range(1, args.D + 1)}

    sp2 = {}
    for config in ("triple", "paired"):
        for kind in ("add", "mult", "free", "log"):
            r = sp2_series(build_model(kind, args.D), config=config)
            sp2[f"{config}/{kind}"] = {
                "residual1_degree": r.residual1.lowest_degree(),
                "residual3_degree": r.residual3.lowest_degree(),
                "residual1_lowest": r.residual1.homogeneous_part(r.residual1.lowest_degree() or 0).to_text(),
                "residual3_lowest": r.residual3.homogeneous_part(r.residual3.lowest_degree() or 0).to_text(),
            }
    out["sp2"] = sp2

    bq = {}
    for kind in ("free", "log"):
        F = build_model(kind, args.D)
        ch = chow_specialize(present("Q8", F))
        for name, s in bq_auxiliary(F).items():
            img = chow_specialize(GradedPresentation(ch.coefficient, ch.generators, (s,))).relations
            reduced = reduce_modulo(img[0], ch).to_text() if img else "0"
            low = s.lowest_degree()
            bq[f"{kind}/{name}"] = {
                "lowest_degree": low,
                "lowest_part": s.homogeneous_part(low).to_text() if low is not None else "0",
                "chow_image_mod_relations": reduced,
            }
    out["bq_auxiliary"] = bq

    os.makedirs(os.path.dirname(args.o) or ".", exist_ok=True)
    with open(args.o, "w", encoding="utf-8") as fh:
        json.dump(out, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(json.dumps(out, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
