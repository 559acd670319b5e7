"""Print the six quaternion relation series, their Chow images and graded pieces."""

import argparse

from lazard.fgl import build_model
from lazard.presentations import bq_relations, chow_specialize, graded_component, present, reduce_modulo


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--model", default="free", choices=["free", "log", "add", "mult"])
    ap.add_argument("-D", type=int, default=4)
    ap.add_argument("--degrees", type=int, default=4, help="print graded pieces up to this degree")
    args = ap.parse_args()

    F = build_model(args.model, args.D)
    for k, r in enumerate(bq_relations(F), start=1):
        print(f"R{k} = {r.to_text()}")
    ch = chow_specialize(present("Q8", F))
    print()
    for k, r in enumerate(ch.relations, start=1):
        print(f"Chow image of R{k}: {r.to_text()}")
    red = reduce_modulo(ch.relations[4], ch, ch.relations[:4])
    print(f"R5 modulo R1..R4: {red.to_text()}")
    print()
    for d in range(args.degrees + 1):
        c = graded_component(ch, d)
        print(f"degree {d}: rank {c.rank}, torsion {list(c.torsion)}")


if __name__ == "__main__":
    main()
