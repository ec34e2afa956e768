#!/usr/bin/env python3
"""Rank the embeddings of a small complete graph by average comfortability.

Writes one CSV row per embedding class with the averaged energy at each
requested coin parameter and the a -> 1 limit coefficient, best first.
The default reproduces the K4 ranking at a = 0.98.

Usage:
    python scripts/rank_embeddings.py [--graph K4] [--a 0.98 --a 0.7] [--out ranking.csv]
"""

import argparse
import sys

from surfwalk.comfortability import limit_comfortability, positive_coin_average
from surfwalk.enumeration import enumerate_embeddings, rank_by_comfortability
from surfwalk.graph_core import complete_graph


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--graph", default="K4", help="complete graph, e.g. K4")
    parser.add_argument("--a", type=float, action="append", dest="a_values")
    parser.add_argument("--out", default=None)
    args = parser.parse_args(argv)

    n = int(args.graph.lstrip("Kk"))
    a_values = args.a_values or [0.98]
    classes = enumerate_embeddings(complete_graph(n))
    ranked = rank_by_comfortability(classes, a_values[0])

    lines = ["label,orientable,genus,faces,limit," + ",".join(f"avg_a={a:g}" for a in a_values)]
    for r in ranked:
        cls = r.embedding
        avgs = [positive_coin_average(cls.decomposition, a) for a in a_values]
        lines.append(
            ",".join(
                [
                    cls.label.replace(",", " "),
                    str(cls.orientable).lower(),
                    str(cls.genus),
                    " ".join(map(str, cls.face_lengths)),
                    f"{limit_comfortability(cls.decomposition):.12g}",
                ]
                + [f"{v:.12g}" for v in avgs]
            )
        )
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        print(text, end="")


if __name__ == "__main__":
    main()
