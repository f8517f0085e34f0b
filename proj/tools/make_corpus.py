#!/usr/bin/env python3
"""Writes data/corpus/*.wld from braid words."""
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "tests" / "oracle"))
from braids import closure, render  # noqa: E402

CORPUS = {
    "unknot": ([], 1, "one crossing-free circle"),
    "unlink2": ([], 2, "two crossing-free circles"),
    "hopf_pos": ([(0, "+"), (0, "+")], 2, "positive Hopf link"),
    "hopf_neg": ([(0, "-"), (0, "-")], 2, "negative Hopf link"),
    "vhopf": ([(0, "+"), (0, "v")], 2, "one virtual, one positive crossing"),
    "trefoil": ([(0, "+")] * 3, 2, "right-handed trefoil"),
    "figure8": ([(0, "+"), (1, "-"), (0, "+"), (1, "-")], 3, "figure-eight knot"),
    "vtrefoil": ([(0, "+"), (0, "+"), (0, "v")], 2, "virtual trefoil"),
    "borromean": ([(0, "+"), (1, "-")] * 3, 3, "Borromean rings"),
    "torus_2_4": ([(0, "+")] * 4, 2, "T(2,4) torus link"),
    "wen_unknot": ([(0, "w")] * 3, 1, "circle with a wen (three wens, T1-equivalent to one)"),
    "wen_hopf": ([(0, "+"), (0, "w"), (0, "+")], 2, "Hopf link with a wen on one component"),
    "wen_mixed": ([(0, "+"), (1, "v"), (0, "w"), (0, "-"), (1, "+"), (2, "w"), (0, "v"), (1, "+")], 3,
                  "mixed classical, virtual and wen"),
    "welded8": ([(0, "+"), (1, "-"), (0, "v"), (1, "+"), (0, "+"), (1, "v"), (0, "-"), (1, "-"), (0, "+"), (1, "+")], 3,
                "eight classical and two virtual crossings"),
}


def main():
    out = pathlib.Path(__file__).resolve().parent.parent / "data" / "corpus"
    out.mkdir(parents=True, exist_ok=True)
    for name, (word, n, comment) in CORPUS.items():
        lines, loops = closure(word, n)
        (out / f"{name}.wld").write_text(render(lines, loops, comment))


if __name__ == "__main__":
    main()
