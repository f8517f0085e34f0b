"""Braid-closure builder shared by the corpus generator and the oracle.

A word is a list of (position, kind) with kind in '+', '-', 'v', 'w'.
Crossings act on positions i, i+1; upward strands, so a positive crossing
has its over strand going from bottom-left to top-right.
"""


def closure(word, n):
    cur = [f"s{p}" for p in range(n)]
    start = list(cur)
    lines = []
    k = 0
    for i, kind in word:
        k += 1
        if kind == "w":
            new = f"e{k}"
            lines.append(("W", cur[i], new))
            cur[i] = new
            continue
        l, r = cur[i], cur[i + 1]
        nl, nr = f"e{k}L", f"e{k}R"
        if kind == "+":
            lines.append(("X+", l, nr, r, nl))
        elif kind == "-":
            lines.append(("X-", r, nl, l, nr))
        else:
            lines.append(("V", l, nr, r, nl))
        cur[i], cur[i + 1] = nl, nr
    ren = {}
    loops = 0
    for p in range(n):
        if cur[p] == start[p]:
            loops += 1
        else:
            ren[cur[p]] = start[p]
    lines = [(ln[0],) + tuple(ren.get(e, e) for e in ln[1:]) for ln in lines]
    # canonical labels 1, 2, ... in order of first appearance
    order = {}
    for ln in lines:
        for e in ln[1:]:
            order.setdefault(e, str(len(order) + 1))
    lines = [(ln[0],) + tuple(order[e] for e in ln[1:]) for ln in lines]
    return lines, loops


def render(lines, loops, comment=None):
    kind_order = {"X+": 0, "X-": 0, "V": 1, "W": 2}
    lines = sorted(lines, key=lambda ln: kind_order[ln[0]])  # stable within kind
    out = []
    if comment:
        out.append(f"# {comment}")
    out += [" ".join(ln) for ln in lines]
    out += ["loop"] * loops
    return "\n".join(out) + "\n"
