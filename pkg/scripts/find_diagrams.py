"""Search closed braids for diagrams with prescribed two-variable Alexander polynomials.

Used once to produce the PD codes of the built-in six-crossing links. Prints
every braid word (up to the given length) whose closure is a 2-component
link with a matching normalized polynomial, together with its PD code.

    python scripts/find_diagrams.py --length 6
"""
import argparse
import itertools

from linkgrowth.alexander import alexander_polynomial
from linkgrowth.laurent import lp_normalize, lp_substitute, parse_poly
from linkgrowth.linkio import PDCode, pd_to_diagram, render_pd, wirtinger

TARGETS = {
    "6_2^2": parse_poly("u1 + u2 - 1 + u1^-1 + u2^-1"),
    "6_2^3": parse_poly("2 - u1 - u2 + 2*u1*u2"),
}


def braid_pd(word, strands):
    """PD code of a braid closure; generator k > 0 is sigma_k, k < 0 its inverse.

    Strands run upward; sigma_k lets the strand at position k cross over to k+1.
    """
    label = 0

    def fresh():
        nonlocal label
        label += 1
        return label

    bottom = [fresh() for _ in range(strands)]
    cur = list(bottom)
    crossings = []
    for g in word:
        k = abs(g) - 1
        l_in, r_in = cur[k], cur[k + 1]
        l_out, r_out = fresh(), fresh()  # l_out sits at position k+1, r_out at k
        if g > 0:
            crossings.append([r_in, l_out, r_out, l_in])
        else:
            crossings.append([l_in, r_in, l_out, r_out])
        cur[k], cur[k + 1] = r_out, l_out
    ident = {t: b for t, b in zip(cur, bottom)}
    while any(x in ident for c in crossings for x in c if ident.get(x, x) != x):
        crossings = [[ident.get(x, x) for x in c] for c in crossings]
    used = sorted({x for c in crossings for x in c})
    relabel = {x: i + 1 for i, x in enumerate(used)}
    return PDCode(tuple(tuple(relabel[x] for x in c) for c in crossings))


def variants(f):
    """Polynomials reachable by reversing components or swapping them."""
    images = [[[1, 0], [0, 1]], [[-1, 0], [0, 1]], [[1, 0], [0, -1]], [[-1, 0], [0, -1]]]
    out = {}
    for swap in (False, True):
        for im in images:
            g = lp_substitute(f, im)
            if swap:
                g = lp_substitute(g, [[0, 1], [1, 0]])
            out.setdefault(lp_normalize(g), (swap, im))
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--length", type=int, default=6)
    ap.add_argument("--strands", type=int, default=3)
    args = ap.parse_args()
    gens = [g for k in range(1, args.strands) for g in (k, -k)]
    found = {}
    for word in itertools.product(gens, repeat=args.length):
        if len({abs(g) for g in word}) < args.strands - 1:
            continue
        pd = braid_pd(word, args.strands)
        try:
            diag = pd_to_diagram(pd)
        except Exception:
            continue
        if diag.num_components != 2:
            continue
        delta = alexander_polynomial(wirtinger(diag))
        for name, target in TARGETS.items():
            v = variants(delta)
            if lp_normalize(target) in v and name not in found:
                found[name] = (word, render_pd(pd), v[lp_normalize(target)], delta)
                print(name, word, render_pd(pd), "raw delta:", delta, "map:", v[lp_normalize(target)])
    missing = set(TARGETS) - set(found)
    if missing:
        print("not found:", ", ".join(sorted(missing)))


if __name__ == "__main__":
    main()
