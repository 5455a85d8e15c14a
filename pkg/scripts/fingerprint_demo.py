"""Print the two fingerprint levels of a small three-element structure."""
from sepfol.decide import fingerprint_table
from sepfol.semantics import Structure
from sepfol.syntax import P

NAMES = ["a", "a'", "b"]


def show(fp):
    if all(isinstance(v, int) for v in fp):
        return "{" + ", ".join(str(i) for i in sorted(fp)) + "}"
    return "{" + ", ".join(sorted(show(v) for v in fp)) + "}"


def main():
    s = Structure(3, {}, {}, {
        "r1": {(0, 2), (1, 0), (1, 1), (2, 2)},
        "r2": {(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 0)},
    })
    etas = [P("r1", "y1", "y2"), P("r2", "y1", "y2")]
    lam1, lam2 = fingerprint_table(s, etas, [["y1"], ["y2"]])
    print("eta_1 = r1(y1,y2), eta_2 = r2(y1,y2)")
    for label, table in (("lambda_2", lam2), ("lambda_1", lam1)):
        print(label)
        for tup, fp in table.entries.items():
            print(f"  ({', '.join(NAMES[e] for e in tup)}) -> {show(fp)}")


if __name__ == "__main__":
    main()
