"""Print the F(3, t, s) and P(3, t, s) grids over GF(4), closed form next to brute force."""

from irrcount import counting, oracle
from irrcount.gf2k import element_pretty, fp_make


def show(title, closed, brute):
    print(title)
    print(closed.to_pretty(element_pretty))
    print("oracle agrees:", closed == brute)
    print()


def main():
    p = fp_make(2)
    show("F(3, t, s) over GF(4), rows t, columns s", counting.F_table(p, 3), oracle.oracle_F(p, 3))
    show("P(3, t, s) over GF(4), rows t, columns s", counting.P_table(p, 3), oracle.oracle_P(p, 3))


if __name__ == "__main__":
    main()
