"""Flip the sign in each branch of the closed form for F and report the first oracle witness."""

from irrcount import counting
from irrcount.oracle import Budget, VerifyReport, check_F


def main():
    budget = Budget(max_points=1 << 12)
    for branch in counting.BRANCHES:
        report = VerifyReport()
        check_F(report, budget, F_table=lambda p, m, b=branch: counting.F_table(p, m, flip={b}))
        bad = report.failures()
        if bad:
            c = bad[0]
            print(f"{branch:>5}: caught at q={c.q} n={c.n} {c.detail} ({len(bad)} failing pairs)")
        else:
            print(f"{branch:>5}: NOT caught")


if __name__ == "__main__":
    main()
