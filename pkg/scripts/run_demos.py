"""Run every worked instance and print its checks; exit 1 if any check fails."""

import sys

from damgshap.demos import DEMOS, run_demo


def main() -> int:
    failed = 0
    for name in DEMOS:
        print(f"== {name}")
        for row in run_demo(name):
            mark = "PASS" if row.passed else "FAIL"
            failed += not row.passed
            print(f"  {mark}  {row.name}: {row.got}")
    print(f"{failed} failing checks")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
