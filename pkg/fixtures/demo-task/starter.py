"""Starter: writes a weak baseline solution."""


def solve() -> float:
    return 0.1


if __name__ == "__main__":
    with open("solution.txt", "w") as fh:
        fh.write(str(solve()))
