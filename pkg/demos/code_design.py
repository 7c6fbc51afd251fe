"""Designing a 7-bit code against an adversary who flips one bit.

An adversary may corrupt up to tau*n positions of each transmitted word.
Two codewords survive this when their radius-floor(tau*n) balls overlap
little enough; the library scores each pair by an exact equivocation and
certifies the whole codebook at a confusion budget delta.  Greedy lexical
scanning at distance 3 recovers the classic 16-word single-error-correcting
code, and the distance report shows the packing bound met with equality.

Run with:  python3 demos/code_design.py
"""

from fractions import Fraction as F

from uvinfo import (
    BitString,
    format_ratio,
    hamming_distance_bound,
    hamming_equivocation,
)


def greedy_distance_code(n: int, min_distance: int) -> list:
    words: list = []
    for value in range(2 ** n):
        cand = BitString(n, value)
        if all(cand.distance(w) >= min_distance for w in words):
            words.append(cand)
    return words


def main() -> None:
    n, tau = 7, F(1, 7)

    print("== pair equivocations under a 1-bit adversary ==")
    zero = BitString.of("0000000")
    for text in ("1110000", "1100000", "1000000"):
        other = BitString.of(text)
        e = hamming_equivocation(zero, other, tau)
        print(f"d({zero}, {other}) = {zero.distance(other)} ->"
              f" equivocation {format_ratio(e)}")
    print()

    print("== greedy code at distance 3 ==")
    words = greedy_distance_code(n, 3)
    print(len(words), "words:", " ".join(str(w) for w in words[:8]), "...")

    report = hamming_distance_bound(words, tau, F(0))
    print("ball radius:", report.radius,
          " pair threshold:", format_ratio(report.threshold))
    print("minimum distance:", report.min_distance)
    tight = [row for row in report.rows if row.distance == row.bound]
    example = tight[0].pair
    print(f"{len(tight)} of {len(report.rows)} pairs meet the distance bound"
          f" with equality, e.g. {example[0]} / {example[1]}")
    print()

    print("== what a looser confusion budget buys ==")
    pair = (BitString.of("0000000"), BitString.of("1100000"))
    e = hamming_equivocation(*pair, tau)
    print(f"the distance-2 pair {pair[0]}/{pair[1]} has equivocation"
          f" {format_ratio(e)}; a 2-word book admits it once"
          f" delta reaches {format_ratio(2 * e)}")


if __name__ == "__main__":
    main()
