"""Two walkers on a 30 km trail, reported by an unreliable observer.

The observer watches a walker somewhere on the trail and reports which of
five zones they saw them in.  Zones overlap: a report of "ab" is consistent
with any position between km 10 and 15, which is also consistent with the
reports "a" and "b".  The joint range (report, position) is a hybrid set —
finitely many labels on one side, interval unions on the other — and the
question "how much does a report tell us about the position?" has an exact,
distribution-free answer.

Run with:  python3 demos/walkers_afternoon.py
"""

from fractions import Fraction as F

from uvinfo import (
    CardinalityPower,
    IntervalUnion,
    LebesguePlusOffset,
    UncertainPair,
    association_sets,
    classify_levels,
    format_ratio,
    mutual_information,
    overlap_family,
    taxicab_family,
)


def build_pair() -> UncertainPair:
    return UncertainPair.hybrid({
        "a": IntervalUnion.of([(0, 15)]),
        "ab": IntervalUnion.of([(10, 15)]),
        "b": IntervalUnion.of([(10, 30)]),
        "bc": IntervalUnion.of([(20, 30)]),
        "c": IntervalUnion.of([(20, 30)]),
    })


def main() -> None:
    pair = build_pair()
    m_x = CardinalityPower(5)       # reports: plain counting, 5 labels
    m_y = LebesguePlusOffset(10)    # positions: length plus a 10 km floor

    print("== association values ==")
    assoc = association_sets(pair, m_x, m_y)
    print("report side :", sorted(map(format_ratio, assoc.a_xy)))
    print("position side:", sorted(map(format_ratio, assoc.a_yx)))
    print()

    print("== three tolerance settings ==")
    for d1, d2 in ((F(1, 6), F(1, 4)), (F(3, 5), F(1, 2)), (F(1, 4), F(1, 4))):
        status = classify_levels(assoc, d1, d2)
        print(f"(delta1, delta2) = ({format_ratio(d1)}, {format_ratio(d2)})"
              f" -> {status.variant}")
        for note in status.witness:
            print("   ", note)
    print()

    print("== overlap families on the report side ==")
    for delta in (F(1, 6), F(1, 4), F(3, 5)):
        family = overlap_family(pair, m_x, m_y, delta, "X")
        if family is None:
            print(f"delta = {format_ratio(delta)}: no family at this level")
            continue
        rendered = ["{" + ", ".join(sorted(s)) + "}" for s in family.sets]
        print(f"delta = {format_ratio(delta)} ({family.regime}):",
              " ".join(rendered))
    print()

    print("== information the pair carries ==")
    about_reports = mutual_information(pair, m_x, m_y, F(1, 6), "XgivenY")
    about_positions = mutual_information(pair, m_x, m_y, F(1, 4), "YgivenX")
    print("about the report  at delta = 1/6:",
          about_reports.render(), "bits", f"({about_reports.status})")
    print("about the position at delta = 1/4:",
          about_positions.render(), "bits", f"({about_positions.status})")

    taxi = taxicab_family(pair, m_x, m_y, F(1, 6), F(1, 4))
    print("taxicab family exists:", taxi.exists,
          "with", taxi.count, "block(s)" if taxi.exists else "")
    print()
    print("One block, zero bits: at these tolerances every report chains to")
    print("every other through shared positions, so an adversarially chosen")
    print("observation pins the walker down no further than the whole trail.")


if __name__ == "__main__":
    main()
