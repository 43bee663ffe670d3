"""t-structures over the integers (and any Dedekind domain).

Finitely generated abelian groups are recorded as a free rank plus one
partition per prime.  Aisles over the integers collapse to a pivot
normal form: the whole module category below a degree, a torsionfree
class at the pivot, zero above.  The torsionfree classes themselves are
indexed by specialization-closed subsets of the spectrum.

Run with:  python3 demos/integers_tour.py
"""

from tstructkit import dedekind as dd


def main():
    primes = frozenset({2, 3})

    # The torsionfree classes: one per subset of the primes (groups whose
    # torsion avoids it) plus the zero class for the whole spectrum.
    classes = dd.ded_torsionfree_classes(primes)
    print(f"torsionfree classes over Z (localized at 2 and 3): {len(classes)}")
    for c in classes:
        print("  support:", c.to_json_dict()["support"])

    # Membership, and the order reversal between supports and classes.
    Z, Z2 = dd.free_group(), dd.cyclic(2)
    print("\nZ in every nonzero class:",
          all(dd.ded_membership(Z, c, primes) for c in classes
              if not c.is_zero_class))
    print("Z/2 in the class marked by {2}:",
          dd.ded_membership(Z2, dd.torsionfree_class({2}), primes))
    print("Z/2 in the class marked by {3}:",
          dd.ded_membership(Z2, dd.torsionfree_class({3}), primes))

    # Middle terms of extensions are decided prime-locally by
    # Littlewood-Richardson positivity; free summands can absorb torsion.
    mids = dd.middle_term_types(dd.cyclic(2), dd.cyclic(2))
    print("\nmiddle terms of 0 -> Z/2 -> X -> Z/2 -> 0:",
          sorted(g.part(2) for g in mids))
    mids = dd.middle_term_types(dd.free_group(), dd.cyclic(2, 2))
    print("middle terms of 0 -> Z -> X -> Z/4 -> 0:",
          sorted((g.rank, g.part(2)) for g in mids))

    # Aisles match the pivot normal form; the finite-length level is the
    # classical counterexample, co-narrow but no aisle.
    seq = {0: dd.MOD, 1: dd.torsionfree_class({2}), 2: dd.ZERO}
    form = dd.ded_classify_sequence(seq, primes=primes)
    print(f"\npivot form of mod / torsionfree({{2}}) / zero: {form.to_json_dict()}")
    bad = {0: dd.MOD, 1: dd.FINITE_GROUPS, 2: dd.ZERO}
    verdict = dd.ded_classify_sequence(bad, primes=primes)
    ok, _ = dd.ded_co_narrow_validate(bad, primes=primes)
    print("finite-groups level: co-narrow axioms hold:", ok,
          "- but it is an aisle:", not isinstance(verdict, dd.DedInvalid))

    records, degenerate = dd.ded_enumerate_tstructures(primes, 0, 1)
    print(f"\nwindow [0, 1]: {len(records)} aisles, "
          f"{len(degenerate)} degenerate (constant) ones")


if __name__ == "__main__":
    main()
