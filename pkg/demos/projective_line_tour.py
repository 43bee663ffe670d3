"""Narrow subcategories and t-structures on the projective line.

Coherent sheaves on the projective line split into line bundles O(n)
and finite-length torsion sheaves, so subcategories and sequences have
closed normal forms instead of object lists.  This demo enumerates the
narrow subcategories over a three-point model, classifies some
sequences into the four normal forms, and shows which forms are aisles.

Run with:  python3 demos/projective_line_tour.py
"""

from tstructkit import projline as pl


def main():
    # The five shapes of narrow subcategory: zero, torsion sheaves on a
    # point set, the additive hull of one line bundle, the quotient
    # closure Gen(O(n)), and everything.
    subcats = pl.enumerate_p1_narrow(points=3, deg_lo=-2, deg_hi=2)
    print(f"narrow subcategories (3 points, twists in [-2, 2]): {len(subcats)}")
    by_tag = {}
    for s in subcats:
        by_tag.setdefault(s.tag, []).append(s)
    for tag, hits in sorted(by_tag.items()):
        print(f"  {tag}: {len(hits)}")

    # Membership is decided symbolically.
    sky = pl.skyscraper(0)
    bundle = pl.line_bundle(2)
    print("\nskyscraper at point 0 in Tor({0}):",
          pl.p1_membership(sky, pl.p1_tor((0,))))
    print("O(2) in Gen(O(1)):", pl.p1_membership(bundle, pl.p1_gen(1)))
    print("O(2) + O(0) in Gen(O(1)):",
          pl.p1_membership(bundle.direct_sum(pl.line_bundle(0)), pl.p1_gen(1)))

    # Sequences classify into four normal forms.  Form I interleaves a
    # torsion zone, form II a line-bundle zone capped by its Gen level.
    examples = [
        {0: pl.p1_zero(), 1: pl.p1_tor((0,)), 2: pl.p1_all()},
        {0: pl.p1_zero(), 1: pl.p1_line(0), 2: pl.p1_gen(0), 3: pl.p1_all()},
        {0: pl.p1_zero(), 1: pl.p1_gen(1), 2: pl.p1_all()},
        {0: pl.p1_zero(), 1: pl.p1_all()},
    ]
    print()
    for seq in examples:
        form = pl.classify_p1_sequence(seq)
        print(f"form {form.form}: {form.to_json_dict()}"
              f"   aisle: {pl.p1_is_aisle(form)}")

    # The only non-aisles are form-I sequences whose torsion zone spans
    # more than one degree.
    two_degrees = pl.classify_p1_sequence(
        {0: pl.p1_zero(), 1: pl.p1_tor((0,)), 2: pl.p1_tor((0, 1)),
         3: pl.p1_all()})
    print(f"\ntwo-degree torsion zone is an aisle: {pl.p1_is_aisle(two_degrees)}")

    forms = pl.p1_enumerate_sequences(points=3, lo=-2, hi=2, deg_lo=-2, deg_hi=2)
    aisles = sum(pl.p1_is_aisle(f) for f in forms)
    print(f"window [-2, 2]: {len(forms)} narrow sequences, {aisles} aisles")


if __name__ == "__main__":
    main()
