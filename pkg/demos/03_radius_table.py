"""Guaranteed decoding radii of three decoders, as multiples of distance.

Run from the repository root:  python3 demos/03_radius_table.py
"""

from fractions import Fraction

from hgpdecode import radius_table, radius_table_to_text

print("At rate parameter r = 1/2 and expansion defect 1/20 (all formulas valid):\n")
print(radius_table_to_text(radius_table(Fraction(1, 2), Fraction(1, 20), 6)))

print("Pushing the defect to 1/9 knocks the two flip-style bounds out of "
      "their validity range;\nrows are flagged, never dropped:\n")
print(radius_table_to_text(radius_table(Fraction(1, 2), Fraction(1, 9), 6)))

print("The exact rational parts behind the rendered decimals:")
for row in radius_table(Fraction(1, 2), Fraction(1, 20), 6):
    root = "" if row.radicand == 1 else f" / sqrt({row.radicand})"
    print(f"  {row.algorithm:>18}: {row.scalar}{root} = {row.coefficient(prec=12)}")
