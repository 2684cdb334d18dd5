"""
Unimodular solutions on finite multiplication tables
====================================================

F_1 is the set of f with f(st) = c_t f(s).  On a finite table this is a
lattice problem, solved exactly with an integer Smith normal form.
"""

import weylalg as wa

FS = wa.FiniteSemigroup
for name, S in [("right-zero", FS.right_zero(4)), ("left-zero", FS.left_zero(4)), ("Z/6", FS.cyclic(6))]:
    sol = wa.solve_f1(S)
    print(f"{name:>10}: function dimension {sol.function_dimension}, "
          f"torsion orders {sol.torsion_orders}, constants only {sol.is_constants_only()}")

# idempotents act trivially on F_1
print("idempotents fix F_1 on left-zero(4):", wa.idempotent_fixed_check(FS.left_zero(4)).passed)

# on an abelian group the solutions are the characters, which span C(G)
G = FS.abelian([2, 3])
print("characters of Z/2 x Z/3:", len(wa.characters(G)), " span rank:", wa.character_span_dimension(G))

# level 2 on Z/2 has more functions than level 1 but the same span
for k in (1, 2):
    print(f"Z/2 level {k}: {len(wa.solve_fk(FS.cyclic(2), k).normalized())} normalized functions")
