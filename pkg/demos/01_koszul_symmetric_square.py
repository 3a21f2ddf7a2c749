"""Walk through the two-variable Koszul complex and its symmetric square.

Run:  python3 demos/01_koszul_symmetric_square.py
"""

from symchain import alpha, graded_poly, koszul, rank_series, sym2, tensor, verify_series_identity

ring = graded_poly("x", "y")
x, y = ring.generators()


def show(title, matrix):
    print(f"\n{title} =")
    for row in matrix.to_rows():
        print("   [" + "  ".join(f"{str(v):>4}" for v in row) + "]")


# The Koszul complex on x, y: 0 -> R -> R^2 -> R -> 0.
K = koszul([x, y])
print("Koszul complex K(x, y), ranks:", {n: K.rank(n) for n in K.degrees()})
show("d2", K.diff(2))
show("d1", K.diff(1))

# Its tensor square has ranks (1, 4, 6, 4, 1).
T = tensor(K, K)
print("\ntensor square ranks:", {n: T.rank(n) for n in T.degrees()})
show("d3 of the tensor square", T.diff(3))

# The alternation sends a generator u (x) v to u (x) v - (-1)^{|u||v|} v (x) u.
al = alpha(K)
show("alternation in degree 2", al.component(2))

# Quotienting by its image and by odd diagonal squares gives the symmetric
# square, with ranks (1, 2, 2, 2, 1) and the classical small matrices.
S = sym2(K).complex
print("\nsymmetric square ranks:", {n: S.rank(n) for n in S.degrees()})
for n in range(4, 0, -1):
    show(f"symmetric square d{n}", S.diff(n))

# Rank bookkeeping: P_{S}(t) = (P_K(t)^2 + P_K(-t^2)) / 2 holds exactly.
print("\nrank series of K:        ", rank_series(K))
print("rank series of the square:", rank_series(S))
print("series identity verified: ", verify_series_identity(K))
