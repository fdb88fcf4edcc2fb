"""The invariant calculus on (kappa, lambda, beta) triples.

An embedding class modulo knots is measured by a class u in H2 (kappa), a
bilinear form L on H3 (lambda, given as the matrix of values on basis
pairs), and a coset beta in the group K_{u,L} = H1 / (2*adjoint(L)(H3) +
div(u)*H1).  This module provides the admissibility predicate and box
enumeration for u, the u-symmetry condition tying u and L together, the
adjoint and the K-group, and the parity criteria derived from L (regular
homotopy, the mod-2 diagonal class W, the compression necessary condition).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .exact import (AbelianGroupPresentation, IntMatrix, cokernel,
                    inverse_unimodular, solve_linear, vector_gcd)
from .manifolds import ManifoldData

# A kappa value is a plain integer vector in H2 coordinates; a lambda form
# is the b3 x b3 IntMatrix of its values on basis pairs.
KappaValue = tuple
LambdaForm = IntMatrix

DEFAULT_ENUM_CAP = 10 ** 7


@dataclass(frozen=True)
class KGroup:
    """Value group of the beta invariant over a fixed (u, L) fiber.

    The presentation relations are the columns of 2*Lambda together with
    d times the identity on H1, where Lambda is the adjoint of L and
    d = divisibility(u).
    """

    group: AbelianGroupPresentation
    d: int

    def size(self) -> Optional[int]:
        return self.group.order()


def divisibility(u: Sequence[int]) -> int:
    """Largest integer dividing u, with divisibility(0) = 0."""
    return vector_gcd(u)


def is_kappa_admissible(data: ManifoldData, u: Sequence[int]) -> bool:
    """Whether u reduces to w2 mod 2 and has self-intersection sigma."""
    if len(u) != data.b2:
        raise ValueError(f"kappa vector length {len(u)} != b2 {data.b2}")
    if any((ui - wi) % 2 for ui, wi in zip(u, data.w2)):
        return False
    qu = data.Q.apply(u)
    return sum(ui * qi for ui, qi in zip(u, qu)) == data.sigma


def enumerate_kappa(data: ManifoldData, bound: int,
                    cap: int = DEFAULT_ENUM_CAP) -> list:
    """All admissible u with coordinates in [-bound, bound], sorted
    lexicographically.

    The admissible set can be infinite for indefinite Q, so only a box is
    searched; the box volume is rejected above `cap`.
    """
    if bound < 0:
        raise ValueError("bound must be non-negative")
    width = 2 * bound + 1
    if width ** data.b2 > cap:
        raise ValueError(
            f"enumeration box {width}^{data.b2} exceeds cap {cap}")
    values = range(-bound, bound + 1)
    return [u for u in product(values, repeat=data.b2)
            if is_kappa_admissible(data, u)]


def is_symmetric_pair(data: ManifoldData, u: Sequence[int],
                      L: IntMatrix) -> bool:
    """Whether L(y,x) - L(x,y) equals the triple intersection u.x.y on all
    basis pairs, i.e. (u, L) can occur as a (kappa, lambda) value."""
    if L.shape != (data.b3, data.b3):
        raise ValueError(f"L has shape {L.shape}, expected square of size {data.b3}")
    t = data.triple_contraction(u)
    return all(L[k, j] - L[j, k] == t[j, k]
               for j in range(data.b3) for k in range(data.b3))


def base_lambda(data: ManifoldData, u: Sequence[int]) -> IntMatrix:
    """Canonical basepoint form for the fiber over u: strictly lower
    triangular, with L[j,k] = u.x_k.x_j below the diagonal.

    Antisymmetry of the triple tensor makes this a u-symmetric form, and
    every other u-symmetric form differs from it by a symmetric matrix.
    """
    t = data.triple_contraction(u)
    return IntMatrix([[t[k, j] if j > k else 0 for k in range(data.b3)]
                      for j in range(data.b3)], cols=data.b3)


def lambda_adjoint(data: ManifoldData, L: IntMatrix) -> IntMatrix:
    """The matrix of the adjoint homomorphism H3 -> H1, i.e. the unique
    Lambda with L = P @ Lambda."""
    if L.shape != (data.b3, data.b3):
        raise ValueError(f"L has shape {L.shape}, expected square of size {data.b3}")
    return inverse_unimodular(data.P) @ L


def k_group_presentation(lam: IntMatrix, d: int) -> "AbelianGroupPresentation":
    """Quotient of H1 by the columns of 2*lam together with d*identity."""
    b1 = lam.rows
    relations = IntMatrix(
        [[2 * lam[i, j] for j in range(lam.cols)] +
         [d if i == j else 0 for j in range(b1)] for i in range(b1)],
        cols=lam.cols + b1)
    return cokernel(b1, relations)


def k_group(data: ManifoldData, u: Sequence[int], L: IntMatrix) -> KGroup:
    """The beta value group for the fiber over (u, L)."""
    if not is_symmetric_pair(data, u, L):
        raise ValueError("(u, L) is not a symmetric pair; the fiber is empty")
    d = divisibility(u)
    return KGroup(group=k_group_presentation(lambda_adjoint(data, L), d), d=d)


def whitney_w(data: ManifoldData, L: IntMatrix) -> tuple:
    """The mod-2 class W in H1 coordinates with P @ W = diag(L) mod 2."""
    if L.shape != (data.b3, data.b3):
        raise ValueError(f"L has shape {L.shape}, expected square of size {data.b3}")
    diag = [L[i, i] % 2 for i in range(data.b3)]
    sol = solve_linear(data.P, diag, modulus=2)
    assert sol is not None  # P unimodular, so invertible mod 2
    return sol.particular


def regular_homotopy_equivalent(L0: IntMatrix, L1: IntMatrix) -> bool:
    """Whether the forms give regular homotopic embeddings: the difference
    D = L0 - L1 must have D(x,x) even for every x, which holds exactly when
    diag(D) and D + D^T are even entrywise."""
    if L0.shape != L1.shape:
        raise ValueError(f"shape mismatch {L0.shape} vs {L1.shape}")
    D = L0 - L1
    n = D.rows
    if any(D[i, i] % 2 for i in range(n)):
        return False
    return all((D[i, j] + D[j, i]) % 2 == 0 for i in range(n) for j in range(i))


def compression_obstruction(u: Sequence[int], L: IntMatrix) -> bool:
    """Necessary condition for compressing the embedding into a hyperplane:
    both u and L must vanish.

    True means the condition is satisfied.  It is NOT sufficient, and beta
    does not sharpen it: compressible embeddings realize distinct beta
    values within the u = 0, L = 0 fiber.
    """
    if any(u):
        return False
    return all(x == 0 for row in L.data for x in row)
