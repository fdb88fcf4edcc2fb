import dataclasses
import random

import pytest

from emb7.exact import IntMatrix, inverse_unimodular, solve_linear
from emb7.manifolds import ManifoldData, builtin, validate


def random_unimodular(rng: random.Random, n: int, steps: int = 14) -> IntMatrix:
    """Product of random elementary row operations applied to the identity."""
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if n >= 2:
        for _ in range(steps):
            i, j = rng.sample(range(n), 2)
            op = rng.randrange(3)
            if op == 0:
                c = rng.randint(-3, 3)
                for k in range(n):
                    m[i][k] += c * m[j][k]
            elif op == 1:
                m[i], m[j] = m[j], m[i]
            else:
                m[i] = [-x for x in m[i]]
    return IntMatrix(m, cols=n)


def random_symmetric(rng: random.Random, n: int, bound: int = 5) -> IntMatrix:
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = rng.randint(-bound, bound)
    return IntMatrix(m, cols=n)


def random_matrix(rng: random.Random, rows: int, cols: int,
                  bound: int = 20) -> IntMatrix:
    return IntMatrix([[rng.randint(-bound, bound) for _ in range(cols)]
                      for _ in range(rows)], cols=cols)


def random_form_manifold(rng: random.Random, b2: int) -> ManifoldData:
    """A validated simply-connected fixture with a random unimodular
    intersection form: Q = M^T D M for diagonal D of +-1 signs."""
    signs = [rng.choice((-1, 1)) for _ in range(b2)]
    m = random_unimodular(rng, b2)
    d = IntMatrix.diagonal(signs)
    q = m.T @ d @ m
    # Wu: w2 solves Q w2 = diag(Q) mod 2 (det Q is odd, so always solvable)
    sol = solve_linear(q, [q[i, i] % 2 for i in range(b2)], modulus=2)
    data = ManifoldData(b1=0, b2=b2, b3=0, Q=q, P=IntMatrix.zeros(0, 0),
                        T=tuple(IntMatrix.zeros(0, 0) for _ in range(b2)),
                        w2=sol.particular, sigma=sum(signs),
                        name=f"random-form-{b2}")
    assert not validate(data)
    return data


def free_h1_manifold(rng: random.Random, n: int) -> ManifoldData:
    """A validated fixture with b1 = b3 = n, b2 = 0 and a random
    unimodular duality pairing (abstract data, used for the H1/H3 side)."""
    data = ManifoldData(b1=n, b2=0, b3=n, Q=IntMatrix.zeros(0, 0),
                        P=random_unimodular(rng, n), T=(), w2=(), sigma=0,
                        name=f"free-h1-{n}")
    assert not validate(data)
    return data


def basis_change(data: ManifoldData, m2: IntMatrix, a: IntMatrix,
                 b: IntMatrix) -> ManifoldData:
    """Re-express the data after unimodular changes of basis on H2 (m2),
    H3 (a) and H1 (b); columns of each matrix are the new basis vectors."""
    m2_inv = inverse_unimodular(m2) if data.b2 else m2
    w2 = tuple(x % 2 for x in m2_inv.apply(data.w2)) if data.b2 else ()
    slices = []
    for i in range(data.b2):
        acc = IntMatrix.zeros(data.b3, data.b3)
        for asl in range(data.b2):
            c = m2[asl, i]
            if c:
                acc = acc + (a.T @ data.T[asl] @ a).scale(c)
        slices.append(acc)
    return dataclasses.replace(
        data,
        Q=m2.T @ data.Q @ m2,
        P=a.T @ data.P @ b,
        T=tuple(slices),
        w2=w2,
        name=None,
    )


def direct_sum(d1: ManifoldData, d2: ManifoldData) -> ManifoldData:
    """Homology data of a connected sum: block sums of every structure."""
    def block(a: IntMatrix, b: IntMatrix) -> IntMatrix:
        out = [[0] * (a.cols + b.cols) for _ in range(a.rows + b.rows)]
        for i in range(a.rows):
            for j in range(a.cols):
                out[i][j] = a[i, j]
        for i in range(b.rows):
            for j in range(b.cols):
                out[a.rows + i][a.cols + j] = b[i, j]
        return IntMatrix(out, cols=a.cols + b.cols)

    b3 = d1.b3 + d2.b3
    slices = tuple(block(t, IntMatrix.zeros(d2.b3, d2.b3)) for t in d1.T) \
        + tuple(block(IntMatrix.zeros(d1.b3, d1.b3), t) for t in d2.T)
    data = ManifoldData(
        b1=d1.b1 + d2.b1, b2=d1.b2 + d2.b2, b3=b3,
        Q=block(d1.Q, d2.Q), P=block(d1.P, d2.P), T=slices,
        w2=d1.w2 + d2.w2, sigma=d1.sigma + d2.sigma,
        name=f"{d1.name}#{d2.name}")
    assert not validate(data)
    return data


@pytest.fixture
def rng():
    return random.Random(20250810)


@pytest.fixture(params=["s4", "s1xs3", "cp2", "s2xs2", "t2xs2"])
def builtin_data(request):
    return builtin(request.param)
