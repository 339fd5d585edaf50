"""Exact finite-dimensional cohomology and the stability-criteria evaluator.

Three computations, all over exact rationals with fraction-free ranks:

* Lie-algebra cochain complexes with module coefficients (the isotropy data
  of a point leaf); differentials built from the classical alternating-sum
  formula and checked to square to zero;
* the twisted two-term model of a product family: a graded ring model stores
  Betti numbers, the cup-product maps of a distinguished degree-2 class, and
  the class itself; the cone cohomology in degree k is
  ``dim coker(cup: H^(k-2) -> H^k) + dim ker(cup: H^(k-1) -> H^(k+1))``;
* the criteria report: which of the three vanishing conditions
  (relative degree-2, restricted degree-2, normal-coefficient degree-1)
  hold for a given family or point leaf.

For a point leaf the degree-1 group uses the normal module, i.e. the dual of
the isotropy algebra with the coadjoint action; for compact semisimple
algebras this agrees with the adjoint module, in general it does not.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .linalg import rank, solve

Matrix = tuple[tuple[Fraction, ...], ...]


def _as_matrix(rows) -> Matrix:
    return tuple(tuple(Fraction(e) for e in row) for row in rows)


def _zero_matrix(n_rows: int, n_cols: int) -> Matrix:
    return tuple(tuple(Fraction(0) for _ in range(n_cols)) for _ in range(n_rows))


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return ()
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(len(b[0])))
        for i in range(len(a))
    )


def _commutator(a: Matrix, b: Matrix) -> Matrix:
    ab = _mat_mul(a, b)
    ba = _mat_mul(b, a)
    return tuple(tuple(x - y for x, y in zip(r1, r2)) for r1, r2 in zip(ab, ba))


# ---------------------------------------------------------------------------
# Lie algebras and modules
# ---------------------------------------------------------------------------

class LieAlgebraData:
    """Finite-dimensional Lie algebra given by structure constants c_ij^k.

    Antisymmetry and the Jacobi identity are checked exactly on construction.
    """

    def __init__(self, dim: int, brackets: dict[tuple[int, int], list]):
        self.dim = dim
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), vec in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"bracket index {(i, j)} out of range")
            for k, v in enumerate(vec):
                c[i][j][k] = Fraction(v)
                c[j][i][k] = -Fraction(v)
        self.c = c
        for i in range(dim):
            if any(c[i][i][k] != 0 for k in range(dim)):
                raise ValueError("structure constants are not antisymmetric")
        for i in range(dim):
            for j in range(dim):
                for k in range(dim):
                    for m in range(dim):
                        total = sum(
                            c[i][j][l] * c[l][k][m]
                            + c[j][k][l] * c[l][i][m]
                            + c[k][i][l] * c[l][j][m]
                            for l in range(dim)
                        )
                        if total != 0:
                            raise ValueError("structure constants fail the Jacobi identity")

    def bracket(self, i: int, j: int) -> list[Fraction]:
        return list(self.c[i][j])

    def adjoint_matrix(self, i: int) -> Matrix:
        # (ad e_i) e_j = [e_i, e_j] = sum_k c_ij^k e_k
        return tuple(tuple(self.c[i][j][k] for j in range(self.dim)) for k in range(self.dim))


class ModuleData:
    """Representation: one action matrix per generator, checked exactly."""

    def __init__(self, algebra: LieAlgebraData, action_matrices):
        self.algebra = algebra
        mats = [_as_matrix(m) for m in action_matrices]
        if len(mats) != algebra.dim:
            raise ValueError("need one action matrix per generator")
        dims = {len(m) for m in mats} | {len(m[0]) for m in mats if m}
        if len(dims) > 1:
            raise ValueError("action matrices must be square of equal size")
        self.dim = len(mats[0]) if mats and mats[0] else 0
        self.matrices = mats
        for i in range(algebra.dim):
            for j in range(algebra.dim):
                expected = _zero_matrix(self.dim, self.dim)
                for k in range(algebra.dim):
                    coeff = algebra.c[i][j][k]
                    if coeff == 0:
                        continue
                    expected = tuple(
                        tuple(e + coeff * m for e, m in zip(er, mr))
                        for er, mr in zip(expected, mats[k])
                    )
                if _commutator(mats[i], mats[j]) != expected:
                    raise ValueError("matrices do not define a representation")

    def act(self, i: int, vec):
        return [sum((self.matrices[i][r][c] * vec[c] for c in range(self.dim)), Fraction(0)) for r in range(self.dim)]


def trivial_module(algebra: LieAlgebraData, dim: int = 1) -> ModuleData:
    return ModuleData(algebra, [_zero_matrix(dim, dim) for _ in range(algebra.dim)])


def adjoint_module(algebra: LieAlgebraData) -> ModuleData:
    return ModuleData(algebra, [algebra.adjoint_matrix(i) for i in range(algebra.dim)])


def coadjoint_module(algebra: LieAlgebraData) -> ModuleData:
    """Dual of the adjoint: the action on the normal space of a point leaf."""
    mats = []
    for i in range(algebra.dim):
        ad = algebra.adjoint_matrix(i)
        mats.append(tuple(tuple(-ad[c][r] for c in range(algebra.dim)) for r in range(algebra.dim)))
    return ModuleData(algebra, mats)


# ---------------------------------------------------------------------------
# cochain complexes
# ---------------------------------------------------------------------------

class CochainComplex:
    """Sequence of exact rational differentials D_k : C^k -> C^(k+1)."""

    def __init__(self, dims: list[int], differentials: list[Matrix]):
        self.dims = list(dims)
        self.differentials = [_as_matrix(d) for d in differentials]
        if len(self.differentials) != max(len(self.dims) - 1, 0):
            raise ValueError("need one differential per consecutive pair of degrees")
        for k, d in enumerate(self.differentials):
            n_rows = len(d)
            n_cols = len(d[0]) if d else 0
            if self.dims[k] and n_cols != self.dims[k]:
                raise ValueError(f"D_{k} has {n_cols} columns, expected {self.dims[k]}")
            if self.dims[k + 1] and n_rows != self.dims[k + 1]:
                raise ValueError(f"D_{k} has {n_rows} rows, expected {self.dims[k + 1]}")
        for k in range(len(self.differentials) - 1):
            a, b = self.differentials[k + 1], self.differentials[k]
            if a and b and any(any(e != 0 for e in row) for row in _mat_mul(a, b)):
                raise ValueError(f"not a complex: D_{k + 1} D_{k} != 0")

    def differential(self, k: int) -> Matrix:
        if 0 <= k < len(self.differentials):
            return self.differentials[k]
        return ()


def cohomology_dims(complex_: CochainComplex) -> list[int]:
    """dim H^k = dim C^k - rank D_k - rank D_(k-1), all ranks exact."""
    out = []
    for k, dim_k in enumerate(complex_.dims):
        r_out = rank(complex_.differential(k)) if complex_.differential(k) else 0
        r_in = rank(complex_.differential(k - 1)) if k > 0 and complex_.differential(k - 1) else 0
        out.append(dim_k - r_out - r_in)
    return out


def ce_complex(algebra: LieAlgebraData, module: ModuleData) -> CochainComplex:
    """Alternating-multilinear cochain complex of a Lie algebra with coefficients."""
    if module.algebra is not algebra and module.algebra.c != algebra.c:
        raise ValueError("module is a representation of a different algebra")
    n, dv = algebra.dim, module.dim
    dims = [len(list(combinations(range(n), k))) * dv for k in range(n + 1)]
    differentials = []
    for k in range(n):
        rows_basis = list(combinations(range(n), k + 1))
        cols_basis = list(combinations(range(n), k))
        col_index = {s: idx for idx, s in enumerate(cols_basis)}
        d = [[Fraction(0)] * (len(cols_basis) * dv) for _ in range(len(rows_basis) * dv)]
        for r, T in enumerate(rows_basis):
            # action terms
            for j, tj in enumerate(T):
                S = T[:j] + T[j + 1 :]
                cidx = col_index[S]
                sign = -1 if j % 2 else 1
                mat = module.matrices[tj]
                for a in range(dv):
                    for b in range(dv):
                        if mat[a][b] != 0:
                            d[r * dv + a][cidx * dv + b] += sign * mat[a][b]
            # bracket terms
            for j in range(len(T)):
                for l in range(j + 1, len(T)):
                    rest = tuple(t for idx, t in enumerate(T) if idx not in (j, l))
                    sign_jl = -1 if (j + l) % 2 else 1
                    for cgen in range(n):
                        coeff = algebra.c[T[j]][T[l]][cgen]
                        if coeff == 0 or cgen in rest:
                            continue
                        merged = tuple(sorted((cgen,) + rest))
                        pos = merged.index(cgen)
                        sort_sign = -1 if pos % 2 else 1
                        cidx = col_index[merged]
                        total = coeff * sign_jl * sort_sign
                        for a in range(dv):
                            d[r * dv + a][cidx * dv + a] += total
        differentials.append(_as_matrix(d))
    return CochainComplex(dims, differentials)


# ---------------------------------------------------------------------------
# graded ring models and cone cohomology
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GradedRingModel:
    """Cohomology-level model: Betti numbers, cup maps of the degree-2 class,
    the class itself, and (optionally) a matrix whose columns span the
    coboundary directions in the degree-2 coordinate space."""

    betti: tuple[int, ...]
    cup_sigma: dict[int, Matrix] = field(default_factory=dict)
    sigma_class: tuple[Fraction, ...] = ()
    coboundaries2: Matrix | None = None

    def __post_init__(self):
        object.__setattr__(self, "betti", tuple(int(b) for b in self.betti))
        object.__setattr__(self, "cup_sigma", {k: _as_matrix(m) for k, m in self.cup_sigma.items()})
        object.__setattr__(self, "sigma_class", tuple(Fraction(v) for v in self.sigma_class))
        if len(self.betti) < 3 and self.sigma_class:
            raise ValueError("a degree-2 class needs betti numbers up to degree 2")
        if self.sigma_class and len(self.sigma_class) != self.b(2):
            raise ValueError("sigma class has the wrong length for H^2")
        for k, m in self.cup_sigma.items():
            n_rows = len(m)
            n_cols = len(m[0]) if m else 0
            if m and (n_rows != self.b(k + 2) or n_cols != self.b(k)):
                raise ValueError(f"cup map in degree {k} has shape {(n_rows, n_cols)}, "
                                 f"expected {(self.b(k + 2), self.b(k))}")
        # compatibility: cupping the unit recovers the class itself
        if self.b(0) == 1 and 0 in self.cup_sigma and self.sigma_class:
            image = tuple(row[0] for row in self.cup_sigma[0])
            if image != self.sigma_class:
                raise ValueError("cup map in degree 0 is incompatible with the stored class")

    def b(self, k: int) -> int:
        return self.betti[k] if 0 <= k < len(self.betti) else 0

    def cup(self, k: int) -> Matrix:
        m = self.cup_sigma.get(k)
        if m is not None:
            return m
        return _zero_matrix(self.b(k + 2), self.b(k))


def cone_cohomology(model: GradedRingModel, k: int) -> int:
    """dim of the twisted degree-k group of the two-term model."""
    if k < 0:
        raise ValueError("degree must be nonnegative")
    coker = model.b(k) - (rank(model.cup(k - 2)) if k >= 2 and model.b(k - 2) else 0)
    kernel = 0
    if model.b(k - 1):
        kernel = model.b(k - 1) - rank(model.cup(k - 1))
    return coker + kernel


def sigma_exactness_test(model: GradedRingModel, class2) -> bool:
    """True iff the degree-2 class is trivial in the model.

    With no stored coboundary directions this means the zero vector;
    otherwise the class must be solvable in terms of the coboundary columns.
    """
    vec = [Fraction(v) for v in class2]
    if len(vec) != model.b(2):
        raise ValueError(f"class has length {len(vec)}, expected {model.b(2)}")
    if model.coboundaries2 is None or not model.coboundaries2:
        return all(v == 0 for v in vec)
    cols = model.coboundaries2
    matrix = [[cols[r][c] for c in range(len(cols[0]))] for r in range(len(cols))]
    return solve(matrix, vec) is not None


# ---------------------------------------------------------------------------
# criteria evaluation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CriteriaReport:
    """Dimensions of the three relevant groups and which criteria fire.

    criterion1: vanishing relative degree-2 group  => leaf survives nearby
                structures up to diffeomorphism;
    criterion2: vanishing restricted degree-2 group => survives up to
                symplectomorphism;
    criterion3: vanishing normal-coefficient degree-1 group => survives all
                nearby bracket structures, not only the skew ones.
    """

    kind: str
    h2_relative: int
    h2_restricted: int
    h1_normal: int

    @property
    def criterion1(self) -> bool:
        return self.h2_relative == 0

    @property
    def criterion2(self) -> bool:
        return self.h2_restricted == 0

    @property
    def criterion3(self) -> bool:
        return self.h1_normal == 0

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "groups": {
                "H2_relative": self.h2_relative,
                "H2_restricted": self.h2_restricted,
                "H1_normal_coefficients": self.h1_normal,
            },
            "criteria": {
                "stability": self.criterion1,
                "strong_stability": self.criterion2,
                "algebroid_stability": self.criterion3,
            },
        }


def evaluate_criteria(family) -> CriteriaReport:
    """Criteria for a product family (GradedRingModel) or a point leaf (LieAlgebraData)."""
    if isinstance(family, GradedRingModel):
        # product-family identifications: relative complex = shifted base forms,
        # restricted complex = twisted cone, normal-coefficient complex = cone shifted.
        return CriteriaReport(
            kind="product-family",
            h2_relative=family.b(1),
            h2_restricted=cone_cohomology(family, 2),
            h1_normal=cone_cohomology(family, 1),
        )
    if isinstance(family, LieAlgebraData):
        h2 = cohomology_dims(ce_complex(family, trivial_module(family)))[2] if family.dim >= 2 else 0
        h1_nu = cohomology_dims(ce_complex(family, coadjoint_module(family)))[1]
        return CriteriaReport(
            kind="point-leaf",
            h2_relative=h2,
            h2_restricted=h2,
            h1_normal=h1_nu,
        )
    raise ValueError(f"cannot evaluate criteria for {type(family).__name__}")


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------

def abelian_algebra(dim: int) -> LieAlgebraData:
    return LieAlgebraData(dim, {})


def aff1_algebra() -> LieAlgebraData:
    """Two-dimensional non-abelian algebra: [e1, e2] = e1."""
    return LieAlgebraData(2, {(0, 1): [1, 0]})


def su2_algebra() -> LieAlgebraData:
    """[e1, e2] = e3, [e2, e3] = e1, [e3, e1] = e2."""
    return LieAlgebraData(3, {(0, 1): [0, 0, 1], (1, 2): [1, 0, 0], (2, 0): [0, 1, 0]})


LIE_ALGEBRA_PRESETS = {
    "abelian2": lambda: abelian_algebra(2),
    "aff1": aff1_algebra,
    "su2": su2_algebra,
}

MODULE_PRESETS = {
    "trivial": trivial_module,
    "adjoint": lambda g: adjoint_module(g),
    "coadjoint": lambda g: coadjoint_module(g),
    "normal": lambda g: coadjoint_module(g),
}


def torus2_model(sigma_scalar=0) -> GradedRingModel:
    """Two-torus: Betti (1, 2, 1); the class is a multiple of the area form.

    Cup maps into degrees 3 and 4 vanish on a 2-dimensional space.
    """
    s = Fraction(sigma_scalar)
    return GradedRingModel(
        betti=(1, 2, 1),
        cup_sigma={0: ((s,),)},
        sigma_class=(s,),
    )


def sphere2_model(sigma_scalar=1) -> GradedRingModel:
    s = Fraction(sigma_scalar)
    return GradedRingModel(
        betti=(1, 0, 1),
        cup_sigma={0: ((s,),)},
        sigma_class=(s,),
    )


def s2xs2_model(coeff1=-1, coeff2=1) -> GradedRingModel:
    """Product of two 2-spheres; H^2 basis = (first area class, second area class).

    The stored class is coeff1 * first + coeff2 * second; cup maps use
    (first ^ second) as the basis of the top degree and first^2 = second^2 = 0.
    """
    a, b = Fraction(coeff1), Fraction(coeff2)
    return GradedRingModel(
        betti=(1, 0, 2, 0, 1),
        cup_sigma={
            0: ((a,), (b,)),
            # sigma cup: first -> b * top, second -> a * top
            2: ((b, a),),
        },
        sigma_class=(a, b),
    )


RING_MODEL_PRESETS = {
    "t2-sigma0": lambda: torus2_model(0),
    "t2": lambda: torus2_model(0),
    "s2": lambda: sphere2_model(1),
    "s2xs2": lambda: s2xs2_model(-1, 1),
}
