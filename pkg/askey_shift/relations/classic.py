"""
Checkers for the classic relations of a family.

- eigen: H P_n = E_n P_n, deg_eta P_n = n and, on rdQM, P_n(origin) = 1
- shift_classic: F P_n = f_n P_{n-1}(lambda + delta) and back
- factorization_classic: H = B F
- shape_invariance: F B = kappa B(lambda + delta) F(lambda + delta) + E_1
- energy_identities: E_0 = 0, E_n = f_n b_{n-1}, E_{n+1} = kappa E_n(lambda + delta) + E_1
  and, for a variant, the new energy identity
- rodrigues: P_n as an ordered product of backward operators applied to 1

On rdQMJ the lower-degree polynomial of the classic relations is read at
r*eta, and the shape invariance condition is conjugated by that scaling.
"""

from __future__ import annotations

from askey_shift.algebra import ONE, ZERO, GaussianRational, RationalFunction, Substitution, gaussian
from askey_shift.families import (
    FamilyDescriptor,
    Framework,
    ParameterPoint,
    build_polynomial,
    classic_scalars,
    energy,
    kappa,
    new_scalars,
    origin,
    polynomial_degree_in_eta,
    resolve_family,
    shift_parameters,
)
from askey_shift.models import RelationReport
from askey_shift.operators import (
    DEFAULT_OPERATOR_DEGREE,
    OperatorKind,
    add_identity,
    apply_operator,
    build_operator,
    classic_kinds,
    compose_operators,
    conjugate_by,
    jackson_scale,
    resolve_variant,
    scale_operator,
)
from askey_shift.relations.base import (
    EIGEN,
    ENERGY_IDENTITIES,
    FACTORIZATION_CLASSIC,
    RODRIGUES,
    SHAPE_INVARIANCE,
    SHIFT_CLASSIC,
    NotApplicableError,
    Verification,
)


def degrees(family: FamilyDescriptor, point: ParameterPoint, n_max: int) -> range:
    """Degrees 0..n_max, capped at N for finite families."""
    top = n_max if point.N is None or not family.is_finite else min(n_max, point.N)
    return range(top + 1)


def check_eigen(
    family: FamilyDescriptor | str, n: int, point: ParameterPoint, *, trial: int = 0
) -> RelationReport:
    family = resolve_family(family)
    v = Verification(EIGEN, family, point, n=n, trial=trial)
    with v.guard("eigen"):
        p = build_polynomial(family, n, point)
        hamiltonian = build_operator(family, None, point, OperatorKind.HAMILTONIAN)
        v.functions("H P_n = E_n P_n", apply_operator(hamiltonian, p), p * energy(family, n, point))
        v.scalars("deg_eta P_n = n", gaussian(polynomial_degree_in_eta(family, p, point)), gaussian(n))
        if family.framework.is_rdqm:
            v.scalars("P_n(origin) = 1", p.evaluate(origin(family)), ONE)
    return v.report()


def check_shift_classic(
    family: FamilyDescriptor | str, n: int, point: ParameterPoint, *, trial: int = 0
) -> RelationReport:
    """Forward relation at n and, for n >= 1, the backward relation onto P_n."""
    family = resolve_family(family)
    v = Verification(SHIFT_CLASSIC, family, point, n=n, trial=trial)
    with v.guard("shift_classic"):
        raised = shift_parameters(point, family.delta, 1, family)
        fwd, bwd = classic_kinds(family.framework)
        forward = build_operator(family, None, point, fwd)
        backward = build_operator(family, None, point, bwd)
        p = build_polynomial(family, n, point)
        lower = build_polynomial(family, n - 1, raised).substitute(jackson_scale(family, point))
        f_n, _ = classic_scalars(family, n, point)
        v.functions("F P_n = f_n P_{n-1}(lambda+delta)", apply_operator(forward, p), lower * f_n)
        if n >= 1:
            _, b_prev = classic_scalars(family, n - 1, point)
            v.functions("B P_{n-1}(lambda+delta) = b_{n-1} P_n", apply_operator(backward, lower), p * b_prev)
    return v.report()


def check_factorization_classic(
    family: FamilyDescriptor | str,
    point: ParameterPoint,
    *,
    degree: int = DEFAULT_OPERATOR_DEGREE,
    trial: int = 0,
) -> RelationReport:
    family = resolve_family(family)
    v = Verification(FACTORIZATION_CLASSIC, family, point, trial=trial, degree=degree)
    with v.guard("factorization_classic"):
        fwd, bwd = classic_kinds(family.framework)
        hamiltonian = build_operator(family, None, point, OperatorKind.HAMILTONIAN)
        product = compose_operators(
            build_operator(family, None, point, bwd), build_operator(family, None, point, fwd)
        )
        v.operators("H = B F", hamiltonian, product)
    return v.report()


def check_shape_invariance(
    family: FamilyDescriptor | str,
    point: ParameterPoint,
    *,
    degree: int = DEFAULT_OPERATOR_DEGREE,
    trial: int = 0,
) -> RelationReport:
    family = resolve_family(family)
    v = Verification(SHAPE_INVARIANCE, family, point, trial=trial, degree=degree)
    with v.guard("shape_invariance"):
        raised = shift_parameters(point, family.delta, 1, family)
        fwd, bwd = classic_kinds(family.framework)
        lhs = compose_operators(
            build_operator(family, None, point, fwd), build_operator(family, None, point, bwd)
        )
        lhs = conjugate_by(lhs, jackson_scale(family, point))
        raised_product = compose_operators(
            build_operator(family, None, raised, bwd), build_operator(family, None, raised, fwd)
        )
        rhs = add_identity(scale_operator(raised_product, kappa(family, point)), energy(family, 1, point))
        v.operators("F B = kappa B(lambda+delta) F(lambda+delta) + E_1", lhs, rhs)
    return v.report()


def new_energy(
    family: FamilyDescriptor,
    f_n: GaussianRational,
    b_n: GaussianRational,
    f_0: GaussianRational,
    b_0: GaussianRational,
) -> GaussianRational:
    """E_n from the new shift scalars with the framework's sign and factor."""
    if family.framework is Framework.OQM:
        return gaussian(4) * (f_n * b_n - f_0 * b_0)
    if family.framework is Framework.IDQM:
        return f_n * b_n - f_0 * b_0
    return f_0 * b_0 - f_n * b_n


def check_energy_identities(
    family: FamilyDescriptor | str,
    variant: str | None,
    point: ParameterPoint,
    n_max: int,
    *,
    trial: int = 0,
) -> RelationReport:
    """Scalar energy identities for n = 0..n_max.

    Without a variant: E_0 = 0, E_n = f_n b_{n-1} and the shape-invariance
    recursion. With a variant: E_n = 4(f~_n b~_n - f~_0 b~_0) on oQM,
    f~_n b~_n - f~_0 b~_0 on idQM and f~_0 b~_0 - f~_n b~_n on rdQM/rdQMJ.
    """
    family = resolve_family(family)
    resolved = resolve_variant(family, variant)
    v = Verification(
        ENERGY_IDENTITIES, family, point, variant=resolved.label if resolved else None, trial=trial
    )
    with v.guard("energy_identities"):
        ns = degrees(family, point, n_max)
        if resolved is None:
            v.scalars("E_0 = 0", energy(family, 0, point), ZERO)
            for n in ns[1:]:
                f_n, _ = classic_scalars(family, n, point)
                _, b_prev = classic_scalars(family, n - 1, point)
                v.scalars(f"E_{n} = f_{n} b_{n - 1}", energy(family, n, point), f_n * b_prev)
            raised = shift_parameters(point, family.delta, 1, family)
            k, e_1 = kappa(family, point), energy(family, 1, point)
            for n in ns[:-1]:
                v.scalars(
                    f"E_{n + 1} = kappa E_{n}(lambda+delta) + E_1",
                    energy(family, n + 1, point),
                    k * energy(family, n, raised) + e_1,
                )
        else:
            f_0, b_0 = new_scalars(family, resolved, 0, point)
            for n in ns:
                f_n, b_n = new_scalars(family, resolved, n, point)
                v.scalars(f"E_{n} from f~_{n} b~_{n}", energy(family, n, point), new_energy(family, f_n, b_n, f_0, b_0))
    return v.report()


def rodrigues_product(family: FamilyDescriptor, n: int, point: ParameterPoint) -> RationalFunction:
    """prod_{j=0}^{n-1} B(lambda + j delta) applied to 1.

    Each stage reads the previous one at r*eta on rdQMJ and divides by
    b_{n-1-j}(lambda + j delta) on oQM and idQM.
    """
    points = [point]
    for _ in range(n - 1):
        points.append(shift_parameters(points[-1], family.delta, 1, family))
    _, bwd = classic_kinds(family.framework)
    result = RationalFunction.one(family.coordinate)
    for j in reversed(range(n)):
        stage = points[j]
        scale: Substitution = jackson_scale(family, stage)
        result = apply_operator(build_operator(family, None, stage, bwd), result.substitute(scale))
        if family.framework in (Framework.OQM, Framework.IDQM):
            _, b = classic_scalars(family, n - 1 - j, stage)
            result = result * (ONE / b)
    return result


def check_rodrigues(
    family: FamilyDescriptor | str, n: int, point: ParameterPoint, *, trial: int = 0
) -> RelationReport:
    family = resolve_family(family)
    if not family.framework.is_discrete and family.b is None:
        raise NotApplicableError(RODRIGUES, family.id, "catalog entry has no classic b_n")
    v = Verification(RODRIGUES, family, point, n=n, trial=trial)
    with v.guard("rodrigues"):
        target = build_polynomial(family, n, point)
        v.functions("P_n = prod B(lambda + j delta) 1", rodrigues_product(family, n, point), target)
    return v.report()
