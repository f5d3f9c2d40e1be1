"""
Núcleo polinomial exato sobre ZZ[x, y, t, a, b, qa, qb].

Os polinômios são elementos esparsos de um anel do sympy com ordem lex;
coeficientes são inteiros de precisão arbitrária.
"""

import hashlib
import json
import logging
from typing import Dict, Iterable, Tuple

import mpmath
from sympy.polys.domains import ZZ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, ring

from phasecrit.poly_verify.errors import InexactDivisionError

logger = logging.getLogger(__name__)

POLY_RING, X, Y, T, A, B, QA, QB = ring("x,y,t,a,b,qa,qb", ZZ, lex)

MultiPoly = PolyElement

VARIABLES = ("x", "y", "t", "a", "b", "qa", "qb")


def exact_divide(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """
    Divide p por q exigindo resto nulo.

    Args:
        p: Dividendo
        q: Divisor não nulo

    Returns:
        Quociente exato

    Raises:
        ZeroDivisionError: Se q for nulo
        InexactDivisionError: Se q não dividir p; o resto fica em remainder
    """
    if not q:
        raise ZeroDivisionError("Divisão por polinômio nulo")
    quotient, remainder = p.div(q)
    if remainder:
        raise InexactDivisionError(
            f"{q} não divide o polinômio ({len(remainder)} termos no resto)", remainder
        )
    return quotient


def divides(q: MultiPoly, p: MultiPoly) -> bool:
    """Testa se q divide p exatamente."""
    return not p.rem(q)


def strip_factor(p: MultiPoly, factor: MultiPoly) -> Tuple[int, MultiPoly]:
    """
    Remove a maior potência de factor que divide p.

    Returns:
        (expoente removido, cofator)
    """
    count = 0
    while p and divides(factor, p):
        p = exact_divide(p, factor)
        count += 1
    return count, p


def strip_monomial(p: MultiPoly, index: int) -> Tuple[int, MultiPoly]:
    """Remove a maior potência da variável de posição index que divide todos os termos."""
    if not p:
        return 0, p
    power = min(monom[index] for monom in p.keys())
    if power == 0:
        return 0, p
    shifted = {}
    for monom, coeff in p.items():
        exps = list(monom)
        exps[index] -= power
        shifted[tuple(exps)] = coeff
    return power, POLY_RING.from_dict(shifted)


def split_by(p: MultiPoly, indices: Iterable[int]) -> Dict[tuple, MultiPoly]:
    """
    Agrupa os termos de p pelos expoentes das variáveis em indices.

    Returns:
        dict {expoentes: coeficiente polinomial sem essas variáveis}
    """
    indices = tuple(indices)
    groups: Dict[tuple, dict] = {}
    for monom, coeff in p.items():
        key = tuple(monom[i] for i in indices)
        exps = list(monom)
        for i in indices:
            exps[i] = 0
        groups.setdefault(key, {})[tuple(exps)] = coeff
    return {key: POLY_RING.from_dict(terms) for key, terms in groups.items()}


def radical_squares(d: int) -> Tuple[MultiPoly, MultiPoly]:
    """qa² = (y−1)(x^d−1) e qb² = (x−1)(y^d−1)."""
    return (Y - 1) * (X**d - 1), (X - 1) * (Y**d - 1)


def reduce_radicals(H: MultiPoly, d: int) -> MultiPoly:
    """
    Reduz qa^i e qb^j a grau ≤ 1 usando qa² e qb² de radical_squares.

    Args:
        H: Polinômio qualquer do anel
        d: Grau de ramificação

    Returns:
        Polinômio com grau ≤ 1 em qa e em qb
    """
    square_a, square_b = radical_squares(d)
    a_index, b_index = VARIABLES.index("qa"), VARIABLES.index("qb")
    result = POLY_RING.zero
    for (i, j), coeff in split_by(H, (a_index, b_index)).items():
        term = coeff * square_a ** (i // 2) * square_b ** (j // 2)
        if i % 2:
            term = term * QA
        if j % 2:
            term = term * QB
        result += term
    return result


def serialize_poly(p: MultiPoly) -> list:
    """Termos em ordem canônica como [[expoentes...], coeficiente]."""
    return [[list(monom), int(coeff)] for monom, coeff in p.terms()]


def poly_hash(p: MultiPoly) -> str:
    """SHA-256 da serialização canônica."""
    payload = json.dumps(serialize_poly(p), separators=(",", ":"))
    return hashlib.sha256(payload.encode("ascii")).hexdigest()


def evaluate_mp(p: MultiPoly, values: Dict[str, mpmath.mpf]) -> mpmath.mpf:
    """
    Avalia p em precisão estendida; variáveis ausentes valem 0.

    Args:
        p: Polinômio
        values: Valores por nome de variável

    Returns:
        Valor mpmath na precisão corrente
    """
    point = [values.get(name, mpmath.mpf(0)) for name in VARIABLES]
    powers: Dict[tuple, mpmath.mpf] = {}
    total = mpmath.mpf(0)
    for monom, coeff in p.items():
        term = mpmath.mpf(int(coeff))
        for index, exp in enumerate(monom):
            if exp:
                key = (index, exp)
                if key not in powers:
                    powers[key] = point[index] ** exp
                term *= powers[key]
        total += term
    return total
