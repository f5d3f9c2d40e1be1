"""
Certificado de sinais do caso hard-core para d = Δ−1 ∈ {2, 3, 4}.

Pipeline:
    1. F = (y(1+a)²−1−a+ab)(x(1+b)²+ab+a)^d − (x(1+b)²−1−b+ab)(y(1+a)²+ab+b)^d,
       dividido exatamente por x(b+1)²−y(a+1)²+a−b (com o sinal trocado);
    2. a = (y−1+qa)/(x^d−y), b = (x−1+qb)/(y^d−x), limpando os denominadores;
    3. qa² → (y−1)(x^d−1), qb² → (x−1)(y^d−1);
    4. H = c₀₀ + c₁₀qa + c₀₁qb + c₁₁qa·qb;
    5. x = (ty+y^d)/(t+1) em cada c, removendo y^a, (y−1)^b, (1+t) e
       s = t+1+y+…+y^{d−1}; o cofator restante deve ter coeficientes de um só sinal.

No CASO 1 (y > 1, qa, qb > 0) e no CASO 2 (y < 1, qa, qb < 0) os quatro
termos de H têm o mesmo sinal, logo H ≠ 0.
"""

import logging
import time
from typing import Dict, Optional, Sequence, Tuple

import mpmath

from phasecrit.models import CoefficientCertificate, SignCertificate
from phasecrit.poly_verify.errors import InexactDivisionError, PipelineStageError
from phasecrit.poly_verify.kernel import (
    A,
    B,
    QA,
    QB,
    T,
    VARIABLES,
    X,
    Y,
    MultiPoly,
    evaluate_mp,
    exact_divide,
    poly_hash,
    radical_squares,
    reduce_radicals,
    split_by,
    strip_factor,
    strip_monomial,
)
from phasecrit.random_graphs.sampling import make_rng

logger = logging.getLogger(__name__)

SUPPORTED_D = (2, 3, 4)

COEFFICIENT_NAMES = ("c00", "c01", "c10", "c11")

_MAX_OFFENDING = 20
_LEADING_COUNT = 3


def _check_d(d: int) -> None:
    if d not in SUPPORTED_D:
        raise ValueError(f"d deve estar em {SUPPORTED_D}: {d}")


def case_numerator(d: int) -> MultiPoly:
    """F antes da divisão pelo denominador."""
    left = (Y * (1 + A) ** 2 - 1 - A + A * B) * (X * (1 + B) ** 2 + A * B + A) ** d
    right = (X * (1 + B) ** 2 - 1 - B + A * B) * (Y * (1 + A) ** 2 + A * B + B) ** d
    return left - right


def case_denominator() -> MultiPoly:
    return X * (B + 1) ** 2 - Y * (A + 1) ** 2 + A - B


def case_quotient(d: int) -> MultiPoly:
    """
    −F / (x(b+1)²−y(a+1)²+a−b), em a, b, x, y.

    Raises:
        PipelineStageError: Se a divisão não for exata
    """
    _check_d(d)
    try:
        return exact_divide(-case_numerator(d), case_denominator())
    except InexactDivisionError as exc:
        raise PipelineStageError("divide", str(exc)) from exc


def _reduced_powers(base: MultiPoly, radical: MultiPoly, square: MultiPoly, n: int) -> list:
    """
    (base + radical)^i = p0 + p1·radical para i = 0..n, com radical² = square.

    Returns:
        Lista de pares (p0, p1)
    """
    powers = [(base.ring.one, base.ring.zero)]
    for _ in range(n):
        p0, p1 = powers[-1]
        powers.append((p0 * base + p1 * square, p0 + p1 * base))
    return powers


def build_case_polynomial(d: int) -> Tuple[MultiPoly, Dict[str, int]]:
    """
    Monta H(x, y, qa, qb) com grau ≤ 1 em qa e qb.

    A substituição de a e b é feita termo a termo: cada a^i b^j vira
    Na^i Da^{A−i} Nb^j Db^{B−j}, com A, B os graus em a e b do quociente,
    Na = y−1+qa, Da = x^d−y, Nb = x−1+qb, Db = y^d−x. As potências de Na e Nb
    já saem reduzidas por qa² e qb².

    Args:
        d: Grau de ramificação (2, 3 ou 4)

    Returns:
        (H, {"a": A, "b": B}) com os expoentes de limpeza usados

    Raises:
        ValueError: Se d não for suportado
        PipelineStageError: Se algum estágio falhar
    """
    G = case_quotient(d)
    deg_a, deg_b = G.degree(A), G.degree(B)
    if deg_a != 2 * d - 1 or deg_b != 2 * d - 1:
        logger.warning("Graus do quociente em (a, b) = (%d, %d); esperado %d", deg_a, deg_b, 2 * d - 1)

    square_a, square_b = radical_squares(d)
    na = _reduced_powers(Y - 1, QA, square_a, deg_a)
    nb = _reduced_powers(X - 1, QB, square_b, deg_b)
    da, db = [G.ring.one], [G.ring.one]
    for _ in range(max(deg_a, deg_b)):
        da.append(da[-1] * (X**d - Y))
        db.append(db[-1] * (Y**d - X))

    groups = split_by(G, (VARIABLES.index("a"), VARIABLES.index("b")))
    H = G.ring.zero
    for i in range(deg_a + 1):
        inner = G.ring.zero
        for j in range(deg_b + 1):
            coeff = groups.get((i, j))
            if coeff is None:
                continue
            b0, b1 = nb[j]
            inner += coeff * db[deg_b - j] * (b0 + b1 * QB)
        if inner:
            a0, a1 = na[i]
            H += inner * da[deg_a - i] * (a0 + a1 * QA)

    H = reduce_radicals(H, d)
    if H.degree(QA) > 1 or H.degree(QB) > 1:
        raise PipelineStageError("reduce", "grau em qa ou qb acima de 1 após a redução")
    logger.info("d=%d: H com %d termos", d, len(H))
    return H, {"a": deg_a, "b": deg_b}


def extract_c_coefficients(H: MultiPoly) -> Tuple[MultiPoly, MultiPoly, MultiPoly, MultiPoly]:
    """
    Separa H = c₀₀ + c₁₀qa + c₀₁qb + c₁₁qa·qb.

    Returns:
        (c00, c01, c10, c11), onde c01 multiplica qb e c10 multiplica qa

    Raises:
        PipelineStageError: Se H tiver grau > 1 em qa ou qb
    """
    if H.degree(QA) > 1 or H.degree(QB) > 1:
        raise PipelineStageError("extract", "H deve ter grau ≤ 1 em qa e qb")
    groups = split_by(H, (VARIABLES.index("qa"), VARIABLES.index("qb")))
    zero = H.ring.zero
    return (
        groups.get((0, 0), zero),
        groups.get((0, 1), zero),
        groups.get((1, 0), zero),
        groups.get((1, 1), zero),
    )


def reparametrize(c: MultiPoly, d: int) -> Tuple[MultiPoly, int]:
    """
    c((ty+y^d)/(t+1), y)·(1+t)^N com N = grau de c em x, por Horner.

    Returns:
        (polinômio em t, y; N)
    """
    N = c.degree(X)
    by_x = split_by(c, (VARIABLES.index("x"),))
    numerator = T * Y + Y**d
    denominator = 1 + T
    acc = by_x.get((N,), c.ring.zero)
    scale = c.ring.one
    for k in range(N - 1, -1, -1):
        scale = scale * denominator
        acc = acc * numerator + by_x.get((k,), c.ring.zero) * scale
    return acc, N


def _sign(value) -> int:
    return 1 if value > 0 else -1


def certify_coefficient(name: str, c: MultiPoly, d: int) -> CoefficientCertificate:
    """
    Fatora um coeficiente após a reparametrização e checa os sinais do cofator.

    Raises:
        PipelineStageError: Se o coeficiente for nulo
    """
    if not c:
        raise PipelineStageError("certify", f"{name} é identicamente nulo")
    u, N = reparametrize(c, d)
    y_power, u = strip_monomial(u, VARIABLES.index("y"))
    y_minus_one, u = strip_factor(u, Y - 1)
    t_stripped, u = strip_factor(u, 1 + T)
    shifted = T + sum(Y**i for i in range(d))
    shifted_power, u = strip_factor(u, shifted)
    _, residual = u.primitive()

    signs = [_sign(coeff) for coeff in residual.values()]
    positive = sum(1 for s in signs if s > 0)
    all_one_sign = positive in (0, len(signs))
    residual_sign = 1 if positive * 2 >= len(signs) else -1
    normalized = residual * residual_sign
    offending = [
        [list(monom), int(coeff)]
        for monom, coeff in normalized.terms()
        if coeff < 0
    ][:_MAX_OFFENDING]

    y_index, t_index = VARIABLES.index("y"), VARIABLES.index("t")
    base_row = sorted(
        (monom[t_index], int(coeff)) for monom, coeff in normalized.items() if monom[y_index] == 0
    )
    leading = [coeff for _, coeff in base_row[:_LEADING_COUNT]]

    if not all_one_sign:
        logger.warning("%s (d=%d): cofator com sinais mistos", name, d)
    return CoefficientCertificate(
        name=name,
        y_power=y_power,
        y_minus_one_power=y_minus_one,
        one_plus_t_power=N - t_stripped,
        shifted_sum_power=shifted_power,
        residual_terms=len(normalized),
        residual_sign=residual_sign,
        all_one_sign=all_one_sign,
        leading_t_coefficients=leading,
        offending_monomials=offending,
        content_hash=poly_hash(normalized),
    )


def verify_sign_pattern(c_polys: Sequence[MultiPoly], d: int) -> SignCertificate:
    """
    Certifica os sinais de c₀₀, c₀₁, c₁₀, c₁₁ nos dois casos.

    Args:
        c_polys: (c00, c01, c10, c11) de extract_c_coefficients
        d: Grau de ramificação

    Returns:
        SignCertificate com o resultado do CASO 1 e do CASO 2
    """
    certs = {
        name: certify_coefficient(name, c, d) for name, c in zip(COEFFICIENT_NAMES, c_polys)
    }
    uniform = all(cert.all_one_sign for cert in certs.values())

    # termos c₀₀, c₀₁qb, c₁₀qa, c₁₁qa·qb
    above = [
        certs["c00"].sign_for_y_above_one,
        certs["c01"].sign_for_y_above_one,
        certs["c10"].sign_for_y_above_one,
        certs["c11"].sign_for_y_above_one,
    ]
    below = [
        certs["c00"].sign_for_y_below_one,
        -certs["c01"].sign_for_y_below_one,
        -certs["c10"].sign_for_y_below_one,
        certs["c11"].sign_for_y_below_one,
    ]
    return SignCertificate(
        d=d,
        coefficients=certs,
        case1_pass=uniform and len(set(above)) == 1,
        case2_pass=uniform and len(set(below)) == 1,
    )


def _stage(name: str, func, *args):
    start = time.perf_counter()
    try:
        result = func(*args)
    except PipelineStageError:
        raise
    except Exception as exc:
        raise PipelineStageError(name, str(exc)) from exc
    elapsed = time.perf_counter() - start
    logger.info("Estágio %s concluído em %.2fs", name, elapsed)
    return result, elapsed


def verify_hardcore_case(d: int) -> dict:
    """
    Executa o pipeline completo para um valor de d.

    Args:
        d: Grau de ramificação (2, 3 ou 4)

    Returns:
        dict com o certificado, os expoentes de limpeza, o número de termos
        de H e o tempo de cada estágio

    Raises:
        ValueError: Se d não for suportado
        PipelineStageError: Se algum estágio falhar
    """
    _check_d(d)
    timings = {}
    (H, clearing), timings["build"] = _stage("build", build_case_polynomial, d)
    coefficients, timings["extract"] = _stage("extract", extract_c_coefficients, H)
    certificate, timings["certify"] = _stage("certify", verify_sign_pattern, coefficients, d)
    logger.info("d=%d: certificado %s", d, "aprovado" if certificate.passed else "reprovado")
    return {
        "d": d,
        "delta": d + 1,
        "passed": certificate.passed,
        "certificate": certificate,
        "clearing_powers": clearing,
        "h_terms": len(H),
        "h_hash": poly_hash(H),
        "coefficient_terms": {name: len(c) for name, c in zip(COEFFICIENT_NAMES, coefficients)},
        "timings": timings,
    }


def numeric_cross_check(
    d: int,
    samples: int = 100,
    seed: Optional[int] = None,
    H: Optional[MultiPoly] = None,
    clearing: Optional[Dict[str, int]] = None,
    precision: int = 50,
) -> dict:
    """
    Compara H com a avaliação direta de −F/denominador nos valores originais de a, b.

    Os pontos (y, t) são sorteados em ((0,1) ∪ (1,3)) × (0,10); x vem da
    reparametrização e qa, qb levam o sinal do caso (positivo se y > 1).

    Returns:
        dict com o maior erro relativo e pass (≤ 1e−6)
    """
    _check_d(d)
    if H is None or clearing is None:
        H, clearing = build_case_polynomial(d)
    rng = make_rng(seed)
    worst = 0.0
    with mpmath.workdps(precision):
        for k in range(samples):
            if k % 2:
                y_val = rng.uniform(1.05, 3.0)
            else:
                y_val = rng.uniform(0.05, 0.95)
            t_val = rng.uniform(0.01, 10.0)
            y = mpmath.mpf(y_val)
            t = mpmath.mpf(t_val)
            x = (t * y + y**d) / (t + 1)
            sign = 1 if y > 1 else -1
            qa = sign * mpmath.sqrt((y - 1) * (x**d - 1))
            qb = sign * mpmath.sqrt((x - 1) * (y**d - 1))
            a = (y - 1 + qa) / (x**d - y)
            b = (x - 1 + qb) / (y**d - x)

            numerator = (y * (1 + a) ** 2 - 1 - a + a * b) * (x * (1 + b) ** 2 + a * b + a) ** d - (
                x * (1 + b) ** 2 - 1 - b + a * b
            ) * (y * (1 + a) ** 2 + a * b + b) ** d
            direct = -numerator / (x * (b + 1) ** 2 - y * (a + 1) ** 2 + a - b)
            cleared = evaluate_mp(H, {"x": x, "y": y, "qa": qa, "qb": qb})
            via_h = cleared / ((x**d - y) ** clearing["a"] * (y**d - x) ** clearing["b"])
            scale = max(abs(direct), mpmath.mpf(10) ** (-precision // 2))
            worst = max(worst, float(abs(via_h - direct) / scale))
    return {"d": d, "samples": samples, "max_relative_error": worst, "pass": bool(worst <= 1e-6)}


def parity_pattern(certificate: SignCertificate) -> Dict[str, str]:
    """Paridade do expoente de (y−1) por coeficiente."""
    return {
        name: "even" if cert.y_minus_one_power % 2 == 0 else "odd"
        for name, cert in certificate.coefficients.items()
    }

