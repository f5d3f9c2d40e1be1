"""
Maximização do programa de entropia com marginais prescritas.

Resolve max g(Z) = ΣΣ (Z_ij ln M_ij − Z_ij ln Z_ij) sujeito às somas de
linha α e de coluna β, com Z_ij = 0 onde M_ij = 0. O maximizador tem a forma
Z*_ij = M_ij R_i C_j e é obtido por escalonamento alternado de linhas e
colunas.
"""

import itertools
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import null_space
from scipy.optimize import linprog

from phasecrit.models import MarginalSpec, ScalingSolution
from phasecrit.utils.config import get_max_sweeps, get_scaling_tol

logger = logging.getLogger(__name__)

_FEASIBILITY_TOL = 1e-12


class InfeasibleMarginalsError(Exception):
    """Exceção lançada quando nenhuma matriz com o suporte de M atinge as marginais."""

    pass


class ScalingConvergenceError(Exception):
    """Exceção lançada quando o escalonamento alternado não converge."""

    pass


def entropy_objective(M: np.ndarray, Z: np.ndarray) -> float:
    """
    Avalia g(Z) = Σ Z ln M − Z ln Z com a convenção 0·ln 0 = 0.

    Returns:
        float, -inf se Z tiver massa onde M é zero
    """
    M = np.asarray(M, dtype=float)
    Z = np.asarray(Z, dtype=float)
    positive = Z > 0
    if np.any(positive & (M <= 0)):
        return float("-inf")
    z = Z[positive]
    return float(np.sum(z * np.log(M[positive]) - z * np.log(z)))


def _hall_violation(support: np.ndarray, alpha: np.ndarray, beta: np.ndarray):
    """
    Procura um conjunto de linhas I com Σα_I > Σβ_{N(I)} (condição de oferta e demanda).

    Returns:
        (I, demanda, oferta) da pior violação ou None
    """
    m = support.shape[0]
    worst = None
    for size in range(1, m + 1):
        for subset in itertools.combinations(range(m), size):
            neighbors = np.any(support[list(subset)], axis=0)
            demand = alpha[list(subset)].sum()
            supply = beta[neighbors].sum()
            if demand > supply + _FEASIBILITY_TOL:
                if worst is None or demand - supply > worst[1] - worst[2]:
                    worst = (subset, demand, supply)
    return worst


def _has_tight_subset(support: np.ndarray, alpha: np.ndarray, beta: np.ndarray) -> bool:
    m = support.shape[0]
    for size in range(1, m):
        for subset in itertools.combinations(range(m), size):
            neighbors = np.any(support[list(subset)], axis=0)
            if neighbors.all():
                continue
            if abs(alpha[list(subset)].sum() - beta[neighbors].sum()) <= _FEASIBILITY_TOL:
                return True
    return False


def _forced_zero_cells(support: np.ndarray, alpha: np.ndarray, beta: np.ndarray) -> np.ndarray:
    """
    Células do suporte que valem zero em toda solução viável.

    Cada célula é testada maximizando Z_ij por programação linear.
    """
    cells = np.argwhere(support)
    m, n = support.shape
    a_eq = np.zeros((m + n, len(cells)))
    for k, (i, j) in enumerate(cells):
        a_eq[i, k] = 1.0
        a_eq[m + j, k] = 1.0
    b_eq = np.concatenate([alpha, beta])
    forced = np.zeros_like(support)
    for k, (i, j) in enumerate(cells):
        objective = np.zeros(len(cells))
        objective[k] = -1.0
        result = linprog(objective, A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs")
        if result.status == 0 and -result.fun <= _FEASIBILITY_TOL:
            forced[i, j] = True
    return forced


def effective_support(M: np.ndarray, marginals: MarginalSpec) -> np.ndarray:
    """
    Suporte efetivo do maximizador: M_ij > 0, marginais positivas e células
    não forçadas a zero pelas restrições.

    Raises:
        InfeasibleMarginalsError: Se as marginais não forem atingíveis
    """
    M = np.asarray(M, dtype=float)
    alpha, beta = marginals.row_marginals, marginals.col_marginals
    rows, cols = alpha > 0, beta > 0
    support = (M > 0) & rows[:, None] & cols[None, :]

    sub = support[np.ix_(rows, cols)]
    a_sub, b_sub = alpha[rows], beta[cols]
    violation = _hall_violation(sub, a_sub, b_sub)
    if violation is not None:
        row_ids = np.flatnonzero(rows)[list(violation[0])].tolist()
        raise InfeasibleMarginalsError(
            f"Marginais de linha {row_ids} exigem massa {violation[1]:.6g}, "
            f"mas as colunas alcançáveis oferecem apenas {violation[2]:.6g}"
        )
    if _has_tight_subset(sub, a_sub, b_sub):
        forced = _forced_zero_cells(sub, a_sub, b_sub)
        if forced.any():
            logger.info("Escalonamento com %d células forçadas a zero", int(forced.sum()))
        full = np.zeros_like(support)
        full[np.ix_(rows, cols)] = forced
        support &= ~full
    return support


def maximize_entropy(
    M: np.ndarray,
    marginals: MarginalSpec,
    initial_cols: Optional[np.ndarray] = None,
    tol: Optional[float] = None,
    max_sweeps: Optional[int] = None,
) -> ScalingSolution:
    """
    Maximiza g(Z) sobre a região das marginais por escalonamento alternado.

    Alterna R_i = α_i / Σ_j M_ij C_j e C_j = β_j / Σ_i M_ij R_i até que o
    maior resíduo relativo das marginais fique abaixo de tol.

    Args:
        M: Matriz não negativa m×n
        marginals: Marginais de linha (m) e coluna (n)
        initial_cols: Escaladores de coluna iniciais (padrão: uns)
        tol: Resíduo relativo máximo (padrão: PHASECRIT_SCALING_TOL)
        max_sweeps: Limite de varreduras (padrão: PHASECRIT_MAX_SWEEPS)

    Returns:
        ScalingSolution com gauge R₁ = 1

    Raises:
        InfeasibleMarginalsError: Se o padrão de suporte tornar as marginais inatingíveis
        ScalingConvergenceError: Se o resíduo final ficar acima de 1e-6
    """
    M = np.asarray(M, dtype=float)
    if M.shape != marginals.shape:
        raise ValueError(f"Dimensões incompatíveis: M {M.shape}, marginais {marginals.shape}")
    if np.any(M < 0):
        raise ValueError("M deve ser não negativa")
    tol = get_scaling_tol() if tol is None else tol
    max_sweeps = get_max_sweeps() if max_sweeps is None else max_sweeps

    alpha, beta = marginals.row_marginals, marginals.col_marginals
    support = effective_support(M, marginals)
    rows, cols = alpha > 0, beta > 0
    Ms = np.where(support, M, 0.0)[np.ix_(rows, cols)]
    a, b = alpha[rows], beta[cols]

    C = np.ones(b.size) if initial_cols is None else np.asarray(initial_cols, float)[cols]
    residual = np.inf
    sweeps = 0
    while sweeps < max_sweeps:
        sweeps += 1
        R = a / (Ms @ C)
        C = b / (Ms.T @ R)
        residual = float(np.max(np.abs(R * (Ms @ C) / a - 1.0)))
        if residual < tol:
            break

    if residual >= tol:
        logger.warning(
            "Escalonamento parou após %d varreduras com resíduo %.3e", sweeps, residual
        )
        if residual > 1e-6:
            raise ScalingConvergenceError(
                f"Escalonamento não convergiu: resíduo {residual:.3e} após {sweeps} varreduras"
            )

    gauge = R[0]
    R_full = np.zeros(alpha.size)
    C_full = np.zeros(beta.size)
    R_full[rows] = R / gauge
    C_full[cols] = C * gauge

    Z = np.where(support, R_full[:, None] * M * C_full[None, :], 0.0)
    positive = Z > 0
    RC = (R_full[:, None] * C_full[None, :])[positive]
    g_star = float(-np.sum(Z[positive] * np.log(RC)))

    return ScalingSolution(
        R=R_full, C=C_full, Z_star=Z, g_star=g_star, sweeps=sweeps, residual=residual
    )


def gstar_gradient(
    M: np.ndarray,
    marginals: MarginalSpec,
    marginal_derivatives: Sequence[Tuple[np.ndarray, np.ndarray]],
    solution: Optional[ScalingSolution] = None,
) -> Tuple[float, ...]:
    """
    Derivadas de g* em relação aos parâmetros das marginais.

    Para cada parâmetro u, ∂g*/∂u = −Σ ln(R_i)·∂α_i/∂u − Σ ln(C_j)·∂β_j/∂u.

    Args:
        M: Matriz do programa
        marginals: Marginais no ponto
        marginal_derivatives: Lista de pares (∂α/∂u, ∂β/∂u), um por parâmetro
        solution: Solução já calculada (opcional)

    Returns:
        Tupla com uma derivada por parâmetro

    Raises:
        ValueError: Se alguma marginal for nula
    """
    if np.any(marginals.row_marginals <= 0) or np.any(marginals.col_marginals <= 0):
        raise ValueError("O gradiente de g* exige todas as marginais estritamente positivas")
    if solution is None:
        solution = maximize_entropy(M, marginals)
    log_r, log_c = np.log(solution.R), np.log(solution.C)
    result = []
    for d_rows, d_cols in marginal_derivatives:
        d_rows = np.asarray(d_rows, dtype=float)
        d_cols = np.asarray(d_cols, dtype=float)
        result.append(float(-(log_r @ d_rows) - (log_c @ d_cols)))
    return tuple(result)


def _full_dimensional_rows(m: int, n: int) -> List[np.ndarray]:
    """
    Representação afim de cada célula nas variáveis livres Z_ij, i < m−1, j < n−1.

    Returns:
        Lista (em ordem de linhas) dos vetores de coeficientes de cada célula
    """
    k = (m - 1) * (n - 1)

    def index(i, j):
        return i * (n - 1) + j

    vectors = []
    for i in range(m):
        for j in range(n):
            a = np.zeros(k)
            if i < m - 1 and j < n - 1:
                a[index(i, j)] = 1.0
            elif i < m - 1:
                for jj in range(n - 1):
                    a[index(i, jj)] = -1.0
            elif j < n - 1:
                for ii in range(m - 1):
                    a[index(ii, j)] = -1.0
            else:
                a[:] = 1.0
            vectors.append(a)
    return vectors


def entropy_hessian(Z: np.ndarray) -> np.ndarray:
    """
    Hessiana de g na representação de dimensão completa em Z (suporte cheio).

    Returns:
        Matriz ((m−1)(n−1))×((m−1)(n−1))
    """
    m, n = Z.shape
    H = np.zeros(((m - 1) * (n - 1),) * 2)
    for a, z in zip(_full_dimensional_rows(m, n), Z.ravel()):
        H -= np.outer(a, a) / z
    return H


def quadratic_decay_check(
    M: np.ndarray, marginals: MarginalSpec, solution: Optional[ScalingSolution] = None
) -> dict:
    """
    Verifica que a Hessiana de g é negativa definida no maximizador.

    Com suporte cheio usa as variáveis livres Z_ij (i < m−1, j < n−1); com
    células nulas usa uma base ortonormal das direções viáveis no suporte.

    Returns:
        dict com pass, dimensão, autovalores e a Hessiana
    """
    if solution is None:
        solution = maximize_entropy(M, marginals)
    Z = solution.Z_star
    support = Z > 0
    if support.all():
        H = entropy_hessian(Z)
    else:
        cells = np.argwhere(support)
        m, n = Z.shape
        a_eq = np.zeros((m + n, len(cells)))
        for k, (i, j) in enumerate(cells):
            a_eq[i, k] = 1.0
            a_eq[m + j, k] = 1.0
        basis = null_space(a_eq)
        weights = 1.0 / Z[support]
        H = -(basis.T * weights) @ basis
    if H.size == 0:
        return {"pass": True, "dimension": 0, "eigenvalues": [], "hessian": H}
    eigenvalues = np.linalg.eigvalsh(H)
    return {
        "pass": bool(np.max(eigenvalues) < 0),
        "dimension": int(H.shape[0]),
        "eigenvalues": eigenvalues,
        "hessian": H,
    }
