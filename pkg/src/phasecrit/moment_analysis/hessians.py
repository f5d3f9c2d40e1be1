"""
Hessianas de Φ₁ e Φ₂ na representação de dimensão completa.

Φ é uma soma de termos c·t·ln t com t afim nas variáveis livres, mais termos
lineares; a Hessiana é Σ c·aaᵀ/t, onde a é o gradiente de t.

Ordem das variáveis: (α, β, x₁₁) para Φ₁ e (γ, δ, y₁₁, …, y₃₃) para Φ₂.
Os menores principais são tomados a partir do canto inferior direito.
"""

from typing import Iterable, List, Tuple

import numpy as np

from phasecrit.models import SpinModel


def _accumulate(dim: int, terms: Iterable[Tuple[float, np.ndarray, float]]) -> np.ndarray:
    H = np.zeros((dim, dim))
    for coefficient, gradient, value in terms:
        H += coefficient * np.outer(gradient, gradient) / value
    return H


def _unit(dim: int, index: int, scale: float = 1.0) -> np.ndarray:
    v = np.zeros(dim)
    v[index] = scale
    return v


def phi1_hessian(model: SpinModel, alpha: float, beta: float, X: np.ndarray) -> np.ndarray:
    """
    Hessiana de Φ₁ em (α, β, X).

    Com B₁ = 0 a célula x₁₁ é identicamente nula e as variáveis são (α, β).

    Args:
        model: Modelo de spins
        alpha, beta: Ponto interior
        X: Maximizador 2×2 em (α, β)

    Returns:
        Matriz 3×3 (ou 2×2 para B₁ = 0)
    """
    d = model.delta - 1
    if model.b1 == 0:
        dim = 2
        cells = [
            (np.array([1.0, 0.0]), X[0, 1]),
            (np.array([0.0, 1.0]), X[1, 0]),
            (np.array([-1.0, -1.0]), X[1, 1]),
        ]
    else:
        dim = 3
        cells = [
            (np.array([0.0, 0.0, 1.0]), X[0, 0]),
            (np.array([1.0, 0.0, -1.0]), X[0, 1]),
            (np.array([0.0, 1.0, -1.0]), X[1, 0]),
            (np.array([-1.0, -1.0, 1.0]), X[1, 1]),
        ]
    entropy_terms = [
        (d, _unit(dim, 0), alpha),
        (d, _unit(dim, 0, -1.0), 1 - alpha),
        (d, _unit(dim, 1), beta),
        (d, _unit(dim, 1, -1.0), 1 - beta),
    ]
    cell_terms = [(-model.delta, a, x) for a, x in cells]
    return _accumulate(dim, entropy_terms + cell_terms)


def _phi2_cell_gradients() -> List[List[np.ndarray]]:
    """Gradientes afins de cada y_ij nas variáveis (γ, δ, y₁₁, …, y₃₃)."""
    dim = 11
    d_rows = np.array([1.0, -1.0, -1.0, 1.0])

    def free(i, j):
        return 2 + 3 * i + j

    grads = [[np.zeros(dim) for _ in range(4)] for _ in range(4)]
    for i in range(3):
        for j in range(3):
            grads[i][j][free(i, j)] = 1.0
    for i in range(3):
        grads[i][3][0] = d_rows[i]
        for j in range(3):
            grads[i][3][free(i, j)] = -1.0
    for j in range(3):
        grads[3][j][1] = d_rows[j]
        for i in range(3):
            grads[3][j][free(i, j)] = -1.0
    grads[3][3][0] = d_rows[3]
    grads[3][3][1] = -d_rows[:3].sum()
    grads[3][3][2:] = 1.0
    return grads


def phi2_hessian(
    model: SpinModel, alpha: float, beta: float, gamma: float, delta: float, Y: np.ndarray
) -> np.ndarray:
    """
    Hessiana 11×11 de Φ₂ em (γ, δ, Y), exigindo Y com suporte cheio.

    Raises:
        ValueError: Se alguma entrada de Y for nula
    """
    if np.any(Y <= 0):
        raise ValueError("A Hessiana de Φ₂ exige Y estritamente positivo")
    dim = 11
    d = model.delta - 1
    entropy_terms = [
        (2 * d, _unit(dim, 0, -1.0), alpha - gamma),
        (d, _unit(dim, 0), gamma),
        (d, _unit(dim, 0), 1 - 2 * alpha + gamma),
        (2 * d, _unit(dim, 1, -1.0), beta - delta),
        (d, _unit(dim, 1), delta),
        (d, _unit(dim, 1), 1 - 2 * beta + delta),
    ]
    grads = _phi2_cell_gradients()
    cell_terms = [
        (-model.delta, grads[i][j], Y[i, j]) for i in range(4) for j in range(4)
    ]
    return _accumulate(dim, entropy_terms + cell_terms)


def lower_right_log_minors(H: np.ndarray) -> List[Tuple[float, float]]:
    """
    Sinais e logaritmos dos menores principais de −H a partir do canto inferior direito.

    Returns:
        Lista [(sinal, log|det|)] do menor 1×1 até o determinante completo
    """
    neg = -np.asarray(H)
    n = neg.shape[0]
    result = []
    for k in range(1, n + 1):
        sign, logdet = np.linalg.slogdet(neg[n - k :, n - k :])
        result.append((float(sign), float(logdet)))
    return result


def schur_complement(H: np.ndarray, outer: int = 2) -> np.ndarray:
    """
    Complemento de Schur de −H nas primeiras `outer` variáveis.

    Para Φ₂ devolve a forma quadrática em (γ, δ) após integrar Y; seu
    determinante é 4DF − E².
    """
    neg = -np.asarray(H)
    a = neg[:outer, :outer]
    b = neg[:outer, outer:]
    c = neg[outer:, outer:]
    return a - b @ np.linalg.solve(c, b.T)
