"""
Matriz de transição dos ciclos condicionados à configuração planta.

    A = [[0, y, 0, y],
         [z, 0, z, 0],
         [0, 1, 0, w],
         [1, 0, w, 0]]

com x = 1/(B₁√((B₂+Q⁻)(B₂+Q⁺))), y = B₁²Q⁺(B₂+Q⁻)/(1+B₁Q⁻),
z = B₁²Q⁻(B₂+Q⁺)/(1+B₁Q⁺) e w = B₁B₂. Para i par,
E[YXᵢ]/E[Y] = (r(Δ,i)/2i)·Σⱼ(x·eⱼ)^i.
"""

import logging
from typing import Optional

import numpy as np

from phasecrit.models import SpinModel, TreePhaseData
from phasecrit.random_graphs.errors import SpectrumMismatchError
from phasecrit.tree_criticality import solve_tree_fixed_points

logger = logging.getLogger(__name__)

SPECTRUM_TOL = 1e-9


def transition_matrix(model: SpinModel, data: TreePhaseData) -> tuple:
    """Devolve (A, x) nos pontos fixos Q⁺, Q⁻."""
    b1, b2 = model.b1, model.b2
    qp, qm = data.Q_plus, data.Q_minus
    x = 1.0 / (b1 * np.sqrt((b2 + qm) * (b2 + qp)))
    y = b1**2 * qp * (b2 + qm) / (1 + b1 * qm)
    z = b1**2 * qm * (b2 + qp) / (1 + b1 * qp)
    w = b1 * b2
    A = np.array(
        [
            [0.0, y, 0.0, y],
            [z, 0.0, z, 0.0],
            [0.0, 1.0, 0.0, w],
            [1.0, 0.0, w, 0.0],
        ]
    )
    return A, float(x)


def transition_matrix_spectrum(
    model: SpinModel, data: Optional[TreePhaseData] = None, max_len: int = 12
) -> dict:
    """
    Autovalores da matriz de transição e suas formas fechadas.

    e₁ = −e₂ = B₁(1−B₁B₂)√(Q⁺Q⁻/((1+B₁Q⁺)(1+B₁Q⁻)))
    e₃ = −e₄ = B₁√((B₂+Q⁺)(B₂+Q⁻))

    Também confere Σⱼ(x·eⱼ)^i = 2(1 + ω^{i/2}) para i par até max_len.

    Returns:
        dict com A, x, autovalores numéricos, formas fechadas e δᵢ

    Raises:
        ValueError: Se B₁ = 0 (x não está definido)
        SpectrumMismatchError: Se o espectro numérico divergir além de 1e−9
    """
    if model.b1 <= 0:
        raise ValueError("A matriz de transição exige B₁ > 0")
    data = data or solve_tree_fixed_points(model)
    A, x = transition_matrix(model, data)
    b1, b2 = model.b1, model.b2
    qp, qm = data.Q_plus, data.Q_minus

    e1 = b1 * (1 - b1 * b2) * np.sqrt(qp * qm / ((1 + b1 * qp) * (1 + b1 * qm)))
    e3 = b1 * np.sqrt((b2 + qp) * (b2 + qm))
    closed = np.sort(np.array([e1, -e1, e3, -e3]))

    eigenvalues = np.linalg.eigvals(A)
    if np.max(np.abs(eigenvalues.imag)) > SPECTRUM_TOL * max(1.0, e3):
        raise SpectrumMismatchError(
            "A matriz de transição tem autovalores complexos", {"eigenvalues": eigenvalues.tolist()}
        )
    numeric = np.sort(eigenvalues.real)
    error = float(np.max(np.abs(numeric - closed)) / max(1.0, e3))
    if error > SPECTRUM_TOL:
        logger.error("Espectro numérico %s diverge das formas fechadas %s", numeric, closed)
        raise SpectrumMismatchError(
            f"Espectro diverge das formas fechadas: erro {error:.3e}",
            {"numeric": numeric.tolist(), "closed": closed.tolist()},
        )

    deltas = {}
    for i in range(2, max_len + 1, 2):
        trace_sum = float(np.sum((x * numeric) ** i))
        expected = 2 * (1 + data.omega ** (i // 2))
        deltas[i] = {
            "delta_i": float(data.omega ** (i / 2)),
            "trace_sum": trace_sum,
            "expected": expected,
            "error": abs(trace_sum - expected),
        }
    return {
        "A": A,
        "x": x,
        "eigenvalues": numeric,
        "closed_forms": {"e1": float(e1), "e2": float(-e1), "e3": float(e3), "e4": float(-e3)},
        "max_error": error,
        "cycle_weights": deltas,
    }
