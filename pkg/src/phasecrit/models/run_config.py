"""
Modelo que representa a configuração de uma execução da CLI.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from phasecrit.utils.serialization import dataclass_to_dict


@dataclass
class RunConfig:
    """Parâmetros do subcomando, semente, saída e tolerâncias efetivas."""

    command: str
    params: Dict[str, Any] = field(default_factory=dict)
    seed: Optional[int] = None
    output: Optional[str] = None
    fmt: str = "json"
    tolerances: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return dataclass_to_dict(self)
