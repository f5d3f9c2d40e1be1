"""
Conversão de objetos de domínio para estruturas serializáveis em JSON.
"""

import dataclasses
import math
from enum import Enum

import numpy as np


def _serialize_float(value: float):
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def serialize(obj):
    """
    Converte recursivamente dataclasses, arrays numpy, enums e coleções.

    Números não finitos viram as strings "inf", "-inf" e "nan".

    Args:
        obj: Objeto a ser convertido

    Returns:
        Estrutura composta apenas de dict, list, str, int, float, bool e None
    """
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _serialize_float(float(obj))
    if isinstance(obj, np.ndarray):
        return [serialize(item) for item in obj.tolist()]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        if hasattr(obj, "to_dict"):
            return obj.to_dict()
        return {
            f.name: serialize(getattr(obj, f.name)) for f in dataclasses.fields(obj)
        }
    if isinstance(obj, (list, tuple)):
        return [serialize(item) for item in obj]
    if isinstance(obj, dict):
        return {str(k): serialize(v) for k, v in obj.items()}
    return obj


def dataclass_to_dict(obj) -> dict:
    """
    Serializa os campos de uma dataclass sem recorrer ao seu próprio to_dict.

    Args:
        obj: Instância de dataclass

    Returns:
        dict com os campos serializados
    """
    return {f.name: serialize(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
