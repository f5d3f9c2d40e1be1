"""
Leitura e escrita de grafos em JSON.
"""

import json
from pathlib import Path
from typing import Union

from phasecrit.models import BipartiteMultigraph, GadgetGraph

GraphType = Union[BipartiteMultigraph, GadgetGraph]


def graph_from_dict(data: dict) -> GraphType:
    """
    Reconstrói um grafo pelo campo "kind".

    Raises:
        ValueError: Se o tipo não for suportado
    """
    kind = data.get("kind")
    if kind == "bipartite_regular":
        return BipartiteMultigraph.from_dict(data)
    if kind == "gadget":
        return GadgetGraph.from_dict(data)
    raise ValueError(f"Tipo de grafo não suportado: {kind}")


def write_graph(graph: GraphType, path: Union[str, Path]) -> Path:
    """
    Grava o grafo em JSON.

    Args:
        graph: Multigrafo bipartido ou gadget
        path: Arquivo de saída

    Returns:
        Caminho gravado
    """
    path = Path(path)
    path.write_text(json.dumps(graph.to_dict(), indent=2, ensure_ascii=False), encoding="utf-8")
    return path


def read_graph(path: Union[str, Path]) -> GraphType:
    """
    Lê um grafo gravado por write_graph.

    Raises:
        FileNotFoundError: Se o arquivo não existir
        ValueError: Se o conteúdo não for um grafo válido
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Arquivo não encontrado: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ValueError(f"JSON inválido em {path}: {e}")
    return graph_from_dict(data)
