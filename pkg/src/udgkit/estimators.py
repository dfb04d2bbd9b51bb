"""scikit-learn style wrappers around the graph pipelines.

Inputs are sequences of graphs (``Graph`` objects or graph6 strings).  None
of the estimators learns anything from data: ``fit`` validates the
hyper-parameters and records the number of graphs seen, so the objects work
inside ``Pipeline``/``clone`` and expose ``get_params``/``set_params``.
"""

from __future__ import annotations

from typing import Any, List, Optional, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .catalog import detect_forbidden
from .embedder import Embedding, embed_class_x_complement, embed_class_x_star
from .formats import from_graph6
from .graph import Graph
from .numeric import FloatBackend, mp_backend
from .search import SearchConfig, SearchResult, search_embedding
from .structure import Recognition, recognize_class_x


def check_graphs(X: Any) -> List[Graph]:
    """Coerce ``X`` into a list of graphs; a single graph becomes ``[graph]``."""
    if isinstance(X, (Graph, str)):
        X = [X]
    try:
        items = list(X)
    except TypeError:
        raise TypeError(f"expected a sequence of graphs, got {type(X).__name__}") from None
    out = []
    for i, item in enumerate(items):
        if isinstance(item, Graph):
            out.append(item)
        elif isinstance(item, str):
            out.append(from_graph6(item, line=i + 1))
        else:
            raise TypeError(f"item {i}: expected Graph or graph6 string, got {type(item).__name__}")
    return out


def _backend(precision: Optional[int]):
    if precision is None:
        return FloatBackend()
    if not isinstance(precision, int) or precision < 20:
        raise ValueError("precision must be None or an integer >= 20")
    return mp_backend(precision)


class _GraphEstimator(BaseEstimator):
    def _check_params(self) -> None:  # overridden where parameters exist
        pass

    def fit(self, X: Any, y: Any = None) -> "_GraphEstimator":
        self._check_params()
        self.n_graphs_seen_ = len(check_graphs(X))
        return self


class ForbiddenDetector(_GraphEstimator):
    """``predict`` is 1 when a catalogued obstruction occurs as an induced subgraph."""

    def __init__(self, max_family_k: Optional[int] = None) -> None:
        self.max_family_k = max_family_k

    def _check_params(self) -> None:
        if self.max_family_k is not None and self.max_family_k < 1:
            raise ValueError("max_family_k must be positive")

    def transform(self, X: Any) -> list:
        check_is_fitted(self, "n_graphs_seen_")
        return [detect_forbidden(g, max_family_k=self.max_family_k) for g in check_graphs(X)]

    def predict(self, X: Any) -> np.ndarray:
        return np.array([int(r.forbidden) for r in self.transform(X)])


class ClassXRecognizer(_GraphEstimator, TransformerMixin):
    """``transform`` gives a :class:`Recognition` per graph; ``predict`` 1/0 membership."""

    def __init__(self, part: Optional[Sequence[str]] = None) -> None:
        self.part = part

    def transform(self, X: Any) -> List[Recognition]:
        check_is_fitted(self, "n_graphs_seen_")
        return [recognize_class_x(g, self.part) for g in check_graphs(X)]

    def predict(self, X: Any) -> np.ndarray:
        return np.array([int(r.accepted) for r in self.transform(X)])


class StarEmbedder(_GraphEstimator, TransformerMixin):
    """Certified embeddings of the starred graph for class members."""

    def __init__(self, epsilon: Any = None, precision: Optional[int] = 80) -> None:
        self.epsilon = epsilon
        self.precision = precision

    def _check_params(self) -> None:
        _backend(self.precision)
        if self.epsilon is not None and not 0 < float(self.epsilon) < 1 / 128:
            raise ValueError("epsilon must lie in (0, 1/128)")

    def transform(self, X: Any) -> List[Embedding]:
        check_is_fitted(self, "n_graphs_seen_")
        num = _backend(self.precision)
        eps = None if self.epsilon is None else num.num(self.epsilon)
        return [embed_class_x_star(g, eps, num) for g in check_graphs(X)]


class ComplementEmbedder(_GraphEstimator, TransformerMixin):
    """Certified embeddings of the complement for class members."""

    def __init__(self, precision: Optional[int] = 80) -> None:
        self.precision = precision

    def _check_params(self) -> None:
        _backend(self.precision)

    def transform(self, X: Any) -> List[Embedding]:
        check_is_fitted(self, "n_graphs_seen_")
        num = _backend(self.precision)
        return [embed_class_x_complement(g, num) for g in check_graphs(X)]


class RealizabilitySearch(_GraphEstimator, TransformerMixin):
    """Numerical search; ``predict`` is 1 for found, 0 for inconclusive."""

    def __init__(self, restarts: int = 20, iterations: int = 3000, step_initial: float = 0.05,
                 step_final: float = 1e-4, target_slack: float = 1e-3, seed: int = 0) -> None:
        self.restarts = restarts
        self.iterations = iterations
        self.step_initial = step_initial
        self.step_final = step_final
        self.target_slack = target_slack
        self.seed = seed

    def _config(self) -> SearchConfig:
        return SearchConfig(self.restarts, self.iterations, self.step_initial, self.step_final,
                            self.seed, self.target_slack)

    def _check_params(self) -> None:
        self._config()

    def transform(self, X: Any) -> List[SearchResult]:
        check_is_fitted(self, "n_graphs_seen_")
        cfg = self._config()
        return [search_embedding(g, cfg) for g in check_graphs(X)]

    def predict(self, X: Any) -> np.ndarray:
        return np.array([int(r.embedding is not None) for r in self.transform(X)])
