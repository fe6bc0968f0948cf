"""Scikit-learn style front end: ``fit`` builds the universal FOON, ``predict`` retrieves task trees."""

from __future__ import annotations

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .core import ObjectNode, graph_stats
from .retrieval import ALGORITHMS, RetrievalError, RetrievalRequest, retrieve, validate_task_tree
from .validation import check_foon, check_goal, check_kitchen, check_rates


class TaskTreeRetriever(BaseEstimator):
    """Retrieve task trees for goal object nodes.

    Parameters
    ----------
    algorithm : {"ids", "gbfs-h1", "gbfs-h2"}
        Search strategy. ``"h1"`` and ``"h2"`` are accepted as aliases.
    depth_limit : int
        Largest depth bound tried by iterative deepening.
    rates : MotionRates or dict, optional
        Motion success rates; required by ``gbfs-h1``, used as a tie-break by ``gbfs-h2``.

    Attributes
    ----------
    foon_ : UniversalFOON
        The merged, frozen knowledge graph built by :meth:`fit`.
    """

    def __init__(self, algorithm="ids", depth_limit=50, rates=None):
        self.algorithm = algorithm
        self.depth_limit = depth_limit
        self.rates = rates

    def fit(self, X, y=None):
        """Merge ``X`` (subgraphs, units or a UniversalFOON) into the knowledge graph."""
        # validate hyper-parameters up front so misconfiguration fails at fit time
        self._request(None, None)
        self.foon_ = check_foon(X).freeze()
        self.n_units_ = len(self.foon_)
        return self

    def _request(self, goal, kitchen):
        probe = goal if goal is not None else ObjectNode("probe")
        return RetrievalRequest(
            probe, check_kitchen(kitchen), self.algorithm, self.depth_limit, check_rates(self.rates)
        )

    def retrieve(self, goal, kitchen, goal_states=()):
        """Task tree for one goal (an ObjectNode, or an object name resolved against the graph)."""
        check_is_fitted(self, "foon_")
        kitchen = check_kitchen(kitchen)
        goal = check_goal(self.foon_, goal, kitchen, goal_states)
        return retrieve(self.foon_, self._request(goal, kitchen))

    def predict(self, goals, kitchen):
        return [self.retrieve(goal, kitchen) for goal in goals]

    def score(self, goals, kitchen):
        """Fraction of goals for which a valid task tree is retrieved."""
        goals = list(goals)
        if not goals:
            return 0.0
        ok = 0
        for goal in goals:
            try:
                tree = self.retrieve(goal, kitchen)
            except RetrievalError:
                continue
            ok += bool(validate_task_tree(tree))
        return ok / len(goals)

    def stats(self):
        check_is_fitted(self, "foon_")
        return graph_stats(self.foon_)


__all__ = ["TaskTreeRetriever", "ALGORITHMS"]
