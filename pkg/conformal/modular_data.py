"""
Modular data (labels, S, T) and the embedded Fibonacci and Ising tables.
"""
import math
from dataclasses import dataclass

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError


@dataclass(frozen=True, eq=False)
class ModularData:
    labels: tuple
    S: np.ndarray
    T: np.ndarray
    dual: tuple
    group: object = None
    name: str = ""

    @property
    def rank(self):
        return len(self.labels)

    @property
    def conjugation(self):
        P = np.zeros((self.rank, self.rank))
        for i, j in enumerate(self.dual):
            P[i, j] = 1
        return P


def make_modular_data(labels, S, T, dual=None, *, group=None, name="", nondegenerate=True, tol=None):
    tol = tol if tol is not None else settings.CONFORMAL["TOLERANCE"]
    labels = tuple(labels)
    S = np.asarray(S, dtype=complex)
    T = np.asarray(T, dtype=complex)
    k = len(labels)
    if S.shape != (k, k) or T.shape != (k, k):
        raise ValidationError(
            "S and T must be %(rank)s x %(rank)s matrices.",
            code="blocks.invalid_modular_data",
            params={"rank": k},
        )
    if np.abs(S - S.T).max(initial=0.0) > tol:
        raise ValidationError("S is not symmetric.", code="blocks.invalid_modular_data")
    off_diagonal = T - np.diag(np.diag(T))
    if np.abs(off_diagonal).max(initial=0.0) > tol or np.abs(np.abs(np.diag(T)) - 1).max(initial=0.0) > tol:
        raise ValidationError("T must be a unitary diagonal matrix.", code="blocks.invalid_modular_data")
    if nondegenerate and np.abs(S @ S.conj().T - np.eye(k)).max(initial=0.0) > tol:
        raise ValidationError("S is not unitary.", code="blocks.invalid_modular_data")
    dual = tuple(dual) if dual is not None else tuple(range(k))
    if sorted(dual) != list(range(k)):
        raise ValidationError("The charge conjugation must be a permutation.", code="blocks.invalid_modular_data")
    return ModularData(labels, S, T, dual, group=group, name=name)


def fibonacci_data():
    phi = (1 + math.sqrt(5)) / 2
    D = math.sqrt(2 + phi)
    S = np.array([[1, phi], [phi, -1]]) / D
    T = np.diag([1, np.exp(4j * np.pi / 5)])
    return make_modular_data(("1", "tau"), S, T, name="fibonacci")


def ising_data():
    r = math.sqrt(2)
    S = np.array([[1, r, 1], [r, 0, -r], [1, -r, 1]]) / 2
    T = np.diag([1, np.exp(1j * np.pi / 8), -1])
    return make_modular_data(("1", "sigma", "psi"), S, T, name="ising")


TABLES = {
    "fibonacci": fibonacci_data,
    "ising": ising_data,
}
