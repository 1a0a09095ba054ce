"""Floating-point twin of the exact pipeline.

Everything here is rebuilt directly in numpy at a fixed real ``q > 0`` from
the defining formulas, without touching the exact scalar or linear-algebra
code.  It exists to cross-check exact results numerically.
"""
from __future__ import annotations

import numpy as np

from .errors import NonpositiveParameter

__all__ = ["FloatModel"]

_P = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=float)


class FloatModel:
    """All matrices and distributions at one value of ``q``.

    >>> m = FloatModel(2.0)
    >>> round(m.naive_joint()[0, 1], 12)
    0.8
    """

    def __init__(self, q: float):
        if not q > 0:
            raise NonpositiveParameter(f"q = {q} is not positive")
        self.q = float(q)
        s = np.sqrt(self.q)
        self.s = s
        self.jz = np.diag([0.5, -0.5])
        self.jp = np.array([[0.0, 1.0], [0.0, 0.0]])
        self.jm = self.jp.T.copy()
        self.k = np.diag([s, 1 / s])
        self.kinv = np.diag([1 / s, s])
        one = np.eye(2)
        self.one = one
        self.d_jz = np.kron(self.jz, one) + np.kron(one, self.jz)
        self.d_jp = np.kron(self.jp, self.k) + np.kron(self.kinv, self.jp)
        self.d_jm = np.kron(self.jm, self.k) + np.kron(self.kinv, self.jm)
        self.flip = _P
        lam = s - 1 / s
        self.r_paper = np.diag([s, 1.0, 1.0, s])
        self.r_paper[1, 2] = lam
        self.r_solved = np.diag([self.q, 1.0, 1.0, self.q])
        self.r_solved[1, 2] = self.q - 1 / self.q
        self.singlet = np.array([0.0, 1.0, -1 / self.q, 0.0])

    def r_matrix(self, source: str = "paper") -> np.ndarray:
        return {"paper": self.r_paper, "solved": self.r_solved}[source]

    def dressed(self, x: np.ndarray, site: str = "A", source: str = "paper", bob_rule: str = "r") -> np.ndarray:
        r = self.r_matrix(source)
        r21 = _P @ r @ _P
        if site == "A":
            g, y = r21, np.kron(x, self.one)
        else:
            g = {"r": r, "r21": r21, "rinv": np.linalg.inv(r)}[bob_rule]
            y = np.kron(self.one, x)
        return g @ y @ np.linalg.inv(g)

    @staticmethod
    def projectors(j: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        ident = np.eye(j.shape[0])
        return 0.5 * ident + j, 0.5 * ident - j

    def naive_joint(self) -> np.ndarray:
        v = self.singlet
        p = v**2 / (v @ v)
        return p.reshape(2, 2)

    def dressed_joint(self, source="paper", bob_rule="r", bra="state", ordering="ba", born="sandwich") -> np.ndarray:
        a = self.projectors(self.dressed(self.jz, "A", source))
        b = self.projectors(self.dressed(self.jz, "B", source, bob_rule))
        v = self.singlet
        # invariant dual covector: left null vector of the three coproduct matrices
        stacked = np.hstack([self.d_jp, self.d_jm, self.d_jz])
        _, _, vh = np.linalg.svd(stacked.T)
        dual = vh[-1] / vh[-1][1]
        u = v if bra == "state" else dual
        out = np.empty((2, 2))
        for i in range(2):
            for j in range(2):
                w = a[i] @ (b[j] @ v) if ordering == "ba" else b[j] @ (a[i] @ v)
                if born == "sandwich":
                    out[i, j] = (u @ w) / (u @ v)
                else:
                    out[i, j] = (w @ w) / (v @ v)
        return out
