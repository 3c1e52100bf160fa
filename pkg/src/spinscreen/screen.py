"""Dense screen container shared by all generation methods."""

from dataclasses import dataclass, field

import numpy as np

from .spins import ScreenParams


@dataclass
class Screen:
    """(2k+1) x (2k+1) grid of U(x,y); values[ix, iy] with x the first axis."""

    params: ScreenParams
    values: np.ndarray
    method: str
    diagnostics: dict = field(default_factory=dict)

    def u(self, two_x, two_y):
        return self.values[self.params.x_index(two_x), self.params.y_index(two_y)]

    def row(self, two_y):
        """All U(x, y) for one y, indexed by the x lattice."""
        return self.values[:, self.params.y_index(two_y)]

    def orthonormality_defect(self):
        """max |U^T U - I| over both Gram matrices."""
        n = self.values.shape[0]
        eye = np.eye(n)
        d1 = np.max(np.abs(self.values.T @ self.values - eye))
        d2 = np.max(np.abs(self.values @ self.values.T - eye))
        return max(float(d1), float(d2))
