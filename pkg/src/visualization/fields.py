"""
Field Visualization Module
==========================

Figures of space-time fields, solution branches and coefficient spectra.
"""

from pathlib import Path
from typing import Optional, Tuple, Union

import matplotlib.pyplot as plt
import numpy as np

from ..solver.reports import Branch
from ..spectral.fields import Field
from ..spectral.transforms import synthesize


class FieldVisualizer:
    """
    Plotting toolkit for Burgers solutions.

    Parameters
    ----------
    figsize : Tuple[int, int]
        Default figure size.
    style : str
        Matplotlib style to use.
    dpi : int
        Resolution for saved figures.

    Examples
    --------
    >>> viz = FieldVisualizer()
    >>> fig = viz.plot_field(u, title="u(t, x)")
    >>> viz.save(fig, "solution.png")
    """

    BRANCH_COLORS = {
        'h': '#1D3557',
        'ux': '#E63946',
        'bound': '#95A5A6',
    }

    def __init__(
        self,
        figsize: Tuple[int, int] = (10, 6),
        style: str = 'seaborn-v0_8-whitegrid',
        dpi: int = 150
    ):
        self.figsize = figsize
        self.dpi = dpi
        try:
            plt.style.use(style)
        except OSError:
            pass  # Use default style

    def plot_field(
        self,
        u: Field,
        title: str = "u(t, x)",
        cmap: str = 'RdBu_r',
        figsize: Optional[Tuple[int, int]] = None
    ) -> plt.Figure:
        """
        Heat map of a field over one period on its quadrature grid.

        Parameters
        ----------
        u : Field
            Field to draw.
        title : str
            Plot title.
        cmap : str
            Colormap; diverging maps are centred at zero.
        figsize : Tuple[int, int], optional
            Figure size (overrides default).

        Returns
        -------
        plt.Figure
            The matplotlib figure object.
        """
        values = synthesize(u)
        t = u.grid.time_points()
        x = u.grid.space_points()
        vmax = max(float(np.max(np.abs(values))), 1e-300)

        fig, ax = plt.subplots(figsize=figsize or self.figsize)
        mesh = ax.pcolormesh(x, t, values, cmap=cmap, vmin=-vmax, vmax=vmax, shading='nearest')
        fig.colorbar(mesh, ax=ax, label='u')
        ax.set_xlabel('x', fontsize=11)
        ax.set_ylabel('t (periods)', fontsize=11)
        ax.set_title(title, fontsize=14, fontweight='bold')
        plt.tight_layout()
        return fig

    def plot_branch(
        self,
        branch: Branch,
        title: str = "Solution branch",
        figsize: Optional[Tuple[int, int]] = None
    ) -> plt.Figure:
        """
        Norms along the lambda-path with the a priori gradient bound.

        Returns
        -------
        plt.Figure
            The matplotlib figure object.
        """
        df = branch.to_frame()
        fig, ax = plt.subplots(figsize=figsize or self.figsize)
        ax.plot(df['lambda'], df['norm_h'], 'o-', color=self.BRANCH_COLORS['h'], label=r'$\|u\|_H$')
        ax.plot(df['lambda'], df['norm_ux'], 's-', color=self.BRANCH_COLORS['ux'], label=r'$\|u_x\|$')
        if len(df):
            bound = df['f_dual'] / df['mu']
            ax.plot(df['lambda'], bound, '--', color=self.BRANCH_COLORS['bound'],
                    label=r'$\|f\|_*/\mu$')
        ax.set_xlabel(r'$\lambda$', fontsize=11)
        ax.set_ylabel('norm', fontsize=11)
        ax.set_title(title, fontsize=14, fontweight='bold')
        ax.legend()
        ax.grid(True, alpha=0.3)
        plt.tight_layout()
        return fig

    def plot_spectrum(
        self,
        u: Field,
        title: str = "Coefficient spectrum",
        figsize: Optional[Tuple[int, int]] = None
    ) -> plt.Figure:
        """Log-magnitude of the coefficients over (k, m)."""
        magnitude = np.log10(np.abs(u.coeffs) + 1e-300)
        first = u.basis.first_mode
        extent = (first - 0.5, u.grid.M + 0.5, -u.grid.K - 0.5, u.grid.K + 0.5)

        fig, ax = plt.subplots(figsize=figsize or self.figsize)
        image = ax.imshow(magnitude, origin='lower', aspect='auto', extent=extent,
                          cmap='viridis', vmin=max(float(magnitude.max()) - 16, -16))
        fig.colorbar(image, ax=ax, label=r'$\log_{10}|\hat u_{k,m}|$')
        ax.set_xlabel('m', fontsize=11)
        ax.set_ylabel('k', fontsize=11)
        ax.set_title(title, fontsize=14, fontweight='bold')
        plt.tight_layout()
        return fig

    def save(self, fig: plt.Figure, path: Union[str, Path]) -> Path:
        """Save and close a figure."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(path, dpi=self.dpi, bbox_inches='tight')
        plt.close(fig)
        return path
