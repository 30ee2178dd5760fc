"""
Figures for the report commands, written straight to files (Agg backend).
"""
import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import mpmath  # noqa: E402
import numpy as np  # noqa: E402

RC = {"font.size": 9, "axes.linewidth": 0.8, "lines.linewidth": 1.2,
      "savefig.dpi": 150, "figure.figsize": (5.0, 3.6)}


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_dioph(report, path):
    """Record minima of delta_n on log-log axes, with the certificate line if any."""
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        pts = [(n, float(d)) for n, d in report.per_n if d > 0]
        if pts:
            ns, ds = zip(*pts)
            ax.loglog(ns, ds, "o-", ms=3, label=r"record minima of $\delta_n$")
            grid = np.logspace(0, math.log10(report.n_max), 100)
            if report.certificate:
                A, a = float(report.certificate["A"]), report.certificate["alpha"]
                ax.loglog(grid, A * grid ** (-a), "--", label=r"$A n^{-%g}$" % a)
            if math.isfinite(report.fitted_alpha):
                ax.loglog(grid, report.fitted_A * grid ** (-report.fitted_alpha), ":",
                          label=r"fit $n^{-%.2f}$" % report.fitted_alpha)
        if report.witness:
            ax.axvline(report.witness, color="C3", lw=0.8, label="witness n=%d" % report.witness)
        ax.set_xlabel("n")
        ax.set_ylabel(r"$\delta_n$")
        ax.set_title("verdict: %s" % report.verdict)
        ax.legend(frameon=False, fontsize=7)
        return _save(fig, path)


def plot_majorant(ms, estimate, path):
    """log A_n against n with the fitted tail slope."""
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        ns = np.arange(1, len(ms.coeffs) + 1)
        logs = np.array([float(mpmath.log(c)) if c > 0 else np.nan for c in ms.coeffs])
        ax.plot(ns, logs, ".-", label=r"$\log A_n$ (%s)" % ms.source_equation)
        if estimate is not None and math.isfinite(estimate.slope):
            k0 = len(ns) - estimate.n_used + 1
            tail = ns[k0 - 1:]
            base = logs[k0 - 1] - estimate.slope * tail[0]
            ax.plot(tail, base + estimate.slope * tail, "--",
                    label="tail slope %.3g, radius %.3g" % (estimate.slope, estimate.radius))
        ax.set_xlabel("n")
        ax.set_ylabel(r"$\log A_n$")
        ax.legend(frameon=False, fontsize=7)
        return _save(fig, path)


def plot_salem(result, path):
    """Roots of the characteristic polynomial against the unit circle."""
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(4.2, 4.2))
        th = np.linspace(0, 2 * np.pi, 400)
        ax.plot(np.cos(th), np.sin(th), color="0.7", lw=0.8)
        roots = np.roots([float(c) for c in result.poly])
        ax.plot(roots.real, roots.imag, "o", mfc="none", label="roots")
        pos = [c["s"] for c in result.inspected if c["positivity"] > 0]
        if pos:
            ax.plot([z.real for z in pos], [z.imag for z in pos], "x", label="positive pairing")
        ax.plot([result.s.real], [result.s.imag], "*", ms=10, color="C3", label="selected s")
        ax.set_aspect("equal")
        ax.set_title(r"$a_\alpha=%.4f$, $a_\beta=%.4f$" % (result.a_alpha, result.a_beta))
        ax.legend(frameon=False, fontsize=7, loc="lower left")
        return _save(fig, path)
