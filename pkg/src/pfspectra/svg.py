"""Dependency-free SVG emission for eigenvalue scatter figures.

Both figures are plain markup strings with fixed coordinate formatting,
so identical inputs produce byte-identical files.
"""

from .spectrum import r_constant

_PALETTE = (
    "#1f6feb",
    "#d29922",
    "#3fb950",
    "#f85149",
    "#bc8cff",
    "#39c5cf",
    "#db61a2",
    "#768390",
)


def _px(x: float) -> str:
    return format(x, ".2f")


class _Canvas:
    """Square canvas mapping the complex plane to pixel coordinates."""

    def __init__(self, size: int, extent: float):
        self.size = size
        self.scale = size / (2.0 * extent)
        self.parts = [
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" '
            f'height="{size}" viewBox="0 0 {size} {size}">\n'
            f'<rect width="{size}" height="{size}" fill="white"/>\n'
        ]

    def map(self, z: complex):
        return (
            self.size / 2.0 + z.real * self.scale,
            self.size / 2.0 - z.imag * self.scale,
        )

    def circle(self, radius: float, color: str, dashed: bool):
        dash = ' stroke-dasharray="6 4"' if dashed else ""
        self.parts.append(
            f'<circle cx="{_px(self.size / 2.0)}" cy="{_px(self.size / 2.0)}" '
            f'r="{_px(radius * self.scale)}" fill="none" '
            f'stroke="{color}" stroke-width="1"{dash}/>\n'
        )

    def dot(self, z: complex, color: str, r: float = 1.8):
        x, y = self.map(z)
        self.parts.append(
            f'<circle cx="{_px(x)}" cy="{_px(y)}" r="{_px(r)}" '
            f'fill="{color}"/>\n'
        )

    def text(self, x: float, y: float, s: str, color: str = "#333"):
        self.parts.append(
            f'<text x="{_px(x)}" y="{_px(y)}" font-family="monospace" '
            f'font-size="13" fill="{color}">{s}</text>\n'
        )

    def render(self) -> str:
        return "".join(self.parts) + "</svg>\n"


def annulus_scatter(eigenvalues, D: int, label: str = "", size: int = 720) -> str:
    """Eigenvalue cloud with reference circles at 1/(4D), r_D, and 1."""
    cv = _Canvas(size, extent=1.12)
    cv.circle(1.0, "#444444", dashed=False)
    cv.circle(r_constant(D), "#aa3333", dashed=True)
    cv.circle(1.0 / (4 * D), "#777777", dashed=True)
    for lam in eigenvalues:
        cv.dot(complex(lam), _PALETTE[0])
    if label:
        cv.text(10, size - 12, label)
    cv.text(10, 18, f"circles: |z| = 1/{4 * D}, r_{D}, 1")
    return cv.render()


def rings_scatter(measures_by_period, size: int = 720) -> str:
    """Multiplier-scaled spectra near the unit circle, one color per period."""
    cv = _Canvas(size, extent=1.35)
    cv.circle(1.0, "#444444", dashed=False)
    pairs = sorted(measures_by_period, key=lambda t: t[0])
    for i, (period, meas) in enumerate(pairs):
        color = _PALETTE[i % len(_PALETTE)]
        for nu in meas.samples:
            cv.dot(complex(nu), color, r=2.2)
        cv.text(10, 18 + 16 * i, f"period {period}", color)
    return cv.render()
