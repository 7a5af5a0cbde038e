"""Shared physical constants and calibrated solver defaults."""

# Exact SI speed of light; every nu <-> k conversion in the package uses it.
C0 = 299_792_458.0  # m/s

# Default measurement band, GHz.
DEFAULT_BAND_GHZ = (0.3, 2.2)

# Default search-strip depth |Im k| in 1/m.  Calibrated on the four shipped
# networks: band counts plateau from depth ~4 and stay constant through 32
# (and to R = 400 through depth 16), so 8 carries a >2x safety margin over
# the deepest observed resonance (|Im k| ~ 2.96).
STRIP_DEPTH = 8.0

# Default uniform absorption (imaginary k shift, 1/m) for simulated traces.
# Calibrated so the median dip depth of the W1 trace sits in [0.3, 0.8].
DEFAULT_ABSORPTION = 0.1

# Default dip prominence for trace minima.  0.05 hides the broadest dips
# (depth ~ 2*absorption/width for width >> absorption), so the default sits
# low enough to keep every resolvable dip of the shipped networks.
DIP_PROMINENCE = 0.005
