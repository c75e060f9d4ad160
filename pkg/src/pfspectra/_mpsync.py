"""Shared lock for high-precision arithmetic sections.

mpmath keeps one global precision context, so concurrent workprec blocks
at different precisions would race and make low-order bits depend on the
thread schedule.  Every workprec block in the package takes this lock,
which keeps multi-threaded runs byte-identical to serial ones.
"""

import threading

MP_LOCK = threading.RLock()
