import time

import pytest

from tuza.campaigns import enumerate_rank4_campaign


@pytest.fixture(scope="session")
def rank4_run():
    """The exhaustive rank-4 classification, solved once per test session.

    Single-threaded on purpose: the time budget below is a serial budget.
    Yields (report, elapsed seconds) so timing claims can be checked
    wherever the report is consumed.
    """
    t0 = time.perf_counter()
    report = enumerate_rank4_campaign(jobs=1)
    return report, time.perf_counter() - t0
