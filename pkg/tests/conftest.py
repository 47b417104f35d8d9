import numpy as np
import pytest

import sievestats as ss

N6 = 10**6


@pytest.fixture(scope="session")
def mu_table():
    return ss.sieve_table(ss.MOEBIUS, 1, N6)


@pytest.fixture(scope="session")
def sf_table():
    return ss.sieve_table(ss.SQUAREFREE, 1, N6)


@pytest.fixture(scope="session")
def pw_table():
    return ss.sieve_table(ss.PARITY_WEIGHT, 1, N6)


@pytest.fixture(scope="session")
def prime_table_1e4():
    return ss.sieve_table(ss.PRIME, 1, 10**4)


@pytest.fixture(scope="session")
def prime_table():
    return ss.sieve_table(ss.PRIME, 1, N6)


@pytest.fixture(scope="session")
def oracle_prime_flags():
    # Trial-division primality for 1..10^4 + 2, independent of the sieves.
    flags = np.zeros(10**4 + 3, dtype=bool)
    for n in range(2, 10**4 + 3):
        factors = ss.sieves.trial_factors(n)
        flags[n] = len(factors) == 1 and factors[0][1] == 1
    return flags
