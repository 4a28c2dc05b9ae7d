import numpy as np
import pytest


def random_complex(rng, m, n):
    return rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))


def random_hermitian(rng, n):
    m = random_complex(rng, n, n)
    return (m + m.conj().T) / 2


def random_psd(rng, n, rank=None):
    k = rank if rank is not None else n
    a = random_complex(rng, n, k)
    return a @ a.conj().T


def random_unit_columns(rng, r, n):
    l_fac = random_complex(rng, r, n)
    return l_fac / np.linalg.norm(l_fac, axis=0)


def random_q_member(rng, n, rank):
    """Gram matrix of random unit columns: a member of Q_n of the given rank
    (almost surely)."""
    l_fac = random_unit_columns(rng, rank, n)
    gram = l_fac.conj().T @ l_fac
    gram = (gram + gram.conj().T) / 2
    np.fill_diagonal(gram, 1.0)
    return gram


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
