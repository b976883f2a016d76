# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled transfer-matrix chain product.

Each slice contributes an interface matrix followed by a diagonal propagation
matrix; the running product is accumulated left to right.
"""


cdef inline void _interface(double complex* m, double complex eta) noexcept nogil:
    # M <- M @ [[1+eta, 1-eta], [1-eta, 1+eta]] / 2
    cdef double complex a = 0.5 * (1.0 + eta)
    cdef double complex b = 0.5 * (1.0 - eta)
    cdef double complex m00 = m[0] * a + m[1] * b
    cdef double complex m01 = m[0] * b + m[1] * a
    cdef double complex m10 = m[2] * a + m[3] * b
    cdef double complex m11 = m[2] * b + m[3] * a
    m[0] = m00
    m[1] = m01
    m[2] = m10
    m[3] = m11


def chain_product(const double complex[::1] g, const double complex[::1] phase,
                  double complex g_lead):
    """Return ``(M11, M21)`` of lead -> slices -> lead.

    Parameters
    ----------
    g : complex array
        ``k / m`` in each slice.
    phase : complex array
        ``exp(-1j * k * thickness)`` in each slice.
    g_lead : complex
        ``k / m`` in both leads.
    """
    cdef Py_ssize_t n = g.shape[0]
    cdef Py_ssize_t j
    cdef double complex m[4]
    cdef double complex prev = g_lead
    cdef double complex p, q
    if phase.shape[0] != n:
        raise ValueError("g and phase must have equal length")
    m[0] = 1.0
    m[1] = 0.0
    m[2] = 0.0
    m[3] = 1.0
    with nogil:
        for j in range(n):
            _interface(m, g[j] / prev)
            p = phase[j]
            q = 1.0 / p
            m[0] = m[0] * p
            m[2] = m[2] * p
            m[1] = m[1] * q
            m[3] = m[3] * q
            prev = g[j]
        _interface(m, g_lead / prev)
    return m[0], m[2]
