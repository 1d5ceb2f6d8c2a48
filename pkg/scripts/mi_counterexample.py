"""Show that mi fails to be anti-multiplicative on dagger series while mi-bar is
anti-multiplicative on Y-series.

    python3 scripts/mi_counterexample.py
"""
from moulds.mould import mould_mul
from moulds.ncseries import NCSeries, mi, mi_bar, pi_Y
from moulds.words import Alphabet

N = 4
T = Alphabet.trivial()
f0, f1 = (NCSeries.letter(a, T, N) for a in (0, 1))
phi, psi = f1, f1 * f0 - f0 * f1

print("psi is a dagger series:", psi.is_dagger())
print("pi_Y(phi psi) == pi_Y(phi) pi_Y(psi):", pi_Y(phi * psi) == pi_Y(phi) * pi_Y(psi))
lhs, rhs = mi(phi * psi), mould_mul(mi(psi), mi(phi))
print("mi(phi psi) == mi(psi) x mi(phi):", lhs == rhs)
print("  first difference:", lhs.first_difference(rhs))
A, B = pi_Y(phi), pi_Y(psi)
print("mi_bar(AB) == mi_bar(B) x mi_bar(A):", mi_bar(A * B) == mould_mul(mi_bar(B), mi_bar(A)))
