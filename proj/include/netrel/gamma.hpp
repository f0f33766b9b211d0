#pragma once

namespace netrel {

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a):
// power series below x = a + 1, Lentz continued fraction for Q above.
// Throws NumericError (with a, x and the iteration count) when neither
// converges.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

} // namespace netrel
