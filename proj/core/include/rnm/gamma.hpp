#pragma once

namespace rnm {

/// Gamma function for x > 0 (Lanczos approximation, g = 607/128, 15 terms).
double gamma_fn(double x);

/// log Gamma(x) for x > 0; safe for large arguments.
double log_gamma(double x);

}  // namespace rnm
