#pragma once

/*
 * Special functions used by the closed-form secrecy metrics:
 *   - generalized exponential integral E_n(x) (exponentially scaled)
 *   - upper incomplete gamma for integer order
 *   - Tricomi confluent hypergeometric U(a,b;x) for integer a >= 1, integer b
 *
 * Every analytic outage expression in this library reduces to these three.
 * A slow adaptive-quadrature oracle of the defining integrals is provided
 * for certification tests; it shares no code with the fast paths.
 */

#include <functional>
#include <stdexcept>

namespace relaysec::sf {

struct EvalPolicy {
  double rel_tol = 1e-12;  // target relative accuracy
  int max_terms = 400;     // series / continued fraction budget
  int max_panels = 4000;   // adaptive quadrature interval budget (oracle only)
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// e^x * E_n(x) for integer n >= 1, x > 0.  Scaled form stays representable
// for arguments far beyond the overflow point of e^x.
double exp_scaled_en(int n, double x, const EvalPolicy& policy = {});

// Upper incomplete gamma Gamma(a, x), integer a >= 0, x > 0.
// a = 0 is the exponential integral E_1(x).
double upper_incomplete_gamma(int a, double x, const EvalPolicy& policy = {});

// Tricomi U(a, b; x) for integer a >= 1, arbitrary integer b, x > 0.
// b <= 0 is lifted with the Kummer transform U(a,b,x) = x^{1-b} U(a-b+1, 2-b, x).
double tricomi_u(int a, int b, double x, const EvalPolicy& policy = {});

// --- independent oracles (tests only; adaptive Gauss-Kronrod quadrature) ---

double upper_incomplete_gamma_oracle(int a, double x, const EvalPolicy& policy = {});
double tricomi_u_oracle(int a, int b, double x, const EvalPolicy& policy = {});

namespace detail {

// When non-null, every tricomi_u call reports (a, b, x) here.  Used by the
// certification test to harvest the exact argument set the analytic layer
// generates.
extern thread_local std::function<void(int, int, double)>* u_probe;

double adaptive_gauss_kronrod(const std::function<double(double)>& f, double lo,
                              double hi, double rel_tol, int max_panels);

}  // namespace detail

}  // namespace relaysec::sf
