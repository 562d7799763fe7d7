#pragma once

#include <vector>

#include "relaysec/errors.hpp"

namespace relaysec::mix {

// One term coef * z^power * e^{-rate z} on z >= 0.  rate == 0 is allowed only
// for transient constants (power 0) while assembling survival products.
struct Term {
  double coef = 0.0;
  int power = 0;
  double rate = 0.0;
};

// Finite linear combination of exponential-polynomial terms.  Densities and
// survival functions of every channel-gain combination used by the outage
// analysis (sums and maxima of independent exponentials) stay in this family,
// so the whole analytic layer reduces to algebra on these term lists.
class ExpPoly {
 public:
  ExpPoly() = default;
  explicit ExpPoly(std::vector<Term> terms) : terms_(std::move(terms)) { compress(); }

  static ExpPoly constant(double value);
  static ExpPoly exponential_pdf(double mean);
  static ExpPoly exponential_survival(double mean);
  // Sum of `shape` iid exponential stages, each with mean `stage_mean`.
  static ExpPoly erlang_pdf(int shape, double stage_mean);
  // Survival of the max of n iid exponentials with the given mean.
  static ExpPoly iid_max_survival(int n, double mean);

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  double eval(double z) const;
  ExpPoly scaled(double factor) const;
  ExpPoly plus(const ExpPoly& other) const;
  ExpPoly minus(const ExpPoly& other) const;
  ExpPoly times(const ExpPoly& other) const;  // pointwise product

  // S(z) = int_z^inf f(t) dt; requires strictly positive rates.
  ExpPoly survival_from_pdf() const;
  // f(z) = -S'(z).
  ExpPoly pdf_from_survival() const;
  // int_0^inf z^order f(z) dz; requires strictly positive rates.
  double moment(int order) const;
  double mass() const { return moment(0); }

 private:
  void compress();
  std::vector<Term> terms_;
};

// pdf of X+Y for independent X, Y given their pdfs, via partial fractions in
// the Laplace domain.  Near-coincident rates (closer than 1e-9 relative)
// raise SingularityError: the closed forms assume pairwise distinct poles.
ExpPoly convolve(const ExpPoly& fx, const ExpPoly& fy);

// Survival of max{X_1,...,X_k} from the per-variable survivals:
// 1 - prod_i (1 - S_i).
ExpPoly max_survival(const std::vector<ExpPoly>& survivals);

}  // namespace relaysec::mix
