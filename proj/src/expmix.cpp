#include "relaysec/expmix.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

namespace relaysec::mix {

namespace {

double checked_mean(double mean, const char* who) {
  if (!(mean > 0.0) || !std::isfinite(mean)) {
    throw std::domain_error(std::string(who) + ": mean must be positive and finite");
  }
  return mean;
}

long double falling_factorial_ratio(int p, int k) {
  // p! / k! for k <= p
  long double r = 1.0L;
  for (int i = k + 1; i <= p; ++i) r *= i;
  return r;
}

}  // namespace

void ExpPoly::compress() {
  std::map<std::pair<int, double>, double> acc;
  for (const Term& t : terms_) {
    if (t.power < 0) throw std::logic_error("ExpPoly: negative power");
    if (t.rate < 0.0) throw std::logic_error("ExpPoly: negative rate");
    acc[{t.power, t.rate}] += t.coef;
  }
  terms_.clear();
  for (const auto& [key, coef] : acc) {
    // only drop exact cancellations (e.g. the 1-1 constant in max products)
    if (std::fabs(coef) <= 1e-250) continue;
    terms_.push_back({coef, key.first, key.second});
  }
}

ExpPoly ExpPoly::constant(double value) { return ExpPoly({{value, 0, 0.0}}); }

ExpPoly ExpPoly::exponential_pdf(double mean) {
  checked_mean(mean, "exponential_pdf");
  return ExpPoly({{1.0 / mean, 0, 1.0 / mean}});
}

ExpPoly ExpPoly::exponential_survival(double mean) {
  checked_mean(mean, "exponential_survival");
  return ExpPoly({{1.0, 0, 1.0 / mean}});
}

ExpPoly ExpPoly::erlang_pdf(int shape, double stage_mean) {
  checked_mean(stage_mean, "erlang_pdf");
  if (shape < 1) throw std::domain_error("erlang_pdf: shape must be >= 1");
  double r = 1.0 / stage_mean;
  double coef = std::exp(shape * std::log(r) - std::lgamma(static_cast<double>(shape)));
  return ExpPoly({{coef, shape - 1, r}});
}

ExpPoly ExpPoly::iid_max_survival(int n, double mean) {
  checked_mean(mean, "iid_max_survival");
  if (n < 1) throw std::domain_error("iid_max_survival: n must be >= 1");
  // 1 - (1 - e^{-z/m})^n = -sum_{j=1}^n C(n,j) (-1)^j e^{-jz/m}
  std::vector<Term> out;
  double binom = 1.0;
  for (int j = 1; j <= n; ++j) {
    binom *= static_cast<double>(n - j + 1) / j;
    double sign = (j % 2 == 1) ? 1.0 : -1.0;
    out.push_back({sign * binom, 0, j / mean});
  }
  return ExpPoly(std::move(out));
}

double ExpPoly::eval(double z) const {
  double sum = 0.0;
  for (const Term& t : terms_) {
    sum += t.coef * std::exp(t.power * std::log(std::max(z, 1e-300)) - t.rate * z);
  }
  if (z == 0.0) {
    sum = 0.0;
    for (const Term& t : terms_) {
      if (t.power == 0) sum += t.coef;
    }
  }
  return sum;
}

ExpPoly ExpPoly::scaled(double factor) const {
  std::vector<Term> out = terms_;
  for (Term& t : out) t.coef *= factor;
  return ExpPoly(std::move(out));
}

ExpPoly ExpPoly::plus(const ExpPoly& other) const {
  std::vector<Term> out = terms_;
  out.insert(out.end(), other.terms_.begin(), other.terms_.end());
  return ExpPoly(std::move(out));
}

ExpPoly ExpPoly::minus(const ExpPoly& other) const { return plus(other.scaled(-1.0)); }

ExpPoly ExpPoly::times(const ExpPoly& other) const {
  std::vector<Term> out;
  out.reserve(terms_.size() * other.terms_.size());
  for (const Term& a : terms_) {
    for (const Term& b : other.terms_) {
      out.push_back({a.coef * b.coef, a.power + b.power, a.rate + b.rate});
    }
  }
  return ExpPoly(std::move(out));
}

ExpPoly ExpPoly::survival_from_pdf() const {
  // int_z^inf c t^p e^{-rt} dt = c sum_{k=0}^p (p!/k!) r^{k-p-1} z^k e^{-rz}
  std::vector<Term> out;
  for (const Term& t : terms_) {
    if (!(t.rate > 0.0)) {
      throw std::logic_error("survival_from_pdf: rate must be positive (divergent tail)");
    }
    for (int k = 0; k <= t.power; ++k) {
      double c = t.coef * static_cast<double>(falling_factorial_ratio(t.power, k) *
                                              std::pow((long double)t.rate, k - t.power - 1));
      out.push_back({c, k, t.rate});
    }
  }
  return ExpPoly(std::move(out));
}

ExpPoly ExpPoly::pdf_from_survival() const {
  // f = -d/dz [c z^p e^{-rz}] = c r z^p e^{-rz} - c p z^{p-1} e^{-rz}
  std::vector<Term> out;
  for (const Term& t : terms_) {
    if (t.rate > 0.0) out.push_back({t.coef * t.rate, t.power, t.rate});
    if (t.power > 0) out.push_back({-t.coef * t.power, t.power - 1, t.rate});
  }
  return ExpPoly(std::move(out));
}

double ExpPoly::moment(int order) const {
  if (order < 0) throw std::domain_error("moment: order must be >= 0");
  long double sum = 0.0L;
  for (const Term& t : terms_) {
    if (!(t.rate > 0.0)) {
      throw std::logic_error("moment: rate must be positive (divergent integral)");
    }
    // int_0^inf z^{p+u} e^{-rz} dz = (p+u)! / r^{p+u+1}
    long double f = 1.0L;
    for (int i = 2; i <= t.power + order; ++i) f *= i;
    sum += (long double)t.coef * f * std::pow((long double)t.rate, -(t.power + order + 1));
  }
  return static_cast<double>(sum);
}

ExpPoly convolve(const ExpPoly& fx, const ExpPoly& fy) {
  std::vector<Term> out;
  for (const Term& ta : fx.terms()) {
    for (const Term& tb : fy.terms()) {
      if (!(ta.rate > 0.0) || !(tb.rate > 0.0)) {
        throw std::logic_error("convolve: pdf terms must have positive rates");
      }
      const long double A = ta.rate, B = tb.rate;
      const int m = ta.power + 1, n = tb.power + 1;
      if (std::fabs((double)(A - B)) < 1e-9 * std::max(ta.rate, tb.rate)) {
        throw SingularityError(
            "convolve: coincident fading parameters (rates " + std::to_string(ta.rate) +
            " and " + std::to_string(tb.rate) + "); perturb the means and retry");
      }
      // Laplace image: pref / ((s+A)^m (s+B)^n) with pref = coef_a p_a! coef_b p_b!
      long double pref = (long double)ta.coef * (long double)tb.coef;
      for (int i = 2; i <= ta.power; ++i) pref *= i;
      for (int i = 2; i <= tb.power; ++i) pref *= i;

      // 1/((s+A)^m (s+B)^n) = sum_k alphaA_{m-k}/(s+A)^{m-k}
      //                     + sum_k alphaB_{n-k}/(s+B)^{n-k},
      // alphaA_{m-k} = (-1)^k C(n-1+k,k) / (B-A)^{n+k}; symmetric in A<->B.
      auto emit = [&out, pref](long double pole, int order_full, int other_order,
                               long double delta) {
        long double binom = 1.0L;  // C(other-1+k, k)
        long double dpow = std::pow(delta, (long double)other_order);
        for (int k = 0; k < order_full; ++k) {
          if (k > 0) {
            binom *= (long double)(other_order - 1 + k) / k;
            dpow *= delta;
          }
          long double sign = (k % 2 == 0) ? 1.0L : -1.0L;
          int inv_order = order_full - k;  // 1/(s+pole)^{inv_order}
          // inverse transform: z^{inv_order-1} e^{-pole z} / (inv_order-1)!
          long double fact = 1.0L;
          for (int i = 2; i <= inv_order - 1; ++i) fact *= i;
          long double c = pref * sign * binom / dpow / fact;
          out.push_back({static_cast<double>(c), inv_order - 1, static_cast<double>(pole)});
        }
      };
      emit(A, m, n, B - A);
      emit(B, n, m, A - B);
    }
  }
  return ExpPoly(std::move(out));
}

ExpPoly max_survival(const std::vector<ExpPoly>& survivals) {
  ExpPoly prod = ExpPoly::constant(1.0);
  for (const ExpPoly& s : survivals) {
    prod = prod.times(ExpPoly::constant(1.0).minus(s));
  }
  return ExpPoly::constant(1.0).minus(prod);
}

}  // namespace relaysec::mix
